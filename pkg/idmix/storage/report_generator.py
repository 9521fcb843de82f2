"""
Report generator for creating HTML and JSON reports.

Generates run reports from probe results, the training trace and the
resolved configuration.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional

from jinja2 import Template

from idmix import __version__
from idmix.config.models import RunConfig
from idmix.pipeline.probe import ProbeReport
from idmix.pipeline.sweep import SweepResult
from idmix.pipeline.trainer import TrainTrace


def build_report(cfg: RunConfig, report: ProbeReport) -> Dict[str, Any]:
    """JSON-ready run report; contains no timestamps, so reruns match byte for byte."""
    return {
        "task": cfg.task.value,
        **report.to_dict(),
        "resolved_config": cfg.model_dump(mode="json"),
    }


def build_sweep_report(cfg: RunConfig, result: SweepResult) -> Dict[str, Any]:
    return {
        "task": cfg.task.value,
        **result.to_dict(),
        "resolved_config": cfg.model_dump(mode="json"),
    }


class ReportGenerator:
    """Generator for HTML and JSON reports."""

    def __init__(self, template_path: Optional[Path] = None):
        """
        Initialize report generator.

        Args:
            template_path: Optional path to custom HTML template

        Raises:
            FileNotFoundError: If the template does not exist
        """
        if template_path is None:
            template_path = Path(__file__).parent / "report_template.html"
        if not template_path.exists():
            raise FileNotFoundError(
                f"Template file not found: {template_path}. "
                "Please provide a valid template path."
            )
        with open(template_path, "r", encoding="utf-8") as f:
            self.html_template = Template(f.read())

    def generate_json(
        self, report_data: Dict[str, Any], output_path: Optional[Path] = None
    ) -> str:
        """
        Generate JSON report.

        Args:
            report_data: Output of ``build_report`` or ``build_sweep_report``
            output_path: Optional path to save JSON file

        Returns:
            Generated JSON content
        """
        json_content = json.dumps(report_data, ensure_ascii=False, indent=2, sort_keys=True)

        if output_path:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, "w", encoding="utf-8") as f:
                f.write(json_content + "\n")

        return json_content

    def generate_html(
        self,
        report_data: Dict[str, Any],
        output_path: Optional[Path] = None,
        trace: Optional[TrainTrace] = None,
    ) -> str:
        """
        Generate HTML report.

        Args:
            report_data: Output of ``build_report`` or ``build_sweep_report``
            output_path: Optional path to save HTML file
            trace: Optional training trace rendered as a table

        Returns:
            Generated HTML content
        """
        html_content = self.html_template.render(
            report=report_data,
            trace=list(trace) if trace is not None else [],
            config_json=json.dumps(report_data.get("resolved_config", {}), indent=2, sort_keys=True),
            version=__version__,
        )

        if output_path:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, "w", encoding="utf-8") as f:
                f.write(html_content)

        return html_content

    def generate_both(
        self,
        report_data: Dict[str, Any],
        html_path: Optional[Path] = None,
        json_path: Optional[Path] = None,
        trace: Optional[TrainTrace] = None,
    ) -> tuple:
        """
        Generate both HTML and JSON reports.

        Returns:
            Tuple of (html_content, json_content)
        """
        html_content = self.generate_html(report_data, html_path, trace)
        json_content = self.generate_json(report_data, json_path)
        return html_content, json_content
