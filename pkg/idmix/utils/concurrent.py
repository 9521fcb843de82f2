"""
Concurrent execution utilities.

Runs independent jobs (probe runs, cross-validation folds, matmul row blocks)
on a thread pool while keeping results in input order.
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, TypeVar

from loguru import logger

from idmix.errors import IdMixError

T = TypeVar("T")


class ParallelExecutor:
    """
    Parallel task executor using thread pools.

    numpy releases the GIL inside its kernels, so threads give real overlap
    for the dense products these jobs are made of.
    """

    def __init__(self, max_workers: Optional[int] = None):
        """
        Initialize parallel executor.

        Args:
            max_workers: Maximum number of worker threads.
                        None = defaults to min(32, cpu_count + 4),
                        1 = run serially in the calling thread
        """
        self.max_workers = max_workers

    def execute_tasks(
        self,
        func: Callable[[T], Any],
        items: List[T],
        task_name: str = "task",
        show_progress: bool = True,
    ) -> List[Any]:
        """
        Execute a function on multiple items in parallel.

        Args:
            func: Function to execute on each item
            items: List of items to process
            task_name: Name for logging/progress (e.g., "probe run")
            show_progress: Whether to log progress

        Returns:
            List of results in the same order as items

        Raises:
            RuntimeError: If any task fails, wrapping the first failure
        """
        if not items:
            logger.debug(f"No items to process for {task_name}")
            return []

        total = len(items)

        if total == 1 or self.max_workers == 1:
            return [self._run_serial(func, item, idx, task_name) for idx, item in enumerate(items)]

        if show_progress:
            logger.debug(f"Processing {total} {task_name}(s) in parallel")

        results: List[Any] = [None] * total
        errors = []

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_index = {
                executor.submit(func, item): idx for idx, item in enumerate(items)
            }

            completed = 0
            for future in as_completed(future_to_index):
                idx = future_to_index[future]
                completed += 1

                try:
                    results[idx] = future.result()

                    if show_progress and completed % max(1, total // 10) == 0:
                        logger.debug(
                            f"Progress: {completed}/{total} {task_name}(s) completed"
                        )

                except Exception as e:
                    logger.error(f"Failed to process {task_name} {idx}: {e}")
                    errors.append((idx, e))

        if errors:
            idx, error = min(errors, key=lambda pair: pair[0])
            if isinstance(error, IdMixError):
                raise error
            raise RuntimeError(
                f"Parallel execution failed for {task_name} at index {idx}: {error}"
            ) from error

        return results

    @staticmethod
    def _run_serial(func: Callable[[T], Any], item: T, idx: int, task_name: str) -> Any:
        try:
            return func(item)
        except IdMixError:
            raise
        except Exception as e:
            raise RuntimeError(
                f"Execution failed for {task_name} at index {idx}: {e}"
            ) from e


def parallel_map(
    func: Callable[[T], Any],
    items: List[T],
    max_workers: Optional[int] = None,
    task_name: str = "task",
) -> List[Any]:
    """
    Convenient function to map a function over items in parallel.

    Args:
        func: Function to apply
        items: List of items
        max_workers: Maximum worker threads (1 runs serially)
        task_name: Name for logging

    Returns:
        List of results in input order

    Example:
        accuracies = parallel_map(run_probe, seeds, max_workers=4, task_name="probe run")
    """
    executor = ParallelExecutor(max_workers=max_workers)
    return executor.execute_tasks(func, items, task_name=task_name, show_progress=False)
