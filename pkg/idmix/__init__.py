"""
Identity-label mixup for graph contrastive learning.

Pretrains a GCN encoder on unlabeled graphs by contrasting two augmented
views, one of which has its node embeddings and identity labels mixed, and
evaluates the frozen embeddings with linear probes.
"""

__version__ = "1.0.0"
