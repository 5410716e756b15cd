"""Refactoring-aware diff analysis for git change sets.

Analyzes the revision pairs of a change set, detects refactoring
operations by token-similarity matching of code elements, computes
aligned internal diffs and review-effort metrics, and serves the
results over a small REST API.
"""

__version__ = "0.1.0"

from . import golang as _golang  # noqa: E402,F401  (registers the .go adapter)
