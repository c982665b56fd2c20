"""Persistent data structures with potential functions and timing mirrors."""

from . import binomial_heap, finger_tree, stack

__all__ = ["binomial_heap", "finger_tree", "stack"]
