"""Tests for the data structures."""
