"""Tests for the cost accounting core."""
