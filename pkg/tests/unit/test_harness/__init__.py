"""Tests for the verification harness."""
