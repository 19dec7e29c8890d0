"""Exact polyhedral-divisor calculus and log-discrepancy tools for T-varieties."""

__version__ = "0.1.0"
