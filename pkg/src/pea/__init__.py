"""Predicate-enumeration-aggregation solvers, synthesis loop and benchmark harness."""

__version__ = "0.1.0"
