"""Exact jet computations for Fukui normal forms, DSU classification and parallel surfaces."""
