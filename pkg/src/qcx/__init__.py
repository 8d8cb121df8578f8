"""Exact extreme volumes of k-increasing quasi-copulas."""
