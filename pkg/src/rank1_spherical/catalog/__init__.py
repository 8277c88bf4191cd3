"""Compact factors, normal forms and the classification tables."""
