"""
Hopf-Lax FEM Test Suite

Unit tests per package plus acceptance-scale integration runs.
"""
