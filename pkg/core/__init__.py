"""
Hopf-Lax FEM Core Package

Meshes, metric models, the local Hopf-Lax update, fixed-point solvers and
experiment drivers.
"""

__version__ = "0.1.0"
