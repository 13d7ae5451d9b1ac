"""Character varieties of the sixth and fifth Painlevé equations.

Exact and numeric machinery for the Fricke cubic surfaces, the braid and
wild monodromy actions on them, the birational confluence map between the two
surfaces, and Stokes-data pipelines.
"""
from __future__ import annotations

__version__ = "0.1.0"
