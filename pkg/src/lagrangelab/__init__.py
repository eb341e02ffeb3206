"""Toolkit for Lagrangian submanifolds of C^n built from intersections of
real quadrics / convex polytopes related by Gale duality.

Given a polytope H-presentation or an integer quadric system the package
computes: structural flags, Delzant and embedding verdicts, Fano data and
monotonicity, Maslov indices on generators and the minimal Maslov number,
the diffeomorphism type of the quadric intersection where classifiable,
orientability and triviality hints for the torus fibration, and
Haefliger-Hirsch style counting bounds for smooth vs Lagrangian isotopy
classes.
"""

from __future__ import annotations

from .families import build
from .gale import (
    QuadricSystem,
    canonical_form,
    polytope_to_quadrics,
    quadrics_to_polytope,
)
from .numerics import NumericReport, numeric_report
from .polytope import PolytopePresentation
from .report import (
    LagrangianReport,
    check_polytope,
    check_quadrics,
    pigeonhole_reports,
    render_text,
    report_dict,
)
from .topology import classify_fiber, render

__all__ = [
    "LagrangianReport",
    "NumericReport",
    "PolytopePresentation",
    "QuadricSystem",
    "build",
    "canonical_form",
    "check_polytope",
    "check_quadrics",
    "classify_fiber",
    "numeric_report",
    "pigeonhole_reports",
    "polytope_to_quadrics",
    "quadrics_to_polytope",
    "render",
    "render_text",
    "report_dict",
]

__version__ = "0.1.0"
