"""Exact bookkeeping for odd-Euler-characteristic aspherical 4-manifold
constructions: SL(2,Z) monodromy classes, twist relations, block gluing and
chi/sigma ledgers."""

from .assembly import AssemblyGraph, VerificationReport, verify
from .blocks import BoundaryLabel, labels_glueable
from .sl2z import Sl2Matrix, are_conjugate, classify
from .synthesis import build_cap_plan, euler_bound, synthesize_chi, synthesize_chi_sigma

__version__ = "0.1.0"
