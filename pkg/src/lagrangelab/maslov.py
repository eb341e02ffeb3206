"""Maslov indices, symplectic areas and monotonicity on the quadric side.

For the torus fibration with fiber the quadric intersection, the base
circle generators r_i correspond to the dual basis vectors eps_i. The
Maslov index of r_i is <eps_i, t> with t the row-sum vector of gamma, and
its symplectic area is <eps_i, delta> in units of pi/2.

Generators are reoriented so that Maslov indices are nonnegative: when
<eps_i, t> < 0 both the index and the area flip sign together (replacing
eps_i by -eps_i, which changes nothing mod 2). The minimal Maslov number is
the gcd of the indices over the base generators; fiber homology classes
have index and area zero (mu is a homomorphism, and torsion classes cannot
carry a nonzero integer), so they do not contribute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantError
from .exactlinalg import gcd_list
from .gale import QuadricSystem
from .lattice import LatticeData

__all__ = [
    "MaslovReport",
    "maslov_vector",
    "monotonicity",
    "minimal_maslov",
    "generator_report",
]


@dataclass(frozen=True)
class MaslovReport:
    t: tuple[int, ...]
    mu: tuple[int, ...]  # nonnegative, after reorientation
    area_half_pi: tuple[Fraction, ...]  # sign-coupled to mu
    orientation_signs: tuple[int, ...]  # +1 kept, -1 reversed generator
    minimal_maslov: int
    monotone: bool
    monotone_c: Fraction | None


def maslov_vector(q: QuadricSystem) -> tuple[int, ...]:
    """t = sum of the gamma columns (row sums)."""
    return tuple(sum(row) for row in q.gamma.data)


def monotonicity(q: QuadricSystem) -> tuple[bool, Fraction | None]:
    """Is delta = c * t for some rational c > 0? Returns (verdict, c)."""
    t = maslov_vector(q)
    pivot = next((i for i, x in enumerate(t) if x != 0), None)
    if pivot is None:
        return False, None  # t = 0: no positive proportionality possible
    c = q.delta[pivot] / t[pivot]
    if c <= 0:
        return False, None
    if all(q.delta[i] == c * t[i] for i in range(q.r)):
        return True, c
    return False, None


def minimal_maslov(mu: tuple[int, ...]) -> int:
    """gcd of the generator indices; 0 when every index vanishes."""
    return gcd_list(abs(m) for m in mu)


def generator_report(q: QuadricSystem, lat: LatticeData) -> MaslovReport:
    t = maslov_vector(q)
    raw_mu: list[Fraction] = []
    raw_area: list[Fraction] = []
    for eps in lat.dual_basis:
        raw_mu.append(sum((e * x for e, x in zip(eps, t)), Fraction(0)))
        raw_area.append(sum((e * d for e, d in zip(eps, q.delta)), Fraction(0)))
    for v in raw_mu:
        if v.denominator != 1:
            raise InternalInvariantError("Maslov index on a generator is not an integer")
    signs = tuple(-1 if v < 0 else 1 for v in raw_mu)
    mu = tuple(int(s * v) for s, v in zip(signs, raw_mu))
    area = tuple(s * a for s, a in zip(signs, raw_area))
    monotone, c = monotonicity(q)
    if monotone:
        for m, a in zip(mu, area):
            if a != c * m:
                raise InternalInvariantError(
                    "monotone system with area != c * mu on a generator"
                )
    return MaslovReport(
        t=t,
        mu=mu,
        area_half_pi=area,
        orientation_signs=signs,
        minimal_maslov=minimal_maslov(mu),
        monotone=monotone,
        monotone_c=c,
    )
