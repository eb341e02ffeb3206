"""Counting smooth isotopy classes and spotting forced coincidences.

For a trivial bundle the submanifold is (torus) x (fiber), so the rank of
its first Z/2 cohomology is the number of quadrics plus the fiber's own
rank. In the stable range (total dimension >= 5) the classification of
embeddings of an n-manifold in C^n by tangential data gives at most
2^rank smooth isotopy classes when n is even, and no finite bound when n
is odd. Submanifolds in the same family share a diffeomorphism type, so
once more pairwise-distinct minimal pairing numbers are exhibited than the
smooth bound allows, some pair must be smoothly isotopic while remaining
inequivalent as exact submanifolds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .topology import (
    ConnSum,
    Disjoint,
    Product,
    Sphere,
    SurfaceGenus,
    TopologyExpr,
    Torus,
)

__all__ = ["IsotopyBound", "PigeonholeReport", "h1_mod2", "isotopy_bound", "pigeonhole"]


def h1_mod2(e: TopologyExpr) -> int | None:
    """Rank of H^1(-; Z/2), or None when the expression is unknown."""
    if isinstance(e, Sphere):
        return 1 if e.dim == 1 else 0
    if isinstance(e, Torus):
        return e.dim
    if isinstance(e, SurfaceGenus):
        return 2 * e.genus
    if isinstance(e, Product):
        parts = [h1_mod2(f) for f in e.factors]
        return None if any(p is None for p in parts) else sum(parts)
    if isinstance(e, ConnSum):
        # in dimension >= 3 the fundamental group is the free product of the
        # summands'; surfaces have already been fused by normalization
        parts = [h1_mod2(s) for s in e.summands]
        return None if any(p is None for p in parts) else sum(parts)
    if isinstance(e, Disjoint):
        part = h1_mod2(e.part)
        return None if part is None else e.copies * part
    return None


@dataclass(frozen=True)
class IsotopyBound:
    dim_total: int
    h1_rank: int | None
    bound: int | None  # None when no finite bound is claimed
    reason: str


def isotopy_bound(dim_total: int, h1_rank: int | None) -> IsotopyBound:
    if h1_rank is None:
        return IsotopyBound(
            dim_total, None, None,
            "mod-2 homology rank unavailable (fiber unclassified or bundle "
            "not known to be trivial)",
        )
    if dim_total < 5:
        return IsotopyBound(
            dim_total, h1_rank, None,
            f"total dimension {dim_total} is below the stable range",
        )
    if dim_total % 2 == 1:
        return IsotopyBound(
            dim_total, h1_rank, None,
            f"odd total dimension {dim_total}: no finite bound",
        )
    return IsotopyBound(
        dim_total, h1_rank, 2 ** h1_rank,
        f"at most 2^{h1_rank} smooth isotopy classes",
    )


@dataclass(frozen=True)
class PigeonholeReport:
    distinct_values: tuple[int, ...]
    bound: int | None
    collision: bool


def pigeonhole(values: Sequence[int], bound: int | None) -> PigeonholeReport:
    """Do more distinct invariant values appear than smooth classes exist?"""
    distinct = tuple(sorted(set(values)))
    collision = bound is not None and len(distinct) > bound
    return PigeonholeReport(distinct, bound, collision)
