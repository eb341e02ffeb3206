"""Orientability and triviality of the fiber bundle carried by the torus.

The submanifold fibers over a torus with one circle generator per chosen
lattice basis element; going around generator i acts on the fiber by
flipping the sign of every coordinate j with <eps_i, gamma_j> odd. The
generator preserves orientation iff it flips an even number of coordinates,
which is the same parity as the corresponding pairing with the row-sum
vector, so orientability can be cross-checked against the generator report.

Triviality is decided by a sufficient pairing criterion: coordinates with
literally equal gamma columns are interchangeable, and a sign flip on an
even number of coordinates within such a class is isotopic to the identity.
If every generator flips every class evenly the bundle is trivial; if some
generator reverses orientation it certainly is not; otherwise the question
is left open.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError
from .gale import QuadricSystem
from .lattice import LatticeData
from .maslov import MaslovReport

__all__ = ["FibrationReport", "fibration_report"]


@dataclass(frozen=True)
class FibrationReport:
    flips: tuple[tuple[int, ...], ...]  # one 0/1 row per generator
    preserving: tuple[bool, ...]
    orientable: bool
    coordinate_classes: tuple[tuple[int, ...], ...]  # grouped by equal column
    trivial: bool | None  # True / False are proved; None is undecided


def fibration_report(
    q: QuadricSystem, lat: LatticeData, maslov: MaslovReport
) -> FibrationReport:
    flips = []
    for eps in lat.dual_basis:
        row = []
        for j in range(q.n):
            pairing = sum(e * g for e, g in zip(eps, q.column(j)))
            if pairing.denominator != 1:
                raise InternalInvariantError(
                    f"non-integral generator pairing {pairing} at coordinate {j}"
                )
            row.append(int(pairing) % 2)
        flips.append(tuple(row))
    preserving = tuple(sum(row) % 2 == 0 for row in flips)
    for i, keep in enumerate(preserving):
        if keep != (maslov.mu[i] % 2 == 0):
            raise InternalInvariantError(
                f"generator {i}: flip parity disagrees with its pairing value "
                f"{maslov.mu[i]}"
            )
    orientable = all(preserving)

    by_column: dict[tuple[int, ...], list[int]] = {}
    for j in range(q.n):
        by_column.setdefault(q.column(j), []).append(j)
    classes = tuple(tuple(js) for js in by_column.values())

    if not orientable:
        trivial: bool | None = False
    else:
        paired = all(
            sum(row[j] for j in cls) % 2 == 0 for row in flips for cls in classes
        )
        trivial = True if paired else None
    return FibrationReport(
        flips=tuple(flips),
        preserving=preserving,
        orientable=orientable,
        coordinate_classes=classes,
        trivial=trivial,
    )
