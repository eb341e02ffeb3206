"""Randomized agreement and identity sweeps over small integer inputs.

Each sweep runs at least five hundred accepted cases with ambient size at
most eight and generator entries at most three in absolute value. Instances
come from rejection sampling with a fixed seed, so every run sees the same
cases; the attempt counters guard against a silent collapse of the
acceptance rate.
"""

from __future__ import annotations

import random
from fractions import Fraction

from lagrangelab.errors import StructuralError
from lagrangelab.exactlinalg import (
    IntMatrix,
    det,
    hnf,
    integer_kernel,
    is_unimodular,
    mat_mul,
    mat_vec,
    rational_rank,
    snf,
)
from lagrangelab.families import build
from lagrangelab.gale import (
    QuadricSystem,
    canonical_form,
    embedded_check,
    polytope_to_quadrics,
    quadrics_to_polytope,
)
from lagrangelab.lattice import lattice_data
from lagrangelab.maslov import generator_report, monotonicity
from lagrangelab.polytope import (
    PolytopePresentation,
    delzant_check,
    enumerate_vertices,
    fano_check,
    structural_flags,
)

CASES = 500


def random_unimodular(rng: random.Random, d: int, ops: int = 5) -> IntMatrix:
    if d == 1:
        return IntMatrix.from_rows([(rng.choice((-1, 1)),)])
    m = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for _ in range(ops):
        i, j = rng.sample(range(d), 2)
        move = rng.random()
        if move < 0.7:
            c = rng.choice((-1, 1))
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        elif move < 0.85:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return IntMatrix.from_rows(m)


def base_shapes() -> list[PolytopePresentation]:
    shapes = []
    for d in (2, 3):
        eye = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        box = [row + [-x for x in row] for row in eye]
        shapes.append(PolytopePresentation(
            IntMatrix.from_rows(box), (Fraction(0),) * d + (Fraction(1),) * d))
        for s in (1, 3):
            simplex = [row + [-1] for row in eye]
            shapes.append(PolytopePresentation(
                IntMatrix.from_rows(simplex), (Fraction(0),) * d + (Fraction(s),)))
    for fam in ("th3", "th5"):
        poly = build(fam).polytope
        assert poly is not None
        shapes.append(poly)
    return shapes


def transformed(rng: random.Random, base: PolytopePresentation) -> PolytopePresentation:
    """Unimodular change of ambient coordinates plus an integer translation."""
    m = random_unimodular(rng, base.dim)
    w = [rng.randint(-3, 3) for _ in range(base.dim)]
    normals = mat_mul(m, base.normals)
    offsets = tuple(
        base.offsets[i]
        - sum(Fraction(x) * t for x, t in zip(normals.column(i), w))
        for i in range(base.n)
    )
    return PolytopePresentation(normals, offsets)


def random_polytope(rng: random.Random):
    """A structurally valid random presentation, or None on rejection."""
    d = 2 if rng.random() < 0.7 else 3
    n = rng.randint(d + 2, min(8, d + 5))
    cols = []
    for _ in range(n):
        while True:
            a = tuple(rng.randint(-3, 3) for _ in range(d))
            if any(a):
                break
        cols.append(a)
    normals = IntMatrix.from_rows([tuple(c[i] for c in cols) for i in range(d)], n)
    if rational_rank(normals) != d:
        return None
    offsets = tuple(Fraction(rng.randint(1, 3)) for _ in range(n))
    p = PolytopePresentation(normals, offsets)
    verts = enumerate_vertices(p)
    flags = structural_flags(p, verts)
    if not flags.all_pass():
        return None
    return p, verts, flags


def random_system(rng: random.Random) -> QuadricSystem | None:
    n = rng.randint(2, 8)
    r = rng.randint(1, min(4, n - 1))
    rows = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(r)]
    delta = tuple(Fraction(rng.randint(-3, 3)) for _ in range(r))
    try:
        return QuadricSystem(IntMatrix.from_rows(rows), delta)
    except StructuralError:
        return None


def test_embedding_matches_delzant():
    """The torus-quotient embedding test and the vertex lattice test agree,
    down to the witness vertex and its index."""
    rng = random.Random(20260823)
    bases = base_shapes()
    accepted = embedded_n = attempts = 0
    while accepted < CASES:
        attempts += 1
        assert attempts < 60000, "generator acceptance collapsed"
        if rng.random() < 0.3:
            p = transformed(rng, rng.choice(bases))
            verts = enumerate_vertices(p)
            flags = structural_flags(p, verts)
            if not flags.all_pass():
                continue
        else:
            made = random_polytope(rng)
            if made is None:
                continue
            p, verts, flags = made
        dz = delzant_check(p, verts, flags)
        emb = embedded_check(polytope_to_quadrics(p), verts)
        assert emb.is_embedded == dz.is_delzant
        if not dz.is_delzant:
            assert emb.witness.point == dz.witness.point
            assert emb.witness_index == dz.witness_index
        accepted += 1
        embedded_n += emb.is_embedded
    assert 50 <= embedded_n <= CASES - 50  # both branches well exercised


def test_reflexive_matches_monotone():
    """On smooth instances, the translated-common-offset test agrees with
    delta = c * t on the dual side, with the same constant."""
    rng = random.Random(7)
    bases = base_shapes()
    accepted = fano_yes = attempts = 0
    while accepted < CASES:
        attempts += 1
        assert attempts < 60000, "generator acceptance collapsed"
        p = transformed(rng, rng.choice(bases))
        if rng.random() < 0.5:
            offs = list(p.offsets)
            offs[rng.randrange(p.n)] += rng.randint(1, 2)
            p = PolytopePresentation(p.normals, tuple(offs))
        verts = enumerate_vertices(p)
        flags = structural_flags(p, verts)
        if not (flags.all_pass() and flags.primitive_normals):
            continue
        if not delzant_check(p, verts, flags).is_delzant:
            continue
        fano = fano_check(p, flags)
        monotone, c = monotonicity(polytope_to_quadrics(p))
        assert fano.is_fano == monotone
        if monotone:
            assert fano.c == c
        accepted += 1
        fano_yes += fano.is_fano
    assert 50 <= fano_yes <= CASES - 50


def test_gale_round_trip_canonical():
    rng = random.Random(99)
    accepted = attempts = 0
    while accepted < CASES:
        attempts += 1
        assert attempts < 30000, "generator acceptance collapsed"
        q = random_system(rng)
        if q is None:
            continue
        cf = canonical_form(q)
        assert canonical_form(cf) == cf
        assert rational_rank(cf.gamma) == q.r
        assert polytope_to_quadrics(quadrics_to_polytope(q)) == cf
        accepted += 1


def test_minimal_maslov_row_invariance():
    """Unimodular row changes of (gamma, delta) present the same system, so
    the minimal pairing number and monotonicity data cannot move."""
    rng = random.Random(4242)
    accepted = attempts = 0
    while accepted < CASES:
        attempts += 1
        assert attempts < 60000, "generator acceptance collapsed"
        q = random_system(rng)
        if q is None:
            continue
        try:
            rep = generator_report(q, lattice_data(q))
        except StructuralError:
            continue  # no column subset forms a lattice basis
        u = random_unimodular(rng, q.r)
        q2 = QuadricSystem(mat_mul(u, q.gamma), tuple(mat_vec(u, q.delta)))
        rep2 = generator_report(q2, lattice_data(q2))
        assert rep2.minimal_maslov == rep.minimal_maslov
        assert rep2.monotone == rep.monotone
        assert rep2.monotone_c == rep.monotone_c
        accepted += 1


def _assert_row_echelon(h: IntMatrix) -> None:
    last_pivot = -1
    seen_zero_row = False
    for i in range(h.rows):
        row = h.data[i]
        pivot_col = next((j for j, x in enumerate(row) if x != 0), None)
        if pivot_col is None:
            seen_zero_row = True
            continue
        assert not seen_zero_row, "zero row above a nonzero row"
        assert pivot_col > last_pivot
        last_pivot = pivot_col
        pivot = row[pivot_col]
        assert pivot > 0
        for k in range(i):
            assert 0 <= h.data[k][pivot_col] < pivot
        for k in range(i + 1, h.rows):
            assert h.data[k][pivot_col] == 0


def test_normal_form_identities():
    rng = random.Random(123)
    for _ in range(CASES):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 8)
        m = IntMatrix.from_rows(
            [tuple(rng.randint(-3, 3) for _ in range(ncols)) for _ in range(nrows)],
            ncols,
        )
        h, u = hnf(m)
        assert is_unimodular(u)
        assert mat_mul(u, m) == h
        _assert_row_echelon(h)

        d, ul, vr = snf(m)
        assert is_unimodular(ul) and is_unimodular(vr)
        assert mat_mul(mat_mul(ul, m), vr) == d
        diag = [d.data[t][t] for t in range(min(nrows, ncols))]
        for i in range(nrows):
            for j in range(ncols):
                if i != j:
                    assert d.data[i][j] == 0
        assert all(x >= 0 for x in diag)
        for a, b in zip(diag, diag[1:]):
            assert (a == 0 and b == 0) or (a != 0 and b % a == 0)

        k = integer_kernel(m)
        rank = rational_rank(m)
        assert k.rows == ncols - rank
        if k.rows:
            zero = mat_mul(k, m.transpose())
            assert all(x == 0 for row in zero.data for x in row)
            dk, _, _ = snf(k)
            assert all(dk.data[t][t] == 1 for t in range(k.rows))

        if nrows == ncols:
            prod = 1
            for x in diag:
                prod *= x
            assert abs(det(m)) == prod


def test_two_block_distinct_value_sweep():
    """Closed-form sweep: for p = 3 * 2^m and total size 3 * 2^(m-2) * n the
    even-k family realizes exactly 2m distinct minimal pairing numbers."""
    for m in (3, 4, 5):
        p = 3 * 2**m
        for n in (10, 12, 14, 16):
            total = 3 * 2**(m - 2) * n
            values = {
                build("ex1", p=p, n=total, k=k).minimal_maslov
                for k in range(0, p - 1, 2)
            }
            assert len(values) == 2 * m, (m, n, sorted(values))


def test_two_block_sweep_matches_pipeline():
    for k in (0, 2, 6, 22):
        inst = build("ex1", p=24, n=60, k=k)
        rep = generator_report(inst.system, lattice_data(inst.system))
        assert rep.minimal_maslov == inst.minimal_maslov
