"""Brute-force confluence oracle for the cyclic merge reduction.

The implementation always merges the smallest-position eligible adjacent
pair. Here every eligible merge is explored recursively at every step, and
all maximal merge sequences must land on one terminal configuration (read
as the cyclic multiplicity sequence, up to rotation) that also matches the
implemented tie-break order.

Configuration pool: every subset of three to seven of the eight primitive
lines with entries of height at most two, with every orientation choice;
multiplicities in {1, 2, 3} are seeded per oriented subset, and fully
exhausted over the four shortest lines. A supplementary pool duplicates a
direction so that zero-width sectors get exercised too.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from lagrangelab.errors import StructuralError
from lagrangelab.topology import merge_fixpoint

LINES = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (1, -2), (2, 1), (2, -1))

Ray = tuple[int, int]
State = tuple[tuple[Ray, int], ...]


def _half(d: Ray) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _cross(a: Ray, b: Ray) -> int:
    return a[0] * b[1] - a[1] * b[0]


def sorted_state(dirs_mults) -> State:
    out: list[tuple[Ray, int]] = []
    for item in dirs_mults:
        pos = len(out)
        for t, have in enumerate(out):
            ha, hb = _half(item[0]), _half(have[0])
            if ha < hb or (ha == hb and _cross(item[0], have[0]) > 0):
                pos = t
                break
        out.insert(pos, item)
    return tuple(out)


def eligible(state: State, i: int) -> bool:
    m = len(state)
    if m <= 1:
        return False
    j = (i + 1) % m
    di, dj = state[i][0], state[j][0]
    cr = _cross(di, dj)
    if cr == 0:
        return di[0] * dj[0] + di[1] * dj[1] > 0  # same ray; antipodes never
    if cr < 0:
        return False  # sector at least a half turn
    for t in range(m):
        if t in (i, j):
            continue
        anti = (-state[t][0][0], -state[t][0][1])
        if _cross(di, anti) > 0 and _cross(anti, dj) > 0:
            return False
    return True


def merged(state: State, i: int) -> State:
    """Absorb class i+1 into class i, preserving the cyclic order."""
    j = (i + 1) % len(state)
    keep = (state[i][0], state[i][1] + state[j][1])
    out = []
    for t in range(len(state)):
        if t == j:
            continue
        out.append(keep if t == i else state[t])
    return tuple(out)


def cyclic_key(state: State) -> tuple[int, ...]:
    mults = [m for _, m in state]
    k = len(mults)
    return min(tuple(mults[(s + t) % k] for t in range(k)) for s in range(k))


def terminals(start: State) -> set[tuple[int, ...]]:
    memo: dict[State, frozenset[tuple[int, ...]]] = {}

    def rec(state: State) -> frozenset[tuple[int, ...]]:
        got = memo.get(state)
        if got is not None:
            return got
        moves = [i for i in range(len(state)) if eligible(state, i)]
        if not moves:
            result = frozenset((cyclic_key(state),))
        else:
            acc: set[tuple[int, ...]] = set()
            for i in moves:
                acc |= rec(merged(state, i))
            result = frozenset(acc)
        memo[state] = result
        return result

    return set(rec(start))


def run_config(rng: random.Random, config: list[tuple[Ray, int]]) -> None:
    try:
        impl = merge_fixpoint(config)
    except StructuralError:
        impl_key = None  # collapsed into an open half-plane
    else:
        impl_key = cyclic_key(tuple((d, m) for d, m in impl))
        assert len(impl) % 2 == 1 and len(impl) >= 3
    reached = terminals(sorted_state(config))
    assert len(reached) == 1, (config, sorted(reached))
    (term,) = reached
    if impl_key is None:
        assert len(term) == 1, (config, term)
        assert term[0] == sum(m for _, m in config)
    else:
        assert term == impl_key, (config, term, impl_key)
    if rng.random() < 0.05:
        shuffled = config[:]
        rng.shuffle(shuffled)
        doubled = [((2 * d[0], 2 * d[1]), m) for d, m in shuffled]
        try:
            again = merge_fixpoint(doubled)
        except StructuralError:
            assert impl_key is None
        else:
            assert cyclic_key(tuple((d, m) for d, m in again)) == impl_key


def test_merge_order_confluence():
    rng = random.Random(81)
    count = 0
    for k in range(3, 8):
        for chosen in combinations(range(8), k):
            for signs in product((1, -1), repeat=k):
                dirs = [
                    (s * LINES[t][0], s * LINES[t][1])
                    for t, s in zip(chosen, signs)
                ]
                patterns = [
                    [1] * k,
                    [rng.randint(1, 3) for _ in range(k)],
                    [rng.randint(1, 3) for _ in range(k)],
                ]
                for mults in patterns:
                    run_config(rng, list(zip(dirs, mults)))
                    count += 1
    assert count == 18528


def test_merge_order_confluence_full_multiplicities():
    """Every multiplicity assignment over the four shortest lines."""
    rng = random.Random(82)
    short = range(4)  # axes and both diagonals
    for k in (3, 4):
        for chosen in combinations(short, k):
            for signs in product((1, -1), repeat=k):
                dirs = [
                    (s * LINES[t][0], s * LINES[t][1])
                    for t, s in zip(chosen, signs)
                ]
                for mults in product((1, 2, 3), repeat=k):
                    run_config(rng, list(zip(dirs, mults)))


def test_merge_order_confluence_repeated_directions():
    rng = random.Random(83)
    for k in (3, 4, 5, 6):
        for chosen in combinations(range(8), k):
            dirs = [LINES[t] for t in chosen]
            dirs.append(dirs[0])  # a zero-width sector somewhere
            mults = [rng.randint(1, 3) for _ in dirs]
            run_config(rng, list(zip(dirs, mults)))
