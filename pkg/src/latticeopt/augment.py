"""Augmentation walks over test sets, and Phase-I feasibility.

A walk repeatedly subtracts the first applicable improving move in a fixed
scan order until none applies. Over a valid test set the fixed point is the
optimum of the cost order's lexicographic refinement; over a negation-closed
Graver basis the improving halves of the pairs play the same role.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional

from .groebner import GroebnerBasis, test_set
from .lattice import CostOrder, IntMatrix, IntVector, as_vector


class AugmentResult(NamedTuple):
    solution: IntVector
    value: int
    steps: int


def _improving_moves(T, order: CostOrder):
    """Moves with positive cost, or zero cost and lexicographically downhill.

    Applying such a t to any point strictly decreases (c.z, tie-broken z);
    every other element can never be taken, so it is dropped up front. The
    scan order is fixed: best cost improvement first, then entry order.
    """
    keyed = []
    for t in T:
        entries = t.entries if isinstance(t, IntVector) else tuple(t)
        if not any(entries):
            continue
        cdot = order.dot(IntVector(entries))
        if cdot < 0:
            continue
        if cdot == 0:
            lead = next(entries[i] for i in order.tie_order if entries[i])
            if lead < 0:
                continue
        pos = tuple((i, x) for i, x in enumerate(entries) if x > 0)
        keyed.append((-cdot, entries, pos))
    keyed.sort()
    return [(entries, pos) for _, entries, pos in keyed]


def augment(z0: "IntVector | Iterable[int]", c: "IntVector | Iterable[int]",
            T, A: IntMatrix, b: "IntVector | Iterable[int]") -> AugmentResult:
    """Walk downhill from a feasible point; returns the fixed point reached."""
    z0, c, b = as_vector(z0), as_vector(c), as_vector(b)
    order = CostOrder(c)
    if len(z0) != A.ncols or len(c) != A.ncols:
        raise ValueError("dimension mismatch with matrix columns")
    if any(e < 0 for e in z0.entries) or A.mat_vec(z0) != b:
        raise ValueError("starting point is not feasible")

    moves = _improving_moves(T, order)
    z = list(z0.entries)
    steps = 0
    progress = True
    while progress:
        progress = False
        for entries, pos in moves:
            if all(z[i] >= x for i, x in pos):
                for i, x in enumerate(entries):
                    z[i] -= x
                steps += 1
                progress = True
                break
    solution = IntVector(z)
    assert A.mat_vec(solution) == b and all(e >= 0 for e in solution.entries)
    return AugmentResult(solution, order.dot(solution), steps)


def artificial_system(A: IntMatrix, b: "IntVector | Iterable[int]"):
    """Extended system [A | D] with one signed artificial column per row.

    Returns (matrix, cost, start): cost charges only artificials, and the
    start point (0, |b|) is always feasible for the extended system.
    """
    b = as_vector(b)
    if len(b) != A.nrows:
        raise ValueError("right-hand side length must match row count")
    m = A.nrows
    sign = [(x > 0) - (x < 0) for x in b.entries]
    rows = [tuple(row) + tuple(sign[i] if j == i else 0 for j in range(m))
            for i, row in enumerate(A.rows)]
    cost = IntVector((0,) * A.ncols + (1,) * m)
    start = IntVector((0,) * A.ncols + tuple(abs(x) for x in b.entries))
    return IntMatrix(rows), cost, start


def phase_one_feasible(A: IntMatrix, b: "IntVector | Iterable[int]",
                       moves: Optional[GroebnerBasis] = None
                       ) -> Optional[IntVector]:
    """A feasible point of {z >= 0 : Az = b}, or None when there is none.

    Minimizes the artificial total by augmentation; `moves` may carry a
    precomputed test set for the extended system (callers doing many solves
    against the same matrix cache it keyed on the extended matrix).
    """
    b = as_vector(b)
    ext, cost, start = artificial_system(A, b)
    if moves is None:
        moves = test_set(ext, cost)
    res = augment(start, cost, moves, ext, b)
    if res.value != 0:
        return None
    return IntVector(res.solution.entries[:A.ncols])
