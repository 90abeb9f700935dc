"""Generating sets of toric ideals by variable saturation.

A kernel lattice basis generates the right lattice but usually not the full
ideal of fiber moves. This module closes the gap: nudge the basis toward a
common sign pattern, flip the offending coordinates, then saturate one
coordinate at a time with a Buchberger round under an elimination order,
undoing each flip as its round completes.
"""

from __future__ import annotations

from .groebner import buchberger
from .lattice import CostOrder, IntMatrix, IntVector, VectorSet, kernel_basis


class ToricGenerators:
    """Kernel vectors whose moves connect every fiber of the matrix."""

    __slots__ = ("matrix", "generators")

    def __init__(self, matrix: IntMatrix, generators: VectorSet):
        self.matrix = matrix
        self.generators = generators
        for g in generators:
            assert matrix.in_kernel(g), g

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return "ToricGenerators(%d generators, %d cols)" % (
            len(self), self.matrix.ncols)


def flip_coordinate(v: IntVector, j: int) -> IntVector:
    """Negate coordinate j (a self-inverse linear map)."""
    if not 0 <= j < v.dim:
        raise IndexError("coordinate %d out of range for dimension %d"
                         % (j, v.dim))
    entries = list(v.entries)
    entries[j] = -entries[j]
    return IntVector(entries)


def _mixed_columns(vectors):
    """Indices where the set has both a positive and a negative entry."""
    if not vectors:
        return set()
    n = len(vectors[0])
    mixed = set()
    for j in range(n):
        has_pos = any(v[j] > 0 for v in vectors)
        has_neg = any(v[j] < 0 for v in vectors)
        if has_pos and has_neg:
            mixed.add(j)
    return mixed


def _common_orthant_push(vectors):
    """Greedy elementary ops v_i <- v_i +/- v_k lowering the mixed-column count.

    Each accepted move is unimodular, so the lattice spanned is unchanged.
    The count is bounded below, so the loop terminates.
    """
    vecs = [tuple(v) for v in vectors]
    best = len(_mixed_columns(vecs))
    improved = True
    while improved and best > 0:
        improved = False
        for i in range(len(vecs)):
            for k in range(len(vecs)):
                if i == k:
                    continue
                for sign in (1, -1):
                    cand = tuple(a + sign * b for a, b in zip(vecs[i], vecs[k]))
                    if not any(cand):
                        continue
                    trial = list(vecs)
                    trial[i] = cand
                    count = len(_mixed_columns(trial))
                    if count < best:
                        vecs = trial
                        best = count
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
    return vecs


def _flip_columns(matrix, cols):
    if not cols:
        return matrix
    return IntMatrix(tuple(-x if j in cols else x for j, x in enumerate(row))
                     for row in matrix.rows)


def _sign_normalized(t):
    for x in t:
        if x > 0:
            return t
        if x < 0:
            return tuple(-y for y in t)
    return t


def toric_generating_set(A: IntMatrix) -> ToricGenerators:
    """Generating set of the full move ideal of {z >= 0 : Az = b} fibers.

    Steps: kernel basis; greedy push toward a common sign pattern; J = every
    coordinate still carrying a negative entry; flip all of J; for each j in
    J run Buchberger with coordinate j most expensive and flip j back. Each
    round saturates one coordinate, and the flips cancel exactly, so the
    result lives in ker(A) again.
    """
    basis = [tuple(v) for v in kernel_basis(A)]
    if not basis:
        return ToricGenerators(A, VectorSet())
    basis = _common_orthant_push(basis)

    n = A.ncols
    J = sorted(j for j in range(n) if any(v[j] < 0 for v in basis))
    pending = set(J)
    current = [tuple(-x if j in pending else x for j, x in enumerate(v))
               for v in basis]
    generators = VectorSet(IntVector(v) for v in current)

    for j in J:
        order = CostOrder(tuple(1 if i == j else 0 for i in range(n)),
                          tie_order=[j] + [i for i in range(n) if i != j])
        gb = buchberger(generators, order,
                        matrix=_flip_columns(A, pending))
        pending.discard(j)
        generators = VectorSet(flip_coordinate(g, j) for g in gb)

    final = VectorSet(IntVector(_sign_normalized(g.entries))
                      for g in generators)
    return ToricGenerators(A, VectorSet(final.canonical()))
