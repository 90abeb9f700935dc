"""Shared helpers for exhaustive fiber checks in the test suite."""

import itertools
import random

from latticeopt.lattice import IntMatrix, IntVector


def random_matrix(rng: random.Random, nrows: int, ncols: int,
                  lo: int = 0, hi: int = 4) -> IntMatrix:
    """Random matrix with no zero column (so boxed fibers are complete)."""
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(ncols)]
                for _ in range(nrows)]
        if all(any(rows[i][j] > 0 for i in range(nrows))
               for j in range(ncols)):
            return IntMatrix(rows)


def boxed_fibers(A: IntMatrix, box: int):
    """All fibers {z >= 0 : Az = b} that fit entirely inside [0, box]^n.

    Requires every column of A to be non-negative with a positive entry;
    then any feasible z for a right-hand side with max(b) <= box satisfies
    z_j <= box, so scanning the box enumerates those fibers completely.
    """
    rows = A.rows
    assert all(x >= 0 for row in rows for x in row)
    fibers = {}
    for z in itertools.product(range(box + 1), repeat=A.ncols):
        b = tuple(sum(r[j] * z[j] for j in range(len(z))) for r in rows)
        if max(b) <= box:
            fibers.setdefault(b, []).append(z)
    return fibers


def order_key(order, z):
    e = tuple(z)
    return (sum(c * x for c, x in zip(order.cost.entries, e)),
            tuple(e[i] for i in order.tie_order))


def check_test_set(A: IntMatrix, order, elements, box: int = 6, fibers=None):
    """Exhaustively verify the improving-move property on boxed fibers.

    Every non-optimal fiber point must admit t in `elements` with z - t
    feasible; the optimum must admit none (an improving move from it would
    contradict optimality).
    """
    moves = [tuple(t) for t in elements]
    if fibers is None:
        fibers = boxed_fibers(A, box)
    for b, pts in fibers.items():
        if len(pts) < 2:
            continue
        best = min(pts, key=lambda z: order_key(order, z))
        for z in pts:
            stepped = any(all(zi - ti >= 0 for zi, ti in zip(z, t))
                          for t in moves)
            if z == best:
                assert not stepped, (b, z)
            else:
                assert stepped, (b, z, moves)


def check_augmentation_exact(A, c, moves, box=6, fibers=None):
    """Augmenting from every boxed feasible point must reach the fiber optimum."""
    from latticeopt.augment import augment
    from latticeopt.lattice import CostOrder

    order = CostOrder(c)
    if fibers is None:
        fibers = boxed_fibers(A, box)
    for b, pts in fibers.items():
        best = min(pts, key=lambda z: order_key(order, z))
        for z in pts:
            res = augment(z, c, moves, A, b)
            assert tuple(res.solution) == best, (b, z, best, res)
            assert res.value == sum(ci * xi for ci, xi in zip(c, best))


def as_tuple_set(vectors):
    return {tuple(v) for v in vectors}


def shuffled_vectorset(rng, vectors):
    from latticeopt.lattice import VectorSet
    items = [IntVector(tuple(v)) for v in vectors]
    rng.shuffle(items)
    return VectorSet(items)
