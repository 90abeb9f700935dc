"""Exact integer vectors, cost orders, and integer kernel lattice bases.

Everything downstream (completion procedures, augmentation, the oracle)
works on these types. All arithmetic is arbitrary-precision Python ints;
there is deliberately no floating-point or rational mode.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class IntVector:
    """Immutable dense vector of arbitrary-precision integers."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[int]):
        self.entries = tuple(entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __add__(self, other: "IntVector") -> "IntVector":
        return IntVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "IntVector") -> "IntVector":
        return IntVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "IntVector":
        return IntVector(-a for a in self.entries)

    def scale(self, k: int) -> "IntVector":
        return IntVector(k * a for a in self.entries)

    def dot(self, other: "IntVector") -> int:
        return sum(a * b for a, b in zip(self.entries, other.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntVector) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"IntVector({list(self.entries)!r})"


def as_vector(v: "IntVector | Sequence[int]") -> IntVector:
    return v if isinstance(v, IntVector) else IntVector(v)


class SignSplit(NamedTuple):
    """Positive and negative parts of a vector: positive - negative = source."""

    positive: IntVector
    negative: IntVector


def sign_split(v: IntVector) -> SignSplit:
    pos = IntVector(a if a > 0 else 0 for a in v.entries)
    neg = IntVector(-a if a < 0 else 0 for a in v.entries)
    return SignSplit(pos, neg)


def conforms(a: IntVector, b: IntVector) -> bool:
    """True iff a lies in the same orthant as b with entries no larger in magnitude."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch: %d vs %d" % (len(a), len(b)))
    for x, y in zip(a.entries, b.entries):
        if x * y < 0 or abs(x) > abs(y):
            return False
    return True


class CostOrder:
    """Total order on non-negative vectors: compare c.x first, ties lexicographic.

    The tie-break reads coordinates in the declared variable order by default;
    an explicit permutation reorders it (used by elimination orders, which move
    one coordinate to the front). Negative cost entries are rejected: with
    c >= 0 the order is a well-founded monomial order, which the completion
    procedures rely on for termination.
    """

    __slots__ = ("cost", "tie_order")

    def __init__(self, cost: "IntVector | Sequence[int]",
                 tie_order: Optional[Sequence[int]] = None):
        self.cost = as_vector(cost)
        if any(e < 0 for e in self.cost.entries):
            raise ValueError("cost entries must be non-negative")
        n = len(self.cost)
        if tie_order is None:
            self.tie_order = tuple(range(n))
        else:
            self.tie_order = tuple(tie_order)
            if sorted(self.tie_order) != list(range(n)):
                raise ValueError("tie_order must be a permutation of 0..n-1")

    @property
    def dim(self) -> int:
        return len(self.cost)

    def dot(self, v: IntVector) -> int:
        return self.cost.dot(v)

    def compare(self, u: IntVector, v: IntVector) -> int:
        """-1, 0, or +1 as u is below, equal to, or above v in the order."""
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError("dimension mismatch with cost vector")
        cu, cv = self.cost.dot(u), self.cost.dot(v)
        if cu != cv:
            return 1 if cu > cv else -1
        ue, ve = u.entries, v.entries
        for i in self.tie_order:
            if ue[i] != ve[i]:
                return 1 if ue[i] > ve[i] else -1
        return 0

    def key(self, v: IntVector):
        """Sort key: ascending in the order."""
        e = v.entries
        return (self.cost.dot(v), tuple(e[i] for i in self.tie_order))

    def __repr__(self) -> str:
        return f"CostOrder({list(self.cost.entries)!r})"


class IntMatrix:
    """Immutable rectangular grid of arbitrary-precision integers."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        self.rows = tuple(tuple(r) for r in rows)
        if not self.rows:
            raise ValueError("matrix needs at least one row")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def mat_vec(self, v: "IntVector | Sequence[int]") -> IntVector:
        ve = v.entries if isinstance(v, IntVector) else tuple(v)
        if len(ve) != self.ncols:
            raise ValueError("dimension mismatch: %d cols vs %d entries"
                             % (self.ncols, len(ve)))
        return IntVector(sum(a * x for a, x in zip(row, ve)) for row in self.rows)

    def in_kernel(self, v: IntVector) -> bool:
        return self.mat_vec(v).is_zero()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]!r})"


class VectorSet:
    """Deduplicated, insertion-ordered collection of IntVectors.

    Iteration follows insertion order (deterministic); canonical() gives a
    sorted listing for order-independent comparisons and exports.
    """

    __slots__ = ("_vecs",)

    def __init__(self, vectors: Iterable[IntVector] = ()):
        self._vecs: dict = {}
        for v in vectors:
            self.add(v)

    def add(self, v: IntVector) -> bool:
        if v.entries in self._vecs:
            return False
        self._vecs[v.entries] = v
        return True

    def __contains__(self, v: IntVector) -> bool:
        return v.entries in self._vecs

    def __iter__(self) -> Iterator[IntVector]:
        return iter(self._vecs.values())

    def __len__(self) -> int:
        return len(self._vecs)

    def canonical(self) -> list:
        return [self._vecs[k] for k in sorted(self._vecs)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VectorSet) and self._vecs.keys() == other._vecs.keys()

    def __repr__(self) -> str:
        return f"VectorSet({[list(v.entries) for v in self.canonical()]!r})"


def _xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with a*x + b*y = g, g > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _size_reduce(vectors: list) -> list:
    """Shrink basis vector magnitudes by integer pairwise reduction.

    Every replacement v_i <- v_i - t*v_k is unimodular, so the spanned
    lattice is unchanged. Accepting only strict norm decreases guarantees
    termination; the scan order is fixed, so the result is deterministic.
    """
    vecs = [list(v) for v in vectors]
    changed = True
    while changed:
        changed = False
        for i in range(len(vecs)):
            for k in range(len(vecs)):
                if i == k:
                    continue
                vi, vk = vecs[i], vecs[k]
                num = sum(a * b for a, b in zip(vi, vk))
                den = sum(b * b for b in vk)
                t = (2 * num + den) // (2 * den)
                if t == 0:
                    continue
                cand = [a - t * b for a, b in zip(vi, vk)]
                if sum(a * a for a in cand) < sum(a * a for a in vi):
                    vecs[i] = cand
                    changed = True
    return vecs


def kernel_basis(matrix: IntMatrix) -> VectorSet:
    """Lattice basis of the full integer kernel {v : A.v = 0}.

    Column-style Hermite reduction: unimodular column operations bring A to
    echelon form while the same operations accumulate on an identity block;
    transform columns under zeroed echelon columns span ker(A) over Z exactly
    (the transform is unimodular, so the basis is not finite-index short).
    """
    m, n = matrix.nrows, matrix.ncols
    work = [list(matrix.column(j)) for j in range(n)]
    trans = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    lead = 0
    for r in range(m):
        pivots = [j for j in range(lead, n) if work[j][r] != 0]
        if not pivots:
            continue
        p = pivots[0]
        for j in pivots[1:]:
            a, b = work[p][r], work[j][r]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            for cols in (work, trans):
                cp, cj = cols[p], cols[j]
                cols[p] = [x * u + y * v for u, v in zip(cp, cj)]
                # det [[x, -bg], [y, ag]] = (a*x + b*y)/g = 1: unimodular
                cols[j] = [ag * v - bg * u for u, v in zip(cp, cj)]
        work[lead], work[p] = work[p], work[lead]
        trans[lead], trans[p] = trans[p], trans[lead]
        lead += 1
    kernel = [trans[j] for j in range(lead, n)]
    assert all(not any(work[j]) for j in range(lead, n))
    return VectorSet(IntVector(v) for v in _size_reduce(kernel))
