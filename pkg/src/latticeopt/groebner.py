"""Buchberger completion in kernel-vector form.

Basis elements are integer kernel vectors oriented so the positive part is
the leading side under the cost order; S-vectors are plain differences and
reduction is componentwise subtraction. Common monomial factors disappear
implicitly in vector arithmetic, which is sound for the saturated ideals
this package feeds in (the toric module's saturation rounds exist exactly
to make that so).
"""

from __future__ import annotations

import heapq
from typing import Iterable, Optional

from .lattice import CostOrder, IntMatrix, IntVector, VectorSet


class GroebnerBasis:
    """Reduced basis for one matrix/order pair; elements are oriented vectors."""

    __slots__ = ("matrix", "order", "elements")

    def __init__(self, matrix: Optional[IntMatrix], order: CostOrder,
                 elements: VectorSet):
        self.matrix = matrix
        self.order = order
        self.elements = elements
        if matrix is not None:
            for g in elements:
                assert matrix.in_kernel(g), g

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return "GroebnerBasis(%d elements, order=%r)" % (len(self), self.order)


# ----- tuple-level helpers (hot paths avoid IntVector wrappers) -----

def _orient_tuple(t, cost, tie):
    cv = sum(c * x for c, x in zip(cost, t))
    if cv > 0:
        return t
    if cv < 0:
        return tuple(-x for x in t)
    for i in tie:
        if t[i]:
            return t if t[i] > 0 else tuple(-x for x in t)
    raise ValueError("cannot orient the zero vector")


def _record(vec):
    """(vector, positive part, negative part, support mask of the lead)."""
    pos = tuple(x if x > 0 else 0 for x in vec)
    neg = tuple(-x if x < 0 else 0 for x in vec)
    mask = 0
    for i, x in enumerate(pos):
        if x:
            mask |= 1 << i
    return (vec, pos, neg, mask)


def _part_mask(part):
    mask = 0
    for i, x in enumerate(part):
        if x:
            mask |= 1 << i
    return mask


def _reduce(vec, elems, cost, tie, full):
    """Normal form of an oriented vector against prepared records.

    Lead reduction subtracts any element whose lead divides the lead; when
    `full`, the trailing part is reduced by *adding* elements whose lead
    divides it. Either move strictly descends in (lead, trail), so the loop
    terminates. Returns None when the vector cancels to zero.
    """
    while True:
        pos = tuple(x if x > 0 else 0 for x in vec)
        pmask = _part_mask(pos)
        hit = False
        for gv, gp, _, gm in elems:
            if gm & ~pmask:
                continue
            if all(a <= b for a, b in zip(gp, pos)):
                vec = tuple(a - b for a, b in zip(vec, gv))
                if not any(vec):
                    return None
                vec = _orient_tuple(vec, cost, tie)
                hit = True
                break
        if hit:
            continue
        if not full:
            return vec
        neg = tuple(-x if x < 0 else 0 for x in vec)
        nmask = _part_mask(neg)
        hit = False
        for gv, gp, _, gm in elems:
            if gm & ~nmask:
                continue
            if all(a <= b for a, b in zip(gp, neg)):
                vec = tuple(a + b for a, b in zip(vec, gv))
                if not any(vec):
                    return None
                hit = True
                break
        if not hit:
            return vec


# ----- public operations -----

def orient(v: IntVector, order: CostOrder) -> IntVector:
    """v or -v, whichever has its positive part on the leading side."""
    if v.is_zero():
        raise ValueError("cannot orient the zero vector")
    t = _orient_tuple(v.entries, order.cost.entries, order.tie_order)
    return v if t == v.entries else IntVector(t)


def normal_form(v: IntVector, G: "VectorSet | Iterable[IntVector]",
                order: CostOrder, full: bool = True) -> IntVector:
    """Reduce v against G; with full=True the trailing part is reduced too."""
    if v.is_zero():
        return v
    cost, tie = order.cost.entries, order.tie_order
    elems = [_record(g.entries) for g in G]
    out = _reduce(_orient_tuple(v.entries, cost, tie), elems, cost, tie, full)
    if out is None:
        return IntVector((0,) * len(v))
    return IntVector(out)


def _interreduce(vecs, order):
    """Minimalize by leads, tail-reduce survivors, iterate to the fixed point."""
    cost, tie = order.cost.entries, order.tie_order

    def pos_key(rec):
        pos = rec[1]
        return (sum(c * x for c, x in zip(cost, pos)),
                tuple(pos[i] for i in tie))

    work = sorted(set(vecs))
    for _ in range(100):
        recs = sorted((_record(v) for v in work), key=pos_key)
        kept = []
        for rec in recs:
            pos, pmask = rec[1], rec[3]
            dominated = any(
                not (km & ~pmask) and all(a <= b for a, b in zip(kp, pos))
                for _, kp, _, km in kept)
            if not dominated:
                kept.append(rec)
        out = []
        for idx, rec in enumerate(kept):
            others = kept[:idx] + kept[idx + 1:]
            t = _reduce(rec[0], others, cost, tie, True)
            if t is not None:
                out.append(t)
        new_work = sorted(set(out))
        if new_work == work:
            return work
        work = new_work
    raise AssertionError("inter-reduction did not stabilize")


def buchberger(seed: "VectorSet | Iterable[IntVector]", order: CostOrder,
               matrix: Optional[IntMatrix] = None) -> GroebnerBasis:
    """Complete a kernel-vector seed to the unique reduced basis for the order.

    Pairs are processed in ascending order of the componentwise max of the two
    leads (normal selection); pairs with disjoint lead supports reduce to zero
    and are skipped.
    """
    cost, tie = order.cost.entries, order.tie_order
    basis = []
    seen = set()
    for v in seed:
        if v.is_zero():
            continue
        t = _orient_tuple(v.entries, cost, tie)
        if t not in seen:
            seen.add(t)
            basis.append(_record(t))

    def lcm_key(ri, rj):
        lcm = tuple(a if a > b else b for a, b in zip(ri[1], rj[1]))
        return (sum(c * x for c, x in zip(cost, lcm)),
                tuple(lcm[i] for i in tie))

    heap = []
    tick = 0
    for i in range(len(basis)):
        for j in range(i):
            heapq.heappush(heap, (lcm_key(basis[i], basis[j]), tick, j, i))
            tick += 1
    while heap:
        _, _, i, j = heapq.heappop(heap)
        ri, rj = basis[i], basis[j]
        if not (ri[3] & rj[3]):
            continue
        s = tuple(a - b for a, b in zip(ri[0], rj[0]))
        if not any(s):
            continue
        s = _orient_tuple(s, cost, tie)
        s = _reduce(s, basis, cost, tie, False)
        if s is None or s in seen:
            continue
        seen.add(s)
        rec = _record(s)
        for k in range(len(basis)):
            heapq.heappush(heap, (lcm_key(basis[k], rec), tick, k, len(basis)))
            tick += 1
        basis.append(rec)

    reduced = _interreduce([rec[0] for rec in basis], order)
    return GroebnerBasis(matrix, order, VectorSet(IntVector(t) for t in reduced))


def test_set(A: IntMatrix, c: "IntVector | Iterable[int]",
             seed: Optional[VectorSet] = None) -> GroebnerBasis:
    """Reduced basis whose oriented elements form a test set for IP(c, .)."""
    order = CostOrder(c if isinstance(c, IntVector) else IntVector(c))
    if seed is None:
        from .toric import toric_generating_set  # import cycle: deferred
        seed = toric_generating_set(A).generators
    return buchberger(seed, order, matrix=A)
