"""Graver completion against the box oracle, and the scenario-block lift."""

import random

import pytest

from latticeopt import oracle
from latticeopt.graver import (
    GraverBasis,
    GraverResourceError,
    SipBlockStructure,
    contains_groebner,
    graver_basis,
    lift_sip_graver,
)
from latticeopt.groebner import GroebnerBasis
from latticeopt.lattice import CostOrder, IntMatrix, IntVector, VectorSet

import support


def test_single_primitive_direction():
    assert support.as_tuple_set(graver_basis(IntMatrix([[1, 1]]))) == \
        {(1, -1), (-1, 1)}


def test_weighted_row():
    assert support.as_tuple_set(graver_basis(IntMatrix([[1, 2]]))) == \
        {(2, -1), (-2, 1)}


def test_sum_matrix_all_pair_swaps():
    got = support.as_tuple_set(graver_basis(IntMatrix([[1, 1, 1]])))
    want = set()
    for i in range(3):
        for j in range(3):
            if i != j:
                t = [0, 0, 0]
                t[i], t[j] = 1, -1
                want.add(tuple(t))
    assert got == want


def test_trivial_kernel_empty():
    assert len(graver_basis(IntMatrix.identity(3))) == 0


def test_matches_box_oracle_on_random_matrices():
    rng = random.Random(614)
    cases = 0
    while cases < 12:
        nrows = rng.choice([1, 2])
        ncols = rng.choice([3, 4])
        A = IntMatrix([[rng.randint(-3, 3) for _ in range(ncols)]
                       for _ in range(nrows)])
        basis = graver_basis(A)
        bound = 4
        boxed = {tuple(g) for g in basis
                 if max(abs(x) for x in g) <= bound}
        assert boxed == support.as_tuple_set(
            oracle.enumerate_graver_in_box(A, bound))
        cases += 1


def test_pairwise_minimality_and_closure():
    rng = random.Random(303)
    for _ in range(8):
        A = support.random_matrix(rng, 2, 4, 0, 3)
        basis = graver_basis(A)
        elems = [tuple(g) for g in basis]
        for g in elems:
            assert IntVector(tuple(-x for x in g)) in basis.elements
        recs = [(g, tuple(abs(x) for x in g)) for g in elems]
        for g, ga in recs:
            for h, ha in recs:
                if g == h:
                    continue
                same_orthant = all(a * b >= 0 for a, b in zip(g, h))
                if same_orthant and all(x <= y for x, y in zip(ha, ga)):
                    pytest.fail("%r conforms to %r" % (h, g))


def test_element_cap_raises():
    with pytest.raises(GraverResourceError):
        graver_basis(IntMatrix([[3, -5, 7, -11, 2]]), element_cap=3)


def test_contains_groebner_and_mismatch():
    from latticeopt import groebner
    A = IntMatrix([[1, 1, 1]])
    gamma = graver_basis(A)
    gb = groebner.test_set(A, IntVector((1, 2, 3)))
    assert contains_groebner(gb, gamma)

    empty = GroebnerBasis(A, CostOrder((1, 2, 3)), VectorSet())
    assert contains_groebner(empty, gamma)

    rogue = GroebnerBasis(None, CostOrder((1, 2, 3)),
                          VectorSet([IntVector((1, 1, 0))]))
    assert not contains_groebner(rogue, gamma)

    other = graver_basis(IntMatrix([[1, 2, 0]]))
    with pytest.raises(ValueError):
        contains_groebner(gb, other)


def _lift_fixture():
    return SipBlockStructure(
        first_stage=IntMatrix.identity(2),
        technology=IntMatrix([[1, 0]]),
        recourse=IntMatrix([[1, 1]]),
        scenarios=2,
    )


def test_stacked_layout():
    s = _lift_fixture()
    assert s.stacked().rows == (
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (1, 0, 1, 1, 0, 0),
        (1, 0, 0, 0, 1, 1),
    )


def test_lift_matches_direct_computation():
    s = _lift_fixture()
    one = SipBlockStructure(s.first_stage, s.technology, s.recourse, 1)
    gamma1 = graver_basis(one.stacked())
    assert support.as_tuple_set(gamma1) == {(0, 0, 1, -1), (0, 0, -1, 1)}
    for n in (2, 3):
        sn = SipBlockStructure(s.first_stage, s.technology, s.recourse, n)
        lifted = lift_sip_graver(gamma1, sn)
        direct = graver_basis(sn.stacked())
        assert support.as_tuple_set(lifted) == support.as_tuple_set(direct)
        assert lifted.matrix == sn.stacked()


def test_lift_single_scenario_identity():
    s = _lift_fixture()
    one = SipBlockStructure(s.first_stage, s.technology, s.recourse, 1)
    gamma1 = graver_basis(one.stacked())
    assert support.as_tuple_set(lift_sip_graver(gamma1, one)) == \
        support.as_tuple_set(gamma1)


def test_lift_rejects_singular_first_stage():
    bad = SipBlockStructure(
        first_stage=IntMatrix([[1, 1]]),
        technology=IntMatrix([[1, 0]]),
        recourse=IntMatrix([[1, 1]]),
        scenarios=2,
    )
    one = SipBlockStructure(bad.first_stage, bad.technology, bad.recourse, 1)
    gamma1 = graver_basis(one.stacked())
    with pytest.raises(ValueError):
        lift_sip_graver(gamma1, bad)


def test_block_validation():
    with pytest.raises(ValueError):
        SipBlockStructure(IntMatrix.identity(2), IntMatrix([[1, 0, 0]]),
                          IntMatrix([[1, 1]]), 1)
    with pytest.raises(ValueError):
        SipBlockStructure(IntMatrix.identity(2), IntMatrix([[1, 0]]),
                          IntMatrix([[1, 1]]), 0)


def test_negation_closure_checked_by_constructor():
    A = IntMatrix([[1, 1]])
    with pytest.raises(AssertionError):
        GraverBasis(A, VectorSet([IntVector((1, -1))]))
