import numpy as np
import pytest

from dynbraid.core import DynSetMorphism, FiniteDynGroup, PreconditionError, verify_dyn_group
from dynbraid.fixtures import cyclic_table, example_2_7, example_4_3, symmetric3_table, trivial_zn
from dynbraid.matched import (
    BraidedDynGroup,
    DynMatchedPair,
    abelian_flip,
    braided_from_rharp,
    braided_to_solution,
    double,
    flip_braided,
    pair_index,
    verify_braided,
    verify_braided_hom,
    verify_matched_pair,
)
from dynbraid.postbrace import post_to_braided
from dynbraid.ybe import check_compatible_actions, check_dybe, check_weight_zero

from oracles import dybe_holds, forced_lharp


@pytest.fixture(scope="module")
def b43():
    return post_to_braided(example_4_3())


def test_example_braided_group(b43):
    assert verify_braided(b43)
    assert verify_matched_pair(b43.pair)
    # the underlying group is the three-element dynamical group
    assert b43.g.same_as(example_2_7())


def test_left_action_is_forced(b43):
    g = b43.g
    assert np.array_equal(b43.lharp, forced_lharp(g.phi, g.product, b43.rharp))


def test_swapped_actions_fail_first_identity(b43):
    swapped = BraidedDynGroup(b43.g, b43.lharp, b43.rharp)
    v = verify_braided(swapped)
    assert not v
    assert v.witness.axiom == "mp-7"
    assert v.witness.index == (0, 1, 2)


def test_sigma_lookup(b43):
    assert b43.pair.sigma(0, 1, 1) == (2, 2)


def test_solution_and_compatibility(b43):
    R = braided_to_solution(b43)
    assert check_compatible_actions(b43.g, R)
    assert check_weight_zero(R)
    assert check_dybe(R)
    assert dybe_holds(R.base.phi, R.varphi, R.psi)


def test_double_is_nine_element_group(b43):
    d = double(b43.pair)
    assert d.elem_size == 9
    assert verify_dyn_group(d)
    # the unit is (e_H, e_G)
    assert d.unit == pair_index(0, 0, 3)


def test_double_contains_both_factors(b43):
    d = double(b43.pair)
    mp = b43.pair
    Ng = mp.g.elem_size
    # (e, a) * (e, b) = (e, a o b) and (x, e) * (y, e) = (x . y, e)
    for lam in range(3):
        for a in range(3):
            for b in range(3):
                assert d.product[lam, a, b] == mp.g.product[lam, a, b]
                assert d.product[lam, a * Ng, b * Ng] == mp.h.product[lam, a, b] * Ng


@pytest.mark.parametrize("n, L", [(2, 1), (3, 2), (4, 1)])
def test_abelian_flip_is_braided(n, L):
    g = trivial_zn(n, L)
    b = abelian_flip(g)
    assert verify_braided(b)
    assert b.same_as(flip_braided(g))


def test_flip_on_symmetric_group_is_braided():
    # the forced left action on a constant non-abelian group is conjugation,
    # which satisfies every matched-pair identity
    g = FiniteDynGroup.constant(symmetric3_table()[None], 0)
    b = flip_braided(g)
    assert verify_braided(b)
    assert not verify_braided(abelian_flip(g))


def test_braided_from_rharp_fills_left_action(b43):
    b = braided_from_rharp(b43.g, b43.rharp)
    assert b.same_as(b43)


def test_identity_is_braided_hom(b43):
    psi = DynSetMorphism.identity(b43.g.base)
    assert verify_braided_hom(psi, b43, b43)


def test_braided_hom_needs_group_hom(b43):
    f = np.zeros((3, 3), dtype=int)
    psi = DynSetMorphism(b43.g.base, b43.g.base, f)
    with pytest.raises(PreconditionError):
        verify_braided_hom(psi, b43, b43)


def test_matched_pair_shape_check():
    g = trivial_zn(3, 2)
    h = trivial_zn(2, 1)
    with pytest.raises(Exception):
        DynMatchedPair(g, h, np.zeros((2, 3, 2)), np.zeros((2, 3, 2)))


def test_trivial_matched_pair_double_is_direct_product():
    g = trivial_zn(3, 1)
    h = trivial_zn(2, 1)
    _, a, x = np.ix_(range(1), range(3), range(2))
    mp = DynMatchedPair(g, h, np.broadcast_to(x, (1, 3, 2)), np.broadcast_to(a, (1, 3, 2)))
    assert verify_matched_pair(mp)
    d = double(mp)
    # Z/2 x Z/3 is cyclic of order 6
    orders = []
    for u in range(6):
        k, w = 1, u
        while w != d.unit:
            w = d.product[0, w, u]
            k += 1
        orders.append(k)
    assert max(orders) == 6
    assert np.array_equal(np.sort(d.product[0], axis=1), np.tile(np.arange(6), (6, 1)))
    assert cyclic_table(6).shape == d.product[0].shape
