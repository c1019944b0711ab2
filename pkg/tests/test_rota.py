import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynbraid.core import InconsistencyError, PreconditionError, ShapeError, verify_dyn_group
from dynbraid.fixtures import example_2_7, example_4_3, trivial_zn
from dynbraid.matched import braided_to_solution
from dynbraid.postbrace import identity_rbo, post_to_braided, sub_adjacent
from dynbraid.rota import (
    DynAction,
    RelativeRBO,
    descendant,
    factorization_group,
    graph_is_subgroup,
    rbo_solution,
    rbo_to_matched_pair,
    semidirect,
    trivial_action,
    verify_action,
    verify_rbo,
)


@pytest.fixture(scope="module")
def rbo():
    return identity_rbo(example_4_3())


def test_identity_operator_chain(rbo):
    assert verify_action(rbo.action)
    assert verify_rbo(rbo)
    assert graph_is_subgroup(rbo)
    d = descendant(rbo)
    assert d.same_as(sub_adjacent(example_4_3()))
    assert d.same_as(example_2_7())


def test_semidirect(rbo):
    sd = semidirect(rbo.action)
    assert sd.elem_size == 9
    assert verify_dyn_group(sd)


def test_factorization_group(rbo):
    f = factorization_group(rbo)
    assert f.elem_size == 9
    assert verify_dyn_group(f)


def test_unshifted_factorization_fails(rbo):
    f = factorization_group(rbo, check=False, shifted=False)
    v = verify_dyn_group(f)
    assert not v
    assert v.witness.axiom == "phi-asso"
    assert v.witness.index == (0, 1, 7)
    with pytest.raises(InconsistencyError):
        factorization_group(rbo, shifted=False)


def test_matched_pair_from_operator(rbo):
    mp = rbo_to_matched_pair(rbo)
    b = post_to_braided(example_4_3())
    assert np.array_equal(mp.rharp, b.rharp)
    assert np.array_equal(mp.lharp, b.lharp)
    R = rbo_solution(rbo)
    R2 = braided_to_solution(b)
    assert np.array_equal(R.varphi, R2.varphi) and np.array_equal(R.psi, R2.psi)


def test_trivial_action_semidirect_is_direct_product():
    g, h = trivial_zn(2, 1), trivial_zn(3, 1)
    act = trivial_action(g, h)
    assert verify_action(act)
    sd = semidirect(act)
    assert verify_dyn_group(sd)
    # commutative, since both factors are
    assert np.array_equal(sd.product[0], sd.product[0].T)


def test_action_needs_constant_target():
    with pytest.raises(ShapeError):
        trivial_action(trivial_zn(3, 3), example_2_7())


def test_non_permutation_action_rejected():
    g, h = trivial_zn(2, 1), trivial_zn(3, 1)
    act = DynAction(g, h, np.zeros((1, 2, 3), dtype=int))
    with pytest.raises(ShapeError, match=r"\(0, 0\)"):
        verify_action(act)


def test_descendant_requires_operator(rbo):
    bad = RelativeRBO(rbo.action, np.array([0, 1, 1]))
    assert not verify_rbo(bad)
    with pytest.raises(PreconditionError):
        descendant(bad)


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_graph_criterion_agrees_with_operator_check(b_map):
    r = identity_rbo(example_4_3())
    cand = RelativeRBO(r.action, np.array(b_map))
    assert bool(graph_is_subgroup(cand)) == bool(verify_rbo(cand))


def test_operators_on_example_exhaustive(rbo):
    # of the 27 maps Z/3 -> G, exactly the zero map, the identity and negation are operators
    found = []
    for b in np.ndindex(3, 3, 3):
        cand = RelativeRBO(rbo.action, np.array(b))
        ok = bool(verify_rbo(cand))
        assert ok == bool(graph_is_subgroup(cand))
        if ok:
            found.append(b)
    assert found == [(0, 0, 0), (0, 1, 2), (0, 2, 1)]


def test_zero_map_is_operator_for_trivial_action():
    # B = e is always an operator when the action is trivial
    g, h = trivial_zn(2, 2), trivial_zn(3, 2)
    r = RelativeRBO(trivial_action(g, h), np.zeros(3, dtype=int))
    assert verify_rbo(r)
    assert graph_is_subgroup(r)
    assert np.array_equal(descendant(r).product, h.product)
