import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynbraid.core import DynSetMorphism, FiniteDynGroup, FiniteDynSet, PreconditionError
from dynbraid.fixtures import (
    THREE_CIRC,
    THREE_PHI,
    THREE_TRI,
    cyclic_table,
    example_2_7,
    example_4_3,
    symmetric3_table,
    trivial_zn,
    z3_skewbrace,
)
from dynbraid.matched import braided_to_solution
from dynbraid.postbrace import (
    FiniteDynPostGroup,
    FiniteDynSkewBrace,
    braided_to_post,
    identity_rbo,
    post_to_braided,
    post_to_skewbrace,
    rbo_to_post,
    skewbrace_solution,
    skewbrace_to_post,
    sub_adjacent,
    trivial_post_group,
    verify_post_group,
    verify_post_hom,
    verify_skew_brace,
    verify_skew_brace_hom,
    weak_sub_adjacent,
)
from dynbraid.rota import verify_rbo

from oracles import post_group_failures, skew_brace_failures

Z3 = np.repeat(cyclic_table(3)[None], 3, axis=0)


def test_example_post_group():
    p = example_4_3()
    assert verify_post_group(p)
    assert post_group_failures(THREE_PHI, Z3, THREE_TRI, 0) == []


def test_sub_adjacent_is_three_element_group():
    g = sub_adjacent(example_4_3())
    ref = example_2_7()
    assert np.array_equal(g.product, ref.product)
    assert np.array_equal(g.phi, ref.phi)


def test_sub_adjacent_by_hand():
    # a o_lam b = a + (a |>_lam b) in Z/3
    p = example_4_3()
    lam, a, b = np.ix_(range(3), range(3), range(3))
    assert np.array_equal(p.circ, (a + THREE_TRI) % 3)


def test_skew_brace_fixture():
    s = z3_skewbrace()
    assert verify_skew_brace(s)
    assert skew_brace_failures(THREE_PHI, Z3, THREE_CIRC, 0) == []


def test_conversions_between_fixtures():
    p, s = example_4_3(), z3_skewbrace()
    assert post_to_skewbrace(p).same_as(s)
    assert skewbrace_to_post(s).same_as(p)
    assert braided_to_post(post_to_braided(p)).same_as(p)


def test_brace_solution_matches_braided_solution():
    p = example_4_3()
    assert skewbrace_solution(z3_skewbrace()).varphi.tolist() == braided_to_solution(post_to_braided(p)).varphi.tolist()
    assert np.array_equal(skewbrace_solution(z3_skewbrace()).psi, braided_to_solution(post_to_braided(p)).psi)


def test_identity_operator():
    p = example_4_3()
    r = identity_rbo(p)
    assert verify_rbo(r)
    assert rbo_to_post(r).same_as(p)


@pytest.mark.parametrize("n, L", [(2, 1), (3, 2), (4, 1)])
def test_trivial_post_group(n, L):
    g = trivial_zn(n, L)
    p = trivial_post_group(g)
    assert verify_post_group(p)
    assert np.array_equal(sub_adjacent(p).product, g.product)


def test_trivial_post_group_needs_constant_base():
    with pytest.raises(PreconditionError):
        trivial_post_group(example_2_7())


def test_weak_variant():
    g = trivial_zn(3, 2)
    tri = np.zeros((2, 3, 3), dtype=int)
    weak = FiniteDynPostGroup(g.base, g.product, tri, 0, weak=True)
    strict = FiniteDynPostGroup(g.base, g.product, tri, 0)
    assert verify_post_group(weak)
    assert verify_post_group(strict).witness.axiom == "bijectivity"
    # a o b = a . (a |> b) = a
    _, a, _ = np.ix_(range(2), range(3), range(3))
    assert np.array_equal(weak_sub_adjacent(weak), np.broadcast_to(a, (2, 3, 3)))
    with pytest.raises(PreconditionError):
        sub_adjacent(weak)


def test_pre_flag():
    assert verify_post_group(FiniteDynPostGroup(FiniteDynSet(THREE_PHI), Z3, THREE_TRI, 0, pre=True))
    s3 = FiniteDynGroup.constant(symmetric3_table()[None], 0)
    p = FiniteDynPostGroup(s3.base, s3.product, np.broadcast_to(np.arange(6), (1, 6, 6)), 0, pre=True)
    assert verify_post_group(p).witness.axiom == "dot:abelian"
    assert verify_post_group(FiniteDynPostGroup(p.base, p.dot, p.tri, 0))


def test_phi_condition_is_checked():
    # trivial |> on constant Z/3 satisfies every algebraic law whatever phi is;
    # only the structure-map conditions can reject this phi
    phi = np.array([[0, 1, 1], [1, 0, 0]])
    ids = np.broadcast_to(np.arange(3), (2, 3, 3))
    dot = np.repeat(cyclic_table(3)[None], 2, axis=0)
    v = verify_post_group(FiniteDynPostGroup(FiniteDynSet(phi), dot, ids, 0))
    assert v.witness.axiom == "phi-asso"
    assert v.witness.index == (0, 1, 1)
    assert post_group_failures(phi, dot, ids, 0) == ["phi-asso"]
    shifted = np.array([[1, 1, 1], [0, 0, 0]])
    v = verify_post_group(FiniteDynPostGroup(FiniteDynSet(shifted), dot, ids, 0))
    assert v.witness.axiom == "phi-unit"


@given(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)))
def test_tri_mutants_agree_with_oracle(m):
    lam, a, b, val = m
    T = THREE_TRI.copy()
    T[lam, a, b] = val
    v = verify_post_group(FiniteDynPostGroup(FiniteDynSet(THREE_PHI), Z3, T, 0))
    oracle = post_group_failures(THREE_PHI, Z3, T, 0)
    assert bool(v) == (oracle == [])
    if not v:
        assert v.witness.axiom in oracle


@given(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)))
def test_circ_mutants_agree_with_oracle(m):
    lam, a, b, val = m
    C = THREE_CIRC.copy()
    C[lam, a, b] = val
    v = verify_skew_brace(FiniteDynSkewBrace(FiniteDynSet(THREE_PHI), Z3, C, 0))
    assert bool(v) == (skew_brace_failures(THREE_PHI, Z3, C, 0) == [])


def test_identity_homs():
    p, s = example_4_3(), z3_skewbrace()
    psi = DynSetMorphism.identity(p.base)
    assert verify_post_hom(psi, p, p)
    assert verify_skew_brace_hom(psi, s, s)


def test_non_morphism_is_rejected():
    # negation permutes Z/3 but does not commute with phi
    p = example_4_3()
    f = np.broadcast_to((-np.arange(3)) % 3, (3, 3))
    with pytest.raises(PreconditionError):
        verify_post_hom(DynSetMorphism(p.base, p.base, f), p, p)
