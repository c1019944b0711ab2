import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynbraid.core import (
    DynSetMorphism,
    FiniteDynGroup,
    FiniteDynSet,
    InconsistencyError,
    PreconditionError,
    ShapeError,
    Verdict,
    VerificationError,
    inverse_table,
    is_dynamical_subgroup,
    left_translations_injective,
    trivial_from_group,
    verify_dyn_group,
    verify_dyn_group_hom,
    verify_group_table,
    verify_morphism,
)
from dynbraid.fixtures import (
    THREE_CIRC,
    THREE_PHI,
    cyclic_table,
    example_2_7,
    klein_table,
    symmetric3_table,
    trivial_zn,
    z4_klein_constant,
)

from oracles import dyn_group_failures, inverse_by_search


def test_example_verifies_and_matches_oracle():
    g = example_2_7()
    assert verify_dyn_group(g)
    assert dyn_group_failures(g.phi, g.product, g.unit) == []


def test_example_inverse_table():
    g = example_2_7()
    expected = [[0, 1, 2], [0, 2, 2], [0, 1, 1]]
    assert g.inverse.tolist() == expected
    assert inverse_by_search(THREE_PHI, THREE_CIRC, 0) == expected
    assert g.inv(1, 1) == 2 and g.inv(2, 2) == 1


def test_inverse_differs_between_slices():
    # the inverse depends on the parameter: 1 is self-inverse at l1 but not at l2
    g = example_2_7()
    assert g.inv(0, 1) == 1
    assert g.inv(1, 1) == 2


def test_tables_are_read_only():
    g = example_2_7()
    with pytest.raises(ValueError):
        g.product[0, 0, 0] = 1
    with pytest.raises(ValueError):
        g.inverse[0, 0] = 1


@pytest.mark.parametrize("phi, prod, msg", [
    (np.zeros((0, 3)), np.zeros((0, 3, 3)), "degenerate"),
    (THREE_PHI, THREE_CIRC[:, :2], "dimensions"),
    (THREE_PHI, THREE_CIRC + 1, "entries"),
    (THREE_PHI[:, :2], THREE_CIRC, "dimensions"),
])
def test_shape_errors(phi, prod, msg):
    with pytest.raises(ShapeError):
        FiniteDynGroup(FiniteDynSet(phi), prod, 0)


def test_phi_out_of_range():
    with pytest.raises(ShapeError):
        FiniteDynSet([[0, 3]])


def test_unit_out_of_range():
    with pytest.raises(ShapeError):
        FiniteDynGroup(FiniteDynSet(THREE_PHI), THREE_CIRC, 3)


def test_verdict_invariant():
    with pytest.raises(ValueError):
        Verdict(True, Verdict.fail("x", (), 0, 1).witness)
    v = Verdict.fail("unit", (np.int64(1), 2), np.int64(3), 4, side="left")
    assert not v
    assert v.as_record() == {"passed": False, "witness": {
        "axiom": "unit", "index": [1, 2], "lhs": 3, "rhs": 4, "detail": {"side": "left"}}}
    assert v.prefixed("dot").witness.axiom == "dot:unit"
    assert Verdict.ok().prefixed("dot").passed


@pytest.mark.parametrize("n", [1, 2, 3, 5])
@pytest.mark.parametrize("L", [1, 2, 3])
def test_trivial_groups(n, L):
    g = trivial_zn(n, L)
    assert verify_dyn_group(g)
    assert g.base.is_constant()
    assert g.constant_flag


def test_mixed_constant_slices():
    g = z4_klein_constant()
    assert verify_dyn_group(g)
    # Z/4 has an element of order 4, the Klein group does not
    assert g.product[0, 1, 1] != 0 and g.product[1, 1, 1] == 0


def test_trivial_from_non_group_raises():
    with pytest.raises(VerificationError) as info:
        trivial_from_group(np.zeros((2, 2), dtype=int), 2)
    assert not info.value.verdict


@pytest.mark.parametrize("table, ok", [
    (cyclic_table(4), True),
    (klein_table(), True),
    (symmetric3_table(), True),
    (np.array([[0, 1], [1, 1]]), False),
])
def test_group_tables(table, ok):
    assert bool(verify_group_table(table)) is ok


def _mutants():
    g = example_2_7()
    out = []
    for lam in range(3):
        for a in range(3):
            for b in range(3):
                for v in range(3):
                    if v != g.product[lam, a, b]:
                        P = g.product.copy()
                        P[lam, a, b] = v
                        out.append(((lam, a, b), P))
    return out


@pytest.mark.parametrize("where, P", _mutants())
def test_single_entry_mutants_agree_with_oracle(where, P):
    g = FiniteDynGroup(FiniteDynSet(THREE_PHI), P, 0)
    v = verify_dyn_group(g)
    oracle = dyn_group_failures(THREE_PHI, P, 0)
    assert bool(v) == (oracle == [])
    if not v:
        assert v.witness.axiom in oracle


def test_phi_mutant_reports_phi_unit():
    phi = THREE_PHI.copy()
    phi[1, 0] = 2
    v = verify_dyn_group(FiniteDynGroup(FiniteDynSet(phi), THREE_CIRC, 0))
    assert v.witness.axiom == "phi-unit" and v.witness.index == (1,)


def test_witness_is_lexicographically_first():
    # break associativity twice; the earlier index must be reported
    g = example_2_7()
    P = g.product.copy()
    P[2, 2, 1] = 1
    P[2, 2, 2] = 2
    v = verify_dyn_group(FiniteDynGroup(g.base, P, 0))
    assert not v
    idx = v.witness.index
    # every tuple before idx satisfies the reported axiom
    phi = THREE_PHI
    if v.witness.axiom == "associativity":
        for t in np.ndindex(3, 3, 3, 3):
            if t == idx:
                break
            lam, a, b, c = t
            assert P[lam, a, P[phi[lam, a], b, c]] == P[lam, P[lam, a, b], c]


@st.composite
def small_tables(draw):
    L = draw(st.integers(1, 2))
    N = draw(st.integers(1, 3))
    phi = draw(st.lists(st.integers(0, L - 1), min_size=L * N, max_size=L * N))
    prod = draw(st.lists(st.integers(0, N - 1), min_size=L * N * N, max_size=L * N * N))
    e = draw(st.integers(0, N - 1))
    return np.array(phi).reshape(L, N), np.array(prod).reshape(L, N, N), e


@given(small_tables())
def test_random_tables_agree_with_oracle(data):
    phi, P, e = data
    v = verify_dyn_group(FiniteDynGroup(FiniteDynSet(phi), P, e))
    oracle = dyn_group_failures(phi, P, e)
    assert bool(v) == (oracle == [])
    if not v:
        assert v.witness.axiom in oracle


def test_inverse_table_raises_on_unverified():
    P = np.zeros((1, 2, 2), dtype=int)
    g = FiniteDynGroup(FiniteDynSet.constant(1, 2), P, 0)
    with pytest.raises(InconsistencyError):
        inverse_table(g)


def test_left_translations_injective():
    assert left_translations_injective(example_2_7())


def test_identity_morphism_and_hom():
    g = example_2_7()
    psi = DynSetMorphism.identity(g.base)
    assert verify_morphism(psi)
    assert verify_dyn_group_hom(psi, g, g)


def test_constant_map_is_not_a_hom():
    g = example_2_7()
    f = np.zeros((3, 3), dtype=int)
    f[:, 1] = 1
    psi = DynSetMorphism(g.base, g.base, f)
    assert not verify_morphism(psi)


def test_hom_requires_verified_groups():
    g = example_2_7()
    bad = FiniteDynGroup(g.base, np.zeros((3, 3, 3), dtype=int), 0)
    with pytest.raises(PreconditionError):
        verify_dyn_group_hom(DynSetMorphism.identity(g.base), bad, g)


def test_subgroups():
    g = example_2_7()
    assert is_dynamical_subgroup(g, [0])
    assert is_dynamical_subgroup(g, [0, 1, 2])
    assert not is_dynamical_subgroup(g, [0, 1])
