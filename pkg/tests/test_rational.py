from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dynbraid.rational import (
    EXEMPLARS,
    RationalSampler,
    admissible,
    circ,
    inverse,
    phi,
    run_rational_suite,
    spot_values,
    tri,
    tri_inverse,
)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@pytest.mark.parametrize("exemplar", EXEMPLARS)
@pytest.mark.parametrize("seed", [0, 1, 7])
def test_suite_passes(exemplar, seed):
    assert run_rational_suite(RationalSampler(exemplar, 100, seed=seed))


def test_spot_values():
    for name, got, want in spot_values():
        assert got == want, name
    assert circ(F(1), F(1), F(1)) == 5
    assert phi(F(1), F(1)) == 2
    assert inverse(F(1), F(1)) == F(-1, 4)


def test_samples_are_reproducible_and_admissible():
    a = RationalSampler("example_2_6", 50, seed=3).samples()
    assert a == RationalSampler("example_2_6", 50, seed=3).samples()
    assert a != RationalSampler("example_2_6", 50, seed=4).samples()
    assert all(admissible(lam, x) for lam, x, _, _ in a)


@given(fracs, fracs, fracs)
def test_inverse_two_sided(lam, a, b):
    if not admissible(lam, a):
        return
    ai = inverse(lam, a)
    assert circ(lam, a, ai) == 0
    assert circ(phi(lam, a), ai, a) == 0
    assert tri_inverse(lam, a, tri(lam, a, b)) == b


def test_pole_has_no_inverse():
    # at lam * a = -1 the map b -> a o b is constant
    lam, a = F(1), F(-1)
    assert not admissible(lam, a)
    assert {circ(lam, a, F(b)) for b in range(-3, 4)} == {a}


@pytest.mark.parametrize("kwargs, msg", [
    ({"exemplar": "example_9", "count": 5}, "unknown exemplar"),
    ({"exemplar": "example_2_6", "count": 0}, "at least 1"),
])
def test_sampler_rejects(kwargs, msg):
    with pytest.raises(ValueError, match=msg):
        RationalSampler(**kwargs)
