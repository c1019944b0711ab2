"""Exact-rational spot checks for the continuous exemplars over the rationals.

The dynamical group has ``Lambda = G = Q`` with

    phi(lam, a)  = lam * (lam * a + 1)
    a o_lam b    = a + (lam * a + 1)**2 * b
    inverse      = -a / (lam * a + 1)**2

and the post-group shares ``phi``, takes ``+`` as every ``._lam`` and sets
``a |>_lam b = (lam * a + 1)**2 * b``. Both are only well defined away from
``lam * a + 1 == 0``, where the left translation by ``a`` is constant, so the
sampler never draws such pairs.

All arithmetic uses :class:`fractions.Fraction`; nothing is rounded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Verdict

__all__ = [
    "EXEMPLARS",
    "RationalSampler",
    "phi",
    "circ",
    "inverse",
    "tri",
    "tri_inverse",
    "run_rational_suite",
    "spot_values",
]

EXEMPLARS = ("example_2_6", "example_4_2")


def _w(lam: Fraction, a: Fraction) -> Fraction:
    return lam * a + 1


def phi(lam: Fraction, a: Fraction) -> Fraction:
    return lam * _w(lam, a)


def circ(lam: Fraction, a: Fraction, b: Fraction) -> Fraction:
    return a + _w(lam, a) ** 2 * b


def inverse(lam: Fraction, a: Fraction) -> Fraction:
    return -a / _w(lam, a) ** 2


def tri(lam: Fraction, a: Fraction, b: Fraction) -> Fraction:
    return _w(lam, a) ** 2 * b


def tri_inverse(lam: Fraction, a: Fraction, b: Fraction) -> Fraction:
    return b / _w(lam, a) ** 2


def admissible(lam: Fraction, a: Fraction) -> bool:
    return _w(lam, a) != 0


@dataclass(frozen=True)
class RationalSampler:
    exemplar: str
    count: int
    seed: int = 0
    max_num: int = 9
    max_den: int = 9

    def __post_init__(self):
        if self.exemplar not in EXEMPLARS:
            raise ValueError(f"unknown exemplar {self.exemplar!r}; expected one of {', '.join(EXEMPLARS)}")
        if self.count < 1:
            raise ValueError("sample count must be at least 1")

    def _draw(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.max_num, self.max_num), rng.randint(1, self.max_den))

    def samples(self):
        """``count`` tuples ``(lam, a, b, c)`` with ``lam * a + 1 != 0``, reproducible from ``seed``."""
        rng = random.Random(self.seed)
        out = []
        while len(out) < self.count:
            lam, a, b, c = (self._draw(rng) for _ in range(4))
            if admissible(lam, a):
                out.append((lam, a, b, c))
        return out


def _fail(axiom: str, point, lhs, rhs) -> Verdict:
    return Verdict.fail(axiom, tuple(str(v) for v in point), str(lhs), str(rhs))


def _group_identities(lam, a, b, c):
    nu = phi(lam, a)
    ab = circ(lam, a, b)
    yield "associativity", circ(lam, ab, c), circ(lam, a, circ(nu, b, c))
    yield "phi-asso", phi(lam, ab), phi(nu, b)
    yield "unit", circ(lam, 0, a), a
    yield "unit", circ(lam, a, 0), a
    yield "phi-unit", phi(lam, 0), lam
    ai = inverse(lam, a)
    yield "inverse", circ(lam, a, ai), 0
    yield "inverse", circ(nu, ai, a), 0


def _post_identities(lam, a, b, c):
    nu = phi(lam, a)
    yield "bijectivity", tri_inverse(lam, a, tri(lam, a, b)), b
    yield "unit-laws", tri(lam, a, 0), 0
    yield "unit-laws", tri(lam, 0, a), a
    yield "distributivity", tri(lam, a, b + c), tri(lam, a, b) + tri(lam, a, c)
    sub = a + tri(lam, a, b)
    yield "weighted-associativity", tri(lam, sub, c), tri(lam, a, tri(nu, b, c))
    yield "phi-asso", phi(lam, sub), phi(nu, b)
    yield "sub-adjacent", sub, circ(lam, a, b)


def spot_values() -> list[tuple[str, Fraction, Fraction]]:
    """Fixed points worked out by hand: ``1 o_1 1 = 5``, ``phi(1, 1) = 2``, inverse of 1 at 1 is ``-1/4``."""
    one = Fraction(1)
    return [
        ("spot:circ(1,1,1)", circ(one, one, one), Fraction(5)),
        ("spot:phi(1,1)", phi(one, one), Fraction(2)),
        ("spot:inverse(1,1)", inverse(one, one), Fraction(-1, 4)),
        ("spot:circ(0,2,3)", circ(Fraction(0), Fraction(2), Fraction(3)), Fraction(5)),
    ]


def run_rational_suite(s: RationalSampler) -> Verdict:
    """Check every identity of the exemplar at each sample; the witness carries exact fractions."""
    for name, got, want in spot_values():
        if got != want:
            return Verdict.fail(name, (), str(got), str(want))
    identities = _group_identities if s.exemplar == "example_2_6" else _post_identities
    for point in s.samples():
        lam, a, b, c = point
        if s.exemplar == "example_2_6":
            # at lam = 0 the product is plain addition
            if circ(Fraction(0), a, b) != a + b:
                return _fail("zero-parameter", (0, a, b), circ(Fraction(0), a, b), a + b)
        for axiom, lhs, rhs in identities(lam, a, b, c):
            if lhs != rhs:
                return _fail(axiom, point, lhs, rhs)
    return Verdict.ok()
