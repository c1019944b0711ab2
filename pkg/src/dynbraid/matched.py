"""Matched pairs of dynamical groups, doubles and braided dynamical groups.

Storage convention: ``lharp[lam, a, x]`` holds ``a <-^{phi_G(lam, a)} x``, the
left action written at the shifted parameter, but indexed by the base
parameter ``lam``. Every identity below is phrased in that indexing, so no
call site ever has to recover ``lam`` from ``phi_G(lam, a)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DynSetMorphism,
    FiniteDynGroup,
    FiniteDynSet,
    InconsistencyError,
    PreconditionError,
    ShapeError,
    Verdict,
    _grid,
    as_table,
    first_violation,
    verify_dyn_group,
    verify_dyn_group_hom,
)
from .ybe import Braiding, check_all

__all__ = [
    "DynMatchedPair",
    "BraidedDynGroup",
    "verify_matched_pair",
    "double",
    "verify_braided",
    "braided_to_solution",
    "verify_braided_hom",
    "abelian_flip",
    "flip_braided",
    "braided_from_rharp",
    "pair_index",
]


@dataclass(frozen=True, eq=False)
class DynMatchedPair:
    g: FiniteDynGroup
    h: FiniteDynGroup
    rharp: np.ndarray
    lharp: np.ndarray

    def __post_init__(self):
        if self.g.lambda_size != self.h.lambda_size:
            raise ShapeError("matched pair: G and H must share the parameter set")
        L, Ng, Nh = self.g.lambda_size, self.g.elem_size, self.h.elem_size
        object.__setattr__(self, "rharp", as_table(self.rharp, (L, Ng, Nh), Nh, "rharp"))
        object.__setattr__(self, "lharp", as_table(self.lharp, (L, Ng, Nh), Ng, "lharp"))

    def sigma(self, lam: int, a: int, x: int) -> tuple[int, int]:
        return int(self.rharp[lam, a, x]), int(self.lharp[lam, a, x])


@dataclass(frozen=True, eq=False)
class BraidedDynGroup:
    g: FiniteDynGroup
    rharp: np.ndarray
    lharp: np.ndarray

    def __post_init__(self):
        L, N = self.g.lambda_size, self.g.elem_size
        object.__setattr__(self, "rharp", as_table(self.rharp, (L, N, N), N, "rharp"))
        object.__setattr__(self, "lharp", as_table(self.lharp, (L, N, N), N, "lharp"))

    @property
    def pair(self) -> DynMatchedPair:
        return DynMatchedPair(self.g, self.g, self.rharp, self.lharp)

    def same_as(self, other: "BraidedDynGroup") -> bool:
        return (
            self.g.same_as(other.g)
            and np.array_equal(self.rharp, other.rharp)
            and np.array_equal(self.lharp, other.lharp)
        )


def verify_matched_pair(mp: DynMatchedPair) -> Verdict:
    """All seven matched-pair identities, witness axioms ``mp-1`` .. ``mp-7``.

    ``mp-7`` (sigma is a morphism of dynamical sets) is checked first: it is
    part of the definition of sigma and the stored form of ``mp-5`` relies on
    it to name the parameter of the outer left action.
    """
    G, H = mp.g, mp.h
    pG, pH, PG, PH = G.phi, H.phi, G.product, H.product
    RH, LH = mp.rharp, mp.lharp
    L, Ng, Nh = G.lambda_size, G.elem_size, H.elem_size
    eG, eH = G.unit, H.unit

    lam, a, x = _grid(L, Ng, Nh)
    r = RH
    nu = pG[lam, a]
    lhs = pG[pH[lam, r], LH]
    rhs = pH[nu, x]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("mp-7", idx, int(lhs[idx]), int(rhs[idx]))

    lam2, x2 = _grid(L, Nh)
    lhs = RH[:, eG, :]
    if (idx := first_violation(lhs != x2)) is not None:
        return Verdict.fail("mp-1", idx, int(lhs[idx]), idx[1])

    lam4, a4, b4, x4 = _grid(L, Ng, Ng, Nh)
    ab = PG[lam4, a4, b4]
    lhs = RH[lam4, ab, x4]
    rhs = RH[lam4, a4, RH[pG[lam4, a4], b4, x4]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("mp-2", idx, int(lhs[idx]), int(rhs[idx]))

    lam4, a4, x4, y4 = _grid(L, Ng, Nh, Nh)
    nu4 = pG[lam4, a4]
    r4 = RH[lam4, a4, x4]
    l4 = LH[lam4, a4, x4]
    xy = PH[nu4, x4, y4]
    lhs = RH[lam4, a4, xy]
    rhs = PH[lam4, r4, RH[pH[lam4, r4], l4, y4]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("mp-3", idx, int(lhs[idx]), int(rhs[idx]))

    lhs = LH[:, :, eH]
    if (idx := first_violation(lhs != np.arange(Ng)[None, :])) is not None:
        return Verdict.fail("mp-4", idx, int(lhs[idx]), idx[1])

    lhs = LH[lam4, a4, xy]
    rhs = LH[pH[lam4, r4], l4, y4]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("mp-5", idx, int(lhs[idx]), int(rhs[idx]))

    lam4, a4, b4, x4 = _grid(L, Ng, Ng, Nh)
    nu4 = pG[lam4, a4]
    ab = PG[lam4, a4, b4]
    lhs = LH[lam4, ab, x4]
    inner = RH[nu4, b4, x4]
    rhs = PG[pH[lam4, RH[lam4, ab, x4]], LH[lam4, a4, inner], LH[nu4, b4, x4]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("mp-6", idx, int(lhs[idx]), int(rhs[idx]))
    return Verdict.ok()


def pair_index(x: int, a: int, n_g: int) -> int:
    """Flat index of ``(x, a)`` in ``H x G``."""
    return x * n_g + a


def double(mp: DynMatchedPair, *, check: bool = True) -> FiniteDynGroup:
    """The dynamical group on ``H x G`` (element ``(x, a)`` at index ``x * |G| + a``).

    ``(x, a) * (y, b) = (x . rh(mu, a, y), lh(mu, a, y) o_{phi_H(lam, first)} b)``
    with ``mu = phi_H(lam, x)``; the structure map is ``phi_G(phi_H(lam, x), a)``.
    """
    G, H = mp.g, mp.h
    L, Ng, Nh = G.lambda_size, G.elem_size, H.elem_size
    lam, x, a, y, b = _grid(L, Nh, Ng, Nh, Ng)
    mu = H.phi[lam, x]
    first = H.product[lam, x, mp.rharp[mu, a, y]]
    second = G.product[H.phi[lam, first], mp.lharp[mu, a, y], b]
    prod = (first * Ng + second).reshape(L, Nh * Ng, Nh * Ng)
    lam2, x2, a2 = _grid(L, Nh, Ng)
    phi = G.phi[H.phi[lam2, x2], a2].reshape(L, Nh * Ng)
    out = FiniteDynGroup(FiniteDynSet(phi), prod, pair_index(H.unit, G.unit, Ng))
    if check:
        v = verify_dyn_group(out)
        if not v:
            raise InconsistencyError(f"double failed verification: {v.witness}")
    return out


def verify_braided(b: BraidedDynGroup) -> Verdict:
    """Matched-pair identities for ``(g, g, sigma)`` followed by the recomposition law."""
    v = verify_matched_pair(b.pair)
    if not v:
        return v
    P = b.g.product
    lam, a, c = _grid(b.g.lambda_size, b.g.elem_size, b.g.elem_size)
    lhs = P[lam, b.rharp, b.lharp]
    if (idx := first_violation(lhs != P)) is not None:
        return Verdict.fail("braided-com", idx, int(lhs[idx]), int(P[idx]))
    return Verdict.ok()


def braided_to_solution(b: BraidedDynGroup, *, check: bool = True) -> Braiding:
    """``R(lam)(a, b) = (rharp(lam, a, b), lharp(lam, a, b))``.

    The output is checked for bijectivity, weight zero, fibered
    non-degeneracy and the DYBE; see
    :func:`dynbraid.ybe.check_nondegenerate_fibered` for why the fixed-parameter
    non-degeneracy test is not part of the postcondition.
    """
    R = Braiding(b.g.base, b.rharp, b.lharp)
    if check:
        v = check_all(R)
        if not v:
            raise InconsistencyError(f"braided solution failed {v.witness.axiom}: {v.witness}")
    return R


def verify_braided_hom(psi: DynSetMorphism, src: BraidedDynGroup, dst: BraidedDynGroup) -> Verdict:
    """``(Psi x Psi) . sigma = sigma' . (Psi x Psi)``, with the tensor rule on the right factor."""
    v = verify_dyn_group_hom(psi, src.g, dst.g)
    if not v:
        raise PreconditionError(f"not a homomorphism of the underlying groups: {v.witness}")
    f, phi = psi.f, src.g.phi
    lam, a, c = _grid(src.g.lambda_size, src.g.elem_size, src.g.elem_size)
    r, l = src.rharp, src.lharp
    lhs1 = f[lam, r]
    lhs2 = f[phi[lam, r], l]
    fa, fb = f[lam, a], f[phi[lam, a], c]
    rhs1 = dst.rharp[lam, fa, fb]
    rhs2 = dst.lharp[lam, fa, fb]
    bad = (lhs1 != rhs1) | (lhs2 != rhs2)
    if (idx := first_violation(bad)) is not None:
        return Verdict.fail("braided-hom", idx, [int(lhs1[idx]), int(lhs2[idx])],
                            [int(rhs1[idx]), int(rhs2[idx])])
    return Verdict.ok()


def braided_from_rharp(g: FiniteDynGroup, rharp) -> BraidedDynGroup:
    """Complete a right action to a candidate braided group.

    The left action is forced by the recomposition law:
    ``a <- b = bar(r)^lam o_{phi(lam, r)} (a o_lam b)`` with ``r = a -> b``.
    """
    L, N = g.lambda_size, g.elem_size
    r = as_table(rharp, (L, N, N), N, "rharp")
    lam, a, c = _grid(L, N, N)
    lharp = g.product[g.phi[lam, r], g.inverse[lam, r], g.product]
    return BraidedDynGroup(g, r, lharp)


def flip_braided(g: FiniteDynGroup) -> BraidedDynGroup:
    """``a -> b = b`` with the forced left action ``bar(b) o (a o b)``.

    For a constant abelian group this is ``a <- b = a``; on a constant
    non-abelian group the left action is conjugation ``bar(b) a b``.
    """
    L, N = g.lambda_size, g.elem_size
    return braided_from_rharp(g, np.broadcast_to(np.arange(N)[None, None, :], (L, N, N)))


def abelian_flip(g: FiniteDynGroup) -> BraidedDynGroup:
    """``a -> b = b`` and ``a <- b = a``: braided exactly when ``g`` is constant and abelian."""
    L, N = g.lambda_size, g.elem_size
    _, a, c = _grid(L, N, N)
    shape = (L, N, N)
    return BraidedDynGroup(g, np.broadcast_to(c, shape), np.broadcast_to(a, shape))
