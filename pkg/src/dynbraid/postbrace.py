"""Dynamical post-groups, dynamical skew braces and the conversions between them.

A post-group keeps a constant product ``dot[lam, a, b]`` (one group per
parameter, shared unit) and an operation ``tri[lam, a, b] = a |>_lam b``.
Its sub-adjacent product is ``a o_lam b = a ._lam (a |>_lam b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import (
    ConstantDynGroup,
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
    verify_morphism,
)
from .matched import BraidedDynGroup, braided_from_rharp, verify_braided
from .rota import DynAction, RelativeRBO, descendant, verify_action, verify_rbo
from .ybe import Braiding, check_all

__all__ = [
    "FiniteDynPostGroup",
    "FiniteDynSkewBrace",
    "verify_post_group",
    "sub_adjacent",
    "weak_sub_adjacent",
    "post_to_braided",
    "braided_to_post",
    "verify_skew_brace",
    "post_to_skewbrace",
    "skewbrace_to_post",
    "skewbrace_solution",
    "rbo_to_post",
    "identity_rbo",
    "verify_post_hom",
    "verify_skew_brace_hom",
    "trivial_post_group",
]


def _constant_group(base: FiniteDynSet, dot: np.ndarray, unit: int) -> ConstantDynGroup:
    const = FiniteDynSet.constant(base.lambda_size, base.elem_size)
    return ConstantDynGroup(const, dot, unit)


@dataclass(frozen=True, eq=False)
class FiniteDynPostGroup:
    """``weak`` waives bijectivity of ``b -> a |> b``; ``pre`` additionally asks every ``._lam`` to be abelian."""

    base: FiniteDynSet
    dot: np.ndarray
    tri: np.ndarray
    unit: int
    weak: bool = False
    pre: bool = False

    def __post_init__(self):
        L, N = self.base.lambda_size, self.base.elem_size
        object.__setattr__(self, "dot", as_table(self.dot, (L, N, N), N, "dot"))
        object.__setattr__(self, "tri", as_table(self.tri, (L, N, N), N, "tri"))
        if not 0 <= int(self.unit) < N:
            raise ShapeError(f"unit: {self.unit} is not an element index in 0..{N - 1}")
        object.__setattr__(self, "unit", int(self.unit))

    @property
    def phi(self) -> np.ndarray:
        return self.base.phi

    @property
    def lambda_size(self) -> int:
        return self.base.lambda_size

    @property
    def elem_size(self) -> int:
        return self.base.elem_size

    @cached_property
    def dot_group(self) -> ConstantDynGroup:
        return _constant_group(self.base, self.dot, self.unit)

    @property
    def dot_inverse(self) -> np.ndarray:
        return self.dot_group.inverse

    @cached_property
    def circ(self) -> np.ndarray:
        lam, a, b = _grid(self.lambda_size, self.elem_size, self.elem_size)
        out = self.dot[lam, a, self.tri]
        out.setflags(write=False)
        return out

    def same_as(self, other: "FiniteDynPostGroup") -> bool:
        return (
            self.base.same_as(other.base)
            and np.array_equal(self.dot, other.dot)
            and np.array_equal(self.tri, other.tri)
            and self.unit == other.unit
        )


@dataclass(frozen=True, eq=False)
class FiniteDynSkewBrace:
    base: FiniteDynSet
    dot: np.ndarray
    circ: np.ndarray
    unit: int

    def __post_init__(self):
        L, N = self.base.lambda_size, self.base.elem_size
        object.__setattr__(self, "dot", as_table(self.dot, (L, N, N), N, "dot"))
        object.__setattr__(self, "circ", as_table(self.circ, (L, N, N), N, "circ"))
        if not 0 <= int(self.unit) < N:
            raise ShapeError(f"unit: {self.unit} is not an element index in 0..{N - 1}")
        object.__setattr__(self, "unit", int(self.unit))

    @property
    def phi(self) -> np.ndarray:
        return self.base.phi

    @cached_property
    def dot_group(self) -> ConstantDynGroup:
        return _constant_group(self.base, self.dot, self.unit)

    @cached_property
    def circ_group(self) -> FiniteDynGroup:
        return FiniteDynGroup(self.base, self.circ, self.unit)

    def same_as(self, other: "FiniteDynSkewBrace") -> bool:
        return (
            self.base.same_as(other.base)
            and np.array_equal(self.dot, other.dot)
            and np.array_equal(self.circ, other.circ)
            and self.unit == other.unit
        )


def trivial_post_group(g: FiniteDynGroup) -> FiniteDynPostGroup:
    """``a |> b = b`` over a constant group."""
    if not g.base.is_constant():
        raise PreconditionError("the trivial post-group needs a constant dynamical group")
    L, N = g.lambda_size, g.elem_size
    tri = np.broadcast_to(np.arange(N), (L, N, N))
    return FiniteDynPostGroup(g.base, g.product, tri, g.unit)


def verify_post_group(p: FiniteDynPostGroup) -> Verdict:
    """Check, in order: the dot group, bijective rows of ``|>``, the unit laws,
    distributivity, weighted associativity, and that the sub-adjacent product
    is compatible with the structure map (``phi-unit`` and ``phi-asso``).

    The last two are what makes the sub-adjacent product a morphism of
    dynamical sets; they cannot be recovered from the other axioms.
    """
    L, N, e = p.lambda_size, p.elem_size, p.unit
    v = verify_dyn_group(p.dot_group)
    if not v:
        return v.prefixed("dot")
    D, T, phi = p.dot, p.tri, p.phi
    if p.pre:
        lam, a, b = _grid(L, N, N)
        if (idx := first_violation(D != D[lam, b, a])) is not None:
            return Verdict.fail("dot:abelian", idx, int(D[idx]), int(D[idx[0], idx[2], idx[1]]))
    ids = np.arange(N)
    if not p.weak:
        ok = np.all(np.sort(T, axis=2) == ids, axis=2)
        if (idx := first_violation(~ok)) is not None:
            return Verdict.fail("bijectivity", idx, T[idx].tolist(), "permutation")
    if (idx := first_violation(T[:, :, e] != e)) is not None:
        return Verdict.fail("unit-laws", idx + (e,), int(T[idx + (e,)]), e)
    if not p.weak and (idx := first_violation(T[:, e, :] != ids)) is not None:
        l, b = idx
        return Verdict.fail("unit-laws", (l, e, b), int(T[l, e, b]), b)

    lam, a, b, c = _grid(L, N, N, N)
    nu = phi[lam, a]
    lhs = T[lam, a, D[nu, b, c]]
    rhs = D[lam, T[lam, a, b], T[lam, a, c]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("distributivity", idx, int(lhs[idx]), int(rhs[idx]))
    circ = D[lam[..., 0], a[..., 0], T]
    lhs = T[lam, circ[..., None], c]
    rhs = T[lam, a, T[nu, b, c]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("weighted-associativity", idx, int(lhs[idx]), int(rhs[idx]))

    if (idx := first_violation(phi[:, e] != np.arange(L))) is not None:
        return Verdict.fail("phi-unit", idx, int(phi[idx[0], e]), idx[0])
    lam3, a3, b3 = _grid(L, N, N)
    lhs = phi[lam3, circ]
    rhs = phi[phi[lam3, a3], b3]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("phi-asso", idx, int(lhs[idx]), int(rhs[idx]))
    return Verdict.ok()


def _require_post(p: FiniteDynPostGroup) -> None:
    v = verify_post_group(p)
    if not v:
        raise PreconditionError(f"post-group does not verify: {v.witness}")


def sub_adjacent(p: FiniteDynPostGroup, *, check: bool = True) -> FiniteDynGroup:
    """``a o_lam b = a ._lam (a |>_lam b)``, with inverse ``(L^|>_a)^{-1}(a^lam)``."""
    if p.weak:
        raise PreconditionError("weak post-groups only give a semi-group; use weak_sub_adjacent")
    if check:
        _require_post(p)
    g = FiniteDynGroup(p.base, p.circ, p.unit)
    if check:
        v = verify_dyn_group(g)
        if not v:
            raise InconsistencyError(f"sub-adjacent group failed verification: {v.witness}")
        # inverse formula: the preimage of a^lam under b -> a |>_lam b
        lam, a = _grid(p.lambda_size, p.elem_size)
        expected = np.argsort(p.tri, axis=2)[lam, a, p.dot_inverse]
        if not np.array_equal(expected, g.inverse):
            raise InconsistencyError("sub-adjacent inverse disagrees with the |> preimage formula")
        v = verify_action(DynAction(g, p.dot_group, p.tri))
        if not v:
            raise InconsistencyError(f"left |> multiplication is not an action: {v.witness}")
    return g


def weak_sub_adjacent(p: FiniteDynPostGroup) -> np.ndarray:
    """The sub-adjacent product of a weak post-group, checked only for associativity."""
    v = verify_post_group(p if p.weak else FiniteDynPostGroup(p.base, p.dot, p.tri, p.unit, weak=True))
    if not v:
        raise PreconditionError(f"weak post-group does not verify: {v.witness}")
    P, phi = p.circ, p.phi
    lam, a, b, c = _grid(p.lambda_size, p.elem_size, p.elem_size, p.elem_size)
    lhs = P[lam, a, P[phi[lam, a], b, c]]
    rhs = P[lam, P[lam, a, b], c]
    if (idx := first_violation(lhs != rhs)) is not None:
        raise InconsistencyError(f"weak sub-adjacent product is not associative at {idx}")
    return p.circ


def post_to_braided(p: FiniteDynPostGroup, *, check: bool = True) -> BraidedDynGroup:
    """``a -> b = a |> b`` and ``a <- b = bar(a |> b)^lam o_{phi(lam, a |> b)} (a o_lam b)``."""
    g = sub_adjacent(p, check=check)
    b = braided_from_rharp(g, p.tri)
    if check:
        v = verify_braided(b)
        if not v:
            raise InconsistencyError(f"post-group braiding failed verification: {v.witness}")
    return b


def _require_braided(b: BraidedDynGroup) -> None:
    v = verify_dyn_group(b.g)
    if not v:
        raise PreconditionError(f"underlying group does not verify: {v.witness}")
    v = verify_braided(b)
    if not v:
        raise PreconditionError(f"braided group does not verify: {v.witness}")


def braided_to_post(b: BraidedDynGroup, *, check: bool = True) -> FiniteDynPostGroup:
    """``a |> c = a -> c`` and ``a ._lam c = a o_lam (bar(a)^lam ->^{phi(lam, a)} c)``."""
    if check:
        _require_braided(b)
    g = b.g
    lam, a, c = _grid(g.lambda_size, g.elem_size, g.elem_size)
    dot = g.product[lam, a, b.rharp[g.phi[lam, a], g.inverse[lam, a], c]]
    p = FiniteDynPostGroup(g.base, dot, b.rharp, g.unit)
    if check:
        v = verify_post_group(p)
        if not v:
            raise InconsistencyError(f"induced post-group failed verification: {v.witness}")
        if not post_to_braided(p, check=False).same_as(b):
            raise InconsistencyError("round trip to the braided group does not reproduce the input")
    return p


def verify_skew_brace(s: FiniteDynSkewBrace) -> Verdict:
    """Both groups, then ``a o (b . c) = (a o b) . a^-1 . (a o c)`` with the dot at ``phi(lam, a)``.

    The derived inverse identity ``(a o b)^-1 = a^-1 . (a o b^-1) . a^-1`` (dot
    inverses, inner one at ``phi(lam, a)``) is checked afterwards; since it is
    a theorem, a failure raises :class:`InconsistencyError` instead of failing
    the verdict.
    """
    v = verify_dyn_group(s.dot_group)
    if not v:
        return v.prefixed("dot")
    v = verify_dyn_group(s.circ_group)
    if not v:
        return v.prefixed("circ")
    L, N = s.base.lambda_size, s.base.elem_size
    D, C, phi = s.dot, s.circ, s.phi
    dinv = s.dot_group.inverse
    lam, a, b, c = _grid(L, N, N, N)
    nu = phi[lam, a]
    lhs = C[lam, a, D[nu, b, c]]
    rhs = D[lam, D[lam, C[lam, a, b], dinv[lam, a]], C[lam, a, c]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("brace", idx, int(lhs[idx]), int(rhs[idx]))

    lam3, a3, b3 = _grid(L, N, N)
    nu3 = phi[lam3, a3]
    lhs = dinv[lam3, C]
    ainv = dinv[lam3, a3]
    rhs = D[lam3, D[lam3, ainv, C[lam3, a3, dinv[nu3, b3]]], ainv]
    if (idx := first_violation(lhs != rhs)) is not None:
        raise InconsistencyError(f"derived inverse identity fails at {idx} although the brace verified")
    return Verdict.ok()


def _require_brace(s: FiniteDynSkewBrace) -> None:
    v = verify_skew_brace(s)
    if not v:
        raise PreconditionError(f"skew brace does not verify: {v.witness}")


def post_to_skewbrace(p: FiniteDynPostGroup, *, check: bool = True) -> FiniteDynSkewBrace:
    g = sub_adjacent(p, check=check)
    s = FiniteDynSkewBrace(p.base, p.dot, g.product, p.unit)
    if check:
        v = verify_skew_brace(s)
        if not v:
            raise InconsistencyError(f"induced skew brace failed verification: {v.witness}")
    return s


def _brace_tri(s: FiniteDynSkewBrace) -> np.ndarray:
    lam, a, b = _grid(s.base.lambda_size, s.base.elem_size, s.base.elem_size)
    return s.dot[lam, s.dot_group.inverse[lam, a], s.circ]


def skewbrace_to_post(s: FiniteDynSkewBrace, *, check: bool = True) -> FiniteDynPostGroup:
    """``a |>_lam b = a^lam ._lam (a o_lam b)``."""
    if check:
        _require_brace(s)
    p = FiniteDynPostGroup(s.base, s.dot, _brace_tri(s), s.unit)
    if check:
        v = verify_post_group(p)
        if not v:
            raise InconsistencyError(f"induced post-group failed verification: {v.witness}")
        if not np.array_equal(p.circ, s.circ):
            raise InconsistencyError("sub-adjacent product does not reproduce the brace product")
    return p


def skewbrace_solution(s: FiniteDynSkewBrace, *, check: bool = True) -> Braiding:
    """``R(lam)(a, b) = (t, bar(t)^lam o_{phi(lam, t)} (a o_lam b))`` with ``t = a^lam . (a o_lam b)``."""
    if check:
        _require_brace(s)
    g = s.circ_group
    t = _brace_tri(s)
    lam, a, b = _grid(s.base.lambda_size, s.base.elem_size, s.base.elem_size)
    R = Braiding(s.base, t, g.product[g.phi[lam, t], g.inverse[lam, t], g.product])
    if check:
        v = check_all(R)
        if not v:
            raise InconsistencyError(f"skew brace solution failed: {v.witness}")
    return R


def rbo_to_post(r: RelativeRBO, *, check: bool = True) -> FiniteDynPostGroup:
    """Post-group on ``H``: structure map ``phi_G(lam, B x)``, dot of ``H``, ``x |> y = Phi_lam(B x)(y)``."""
    v = verify_rbo(r)
    if not v:
        raise PreconditionError(f"operator does not verify: {v.witness}")
    A, B = r.action.phi_act, r.b_map
    base = FiniteDynSet(r.g.phi[:, B])
    lam, x = _grid(r.g.lambda_size, r.h.elem_size)
    p = FiniteDynPostGroup(base, r.h.product, A[lam, B[x]], r.h.unit)
    if check:
        v = verify_post_group(p)
        if not v:
            raise InconsistencyError(f"induced post-group failed verification: {v.witness}")
        if not np.array_equal(p.circ, descendant(r, check=False).product):
            raise InconsistencyError("sub-adjacent product differs from the descendant product")
    return p


def identity_rbo(p: FiniteDynPostGroup, *, check: bool = True) -> RelativeRBO:
    """The identity map from ``(G, .)`` to the sub-adjacent group, acting by ``L^|>``."""
    g = sub_adjacent(p, check=check)
    r = RelativeRBO(DynAction(g, p.dot_group, p.tri), np.arange(p.elem_size))
    if check:
        v = verify_rbo(r)
        if not v:
            raise InconsistencyError(f"identity map is not a relative Rota-Baxter operator: {v.witness}")
        if not rbo_to_post(r, check=False).same_as(p):
            raise InconsistencyError("identity operator does not give back the post-group")
    return r


def verify_post_hom(psi: DynSetMorphism, src: FiniteDynPostGroup, dst: FiniteDynPostGroup) -> Verdict:
    """``Psi(a . b) = Psi(a) .' Psi(b)`` and ``Psi(a |> b) = Psi(a) |>' Psi_{phi(lam, a)}(b)``.

    When both hold, the sub-adjacent homomorphism property is asserted.
    """
    if not (psi.source.same_as(src.base) and psi.target.same_as(dst.base)):
        raise PreconditionError("morphism does not connect the given post-groups' dynamical sets")
    v = verify_morphism(psi)
    if not v:
        raise PreconditionError(f"not a morphism of dynamical sets: {v.witness}")
    f = psi.f
    lam, a, b = _grid(src.lambda_size, src.elem_size, src.elem_size)
    lhs = f[lam, src.dot]
    rhs = dst.dot[lam, f[lam, a], f[lam, b]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("hom-dot", idx, int(lhs[idx]), int(rhs[idx]))
    lhs = f[lam, src.tri]
    rhs = dst.tri[lam, f[lam, a], f[src.phi[lam, a], b]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("hom-tri", idx, int(lhs[idx]), int(rhs[idx]))
    v = verify_dyn_group_hom(psi, sub_adjacent(src), sub_adjacent(dst))
    if not v:
        raise InconsistencyError(f"post-group homomorphism fails on sub-adjacent groups: {v.witness}")
    return Verdict.ok()


def verify_skew_brace_hom(psi: DynSetMorphism, src: FiniteDynSkewBrace, dst: FiniteDynSkewBrace) -> Verdict:
    """``Psi`` respects both products (circ with the tensor rule) and, as an extra
    condition added here, sends the unit to the unit at every parameter."""
    if not (psi.source.same_as(src.base) and psi.target.same_as(dst.base)):
        raise PreconditionError("morphism does not connect the given braces' dynamical sets")
    v = verify_morphism(psi)
    if not v:
        raise PreconditionError(f"not a morphism of dynamical sets: {v.witness}")
    f = psi.f
    L, N = src.base.lambda_size, src.base.elem_size
    lam, a, b = _grid(L, N, N)
    lhs = f[lam, src.dot]
    rhs = dst.dot[lam, f[lam, a], f[lam, b]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("hom-dot", idx, int(lhs[idx]), int(rhs[idx]))
    lhs = f[lam, src.circ]
    rhs = dst.circ[lam, f[lam, a], f[src.phi[lam, a], b]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("hom-circ", idx, int(lhs[idx]), int(rhs[idx]))
    if (idx := first_violation(f[:, src.unit] != dst.unit)) is not None:
        return Verdict.fail("hom-unit", idx, int(f[idx[0], src.unit]), dst.unit)
    return Verdict.ok()
