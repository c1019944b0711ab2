"""Actions on constant dynamical groups and relative Rota-Baxter operators.

Pairs ``(x, a)`` in ``H x G`` are flattened to ``x * |G| + a`` throughout,
matching :func:`dynbraid.matched.double`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

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
    is_dynamical_subgroup,
    verify_dyn_group,
    verify_dyn_group_hom,
)
from .matched import DynMatchedPair, verify_matched_pair
from .ybe import Braiding, check_dybe

__all__ = [
    "DynAction",
    "RelativeRBO",
    "verify_action",
    "verify_rbo",
    "semidirect",
    "graph_is_subgroup",
    "descendant",
    "descendant_hom",
    "factorization_group",
    "rbo_to_matched_pair",
    "rbo_solution",
    "trivial_action",
]


@dataclass(frozen=True, eq=False)
class DynAction:
    """``phi_act[lam, a]`` is the permutation ``Phi_lam(a)`` of ``H`` as a lookup row."""

    g: FiniteDynGroup
    h: FiniteDynGroup
    phi_act: np.ndarray

    def __post_init__(self):
        if self.g.lambda_size != self.h.lambda_size:
            raise ShapeError("action: G and H must share the parameter set")
        if not self.h.base.is_constant():
            raise ShapeError("action: the acted-on group must be constant")
        shape = (self.g.lambda_size, self.g.elem_size, self.h.elem_size)
        object.__setattr__(self, "phi_act", as_table(self.phi_act, shape, self.h.elem_size, "phi_act"))

    @cached_property
    def phi_act_inverse(self) -> np.ndarray:
        """Row-wise inverse permutations; only meaningful once rows are bijective."""
        out = np.argsort(self.phi_act, axis=2, kind="stable")
        out.setflags(write=False)
        return out


@dataclass(frozen=True, eq=False)
class RelativeRBO:
    action: DynAction
    b_map: np.ndarray

    def __post_init__(self):
        act = self.action
        object.__setattr__(self, "b_map", as_table(self.b_map, (act.h.elem_size,), act.g.elem_size, "b_map"))

    @property
    def g(self) -> FiniteDynGroup:
        return self.action.g

    @property
    def h(self) -> FiniteDynGroup:
        return self.action.h


def trivial_action(g: FiniteDynGroup, h: FiniteDynGroup) -> DynAction:
    L, Ng, Nh = g.lambda_size, g.elem_size, h.elem_size
    return DynAction(g, h, np.broadcast_to(np.arange(Nh), (L, Ng, Nh)))


def _check_permutations(act: DynAction) -> None:
    ok = np.all(np.sort(act.phi_act, axis=2) == np.arange(act.h.elem_size), axis=2)
    if (idx := first_violation(~ok)) is not None:
        raise ShapeError(f"phi_act at (lam, a) = {idx} is not a permutation of H")


def verify_action(act: DynAction) -> Verdict:
    """Multiplicativity in ``H`` (action-1), then compositionality in ``G`` (action-2)."""
    _check_permutations(act)
    G, H, A = act.g, act.h, act.phi_act
    L, Ng, Nh = G.lambda_size, G.elem_size, H.elem_size
    lam, a, x, y = _grid(L, Ng, Nh, Nh)
    nu = G.phi[lam, a]
    lhs = A[lam, a, H.product[nu, x, y]]
    rhs = H.product[lam, A[lam, a, x], A[lam, a, y]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("action-1", idx, int(lhs[idx]), int(rhs[idx]))
    lam, a, b, x = _grid(L, Ng, Ng, Nh)
    lhs = A[lam, G.product[lam, a, b], x]
    rhs = A[lam, a, A[G.phi[lam, a], b, x]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("action-2", idx, int(lhs[idx]), int(rhs[idx]))
    return Verdict.ok()


def _require_action(act: DynAction) -> None:
    v = verify_action(act)
    if not v:
        raise PreconditionError(f"action does not verify: {v.witness}")


def verify_rbo(r: RelativeRBO) -> Verdict:
    """``B(x) o_lam B(y) = B(x ._lam Phi_lam(B x)(y))``, then ``B(e_H) = e_G``."""
    _require_action(r.action)
    G, H, A, B = r.g, r.h, r.action.phi_act, r.b_map
    lam, x, y = _grid(G.lambda_size, H.elem_size, H.elem_size)
    Bx = B[x]
    lhs = G.product[lam, Bx, B[y]]
    rhs = B[H.product[lam, x, A[lam, Bx, y]]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("rbo", idx, int(lhs[idx]), int(rhs[idx]))
    if B[H.unit] != G.unit:
        return Verdict.fail("rbo-unit", (H.unit,), int(B[H.unit]), G.unit)
    return Verdict.ok()


def _require_rbo(r: RelativeRBO) -> None:
    v = verify_rbo(r)
    if not v:
        raise PreconditionError(f"operator does not verify: {v.witness}")


def _semidirect_tables(act: DynAction):
    G, H, A = act.g, act.h, act.phi_act
    L, Ng, Nh = G.lambda_size, G.elem_size, H.elem_size
    lam, x, a, y, b = _grid(L, Nh, Ng, Nh, Ng)
    first = H.product[lam, x, A[lam, a, y]]
    second = G.product[lam, a, b]
    prod = (first * Ng + second).reshape(L, Nh * Ng, Nh * Ng)
    phi = np.broadcast_to(G.phi[:, None, :], (L, Nh, Ng)).reshape(L, Nh * Ng)
    return phi, prod


def semidirect(act: DynAction, *, check: bool = True) -> FiniteDynGroup:
    """``(x, a) * (y, b) = (x ._lam Phi_lam(a)(y), a o_lam b)`` with structure map ``phi_G(lam, a)``."""
    _require_action(act)
    phi, prod = _semidirect_tables(act)
    out = FiniteDynGroup(FiniteDynSet(phi), prod, act.h.unit * act.g.elem_size + act.g.unit)
    if check:
        v = verify_dyn_group(out)
        if not v:
            raise InconsistencyError(f"semi-direct product failed verification: {v.witness}")
    return out


def graph_is_subgroup(r: RelativeRBO) -> Verdict:
    """Is ``{(x, B x)}`` a dynamical subgroup of the semi-direct product?

    Closure is tested at every ``(lam, x, y)`` first, so a failing operator
    reports the same index here as in :func:`verify_rbo`.
    """
    _require_action(r.action)
    G, H, A, B = r.g, r.h, r.action.phi_act, r.b_map
    Ng = G.elem_size
    lam, x, y = _grid(G.lambda_size, H.elem_size, H.elem_size)
    Bx = B[x]
    first = H.product[lam, x, A[lam, Bx, y]]
    second = G.product[lam, Bx, B[y]]
    if (idx := first_violation(B[first] != second)) is not None:
        return Verdict.fail("closure", idx, [int(first[idx]), int(second[idx])], "graph member")
    if B[H.unit] != G.unit:
        return Verdict.fail("unit", (), [H.unit, G.unit], "graph member")
    sd = semidirect(r.action, check=False)
    members = np.arange(H.elem_size) * Ng + B
    inv = sd.inverse[:, members]
    in_graph = np.isin(inv, members)
    if (idx := first_violation(~in_graph)) is not None:
        return Verdict.fail("inverses", idx, list(divmod(int(inv[idx]), Ng)), "graph member")
    return Verdict.ok()


def descendant(r: RelativeRBO, *, check: bool = True) -> FiniteDynGroup:
    """``x o^B_lam y = x ._lam Phi_lam(B x)(y)`` on ``H`` with structure map ``phi_G(lam, B x)``."""
    _require_rbo(r)
    G, H, A, B = r.g, r.h, r.action.phi_act, r.b_map
    lam, x, y = _grid(G.lambda_size, H.elem_size, H.elem_size)
    prod = H.product[lam, x, A[lam, B[x], y]]
    phi = G.phi[:, B]
    out = FiniteDynGroup(FiniteDynSet(phi), prod, H.unit)
    if check:
        v = verify_dyn_group(out)
        if not v:
            raise InconsistencyError(f"descendant failed verification: {v.witness}")
        v = verify_dyn_group_hom(descendant_hom(r, out), out, G)
        if not v:
            raise InconsistencyError(f"B is not a homomorphism from the descendant: {v.witness}")
    return out


def descendant_hom(r: RelativeRBO, desc: FiniteDynGroup | None = None) -> DynSetMorphism:
    """The family ``(lam, x) -> B(x)`` as a morphism from the descendant into ``G``."""
    desc = descendant(r, check=False) if desc is None else desc
    L = r.g.lambda_size
    return DynSetMorphism(desc.base, r.g.base, np.broadcast_to(r.b_map, (L, r.h.elem_size)))


def factorization_group(r: RelativeRBO, *, check: bool = True, shifted: bool = True) -> FiniteDynGroup:
    """Pull the semi-direct product back along ``xi_lam(x, a) = (x, B(x) o_lam a)``.

    The product is computed by literal conjugation: apply ``xi`` to both
    factors, multiply in the semi-direct product, apply ``xi`` inverse.
    With ``shifted=True`` the right factor is transported at the shifted
    parameter ``phi~(lam, x, a) = phi_G(lam, B(x) o_lam a)``, which is where
    the semi-direct product evaluates it. ``shifted=False`` uses ``lam`` for
    both factors and is kept only for comparison.
    """
    _require_rbo(r)
    G, H, B = r.g, r.h, r.b_map
    L, Ng, Nh = G.lambda_size, G.elem_size, H.elem_size
    sd_phi, sd_prod = _semidirect_tables(r.action)

    lam, x, a = _grid(L, Nh, Ng)
    xi = (x * Ng + G.product[lam, B[x], a]).reshape(L, Nh * Ng)
    # xi_lam^{-1}(x, c) = (x, bar(Bx)^lam o_{phi_G(lam, Bx)} c)
    Bx = B[x]
    xi_inv = (x * Ng + G.product[G.phi[lam, Bx], G.inverse[lam, Bx], a]).reshape(L, Nh * Ng)
    phi = sd_phi[np.arange(L)[:, None], xi]

    M = Nh * Ng
    lam3, u, v = _grid(L, M, M)
    mu = phi[lam3, u] if shifted else lam3
    prod = xi_inv[lam3, sd_prod[lam3, xi[lam3, u], xi[mu, v]]]
    out = FiniteDynGroup(FiniteDynSet(phi), prod, H.unit * Ng + G.unit)
    if check:
        _check_factorization(r, out)
    return out


def _check_factorization(r: RelativeRBO, f: FiniteDynGroup) -> None:
    v = verify_dyn_group(f)
    if not v:
        raise InconsistencyError(f"factorization group failed verification: {v.witness}")
    Ng, Nh = r.g.elem_size, r.h.elem_size
    h_part = np.arange(Nh) * Ng + r.g.unit
    g_part = r.h.unit * Ng + np.arange(Ng)
    for name, part in (("H x {e}", h_part), ("{e} x G", g_part)):
        v = is_dynamical_subgroup(f, part)
        if not v:
            raise InconsistencyError(f"{name} is not a dynamical subgroup: {v.witness}")
    common = np.intersect1d(h_part, g_part)
    if common.tolist() != [f.unit]:
        raise InconsistencyError(f"distinguished subgroups meet in {common.tolist()}")
    lam, x, a = _grid(r.g.lambda_size, Nh, Ng)
    split = f.product[lam, x * Ng + r.g.unit, r.h.unit * Ng + a]
    if not np.array_equal(split, np.broadcast_to(x * Ng + a, split.shape)):
        raise InconsistencyError("some (x, a) does not factor as (x, e) * (e, a)")


def rbo_to_matched_pair(r: RelativeRBO, *, check: bool = True) -> DynMatchedPair:
    """Matched pair of ``G`` with the descendant of ``r``.

    ``a -> x = Phi_lam(a)(x)`` and
    ``a <- x = bar(B(Phi_lam(a) x))^lam o_{phi_G(lam, B(Phi_lam(a) x))} (a o_lam B(x))``.
    """
    desc = descendant(r, check=check)
    G, A, B = r.g, r.action.phi_act, r.b_map
    lam, a, x = _grid(G.lambda_size, G.elem_size, r.h.elem_size)
    moved = B[A]
    lharp = G.product[G.phi[lam, moved], G.inverse[lam, moved], G.product[lam, a, B[x]]]
    mp = DynMatchedPair(G, desc, A, lharp)
    if check:
        v = verify_matched_pair(mp)
        if not v:
            raise InconsistencyError(f"induced matched pair failed verification: {v.witness}")
    return mp


def rbo_solution(r: RelativeRBO, *, check: bool = True) -> Braiding:
    """``R(lam)(x, y) = (t, bar(t)^lam o^B_{phi_B(lam, t)} (x o^B_lam y))`` with ``t = Phi_lam(B x)(y)``."""
    D = descendant(r, check=check)
    A, B = r.action.phi_act, r.b_map
    lam, x, y = _grid(D.lambda_size, D.elem_size, D.elem_size)
    t = A[lam, B[x], y]
    second = D.product[D.phi[lam, t], D.inverse[lam, t], D.product]
    R = Braiding(D.base, t, second)
    if check:
        v = check_dybe(R)
        if not v:
            raise InconsistencyError(f"Rota-Baxter solution failed the DYBE check: {v.witness}")
    return R
