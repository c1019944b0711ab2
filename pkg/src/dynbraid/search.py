"""Exhaustive enumeration of small dynamical structures.

Two independent paths are provided:

* a backtracking search that fills tables one row at a time and prunes with
  consequences of the axioms (forced unit rows and columns, bijective left
  translations, ``phi(lam, e) = lam``, and every identity whose entries are
  already known), and
* a naive generate-and-filter path that runs the plain verifier on every
  table, feasible only for the smallest sizes.

Both emit structures in lexicographic order of their tables.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator

import numpy as np

from .core import (
    FiniteDynGroup,
    FiniteDynSet,
    PreconditionError,
    ShapeError,
    verify_dyn_group,
)
from .matched import BraidedDynGroup, braided_from_rharp, verify_braided
from .postbrace import FiniteDynPostGroup, FiniteDynSkewBrace, verify_post_group, verify_skew_brace

__all__ = [
    "KINDS",
    "SearchSpec",
    "PartialResultError",
    "enumerate_structures",
    "count",
    "find_containing",
    "naive_enumerate",
    "canonical_form",
    "canonical_count",
    "structure_key",
    "relabel",
    "within_caps",
]

KINDS = ("dynamical_group", "post_group", "skew_brace", "braided_group")
NAIVE_LIMIT = 300_000


class PartialResultError(RuntimeError):
    """A budget ran out; ``found`` holds what was emitted so far, ``nodes`` the work done."""

    def __init__(self, message: str, found: list, nodes: int, elapsed: float):
        super().__init__(message)
        self.found = found
        self.nodes = nodes
        self.elapsed = elapsed


@dataclass(frozen=True)
class SearchSpec:
    kind: str
    elem_size: int
    lambda_size: int
    node_budget: int = 5_000_000
    time_budget: float = 300.0
    max_elems: int = 3
    max_lambdas: int = 3

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.elem_size < 1 or self.lambda_size < 1:
            raise ShapeError("degenerate sizes (L=0 or N=0) are not allowed")
        if not within_caps(self.elem_size, self.lambda_size, self.max_elems, self.max_lambdas):
            raise PreconditionError(
                f"N={self.elem_size}, L={self.lambda_size} exceeds the search caps "
                f"(N <= {self.max_elems} and L <= {self.max_lambdas}, or N <= 4 with L = 1)")


def within_caps(n: int, l: int, max_elems: int = 3, max_lambdas: int = 3) -> bool:
    return (n <= max_elems and l <= max_lambdas) or (n <= 4 and l == 1)


class _Budget:
    def __init__(self, spec: SearchSpec):
        self.spec = spec
        self.nodes = 0
        self.start = time.monotonic()
        self.found: list = []

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.spec.node_budget:
            self._fail("node budget")
        if self.nodes % 1024 == 0 and time.monotonic() - self.start > self.spec.time_budget:
            self._fail("time budget")

    def _fail(self, what: str) -> None:
        elapsed = time.monotonic() - self.start
        raise PartialResultError(
            f"{what} exhausted after {self.nodes} nodes and {len(self.found)} structures",
            list(self.found), self.nodes, elapsed)


# ---------------------------------------------------------------- helpers

def _fixed_point_perms(n: int, a: int, e: int) -> list[np.ndarray]:
    """Rows ``b -> a * b`` that are permutations with ``e -> a``, in lexicographic order."""
    out = []
    for p in permutations(range(n)):
        if p[e] == a:
            out.append(np.array(p))
    return out


def _phi_tables(L: int, N: int, e: int) -> Iterator[np.ndarray]:
    """Structure maps with ``phi(lam, e) = lam`` whose rows are permuted copies along ``phi``.

    Bijective left translations and ``phi(lam, a o b) = phi(phi(lam, a), b)``
    force ``phi[phi(lam, a)]`` to be a rearrangement of ``phi[lam]``.
    """
    free = [(lam, x) for lam in range(L) for x in range(N) if x != e]
    for vals in product(range(L), repeat=len(free)):
        phi = np.empty((L, N), dtype=np.int64)
        phi[:, e] = np.arange(L)
        for (lam, x), v in zip(free, vals):
            phi[lam, x] = v
        srt = np.sort(phi, axis=1)
        if np.all(srt[phi] == srt[:, None, :]):
            yield phi


def _safe(idx, valid):
    return np.where(valid, idx, 0)


def _group_partial_ok(phi: np.ndarray, P: np.ndarray, M: np.ndarray) -> bool:
    """phi-asso and associativity wherever every needed row of ``P`` is filled (``M``)."""
    L, N = phi.shape
    lam, a, b = np.ix_(np.arange(L), np.arange(N), np.arange(N))
    rows = M[lam, a] & np.ones_like(b, dtype=bool)
    ab = _safe(P[lam, a, b], rows)
    bad = rows & (phi[lam, ab] != phi[phi[lam, a], b])
    if bad.any():
        return False
    lam, a, b, c = np.ix_(*(np.arange(s) for s in (L, N, N, N)))
    nu = phi[lam, a]
    v1 = M[nu, b] & M[lam, a]
    inner = _safe(P[nu, b, c], v1)
    lhs = P[lam, a, inner]
    ab = _safe(P[lam, a, b], M[lam, a])
    v2 = v1 & M[lam, ab]
    rhs = P[lam, ab, c]
    return not np.any(v2 & (lhs != rhs))


def _fill_group(phi: np.ndarray, e: int, budget: _Budget, fixed_rows: np.ndarray | None = None,
                extra_ok=None) -> Iterator[np.ndarray]:
    """Backtrack over the rows ``(lam, a)``, ``a != e``, of a product table."""
    L, N = phi.shape
    P = np.full((L, N, N), -1, dtype=np.int64)
    M = np.zeros((L, N), dtype=bool)
    P[:, e, :] = np.arange(N)
    M[:, e] = True
    order = [(lam, a) for lam in range(L) for a in range(N) if a != e]
    cands = {a: _fixed_point_perms(N, a, e) for a in range(N)}

    def rec(k: int):
        if k == len(order):
            yield P.copy()
            return
        lam, a = order[k]
        options = cands[a] if fixed_rows is None else [fixed_rows[lam, a]]
        for row in options:
            budget.tick()
            P[lam, a] = row
            M[lam, a] = True
            if _group_partial_ok(phi, P, M) and (extra_ok is None or extra_ok(P, M)):
                yield from rec(k + 1)
            M[lam, a] = False
            P[lam, a] = -1

    yield from rec(0)


def _constant_groups(L: int, N: int, e: int, budget: _Budget) -> list[np.ndarray]:
    """All ``(L, N, N)`` stacks of group tables sharing the unit ``e``."""
    const_phi = np.zeros((1, N), dtype=np.int64)
    slices = list(_fill_group(const_phi, e, budget))
    return [np.stack([slices[i][0] for i in combo]) for combo in product(range(len(slices)), repeat=L)]


# ---------------------------------------------------------------- per kind

def _dyn_groups(L: int, N: int, budget: _Budget) -> Iterator[FiniteDynGroup]:
    for e in range(N):
        for phi in _phi_tables(L, N, e):
            for P in _fill_group(phi, e, budget):
                g = FiniteDynGroup(FiniteDynSet(phi), P, e)
                if verify_dyn_group(g):
                    yield g


def _post_partial_ok(phi, D, T, M) -> bool:
    L, N = phi.shape
    lam, a, b, c = np.ix_(*(np.arange(s) for s in (L, N, N, N)))
    nu = phi[lam, a]
    row = M[lam, a] & np.ones((1, 1, N, N), dtype=bool)
    tab = _safe(T[lam, a, b], row)
    tac = _safe(T[lam, a, c], row)
    lhs = T[lam, a, D[nu, b, c]]
    rhs = D[lam, tab, tac]
    if np.any(row & (lhs != rhs)):
        return False
    lam3, a3, b3 = np.ix_(np.arange(L), np.arange(N), np.arange(N))
    row3 = M[lam3, a3] & np.ones((1, 1, N), dtype=bool)
    circ = D[lam3, a3, _safe(T[lam3, a3, b3], row3)]
    if np.any(row3 & (phi[lam3, circ] != phi[phi[lam3, a3], b3])):
        return False
    circ4 = circ[..., None]
    v = row & M[lam, circ4] & M[nu, b]
    lhs = T[lam, circ4, c]
    rhs = T[lam, a, _safe(T[nu, b, c], M[nu, b])]
    return not np.any(v & (lhs != rhs))


def _post_groups(L: int, N: int, budget: _Budget) -> Iterator[FiniteDynPostGroup]:
    for e in range(N):
        dots = _constant_groups(L, N, e, budget)
        order = [(lam, a) for lam in range(L) for a in range(N) if a != e]
        cands = _fixed_point_perms(N, e, e)
        for phi in _phi_tables(L, N, e):
            for D in dots:
                T = np.full((L, N, N), -1, dtype=np.int64)
                M = np.zeros((L, N), dtype=bool)
                T[:, e, :] = np.arange(N)
                M[:, e] = True

                def rec(k: int):
                    if k == len(order):
                        yield T.copy()
                        return
                    lam, a = order[k]
                    for row in cands:
                        budget.tick()
                        T[lam, a] = row
                        M[lam, a] = True
                        if _post_partial_ok(phi, D, T, M):
                            yield from rec(k + 1)
                        M[lam, a] = False
                        T[lam, a] = -1

                for tri in rec(0):
                    p = FiniteDynPostGroup(FiniteDynSet(phi), D, tri, e)
                    if verify_post_group(p):
                        yield p


def _skew_braces(L: int, N: int, budget: _Budget) -> Iterator[FiniteDynSkewBrace]:
    for e in range(N):
        dots = _constant_groups(L, N, e, budget)
        for phi in _phi_tables(L, N, e):
            for D in dots:
                dinv = np.argmax(D == e, axis=2)

                def brace_ok(C, M, D=D, dinv=dinv, phi=phi):
                    lam, a, b, c = np.ix_(*(np.arange(s) for s in (L, N, N, N)))
                    row = M[lam, a] & np.ones((1, 1, N, N), dtype=bool)
                    lhs = C[lam, a, D[phi[lam, a], b, c]]
                    cab = _safe(C[lam, a, b], row)
                    cac = _safe(C[lam, a, c], row)
                    rhs = D[lam, D[lam, cab, dinv[lam, a]], cac]
                    return not np.any(row & (lhs != rhs))

                for C in _fill_group(phi, e, budget, extra_ok=brace_ok):
                    s = FiniteDynSkewBrace(FiniteDynSet(phi), D, C, e)
                    if verify_skew_brace(s):
                        yield s


def _braided_groups(L: int, N: int, budget: _Budget) -> Iterator[BraidedDynGroup]:
    for g in _dyn_groups(L, N, budget):
        e = g.unit
        order = [(lam, a) for lam in range(L) for a in range(N) if a != e]
        cands = _fixed_point_perms(N, e, e)
        phi, P, inv = g.phi, g.product, g.inverse
        R = np.empty((L, N, N), dtype=np.int64)
        R[:, e, :] = np.arange(N)

        def row_ok(lam: int, a: int) -> bool:
            r = R[lam, a]
            l = P[phi[lam, r], inv[lam, r], P[lam, a]]
            # sigma must be a morphism of dynamical sets on this row
            return bool(np.all(phi[phi[lam, r], l] == phi[phi[lam, a], np.arange(N)]))

        def rec(k: int):
            if k == len(order):
                yield R.copy()
                return
            lam, a = order[k]
            for row in cands:
                budget.tick()
                R[lam, a] = row
                if row_ok(lam, a):
                    yield from rec(k + 1)

        for rh in rec(0):
            b = braided_from_rharp(g, rh)
            if verify_braided(b):
                yield b


_GENERATORS = {
    "dynamical_group": _dyn_groups,
    "post_group": _post_groups,
    "skew_brace": _skew_braces,
    "braided_group": _braided_groups,
}


def structure_key(s) -> tuple:
    """Tuple of the defining tables, used for ordering and equality."""
    if isinstance(s, FiniteDynGroup):
        return (s.unit, s.phi.tobytes(), s.product.tobytes())
    if isinstance(s, FiniteDynPostGroup):
        return (s.unit, s.phi.tobytes(), s.dot.tobytes(), s.tri.tobytes())
    if isinstance(s, FiniteDynSkewBrace):
        return (s.unit, s.phi.tobytes(), s.dot.tobytes(), s.circ.tobytes())
    if isinstance(s, BraidedDynGroup):
        return structure_key(s.g) + (s.rharp.tobytes(), s.lharp.tobytes())
    raise TypeError(f"no key for {type(s).__name__}")


def enumerate_structures(spec: SearchSpec) -> list:
    """All structures of ``spec.kind`` at the given sizes, sorted by :func:`structure_key`."""
    budget = _Budget(spec)
    for s in _GENERATORS[spec.kind](spec.lambda_size, spec.elem_size, budget):
        budget.found.append(s)
    return sorted(budget.found, key=structure_key)


def stream(spec: SearchSpec) -> Iterator:
    """Yield structures as the search finds them (search order, not sorted)."""
    budget = _Budget(spec)
    for s in _GENERATORS[spec.kind](spec.lambda_size, spec.elem_size, budget):
        budget.found.append(s)
        yield s


def count(spec: SearchSpec) -> int:
    return len(enumerate_structures(spec))


def find_containing(spec: SearchSpec, target):
    """Search until a structure with the same tables as ``target`` appears; None if it never does."""
    key = structure_key(target)
    for s in stream(spec):
        if structure_key(s) == key:
            return s
    return None


# ---------------------------------------------------------------- naive oracle

def naive_enumerate(kind: str, elem_size: int, lambda_size: int) -> list:
    """Try every table and keep what the verifier accepts. Only tiny sizes."""
    L, N = lambda_size, elem_size
    if kind == "dynamical_group":
        space = L ** (L * N) * N ** (L * N * N)
    elif kind in ("post_group", "skew_brace"):
        space = L ** (L * N) * N ** (2 * L * N * N)
    elif kind == "braided_group":
        space = L ** (L * N) * N ** (2 * L * N * N)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if space > NAIVE_LIMIT:
        raise PreconditionError(f"naive search space {space} exceeds {NAIVE_LIMIT}")
    out = []
    for phi_flat in product(range(L), repeat=L * N):
        phi = np.array(phi_flat, dtype=np.int64).reshape(L, N)
        base = FiniteDynSet(phi)
        for p_flat in product(range(N), repeat=L * N * N):
            P = np.array(p_flat, dtype=np.int64).reshape(L, N, N)
            if kind == "dynamical_group":
                for e in range(N):
                    g = FiniteDynGroup(base, P, e)
                    if verify_dyn_group(g):
                        out.append(g)
                continue
            for q_flat in product(range(N), repeat=L * N * N):
                Q = np.array(q_flat, dtype=np.int64).reshape(L, N, N)
                for e in range(N):
                    if kind == "post_group":
                        s = FiniteDynPostGroup(base, P, Q, e)
                        ok = verify_post_group(s)
                    elif kind == "skew_brace":
                        s = FiniteDynSkewBrace(base, P, Q, e)
                        ok = verify_skew_brace(s)
                    else:
                        g = FiniteDynGroup(base, P, e)
                        if not verify_dyn_group(g):
                            continue
                        s = BraidedDynGroup(g, Q, _forced_lharp(g, Q))
                        ok = verify_braided(s)
                    if ok:
                        out.append(s)
    return sorted(out, key=structure_key)


def _forced_lharp(g: FiniteDynGroup, rharp: np.ndarray) -> np.ndarray:
    return braided_from_rharp(g, rharp).lharp


# ---------------------------------------------------------------- relabeling

def relabel(s, sigma, tau):
    """Apply element relabeling ``sigma`` and parameter relabeling ``tau`` to every table."""
    sigma, tau = np.asarray(sigma), np.asarray(tau)
    si, ti = np.argsort(sigma), np.argsort(tau)

    def rephi(phi):
        return tau[phi[np.ix_(ti, si)]]

    def retab(T):
        return sigma[T[np.ix_(ti, si, si)]]

    if isinstance(s, FiniteDynGroup):
        return FiniteDynGroup(FiniteDynSet(rephi(s.phi)), retab(s.product), int(sigma[s.unit]))
    if isinstance(s, FiniteDynPostGroup):
        return FiniteDynPostGroup(FiniteDynSet(rephi(s.phi)), retab(s.dot), retab(s.tri), int(sigma[s.unit]))
    if isinstance(s, FiniteDynSkewBrace):
        return FiniteDynSkewBrace(FiniteDynSet(rephi(s.phi)), retab(s.dot), retab(s.circ), int(sigma[s.unit]))
    if isinstance(s, BraidedDynGroup):
        return BraidedDynGroup(relabel(s.g, sigma, tau), retab(s.rharp), retab(s.lharp))
    raise TypeError(f"cannot relabel {type(s).__name__}")


def canonical_form(s) -> tuple:
    """Smallest key over all simultaneous relabelings of elements and parameters."""
    if isinstance(s, BraidedDynGroup):
        L, N = s.g.lambda_size, s.g.elem_size
    elif isinstance(s, FiniteDynGroup):
        L, N = s.lambda_size, s.elem_size
    else:
        L, N = s.base.lambda_size, s.base.elem_size
    return min(
        structure_key(relabel(s, sigma, tau))
        for sigma in permutations(range(N))
        for tau in permutations(range(L))
    )


def canonical_count(spec: SearchSpec) -> int:
    """Number of orbits under relabeling of elements and parameters."""
    return len({canonical_form(s) for s in enumerate_structures(spec)})
