"""Finite groupoids and quivers, and what dynamical groups turn into there.

Composition is diagrammatic: ``g1 * g2`` is defined when ``tgt(g1) == src(g2)``.
Partial maps (composition, braidings) are plain dicts keyed by composable
tuples; looking up a key outside the domain raises :class:`DomainError`.

Morphisms of ``Q(G)`` are indexed ``lam * N + a`` and labelled ``(lam, a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .core import (
    DynSetMorphism,
    FiniteDynGroup,
    FiniteDynSet,
    InconsistencyError,
    PreconditionError,
    ShapeError,
    Verdict,
)
from .matched import BraidedDynGroup, DynMatchedPair, braided_to_solution
from .ybe import Braiding, check_dybe

__all__ = [
    "DomainError",
    "Quiver",
    "FiniteGroupoid",
    "QuiverBraiding",
    "GroupoidMatchedPair",
    "verify_groupoid",
    "functor_q",
    "quiver_q",
    "q_on_morphism",
    "verify_groupoid_hom",
    "verify_groupoid_matched_pair",
    "mp_to_groupoid_mp",
    "vacant_double",
    "double_to_vacant_relabeling",
    "same_after_relabeling",
    "braided_groupoid_from_bdg",
    "verify_braided_groupoid",
    "verify_quiver_braiding",
    "quiver_ybe_check",
    "quiver_nondegenerate",
    "br_q",
    "diagram_commutes",
    "export_dot",
]


class DomainError(KeyError):
    """A partial map was evaluated (or defined) outside its domain."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "outside the domain"


def _freeze(d: Mapping) -> Mapping:
    return MappingProxyType(dict(sorted(d.items())))


@dataclass(frozen=True, eq=False)
class Quiver:
    n_objects: int
    src: np.ndarray
    tgt: np.ndarray
    object_labels: tuple = ()
    arrow_labels: tuple = ()

    def __post_init__(self):
        n = len(np.asarray(self.src))
        for name in ("src", "tgt"):
            arr = np.asarray(getattr(self, name))
            object.__setattr__(self, name, _vec(arr, n, self.n_objects, name))
        if not self.object_labels:
            object.__setattr__(self, "object_labels", tuple(str(i) for i in range(self.n_objects)))
        if not self.arrow_labels:
            object.__setattr__(self, "arrow_labels", tuple(str(i) for i in range(n)))

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    def composable_pairs(self):
        for i in range(self.n_arrows):
            for j in np.flatnonzero(self.src == self.tgt[i]):
                yield i, int(j)

    def composable_triples(self):
        for i, j in self.composable_pairs():
            for k in np.flatnonzero(self.src == self.tgt[j]):
                yield i, j, int(k)


def _vec(arr, n: int, bound: int, name: str) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    if arr.shape != (n,):
        raise ShapeError(f"{name}: expected length {n}, got shape {arr.shape}")
    if n and (arr.min() < 0 or arr.max() >= bound):
        raise ShapeError(f"{name}: entries must lie in 0..{bound - 1}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    quiver: Quiver
    comp: Mapping[tuple[int, int], int]
    unit_of: np.ndarray
    inv: np.ndarray

    def __post_init__(self):
        q = self.quiver
        object.__setattr__(self, "unit_of", _vec(self.unit_of, q.n_objects, q.n_arrows, "unit_of"))
        object.__setattr__(self, "inv", _vec(self.inv, q.n_arrows, q.n_arrows, "inv"))
        object.__setattr__(self, "comp", _freeze(self.comp))

    @property
    def n_objects(self) -> int:
        return self.quiver.n_objects

    @property
    def n_morphisms(self) -> int:
        return self.quiver.n_arrows

    @property
    def src(self) -> np.ndarray:
        return self.quiver.src

    @property
    def tgt(self) -> np.ndarray:
        return self.quiver.tgt

    def mul(self, g1: int, g2: int) -> int:
        try:
            return self.comp[(g1, g2)]
        except KeyError:
            raise DomainError(f"composition undefined for ({g1}, {g2})") from None


@dataclass(frozen=True, eq=False)
class QuiverBraiding:
    quiver: Quiver
    r: Mapping[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "r", _freeze(self.r))

    def __call__(self, i: int, j: int) -> tuple[int, int]:
        try:
            return self.r[(i, j)]
        except KeyError:
            raise DomainError(f"braiding undefined on ({i}, {j})") from None


@dataclass(frozen=True, eq=False)
class GroupoidMatchedPair:
    """``sigma[(gamma, delta)] = (gamma -> delta, gamma <- delta)`` on pairs with ``tgt_G(gamma) = src_H(delta)``."""

    g: FiniteGroupoid
    h: FiniteGroupoid
    sigma: Mapping[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        if self.g.n_objects != self.h.n_objects:
            raise ShapeError("matched pair of groupoids: different object sets")
        object.__setattr__(self, "sigma", _freeze(self.sigma))

    def act(self, gamma: int, delta: int) -> tuple[int, int]:
        try:
            return self.sigma[(gamma, delta)]
        except KeyError:
            raise DomainError(f"sigma undefined on ({gamma}, {delta})") from None


def verify_groupoid(c: FiniteGroupoid) -> Verdict:
    """Composition domain, source/target of composites, units, associativity, inverses."""
    src, tgt = c.src, c.tgt
    for (i, j), k in c.comp.items():
        if tgt[i] != src[j]:
            raise DomainError(f"composition defined on non-composable pair ({i}, {j})")
    pairs = list(c.quiver.composable_pairs())
    for i, j in pairs:
        if (i, j) not in c.comp:
            return Verdict.fail("composition-total", (i, j), None, "defined")
    for i, j in pairs:
        k = c.comp[(i, j)]
        if src[k] != src[i] or tgt[k] != tgt[j]:
            return Verdict.fail("source-target", (i, j), [int(src[k]), int(tgt[k])],
                                [int(src[i]), int(tgt[j])])
    for m in range(c.n_objects):
        u = int(c.unit_of[m])
        if src[u] != m or tgt[u] != m:
            return Verdict.fail("unit", (m,), [int(src[u]), int(tgt[u])], [m, m])
    for g in range(c.n_morphisms):
        left = c.comp[(int(c.unit_of[src[g]]), g)]
        right = c.comp[(g, int(c.unit_of[tgt[g]]))]
        if left != g or right != g:
            return Verdict.fail("unit", (g,), [left, right], [g, g])
    for i, j, k in c.quiver.composable_triples():
        lhs = c.comp[(c.comp[(i, j)], k)]
        rhs = c.comp[(i, c.comp[(j, k)])]
        if lhs != rhs:
            return Verdict.fail("associativity", (i, j, k), lhs, rhs)
    for g in range(c.n_morphisms):
        h = int(c.inv[g])
        if src[h] != tgt[g] or tgt[h] != src[g]:
            return Verdict.fail("inverses", (g,), h, "reversed arrow")
        a, b = c.comp[(g, h)], c.comp[(h, g)]
        if a != c.unit_of[src[g]] or b != c.unit_of[tgt[g]]:
            return Verdict.fail("inverses", (g,), [a, b],
                                [int(c.unit_of[src[g]]), int(c.unit_of[tgt[g]])])
    return Verdict.ok()


def quiver_q(base: FiniteDynSet, lambda_labels: Sequence[str] | None = None,
             elem_labels: Sequence[str] | None = None) -> Quiver:
    """Arrows ``(lam, x)`` from ``lam`` to ``phi(lam, x)``."""
    L, N = base.lambda_size, base.elem_size
    ll = list(lambda_labels) if lambda_labels else [f"l{i + 1}" for i in range(L)]
    el = list(elem_labels) if elem_labels else [str(i) for i in range(N)]
    src = np.repeat(np.arange(L), N)
    tgt = base.phi.reshape(-1)
    labels = tuple(f"({ll[lam]},{el[x]})" for lam in range(L) for x in range(N))
    return Quiver(L, src, tgt, tuple(ll), labels)


def functor_q(g: FiniteDynGroup, lambda_labels: Sequence[str] | None = None,
              elem_labels: Sequence[str] | None = None, *, check: bool = True) -> FiniteGroupoid:
    """The groupoid with objects ``lam`` and morphisms ``(lam, a): lam -> phi(lam, a)``."""
    L, N = g.lambda_size, g.elem_size
    q = quiver_q(g.base, lambda_labels, elem_labels)
    comp = {}
    for lam, a, b in cartesian(range(L), range(N), range(N)):
        mu = int(g.phi[lam, a])
        comp[(lam * N + a, mu * N + b)] = lam * N + int(g.product[lam, a, b])
    unit_of = np.arange(L) * N + g.unit
    # the inverse of (lam, a) runs from phi(lam, a) back to lam
    inv = (g.phi * N + g.inverse).reshape(-1)
    out = FiniteGroupoid(q, comp, unit_of, inv)
    if check:
        v = verify_groupoid(out)
        if not v:
            raise InconsistencyError(f"Q(G) failed the groupoid axioms: {v.witness}")
    return out


def q_on_morphism(psi: DynSetMorphism) -> np.ndarray:
    """``(lam, a) -> (lam, Psi_lam(a))`` as a map between morphism indices."""
    L = psi.source.lambda_size
    return (np.arange(L)[:, None] * psi.target.elem_size + psi.f).reshape(-1)


def verify_groupoid_hom(f, src: FiniteGroupoid, dst: FiniteGroupoid, objects=None) -> Verdict:
    """``f`` on morphisms (and ``objects`` on objects, identity by default) preserves everything."""
    f = np.asarray(f)
    obj = np.arange(src.n_objects) if objects is None else np.asarray(objects)
    for g in range(src.n_morphisms):
        if dst.src[f[g]] != obj[src.src[g]] or dst.tgt[f[g]] != obj[src.tgt[g]]:
            return Verdict.fail("quiver-hom", (g,), int(f[g]), "arrow over the image objects")
    for m in range(src.n_objects):
        if f[src.unit_of[m]] != dst.unit_of[obj[m]]:
            return Verdict.fail("units", (m,), int(f[src.unit_of[m]]), int(dst.unit_of[obj[m]]))
    for (i, j), k in src.comp.items():
        lhs, rhs = int(f[k]), dst.mul(int(f[i]), int(f[j]))
        if lhs != rhs:
            return Verdict.fail("composition", (i, j), lhs, rhs)
    return Verdict.ok()


def verify_groupoid_matched_pair(mp: GroupoidMatchedPair) -> Verdict:
    """Quiver-homomorphism conditions, then the six matched-pair identities."""
    G, H = mp.g, mp.h
    dom = [(gm, d) for gm in range(G.n_morphisms) for d in range(H.n_morphisms)
           if G.tgt[gm] == H.src[d]]
    dom_set = set(dom)
    for key in mp.sigma:
        if key not in dom_set:
            raise DomainError(f"sigma defined on non-composable pair {key}")
    for key in dom:
        if key not in mp.sigma:
            return Verdict.fail("sigma-domain", key, None, "defined")
    for gm, d in dom:
        right, left = mp.sigma[(gm, d)]
        got = [int(H.src[right]), int(G.tgt[left]), int(H.tgt[right])]
        want = [int(G.src[gm]), int(H.tgt[d]), int(G.src[left])]
        if got != want:
            return Verdict.fail("quiver-hom", (gm, d), got, want)

    rh = lambda gm, d: mp.sigma[(gm, d)][0]  # noqa: E731
    lh = lambda gm, d: mp.sigma[(gm, d)][1]  # noqa: E731
    for d in range(H.n_morphisms):
        u = int(G.unit_of[H.src[d]])
        if rh(u, d) != d:
            return Verdict.fail("MG-1", (d,), rh(u, d), d)
    for (g1, g2), g12 in G.comp.items():
        for d in np.flatnonzero(H.src == G.tgt[g2]):
            d = int(d)
            lhs, rhs = rh(g1, rh(g2, d)), rh(g12, d)
            if lhs != rhs:
                return Verdict.fail("MG-2", (g1, g2, d), lhs, rhs)
    for (g1, g2), g12 in G.comp.items():
        for d in np.flatnonzero(H.src == G.tgt[g2]):
            d = int(d)
            lhs = lh(g12, d)
            rhs = G.mul(lh(g1, rh(g2, d)), lh(g2, d))
            if lhs != rhs:
                return Verdict.fail("MG-3", (g1, g2, d), lhs, rhs)
    for gm in range(G.n_morphisms):
        u = int(H.unit_of[G.tgt[gm]])
        if lh(gm, u) != gm:
            return Verdict.fail("MG-4", (gm,), lh(gm, u), gm)
    for (d1, d2), d12 in H.comp.items():
        for gm in np.flatnonzero(G.tgt == H.src[d1]):
            gm = int(gm)
            lhs, rhs = lh(lh(gm, d1), d2), lh(gm, d12)
            if lhs != rhs:
                return Verdict.fail("MG-5", (gm, d1, d2), lhs, rhs)
    for (d1, d2), d12 in H.comp.items():
        for gm in np.flatnonzero(G.tgt == H.src[d1]):
            gm = int(gm)
            lhs = rh(gm, d12)
            rhs = H.mul(rh(gm, d1), rh(lh(gm, d1), d2))
            if lhs != rhs:
                return Verdict.fail("MG-6", (gm, d1, d2), lhs, rhs)
    return Verdict.ok()


def mp_to_groupoid_mp(mp: DynMatchedPair, *, check: bool = True) -> GroupoidMatchedPair:
    """``((lam, a), (phi_G(lam, a), x)) -> ((lam, a -> x), (phi_H(lam, a -> x), a <- x))``."""
    G, H = mp.g, mp.h
    L, Ng, Nh = G.lambda_size, G.elem_size, H.elem_size
    QG, QH = functor_q(G, check=check), functor_q(H, check=check)
    sigma = {}
    for lam, a, x in cartesian(range(L), range(Ng), range(Nh)):
        r, l = mp.sigma(lam, a, x)
        nu = int(G.phi[lam, a])
        sigma[(lam * Ng + a, nu * Nh + x)] = (lam * Nh + r, int(H.phi[lam, r]) * Ng + l)
    out = GroupoidMatchedPair(QG, QH, sigma)
    if check:
        v = verify_groupoid_matched_pair(out)
        if not v:
            raise InconsistencyError(f"induced groupoid matched pair failed: {v.witness}")
    return out


def vacant_double(mp: GroupoidMatchedPair, *, check: bool = True) -> FiniteGroupoid:
    """Groupoid on pairs ``(delta, gamma)`` with ``tgt_H(delta) = src_G(gamma)``, listed lexicographically."""
    G, H = mp.g, mp.h
    pairs = [(d, gm) for d in range(H.n_morphisms) for gm in range(G.n_morphisms)
             if H.tgt[d] == G.src[gm]]
    index = {p: k for k, p in enumerate(pairs)}
    src = np.array([H.src[d] for d, _ in pairs])
    tgt = np.array([G.tgt[gm] for _, gm in pairs])
    labels = tuple(f"{H.quiver.arrow_labels[d]}|{G.quiver.arrow_labels[gm]}" for d, gm in pairs)
    quiver = Quiver(G.n_objects, src, tgt, G.quiver.object_labels, labels)
    comp = {}
    for (d1, g1), k1 in index.items():
        for (d2, g2), k2 in index.items():
            if G.tgt[g1] != H.src[d2]:
                continue
            r, l = mp.act(g1, d2)
            comp[(k1, k2)] = index[(H.mul(d1, r), G.mul(l, g2))]
    unit_of = [index[(int(H.unit_of[m]), int(G.unit_of[m]))] for m in range(G.n_objects)]
    inv = []
    for d, gm in pairs:
        ig, idl = int(G.inv[gm]), int(H.inv[d])
        r = mp.act(ig, idl)[0]
        inv.append(index[(r, int(G.inv[mp.act(gm, r)[1]]))])
    out = FiniteGroupoid(quiver, comp, unit_of, inv)
    if check:
        v = verify_groupoid(out)
        if not v:
            raise InconsistencyError(f"vacant double failed the groupoid axioms: {v.witness}")
    return out


def double_to_vacant_relabeling(mp: DynMatchedPair, gmp: GroupoidMatchedPair | None = None) -> np.ndarray:
    """Map morphism ``(lam, (x, a))`` of ``Q(double)`` to the vacant-double index of ``((lam, x), (phi_H(lam, x), a))``."""
    G, H = mp.g, mp.h
    L, Ng, Nh = G.lambda_size, G.elem_size, H.elem_size
    pairs = [(d, gm) for d in range(L * Nh) for gm in range(L * Ng)
             if H.phi.reshape(-1)[d] == gm // Ng]
    index = {p: k for k, p in enumerate(pairs)}
    out = np.empty(L * Nh * Ng, dtype=np.int64)
    for lam, x, a in cartesian(range(L), range(Nh), range(Ng)):
        out[lam * Nh * Ng + x * Ng + a] = index[(lam * Nh + x, int(H.phi[lam, x]) * Ng + a)]
    return out


def same_after_relabeling(g1: FiniteGroupoid, g2: FiniteGroupoid, f) -> bool:
    """``f`` (a bijection on morphisms, identity on objects) carries every table of ``g1`` onto ``g2``."""
    f = np.asarray(f)
    if g1.n_morphisms != g2.n_morphisms or sorted(f.tolist()) != list(range(g2.n_morphisms)):
        return False
    if not (np.array_equal(g2.src[f], g1.src) and np.array_equal(g2.tgt[f], g1.tgt)):
        return False
    if not np.array_equal(f[g1.unit_of], g2.unit_of) or not np.array_equal(f[g1.inv], g2.inv[f]):
        return False
    if len(g1.comp) != len(g2.comp):
        return False
    return all(g2.comp.get((int(f[i]), int(f[j]))) == int(f[k]) for (i, j), k in g1.comp.items())


def braided_groupoid_from_bdg(b: BraidedDynGroup, *, check: bool = True):
    """``(Q(G), sigma_hat)`` with ``sigma_hat((lam, a), (mu, c)) = ((lam, a -> c), (phi(lam, a -> c), a <- c))``."""
    g = b.g
    L, N = g.lambda_size, g.elem_size
    qg = functor_q(g, check=check)
    sigma = {}
    for lam, a, c in cartesian(range(L), range(N), range(N)):
        r, l = int(b.rharp[lam, a, c]), int(b.lharp[lam, a, c])
        sigma[(lam * N + a, int(g.phi[lam, a]) * N + c)] = (lam * N + r, int(g.phi[lam, r]) * N + l)
    if check:
        v = verify_braided_groupoid(qg, sigma)
        if not v:
            raise InconsistencyError(f"induced braided groupoid failed: {v.witness}")
    return qg, MappingProxyType(dict(sorted(sigma.items())))


def verify_braided_groupoid(g: FiniteGroupoid, sigma: Mapping) -> Verdict:
    """``(g, g, sigma)`` is a matched pair and ``(x -> y) * (x <- y) = x * y``."""
    v = verify_groupoid_matched_pair(GroupoidMatchedPair(g, g, sigma))
    if not v:
        return v
    for (i, j), (r, l) in sorted(sigma.items()):
        lhs, rhs = g.mul(r, l), g.mul(i, j)
        if lhs != rhs:
            return Verdict.fail("braided-com", (i, j), lhs, rhs)
    return Verdict.ok()


def verify_quiver_braiding(qb: QuiverBraiding) -> Verdict:
    """Defined exactly on composable pairs, lands on composable pairs, keeps the ends, and is bijective."""
    q = qb.quiver
    pairs = list(q.composable_pairs())
    dom = set(pairs)
    for key in qb.r:
        if key not in dom:
            raise DomainError(f"braiding defined on non-composable pair {key}")
    images = []
    for i, j in pairs:
        if (i, j) not in qb.r:
            return Verdict.fail("domain", (i, j), None, "defined")
        k, l = qb.r[(i, j)]
        if q.tgt[k] != q.src[l]:
            return Verdict.fail("composable-image", (i, j), [k, l], "composable pair")
        if q.src[k] != q.src[i] or q.tgt[l] != q.tgt[j]:
            return Verdict.fail("quiver-hom", (i, j), [int(q.src[k]), int(q.tgt[l])],
                                [int(q.src[i]), int(q.tgt[j])])
        images.append((k, l))
    if len(set(images)) != len(images):
        return Verdict.fail("bijective", (), len(set(images)), len(images))
    return Verdict.ok()


def quiver_ybe_check(qb: QuiverBraiding) -> Verdict:
    """``R12 R23 R12 = R23 R12 R23`` on every composable triple."""
    v = verify_quiver_braiding(qb)
    if not v:
        return v
    r = qb.r
    for i, j, k in qb.quiver.composable_triples():
        a, b = r[(i, j)]
        b, c = r[(b, k)]
        lhs0, lhs1 = r[(a, b)]
        lhs = (lhs0, lhs1, c)
        b2, c2 = r[(j, k)]
        a2, b2 = r[(i, b2)]
        b2, c2 = r[(b2, c2)]
        rhs = (a2, b2, c2)
        if lhs != rhs:
            return Verdict.fail("quiver-ybe", (i, j, k), list(lhs), list(rhs))
    return Verdict.ok()


def quiver_nondegenerate(qb: QuiverBraiding) -> Verdict:
    """For fixed ``y`` the left factor ``x -> x <- y`` is a bijection between arrows into ``src(y)``
    and arrows into ``tgt(y)``; symmetrically on the right."""
    q = qb.quiver
    for y in range(q.n_arrows):
        xs = np.flatnonzero(q.tgt == q.src[y])
        img = sorted(qb(int(x), y)[1] for x in xs)
        want = np.flatnonzero(q.tgt == q.tgt[y]).tolist()
        if img != want:
            return Verdict.fail("nondegenerate-left", (y,), img, want)
    for x in range(q.n_arrows):
        ys = np.flatnonzero(q.src == q.tgt[x])
        img = sorted(qb(x, int(y))[0] for y in ys)
        want = np.flatnonzero(q.src == q.src[x]).tolist()
        if img != want:
            return Verdict.fail("nondegenerate-right", (x,), img, want)
    return Verdict.ok()


def br_q(base: FiniteDynSet, R: Braiding, *, check: bool = True) -> QuiverBraiding:
    """Transport ``R`` to ``Q(base)`` along ``((lam, x), (phi(lam, x), y)) <-> (lam, x, y)``."""
    v = check_dybe(R)
    if not v:
        raise PreconditionError(f"braiding is not a DYBE solution: {v.witness}")
    if not R.base.same_as(base):
        raise ShapeError("braiding lives on a different dynamical set")
    L, N = base.lambda_size, base.elem_size
    r = {}
    for lam, x, y in cartesian(range(L), range(N), range(N)):
        u, w = R(lam, x, y)
        r[(lam * N + x, int(base.phi[lam, x]) * N + y)] = (lam * N + u, int(base.phi[lam, u]) * N + w)
    out = QuiverBraiding(quiver_q(base), r)
    if check:
        v = quiver_ybe_check(out)
        if not v:
            raise InconsistencyError(f"transported braiding fails the quiver YBE: {v.witness}")
    return out


def diagram_commutes(b: BraidedDynGroup) -> bool:
    """Both routes from a braided dynamical group to a quiver braiding agree."""
    via_solution = br_q(b.g.base, braided_to_solution(b))
    _, sigma_hat = braided_groupoid_from_bdg(b)
    return dict(via_solution.r) == dict(sigma_hat)


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: FiniteGroupoid | Quiver, *, include_units: bool = False,
               object_labels: Sequence[str] | None = None,
               arrow_labels: Sequence[str] | None = None, name: str = "G") -> str:
    """Deterministic Graphviz digraph; unit loops appear only with ``include_units``."""
    q = g.quiver if isinstance(g, FiniteGroupoid) else g
    units = set(g.unit_of.tolist()) if isinstance(g, FiniteGroupoid) else set()
    ol = list(object_labels or q.object_labels)
    al = list(arrow_labels or q.arrow_labels)
    lines = [f"digraph {_dot_id(name)} {{"]
    for node in sorted(ol):
        lines.append(f"  {_dot_id(node)};")
    edges = sorted(
        (ol[q.src[k]], ol[q.tgt[k]], al[k])
        for k in range(q.n_arrows)
        if include_units or k not in units
    )
    for s, t, lab in edges:
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)} [label={_dot_id(lab)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
