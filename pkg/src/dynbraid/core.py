"""Table-backed dynamical sets, dynamical groups and their verifiers.

Elements and parameters are dense integer indices: a dynamical set with
``L`` parameters and ``N`` elements stores its structure map as an
``(L, N)`` integer array, and a dynamical group stores its products as an
``(L, N, N)`` array with ``product[lam, a, b] = a o_lam b``.

A dynamical product ``a o_lam b`` reads its right factor at the shifted
parameter ``phi(lam, a)``; every verifier below is written with that
convention in mind.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

__all__ = [
    "ShapeError",
    "InconsistencyError",
    "PreconditionError",
    "VerificationError",
    "Witness",
    "Verdict",
    "FiniteDynSet",
    "FiniteDynGroup",
    "ConstantDynGroup",
    "DynSetMorphism",
    "as_table",
    "first_violation",
    "verify_dyn_group",
    "inverse_table",
    "verify_morphism",
    "verify_dyn_group_hom",
    "verify_group_table",
    "trivial_from_group",
    "is_constant",
    "left_translations_injective",
    "is_dynamical_subgroup",
]

DYN_GROUP_AXIOMS = ("unit", "phi-unit", "phi-asso", "associativity", "inverses")


class ShapeError(ValueError):
    """A table has the wrong dimensions or out-of-range entries."""


class InconsistencyError(RuntimeError):
    """A construction produced data that fails its own postcondition."""


class PreconditionError(ValueError):
    """An operation was called on inputs that have not been verified."""


class VerificationError(ValueError):
    """Raised where an invalid structure is an input error; carries the verdict."""

    def __init__(self, verdict: "Verdict", message: str | None = None):
        self.verdict = verdict
        super().__init__(message or f"verification failed: {verdict.witness}")


@dataclass(frozen=True)
class Witness:
    axiom: str
    index: tuple
    lhs: Any
    rhs: Any
    detail: dict = field(default_factory=dict, compare=False)

    def as_record(self) -> dict:
        rec = {
            "axiom": self.axiom,
            "index": [_plain(i) for i in self.index],
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
        }
        if self.detail:
            rec["detail"] = {k: _plain(v) for k, v in self.detail.items()}
        return rec


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    return v


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check; ``witness`` is set iff it failed."""

    passed: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise ValueError("passed must be true exactly when witness is absent")

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def fail(cls, axiom: str, index, lhs, rhs, **detail) -> "Verdict":
        index = tuple(int(i) if isinstance(i, np.integer) else i for i in index)
        return cls(False, Witness(axiom, index, _plain(lhs), _plain(rhs), detail))

    def prefixed(self, prefix: str) -> "Verdict":
        """Return the same verdict with the witness axiom namespaced."""
        if self.passed:
            return self
        w = self.witness
        return Verdict(False, Witness(f"{prefix}:{w.axiom}", w.index, w.lhs, w.rhs, w.detail))

    def as_record(self) -> dict:
        rec: dict = {"passed": self.passed}
        if self.witness is not None:
            rec["witness"] = self.witness.as_record()
        return rec


def as_table(data, shape: tuple[int, ...], bound: int, name: str) -> np.ndarray:
    """Convert ``data`` to a read-only int64 array of ``shape`` with entries in ``[0, bound)``."""
    try:
        arr = np.array(data, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise ShapeError(f"{name}: not a rectangular integer table ({exc})") from None
    if arr.shape != tuple(shape):
        raise ShapeError(f"{name}: expected dimensions {tuple(shape)}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        raise ShapeError(f"{name}: entries must lie in 0..{bound - 1}")
    arr.setflags(write=False)
    return arr


def first_violation(mask: np.ndarray):
    """Lexicographically smallest index where ``mask`` is true, or None."""
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _grid(*sizes: int):
    return np.ix_(*[np.arange(s) for s in sizes])


@dataclass(frozen=True, eq=False)
class FiniteDynSet:
    """A finite set ``{0..N-1}`` with structure map ``phi: L x N -> L``."""

    phi: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.phi)
        if arr.ndim != 2:
            raise ShapeError(f"phi: expected a 2-d table, got {arr.ndim} dimensions")
        L, N = arr.shape
        if L == 0 or N == 0:
            raise ShapeError("phi: degenerate sizes (L=0 or N=0) are not allowed")
        object.__setattr__(self, "phi", as_table(arr, (L, N), L, "phi"))

    @property
    def lambda_size(self) -> int:
        return self.phi.shape[0]

    @property
    def elem_size(self) -> int:
        return self.phi.shape[1]

    @classmethod
    def constant(cls, lambda_size: int, elem_size: int) -> "FiniteDynSet":
        if lambda_size <= 0 or elem_size <= 0:
            raise ShapeError("degenerate sizes (L=0 or N=0) are not allowed")
        return cls(np.repeat(np.arange(lambda_size)[:, None], elem_size, axis=1))

    def is_constant(self) -> bool:
        return bool(np.all(self.phi == np.arange(self.lambda_size)[:, None]))

    def tensor_phi(self, other: "FiniteDynSet | None" = None) -> np.ndarray:
        """Structure map of ``X (x) Y``: ``(lam, x, y) -> phi_Y(phi_X(lam, x), y)``."""
        other = self if other is None else other
        return other.phi[self.phi[:, :, None], np.arange(other.elem_size)[None, None, :]]

    def same_as(self, other: "FiniteDynSet") -> bool:
        return np.array_equal(self.phi, other.phi)


@dataclass(frozen=True, eq=False)
class FiniteDynGroup:
    """Dynamical group tables: ``product[lam, a, b] = a o_lam b``.

    Construction only checks shapes; run :func:`verify_dyn_group` for the
    axioms. The inverse table is derived on first access.
    """

    base: FiniteDynSet
    product: np.ndarray
    unit: int

    def __post_init__(self):
        L, N = self.base.lambda_size, self.base.elem_size
        object.__setattr__(self, "product", as_table(self.product, (L, N, N), N, "product"))
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
    def inverse(self) -> np.ndarray:
        return inverse_table(self)

    def mul(self, lam: int, a: int, b: int) -> int:
        return int(self.product[lam, a, b])

    def inv(self, lam: int, a: int) -> int:
        return int(self.inverse[lam, a])

    @classmethod
    def constant(cls, product, unit: int) -> "ConstantDynGroup":
        prod = np.asarray(product)
        if prod.ndim != 3:
            raise ShapeError(f"product: expected (L, N, N), got {prod.shape}")
        return ConstantDynGroup(FiniteDynSet.constant(prod.shape[0], prod.shape[1]), prod, unit)

    def same_as(self, other: "FiniteDynGroup") -> bool:
        """Exact table equality (structure map, products and unit)."""
        return (
            self.base.same_as(other.base)
            and np.array_equal(self.product, other.product)
            and self.unit == other.unit
        )


class ConstantDynGroup(FiniteDynGroup):
    """A dynamical group whose structure map is ``phi(lam, x) = lam``."""

    def __post_init__(self):
        super().__post_init__()
        if not self.base.is_constant():
            raise ShapeError("ConstantDynGroup requires phi(lam, x) = lam")

    @property
    def constant_flag(self) -> bool:
        return True


def verify_dyn_group(g: FiniteDynGroup) -> Verdict:
    """Exhaustively check the dynamical group axioms.

    Axioms are checked in the order unit, phi-unit, phi-asso, associativity,
    inverses; the witness is the lexicographically smallest violating index.
    """
    phi, P, e = g.phi, g.product, g.unit
    L, N = g.lambda_size, g.elem_size
    lam, a = _grid(L, N)

    right = P[:, :, e]
    left = P[:, e, :]
    elems = np.arange(N)[None, :]
    bad = (right != elems) | (left != elems)
    if (idx := first_violation(bad)) is not None:
        l, x = idx
        if right[l, x] != x:
            return Verdict.fail("unit", idx, int(right[l, x]), x, side="right")
        return Verdict.fail("unit", idx, int(left[l, x]), x, side="left")

    bad = phi[:, e] != np.arange(L)
    if (idx := first_violation(bad)) is not None:
        return Verdict.fail("phi-unit", idx, int(phi[idx[0], e]), idx[0])

    lam3, a3, b3 = _grid(L, N, N)
    lhs = phi[lam3, P]
    rhs = phi[phi[lam3, a3], b3]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("phi-asso", idx, int(lhs[idx]), int(rhs[idx]))

    lam4, a4, b4, c4 = _grid(L, N, N, N)
    shifted = phi[lam4, a4]
    lhs = P[lam4, a4, P[shifted, b4, c4]]
    rhs = P[lam4, P[lam4, a4, b4], c4]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("associativity", idx, int(lhs[idx]), int(rhs[idx]))

    hits = P == e
    has_right = hits.any(axis=2)
    right_inv = hits.argmax(axis=2)
    left_val = P[phi[lam, a], right_inv, a]
    bad = ~has_right | (left_val != e)
    if (idx := first_violation(bad)) is not None:
        if not has_right[idx]:
            return Verdict.fail("inverses", idx, None, e, side="right")
        return Verdict.fail("inverses", idx, int(left_val[idx]), e, side="left",
                            candidate=int(right_inv[idx]))
    return Verdict.ok()


def inverse_table(g: FiniteDynGroup) -> np.ndarray:
    """Table ``(lam, a) -> abar^lam`` with ``a o_lam abar = e = abar o_phi(lam,a) a``."""
    P, phi, e = g.product, g.phi, g.unit
    L, N = g.lambda_size, g.elem_size
    out = np.empty((L, N), dtype=np.int64)
    for lam in range(L):
        for a in range(N):
            sols = np.flatnonzero(P[lam, a] == e)
            if sols.size != 1:
                raise InconsistencyError(
                    f"no unique right inverse of {a} at parameter {lam}; was the group verified?")
            x = int(sols[0])
            if P[phi[lam, a], x, a] != e:
                raise InconsistencyError(
                    f"right inverse {x} of {a} at parameter {lam} is not a left inverse")
            out[lam, a] = x
    out.setflags(write=False)
    return out


def left_translations_injective(g: FiniteDynGroup) -> bool:
    """Every row ``b -> a o_lam b`` of every slice is a permutation."""
    srt = np.sort(g.product, axis=2)
    return bool(np.all(srt == np.arange(g.elem_size)))


@dataclass(frozen=True, eq=False)
class DynSetMorphism:
    """A parameter-indexed family of maps ``f[lam, x]`` from source to target."""

    source: FiniteDynSet
    target: FiniteDynSet
    f: np.ndarray

    def __post_init__(self):
        if self.source.lambda_size != self.target.lambda_size:
            raise ShapeError("morphism: source and target must share the parameter set")
        shape = (self.source.lambda_size, self.source.elem_size)
        object.__setattr__(self, "f", as_table(self.f, shape, self.target.elem_size, "f"))

    @classmethod
    def identity(cls, base: FiniteDynSet) -> "DynSetMorphism":
        return cls(base, base, np.tile(np.arange(base.elem_size), (base.lambda_size, 1)))


def verify_morphism(m: DynSetMorphism) -> Verdict:
    L, N = m.source.lambda_size, m.source.elem_size
    lam, x = _grid(L, N)
    lhs = m.target.phi[lam, m.f]
    rhs = m.source.phi
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("morphism", idx, int(lhs[idx]), int(rhs[idx]))
    return Verdict.ok()


def verify_dyn_group_hom(psi: DynSetMorphism, src: FiniteDynGroup, dst: FiniteDynGroup) -> Verdict:
    """Check ``psi_lam(a o_lam b) = psi_lam(a) o'_lam psi_phi(lam,a)(b)``."""
    if not (psi.source.same_as(src.base) and psi.target.same_as(dst.base)):
        raise PreconditionError("morphism does not connect the given groups' dynamical sets")
    if not verify_morphism(psi):
        raise PreconditionError("psi is not a morphism of dynamical sets")
    if not (verify_dyn_group(src) and verify_dyn_group(dst)):
        raise PreconditionError("both groups must verify as dynamical groups")
    f = psi.f
    lam, a, b = _grid(src.lambda_size, src.elem_size, src.elem_size)
    lhs = f[lam, src.product]
    rhs = dst.product[lam, f[lam, a], f[src.phi[lam, a], b]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("homomorphism", idx, int(lhs[idx]), int(rhs[idx]))
    return Verdict.ok()


def _find_unit(table: np.ndarray) -> int | None:
    n = table.shape[0]
    ids = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ids) and np.array_equal(table[:, e], ids):
            return e
    return None


def verify_group_table(table) -> Verdict:
    """Ordinary group check: the one-parameter case of :func:`verify_dyn_group`."""
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ShapeError(f"cayley: expected a non-empty square table, got {t.shape}")
    e = _find_unit(t)
    if e is None:
        return Verdict.fail("unit", (), None, None)
    return verify_dyn_group(FiniteDynGroup.constant(t[None], e))


def trivial_from_group(cayley, lambda_size: int) -> ConstantDynGroup:
    """Constant dynamical group with every slice equal to ``cayley``."""
    verdict = verify_group_table(cayley)
    if not verdict:
        raise VerificationError(verdict, f"not a group table: {verdict.witness}")
    t = np.asarray(cayley)
    if lambda_size <= 0:
        raise ShapeError("degenerate parameter count")
    return FiniteDynGroup.constant(np.repeat(t[None], lambda_size, axis=0), _find_unit(t))


def is_constant(g: FiniteDynGroup) -> bool:
    return g.base.is_constant()


def is_dynamical_subgroup(g: FiniteDynGroup, subset) -> Verdict:
    """Closure under every ``o_lam``, membership of the unit, closure under inverses."""
    members = np.zeros(g.elem_size, dtype=bool)
    members[list(subset)] = True
    idx = np.flatnonzero(members)
    sub = g.product[:, idx][:, :, idx]
    ok = members[sub]
    if (w := first_violation(~ok)) is not None:
        l, i, j = w
        return Verdict.fail("closure", (l, int(idx[i]), int(idx[j])), int(sub[w]), "member")
    if not members[g.unit]:
        return Verdict.fail("unit", (), g.unit, "member")
    inv = g.inverse[:, idx]
    if (w := first_violation(~members[inv])) is not None:
        l, i = w
        return Verdict.fail("inverses", (l, int(idx[i])), int(inv[w]), "member")
    return Verdict.ok()
