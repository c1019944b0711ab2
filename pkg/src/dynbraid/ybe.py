"""Braidings on dynamical sets and the dynamical Yang-Baxter equation.

A braiding stores two tables over ``(lam, x, y)``:

* ``varphi[lam, x, y]`` is the first output of ``R(lam)(x, y)``;
* ``psi[lam, x, y]`` is the second output. Note the argument order: in the
  usual notation this is ``psi^lam_y(x)``, the map indexed by ``y`` applied to
  ``x``, stored transposed so that ``R(lam)(x, y)`` is two lookups at the same
  index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    FiniteDynGroup,
    FiniteDynSet,
    ShapeError,
    Verdict,
    _grid,
    as_table,
    first_violation,
)

__all__ = [
    "Braiding",
    "flip",
    "check_bijective",
    "check_weight_zero",
    "check_dybe",
    "check_nondegenerate",
    "check_nondegenerate_fibered",
    "check_compatible_actions",
    "check_all",
    "dybe_sides",
]


@dataclass(frozen=True, eq=False)
class Braiding:
    base: FiniteDynSet
    varphi: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        L, N = self.base.lambda_size, self.base.elem_size
        object.__setattr__(self, "varphi", as_table(self.varphi, (L, N, N), N, "varphi"))
        object.__setattr__(self, "psi", as_table(self.psi, (L, N, N), N, "psi"))

    def __call__(self, lam: int, x: int, y: int) -> tuple[int, int]:
        return int(self.varphi[lam, x, y]), int(self.psi[lam, x, y])

    def same_as(self, other: "Braiding") -> bool:
        return (
            self.base.same_as(other.base)
            and np.array_equal(self.varphi, other.varphi)
            and np.array_equal(self.psi, other.psi)
        )


def flip(base: FiniteDynSet) -> Braiding:
    """``R(lam)(x, y) = (y, x)``."""
    L, N = base.lambda_size, base.elem_size
    _, x, y = _grid(L, N, N)
    shape = (L, N, N)
    return Braiding(base, np.broadcast_to(y, shape), np.broadcast_to(x, shape))


def check_bijective(R: Braiding) -> Verdict:
    """Each ``R(lam)`` permutes ``N x N``; the witness is the first repeated image."""
    N = R.base.elem_size
    codes = (R.varphi * N + R.psi).reshape(R.base.lambda_size, -1)
    for lam in range(R.base.lambda_size):
        _, first_idx, counts = np.unique(codes[lam], return_index=True, return_counts=True)
        if len(counts) != N * N:
            # The first pair (in lexicographic order) whose image was already hit.
            seen: dict[int, int] = {}
            for flat, code in enumerate(codes[lam]):
                if code in seen:
                    x, y = divmod(flat, N)
                    return Verdict.fail("bijective", (lam, x, y),
                                        [int(code // N), int(code % N)],
                                        "distinct image", collides_with=list(divmod(seen[code], N)))
                seen[int(code)] = flat
    return Verdict.ok()


def check_weight_zero(R: Braiding) -> Verdict:
    """``phi(phi(lam, varphi), psi) == phi(phi(lam, x), y)`` for every ``(lam, x, y)``."""
    phi = R.base.phi
    lam, x, y = _grid(R.base.lambda_size, R.base.elem_size, R.base.elem_size)
    lhs = phi[phi[lam, R.varphi], R.psi]
    rhs = phi[phi[lam, x], y]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("weight-zero", idx, int(lhs[idx]), int(rhs[idx]))
    return Verdict.ok()


def check_nondegenerate(R: Braiding) -> Verdict:
    """Rows ``y -> varphi(lam, x, y)`` and columns ``x -> psi(lam, x, y)`` are bijective."""
    N = R.base.elem_size
    ids = np.arange(N)
    rows_ok = np.all(np.sort(R.varphi, axis=2) == ids, axis=2)
    if (idx := first_violation(~rows_ok)) is not None:
        return Verdict.fail("nondegenerate-varphi", idx, R.varphi[idx].tolist(), "permutation")
    cols_ok = np.all(np.sort(R.psi, axis=1) == ids[None, :, None], axis=1)
    if (idx := first_violation(~cols_ok)) is not None:
        lam, y = idx
        return Verdict.fail("nondegenerate-psi", idx, R.psi[lam, :, y].tolist(), "permutation")
    return Verdict.ok()


def check_nondegenerate_fibered(R: Braiding) -> Verdict:
    """Non-degeneracy read on arrows ``(lam, x)`` of the associated quiver.

    The ``varphi`` half is the same as in :func:`check_nondegenerate`. For the
    second half, fix ``(mu, y)`` and let ``(lam, x)`` range over pairs with
    ``phi(lam, x) = mu``; the map ``(lam, x) -> (phi(lam, varphi), psi)`` must
    be a bijection onto the pairs ``(nu, z)`` with ``phi(nu, z) = phi(mu, y)``.
    Holding ``lam`` fixed instead, as the plain check does, is stricter and
    fails for genuine braided dynamical groups.
    """
    N = R.base.elem_size
    ids = np.arange(N)
    rows_ok = np.all(np.sort(R.varphi, axis=2) == ids, axis=2)
    if (idx := first_violation(~rows_ok)) is not None:
        return Verdict.fail("nondegenerate-varphi", idx, R.varphi[idx].tolist(), "permutation")
    phi = R.base.phi
    for mu in range(R.base.lambda_size):
        ls, xs = np.nonzero(phi == mu)
        for y in range(N):
            img = np.sort(phi[ls, R.varphi[ls, xs, y]] * N + R.psi[ls, xs, y])
            cl, cx = np.nonzero(phi == phi[mu, y])
            cod = cl * N + cx
            if not np.array_equal(img, cod):
                return Verdict.fail("nondegenerate-psi-fibered", (mu, y),
                                    [list(divmod(int(c), N)) for c in img],
                                    [list(divmod(int(c), N)) for c in cod])
    return Verdict.ok()


def dybe_sides(R: Braiding):
    """Both sides of the equation on every ``(lam, a, b, c)``, with intermediates.

    Left:  ``(d, e) = R(lam)(a, b)``, ``(f, g) = R(phi(lam, d))(e, c)``,
    ``(h, k) = R(lam)(d, f)``; the result is ``(h, k, g)``.
    Right: ``(q, r) = R(phi(lam, a))(b, c)``, ``(s, t) = R(lam)(a, q)``,
    ``(v, w) = R(phi(lam, s))(t, r)``; the result is ``(s, v, w)``.
    """
    phi, V, P = R.base.phi, R.varphi, R.psi
    L, N = R.base.lambda_size, R.base.elem_size
    lam, a, b, c = _grid(L, N, N, N)
    d, e = V[lam, a, b], P[lam, a, b]
    mu = phi[lam, d]
    f, g = V[mu, e, c], P[mu, e, c]
    h, k = V[lam, d, f], P[lam, d, f]

    nu = phi[lam, a]
    q, r = V[nu, b, c], P[nu, b, c]
    s, t = V[lam, a, q], P[lam, a, q]
    rho = phi[lam, s]
    v, w = V[rho, t, r], P[rho, t, r]
    left = {"d": d, "e": e, "f": f, "g": g, "h": h, "k": k}
    right = {"q": q, "r": r, "s": s, "t": t, "v": v, "w": w}
    return (h, k, g), (s, v, w), left, right


def check_dybe(R: Braiding) -> Verdict:
    """Exhaustive check of the braid relation with shifted middle factor.

    The preconditions (bijectivity of each ``R(lam)`` and weight zero) are
    re-checked first and their own witnesses are returned on failure.
    """
    for pre in (check_bijective, check_weight_zero):
        v = pre(R)
        if not v:
            return v
    (h, k, g), (s, v_, w), left, right = dybe_sides(R)
    bad = (h != s) | (k != v_) | (g != w)
    if (idx := first_violation(bad)) is not None:
        return Verdict.fail(
            "dybe", idx,
            [int(h[idx]), int(k[idx]), int(g[idx])],
            [int(s[idx]), int(v_[idx]), int(w[idx])],
            left={n: int(np.broadcast_to(arr, bad.shape)[idx]) for n, arr in left.items()},
            right={n: int(np.broadcast_to(arr, bad.shape)[idx]) for n, arr in right.items()},
        )
    return Verdict.ok()


def check_compatible_actions(g: FiniteDynGroup, R: Braiding) -> Verdict:
    """The three compatibility identities between a dynamical group and a braiding.

    1. ``varphi(lam, a o b, c) = varphi(lam, a, varphi(phi(lam, a), b, c))``
    2. ``psi(lam, a, b o_{phi(lam,a)} c) = psi(phi(lam, varphi(lam,a,b)), psi(lam,a,b), c)``
    3. ``varphi(lam, a, b) o_lam psi(lam, a, b) = a o_lam b``
    """
    if not g.base.same_as(R.base):
        raise ShapeError("group and braiding must live on the same dynamical set")
    phi, P, V, S = g.phi, g.product, R.varphi, R.psi
    L, N = g.lambda_size, g.elem_size
    lam, a, b, c = _grid(L, N, N, N)
    nu = phi[lam, a]

    lhs = V[lam, P[lam, a, b], c]
    rhs = V[lam, a, V[nu, b, c]]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("compatible-1", idx, int(lhs[idx]), int(rhs[idx]))

    lhs = S[lam, a, P[nu, b, c]]
    rhs = S[phi[lam, V[lam, a, b]], S[lam, a, b], c]
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("compatible-2", idx, int(lhs[idx]), int(rhs[idx]))

    lam3, a3, b3 = _grid(L, N, N)
    lhs = P[lam3, V, S]
    rhs = P
    if (idx := first_violation(lhs != rhs)) is not None:
        return Verdict.fail("compatible-3", idx, int(lhs[idx]), int(rhs[idx]))
    return Verdict.ok()


def check_all(R: Braiding) -> Verdict:
    """Bijectivity, weight zero, fibered non-degeneracy and the DYBE sweep, in that order."""
    for check in (check_bijective, check_weight_zero, check_nondegenerate_fibered, check_dybe):
        v = check(R)
        if not v:
            return v
    return Verdict.ok()
