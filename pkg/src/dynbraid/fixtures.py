"""Worked examples as ready-made tables, plus a few small group tables.

Parameter labels ``l1, l2, l3`` map to indices ``0, 1, 2``.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .core import ConstantDynGroup, FiniteDynGroup, FiniteDynSet, trivial_from_group
from .postbrace import FiniteDynPostGroup, FiniteDynSkewBrace

__all__ = [
    "THREE_PHI",
    "THREE_CIRC",
    "THREE_TRI",
    "cyclic_table",
    "klein_table",
    "symmetric3_table",
    "example_2_7",
    "example_4_3",
    "z3_skewbrace",
    "trivial_zn",
    "z4_klein_constant",
    "fixture_documents",
    "write_fixtures",
]

# phi[lam, a] for the three-element examples.
THREE_PHI = np.array([
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
])

# circ[lam, a, b] of the three-element dynamical group.
THREE_CIRC = np.array([
    [[0, 1, 2], [1, 0, 2], [2, 1, 0]],
    [[0, 1, 2], [1, 2, 0], [2, 1, 0]],
    [[0, 1, 2], [1, 0, 2], [2, 0, 1]],
])

# tri[lam, a, b] of the three-element post-group over Z/3.
THREE_TRI = np.array([
    [[0, 1, 2], [0, 2, 1], [0, 2, 1]],
    [[0, 1, 2], [0, 1, 2], [0, 2, 1]],
    [[0, 1, 2], [0, 2, 1], [0, 1, 2]],
])


def cyclic_table(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def klein_table() -> np.ndarray:
    i = np.arange(4)
    return i[:, None] ^ i[None, :]


def symmetric3_table() -> np.ndarray:
    """Cayley table of S3, elements in lexicographic order of permutations (identity is 0)."""
    perms = list(permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    # (p * q)(i) = p(q(i))
    return np.array([[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms])


def example_2_7() -> FiniteDynGroup:
    return FiniteDynGroup(FiniteDynSet(THREE_PHI), THREE_CIRC, 0)


def example_4_3() -> FiniteDynPostGroup:
    dot = np.repeat(cyclic_table(3)[None], 3, axis=0)
    return FiniteDynPostGroup(FiniteDynSet(THREE_PHI), dot, THREE_TRI, 0)


def z3_skewbrace() -> FiniteDynSkewBrace:
    dot = np.repeat(cyclic_table(3)[None], 3, axis=0)
    return FiniteDynSkewBrace(FiniteDynSet(THREE_PHI), dot, THREE_CIRC, 0)


def trivial_zn(n: int, lambda_size: int) -> ConstantDynGroup:
    return trivial_from_group(cyclic_table(n), lambda_size)


def z4_klein_constant() -> ConstantDynGroup:
    """Constant group whose two slices are Z/4 and the Klein group (shared unit 0)."""
    return FiniteDynGroup.constant(np.stack([cyclic_table(4), klein_table()]), 0)


def fixture_documents() -> dict:
    """Every repository fixture as a document, keyed by file name."""
    from .document import from_structure
    from .matched import abelian_flip, braided_to_solution
    from .postbrace import identity_rbo, post_to_braided

    lam = ("l1", "l2", "l3")
    ex43 = example_4_3()
    braided = post_to_braided(ex43)
    rbo = identity_rbo(ex43)
    z3 = trivial_zn(3, 2)

    def src(text):
        return {"source": text}

    docs = {
        "example_2_7": from_structure(example_2_7(), lam, metadata=src("three-element dynamical group")),
        "example_4_3": from_structure(ex43, lam, metadata=src("post-group over Z/3 on the three-element dynamical set")),
        "z3_skewbrace": from_structure(z3_skewbrace(), lam, metadata=src("skew brace attached to example_4_3")),
        "example_4_3_braided": from_structure(braided, lam, metadata=src("braided group of example_4_3")),
        "example_4_3_braiding": from_structure(braided_to_solution(braided), lam,
                                               metadata=src("braiding of example_4_3")),
        "example_4_3_matched_pair": from_structure(braided.pair, lam, h_elem_labels=("0", "1", "2"),
                                                   metadata=src("matched pair of example_4_3 with itself")),
        "example_4_3_action": from_structure(rbo.action, lam, h_elem_labels=("0", "1", "2"),
                                             metadata=src("action of the sub-adjacent group on Z/3")),
        "example_4_3_rbo": from_structure(rbo, lam, h_elem_labels=("0", "1", "2"),
                                          metadata=src("identity operator of example_4_3")),
        "trivial_z2_l1": from_structure(trivial_zn(2, 1), metadata=src("Z/2 with one parameter")),
        "trivial_z3_l2": from_structure(z3, metadata=src("Z/3 with two parameters")),
        "trivial_z3_l3": from_structure(trivial_zn(3, 3), metadata=src("Z/3 with three parameters")),
        "z4_klein": from_structure(z4_klein_constant(), metadata=src("constant group with slices Z/4 and Klein")),
        "flip_z3": from_structure(abelian_flip(z3), metadata=src("flip on constant Z/3")),
        "flip_z3_braiding": from_structure(braided_to_solution(abelian_flip(z3)),
                                           metadata=src("flip braiding on constant Z/3")),
    }
    return docs


def write_fixtures(directory) -> list:
    """Write every fixture document to ``directory`` and return the paths."""
    from pathlib import Path

    from .document import serialize_document

    out = []
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name, doc in fixture_documents().items():
        path = d / f"{name}.json"
        path.write_text(serialize_document(doc), encoding="utf-8")
        out.append(path)
    return out
