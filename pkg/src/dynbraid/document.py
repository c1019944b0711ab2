"""A single JSON envelope for every structure kind, with canonical serialization.

A document names its parameters and elements by string labels; tables hold
labels, nested as ``phi[lam][a]`` and ``table[lam][a][b]``. Parsing maps
labels to dense indices. Key order on output is fixed: ``kind``,
``lambda_labels``, ``elem_labels``, ``unit``, then ``h_elem_labels`` and
``h_unit`` when the kind has a second group, then the tables in alphabetical
order, then ``metadata``. Serializing a parsed canonical document gives the
same bytes back.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import FiniteDynGroup, FiniteDynSet
from .matched import BraidedDynGroup, DynMatchedPair
from .postbrace import FiniteDynPostGroup, FiniteDynSkewBrace
from .rota import DynAction, RelativeRBO
from .ybe import Braiding

__all__ = [
    "DocumentError",
    "StructureDocument",
    "DOCUMENT_KINDS",
    "parse_document",
    "serialize_document",
    "load_document",
    "to_structure",
    "from_structure",
]


class DocumentError(ValueError):
    """Malformed document; the message starts with a JSON path or a line/column."""


# Table name -> (row labels, value labels), where row labels describe every axis.
#   "L" parameters, "G" elements, "H" elements of the second group.
_SCHEMA: dict[str, dict[str, tuple[str, str]]] = {
    "dynamical_group": {"phi": ("LG", "L"), "product": ("LGG", "G")},
    "post_group": {"phi": ("LG", "L"), "dot": ("LGG", "G"), "tri": ("LGG", "G")},
    "skew_brace": {"phi": ("LG", "L"), "dot": ("LGG", "G"), "circ": ("LGG", "G")},
    "braided_group": {"phi": ("LG", "L"), "product": ("LGG", "G"),
                      "rharp": ("LGG", "G"), "lharp": ("LGG", "G")},
    "braiding": {"phi": ("LG", "L"), "varphi": ("LGG", "G"), "psi": ("LGG", "G")},
    "matched_pair": {"phi": ("LG", "L"), "product": ("LGG", "G"),
                     "h_phi": ("LH", "L"), "h_product": ("LHH", "H"),
                     "rharp": ("LGH", "H"), "lharp": ("LGH", "G")},
    "action": {"phi": ("LG", "L"), "product": ("LGG", "G"),
               "h_product": ("LHH", "H"), "phi_act": ("LGH", "H")},
    "rbo": {"phi": ("LG", "L"), "product": ("LGG", "G"),
            "h_product": ("LHH", "H"), "phi_act": ("LGH", "H"), "b_map": ("H", "G")},
}
DOCUMENT_KINDS = tuple(_SCHEMA)
_TWO_GROUP = {"matched_pair", "action", "rbo"}
_HEADER = ("kind", "lambda_labels", "elem_labels", "unit", "h_elem_labels", "h_unit")
_IGNORED = {"inverse", "h_inverse"}


@dataclass(frozen=True, eq=False)
class StructureDocument:
    kind: str
    lambda_labels: tuple[str, ...]
    elem_labels: tuple[str, ...]
    unit: int | None
    tables: dict[str, np.ndarray]
    h_elem_labels: tuple[str, ...] | None = None
    h_unit: int | None = None
    metadata: dict = field(default_factory=dict)

    def labels(self, axis: str) -> tuple[str, ...]:
        return {"L": self.lambda_labels, "G": self.elem_labels, "H": self.h_elem_labels}[axis]


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise DocumentError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _labels(raw, path: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or not raw:
        raise DocumentError(f"{path}: expected a non-empty list of labels")
    seen: set[str] = set()
    for i, lab in enumerate(raw):
        if not isinstance(lab, str):
            raise DocumentError(f"{path}[{i}]: labels must be strings, got {lab!r}")
        if lab in seen:
            raise DocumentError(f"{path}[{i}]: duplicate label {lab!r}")
        seen.add(lab)
    return tuple(raw)


def _lookup(labels: tuple[str, ...], value, path: str, what: str) -> int:
    try:
        return labels.index(value)
    except ValueError:
        raise DocumentError(f"{path}: {value!r} is not {what} label") from None


_WHAT = {"L": "a parameter", "G": "an element", "H": "an H element"}


def _table(raw, axes: str, values: str, doc_labels, path: str) -> np.ndarray:
    shape = tuple(len(doc_labels(a)) for a in axes)
    vals = doc_labels(values)
    out = np.empty(shape, dtype=np.int64)

    def walk(node, depth: int, idx: tuple, p: str):
        if depth == len(shape):
            out[idx] = _lookup(vals, node, p, _WHAT[values])
            return
        if not isinstance(node, list) or len(node) != shape[depth]:
            got = f"length {len(node)}" if isinstance(node, list) else type(node).__name__
            raise DocumentError(f"{p}: ragged table, expected a list of length {shape[depth]}, got {got}")
        for i, child in enumerate(node):
            walk(child, depth + 1, idx + (i,), f"{p}[{i}]")

    walk(raw, 0, (), path)
    return out


def parse_document(text: str) -> StructureDocument:
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentError("$: expected a JSON object")
    kind = raw.get("kind")
    if kind not in _SCHEMA:
        raise DocumentError(f"$.kind: unknown kind {kind!r}; expected one of {', '.join(DOCUMENT_KINDS)}")
    schema = _SCHEMA[kind]
    allowed = set(_HEADER) | set(schema) | {"metadata"} | _IGNORED
    for key in raw:
        if key not in allowed:
            raise DocumentError(f"$.{key}: unknown field for kind {kind!r}")
    for key in sorted(_IGNORED & set(raw)):
        warnings.warn(f"$.{key}: inverse tables are derived, the supplied one is ignored", stacklevel=2)
    two = kind in _TWO_GROUP
    required = ["lambda_labels", "elem_labels"] + list(schema)
    if kind != "braiding":
        required.append("unit")
    if two:
        required += ["h_elem_labels", "h_unit"]
    for key in required:
        if key not in raw:
            raise DocumentError(f"$.{key}: missing field for kind {kind!r}")
    for key in ("h_elem_labels", "h_unit"):
        if key in raw and not two:
            raise DocumentError(f"$.{key}: only allowed for kinds with two groups")
    if kind == "braiding" and "unit" in raw:
        raise DocumentError("$.unit: a braiding has no unit")

    lam_labels = _labels(raw["lambda_labels"], "$.lambda_labels")
    elem_labels = _labels(raw["elem_labels"], "$.elem_labels")
    h_labels = _labels(raw["h_elem_labels"], "$.h_elem_labels") if two else None
    unit = _lookup(elem_labels, raw["unit"], "$.unit", "an element") if "unit" in raw else None
    h_unit = _lookup(h_labels, raw["h_unit"], "$.h_unit", "an H element") if two else None
    meta = raw.get("metadata", {})
    if not isinstance(meta, dict):
        raise DocumentError("$.metadata: expected an object")

    axes_labels = {"L": lam_labels, "G": elem_labels, "H": h_labels}
    tables = {
        name: _table(raw[name], axes, values, axes_labels.__getitem__, f"$.{name}")
        for name, (axes, values) in sorted(schema.items())
    }
    return StructureDocument(kind, lam_labels, elem_labels, unit, tables, h_labels, h_unit, meta)


def load_document(path) -> StructureDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


# ---------------------------------------------------------------- output

def _dump(value: Any, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(k, ensure_ascii=False)}: {_dump(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value):
        items = [f"{pad}  {_dump(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return json.dumps(value, ensure_ascii=False)


def document_dict(doc: StructureDocument) -> dict:
    """The document as an ordered plain dict with labels in place of indices."""
    out: dict[str, Any] = {
        "kind": doc.kind,
        "lambda_labels": list(doc.lambda_labels),
        "elem_labels": list(doc.elem_labels),
    }
    if doc.unit is not None:
        out["unit"] = doc.elem_labels[doc.unit]
    if doc.kind in _TWO_GROUP:
        out["h_elem_labels"] = list(doc.h_elem_labels)
        out["h_unit"] = doc.h_elem_labels[doc.h_unit]
    schema = _SCHEMA[doc.kind]
    for name in sorted(schema):
        vals = doc.labels(schema[name][1])
        out[name] = np.vectorize(vals.__getitem__, otypes=[object])(doc.tables[name]).tolist()
    out["metadata"] = dict(sorted(doc.metadata.items()))
    return out


def serialize_document(doc: StructureDocument) -> str:
    return _dump(document_dict(doc), 0) + "\n"


def compact_document(doc: StructureDocument) -> str:
    """Single-line form, for streaming."""
    return json.dumps(document_dict(doc), ensure_ascii=False, separators=(",", ":"))


# ---------------------------------------------------------------- structures

def to_structure(doc: StructureDocument):
    """Build the library object the document describes (no verification)."""
    t, L = doc.tables, len(doc.lambda_labels)
    base = FiniteDynSet(t["phi"])
    if doc.kind == "dynamical_group":
        return FiniteDynGroup(base, t["product"], doc.unit)
    if doc.kind == "post_group":
        return FiniteDynPostGroup(base, t["dot"], t["tri"], doc.unit)
    if doc.kind == "skew_brace":
        return FiniteDynSkewBrace(base, t["dot"], t["circ"], doc.unit)
    if doc.kind == "braided_group":
        return BraidedDynGroup(FiniteDynGroup(base, t["product"], doc.unit), t["rharp"], t["lharp"])
    if doc.kind == "braiding":
        return Braiding(base, t["varphi"], t["psi"])
    g = FiniteDynGroup(base, t["product"], doc.unit)
    if doc.kind == "matched_pair":
        h = FiniteDynGroup(FiniteDynSet(t["h_phi"]), t["h_product"], doc.h_unit)
        return DynMatchedPair(g, h, t["rharp"], t["lharp"])
    h = FiniteDynGroup.constant(t["h_product"], doc.h_unit)
    if h.lambda_size != L:
        raise DocumentError("$.h_product: one slice per parameter is required")
    act = DynAction(g, h, t["phi_act"])
    if doc.kind == "action":
        return act
    return RelativeRBO(act, t["b_map"])


def from_structure(obj, lambda_labels=None, elem_labels=None, *, h_elem_labels=None,
                   metadata: dict | None = None) -> StructureDocument:
    """Wrap a library object as a document; labels default to ``l1, l2, ...`` and ``0, 1, ...``."""

    def labs(given, n, fmt):
        return tuple(given) if given is not None else tuple(fmt(i) for i in range(n))

    meta = dict(metadata or {})
    if isinstance(obj, FiniteDynGroup):
        kind, tables, unit, base = "dynamical_group", {"product": obj.product}, obj.unit, obj.base
    elif isinstance(obj, FiniteDynPostGroup):
        kind, tables, unit, base = "post_group", {"dot": obj.dot, "tri": obj.tri}, obj.unit, obj.base
    elif isinstance(obj, FiniteDynSkewBrace):
        kind, tables, unit, base = "skew_brace", {"dot": obj.dot, "circ": obj.circ}, obj.unit, obj.base
    elif isinstance(obj, BraidedDynGroup):
        kind, unit, base = "braided_group", obj.g.unit, obj.g.base
        tables = {"product": obj.g.product, "rharp": obj.rharp, "lharp": obj.lharp}
    elif isinstance(obj, Braiding):
        kind, unit, base = "braiding", None, obj.base
        tables = {"varphi": obj.varphi, "psi": obj.psi}
    else:
        return _two_group_document(obj, labs, lambda_labels, elem_labels, h_elem_labels, meta)
    tables["phi"] = base.phi
    lam = labs(lambda_labels, base.lambda_size, lambda i: f"l{i + 1}")
    el = labs(elem_labels, base.elem_size, str)
    return StructureDocument(kind, lam, el, unit, {k: np.asarray(v) for k, v in tables.items()}, metadata=meta)


def _two_group_document(obj, labs, lambda_labels, elem_labels, h_elem_labels, meta):
    if isinstance(obj, DynMatchedPair):
        kind, g, h = "matched_pair", obj.g, obj.h
        tables = {"h_phi": h.phi, "rharp": obj.rharp, "lharp": obj.lharp}
    elif isinstance(obj, DynAction):
        kind, g, h = "action", obj.g, obj.h
        tables = {"phi_act": obj.phi_act}
    elif isinstance(obj, RelativeRBO):
        kind, g, h = "rbo", obj.g, obj.h
        tables = {"phi_act": obj.action.phi_act, "b_map": obj.b_map}
    else:
        raise TypeError(f"no document kind for {type(obj).__name__}")
    tables.update(phi=g.phi, product=g.product, h_product=h.product)
    lam = labs(lambda_labels, g.lambda_size, lambda i: f"l{i + 1}")
    el = labs(elem_labels, g.elem_size, str)
    hl = labs(h_elem_labels, h.elem_size, lambda i: f"h{i}")
    return StructureDocument(kind, lam, el, g.unit, {k: np.asarray(v) for k, v in tables.items()},
                             hl, h.unit, meta)
