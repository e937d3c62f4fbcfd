"""Versioned JSON formats for complexes, algebras, modules and simplicial modules.

Every document carries a ``schema`` tag.  Matrices are stored as flat
row-major entry lists; their shapes follow from the stored dimensions, so a
dump followed by a load reproduces the object exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

from .algebra import FDModule, FinDimAlgebra
from .errors import QHochschildError, ShapeMismatch
from .exactla import FMatrix
from .ncomplex import NComplex
from .qcalc import make_context
from .simplicial import SimplicialModule

NCOMPLEX = "qhochschild.ncomplex/1"
ALGEBRA = "qhochschild.algebra/1"
MODULE = "qhochschild.module/1"
SIMPLICIAL = "qhochschild.simplicial/1"


class SchemaError(QHochschildError):
    pass


def _check_schema(doc: dict, want: str) -> None:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected a JSON object for {want}")
    got = doc.get("schema")
    if got != want:
        raise SchemaError(f"schema {got!r}, expected {want!r}")


def _matrix(rows: int, cols: int, entries, p: int) -> FMatrix:
    entries = list(entries)
    if len(entries) != rows * cols:
        raise ShapeMismatch(f"{len(entries)} entries for a {rows} x {cols} matrix")
    return FMatrix.from_entries(rows, cols, entries, p)


# ---------------------------------------------------------------------------

def ncomplex_to_dict(c: NComplex) -> dict:
    ctx = {"N": c.N, "p": c.p}
    if c.context is not None:
        ctx["q"] = c.context.q
    return {
        "schema": NCOMPLEX,
        "context": ctx,
        "lo": c.lo,
        "hi": c.hi,
        "dims": list(c.dims),
        "diff": {str(n): m.entries for n, m in sorted(c.diff.items())},
        "bounded_below": c.bounded_below,
        "bounded_above": c.bounded_above,
    }


def ncomplex_from_dict(doc: dict, validate: bool = True) -> NComplex:
    _check_schema(doc, NCOMPLEX)
    try:
        ctx = doc["context"]
        N, p = int(ctx["N"]), int(ctx["p"])
        context = make_context(N, p, int(ctx["q"])) if "q" in ctx else None
        lo, hi = int(doc["lo"]), int(doc["hi"])
        dims = [int(x) for x in doc["dims"]]
        if len(dims) != hi - lo + 1:
            raise ShapeMismatch(f"{len(dims)} dimensions for window [{lo}, {hi}]")

        def dim(n):
            return dims[n - lo] if lo <= n <= hi else 0

        diff = {int(n): _matrix(dim(int(n) - 1), dim(int(n)), e, p)
                for n, e in doc.get("diff", {}).items()}
        return NComplex(N, p, lo, hi, dims, diff,
                        bounded_below=bool(doc.get("bounded_below", True)),
                        bounded_above=bool(doc.get("bounded_above", True)),
                        context=context, validate=validate)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, QHochschildError):
            raise
        raise SchemaError(f"malformed N-complex document: {exc!r}") from exc


def algebra_to_dict(a: FinDimAlgebra) -> dict:
    return a.as_dict()


def algebra_from_dict(doc: dict, validate: bool = True) -> FinDimAlgebra:
    _check_schema(doc, ALGEBRA)
    try:
        return FinDimAlgebra(int(doc["p"]), doc["mult"], doc["unit"],
                             name=str(doc.get("name", "")), validate=validate)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed algebra document: {exc!r}") from exc


def module_to_dict(m: FDModule) -> dict:
    return m.as_dict() | {"algebra": m.algebra.as_dict()}


def module_from_dict(doc: dict, algebra: FinDimAlgebra | None = None) -> FDModule:
    _check_schema(doc, MODULE)
    try:
        a = algebra if algebra is not None else algebra_from_dict(doc["algebra"])
        dim = int(doc["dim"])
        acts = [_matrix(dim, dim, e, a.p) for e in doc["actions"]]
        return FDModule(a, acts, doc.get("side", "left"), name=str(doc.get("name", "")))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed module document: {exc!r}") from exc


def simplicial_to_dict(sm: SimplicialModule) -> dict:
    return {
        "schema": SIMPLICIAL,
        "p": sm.p,
        "dims": list(sm.dims),
        "last_face": sm.last_face,
        "faces": {str(n): [f.entries for f in fs] for n, fs in sorted(sm.faces.items())},
        "degeneracies": {str(n): [s.entries for s in ss] for n, ss in sorted(sm.degeneracies.items())},
    }


def simplicial_from_dict(doc: dict, validate: bool = True) -> SimplicialModule:
    _check_schema(doc, SIMPLICIAL)
    try:
        p = int(doc["p"])
        dims = [int(x) for x in doc["dims"]]
        faces = {int(n): [_matrix(dims[int(n) - 1], dims[int(n)], e, p) for e in fs]
                 for n, fs in doc["faces"].items()}
        degs = {int(n): [_matrix(dims[int(n) + 1], dims[int(n)], e, p) for e in ss]
                for n, ss in doc.get("degeneracies", {}).items()}
        return SimplicialModule(p, dims, faces, degs, last_face=bool(doc.get("last_face", True)),
                                validate=validate)
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed simplicial document: {exc!r}") from exc


# ---------------------------------------------------------------------------

_LOADERS = {
    NCOMPLEX: ncomplex_from_dict,
    ALGEBRA: algebra_from_dict,
    MODULE: module_from_dict,
    SIMPLICIAL: simplicial_from_dict,
}


def to_dict(obj) -> dict:
    if isinstance(obj, NComplex):
        return ncomplex_to_dict(obj)
    if isinstance(obj, FinDimAlgebra):
        return algebra_to_dict(obj)
    if isinstance(obj, FDModule):
        return module_to_dict(obj)
    if isinstance(obj, SimplicialModule):
        return simplicial_to_dict(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_dict(doc: dict):
    if not isinstance(doc, dict) or doc.get("schema") not in _LOADERS:
        raise SchemaError(f"unknown schema {doc.get('schema') if isinstance(doc, dict) else None!r}")
    return _LOADERS[doc["schema"]](doc)


def dumps(obj) -> str:
    return json.dumps(to_dict(obj), sort_keys=True, separators=(",", ":"))


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return from_dict(doc)


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def load(path):
    return loads(Path(path).read_text())
