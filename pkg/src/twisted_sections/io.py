"""JSON interchange for modules, B-modules and reports.

Module format (``formatVersion`` 1)::

    {"formatVersion": 1,
     "base": "Q" | {"Fp": 32003} | {"poly": {"base": "Q", "vars": ["y"]}},
     "n": 1,
     "generatorDegrees": [0, 1],
     "relations": [["x1", "-x0^2"], ...]}

Each relation is a list with one homogeneous polynomial per generator.
"""

from __future__ import annotations

import json
from typing import Any

from .bmodules import BModule, BModuleMap
from .modules import GradedModule
from .parser import PolySyntaxError, format_terms, parse_poly
from .polys import InhomogeneousError
from .matrices import DegreeError
from .rings import QQ, BaseRing, Field, RingContext

FORMAT_VERSION = 1


class ModuleFormatError(ValueError):
    """Malformed module input; ``where`` locates the offending field."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


# ---------- base rings ----------

def base_from_json(obj: Any) -> BaseRing:
    if obj in ("Q", "QQ"):
        return BaseRing(QQ)
    if isinstance(obj, dict) and "Fp" in obj:
        try:
            return BaseRing(Field(int(obj["Fp"])))
        except (TypeError, ValueError) as exc:
            raise ModuleFormatError(str(exc), "base.Fp") from exc
    if isinstance(obj, dict) and "poly" in obj:
        poly = obj["poly"]
        inner = base_from_json(poly.get("base", "Q"))
        if not inner.is_field:
            raise ModuleFormatError("nested polynomial bases are not supported", "base.poly.base")
        names = poly.get("vars")
        if not names or not all(isinstance(v, str) for v in names):
            raise ModuleFormatError("expected a nonempty list of variable names", "base.poly.vars")
        if any(v.startswith("x") and v[1:].isdigit() for v in names):
            raise ModuleFormatError("base variables may not be named like x0, x1, ...", "base.poly.vars")
        return BaseRing(inner.field, names)
    raise ModuleFormatError(f"unknown base {obj!r}", "base")


def base_to_json(b: BaseRing):
    inner = "Q" if b.field.p == 0 else {"Fp": b.field.p}
    if b.is_field:
        return inner
    return {"poly": {"base": inner, "vars": list(b.variables)}}


def _coeff_json(c):
    return str(c)


# ---------- graded modules ----------

def module_from_json(obj: Any) -> GradedModule:
    if not isinstance(obj, dict):
        raise ModuleFormatError("expected a JSON object")
    version = obj.get("formatVersion", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ModuleFormatError(f"unsupported formatVersion {version}", "formatVersion")
    base = base_from_json(obj.get("base", "Q"))
    n = obj.get("n")
    if not isinstance(n, int) or n < 0:
        raise ModuleFormatError("expected a nonnegative integer", "n")
    ctx = RingContext(base, n)
    degs = obj.get("generatorDegrees")
    if not isinstance(degs, list) or not all(isinstance(a, int) for a in degs):
        raise ModuleFormatError("expected a list of integers", "generatorDegrees")
    rels = []
    for r, rel in enumerate(obj.get("relations", [])):
        if not isinstance(rel, list) or len(rel) != len(degs):
            raise ModuleFormatError(f"expected {len(degs)} entries", f"relations[{r}]")
        vec = {}
        deg = None
        for k, text in enumerate(rel):
            where = f"relations[{r}][{k}]"
            try:
                f = parse_poly(str(text), ctx)
            except (PolySyntaxError, InhomogeneousError, ZeroDivisionError) as exc:
                raise ModuleFormatError(str(exc), where) from exc
            if f.degree is None:
                continue
            if deg is None:
                deg = f.degree + degs[k]
            elif f.degree + degs[k] != deg:
                raise ModuleFormatError(
                    f"entry has total degree {f.degree + degs[k]}, expected {deg}", where)
            for m, c in f.terms.items():
                vec[(k, m)] = c
        if vec:
            rels.append(vec)
    try:
        return GradedModule(ctx, degs, rels)
    except DegreeError as exc:
        raise ModuleFormatError(str(exc), "relations") from exc


def module_to_json(M: GradedModule) -> dict:
    ctx = M.ctx
    rels = []
    for rel in M.relations:
        comps = [dict() for _ in range(M.ngens)]
        for (k, m), c in rel.items():
            comps[k][m] = c
        rels.append([format_terms(c, ctx) for c in comps])
    return {
        "formatVersion": FORMAT_VERSION,
        "base": base_to_json(ctx.base),
        "n": ctx.n,
        "generatorDegrees": list(M.degrees),
        "relations": rels,
    }


def load_module(path: str) -> GradedModule:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModuleFormatError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})",
                                path) from exc
    return module_from_json(obj)


def dump_json(obj, path: str | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


# ---------- B-modules and maps ----------

def _bvec_strings(v: dict, size: int, base: BaseRing) -> list:
    """Sparse B-vector as one polynomial string in y per coordinate."""
    ctx = RingContext(base, 0)
    comps = [dict() for _ in range(size)]
    for (q, m), c in v.items():
        comps[q][(0,) + tuple(m)] = c
    return [format_terms(c, ctx) for c in comps]


def bmodule_to_json(P: BModule) -> dict:
    if P.is_field:
        return {"base": base_to_json(P.base), "dim": P.ngens}
    return {
        "base": base_to_json(P.base),
        "generators": P.ngens,
        "relations": [_bvec_strings(r, P.ngens, P.base) for r in P.relations],
    }


def bmap_to_json(f: BModuleMap) -> list:
    """Rows of the matrix (row i is the image of source generator i)."""
    if f.A is not None:
        return [[_coeff_json(c) for c in row] for row in f.A.tolist()]
    return [_bvec_strings(r, f.target.ngens, f.source.base) for r in f.rows]
