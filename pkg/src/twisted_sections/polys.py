"""Homogeneous polynomials and sparse module vectors.

A polynomial is a dict ``monomial -> coefficient``; a module element of a
free module is a dict ``(position, monomial) -> coefficient``.  Zero
coefficients are never stored.  :class:`HPoly` is the immutable public
wrapper; the engine works on the raw dicts.
"""

from __future__ import annotations

from typing import Mapping

from .rings import RingContext, mono_mul


class InhomogeneousError(ValueError):
    pass


# ---------- raw polynomial dicts ----------

def poly_add(a: dict, b: Mapping, p: int, c=1) -> dict:
    """Return a + c*b."""
    out = dict(a)
    for m, v in b.items():
        nv = out.get(m, 0) + c * v
        if p:
            nv %= p
        if nv:
            out[m] = nv
        else:
            out.pop(m, None)
    return out


def poly_mul(a: Mapping, b: Mapping, p: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            nv = out.get(m, 0) + ca * cb
            if p:
                nv %= p
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
    return out


def poly_scale(a: Mapping, c, p: int) -> dict:
    if not c:
        return {}
    if p:
        return {m: (v * c) % p for m, v in a.items()}
    return {m: v * c for m, v in a.items()}


# ---------- module vectors ----------

def vec_axpy(dst: dict, c, src: Mapping, p: int, shift=None) -> None:
    """In place: dst += c * x^shift * src."""
    for (pos, m), v in src.items():
        t = (pos, mono_mul(m, shift)) if shift is not None else (pos, m)
        nv = dst.get(t, 0) + c * v
        if p:
            nv %= p
        if nv:
            dst[t] = nv
        else:
            dst.pop(t, None)


def vec_add(a: Mapping, b: Mapping, p: int, c=1) -> dict:
    out = dict(a)
    vec_axpy(out, c, b, p)
    return out


def vec_scale(a: Mapping, c, p: int) -> dict:
    if not c:
        return {}
    if p:
        return {t: (v * c) % p for t, v in a.items()}
    return {t: v * c for t, v in a.items()}


def vec_mul_poly(a: Mapping, f: Mapping, p: int) -> dict:
    """Multiply a module vector by a polynomial."""
    out: dict = {}
    for m, c in f.items():
        vec_axpy(out, c, a, p, shift=m)
    return out


def vec_from_poly(f: Mapping, pos: int) -> dict:
    return {(pos, m): c for m, c in f.items()}


def vec_component(v: Mapping, pos: int) -> dict:
    return {m: c for (q, m), c in v.items() if q == pos}


def vec_reindex(v: Mapping, mapping) -> dict:
    """Move position q to mapping[q]; positions mapped to None are dropped."""
    out = {}
    for (q, m), c in v.items():
        nq = mapping(q) if callable(mapping) else mapping.get(q)
        if nq is not None:
            out[(nq, m)] = c
    return out


def vec_degree(v: Mapping, ring, posdeg) -> int | None:
    """x-degree of a homogeneous vector (None for zero)."""
    for (q, m) in v:
        return ring.deg(m) + posdeg[q]
    return None


def vec_is_homogeneous(v: Mapping, ring, posdeg) -> bool:
    degs = {ring.deg(m) + posdeg[q] for (q, m) in v}
    return len(degs) <= 1


# ---------- public wrapper ----------

class HPoly:
    """A polynomial in S homogeneous in the x-variables.

    ``degree`` is ``None`` for the zero polynomial.
    """

    __slots__ = ("ctx", "terms", "degree")

    def __init__(self, ctx: RingContext, terms: Mapping | None = None):
        field = ctx.field
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != ctx.nvars:
                raise ValueError(f"monomial {m} has wrong length for {ctx}")
            c = field(c)
            if c:
                clean[m] = c
        degs = sorted({ctx.ring.deg(m) for m in clean})
        if len(degs) > 1:
            raise InhomogeneousError(
                f"polynomial is not homogeneous in x: degrees {degs[0]} and {degs[-1]}"
            )
        self.ctx = ctx
        self.terms = clean
        self.degree = degs[0] if degs else None

    @classmethod
    def _raw(cls, ctx, terms, degree):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj.degree = degree
        return obj

    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, {}, None)

    @classmethod
    def constant(cls, ctx, c=1):
        return cls(ctx, {ctx.ring.one: c})

    @classmethod
    def var(cls, ctx, j: int):
        return cls(ctx, {ctx.x_var(j): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, HPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _wrap(self, terms):
        degs = {self.ctx.ring.deg(m) for m in terms}
        if len(degs) > 1:
            raise InhomogeneousError(f"result is not homogeneous: degrees {sorted(degs)}")
        return HPoly._raw(self.ctx, terms, degs.pop() if degs else None)

    def __add__(self, other: "HPoly"):
        return self._wrap(poly_add(self.terms, other.terms, self.ctx.field.p))

    def __sub__(self, other: "HPoly"):
        return self._wrap(poly_add(self.terms, other.terms, self.ctx.field.p, -1))

    def __neg__(self):
        return HPoly._raw(self.ctx, poly_scale(self.terms, -1, self.ctx.field.p), self.degree)

    def __mul__(self, other):
        p = self.ctx.field.p
        if isinstance(other, HPoly):
            terms = poly_mul(self.terms, other.terms, p)
            deg = None if not terms else self.degree + other.degree
            return HPoly._raw(self.ctx, terms, deg)
        c = self.ctx.field(other)
        terms = poly_scale(self.terms, c, p)
        return HPoly._raw(self.ctx, terms, self.degree if terms else None)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = HPoly.constant(self.ctx)
        for _ in range(e):
            out = out * self
        return out

    def sorted_terms(self) -> list:
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda mc: self.ctx.ring.mkey(mc[0]), reverse=True)

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"HPoly({str(self)!r})"
