"""Graded free S-modules and homogeneous matrices between them.

A :class:`GradedMatrix` stores its columns as sparse vectors in the target
free module: column ``c`` is the image of the ``c``-th source generator, so
entry ``(r, c)`` has x-degree ``source[c] - target[r]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .polys import HPoly, vec_axpy
from .rings import RingContext


class DegreeError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFree:
    """Free module with generators in the given (actual) degrees."""

    degrees: tuple

    def __init__(self, degrees: Sequence[int] = ()):
        object.__setattr__(self, "degrees", tuple(int(d) for d in degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def shift(self, t: int) -> "GradedFree":
        """The twist F(t): generator degrees decrease by t."""
        return GradedFree(d - t for d in self.degrees)

    def __add__(self, other: "GradedFree") -> "GradedFree":
        return GradedFree(self.degrees + other.degrees)


def check_vector(ctx: RingContext, v: Mapping, target: GradedFree, degree: int) -> None:
    deg = ctx.ring.deg
    for (q, m) in v:
        if not 0 <= q < len(target):
            raise DegreeError(f"position {q} outside a free module of rank {len(target)}")
        got = deg(m) + target[q]
        if got != degree:
            raise DegreeError(f"term at position {q} has degree {got}, expected {degree}")


class GradedMatrix:
    """Homogeneous degree-0 map ``source -> target`` of graded free modules."""

    __slots__ = ("ctx", "source", "target", "cols")

    def __init__(self, ctx: RingContext, source: GradedFree, target: GradedFree,
                 cols: Sequence[Mapping], check: bool = True):
        if len(cols) != len(source):
            raise DegreeError(f"{len(cols)} columns for a source of rank {len(source)}")
        self.ctx = ctx
        self.source = source
        self.target = target
        self.cols = tuple(dict(c) for c in cols)
        if check:
            for c, col in enumerate(self.cols):
                check_vector(ctx, col, target, source[c])

    @classmethod
    def from_entries(cls, ctx: RingContext, source: GradedFree, target: GradedFree,
                     rows: Sequence[Sequence]) -> "GradedMatrix":
        """Build from a row-major table of entries (HPoly, str or scalars)."""
        from .parser import parse_poly

        cols = [dict() for _ in range(len(source))]
        for r, row in enumerate(rows):
            if len(row) != len(source):
                raise DegreeError(f"row {r} has {len(row)} entries, expected {len(source)}")
            for c, e in enumerate(row):
                if isinstance(e, str):
                    e = parse_poly(e, ctx)
                elif not isinstance(e, HPoly):
                    e = HPoly.constant(ctx, e)
                for m, a in e.terms.items():
                    cols[c][(r, m)] = a
        return cls(ctx, source, target, cols)

    @classmethod
    def identity(cls, ctx: RingContext, F: GradedFree) -> "GradedMatrix":
        one = ctx.field.one
        return cls(ctx, F, F, [{(i, ctx.ring.one): one} for i in range(len(F))], check=False)

    @classmethod
    def zero(cls, ctx: RingContext, source: GradedFree, target: GradedFree) -> "GradedMatrix":
        return cls(ctx, source, target, [{} for _ in range(len(source))], check=False)

    @property
    def shape(self) -> tuple:
        return (len(self.target), len(self.source))

    def entry(self, r: int, c: int) -> HPoly:
        terms = {m: a for (q, m), a in self.cols[c].items() if q == r}
        deg = self.source[c] - self.target[r] if terms else None
        return HPoly._raw(self.ctx, terms, deg)

    def rows(self) -> list:
        return [[self.entry(r, c) for c in range(len(self.source))] for r in range(len(self.target))]

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and self.ctx == other.ctx
            and self.source == other.source
            and self.target == other.target
            and self.cols == other.cols
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows())
        return f"GradedMatrix({list(self.target.degrees)} <- {list(self.source.degrees)}: [{body}])"


def apply_matrix(a: GradedMatrix, v: Mapping) -> dict:
    """Image under ``a`` of a vector in a's source free module."""
    p = a.ctx.field.p
    out: dict = {}
    cols = a.cols
    for (r, m), coef in v.items():
        vec_axpy(out, coef, cols[r], p, shift=m)
    return out


def compose(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    """The composite a o b (first b, then a)."""
    if a.source != b.target:
        raise DegreeError(
            f"cannot compose: inner free modules differ ({list(a.source.degrees)} vs {list(b.target.degrees)})"
        )
    cols = [apply_matrix(a, col) for col in b.cols]
    return GradedMatrix(a.ctx, b.source, a.target, cols)


def hstack(ctx: RingContext, target: GradedFree, blocks: Sequence[GradedMatrix]) -> GradedMatrix:
    cols: list = []
    degs: list = []
    for b in blocks:
        cols.extend(b.cols)
        degs.extend(b.source.degrees)
    return GradedMatrix(ctx, GradedFree(degs), target, cols, check=False)
