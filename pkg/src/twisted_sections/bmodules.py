"""Finitely presented modules over the base ring B, and maps between them.

Over a field base a B-module is a vector space ``k^r`` (always presented
freely) and a map is a dense matrix.  Over ``B = k[y]`` a module is the
cokernel of a relation list in ``B^r`` and maps are lists of sparse rows.
Maps act on row vectors: generator ``i`` of the source goes to row ``i``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import linalg as la
from .groebner import GroebnerBasis, Subquotient, minimalize_raw, syzygies
from .polys import poly_add, poly_mul, vec_axpy
from .rings import BaseRing, PolyRing


class BModule:
    """A finitely presented B-module with ``ngens`` generators."""

    def __init__(self, base: BaseRing, ngens: int, relations: Sequence[Mapping] = (),
                 labels: Sequence | None = None):
        self.base = base
        self.ngens = int(ngens)
        if base.is_field and any(relations):
            raise ValueError("field-base modules are stored free; use quotient()")
        self.relations = tuple(dict(r) for r in relations if r)
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def free(cls, base: BaseRing, r: int, labels=None) -> "BModule":
        return cls(base, r, (), labels)

    @cached_property
    def ring(self) -> PolyRing:
        return PolyRing(self.base.field, 0, len(self.base.variables))

    @property
    def is_field(self) -> bool:
        return self.base.is_field

    @cached_property
    def gb(self) -> GroebnerBasis:
        return GroebnerBasis(self.ring, [0] * self.ngens, self.relations)

    def is_zero(self) -> bool:
        if self.ngens == 0:
            return True
        if self.is_field:
            return False
        one = self.ring.one
        return all(self.gb.contains({(k, one): 1}) for k in range(self.ngens))

    def is_free_presented(self) -> bool:
        return not self.relations

    @property
    def dim(self) -> int:
        """Vector-space dimension (field base only)."""
        if not self.is_field:
            raise ValueError("dimension is only defined over a field base")
        return self.ngens

    def rank(self) -> int:
        """Generic rank: number of generators minus rank of the relations over Frac(B)."""
        if self.is_field:
            return self.ngens
        return self.ngens - _generic_rank(self.relations, self.ngens, self.ring)

    def contains(self, v: Mapping) -> bool:
        """Whether a vector over the generators is zero in the module."""
        if not v:
            return True
        if self.is_field:
            return False
        return self.gb.contains(v)

    def __repr__(self):
        if self.is_field:
            return f"BModule({self.base!r}, dim={self.ngens})"
        return f"BModule({self.base!r}, gens={self.ngens}, rels={len(self.relations)})"


def _generic_rank(vectors: Sequence[Mapping], ncols: int, ring: PolyRing) -> int:
    """Rank over the fraction field, via a random specialization of y (exact below a bound)."""
    import random

    if not vectors:
        return 0
    field = ring.field
    rng = random.Random(12345)
    best = 0
    for _ in range(3):
        pt = [field.random(rng, nonzero=True, height=1000) for _ in range(ring.ny)]
        rows = []
        for v in vectors:
            row = [field.zero] * ncols
            for (q, m), c in v.items():
                val = c
                for e, a in zip(m, pt):
                    val = val * a ** e
                row[q] = field(row[q] + val)
            rows.append(row)
        best = max(best, la.rank(la.asarray(rows, field, ncols), field))
    return best


def _det(rows: list, p: int, one: tuple) -> dict:
    """Determinant of a square matrix of polynomials (Laplace along the first row, memoized)."""
    k = len(rows)
    memo: dict = {}

    def rec(r: int, cols: tuple) -> dict:
        if r == k:
            return {one: 1}
        if cols in memo:
            return memo[cols]
        out: dict = {}
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            sub = rec(r + 1, cols[:pos] + cols[pos + 1:])
            if sub:
                out = poly_add(out, poly_mul(entry, sub, p), p, -1 if pos % 2 else 1)
        memo[cols] = out
        return out

    return rec(0, tuple(range(k)))


def fitting_invariant(M: BModule, max_j: int | None = None) -> tuple:
    """Reduced Groebner bases of the Fitting ideals Fitt_0, Fitt_1, ... of M,
    up to the first unit ideal.

    Fitting ideals do not depend on the presentation, so two isomorphic
    B-modules give equal tuples.  Over a field base this reduces to the
    dimension.
    """
    if M.is_field:
        return ("dim", M.ngens)
    import itertools

    ring = M.ring
    p = ring.field.p
    g = M.ngens
    one = ring.one
    rows = []
    for rel in M.relations:
        row = [dict() for _ in range(g)]
        for (q, m), c in rel.items():
            row[q][m] = c
        rows.append(row)
    out = []
    for j in range(g + 1 if max_j is None else min(g, max_j) + 1):
        k = g - j
        if k == 0:
            gens = [{one: ring.field.one}]
        elif k > len(rows):
            gens = []
        else:
            gens = []
            for rs in itertools.combinations(range(len(rows)), k):
                for cs in itertools.combinations(range(g), k):
                    det = _det([[rows[a][b] for b in cs] for a in rs], p, one)
                    if det:
                        gens.append(det)
        gb = GroebnerBasis(ring, [0], [{(0, m): c for m, c in f.items()} for f in gens])
        out.append(frozenset(tuple(sorted(v.items())) for v in gb.elements))
        if gb.contains({(0, one): ring.field.one}):
            # every later Fitting ideal is the unit ideal too
            break
    return tuple(out)


class BModuleMap:
    """B-linear map ``source -> target``.

    Field base: ``A`` is a dense ``(source.ngens, target.ngens)`` array.
    Polynomial base: ``rows[i]`` is the image of source generator ``i``.
    """

    def __init__(self, source: BModule, target: BModule, matrix):
        self.source = source
        self.target = target
        field = source.base.field
        if source.is_field:
            A = matrix if isinstance(matrix, np.ndarray) else la.asarray(matrix, field, target.ngens)
            if A.shape != (source.ngens, target.ngens):
                if A.size == 0:
                    A = la.zeros(source.ngens, target.ngens, field)
                else:
                    raise ValueError(f"matrix shape {A.shape} does not match {source.ngens}x{target.ngens}")
            self.A = A
            self.rows = None
        else:
            self.A = None
            self.rows = [dict(r) for r in matrix]
            if len(self.rows) != source.ngens:
                raise ValueError("row count does not match the source")

    @property
    def field(self):
        return self.source.base.field

    def apply(self, v):
        """Image of an element (dense row over a field, sparse vector otherwise)."""
        if self.A is not None:
            v = np.asarray(v).reshape(1, -1)
            return la.matmul(v if self.field.p else v.astype(object), self.A, self.field)[0]
        out: dict = {}
        p = self.field.p
        for (i, m), c in v.items():
            vec_axpy(out, c, self.rows[i], p, shift=m)
        return out

    def is_well_defined(self) -> bool:
        if self.A is not None:
            return True
        return all(self.target.contains(self.apply(r)) for r in self.source.relations)

    def is_zero(self) -> bool:
        if self.A is not None:
            return not np.any(self.A != 0)
        return all(self.target.contains(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, BModuleMap):
            return NotImplemented
        if self.A is not None:
            return self.A.shape == other.A.shape and bool(np.all(self.A == other.A))
        return self.rows == other.rows

    def matrix_rows(self) -> list:
        """Entries as nested lists (field base)."""
        return [[self.A[i, j] for j in range(self.A.shape[1])] for i in range(self.A.shape[0])]

    def __repr__(self):
        if self.A is not None:
            return f"BModuleMap({self.source.ngens}->{self.target.ngens}: {self.matrix_rows()})"
        return f"BModuleMap({self.source.ngens}->{self.target.ngens}, poly)"


# ---------- constructions ----------

def identity_map(M: BModule) -> BModuleMap:
    if M.is_field:
        return BModuleMap(M, M, la.identity(M.ngens, M.base.field))
    one = M.ring.one
    return BModuleMap(M, M, [{(i, one): M.base.field.one} for i in range(M.ngens)])


def zero_map(M: BModule, N: BModule) -> BModuleMap:
    if M.is_field:
        return BModuleMap(M, N, la.zeros(M.ngens, N.ngens, M.base.field))
    return BModuleMap(M, N, [{} for _ in range(M.ngens)])


def then(f: BModuleMap, g: BModuleMap) -> BModuleMap:
    """The composite: first f, then g."""
    if f.A is not None:
        return BModuleMap(f.source, g.target, la.matmul(f.A, g.A, f.field))
    return BModuleMap(f.source, g.target, [g.apply(r) for r in f.rows])


def add_maps(f: BModuleMap, g: BModuleMap, c=1) -> BModuleMap:
    """f + c*g."""
    field = f.field
    if f.A is not None:
        B = g.A * field(c) if c != 1 else g.A
        S = f.A + B
        if field.p:
            S %= field.p
        return BModuleMap(f.source, f.target, S)
    rows = []
    for a, b in zip(f.rows, g.rows):
        out = dict(a)
        vec_axpy(out, field(c), b, field.p)
        rows.append(out)
    return BModuleMap(f.source, f.target, rows)


def scale_map(f: BModuleMap, c) -> BModuleMap:
    return add_maps(zero_map(f.source, f.target), f, c)


def direct_sum(mods: Sequence[BModule], base: BaseRing | None = None) -> BModule:
    if not mods:
        return BModule.free(base, 0)
    base = mods[0].base
    rels = []
    off = 0
    for M in mods:
        for r in M.relations:
            rels.append({(q + off, m): c for (q, m), c in r.items()})
        off += M.ngens
    return BModule(base, off, rels)


def block_map(source: BModule, target: BModule, blocks: dict, src_sizes, tgt_sizes) -> BModuleMap:
    """Assemble a map from blocks ``{(i, j): BModuleMap}`` between direct sums."""
    field = source.base.field
    so = np.concatenate([[0], np.cumsum(src_sizes)]).astype(int)
    to = np.concatenate([[0], np.cumsum(tgt_sizes)]).astype(int)
    if source.is_field:
        A = la.zeros(source.ngens, target.ngens, field)
        for (i, j), f in blocks.items():
            blk = A[so[i]:so[i + 1], to[j]:to[j + 1]] + f.A
            if field.p:
                blk %= field.p
            A[so[i]:so[i + 1], to[j]:to[j + 1]] = blk
        return BModuleMap(source, target, A)
    rows = [dict() for _ in range(source.ngens)]
    for (i, j), f in blocks.items():
        for a, r in enumerate(f.rows):
            shifted = {(q + int(to[j]), m): c for (q, m), c in r.items()}
            vec_axpy(rows[so[i] + a], 1, shifted, field.p)
    return BModuleMap(source, target, rows)


# ---------- kernels, cokernels, homology ----------

def kernel(f: BModuleMap) -> tuple:
    """``(K, incl)`` with incl: K -> source injective and image = ker f."""
    M, N = f.source, f.target
    field = f.field
    if f.A is not None:
        Kb = la.left_kernel(f.A, field)
        K = BModule.free(M.base, Kb.shape[0])
        return K, BModuleMap(K, M, Kb)
    ring = M.ring
    r = M.ngens
    cols = list(f.rows) + list(N.relations)
    syz = syzygies(cols, [0] * N.ngens, [0] * len(cols), ring)
    Z = []
    for s in syz:
        z = {(q, m): c for (q, m), c in s.items() if q < r}
        if z and not M.contains(z):
            Z.append(z)
    return _subquotient(M, Z, M.relations)


def _subquotient(M: BModule, Z: Sequence[Mapping], U: Sequence[Mapping]) -> tuple:
    """The submodule generated by Z in (free over M's gens)/<U>, pruned, with its inclusion."""
    ring = M.ring
    if not Z:
        K = BModule(M.base, 0)
        return K, BModuleMap(K, M, [])
    sub = Subquotient(ring, [0] * M.ngens, Z, [0] * len(Z), U)
    info = minimalize_raw(ring, [0] * len(Z), sub.relations())
    K = BModule(M.base, len(info.degrees), info.relations)
    incl = BModuleMap(K, M, [Z[g] for g in info.keep])
    return K, incl


def cokernel(f: BModuleMap) -> tuple:
    """``(Q, proj)`` with proj: target -> Q surjective with kernel = im f."""
    N = f.target
    field = f.field
    if f.A is not None:
        R, piv = la.rref(f.A, field)
        pivset = set(piv)
        comp = [c for c in range(N.ngens) if c not in pivset]
        Q = BModule.free(N.base, len(comp))
        P = la.zeros(N.ngens, len(comp), field)
        for k, c in enumerate(comp):
            P[c, k] = field.one
        for i, c in enumerate(piv):
            for k, cc in enumerate(comp):
                if R[i, cc]:
                    P[c, k] = field.neg(R[i, cc])
        return Q, BModuleMap(N, Q, P)
    rels = list(N.relations) + [r for r in f.rows if r]
    info = minimalize_raw(N.ring, [0] * N.ngens, rels)
    Q = BModule(N.base, len(info.degrees), info.relations)
    return Q, BModuleMap(N, Q, info.proj)


class Homology:
    """H = ker g / im f with cycles ``Z -> B`` and the projection ``Z -> H``."""

    __slots__ = ("H", "cycles", "proj", "Z")

    def __init__(self, H, Z, cycles, proj):
        self.H = H
        self.Z = Z
        self.cycles = cycles
        self.proj = proj


def homology(f: BModuleMap | None, g: BModuleMap | None, middle: BModule) -> Homology:
    """Homology at ``middle`` of ``A --f--> middle --g--> C`` (either map may be None)."""
    field = middle.base.field
    if g is None:
        Z = middle
        cycles = identity_map(middle)
    else:
        Z, cycles = kernel(g)
    if middle.is_field:
        if f is None or f.source.ngens == 0 or Z.ngens == 0:
            return Homology(Z, Z, cycles, identity_map(Z))
        X = la.solve_left(cycles.A, f.A, field)
        if X is None:
            raise ArithmeticError("image of the incoming map is not inside the cycles")
        H, proj = cokernel(BModuleMap(f.source, Z, X))
        return Homology(H, Z, cycles, proj)
    # polynomial base: H = <Z> / (<U_middle> + im f), presented on the cycle generators
    if Z.ngens == 0:
        return Homology(Z, Z, cycles, identity_map(Z))
    incoming = [] if f is None else [r for r in f.rows if r]
    sub = Subquotient(middle.ring, [0] * middle.ngens, cycles.rows, [0] * Z.ngens,
                      list(middle.relations) + incoming)
    info = minimalize_raw(middle.ring, [0] * Z.ngens, sub.relations())
    H = BModule(middle.base, len(info.degrees), info.relations)
    return Homology(H, Z, cycles, BModuleMap(Z, H, info.proj))


class Lifter:
    """Solve ``x . incl = y`` for elements y of the image of ``incl``."""

    def __init__(self, incl: BModuleMap):
        self.incl = incl
        tgt = incl.target
        if incl.A is None:
            self.sub = Subquotient(tgt.ring, [0] * tgt.ngens, incl.rows, [0] * incl.source.ngens,
                                   tgt.relations)

    def lift(self, y):
        if self.incl.A is not None:
            field = self.incl.field
            Y = np.asarray(y).reshape(1, -1)
            X = la.solve_left(self.incl.A, Y if field.p else Y.astype(object), field)
            return None if X is None else X[0]
        return self.sub.lift(y)

    def lift_map(self, f: BModuleMap) -> BModuleMap:
        """Factor f through incl: returns h with ``then(h, incl) == f``."""
        field = f.field
        if f.A is not None:
            X = la.solve_left(self.incl.A, f.A, field)
            if X is None:
                raise ArithmeticError("map does not factor through the inclusion")
            return BModuleMap(f.source, self.incl.source, X)
        rows = []
        for r in f.rows:
            x = self.sub.lift(r)
            if x is None:
                raise ArithmeticError("map does not factor through the inclusion")
            rows.append(x)
        return BModuleMap(f.source, self.incl.source, rows)


def is_injective(f: BModuleMap) -> bool:
    return kernel(f)[0].is_zero()


def is_surjective(f: BModuleMap) -> bool:
    return cokernel(f)[0].is_zero()


def is_iso(f: BModuleMap) -> bool:
    return is_injective(f) and is_surjective(f)
