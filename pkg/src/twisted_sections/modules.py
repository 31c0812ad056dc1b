"""Finitely presented graded S-modules and their morphisms.

A :class:`GradedModule` is ``coker(F1 -> F0)``: generator degrees plus a
list of homogeneous relation vectors in F0.  Constructions that produce
submodules (kernels, Hom, truncations, homology) also keep an *embedding*:
the generators of the new module written as vectors of an ambient free
module, which is what later maps (eta, functoriality) are built from.
"""

from __future__ import annotations

from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import linalg as la
from .bmodules import BModule, BModuleMap
from .extended import NEG_INF, ext_max
from .groebner import GroebnerBasis, Subquotient, minimalize_raw, syzygies
from .matrices import GradedFree, GradedMatrix, apply_matrix, check_vector
from .polys import HPoly, vec_axpy, vec_degree, vec_reindex
from .rings import RingContext, exterior_subsets, mono_mul


class GradedModule:
    """coker of homogeneous relations in the free module on ``degrees``."""

    def __init__(self, ctx: RingContext, degrees: Sequence[int], relations: Sequence[Mapping] = (),
                 check: bool = True):
        self.ctx = ctx
        self.gens = GradedFree(degrees)
        rels = [dict(r) for r in relations if r]
        self.rel_degrees = [vec_degree(r, ctx.ring, self.gens.degrees) for r in rels]
        if check:
            for r, d in zip(rels, self.rel_degrees):
                check_vector(ctx, r, self.gens, d)
        self.relations = rels
        self._parts: dict = {}

    # -- constructors --
    @classmethod
    def free(cls, ctx: RingContext, degrees: Sequence[int] = (0,)) -> "GradedModule":
        return cls(ctx, degrees, ())

    @classmethod
    def from_presentation(cls, pres: GradedMatrix) -> "GradedModule":
        return cls(pres.ctx, pres.target.degrees, pres.cols)

    @classmethod
    def cyclic(cls, ctx: RingContext, ideal: Sequence, degree: int = 0) -> "GradedModule":
        """S/I twisted so that its generator sits in ``degree``; I given by HPolys or strings."""
        from .parser import parse_poly

        rels = []
        for f in ideal:
            if isinstance(f, str):
                f = parse_poly(f, ctx)
            rels.append({(0, m): c for m, c in f.terms.items()})
        return cls(ctx, [degree], rels)

    @classmethod
    def zero(cls, ctx: RingContext) -> "GradedModule":
        return cls(ctx, [], ())

    # -- basic data --
    @property
    def degrees(self) -> tuple:
        return self.gens.degrees

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @property
    def presentation(self) -> GradedMatrix:
        return GradedMatrix(self.ctx, GradedFree(self.rel_degrees), self.gens, self.relations, check=False)

    @cached_property
    def gb(self) -> GroebnerBasis:
        return GroebnerBasis(self.ctx.ring, self.degrees, self.relations)

    def contains(self, v: Mapping) -> bool:
        """Whether the vector is zero in the module."""
        return not v or self.gb.contains(v)

    def reduce(self, v: Mapping) -> dict:
        return self.gb.normal_form(v)

    def is_zero(self) -> bool:
        one = self.ctx.ring.one
        return all(self.gb.contains({(k, one): 1}) for k in range(self.ngens))

    def generator(self, k: int) -> dict:
        return {(k, self.ctx.ring.one): self.ctx.field.one}

    def __repr__(self):
        return f"GradedModule({self.ctx!r}, gens={list(self.degrees)}, rels={len(self.relations)})"


class GradedModuleMap:
    """Degree-0 map given by images of the source generators in the target free module."""

    def __init__(self, source: GradedModule, target: GradedModule, cols: Sequence[Mapping],
                 check: bool = True):
        self.source = source
        self.target = target
        self.cols = [dict(c) for c in cols]
        if len(self.cols) != source.ngens:
            raise ValueError("one image per source generator is required")
        if check:
            ctx = source.ctx
            for c, col in enumerate(self.cols):
                check_vector(ctx, col, target.gens, source.degrees[c])
            if not self.is_well_defined():
                raise ValueError("map does not send relations into relations")

    @property
    def matrix(self) -> GradedMatrix:
        return GradedMatrix(self.source.ctx, self.source.gens, self.target.gens, self.cols, check=False)

    def apply(self, v: Mapping) -> dict:
        p = self.source.ctx.field.p
        out: dict = {}
        for (r, m), c in v.items():
            vec_axpy(out, c, self.cols[r], p, shift=m)
        return out

    def is_well_defined(self) -> bool:
        return all(self.target.contains(self.apply(r)) for r in self.source.relations)

    @classmethod
    def identity(cls, M: GradedModule) -> "GradedModuleMap":
        return cls(M, M, [M.generator(k) for k in range(M.ngens)], check=False)

    def then(self, g: "GradedModuleMap") -> "GradedModuleMap":
        """Composite: first self, then g."""
        return GradedModuleMap(self.source, g.target, [g.apply(c) for c in self.cols], check=False)

    def is_zero(self) -> bool:
        return all(self.target.contains(c) for c in self.cols)


# ---------- shift, truncation ----------

def shift(M: GradedModule, t: int) -> GradedModule:
    """M(t): generator degrees decrease by t."""
    return GradedModule(M.ctx, [a - t for a in M.degrees], M.relations, check=False)


def shift_map(f: GradedModuleMap, t: int, source: GradedModule, target: GradedModule) -> GradedModuleMap:
    return GradedModuleMap(source, target, f.cols, check=False)


def _pruned_submodule(ctx: RingContext, ambient_degrees: Sequence[int], Z: Sequence[Mapping],
                      zdeg: Sequence[int], U: Sequence[Mapping]) -> tuple:
    """Module generated by Z inside F/<U>: returns (module, kept generators of Z as vectors)."""
    if not Z:
        return GradedModule.zero(ctx), []
    sub = Subquotient(ctx.ring, ambient_degrees, Z, zdeg, U)
    info = minimalize_raw(ctx.ring, list(zdeg), sub.relations())
    N = GradedModule(ctx, info.degrees, info.relations, check=False)
    return N, [Z[g] for g in info.keep]


def truncate(M: GradedModule, d: int) -> tuple:
    """(M_{>=d}, inclusion into M)."""
    ctx = M.ctx
    if all(a >= d for a in M.degrees):
        return M, GradedModuleMap.identity(M)
    one = ctx.field.one
    Z, zdeg = [], []
    for k, a in enumerate(M.degrees):
        if a >= d:
            Z.append({(k, ctx.ring.one): one})
            zdeg.append(a)
        else:
            for b in ctx.monomial_basis(d - a):
                Z.append({(k, b): one})
                zdeg.append(d)
    N, emb = _pruned_submodule(ctx, M.degrees, Z, zdeg, M.relations)
    N = canonical_zero(N)
    return N, GradedModuleMap(N, M, emb if N.ngens else [], check=False)


def shift_truncate(M: GradedModule, twist: int, d: int | None = None) -> GradedModule:
    N = shift(M, twist)
    return N if d is None else truncate(N, d)[0]


def canonical_zero(M: GradedModule) -> GradedModule:
    if M.ngens and M.is_zero():
        return GradedModule.zero(M.ctx)
    return M


def prune(M: GradedModule) -> tuple:
    """Pruned presentation and the isomorphism (as maps both ways)."""
    info = minimalize_raw(M.ctx.ring, M.degrees, M.relations)
    N = GradedModule(M.ctx, info.degrees, info.relations, check=False)
    one = M.ctx.field.one
    to_old = GradedModuleMap(N, M, [{(g, M.ctx.ring.one): one} for g in info.keep], check=False)
    to_new = GradedModuleMap(M, N, info.proj, check=False)
    return N, to_new, to_old


# ---------- degree parts ----------

class DegreePart:
    """The degree-i part M_i as a B-module with a coordinate map.

    Field base: the basis is the list of standard monomials ``(k, x^b)`` of
    degree i in descending module order.  Polynomial base: generators are
    all ``x^b e_k`` of degree i, pruned; ``proj`` sends each of them to the
    pruned generators.
    """

    def __init__(self, M: GradedModule, i: int):
        self.M = M
        self.i = i
        ctx = M.ctx
        self.base = ctx.base
        self.monos = []  # (k, b) in the order used
        for k, a in enumerate(M.degrees):
            for b in ctx.monomial_basis(i - a):
                self.monos.append((k, b))
        if ctx.base.is_field:
            gb = M.gb
            self.basis = [kb for kb in self.monos if gb.is_standard(*kb)]
            self.index = {kb: j for j, kb in enumerate(self.basis)}
            self.part = BModule.free(ctx.base, len(self.basis), labels=self.basis)
        else:
            self._init_poly()

    def _init_poly(self):
        M, ctx, i = self.M, self.M.ctx, self.i
        nx = ctx.n + 1
        gidx = {kb: j for j, kb in enumerate(self.monos)}
        self.gidx = gidx
        brels = []
        for u, du in zip(M.relations, M.rel_degrees):
            if du > i:
                continue
            for c in ctx.monomial_basis(i - du):
                vec: dict = {}
                for (k, m), coef in u.items():
                    mm = mono_mul(m, c)
                    xb = mm[:nx] + (0,) * (len(mm) - nx)
                    yb = mm[nx:]
                    vec[(gidx[(k, xb)], yb)] = coef
                brels.append(vec)
        ring_b = BModule(ctx.base, 0).ring
        info = minimalize_raw(ring_b, [0] * len(self.monos), brels)
        self.info = info
        self.part = BModule(ctx.base, len(info.degrees), info.relations,
                            labels=[self.monos[g] for g in info.keep])

    def coords(self, v: Mapping):
        """Coordinates of a degree-i element (dense over a field, sparse otherwise)."""
        ctx = self.M.ctx
        field = ctx.field
        if ctx.base.is_field:
            out = la.zeros(1, len(self.basis), field)[0]
            for (k, m), c in self.M.reduce(v).items():
                out[self.index[(k, m)]] = c
            return out
        nx = ctx.n + 1
        vec: dict = {}
        for (k, m), c in v.items():
            xb = m[:nx] + (0,) * (len(m) - nx)
            g = self.gidx[(k, xb)]
            vec_axpy(vec, c, self.info.proj[g], field.p, shift=m[nx:])
        return vec

    def element(self, j: int) -> dict:
        """The module element represented by generator j of the part."""
        ctx = self.M.ctx
        one = ctx.field.one
        if ctx.base.is_field:
            k, b = self.basis[j]
        else:
            k, b = self.monos[self.info.keep[j]]
        return {(k, b): one}


def degree_part(M: GradedModule, i: int) -> DegreePart:
    dp = M._parts.get(i)
    if dp is None:
        dp = DegreePart(M, i)
        M._parts[i] = dp
    return dp


def degree_submodule(M: GradedModule, i: int) -> tuple:
    """<M_i> <= M with its presentation, and the B-module M_i."""
    ctx = M.ctx
    dp = degree_part(M, i)
    Z = [dp.element(j) for j in range(dp.part.ngens)]
    N, emb = _pruned_submodule(ctx, M.degrees, Z, [i] * len(Z), M.relations)
    N = canonical_zero(N)
    return (N, GradedModuleMap(N, M, emb if N.ngens else [], check=False)), dp.part


def part_is_zero(M: GradedModule, p: int) -> bool:
    ctx = M.ctx
    if ctx.base.is_field:
        return hilbert_function(M, p) == 0
    one = ctx.field.one
    for k, a in enumerate(M.degrees):
        for b in ctx.monomial_basis(p - a):
            if not M.gb.contains({(k, b): one}):
                return False
    return True


def hilbert_function(M: GradedModule, p: int):
    """dim M_p over a field base; the B-module M_p otherwise."""
    ctx = M.ctx
    if not ctx.base.is_field:
        return degree_part(M, p).part
    gb = M.gb
    count = 0
    for k, a in enumerate(M.degrees):
        for b in ctx.monomial_basis(p - a):
            if gb.is_standard(k, b):
                count += 1
    return count


def hilbert_series(M: GradedModule, lo: int, hi: int) -> list:
    return [hilbert_function(M, p) for p in range(lo, hi + 1)]


def multiplication_map(M: GradedModule, i: int, j: int) -> BModuleMap:
    """mu^i(x_j): M_i -> M_{i+1} on the chosen bases (row convention)."""
    ctx = M.ctx
    if not 0 <= j <= ctx.n:
        raise ValueError(f"variable index {j} out of range 0..{ctx.n}")
    src, tgt = degree_part(M, i), degree_part(M, i + 1)
    xj = ctx.x_var(j)
    if ctx.base.is_field:
        A = la.zeros(src.part.ngens, tgt.part.ngens, ctx.field)
        for r, (k, b) in enumerate(src.basis):
            A[r, :] = tgt.coords({(k, mono_mul(b, xj)): ctx.field.one})
        return BModuleMap(src.part, tgt.part, A)
    rows = []
    for g in src.info.keep:
        k, b = src.monos[g]
        rows.append(tgt.coords({(k, mono_mul(b, xj)): ctx.field.one}))
    return BModuleMap(src.part, tgt.part, rows)


def part_map(f: GradedModuleMap, i: int) -> BModuleMap:
    """f restricted to degree i, on the degree-part bases."""
    src, tgt = degree_part(f.source, i), degree_part(f.target, i)
    ctx = f.source.ctx
    if ctx.base.is_field:
        A = la.zeros(src.part.ngens, tgt.part.ngens, ctx.field)
        for r in range(src.part.ngens):
            A[r, :] = tgt.coords(f.apply(src.element(r)))
        return BModuleMap(src.part, tgt.part, A)
    rows = [tgt.coords(f.apply(src.element(r))) for r in range(src.part.ngens)]
    return BModuleMap(src.part, tgt.part, rows)


# ---------- kernels, cokernels, homology ----------

class Submodule:
    """A module N given with an embedding into an ambient module A (N -> A injective)."""

    __slots__ = ("module", "embedding")

    def __init__(self, module: GradedModule, embedding: GradedModuleMap):
        self.module = module
        self.embedding = embedding


def kernel_vectors(cols: Sequence[Mapping], coldeg: Sequence[int], target: GradedModule) -> list:
    """Vectors v (over the columns) with sum v_c col_c zero in target."""
    r = len(cols)
    if not r:
        return []
    allcols = list(cols) + list(target.relations)
    degs = list(coldeg) + list(target.rel_degrees)
    out = []
    for s in syzygies(allcols, target.degrees, degs, target.ctx.ring):
        z = {(q, m): c for (q, m), c in s.items() if q < r}
        if z:
            out.append(z)
    return out


def kernel(f: GradedModuleMap) -> Submodule:
    M = f.source
    Z = kernel_vectors(f.cols, M.degrees, f.target)
    Z = [z for z in Z if not M.contains(z)]
    zdeg = [vec_degree(z, M.ctx.ring, M.degrees) for z in Z]
    N, emb = _pruned_submodule(M.ctx, M.degrees, Z, zdeg, M.relations)
    N = canonical_zero(N)
    return Submodule(N, GradedModuleMap(N, M, emb if N.ngens else [], check=False))


def cokernel(f: GradedModuleMap) -> tuple:
    """(coker f, projection target -> coker)."""
    N = f.target
    Q = GradedModule(N.ctx, N.degrees, list(N.relations) + [c for c in f.cols if c], check=False)
    return Q, GradedModuleMap(N, Q, [N.generator(k) for k in range(N.ngens)], check=False)


def kernel_cokernel(f: GradedModuleMap) -> tuple:
    return kernel(f), cokernel(f)[0]


def is_injective(f: GradedModuleMap) -> bool:
    return kernel(f).module.is_zero()


def is_surjective(f: GradedModuleMap) -> bool:
    return cokernel(f)[0].is_zero()


def is_iso(f: GradedModuleMap) -> bool:
    return is_surjective(f) and is_injective(f)


class FreeLayer:
    """A term of a complex of f.p. modules: generator degrees and relations."""

    def __init__(self, degrees: Sequence[int], relations: Sequence[Mapping]):
        self.degrees = list(degrees)
        self.relations = [r for r in relations if r]


def complex_homology(ctx: RingContext, layer: GradedModule, incoming: Sequence[Mapping] | None,
                     outgoing: Sequence[Mapping] | None, out_target: GradedModule | None) -> Submodule:
    """Homology at ``layer`` of a complex of f.p. modules given by image columns.

    ``outgoing[c]`` is the image of generator c of ``layer`` in ``out_target``'s
    free module; ``incoming`` lists images in ``layer``'s free module.
    """
    one = ctx.field.one
    if outgoing is not None and out_target is not None:
        Z = kernel_vectors(outgoing, layer.degrees, out_target)
    else:
        Z = [{(k, ctx.ring.one): one} for k in range(layer.ngens)]
    U = list(layer.relations) + [c for c in (incoming or []) if c]
    if U and Z:
        gbU = GroebnerBasis(ctx.ring, layer.degrees, U)
        Z = [z for z in Z if not gbU.contains(z)]
    zdeg = [vec_degree(z, ctx.ring, layer.degrees) for z in Z]
    N, emb = _pruned_submodule(ctx, layer.degrees, Z, zdeg, U)
    N = canonical_zero(N)
    return Submodule(N, GradedModuleMap(N, layer, emb if N.ngens else [], check=False))


# ---------- direct sums, tensor products ----------

def direct_sum(*mods: GradedModule) -> GradedModule:
    ctx = mods[0].ctx
    degs: list = []
    rels: list = []
    off = 0
    for M in mods:
        degs.extend(M.degrees)
        rels.extend({(q + off, m): c for (q, m), c in r.items()} for r in M.relations)
        off += M.ngens
    return GradedModule(ctx, degs, rels, check=False)


def tensor(M: GradedModule, N: GradedModule) -> GradedModule:
    """M (x)_S N with generators (k, h) at position k*N.ngens + h."""
    ctx = M.ctx
    t = N.ngens
    degs = [a + c for a in M.degrees for c in N.degrees]
    rels = []
    for u in M.relations:
        for h in range(t):
            rels.append({(q * t + h, m): c for (q, m), c in u.items()})
    for k in range(M.ngens):
        for u in N.relations:
            rels.append({(k * t + q, m): c for (q, m), c in u.items()})
    return GradedModule(ctx, degs, rels, check=False)


# ---------- internal Hom ----------

class HomModule:
    """Hom(M, N) as a submodule of Hom(F0, N) = (+)_k N(-a_k).

    Position ``k * N.ngens + h`` of the ambient free module is the
    homomorphism sending e_k to the h-th generator of N; it has degree
    ``c_h - a_k``.  ``embedding[i]`` is generator i of ``module`` in
    these coordinates.
    """

    def __init__(self, M: GradedModule, N: GradedModule, d: int | None = None):
        ctx = M.ctx
        self.M, self.N, self.d = M, N, d
        t = N.ngens
        self.t = t
        self.ambient_degrees = [c - a for a in M.degrees for c in N.degrees]
        R0 = []
        for k in range(M.ngens):
            for u in N.relations:
                R0.append({(k * t + q, m): c for (q, m), c in u.items()})
        self.R0 = R0
        self.ambient = GradedModule(ctx, self.ambient_degrees, R0, check=False)
        one = ctx.field.one
        if M.relations:
            L = len(M.relations)
            deg1 = [c - e for e in M.rel_degrees for c in N.degrees]
            R1 = []
            for li in range(L):
                for u in N.relations:
                    R1.append({(li * t + q, m): c for (q, m), c in u.items()})
            target = GradedModule(ctx, deg1, R1, check=False)
            phi = []
            for k in range(M.ngens):
                comps = [(li, m, c) for li, u in enumerate(M.relations) for (q, m), c in u.items() if q == k]
                for h in range(t):
                    phi.append({(li * t + h, m): c for li, m, c in comps})
            Z = kernel_vectors(phi, self.ambient_degrees, target)
        else:
            Z = [{(g, ctx.ring.one): one} for g in range(len(self.ambient_degrees))]
        if R0 and Z:
            Z = [z for z in Z if not self.ambient.contains(z)]
        zdeg = [vec_degree(z, ctx.ring, self.ambient_degrees) for z in Z]
        H, emb = _pruned_submodule(ctx, self.ambient_degrees, Z, zdeg, R0)
        H = canonical_zero(H)
        if not H.ngens:
            emb = []
        self.full = H
        self.full_embedding = emb
        if d is not None:
            Hd, incl = truncate(H, d)
            self.module = Hd
            self.embedding = [_apply_cols(emb, c, ctx) for c in incl.cols] if Hd.ngens else []
        else:
            self.module = H
            self.embedding = emb
        self._lifter = None

    @property
    def lifter(self) -> Subquotient:
        if self._lifter is None:
            ctx = self.M.ctx
            zdeg = list(self.module.degrees)
            self._lifter = Subquotient(ctx.ring, self.ambient_degrees, self.embedding, zdeg, self.R0)
        return self._lifter

    def lift(self, v: Mapping) -> dict:
        """Coordinates in Hom generators of an ambient vector representing a homomorphism."""
        if not v:
            return {}
        if not self.module.ngens:
            if self.ambient.contains(v):
                return {}
            raise ArithmeticError("vector is not a homomorphism in the truncated range")
        c = self.lifter.lift(v)
        if c is None:
            raise ArithmeticError("vector is not a homomorphism in the truncated range")
        return c

    def as_map(self, i: int) -> list:
        """Generator i as images of M's generators (vectors in N's free module)."""
        t = self.t
        out = [dict() for _ in range(self.M.ngens)]
        for (q, m), c in self.embedding[i].items():
            out[q // t][(q % t, m)] = c
        return out


def _apply_cols(cols: Sequence[Mapping], v: Mapping, ctx: RingContext) -> dict:
    p = ctx.field.p
    out: dict = {}
    for (r, m), c in v.items():
        vec_axpy(out, c, cols[r], p, shift=m)
    return out


def graded_hom(M: GradedModule, N: GradedModule, d: int | None = None) -> GradedModule:
    if d is not None and d > 0:
        raise ValueError("truncation degree d > 0 is handled by shifting at the caller")
    return HomModule(M, N, d).module


def hom_map_second(H1: HomModule, H2: HomModule, f: GradedModuleMap) -> GradedModuleMap:
    """Hom(P, f): Hom(P, N1) -> Hom(P, N2) for f: N1 -> N2, on given Hom presentations."""
    ctx = f.source.ctx
    t1, t2 = H1.t, H2.t
    cols = []
    p = ctx.field.p
    for z in H1.embedding:
        v: dict = {}
        for (q, m), c in z.items():
            k, h = divmod(q, t1)
            img = {(k * t2 + r, mm): a for (r, mm), a in f.cols[h].items()}
            vec_axpy(v, c, img, p, shift=m)
        cols.append(H2.lift(v))
    return GradedModuleMap(H1.module, H2.module, cols, check=False)


# ---------- Koszul complexes ----------

def _koszul_layers(M: GradedModule, which: str):
    ctx = M.ctx
    n1 = ctx.n + 1
    r = M.ngens
    layers = []
    for j in range(n1 + 1):
        subsets = exterior_subsets(ctx.n, j)
        if which == "ext":
            degs = [a - j for _ in subsets for a in M.degrees]
        else:
            degs = [a + j for _ in subsets for a in M.degrees]
        rels = []
        for si in range(len(subsets)):
            for u in M.relations:
                rels.append({(si * r + q, m): c for (q, m), c in u.items()})
        layers.append((subsets, GradedModule(ctx, degs, rels, check=False)))
    return layers


def koszul_complex(M: GradedModule, which: str) -> tuple:
    """Layers and differentials of Hom(K, M) (``ext``) or K (x) M (``tor``).

    Returns ``(layers, maps)`` where ``maps[j]`` lists images of layer-j
    generators in the free module of the next layer (``j+1`` for ext,
    ``j-1`` for tor; ``None`` when that layer does not exist).
    """
    ctx = M.ctx
    n1 = ctx.n + 1
    r = M.ngens
    field = ctx.field
    layers = _koszul_layers(M, which)
    index = [{J: i for i, J in enumerate(sub)} for sub, _ in layers]
    maps = []
    for j in range(n1 + 1):
        subsets = layers[j][0]
        cols = []
        if which == "ext":
            if j == n1:
                maps.append(None)
                continue
            for I in subsets:
                for k in range(r):
                    col: dict = {}
                    for l in range(n1):
                        if l in I:
                            continue
                        J = tuple(sorted(I + (l,)))
                        pos = J.index(l)
                        c = field.one if pos % 2 == 0 else field.neg(field.one)
                        col[(index[j + 1][J] * r + k, ctx.x_var(l))] = c
                    cols.append(col)
        else:
            if j == 0:
                maps.append(None)
                continue
            for J in subsets:
                for k in range(r):
                    col = {}
                    for pos, l in enumerate(J):
                        I = J[:pos] + J[pos + 1:]
                        c = field.one if pos % 2 == 0 else field.neg(field.one)
                        col[(index[j - 1][I] * r + k, ctx.x_var(l))] = c
                    cols.append(col)
        maps.append(cols)
    return [L for _, L in layers], maps


def koszul_ext_tor(M: GradedModule, which: str, index: int) -> Submodule:
    """Ext^index(B, M) or Tor_index(B, M) as a graded module (with embedding)."""
    ctx = M.ctx
    if which not in ("ext", "tor"):
        raise ValueError("which must be 'ext' or 'tor'")
    if not 0 <= index <= ctx.n + 1:
        raise ValueError(f"index {index} outside 0..{ctx.n + 1}")
    layers, maps = koszul_complex(M, which)
    layer = layers[index]
    if which == "ext":
        incoming = maps[index - 1] if index > 0 else None
        outgoing = maps[index]
        out_target = layers[index + 1] if index < ctx.n + 1 else None
    else:
        incoming = maps[index + 1] if index < ctx.n + 1 else None
        outgoing = maps[index]
        out_target = layers[index - 1] if index > 0 else None
    return complex_homology(ctx, layer, incoming, outgoing, out_target)


# ---------- top degrees and quasi-zero modules ----------

def pure_power_bound(M: GradedModule):
    """Degree above which M vanishes, read off pure x-powers among the leading terms.

    Returns None when some generator has no pure power of some x_j in its
    leading terms (then M is not quasi-zero) and -inf when M = 0.
    """
    ctx = M.ctx
    n1 = ctx.n + 1
    one = ctx.ring.one
    lts = M.gb.leading_by_position()
    bound = NEG_INF
    for k, a in enumerate(M.degrees):
        here = lts.get(k, [])
        if one in here:
            continue
        powers = [None] * n1
        for m in here:
            if any(m[n1:]):
                continue
            nz = [j for j in range(n1) if m[j]]
            if len(nz) == 1:
                j = nz[0]
                if powers[j] is None or m[j] < powers[j]:
                    powers[j] = m[j]
        if any(pw is None for pw in powers):
            return None
        bound = ext_max([bound, a + sum(pw - 1 for pw in powers)])
    return bound


def is_quasi_zero_leading(M: GradedModule) -> bool:
    return pure_power_bound(M) is not None


def top_degree(M: GradedModule, at_least: int | None = None):
    """max{p : M_p != 0} (restricted to p >= at_least) for a quasi-zero module; -inf if none."""
    if not M.ngens:
        return NEG_INF
    bound = pure_power_bound(M)
    if bound is None:
        raise ValueError("module is not quasi-zero")
    if bound is NEG_INF:
        return NEG_INF
    lo = min(M.degrees)
    if at_least is not None:
        lo = max(lo, at_least)
    for p in range(bound, lo - 1, -1):
        if not part_is_zero(M, p):
            return p
    return NEG_INF


def is_quasi_zero(M: GradedModule) -> bool:
    """M_p = 0 for p large: checked via the regularity and n+1 further degrees."""
    from .regularity import castelnuovo_mumford_reg

    r = castelnuovo_mumford_reg(M)
    if r is NEG_INF:
        return True
    return all(part_is_zero(M, p) for p in range(r + 1, r + M.ctx.n + 2))
