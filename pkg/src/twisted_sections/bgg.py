"""Linear complexes over the exterior algebra, stored by socles and mu-maps.

A linear complex C with lowest degree d and window top j keeps, for each
i in [d, j], the socle B-module P_i (so C^i = omega_E (x) P_i) and, for
i < j, the n+1 maps mu^i(x_k): P_i -> P_{i+1}.  Everything else is derived:
the internal-degree a+s part of C^a is (wedge^s W) (x) P_a, and the
differential there sends w (x) p to sum_l (e_l -| w) (x) mu^a(x_l) p.

Conventions: wedge^s W has the lexicographically ordered basis of
s-subsets of {0..n}; contraction by e_l carries the sign (-1)^(position of
l); the orientation wedge^{n+1} W = B sends w_0 ^ ... ^ w_n to 1, so the
basis vector of wedge^n W omitting j corresponds to (-1)^j e_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import bmodules as bm
from . import linalg as la
from .bmodules import BModule, BModuleMap, Lifter
from .extended import NEG_INF, ext_max
from .groebner import minimalize_raw
from .modules import GradedModule, GradedModuleMap, degree_part, multiplication_map, part_map
from .rings import RingContext, exterior_subsets


class NotPurelyLinear(ArithmeticError):
    def __init__(self, i: int, kernel_size: int):
        self.i = i
        self.kernel_size = kernel_size
        super().__init__(f"map at degree {i} is not purely linear (kernel with {kernel_size} generators)")


class InternalConsistencyError(RuntimeError):
    pass


class ExteriorContext:
    """Bases of wedge^s W and the contraction/orientation rules."""

    def __init__(self, ctx: RingContext):
        self.ctx = ctx
        self.n = ctx.n
        self.subsets = [exterior_subsets(ctx.n, s) for s in range(ctx.n + 2)]
        self.index = [{J: i for i, J in enumerate(sub)} for sub in self.subsets]

    def rank(self, s: int) -> int:
        return len(self.subsets[s]) if 0 <= s <= self.n + 1 else 0

    def contract(self, l: int, J: tuple):
        """e_l -| w_J as (sign, J minus l), or None when l is not in J."""
        if l not in J:
            return None
        pos = J.index(l)
        return (-1 if pos % 2 else 1), J[:pos] + J[pos + 1:]

    def hat_index(self, j: int) -> int:
        """Index in wedge^n W of the basis vector omitting j."""
        J = tuple(k for k in range(self.n + 1) if k != j)
        return self.index[self.n][J]

    def orientation_sign(self, j: int) -> int:
        return -1 if j % 2 else 1


class LinearComplex:
    def __init__(self, ctx: RingContext, d: int, top: int, socles: dict, maps: dict,
                 reg_bound=None, check: bool = True):
        self.ctx = ctx
        self.ext = ExteriorContext(ctx)
        self.d = d
        self.top = top
        self.socles = dict(socles)
        self.maps = {i: list(v) for i, v in maps.items()}
        self.reg_bound = reg_bound if reg_bound is not None else top - 1
        if check:
            missing = [i for i in range(d, top + 1) if i not in self.socles]
            if missing:
                raise ValueError(f"socles missing in degrees {missing}")
            for i in range(d, top):
                if len(self.maps.get(i, [])) != ctx.n + 1:
                    raise ValueError(f"need {ctx.n + 1} maps at degree {i}")
            if not self.satisfies_complex_condition():
                raise ValueError("mu-maps do not commute: not a complex")

    @property
    def base(self):
        return self.ctx.base

    def socle_sizes(self) -> list:
        return [self.socles[i].ngens for i in range(self.d, self.top + 1)]

    def satisfies_complex_condition(self) -> bool:
        n1 = self.ctx.n + 1
        for i in range(self.d, self.top - 1):
            a, b = self.maps[i], self.maps[i + 1]
            for j in range(n1):
                for k in range(j + 1, n1):
                    lhs = bm.then(a[k], b[j])
                    rhs = bm.then(a[j], b[k])
                    if not bm.add_maps(lhs, rhs, -1).is_zero():
                        return False
        return True

    def to_json(self) -> dict:
        from .io import bmodule_to_json, bmap_to_json

        return {
            "d": self.d,
            "windowTop": self.top,
            "socles": [bmodule_to_json(self.socles[i]) for i in range(self.d, self.top + 1)],
            "maps": [[bmap_to_json(f) for f in self.maps[i]] for i in range(self.d, self.top)],
        }

    def __repr__(self):
        return f"LinearComplex(d={self.d}, top={self.top}, socles={self.socle_sizes()})"


@dataclass
class LinearComplexMap:
    source: LinearComplex
    target: LinearComplex
    components: dict = field(default_factory=dict)

    def satisfies_chain_condition(self) -> bool:
        lo = max(self.source.d, self.target.d)
        hi = min(self.source.top, self.target.top)
        for i in range(lo, hi):
            if i not in self.components or i + 1 not in self.components:
                continue
            for k in range(self.source.ctx.n + 1):
                lhs = bm.then(self.source.maps[i][k], self.components[i + 1])
                rhs = bm.then(self.components[i], self.target.maps[i][k])
                if not bm.add_maps(lhs, rhs, -1).is_zero():
                    return False
        return True

    def is_iso(self) -> bool:
        return all(bm.is_iso(f) for f in self.components.values())


# ---------- the R functor ----------

def r_functor(M: GradedModule, d: int, window_top: int | None = None) -> LinearComplex:
    """R^{>=d}(M) on the window [d, window_top] (auto: max(reg M, d) + 1)."""
    from .regularity import castelnuovo_mumford_reg

    if any(a < d for a in M.degrees):
        raise ValueError(f"module has generators below {d}; truncate first")
    reg = castelnuovo_mumford_reg(M)
    if window_top is None:
        window_top = (d if reg is NEG_INF else max(reg, d)) + 1
    elif reg is not NEG_INF and window_top <= reg:
        raise ValueError(f"window top {window_top} must exceed reg = {reg}")
    socles = {i: degree_part(M, i).part for i in range(d, window_top + 1)}
    maps = {i: [multiplication_map(M, i, k) for k in range(M.ctx.n + 1)] for i in range(d, window_top)}
    C = LinearComplex(M.ctx, d, window_top, socles, maps, reg_bound=reg, check=False)
    C.module = M
    return C


def r_on_map(f: GradedModuleMap, C1: LinearComplex, C2: LinearComplex) -> LinearComplexMap:
    lo, hi = max(C1.d, C2.d), min(C1.top, C2.top)
    return LinearComplexMap(C1, C2, {i: part_map(f, i) for i in range(lo, hi + 1)})


# ---------- strands ----------

def _wedge_sum(P: BModule, copies: int) -> BModule:
    if P.is_field:
        return BModule.free(P.base, P.ngens * copies)
    return bm.direct_sum([P] * copies, P.base)


def strand_map(C: LinearComplex, a: int, s: int) -> BModuleMap:
    """The differential wedge^s W (x) P_a -> wedge^{s-1} W (x) P_{a+1}."""
    ext = C.ext
    P, Q = C.socles[a], C.socles[a + 1]
    src = _wedge_sum(P, ext.rank(s))
    tgt = _wedge_sum(Q, ext.rank(s - 1))
    blocks: dict = {}
    if s >= 1:
        for Ji, J in enumerate(ext.subsets[s]):
            for l in J:
                sign, J2 = ext.contract(l, J)
                f = C.maps[a][l]
                key = (Ji, ext.index[s - 1][J2])
                g = f if sign == 1 else bm.scale_map(f, -1)
                blocks[key] = g if key not in blocks else bm.add_maps(blocks[key], g)
    return bm.block_map(src, tgt, blocks, [P.ngens] * ext.rank(s), [Q.ngens] * ext.rank(s - 1))


def strand_cohomology(C: LinearComplex, a: int, s: int) -> bm.Homology:
    """H^a(C)_{a+s}: homology at wedge^s W (x) P_a."""
    n = C.ctx.n
    if not 0 <= s <= n + 1:
        raise ValueError(f"s = {s} outside 0..{n + 1}")
    if not C.d <= a <= C.top or (a == C.top and s > 0):
        raise ValueError(f"degree {a} outside the window [{C.d}, {C.top - 1}]")
    middle = _wedge_sum(C.socles[a], C.ext.rank(s))
    g = strand_map(C, a, s) if s >= 1 else None
    f = strand_map(C, a - 1, s + 1) if (a - 1 >= C.d and s + 1 <= n + 1) else None
    return bm.homology(f, g, middle)


def strand_is_zero(C: LinearComplex, a: int, s: int) -> bool:
    if a > C.top or a < C.d or (a == C.top and s > 0):
        # outside the window: zero by the window contract
        return True
    return strand_cohomology(C, a, s).H.is_zero()


def strand_table(C: LinearComplex) -> dict:
    """{(a, s): H^a(C)_{a+s}} for all a in the computable window."""
    out = {}
    for a in range(C.d, C.top):
        for s in range(C.ctx.n + 2):
            out[(a, s)] = strand_cohomology(C, a, s).H
    return out


def complex_linear_regularity(C: LinearComplex, d: int | None = None):
    """Linear regularity of a linear complex.

    The Ext^0 strand in degree p is H^p_{p+n+1} and the Ext^1 strand in
    degree p is H^{p+1}_{p+n+1}; linreg is the largest p with either one
    nonzero (only p >= d counted when d is given).
    """
    if d is not None and d != C.d:
        raise ValueError("truncation degree must equal the complex's lowest degree")
    n = C.ctx.n
    lo0 = C.d if d is None else d
    lo1 = C.d - 1 if d is None else d
    hi = C.top - 1
    best = NEG_INF
    for p in range(hi, min(lo0, lo1) - 1, -1):
        if best is not NEG_INF:
            break
        if p >= lo0 and not strand_is_zero(C, p, n + 1):
            best = p
        elif p >= lo1 and p + 1 <= hi and not strand_is_zero(C, p + 1, n):
            best = p
    return best


# ---------- purely linear kernels ----------

def _top_map(P: BModule, Q: BModule, mus: Sequence[BModuleMap], ext: ExteriorContext) -> BModuleMap:
    """p -> (mu(x_l) p)_l, i.e. wedge^{n+1} W (x) P -> wedge^n W (x) Q."""
    n = ext.n
    tgt = _wedge_sum(Q, n + 1)
    blocks = {}
    for l in range(n + 1):
        # e_l -| w_{0..n} = (-1)^l w_hat_l
        f = mus[l] if l % 2 == 0 else bm.scale_map(mus[l], -1)
        blocks[(0, ext.hat_index(l))] = f
    return bm.block_map(P, tgt, blocks, [P.ngens], [Q.ngens] * (n + 1))


def _strand_n(P: BModule, Q: BModule, mus: Sequence[BModuleMap], ext: ExteriorContext) -> BModuleMap:
    n = ext.n
    tmp = LinearComplex(ext.ctx, 0, 1, {0: P, 1: Q}, {0: list(mus)}, check=False)
    return strand_map(tmp, 0, n)


def is_purely_linear(P: BModule, Q: BModule, mus: Sequence[BModuleMap], ext: ExteriorContext) -> tuple:
    K, _ = bm.kernel(_top_map(P, Q, mus, ext))
    return K.is_zero(), K


def _block_component(incl: BModuleMap, block: int, size: int) -> list | np.ndarray:
    if incl.A is not None:
        return incl.A[:, block * size:(block + 1) * size]
    out = []
    lo, hi = block * size, (block + 1) * size
    for r in incl.rows:
        out.append({(q - lo, m): c for (q, m), c in r.items() if lo <= q < hi})
    return out


def plk_from_data(P: BModule, Q: BModule, mus: Sequence[BModuleMap], ext: ExteriorContext, i: int = 0) -> tuple:
    """Purely linear kernel of the map omega (x) P -> omega (x) Q given by mus.

    Returns ``(K, maps, incl)``: the new socle, its n+1 maps into P, and the
    inclusion K -> wedge^n W (x) P.
    """
    ok, Kbad = is_purely_linear(P, Q, mus, ext)
    if not ok:
        raise NotPurelyLinear(i, Kbad.ngens)
    f = _strand_n(P, Q, mus, ext)
    K, incl = bm.kernel(f)
    n = ext.n
    maps = []
    for l in range(n + 1):
        comp = _block_component(incl, ext.hat_index(l), P.ngens)
        if incl.A is not None:
            A = comp.copy()
            if l % 2:
                A = (-A) % P.base.field.p if P.base.field.p else -A
            maps.append(BModuleMap(K, P, A))
        else:
            g = BModuleMap(K, P, comp)
            maps.append(g if l % 2 == 0 else bm.scale_map(g, -1))
    return K, maps, incl


def purely_linear_kernel(C: LinearComplex, i: int) -> tuple:
    """(new socle, n+1 maps into P_i) of the purely linear kernel of the map at i."""
    if not C.d <= i < C.top:
        raise ValueError(f"no map at degree {i} in the window")
    K, maps, _ = plk_from_data(C.socles[i], C.socles[i + 1], C.maps[i], C.ext, i)
    return K, maps


def is_purely_linear_kernel(C: LinearComplex, i: int) -> bool:
    """Whether the map at i is (isomorphic to) the purely linear kernel of the map at i+1."""
    K, maps, incl = plk_from_data(C.socles[i + 1], C.socles[i + 2], C.maps[i + 1], C.ext, i + 1)
    # compare the induced map P_i -> wedge^n W (x) P_{i+1} with the kernel inclusion
    ext = C.ext
    Pi, Pn = C.socles[i], C.socles[i + 1]
    g = _top_map(Pi, Pn, C.maps[i], ext)
    lifter = Lifter(incl)
    try:
        phi = lifter.lift_map(g)
    except ArithmeticError:
        return False
    return bm.is_iso(phi)


# ---------- the M functor ----------

class MFunctorResult:
    """M(C) with the bookkeeping needed for unit/counit maps."""

    def __init__(self, module, offsets, info, C):
        self.module = module
        self.offsets = offsets
        self.info = info
        self.C = C

    def socle_element(self, i: int, g: int) -> dict:
        """Image in M(C) of generator g of the socle P_i."""
        return self.info.proj[self.offsets[i] + g]


def m_functor_data(C: LinearComplex) -> MFunctorResult:
    ctx = C.ctx
    ring = ctx.ring
    field = ctx.field
    n1 = ctx.n + 1
    r = C.top - 1
    nx = n1
    offsets = {}
    degs = []
    for i in range(C.d, r + 1):
        offsets[i] = len(degs)
        degs.extend([i] * C.socles[i].ngens)
    zero_x = (0,) * nx
    rels = []

    def pad(ym):
        return zero_x + tuple(ym)

    # socle relations
    for i in range(C.d, r + 1):
        for rho in C.socles[i].relations:
            rels.append({(offsets[i] + q, pad(m)): c for (q, m), c in rho.items()})
    # descent relations
    for i in range(C.d, r):
        P, Q = C.socles[i], C.socles[i + 1]
        for k in range(n1):
            f = C.maps[i][k]
            xk = ctx.x_var(k)
            for g in range(P.ngens):
                v = {(offsets[i] + g, xk): field.one}
                if f.A is not None:
                    for h in range(Q.ngens):
                        c = f.A[g, h]
                        if c:
                            v[(offsets[i + 1] + h, ring.one)] = field.neg(field(c))
                else:
                    for (h, m), c in f.rows[g].items():
                        t = (offsets[i + 1] + h, pad(m))
                        v[t] = field(v.get(t, 0) - c)
                        if not v[t]:
                            del v[t]
                rels.append(v)
    # top relations: S (x) ker(W (x) P_r -> P_{r+1})
    P, Q = C.socles[r], C.socles[r + 1]
    src = _wedge_sum(P, n1)
    blocks = {(k, 0): C.maps[r][k] for k in range(n1)}
    big = bm.block_map(src, Q, blocks, [P.ngens] * n1, [Q.ngens])
    _, incl = bm.kernel(big)
    size = P.ngens
    if incl.A is not None:
        for row in incl.A:
            v = {}
            for k in range(n1):
                xk = ctx.x_var(k)
                for g in range(size):
                    c = row[k * size + g]
                    if c:
                        v[(offsets[r] + g, xk)] = field(c)
            if v:
                rels.append(v)
    else:
        for row in incl.rows:
            v = {}
            for (q, m), c in row.items():
                k, g = divmod(q, size)
                t = (offsets[r] + g, tuple(a + b for a, b in zip(ctx.x_var(k), pad(m))))
                v[t] = c
            if v:
                rels.append(v)
    info = minimalize_raw(ring, degs, rels)
    Mod = GradedModule(ctx, info.degrees, info.relations, check=False)
    return MFunctorResult(Mod, offsets, info, C)


def m_functor(C: LinearComplex) -> GradedModule:
    return m_functor_data(C).module


def unit_map(C: LinearComplex, data: MFunctorResult, C2: LinearComplex) -> LinearComplexMap:
    """C -> R(M(C)) on the common window, socle generator g of P_i going to its class."""
    comps = {}
    for i in range(max(C.d, C2.d), min(C.top - 1, C2.top) + 1):
        dp = degree_part(data.module, i)
        P = C.socles[i]
        rows = [dp.coords(data.socle_element(i, g)) for g in range(P.ngens)]
        if P.is_field:
            A = la.zeros(P.ngens, dp.part.ngens, P.base.field)
            for g, row in enumerate(rows):
                A[g, :] = row
            comps[i] = BModuleMap(P, dp.part, A)
        else:
            comps[i] = BModuleMap(P, dp.part, rows)
    return LinearComplexMap(C, C2, comps)


def extend_window(C: LinearComplex, new_top: int) -> tuple:
    """R(M(C)) on [d, new_top], with the unit map from C (on C's window minus its top)."""
    data = m_functor_data(C)
    C2 = r_functor(data.module, C.d, max(new_top, C.top))
    return C2, unit_map(C, data, C2)


# ---------- purely linear saturation ----------

@dataclass
class SaturationOutput:
    complex: LinearComplex
    eta: LinearComplexMap
    steps: int
    linreg: object


def saturate_complex(C: LinearComplex) -> SaturationOutput:
    """S^{>=d}(C): keep C above r = linreg_d C, rebuild r..d by purely linear kernels."""
    d = C.d
    if d > 0:
        raise ValueError("lowest degree d > 0 is handled by shifting at the caller")
    r = complex_linear_regularity(C, d)
    ident = LinearComplexMap(C, C, {i: bm.identity_map(C.socles[i]) for i in range(d, C.top + 1)})
    if r is NEG_INF:
        return SaturationOutput(C, ident, 0, r)
    unit = None
    if r + 2 > C.top:
        C, unit = extend_window(C, r + 2)
    socles = {i: C.socles[i] for i in range(r + 1, C.top + 1)}
    maps = {i: C.maps[i] for i in range(r + 1, C.top)}
    eta = {i: bm.identity_map(C.socles[i]) for i in range(r + 1, C.top + 1)}
    ext = C.ext
    for i in range(r, d - 1, -1):
        P, Q = socles[i + 1], socles[i + 2]
        try:
            K, mus, incl = plk_from_data(P, Q, maps[i + 1], ext, i + 1)
        except NotPurelyLinear as exc:
            raise InternalConsistencyError(str(exc)) from exc
        socles[i] = K
        maps[i] = mus
        # eta^i: p -> sum_l (-1)^l w_hat_l (x) eta^{i+1}(mu_C(x_l) p), read in kernel coordinates
        Pi = C.socles[i]
        comps = [bm.then(C.maps[i][l], eta[i + 1]) for l in range(ext.n + 1)]
        tgt = _wedge_sum(P, ext.n + 1)
        blocks = {}
        for l in range(ext.n + 1):
            blocks[(0, ext.hat_index(l))] = comps[l] if l % 2 == 0 else bm.scale_map(comps[l], -1)
        q = bm.block_map(Pi, tgt, blocks, [Pi.ngens], [P.ngens] * (ext.n + 1))
        eta[i] = Lifter(incl).lift_map(q)
    S = LinearComplex(C.ctx, d, C.top, socles, maps, reg_bound=C.reg_bound, check=False)
    eta_map = LinearComplexMap(C, S, eta)
    if unit is not None:
        comps = {i: bm.then(unit.components[i], eta[i]) for i in unit.components}
        eta_map = LinearComplexMap(unit.source, S, comps)
    return SaturationOutput(S, eta_map, r - d + 1, r)
