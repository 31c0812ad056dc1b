"""Powers of the irrelevant ideal, the maps eta^l, and the truncated ideal transform."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .extended import NEG_INF
from .groebner import syzygies
from .modules import (
    GradedModule,
    GradedModuleMap,
    HomModule,
    cokernel,
    hom_map_second,
    kernel,
    koszul_ext_tor,
    tensor,
    top_degree,
    truncate,
)
from .regularity import SaturationInterval, is_saturated, saturation_interval
from .rings import RingContext


def _check_d(d):
    if d > 0:
        raise ValueError("truncation degree d > 0 is handled by shifting at the caller")


class IdealPower:
    """An ideal generated by monomials, presented as a module (generators = the monomials)."""

    def __init__(self, ctx: RingContext, monomials: list, kind: str, power: int):
        self.ctx = ctx
        self.monomials = monomials
        self.kind = kind
        self.power = power
        degs = [ctx.ring.deg(m) for m in monomials]
        cols = [{(0, m): ctx.field.one} for m in monomials]
        rels = syzygies(cols, [0], degs, ctx.ring, minimal=ctx.base.is_field)
        self.module = GradedModule(ctx, degs, rels, check=False)


def irrelevant_power(ctx: RingContext, l: int, kind: str = "plain"):
    """m^l (``plain``), the Frobenius power m^[l] (``frobenius``) or the tensor power (``tensor``).

    ``plain`` and ``frobenius`` return an :class:`IdealPower`; ``tensor``
    returns the :class:`GradedModule` of the l-fold tensor power of m.
    """
    if l < 0:
        raise ValueError("power must be nonnegative")
    if kind == "plain":
        return IdealPower(ctx, ctx.monomial_basis(l), kind, l)
    if kind == "frobenius":
        if l == 0:
            return IdealPower(ctx, [ctx.ring.one], kind, 0)
        mons = []
        for j in range(ctx.n + 1):
            e = [0] * ctx.nvars
            e[j] = l
            mons.append(tuple(e))
        return IdealPower(ctx, mons, kind, l)
    if kind == "tensor":
        if l == 0:
            return GradedModule.free(ctx, [0])
        m = irrelevant_power(ctx, 1).module
        out = m
        for _ in range(l - 1):
            out = tensor(out, m)
        return out
    raise ValueError(f"unknown kind {kind!r}")


def _require_truncated(M: GradedModule, d: int):
    if any(a < d for a in M.degrees):
        raise ValueError(f"module has generators below the truncation degree {d}")


def hom_from_ideal(M: GradedModule, I: IdealPower, d: int | None) -> tuple:
    """(Hom_{>=d}(I, M) as HomModule, eta: M -> Hom_{>=d}(I, M) with g -> (f -> f g))."""
    H = HomModule(I.module, M, d)
    t = M.ngens
    cols = []
    for h in range(t):
        v = {}
        for k, mono in enumerate(I.monomials):
            v[(k * t + h, mono)] = M.ctx.field.one
        cols.append(H.lift(v))
    eta = GradedModuleMap(M, H.module, cols, check=False)
    return H, eta


def hom_from_power(M: GradedModule, l: int, d: int | None, kind: str = "plain") -> tuple:
    """(Hom_{>=d}(m^l, M), eta^l_M)."""
    if d is not None:
        _check_d(d)
        _require_truncated(M, d)
    H, eta = hom_from_ideal(M, irrelevant_power(M.ctx, l, kind), d)
    return H.module, eta


def _defect_search(M: GradedModule, d: int, interval: SaturationInterval) -> tuple:
    """(delta, Hom_{>=d}(m^delta, M), eta) by ascending search over [delta0, delta1].

    Powers below delta0 are skipped: Hom(m^l, M) is never saturated there.
    """
    for l in range(interval.delta0, interval.delta1 + 1):
        H, eta = hom_from_power(M, l, d)
        if is_saturated(H, d)[0]:
            return l, H, eta
    raise ArithmeticError("no saturating power found up to delta1")


def defect_of_saturation(M: GradedModule, d: int, interval: SaturationInterval | None = None) -> int:
    """Smallest l with Hom_{>=d}(m^l, M) saturated."""
    _check_d(d)
    _require_truncated(M, d)
    if interval is None:
        interval = saturation_interval(M, d)
    return _defect_search(M, d, interval)[0]


@dataclass
class TransformResult:
    saturated: GradedModule
    eta: GradedModuleMap
    power_used: int
    strategy: str
    interval: SaturationInterval
    source: GradedModule
    steps: list = field(default_factory=list)
    wall_time: float = 0.0

    def telemetry(self) -> dict:
        return {
            "strategy": self.strategy,
            "powerUsed": self.power_used,
            "interval": self.interval.to_json(),
            "wallTime": round(self.wall_time, 4),
        }


def torsion_submodule(M: GradedModule, d: int, l: int | None = None, kind: str = "frobenius"):
    """The largest quasi-zero submodule of M (within degrees >= d) as ker(eta).

    Any power l >= delta1 works: plain m^l and the Frobenius power m^[l]
    both kill every torsion element of degree >= d, and m^[l] has only
    n+1 generators.
    """
    if l is None:
        l = saturation_interval(M, d).delta1
    _, eta = hom_from_power(M, l, d, kind=kind)
    return kernel(eta)


def ideal_transform(M: GradedModule, d: int = 0, strategy: str = "power",
                    delta: int | None = None) -> TransformResult:
    """D_{m,>=d}(M) with eta, by the chosen strategy.

    A known defect ``delta`` may be passed to the frobenius and iterated
    strategies to skip the plain-power search.
    """
    _check_d(d)
    if strategy not in ("power", "frobenius", "iterated"):
        raise ValueError(f"unknown strategy {strategy!r}")
    t0 = time.perf_counter()
    Md, incl = truncate(M, d)
    interval = saturation_interval(Md, d)
    if delta is None or strategy == "power":
        delta, H, eta_h = _defect_search(Md, d, interval)
    interval.defect = delta
    if strategy == "power":
        D, eta = H, eta_h
        used = delta
    elif strategy == "frobenius":
        used = delta
        while True:
            D, eta = hom_from_power(Md, used, d, kind="frobenius")
            if is_saturated(D, d)[0]:
                break
            used += 1
            if used > (Md.ctx.n + 1) * max(delta, 1):
                raise ArithmeticError("Frobenius power search did not terminate")
    elif strategy == "iterated":
        T = torsion_submodule(Md, d, interval.delta1)
        Q, proj = cokernel(T.embedding)
        eta = proj
        D = Q
        used = 0
        while not is_saturated(D, d)[0]:
            D2, e = hom_from_power(D, 1, d)
            eta = eta.then(e)
            D = D2
            used += 1
            if used > max(delta, 1) + 1:
                raise ArithmeticError("iterated transform did not saturate")
    res = TransformResult(D, eta, used, strategy, interval, Md)
    res.wall_time = time.perf_counter() - t0
    return res


def transform_on_map(f: GradedModuleMap, l: int, d: int, kind: str = "plain") -> tuple:
    """Hom_{>=d}(m^l, f) for f: N1 -> N2, with the two Hom modules."""
    I = irrelevant_power(f.source.ctx, l, kind)
    H1 = HomModule(I.module, f.source, d)
    H2 = HomModule(I.module, f.target, d)
    return hom_map_second(H1, H2, f), H1, H2


def ext_top_degrees(M: GradedModule, d: int | None = None) -> tuple:
    return tuple(top_degree(koszul_ext_tor(M, "ext", j).module, at_least=d) for j in (0, 1))


__all__ = [
    "IdealPower", "irrelevant_power", "hom_from_power", "hom_from_ideal", "defect_of_saturation",
    "ideal_transform", "TransformResult", "torsion_submodule", "transform_on_map", "NEG_INF",
]
