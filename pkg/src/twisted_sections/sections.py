"""Truncated twisted global sections by two engines, the direct image, and cross-checks."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional

from . import bgg
from .bmodules import BModule, fitting_invariant
from .extended import NEG_INF
from .modules import (
    GradedModule,
    degree_part,
    hilbert_function,
    shift,
    truncate,
)
from .regularity import (
    RegularityReport,
    betti_table,
    castelnuovo_mumford_reg,
    is_saturated,
    linear_regularity,
    regularity_report,
    saturation_interval,
)
from .rings import BaseRing, RingContext
from .transform import hom_from_power, ideal_transform

ENGINES = ("ideal-transform", "bgg")


class EngineDisagreement(AssertionError):
    def __init__(self, report: "CrossVerifyReport"):
        self.report = report
        super().__init__(f"engines disagree: {report.summary()}")


@dataclass
class SectionsResult:
    module: GradedModule
    engine: str
    d: int
    telemetry: dict = field(default_factory=dict)
    before: Optional[RegularityReport] = None
    after: Optional[RegularityReport] = None
    # the engine's own output: a TransformResult or a bgg SaturationOutput
    raw: object = field(default=None, repr=False)

    def to_json(self) -> dict:
        from .io import module_to_json

        out = {"engine": self.engine, "d": self.d, "module": module_to_json(self.module),
               "telemetry": self.telemetry}
        if self.before is not None:
            out["before"] = self.before.to_json()
        if self.after is not None:
            out["after"] = self.after.to_json()
        return out


@dataclass
class PushforwardResult:
    degree_zero: BModule
    source: SectionsResult

    def to_json(self) -> dict:
        from .io import bmodule_to_json

        return {"degreeZero": bmodule_to_json(self.degree_zero), "engine": self.source.engine}


def _sections_nonpositive(M: GradedModule, d: int, engine: str, strategy: str) -> SectionsResult:
    t0 = time.perf_counter()
    if engine == "ideal-transform":
        res = ideal_transform(M, d, strategy)
        out = SectionsResult(res.saturated, engine, d, res.telemetry(), raw=res)
    elif engine == "bgg":
        Md, _ = truncate(M, d)
        C = bgg.r_functor(Md, d)
        sat = bgg.saturate_complex(C)
        D = bgg.m_functor(sat.complex)
        out = SectionsResult(D, engine, d, {"steps": sat.steps, "linreg": None if sat.linreg is NEG_INF
                                              else int(sat.linreg)}, raw=sat)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    out.telemetry["wallTime"] = round(time.perf_counter() - t0, 4)
    return out


def twisted_global_sections(M: GradedModule, d: int = 0, engine: str = "ideal-transform",
                            strategy: str = "power", reports: bool = False):
    """H^0_{>=d} of the sheaf of M as a graded module.

    ``engine="both"`` runs both engines, raises :class:`EngineDisagreement`
    if they differ, and returns ``(result_it, result_bgg, report)``.
    Degrees d > 0 are handled by shifting: D_{>=d}(M) = D_{>=0}(M(d))(-d).
    """
    if engine == "both":
        rep = cross_verify(M, d, strategy=strategy)
        if not rep.ok:
            raise EngineDisagreement(rep)
        return rep.results["ideal-transform"], rep.results["bgg"], rep
    if d > 0:
        inner = twisted_global_sections(shift(M, d), 0, engine, strategy, reports)
        out = SectionsResult(shift(inner.module, -d), engine, d, inner.telemetry, inner.before, inner.after)
        return out
    out = _sections_nonpositive(M, d, engine, strategy)
    if reports:
        out.before = regularity_report(truncate(M, d)[0], d)
        out.after = regularity_report(out.module, d)
    return out


def pushforward(M: GradedModule, engine: str = "ideal-transform") -> PushforwardResult:
    """The degree-0 part of the twisted global sections, as a B-module."""
    res = twisted_global_sections(M, 0, engine)
    return PushforwardResult(degree_part(res.module, 0).part, res)


# ---------- cross verification ----------

def part_invariant(M: GradedModule, p: int):
    """dim M_p over a field; the Fitting ideals of M_p over a polynomial base."""
    h = hilbert_function(M, p)
    return h if isinstance(h, int) else fitting_invariant(h)


@dataclass
class CrossVerifyReport:
    d: int
    window: tuple
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def summary(self) -> str:
        bad = [k for k, v in self.checks.items() if not v]
        if not bad:
            return "all checks passed"
        return "; ".join(f"{k}: {self.details.get(k)}" for k in bad)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "window": list(self.window),
            "ok": self.ok,
            "checks": dict(self.checks),
            "details": {k: str(v) for k, v in self.details.items()},
            "telemetry": {k: r.telemetry for k, r in self.results.items()},
            "warnings": list(self.warnings),
        }


def _betti_signature(M: GradedModule):
    bt = betti_table(M)
    return tuple(sorted(bt.entries.items())), tuple(sorted(bt.nonzero))


def _is_defect(M: GradedModule, l: int, d: int, delta0: int, saturated_at_l: bool) -> bool:
    """l is the defect: Hom(m^l, M) saturated and Hom(m^(l-1), M) not.

    The second half uses the Tor criterion; below delta0 it holds by the
    interval bound and is not recomputed.
    """
    if not saturated_at_l:
        return False
    if l == 0 or l - 1 < delta0:
        return True
    return not is_saturated(hom_from_power(M, l - 1, d)[0], d, method="tor")[0]


def cross_verify(M: GradedModule, d: int = 0, strategy: str = "power") -> CrossVerifyReport:
    """Run both engines and compare them by four checks.

    (a) Hilbert functions (Fitting ideals of the parts over k[y]) agree on
        [d, reg M + n + 2]; (b) both outputs pass every saturation criterion;
    (c) Betti tables agree; (d) the bgg step count equals
        max(linreg_d - d + 1, 0) and the power used is the defect.
    """
    if d > 0:
        raise ValueError("cross verification takes d <= 0; shift the module first")
    Md, _ = truncate(M, d)
    reg = castelnuovo_mumford_reg(Md)
    hi = (d if reg is NEG_INF else max(reg, d)) + M.ctx.n + 2
    rep = CrossVerifyReport(d, (d, hi))
    r_it = _sections_nonpositive(M, d, "ideal-transform", strategy)
    r_bgg = _sections_nonpositive(M, d, "bgg", strategy)
    rep.results = {"ideal-transform": r_it, "bgg": r_bgg}
    A, B = r_it.module, r_bgg.module

    diverge = [p for p in range(d, hi + 1) if part_invariant(A, p) != part_invariant(B, p)]
    rep.checks["hilbert"] = not diverge
    rep.details["hilbert"] = f"divergent degrees {diverge}" if diverge else "equal"

    sat = {}
    for name, X in (("ideal-transform", A), ("bgg", B)):
        try:
            sat[name] = is_saturated(X, d, method="all")[0]
        except AssertionError as exc:
            sat[name] = False
            rep.details[f"saturated:{name}"] = str(exc)
    rep.checks["saturated"] = all(sat.values())
    rep.details["saturated"] = sat

    ba, bb = _betti_signature(A), _betti_signature(B)
    rep.checks["betti"] = ba == bb
    rep.details["betti"] = "equal" if ba == bb else f"{ba} vs {bb}"

    lr = linear_regularity(Md, d)
    expect_steps = 0 if lr is NEG_INF else max(lr - d + 1, 0)
    steps = r_bgg.telemetry["steps"]
    power = r_it.telemetry["powerUsed"]
    interval = saturation_interval(Md, d)
    power_ok = (_is_defect(Md, power, d, interval.delta0, rep.checks["saturated"])
                if strategy == "power" else True)
    rep.checks["counts"] = steps == expect_steps and power_ok
    rep.details["counts"] = {"steps": steps, "expectedSteps": expect_steps, "power": power,
                             "powerIsDefect": power_ok}
    if not M.ctx.base.is_field:
        rep.warnings = specialization_warnings(M, A, d, (d, hi))
    return rep


def specialize(M: GradedModule, values) -> GradedModule:
    """Substitute field values for the base variables y."""
    ctx = M.ctx
    if ctx.base.is_field:
        return M
    field_ = ctx.field
    vals = [field_(v) for v in values]
    if len(vals) != len(ctx.base.variables):
        raise ValueError(f"expected {len(ctx.base.variables)} values")
    target = RingContext(BaseRing(field_), ctx.n)
    nx = ctx.ring.nx
    rels = []
    for rel in M.relations:
        out: dict = {}
        for (k, m), c in rel.items():
            coeff = c
            for v, e in zip(vals, m[nx:]):
                coeff = field_(coeff * v ** e)
            key = (k, m[:nx])
            coeff = field_(out.get(key, field_.zero) + coeff)
            if coeff:
                out[key] = coeff
            else:
                out.pop(key, None)
        if out:
            rels.append(out)
    return GradedModule(target, M.degrees, rels)


def specialization_warnings(M: GradedModule, D: GradedModule, d: int, window: tuple,
                            trials: int = 2, seed: int = 0) -> list:
    """Compare the generic rank of D_p with sections of M at random points y = c.

    Saturation need not commute with specialization, so a mismatch is only
    reported, never treated as a failure.
    """
    rng = random.Random(seed)
    nvars = len(M.ctx.base.variables)
    generic = [degree_part(D, p).part.rank() for p in range(window[0], window[1] + 1)]
    out = []
    for _ in range(trials):
        point = [rng.randint(-50, 50) for _ in range(nvars)]
        Mc = specialize(M, point)
        Dc = _sections_nonpositive(Mc, d, "bgg", "power").module
        dims = [hilbert_function(Dc, p) for p in range(window[0], window[1] + 1)]
        if dims != generic:
            out.append(f"at y = {point}: dims {dims} differ from generic ranks {generic}")
    return out


def sections_oracle_dims(M: GradedModule, d: int, lo: int, hi: int, power: int | None = None) -> list:
    """dim Hom(m^l, M)_p for a large fixed l, read off the ideal-transform side only.

    Used as an independent check of the front door over a field base: for l
    beyond the saturation interval the dimensions stabilize.
    """
    Md, _ = truncate(M, d)
    if power is None:
        power = saturation_interval(Md, d).delta1 + 1
    H, _ = hom_from_power(Md, power, d)
    return [hilbert_function(H, p) for p in range(lo, hi + 1)]
