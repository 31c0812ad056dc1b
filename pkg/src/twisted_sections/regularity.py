"""Betti tables, regularity, linear regularity and saturation tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .extended import NEG_INF, ext_max, to_json
from .groebner import free_resolution, minimalize
from .modules import (
    GradedModule,
    hilbert_function,
    koszul_ext_tor,
    top_degree,
)


class CriteriaDisagreement(AssertionError):
    """Raised when equivalent saturation criteria give different answers."""


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} (nonzero entries only).

    Over a polynomial base the entries are generic ranks of the B-modules
    Tor_i(B, M)_j from the Koszul route and ``minimal`` is False.
    """

    entries: dict
    max_step: int
    minimal: bool = True
    nonzero: set = field(default_factory=set)

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def ranks(self) -> list:
        return [sum(v for (i, _), v in self.entries.items() if i == s) for s in range(self.max_step + 1)]

    def degrees(self, i: int) -> list:
        out = []
        for (s, j), v in sorted(self.entries.items()):
            if s == i:
                out.extend([j] * v)
        return out

    def regularity(self):
        pos = self.nonzero or {ij for ij, v in self.entries.items() if v}
        return ext_max(j - i for (i, j) in pos)

    def to_json(self) -> dict:
        return {
            "entries": [[i, j, v] for (i, j), v in sorted(self.entries.items())],
            "maxStep": self.max_step,
            "minimal": self.minimal,
        }

    def render(self) -> str:
        """Classical display: rows j - i, columns i."""
        if not self.entries:
            return "(zero module)"
        rows = sorted({j - i for (i, j) in self.entries})
        cols = range(self.max_step + 1)
        lines = ["      " + " ".join(f"{i:>4}" for i in cols)]
        for r in rows:
            cells = []
            for i in cols:
                v = self.entries.get((i, i + r), 0)
                cells.append(f"{v if v else '.':>4}")
            lines.append(f"{r:>4}: " + " ".join(cells))
        return "\n".join(lines)


@dataclass
class RegularityReport:
    reg: object
    linreg: object
    truncated_linreg: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"reg": to_json(self.reg), "linreg": to_json(self.linreg)}
        if self.truncated_linreg is not None:
            d, v = self.truncated_linreg
            out["truncatedLinreg"] = {"d": d, "value": to_json(v)}
        return out


@dataclass
class SaturationInterval:
    delta0: int
    delta1: int
    defect: Optional[int] = None

    def to_json(self) -> dict:
        return {"delta0": self.delta0, "delta1": self.delta1, "defect": self.defect}


def _check_d(d):
    if d is not None and d > 0:
        raise ValueError("truncation degree d > 0 is handled by shifting at the caller")


# ---------- Betti tables and regularity ----------

def betti_table(M: GradedModule) -> BettiTable:
    """Betti table from a minimal free resolution (field base) or the Koszul route."""
    ctx = M.ctx
    if not ctx.base.is_field:
        return betti_table_koszul(M)
    pres, _ = minimalize(M.presentation)
    entries: dict = {}
    for j in pres.target.degrees:
        entries[(0, j)] = entries.get((0, j), 0) + 1
    steps = free_resolution(pres, ctx.n + 2)
    for i, step in enumerate(steps, start=1):
        for j in step.source.degrees:
            entries[(i, j)] = entries.get((i, j), 0) + 1
    max_step = max((i for (i, _) in entries), default=0)
    return BettiTable(entries, max_step, True, set(entries))


def tor_modules(M: GradedModule) -> list:
    return [koszul_ext_tor(M, "tor", i).module for i in range(M.ctx.n + 2)]


def ext_modules(M: GradedModule) -> list:
    return [koszul_ext_tor(M, "ext", j).module for j in range(M.ctx.n + 2)]


def betti_table_koszul(M: GradedModule) -> BettiTable:
    """beta_{i,j} = dim Tor_i(B, M)_j computed from the Koszul complex."""
    ctx = M.ctx
    entries: dict = {}
    nonzero: set = set()
    for i, T in enumerate(tor_modules(M)):
        top = top_degree(T)
        if top is NEG_INF:
            continue
        for j in range(min(T.degrees), top + 1):
            h = hilbert_function(T, j)
            if ctx.base.is_field:
                if h:
                    entries[(i, j)] = h
                    nonzero.add((i, j))
            elif not h.is_zero():
                entries[(i, j)] = h.rank()
                nonzero.add((i, j))
    max_step = max((i for (i, _) in nonzero), default=0)
    return BettiTable(entries, max_step, ctx.base.is_field, nonzero)


def castelnuovo_mumford_reg(M: GradedModule):
    """max_i (top degree of Tor_i(B, M)) - i, or -inf for M = 0."""
    if M.ctx.base.is_field:
        if M.is_zero():
            return NEG_INF
        return betti_table(M).regularity()
    return reg_via_koszul(M)


def reg_via_koszul(M: GradedModule):
    return ext_max(top_degree(T) - i for i, T in enumerate(tor_modules(M)) if top_degree(T) is not NEG_INF)


# ---------- linear regularity ----------

def linear_regularity(M: GradedModule, d: int | None = None, route: str = "ext"):
    """max{reg Ext^j(B, M) : j = 0, 1}, optionally only counting degrees >= d.

    ``route="tor"`` uses the top two Tor strands instead:
    Tor_{n+1-j}(B, M)_{p+n+1} = Ext^j(B, M)_p.
    """
    _check_d(d)
    n = M.ctx.n
    if route == "ext":
        return ext_max(
            top_degree(koszul_ext_tor(M, "ext", j).module, at_least=d) for j in (0, 1)
        )
    if route == "tor":
        lo = None if d is None else d + n + 1
        tops = [top_degree(koszul_ext_tor(M, "tor", i).module, at_least=lo) for i in (n + 1, n)]
        return ext_max(t - n - 1 for t in tops if t is not NEG_INF)
    raise ValueError(f"unknown route {route!r}")


def regularity_report(M: GradedModule, d: int | None = None) -> RegularityReport:
    rep = RegularityReport(castelnuovo_mumford_reg(M), linear_regularity(M))
    if d is not None:
        rep.truncated_linreg = (d, linear_regularity(M, d))
    return rep


def saturation_interval(M: GradedModule, d: int) -> SaturationInterval:
    """delta0 = max(reg Hom_{>=d}(B, M) - d + 1, 0), delta1 = max(linreg_d M - d + 1, 0)."""
    _check_d(d)
    top0 = top_degree(koszul_ext_tor(M, "ext", 0).module, at_least=d)
    lr = linear_regularity(M, d)
    delta0 = 0 if top0 is NEG_INF else max(top0 - d + 1, 0)
    delta1 = 0 if lr is NEG_INF else max(lr - d + 1, 0)
    return SaturationInterval(delta0, delta1)


# ---------- saturation predicate ----------

def _sat_extB(M, d):
    return all(top_degree(koszul_ext_tor(M, "ext", j).module, at_least=d) is NEG_INF for j in (0, 1))


def _sat_tor(M, d):
    n = M.ctx.n
    lo = None if d is None else d + n + 1
    return all(top_degree(koszul_ext_tor(M, "tor", i).module, at_least=lo) is NEG_INF for i in (n, n + 1))


def _sat_eta(M, d):
    from .modules import is_iso
    from .transform import hom_from_power

    _, eta = hom_from_power(M, 1, d)
    return is_iso(eta)


def _sat_linreg(M, d):
    from .bgg import complex_linear_regularity, r_functor

    lo = d if d is not None else min(M.degrees, default=0)
    if M.ngens and min(M.degrees) < lo:
        raise ValueError("module must be truncated at d")
    C = r_functor(M, lo)
    return complex_linear_regularity(C, lo if d is not None else None) is NEG_INF


_METHODS = {"extB": _sat_extB, "tor": _sat_tor, "etaIso": _sat_eta, "linreg": _sat_linreg}


def is_saturated(M: GradedModule, d: int | None = None, method: str = "extB") -> tuple:
    """Evaluate a saturation criterion; returns ``(verdict, report)``.

    ``method="all"`` evaluates every criterion and raises
    :class:`CriteriaDisagreement` unless they agree.
    """
    _check_d(d)
    if method == "all":
        report = {name: fn(M, d) for name, fn in _METHODS.items()}
        if len(set(report.values())) != 1:
            raise CriteriaDisagreement(f"saturation criteria disagree: {report}")
        return next(iter(report.values())), report
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    v = _METHODS[method](M, d)
    return v, {method: v}


def projective_dimension(M: GradedModule) -> int:
    """Derived from the Betti table (field base)."""
    return betti_table(M).max_step


def betti_bass_check(M: GradedModule) -> tuple:
    """Check beta_{i,j} = dim Ext^{n+1-i}(B, M)_{j-n-1}; returns (ok, paired table)."""
    n = M.ctx.n
    beta = betti_table(M)
    exts = ext_modules(M)
    bass: dict = {}
    for jdx, E in enumerate(exts):
        top = top_degree(E)
        if top is NEG_INF:
            continue
        for p in range(min(E.degrees), top + 1):
            h = hilbert_function(E, p)
            if h:
                bass[(n + 1 - jdx, p + n + 1)] = h
    keys = set(beta.entries) | set(bass)
    table = {k: (beta.entries.get(k, 0), bass.get(k, 0)) for k in sorted(keys)}
    ok = all(a == b for a, b in table.values())
    return ok, table
