from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from test_modules import CTXS, modules
from twisted_sections.corpus import torsion_module
from twisted_sections.extended import NEG_INF
from twisted_sections.groebner import GroebnerBasis
from twisted_sections.modules import GradedModule, direct_sum, hilbert_function, is_iso
from twisted_sections.regularity import castelnuovo_mumford_reg, is_saturated, saturation_interval
from twisted_sections.rings import RingContext
from twisted_sections.transform import (
    defect_of_saturation,
    hom_from_power,
    ideal_transform,
    irrelevant_power,
    torsion_submodule,
)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("l", [1, 2, 3])
def test_power_generator_counts_and_sandwich(n, l):
    ctx = RingContext.over("Q", n)
    plain = irrelevant_power(ctx, l)
    frob = irrelevant_power(ctx, l, "frobenius")
    assert len(plain.monomials) == comb(n + l, n)
    assert len(frob.monomials) == n + 1
    # m^((n+1)(l-1)+1) lies in m^[l], which lies in m^l
    G = GroebnerBasis(ctx.ring, [0], [{(0, m): ctx.field.one} for m in frob.monomials])
    assert all(G.contains({(0, m): 1}) for m in ctx.monomial_basis((n + 1) * (l - 1) + 1))
    Gp = GroebnerBasis(ctx.ring, [0], [{(0, m): ctx.field.one} for m in plain.monomials])
    assert all(Gp.contains({(0, m): 1}) for m in frob.monomials)


def test_power_zero_gives_back_the_module():
    ctx = CTXS[(0, 2)]
    M = GradedModule.cyclic(ctx, ["x0*x1"])
    H, eta = hom_from_power(M, 0, 0)
    assert is_iso(eta)


def test_rejections():
    ctx = CTXS[(0, 1)]
    M = GradedModule.free(ctx, [0])
    with pytest.raises(ValueError):
        ideal_transform(M, 1)
    with pytest.raises(ValueError):
        ideal_transform(M, 0, "sideways")
    with pytest.raises(ValueError):
        irrelevant_power(ctx, -1)
    with pytest.raises(ValueError):
        hom_from_power(GradedModule.free(ctx, [-2]), 1, 0)


def test_quasi_zero_module_has_zero_transform():
    ctx = CTXS[(0, 2)]
    res = ideal_transform(torsion_module(ctx, 2, 1), 0)
    assert res.saturated.is_zero()
    assert res.power_used == 3


def test_negative_truncation_degree():
    ctx = CTXS[(0, 1)]
    S = GradedModule.free(ctx, [0])
    res = ideal_transform(S, -2)
    assert res.power_used == 0
    assert [hilbert_function(res.saturated, p) for p in range(-2, 3)] == [0, 0, 1, 2, 3]
    # m and S have the same sections
    m = irrelevant_power(ctx, 1).module
    out = ideal_transform(m, -1).saturated
    assert [hilbert_function(out, p) for p in range(-1, 3)] == [0, 1, 2, 3]


@settings(max_examples=20, deadline=None)
@given(modules(primes=(32003,)))
def test_strategies_agree(M):
    base = ideal_transform(M, 0)
    reg_hi = max(M.degrees) + 5
    ref = [hilbert_function(base.saturated, p) for p in range(0, reg_hi)]
    for strategy in ("frobenius", "iterated"):
        other = ideal_transform(M, 0, strategy)
        assert [hilbert_function(other.saturated, p) for p in range(0, reg_hi)] == ref
        assert is_saturated(other.saturated, 0)[0]
    # a known defect skips the search and changes nothing
    fast = ideal_transform(M, 0, "frobenius", delta=base.power_used)
    assert [hilbert_function(fast.saturated, p) for p in range(0, reg_hi)] == ref


@settings(max_examples=20, deadline=None)
@given(modules(primes=(32003,)), st.integers(1, 2), st.integers(0, 1))
def test_torsion_submodule_finds_planted_torsion(M, a, b):
    T = torsion_module(M.ctx, a, b)
    N = direct_sum(M, T)
    tN = torsion_submodule(N, 0).module
    tM = torsion_submodule(M, 0).module
    for p in range(0, b + a + 1):
        assert hilbert_function(tN, p) == hilbert_function(tM, p) + hilbert_function(T, p)


@settings(max_examples=20, deadline=None)
@given(modules(primes=(32003,)))
def test_defect_is_minimal(M):
    iv = saturation_interval(M, 0)
    delta = defect_of_saturation(M, 0, iv)
    assert is_saturated(hom_from_power(M, delta, 0)[0], 0)[0]
    if delta > 0:
        assert not is_saturated(hom_from_power(M, delta - 1, 0)[0], 0)[0]


def test_telemetry_fields():
    ctx = CTXS[(0, 1)]
    M = direct_sum(GradedModule.free(ctx, [0]), torsion_module(ctx, 1, 1))
    tel = ideal_transform(M, 0).telemetry()
    assert tel["powerUsed"] == 2 and tel["strategy"] == "power"
    assert tel["interval"]["delta0"] == 2 and tel["interval"]["delta1"] == 2


@settings(max_examples=20, deadline=None)
@given(modules(primes=(32003,)))
def test_hom_from_powers_stabilize_exactly_at_the_defect(M):
    delta = defect_of_saturation(M, 0)
    reg = castelnuovo_mumford_reg(M)
    window = range(0, (0 if reg is NEG_INF else max(reg, 0)) + M.ctx.n + 2)

    def hf(l):
        H = hom_from_power(M, l, 0)[0]
        return [hilbert_function(H, p) for p in window]

    stable = hf(delta)
    assert hf(delta + 1) == stable
    if delta > 0:
        assert hf(delta - 1) != stable
