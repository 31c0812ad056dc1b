import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from test_modules import CTXS, modules
from twisted_sections import bgg
from twisted_sections import bmodules as bm
from twisted_sections.corpus import torsion_module
from twisted_sections.extended import NEG_INF
from twisted_sections.modules import GradedModule, direct_sum, hilbert_function, truncate
from twisted_sections.regularity import betti_table, castelnuovo_mumford_reg, is_saturated, linear_regularity
from twisted_sections.rings import RingContext
from twisted_sections.sections import part_invariant


@settings(max_examples=25, deadline=None)
@given(modules())
def test_r_complex_is_a_complex(M):
    reg = castelnuovo_mumford_reg(M)
    top = max(M.degrees) if reg is NEG_INF else max(reg, max(M.degrees))
    C = bgg.r_functor(M, min(M.degrees), window_top=top + 2)
    assert C.satisfies_complex_condition()
    # consecutive strand differentials compose to zero
    for a in range(C.d, C.top - 1):
        for s in range(1, M.ctx.n + 1):
            f, g = bgg.strand_map(C, a, s + 1), bgg.strand_map(C, a + 1, s)
            assert bm.then(f, g).is_zero()


@settings(max_examples=25, deadline=None)
@given(modules())
def test_strand_cohomology_is_the_betti_table(M):
    bt = betti_table(M)
    C = bgg.r_functor(M, min(M.degrees))
    for a in range(C.d, C.top):
        for s in range(M.ctx.n + 2):
            assert bgg.strand_cohomology(C, a, s).H.ngens == bt.entries.get((s, a + s), 0)


@settings(max_examples=25, deadline=None)
@given(modules(), st.booleans())
def test_complex_linreg_equals_module_linreg(M, truncated):
    d = min(0, min(M.degrees))
    C = bgg.r_functor(M, d)
    if truncated:
        assert bgg.complex_linear_regularity(C, d) == linear_regularity(M, d)
    else:
        assert bgg.complex_linear_regularity(C) == linear_regularity(M)


@settings(max_examples=25, deadline=None)
@given(modules(primes=(32003,)))
def test_lowest_degree_rule_matches_purely_linear_kernels(M):
    d = 0
    reg = castelnuovo_mumford_reg(M)
    C = bgg.r_functor(M, d, window_top=max(reg, d) + 2)
    lr = bgg.complex_linear_regularity(C, d)
    assume(lr is NEG_INF or lr == d)
    try:
        plk = bgg.is_purely_linear_kernel(C, d)
    except bgg.NotPurelyLinear:
        plk = False
    assert plk == (lr is NEG_INF)


def test_purely_linear_check_raises():
    ctx = CTXS[(0, 1)]
    C = bgg.r_functor(torsion_module(ctx, 1, 0), 0, window_top=2)
    with pytest.raises(bgg.NotPurelyLinear):
        bgg.purely_linear_kernel(C, 0)


@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_saturation_steps_for_free_plus_torsion(t):
    ctx = CTXS[(0, 1)]
    S = GradedModule.free(ctx, [0])
    M = direct_sum(S, torsion_module(ctx, 1, t))
    out = bgg.saturate_complex(bgg.r_functor(M, 0))
    assert out.steps == t + 1
    assert out.linreg == t
    assert out.eta.satisfies_chain_condition()
    D = bgg.m_functor(out.complex)
    assert [hilbert_function(D, p) for p in range(0, t + 4)] == list(range(1, t + 5))


@settings(max_examples=20, deadline=None)
@given(modules())
def test_saturated_complex_has_no_linear_regularity(M):
    d = min(0, min(M.degrees))
    out = bgg.saturate_complex(bgg.r_functor(M, d))
    assert bgg.complex_linear_regularity(out.complex, d) is NEG_INF
    assert out.complex.satisfies_complex_condition()
    assert is_saturated(bgg.m_functor(out.complex), d, "tor")[0]


@settings(max_examples=20, deadline=None)
@given(modules())
def test_m_of_r_recovers_the_truncation(M):
    d = 0
    Md, _ = truncate(M, d)
    back = bgg.m_functor(bgg.r_functor(Md, d))
    reg = castelnuovo_mumford_reg(Md)
    hi = (0 if reg is NEG_INF else max(reg, 0)) + M.ctx.n + 3
    assert [part_invariant(back, p) for p in range(-1, hi)] == [part_invariant(Md, p) for p in range(-1, hi)]


def test_polynomial_base_saturation():
    ctx = RingContext.over("Q", 1, ["y"])
    M = GradedModule.cyclic(ctx, ["x1^2 - y*x0^2"])
    out = bgg.saturate_complex(bgg.r_functor(M, 0))
    assert out.steps == 1
    D0 = out.complex.socles[0]
    assert D0.rank() == 2 and bm.fitting_invariant(D0) == bm.fitting_invariant(bm.BModule.free(ctx.base, 2))


def test_window_contract():
    ctx = CTXS[(0, 2)]
    M = GradedModule.cyclic(ctx, ["x0^2"])
    with pytest.raises(ValueError):
        bgg.r_functor(M, 0, window_top=1)
    with pytest.raises(ValueError):
        bgg.r_functor(GradedModule.free(ctx, [-1]), 0)
    C = bgg.r_functor(M, 0)
    js = C.to_json()
    assert js["d"] == 0 and len(js["socles"]) == C.top - C.d + 1


@settings(max_examples=25, deadline=None)
@given(modules())
def test_r_of_m_reproduces_the_strands(M):
    d = 0
    Md, _ = truncate(M, d)
    for C in (bgg.r_functor(Md, d), bgg.saturate_complex(bgg.r_functor(Md, d)).complex):
        back = bgg.r_functor(bgg.m_functor(C), d, window_top=C.top)
        for a in range(d, C.top):
            for s in range(M.ctx.n + 2):
                assert bgg.strand_cohomology(back, a, s).H.ngens == bgg.strand_cohomology(C, a, s).H.ngens
        assert [back.socles[i].ngens for i in range(d, C.top + 1)] == [C.socles[i].ngens for i in range(d, C.top + 1)]
