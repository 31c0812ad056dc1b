import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from twisted_sections.corpus import random_module, torsion_module
from twisted_sections.extended import NEG_INF
from twisted_sections.modules import (
    GradedModule,
    GradedModuleMap,
    cokernel,
    degree_part,
    direct_sum,
    graded_hom,
    hilbert_function,
    is_iso,
    is_quasi_zero,
    kernel,
    koszul_ext_tor,
    multiplication_map,
    shift,
    tensor,
    top_degree,
    truncate,
)
from twisted_sections.rings import RingContext
from twisted_sections.transform import hom_from_power

CTXS = {(p, n): RingContext.over(p, n) for p in (0, 32003) for n in (1, 2)}


@st.composite
def modules(draw, primes=(0, 32003)):
    rng = draw(st.randoms(use_true_random=False))
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, 2))
    return random_module(CTXS[(p, n)], rng)


@settings(max_examples=40, deadline=None)
@given(modules())
def test_hilbert_function_matches_degreewise_oracle(M):
    D = oracles.DegreewiseModule(M)
    for q in range(-1, 6):
        assert hilbert_function(M, q) == D.dim(q)


@settings(max_examples=25, deadline=None)
@given(modules(primes=(32003,)), st.integers(1, 2))
def test_hom_from_power_matches_oracle(M, l):
    H, eta = hom_from_power(M, l, 0)
    D = oracles.DegreewiseModule(M)
    for p in range(0, 4):
        assert hilbert_function(H, p) == oracles.hom_power_dim(M, l, p, D)
    assert eta.is_well_defined()


@settings(max_examples=25, deadline=None)
@given(modules(primes=(32003,)))
def test_multiplication_maps_commute(M):
    n = M.ctx.n
    for i in range(0, 3):
        mu = [multiplication_map(M, i, j) for j in range(n + 1)]
        nu = [multiplication_map(M, i + 1, j) for j in range(n + 1)]
        for j in range(n + 1):
            for k in range(j + 1, n + 1):
                lhs = (mu[j].A @ nu[k].A) % 32003
                rhs = (mu[k].A @ nu[j].A) % 32003
                assert (lhs == rhs).all()


@settings(max_examples=25, deadline=None)
@given(modules(), st.integers(-1, 2))
def test_truncate_and_shift(M, d):
    Md, incl = truncate(M, d)
    for q in range(-1, 5):
        expect = hilbert_function(M, q) if q >= d else 0
        assert hilbert_function(Md, q) == expect
        assert hilbert_function(shift(M, 2), q - 2) == hilbert_function(M, q)
    assert incl.is_well_defined()


@settings(max_examples=20, deadline=None)
@given(modules(primes=(32003,)))
def test_kernel_cokernel_exactness(M):
    # the map S^r -> M onto the generators: 0 -> K -> F -> M -> 0
    F = GradedModule.free(M.ctx, M.degrees)
    f = GradedModuleMap(F, M, [M.generator(k) for k in range(M.ngens)])
    K = kernel(f).module
    C, _ = cokernel(f)
    assert C.is_zero()
    for q in range(0, 5):
        assert hilbert_function(F, q) - hilbert_function(K, q) == hilbert_function(M, q)


def test_tensor_with_free_is_a_shift():
    ctx = CTXS[(0, 2)]
    M = GradedModule.cyclic(ctx, ["x0^2", "x1*x2"])
    T = tensor(M, GradedModule.free(ctx, [1]))
    for q in range(0, 5):
        assert hilbert_function(T, q) == hilbert_function(M, q - 1)


def test_direct_sum_adds_hilbert_functions():
    ctx = CTXS[(0, 1)]
    A = torsion_module(ctx, 2, 0)
    B = GradedModule.free(ctx, [1])
    for q in range(0, 4):
        assert hilbert_function(direct_sum(A, B), q) == hilbert_function(A, q) + hilbert_function(B, q)


def test_graded_hom_from_free():
    ctx = CTXS[(0, 1)]
    M = GradedModule.cyclic(ctx, ["x0*x1"])
    H = graded_hom(GradedModule.free(ctx, [1]), M)
    for q in range(-1, 4):
        assert hilbert_function(H, q) == hilbert_function(M, q + 1)


def test_quasi_zero_and_top_degree():
    ctx = CTXS[(32003, 2)]
    T = torsion_module(ctx, 3, 1)
    assert is_quasi_zero(T)
    assert top_degree(T) == 3
    assert top_degree(GradedModule.zero(ctx)) is NEG_INF
    assert not is_quasi_zero(GradedModule.free(ctx, [0]))
    with pytest.raises(ValueError):
        top_degree(GradedModule.free(ctx, [0]))


def test_degree_part_coordinates():
    ctx = CTXS[(0, 1)]
    M = GradedModule.cyclic(ctx, ["x0^2 - x1^2"])
    dp = degree_part(M, 2)
    assert dp.part.ngens == 2
    v = {(0, (0, 2)): ctx.field.one}
    # x1^2 = x0^2 in M, so both monomials have the same coordinates
    assert list(dp.coords(v)) == list(dp.coords({(0, (2, 0)): ctx.field.one}))


def test_identity_map_is_iso():
    ctx = CTXS[(0, 2)]
    M = GradedModule.cyclic(ctx, ["x0*x1"])
    assert is_iso(GradedModuleMap.identity(M))


@settings(max_examples=25, deadline=None)
@given(modules(primes=(32003,)), st.data())
def test_multiplication_by_a_variable_is_a_map(M, data):
    ctx = M.ctx
    j = data.draw(st.integers(0, ctx.n))
    xj = tuple(int(i == j) for i in range(ctx.n + 1))
    f = GradedModuleMap(shift(M, -1), M, [{(k, xj): ctx.field.one} for k in range(M.ngens)])
    assert f.is_well_defined()
    # 0 -> K -> M(-1) -> M -> C -> 0 is exact, so Hilbert functions alternate to zero
    K = kernel(f).module
    C, _ = cokernel(f)
    for q in range(0, 5):
        alt = hilbert_function(K, q) - hilbert_function(shift(M, -1), q) + hilbert_function(M, q) - hilbert_function(C, q)
        assert alt == 0


@settings(max_examples=25, deadline=None)
@given(modules(primes=(32003,)))
def test_broken_maps_are_rejected(M):
    F = GradedModule.free(M.ctx, M.degrees)
    ident = [{(k, M.ctx.ring.one): M.ctx.field.one} for k in range(M.ngens)]
    assert GradedModuleMap(F, M, ident).is_well_defined()
    if any(M.relations):
        # sending M back to its free cover does not respect the relations
        with pytest.raises(ValueError):
            GradedModuleMap(M, F, ident)


@settings(max_examples=20, deadline=None)
@given(modules(primes=(32003,)))
def test_koszul_ext_tor_outputs_are_quasi_zero(M):
    for j in range(M.ctx.n + 2):
        assert is_quasi_zero(koszul_ext_tor(M, "ext", j).module)
        assert is_quasi_zero(koszul_ext_tor(M, "tor", j).module)
