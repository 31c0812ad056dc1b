import numpy as np
import pytest

from twisted_sections import bmodules as bm
from twisted_sections.bmodules import BModule, BModuleMap, Lifter, fitting_invariant
from twisted_sections.rings import BaseRing, Field, QQ

KY = BaseRing(QQ, ["y"])
FP = BaseRing(Field(7))


def y(e=1):
    return (e,)


def one():
    return (0,)


def test_fitting_invariant_ignores_the_presentation():
    # Q[y]/(y) presented with one generator, and with two generators and a unit relation
    A = BModule(KY, 1, [{(0, y()): QQ(1)}])
    B = BModule(KY, 2, [{(0, y()): QQ(1)}, {(1, one()): QQ(1), (0, y()): QQ(2)}])
    assert fitting_invariant(A) == fitting_invariant(B)
    C = BModule(KY, 1, [{(0, y(2)): QQ(1)}])
    assert fitting_invariant(A) != fitting_invariant(C)
    assert fitting_invariant(BModule.free(KY, 2)) != fitting_invariant(BModule.free(KY, 1))


def test_rank_and_zero_over_polynomial_base():
    M = BModule(KY, 2, [{(0, y()): QQ(1), (1, one()): QQ(-1)}])
    assert M.rank() == 1
    assert not M.is_zero()
    assert BModule(KY, 1, [{(0, one()): QQ(3)}]).is_zero()


def test_field_base_is_free():
    with pytest.raises(ValueError):
        BModule(FP, 2, [{(0, ()): 1}])
    assert BModule.free(FP, 3).dim == 3


def test_kernel_cokernel_over_a_field():
    V, W = BModule.free(FP, 3), BModule.free(FP, 2)
    f = BModuleMap(V, W, [[1, 0], [0, 1], [1, 1]])
    K, incl = bm.kernel(f)
    assert K.ngens == 1
    assert bm.then(incl, f).is_zero()
    Cq, _ = bm.cokernel(f)
    assert Cq.is_zero()
    assert bm.is_surjective(f) and not bm.is_injective(f)


def test_kernel_over_polynomial_base():
    # B^2 -> B, (a, b) -> a*y - b has kernel generated by (1, y)
    src, tgt = BModule.free(KY, 2), BModule.free(KY, 1)
    f = BModuleMap(src, tgt, [{(0, y()): QQ(1)}, {(0, one()): QQ(-1)}])
    K, incl = bm.kernel(f)
    assert K.rank() == 1
    assert bm.then(incl, f).is_zero()
    Q, _ = bm.cokernel(f)
    assert Q.is_zero()


def test_homology_of_a_short_complex():
    A, B, C = BModule.free(FP, 1), BModule.free(FP, 2), BModule.free(FP, 1)
    f = BModuleMap(A, B, [[1, 1]])
    g = BModuleMap(B, C, [[1], [6]])  # (1, 1) -> 1 + 6 = 0 mod 7
    assert bm.then(f, g).is_zero()
    H = bm.homology(f, g, B)
    assert H.H.ngens == 0


def test_lifter_solves_and_reports_failure():
    V, W = BModule.free(FP, 2), BModule.free(FP, 3)
    incl = BModuleMap(V, W, [[1, 0, 0], [0, 1, 0]])
    lf = Lifter(incl)
    g = BModuleMap(BModule.free(FP, 1), W, [[3, 4, 0]])
    phi = lf.lift_map(g)
    assert np.array_equal(bm.then(phi, incl).A, g.A)
    with pytest.raises(ArithmeticError):
        lf.lift_map(BModuleMap(BModule.free(FP, 1), W, [[0, 0, 1]]))


def test_iso_detection():
    V = BModule.free(FP, 2)
    assert bm.is_iso(bm.identity_map(V))
    assert not bm.is_iso(bm.zero_map(V, V))
    swap = BModuleMap(V, V, [[0, 1], [1, 0]])
    assert bm.is_iso(swap)
