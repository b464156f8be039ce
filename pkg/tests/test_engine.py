import pytest

from relquasi.algebra import PolyRing
from relquasi.catalog import elementary
from relquasi.engine import GradedComponentEngine, TruncationExceeded
from relquasi.quasi import invariant_basis, quotient_hilbert
from relquasi.weyl import symmetric_group


def test_principal_quotient():
    R = PolyRing.standard(2, "t")
    t1, t2 = R.gens()
    eng = GradedComponentEngine(R, [t1 * t2])
    assert [c for _, c in quotient_hilbert(eng, 8)] == [1, 2, 2, 2, 2]


def test_coinvariant_quotient_dimension():
    R = PolyRing.standard(3, "t")
    eng = GradedComponentEngine(R, [elementary(R, i) for i in (1, 2, 3)])
    assert eng.hilbert(5) == [1, 2, 2, 1, 0, 0]
    assert eng.total_dimension(6) == 6


def test_normal_form_is_canonical():
    R = PolyRing.standard(2, "t")
    t1, t2 = R.gens()
    eng = GradedComponentEngine(R, [t1 + t2])
    assert eng.nf(t1) == eng.nf(-t2)
    assert eng.is_zero(t1 ** 2 - t2 ** 2)
    assert len(eng.standard_monomials(3)) == 1


def test_component_split():
    xy = PolyRing.doubled(2)
    x1, x2, y1, y2 = xy.gens()
    eng = GradedComponentEngine(xy, [x1 + x2, x1 * x2, y1 + y2])
    assert len(eng.components) == 2
    assert eng.hilbert(4) == [1, 2, 2, 2, 2]


def test_bcom_u2_quotient():
    # diagonal S_2 invariants of Q[X,Y]/(e1(X), e2(X)) in low degree
    xy = PolyRing.doubled(2)
    x1, x2, y1, y2 = xy.gens()
    eng = GradedComponentEngine(xy, [x1 + x2, x1 * x2])
    W = symmetric_group(2)
    dims = [len(invariant_basis(W, eng, d)) for d in range(5)]
    # matches (1 + t^4)/((1-t^2)(1-t^4)) in cohomological degrees
    assert dims == [1, 1, 3, 3, 5]


def test_truncation_guard():
    R = PolyRing.standard(1, "t")
    eng = GradedComponentEngine(R, max_degree=4)
    with pytest.raises(TruncationExceeded):
        eng.dim(5)


def test_rejects_inhomogeneous():
    R = PolyRing.standard(2, "t")
    t1, t2 = R.gens()
    with pytest.raises(ValueError):
        GradedComponentEngine(R, [t1 + t2 ** 2])
