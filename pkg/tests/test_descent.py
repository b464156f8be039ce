from fractions import Fraction
import pytest

from relquasi.algebra import elementary_symmetric

from relquasi.descent import (GroupTooLarge, PermStatistic, bcom_rank_zero_basis, descent_invariant,
                              descent_monomial, descent_set, fmaj, maj, maj_generating_function, neg,
                              signed_descent_monomial, single_statistic_distribution, xy_ring)
from relquasi.engine import GradedComponentEngine
from relquasi.hilbert import bcom_numerator_sum, product_of
from relquasi.linalg import Echelon
from relquasi.weyl import SignedPermutation, hyperoctahedral_group, symmetric_group


def perm(*one_line):
    """Signed permutation from a 1-based one-line notation like perm(2, 3, 1)."""
    return SignedPermutation(tuple(abs(v) - 1 for v in one_line), tuple(1 if v > 0 else -1 for v in one_line))


def test_descent_set():
    assert descent_set([2, 3, 1]) == [2]
    assert descent_set([-1, 2]) == []
    assert descent_set([2, -1]) == [1]


def test_identity_statistics():
    e = SignedPermutation.identity(3)
    assert maj(e) == fmaj(e) == 0
    assert descent_monomial(e) == xy_ring(3).one()
    assert signed_descent_monomial(e) == xy_ring(3).one()


def test_descent_monomial_examples():
    R = xy_ring(2)
    x1, x2, y1, y2 = R.gens()
    s = perm(2, 1)
    assert descent_monomial(s) == x1 * y2
    assert descent_invariant(s, symmetric_group(2)) == (x1 * y2 + x2 * y1) * Fraction(1, 2)
    R3 = xy_ring(3)
    x1, _, _, _, y2, y3 = R3.gens()
    c = perm(2, 3, 1)
    assert (maj(c), maj(c.inverse())) == (2, 1)
    assert descent_monomial(c) == x1 * y2 * y3


def test_descent_degrees():
    for n in (2, 3, 4):
        for g in symmetric_group(n).elements:
            assert descent_monomial(g).homogeneous_degree() == maj(g) + maj(g.inverse())


def test_signed_examples():
    R = xy_ring(1)
    x1, y1 = R.gens()
    s = perm(-1)
    assert (neg(s), fmaj(s)) == (1, 1)
    assert signed_descent_monomial(s) == x1 * y1
    for g in hyperoctahedral_group(3).elements:
        assert signed_descent_monomial(g).homogeneous_degree() == fmaj(g) + fmaj(g.inverse())
        assert fmaj(g) == 2 * maj(g) + neg(g)


def test_maj_generating_functions():
    assert maj_generating_function(symmetric_group(2)) == {0: 1, 4: 1}
    assert maj_generating_function(symmetric_group(3)) == {0: 1, 4: 1, 6: 2, 8: 1, 12: 1}
    assert bcom_numerator_sum(1, "SP") == [1, 0, 1]
    assert bcom_numerator_sum(2, "SP") == [1, 0, 1, 0, 4, 0, 1, 0, 1]


def test_classical_product_identities():
    for n in (2, 3, 4):
        expected = product_of([[1] * i for i in range(1, n + 1)])
        assert single_statistic_distribution(symmetric_group(n)) == expected
    for n in (2, 3):
        expected = product_of([[1] * (2 * i) for i in range(1, n + 1)])
        assert single_statistic_distribution(hyperoctahedral_group(n), signed=True) == expected


@pytest.mark.parametrize("n,signed", [(2, False), (3, False), (2, True)])
def test_rank_zero_basis_independent(n, signed):
    group = hyperoctahedral_group(n) if signed else symmetric_group(n)
    gs = bcom_rank_zero_basis(group, signed)
    assert gs[0] == xy_ring(n).one()
    xs = xy_ring(n).gens()[:n]
    if signed:
        xs = [x * x for x in xs]
    invs = [elementary_symmetric(i, xs) for i in range(1, n + 1)]
    eng = GradedComponentEngine(xy_ring(n), invs)
    by_degree = {}
    for g in gs:
        by_degree.setdefault(g.homogeneous_degree(), []).append(eng.nf_terms(g))
    for rows in by_degree.values():
        assert Echelon(rows).rank == len(rows)
    gf = [0] * (max(by_degree) + 1)
    for d, rows in by_degree.items():
        gf[d] = len(rows)
    assert gf == bcom_numerator_sum(n, "SP" if signed else "U")


def test_perm_statistic_record():
    st = PermStatistic.of(perm(3, 1, 2))
    assert (st.maj, st.descent_set) == (1, (1,))


def test_enumeration_guard(monkeypatch):
    import relquasi.descent as d
    monkeypatch.setattr(d, "MAX_ENUMERATION", 5)
    with pytest.raises(GroupTooLarge):
        maj_generating_function(symmetric_group(3))
