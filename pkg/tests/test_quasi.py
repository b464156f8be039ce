from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relquasi.algebra import PolyRing, Polynomial
from relquasi.catalog import elementary, lookup, squares_elementary, u3_chain
from relquasi.hilbert import from_basis
from relquasi.quasi import (QuasiInvariantSpec, UnsupportedVariant, build_setting, coinvariant_basis,
                            filtration_check, is_member, oracle_dimension, oracle_series, qm_basis,
                            relative_basis, with_invariance)
from relquasi.weyl import hyperoctahedral_group, product_group, symmetric_group

U2 = lookup("u:2")
R2 = U2.ring
t1, t2 = R2.gens()


def spec(name, m, variant="flag"):
    return QuasiInvariantSpec(lookup(name), m, variant)


def test_membership_examples():
    assert is_member(t1 ** 2 * t2, spec("u:2", 1))
    assert not is_member(t1 ** 2 * t2, spec("u:2", 2))
    res = is_member(t1, spec("u:2", 1))
    assert not res and res.witness == "s_{12}" and res.degree == 1
    for name in ("u:2", "u:3", "sp:2", "spin7-g2", "su:3"):
        p = lookup(name)
        for m in range(3):
            assert is_member(p.euler_theta ** m, QuasiInvariantSpec(p, m))


def test_membership_is_degreewise():
    f = t1 * t2 + t1  # invariant part plus a non-member
    assert not is_member(f, spec("u:2", 1))
    assert is_member(t1 * t2 + t1 ** 2 * t2, spec("u:2", 1))


def test_membership_wrong_ring():
    with pytest.raises(ValueError):
        is_member(PolyRing.standard(3, "t").gen(0), spec("u:2", 1))


def test_coinvariant_examples():
    assert coinvariant_basis(symmetric_group(2), [t1 + t2, t1 * t2]).elements == (R2.one(), t2)
    R3 = PolyRing.standard(3, "t")
    b3 = coinvariant_basis(symmetric_group(3), [elementary(R3, i) for i in (1, 2, 3)])
    assert sorted(b.homogeneous_degree() for b in b3.elements) == [0, 1, 1, 2, 2, 3]
    b2 = coinvariant_basis(hyperoctahedral_group(2), [squares_elementary(R2, i) for i in (1, 2)])
    degs = [b.homogeneous_degree() for b in b2.elements]
    assert [degs.count(d) for d in range(5)] == [1, 2, 2, 2, 1]


def test_coinvariant_bad_invariants():
    with pytest.raises(ValueError):
        coinvariant_basis(symmetric_group(2), [t1 + t2, (t1 + t2) ** 2])


def test_qm_basis_examples():
    b = qm_basis(spec("u:2", 1))
    assert b.elements == (R2.one(), t1 * t2 ** 2)
    assert b.coh_degrees() == [0, 6]
    assert qm_basis(spec("u:2", 0)).elements == (R2.one(), t2)


def test_filtered_basis_at_zero():
    b = qm_basis(QuasiInvariantSpec(None, (0, 0), "filtered", u3_chain()))
    assert [str(x) for x in b.elements] == ["1", "t2", "t3", "t2*t3", "t3^2", "t2*t3^2"]


def test_oracle_examples():
    assert oracle_series(spec("u:2", 1), 8) == [1, 1, 2, 3, 4]
    assert oracle_dimension(spec("u:2", 0), 2) == 2
    for name in ("u:3", "sp:2"):
        assert oracle_dimension(spec(name, 2), 0) == 1
    assert oracle_dimension(spec("u:2", 1), 3) == 0
    with pytest.raises(ValueError):
        oracle_dimension(spec("u:2", 1), 70)


def test_filtration_examples():
    assert filtration_check(U2, 3, 12).passed
    assert filtration_check(lookup("sp:2"), 2, 16).passed


def test_basis_oracle_agreement_small():
    for name in ("u:1", "su:2", "sp:1", "u:2:1", "sp:2:1"):
        for m in range(4):
            s = spec(name, m)
            assert from_basis(qm_basis(s)).expand(16) == oracle_series(s, 16)


def test_basis_degree_shape():
    for name in ("u:3", "sp:2", "spin7-g2"):
        p = lookup(name)
        for m in (1, 2):
            degs = qm_basis(QuasiInvariantSpec(p, m)).coh_degrees()
            assert degs.count(0) == 1
            assert all(d >= 2 * m * p.k for d in degs if d)


def test_t_equiv_fixed_space_matches_flag():
    for m in range(3):
        s = spec("u:2", m, "t-equiv")
        fixed = with_invariance(build_setting(s), U2.weyl, (1,))
        assert oracle_series(fixed, 14) == oracle_series(spec("u:2", m), 14)


def test_filtered_flat_reading_is_larger():
    chain = u3_chain()
    cumulative = QuasiInvariantSpec(None, (1, 1), "filtered", chain)
    flat = QuasiInvariantSpec(None, (1, 1), "filtered", chain, flat=True)
    R3 = chain.ring
    a, b, c = R3.gens()
    witness = a * b ** 2 * c
    assert is_member(witness, flat) and not is_member(witness, cumulative)
    assert oracle_dimension(flat, 8) > oracle_dimension(cumulative, 8)


def test_relative_basis_counts():
    R3 = PolyRing.standard(3, "t")
    small = product_group(symmetric_group(2), symmetric_group(1))
    rel = relative_basis(small, symmetric_group(3), R3)
    assert [f.homogeneous_degree() for f in rel] == [0, 1, 2]


def test_spec_validation():
    with pytest.raises(ValueError):
        QuasiInvariantSpec(U2, -1)
    with pytest.raises(UnsupportedVariant):
        QuasiInvariantSpec(U2, 1, "nope")
    with pytest.raises(ValueError):
        QuasiInvariantSpec(None, (1,), "filtered", u3_chain())
    with pytest.raises(UnsupportedVariant):
        build_setting(QuasiInvariantSpec(lookup("spin7-g2"), 1, "bcom"))


coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
exps3 = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
R3 = PolyRing.standard(3, "t")
polys3 = st.dictionaries(exps3, coeffs, max_size=4).map(lambda d: Polynomial(R3, d))


@settings(max_examples=40, deadline=None)
@given(polys3, st.integers(0, 3))
def test_invariants_are_members(f, m):
    p = lookup("u:3")
    assert is_member(p.weyl.reynolds(f), QuasiInvariantSpec(p, m))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(1, 2), polys3)
def test_closed_under_products(i, j, m, g):
    p = lookup("u:3")
    s = QuasiInvariantSpec(p, m)
    elems = qm_basis(s).elements
    a, b = elems[i], elems[j]
    assert is_member(a * b, s)
    assert is_member(p.weyl.reynolds(g) * a, s)


@settings(max_examples=30, deadline=None)
@given(polys3, polys3, st.integers(1, 2))
def test_members_closed_under_addition(f, g, m):
    p = lookup("sp:3:1")
    s = QuasiInvariantSpec(p, m)
    th = p.euler_theta ** m
    a, b = p.weyl.reynolds(f) + th * g, th * f
    assert is_member(a + b, s)
