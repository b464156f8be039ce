import json

from hypothesis import given
from hypothesis import strategies as st

from relquasi.catalog import lookup, u3_chain
from relquasi.engine import GradedComponentEngine
from relquasi.hilbert import (HilbertSeries, base_series, closed_form_bcom, closed_form_flag, closed_form_partial,
                              from_basis, series_equal, series_expand, table_csv, table_json)
from relquasi.quasi import QuasiInvariantSpec, build_setting, oracle_series, qm_basis


def test_flag_expansions():
    assert closed_form_flag(lookup("u:2"), 1).expand(8) == [1, 1, 2, 3, 4]
    assert closed_form_flag(lookup("u:3"), 1).expand(8) == [1, 1, 2, 3, 6]
    for name in ("u:2", "u:3", "sp:2", "spin7-g2"):
        p = lookup(name)
        assert closed_form_flag(p, 0) == base_series([1] * p.n)


def test_bcom_closed_forms():
    u2 = closed_form_bcom(2, 1, "U")
    expected = HilbertSeries.make([1, 0, -1], [1, 2]) + HilbertSeries.make([0, 0, 1, 0, 1], [1, 2])
    assert u2 == expected
    assert closed_form_bcom(2, 0, "U") == HilbertSeries.make([1, 0, 1], [1, 2])
    assert closed_form_bcom(1, 0, "SP") == HilbertSeries.make([1, 0, 1], [2])


def test_bcom_m0_matches_engine():
    for n, fam, name in ((2, "U", "u:2"), (2, "SU", "su:2"), (2, "SP", "sp:2"), (3, "U", "u:3")):
        setting = build_setting(QuasiInvariantSpec(lookup(name), 0, "bcom"))
        assert oracle_series(setting, 16) == closed_form_bcom(n, 0, fam).expand(16)


def test_partial_closed_forms():
    got = closed_form_partial(2, 1, 1, "U")
    expected = HilbertSeries.make([1, -1], [1, 1]) + HilbertSeries.make([0, 1], [1, 1])
    assert got == expected
    for n in (1, 2, 3):
        assert closed_form_partial(n, n, 2, "U") == closed_form_flag(lookup(f"u:{n}"), 2)
    # no degree-1 element survives both sign-change congruences, so the t^2 coefficient is 0
    assert closed_form_partial(2, 1, 1, "SP").expand(4) == [1, 0, 2]
    assert oracle_series(QuasiInvariantSpec(lookup("sp:2:1"), 1), 4) == [1, 0, 2]


def test_from_basis_examples():
    b = qm_basis(QuasiInvariantSpec(lookup("u:2"), 1))
    assert from_basis(b) == HilbertSeries.make([1, 0, 0, 1], [1, 2])
    assert from_basis(qm_basis(QuasiInvariantSpec(lookup("u:2"), 0))) == base_series([1, 1])
    chain = qm_basis(QuasiInvariantSpec(None, (0, 0), "filtered", u3_chain()))
    assert from_basis(chain) == base_series([1, 1, 1])


def test_series_comparison():
    a = closed_form_flag(lookup("u:2"), 1)
    b = closed_form_flag(lookup("u:2"), 2)
    assert series_equal(a, a)
    assert not series_equal(a, b)
    assert series_expand(a, 4) == series_expand(b, 4)
    assert (a.coefficient(6), b.coefficient(6)) == (3, 2)


def test_quotient_by_theta_series():
    for name in ("u:2", "sp:2"):
        p = lookup(name)
        eng = GradedComponentEngine(p.ring, [p.euler_theta])
        expected = HilbertSeries.make([1] + [0] * (p.k - 1) + [-1], [1] * p.n)
        assert eng.hilbert(12) == expected.expand(24)


def test_tables():
    rows = closed_form_flag(lookup("u:2"), 1).table(10)
    assert rows == [(0, 1), (2, 1), (4, 2), (6, 3), (8, 4), (10, 5)]
    assert table_csv(rows).splitlines()[0] == "coh_degree,dimension"
    data = json.loads(table_json(rows, pair="u:2"))
    assert data["schema"] == 1 and data["table"][2] == {"coh_degree": 4, "dimension": 2}


def test_text_rendering():
    assert str(HilbertSeries.make([1, 0, 1], [1, 2])) == "(1 + t^4)/((1-t^2)(1-t^4))"


def test_limit_stabilizes_to_invariants():
    p = lookup("u:3")
    inv = base_series(p.degrees).expand(12)
    for m in range(3, 6):
        # 2mk > 12 once m >= 3 for k = 3
        assert closed_form_flag(p, m).expand(12) == inv


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5), st.lists(st.integers(1, 3), max_size=3),
       st.integers(1, 3))
def test_equality_is_cross_multiplied(num, den, extra):
    a = HilbertSeries.make(num, den)
    # multiply numerator and denominator by (1 - u^extra)
    scaled = [0] * (len(num) + extra)
    for i, c in enumerate(num):
        scaled[i] += c
        scaled[i + extra] -= c
    assert a == HilbertSeries.make(scaled, den + [extra])


@given(st.integers(0, 3))
def test_coefficients_non_negative(m):
    for name in ("u:3", "sp:2", "spin7-g2"):
        assert min(closed_form_flag(lookup(name), m).expand(24)) >= 0
