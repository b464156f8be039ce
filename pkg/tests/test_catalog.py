import json
from dataclasses import replace

import pytest

from relquasi.catalog import (DEFAULT_NAMES, UnknownPair, catalog_json, catalog_list, filtered_from_dict,
                              load_filtered, lookup, u3_chain, validate_pair)
from relquasi.weyl import symmetric_group


@pytest.mark.parametrize("name", DEFAULT_NAMES)
def test_catalog_entries_validate(name):
    p = lookup(name)
    rep = validate_pair(p)
    assert rep.passed, rep.failures
    assert p.euler_theta.homogeneous_degree() == p.k


def test_lookup_examples():
    u3 = lookup("u:3")
    assert (u3.n, u3.order, str(u3.euler_theta), u3.k, u3.degrees) == (3, 6, "t1*t2*t3", 3, (1, 2, 3))
    sp2 = lookup("sp:2")
    assert (sp2.n, sp2.order, str(sp2.euler_theta), sp2.k, sp2.degrees) == (2, 8, "t1^2*t2^2", 4, (2, 4))
    spin = lookup("spin7-g2")
    assert spin.weyl.order == 48
    assert str(spin.euler_theta) == "t1^2*t2^2 + t1^2*t3^2 + t2^2*t3^2"
    assert spin.k == 4  # the 7-sphere


def test_alias_flagged():
    p = lookup("spin9-spin7")
    assert p.alias_of == "sp:4" and p.ktheory is None
    assert any("alias" in n for n in validate_pair(p).notes)


def test_su_reduced_coordinates():
    p = lookup("su:3")
    assert p.rank == 2 and p.degrees == (2, 3)
    assert str(p.relations[0]) == "t1 + t2 + t3"


@pytest.mark.parametrize("bad", ["u:0", "x:2", "u:2:3", "sp:", "g2"])
def test_unknown_pairs(bad):
    with pytest.raises(UnknownPair):
        lookup(bad)


def test_tampered_theta_witness():
    u2 = lookup("u:2")
    t1, _ = u2.ring.gens()
    rep = validate_pair(replace(u2, euler_theta=t1))
    assert "euler_theta not W-invariant, witness s_{12}" in rep.failures


def test_tampered_degrees():
    rep = validate_pair(replace(lookup("u:2"), degrees=(1, 3)))
    assert any(f.startswith("∏d_i ≠ |W|") for f in rep.failures)


def test_non_invariant_Theta():
    u2 = lookup("u:2")
    kt = u2.ktheory
    z1 = kt.ring.gens()[0]
    rep = validate_pair(replace(u2, ktheory=replace(kt, theta=1 - z1)))
    assert any(f.startswith("Theta not W-invariant") for f in rep.failures)


def test_partial_pairs():
    p = lookup("u:3:2")
    assert p.order == 2 and str(p.euler_theta) == "t2*t3"
    assert lookup("u:3:3").weyl.order == 6
    assert lookup("sp:3:1").order == 16


def test_catalog_json_schema():
    data = json.loads(catalog_json())
    assert data["schema"] == 1
    names = [p["name"] for p in data["pairs"]]
    assert names == [p.name for p in catalog_list()]
    u2 = next(p for p in data["pairs"] if p["name"] == "u:2")
    assert set(u2) >= {"name", "n", "k", "degrees", "theta", "Theta"}


def test_chain_spec(tmp_path):
    chain = u3_chain()
    assert chain.validate().passed
    assert chain.length == 2 and chain.top.order == 6
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"name": "c", "n": 3, "chain": [
        {"group": ["S2", "S1"], "theta": "t1*t2"}, {"group": "S3", "theta": "t1*t2*t3"}]}))
    assert load_filtered(path).levels[1].group.order == 6


def test_chain_errors():
    bad = filtered_from_dict({"n": 3, "chain": [{"group": "S3", "theta": "t1*t2*t3"},
                                                 {"group": ["S2", "S1"], "theta": "t1*t2"}]})
    assert not bad.validate().passed
    noninv = filtered_from_dict({"n": 3, "chain": [{"group": ["S2", "S1"], "theta": "t1"}]})
    assert not noninv.validate().passed
    with pytest.raises(ValueError):
        filtered_from_dict({"n": 3, "chain": [{"group": "S2", "theta": "t1"}]})
