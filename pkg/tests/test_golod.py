import json
import random
from math import comb

import jsonschema
import pytest
from conftest import FROZEN_SERRE, SCHEMAS, load, load_matching
from hypothesis import given, settings, strategies as st
from oracles import serre_series

from golodkit import F2, DecisionConfig, MerkulovTransfer, golod_decision, parse_ideal, taylor, tor_ranks
from golodkit.core import Monomial, parse_cell
from golodkit.golod import (
    GOLOD,
    INCONCLUSIVE,
    NOT_GOLOD,
    gcd_condition,
    higher_product_witnesses,
    is_generic,
    is_strongly_generic,
    lcm_condition,
    product_trivial,
    scarf_complex,
    serre_bound_series,
    simplicially_resolvable_witness,
    triple_diagnostics,
)
from golodkit.invariants import random_ideal
from golodkit.morse import MorseReduction, reduce_to_minimal

REPORT_SCHEMA = json.loads((SCHEMAS / "golod_report.json").read_text())


def failing_pairs(ideal):
    gens = ideal.generators
    out = set()
    for i in range(ideal.r):
        for j in range(i + 1, ideal.r):
            if gens[i].is_coprime(gens[j]) and not any(
                k not in (i, j) and gens[k].divides(gens[i].lcm(gens[j])) for k in range(ideal.r)
            ):
                out.add((i, j))
    return out


def test_gcd_condition(avramov, katthan, fourgen):
    v = gcd_condition(avramov)
    assert not v.holds and tuple(v.witness) in failing_pairs(avramov)
    # x1^2 and x4^2 is one of the failing pairs
    assert (0, 4) in failing_pairs(avramov)
    assert gcd_condition(katthan).holds and gcd_condition(fourgen).holds


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_gcd_condition_matches_brute_force(seed):
    ideal = random_ideal(random.Random(seed))
    assert gcd_condition(ideal).holds == (not failing_pairs(ideal))


def test_lcm_condition_on_critical_cells(avramov):
    R = MorseReduction(taylor(avramov), load_matching("avramov_staged"))
    v = lcm_condition(avramov, R.target.cells)
    assert not v.holds
    a, b = v.witness
    assert avramov.multidegree(a).is_coprime(avramov.multidegree(b)) and (a | b) in R.target.cells


def test_product_triviality(pentagon, fourgen, avramov):
    v = product_trivial(MerkulovTransfer(reduce_to_minimal(taylor(pentagon))))
    assert not v.holds
    tr = MerkulovTransfer(reduce_to_minimal(taylor(avramov)))
    assert tr.nu_n((parse_cell("u1"), parse_cell("u5"))).unit_terms()
    assert product_trivial(MerkulovTransfer(reduce_to_minimal(taylor(fourgen)))).holds


def test_genericity():
    ideal = parse_ideal("ring x y z; ideal x^2*y, y^3*z, x*z^2;")
    assert is_strongly_generic(ideal).holds and is_generic(ideal).holds
    assert not is_strongly_generic(load("fourgen")).holds
    # same y-degree in x*y and y*z, but x*y*z strictly divisible by none: not generic
    assert not is_generic(parse_ideal("ring x y z; ideal x*y, y*z;")).holds
    # x^2*y and y*z^2 share y^1, and x*z divides their lcm with full support left over
    mixed = parse_ideal("ring x y z; ideal x^2*y, y*z^2, x*z;")
    assert not is_strongly_generic(mixed).holds and is_generic(mixed).holds
    assert is_strongly_generic(parse_ideal("ring x y; ideal x^2, x*y, y^2;")).holds


def test_scarf_witness_for_generic_ideals():
    ideal = parse_ideal("ring x y z; ideal x^2*y, y^3*z, x*z^2;")
    delta = scarf_complex(ideal)
    w = simplicially_resolvable_witness(ideal)
    assert w.witnessed and w.complex == delta


def test_serre_series():
    assert serre_bound_series((1, 4, 4, 1), 4, 8) == FROZEN_SERRE["fourgen"]
    assert serre_bound_series((1,), 3, 4) == [1, 3, 3, 1, 0]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=6), st.integers(0, 6), st.integers(0, 10))
def test_serre_series_matches_long_division(ranks, m, order):
    ranks = [1] + ranks[1:]
    got = serre_bound_series(ranks, m, order)
    assert got == serre_series(ranks, m, order)
    assert all(c >= comb(m, j) for j, c in enumerate(got))


@pytest.mark.parametrize(
    "name, conclusion",
    [("fourgen", GOLOD), ("pentagon", NOT_GOLOD), ("avramov", NOT_GOLOD), ("katthan", INCONCLUSIVE)],
)
def test_decisions_on_fixtures(name, conclusion):
    report = golod_decision(load(name))
    assert report.conclusion == conclusion
    assert report.exit_code == (2 if conclusion == INCONCLUSIVE else 0)
    assert report.matching_independent and not report.consistency
    assert report.tor_ranks == tor_ranks(taylor(load(name)))
    data = json.loads(json.dumps(report.to_json()))
    jsonschema.validate(data, REPORT_SCHEMA)
    assert "conclusion" in report.render_text()


def test_small_decisions():
    assert golod_decision(parse_ideal("ring x y; ideal x, y;")).conclusion == NOT_GOLOD
    assert golod_decision(parse_ideal("ring x; ideal x^2;")).conclusion == GOLOD
    # powers of the maximal ideal are Golod
    assert golod_decision(parse_ideal("ring x y; ideal x^2, x*y, y^2;")).conclusion == GOLOD


def test_katthan_higher_product_certificate(katthan):
    report = golod_decision(katthan, DecisionConfig(strategies=["lex"], jollenbeck=False, max_arity=3))
    assert report.product.holds and not report.arity[3].minimal
    assert report.qualifier == "nu_3 not minimal; satisfies B_2"
    best = report.higher_products[3][0]
    assert best.defined and best.indeterminacy_empty
    strict = golod_decision(
        katthan, DecisionConfig(strategies=["lex"], jollenbeck=False, max_arity=3, decide_by_higher_products=True)
    )
    assert strict.conclusion == NOT_GOLOD and strict.exit_code == 0


def test_avramov_triple_diagnostics():
    ideal = load("avramov")
    tr = MerkulovTransfer(MorseReduction(taylor(ideal, F2), load_matching("avramov_staged")))
    triple = tuple(parse_cell(c) for c in ("u1", "u3", "u5"))
    defined, empty, inspected = triple_diagnostics(tr, triple)
    assert defined and empty
    assert Monomial((0, 1, 1, 2)) in inspected
    hp = higher_product_witnesses(tr, 3, limit=0)
    assert any(h.inputs == triple for h in hp)


def test_given_matching_is_primary():
    report = golod_decision(load("avramov"), DecisionConfig(field=F2, matching=load_matching("avramov_staged")))
    assert report.primary == "given matching" and report.conclusion == NOT_GOLOD
