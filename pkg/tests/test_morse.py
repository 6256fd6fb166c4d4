import json
import random

import jsonschema
from conftest import FROZEN_TOR, SCHEMAS, load, load_matching
from hypothesis import given, settings, strategies as st

from golodkit import QQ, Matching, MorseReduction, build_graph, greedy_maximal_matching, taylor, tor_ranks
from golodkit.complexes import is_minimal
from golodkit.core import mask_of, parse_cell
from golodkit.invariants import InvariantReport, check_reduction, random_ideal
from golodkit.morse import (
    ComposedReduction,
    DynamicOrder,
    critical_ranks,
    export_dot,
    find_cycle,
    is_maximal,
    is_standard_matching,
    jollenbeck_matching,
    reduce_to_minimal,
    validate_matching,
)

seeds = st.integers(0, 2**32)


def cells(*names):
    return [parse_cell(n) for n in names]


def test_invertible_edges(fourgen):
    G = build_graph(taylor(fourgen))
    u124, u24, u12 = cells("u124", "u24", "u12")
    assert (u124, u24) in G.invertible
    assert G.has_edge(u12, parse_cell("u1")) and (u12, parse_cell("u1")) not in G.invertible


def test_validate_reports_each_failure(fourgen):
    G = build_graph(taylor(fourgen))
    bad_edge = Matching.from_pairs([([0, 1, 2], [3])])
    assert validate_matching(G, bad_edge).reason == "not an edge"
    assert validate_matching(G, Matching.from_pairs([([0, 1], [0])])).reason == "not invertible"
    clash = Matching.from_pairs([([0, 1, 3], [1, 3]), ([0, 1, 2, 3], [0, 1, 3])])
    assert validate_matching(G, clash).reason == "incidence"
    assert validate_matching(G, load_matching("fourgen_worked"))


def test_cycle_certificate():
    # random perfect-ish matchings of invertible edges eventually close a cycle in G^M
    ideal = load("pentagon")
    T = taylor(ideal)
    G = build_graph(T)
    rng = random.Random(0)
    found = None
    for _ in range(300):
        edges = list(G.invertible)
        rng.shuffle(edges)
        used, pairs = set(), []
        for s, t in edges:
            if s not in used and t not in used:
                used |= {s, t}
                pairs.append((s, t))
        verdict = validate_matching(G, Matching.from_pairs(pairs))
        if verdict.reason == "cycle":
            found = verdict
            break
    assert found is not None
    cyc = found.certificate
    assert cyc[0] == cyc[-1] and len(cyc) >= 5
    M = Matching.from_pairs(pairs)
    for a, b in zip(cyc, cyc[1:]):
        # each step is a matched arrow reversed upwards or an ordinary edge downwards
        assert M.arrows.get(b) == a or (G.has_edge(a, b) and M.arrows.get(a) != b)


def test_find_cycle_and_dynamic_order():
    assert find_cycle({1: [2], 2: [3], 3: []}) is None
    assert set(find_cycle({1: [2], 2: [3], 3: [1]})) == {1, 2, 3}
    order = DynamicOrder([1, 2, 3], {1: {2}, 2: set(), 3: set()})
    assert order.add_edge(2, 3)
    assert not order.add_edge(3, 1)


def test_greedy_is_maximal_and_valid(pentagon):
    G = build_graph(taylor(pentagon))
    for s in ("lex", "revlex", "random:5"):
        M = greedy_maximal_matching(G, s)
        assert validate_matching(G, M) and is_maximal(G, M)


def test_single_maximal_matching_need_not_be_minimal(pentagon):
    T = taylor(pentagon)
    G = build_graph(T)
    M = greedy_maximal_matching(G, "random:2")
    assert is_maximal(G, M) and critical_ranks(M, T.cells) == (1, 5, 5, 2, 1)
    R = reduce_to_minimal(T, "random:2")
    assert isinstance(R, ComposedReduction) and R.target.ranks() == FROZEN_TOR["pentagon"]


def test_worked_example_morse_complex(fourgen):
    T = taylor(fourgen)
    R = MorseReduction(T, load_matching("fourgen_worked"))
    K = R.target
    assert K.ranks() == (1, 4, 4, 1) and is_minimal(K)
    # the top critical cell includes into T as y = u123 + x3*u134
    assert T.render(R.g(K.basis(parse_cell("u123")))) == "u123 + x3*u134"
    for c in K.cells:
        assert T.d(R.g(K.basis(c))) == R.g(K.d_cell(c))


def test_reductions_satisfy_homotopy_identities(katthan):
    T = taylor(katthan)
    report = InvariantReport()
    check_reduction(T, MorseReduction(T, greedy_maximal_matching(build_graph(T), "lex")), report)
    assert report.ok, report.violations


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["lex", "revlex", "random:3"]))
def test_random_reductions(seed, strategy):
    ideal = random_ideal(random.Random(seed))
    T = taylor(ideal)
    report = InvariantReport()
    check_reduction(T, MorseReduction(T, greedy_maximal_matching(build_graph(T), strategy)), report)
    assert report.ok, report.violations
    R = reduce_to_minimal(T, strategy)
    assert is_minimal(R.target) and R.target.ranks() == tor_ranks(T)
    # f g = 1 on the target, and g, f, h are chain maps / homotopy
    for c in R.target.cells:
        x = R.target.basis(c)
        assert R.f(R.g(x)) == x
        assert T.d(R.g(x)) == R.g(R.target.d(x))
    for c in T.cells:
        x = T.basis(c)
        assert x - R.g(R.f(x)) == -(T.d(R.h(x)) + R.h(T.d(x)))


def test_staged_construction(avramov, fourgen):
    rep = jollenbeck_matching(avramov)
    assert rep.minimal and rep.union_is_morse_matching
    assert rep.reduction.target.ranks() == FROZEN_TOR["avramov"]
    assert jollenbeck_matching(fourgen).reduction.target.ranks() == FROZEN_TOR["fourgen"]


def test_standard_matching_clauses(avramov):
    T = taylor(avramov)
    verdict = is_standard_matching(T, load_matching("avramov_staged"))
    assert not verdict and verdict.clause == 5
    assert verdict.clauses_passed == (1, 2, 3, 4)


def test_matching_json(avramov):
    M = load_matching("avramov_staged")
    T = taylor(avramov)
    data = M.to_json(avramov, T.cells)
    jsonschema.validate(data, json.loads((SCHEMAS / "matching.json").read_text()))
    assert data["critical_ranks"] == [1, 5, 7, 4, 1]
    back = Matching.from_json(data)
    assert back.arrows == M.arrows and back.stages == M.stages


def test_dot_export(fourgen, pentagon):
    G = build_graph(taylor(fourgen))
    dot = export_dot(G, load_matching("fourgen_worked"))
    assert dot.count("color=red") == 3
    assert dot == export_dot(G, load_matching("fourgen_worked"))
    plain = export_dot(build_graph(taylor(pentagon)))
    assert "red" not in plain
    nodes = {tok for line in plain.splitlines() if "rank=same" in line for tok in line.split('"')[1::2]}
    assert len(nodes) == 32
