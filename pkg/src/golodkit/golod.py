"""Golod-property criteria and the combined decision report."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

from .ainf import ArityVerdict, MerkulovTransfer, is_minimal_map
from .complexes import TaylorComplex, is_minimal, simplicial_to_complex, taylor, tor_ranks
from .core import QQ, Field, Monomial, MonomialIdeal, bits, cell_key, cl, render_cell
from .morse import Matching, MorseReduction, is_standard_matching, jollenbeck_matching, reduce_to_minimal
from .simplicial import SimplicialComplex, is_resolution

GOLOD = "Golod"
NOT_GOLOD = "not Golod"
INCONCLUSIVE = "inconclusive"

# Justifications quoted in reports.
PRODUCT_RULE = "a Golod ring has trivial product on Tor^S(R,k)"
RESOLVABLE_RULE = (
    "for simplicially resolvable rings: Golod <=> trivial Tor product <=> gcd condition <=> lcm condition"
)
MINIMALITY_RULE = "R is Golod iff every transferred operation on the minimal resolution is minimal"


@dataclass
class Verdict:
    holds: bool
    witness: object = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------------------
# combinatorial criteria


def gcd_condition(ideal: MonomialIdeal) -> Verdict:
    """Every coprime generator pair has a third generator dividing its lcm."""
    gens = ideal.generators
    for i, j in combinations(range(ideal.r), 2):
        if not gens[i].is_coprime(gens[j]):
            continue
        l = gens[i].lcm(gens[j])
        if not any(k not in (i, j) and gens[k].divides(l) for k in range(ideal.r)):
            return Verdict(False, (i, j), f"no third generator divides lcm(m{i + 1}, m{j + 1})")
    return Verdict(True)


def lcm_condition(ideal: MonomialIdeal, critical: list[int]) -> Verdict:
    """lcm(u)·lcm(v) ≠ lcm(uv) for all disjoint nonempty critical u, v with uv critical."""
    crit = set(critical)
    cells = sorted((c for c in crit if c), key=cell_key)
    for a, u in enumerate(cells):
        for v in cells[a + 1:]:
            if u & v or (u | v) not in crit:
                continue
            if ideal.multidegree(u) * ideal.multidegree(v) == ideal.multidegree(u | v):
                return Verdict(False, (u, v), f"lcm({render_cell(u)}) lcm({render_cell(v)}) = lcm({render_cell(u | v)})")
    return Verdict(True)


def product_trivial(transfer: MerkulovTransfer) -> Verdict:
    """No ν₂ value on positive-degree critical cells has a unit coefficient."""
    v = is_minimal_map(transfer, 2)
    if v.minimal:
        return Verdict(True, detail=f"{v.tuples_checked} candidate pairs checked")
    return Verdict(False, (v.offender, v.value), f"unit coefficient on {render_cell(v.unit_cell)}")


def is_strongly_generic(ideal: MonomialIdeal) -> Verdict:
    """No variable has the same nonzero exponent in two generators."""
    gens = ideal.generators
    for var in range(ideal.nvars):
        seen: dict[int, int] = {}
        for k, g in enumerate(gens):
            e = g[var]
            if e == 0:
                continue
            if e in seen:
                return Verdict(False, (var, seen[e], k), f"{ideal.variables[var]}^{e} in m{seen[e] + 1} and m{k + 1}")
            seen[e] = k
    return Verdict(True)


def is_generic(ideal: MonomialIdeal) -> Verdict:
    """For each pair sharing a positive exponent in some variable, a third
    generator divides their lcm with full support in the quotient."""
    gens = ideal.generators
    for i, j in combinations(range(ideal.r), 2):
        if not any(a == b and a > 0 for a, b in zip(gens[i], gens[j])):
            continue
        l = gens[i].lcm(gens[j])
        ok = False
        for k in range(ideal.r):
            if k in (i, j) or not gens[k].divides(l):
                continue
            if (l / gens[k]).support() == l.support():
                ok = True
                break
        if not ok:
            return Verdict(False, (i, j), f"pair m{i + 1}, m{j + 1} has no separating third generator")
    return Verdict(True)


def scarf_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Subsets whose lcm is attained by no other subset."""
    table = ideal.lcm_table()
    counts: dict[Monomial, int] = {}
    for m in table:
        counts[m] = counts.get(m, 0) + 1
    faces = frozenset(J for J, m in enumerate(table) if counts[m] == 1)
    # uniqueness is inherited by subsets, so this is a simplicial complex
    return SimplicialComplex(ideal.r, faces)


def serre_bound_series(ranks, m: int, order: int) -> list[int]:
    """Coefficients up to t^order of (1+t)^m / (1 − Σ_{j≥1} ranks_j t^{j+1})."""
    num = [comb(m, k) for k in range(order + 1)]
    den = [0] * (order + 1)
    den[0] = 1
    for j, b in enumerate(ranks):
        if j >= 1 and j + 1 <= order:
            den[j + 1] -= b
    out = []
    for n in range(order + 1):
        acc = num[n] - sum(den[k] * out[n - k] for k in range(1, n + 1))
        out.append(acc)  # den[0] = 1 keeps everything integral
    return out


# ---------------------------------------------------------------------------
# simplicial resolvability


@dataclass
class ResolvabilityWitness:
    status: str  # "witnessed" or "unknown"
    source: str = ""
    complex: SimplicialComplex | None = None

    @property
    def witnessed(self) -> bool:
        return self.status == "witnessed"


def minimal_simplicial_resolution(delta: SimplicialComplex, ideal: MonomialIdeal, field: Field = QQ) -> bool:
    """Whether F_Δ is a minimal free resolution of S/I."""
    if not is_resolution(delta, ideal, field):
        return False
    return bool(is_minimal(simplicial_to_complex(delta, ideal, field)))


def _as_downward_closed(r: int, cells: list[int]) -> SimplicialComplex | None:
    faces = frozenset(cells)
    if all(c ^ (1 << i) in faces for c in faces for i in bits(c)):
        return SimplicialComplex(r, faces)
    return None


def simplicially_resolvable_witness(
    ideal: MonomialIdeal, reductions: dict[str, object] | None = None, field: Field = QQ
) -> ResolvabilityWitness:
    """Try the Scarf complex and the critical cells of each reduction.

    Any candidate Δ with F_Δ a minimal resolution is a witness.  Failing
    that, a generic ideal is reported as witnessed by classification.
    Nothing is ever refuted: the answer is otherwise "unknown".
    """
    scarf = scarf_complex(ideal)
    if minimal_simplicial_resolution(scarf, ideal, field):
        return ResolvabilityWitness("witnessed", "Scarf complex", scarf)
    for name, red in (reductions or {}).items():
        delta = _as_downward_closed(ideal.r, red.target.cells)
        if delta is not None and minimal_simplicial_resolution(delta, ideal, field):
            return ResolvabilityWitness("witnessed", f"critical cells of {name}", delta)
    if is_strongly_generic(ideal):
        return ResolvabilityWitness("witnessed", "classification: strongly generic")
    if is_generic(ideal):
        return ResolvabilityWitness("witnessed", "classification: generic")
    return ResolvabilityWitness("unknown")


# ---------------------------------------------------------------------------
# higher products


@dataclass
class HigherProduct:
    """A non-minimal value of νₙ together with its Massey-product diagnostics."""

    inputs: tuple[int, ...]
    value: object
    unit_cell: int
    defined: bool | None = None
    indeterminacy_empty: bool | None = None
    indeterminacy_multidegrees: list = dc_field(default_factory=list)


def triple_diagnostics(transfer: MerkulovTransfer, triple: tuple[int, int, int]) -> tuple[bool, bool, list]:
    """(defined, indeterminacy empty, multidegrees inspected) for ⟨a, b, c⟩.

    Defined: ab = bc = 0 in Tor.  The indeterminacy a·Tor + Tor·c is
    checked in the output multidegree: every product a·v (resp. v·c) with
    v critical of the complementary multidegree and degree must vanish ⊗ k.
    """
    a, b, c = triple
    unit = lambda x: bool(x.unit_terms())
    defined = not unit(transfer.nu_n((a, b))) and not unit(transfer.nu_n((b, c)))
    T = transfer.T
    mu = T.multidegree(a) * T.multidegree(b) * T.multidegree(c)
    inspected = []
    empty = True
    for side, fixed, deg in (("left", a, b.bit_count() + c.bit_count() + 1), ("right", c, a.bit_count() + b.bit_count() + 1)):
        m_fixed = T.multidegree(fixed)
        if not m_fixed.divides(mu):
            continue
        comp = mu / m_fixed
        inspected.append(comp)
        for v in transfer.critical:
            if v.bit_count() != deg or T.multidegree(v) != comp:
                continue
            pair = (fixed, v) if side == "left" else (v, fixed)
            if unit(transfer.nu_n(pair)):
                empty = False
    return defined, empty, inspected


def higher_product_witnesses(transfer: MerkulovTransfer, arity: int, limit: int = 1) -> list[HigherProduct]:
    found = []
    for tup, val, unit_cell in is_minimal_map(transfer, arity, all_offenders=True):
        hp = HigherProduct(tup, val, unit_cell)
        if arity == 3:
            hp.defined, hp.indeterminacy_empty, hp.indeterminacy_multidegrees = triple_diagnostics(transfer, tup)
        found.append(hp)
    # prefer certificates: defined with empty indeterminacy first
    found.sort(key=lambda h: (not (h.defined and h.indeterminacy_empty), h.inputs))
    return found[:limit] if limit else found


# ---------------------------------------------------------------------------
# report


@dataclass
class DecisionConfig:
    field: Field = QQ
    strategies: list[str] | None = None
    jollenbeck: bool = True
    max_arity: int = 4
    seed: int = 0
    matching: Matching | None = None
    decide_by_higher_products: bool = False
    check: bool = True

    def strategy_list(self) -> list[str]:
        if self.strategies is not None:
            return list(self.strategies)
        rng = random.Random(self.seed)
        return ["lex", "revlex", f"random:{rng.randrange(2**31)}", f"random:{rng.randrange(2**31)}"]


@dataclass
class GolodReport:
    ideal: MonomialIdeal
    config: DecisionConfig
    tor_ranks: tuple[int, ...]
    strategy_ranks: dict[str, tuple[int, ...]]
    strategy_product_trivial: dict[str, bool]
    primary: str
    gcd: Verdict
    lcm: Verdict
    lcm_source: str
    product: Verdict
    strongly_generic: Verdict
    generic: Verdict
    resolvability: ResolvabilityWitness
    arity: dict[int, ArityVerdict]
    higher_products: dict[int, list[HigherProduct]]
    conclusion: str
    qualifier: str
    justification: str
    consistency: list[str]
    standard_matching: object = None
    all_cl2_matched: bool | None = None

    @property
    def exit_code(self) -> int:
        return 2 if self.conclusion == INCONCLUSIVE else 0

    @property
    def matching_independent(self) -> bool:
        return len(set(self.strategy_ranks.values())) <= 1 and len(set(self.strategy_product_trivial.values())) <= 1

    def _cells(self, tup) -> list[str]:
        return [render_cell(c, self.ideal.r) for c in tup]

    def to_json(self) -> dict:
        r = self.ideal.r
        names = self.ideal.variables

        def elem(x):
            return x.render(names, r) if x is not None else None

        product = {"holds": self.product.holds, "witness": None}
        if not self.product.holds:
            tup, val = self.product.witness
            product["witness"] = {"inputs": self._cells(tup), "value": elem(val)}
        arity = {}
        for n, v in sorted(self.arity.items()):
            entry = {"minimal": v.minimal, "tuples_checked": v.tuples_checked, "witnesses": []}
            for hp in self.higher_products.get(n, []):
                entry["witnesses"].append(
                    {
                        "inputs": self._cells(hp.inputs),
                        "value": elem(hp.value),
                        "unit_cell": render_cell(hp.unit_cell, r),
                        "defined": hp.defined,
                        "indeterminacy_empty": hp.indeterminacy_empty,
                        "indeterminacy_multidegrees": [m.render(names) for m in hp.indeterminacy_multidegrees],
                    }
                )
            arity[str(n)] = entry
        out = {
            "schema": "golodkit/golod-report/v1",
            "seed": self.config.seed,
            "field": self.config.field.name,
            "ideal": self.ideal.render(),
            "strategies": list(self.strategy_ranks),
            "primary_strategy": self.primary,
            "max_arity": self.config.max_arity,
            "tor_ranks": list(self.tor_ranks),
            "critical_ranks": {k: list(v) for k, v in self.strategy_ranks.items()},
            "matching_independent": self.matching_independent,
            "criteria": {
                "gcd_condition": {
                    "holds": self.gcd.holds,
                    "witness": None if self.gcd.holds else [self.ideal.generators[i].render(names) for i in self.gcd.witness],
                },
                "lcm_condition": {
                    "holds": self.lcm.holds,
                    "on": self.lcm_source,
                    "witness": None if self.lcm.holds else self._cells(self.lcm.witness),
                },
                "product_trivial": product,
                "strongly_generic": {"holds": self.strongly_generic.holds, "witness": self.strongly_generic.detail or None},
                "generic": {"holds": self.generic.holds, "witness": self.generic.detail or None},
                "minimal_by_arity": arity,
            },
            "simplicial_resolvability": {
                "status": self.resolvability.status,
                "source": self.resolvability.source or None,
                "complex": self.resolvability.complex.to_json() if self.resolvability.complex else None,
            },
            "all_cl2_cells_matched": self.all_cl2_matched,
            "conclusion": self.conclusion,
            "qualifier": self.qualifier,
            "justification": self.justification,
            "consistency_violations": self.consistency,
        }
        if self.standard_matching is not None:
            sm = self.standard_matching
            out["standard_matching"] = {"holds": sm.ok, "failed_clause": sm.clause, "clauses_passed": list(sm.clauses_passed)}
        return out

    def render_text(self) -> str:
        d = self.to_json()
        crit = d["criteria"]
        rows = [
            ("ideal", d["ideal"]),
            ("field / seed", f"{d['field']} / {d['seed']}"),
            ("Tor ranks", " ".join(map(str, d["tor_ranks"]))),
            ("strategies agree", "yes" if d["matching_independent"] else "NO"),
            ("gcd condition", _yn(crit["gcd_condition"]["holds"], crit["gcd_condition"]["witness"])),
            ("lcm condition", _yn(crit["lcm_condition"]["holds"], crit["lcm_condition"]["witness"]) + f" [{d['criteria']['lcm_condition']['on']}]"),
            ("trivial product", _yn(crit["product_trivial"]["holds"], crit["product_trivial"]["witness"])),
            ("strongly generic", _yn(crit["strongly_generic"]["holds"], crit["strongly_generic"]["witness"])),
            ("generic", _yn(crit["generic"]["holds"], crit["generic"]["witness"])),
        ]
        for n, entry in crit["minimal_by_arity"].items():
            w = entry["witnesses"][0] if entry["witnesses"] else None
            rows.append((f"nu_{n} minimal", _yn(entry["minimal"], w and f"{w['inputs']} -> {w['value']}")))
        res = d["simplicial_resolvability"]
        rows.append(("simplicially resolvable", res["status"] + (f" ({res['source']})" if res["source"] else "")))
        rows.append(("conclusion", d["conclusion"] + (f" [{d['qualifier']}]" if d["qualifier"] else "")))
        rows.append(("because", d["justification"]))
        for v in d["consistency_violations"]:
            rows.append(("INCONSISTENT", v))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)} : {v}" for k, v in rows) + "\n"


def _yn(holds: bool, witness) -> str:
    return "yes" if holds else f"no, witness {witness}"


def golod_decision(ideal: MonomialIdeal, config: DecisionConfig | None = None) -> GolodReport:
    """Run every criterion and combine them conservatively.

    * nontrivial product ⇒ not Golod;
    * simplicial resolvability witnessed and trivial product ⇒ Golod;
    * otherwise inconclusive, qualified by the highest arity known minimal
      (B_N) or by the higher-product witness that was found.  With
      ``decide_by_higher_products`` a defined triple Massey product with
      empty indeterminacy is accepted as proof of "not Golod".
    """
    config = config or DecisionConfig()
    field = config.field
    T: TaylorComplex = taylor(ideal, field, check=config.check)
    ranks = tor_ranks(T)
    reductions: dict[str, object] = {}
    if config.matching is not None:
        reductions["given matching"] = MorseReduction(T, config.matching, check=config.check)
    for s in config.strategy_list():
        reductions[s] = reduce_to_minimal(T, s, check=config.check)
    staged = None
    if config.jollenbeck:
        staged = jollenbeck_matching(ideal, field, check=config.check)
        reductions["jollenbeck"] = staged.reduction

    strategy_ranks = {name: red.target.ranks() for name, red in reductions.items()}
    consistency: list[str] = []
    transfers = {name: MerkulovTransfer(red) for name, red in reductions.items()}
    minimal_names = [n for n, red in reductions.items() if is_minimal(red.target)]
    for n, red in reductions.items():
        if n not in minimal_names:
            consistency.append(f"{n}: reduction is not minimal")
    primary = minimal_names[0] if minimal_names else next(iter(reductions))
    tr = transfers[primary]

    products = {n: product_trivial(transfers[n]) for n in minimal_names}
    product = products[primary] if primary in products else product_trivial(tr)
    gcd = gcd_condition(ideal)
    sg = is_strongly_generic(ideal)
    gen = is_generic(ideal)
    witness = simplicially_resolvable_witness(ideal, {n: reductions[n] for n in minimal_names}, field)
    if witness.complex is not None:
        lcm = lcm_condition(ideal, sorted(witness.complex.faces, key=cell_key))
        lcm_source = f"simplicial complex from {witness.source}"
    else:
        lcm = lcm_condition(ideal, tr.critical)
        lcm_source = f"critical cells of {primary}"

    arity: dict[int, ArityVerdict] = {}
    highs: dict[int, list[HigherProduct]] = {}
    for n in range(2, config.max_arity + 1):
        v = is_minimal_map(tr, n)
        arity[n] = v
        if not v.minimal:
            highs[n] = higher_product_witnesses(tr, n) if n >= 3 else [HigherProduct(v.offender, v.value, v.unit_cell)]

    # cross-checks
    if len({tuple(r) for r in strategy_ranks.values()}) > 1:
        consistency.append("critical ranks differ between strategies")
    if any(tuple(r) != ranks for n, r in strategy_ranks.items() if n in minimal_names):
        consistency.append("critical ranks differ from Tor ranks")
    if len({bool(v) for v in products.values()}) > 1:
        consistency.append("product triviality differs between strategies")
    if witness.witnessed:
        if witness.complex is not None and not (bool(gcd) == bool(lcm) == bool(product)):
            consistency.append("gcd, lcm and product criteria disagree on a simplicially resolvable ring")
        elif witness.complex is None and bool(gcd) != bool(product):
            consistency.append("gcd and product criteria disagree on a simplicially resolvable ring")
        if product and any(not v.minimal for v in arity.values()):
            consistency.append("trivial product on a simplicially resolvable ring but some νₙ is not minimal")

    all_cl2 = False
    for name in minimal_names:
        crit = reductions[name].target.cells
        if all(cl(ideal, c) <= 1 for c in crit if c):
            all_cl2 = True
            if witness.witnessed and any(not v.minimal for n, v in arity.items() if n >= 3):
                consistency.append("every cl ≥ 2 cell is matched yet some higher νₙ is not minimal")
            break
    standard = None
    if staged is not None and staged.union_is_morse_matching:
        standard = is_standard_matching(T, staged.matching)

    # decision
    qualifier = ""
    if not product:
        conclusion, justification = NOT_GOLOD, PRODUCT_RULE
    elif witness.witnessed:
        conclusion, justification = GOLOD, RESOLVABLE_RULE + f" (resolvability: {witness.source})"
    else:
        certificate = next(
            (h for n in sorted(highs) for h in highs[n] if n == 3 and h.defined and h.indeterminacy_empty), None
        )
        bad = [n for n, v in sorted(arity.items()) if not v.minimal]
        if certificate is not None and config.decide_by_higher_products:
            conclusion, justification = NOT_GOLOD, MINIMALITY_RULE + " (defined triple product with empty indeterminacy)"
        else:
            conclusion = INCONCLUSIVE
            if bad:
                qualifier = f"nu_{bad[0]} not minimal; satisfies B_{bad[0] - 1}"
                justification = "simplicial resolvability unknown; a higher-product witness is reported but not used to decide"
            else:
                qualifier = f"satisfies B_{config.max_arity}"
                justification = "simplicial resolvability unknown; minimality only checked up to the arity cap"

    return GolodReport(
        ideal=ideal,
        config=config,
        tor_ranks=ranks,
        strategy_ranks=strategy_ranks,
        strategy_product_trivial={n: bool(v) for n, v in products.items()},
        primary=primary,
        gcd=gcd,
        lcm=lcm,
        lcm_source=lcm_source,
        product=product,
        strongly_generic=sg,
        generic=gen,
        resolvability=witness,
        arity=arity,
        higher_products=highs,
        conclusion=conclusion,
        qualifier=qualifier,
        justification=justification,
        consistency=consistency,
        standard_matching=standard,
        all_cl2_matched=all_cl2,
    )
