"""Executable invariants shared by the `verify` command and the test-suite."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product as cartesian

from .ainf import MerkulovTransfer, is_minimal_map, stasheff_residue
from .complexes import BasedComplex, ModuleElement, TaylorComplex, taylor, tor_ranks
from .core import QQ, Field, Monomial, MonomialIdeal, cl, minimalize
from .morse import MorseReduction, build_graph, greedy_maximal_matching, reduce_to_minimal
from .simplicial import SimplicialComplex, lcm_lattice, reduced_homology_ranks, restrict


@dataclass
class Violation:
    check: str
    detail: str

    def __str__(self) -> str:
        return f"{self.check}: {self.detail}"


@dataclass
class InvariantReport:
    violations: list[Violation] = dc_field(default_factory=list)
    checks_run: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, detail: str) -> None:
        self.violations.append(Violation(check, detail))


def random_ideal(rng: random.Random, max_gens: int = 6, max_vars: int = 5, max_exp: int = 3) -> MonomialIdeal:
    """A random minimal monomial ideal (at least one generator)."""
    while True:
        nvars = rng.randint(1, max_vars)
        count = rng.randint(1, max_gens)
        gens = []
        for _ in range(count):
            e = [rng.randint(0, max_exp) for _ in range(nvars)]
            if any(e):
                gens.append(Monomial(e))
        if gens:
            return minimalize(gens, [f"x{i + 1}" for i in range(nvars)])


def random_complex(rng: random.Random, n: int) -> SimplicialComplex:
    facets = []
    for _ in range(rng.randint(1, max(1, n))):
        facets.append([v for v in range(n) if rng.random() < 0.5])
    # every vertex appears so F_Δ has one cell per generator
    facets += [[v] for v in range(n)]
    return SimplicialComplex.from_facets(n, facets)


def _zero(x: ModuleElement) -> bool:
    return not x


def check_reduction(T: BasedComplex, R: MorseReduction, report: InvariantReport) -> None:
    """φ² = 0, φdφ = φ, p² = p, dφ + φd = 1 − p on every basis cell."""
    report.checks_run.append("homotopy identities")
    for c in T.cells:
        x = T.basis(c)
        ph = R.phi(x)
        if not _zero(R.phi(ph)):
            report.add("phi^2 = 0", f"fails on {T.render_cell(c)}")
        if R.phi(T.d(ph)) != ph:
            report.add("phi d phi = phi", f"fails on {T.render_cell(c)}")
        px = R.p(x)
        if R.p(px) != px:
            report.add("p^2 = p", f"fails on {T.render_cell(c)}")
        if x - px != T.d(ph) + R.phi(T.d(x)):
            report.add("1 - p = d phi + phi d", f"fails on {T.render_cell(c)}")
    K = R.morse_complex
    report.checks_run.append("morse d^2")
    for c in K.cells:
        if K.d(K.d_cell(c)):
            report.add("tilde d^2 = 0", f"fails on {K.render_cell(c)}")


def check_transfer(transfer: MerkulovTransfer, report: InvariantReport, max_arity: int = 3, sample: int | None = None, rng: random.Random | None = None) -> None:
    """Multidegree divisibility, the cl bound, and Stasheff identities up to max_arity."""
    T = transfer.T
    ideal = T.ideal
    cells = transfer.critical
    tuples = [t for n in range(1, max_arity + 1) for t in cartesian(cells, repeat=n)]
    if sample is not None and len(tuples) > sample:
        tuples = (rng or random.Random(0)).sample(tuples, sample)
    report.checks_run.append("transfer divisibility / cl / Stasheff")
    for tup in tuples:
        if len(tup) >= 2:
            bound = T.one
            for c in tup:
                bound = bound.lcm(T.multidegree(c))
            for name, val in (("lambda", transfer.lambda_n(tup)), ("mu", transfer.mu_n(tup)), ("nu", transfer.nu_n(tup))):
                for (cell, mono), _ in val.terms.items():
                    if not T.multidegree(cell).divides(bound):
                        report.add(f"{name}_n divisibility", f"{[T.render_cell(c) for c in tup]} -> {T.render_cell(cell)}")
            coprime = all(
                T.multidegree(a).is_coprime(T.multidegree(b)) for i, a in enumerate(tup) for b in tup[i + 1:]
            ) and all(tup)
            if coprime:
                for cell, _, _ in transfer.lambda_n(tup).items():
                    if cell and cl(ideal, cell) < 2:
                        report.add("cl >= 2 on coprime inputs", f"{[T.render_cell(c) for c in tup]} -> {T.render_cell(cell)}")
        res = stasheff_residue(transfer, tup)
        if res:
            report.add("Stasheff", f"arity {len(tup)} on {[T.render_cell(c) for c in tup]}: {T.render(res)}")


def check_strands(delta: SimplicialComplex, ideal: MonomialIdeal, report: InvariantReport, field: Field = QQ) -> None:
    """H_n of the multidegree-μ strand of F_Δ equals H̃_{n−1}(Δ_μ)."""
    from .complexes import degree_strand_ranks, simplicial_to_complex

    report.checks_run.append("strand exactness")
    F = simplicial_to_complex(delta, ideal, field)
    for mu in lcm_lattice(ideal):
        sub = restrict(delta, ideal, mu)
        h = reduced_homology_ranks(sub, field)
        expected = {k: r for k, r in enumerate(h) if r}  # index k is degree k − 1, i.e. strand degree k
        got = degree_strand_ranks(F, mu)
        if expected != got:
            report.add("strand exactness", f"multidegree {mu.render(ideal.variables)}: strand {got} vs reduced homology {expected}")


def check_ideal(ideal: MonomialIdeal, field: Field = QQ, strategies=("lex", "revlex", "random:1"), max_arity: int = 3, stasheff_sample: int | None = 400, seed: int = 0) -> InvariantReport:
    """Run the full invariant suite on one ideal."""
    report = InvariantReport()
    rng = random.Random(seed)
    T: TaylorComplex = taylor(ideal, field)  # asserts d² = 0
    report.checks_run.append("taylor d^2")
    ranks = tor_ranks(T)
    G = build_graph(T)
    product_verdicts = {}
    for s in strategies:
        M = greedy_maximal_matching(G, s)
        check_reduction(T, MorseReduction(T, M), report)
        R = reduce_to_minimal(T, s)
        if R.target.ranks() != ranks and not (R.target.ranks() == () and ranks == (1,)):
            report.add("matching independence", f"{s}: {R.target.ranks()} vs Tor {ranks}")
        tr = MerkulovTransfer(R)
        product_verdicts[s] = is_minimal_map(tr, 2).minimal
        if s == strategies[0]:
            check_transfer(tr, report, max_arity, stasheff_sample, rng)
    if len(set(product_verdicts.values())) > 1:
        report.add("product verdict independence", str(product_verdicts))
    return report


def verify_random(count: int, seed: int, **kw) -> tuple[int, MonomialIdeal | None, InvariantReport | None]:
    """Check `count` random ideals; stop at the first failure and return it."""
    rng = random.Random(seed)
    for i in range(count):
        ideal = random_ideal(rng)
        rep = check_ideal(ideal, seed=seed, **kw)
        if not rep.ok:
            return i, ideal, rep
        delta = random_complex(rng, ideal.r)
        srep = InvariantReport()
        check_strands(delta, ideal, srep)
        if not srep.ok:
            return i, ideal, srep
    return count, None, None
