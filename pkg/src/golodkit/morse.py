"""Algebraic discrete Morse theory on based complexes.

Morse graphs, matchings and their validation, two ways of building
matchings on a Taylor resolution, the splitting homotopy φ, the
projections p and q, and the Morse complex itself.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .complexes import BasedComplex, ModuleElement, is_minimal, taylor
from .core import GolodkitError, MonomialIdeal, QQ, Field, bits, cell_key, cl, mask_of, render_cell


class MatchingError(GolodkitError):
    pass


@dataclass
class MorseGraph:
    """G_F: an edge src → tgt for every nonzero component of d(src)."""

    complex: BasedComplex
    edges: dict[int, dict[int, dict]]
    invertible: dict[tuple[int, int], object]

    @property
    def vertices(self) -> list[int]:
        return self.complex.cells

    def has_edge(self, src: int, tgt: int) -> bool:
        return tgt in self.edges.get(src, {})

    def edge_list(self) -> list[tuple[int, int]]:
        return [(s, t) for s in self.complex.cells for t in sorted(self.edges.get(s, {}), key=cell_key)]


def build_graph(F: BasedComplex) -> MorseGraph:
    edges: dict[int, dict[int, dict]] = {}
    invertible: dict[tuple[int, int], object] = {}
    for src, tgt, poly in F.components():
        edges.setdefault(src, {})[tgt] = poly
        if len(poly) == 1:
            (mono, c), = poly.items()
            if mono.is_one():
                invertible[(src, tgt)] = c
    return MorseGraph(F, edges, invertible)


@dataclass
class Matching:
    """A set of arrows src → tgt (|src| = |tgt| + 1), optionally tagged with stages.

    ``stages`` maps an arrow's source to the stage index it was created in.
    """

    arrows: dict[int, int] = dc_field(default_factory=dict)
    stages: dict[int, int] = dc_field(default_factory=dict)
    note: str = ""

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], stages: Iterable[int] | None = None) -> "Matching":
        arrows = {}
        stage_map = {}
        stage_list = list(stages) if stages is not None else None
        for k, (src, tgt) in enumerate(pairs):
            s = src if isinstance(src, int) else mask_of(src)
            t = tgt if isinstance(tgt, int) else mask_of(tgt)
            if s in arrows:
                raise MatchingError(f"cell {render_cell(s)} is the source of two arrows")
            arrows[s] = t
            if stage_list is not None:
                stage_map[s] = stage_list[k]
        return cls(arrows, stage_map)

    def __len__(self) -> int:
        return len(self.arrows)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.arrows.items(), key=lambda a: (cell_key(a[0]), cell_key(a[1])))

    @property
    def upper(self) -> set[int]:
        """M⁺: sources of arrows."""
        return set(self.arrows)

    @property
    def lower(self) -> dict[int, int]:
        """M⁻: target → source."""
        return {t: s for s, t in self.arrows.items()}

    def matched(self) -> set[int]:
        return set(self.arrows) | set(self.arrows.values())

    def critical(self, cells: Iterable[int]) -> list[int]:
        m = self.matched()
        return sorted((c for c in cells if c not in m), key=cell_key)

    def restricted_to_stages(self, stages: Iterable[int]) -> "Matching":
        keep = set(stages)
        arrows = {s: t for s, t in self.arrows.items() if self.stages.get(s) in keep}
        return Matching(arrows, {s: self.stages[s] for s in arrows})

    def to_json(self, ideal: MonomialIdeal | None = None, cells: Iterable[int] | None = None) -> dict:
        out: dict = {"schema": "golodkit/matching/v1"}
        if ideal is not None:
            out["ideal"] = ideal.to_json()
        out["arrows"] = [
            {"source": [i + 1 for i in bits(s)], "target": [i + 1 for i in bits(t)], "stage": self.stages.get(s)}
            for s, t in self.pairs()
        ]
        if cells is not None:
            crit = self.critical(cells)
            out["critical"] = [[i + 1 for i in bits(c)] for c in crit]
            counts: dict[int, int] = {}
            for c in crit:
                counts[c.bit_count()] = counts.get(c.bit_count(), 0) + 1
            out["critical_ranks"] = [counts.get(n, 0) for n in range(max(counts, default=-1) + 1)]
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Matching":
        pairs = []
        stages = []
        for a in data["arrows"]:
            pairs.append(([i - 1 for i in a["source"]], [i - 1 for i in a["target"]]))
            stages.append(a.get("stage"))
        m = cls.from_pairs(pairs)
        m.stages = {mask_of(s): st for (s, _), st in zip(pairs, stages) if st is not None}
        return m


# ---------------------------------------------------------------------------
# acyclicity


def _reversed_graph(G: MorseGraph, M: Matching) -> dict[int, list[int]]:
    """Adjacency of G^M: matched arrows reversed, every other edge kept."""
    adj: dict[int, list[int]] = {c: [] for c in G.complex.cells}
    for src, targets in G.edges.items():
        for tgt in targets:
            if M.arrows.get(src) == tgt:
                adj[tgt].append(src)
            else:
                adj[src].append(tgt)
    return adj


def find_cycle(adj: dict[int, list[int]]) -> list[int] | None:
    """A directed cycle (as a vertex list) or None; iterative three-colour DFS."""
    colour: dict[int, int] = {}
    for root in sorted(adj, key=cell_key):
        if colour.get(root):
            continue
        stack = [(root, iter(adj[root]))]
        path = [root]
        colour[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                colour[node] = 2
                continue
            state = colour.get(nxt, 0)
            if state == 1:
                return path[path.index(nxt):] + [nxt]
            if state == 0:
                colour[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(adj.get(nxt, ()))))
    return None


@dataclass
class MatchingVerdict:
    ok: bool
    reason: str = ""
    certificate: list = dc_field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_matching(G: MorseGraph, M: Matching) -> MatchingVerdict:
    """Check edges, invertibility, incidence and acyclicity of G^M."""
    seen: dict[int, tuple[int, int]] = {}
    for src, tgt in M.pairs():
        if not G.has_edge(src, tgt):
            return MatchingVerdict(False, "not an edge", [src, tgt])
        if (src, tgt) not in G.invertible:
            return MatchingVerdict(False, "not invertible", [src, tgt])
        for cell in (src, tgt):
            if cell in seen:
                return MatchingVerdict(False, "incidence", [seen[cell], (src, tgt)])
            seen[cell] = (src, tgt)
    cycle = find_cycle(_reversed_graph(G, M))
    if cycle:
        return MatchingVerdict(False, "cycle", cycle)
    return MatchingVerdict(True)


class DynamicOrder:
    """Topological order of a DAG kept valid under edge insertions (Pearce–Kelly).

    Insertions that would close a cycle are refused and leave the graph
    unchanged.
    """

    def __init__(self, nodes: list[int], adj: dict[int, set[int]]):
        self.out = {n: set(adj.get(n, ())) for n in nodes}
        self.inc: dict[int, set[int]] = {n: set() for n in nodes}
        for a, bs in self.out.items():
            for b in bs:
                self.inc[b].add(a)
        self.ord = {n: i for i, n in enumerate(nodes)}

    def remove_edge(self, a: int, b: int) -> None:
        self.out[a].discard(b)
        self.inc[b].discard(a)

    def add_edge(self, a: int, b: int) -> bool:
        ord_ = self.ord
        lb, ub = ord_[b], ord_[a]
        if lb > ub:
            self.out[a].add(b)
            self.inc[b].add(a)
            return True
        forward = []
        seen = {b}
        stack = [b]
        while stack:
            n = stack.pop()
            forward.append(n)
            for w in self.out[n]:
                if w == a:
                    return False
                if w not in seen and ord_[w] < ub:
                    seen.add(w)
                    stack.append(w)
        backward = []
        seen = {a}
        stack = [a]
        while stack:
            n = stack.pop()
            backward.append(n)
            for w in self.inc[n]:
                if w not in seen and ord_[w] > lb:
                    seen.add(w)
                    stack.append(w)
        backward.sort(key=ord_.__getitem__)
        forward.sort(key=ord_.__getitem__)
        slots = sorted(ord_[n] for n in backward + forward)
        for n, slot in zip(backward + forward, slots):
            ord_[n] = slot
        self.out[a].add(b)
        self.inc[b].add(a)
        return True


class _MatchingBuilder:
    """Shared state for constructing matchings: G^M with a dynamic order."""

    def __init__(self, G: MorseGraph):
        self.G = G
        cells = sorted(G.complex.cells, key=lambda c: (-c.bit_count(), cell_key(c)))
        adj = {s: set(t) for s, t in G.edges.items()}
        self.order = DynamicOrder(cells, adj)
        self.arrows: dict[int, int] = {}
        self.stages: dict[int, int] = {}
        self.matched: set[int] = set()

    def try_add(self, src: int, tgt: int, stage: int | None = None) -> bool:
        if src in self.matched or tgt in self.matched or (src, tgt) not in self.G.invertible:
            return False
        self.order.remove_edge(src, tgt)
        if not self.order.add_edge(tgt, src):
            self.order.out[src].add(tgt)
            self.order.inc[tgt].add(src)
            return False
        self.arrows[src] = tgt
        self.matched.update((src, tgt))
        if stage is not None:
            self.stages[src] = stage
        return True

    def extend_greedily(self, candidates: list[tuple[int, int]]) -> int:
        """Repeat passes over candidates until none can be added."""
        added = 0
        changed = True
        while changed:
            changed = False
            for src, tgt in candidates:
                if self.try_add(src, tgt):
                    added += 1
                    changed = True
        return added

    def matching(self, note: str = "") -> Matching:
        return Matching(dict(self.arrows), dict(self.stages), note)


def _ordered_candidates(G: MorseGraph, strategy: str) -> list[tuple[int, int]]:
    cands = sorted(G.invertible, key=lambda e: (cell_key(e[0]), cell_key(e[1])))
    if strategy == "lex":
        return cands
    if strategy == "revlex":
        return cands[::-1]
    if strategy.startswith("random:"):
        rng = random.Random(int(strategy.split(":", 1)[1]))
        rng.shuffle(cands)
        return cands
    raise ValueError(f"unknown strategy {strategy!r} (lex, revlex, random:<seed>)")


def greedy_maximal_matching(G: MorseGraph, strategy: str = "lex") -> Matching:
    """A maximal Morse matching: no further invertible edge can be added."""
    builder = _MatchingBuilder(G)
    builder.extend_greedily(_ordered_candidates(G, strategy))
    return builder.matching(f"greedy {strategy}")


def is_maximal(G: MorseGraph, M: Matching) -> bool:
    builder = _MatchingBuilder(G)
    for s, t in M.pairs():
        if not builder.try_add(s, t):
            raise MatchingError(f"not a Morse matching at {render_cell(s)} -> {render_cell(t)}")
    return not any(builder.try_add(s, t) for s, t in sorted(G.invertible))


# ---------------------------------------------------------------------------
# staged construction


@dataclass
class StagedReport:
    """Outcome of the staged construction.

    ``matching`` is the union of all arrows with their stage labels;
    ``reduction`` maps the Taylor complex onto the final Morse complex.
    """

    matching: Matching
    reduction: object
    stages_run: int
    substages: int
    minimal: bool
    union_is_morse_matching: bool
    note: str = ""

    @property
    def stalled(self) -> bool:
        return not self.minimal


def _admissible_base_arrows(ideal: MonomialIdeal, G: MorseGraph, stage: int) -> list[tuple[int, int]]:
    """Invertible edges u → v with cl(u) = 1 and cl(v) = stage, smallest source first."""
    out = [(u, v) for (u, v) in G.invertible if cl(ideal, u) == 1 and cl(ideal, v) == stage]
    out.sort(key=lambda e: (e[0].bit_count(), cell_key(e[0]), cell_key(e[1])))
    return out


def coprime_extensions(ideal: MonomialIdeal, u: int, v: int) -> list[tuple[int, int]]:
    """All uw → vw with w ≠ ∅ disjoint from u and gcd(m_w, m_u) = 1."""
    r = ideal.r
    m_u = ideal.multidegree(u)
    free = [i for i in range(r) if not (u >> i) & 1 and ideal.generators[i].is_coprime(m_u)]
    out = []
    for k in range(1, 1 << len(free)):
        w = mask_of(free[j] for j in range(len(free)) if (k >> j) & 1)
        out.append((u | w, v | w))
    return out


def jollenbeck_matching(
    ideal: MonomialIdeal, field: Field = QQ, max_stages: int | None = None, check: bool = True
) -> StagedReport:
    """Staged construction on successive Morse complexes.

    Stage i repeatedly takes the first admissible arrow u → v of the current
    complex with cl(u) = 1 and cl(v) = i (smallest source first, so no
    proper sub-arrow precedes it), matches it together with every coprime
    extension uw → vw that is still an invertible edge and keeps the
    matching acyclic, and passes to the Morse complex.  Stages run up to
    ``max_stages`` (default r); the report says whether the final complex is
    minimal.
    """
    T = taylor(ideal, field, check=check)
    K = T
    rounds: list[MorseReduction] = []
    arrows: dict[int, int] = {}
    stages: dict[int, int] = {}
    cap = max_stages if max_stages is not None else max(ideal.r, 1)
    stage = 0
    for stage in range(1, cap + 1):
        while True:
            G = build_graph(K)
            base = _admissible_base_arrows(ideal, G, stage)
            if not base:
                break
            u, v = base[0]
            builder = _MatchingBuilder(G)
            builder.try_add(u, v, stage)
            for uw, vw in coprime_extensions(ideal, u, v):
                builder.try_add(uw, vw, stage)
            M = builder.matching(f"stage {stage}")
            R = MorseReduction(K, M, validate=False, check=check)
            rounds.append(R)
            arrows.update(M.arrows)
            stages.update(M.stages)
            K = R.morse_complex
    if not rounds:
        rounds.append(MorseReduction(T, Matching(), validate=False, check=check))
    union = Matching(arrows, stages, "jollenbeck")
    minimal = bool(is_minimal(K))
    union_ok = bool(validate_matching(build_graph(T), union))
    note = "" if minimal else "construction stalled before reaching a minimal complex"
    return StagedReport(union, compose(rounds), stage, len(rounds), minimal, union_ok, note)


# ---------------------------------------------------------------------------
# splitting homotopy and Morse complex


class MorseReduction:
    """φ, p, q and the Morse complex for a based complex with a Morse matching."""

    def __init__(self, F: BasedComplex, M: Matching, validate: bool = True, check: bool = True):
        self.F = F
        self.matching = M
        self.field = F.field
        if validate:
            verdict = validate_matching(build_graph(F), M)
            if not verdict:
                raise MatchingError(f"invalid matching ({verdict.reason}): {verdict.certificate}")
        self._lower = M.lower
        self.critical = M.critical(F.cells)
        self.critical_set = frozenset(self.critical)
        self._phi: dict[int, ModuleElement] = {}
        self._check = check
        self._morse: BasedComplex | None = None

    # φ on basis cells, memoized, evaluated without recursion
    def phi_cell(self, cell: int) -> ModuleElement:
        memo = self._phi
        if cell in memo:
            return memo[cell]
        lower = self._lower
        if cell not in lower:
            return ModuleElement(self.field)
        F = self.F
        stack = [cell]
        while stack:
            a = stack[-1]
            if a in memo:
                stack.pop()
                continue
            beta = lower[a]
            d_beta = F.d_cell(beta)
            pending = [g for g, _ in d_beta.terms if g != a and g in lower and g not in memo]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            c = d_beta.coefficient(a, F.one)
            inv = self.field.inv(c)
            val = ModuleElement.basis(self.field, beta, F.one, inv)
            for (g, mono), coeff in d_beta.terms.items():
                if g == a or g not in lower:
                    continue
                val.iadd(memo[g], -coeff * inv, mono)
            memo[a] = val
        return memo[cell]

    def phi(self, x: ModuleElement) -> ModuleElement:
        out = ModuleElement(self.field)
        for (cell, mono), c in x.terms.items():
            if cell in self._lower:
                out.iadd(self.phi_cell(cell), c, mono)
        return out

    def d(self, x: ModuleElement) -> ModuleElement:
        return self.F.d(x)

    def p(self, x: ModuleElement) -> ModuleElement:
        """p = 1 − dφ − φd."""
        out = x.copy()
        out.iadd(self.F.d(self.phi(x)), -1)
        out.iadd(self.phi(self.F.d(x)), -1)
        return out

    def q(self, x: ModuleElement) -> ModuleElement:
        """Projection onto critical cells."""
        out = ModuleElement(self.field)
        out.terms = {k: c for k, c in x.terms.items() if k[0] in self.critical_set}
        return out

    def include(self, cell: int) -> ModuleElement:
        """j: a critical cell mapped into F, c ↦ p(c) = c − φ(dc)."""
        return self.p(self.F.basis(cell))

    def morse_differential(self, cell: int) -> ModuleElement:
        dc = self.F.d_cell(cell)
        return self.q(dc - self.F.d(self.phi(dc)))

    @property
    def morse_complex(self) -> BasedComplex:
        if self._morse is None:
            diff = {c: self.morse_differential(c) for c in self.critical if c}
            self._morse = BasedComplex(
                self.F.ideal, self.field, self.critical, diff, check=self._check, name="morse", lcm_table=self.F._lcm
            )
        return self._morse

    # deformation-retract data F ⇄ K with g∘f − 1 = d h + h d
    @property
    def source(self) -> BasedComplex:
        return self.F

    @property
    def target(self) -> BasedComplex:
        return self.morse_complex

    @property
    def matchings(self) -> list[Matching]:
        return [self.matching]

    def f(self, x: ModuleElement) -> ModuleElement:
        """F → K: q(x − dφx), which equals q∘p."""
        return self.q(x - self.F.d(self.phi(x)))

    def g(self, x: ModuleElement) -> ModuleElement:
        """K → F: x − φ(dx), which equals p on critical cells."""
        return x - self.phi(self.F.d(x))

    def h(self, x: ModuleElement) -> ModuleElement:
        return self.phi(x).scaled(-1)


class ComposedReduction:
    """Two deformation retracts F → K₁ → K₂ composed into one F → K₂.

    f = f₂f₁, g = g₁g₂ and h = h₁ + g₁h₂f₁.
    """

    def __init__(self, first, second):
        if second.source is not first.target:
            raise ValueError("second reduction must start where the first ends")
        self.first = first
        self.second = second
        self.field = first.field

    @property
    def source(self) -> BasedComplex:
        return self.first.source

    @property
    def target(self) -> BasedComplex:
        return self.second.target

    @property
    def matchings(self) -> list[Matching]:
        return self.first.matchings + self.second.matchings

    @property
    def critical(self) -> list[int]:
        return self.target.cells

    def f(self, x: ModuleElement) -> ModuleElement:
        return self.second.f(self.first.f(x))

    def g(self, x: ModuleElement) -> ModuleElement:
        return self.first.g(self.second.g(x))

    def h(self, x: ModuleElement) -> ModuleElement:
        out = self.first.h(x)
        inner = self.second.h(self.first.f(x))
        if inner:
            out.iadd(self.first.g(inner))
        return out


def compose(reductions: list):
    out = reductions[0]
    for nxt in reductions[1:]:
        out = ComposedReduction(out, nxt)
    return out


def reduce_to_minimal(F: BasedComplex, strategy: str = "lex", max_rounds: int = 64, check: bool = True):
    """Match greedily, pass to the Morse complex, and repeat until it is minimal.

    A maximal matching on G_F can leave unit components in the Morse
    differential that are not edges of G_F; a further round matches those.
    """
    rounds = []
    K = F
    for _ in range(max_rounds):
        G = build_graph(K)
        if not G.invertible:
            break
        M = greedy_maximal_matching(G, strategy)
        M.note = f"greedy {strategy}, round {len(rounds) + 1}"
        R = MorseReduction(K, M, validate=False, check=check)
        rounds.append(R)
        K = R.morse_complex
    else:
        raise MatchingError("reduction did not reach a minimal complex")
    if not rounds:
        rounds.append(MorseReduction(F, Matching(note=f"greedy {strategy}"), validate=False, check=check))
    return compose(rounds)


def morse_complex(F: BasedComplex, M: Matching, check: bool = True) -> BasedComplex:
    return MorseReduction(F, M, check=check).morse_complex


def critical_ranks(M: Matching, cells: Iterable[int]) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for c in M.critical(cells):
        counts[c.bit_count()] = counts.get(c.bit_count(), 0) + 1
    return tuple(counts.get(n, 0) for n in range(max(counts, default=-1) + 1))


# ---------------------------------------------------------------------------
# standard matchings


@dataclass
class StandardVerdict:
    ok: bool
    clause: int | None = None
    detail: str = ""
    witness: list = dc_field(default_factory=list)
    clauses_passed: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_standard_matching(T: BasedComplex, M: Matching, stop_at_first: bool = True) -> StandardVerdict:
    """Check the five standard-matching clauses on a staged matching of a Taylor complex.

    Clause 4 is read as cl(v) − cl(u) = i − 1 (base arrows have cl(u) = 1,
    cl(v) = i).  Clause 5 is decided exactly: the largest admissible B_i
    is every arrow of M_i with cl(u) = 1, cl(v) = i all of whose coprime
    extensions lie in M_i, and M_i must be covered by B_i and its extensions.
    """
    ideal = T.ideal
    passed: list[int] = []
    failure: StandardVerdict | None = None

    def fail(clause, detail, witness):
        nonlocal failure
        if failure is None:
            failure = StandardVerdict(False, clause, detail, witness)

    # (1)
    bad = [(u, v) for u, v in M.pairs() if T.multidegree(u) != T.multidegree(v)]
    if bad:
        fail(1, "arrow with m_u != m_v", bad[:1])
    else:
        passed.append(1)
    if failure is not None and stop_at_first:
        return failure
    # (2)
    red = MorseReduction(T, M, validate=True, check=False)
    mv = is_minimal(red.morse_complex)
    if not mv:
        s, t, _ = mv.offenders[0]
        fail(2, "Morse complex has an edge with m_u = m_v", [(s, t)])
    else:
        passed.append(2)
    if failure is not None and stop_at_first:
        return failure
    stages = sorted({M.stages.get(s) for s in M.arrows}, key=lambda x: (x is None, x))
    if None in stages:
        fail(3, "arrow without stage annotation", [s for s in M.arrows if s not in M.stages][:1])
        return failure
    # (3) each stage is a Morse matching on the Morse complex of the earlier ones
    ok3 = True
    for i in stages:
        earlier = M.restricted_to_stages(s for s in stages if s < i)
        current = M.restricted_to_stages([i])
        K = MorseReduction(T, earlier, validate=True, check=False).morse_complex
        verdict = validate_matching(build_graph(K), current)
        if not verdict:
            fail(3, f"stage {i} is not a Morse matching on the previous Morse complex ({verdict.reason})", verdict.certificate)
            ok3 = False
            break
    if ok3:
        passed.append(3)
    if failure is not None and stop_at_first:
        return failure
    # (4)
    ok4 = True
    for u, v in M.pairs():
        i = M.stages[u]
        if cl(ideal, v) - cl(ideal, u) != i - 1 or v.bit_count() + 1 != u.bit_count():
            fail(4, f"arrow in stage {i} violates the cl / cardinality condition", [(u, v)])
            ok4 = False
            break
    if ok4:
        passed.append(4)
    if failure is not None and stop_at_first:
        return failure
    # (5)
    ok5 = True
    for i in stages:
        Mi = {(u, v) for u, v in M.arrows.items() if M.stages[u] == i}
        B = [
            (u, v)
            for u, v in Mi
            if cl(ideal, u) == 1 and cl(ideal, v) == i and all(e in Mi for e in coprime_extensions(ideal, u, v))
        ]
        covered = set(B)
        for u, v in B:
            covered.update(coprime_extensions(ideal, u, v))
        missing = sorted(Mi - covered, key=lambda e: cell_key(e[0]))
        if missing:
            fail(5, f"stage {i} is not generated by base arrows with cl(u) = 1, cl(v) = {i}", missing[:1])
            ok5 = False
            break
    if ok5:
        passed.append(5)
    if failure is not None:
        failure.clauses_passed = tuple(passed)
        return failure
    return StandardVerdict(True, clauses_passed=tuple(passed))


# ---------------------------------------------------------------------------
# DOT export


def export_dot(G: MorseGraph, M: Matching | None = None, name: str = "G_T") -> str:
    """Graphviz digraph of G with matched arrows drawn bold red."""
    M = M or Matching()
    r = G.complex.ideal.r
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    by_deg: dict[int, list[int]] = {}
    for c in G.complex.cells:
        by_deg.setdefault(c.bit_count(), []).append(c)
    for deg in sorted(by_deg):
        names = " ".join(f'"{render_cell(c, r)}";' for c in by_deg[deg])
        lines.append(f"  {{ rank=same; {names} }}")
    for src, tgt in G.edge_list():
        attrs = []
        if M.arrows.get(src) == tgt:
            attrs.append('color=red, penwidth=2.0')
            if src in M.stages:
                attrs.append(f'label="{M.stages[src]}"')
        elif (src, tgt) not in G.invertible:
            attrs.append("color=gray60")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{render_cell(src, r)}" -> "{render_cell(tgt, r)}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"
