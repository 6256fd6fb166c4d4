"""Transferred A∞-structures on a Morse reduction of the Taylor resolution.

The Taylor product λ₂ is pushed along the homotopy h of a deformation
retract T ⇄ K (g∘f − 1 = dh + hd; h = −φ for a single matching) to the
auxiliary maps λₙ.  μₙ = p∘λₙ on im(p) with p = g∘f, and νₙ = f∘λₙ∘g^{⊗n}
on the Morse complex K.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as cartesian
from typing import Iterable, Sequence

from .complexes import ModuleElement, TaylorComplex
from .core import Monomial, cell_key, render_cell


class MerkulovTransfer:
    """λₙ, μₙ and νₙ for a Taylor complex with a Morse matching.

    Tuples of critical cells are the natural inputs: a critical cell c
    stands for the basis element p(c) of im(p).  Results are memoized per
    tuple so sub-tuples are shared across a table.
    """

    def __init__(self, reduction):
        if not isinstance(reduction.source, TaylorComplex):
            raise TypeError("the transfer needs the Taylor product")
        self.reduction = reduction
        self.T: TaylorComplex = reduction.source
        self.K = reduction.target
        self.critical_set = frozenset(self.K.cells)
        self.field = reduction.field
        self._embedded: dict[int, ModuleElement] = {}
        self._lam: dict[tuple[int, ...], ModuleElement] = {}
        self._h_lam: dict[tuple[int, ...], ModuleElement] = {}
        self._mu: dict[tuple[int, ...], ModuleElement] = {}

    @property
    def critical(self) -> list[int]:
        return self.K.cells

    def embed(self, cell: int) -> ModuleElement:
        """g(c): the basis element of im(p) attached to a critical cell c."""
        x = self._embedded.get(cell)
        if x is None:
            x = self._embedded[cell] = self.reduction.g(self.T.basis(cell))
        return x

    def project(self, x: ModuleElement) -> ModuleElement:
        """p = g∘f, the idempotent onto im(p)."""
        return self.reduction.g(self.reduction.f(x))

    def q(self, x: ModuleElement) -> ModuleElement:
        """Plain projection onto the critical cells."""
        out = ModuleElement(self.field)
        out.terms = {k: c for k, c in x.terms.items() if k[0] in self.critical_set}
        return out

    # -- generic recursion on elements --------------------------------------
    def lambda_elements(self, inputs: Sequence[ModuleElement], degrees: Sequence[int] | None = None) -> ModuleElement:
        """λₙ on arbitrary homogeneous elements of T (degrees inferred if omitted)."""
        xs = list(inputs)
        if degrees is None:
            degrees = [_degree_of(x) for x in xs]
        memo: dict[tuple[int, int], ModuleElement] = {}

        def lam(i: int, j: int) -> ModuleElement:
            if (i, j) not in memo:
                memo[(i, j)] = self._combine(
                    hlam,
                    i,
                    j,
                    degrees,
                )
            return memo[(i, j)]

        def hlam(i: int, j: int) -> ModuleElement:
            if j - i == 1:
                return xs[i]
            return self.reduction.h(lam(i, j))

        if len(xs) < 2:
            raise ValueError("λₙ needs n ≥ 2")
        return lam(0, len(xs))

    def _combine(self, hlam, i: int, j: int, degrees: Sequence[int]) -> ModuleElement:
        """Σ_{s+t=n} (−1)^{s+1} (−1)^{(t−1)(|a_i|+…+|a_{i+s−1}|)} λ₂(hλ_s, hλ_t)."""
        out = ModuleElement(self.field)
        n = j - i
        left_deg = 0
        for s in range(1, n):
            t = n - s
            left_deg += degrees[i + s - 1]
            left = hlam(i, i + s)
            if not left:
                continue
            right = hlam(i + s, j)
            if not right:
                continue
            sign = -1 if (s + 1 + (t - 1) * left_deg) % 2 else 1
            out.iadd(self.T.multiply(left, right), sign)
        return out

    # -- memoized versions keyed by critical-cell tuples -----------------------
    def lambda_n(self, cells: Sequence[int]) -> ModuleElement:
        """λₙ(p c₁, …, p cₙ)."""
        key = tuple(cells)
        val = self._lam.get(key)
        if val is None:
            if len(key) < 2:
                raise ValueError("λₙ needs n ≥ 2")
            degrees = [c.bit_count() for c in key]
            val = self._combine(lambda a, b: self._hlambda(key[a:b]), 0, len(key), degrees)
            self._lam[key] = val
        return val

    def _hlambda(self, key: tuple[int, ...]) -> ModuleElement:
        if len(key) == 1:
            return self.embed(key[0])
        val = self._h_lam.get(key)
        if val is None:
            val = self._h_lam[key] = self.reduction.h(self.lambda_n(key))
        return val

    def mu_n(self, cells: Sequence[int]) -> ModuleElement:
        """μₙ(p c₁, …, p cₙ) = p λₙ as an element of T (n = 1 gives d p(c))."""
        key = tuple(cells)
        val = self._mu.get(key)
        if val is None:
            if len(key) == 1:
                val = self.T.d(self.embed(key[0]))
            else:
                val = self.project(self.lambda_n(key))
            self._mu[key] = val
        return val

    def nu_n(self, cells: Sequence[int]) -> ModuleElement:
        """νₙ on the Morse complex: f λₙ(g c₁, …, g cₙ) (f∘p = f)."""
        if len(cells) == 1:
            return self.K.d_cell(cells[0])
        return self.reduction.f(self.lambda_n(cells))

    def nu_n_short(self, cells: Sequence[int]) -> ModuleElement:
        """p λₙ(c₁, …, cₙ) on the raw cells.

        When the critical cells are downward closed, p fixes every critical
        cell, so this equals νₙ.  Dropping p (plain q λₙ) is not enough:
        a non-critical term of λₙ can still reach critical cells through dφ.
        """
        xs = [self.T.basis(c) for c in cells]
        return self.project(self.lambda_elements(xs, [c.bit_count() for c in cells]))

    # -- predicates ------------------------------------------------------------
    def critical_downward_closed(self) -> bool:
        crit = self.critical_set
        return all(c ^ (1 << i) in crit for c in crit for i in range(self.T.ideal.r) if (c >> i) & 1)

    def _unit_targets(self) -> dict[int, set[Monomial]]:
        if not hasattr(self, "_targets"):
            targets: dict[int, set[Monomial]] = {}
            for c in self.critical:
                targets.setdefault(c.bit_count(), set()).add(self.T.multidegree(c))
            self._targets = targets
            self._all_targets = [m for ms in targets.values() for m in ms]
        return self._targets

    def unit_possible(self, cells: Sequence[int]) -> bool:
        """Whether νₙ(cells) could have a unit coefficient at all.

        λₙ(c₁..cₙ) is homogeneous of multidegree ∏ m_{cᵢ}; a unit term needs a
        critical cell of that multidegree in degree Σ|cᵢ| + n − 2.
        """
        mu = self.T.one
        for c in cells:
            mu = mu * self.T.multidegree(c)
        target = sum(c.bit_count() for c in cells) + len(cells) - 2
        return mu in self._unit_targets().get(target, ())

    def candidate_tuples(self, arity: int, cells: Sequence[int]):
        """Tuples whose output could carry a unit, found by pruned search.

        A prefix survives only while its multidegree product divides the
        multidegree of some critical cell.
        """
        self._unit_targets()
        targets = self._all_targets
        mdeg = self.T.multidegree

        def extend(prefix, mu):
            if len(prefix) == arity:
                if self.unit_possible(prefix):
                    yield prefix
                return
            for c in cells:
                nxt = mu * mdeg(c)
                if any(nxt.divides(t) for t in targets):
                    yield from extend(prefix + (c,), nxt)

        yield from extend((), self.T.one)


def _degree_of(x: ModuleElement) -> int:
    degs = x.degrees()
    if len(degs) > 1:
        raise ValueError("inputs must be homogeneous")
    return degs.pop() if degs else 0


@dataclass
class ArityVerdict:
    arity: int
    minimal: bool
    offender: tuple[int, ...] | None = None
    value: ModuleElement | None = None
    unit_cell: int | None = None
    tuples_checked: int = 0
    exhaustive: bool = True


def positive_critical(transfer: MerkulovTransfer) -> list[int]:
    return [c for c in transfer.critical if c]


def is_minimal_map(
    transfer: MerkulovTransfer,
    arity: int,
    inputs: Iterable[int] | None = None,
    use_nu: bool = True,
    all_offenders: bool = False,
):
    """Minimality of νₙ (or μₙ) on tuples of positive-degree critical cells.

    Tuples that cannot produce a unit coefficient by multidegree are skipped.
    Returns an ArityVerdict (or the list of all offenders if requested).
    """
    cells = list(inputs) if inputs is not None else positive_critical(transfer)
    offenders = []
    checked = 0
    for tup in transfer.candidate_tuples(arity, cells):
        checked += 1
        val = transfer.nu_n(tup) if use_nu else transfer.mu_n(tup)
        units = val.unit_terms()
        if units:
            if not all_offenders:
                return ArityVerdict(arity, False, tup, val, units[0][0], checked)
            offenders.append((tup, val, units[0][0]))
    if all_offenders:
        return offenders
    return ArityVerdict(arity, True, tuples_checked=checked)


# ---------------------------------------------------------------------------
# Stasheff identities on the Morse complex


@dataclass
class StasheffVerdict:
    ok: bool
    arity: int | None = None
    inputs: tuple[int, ...] | None = None
    residue: ModuleElement | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _apply_nu(transfer: MerkulovTransfer, u: int, prefix: tuple[int, ...], middle: ModuleElement, suffix: tuple[int, ...]) -> ModuleElement:
    out = ModuleElement(transfer.field)
    for (cell, mono), c in middle.terms.items():
        val = transfer.nu_n(prefix + (cell,) + suffix)
        if val:
            out.iadd(val, c, mono)
    return out


def stasheff_residue(transfer: MerkulovTransfer, cells: Sequence[int]) -> ModuleElement:
    """Σ_{r+s+t=n} (−1)^{r+st} ν_u(1^r ⊗ ν_s ⊗ 1^t) evaluated on (c₁, …, cₙ).

    Passing ν_s across the first r inputs costs (−1)^{(s−2)(|c₁|+…+|c_r|)}.
    """
    n = len(cells)
    tup = tuple(cells)
    out = ModuleElement(transfer.field)
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - r - s
            middle = transfer.nu_n(tup[r:r + s])
            if not middle:
                continue
            koszul = (s - 2) * sum(c.bit_count() for c in tup[:r])
            sign = -1 if (r + s * t + koszul) % 2 else 1
            if r + 1 + t == 1:
                val = transfer.K.d(middle)
            else:
                val = _apply_nu(transfer, r + 1 + t, tup[:r], middle, tup[r + s:])
            out.iadd(val, sign)
    return out


def verify_stasheff(
    transfer: MerkulovTransfer, max_arity: int = 3, tuples: Iterable[Sequence[int]] | None = None
) -> StasheffVerdict:
    """Exact check of the Stasheff identities for total arity 1..max_arity."""
    checked = 0
    if tuples is None:
        cells = transfer.critical
        tuples = (tup for n in range(1, max_arity + 1) for tup in cartesian(cells, repeat=n))
    for tup in tuples:
        checked += 1
        res = stasheff_residue(transfer, tup)
        if res:
            return StasheffVerdict(False, len(tup), tuple(tup), res, checked)
    return StasheffVerdict(True, checked=checked)


# ---------------------------------------------------------------------------
# materialized structure


@dataclass
class AInfStructure:
    """νₙ tables for 2 ≤ n ≤ max_arity with per-arity minimality flags."""

    transfer: MerkulovTransfer
    max_arity: int = 4
    tables: dict[int, dict[tuple[int, ...], ModuleElement]] = dc_field(default_factory=dict)
    verdicts: dict[int, ArityVerdict] = dc_field(default_factory=dict)

    def table(self, n: int, cells: Sequence[int] | None = None, use_nu: bool = False) -> dict[tuple[int, ...], ModuleElement]:
        """All entries of μₙ (or νₙ) on tuples of the given critical cells."""
        cells = list(cells) if cells is not None else positive_critical(self.transfer)
        f = self.transfer.nu_n if use_nu else self.transfer.mu_n
        tab = {tup: f(tup) for tup in cartesian(cells, repeat=n)}
        self.tables[n] = tab
        return tab

    def minimality(self) -> dict[int, ArityVerdict]:
        for n in range(2, self.max_arity + 1):
            if n not in self.verdicts:
                self.verdicts[n] = is_minimal_map(self.transfer, n)
        return self.verdicts

    def first_non_minimal(self) -> ArityVerdict | None:
        for n, v in sorted(self.minimality().items()):
            if not v.minimal:
                return v
        return None


def render_table(transfer: MerkulovTransfer, cells: Sequence[int] | None = None, upper: bool = True) -> list[list[str]]:
    """μ₂ as a grid of rendered elements (rows and columns = cells)."""
    cells = list(cells) if cells is not None else positive_critical(transfer)
    T = transfer.T
    r = T.ideal.r
    grid = [[""] + [render_cell(c, r) for c in cells]]
    for i, a in enumerate(cells):
        row = [render_cell(a, r)]
        for j, b in enumerate(cells):
            row.append("" if upper and j < i else T.render(transfer.mu_n((a, b))))
        grid.append(row)
    return grid


def sorted_cells(cells: Iterable[int]) -> list[int]:
    return sorted(cells, key=cell_key)
