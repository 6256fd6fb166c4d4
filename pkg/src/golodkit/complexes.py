"""Based complexes of free multigraded S-modules: F_Δ, the Taylor resolution and Tor."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator

from .core import (
    Field,
    GolodkitError,
    Monomial,
    MonomialIdeal,
    QQ,
    bits,
    cell_key,
    mask_of,
    render_cell,
)
from .linalg import rank
from .simplicial import SimplicialComplex


class ComplexError(GolodkitError):
    pass


Term = tuple[int, Monomial]


class ModuleElement:
    """A finite sum of (scalar × monomial) · cell, with no zero coefficients.

    Cells are bitmasks of generator indices; ``terms`` maps
    ``(cell, monomial)`` to a nonzero scalar of ``field``.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict[Term, object] | None = None):
        self.field = field
        self.terms: dict[Term, object] = {}
        if terms:
            for (cell, mono), c in terms.items():
                self.add_term(cell, mono, c)

    @classmethod
    def basis(cls, field: Field, cell: int, mono: Monomial, coeff=1) -> "ModuleElement":
        out = cls(field)
        out.add_term(cell, mono, coeff)
        return out

    def copy(self) -> "ModuleElement":
        out = ModuleElement(self.field)
        out.terms = dict(self.terms)
        return out

    def add_term(self, cell: int, mono: Monomial, coeff) -> None:
        key = (cell, mono)
        v = self.field(self.terms.get(key, 0) + coeff)
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def iadd(self, other: "ModuleElement", coeff=1, mono: Monomial | None = None) -> "ModuleElement":
        """In place: self += coeff · mono · other."""
        f = self.field
        terms = self.terms
        for (cell, m), c in other.terms.items():
            key = (cell, m if mono is None else m * mono)
            v = f(terms.get(key, 0) + c * coeff)
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        return self

    def scaled(self, coeff=1, mono: Monomial | None = None) -> "ModuleElement":
        return ModuleElement(self.field).iadd(self, coeff, mono)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return self.copy().iadd(other)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self.copy().iadd(other, -1)

    def __neg__(self) -> "ModuleElement":
        return self.scaled(-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, ModuleElement) and self.field == other.field and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> list[tuple[int, Monomial, object]]:
        """Terms in canonical order: cell, then monomials lexicographically (x1 first)."""
        keys = sorted(self.terms, key=lambda k: (cell_key(k[0]), tuple(-e for e in k[1])))
        return [(cell, mono, self.terms[(cell, mono)]) for cell, mono in keys]

    def __iter__(self) -> Iterator[tuple[int, Monomial, object]]:
        return iter(self.items())

    def support(self) -> list[int]:
        return sorted({cell for cell, _ in self.terms}, key=cell_key)

    def component(self, cell: int) -> dict[Monomial, object]:
        return {m: c for (x, m), c in self.terms.items() if x == cell}

    def coefficient(self, cell: int, mono: Monomial):
        return self.terms.get((cell, mono), 0)

    def unit_terms(self) -> list[tuple[int, object]]:
        """Cells carrying a constant (unit) coefficient, i.e. the part surviving ⊗ k."""
        return sorted(((cell, c) for (cell, m), c in self.terms.items() if m.is_one()), key=lambda t: cell_key(t[0]))

    def reduce_mod_maximal(self) -> "ModuleElement":
        out = ModuleElement(self.field)
        out.terms = {k: c for k, c in self.terms.items() if k[1].is_one()}
        return out

    def degrees(self) -> set[int]:
        return {cell.bit_count() for cell, _ in self.terms}

    def render(self, names=None, r: int | None = None) -> str:
        if not self.terms:
            return "0"
        char = self.field.characteristic
        out = []
        for i, (cell, mono, c) in enumerate(self.items()):
            neg = not char and c < 0
            mag = -c if neg else c
            factors = []
            if mag != 1:
                factors.append(str(mag))
            if not mono.is_one():
                factors.append(mono.render(names))
            factors.append(render_cell(cell, r))
            body = "*".join(factors)
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"ModuleElement({self.render()})"


def polynomial_to_json(poly: dict[Monomial, object]) -> list:
    return [[str(c), list(m)] for m, c in sorted(poly.items(), key=lambda t: tuple(-e for e in t[0]))]


def element_to_json(x: ModuleElement) -> list:
    return [[[i + 1 for i in bits(cell)], list(m), str(c)] for cell, m, c in x.items()]


def _scalar_from_str(s: str, field: Field):
    from fractions import Fraction

    return field(Fraction(s))


def element_from_json(data: list, field: Field) -> ModuleElement:
    out = ModuleElement(field)
    for cell, mono, c in data:
        out.add_term(mask_of(i - 1 for i in cell), Monomial(mono), _scalar_from_str(c, field))
    return out


class BasedComplex:
    """A complex of free multigraded modules with a chosen basis of cells.

    ``differential[cell]`` is d(cell).  Cells are bitmasks over the ideal's
    generators; the homological degree of a cell is its cardinality.
    """

    def __init__(
        self,
        ideal: MonomialIdeal,
        field: Field,
        cells: Iterable[int],
        differential: dict[int, ModuleElement],
        *,
        check: bool = True,
        name: str = "",
        lcm_table: list[Monomial] | None = None,
    ):
        self.ideal = ideal
        self.field = field
        self.name = name
        self.cells = sorted(set(cells), key=cell_key)
        self.cell_set = frozenset(self.cells)
        self.differential = differential
        self._lcm = lcm_table if lcm_table is not None else ideal.lcm_table()
        self._one = Monomial.one(ideal.nvars)
        if check:
            self.check()

    # -- structure ---------------------------------------------------------
    def multidegree(self, cell: int) -> Monomial:
        return self._lcm[cell]

    @property
    def one(self) -> Monomial:
        return self._one

    def basis(self, cell: int, coeff=1, mono: Monomial | None = None) -> ModuleElement:
        return ModuleElement.basis(self.field, cell, mono or self._one, coeff)

    def cells_in_degree(self, n: int) -> list[int]:
        return [c for c in self.cells if c.bit_count() == n]

    def ranks(self) -> tuple[int, ...]:
        counts = Counter(c.bit_count() for c in self.cells)
        top = max(counts) if counts else -1
        return tuple(counts.get(n, 0) for n in range(top + 1))

    def d_cell(self, cell: int) -> ModuleElement:
        return self.differential.get(cell) or ModuleElement(self.field)

    def d(self, x: ModuleElement) -> ModuleElement:
        out = ModuleElement(self.field)
        diff = self.differential
        for (cell, mono), c in x.terms.items():
            dc = diff.get(cell)
            if dc:
                out.iadd(dc, c, mono)
        return out

    def components(self) -> Iterator[tuple[int, int, dict[Monomial, object]]]:
        """(source, target, polynomial) for every nonzero component of d."""
        for src in self.cells:
            dx = self.differential.get(src)
            if not dx:
                continue
            for tgt in dx.support():
                yield src, tgt, dx.component(tgt)

    def check(self) -> None:
        """Assert d∘d = 0 and multigraded homogeneity of every component."""
        for src, tgt, poly in self.components():
            if tgt not in self.cell_set:
                raise ComplexError(f"d({render_cell(src)}) has component outside the basis: {render_cell(tgt)}")
            if tgt.bit_count() != src.bit_count() - 1:
                raise ComplexError(f"component {render_cell(src)} -> {render_cell(tgt)} does not lower degree by one")
            for mono in poly:
                if mono * self.multidegree(tgt) != self.multidegree(src):
                    raise ComplexError(f"component {render_cell(src)} -> {render_cell(tgt)} is not multigraded")
        for cell in self.cells:
            dd = self.d(self.d_cell(cell))
            if dd:
                raise ComplexError(f"d^2({render_cell(cell)}) = {dd.render()} != 0")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasedComplex):
            return NotImplemented
        return (
            self.ideal == other.ideal
            and self.field == other.field
            and self.cells == other.cells
            and all(self.d_cell(c) == other.d_cell(c) for c in self.cells)
        )

    __hash__ = None

    def render_cell(self, cell: int) -> str:
        return render_cell(cell, self.ideal.r)

    def render(self, x: ModuleElement) -> str:
        return x.render(self.ideal.variables, self.ideal.r)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "schema": "golodkit/complex/v1",
            "name": self.name,
            "field": self.field.name,
            "ideal": self.ideal.to_json(),
            "ranks": list(self.ranks()),
            "cells": [
                {"cell": [i + 1 for i in bits(c)], "degree": c.bit_count(), "multidegree": list(self.multidegree(c))}
                for c in self.cells
            ],
            "differential": [
                [[i + 1 for i in bits(s)], [i + 1 for i in bits(t)], polynomial_to_json(p)] for s, t, p in self.components()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> "BasedComplex":
        from .core import minimalize

        field = Field.parse(data["field"])
        ideal = minimalize([Monomial(g) for g in data["ideal"]["generators"]], data["ideal"]["vars"])
        cells = [mask_of(i - 1 for i in c["cell"]) for c in data["cells"]]
        diff: dict[int, ModuleElement] = {}
        for src, tgt, poly in data["differential"]:
            s = mask_of(i - 1 for i in src)
            t = mask_of(i - 1 for i in tgt)
            x = diff.setdefault(s, ModuleElement(field))
            for c, mono in poly:
                x.add_term(t, Monomial(mono), _scalar_from_str(c, field))
        return cls(ideal, field, cells, diff, check=check, name=data.get("name", ""))


# ---------------------------------------------------------------------------
# F_Δ and the Taylor resolution


def _simplicial_differential(ideal: MonomialIdeal, field: Field, cell: int, lcm: list[Monomial]) -> ModuleElement:
    out = ModuleElement(field)
    m_j = lcm[cell]
    for pos, i in enumerate(bits(cell)):
        face = cell ^ (1 << i)
        out.add_term(face, m_j / lcm[face], -1 if pos % 2 else 1)
    return out


def simplicial_to_complex(
    delta: SimplicialComplex, ideal: MonomialIdeal, field: Field = QQ, check: bool = True
) -> BasedComplex:
    """F_Δ: one cell per face, d(u_J) = Σ (−1)^{i+1} (m_J / m_{J^i}) u_{J^i}."""
    if delta.n != ideal.r:
        raise ValueError(f"complex has {delta.n} vertices, ideal has {ideal.r} generators")
    lcm = ideal.lcm_table()
    diff = {f: _simplicial_differential(ideal, field, f, lcm) for f in delta.faces if f}
    return BasedComplex(ideal, field, delta.faces, diff, check=check, name="F_delta", lcm_table=lcm)


class TaylorComplex(BasedComplex):
    """The Taylor resolution with its graded-commutative product."""

    def product_cells(self, a: int, b: int) -> tuple[int, Monomial, int] | None:
        """u_a · u_b as (sign, monomial, a ∪ b), or None when a ∩ b ≠ ∅."""
        if a & b:
            return None
        inversions = 0
        for j in bits(b):
            inversions += (a >> (j + 1)).bit_count()
        lcm = self._lcm
        u = a | b
        return (-1 if inversions & 1 else 1, (lcm[a] * lcm[b]) / lcm[u], u)

    def multiply(self, x: ModuleElement, y: ModuleElement) -> ModuleElement:
        out = ModuleElement(self.field)
        f = self.field
        terms = out.terms
        lcm = self._lcm
        for (a, ma), ca in x.terms.items():
            for (b, mb), cb in y.terms.items():
                if a & b:
                    continue
                inversions = 0
                for j in bits(b):
                    inversions += (a >> (j + 1)).bit_count()
                u = a | b
                mono = ((lcm[a] * lcm[b]) / lcm[u]) * ma * mb
                key = (u, mono)
                c = ca * cb
                v = f(terms.get(key, 0) + (-c if inversions & 1 else c))
                if v:
                    terms[key] = v
                else:
                    terms.pop(key, None)
        return out


def taylor(ideal: MonomialIdeal, field: Field = QQ, check: bool = True) -> TaylorComplex:
    """The Taylor resolution of S/I: F_Δ for the full simplex on the generators."""
    lcm = ideal.lcm_table()
    cells = range(1 << ideal.r)
    diff = {c: _simplicial_differential(ideal, field, c, lcm) for c in cells if c}
    return TaylorComplex(ideal, field, cells, diff, check=check, name="taylor", lcm_table=lcm)


def taylor_product(T: TaylorComplex, I: int | Iterable[int], J: int | Iterable[int]) -> ModuleElement:
    """u_I · u_J = sgn(I, J) (m_I m_J / m_{I∪J}) u_{I∪J}, or 0 if I ∩ J ≠ ∅."""
    a = I if isinstance(I, int) else mask_of(I)
    b = J if isinstance(J, int) else mask_of(J)
    res = T.product_cells(a, b)
    if res is None:
        return ModuleElement(T.field)
    sign, mono, u = res
    return ModuleElement.basis(T.field, u, mono, sign)


# ---------------------------------------------------------------------------
# Minimality, Tor, multigraded pieces


@dataclass
class MinimalityVerdict:
    ok: bool
    offenders: list[tuple[int, int, object]] = dc_field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_minimal(F: BasedComplex) -> MinimalityVerdict:
    """True iff no component of d has a constant (unit) coefficient."""
    offenders = []
    for src, tgt, poly in F.components():
        for mono, c in poly.items():
            if mono.is_one():
                offenders.append((src, tgt, c))
    return MinimalityVerdict(not offenders, offenders)


def _tensor_k_ranks(F: BasedComplex, cells: list[int]) -> dict[int, int]:
    index = {c: i for i, c in enumerate(cells)}
    by_deg: dict[int, list[dict[int, object]]] = {}
    for c in cells:
        row = {index[t]: coeff for t, coeff in F.d_cell(c).unit_terms() if t in index}
        by_deg.setdefault(c.bit_count(), []).append(row)
    return {n: rank(rows, F.field) for n, rows in by_deg.items()}


def tor_ranks(F: BasedComplex) -> tuple[int, ...]:
    """Homology ranks of F ⊗_S k (dim Tor_n(S/I, k) when F resolves S/I)."""
    per = multigraded_tor_ranks(F)
    top = max((n for n, _ in per), default=-1)
    out = [0] * (top + 1)
    for (n, _), h in per.items():
        out[n] += h
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def multigraded_tor_ranks(F: BasedComplex) -> dict[tuple[int, Monomial], int]:
    """Nonzero ranks of H_n(F ⊗ k) split by multidegree.

    F ⊗ k keeps only unit-coefficient components, and those join cells of
    equal multidegree, so the computation splits into strands.
    """
    strands: dict[Monomial, list[int]] = {}
    for c in F.cells:
        strands.setdefault(F.multidegree(c), []).append(c)
    out: dict[tuple[int, Monomial], int] = {}
    for mu, cells in strands.items():
        ranks = _tensor_k_ranks(F, cells)
        dims = Counter(c.bit_count() for c in cells)
        for n, dim in dims.items():
            h = dim - ranks.get(n, 0) - ranks.get(n + 1, 0)
            if h:
                out[(n, mu)] = h
    return out


def betti_table(F: BasedComplex) -> dict[tuple[int, int], int]:
    """Graded Betti numbers β_{i, j}: homological degree i, total degree j."""
    table: Counter = Counter()
    for (n, mu), h in multigraded_tor_ranks(F).items():
        table[(n, mu.degree)] += h
    return dict(table)


def betti_csv(F: BasedComplex) -> str:
    table = betti_table(F)
    degs = sorted({j for _, j in table})
    top = max((i for i, _ in table), default=0)
    lines = ["homological_degree," + ",".join(f"total_degree_{j}" for j in degs) + ",total"]
    for i in range(top + 1):
        row = [table.get((i, j), 0) for j in degs]
        lines.append(f"{i}," + ",".join(map(str, row)) + f",{sum(row)}")
    return "\n".join(lines) + "\n"


def multigraded_basis(F: BasedComplex, mu: Monomial) -> list[int]:
    """Cells whose multidegree is exactly mu."""
    return [c for c in F.cells if F.multidegree(c) == mu]


def degree_strand_ranks(F: BasedComplex, mu: Monomial) -> dict[int, int]:
    """Homology ranks of the k-vector space (F)_μ, the multidegree-μ part of F over S.

    Its basis is (μ / m_J)·u_J over the cells with m_J dividing μ, and the
    differential is F's own, so this is an independent check of exactness.
    """
    cells = [c for c in F.cells if F.multidegree(c).divides(mu)]
    index = {c: i for i, c in enumerate(cells)}
    dims = Counter(c.bit_count() for c in cells)
    ranks: Counter = Counter()
    for n in dims:
        rows = []
        for c in cells:
            if c.bit_count() != n:
                continue
            image = F.d_cell(c)
            rows.append({index[t]: coeff for t, _, coeff in image.items()})
        ranks[n] = rank(rows, F.field)
    out = {n: dims[n] - ranks[n] - ranks.get(n + 1, 0) for n in dims}
    return {n: h for n, h in out.items() if h}
