"""Simplicial complexes on the generator set, restrictions and reduced homology."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Field, GolodkitError, Monomial, MonomialIdeal, QQ, bits, cell_key, mask_of, minimalize
from .linalg import rank


@dataclass(frozen=True)
class SimplicialComplex:
    """A downward-closed family of vertex subsets (bitmasks) on ``n`` vertices.

    The complex with no faces at all is *empty*; ``{∅}`` is the void
    complex with a single (−1)-dimensional face.
    """

    n: int
    faces: frozenset[int]

    def __post_init__(self):
        for f in self.faces:
            if f >> self.n:
                raise ValueError(f"face {bits(f)} uses a vertex outside 0..{self.n - 1}")
            for v in bits(f):
                if f ^ (1 << v) not in self.faces:
                    raise ValueError(f"not downward closed: {bits(f ^ (1 << v))} missing below {bits(f)}")

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int] | int]) -> "SimplicialComplex":
        faces: set[int] = set()
        for facet in facets:
            m = facet if isinstance(facet, int) else mask_of(facet)
            sub = m
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & m
        return cls(n, frozenset(faces))

    @classmethod
    def simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n, frozenset(range(1 << n)))

    @classmethod
    def empty(cls, n: int) -> "SimplicialComplex":
        return cls(n, frozenset())

    @property
    def dimension(self) -> int:
        return max((f.bit_count() for f in self.faces), default=0) - 1

    def has_vertices(self) -> bool:
        return any(self.faces - {0})

    def ordered_faces(self) -> list[int]:
        return sorted(self.faces, key=cell_key)

    def facets(self) -> list[int]:
        out = []
        for f in self.ordered_faces():
            if not any(g != f and g & f == f for g in self.faces):
                out.append(f)
        return out

    def to_json(self) -> dict:
        return {"vertices": self.n, "facets": [[i + 1 for i in bits(f)] for f in self.facets()]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls.from_facets(int(data["vertices"]), [[i - 1 for i in facet] for facet in data["facets"]])


def restrict(delta: SimplicialComplex, ideal: MonomialIdeal, mu: Monomial) -> SimplicialComplex:
    """Faces J of delta whose multidegree m_J divides mu."""
    faces = frozenset(f for f in delta.faces if ideal.multidegree(f).divides(mu))
    return SimplicialComplex(delta.n, faces)


def reduced_homology_ranks(delta: SimplicialComplex, field: Field = QQ) -> tuple[int, ...]:
    """Ranks of reduced homology; entry k is degree k − 1 (from −1 to dim)."""
    if not delta.faces:
        return ()
    top = delta.dimension
    by_dim: dict[int, list[int]] = {d: [] for d in range(-1, top + 1)}
    for f in delta.ordered_faces():
        by_dim[f.bit_count() - 1].append(f)
    index = {d: {f: i for i, f in enumerate(fs)} for d, fs in by_dim.items()}
    ranks = {}
    for d in range(0, top + 1):
        rows = []
        for f in by_dim[d]:
            row = {}
            for pos, v in enumerate(bits(f)):
                row[index[d - 1][f ^ (1 << v)]] = -1 if pos % 2 else 1
            rows.append(row)
        ranks[d] = rank(rows, field)
    return tuple(len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(-1, top + 1))


def lcm_lattice(ideal: MonomialIdeal) -> list[Monomial]:
    """Distinct lcms of all subsets of generators (including 1 for ∅), sorted by degree."""
    return sorted(set(ideal.lcm_table()), key=lambda m: (m.degree, tuple(m)))


def lcm_lattice_covers(ideal: MonomialIdeal) -> dict[Monomial, list[Monomial]]:
    """Hasse diagram of the lcm lattice: each element with the elements it covers."""
    elems = lcm_lattice(ideal)
    covers: dict[Monomial, list[Monomial]] = {}
    for a in elems:
        below = [b for b in elems if b != a and b.divides(a)]
        covers[a] = [b for b in below if not any(c != b and b.divides(c) for c in below)]
    return covers


@dataclass(frozen=True)
class ResolutionVerdict:
    ok: bool
    witness: Monomial | None = None
    degree: int | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def is_resolution(delta: SimplicialComplex, ideal: MonomialIdeal, field: Field = QQ) -> ResolutionVerdict:
    """Decide whether F_delta resolves S/I by testing every lcm-lattice multidegree.

    Restrictions without vertices count as empty; otherwise the restriction
    must have vanishing reduced homology.  On failure the witness is the
    multidegree and the lowest degree of nonvanishing reduced homology.
    """
    if delta.n != ideal.r:
        raise ValueError(f"complex has {delta.n} vertices, ideal has {ideal.r} generators")
    checked = 0
    for mu in lcm_lattice(ideal):
        sub = restrict(delta, ideal, mu)
        if not sub.has_vertices():
            continue
        checked += 1
        ranks = reduced_homology_ranks(sub, field)
        for k, h in enumerate(ranks):
            if h:
                return ResolutionVerdict(False, mu, k - 1, checked)
    return ResolutionVerdict(True, None, None, checked)


def stanley_reisner(delta: SimplicialComplex) -> MonomialIdeal:
    """Ideal of minimal non-faces; the zero ideal (full simplex) is rejected."""
    n = delta.n
    nonfaces = set()
    for f in delta.faces:
        for v in range(n):
            if f >> v & 1:
                continue
            s = f | (1 << v)
            if s in delta.faces:
                continue
            if all(s ^ (1 << w) in delta.faces for w in bits(s)):
                nonfaces.add(s)
    if not delta.faces:
        nonfaces.add(0)
    gens = [Monomial([(s >> i) & 1 for i in range(n)]) for s in sorted(nonfaces, key=lambda s: tuple(bits(s)))]
    return minimalize(gens, [f"x{i + 1}" for i in range(n)])


def stanley_reisner_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex whose faces are the subsets of variables containing no generator support."""
    if any(e > 1 for g in ideal.generators for e in g):
        raise GolodkitError("Stanley-Reisner inverse needs a square-free ideal")
    supports = [mask_of(g.support()) for g in ideal.generators]
    n = ideal.nvars
    faces = frozenset(s for s in range(1 << n) if not any(g & s == g for g in supports))
    return SimplicialComplex(n, faces)


def cycle_complex(n: int) -> SimplicialComplex:
    """The boundary of an n-gon as a 1-dimensional complex."""
    return SimplicialComplex.from_facets(n, [(i, (i + 1) % n) for i in range(n)])
