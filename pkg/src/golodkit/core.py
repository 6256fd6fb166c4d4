"""Scalars, monomials, monomial ideals and the ideal input grammar."""
from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

log = logging.getLogger(__name__)

EXPONENT_LIMIT = 2**32
DEFAULT_MAX_GENERATORS = 20
WARN_GENERATORS = 14


class GolodkitError(Exception):
    """Base class for errors raised by golodkit."""


class RingMismatchError(GolodkitError, ValueError):
    pass


class ResourceCapError(GolodkitError):
    pass


class IdealParseError(GolodkitError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# Fields


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """The coefficient field: the rationals (characteristic 0) or F_p.

    Rational scalars are ``int`` or ``Fraction``; prime-field scalars are
    ints in ``[0, p)``.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic and not _is_prime(characteristic):
            raise ValueError(f"field characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    @classmethod
    def parse(cls, spec: str) -> "Field":
        """Parse ``q``, ``f2`` or ``fp:<p>``."""
        s = spec.strip().lower()
        if s in ("q", "qq", "rationals", "0"):
            return cls(0)
        if s == "f2":
            return cls(2)
        if s.startswith("fp:"):
            return cls(int(s[3:]))
        raise ValueError(f"unknown field {spec!r}; expected q, f2 or fp:<p>")

    def __call__(self, x) -> int | Fraction:
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, p)) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero scalar")
        p = self.characteristic
        if p:
            return pow(int(x), -1, p)
        return self(Fraction(1) / x)

    def is_unit(self, x) -> bool:
        return bool(self(x))

    def render(self, x) -> str:
        return str(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __repr__(self) -> str:
        return "Field(Q)" if not self.characteristic else f"Field(F_{self.characteristic})"

    @property
    def name(self) -> str:
        return "q" if not self.characteristic else ("f2" if self.characteristic == 2 else f"fp:{self.characteristic}")


QQ = Field(0)
F2 = Field(2)


# ---------------------------------------------------------------------------
# Monomials


class Monomial(tuple):
    """An exponent vector. The all-zero vector is the unit monomial."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int] = ()):
        exps = tuple(int(e) for e in exponents)
        for e in exps:
            if e < 0:
                raise ValueError("exponents must be non-negative")
            if e >= EXPONENT_LIMIT:
                raise OverflowError("exponent exceeds 32-bit range")
        return tuple.__new__(cls, exps)

    @classmethod
    def one(cls, nvars: int) -> "Monomial":
        return tuple.__new__(cls, (0,) * nvars)

    def _check(self, other: "Monomial") -> None:
        if len(self) != len(other):
            raise RingMismatchError(f"monomials over {len(self)} and {len(other)} variables")

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return tuple.__new__(Monomial, tuple(a if a > b else b for a, b in zip(self, other)))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return tuple.__new__(Monomial, tuple(a if a < b else b for a, b in zip(self, other)))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def is_coprime(self, other: "Monomial") -> bool:
        self._check(other)
        return not any(a and b for a, b in zip(self, other))

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        self._check(other)
        exps = tuple(a + b for a, b in zip(self, other))
        if any(e >= EXPONENT_LIMIT for e in exps):
            raise OverflowError("exponent exceeds 32-bit range")
        return tuple.__new__(Monomial, exps)

    def __truediv__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        self._check(other)
        exps = tuple(a - b for a, b in zip(self, other))
        if any(e < 0 for e in exps):
            raise ValueError(f"{other!r} does not divide {self!r}")
        return tuple.__new__(Monomial, exps)

    def __add__(self, other):  # tuple concatenation would be a silent bug
        return NotImplemented

    def is_one(self) -> bool:
        return not any(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self) if e)

    def render(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(len(self))]
        parts = []
        for name, e in zip(names, self):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)!r})"


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return a.gcd(b)


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


# ---------------------------------------------------------------------------
# Subsets of generator indices (0-based bitmasks internally)


def bits(mask: int) -> list[int]:
    """0-based indices of the set bits, increasing."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def cell_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical cell order: by homological degree, then lexicographically."""
    return (mask.bit_count(), tuple(bits(mask)))


def render_cell(mask: int, r: int | None = None) -> str:
    idx = [i + 1 for i in bits(mask)]
    if not idx:
        return "u{}"
    if r is not None and r >= 10:
        return "u{" + ",".join(map(str, idx)) + "}"
    return "u" + "".join(map(str, idx))


def parse_cell(text: str) -> int:
    """Inverse of :func:`render_cell` (1-based indices)."""
    t = text.strip()
    if not t.startswith("u"):
        raise ValueError(f"not a cell: {text!r}")
    body = t[1:]
    if body.startswith("{"):
        inner = body.strip("{}")
        return mask_of(int(i) - 1 for i in inner.split(",") if i.strip())
    return mask_of(int(c) - 1 for c in body)


# ---------------------------------------------------------------------------
# Ideals


def max_generators() -> int:
    env = os.environ.get("GOLODKIT_MAX_GENERATORS")
    return int(env) if env else DEFAULT_MAX_GENERATORS


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal monomial generators, in a fixed order, over named variables."""

    variables: tuple[str, ...]
    generators: tuple[Monomial, ...]
    was_minimal: bool = field(default=True, compare=False)

    def __post_init__(self):
        m = len(self.variables)
        if not self.generators:
            raise GolodkitError("the zero ideal has no Taylor resolution")
        for g in self.generators:
            if len(g) != m:
                raise RingMismatchError(f"generator {g!r} has {len(g)} exponents, ring has {m}")
            if g.is_one():
                raise GolodkitError("the unit ideal is not allowed")
        for i, a in enumerate(self.generators):
            for j, b in enumerate(self.generators):
                if i != j and a.divides(b):
                    raise GolodkitError(f"generators not minimal: {a.render(self.variables)} divides {b.render(self.variables)}")
        cap = max_generators()
        if len(self.generators) > cap:
            raise ResourceCapError(f"{len(self.generators)} generators exceed the cap of {cap}")
        if len(self.generators) > WARN_GENERATORS:
            log.warning("%d generators: the Taylor complex has 2^%d cells", len(self.generators), len(self.generators))

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def multidegree(self, cell: int | Iterable[int]) -> Monomial:
        """lcm of the generators indexed by ``cell`` (bitmask or 0-based indices)."""
        mask = cell if isinstance(cell, int) else mask_of(cell)
        if mask >> self.r:
            raise IndexError(f"subset {bits(mask)} out of range for {self.r} generators")
        out = Monomial.one(self.nvars)
        for i in bits(mask):
            out = out.lcm(self.generators[i])
        return out

    def lcm_table(self) -> list[Monomial]:
        """Multidegrees of all 2^r subsets, indexed by bitmask."""
        table = [Monomial.one(self.nvars)] * (1 << self.r)
        for mask in range(1, 1 << self.r):
            low = mask & -mask
            table[mask] = table[mask ^ low].lcm(self.generators[low.bit_length() - 1])
        return table

    def render(self) -> str:
        gens = ", ".join(g.render(self.variables) for g in self.generators)
        return f"ring {' '.join(self.variables)}; ideal {gens};"

    def to_json(self) -> dict:
        return {"vars": list(self.variables), "generators": [list(g) for g in self.generators]}

    def sorted_lex(self) -> "MonomialIdeal":
        """Same ideal with generators re-sorted lexicographically (descending exponent vectors)."""
        gens = sorted(self.generators, reverse=True)
        return MonomialIdeal(self.variables, tuple(gens), self.was_minimal)


def multidegree(ideal: MonomialIdeal, J: Iterable[int] | int) -> Monomial:
    return ideal.multidegree(J)


def cl_classes(ideal: MonomialIdeal, J: int | Iterable[int]) -> list[list[int]]:
    """Connected components of ``J`` under "generators share a variable".

    Returns the classes as sorted lists of 0-based generator indices; the
    number of classes is cl(u_J).
    """
    mask = J if isinstance(J, int) else mask_of(J)
    members = bits(mask)
    if not members:
        raise ValueError("cl is undefined for the empty subset")
    parent = {i: i for i in members}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    gens = ideal.generators
    for a_pos, a in enumerate(members):
        for b in members[a_pos + 1:]:
            if not gens[a].is_coprime(gens[b]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in members:
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def cl(ideal: MonomialIdeal, J: int | Iterable[int]) -> int:
    return len(cl_classes(ideal, J))


def minimalize(generators: Sequence[Monomial], variables: Sequence[str] | None = None) -> MonomialIdeal:
    """Drop duplicates and non-minimal generators, keeping input order."""
    gens = [g if isinstance(g, Monomial) else Monomial(g) for g in generators]
    if not gens:
        raise GolodkitError("the zero ideal has no Taylor resolution")
    nvars = len(gens[0])
    if variables is None:
        variables = [f"x{i + 1}" for i in range(nvars)]
    if any(g.is_one() for g in gens):
        raise GolodkitError("the unit ideal is not allowed")
    kept: list[Monomial] = []
    for i, g in enumerate(gens):
        if g in kept:
            continue
        # strictly smaller generator anywhere, or an equal one earlier
        if any(h != g and h.divides(g) for h in gens):
            continue
        kept.append(g)
    return MonomialIdeal(tuple(variables), tuple(kept), was_minimal=len(kept) == len(gens))


# ---------------------------------------------------------------------------
# Ideal grammar:  ring <ident>+ ; ideal <term> (, <term>)* ;

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<sym>[;,*^])|(?P<bad>\S))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int, int]] = []
        line_starts = [0] + [m.end() for m in re.finditer("\n", text)]
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            pos = m.end()
            kind = m.lastgroup
            value = m.group(kind)
            start = m.start(kind)
            line = max(i for i, s in enumerate(line_starts) if s <= start) + 1
            col = start - line_starts[line - 1] + 1
            if kind == "bad":
                raise IdealParseError(f"unexpected character {value!r}", line, col)
            self.tokens.append((kind, value, line, col))
        self.i = 0
        self.eof = (len(line_starts), len(text) - line_starts[-1] + 1)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", *self.eof)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value else kind
            got = repr(tok[1]) if tok[0] != "eof" else "end of input"
            raise IdealParseError(f"expected {want}, got {got}", tok[2], tok[3])
        return tok


def _parse_text(text: str) -> tuple[list[str], list[Monomial]]:
    lx = _Lexer(text)
    lx.expect("ident", "ring")
    names: list[str] = []
    while lx.peek()[0] == "ident":
        tok = lx.next()
        if tok[1] in names:
            raise IdealParseError(f"duplicate variable {tok[1]!r}", tok[2], tok[3])
        names.append(tok[1])
    if not names:
        tok = lx.peek()
        raise IdealParseError("ring needs at least one variable", tok[2], tok[3])
    lx.expect("sym", ";")
    lx.expect("ident", "ideal")
    index = {n: i for i, n in enumerate(names)}
    gens: list[Monomial] = []
    while True:
        exps = [0] * len(names)
        while True:
            tok = lx.next()
            if tok[0] == "int" and tok[1] == "1" and lx.peek()[1] != "^":
                raise IdealParseError("the unit ideal is not allowed", tok[2], tok[3])
            if tok[0] != "ident":
                got = repr(tok[1]) if tok[0] != "eof" else "end of input"
                raise IdealParseError(f"expected a variable, got {got}", tok[2], tok[3])
            if tok[1] not in index:
                raise IdealParseError(f"unknown variable {tok[1]!r}", tok[2], tok[3])
            e = 1
            if lx.peek()[1] == "^":
                lx.next()
                etok = lx.next()
                if etok[0] != "int":
                    raise IdealParseError(f"malformed exponent {etok[1]!r}", etok[2], etok[3])
                e = int(etok[1])
                if e >= EXPONENT_LIMIT:
                    raise IdealParseError("exponent exceeds 32-bit range", etok[2], etok[3])
            exps[index[tok[1]]] += e
            if lx.peek()[1] == "*":
                lx.next()
                continue
            break
        gens.append(Monomial(exps))
        tok = lx.next()
        if tok[1] == ",":
            continue
        if tok[1] == ";":
            break
        got = repr(tok[1]) if tok[0] != "eof" else "end of input"
        raise IdealParseError(f"expected ',' or ';', got {got}", tok[2], tok[3])
    tok = lx.peek()
    if tok[0] != "eof":
        raise IdealParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
    return names, gens


def _parse_json(data: dict) -> tuple[list[str], list[Monomial]]:
    if not isinstance(data, dict) or "vars" not in data or "generators" not in data:
        raise IdealParseError('JSON ideal needs "vars" and "generators"')
    names = [str(v) for v in data["vars"]]
    gens = []
    for row in data["generators"]:
        if len(row) != len(names):
            raise IdealParseError(f"generator row {row} does not match {len(names)} variables")
        try:
            gens.append(Monomial(row))
        except (ValueError, TypeError, OverflowError) as exc:
            raise IdealParseError(f"malformed exponent row {row}: {exc}") from None
    return names, gens


def parse_ideal(source: str, sort: str | None = None) -> MonomialIdeal:
    """Parse an ideal from the text grammar or its JSON form."""
    text = source.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IdealParseError(exc.msg, exc.lineno, exc.colno) from None
        names, gens = _parse_json(data)
    else:
        names, gens = _parse_text(source)
    if not gens:
        raise IdealParseError("empty generator list")
    ideal = minimalize(gens, names)
    if sort == "lex":
        ideal = ideal.sorted_lex()
    return ideal


def render_ideal(ideal: MonomialIdeal) -> str:
    return ideal.render()


def load_ideal(path: str, sort: str | None = None) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read(), sort=sort)


def iter_subsets(r: int) -> Iterator[int]:
    """All bitmasks over r generators in canonical cell order."""
    return iter(sorted(range(1 << r), key=cell_key))
