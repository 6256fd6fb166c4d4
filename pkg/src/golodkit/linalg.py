"""Exact rank of sparse matrices over a field by Gaussian elimination."""
from __future__ import annotations

from typing import Iterable, Mapping

from .core import Field


def rank(rows: Iterable[Mapping[int, object]], field: Field) -> int:
    """Rank of a matrix given as sparse rows ``{column: scalar}``.

    Entries are coerced into ``field``; zero entries may be present.
    """
    pivots: dict[int, dict[int, object]] = {}
    for raw in rows:
        row = {c: field(v) for c, v in raw.items()}
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = field.inv(row[col])
                pivots[col] = {c: field(v * inv) for c, v in row.items()}
                break
            factor = row[col]
            for c, v in piv.items():
                nv = field(row.get(c, 0) - factor * v)
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def homology_ranks(dims: Mapping[int, int], boundary_ranks: Mapping[int, int]) -> dict[int, int]:
    """dim H_n = dim C_n - rank d_n - rank d_{n+1}, where d_n : C_n -> C_{n-1}."""
    return {n: dims[n] - boundary_ranks.get(n, 0) - boundary_ranks.get(n + 1, 0) for n in dims}
