"""Independent reference computations used to freeze expected values.

Nothing here imports the package's resolution code: the Taylor complex is
rebuilt from subsets and exponent vectors, ranks come from sympy.
"""
from fractions import Fraction
from itertools import combinations

import sympy


def _lcm(gens, subset, nvars):
    return tuple(max((gens[i][v] for i in subset), default=0) for v in range(nvars))


def taylor_tor_ranks(gens, prime=None):
    """dim H_n(Taylor ⊗ k) from unit entries of the Taylor differential."""
    r = len(gens)
    nvars = len(gens[0]) if gens else 0
    cells = {n: list(combinations(range(r), n)) for n in range(r + 1)}
    lcms = {J: _lcm(gens, J, nvars) for n in cells for J in cells[n]}

    def rank_d(n):
        if n == 0 or n > r:
            return 0
        rows, cols = cells[n - 1], cells[n]
        index = {J: i for i, J in enumerate(rows)}
        mat = sympy.zeros(len(rows), len(cols))
        for j, J in enumerate(cols):
            for pos in range(n):
                face = J[:pos] + J[pos + 1:]
                if lcms[face] == lcms[J]:
                    mat[index[face], j] = (-1) ** pos
        if prime:
            return _rank_mod(mat, prime)
        return mat.rank()

    ranks = [len(cells[n]) - rank_d(n) - rank_d(n + 1) for n in range(r + 1)]
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
    return tuple(ranks)


def _rank_mod(mat, p):
    rows = [[int(x) % p for x in mat.row(i)] for i in range(mat.rows)]
    rank = 0
    cols = mat.cols
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def serre_series(ranks, m, order):
    """Power-series long division of (1+t)^m by 1 - sum_j ranks_j t^(j+1).

    The numerator comes from sympy's expansion; the quotient is produced one
    term at a time by subtracting multiples of the divisor from the remainder.
    """
    t = sympy.symbols("t")
    num = sympy.Poly(sympy.expand((1 + t) ** m), t)
    remainder = [Fraction(int(num.coeff_monomial(t ** k))) for k in range(order + 1)]
    divisor = [Fraction(1)] + [Fraction(0)] * order
    for j, b in enumerate(ranks):
        if j >= 1 and j + 1 <= order:
            divisor[j + 1] -= b
    quotient = []
    for k in range(order + 1):
        q = remainder[k] / divisor[0]
        quotient.append(q)
        for i in range(k, order + 1):
            remainder[i] -= q * divisor[i - k]
    assert all(q.denominator == 1 for q in quotient)
    return [int(q) for q in quotient]
