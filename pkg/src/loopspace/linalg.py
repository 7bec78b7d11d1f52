"""Exact linear algebra over the rationals.

Matrices are small and often sparse, so entries are dicts keyed by
(row, col).  Ranks go through fraction-free Bareiss elimination on
denominator-cleared integer rows; kernels and preimages go through reduced
row echelon form over Fraction.  Everything is deterministic: pivots are
always the first nonzero entry in row-major order, so representative
choices downstream never depend on dict iteration order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "MatrixSlice",
    "matrix_rank",
    "rref",
    "kernel_basis",
    "solve_coords",
    "mat_mul_vec",
    "dense_mul",
    "SpanTracker",
]


class MatrixSlice:
    """A rows x cols rational matrix with sparse entries."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        for (i, j), v in (entries or {}).items():
            v = Fraction(v)
            if v:
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
                self.entries[(i, j)] = v

    def rows(self):
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j):
        return [self.entries.get((i, j), Fraction(0)) for i in range(self.nrows)]

    def rank(self):
        return matrix_rank(self.rows())

    def __repr__(self):
        return f"MatrixSlice({self.nrows}x{self.ncols}, {len(self.entries)} entries)"


def _clear_denominators(row):
    den = 1
    for v in row:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in row]


def matrix_rank(rows):
    """Rank by fraction-free Bareiss elimination on integer rows."""
    work = [_clear_denominators([Fraction(v) for v in row]) for row in rows]
    work = [r for r in work if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, len(work)):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank][col]
        for r in range(rank + 1, len(work)):
            if not any(work[r][col:]):
                continue
            for c in range(ncols):
                if c == col:
                    continue
                num = work[r][c] * p - work[r][col] * work[rank][c]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                work[r][c] = q
            work[r][col] = 0
        prev = p
        rank += 1
        if rank == len(work):
            break
    return rank


def rref(rows):
    """Reduced row echelon form over Fraction.

    Returns (echelon rows, pivot column list).  Input is not mutated.
    """
    work = [[Fraction(v) for v in row] for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        p = work[r][col]
        work[r] = [v / p for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def kernel_basis(rows, ncols):
    """Basis of the right kernel, one vector per free column.

    Free columns are visited in ascending order; each basis vector has a 1
    in its free column and zeros in the other free columns, which pins the
    representative choice for every caller.
    """
    ech, pivots = rref(rows) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -ech[r][free]
        basis.append(vec)
    return basis


def solve_coords(columns, target):
    """Coordinates of target in the span of the given column vectors.

    Returns a coefficient list (free coordinates set to zero) or None when
    target is outside the span.
    """
    n = len(target)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    ech, pivots = rref(aug)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        coords[pc] = ech[r][k]
    return coords


def mat_mul_vec(slice_, vec):
    out = [Fraction(0)] * slice_.nrows
    for (i, j), v in slice_.entries.items():
        if vec[j]:
            out[i] += v * vec[j]
    return out


def dense_mul(a, b):
    """Product of two dense row-list matrices; inner dimensions must agree.

    Empty factors are fine: the result collapses to the appropriate number
    of empty rows, which is what degreewise rank bookkeeping expects.
    """
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a[0])} columns vs {len(b)} rows")
    if not b or not b[0]:
        return [[] for _ in a] if a else []
    out = []
    for row in a:
        acc = [Fraction(0)] * len(b[0])
        for k, c in enumerate(row):
            if c:
                brow = b[k]
                for j, v in enumerate(brow):
                    if v:
                        acc[j] += c * v
        out.append(acc)
    return out


class SpanTracker:
    """Incrementally maintained echelon basis of a growing span.

    add() reports whether the vector enlarged the span; the reduction is
    deterministic, so feeding candidate vectors in a fixed order always
    selects the same independent subset.
    """

    def __init__(self, dim):
        self.dim = dim
        self._rows = []       # echelon rows, each with leading 1
        self._lead = []       # leading column per row, ascending

    def rank(self):
        return len(self._rows)

    def reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for row, lead in zip(self._rows, self._lead):
            if v[lead]:
                f = v[lead]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec):
        return not any(self.reduce(vec))

    def add(self, vec):
        v = self.reduce(vec)
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return False
        p = v[lead]
        v = [x / p for x in v]
        pos = 0
        while pos < len(self._lead) and self._lead[pos] < lead:
            pos += 1
        self._rows.insert(pos, v)
        self._lead.insert(pos, lead)
        return True
