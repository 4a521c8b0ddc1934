"""Exact rational sparse linear algebra.

Everything here runs over Fraction; there is no floating point anywhere in
the package.  The elimination core is fraction-free (integer-preserving,
Bareiss-style) with partial pivoting by smallest-magnitude nonzero pivot,
ties broken by (row, col) lexicographic order, so every derived basis is
reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class SparseMatrix:
    """Immutable sparse matrix over Fraction; zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (i, j), v in dict(entries).items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
                v = Fraction(v)
                if v:
                    clean[(i, j)] = v
        self.entries = clean

    def get(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def row(self, i: int) -> dict[int, Fraction]:
        return {j: v for (r, j), v in self.entries.items() if r == i}

    def mul_vector(self, vec) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            out[i] += v * vec[j]
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(j, i): v for (i, j), v in self.entries.items()})

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _integer_rows(m: SparseMatrix) -> list[dict[int, int]]:
    """Rows rescaled to integers (does not change row space or kernel)."""
    rows = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    out = []
    for r in rows:
        if not r:
            out.append({})
            continue
        mult = 1
        for v in r.values():
            mult = mult * v.denominator // gcd(mult, v.denominator)
        row = {j: int(v * mult) for j, v in r.items()}
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if g > 1:
            row = {j: v // g for j, v in row.items()}
        out.append(row)
    return out


def _eliminate(rows: list[dict[int, int]], ncols: int):
    """Fraction-free row echelon reduction in place.

    Returns the pivots as (row_index, col) pairs in elimination order.
    Rows hold integers throughout: elimination steps cross-multiply and the
    updated row is stripped by its gcd, which keeps rows without a pivot
    entry untouched (good for sparsity) while bounding growth in practice.
    """
    pivots: list[tuple[int, int]] = []
    used = [False] * len(rows)
    for col in range(ncols):
        best = None
        for i, r in enumerate(rows):
            if used[i]:
                continue
            v = r.get(col)
            if v:
                key = (abs(v), i)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            continue
        pi = best[1]
        used[pi] = True
        prow = rows[pi]
        pval = prow[col]
        for i, r in enumerate(rows):
            if used[i] or col not in r:
                continue
            f = r[col]
            new = {}
            g = 0
            for j in set(prow) | set(r):
                val = pval * r.get(j, 0) - f * prow.get(j, 0)
                if val:
                    new[j] = val
                    g = gcd(g, val)
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            rows[i] = new
        pivots.append((pi, col))
    return pivots


def rank(m: SparseMatrix) -> int:
    """Rank over the rationals by fraction-free elimination."""
    rows = _integer_rows(m)
    return len(_eliminate(rows, m.cols))


def kernel_basis(m: SparseMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the null space; one vector per free column.

    The free variable of each vector is set to 1 and pivot variables are
    back-substituted, so the basis is deterministic.
    """
    rows = _integer_rows(m)
    pivots = _eliminate(rows, m.cols)
    pivot_cols = {col: ri for ri, col in pivots}
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * m.cols
        vec[fc] = Fraction(1)
        # Solve pivot rows from the rightmost pivot leftwards.
        for ri, col in reversed(pivots):
            r = rows[ri]
            s = Fraction(0)
            for j, v in r.items():
                if j != col:
                    s += v * vec[j]
            vec[col] = -s / r[col]
        basis.append(tuple(vec))
    return basis


def solve(m: SparseMatrix, rhs) -> tuple[Fraction, ...] | None:
    """Some exact solution of m x = rhs, or None when inconsistent."""
    if len(rhs) != m.rows:
        raise ValueError("rhs length mismatch")
    aug_entries = dict(m.entries)
    for i, v in enumerate(rhs):
        v = Fraction(v)
        if v:
            aug_entries[(i, m.cols)] = v
    aug = SparseMatrix(m.rows, m.cols + 1, aug_entries)
    rows = _integer_rows(aug)
    pivots = _eliminate(rows, m.cols)
    # A leftover nonzero entry in the rhs column means the system is inconsistent.
    pivot_rows = {ri for ri, _ in pivots}
    for i, r in enumerate(rows):
        if i not in pivot_rows and any(j == m.cols and v for j, v in r.items()):
            return None
    vec = [Fraction(0)] * m.cols
    for ri, col in reversed(pivots):
        r = rows[ri]
        s = Fraction(r.get(m.cols, 0))
        for j, v in r.items():
            if j != col and j != m.cols:
                s -= v * vec[j]
        vec[col] = s / r[col]
    return tuple(vec)


class Echelon:
    """Incremental echelon form for spans of sparse vectors with sortable keys.

    Vectors are dicts key -> Fraction.  The pivot of a vector is its largest
    key, so nested filtrations can be read off pivot keys directly.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, vec: dict) -> dict:
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        while vec:
            lead = max(vec)
            if lead not in self.pivots:
                return vec
            base = self.pivots[lead]
            c = vec[lead] / base[lead]
            for k, v in base.items():
                newv = vec.get(k, Fraction(0)) - c * v
                if newv:
                    vec[k] = newv
                else:
                    vec.pop(k, None)
        return vec

    def insert(self, vec: dict) -> bool:
        """Reduce and insert; returns True when the vector was new."""
        red = self.reduce(vec)
        if not red:
            return False
        lead = max(red)
        c = red[lead]
        self.pivots[lead] = {k: v / c for k, v in red.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self.pivots)


class IntSaturator:
    """Echelon form over Z (gcd-normalized) for integer-keyed vectors.

    Used by span-saturation loops where Fraction overhead matters; the span
    is the same as over Q.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def insert(self, vec: dict[int, int]) -> bool:
        vec = {k: v for k, v in vec.items() if v}
        while vec:
            lead = max(vec)
            base = self.pivots.get(lead)
            if base is None:
                g = 0
                for v in vec.values():
                    g = gcd(g, v)
                if g > 1:
                    vec = {k: v // g for k, v in vec.items()}
                self.pivots[lead] = vec
                return True
            a, b = base[lead], vec[lead]
            new = {}
            for k in set(base) | set(vec):
                val = a * vec.get(k, 0) - b * base.get(k, 0)
                if val:
                    new[k] = val
            vec = new
        return False

    @property
    def dim(self) -> int:
        return len(self.pivots)
