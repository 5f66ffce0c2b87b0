"""Exact integer linear algebra: determinants, rank, Smith normal form.

Everything here works on plain nested lists/tuples of Python ints, so all
arithmetic is arbitrary precision and no floating point ever enters.  The
routines are deliberately dense-and-small: matrices in this package have at
most a few dozen rows/columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

IntMatrix = list[list[int]]


def matrix_dims(m) -> tuple[int, int]:
    """Return (rows, cols) after checking the matrix is rectangular."""
    rows = len(m)
    if rows == 0:
        return 0, 0
    cols = len(m[0])
    for row in m:
        if len(row) != cols:
            raise ValueError("ragged matrix: rows have different lengths")
    return rows, cols


def det_bareiss(m) -> int:
    """Exact determinant via fraction-free Bareiss elimination.

    Intermediate entries stay integral because each 2x2 cross-multiplication
    step is exactly divisible by the previous pivot.
    """
    rows, cols = matrix_dims(m)
    if rows != cols:
        raise ValueError(f"determinant needs a square matrix, got {rows}x{cols}")
    n = rows
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot_row is None:
                return 0
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank_over_q(m) -> int:
    """Rank of the matrix over the rationals, computed fraction-free.

    Integer row elimination with a per-row content reduction keeps entries
    small without ever forming a fraction.
    """
    rows, cols = matrix_dims(m)
    a = [list(row) for row in m]
    rank = 0
    for col in range(cols):
        pivot_row = next((i for i in range(rank, rows) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        for i in range(rank + 1, rows):
            if a[i][col] == 0:
                continue
            f = a[i][col]
            a[i] = [x * pivot - f * y for x, y in zip(a[i], a[rank])]
            content = 0
            for x in a[i]:
                content = gcd(content, x)
            if content > 1:
                a[i] = [x // content for x in a[i]]
        rank += 1
        if rank == rows:
            break
    return rank


def smith_normal_form(m) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns the nonnegative elementary divisors d_1 | d_2 | ... | d_k with
    k = min(rows, cols); zeros trail once the rank is exhausted.  Pivoting is
    by smallest nonzero absolute value, which keeps intermediate entries from
    blowing up.
    """
    rows, cols = matrix_dims(m)
    a = [list(row) for row in m]
    n = min(rows, cols)
    diag: list[int] = []
    for t in range(n):
        while True:
            pivot_pos = None
            pivot_abs = None
            for i in range(t, rows):
                for j in range(t, cols):
                    v = abs(a[i][j])
                    if v and (pivot_abs is None or v < pivot_abs):
                        pivot_abs = v
                        pivot_pos = (i, j)
            if pivot_pos is None:
                diag.extend([0] * (n - t))
                return diag
            pi, pj = pivot_pos
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # Row and column are clear; enforce divisibility into the rest.
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                diag.append(abs(p))
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
    return diag


@dataclass(frozen=True)
class QuotientStructure:
    """Structure of Z^n modulo a sublattice: torsion factors and free rank."""

    invariant_factors: tuple[int, ...]
    free_rank: int

    def order(self) -> int | None:
        """Group order, or None when the quotient is infinite."""
        if self.free_rank:
            return None
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n


def lattice_quotient(gens, ambient_dim: int | None = None) -> QuotientStructure:
    """Structure of Z^n / <gens> via the Smith normal form.

    ``gens`` is a list of integer vectors; ``ambient_dim`` may be omitted when
    at least one generator is present.  Invariant factors equal to 1 are
    dropped.
    """
    gens = [list(g) for g in gens]
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient_dim required when no generators are given")
        ambient_dim = len(gens[0])
    for g in gens:
        if len(g) != ambient_dim:
            raise ValueError("generator dimension mismatch")
    if not gens:
        return QuotientStructure((), ambient_dim)
    diag = smith_normal_form(gens)
    nonzero = [d for d in diag if d]
    factors = tuple(d for d in nonzero if d > 1)
    return QuotientStructure(factors, ambient_dim - len(nonzero))


def primitive_kernel_vector(columns) -> list[int] | None:
    """Primitive integer kernel vector of the matrix with the given columns.

    Returns None unless the kernel has dimension exactly one.  The result has
    coprime entries; its overall sign is not normalized.
    """
    if not columns:
        return None
    r = len(columns[0])
    k = len(columns)
    a = [[Fraction(columns[j][i]) for j in range(k)] for i in range(r)]
    pivots: list[int] = []
    row = 0
    for col in range(k):
        pr = next((i for i in range(row, r) if a[i][col]), None)
        if pr is None:
            continue
        a[row], a[pr] = a[pr], a[row]
        inv = a[row][col]
        a[row] = [x / inv for x in a[row]]
        for i in range(r):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    free = [j for j in range(k) if j not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    sol = [Fraction(0)] * k
    sol[f] = Fraction(1)
    for i, col in enumerate(pivots):
        sol[col] = -a[i][f]
    denom = 1
    for x in sol:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in sol]
    content = 0
    for x in ints:
        content = gcd(content, x)
    return [x // content for x in ints]
