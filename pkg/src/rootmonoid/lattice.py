"""Exact integer and rational linear algebra on the lattices M and N.

Vectors are plain tuples of ints; matrices are tuples of row tuples.  The
pairing between M and N is the coordinate dot product in the standard
identification, so ``pair(m, v)`` and ``pair(v, m)`` agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple
Matrix = tuple


class LatticeError(ValueError):
    """Raised for rank mismatches and ill-posed lattice operations."""


def vec(v) -> Vector:
    return tuple(int(x) for x in v)


def mat(rows) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def pair(m: Sequence, v: Sequence):
    if len(m) != len(v):
        raise LatticeError(f"rank mismatch: {len(m)} vs {len(v)}")
    return sum(a * b for a, b in zip(m, v))


def add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v) -> bool:
    return all(x == 0 for x in v)


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive_part(v) -> Vector:
    """Return the primitive lattice vector spanning the same ray as ``v``.

    Rational input is cleared of denominators first.
    """
    if is_zero(v):
        raise LatticeError("the zero vector spans no ray")
    if any(isinstance(x, Fraction) and x.denominator != 1 for x in v):
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        v = [Fraction(x) * den for x in v]
    v = [int(x) for x in v]
    g = content(v)
    return tuple(x // g for x in v)


# -- matrices ---------------------------------------------------------------

def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a, b) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def apply(a, v) -> Vector:
    """Apply ``a`` to the column vector ``v``."""
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def det(a) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int | None = None) -> list[Vector]:
    """Primitive integer basis of the rational kernel of ``rows``."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(primitive_part(v))
    return basis


def solve(a, b) -> tuple[Fraction, ...] | None:
    """One rational solution x of a x = b, or None."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def inverse(a) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise LatticeError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def integer_inverse(a) -> Matrix:
    inv = inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise LatticeError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def is_unimodular(a) -> bool:
    return len(a) > 0 and all(len(row) == len(a) for row in a) and det(a) in (1, -1)


# -- Smith normal form ------------------------------------------------------

def smith_normal_form(a) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U * a * V = D diagonal and d_1 | d_2 | ...

    U and V are unimodular.  Diagonal entries are non-negative.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(int(x) for x in row) for row in a]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return mat(u), mat(d), mat(v)


def invariant_factors(a) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith form of ``a``."""
    if not a or not a[0]:
        return ()
    _, d, _ = smith_normal_form(a)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i])


def kernel_lattice(rows, n: int) -> list[Vector]:
    """Z-basis of {x in Z^n : rows * x = 0}, from the Smith form of ``rows``."""
    rows = [r for r in rows if not is_zero(r)]
    if not rows:
        return [tuple(r) for r in identity(n)]
    _, _, v = smith_normal_form(rows)
    r = len(invariant_factors(rows))
    return [tuple(v[i][j] for i in range(n)) for j in range(r, n)]


def saturation(vectors, n: int) -> list[Vector]:
    """Z-basis of (Q-span of ``vectors``) cap Z^n."""
    return kernel_lattice(kernel_lattice(vectors, n), n) if vectors else []


def is_saturated(rows) -> bool:
    """True iff the rows are independent and extend to a Z-basis."""
    if not rows:
        return True
    facs = invariant_factors(rows)
    return len(facs) == len(rows) and all(f == 1 for f in facs)


# -- basis completion -------------------------------------------------------

@dataclass(frozen=True)
class AdaptedBasis:
    """A Z-basis of N starting with given vectors, with its dual basis in M.

    ``pair(dual[i], primal[j]) == (i == j)`` for all i, j.
    """

    primal: tuple[Vector, ...]
    dual: tuple[Vector, ...]
    k: int

    def coordinates(self, m) -> Vector:
        """Coordinates of ``m`` in M with respect to ``dual``."""
        return tuple(pair(m, p) for p in self.primal)


def _candidates(n: int, radius: int):
    pts = [p for p in itertools.product(range(-radius, radius + 1), repeat=n)
           if max(map(abs, p)) == radius]
    pts.sort(key=lambda p: (sum(map(abs, p)), tuple(-x for x in p)))
    return pts


def _snf_completion(rows, n):
    # rows are saturated, so U * A * V = [I | 0]; the last rows of V^{-1} complete A
    _, _, v = smith_normal_form(rows)
    w = integer_inverse(v)
    return list(w[len(rows):])


def extend_to_basis(vectors, search_radius: int = 2) -> AdaptedBasis:
    """Complete ``vectors`` to a Z-basis of N and return it with its dual.

    The completion is canonical: it greedily appends the smallest candidate
    vectors (by max-norm, then L1-norm, then reverse lex, so standard basis
    vectors come first) that keep the set saturated.  If the small search
    radius runs dry, the Smith-form completion of the remainder is used.
    """
    vectors = [vec(v) for v in vectors]
    if not vectors:
        raise LatticeError("need at least one vector, or use standard_basis")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise LatticeError("rank mismatch among input vectors")
    if rank(vectors) < len(vectors):
        raise LatticeError("input vectors are linearly dependent")
    facs = invariant_factors(vectors)
    if any(f != 1 for f in facs):
        raise LatticeError(f"vectors do not extend to a basis (invariant factors {facs})")

    basis = list(vectors)
    for radius in range(1, search_radius + 1):
        for c in _candidates(n, radius):
            if len(basis) == n:
                break
            if is_saturated(basis + [c]):
                basis.append(c)
    if len(basis) < n:
        basis += _snf_completion(basis, n)
    primal = tuple(basis)
    inv = integer_inverse(primal)
    dual = transpose(inv)
    return AdaptedBasis(primal=primal, dual=tuple(dual), k=len(vectors))


def standard_basis(n: int) -> AdaptedBasis:
    e = identity(n)
    return AdaptedBasis(primal=e, dual=e, k=0)


def complete_basis(vectors, n: int) -> AdaptedBasis:
    """Like extend_to_basis but accepts an empty list."""
    return extend_to_basis(vectors) if vectors else standard_basis(n)
