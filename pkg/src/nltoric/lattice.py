"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer entries are Python ints and
rational entries are :class:`fractions.Fraction`; nothing in this module
touches floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def content(v: Sequence[int]) -> int:
    """Nonnegative gcd of the entries (0 for the zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence) -> List[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = content(ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return [x // g for x in ints]


def det(a) -> Fraction:
    """Exact determinant of a square matrix (int or Fraction entries)."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """``U * A * V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: Tuple[Tuple[int, ...], ...]
    D: Tuple[Tuple[int, ...], ...]
    V: Tuple[Tuple[int, ...], ...]

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(a) -> SNFResult:
    """Smith normal form with transformation matrices.

    Pivoting always takes the nonzero entry of smallest absolute value in
    the active block, ties broken by lowest row then lowest column, so the
    transforms are reproducible.
    """
    A = [[int(x) for x in row] for row in a]
    m, n = len(A), len(A[0])
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for M in (A, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    freeze = lambda M: tuple(tuple(r) for r in M)
    return SNFResult(freeze(U), freeze(A), freeze(V))


def cokernel_structure(a) -> Tuple[int, List[int]]:
    """Structure of ``Z^rows / (column span of a)`` as (free rank, torsion)."""
    res = smith_normal_form(a)
    diag = res.diagonal
    rows = len(a)
    free_rank = rows - res.rank
    torsion = [d for d in diag if d > 1]
    return free_rank, torsion


def lattice_index(vectors) -> int:
    """Index of the span of ``vectors`` inside its saturation.

    This is the multiplicity of the cone they generate (1 iff the vectors
    extend to a lattice basis). Vectors must be linearly independent.
    """
    d = smith_normal_form(vectors).diagonal
    if any(x == 0 for x in d):
        raise ValueError("vectors are linearly dependent")
    out = 1
    for x in d:
        out *= x
    return out


# -- rational elimination ----------------------------------------------------


def rank(a) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Rational entries are cleared row by row to integers first.
    """
    rows = []
    for row in a:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        r = [int(x * den) for x in row]
        if any(r):
            rows.append(r)
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            ri = rows[i]
            f = ri[c]
            rows[i] = [(piv * x - f * y) // prev for x, y in zip(ri, rows[r])]
        prev = piv
        r += 1
        if r == len(rows):
            break
    return r


def rref(a) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q, returning the pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(a, ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of the right kernel ``{x : a x = 0}`` over Q."""
    if not a:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(a)
    n = len(a[0])
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(a, b) -> Optional[List[Fraction]]:
    """Unique solution of the square system ``a x = b``, or None if singular."""
    n = len(a)
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [m[i][n] for i in range(n)]


# -- linear programming ------------------------------------------------------


@dataclass(frozen=True)
class LPVerdict:
    """Classification of ``{u : <a_i, u> >= c_i}``.

    ``witness`` is a feasible point for ``bounded-nonempty``, a nonzero
    recession direction for ``unbounded`` and ``None`` for ``empty``.
    """

    status: str
    witness: Optional[Tuple[Fraction, ...]] = None


EMPTY, BOUNDED, UNBOUNDED = "empty", "bounded-nonempty", "unbounded"


def _feasible_point(halfspaces, dim) -> Optional[List[Fraction]]:
    """Phase-one simplex with Bland's rule.

    Variables are split as ``u = p - q`` with ``p, q >= 0`` and each
    constraint gets a surplus and an artificial variable.
    """
    k = len(halfspaces)
    if k == 0:
        return [Fraction(0)] * dim
    nv = 2 * dim + k  # p, q, surplus
    rows = []
    for i, (a, c) in enumerate(halfspaces):
        row = [Fraction(x) for x in a] + [-Fraction(x) for x in a] + [Fraction(0)] * k
        row[2 * dim + i] = Fraction(-1)
        rhs = Fraction(c)
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(j == i)) for j in range(k)] + [rhs])
    total = nv + k
    basis = [nv + i for i in range(k)]
    # objective: minimise sum of artificials -> reduced costs
    obj = [Fraction(0)] * (total + 1)
    for row in rows:
        for j in range(total + 1):
            obj[j] -= row[j]
    for j in basis:
        obj[j] = Fraction(0)
    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # cannot happen in phase one (bounded below by 0)
            break
        pv = rows[leave][enter]
        rows[leave] = [x / pv for x in rows[leave]]
        for i in range(k):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, rows[leave])]
        basis[leave] = enter
    if obj[-1] != 0:
        return None
    values = [Fraction(0)] * total
    for i, j in enumerate(basis):
        values[j] = rows[i][-1]
    return [values[j] - values[dim + j] for j in range(dim)]


def lp_classify(halfspaces, dim: Optional[int] = None) -> LPVerdict:
    """Decide emptiness and boundedness of a rational polyhedron.

    ``halfspaces`` is a sequence of ``(a, c)`` pairs meaning
    ``<a, u> >= c``.
    """
    halfspaces = [(tuple(a), c) for a, c in halfspaces]
    if dim is None:
        dim = len(halfspaces[0][0])
    if dim < 1:
        raise ValueError("ambient dimension must be positive")
    point = _feasible_point(halfspaces, dim)
    if point is None:
        return LPVerdict(EMPTY)
    # trivial recession cone <=> no direction with A d >= 0 and some d_i = +-1
    cone = [(a, 0) for a, _ in halfspaces]
    for i in range(dim):
        for s in (1, -1):
            e = tuple(s * int(j == i) for j in range(dim))
            d = _feasible_point(cone + [(e, 1)], dim)
            if d is not None:
                return LPVerdict(UNBOUNDED, tuple(d))
    return LPVerdict(BOUNDED, tuple(point))


# -- sparse rank ---------------------------------------------------------------

_PRIME = (1 << 61) - 1


def _rank_mod_p(rows, p=_PRIME) -> int:
    pivots: dict = {}
    for row in rows:
        v = {c: x % p for c, x in row.items() if x % p}
        while v:
            c = min(v)
            if c not in pivots:
                inv = pow(v[c], p - 2, p)
                pivots[c] = {k: x * inv % p for k, x in v.items()}
                break
            f = v[c]
            for k, x in pivots[c].items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return len(pivots)


def sparse_rank(rows, ncols: int) -> int:
    """Exact rank of sparse rows ``{column: value}`` over Q.

    A rank computed modulo a large prime is a lower bound for the rational
    rank, so it is accepted only when it already equals the number of rows
    or columns. Otherwise rows are cleared to integers and reduced
    fraction-free, dividing each reduced row by its content.
    """
    int_rows = []
    for row in rows:
        den = 1
        for x in row.values():
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        r = {c: int(x * den) for c, x in row.items() if x}
        if r:
            int_rows.append(r)
    if not int_rows:
        return 0
    bound = min(len(int_rows), ncols)
    if _rank_mod_p(int_rows) == bound:
        return bound
    pivots: dict = {}
    for v in int_rows:
        v = dict(v)
        while v:
            c = min(v)
            if c not in pivots:
                g = content(v.values())
                s = -1 if v[c] < 0 else 1
                pivots[c] = {k: s * x // g for k, x in v.items()}
                break
            piv = pivots[c]
            a, b = piv[c], v[c]
            w = {k: a * x for k, x in v.items()}
            for k, x in piv.items():
                y = w.get(k, 0) - b * x
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
            g = content(w.values()) if w else 1
            v = {k: x // g for k, x in w.items()}
    return len(pivots)
