from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from nltoric import lattice

small_ints = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices())
def test_snf_is_a_unimodular_diagonalization(a):
    res = lattice.smith_normal_form(a)
    assert [list(r) for r in lattice.matmul(lattice.matmul(res.U, a), res.V)] == [list(r) for r in res.D]
    assert abs(lattice.det(res.U)) == 1 and abs(lattice.det(res.V)) == 1
    diag = [d for d in res.diagonal if d]
    assert diag == res.diagonal[:len(diag)]
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    for i, row in enumerate(res.D):
        for j, x in enumerate(row):
            assert x == 0 or i == j


@given(matrices())
def test_snf_invariants_match_sympy(a):
    ours = [d for d in lattice.smith_normal_form(a).diagonal if d]
    theirs = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
    expected = [abs(int(theirs[i, i])) for i in range(min(theirs.shape)) if theirs[i, i] != 0]
    assert ours == expected


def test_cokernel_of_p3_rays():
    rays = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]
    assert lattice.cokernel_structure(rays) == (1, [])


def test_cokernel_with_torsion():
    # characters of Z^2 on rays (2,1),(-1,1),(-1,-2): Cl = Z + Z/3
    rays = [[2, 1], [-1, 1], [-1, -2]]
    assert lattice.cokernel_structure(rays) == (1, [3])


def test_lattice_index():
    assert lattice.lattice_index([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert lattice.lattice_index([[-1, -2, -2], [1, 0, 0], [0, 1, 0]]) == 2
    with pytest.raises(ValueError):
        lattice.lattice_index([[1, 2], [2, 4]])


@given(matrices(5, 5))
def test_rank_matches_sympy(a):
    assert lattice.rank(a) == sympy.Matrix(a).rank()


@given(matrices(5, 5))
def test_nullspace_is_kernel_of_full_dimension(a):
    ns = lattice.nullspace(a)
    ncols = len(a[0])
    assert len(ns) == ncols - lattice.rank(a)
    for v in ns:
        assert all(sum(Fraction(x) * y for x, y in zip(row, v)) == 0 for row in a)


@given(matrices(5, 5))
def test_sparse_rank_agrees_with_dense(a):
    rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in a]
    assert lattice.sparse_rank(rows, len(a[0])) == lattice.rank(a)


def test_sparse_rank_needs_exact_fallback():
    # rank 1 over Q, entries large enough to matter modulo nothing in particular
    p = (1 << 61) - 1
    rows = [{0: Fraction(p), 1: Fraction(1)}, {0: Fraction(2 * p), 1: Fraction(2)}]
    assert lattice.sparse_rank(rows, 2) == 1
    rows = [{0: Fraction(p)}, {1: Fraction(1)}]
    assert lattice.sparse_rank(rows, 2) == 2


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small_ints, min_size=3, max_size=3))
def test_solve(a, b):
    x = lattice.solve(a, b)
    if lattice.rank(a) < 3:
        assert x is None
    else:
        assert [sum(Fraction(c) * y for c, y in zip(row, x)) for row in a] == b


# -- linear programs: verdicts against a box scan -----------------------------


def _box_points(halfspaces, dim, radius):
    return [p for p in product(range(-radius, radius + 1), repeat=dim)
            if all(sum(x * y for x, y in zip(a, p)) >= c for a, c in halfspaces)]


halfspace = st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-4, 4))


@given(st.lists(halfspace, min_size=1, max_size=5))
def test_lp_verdict_consistent_with_scan(hs):
    verdict = lattice.lp_classify(hs, 2)
    inside = _box_points(hs, 2, 25)
    if verdict.status == lattice.EMPTY:
        assert not inside
    if verdict.status == lattice.BOUNDED:
        w = verdict.witness
        assert all(sum(Fraction(x) * y for x, y in zip(a, w)) >= c for a, c in hs)
        # vertices are Cramer quotients with numerators at most 24
        assert inside == _box_points(hs, 2, 40)
    if verdict.status == lattice.UNBOUNDED:
        d = verdict.witness
        assert any(d)
        assert all(sum(Fraction(x) * y for x, y in zip(a, d)) >= 0 for a, _ in hs)


def test_lp_examples():
    square = [((1, 0), 0), ((-1, 0), -1), ((0, 1), 0), ((0, -1), -1)]
    assert lattice.lp_classify(square).status == lattice.BOUNDED
    assert lattice.lp_classify(square[:3]).status == lattice.UNBOUNDED
    assert lattice.lp_classify([((1, 0), 1), ((-1, 0), 0)]).status == lattice.EMPTY


def test_primitive_and_content():
    assert lattice.primitive([Fraction(1, 2), Fraction(3, 4)]) == [2, 3]
    assert lattice.content([4, -6, 8]) == 2
