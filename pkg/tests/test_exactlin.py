from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from comonad_workbench.exactlin import (
    LinMap, ShapeError, coequalizer, compose, equalizer, eye, inverse, kernel, kron,
    kron_apply, parse_scalar, rank, same_subspace, solve_factor, solve_left, symmetry,
    unvec, vec,
)

small = st.integers(-3, 3)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(small, min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
            lambda xs: LinMap(rc[0], rc[1], tuple(Fraction(x) for x in xs))))


def M(rows):
    return LinMap.from_rows(rows)


def test_compose_examples():
    f = M([[1, 2], [3, 4], [5, 6]])
    assert compose(eye(3), f) == f
    assert compose(M([[2]]), M([[3]])) == M([[6]])
    assert compose(M([[1, 1], [0, 1]]), M([[1, 0], [1, 1]])) == M([[2, 1], [1, 1]])


def test_compose_shape_error():
    with pytest.raises(ShapeError):
        compose(eye(2), eye(3))


def test_kron_examples():
    assert kron(eye(2), eye(3)) == eye(6)
    assert kron(M([[2]]), M([[3]])) == M([[6]])
    swap = M([[0, 1], [1, 0]])
    assert kron(swap, eye(2)) == M([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])


def test_symmetry_examples():
    assert symmetry(1, 3) == eye(3)
    assert symmetry(2, 2) == M([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert symmetry(3, 2) @ symmetry(2, 3) == eye(6)


@given(matrices(), matrices())
def test_symmetry_is_natural(f, g):
    lhs = symmetry(f.rows, g.rows) @ kron(f, g)
    rhs = kron(g, f) @ symmetry(f.cols, g.cols)
    assert lhs == rhs


@given(matrices(), matrices(), st.integers(1, 3))
def test_kron_apply_matches_kron(f, g, n):
    m = LinMap.from_sparse(f.cols * g.cols, n, [(i, i % n, i + 1) for i in range(f.cols * g.cols)])
    assert kron_apply(f, g, m) == kron(f, g) @ m


def test_equalizer_examples():
    f = M([[1, 2], [0, 1]])
    dim, inc = equalizer(f, f)
    assert dim == 2 and same_subspace(inc, eye(2))
    dim, inc = equalizer(M([[1, 0]]), M([[0, 1]]))
    assert dim == 1 and same_subspace(inc, M([[1], [1]]))
    dim, inc = equalizer(LinMap.diag([1, 2]), eye(2))
    assert dim == 1 and same_subspace(inc, M([[1], [0]]))


def test_coequalizer_examples():
    f = M([[1, 2], [0, 1]])
    dim, proj = coequalizer(f, f)
    assert dim == 2 and rank(proj) == 2
    dim, proj = coequalizer(M([[1], [0]]), M([[0], [1]]))
    assert dim == 1 and proj @ M([[1], [-1]]) == LinMap.zero(1, 1)
    dim, proj = coequalizer(LinMap.zero(2, 2), eye(2))
    assert dim == 0 and proj.shape == (0, 2)


@given(matrices(), matrices())
def test_equalizer_universal(f, g):
    if f.shape != g.shape:
        return
    _, inc = equalizer(f, g)
    assert f @ inc == g @ inc
    k = kernel(f - g)
    assert solve_factor(inc, k) is not None


@given(matrices(), matrices())
def test_coequalizer_universal(f, g):
    if f.shape != g.shape:
        return
    dim, proj = coequalizer(f, g)
    assert proj @ f == proj @ g
    assert rank(proj) == dim


def test_solve_factor_examples():
    h = M([[1, 2], [3, 4]])
    assert solve_factor(eye(2), h) == h
    assert solve_factor(M([[1], [1]]), M([[2], [2]])) == M([[2]])
    assert solve_factor(M([[1], [0]]), M([[0], [1]])) is None


def test_solve_left():
    p = M([[1, 1]])
    assert solve_left(p, M([[3, 3]])) == M([[3]])
    assert solve_left(p, M([[1, 0]])) is None


@given(matrices())
def test_kernel_is_kernel(m):
    k = kernel(m)
    assert (m @ k).is_zero()
    assert k.cols == m.cols - rank(m)


def test_inverse():
    m = M([[2, 1], [1, 1]])
    assert m @ inverse(m) == eye(2)
    assert inverse(M([[1, 1], [1, 1]])) is None


@given(matrices())
def test_vec_roundtrip(m):
    assert unvec(vec(m), m.rows, m.cols) == m


def test_parse_scalar():
    assert parse_scalar("-3/6") == Fraction(-1, 2)
    assert parse_scalar("7") == 7
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1/0")
    with pytest.raises(ValueError):
        parse_scalar("0.5")
