"""Named structures used by tests, fixtures and the samplers."""

from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Hashable, Sequence

from .exactlin import LinMap
from .structures import FinAlgebra, FinBialgebra, FinCoalgebra


def ground_coalgebra() -> FinCoalgebra:
    return FinCoalgebra(1, LinMap.identity(1), LinMap.identity(1))


def ground_algebra() -> FinAlgebra:
    return FinAlgebra(1, LinMap.identity(1), LinMap.identity(1))


def ground_bialgebra() -> FinBialgebra:
    return FinBialgebra(ground_coalgebra(), ground_algebra())


def grouplike_coalgebra(n: int) -> FinCoalgebra:
    """Basis of ``n`` group-like elements: ``comult(e_i) = e_i (x) e_i``."""
    comult = LinMap.from_sparse(n * n, n, ((i * n + i, i, 1) for i in range(n)))
    return FinCoalgebra(n, comult, LinMap.from_rows([[1] * n]))


def product_algebra(n: int) -> FinAlgebra:
    """``Q x ... x Q`` with componentwise multiplication."""
    mult = LinMap.from_sparse(n, n * n, ((i, i * n + i, 1) for i in range(n)))
    return FinAlgebra(n, mult, LinMap.from_columns([[1] * n], n))


def group_bialgebra(elements: Sequence[Hashable],
                    op: Callable[[Hashable, Hashable], Hashable],
                    identity: Hashable) -> FinBialgebra:
    """The group bialgebra on the listed elements, group-likes as the basis."""
    n = len(elements)
    index = {g: i for i, g in enumerate(elements)}
    mult = LinMap.from_sparse(
        n, n * n,
        ((index[op(a, b)], i * n + j, 1)
         for i, a in enumerate(elements) for j, b in enumerate(elements)))
    unit = LinMap.from_sparse(n, 1, [(index[identity], 0, 1)])
    return FinBialgebra(grouplike_coalgebra(n), FinAlgebra(n, mult, unit))


def cyclic_group_bialgebra(n: int) -> FinBialgebra:
    return group_bialgebra(list(range(n)), lambda a, b: (a + b) % n, 0)


def kz2() -> FinBialgebra:
    """The group bialgebra of Z/2 on the basis ``{1, g}``."""
    return cyclic_group_bialgebra(2)


def kz2xz2() -> FinBialgebra:
    """Z/2 x Z/2 on ``(0,0), (0,1), (1,0), (1,1)``; matches ``kz2 (x) kz2``."""
    els = list(product(range(2), range(2)))
    return group_bialgebra(els, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (0, 0))


def s3_bialgebra() -> FinBialgebra:
    els = list(permutations(range(3)))
    return group_bialgebra(els, lambda p, q: tuple(p[q[i]] for i in range(3)), (0, 1, 2))


def divided_power_coalgebra(k: int) -> FinCoalgebra:
    """Basis ``x^(0..k-1)`` with ``comult x^(n) = sum_{i+j=n} x^(i) (x) x^(j)``."""
    comult = LinMap.from_sparse(
        k * k, k, ((i * k + (n - i), n, 1) for n in range(k) for i in range(n + 1)))
    counit = LinMap.from_sparse(1, k, [(0, 0, 1)])
    return FinCoalgebra(k, comult, counit)


def truncated_polynomial_algebra(k: int) -> FinAlgebra:
    """``Q[x]/(x^k)`` on the monomial basis."""
    mult = LinMap.from_sparse(
        k, k * k, ((i + j, i * k + j, 1) for i in range(k) for j in range(k) if i + j < k))
    return FinAlgebra(k, mult, LinMap.from_sparse(k, 1, [(0, 0, 1)]))


def matrix_coalgebra(n: int) -> FinCoalgebra:
    """``comult e_ij = sum_k e_ik (x) e_kj``, ``counit e_ij = [i == j]``."""
    d = n * n
    items = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                items.append(((i * n + k) * d + (k * n + j), i * n + j, 1))
    counit = LinMap.from_sparse(1, d, ((0, i * n + i, 1) for i in range(n)))
    return FinCoalgebra(d, LinMap.from_sparse(d * d, d, items), counit)


def upper_triangular_coalgebra() -> FinCoalgebra:
    """Subcoalgebra of the 2x2 matrix coalgebra on ``e11, e12, e22``."""
    # basis order e11, e12, e22
    items = [
        (0 * 3 + 0, 0, 1),                    # e11 -> e11 e11
        (0 * 3 + 1, 1, 1), (1 * 3 + 2, 1, 1),  # e12 -> e11 e12 + e12 e22
        (2 * 3 + 2, 2, 1),                    # e22 -> e22 e22
    ]
    return FinCoalgebra(3, LinMap.from_sparse(9, 3, items),
                        LinMap.from_rows([[1, 0, 1]]))


def sweedler_bialgebra() -> FinBialgebra:
    """Sweedler's four-dimensional bialgebra on ``1, g, x, gx``.

    ``g^2 = 1``, ``x^2 = 0``, ``xg = -gx``, ``comult g = g (x) g``,
    ``comult x = x (x) 1 + g (x) x``.
    """
    # represent basis element g^a x^b as (a, b); index 2*b + a gives 1, g, x, gx
    def idx(a: int, b: int) -> int:
        return 2 * b + a

    n = 4
    mult_items = []
    for a1, b1, a2, b2 in product(range(2), repeat=4):
        # (g^a1 x^b1)(g^a2 x^b2) = (-1)^(b1 a2) g^(a1+a2) x^(b1+b2)
        if b1 + b2 > 1:
            continue
        sign = -1 if (b1 * a2) % 2 else 1
        mult_items.append((idx((a1 + a2) % 2, b1 + b2), idx(a1, b1) * n + idx(a2, b2), sign))
    mult = LinMap.from_sparse(n, n * n, mult_items)
    unit = LinMap.from_sparse(n, 1, [(idx(0, 0), 0, 1)])

    def t(u: int, v: int) -> int:
        return u * n + v

    one, g, x, gx = idx(0, 0), idx(1, 0), idx(0, 1), idx(1, 1)
    comult_items = [
        (t(one, one), one, 1),
        (t(g, g), g, 1),
        (t(x, one), x, 1), (t(g, x), x, 1),
        # comult(gx) = (g (x) g)(x (x) 1 + g (x) x) = gx (x) g + 1 (x) gx
        (t(gx, g), gx, 1), (t(one, gx), gx, 1),
    ]
    comult = LinMap.from_sparse(n * n, n, comult_items)
    counit = LinMap.from_rows([[1, 1, 0, 0]])
    return FinBialgebra(FinCoalgebra(n, comult, counit), FinAlgebra(n, mult, unit))


def broken_counit_kz2() -> FinBialgebra:
    """``kz2`` with ``counit(g) = 0``; fails the counit axioms."""
    h = kz2()
    bad = FinCoalgebra(2, h.comult, LinMap.from_rows([[1, 0]]))
    return FinBialgebra(bad, h.algebra)


# small coalgebras (dim <= 3) used by the random samplers
def small_coalgebras() -> list[FinCoalgebra]:
    return [
        ground_coalgebra(),
        grouplike_coalgebra(2),
        grouplike_coalgebra(3),
        divided_power_coalgebra(2),
        divided_power_coalgebra(3),
        upper_triangular_coalgebra(),
    ]


def small_algebras() -> list[FinAlgebra]:
    return [
        ground_algebra(),
        product_algebra(2),
        product_algebra(3),
        truncated_polynomial_algebra(2),
        truncated_polynomial_algebra(3),
        kz2().algebra,
    ]
