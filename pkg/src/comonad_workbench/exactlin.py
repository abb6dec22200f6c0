"""Exact dense linear algebra over the rationals.

Every structural arrow in the workbench is a :class:`LinMap`: a matrix of
:class:`fractions.Fraction` with an explicit target dimension (``rows``) and
source dimension (``cols``).  Tensor products use the flat index convention
``(i, j) -> i * dim(W) + j`` for a basis vector of ``V (x) W``, so ``kron``
is strictly associative and associators/unitors are identity matrices.

Subspaces and quotients are returned in a canonical echelon form, which makes
results comparable with ``==``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class ShapeError(ValueError):
    """Raised when two maps cannot be combined because of their dimensions."""


def parse_scalar(token: str) -> Fraction:
    """Parse ``p`` or ``p/q``; rejects a zero denominator."""
    if not _RATIONAL.match(token):
        raise ValueError(f"not a rational: {token!r}")
    if "/" in token:
        p, q = token.split("/")
        if int(q) == 0:
            raise ZeroDivisionError(f"zero denominator in {token!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(token))


def format_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=True)
class LinMap:
    """A linear map ``Q^cols -> Q^rows`` stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} map given {len(self.entries)} entries"
            )

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "LinMap":
        r = len(rows)
        if cols is None:
            if r == 0:
                raise ShapeError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        flat: list[Fraction] = []
        for row in rows:
            if len(row) != cols:
                raise ShapeError("ragged rows")
            flat.extend(Fraction(x) for x in row)
        return cls(r, cols, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "LinMap":
        c = len(columns)
        data = [ZERO] * (rows * c)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ShapeError("column of wrong length")
            for i, x in enumerate(col):
                if x:
                    data[i * c + j] = Fraction(x)
        return cls(rows, c, tuple(data))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, items) -> "LinMap":
        """Build from ``{(i, j): value}`` or an iterable of ``(i, j, value)``."""
        data = [ZERO] * (rows * cols)
        if isinstance(items, dict):
            items = ((i, j, v) for (i, j), v in items.items())
        for i, j, v in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i}, {j}) outside {rows}x{cols}")
            data[i * cols + j] += Fraction(v)
        return cls(rows, cols, tuple(data))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinMap":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "LinMap":
        data = [ZERO] * (n * n)
        for i in range(n):
            data[i * n + i] = ONE
        return cls(n, n, tuple(data))

    @classmethod
    def scalar(cls, x) -> "LinMap":
        return cls(1, 1, (Fraction(x),))

    @classmethod
    def diag(cls, values: Sequence) -> "LinMap":
        n = len(values)
        return cls.from_sparse(n, n, ((i, i, v) for i, v in enumerate(values)))

    @classmethod
    def permutation(cls, images: Sequence[int]) -> "LinMap":
        """Matrix sending basis vector ``j`` to basis vector ``images[j]``."""
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError("not a permutation")
        return cls.from_sparse(n, n, ((images[j], j, 1) for j in range(n)))

    # -- access -----------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @cached_property
    def sparse_rows(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        c = self.cols
        e = self.entries
        return tuple(
            tuple((j, x) for j, x in enumerate(e[i * c:(i + 1) * c]) if x)
            for i in range(self.rows)
        )

    def nonzero(self) -> Iterable[tuple[int, int, Fraction]]:
        for i, row in enumerate(self.sparse_rows):
            for j, v in row:
                yield i, j, v

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def max_abs(self) -> Fraction:
        return max((abs(x) for x in self.entries), default=ZERO)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "LinMap") -> "LinMap":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return LinMap(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "LinMap") -> "LinMap":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return LinMap(self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "LinMap":
        return LinMap(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, x) -> "LinMap":
        x = Fraction(x)
        return LinMap(self.rows, self.cols, tuple(x * a for a in self.entries))

    def __rmul__(self, x) -> "LinMap":
        return self.scale(x)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def transpose(self) -> "LinMap":
        r, c = self.rows, self.cols
        e = self.entries
        return LinMap(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    @property
    def T(self) -> "LinMap":
        return self.transpose()

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in self.row(i))
                         for i in range(self.rows))
        return f"LinMap({self.rows}x{self.cols}: [{body}])"


def compose(g: LinMap, f: LinMap) -> LinMap:
    """``g o f``; requires ``g.cols == f.rows``."""
    if g.cols != f.rows:
        raise ShapeError(
            f"cannot compose g ({g.rows}x{g.cols}) after f ({f.rows}x{f.cols})"
        )
    n = f.cols
    frows = f.sparse_rows
    out = [ZERO] * (g.rows * n)
    for i, grow in enumerate(g.sparse_rows):
        base = i * n
        for k, a in grow:
            for j, b in frows[k]:
                out[base + j] += a * b
    return LinMap(g.rows, n, tuple(out))


def chain(*maps: LinMap) -> LinMap:
    """Compose in diagrammatic order: ``chain(f, g, h) = h o g o f``."""
    return reduce(lambda acc, m: compose(m, acc), maps[1:], maps[0])


def kron(f: LinMap, g: LinMap) -> LinMap:
    """Tensor product of maps under the flat index convention."""
    rows, cols = f.rows * g.rows, f.cols * g.cols
    out = [ZERO] * (rows * cols)
    grows = g.sparse_rows
    for i, frow in enumerate(f.sparse_rows):
        for k, a in frow:
            for p, grow in enumerate(grows):
                base = (i * g.rows + p) * cols + k * g.cols
                for q, b in grow:
                    out[base + q] = a * b
    return LinMap(rows, cols, tuple(out))


def kron_apply(f: LinMap, g: LinMap, m: LinMap) -> LinMap:
    """``kron(f, g) @ m`` without forming the Kronecker product."""
    if m.rows != f.cols * g.cols:
        raise ShapeError(f"cannot apply {f.shape} (x) {g.shape} to {m.rows} rows")
    n, gc, gr = m.cols, g.cols, g.rows
    mrows, grows = m.sparse_rows, g.sparse_rows
    # rows of (id (x) g) m, indexed k * gr + p
    partial: list[dict[int, Fraction]] = []
    for k in range(f.cols):
        for grow in grows:
            acc: dict[int, Fraction] = {}
            for q, b in grow:
                for j, v in mrows[k * gc + q]:
                    acc[j] = acc.get(j, ZERO) + b * v
            partial.append(acc)
    out = [ZERO] * (f.rows * gr * n)
    for i, frow in enumerate(f.sparse_rows):
        for p in range(gr):
            base = (i * gr + p) * n
            for k, a in frow:
                for j, v in partial[k * gr + p].items():
                    out[base + j] += a * v
    return LinMap(f.rows * gr, n, tuple(out))


def tensor(*maps: LinMap) -> LinMap:
    return reduce(kron, maps)


def eye(n: int) -> LinMap:
    return LinMap.identity(n)


def symmetry(m: int, n: int) -> LinMap:
    """The swap ``V (x) W -> W (x) V`` for ``dim V = m``, ``dim W = n``."""
    return LinMap.from_sparse(
        m * n, m * n, ((j * m + i, i * n + j, 1) for i in range(m) for j in range(n))
    )


def shuffle(dims: Sequence[int], order: Sequence[int]) -> LinMap:
    """Rearrange tensor factors: ``X_0 (x) ... -> X_order[0] (x) X_order[1] ...``."""
    k = len(dims)
    if sorted(order) != list(range(k)):
        raise ValueError("order must be a permutation of the factors")
    strides = [1] * k
    for a in range(k - 2, -1, -1):
        strides[a] = strides[a + 1] * dims[a + 1]
    new_dims = [dims[o] for o in order]
    new_strides = [1] * k
    for a in range(k - 2, -1, -1):
        new_strides[a] = new_strides[a + 1] * new_dims[a + 1]
    total = 1
    for d in dims:
        total *= d
    images = [0] * total
    for flat in range(total):
        rest = flat
        idx = [0] * k
        for a in range(k):
            idx[a], rest = divmod(rest, strides[a])
        images[flat] = sum(idx[order[b]] * new_strides[b] for b in range(k))
    return LinMap.permutation(images)


def direct_sum(*maps: LinMap) -> LinMap:
    """Block-diagonal sum."""
    rows = sum(m.rows for m in maps)
    cols = sum(m.cols for m in maps)
    items = []
    r0 = c0 = 0
    for m in maps:
        items.extend((r0 + i, c0 + j, v) for i, j, v in m.nonzero())
        r0 += m.rows
        c0 += m.cols
    return LinMap.from_sparse(rows, cols, items)


def hstack(*maps: LinMap) -> LinMap:
    rows = maps[0].rows
    if any(m.rows != rows for m in maps):
        raise ShapeError("hstack needs equal row counts")
    items = []
    c0 = 0
    for m in maps:
        items.extend((i, c0 + j, v) for i, j, v in m.nonzero())
        c0 += m.cols
    return LinMap.from_sparse(rows, c0, items)


def vstack(*maps: LinMap) -> LinMap:
    cols = maps[0].cols
    if any(m.cols != cols for m in maps):
        raise ShapeError("vstack needs equal column counts")
    items = []
    r0 = 0
    for m in maps:
        items.extend((r0 + i, j, v) for i, j, v in m.nonzero())
        r0 += m.rows
    return LinMap.from_sparse(r0, cols, items)


# -- row reduction ---------------------------------------------------------


def _rref(rows: list[dict[int, Fraction]], ncols: int):
    """Reduced row echelon form of sparse rows, pivoting on columns < ncols.

    Rows may carry extra (augmented) columns >= ncols; they are reduced along
    but never chosen as pivots.  Returns ``(reduced_rows, pivots, rest)`` where
    ``rest`` holds the rows that ended up without a pivot.
    """
    pending = [r for r in rows if r]
    basis: list[dict[int, Fraction]] = []
    pivots: list[int] = []
    leftovers: list[dict[int, Fraction]] = []
    for row in pending:
        row = dict(row)
        for b, p in zip(basis, pivots):
            c = row.get(p)
            if c:
                for k, v in b.items():
                    nv = row.get(k, ZERO) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        main = [k for k in row if k < ncols]
        if not main:
            if row:
                leftovers.append(row)
            continue
        p = min(main)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for b in basis:
            c = b.get(p)
            if c:
                for k, v in row.items():
                    nv = b.get(k, ZERO) - c * v
                    if nv:
                        b[k] = nv
                    else:
                        b.pop(k, None)
        basis.append(row)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order], leftovers


def _sparse(m: LinMap) -> list[dict[int, Fraction]]:
    return [dict(r) for r in m.sparse_rows]


def rank(m: LinMap) -> int:
    return len(_rref(_sparse(m), m.cols)[1])


def kernel(m: LinMap) -> LinMap:
    """Canonical kernel basis as the columns of a ``cols x k`` map.

    Each basis vector has a 1 at one free coordinate and 0 at every other
    free coordinate, so the basis is unique for the subspace.
    """
    reduced, pivots, _ = _rref(_sparse(m), m.cols)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    items = []
    for col, f in enumerate(free):
        items.append((f, col, ONE))
        for row, p in zip(reduced, pivots):
            v = row.get(f)
            if v:
                items.append((p, col, -v))
    return LinMap.from_sparse(m.cols, len(free), items)


def row_space(m: LinMap) -> LinMap:
    """Reduced row echelon basis of the row space, as rows of a ``k x cols`` map."""
    reduced, pivots, _ = _rref(_sparse(m), m.cols)
    return LinMap.from_sparse(
        len(reduced), m.cols, ((i, j, v) for i, r in enumerate(reduced) for j, v in r.items())
    )


def column_space(m: LinMap) -> LinMap:
    """Canonical basis of the image, as the columns of a ``rows x k`` map."""
    return row_space(m.transpose()).transpose()


def equalizer(f: LinMap, g: LinMap) -> tuple[int, LinMap]:
    """Kernel of ``f - g`` with its canonical inclusion."""
    if f.shape != g.shape:
        raise ShapeError(f"equalizer of {f.shape} and {g.shape}")
    inc = kernel(f - g)
    return inc.cols, inc


def coequalizer(f: LinMap, g: LinMap) -> tuple[int, LinMap]:
    """Quotient of the target by ``im(f - g)`` with its canonical projection.

    The quotient basis is indexed by the non-pivot coordinates of the reduced
    echelon basis of the image; a vector is reduced against the image and read
    off at those coordinates.
    """
    if f.shape != g.shape:
        raise ShapeError(f"coequalizer of {f.shape} and {g.shape}")
    n = f.rows
    reduced, pivots, _ = _rref(_sparse((f - g).transpose()), n)
    pivset = set(pivots)
    keep = [j for j in range(n) if j not in pivset]
    pos = {j: a for a, j in enumerate(keep)}
    items = [(pos[j], j, ONE) for j in keep]
    for row, p in zip(reduced, pivots):
        for j, v in row.items():
            if j in pos:
                items.append((pos[j], p, -v))
    return len(keep), LinMap.from_sparse(len(keep), n, items)


def solve_factor(through: LinMap, h: LinMap) -> LinMap | None:
    """Return ``u`` with ``through o u == h``, or ``None`` if no solution exists.

    Free variables are set to zero, so the answer is deterministic.
    """
    if through.rows != h.rows:
        raise ShapeError(
            f"cannot factor {h.rows}x{h.cols} through {through.rows}x{through.cols}"
        )
    n = through.cols
    aug = []
    for i in range(through.rows):
        row = dict(through.sparse_rows[i])
        for j, v in h.sparse_rows[i]:
            row[n + j] = v
        aug.append(row)
    reduced, pivots, rest = _rref(aug, n)
    if rest:
        return None
    items = []
    for row, p in zip(reduced, pivots):
        for k, v in row.items():
            if k >= n:
                items.append((p, k - n, v))
    return LinMap.from_sparse(n, h.cols, items)


def solve_left(through: LinMap, h: LinMap) -> LinMap | None:
    """Return ``u`` with ``u o through == h``, or ``None``."""
    u = solve_factor(through.transpose(), h.transpose())
    return None if u is None else u.transpose()


def inverse(m: LinMap) -> LinMap | None:
    if m.rows != m.cols:
        return None
    u = solve_factor(m, eye(m.rows))
    if u is None or rank(m) != m.rows:
        return None
    return u


def is_injective(m: LinMap) -> bool:
    return rank(m) == m.cols


def is_surjective(m: LinMap) -> bool:
    return rank(m) == m.rows


def is_invertible(m: LinMap) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def same_subspace(a: LinMap, b: LinMap) -> bool:
    """Whether the column spans of ``a`` and ``b`` coincide."""
    return column_space(a) == column_space(b)


def vec(m: LinMap) -> LinMap:
    """Row-major flattening of a map into a column vector."""
    return LinMap(m.rows * m.cols, 1, m.entries)


def unvec(v: LinMap, rows: int, cols: int) -> LinMap:
    if v.cols != 1 or v.rows != rows * cols:
        raise ShapeError("vector length does not match the requested shape")
    return LinMap(rows, cols, v.entries)
