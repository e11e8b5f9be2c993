"""Matrices over the energy-function semiring acting on vectors of threshold tests.

Products are diagrammatic: ``(M N)[i][j] = join_k M[i][k] ; N[k][j]``.
Matrices may be rectangular (and empty) so that the block formulas can be
written directly; star and omega require square inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import efun, vsem
from .efun import EnergyFunction
from .vsem import ThresholdTest

__all__ = [
    "DimensionMismatch",
    "FunctionMatrix",
    "mat_zero",
    "mat_identity",
    "mat_join",
    "mat_mul",
    "mat_power",
    "mat_equals",
    "mat_star_block",
    "mat_star_elim",
    "mat_star",
    "mat_omega",
    "mat_act",
    "row_act",
    "vec_join",
    "render_matrix",
]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FunctionMatrix:
    rows: tuple
    ncols: int

    @classmethod
    def of(cls, rows: Sequence[Sequence[EnergyFunction]], ncols: int = None) -> "FunctionMatrix":
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        return cls(rows, ncols)

    @property
    def shape(self) -> tuple:
        return (len(self.rows), self.ncols)

    @property
    def n(self) -> int:
        if len(self.rows) != self.ncols:
            raise DimensionMismatch(f"matrix of shape {self.shape} is not square")
        return self.ncols

    def __getitem__(self, ij) -> EnergyFunction:
        i, j = ij
        return self.rows[i][j]

    def block(self, rows: range, cols: range) -> "FunctionMatrix":
        return FunctionMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))


def _make(nrows: int, ncols: int, entry) -> FunctionMatrix:
    return FunctionMatrix(
        tuple(tuple(entry(i, j) for j in range(ncols)) for i in range(nrows)), ncols
    )


def mat_zero(n: int, m: int = None) -> FunctionMatrix:
    bot = efun.bottom_function()
    return _make(n, n if m is None else m, lambda i, j: bot)


def mat_identity(n: int) -> FunctionMatrix:
    bot, one = efun.bottom_function(), efun.identity()
    return _make(n, n, lambda i, j: one if i == j else bot)


def mat_join(m: FunctionMatrix, n: FunctionMatrix) -> FunctionMatrix:
    if m.shape != n.shape:
        raise DimensionMismatch(f"cannot join {m.shape} with {n.shape}")
    return _make(*m.shape, lambda i, j: efun.join(m[i, j], n[i, j]))


def mat_mul(m: FunctionMatrix, n: FunctionMatrix) -> FunctionMatrix:
    (r, inner), (inner2, c) = m.shape, n.shape
    if inner != inner2:
        raise DimensionMismatch(f"cannot multiply {m.shape} by {n.shape}")
    return _make(
        r, c, lambda i, j: efun.join_all(efun.compose(m[i, k], n[k, j]) for k in range(inner))
    )


def mat_power(m: FunctionMatrix, k: int) -> FunctionMatrix:
    out = mat_identity(m.n)
    for _ in range(k):
        out = mat_mul(out, m)
    return out


def mat_equals(m: FunctionMatrix, n: FunctionMatrix) -> bool:
    return m.shape == n.shape and all(
        efun.equals(m[i, j], n[i, j]) for i in range(m.shape[0]) for j in range(m.shape[1])
    )


def _split(m: FunctionMatrix):
    n = m.n
    head, rest = range(0, 1), range(1, n)
    return m[0, 0], m.block(head, rest), m.block(rest, head), m.block(rest, rest)


def _scalar(f: EnergyFunction) -> FunctionMatrix:
    return FunctionMatrix(((f,),), 1)


def mat_star_block(m: FunctionMatrix) -> FunctionMatrix:
    """Star via the 2x2 block formula, splitting off the first row and column.

    Both diagonal blocks recurse, so the cost doubles with each dimension.
    """
    n = m.n
    if n == 0:
        return m
    if n == 1:
        return _scalar(efun.star(m[0, 0]))
    a, b, c, d = _split(m)
    d_star = mat_star_block(d)
    a_star = _scalar(efun.star(a))
    # (a v b d* c)*
    top_left = efun.star(efun.join(a, mat_mul(mat_mul(b, d_star), c)[0, 0]))
    tl = _scalar(top_left)
    top_right = mat_mul(mat_mul(tl, b), d_star)
    # (d v c a* b)*
    br = mat_star_block(mat_join(d, mat_mul(mat_mul(c, a_star), b)))
    bottom_left = mat_mul(mat_mul(br, c), a_star)
    rows = [(top_left,) + top_right.rows[0]]
    for i in range(n - 1):
        rows.append(bottom_left.rows[i] + br.rows[i])
    return FunctionMatrix(tuple(rows), n)


def mat_star_elim(m: FunctionMatrix) -> FunctionMatrix:
    """Star by pivot elimination over the states, then closing the diagonal."""
    n = m.n
    a = [list(r) for r in m.rows]
    for p in range(n):
        s = efun.star(a[p][p])
        via = [efun.compose(a[i][p], s) for i in range(n)]
        a = [
            [efun.join(a[i][j], efun.compose(via[i], a[p][j])) for j in range(n)]
            for i in range(n)
        ]
    one = efun.identity()
    for i in range(n):
        a[i][i] = efun.join(a[i][i], one)
    return FunctionMatrix.of(a, n)


mat_star = mat_star_elim


def mat_act(m: FunctionMatrix, v: Sequence[ThresholdTest]) -> tuple:
    r, c = m.shape
    if c != len(v):
        raise DimensionMismatch(f"cannot apply {m.shape} matrix to vector of length {len(v)}")
    return tuple(vsem.join_all(vsem.act(m[i, j], v[j]) for j in range(c)) for i in range(r))


def row_act(alpha: Sequence, v: Sequence[ThresholdTest]) -> ThresholdTest:
    """Join of the entries of ``v`` selected by the 0/1 row ``alpha``."""
    if len(alpha) != len(v):
        raise DimensionMismatch(f"row of length {len(alpha)} against vector of length {len(v)}")
    return vsem.join_all(x for sel, x in zip(alpha, v) if sel)


def vec_join(v: Sequence[ThresholdTest], w: Sequence[ThresholdTest]) -> tuple:
    if len(v) != len(w):
        raise DimensionMismatch("vector lengths differ")
    return tuple(vsem.join(x, y) for x, y in zip(v, w))


def mat_omega(m: FunctionMatrix) -> tuple:
    """Infinite-path vector: entry i joins the infinite products of all paths from i."""
    n = m.n
    if n == 0:
        return ()
    if n == 1:
        return (vsem.omega(m[0, 0]),)
    a, b, c, d = _split(m)
    d_star = mat_star(d)
    # top: (a v b d* c)^w  v  (a v b d* c)* b d^w
    pivot = efun.join(a, mat_mul(mat_mul(b, d_star), c)[0, 0])
    through_rest = vsem.act(efun.star(pivot), mat_act(b, mat_omega(d))[0])
    top = vsem.join(vsem.omega(pivot), through_rest)
    # bottom: (d v c a* b)^w  v  (d v c a* b)* c a^w
    rest = mat_join(d, mat_mul(mat_mul(c, _scalar(efun.star(a))), b))
    via_head = mat_act(mat_mul(mat_star(rest), c), (vsem.omega(a),))
    bottom = vec_join(mat_omega(rest), via_head)
    return (top,) + bottom


def render_matrix(m: FunctionMatrix) -> str:
    r, c = m.shape
    return "\n".join(
        f"[{i + 1},{j + 1}] {efun.render(m[i, j])}" for i in range(r) for j in range(c)
    )
