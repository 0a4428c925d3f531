"""Exact integer matrices: Hermite/Smith normal forms, solving, kernels.

All arithmetic uses Python's arbitrary-precision integers; intermediate
entries of the normal-form reductions routinely exceed any fixed width.
Pivots are always chosen with minimal nonzero absolute value, ties broken
by lowest (row, col) index, so the transforms U and V are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix in row-major order.

    ``cols`` is stored explicitly so 0-row matrices keep their width.
    """

    data: tuple[tuple[int, ...], ...]
    cols: int

    @property
    def rows(self) -> int:
        return len(self.data)

    def __post_init__(self) -> None:
        for row in self.data:
            if len(row) != self.cols:
                raise DimensionMismatch(
                    f"row of length {len(row)} in matrix with {self.cols} columns"
                )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "IntMatrix":
        return _transpose(self)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        ocols = other.cols
        out = []
        for r in self.data:
            acc = [0] * ocols
            for a, orow in zip(r, other.data):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return IntMatrix(tuple(out), ocols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.data), self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)

    def apply_to_row(self, v: Sequence[int]) -> tuple[int, ...]:
        """Row-vector action v @ self."""
        if len(v) != self.rows:
            raise DimensionMismatch(f"vector of length {len(v)} @ {self.shape}")
        acc = [0] * self.cols
        for a, r in zip(v, self.data):
            if a:
                for j, b in enumerate(r):
                    if b:
                        acc[j] += a * b
        return tuple(acc)

    def apply_to_column(self, v: Sequence[int]) -> tuple[int, ...]:
        """Column-vector action self @ v."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(v)}")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def to_json(self) -> list[list[str]]:
        """Decimal strings, not numbers: arbitrary precision survives JSON."""
        return [[str(a) for a in r] for r in self.data]

    @staticmethod
    def from_json(obj: Iterable[Iterable[str]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [tuple(int(a) for a in r) for r in obj]
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        return IntMatrix(tuple(rows), cols)


def _transpose(m: IntMatrix) -> IntMatrix:
    if not m.data:
        return IntMatrix(tuple(() for _ in range(m.cols)), 0)
    return IntMatrix(tuple(zip(*m.data)), m.rows)


def mat(rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> IntMatrix:
    tup = tuple(tuple(int(a) for a in r) for r in rows)
    if cols is None:
        if not tup:
            raise ValueError("column count required for an empty matrix")
        cols = len(tup[0])
    return IntMatrix(tup, cols)


def identity(n: int) -> IntMatrix:
    return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)


def zeros(r: int, c: int) -> IntMatrix:
    return IntMatrix(tuple(tuple(0 for _ in range(c)) for _ in range(r)), c)


def vstack(*ms: IntMatrix) -> IntMatrix:
    cols = {m.cols for m in ms}
    if len(cols) != 1:
        raise DimensionMismatch(f"vstack of widths {sorted(cols)}")
    return IntMatrix(tuple(r for m in ms for r in m.data), cols.pop())


def hstack(*ms: IntMatrix) -> IntMatrix:
    rows = {m.rows for m in ms}
    if len(rows) != 1:
        raise DimensionMismatch(f"hstack of heights {sorted(rows)}")
    n = rows.pop()
    return IntMatrix(
        tuple(tuple(a for m in ms for a in m.data[i]) for i in range(n)),
        sum(m.cols for m in ms),
    )


def block_diag(*ms: IntMatrix) -> IntMatrix:
    total_c = sum(m.cols for m in ms)
    out = []
    offset = 0
    for m in ms:
        for r in m.data:
            out.append(tuple([0] * offset + list(r) + [0] * (total_c - offset - m.cols)))
        offset += m.cols
    return IntMatrix(tuple(out), total_c)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise DimensionMismatch(f"determinant of {m.shape}")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _min_abs_pivot(a: list[list[int]], rows: Sequence[int], col: int) -> Optional[int]:
    """Row index among ``rows`` minimizing |a[i][col]| over nonzero entries."""
    best = None
    best_abs = None
    for i in rows:
        v = abs(a[i][col])
        if v and (best_abs is None or v < best_abs):
            best, best_abs = i, v
    return best


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with H = U @ m, U unimodular, H in row-echelon form
    with positive pivots and entries above each pivot reduced into
    [0, pivot).
    """
    r, c = m.shape
    a = m.to_lists()
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]

    def rowsub(i: int, k: int, q: int) -> None:
        if q:
            ai, ak = a[i], a[k]
            for j in range(c):
                ai[j] -= q * ak[j]
            ui, uk = u[i], u[k]
            for j in range(r):
                ui[j] -= q * uk[j]

    pr = 0
    for col in range(c):
        if pr >= r:
            break
        while True:
            live = [i for i in range(pr, r) if a[i][col] != 0]
            if len(live) <= 1:
                break
            piv = _min_abs_pivot(a, live, col)
            for i in live:
                if i != piv:
                    rowsub(i, piv, a[i][col] // a[piv][col])
        live = [i for i in range(pr, r) if a[i][col] != 0]
        if not live:
            continue
        i0 = live[0]
        if i0 != pr:
            a[pr], a[i0] = a[i0], a[pr]
            u[pr], u[i0] = u[i0], u[pr]
        if a[pr][col] < 0:
            a[pr] = [-x for x in a[pr]]
            u[pr] = [-x for x in u[pr]]
        for i in range(pr):
            rowsub(i, pr, a[i][col] // a[pr][col])
        pr += 1
    return mat(a, c), mat(u, r)


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form.

    Returns (U, D, V) with D = U @ m @ V, U and V unimodular, D diagonal
    with nonnegative entries satisfying d1 | d2 | ... .
    """
    r, c = m.shape
    a = m.to_lists()
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def rowsub(i: int, k: int, q: int) -> None:
        if q:
            for j in range(c):
                a[i][j] -= q * a[k][j]
            for j in range(r):
                u[i][j] -= q * u[k][j]

    def colsub(j: int, k: int, q: int) -> None:
        if q:
            for i in range(r):
                a[i][j] -= q * a[i][k]
            for i in range(c):
                v[i][j] -= q * v[i][k]

    def rowswap(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def colswap(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    n = min(r, c)
    for t in range(n):
        while True:
            # Deterministic pivot: minimal |entry| in the trailing block,
            # lowest (row, col) on ties.
            piv = None
            piv_abs = None
            for i in range(t, r):
                for j in range(t, c):
                    val = abs(a[i][j])
                    if val and (piv_abs is None or val < piv_abs):
                        piv, piv_abs = (i, j), val
            if piv is None:
                break
            if piv[0] != t:
                rowswap(t, piv[0])
            if piv[1] != t:
                colswap(t, piv[1])
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    rowsub(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j]:
                    colsub(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # Cross is clear; enforce divisibility of the trailing block.
            p = a[t][t]
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rowsub(t, bad, -1)  # pull the offending row up, re-pivot
        if all(a[t][j] == 0 for j in range(t, c)) and all(
            a[i][t] == 0 for i in range(t, r)
        ):
            if a[t][t] == 0:
                # trailing block is zero
                break
    for t in range(n):
        if a[t][t] < 0:
            for j in range(c):
                a[t][j] = -a[t][j]
            for j in range(r):
                u[t][j] = -u[t][j]
    return mat(u, r), mat(a, c), mat(v, c)


def diagonal(d: IntMatrix) -> tuple[int, ...]:
    return tuple(d.data[i][i] for i in range(min(d.rows, d.cols)))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form."""
    _, d, _ = snf(m)
    return tuple(x for x in diagonal(d) if x != 0)


def solve_linear(
    m: IntMatrix, b: Sequence[int]
) -> tuple[Optional[tuple[int, ...]], IntMatrix]:
    """Solve m @ x = b over the integers.

    Returns (x, K) where x is one particular solution (or None when the
    system has no integral solution) and the rows of K are a basis of
    {x : m @ x = 0}.  The kernel basis is returned even when the system
    is unsolvable.
    """
    r, c = m.shape
    if len(b) != r:
        raise DimensionMismatch(f"rhs of length {len(b)} for {m.shape}")
    u, d, v = snf(m)
    diag = diagonal(d)
    cp = u.apply_to_column(b)
    n = len(diag)
    y = [0] * c
    ok = True
    for i in range(r):
        if i < n and diag[i] != 0:
            if cp[i] % diag[i]:
                ok = False
                break
            y[i] = cp[i] // diag[i]
        elif cp[i] != 0:
            ok = False
            break
    x = tuple(v.apply_to_column(y)) if ok else None
    free = [i for i in range(c) if i >= n or diag[i] == 0]
    kernel_rows = [v.column(i) for i in free]
    kern = mat(kernel_rows, c) if kernel_rows else zeros(0, c)
    h, _ = hnf(kern)
    basis = mat([row for row in h.data if any(row)], c) if h.rows else kern
    return x, basis


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Basis (rows) of the saturated lattice {x : m @ x^T = 0}."""
    mt = _transpose(m)
    h, u = hnf(mt)
    rows = [u.row(i) for i in range(h.rows) if not any(h.row(i))]
    kern = mat(rows, m.cols) if rows else zeros(0, m.cols)
    h2, _ = hnf(kern)
    nz = [row for row in h2.data if any(row)]
    return mat(nz, m.cols) if nz else zeros(0, m.cols)


def is_unimodular(m: IntMatrix) -> bool:
    return m.rows == m.cols and abs(det(m)) == 1


def rank(m: IntMatrix) -> int:
    h, _ = hnf(m)
    return sum(1 for row in h.data if any(row))


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix (exact, via HNF transform)."""
    h, u = hnf(m)
    # h must be the identity up to pivot signs; for unimodular m, h = I.
    if h != identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return u
