#  Copyright (c) torichow authors 2026-10-18.

"""Exact integer linear algebra over numpy object arrays.

All matrices are 2-D ``numpy`` arrays with ``dtype=object`` holding Python
ints, so arithmetic never overflows. Empty shapes are legal and act as maps
to or from the zero lattice.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import sympy

from torichow.types import IntMatrix, IntVector, InvalidInputError

log = logging.getLogger(__name__)


def zeros(rows: int, cols: int) -> IntMatrix:
    m = np.empty((rows, cols), dtype=object)
    m.fill(0)
    return m


def identity(n: int) -> IntMatrix:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def int_matrix(data, rows: int = None, cols: int = None) -> IntMatrix:
    if isinstance(data, np.ndarray) and data.ndim == 2:
        m = zeros(*data.shape)
        for (i, j), value in np.ndenumerate(data):
            m[i, j] = int(value)
        return m
    data = [list(row) for row in data]
    if rows is None:
        rows = len(data)
    if cols is None:
        cols = len(data[0]) if data else 0
    m = zeros(rows, cols)
    if len(data) != rows or any(len(row) != cols for row in data):
        raise InvalidInputError(f"Ragged matrix data, expected {rows}x{cols}")
    for i, row in enumerate(data):
        for j, value in enumerate(row):
            m[i, j] = int(value)
    return m


def from_columns(columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
    m = zeros(rows, len(columns))
    for j, col in enumerate(columns):
        if len(col) != rows:
            raise InvalidInputError(f"Column {j} has length {len(col)} != {rows}")
        for i, value in enumerate(col):
            m[i, j] = int(value)
    return m


def hstack(*blocks: IntMatrix) -> IntMatrix:
    rows = blocks[0].shape[0]
    cols = sum(b.shape[1] for b in blocks)
    m = zeros(rows, cols)
    j = 0
    for b in blocks:
        m[:, j : j + b.shape[1]] = b
        j += b.shape[1]
    return m


def vstack(*blocks: IntMatrix) -> IntMatrix:
    return hstack(*(b.T for b in blocks)).T.copy()


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.shape[1] != b.shape[0]:
        raise InvalidInputError(f"Cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def mat_vec(a: IntMatrix, x: Sequence[int]) -> IntVector:
    column = from_columns([x], len(x))
    return tuple(int(v) for v in mat_mul(a, column)[:, 0])


def to_lists(m: IntMatrix) -> List[List[int]]:
    return [[int(v) for v in row] for row in m]


def det(m: IntMatrix) -> int:
    if m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"Determinant of a non-square {m.shape} matrix")
    if m.shape[0] == 0:
        return 1
    return int(sympy.Matrix(to_lists(m)).det())


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    if u.shape[0] == 0:
        return zeros(0, 0)
    inverse = sympy.Matrix(to_lists(u)).inv()
    return int_matrix(inverse.tolist())


def rational_rank(m: IntMatrix) -> int:
    if 0 in m.shape:
        return 0
    return sympy.Matrix(to_lists(m)).rank()


@dataclass(frozen=True)
class SnfResult:
    d: IntMatrix
    u: IntMatrix
    v: IntMatrix
    rank: int

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(int(self.d[i, i]) for i in range(self.rank))


class Cokernel(NamedTuple):
    free_rank: int
    torsion: Tuple[int, ...]
    projection: IntMatrix


def _find_pivot(a: IntMatrix, t: int) -> Optional[Tuple[int, int]]:
    best = None
    rows, cols = a.shape
    for i in range(t, rows):
        for j in range(t, cols):
            value = abs(a[i, j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return best and best[1:]


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form with transforms, so that ``u @ m @ v == d``.

    Pivots are chosen as the first smallest nonzero entry in row-major
    order, which keeps the output deterministic.
    """
    a = int_matrix(m)
    rows, cols = a.shape
    u = identity(rows)
    v = identity(cols)

    t = 0
    while t < min(rows, cols):
        pivot = _find_pivot(a, t)
        if pivot is None:
            break
        while True:
            i, j = pivot
            a[[t, i]] = a[[i, t]]
            u[[t, i]] = u[[i, t]]
            a[:, [t, j]] = a[:, [j, t]]
            v[:, [t, j]] = v[:, [j, t]]
            p = a[t, t]
            for i in range(t + 1, rows):
                q = a[i, t] // p
                if q:
                    a[i] -= q * a[t]
                    u[i] -= q * u[t]
            for j in range(t + 1, cols):
                q = a[t, j] // p
                if q:
                    a[:, j] -= q * a[:, t]
                    v[:, j] -= q * v[:, t]
            if any(a[t + 1 :, t]) or any(a[t, t + 1 :]):
                pivot = _find_pivot(a, t)
                continue
            # enforce the divisibility chain
            bad = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i, j] % p
                ),
                None,
            )
            if bad is None:
                break
            a[t] += a[bad]
            u[t] += u[bad]
            pivot = (t, t)
        if a[t, t] < 0:
            a[t] = -a[t]
            u[t] = -u[t]
        t += 1

    log.debug("SNF of %dx%d matrix has rank %d", rows, cols, t)
    return SnfResult(d=a, u=u, v=v, rank=t)


def _column_hnf(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, List[Tuple[int, int]]]:
    h = int_matrix(m)
    rows, cols = h.shape
    t = identity(cols)
    pivots = []
    pc = 0
    for r in range(rows):
        if pc >= cols:
            break
        while True:
            nonzero = [j for j in range(pc, cols) if h[r, j]]
            if not nonzero:
                break
            j = min(nonzero, key=lambda k: (abs(h[r, k]), k))
            h[:, [pc, j]] = h[:, [j, pc]]
            t[:, [pc, j]] = t[:, [j, pc]]
            others = [k for k in range(pc + 1, cols) if h[r, k]]
            if not others:
                break
            for k in others:
                q = h[r, k] // h[r, pc]
                h[:, k] -= q * h[:, pc]
                t[:, k] -= q * t[:, pc]
        if not h[r, pc]:
            continue
        if h[r, pc] < 0:
            h[:, pc] = -h[:, pc]
            t[:, pc] = -t[:, pc]
        p = h[r, pc]
        for k in range(pc):
            q = h[r, k] // p
            if q:
                h[:, k] -= q * h[:, pc]
                t[:, k] -= q * t[:, pc]
        pivots.append((r, pc))
        pc += 1
    return h, t, pivots


def hnf(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: ``h == m @ transform``, transform unimodular.

    Pivots are positive and entries left of a pivot lie in ``[0, pivot)``.
    """
    h, t, _ = _column_hnf(m)
    return h, t


def kernel(m: IntMatrix) -> IntMatrix:
    """Columns spanning the integer null space of ``m``."""
    result = snf(m)
    return result.v[:, result.rank :].copy()


def reduce_modulo(x: Sequence[int], lattice: IntMatrix) -> List[int]:
    """Representative of ``x`` modulo the column span of ``lattice``.

    Coordinates at the Hermite pivot rows are reduced top-down to centered
    residues in ``(-p/2, p/2]``.
    """
    x = [int(v) for v in x]
    h, _, pivots = _column_hnf(lattice)
    for r, c in pivots:
        p = h[r, c]
        residue = x[r] % p
        if residue > p // 2:
            residue -= p
        q = (x[r] - residue) // p
        if q:
            x = [x[i] - q * h[i, c] for i in range(len(x))]
    return x


def solve(m: IntMatrix, b: Sequence[int]) -> Optional[IntVector]:
    """An integer ``x`` with ``m @ x == b``, or None when none exists.

    The solution is back-substituted through the Hermite form and then
    reduced to centered residues modulo the kernel lattice, so identical
    input always yields the identical solution.
    """
    rows, cols = m.shape
    if len(b) != rows:
        raise InvalidInputError(f"Target length {len(b)} != {rows} rows")
    h, t, pivots = _column_hnf(m)
    residual = [int(v) for v in b]
    y = [0] * cols
    pivot_rows = dict(pivots)
    for r in range(rows):
        if r not in pivot_rows:
            if residual[r]:
                return None
            continue
        c = pivot_rows[r]
        q, rem = divmod(residual[r], h[r, c])
        if rem:
            return None
        y[c] = q
        residual = [residual[i] - q * h[i, c] for i in range(rows)]
    x = list(mat_vec(t, y)) if cols else []
    rank = len(pivots)
    if rank < cols:
        x = reduce_modulo(x, t[:, rank:])
    return tuple(int(v) for v in x)


def lattice_contains(m: IntMatrix, b: Sequence[int]) -> bool:
    return solve(m, b) is not None


def cokernel(m: IntMatrix) -> Cokernel:
    """Quotient of the codomain lattice by the column span of ``m``.

    Coordinates of the quotient are the free ones first, then the torsion
    ones in divisibility order. Column ``j`` of the projection holds the
    coordinates of the ``j``-th standard basis vector.
    """
    rows = m.shape[0]
    result = snf(m)
    diagonal = result.diagonal
    free = result.u[result.rank :]
    if free.shape[0]:
        # canonical free basis: row Hermite form of the free projection rows
        free = _column_hnf(free.T.copy())[0].T[: free.shape[0]].copy()
    torsion = []
    torsion_rows = []
    for i, d in enumerate(diagonal):
        if d > 1:
            torsion.append(d)
            torsion_rows.append([int(v) % d for v in result.u[i]])
    projection = vstack(free, int_matrix(torsion_rows, len(torsion_rows), rows))
    return Cokernel(
        free_rank=rows - result.rank,
        torsion=tuple(torsion),
        projection=projection,
    )
