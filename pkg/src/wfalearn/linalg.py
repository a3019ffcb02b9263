"""Dense exact matrices and the linear-system solvers behind closedness checks.

Solvers return a solution tuple, or ``None`` when the system has no solution
over the semiring.  Every returned solution is re-verified with
:func:`mat_vec` before it leaves this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .semiring import BOOL, INT, NAT, RAT, Semiring, SolverKind


class DimensionError(ValueError):
    pass


class SolverError(AssertionError):
    """A solver produced a vector that does not solve the system."""


@dataclass(frozen=True)
class Matrix:
    semiring: Semiring
    entries: tuple[tuple, ...]
    ncols: int

    def __init__(self, semiring: Semiring, rows: Sequence[Sequence], ncols: int | None = None):
        entries = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not entries:
                raise DimensionError("ncols is required for a matrix with no rows")
            ncols = len(entries[0])
        for i, r in enumerate(entries):
            if len(r) != ncols:
                raise DimensionError(f"row {i} has {len(r)} entries, expected {ncols}")
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def zeros(cls, semiring: Semiring, nrows: int, ncols: int) -> "Matrix":
        return cls(semiring, [[semiring.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, semiring: Semiring, n: int) -> "Matrix":
        return cls(semiring, [[semiring.one if i == j else semiring.zero for j in range(n)]
                              for i in range(n)], n)

    @classmethod
    def diagonal(cls, semiring: Semiring, values: Sequence, nrows: int | None = None,
                 ncols: int | None = None) -> "Matrix":
        nrows = len(values) if nrows is None else nrows
        ncols = len(values) if ncols is None else ncols
        rows = [[semiring.zero] * ncols for _ in range(nrows)]
        for i, v in enumerate(values):
            rows[i][i] = v
        return cls(semiring, rows, ncols)

    @classmethod
    def from_columns(cls, semiring: Semiring, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        for j, c in enumerate(columns):
            if len(c) != nrows:
                raise DimensionError(f"column {j} has {len(c)} entries, expected {nrows}")
        return cls(semiring, [[c[i] for c in columns] for i in range(nrows)], len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.semiring, self.columns(), self.nrows)

    def map(self, f, semiring: Semiring) -> "Matrix":
        return Matrix(semiring, [[f(x) for x in r] for r in self.entries], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        dot = self.semiring.dot
        return Matrix(self.semiring, [[dot(r, c) for c in cols] for r in self.entries], other.ncols)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]


def mat_vec(A: Matrix, x: Sequence) -> tuple:
    if A.ncols != len(x):
        raise DimensionError(f"matrix has {A.ncols} columns but vector has length {len(x)}")
    dot = A.semiring.dot
    return tuple(dot(r, x) for r in A.entries)


def vec_mat(x: Sequence, A: Matrix) -> tuple:
    """Row vector times matrix."""
    if A.nrows != len(x):
        raise DimensionError(f"vector has length {len(x)} but matrix has {A.nrows} rows")
    s = A.semiring
    out = [s.zero] * A.ncols
    for xi, r in zip(x, A.entries):
        if s.is_zero(xi):
            continue
        for j, a in enumerate(r):
            out[j] = s.add(out[j], s.mul(xi, a))
    return tuple(out)


def _check_rhs(A: Matrix, b: Sequence) -> None:
    if A.nrows != len(b):
        raise DimensionError(f"matrix has {A.nrows} rows but right-hand side has length {len(b)}")


def _verified(A: Matrix, x: tuple, b: Sequence) -> tuple:
    if mat_vec(A, x) != tuple(b):
        raise SolverError(f"solver returned {x!r}, which does not solve the system")
    return x


# ---------------------------------------------------------------------------
# Fields

def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form; return pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def gaussian_solve(A: Matrix, b: Sequence) -> tuple | None:
    """Solve ``A x = b`` over the rationals; free variables are set to zero."""
    _check_rhs(A, b)
    n = A.ncols
    aug = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A.entries, b)]
    pivots = _rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = aug[r][n]
    return _verified(A.map(Fraction, RAT), tuple(x), [Fraction(v) for v in b])


def rank_over_field(A: Matrix) -> int:
    rows = [[Fraction(v) for v in row] for row in A.entries]
    return len(_rref(rows, A.ncols))


# ---------------------------------------------------------------------------
# Integers (Smith normal form)

@dataclass(frozen=True)
class SmithDecomposition:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        d = self.D
        return tuple(d[i, i] for i in range(min(d.shape)) if d[i, i] != 0)


def smith_normal_form(A: Matrix) -> SmithDecomposition:
    """Compute unimodular ``U``, ``V`` with ``U A V = D`` in Smith normal form.

    Pivots are chosen with minimal absolute value in the remaining block.
    """
    m, n = A.shape
    a = [[int(v) for v in row] for row in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row[dst] += f * row[src]
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // p))
                    done = done and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // p))
                    done = done and a[t][j] == 0
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p != 0), None)
            if bad is None:
                break
            # pull the offending row up so the next pass sees a smaller remainder
            add_row(t, bad[0], 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(Matrix(INT, U, m), Matrix(INT, a, n), Matrix(INT, V, n))


def rank_over_pid(A: Matrix) -> int:
    return len(smith_normal_form(A).invariant_factors)


def pid_solve(A: Matrix, b: Sequence) -> tuple | None:
    """Solve ``A x = b`` over the integers through the Smith normal form."""
    _check_rhs(A, b)
    m, n = A.shape
    snf = smith_normal_form(A)
    c = mat_vec(snf.U, [int(v) for v in b])
    y = [0] * n
    for i in range(m):
        d = snf.D[i, i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d != 0:
            return None
        else:
            y[i] = c[i] // d
    x = mat_vec(snf.V, y)
    return _verified(A.map(int, INT), x, [int(v) for v in b])


# ---------------------------------------------------------------------------
# Natural numbers

def _simplex_phase_one(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Exact phase-one simplex for ``rows · y = rhs, y >= 0`` (Bland's rule).

    Returns ``(feasible, pi)`` where ``pi`` is an optimal dual vector of the
    auxiliary problem, expressed for the original row signs.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    signs = [-1 if r < 0 else 1 for r in rhs]
    T = []
    for i in range(m):
        s = signs[i]
        T.append([s * v for v in rows[i]] + [Fraction(int(i == k)) for k in range(m)] + [s * rhs[i]])
    width = n + m
    cost = [Fraction(0)] * (width + 1)
    for j in range(n):
        cost[j] = -sum((T[i][j] for i in range(m)), Fraction(0))
    cost[width] = -sum((T[i][width] for i in range(m)), Fraction(0))
    basis = [n + i for i in range(m)]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leave = None
        for i in range(m):
            if T[i][entering] > 0:
                ratio = T[i][width] / T[i][entering]
                if leave is None or ratio < leave[0] or (ratio == leave[0] and basis[i] < basis[leave[1]]):
                    leave = (ratio, i)
        if leave is None:
            break  # unbounded; cannot happen for phase one
        r = leave[1]
        pv = T[r][entering]
        T[r] = [v / pv for v in T[r]]
        for i in range(m):
            if i != r and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [v - f * w for v, w in zip(T[i], T[r])]
        f = cost[entering]
        cost = [v - f * w for v, w in zip(cost, T[r])]
        basis[r] = entering

    feasible = cost[width] == 0
    pi = [signs[i] * (1 - cost[n + i]) for i in range(m)]
    return feasible, pi


def farkas_certificate(A: Matrix, b: Sequence) -> tuple | None:
    """Return ``l`` with ``lᵀA >= 0`` and ``lᵀb < 0`` if ``A x = b`` has no real ``x >= 0``.

    Such a vector proves that no nonnegative (in particular no natural)
    solution exists.  Returns ``None`` when the real relaxation is feasible.
    """
    _check_rhs(A, b)
    rows = [[Fraction(v) for v in r] for r in A.entries]
    rhs = [Fraction(v) for v in b]
    if A.ncols == 0:
        if all(v == 0 for v in rhs):
            return None
        return tuple(Fraction(-1) if v > 0 else Fraction(1) if v < 0 else Fraction(0) for v in rhs)
    feasible, pi = _simplex_phase_one(rows, rhs)
    if feasible:
        return None
    cert = tuple(-v for v in pi)
    if not check_farkas_certificate(A, b, cert):
        raise SolverError("simplex produced an invalid infeasibility certificate")
    return cert


def check_farkas_certificate(A: Matrix, b: Sequence, cert: Sequence) -> bool:
    if len(cert) != A.nrows:
        return False
    for j in range(A.ncols):
        if sum(Fraction(l) * Fraction(a) for l, a in zip(cert, A.column(j))) < 0:
            return False
    return sum(Fraction(l) * Fraction(v) for l, v in zip(cert, b)) < 0


def _real_feasible(cols: list[tuple], residual: list[int]) -> bool:
    if not cols:
        return all(r == 0 for r in residual)
    rows = [[Fraction(c[i]) for c in cols] for i in range(len(residual))]
    return _simplex_phase_one(rows, [Fraction(r) for r in residual])[0]


def nat_solve(A: Matrix, b: Sequence) -> tuple | None:
    """Lexicographically least natural solution of ``A x = b``, or ``None``.

    Searches the box ``0 <= x_i <= min_j floor(b_j / A[j][i])``, which holds
    every solution because all entries are nonnegative.  Subtrees whose real
    relaxation is infeasible are skipped; this never removes a solution.
    """
    _check_rhs(A, b)
    m, n = A.shape
    cols = [tuple(int(v) for v in c) for c in A.columns()]
    target = [int(v) for v in b]
    if any(v < 0 for v in target) or any(v < 0 for c in cols for v in c):
        raise ValueError("nat_solve requires nonnegative entries")
    x = [0] * n

    def search(i: int, residual: list[int]) -> bool:
        if i == n:
            return all(r == 0 for r in residual)
        if not _real_feasible(cols[i:], residual):
            return False
        col = cols[i]
        support = [j for j in range(m) if col[j] > 0]
        upper = min((residual[j] // col[j] for j in support), default=0)
        for v in range(upper + 1):
            x[i] = v
            if search(i + 1, [r - v * a for r, a in zip(residual, col)]):
                return True
        x[i] = 0
        return False

    if not search(0, target):
        return None
    return _verified(A.map(NAT.coerce, NAT), tuple(NAT.coerce(v) for v in x), [NAT.coerce(v) for v in b])


# ---------------------------------------------------------------------------
# Finite semirings

def finite_solve(A: Matrix, b: Sequence) -> tuple | None:
    """First solution of ``A x = b`` in the canonical enumeration of ``carrier^n``.

    Candidates are enumerated with ``x_0`` varying fastest, each coordinate
    running through the carrier in its listed order.  For idempotent
    semirings partial sums only grow, which allows pruning without changing
    the answer.
    """
    _check_rhs(A, b)
    s = A.semiring
    if s.carrier is None:
        raise ValueError(f"semiring {s.tag!r} has no finite carrier")
    m, n = A.shape
    b = tuple(b)
    cols = A.columns()

    if not s.idempotent:
        for cand in itertools.product(s.carrier, repeat=n):
            x = tuple(reversed(cand))
            if mat_vec(A, x) == b:
                return x
        return None

    top = s.sum(s.carrier)

    def leq(u, v):
        return s.add(u, v) == v

    # reach[k]: largest vector obtainable from columns 0..k-1
    reach = [tuple([s.zero] * m)]
    for c in cols:
        reach.append(tuple(s.add(r, s.mul(top, ci)) for r, ci in zip(reach[-1], c)))
    x = [s.zero] * n

    def search(k: int, partial: tuple) -> bool:
        # variables k-1, ..., 0 remain open
        if not all(leq(p, bi) for p, bi in zip(partial, b)):
            return False
        if not all(leq(bi, s.add(p, r)) for p, r, bi in zip(partial, reach[k], b)):
            return False
        if k == 0:
            return partial == b
        for v in s.carrier:
            x[k - 1] = v
            nxt = tuple(s.add(p, s.mul(ci, v)) for p, ci in zip(partial, cols[k - 1]))
            if search(k - 1, nxt):
                return True
        x[k - 1] = s.zero
        return False

    if not search(n, tuple([s.zero] * m)):
        return None
    return _verified(A, tuple(x), b)


_SOLVERS = {
    SolverKind.FIELD_GAUSSIAN: gaussian_solve,
    SolverKind.PID_SMITH: pid_solve,
    SolverKind.NAT_BOUNDED: nat_solve,
    SolverKind.FINITE_EXHAUSTIVE: finite_solve,
}


def solve(kind: SolverKind, A: Matrix, b: Sequence) -> tuple | None:
    """Dispatch to the solver selected by ``kind``; results use ``A``'s semiring."""
    x = _SOLVERS[kind](A, b)
    if x is None:
        return None
    s = A.semiring
    return tuple(s.coerce(v) for v in x) if s is not BOOL else x
