"""Integer matrices and Smith normal form.

Entries are Python ints, so nothing overflows.  Large sparse matrices are
first reduced by eliminating unit pivots (each removes one row and one
column and contributes an invariant factor 1); whatever is left is
diagonalized densely with smallest-entry pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class IntMatrix:
    """Sparse integer matrix stored as one ``{col: value}`` dict per row."""

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        self.data = data if data is not None else [dict() for _ in range(rows)]

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        data = [{j: int(v) for j, v in enumerate(r) if v} for r in rows]
        return cls(len(rows), ncols, data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i].get(j, 0)

    def add(self, i, j, v):
        if not v:
            return
        row = self.data[i]
        w = row.get(j, 0) + v
        if w:
            row[j] = w
        else:
            row.pop(j, None)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            for j, v in row.items():
                out[i][j] = v
        return out

    def transpose(self):
        t = IntMatrix(self.cols, self.rows)
        for i, row in enumerate(self.data):
            for j, v in row.items():
                t.data[j][i] = v
        return t

    def __matmul__(self, other):
        out = IntMatrix(self.rows, other.cols)
        for i, row in enumerate(self.data):
            acc = {}
            for k, v in row.items():
                for j, w in other.data[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.data[i] = {j: v for j, v in acc.items() if v}
        return out

    def is_zero(self):
        return not any(self.data)

    def nnz(self):
        return sum(len(r) for r in self.data)

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.data == other.data
        )

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def dump(self) -> str:
        """``rows cols`` followed by one line of entries per row."""
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(" ".join(map(str, r)) for r in self.to_dense())
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str):
        lines = [l for l in text.splitlines() if l.strip()]
        r, c = map(int, lines[0].split())
        rows = [list(map(int, l.split())) for l in lines[1 : 1 + r]]
        if len(rows) != r or any(len(x) != c for x in rows):
            raise ValueError("matrix dump has inconsistent dimensions")
        m = cls.from_dense(rows) if r else cls(0, c)
        m.cols = c
        return m


@dataclass
class SmithForm:
    """``factors`` are the nonzero diagonal entries ``d_1 | d_2 | ...``.

    With transforms, ``U @ M @ V`` is the diagonal matrix (dense lists).
    """

    shape: tuple
    factors: list
    U: list | None = None
    V: list | None = None

    @property
    def rank(self):
        return len(self.factors)

    @property
    def torsion(self):
        return [d for d in self.factors if d > 1]

    def diagonal(self):
        r, c = self.shape
        D = [[0] * c for _ in range(r)]
        for i, d in enumerate(self.factors):
            D[i][i] = d
        return D


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _dense_snf(A, want_transforms=False):
    """In-place Smith form of a dense list-of-lists matrix."""
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if want_transforms else None
    V = _identity(n) if want_transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        a, b = A[dst], A[src]
        for j in range(n):
            if b[j]:
                a[j] += k * b[j]
        if U is not None:
            u, w = U[dst], U[src]
            for j in range(m):
                if w[j]:
                    u[j] += k * w[j]

    def add_col(dst, src, k):
        for row in A:
            if row[src]:
                row[dst] += k * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += k * row[src]

    def negate_row(i):
        A[i] = [-v for v in A[i]]
        if U is not None:
            U[i] = [-v for v in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    factors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return factors, U, V


def _eliminate_units(M: IntMatrix):
    """Remove unit pivots; return the count and the leftover dense block.

    Rows are visited in passes, shortest first; a row with a unit entry is
    used as pivot on its least populated unit column.
    """
    seen = set()
    rows = []
    for r in M.data:
        if not r:
            continue
        key = tuple(sorted(r.items()))
        neg = tuple((j, -v) for j, v in key)
        if key in seen or neg in seen:
            continue
        seen.add(key)
        rows.append(dict(r))
    colidx = {}
    for i, r in enumerate(rows):
        for j in r:
            colidx.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    ones = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive, key=lambda k: len(rows[k])):
            if i not in alive:
                continue
            prow = rows[i]
            units = [j for j, v in prow.items() if v == 1 or v == -1]
            if not units:
                continue
            j = min(units, key=lambda c: len(colidx[c]))
            pv = prow[j]
            for k in list(colidx[j]):
                if k == i:
                    continue
                r = rows[k]
                f = r[j] * pv  # pv = +-1, so r[j] / pv = r[j] * pv
                for c, v in prow.items():
                    w = r.get(c, 0) - f * v
                    if w:
                        if c not in r:
                            colidx.setdefault(c, set()).add(k)
                        r[c] = w
                    elif c in r:
                        del r[c]
                        colidx[c].discard(k)
                if not r:
                    alive.discard(k)
            for c in prow:
                colidx[c].discard(i)
            rows[i] = {}
            alive.discard(i)
            ones += 1
            progress = True
    left_rows = sorted(alive)
    left_cols = sorted({c for i in left_rows for c in rows[i]})
    cpos = {c: k for k, c in enumerate(left_cols)}
    dense = []
    for i in left_rows:
        row = [0] * len(left_cols)
        for c, v in rows[i].items():
            row[cpos[c]] = v
        dense.append(row)
    return ones, dense


def _chain(diag):
    """Turn any list of nonzero diagonal entries into a divisibility chain."""
    diag = [abs(d) for d in diag if d]
    # equivalent diagonal: repeatedly replace (a, b) by (gcd, lcm)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a // g * b
    return sorted(diag)


def smith_normal_form(M, transforms: bool = False) -> SmithForm:
    """Invariant factors of ``M`` (an :class:`IntMatrix` or a dense list).

    With ``transforms`` the whole matrix is reduced densely and unimodular
    ``U``, ``V`` with ``U M V = D`` are returned.
    """
    if not isinstance(M, IntMatrix):
        M = IntMatrix.from_dense(M) if len(M) else IntMatrix(0, 0)
    shape = (M.rows, M.cols)
    if transforms:
        A = M.to_dense()
        factors, U, V = _dense_snf(A, True)
        if factors != _chain(factors):
            raise ArithmeticError("divisibility chain violated")
        return SmithForm(shape, factors, U, V)
    ones, rest = _eliminate_units(M)
    factors, _, _ = _dense_snf(rest) if rest else ([], None, None)
    return SmithForm(shape, [1] * ones + _chain(factors))


def matmul_dense(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
