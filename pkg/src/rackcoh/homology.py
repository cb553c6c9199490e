"""Brute-force rack and quandle homology in degree two.

Chain groups have the tuples of ``X`` as basis, enumerated row-major
(first coordinate outermost), so ``(x, y)`` has index ``x * n + y`` and
``(x, y, z)`` has index ``(x * n + y) * n + z``.  With trivial
coefficients the boundaries are

    d2(x, y)    = (y) - (x > y)
    d3(x, y, z) = (y, z) - (x > y, x > z) - (x, z) + (x, y > z)

Matrices map columns (tuples of length k) to rows (length k - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, prod

from .errors import InconsistencyError, TooLargeError
from .quandle import Quandle
from .smith import IntMatrix, smith_normal_form

DEFAULT_ORACLE_CAP = 12


@dataclass(frozen=True)
class HomologyResult:
    rank: int
    torsion: tuple

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def boundary_matrices(q: Quandle):
    """``(d2, d3)`` as sparse matrices of shapes ``n x n^2`` and ``n^2 x n^3``."""
    n = q.n
    t = q.table
    d2 = IntMatrix(n, n * n)
    for x in range(n):
        for y in range(n):
            c = x * n + y
            d2.add(y, c, 1)
            d2.add(t[x][y], c, -1)
    d3 = IntMatrix(n * n, n**3)
    for x in range(n):
        tx = t[x]
        for y in range(n):
            ty = t[y]
            for z in range(n):
                c = (x * n + y) * n + z
                d3.add(y * n + z, c, 1)
                d3.add(tx[y] * n + tx[z], c, -1)
                d3.add(x * n + z, c, -1)
                d3.add(x * n + ty[z], c, 1)
    return d2, d3


def quandle_boundary_matrices(q: Quandle):
    """Boundaries of the quotient by degenerate tuples, basis of non-degenerate ones.

    Returns ``(d2, d3, pairs, triples)``; rows and columns follow the order
    of ``pairs`` (``x != y``) and ``triples`` (``x != y != z``).
    """
    n = q.n
    t = q.table
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    triples = [(x, y, z) for x in range(n) for y in range(n) for z in range(n) if x != y and y != z]
    pidx = {p: i for i, p in enumerate(pairs)}
    d2 = IntMatrix(n, len(pairs))
    for c, (x, y) in enumerate(pairs):
        d2.add(y, c, 1)
        d2.add(t[x][y], c, -1)
    d3 = IntMatrix(len(pairs), len(triples))
    for c, (x, y, z) in enumerate(triples):
        for (a, b), s in (
            ((y, z), 1),
            ((t[x][y], t[x][z]), -1),
            ((x, z), -1),
            ((x, t[y][z]), 1),
        ):
            if a != b:
                d3.add(pidx[(a, b)], c, s)
    return d2, d3, pairs, triples


def _check_cap(q, cap):
    if cap is not None and q.n > cap:
        raise TooLargeError(f"|X| = {q.n} exceeds the homology oracle cap {cap}")


def _h2(d2, d3, c2_rank):
    s2 = smith_normal_form(d2.transpose())
    s3 = smith_normal_form(d3.transpose())
    rank = c2_rank - s2.rank - s3.rank
    return HomologyResult(rank, tuple(s3.torsion)), s2, s3


def rack_h2(q: Quandle, cap: int | None = DEFAULT_ORACLE_CAP) -> HomologyResult:
    _check_cap(q, cap)
    d2, d3 = boundary_matrices(q)
    return _h2(d2, d3, q.n * q.n)[0]


def quandle_h2(q: Quandle, cap: int | None = DEFAULT_ORACLE_CAP) -> HomologyResult:
    _check_cap(q, cap)
    d2, d3, pairs, _ = quandle_boundary_matrices(q)
    return _h2(d2, d3, len(pairs))[0]


def enumerate_h2_count(q: Quandle, m: int) -> int:
    """``|Z^2| / |B^2|`` for ``Z_m`` by explicit enumeration (tiny inputs only)."""
    n = q.n
    t = q.table
    N = n * n
    # each triple constrains four entries; check it once its last entry is set
    checks = [[] for _ in range(N)]
    for x, y, z in product(range(n), repeat=3):
        idx = (t[x][y] * n + t[x][z], x * n + z, x * n + t[y][z], y * n + z)
        checks[max(idx)].append(idx)
    vals = [0] * N

    def count(k):
        if k == N:
            return 1
        total = 0
        for v in range(m):
            vals[k] = v
            ok = True
            for a, b, c, d in checks[k]:
                if (vals[a] + vals[b] - vals[c] - vals[d]) % m:
                    ok = False
                    break
            if ok:
                total += count(k + 1)
        return total

    z2 = count(0)
    b2 = {
        tuple((g[t[x][y]] - g[y]) % m for x in range(n) for y in range(n))
        for g in product(range(m), repeat=n)
    }
    if z2 % len(b2):
        raise InconsistencyError("coboundaries do not divide cocycles")
    return z2 // len(b2)


def brute_force_h2_count(q: Quandle, m: int, cap: int | None = DEFAULT_ORACLE_CAP) -> int:
    """``|H^2(X, Z_m)|`` from the cocycle system ``d3^T`` and ``d2^T`` over ``Z_m``.

    For ``|X| <= 4`` and ``m <= 3`` the answer is also enumerated directly
    and the two must agree.
    """
    _check_cap(q, cap)
    if m < 1:
        raise ValueError("modulus must be positive")
    n = q.n
    d2, d3 = boundary_matrices(q)
    s2 = smith_normal_form(d2.transpose())
    s3 = smith_normal_form(d3.transpose())
    # |ker d3^T mod m| = m^(n^2 - r3) prod gcd(d, m); |im d2^T mod m| = m^r2 / prod gcd(e, m)
    count = (
        m ** (n * n - s3.rank - s2.rank)
        * prod(gcd(d, m) for d in s3.factors)
        * prod(gcd(e, m) for e in s2.factors)
    )
    if n <= 4 and m <= 3:
        direct = enumerate_h2_count(q, m)
        if direct != count:
            raise InconsistencyError(f"enumeration gives {direct}, Smith form gives {count}")
    return count
