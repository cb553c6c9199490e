"""Finite racks and quandles stored as operation tables.

Elements are ``0 .. n-1`` and ``table[x][y]`` is ``x > y``, i.e. the left
translation ``phi_x`` applied to ``y``.  Group actions on ``X`` are left
actions throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .errors import (
    ClassTooLargeError,
    InvalidTableError,
    NotACocycleError,
    ParseError,
)

QUANDLE = "quandle"
RACK = "rack"
INVALID = "invalid"


@dataclass(frozen=True)
class Validation:
    kind: str
    reason: str | None = None
    witness: tuple = ()

    def __bool__(self):
        return self.kind != INVALID


def validate(table) -> Validation:
    """Classify a square integer table as a quandle, a rack or invalid.

    ``reason`` is one of ``out-of-range``, ``non-square``,
    ``non-bijective-row`` or ``distributivity``; ``witness`` locates the
    first violation (``(x, y)`` for a table entry, ``(x,)`` for a row,
    ``(x, y, z)`` for self-distributivity).
    """
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        return Validation(INVALID, "empty", ())
    for x, row in enumerate(rows):
        if len(row) != n:
            return Validation(INVALID, "non-square", (x,))
        for y, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                return Validation(INVALID, "out-of-range", (x, y))
    for x, row in enumerate(rows):
        if len(set(row)) != n:
            return Validation(INVALID, "non-bijective-row", (x,))
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            ry = rows[y]
            rxy = rows[rx[y]]
            for z in range(n):
                if rx[ry[z]] != rxy[rx[z]]:
                    return Validation(INVALID, "distributivity", (x, y, z))
    if all(rows[x][x] == x for x in range(n)):
        return Validation(QUANDLE)
    return Validation(RACK)


@dataclass(frozen=True, eq=False)
class Quandle:
    """A validated finite rack or quandle."""

    table: tuple
    kind: str = field(default=QUANDLE)

    def __init__(self, table, check=True):
        rows = tuple(tuple(int(v) for v in r) for r in table)
        if check:
            res = validate(rows)
            if not res:
                raise InvalidTableError(res.reason, res.witness)
            kind = res.kind
        else:
            kind = QUANDLE if all(rows[x][x] == x for x in range(len(rows))) else RACK
        object.__setattr__(self, "table", rows)
        object.__setattr__(self, "kind", kind)

    @property
    def n(self):
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, Quandle) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Quandle(n={self.n}, kind={self.kind!r})"

    def op(self, x, y):
        return self.table[x][y]

    def phi(self, x):
        """Left translation ``y -> x > y`` as an image tuple."""
        return self.table[x]

    def phi_inverse(self, x):
        row = self.table[x]
        inv = [0] * self.n
        for y, v in enumerate(row):
            inv[v] = y
        return tuple(inv)

    @property
    def array(self):
        return np.array(self.table, dtype=np.int64)

    @property
    def is_quandle(self):
        return self.kind == QUANDLE


@dataclass(frozen=True)
class InnerAction:
    generators: tuple  # phi_x for every x
    orbits: tuple  # sorted tuples of points
    orders: tuple  # n_x = ord(phi_x)

    @property
    def indecomposable(self):
        return len(self.orbits) == 1


def permutation_order(perm):
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        order = lcm(order, length)
    return order


def inner_action(q: Quandle) -> InnerAction:
    n = q.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(n):
        for y, v in enumerate(q.table[x]):
            ra, rb = find(y), find(v)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks = {}
    for y in range(n):
        blocks.setdefault(find(y), []).append(y)
    orbits = tuple(sorted(tuple(b) for b in blocks.values()))
    orders = tuple(permutation_order(q.table[x]) for x in range(n))
    return InnerAction(q.table, orbits, orders)


def is_indecomposable(q: Quandle) -> bool:
    return inner_action(q).indecomposable


def _compose(p, r):
    # (p o r)(i) = p[r[i]]
    return tuple(p[i] for i in r)


def _invert(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def conjugation_quandle(perms, rep, max_size=5000) -> Quandle:
    """Conjugacy class of ``rep`` in ``<perms>`` with ``x > y = x y x^-1``.

    Elements are ordered lexicographically by image tuple.  Returns the
    quandle and leaves the element list available as ``.elements``.
    """
    gens = [tuple(g) for g in perms]
    rep = tuple(rep)
    gens_inv = [_invert(g) for g in gens]
    seen = {rep}
    queue = deque([rep])
    while queue:
        c = queue.popleft()
        for g, gi in zip(gens, gens_inv):
            d = _compose(_compose(g, c), gi)
            if d not in seen:
                if len(seen) >= max_size:
                    raise ClassTooLargeError(f"conjugacy class exceeds {max_size} elements")
                seen.add(d)
                queue.append(d)
    elements = sorted(seen)
    index = {e: i for i, e in enumerate(elements)}
    inverses = [_invert(e) for e in elements]
    table = [
        [index[_compose(_compose(x, y), xi)] for y in elements]
        for x, xi in zip(elements, inverses)
    ]
    q = Quandle(table, check=False)
    object.__setattr__(q, "elements", tuple(elements))
    return q


def extension_by_cocycle(q: Quandle, m: int, f) -> Quandle:
    """Extension of ``q`` by a Z_m-valued 2-cocycle.

    The pair ``(x, i)`` has index ``x * m + i`` and
    ``(x, i) > (y, j) = (x > y, j + f[x][y] mod m)``.  ``f`` is an n x n
    integer matrix or any object exposing such a matrix as ``.values``.
    """
    vals = getattr(f, "values", f)
    n = q.n
    t = q.table
    f_ = [[int(vals[x][y]) % m for y in range(n)] for x in range(n)]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = f_[t[x][y]][t[x][z]] + f_[x][z]
                rhs = f_[x][t[y][z]] + f_[y][z]
                if (lhs - rhs) % m:
                    raise NotACocycleError((x, y, z))
    table = [
        [t[x][y] * m + (j + f_[x][y]) % m for y in range(n) for j in range(m)]
        for x in range(n)
        for _ in range(m)
    ]
    return Quandle(table, check=False)


def parse(text: str) -> Quandle:
    """Read the ``.qnd`` text format.

    ``#`` lines are comments; the first data line holds ``n`` and the next
    ``n`` lines hold the rows of the table.
    """
    data = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        data.append((lineno, line))
    if not data:
        raise ParseError("missing size header")
    lineno, header = data[0]
    try:
        n = int(header.strip())
    except ValueError:
        raise ParseError(f"size header {header.strip()!r} is not an integer", lineno, 1) from None
    if n <= 0:
        raise ParseError("size must be positive", lineno, 1)
    rows = data[1:]
    if len(rows) != n:
        last = rows[-1][0] if rows else lineno
        raise ParseError(f"expected {n} rows, found {len(rows)}", last)
    table = []
    for lineno, line in rows:
        entries = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"entry {tok!r} is not an integer", lineno, col) from None
            if not 0 <= v < n:
                raise ParseError(f"entry {v} outside [0, {n})", lineno, col)
            entries.append(v)
            col += len(tok) - 1
        if len(entries) != n:
            raise ParseError(f"expected {n} entries, found {len(entries)}", lineno)
        table.append(entries)
    return Quandle(table)


def serialize(q: Quandle, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(str(q.n))
    lines.extend(" ".join(map(str, row)) for row in q.table)
    return "\n".join(lines) + "\n"


def trivial_quandle(n: int) -> Quandle:
    return Quandle([list(range(n)) for _ in range(n)], check=False)
