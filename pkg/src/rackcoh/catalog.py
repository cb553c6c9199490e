"""Named quandles with known invariants, used by the tests and the CLI."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial

from .affine import AffineSpec, affine_quandle, family_spec
from .cohomology import Cocycle
from .coefficients import Cyclic
from .errors import InvalidParamsError
from .quandle import Quandle, conjugation_quandle, extension_by_cocycle


@dataclass(frozen=True)
class Expected:
    fx_order: int
    n0_order: int
    n0_factors: tuple
    h2q_factors: tuple


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    quandle: Quandle
    expected: Expected | None = None
    note: str = ""


def _transposition(n, i, j):
    p = list(range(n))
    p[i], p[j] = j, i
    return tuple(p)


def _symmetric_generators(n):
    return [_transposition(n, 0, 1), tuple(list(range(1, n)) + [0])]


def transpositions_quandle(n: int) -> Quandle:
    if n < 2:
        raise InvalidParamsError("need n >= 2")
    return conjugation_quandle(_symmetric_generators(n), _transposition(n, 0, 1))


def transposition_index(q: Quandle, i: int, j: int) -> int:
    """Index of the transposition ``(i j)`` (0-based points) in ``transpositions_quandle``."""
    return q.elements.index(_transposition(len(q.elements[0]), i, j))


def transpositions(n: int) -> Fixture:
    if n < 3:
        raise InvalidParamsError("transpositions fixture needs n >= 3")
    q = transpositions_quandle(n)
    factors = (2,) if n >= 4 else ()
    return Fixture(
        f"transpositions-{n}",
        q,
        Expected(factorial(n), factorial(n - 2), factors, factors),
        f"transpositions of S_{n}; F_X = S_{n}, N_X = A_{n}",
    )


def chi_cocycle(n: int) -> Cocycle:
    """Sign cocycle on transpositions, additive over Z2.

    For ``tau = (i j)`` with ``i < j`` the entry at ``(sigma, tau)`` is 0 when
    ``sigma(i) < sigma(j)`` and 1 otherwise.
    """
    q = transpositions_quandle(n)
    vals = []
    for s in q.elements:
        row = []
        for t in q.elements:
            i, j = (k for k in range(n) if t[k] != k)
            row.append(0 if s[i] < s[j] else 1)
        vals.append(row)
    return Cocycle(q, Cyclic(2), vals)


# phi_{x_k} as cycles on 0-based points, written out by hand
_A4_TABLE = (
    (0, 2, 3, 1),  # phi_0 = (1 2 3)
    (3, 1, 0, 2),  # phi_1 = (0 3 2)
    (1, 3, 2, 0),  # phi_2 = (0 1 3)
    (2, 0, 1, 3),  # phi_3 = (0 2 1)
)


def a4_three_cycles() -> Fixture:
    return Fixture(
        "a4-three-cycles",
        Quandle(_A4_TABLE),
        Expected(24, 2, (2,), (2,)),
        "3-cycles of A_4 (one conjugacy class), table written by hand",
    )


def a4_sign_cocycle() -> Cocycle:
    """0 when ``x = 0``, ``y = 0`` or ``x = y``; 1 otherwise (Z2, additive)."""
    q = Quandle(_A4_TABLE)
    vals = [[0 if (x == 0 or y == 0 or x == y) else 1 for y in range(4)] for x in range(4)]
    return Cocycle(q, Cyclic(2), vals)


def a4_extension() -> Fixture:
    """``Y = X x Z2`` by the sign cocycle; ``(x, i)`` has index ``2x + i``."""
    y = extension_by_cocycle(Quandle(_A4_TABLE), 2, a4_sign_cocycle())
    return Fixture(
        "a4-extension",
        y,
        Expected(24, 1, (), ()),
        "extension of the A_4 3-cycles by the sign cocycle; F_Y = SL(2,3)",
    )


def dihedral(p: int) -> Fixture:
    spec = AffineSpec((p,), ((p - 1,),))
    return Fixture(f"dihedral-{p}", affine_quandle(spec), Expected(2 * p, 1, (), ()), f"Aff({p}, -1)")


def affine_prime(p: int, w: int) -> Fixture:
    spec = AffineSpec((p,), ((w,),))
    o = spec.order()
    return Fixture(f"aff-{p}-{w}", affine_quandle(spec), Expected(p * o, 1, (), ()), f"Aff({p}, {w})")


def p2_family(family: str, p: int, *params) -> Fixture:
    spec = family_spec(family, p, params)
    name = f"{family.lower()}-{p}-" + "-".join(map(str, params))
    return Fixture(name, affine_quandle(spec), None, f"order {p * p} affine quandle, family {family}")


_NAMED = {
    "transpositions-3": lambda: transpositions(3),
    "transpositions-4": lambda: transpositions(4),
    "transpositions-5": lambda: transpositions(5),
    "a4-three-cycles": a4_three_cycles,
    "a4-extension": a4_extension,
    "dihedral-3": lambda: dihedral(3),
    "dihedral-5": lambda: dihedral(5),
    "dihedral-7": lambda: dihedral(7),
    "aff-3-2": lambda: affine_prime(3, 2),
    "aff-5-2": lambda: affine_prime(5, 2),
    "aff-5-3": lambda: affine_prime(5, 3),
    "aff-7-3": lambda: affine_prime(7, 3),
    "a1-3-2-2": lambda: p2_family("A1", 3, 2, 2),
}

_PATTERNS = [
    (re.compile(r"transpositions-(\d+)$"), lambda m: transpositions(int(m[1]))),
    (re.compile(r"dihedral-(\d+)$"), lambda m: dihedral(int(m[1]))),
    (re.compile(r"aff-(\d+)-(\d+)$"), lambda m: affine_prime(int(m[1]), int(m[2]))),
    (
        re.compile(r"(a[1-4])-(\d+)((?:-\d+)+)$"),
        lambda m: p2_family(m[1].upper(), int(m[2]), *map(int, m[3][1:].split("-"))),
    ),
]


def names():
    return list(_NAMED)


def get(name: str) -> Fixture:
    """A named fixture; parametric names like ``transpositions-6`` also work."""
    if name in _NAMED:
        return _NAMED[name]()
    for pat, build in _PATTERNS:
        m = pat.match(name)
        if m:
            return build(m)
    raise InvalidParamsError(f"unknown fixture {name!r}")


def fixtures():
    return [get(n) for n in _NAMED]
