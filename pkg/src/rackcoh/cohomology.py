"""Second rack cohomology of a finite indecomposable quandle from N_0.

A class in H^2(X, A) corresponds to a pair ``(a, g)`` with ``a`` in ``A``
and ``g`` a character of the stabilizer ``N_0`` of the base point in
``N_X = [F_X, F_X]``.  :func:`reconstruct_cocycle` builds the cocycle

    q[x][y] = a + g(c(x * sigma_y * x0^-1))

from a coset transversal ``sigma`` of ``N_0`` in ``N_X``, and
:func:`decompose_cocycle` goes back through the 1-cocycle ``f_q`` on the
enveloping group, evaluated on degree-zero words.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from .coefficients import Cyclic, TorsionRational, parse_coefficients
from .errors import (
    InconsistencyError,
    InvalidParamsError,
    NoGoodTransversalError,
    NotACocycleError,
    NotIndecomposableError,
    ParseError,
)
from .fpgroup import (
    DEFAULT_MAX_COSETS,
    AbelianStructure,
    CayleyGroup,
    SubgroupData,
    abelian_structure,
    action_on_X,
    commutator_subgroup,
    enveloping_presentation,
    orbit_transversal,
    stabilizer,
    todd_coxeter,
    word_degree,
)
from .quandle import Quandle, inner_action


# --------------------------------------------------------------------------
# cocycles


@dataclass(frozen=True, eq=False)
class Cocycle:
    quandle: Quandle
    coeff: object
    values: tuple  # values[x][y] = q_{x,y}

    def __init__(self, quandle, coeff, values):
        vals = tuple(tuple(coeff.element(v) for v in row) for row in values)
        if len(vals) != quandle.n or any(len(r) != quandle.n for r in vals):
            raise ValueError("cocycle table has the wrong shape")
        object.__setattr__(self, "quandle", quandle)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, xy):
        x, y = xy
        return self.values[x][y]

    def __eq__(self, other):
        return (
            isinstance(other, Cocycle)
            and self.quandle == other.quandle
            and self.coeff == other.coeff
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)

    @property
    def n(self):
        return self.quandle.n

    def is_constant(self):
        v = self.values[0][0]
        return all(w == v for row in self.values for w in row)

    def __add__(self, other):
        A = self.coeff
        return Cocycle(
            self.quandle,
            A,
            [[A.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.values, other.values)],
        )

    def __sub__(self, other):
        A = self.coeff
        return Cocycle(
            self.quandle,
            A,
            [[A.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.values, other.values)],
        )


def constant_cocycle(q: Quandle, A, a) -> Cocycle:
    return Cocycle(q, A, [[a] * q.n for _ in range(q.n)])


def coboundary(q: Quandle, A, gamma) -> Cocycle:
    """``d gamma (x, y) = gamma(x > y) - gamma(y)``."""
    t = q.table
    return Cocycle(q, A, [[A.sub(gamma[t[x][y]], gamma[y]) for y in range(q.n)] for x in range(q.n)])


def verify_cocycle(q: Cocycle):
    """Full scan of ``q[x>y][x>z] + q[x][z] == q[x][y>z] + q[y][z]``.

    Returns ``(True, None)`` or ``(False, (x, y, z))`` for the first failure.
    """
    t = q.quandle.table
    v = q.values
    A = q.coeff
    n = q.n
    for x in range(n):
        tx, vx = t[x], v[x]
        for y in range(n):
            ty, vy, vxy = t[y], v[y], v[tx[y]]
            for z in range(n):
                if A.add(vxy[tx[z]], vx[z]) != A.add(vx[ty[z]], vy[z]):
                    return False, (x, y, z)
    return True, None


def is_quandle_cocycle(q: Cocycle) -> bool:
    """Normalized (``q[x][x] = 0``) rack cocycle."""
    return verify_cocycle(q)[0] and all(q.values[x][x] == q.coeff.zero for x in range(q.n))


def evaluate_f(q: Cocycle, w) -> list:
    """The 1-cocycle ``f_q`` on the enveloping group, evaluated on a word.

    ``f(x)(z) = q[x][z]``, ``f(x^-1)(z) = -q[x][x^-1 > z]`` and
    ``f(uv)(z) = f(u)(v > z) + f(v)(z)``.
    """
    quandle = q.quandle
    A = q.coeff
    n = q.n
    F = [A.zero] * n
    perm = list(range(n))  # z -> v > z for the suffix v read so far
    for g, e in reversed(w):
        row = q.values[g]
        if e > 0:
            F = [A.add(row[perm[z]], F[z]) for z in range(n)]
            phi = quandle.table[g]
        else:
            phi = quandle.phi_inverse(g)
            F = [A.sub(F[z], row[phi[perm[z]]]) for z in range(n)]
        perm = [phi[p] for p in perm]
    return F


def are_cohomologous(q: Cocycle, q2: Cocycle):
    """``gamma`` with ``q2 = q + d gamma`` and ``gamma(0) = 0``, or ``None``."""
    if q.quandle != q2.quandle or q.coeff != q2.coeff:
        raise ValueError("cocycles live on different quandles or coefficient groups")
    A = q.coeff
    t = q.quandle.table
    n = q.n
    diff = [[A.sub(b, a) for a, b in zip(r, s)] for r, s in zip(q.values, q2.values)]
    gamma = [None] * n
    gamma[0] = A.zero
    queue = deque([0])
    while queue:
        y = queue.popleft()
        for x in range(n):
            z = t[x][y]
            if gamma[z] is None:
                gamma[z] = A.add(gamma[y], diff[x][y])
                queue.append(z)
    if any(v is None for v in gamma):
        raise NotIndecomposableError("cohomology test needs an indecomposable quandle")
    for x in range(n):
        for y in range(n):
            if A.sub(gamma[t[x][y]], gamma[y]) != diff[x][y]:
                return None
    return gamma


# --------------------------------------------------------------------------
# structure of N_X and N_0


@dataclass(eq=False)
class Transversal:
    """Coset representatives ``sigma_0 .. sigma_k`` of ``N_0`` in ``N_X``.

    ``points[j] = sigma_j > x0`` and ``rep_of_point`` inverts it.  ``good``
    records whether conjugation by ``x0`` permutes the representatives.
    """

    x0: int
    reps: list  # (element, degree-0 word)
    points: list
    rep_of_point: dict
    good: bool

    @property
    def k(self):
        return len(self.reps) - 1

    def sigma_y(self, y):
        return self.reps[self.rep_of_point[y]][0]


def _initial_transversal(group, act, x0):
    rep = orbit_transversal(group, act, x0)
    points = [x0] + sorted(y for y in rep if y != x0)
    return [rep[y] for y in points], points


def good_transversal(group: CayleyGroup, act, N: SubgroupData, N0: SubgroupData, x0: int) -> Transversal:
    """Refine the orbit transversal until ``x0``-conjugation permutes it.

    Each round lists ``tau_{j,t} = x0^t sigma_j x0^-t`` for ``1 <= j <= k``
    and ``0 <= t < t_j`` (``t_j`` the period of ``sigma_j`` under the
    conjugation) in ``(j, t)`` order, takes the first ``tau`` outside the
    current set and makes it the representative of its coset.  When that
    coset is ``j`` itself, the representative of ``j`` is first swapped for
    one commuting with ``x0^L`` (``L`` the orbit length of its point under
    ``phi_x0``); if none exists no good decomposition exists and
    :class:`NoGoodTransversalError` is raised.
    """
    reps, points = _initial_transversal(group, act, x0)
    if any(e not in N for e, _ in reps):
        raise InconsistencyError("orbit transversal leaves N_X")
    index = {y: j for j, y in enumerate(points)}
    k = len(points) - 1
    x0e, x0i = group.gen(x0), group.gen(x0, -1)
    phi0 = act[x0e]

    def conj(item):
        e, w = item
        return group.mul(group.mul(x0e, e), x0i), ((x0, 1),) + w + ((x0, -1),)

    def orbit_len(y):
        L, z = 1, int(phi0[y])
        while z != y:
            z = int(phi0[z])
            L += 1
        return L

    def repair(j):
        L = orbit_len(points[j])
        e0, w0 = reps[j]
        for c in N0.elements:
            e = group.mul(e0, c)
            f = e
            for _ in range(L):
                f = conj((f, ()))[0]
            if f == e:
                return e, w0 + N0.word(c)
        return None

    guard = 0
    while True:
        current = {e for e, _ in reps[1:]}
        missing = None
        for j in range(1, k + 1):
            item = reps[j]
            t = 0
            while True:
                if item[0] not in current:
                    missing = (j, t, item)
                    break
                item = conj(item)
                t += 1
                if item[0] == reps[j][0]:
                    break
            if missing:
                break
        if missing is None:
            break
        j, t, tau = missing
        ell = index[int(act[tau[0], x0])]
        if ell == j:
            fixed = repair(j)
            if fixed is None:
                raise NoGoodTransversalError(j, points[j])
            reps[j] = fixed
        else:
            reps[ell] = tau
        guard += 1
        if guard > len(N) + k:
            raise InconsistencyError("transversal refinement does not terminate")
    return Transversal(x0, reps, points, index, True)


def orbit_coset_transversal(group, act, x0) -> Transversal:
    """Unrefined transversal; satisfies ``sigma_0 = 1`` and ``sigma_j > x0 = y_j``."""
    reps, points = _initial_transversal(group, act, x0)
    return Transversal(x0, reps, points, {y: j for j, y in enumerate(points)}, False)


@dataclass(eq=False)
class QuandleStructure:
    """Everything the main correspondence needs about one quandle and base point."""

    quandle: Quandle
    x0: int
    group: CayleyGroup
    act: np.ndarray
    nx: SubgroupData
    n0: SubgroupData
    n0_ab: AbelianStructure
    transversal: Transversal
    good_error: NoGoodTransversalError | None = None
    sigma: dict = field(default_factory=dict)  # n -> coset index
    c: dict = field(default_factory=dict)  # n -> element of N_0

    @property
    def factors(self):
        return self.n0_ab.factors


def coset_maps(group, act, t: Transversal, N: SubgroupData):
    """``sigma(n)`` as a coset index and ``c(n) = sigma(n)^-1 n`` for all ``n``."""
    sigma, c = {}, {}
    inv = [group.inv(e) for e, _ in t.reps]
    for n in N.elements:
        j = t.rep_of_point[int(act[n, t.x0])]
        sigma[n] = j
        c[n] = group.mul(inv[j], n)
    return sigma, c


def analyze(q: Quandle, x0: int = 0, max_cosets: int = DEFAULT_MAX_COSETS, strict: bool = False):
    """Build F_X, N_X, N_0, (N_0)_ab and a coset transversal for ``q``.

    With ``strict`` a missing good decomposition raises; otherwise the
    orbit transversal is used (``structure.transversal.good`` is False).
    """
    if not q.is_quandle:
        raise NotIndecomposableError("the main correspondence needs a quandle, not a rack")
    if not 0 <= x0 < q.n:
        raise InvalidParamsError(f"base point {x0} outside [0, {q.n})")
    if not inner_action(q).indecomposable:
        raise NotIndecomposableError("quandle is not indecomposable")
    group = todd_coxeter(enveloping_presentation(q), max_cosets=max_cosets)
    act = action_on_X(group, q)
    nx = commutator_subgroup(group)
    n0 = stabilizer(nx, act, x0)
    n0_ab = abelian_structure(n0)
    err = None
    try:
        t = good_transversal(group, act, nx, n0, x0)
    except NoGoodTransversalError as exc:
        if strict:
            raise
        err = exc
        t = orbit_coset_transversal(group, act, x0)
    S = QuandleStructure(q, x0, group, act, nx, n0, n0_ab, t, err)
    S.sigma, S.c = coset_maps(group, act, t, nx)
    return S


def transversal_violations(S: QuandleStructure) -> list:
    """Every failure of the good-decomposition conditions and coset identities."""
    g, act, t, x0 = S.group, S.act, S.transversal, S.x0
    out = []
    if t.reps[0][0] != g.identity:
        out.append("sigma_0 is not the identity")
    rep_set = {e: j for j, (e, _) in enumerate(t.reps)}
    x0e = g.gen(x0)
    for j, (e, _) in enumerate(t.reps):
        if g.conj(x0e, e) not in rep_set:
            out.append(f"x0 > sigma_{j} is not a representative")
    if sorted(int(act[e, x0]) for e, _ in t.reps) != list(range(S.quandle.n)):
        out.append("sigma_j > x0 is not a bijection onto X")
    for j, (e, w) in enumerate(t.reps):
        if word_degree(w) != 0 or g.evaluate(w) != e:
            out.append(f"word of sigma_{j} is not a degree-0 witness")
    for n in S.nx.elements:
        if S.c[g.conj(x0e, n)] != S.c[n]:
            out.append(f"c(x0 > n) != c(n) for n = {n}")
    for n in S.nx.elements:
        for y in range(S.quandle.n):
            lhs = t.rep_of_point[int(act[n, y])]
            rhs = S.sigma[g.mul(n, t.sigma_y(y))]
            if lhs != rhs:
                out.append(f"sigma_(n > y) != sigma(n sigma_y) for n = {n}, y = {y}")
    return out


# --------------------------------------------------------------------------
# the correspondence


@dataclass(frozen=True)
class CocycleDatum:
    """``(a, g)``: ``g[i]`` is the value on the ``i``-th invariant-factor generator."""

    a: object
    g: tuple


def check_datum(S: QuandleStructure, A, datum: CocycleDatum):
    f = S.factors
    if len(datum.g) != len(f):
        raise InvalidParamsError(f"character needs {len(f)} values, got {len(datum.g)}")
    if not A.is_element(datum.a):
        raise InvalidParamsError(f"{datum.a!r} is not an element of {A.label}")
    for gi, d in zip(datum.g, f):
        if not A.is_element(gi):
            raise InvalidParamsError(f"{gi!r} is not an element of {A.label}")
        if not A.annihilated_by(gi, d):
            raise InvalidParamsError(f"{A.format(gi)} is not killed by the invariant factor {d}")


def character_value(S: QuandleStructure, A, g, n0) -> object:
    v = A.zero
    for k, gi in zip(S.n0_ab.coords(n0), g):
        v = A.add(v, A.scale(k, gi))
    return v


def all_data(S: QuandleStructure, A):
    """Every datum ``(a, g)`` over a finite coefficient group."""
    from itertools import product

    chars = [A.characters(d) for d in S.factors]
    for a in A.elements():
        for g in product(*chars):
            yield CocycleDatum(a, tuple(g))


def reconstruct_cocycle(S: QuandleStructure, A, datum: CocycleDatum) -> Cocycle:
    check_datum(S, A, datum)
    g = S.group
    t = S.transversal
    x0i = g.gen(S.x0, -1)
    n = S.quandle.n
    values = []
    for x in range(n):
        xe = g.gen(x)
        row = []
        for y in range(n):
            m = g.mul(g.mul(xe, t.sigma_y(y)), x0i)
            row.append(A.add(datum.a, character_value(S, A, datum.g, S.c[m])))
        values.append(row)
    return Cocycle(S.quandle, A, values)


def decompose_cocycle(S: QuandleStructure, q: Cocycle) -> CocycleDatum:
    """``q -> (q[x0][x0], g)`` with ``g(n0) = f_q(n0)(x0)``."""
    ok, wit = verify_cocycle(q)
    if not ok:
        raise NotACocycleError(wit)
    A = q.coeff
    x0 = S.x0
    a = q.values[x0][x0]
    gvals = tuple(evaluate_f(q, S.n0.word(b))[x0] for b in S.n0_ab.basis)
    for gi, d in zip(gvals, S.factors):
        if not A.annihilated_by(gi, d):
            raise InconsistencyError("character value not killed by its invariant factor")
    for e in S.n0.elements:
        if evaluate_f(q, S.n0.word(e))[x0] != character_value(S, A, gvals, e):
            raise InconsistencyError(f"f_q restricted to N_0 is not the character at {e}")
    return CocycleDatum(a, gvals)


# --------------------------------------------------------------------------
# summary


def _cyclic_label(ds):
    return " x ".join(f"Z{d}" for d in ds)


@dataclass
class H2Summary:
    quandle_size: int
    fx_order: int
    nx_order: int
    n0_order: int
    n0_invariant_factors: list
    h2_order: int | None
    h2_type: str
    generators: list  # Cocycle
    generator_data: list  # CocycleDatum
    good_transversal: bool

    def to_json(self, refs=None) -> dict:
        refs = refs or [f"generator_{i}" for i in range(len(self.generators))]
        out = {
            "quandle_size": self.quandle_size,
            "fx_order": self.fx_order,
            "nx_order": self.nx_order,
            "n0_order": self.n0_order,
            "n0_invariant_factors": list(self.n0_invariant_factors),
            "h2_type": self.h2_type,
            "generators": list(refs),
        }
        if self.h2_order is not None:
            out["h2_order"] = self.h2_order
        return out


def h2_description(q: Quandle, A, x0: int = 0, max_cosets: int = DEFAULT_MAX_COSETS, structure=None):
    """Orders of F_X, N_X, N_0, the invariant factors of (N_0)_ab and H^2(X, A).

    Generators are the constant cocycle (cyclic coefficients only) followed
    by one cocycle per invariant factor with a nontrivial character.
    """
    S = structure or analyze(q, x0=x0, max_cosets=max_cosets)
    factors = S.factors
    data = []
    if isinstance(A, Cyclic):
        order = A.m * prod(gcd(d, A.m) for d in factors)
        parts = [A.m] + [gcd(d, A.m) for d in factors]
        h2_type = _cyclic_label([p for p in parts if p > 1]) or "0"
        if A.m > 1:
            data.append(CocycleDatum(1, tuple(0 for _ in factors)))
    else:
        order = None
        h2_type = " x ".join(["QZ"] + [f"Z{d}" for d in factors])
    for i, d in enumerate(factors):
        gen = A.hom_generators(d)
        if gen is None:
            continue
        g = [A.zero] * len(factors)
        g[i] = gen
        data.append(CocycleDatum(A.zero, tuple(g)))
    gens = [reconstruct_cocycle(S, A, dat) for dat in data]
    return H2Summary(
        quandle_size=q.n,
        fx_order=S.group.order,
        nx_order=len(S.nx),
        n0_order=len(S.n0),
        n0_invariant_factors=list(factors),
        h2_order=order,
        h2_type=h2_type,
        generators=gens,
        generator_data=data,
        good_transversal=S.transversal.good,
    )


# --------------------------------------------------------------------------
# .coc files


def serialize_cocycle(q: Cocycle) -> str:
    A = q.coeff
    lines = [f"n {q.n} coeff {A.label}"]
    lines.extend(" ".join(A.format(v) for v in row) for row in q.values)
    return "\n".join(lines) + "\n"


def parse_cocycle(text: str, quandle: Quandle) -> Cocycle:
    lines = [(i, l.rstrip("\r")) for i, l in enumerate(text.split("\n"), start=1)]
    lines = [(i, l) for i, l in lines if l.strip() and not l.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty cocycle file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "n" or parts[2] != "coeff":
        raise ParseError("header must read 'n <n> coeff Z<m>|QZ'", lineno, 1)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"size {parts[1]!r} is not an integer", lineno) from None
    try:
        A = parse_coefficients(parts[3])
    except ParseError as exc:
        raise ParseError(str(exc), lineno) from None
    if n != quandle.n:
        raise ParseError(f"cocycle has size {n} but the quandle has {quandle.n}", lineno)
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", rows[-1][0] if rows else lineno)
    values = []
    for lineno, line in rows:
        toks = line.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno)
        row = []
        for tok in toks:
            try:
                row.append(A.parse(tok))
            except ParseError as exc:
                raise ParseError(str(exc), lineno, line.index(tok) + 1) from None
        values.append(row)
    return Cocycle(quandle, A, values)


def datum_to_json(A, datum: CocycleDatum) -> dict:
    return {"a": A.format(datum.a), "g": [A.format(v) for v in datum.g]}


def summary_json(summary: H2Summary, refs=None) -> str:
    return json.dumps(summary.to_json(refs), indent=2, sort_keys=True)
