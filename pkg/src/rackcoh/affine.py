"""Affine (Alexander) quandles ``x > y = gamma(y) + x - gamma(x)``.

``L = Z_{m_1} + ... + Z_{m_r}`` is stored by its moduli; elements are
integer tuples, enumerated in mixed-radix order with the first coordinate
most significant.  ``gamma`` acts on column vectors: ``gamma(x)_i =
sum_j gamma[i][j] * x_j``.

``S(L, gamma)`` is the cokernel of ``tau(x (x) y) = x (x) y - y (x) gamma(x)``
on ``L (x) L`` (basis ``e_i (x) e_j`` row-major, moduli ``gcd(m_i, m_j)``).
It models ``N_0`` through the group law on ``L x Z x S``

    (x, m, s)(y, n, t) = (x + gamma^m y, m + n, s + t + [x, gamma^m y]).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .cohomology import Cocycle
from .coefficients import QZ
from .errors import InvalidParamsError, NotIndecomposableError
from .quandle import Quandle
from .smith import smith_normal_form


@dataclass(frozen=True)
class AffineSpec:
    moduli: tuple
    gamma: tuple  # r x r

    def __init__(self, moduli, gamma, check=True):
        mod = tuple(int(m) for m in moduli)
        r = len(mod)
        mat = tuple(tuple(int(v) % mod[i] for v in row) for i, row in enumerate(gamma))
        if r == 0 or any(m < 2 for m in mod):
            raise InvalidParamsError("moduli must be at least 2")
        if len(mat) != r or any(len(row) != r for row in mat):
            raise InvalidParamsError(f"gamma must be {r} x {r}")
        for i in range(r):
            for j in range(r):
                if (mat[i][j] * mod[j]) % mod[i]:
                    raise InvalidParamsError(f"gamma[{i}][{j}] does not define a map Z{mod[j]} -> Z{mod[i]}")
        object.__setattr__(self, "moduli", mod)
        object.__setattr__(self, "gamma", mat)
        if check:
            if not self.is_automorphism():
                raise InvalidParamsError("gamma is not an automorphism of L")
            if not self.is_indecomposable():
                raise NotIndecomposableError("1 - gamma is not invertible, so Aff(L, gamma) is decomposable")

    @property
    def rank(self):
        return len(self.moduli)

    @property
    def size(self):
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def elements(self):
        return list(product(*(range(m) for m in self.moduli)))

    def index(self, x):
        k = 0
        for v, m in zip(x, self.moduli):
            k = k * m + v % m
        return k

    def reduce(self, x):
        return tuple(v % m for v, m in zip(x, self.moduli))

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def sub(self, x, y):
        return tuple((a - b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple(-a % m for a, m in zip(x, self.moduli))

    def apply(self, x, power=1):
        if power < 0:
            power %= self.order()
        for _ in range(power):
            x = tuple(
                sum(g * v for g, v in zip(row, x)) % m for row, m in zip(self.gamma, self.moduli)
            )
        return x

    def one_minus(self, x):
        return self.sub(x, self.apply(x))

    def _bijective(self, f):
        return len({f(x) for x in self.elements()}) == self.size

    def is_automorphism(self):
        return self._bijective(self.apply)

    def is_indecomposable(self):
        return self._bijective(self.one_minus)

    def order(self):
        """``ord(gamma)``, computed on the standard basis."""
        basis = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        cur = basis
        k = 1
        while True:
            cur = [self.apply(b) for b in cur]
            if cur == basis:
                return k
            k += 1

    def inverse_one_minus(self):
        """``(1 - gamma)^-1`` as a lookup table on elements."""
        return {self.one_minus(x): x for x in self.elements()}

    def op(self, x, y):
        return self.add(self.apply(y), self.one_minus(x))


def affine_quandle(spec: AffineSpec) -> Quandle:
    els = spec.elements()
    table = [[spec.index(spec.op(x, y)) for y in els] for x in els]
    q = Quandle(table)
    object.__setattr__(q, "elements", tuple(els))
    return q


# --------------------------------------------------------------------------
# S(L, gamma)


@dataclass(frozen=True)
class TensorSquare:
    moduli: tuple  # gcd(m_i, m_j), row-major
    tau: tuple  # tau[row][col]; column b is tau applied to the b-th basis tensor


def tensor_square(spec: AffineSpec) -> TensorSquare:
    r = spec.rank
    mods = tuple(gcd(spec.moduli[i], spec.moduli[j]) for i in range(r) for j in range(r))
    k = r * r
    tau = [[0] * k for _ in range(k)]
    for a in range(r):
        for b in range(r):
            col = a * r + b
            tau[col][col] += 1
            # - e_b (x) gamma(e_a) = - sum_c gamma[c][a] e_b (x) e_c
            for c in range(r):
                tau[b * r + c][col] -= spec.gamma[c][a]
    tau = tuple(tuple(v % mods[i] for v in row) for i, row in enumerate(tau))
    return TensorSquare(mods, tau)


@dataclass(frozen=True, eq=False)
class SGroup:
    """``S(L, gamma)`` with invariant factors and the class map ``[x, y]``."""

    spec: AffineSpec
    factors: tuple
    _proj: tuple  # per tensor basis vector, a coordinate vector

    @property
    def order(self):
        out = 1
        for d in self.factors:
            out *= d
        return out

    def zero(self):
        return tuple(0 for _ in self.factors)

    def add(self, s, t):
        return tuple((a + b) % d for a, b, d in zip(s, t, self.factors))

    def neg(self, s):
        return tuple(-a % d for a, d in zip(s, self.factors))

    def bracket(self, x, y):
        """Coordinates of the class of ``x (x) y``."""
        r = self.spec.rank
        out = [0] * len(self.factors)
        for a in range(r):
            if not x[a]:
                continue
            for b in range(r):
                if not y[b]:
                    continue
                k = x[a] * y[b]
                for i, v in enumerate(self._proj[a * r + b]):
                    out[i] += k * v
        return tuple(v % d for v, d in zip(out, self.factors))

    def elements(self):
        return list(product(*(range(d) for d in self.factors)))


def s_group(spec: AffineSpec) -> SGroup:
    """Cokernel of ``tau`` against the tensor moduli via Smith form.

    The relation lattice has the images ``tau(e_b)`` and ``mod_i e_i`` as
    rows; with ``U R V = D`` the coordinates of ``v`` are ``(v V)_i mod d_i``.
    """
    ts = tensor_square(spec)
    k = len(ts.moduli)
    rel = [[ts.tau[i][b] for i in range(k)] for b in range(k)]
    rel += [[ts.moduli[i] if j == i else 0 for j in range(k)] for i in range(k)]
    snf = smith_normal_form(rel, transforms=True)
    V = snf.V
    if snf.rank != k:
        raise InvalidParamsError("S(L, gamma) is infinite")
    keep = [i for i, d in enumerate(snf.factors) if d > 1]
    factors = tuple(snf.factors[i] for i in keep)
    proj = tuple(tuple(V[b][i] % snf.factors[i] for i in keep) for b in range(k))
    return SGroup(spec, factors, proj)


# --------------------------------------------------------------------------
# enveloping group model


class ClauwensGroup:
    """``L x Z x S(L, gamma)`` with the twisted product.

    ``psi(x) = (x, 1, 0)`` realizes the generators, ``(x, m, s)`` acts on
    ``L`` by ``y -> (1 - gamma) x + gamma^m y``.
    """

    def __init__(self, spec: AffineSpec, S: SGroup | None = None):
        self.spec = spec
        self.S = S or s_group(spec)
        self.ord = spec.order()
        self._inv1m = spec.inverse_one_minus()

    @property
    def identity(self):
        return (self.spec.reduce((0,) * self.spec.rank), 0, self.S.zero())

    def mul(self, g, h):
        x, m, s = g
        y, n, t = h
        gy = self.spec.apply(y, m % self.ord)
        return (self.spec.add(x, gy), m + n, self.S.add(self.S.add(s, t), self.S.bracket(x, gy)))

    def inv(self, g):
        x, m, s = g
        y = self.spec.neg(self.spec.apply(x, -m % self.ord))
        # s + t + [x, gamma^m y] = 0 and gamma^m y = -x
        t = self.S.add(self.S.neg(s), self.S.bracket(x, x))
        return (y, -m, t)

    def psi(self, x):
        return (tuple(x), 1, self.S.zero())

    def act(self, g, y):
        x, m, _ = g
        return self.spec.add(self.spec.one_minus(x), self.spec.apply(y, m % self.ord))

    def sigma(self, y):
        """Transversal element ``((1 - gamma)^-1 y, 0, 0)`` sending 0 to ``y``."""
        return (self._inv1m[tuple(y)], 0, self.S.zero())

    def n0(self):
        z = self.identity[0]
        return [(z, 0, s) for s in self.S.elements()]

    def random_element(self, rng: random.Random, degree_range=3):
        x = tuple(rng.randrange(m) for m in self.spec.moduli)
        s = tuple(rng.randrange(d) for d in self.S.factors)
        return (x, rng.randint(-degree_range, degree_range), s)

    def check_identification(self):
        """``psi(x) psi(y) = psi(x > y) psi(x)`` for all ``x, y``."""
        els = self.spec.elements()
        for x in els:
            for y in els:
                lhs = self.mul(self.psi(x), self.psi(y))
                rhs = self.mul(self.psi(self.spec.op(x, y)), self.psi(x))
                if lhs != rhs:
                    return False, (x, y)
        return True, None

    def check_associativity(self, samples=200, seed=0):
        rng = random.Random(seed)
        for _ in range(samples):
            a, b, c = (self.random_element(rng) for _ in range(3))
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False, (a, b, c)
        return True, None

    def check_stabilizer(self):
        """Degree-0 elements fixing 0 are exactly ``{0} x {0} x S``."""
        zero = self.identity[0]
        fixed = [
            (x, 0, s)
            for x in self.spec.elements()
            for s in self.S.elements()
            if self.act((x, 0, s), zero) == zero
        ]
        return sorted(fixed) == sorted(self.n0())

    def check_good_transversal(self):
        """``sigma_y = ((1-gamma)^-1 y, 0, 0)`` is closed under conjugation by ``psi(0)``."""
        zero = self.identity[0]
        x0 = self.psi(zero)
        x0i = self.inv(x0)
        reps = {self.sigma(y) for y in self.spec.elements()}
        if self.sigma(zero) != self.identity:
            return False
        for r in reps:
            if self.mul(self.mul(x0, r), x0i) not in reps:
                return False
        return all(self.act(self.sigma(y), zero) == y for y in self.spec.elements())


def clauwens_group(spec: AffineSpec) -> ClauwensGroup:
    return ClauwensGroup(spec)


# --------------------------------------------------------------------------
# cocycles


def _check_character(S: SGroup, A, g):
    g = tuple(g)
    if len(g) != len(S.factors):
        raise InvalidParamsError(f"character needs {len(S.factors)} values, got {len(g)}")
    for gi, d in zip(g, S.factors):
        if not A.is_element(gi) or not A.annihilated_by(gi, d):
            raise InvalidParamsError(f"{gi!r} is not killed by the invariant factor {d}")
    return g


def _char(A, g, coords):
    v = A.zero
    for k, gi in zip(coords, g):
        v = A.add(v, A.scale(k, gi))
    return v


def affine_cocycle(spec: AffineSpec, A, a, g, form: str = "sum", S: SGroup | None = None) -> Cocycle:
    """Cocycle of ``(a, g)`` with ``g`` a character of ``S(L, gamma)``.

    ``form="sum"``: ``a + sum_{0<j<ord(gamma)} g([x, gamma^j y])``.
    ``form="transversal"``: ``a + g([x, gamma (1 - gamma)^-1 y])``, which is
    what the coset map gives for ``sigma_y = ((1 - gamma)^-1 y, 0, 0)``.
    """
    S = S or s_group(spec)
    g = _check_character(S, A, g)
    els = spec.elements()
    if form == "sum":
        o = spec.order()
        powers = {y: [spec.apply(y, j) for j in range(1, o)] for y in els}

        def entry(x, y):
            v = a
            for gy in powers[y]:
                v = A.add(v, _char(A, g, S.bracket(x, gy)))
            return v

    elif form == "transversal":
        inv = spec.inverse_one_minus()

        def entry(x, y):
            return A.add(a, _char(A, g, S.bracket(x, spec.apply(inv[y]))))

    else:
        raise InvalidParamsError(f"unknown form {form!r}")
    q = affine_quandle(spec)
    return Cocycle(q, A, [[entry(x, y) for y in els] for x in els])


# --------------------------------------------------------------------------
# quandles of order p^2

FAMILIES = ("A1", "A2", "A3", "A4")


def _is_prime(p):
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def family_spec(family: str, p: int, params) -> AffineSpec:
    """``A1 (alpha, beta)``, ``A2 alpha``, ``A3 (alpha0, alpha1)``, ``A4 alpha``.

    A3 uses the linear map with matrix ``[[a0, a1], [a1, a0]]`` on ``Z_p^2``.
    """
    if not _is_prime(p):
        raise InvalidParamsError(f"{p} is not prime")
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    fam = family.upper()
    try:
        if fam == "A1":
            al, be = (v % p for v in params)
            if al in (0, 1) or be in (0, 1):
                raise InvalidParamsError("A1 needs alpha, beta in Z_p^* minus 1")
            return AffineSpec((p, p), ((al, 0), (0, be)))
        if fam == "A2":
            (al,) = (v % p for v in params)
            if al in (0, 1):
                raise InvalidParamsError("A2 needs alpha in Z_p^* minus 1")
            return AffineSpec((p, p), ((al, 0), (1, al)))
        if fam == "A3":
            a0, a1 = (v % p for v in params)
            if a1 == 0:
                raise InvalidParamsError("A3 needs alpha1 != 0")
            return AffineSpec((p, p), ((a0, a1), (a1, a0)))
        if fam == "A4":
            (al,) = (v % (p * p) for v in params)
            if al % p in (0, 1):
                raise InvalidParamsError("A4 needs alpha not 0 or 1 mod p")
            return AffineSpec((p * p,), ((al,),))
    except ValueError:
        raise InvalidParamsError(f"wrong number of parameters for {fam}") from None
    except NotIndecomposableError as exc:
        raise InvalidParamsError(str(exc)) from None
    raise InvalidParamsError(f"unknown family {family!r}")


def family_parameters(family: str, p: int):
    """All parameter tuples giving a valid (indecomposable) instance."""
    fam = family.upper()
    if fam == "A1":
        cands = [(a, b) for a in range(2, p) for b in range(2, p)]
    elif fam == "A2":
        cands = [(a,) for a in range(2, p)]
    elif fam == "A3":
        cands = [(a0, a1) for a0 in range(p) for a1 in range(1, p)]
    elif fam == "A4":
        cands = [(a,) for a in range(p * p) if a % p not in (0, 1)]
    else:
        raise InvalidParamsError(f"unknown family {family!r}")
    out = []
    for c in cands:
        try:
            family_spec(fam, p, c)
        except InvalidParamsError:
            continue
        out.append(c)
    return out


def d_alpha(p, a0, a1):
    return ((1 - a0 + a1) * (1 - a0 - a1) * (1 - a0 * a0 + a1 * a1)) % p


def t_alpha(p, a0, a1):
    return ((a0 - a0 * a0 + a1 * a1) * pow(1 - a0, -1, p)) % p


def s_alpha(p, a0, a1):
    return ((1 - a0) * pow(a1, -1, p)) % p


def p2_invariants(p: int, family: str, params):
    """Predicted ``H_2(X, Z)`` as ``(rank, torsion)``; ``torsion`` is ``(p,)`` or ``()``."""
    from .homology import HomologyResult

    family_spec(family, p, params)  # validates
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    fam = family.upper()
    if fam == "A1":
        al, be = params
        special = (al * be) % p == 1
    elif fam == "A2":
        (al,) = params
        special = (al * al) % p == 1
    elif fam == "A3":
        special = d_alpha(p, *params) == 0
    else:
        special = False
    return HomologyResult(1, (p,) if special else ())


def explicit_family_spec(family: str, p: int, params=()) -> AffineSpec:
    """Specs of the families carrying non-constant cocycles."""
    fam = family.upper().rstrip("'")
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    if fam == "A1":
        (al,) = params
        if al % p in (0, 1):
            raise InvalidParamsError("A1' needs alpha in Z_p^* minus 1")
        return family_spec("A1", p, (al, pow(al, -1, p)))
    if fam == "A2":
        if p == 2:
            raise InvalidParamsError("A2' needs p odd")
        return family_spec("A2", p, (p - 1,))
    if fam == "A3":
        a0, a1 = params
        spec = family_spec("A3", p, (a0, a1))
        if d_alpha(p, a0, a1):
            raise InvalidParamsError("A3' needs d_alpha = 0")
        return spec
    raise InvalidParamsError(f"no explicit cocycle family {family!r}")


def zeta(family: str, p: int, params, spec: AffineSpec, j: int, x, y) -> int:
    fam = family.upper().rstrip("'")
    if fam == "A1":
        (al,) = params
        x1, x2 = x
        y1, y2 = y
        return (pow(al, j, p) * x2 * y1 + pow(al, (1 - j) % (p - 1), p) * x1 * y2) % p
    if fam == "A2":
        x1, x2 = x
        y1, y2 = y
        s = -1 if j % 2 else 1
        return ((j + 2 * s) * x1 * y1 + s * (x1 * y2 - x2 * y1)) % p
    if fam == "A3":
        a0, a1 = params
        t, s = t_alpha(p, a0, a1), s_alpha(p, a0, a1)
        u = spec.apply(y, j)
        return (x[1] * u[1] + t * (x[0] * u[0] + x[0] * u[1]) + s * x[1] * u[0]) % p
    raise InvalidParamsError(f"no explicit cocycle family {family!r}")


def pairing(family: str, p: int, params, spec: AffineSpec | None = None):
    """``<x, y> = sum_{0<j<ord(gamma)} zeta_j(x, y)`` mod ``p`` as a table."""
    spec = spec or explicit_family_spec(family, p, params)
    o = spec.order()
    els = spec.elements()
    return [[sum(zeta(family, p, params, spec, j, x, y) for j in range(1, o)) % p for y in els] for x in els]


def explicit_p2_cocycle(family: str, p: int, params, ell: int, lam=Fraction(0)) -> Cocycle:
    """``lam + ell <x, y> / p`` in Q/Z."""
    if not 0 < ell < p:
        raise InvalidParamsError("ell must satisfy 0 < ell < p")
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    spec = explicit_family_spec(family, p, params)
    pair = pairing(family, p, params, spec)
    lam = QZ.element(lam)
    q = affine_quandle(spec)
    vals = [[QZ.add(lam, Fraction(ell * v, p)) for v in row] for row in pair]
    return Cocycle(q, QZ, vals)


def explicit_parameters(family: str, p: int):
    fam = family.upper().rstrip("'")
    if fam == "A1":
        return [(a,) for a in range(2, p)]
    if fam == "A2":
        return [()] if p > 2 else []
    if fam == "A3":
        return [c for c in family_parameters("A3", p) if d_alpha(p, *c) == 0]
    raise InvalidParamsError(f"no explicit cocycle family {family!r}")
