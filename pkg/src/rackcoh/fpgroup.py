"""Finite quotient F_X = G_X / Z_X of the enveloping group, by coset enumeration.

Words are tuples of ``(generator, exponent)`` pairs with exponent ``+1`` or
``-1``.  The generator ``i`` of an enveloping presentation is the quandle
element ``i``.  Group elements of a :class:`CayleyGroup` are integers in
``range(order)`` numbered breadth first from the identity ``0``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import (
    CapExceededError,
    InconsistencyError,
    NotIndecomposableError,
)
from .quandle import Quandle, inner_action

DEFAULT_MAX_COSETS = 1_000_000
# Above this order products are computed by following words instead of a table.
FULL_TABLE_LIMIT = 6000

Word = tuple


# --------------------------------------------------------------------------
# words


def word_degree(w) -> int:
    return sum(e for _, e in w)


def word_inverse(w) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def free_reduce(w) -> Word:
    out = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word_power(g, k) -> Word:
    return ((g, 1 if k > 0 else -1),) * abs(k)


def format_word(w) -> str:
    if not w:
        return "1"
    return " ".join(f"x{g}" if e == 1 else f"x{g}^-1" for g, e in w)


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple

    def __post_init__(self):
        for r in self.relators:
            if free_reduce(r) != tuple(r):
                raise ValueError(f"relator {format_word(r)} is not freely reduced")


def enveloping_presentation(q: Quandle) -> Presentation:
    """Relators ``x_i x_j x_i^-1 (x_i > x_j)^-1`` and ``x_i^{n_i}``."""
    n = q.n
    rels = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            k = q.table[i][j]
            rels.append(((i, 1), (j, 1), (i, -1), (k, -1)))
    for i, order in enumerate(inner_action(q).orders):
        rels.append(word_power(i, order))
    return Presentation(n, tuple(rels))


# --------------------------------------------------------------------------
# coset enumeration


class _Enumerator:
    """HLT coset enumeration over the trivial subgroup with lookahead.

    Column ``2g`` is multiplication by ``x_g`` and ``2g + 1`` by its
    inverse, so ``col ^ 1`` is the inverse column.
    """

    def __init__(self, pres: Presentation, max_cosets: int):
        self.ncols = 2 * pres.ngens
        rels = {}
        for r in pres.relators:
            cols = tuple(2 * g + (0 if e > 0 else 1) for g, e in r)
            if cols:
                rels[cols] = None
        # short relators first: they close cosets early and keep the table small
        self.relators = sorted(rels, key=len)
        self.max_cosets = max_cosets
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1

    def find(self, c):
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c, col):
        if self.live >= self.max_cosets:
            self.lookahead()
            if self.live >= self.max_cosets:
                raise CapExceededError(self.max_cosets)
            if self.parent[c] != c:
                return
        d = len(self.table)
        row = [-1] * self.ncols
        row[col ^ 1] = c
        self.table.append(row)
        self.parent.append(d)
        self.table[c][col] = d
        self.live += 1

    def _merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a != b:
            if a > b:
                a, b = b, a
            self.parent[b] = a
            queue.append(b)

    def coincidence(self, a, b):
        table = self.table
        queue = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(self.ncols):
                f = row[x]
                if f < 0:
                    continue
                table[f][x ^ 1] = -1
                e1 = self.find(e)
                f1 = self.find(f)
                if table[e1][x] >= 0:
                    self._merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] >= 0:
                    self._merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1
        self.live -= len(queue)

    def scan(self, c, rel, fill):
        table = self.table
        f = b = c
        i, j = 0, len(rel) - 1
        while True:
            while i <= j:
                nxt = table[f][rel[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][rel[j] ^ 1]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][rel[i]] = b
                table[b][rel[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, rel[i])
            if self.parent[c] != c:
                return
            f = self.find(f)
            b = self.find(b)

    def lookahead(self):
        for c in range(len(self.table)):
            if self.parent[c] != c:
                continue
            for rel in self.relators:
                self.scan(c, rel, fill=False)
                if self.parent[c] != c:
                    break

    def run(self):
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                for rel in self.relators:
                    self.scan(c, rel, fill=True)
                    if self.parent[c] != c:
                        break
                if self.parent[c] == c:
                    row = self.table[c]
                    for x in range(self.ncols):
                        if row[x] < 0:
                            self.define(c, x)
                            if self.parent[c] != c:
                                break
            c += 1


@dataclass(eq=False)
class CayleyGroup:
    """A finite group as the regular permutation representation on cosets.

    ``right[e, col]`` is ``e * letter(col)``; element witnesses come from the
    BFS spanning tree (``tree_parent``/``tree_col``).
    """

    order: int
    ngens: int
    right: np.ndarray
    tree_parent: np.ndarray
    tree_col: np.ndarray
    presentation: Presentation | None = None
    identity: int = 0
    _mult: np.ndarray | None = field(default=None, repr=False)
    _inv: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.order <= FULL_TABLE_LIMIT:
            self._mult = self._build_mult()
            self._inv = np.argmax(self._mult == self.identity, axis=1)
        else:
            inv = np.empty(self.order, dtype=np.int64)
            for e in range(self.order):
                inv[e] = self.evaluate(word_inverse(self.witness(e)))
            self._inv = inv

    def _build_mult(self):
        N = self.order
        mult = np.empty((N, N), dtype=np.int32)
        mult[:, 0] = np.arange(N)
        for b in range(1, N):
            mult[:, b] = self.right[mult[:, self.tree_parent[b]], self.tree_col[b]]
        return mult

    @property
    def generators(self):
        """Element index of each generator ``x_i``."""
        return [int(self.right[0, 2 * i]) for i in range(self.ngens)]

    def gen(self, i, e=1):
        return int(self.right[0, 2 * i + (0 if e > 0 else 1)])

    def witness(self, e) -> Word:
        letters = []
        while e != self.identity:
            col = int(self.tree_col[e])
            letters.append((col // 2, 1 if col % 2 == 0 else -1))
            e = int(self.tree_parent[e])
        return tuple(reversed(letters))

    def evaluate(self, w, start=None) -> int:
        e = self.identity if start is None else start
        right = self.right
        for g, s in w:
            e = int(right[e, 2 * g + (0 if s > 0 else 1)])
        return e

    def mul(self, a, b) -> int:
        if self._mult is not None:
            return int(self._mult[a, b])
        return self.evaluate(self.witness(b), start=a)

    def inv(self, a) -> int:
        return int(self._inv[a])

    def conj(self, g, a) -> int:
        """``g a g^-1``."""
        return self.mul(self.mul(g, a), self.inv(g))

    def element_order(self, a) -> int:
        k, e = 1, a
        while e != self.identity:
            e = self.mul(e, a)
            k += 1
        return k

    def check_relators(self, pres: Presentation | None = None):
        pres = pres or self.presentation
        if pres is None:
            return
        start = np.arange(self.order)
        for r in pres.relators:
            cur = start
            for g, s in r:
                cur = self.right[cur, 2 * g + (0 if s > 0 else 1)]
            if not np.array_equal(cur, start):
                bad = int(np.flatnonzero(cur != start)[0])
                raise InconsistencyError(
                    f"relator {format_word(r)} is not the identity at element {bad}"
                )

    def check_witnesses(self):
        for e in range(self.order):
            if self.evaluate(self.witness(e)) != e:
                raise InconsistencyError(f"witness of {e} does not evaluate to it")

    def check_associativity(self, samples=200, seed=0):
        rng = np.random.default_rng(seed)
        for a, b, c in rng.integers(0, self.order, size=(samples, 3)):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise InconsistencyError(f"associativity fails at {(a, b, c)}")


def todd_coxeter(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CayleyGroup:
    """Enumerate the cosets of the trivial subgroup of ``pres``.

    Raises :class:`CapExceededError` when more than ``max_cosets`` live
    cosets are needed even after a lookahead pass.
    """
    en = _Enumerator(pres, max_cosets)
    en.run()
    ncols = en.ncols
    start = en.find(0)
    new = {start: 0}
    order = [start]
    tree_parent = [0]
    tree_col = [-1]
    queue = deque([start])
    while queue:
        c = queue.popleft()
        row = en.table[c]
        for x in range(ncols):
            d = en.find(row[x])
            if d not in new:
                new[d] = len(order)
                order.append(d)
                tree_parent.append(new[c])
                tree_col.append(x)
                queue.append(d)
    N = len(order)
    right = np.empty((N, ncols), dtype=np.int64)
    for i, c in enumerate(order):
        row = en.table[c]
        for x in range(ncols):
            right[i, x] = new[en.find(row[x])]
    group = CayleyGroup(
        order=N,
        ngens=pres.ngens,
        right=right,
        tree_parent=np.array(tree_parent, dtype=np.int64),
        tree_col=np.array(tree_col, dtype=np.int64),
        presentation=pres,
    )
    group.check_relators()
    return group


# --------------------------------------------------------------------------
# action on X


def action_on_X(g: CayleyGroup, q: Quandle) -> np.ndarray:
    """Array ``act`` with ``act[e, y] = e > y``; generator ``i`` acts by ``phi_i``."""
    n = q.n
    letter_perm = []
    for i in range(g.ngens):
        letter_perm.append(np.array(q.phi(i)))
        letter_perm.append(np.array(q.phi_inverse(i)))
    act = np.empty((g.order, n), dtype=np.int64)
    act[0] = np.arange(n)
    for e in range(1, g.order):
        act[e] = act[g.tree_parent[e]][letter_perm[g.tree_col[e]]]
    for col, perm in enumerate(letter_perm):
        if not np.array_equal(act[g.right[:, col]], act[:, perm]):
            raise InconsistencyError("a relator acts nontrivially on X")
    return act


# --------------------------------------------------------------------------
# subgroups


@dataclass(eq=False)
class SubgroupData:
    parent: CayleyGroup
    elements: tuple
    generators: list  # (element, word)
    words: dict | None = None  # element -> word, every element
    degree_zero: bool = True

    def __post_init__(self):
        self._set = frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self._set

    def __len__(self):
        return len(self.elements)

    def word(self, e) -> Word:
        if self.words is not None:
            return self.words[e]
        return self.parent.witness(e)


def _close(g: CayleyGroup, gens):
    """Elements and BFS words of the subgroup generated by ``(elem, word)`` pairs."""
    words = {g.identity: ()}
    queue = deque([g.identity])
    while queue:
        e = queue.popleft()
        we = words[e]
        for a, wa in gens:
            f = g.mul(e, a)
            if f not in words:
                words[f] = we + wa
                queue.append(f)
    return words


def _grow(g: CayleyGroup, candidates, gens, words):
    """Add each candidate not already in the subgroup as a new generator."""
    changed = False
    for a, wa in candidates:
        if a not in words:
            gens.append((a, wa))
            words = _close(g, gens)
            changed = True
    return words, changed


def commutator_subgroup(g: CayleyGroup) -> SubgroupData:
    """``[F, F]`` as the normal closure of the generator commutators.

    Every stored word is built from commutators and their conjugates by
    generators, so it has exponent sum zero.
    """
    atoms = []
    for i in range(g.ngens):
        for j in range(i + 1, g.ngens):
            w = ((i, 1), (j, 1), (i, -1), (j, -1))
            atoms.append((g.evaluate(w), w))
    gens = []
    words = {g.identity: ()}
    words, _ = _grow(g, atoms, gens, words)
    changed = True
    while changed:
        conj = []
        for a, wa in gens:
            for k in range(g.ngens):
                for s in (1, -1):
                    w = ((k, s),) + wa + ((k, -s),)
                    conj.append((g.evaluate(w), w))
        words, changed = _grow(g, conj, gens, words)
    return SubgroupData(g, tuple(sorted(words)), gens, words)


def orbit_transversal(g: CayleyGroup, act, x0: int):
    """Degree-zero elements ``r_y`` with ``r_y > x0 = y``.

    Built breadth first by ``r_{x_i > y} = x_i r_y x0^-1``; returns
    ``{y: (element, word)}`` in discovery order.
    """
    rep = {x0: (g.identity, ())}
    queue = deque([x0])
    x0_inv = g.gen(x0, -1)
    while queue:
        y = queue.popleft()
        e, w = rep[y]
        for i in range(g.ngens):
            z = int(act[g.gen(i), y])
            if z not in rep:
                f = g.mul(g.mul(g.gen(i), e), x0_inv)
                rep[z] = (f, ((i, 1),) + w + ((x0, -1),))
                queue.append(z)
    return rep


def stabilizer(N: SubgroupData, act, x0: int) -> SubgroupData:
    """Stabilizer of ``x0`` in ``N`` with Schreier generators as degree-0 words."""
    g = N.parent
    npoints = act.shape[1]
    orbit = {int(act[e, x0]) for e in N.elements}
    if len(orbit) != npoints:
        raise NotIndecomposableError(
            f"N_X is not transitive on X: orbit of {x0} has {len(orbit)} of {npoints} points"
        )
    rep = orbit_transversal(g, act, x0)
    if len(rep) != npoints:
        raise NotIndecomposableError("the quandle is not indecomposable")
    for y, (e, _) in rep.items():
        if e not in N:
            raise InconsistencyError(f"transversal element for {y} lies outside N_X")
    inv_rep = {y: (g.inv(e), word_inverse(w)) for y, (e, w) in rep.items()}
    schreier = []
    seen = {g.identity}
    for a, wa in N.generators:
        for y in range(npoints):
            z = int(act[a, y])
            s = g.mul(g.mul(inv_rep[z][0], a), rep[y][0])
            if s not in seen:
                seen.add(s)
                schreier.append((s, inv_rep[z][1] + wa + rep[y][1]))
    gens = []
    words, _ = _grow(g, schreier, gens, {g.identity: ()})
    scanned = {e for e in N.elements if act[e, x0] == x0}
    if set(words) != scanned:
        raise InconsistencyError("Schreier generators do not generate the stabilizer")
    if len(N) != npoints * len(scanned):
        raise InconsistencyError("orbit-stabilizer count fails")
    return SubgroupData(g, tuple(sorted(words)), gens, words)


def centralizer(g: CayleyGroup, e: int) -> SubgroupData:
    if g._mult is not None:
        elems = np.flatnonzero(g._mult[:, e] == g._mult[e, :]).tolist()
    else:
        elems = [h for h in range(g.order) if g.mul(h, e) == g.mul(e, h)]
    gens = []
    words = {g.identity: ()}
    words, _ = _grow(g, [(h, g.witness(h)) for h in elems], gens, words)
    return SubgroupData(g, tuple(sorted(elems)), gens, None, degree_zero=False)


def intersection(a: SubgroupData, b: SubgroupData) -> SubgroupData:
    """Intersection, keeping the words of ``a``."""
    elems = tuple(e for e in a.elements if e in b)
    g = a.parent
    gens = []
    words = {g.identity: ()}
    words, _ = _grow(g, [(e, a.word(e)) for e in elems], gens, words)
    return SubgroupData(g, elems, gens, words, degree_zero=a.degree_zero)


# --------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant factors ``d_1 | d_2 | ...`` of an abelian quotient.

    ``basis[i]`` is an element of the subgroup lifting the ``i``-th cyclic
    generator; ``coordinates`` maps each subgroup element to its exponent
    vector modulo the factors.
    """

    factors: tuple
    basis: tuple
    coordinates: dict

    @property
    def order(self):
        out = 1
        for d in self.factors:
            out *= d
        return out

    def coords(self, e):
        return self.coordinates[e]


def _decompose_abelian(elements, mul, identity):
    """Basis of a finite abelian group, largest cyclic factor first."""
    if len(elements) == 1:
        return []

    def order_of(x):
        k, y = 1, x
        while y != identity:
            y = mul(y, x)
            k += 1
        return k

    orders = {x: order_of(x) for x in elements}
    a = max(elements, key=lambda x: (orders[x], -x))
    cyc = [identity]
    while True:
        nxt = mul(cyc[-1], a)
        if nxt == identity:
            break
        cyc.append(nxt)
    rep_of = {}
    for x in elements:
        if x in rep_of:
            continue
        coset = [mul(x, c) for c in cyc]
        r = min(coset)
        for y in coset:
            rep_of[y] = r
    reps = sorted(set(rep_of.values()))
    sub = _decompose_abelian(reps, lambda u, v: rep_of[mul(u, v)], rep_of[identity])
    basis = [(a, orders[a])]
    for b_bar, e in sub:
        for c in cyc:
            b = mul(b_bar, c)
            if orders[b] == e:
                basis.append((b, e))
                break
        else:
            raise InconsistencyError("no lift of the right order in abelian decomposition")
    return basis


def _element_closure(g: CayleyGroup, gens):
    elems = {g.identity}
    queue = deque([g.identity])
    while queue:
        e = queue.popleft()
        for h in gens:
            f = g.mul(e, h)
            if f not in elems:
                elems.add(f)
                queue.append(f)
    return elems


def derived_subgroup(s: SubgroupData) -> frozenset:
    """``[s, s]`` as the normal closure in ``s`` of generator commutators."""
    g = s.parent
    gens = [a for a, _ in s.generators]
    atoms = set()
    for a in gens:
        for b in gens:
            c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))
            if c != g.identity:
                atoms.add(c)
    while True:
        elems = _element_closure(g, sorted(atoms))
        new = {g.conj(a, c) for c in atoms for a in gens} - elems
        if not new:
            return frozenset(elems)
        atoms |= new


def abelian_structure(s: SubgroupData) -> AbelianStructure:
    """Invariant factors and coordinates of ``s / [s, s]``."""
    g = s.parent
    D = derived_subgroup(s)
    coset_of = {}
    for e in s.elements:
        if e in coset_of:
            continue
        coset = [g.mul(e, d) for d in D]
        r = min(coset)
        for x in coset:
            coset_of[x] = r
    reps = sorted(set(coset_of.values()))
    basis_desc = _decompose_abelian(reps, lambda u, v: coset_of[g.mul(u, v)], coset_of[g.identity])
    basis_desc.reverse()
    factors = tuple(d for _, d in basis_desc)
    basis = tuple(b for b, _ in basis_desc)
    prod_ = 1
    for d in factors:
        prod_ *= d
    if prod_ != len(reps):
        raise InconsistencyError("invariant factors do not multiply to the quotient order")
    coord_of_rep = {}
    for vec in product(*(range(d) for d in factors)):
        x = g.identity
        for b, k in zip(basis, vec):
            for _ in range(k):
                x = g.mul(x, b)
        coord_of_rep[coset_of[x]] = vec
    if len(coord_of_rep) != len(reps):
        raise InconsistencyError("abelian coordinates are not a bijection")
    coords = {e: coord_of_rep[coset_of[e]] for e in s.elements}
    return AbelianStructure(factors, basis, coords)
