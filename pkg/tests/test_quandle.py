import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rackcoh.errors import ClassTooLargeError, InvalidTableError, NotACocycleError, ParseError
from rackcoh.quandle import (
    Quandle,
    conjugation_quandle,
    extension_by_cocycle,
    inner_action,
    parse,
    serialize,
    trivial_quandle,
    validate,
)

DIHEDRAL3 = [[(2 * y - x) % 3 for y in range(3)] for x in range(3)]
S4_GENS = [(1, 0, 2, 3), (1, 2, 3, 0)]
A4_GENS = [(1, 2, 0, 3), (0, 2, 3, 1)]


def brute_axioms(t):
    # independent restatement of the axioms
    n = len(t)
    if any(sorted(r) != list(range(n)) for r in t):
        return "invalid"
    for x, y, z in itertools.product(range(n), repeat=3):
        if t[x][t[y][z]] != t[t[x][y]][t[x][z]]:
            return "invalid"
    return "quandle" if all(t[x][x] == x for x in range(n)) else "rack"


def test_validate_examples():
    assert validate([[0, 1, 2]] * 3).kind == "quandle"
    assert validate(DIHEDRAL3).kind == "quandle"
    assert brute_axioms(DIHEDRAL3) == "quandle"
    bad = validate([[0, 0, 2], [0, 1, 2], [0, 1, 2]])
    assert bad.kind == "invalid" and bad.reason == "non-bijective-row" and bad.witness == (0,)
    assert validate([[0, 3], [0, 1]]).reason == "out-of-range"
    assert validate([[0, 1], [0]]).reason == "non-square"


def test_rack_that_is_not_a_quandle():
    # constant shift x > y = y + 1 mod 3
    assert validate([[(y + 1) % 3 for y in range(3)] for _ in range(3)]).kind == "rack"


def test_distributivity_witness():
    t = [[0, 2, 1], [2, 1, 0], [0, 1, 2]]
    res = validate(t)
    assert res.reason == "distributivity"
    x, y, z = res.witness
    assert t[x][t[y][z]] != t[t[x][y]][t[x][z]]


def test_invalid_table_raises():
    with pytest.raises(InvalidTableError) as exc:
        Quandle([[0, 0], [1, 1]])
    assert exc.value.exit_code == 3


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.lists(st.permutations(range(n)), min_size=n, max_size=n)))
def test_validate_matches_brute_force(rows):
    assert validate(rows).kind == brute_axioms(rows)


def test_inner_action():
    ia = inner_action(Quandle(DIHEDRAL3))
    assert ia.indecomposable and ia.orders == (2, 2, 2)
    assert len(inner_action(trivial_quandle(2)).orbits) == 2
    assert inner_action(conjugation_quandle(S4_GENS, (1, 0, 2, 3))).indecomposable


def test_phi_conjugation_identity():
    q = conjugation_quandle(S4_GENS, (1, 0, 2, 3))
    for x in range(q.n):
        px, pxi = q.phi(x), q.phi_inverse(x)
        for y in range(q.n):
            lhs = q.phi(q.op(x, y))
            rhs = tuple(px[q.phi(y)[pxi[z]]] for z in range(q.n))
            assert lhs == rhs


def test_conjugation_quandle():
    q = conjugation_quandle(S4_GENS, (1, 0, 2, 3))
    assert q.n == 6 and q.is_quandle
    assert list(q.elements) == sorted(q.elements)
    a4 = conjugation_quandle(A4_GENS, (1, 2, 0, 3))
    assert a4.n == 4 and inner_action(a4).indecomposable
    assert all(o == 3 for o in inner_action(a4).orders)
    triv = conjugation_quandle([(1, 0, 2), ], (1, 0, 2))
    assert triv.n == 1
    with pytest.raises(ClassTooLargeError):
        conjugation_quandle(S4_GENS, (1, 0, 2, 3), max_size=3)


def test_extension_trivial_and_projection():
    q = Quandle(DIHEDRAL3)
    y = extension_by_cocycle(q, 2, [[0] * 3 for _ in range(3)])
    assert y.n == 6 and y.is_quandle
    for a in range(y.n):
        for b in range(y.n):
            assert y.op(a, b) // 2 == q.op(a // 2, b // 2)


def test_extension_by_coboundary_is_isomorphic():
    q = Quandle(DIHEDRAL3)
    m = 3
    gamma = [0, 1, 2]
    f = [[(gamma[q.op(x, y)] - gamma[y]) % m for y in range(3)] for x in range(3)]
    e0 = extension_by_cocycle(q, m, [[0] * 3 for _ in range(3)])
    e1 = extension_by_cocycle(q, m, f)
    # (x, i) -> (x, i + gamma(x)) maps e0 onto e1
    iso = [(k // m) * m + (k % m + gamma[k // m]) % m for k in range(q.n * m)]
    for a in range(e0.n):
        for b in range(e0.n):
            assert iso[e0.op(a, b)] == e1.op(iso[a], iso[b])


def test_extension_rejects_non_cocycle():
    q = Quandle(DIHEDRAL3)
    f = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]
    with pytest.raises(NotACocycleError):
        extension_by_cocycle(q, 2, f)


def test_parse_serialize_round_trip():
    text = serialize(Quandle(DIHEDRAL3))
    assert text == "3\n0 2 1\n2 1 0\n1 0 2\n"
    assert serialize(parse(text)) == text
    assert parse("# dihedral\n3\n0 2 1\n2 1 0\n1 0 2\n") == Quandle(DIHEDRAL3)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("3\n0 2 1\n2 1 0\n", 3, None),
        ("x\n", 1, 1),
        ("2\n0 1\n0 9\n", 3, 3),
        ("2\n0 1\n0 a\n", 3, 3),
        ("2\n0 1 1\n0 1\n", 2, None),
    ],
)
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line
    assert exc.value.column == column
    assert exc.value.exit_code == 2
