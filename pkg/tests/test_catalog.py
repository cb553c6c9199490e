import pytest

from rackcoh import catalog
from rackcoh.coefficients import Cyclic
from rackcoh.cohomology import CocycleDatum, analyze, are_cohomologous, decompose_cocycle, h2_description, verify_cocycle
from rackcoh.errors import InvalidParamsError
from rackcoh.homology import quandle_h2


@pytest.mark.parametrize("name", catalog.names())
def test_fixture_invariants(name):
    f = catalog.get(name)
    assert f.name == name
    assert f.quandle.is_quandle
    S = analyze(f.quandle)
    if f.expected is None:
        return
    e = f.expected
    assert S.group.order == e.fx_order
    assert len(S.n0) == e.n0_order
    assert tuple(S.factors) == e.n0_factors
    if f.quandle.n <= 12:
        assert quandle_h2(f.quandle).torsion == e.h2q_factors


def test_parametric_names():
    assert catalog.get("transpositions-6").quandle.n == 15
    assert catalog.get("dihedral-11").quandle.n == 11
    assert catalog.get("a2-5-2").quandle.n == 25
    with pytest.raises(InvalidParamsError):
        catalog.get("nothing-here")
    with pytest.raises(InvalidParamsError):
        catalog.get("transpositions-2")


def test_transposition_indexing():
    q = catalog.transpositions_quandle(4)
    assert q.n == 6
    idx = {catalog.transposition_index(q, i, j) for i in range(4) for j in range(i + 1, 4)}
    assert idx == set(range(6))
    a, b = catalog.transposition_index(q, 0, 1), catalog.transposition_index(q, 1, 2)
    assert q.op(a, b) == catalog.transposition_index(q, 0, 2)


def test_chi_entries():
    chi = catalog.chi_cocycle(4)
    q = chi.quandle
    t = lambda i, j: catalog.transposition_index(q, i, j)
    assert chi[t(0, 1), t(0, 1)] == 1
    assert chi[t(0, 1), t(2, 3)] == 0
    assert chi[t(2, 3), t(0, 1)] == 0
    assert chi[t(0, 2), t(1, 2)] == 1
    assert verify_cocycle(chi)[0]
    for n in (3, 5):
        assert verify_cocycle(catalog.chi_cocycle(n))[0]


def test_chi_class_on_s3_is_constant():
    chi = catalog.chi_cocycle(3)
    S = analyze(chi.quandle)
    d = decompose_cocycle(S, chi)
    assert d.g == ()


def test_a4_sign_cocycle():
    f = catalog.a4_three_cycles()
    c = catalog.a4_sign_cocycle()
    assert verify_cocycle(c)[0]
    S = analyze(f.quandle)
    assert decompose_cocycle(S, c) == CocycleDatum(0, (1,))
    assert h2_description(f.quandle, Cyclic(2)).h2_order == 4


def test_a4_extension():
    f = catalog.a4_extension()
    assert f.quandle.n == 8
    S = analyze(f.quandle)
    g = S.group
    for x in range(4):
        assert g.gen(2 * x) == g.gen(2 * x + 1)
    assert g.gen(0) != g.gen(2)
    assert g.order == 24 and len(S.n0) == 1
    # the extension kills the sign class: its pullback is a coboundary
    base = catalog.a4_sign_cocycle()
    pulled = type(base)(f.quandle, Cyclic(2), [[base[x // 2, y // 2] for y in range(8)] for x in range(8)])
    zero = type(base)(f.quandle, Cyclic(2), [[0] * 8 for _ in range(8)])
    assert are_cohomologous(pulled, zero) is not None


def test_fixture_notes():
    for f in catalog.fixtures():
        assert f.note
