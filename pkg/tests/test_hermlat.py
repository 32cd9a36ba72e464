import json
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from ulat import jsonio
from ulat.field import QuadraticField
from ulat.hermlat import (HermitianLattice, enumerate_vectors, is_primitive, lattice_from_json,
                          matches_named, named_lattice_rank, same_module, trace_gram)

from conftest import LATTICE_FILES, load_lattice

GAUSS = QuadraticField(-1)
EIS = QuadraticField(-3)


def _lat(K, rows):
    return HermitianLattice(K, [[K.parse(str(x)) for x in row] for row in rows])


def test_rank_one_gaussian_trace_gram():
    # Tr<v,v> = 2, Tr<v, zeta v> = Tr(conj zeta) = -4, Tr<zeta v, zeta v> = 2 N(zeta) = 10
    assert trace_gram(_lat(GAUSS, [[1]]).gram) == [[2, -4], [-4, 10]]


def test_orthogonal_sum_is_block_diagonal():
    L = _lat(EIS, [[1, 0], [0, 2]])
    g = L.trace_form().gram
    assert all(g[i][j] == 0 for i in range(2) for j in range(2, 4))
    assert [row[:2] for row in g[:2]] == trace_gram([[EIS(1)]])


def test_h_plus_one_is_2U_2A1(lattice):
    L = lattice("gau_2U+2A1")
    tf = L.trace_form()
    assert (tf.rank, tf.det, tf.signature, tf.is_even) == (6, 4, (4, 2), True)
    assert matches_named(L, "2U+2A1")[0]


@pytest.mark.parametrize("path", LATTICE_FILES, ids=lambda p: p.stem)
def test_fixture_matches_named_lattice(path):
    doc = jsonio.load(path, "lattice")
    L = lattice_from_json(doc)
    ok, bad = matches_named(L, doc["expected_trace_form"])
    assert ok, bad
    assert 2 * L.rank == named_lattice_rank(doc["expected_trace_form"])
    assert L.is_even()
    assert L.hermitian_signature() == (L.rank - 1, 1)


@pytest.mark.parametrize("path", LATTICE_FILES, ids=lambda p: p.stem)
def test_discriminant_order_and_double_dual(path):
    L = load_lattice(path.stem)
    G = L.discriminant_group()
    assert G.order == abs(L.trace_form().det)
    snf = smith_normal_form(sympy.Matrix(L.trace_form().gram), domain=sympy.ZZ)
    assert sorted(abs(x) for x in snf.diagonal() if abs(x) > 1) == sorted(G.invariants)
    LL = L.dual_lattice().dual_lattice()
    basis = [[sum((a * b for a, b in zip(row, col)), L.K.zero())
              for col in zip(*LL.basis)] for row in L.dual_lattice().basis]
    unit = [[L.K(int(i == j)) for j in range(L.rank)] for i in range(L.rank)]
    assert same_module(basis, unit)


def test_rank_one_dual_index():
    L = _lat(GAUSS, [[1]])
    assert L.discriminant_group().order == 4


def test_2U_2A1_discriminant_form(lattice):
    G = lattice("gau_2U+2A1").discriminant_group()
    assert G.invariants == [2, 2]
    assert G.q_values == [Fraction(1, 4), Fraction(1, 4)]


def test_2U3_A2_discriminant(lattice):
    # trace Gram has Smith form diag(1, 3, 3, 3, 3, 3)
    assert lattice("eis_2U3+A2").discriminant_group().invariants == [3, 3, 3, 3, 3]


def test_enumerate_norm_one_in_h_plus_one(lattice):
    L = lattice("gau_2U+2A1")
    vecs = {v.coords for v in enumerate_vectors(L, 1, 2)}
    z, o, i = GAUSS(0), GAUSS(1), GAUSS.parse("i")
    assert (z, o, z) in vecs and (z, i, z) in vecs
    for v in vecs:
        for u in GAUSS.units():
            assert tuple(u * x for x in v) in vecs


def test_enumerate_a2_norm_one():
    A2 = _lat(EIS, [[1]])
    vecs = enumerate_vectors(A2, 1, 2)
    assert len(vecs) == 6


def test_enumerate_parity_obstruction(lattice):
    assert enumerate_vectors(lattice("gau_2U+2A1"), Fraction(1, 3), 2) == []


def test_primitivity():
    L = _lat(GAUSS, [[0, 0, "1/2"], [0, 1, 0], ["1/2", 0, 0]])
    z, o = GAUSS(0), GAUSS(1)
    assert is_primitive(L, [z, o, z])
    assert not is_primitive(L, [z, GAUSS.parse("1+i"), z])
    M = _lat(EIS, [[0, 0, "1/2"], [0, 1, 0], ["1/2", 0, 0]])
    assert not is_primitive(M, [EIS(0), 1 + EIS.parse("w"), EIS(0)])


def test_fixture_errors_are_line_anchored(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "d": -1,\n "gram": [[1]],\n "extra": 3\n}\n')
    with pytest.raises(jsonio.FixtureError, match=r"bad\.json:4:"):
        jsonio.load(bad, "lattice")
    bad.write_text('{\n "d": -1,\n "gram": [[1]\n}\n')
    with pytest.raises(jsonio.FixtureError, match=r"bad\.json:4:"):
        jsonio.load(bad, "lattice")
    with pytest.raises(ValueError):
        lattice_from_json({"gram": [[1]]})
