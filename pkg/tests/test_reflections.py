import itertools
from fractions import Fraction

import pytest

from ulat import linalg
from ulat.field import QuadraticField, unit_order
from ulat.hermlat import HermitianLattice, vectors_up_to_norm
from ulat.reflections import (NONE, classify_by_lemma, membership, orthogonal_reflection_matrix,
                              reflection_matrix, scan_reflections)

GAUSS = QuadraticField(-1)
EIS = QuadraticField(-3)


def _mat_mul(A, B):
    K = A[0][0].K
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), K.zero()) for j in range(n)]
            for i in range(n)]


def _identity(K, n):
    return [[K(int(i == j)) for j in range(n)] for i in range(n)]


def _roots(L, bound=2, radius=1, limit=12):
    out = []
    for r, _ in vectors_up_to_norm(L, bound, radius):
        out.append(list(r))
        if len(out) == limit:
            break
    return out


@pytest.mark.parametrize("name", ["gau_2U+2A1", "eis_2U+A22", "sq2_U+U2+D4"])
def test_composition_order_and_isometry(lattice, name):
    L = lattice(name)
    K = L.K
    alphas = [u for u in K.units() if u != 1]
    I = _identity(K, L.rank)
    for r in _roots(L):
        for a, b in itertools.product(alphas, repeat=2):
            prod = _mat_mul(reflection_matrix(L, r, a), reflection_matrix(L, r, b))
            if a * b == 1:
                assert prod == I
            else:
                assert prod == reflection_matrix(L, r, a * b)
        for a in alphas:
            M = reflection_matrix(L, r, a)
            # G^T H conj(G) = H for the convention <x, y> = x^T H conj(y)
            Mt = [list(col) for col in zip(*M)]
            Mc = [[x.conjugate() for x in row] for row in M]
            assert _mat_mul(_mat_mul(Mt, L.gram), Mc) == L.gram
            P, k = M, 1
            while P != I:
                P, k = _mat_mul(P, M), k + 1
            assert k == unit_order(a)


def test_minus_one_on_unit_summand_flips_coordinate(lattice):
    L = lattice("gau_2U+2A1")
    z, o = GAUSS(0), GAUSS(1)
    M = reflection_matrix(L, [z, o, z], GAUSS(-1))
    assert M == [[o, z, z], [z, -o, z], [z, z, o]]
    v = membership(L, [z, o, z], GAUSS(-1))
    assert v.in_unitary and v.in_kernel


def test_norm_one_tetraflection_by_lemma(lattice):
    L = lattice("gau_2U+2A1")
    z, o = GAUSS(0), GAUSS(1)
    i = GAUSS.parse("i")
    v = classify_by_lemma(L, [z, o, z], i)
    assert v.in_unitary and v.clause == "gaussian-tetraflection"
    assert v == membership(L, [z, o, z], i)


def test_order_three_cubes_to_identity(lattice):
    L = lattice("eis_2U+A22")
    w2 = EIS.parse("w") ** 2
    for r in _roots(L, limit=5):
        M = reflection_matrix(L, r, w2)
        assert _mat_mul(_mat_mul(M, M), M) == _identity(EIS, L.rank)


def test_lonely_biflection_witness(lattice):
    L = lattice("eis_2U+A22")
    res = scan_reflections(L, 2, 1)
    lonely = res.lonely_biflections()
    assert lonely
    rec = lonely[0]
    assert rec.by_lemma.clause == "eisenstein-biflection-no-partner"
    assert rec.by_matrix.orthogonal_partner == NONE
    # <r, r> = 2, i.e. (r, r) = 4 with t = 1
    assert rec.norm == 2
    assert [str(x) for x in rec.r] == ["-sqrt(-3)", "-1/2 - 1/2*sqrt(-3)", "-sqrt(-3)"]
    # sigma_{r,-1} is in U(L) but sigma_{r,w} is not
    r = list(rec.r)
    assert membership(L, r, EIS(-1)).in_unitary
    assert not membership(L, r, EIS.parse("w")).in_unitary


def test_kernel_reflections_have_norm_one(lattice):
    for name in ("gau_2U+2A1", "eis_2U+A22"):
        res = scan_reflections(lattice(name), 2, 1)
        ker = res.kernel_reflections()
        assert ker
        assert all(rec.norm == 1 for rec in ker)


def test_d_minus_5_biflection_iff_orthogonal_partner():
    K = QuadraticField(-5)
    L = HermitianLattice(K, [[K(0), K(0), K(Fraction(1, 2))], [K(0), K(1), K(0)],
                             [K(Fraction(1, 2)), K(0), K(0)]])
    s = K.sqrt_d
    seen = set()
    for r, _ in vectors_up_to_norm(L, 3, 1):
        r = list(r)
        v = membership(L, r, K(-1))
        S = orthogonal_reflection_matrix(L, [s * x for x in r])
        assert v.in_unitary == linalg.is_integral(S)
        seen.add(v.in_unitary)
    assert seen == {True, False}


def test_empty_scan_below_all_norms(lattice):
    assert scan_reflections(lattice("gau_2U+2A1"), Fraction(1, 2), 1).records == []
