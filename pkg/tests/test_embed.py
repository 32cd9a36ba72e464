from fractions import Fraction

import mpmath
import pytest

from ulat import linalg
from ulat.embed import (complex_structure, e4_at_i, hol_split, is_unitary_isometry,
                        restrict_tube_series, s_tail_bound, split_coordinates, to_trace_matrix)
from ulat.field import QuadraticField
from ulat.formal import FormalRing
from ulat.hermlat import HermitianLattice, from_trace_coords, to_trace_coords
from ulat.qseries import eisenstein
from ulat.reflections import orthogonal_reflection_matrix, reflection_matrix

from conftest import LATTICE_FILES, load_lattice

GAUSS = QuadraticField(-1)


def test_gaussian_rank_one_complex_structure():
    cs = complex_structure(HermitianLattice(GAUSS, [[GAUSS(1)]]))
    J = cs.J
    assert linalg.mat_mul(J, J) == [[-1, 0], [0, -1]]
    # change to the basis (1, i); i = zeta + 2
    P = [[1, 2], [0, 1]]
    Pinv = [[1, -2], [0, 1]]
    assert linalg.mat_mul(linalg.mat_mul(Pinv, J), P) == [[0, -1], [1, 0]]


def test_J_irrational_off_gaussian(lattice):
    cs = complex_structure(lattice("eis_2U+A22"))
    assert cs.J is None
    D = cs.field.D
    assert linalg.mat_mul(cs.K, cs.K) == [[D * (i == j) for j in range(cs.dim)]
                                          for i in range(cs.dim)]


@pytest.mark.parametrize("path", LATTICE_FILES, ids=lambda p: p.stem)
def test_structure_invariants_and_reconstruction(path):
    L = load_lattice(path.stem)
    cs = complex_structure(L)
    assert all(cs.check().values()), cs.check()
    assert all(hol_split(cs).check(cs).values())
    K = L.K
    for i in range(L.rank):
        for j in range(L.rank):
            ei = [K(int(k == i)) for k in range(L.rank)]
            ej = [K(int(k == j)) for k in range(L.rank)]
            x, y = to_trace_coords(ei), to_trace_coords(ej)
            assert cs.reconstruct(x, y) == L.gram[i][j]
            xz = to_trace_coords([K.zeta * v for v in ei])
            assert cs.reconstruct(xz, y) == K.zeta * L.gram[i][j]


def test_block_diagonal_over_summands(lattice):
    cs = complex_structure(lattice("gau_2U+2A1"))
    for i in range(6):
        for j in range(6):
            if i // 2 != j // 2:
                assert cs.K[i][j] == 0


def test_unitary_isometries(lattice):
    L = lattice("gau_2U+2A1")
    cs = complex_structure(L)
    assert is_unitary_isometry(L, cs.J)
    z, o = GAUSS(0), GAUSS(1)
    for r in ([z, o, z], [o, o, o], [GAUSS.parse("1+i"), o, z]):
        for a in (GAUSS(-1), GAUSS.parse("i")):
            M = to_trace_matrix(L, reflection_matrix(L, r, a))
            assert is_unitary_isometry(L, M)


def test_orthogonal_reflection_not_unitary(lattice):
    L = lattice("gau_2U+2A1")
    v = from_trace_coords(GAUSS, [-1, -1, -1, -1, -1, 0])
    S = orthogonal_reflection_matrix(L, v)
    assert linalg.is_integral(S)
    assert not is_unitary_isometry(L, S)


def test_split_coordinates(lattice):
    cs = complex_structure(lattice("gau_2U+2A1"))
    z = [1, 0, 2, -1, 0, 3]
    hol, anti = split_coordinates(cs, z)
    assert [h + a for h, a in zip(hol, anti)] == [GAUSS(x) for x in z]


def test_e4_at_i_high_precision():
    # E4(i) = 1 + 240 sum sigma_3(n) e^{-2 pi n}
    with mpmath.workdps(60):
        E4 = eisenstein(4, 40)
        s = mpmath.exp(-2 * mpmath.pi)
        val = sum(mpmath.mpf(int(E4[n])) * s ** n for n in range(41))
        assert abs(val - e4_at_i(60)) < mpmath.mpf(10) ** -45


def _split_table(n_max, m_max):
    E4 = eisenstein(4, max(n_max, m_max))
    return [{"n": n, "m": m, "lambda": [], "value": str(E4[n] * E4[m])}
            for n in range(n_max + 1) for m in range(m_max + 1)]


def test_restrict_tau_only():
    L0 = HermitianLattice(GAUSS, [[GAUSS(1)]])
    E4 = eisenstein(4, 6)
    table = [{"n": n, "m": 0, "lambda": [], "value": str(E4[n])} for n in range(7)]
    T = restrict_tube_series(table, L0, mode="formal", max_degree=2, weight=4)
    assert T[(0,)].equal_to(E4.scale(T[(0,)][0]), order=6)
    assert T[(1,)] is None


def test_split_form_formal_and_float():
    L0 = HermitianLattice(GAUSS, [[GAUSS(1)]])
    table = _split_table(6, 25)
    T = restrict_tube_series(table, L0, mode="formal", max_degree=2, weight=4)
    ring_s = T[(0,)][0]
    E4 = eisenstein(4, 30)
    expected = sum((ring_s.ring.gen("s") ** m * E4[m] for m in range(1, 26)), ring_s.ring.const(1))
    assert ring_s == expected
    T = restrict_tube_series(table, L0, mode="float", max_degree=2, weight=4)
    with mpmath.workdps(60):
        val = T[(0,)][0]
        assert abs(val - e4_at_i(60)) < 240 * 26 ** 4 * s_tail_bound(GAUSS, 25) + mpmath.mpf(10) ** -45
        for n in range(1, 7):
            assert abs(T[(0,)][n] - int(E4[n]) * val) < mpmath.mpf(10) ** -40


def test_two_term_table_matches_hand_expansion():
    # 2 q e^{<1, z>} s + 3 q^2 e^{<1+w, z>}: the z^2 coefficient is 2 s/2 q + 3 (1+w)^2/2 q^2
    K = QuadraticField(-3)
    L0 = HermitianLattice(K, [[K(1)]])
    table = [{"n": 1, "m": 1, "lambda": ["1"], "value": "2"},
             {"n": 2, "m": 0, "lambda": ["1+w"], "value": "3"}]
    T = restrict_tube_series(table, L0, mode="formal", max_degree=3)
    s = T[(0,)][1].ring.gen("s")
    l1, l2 = K(1), 1 + K.parse("w")
    assert T[(2,)][1] == s * 2 * (l1 * l1 / 2)
    assert T[(2,)][2] == 3 * (l2 * l2 / 2)
    F = restrict_tube_series(table, L0, mode="float", max_degree=3)
    with mpmath.workdps(50):
        sv = mpmath.exp(-mpmath.pi * mpmath.sqrt(3)) * -1
        assert abs(F[(1,)][1] - 2 * sv) < mpmath.mpf(10) ** -45
