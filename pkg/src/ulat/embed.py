"""The complex structure on the trace lattice and restriction to the unitary ball.

On the Z-basis b_1, zeta b_1, b_2, zeta b_2, ... multiplication by sqrt(D)
is an integer matrix K with K^2 = D.  The complex structure is
J = K / sqrt(|D|); it is rational only when |D| is a square (d = -1), so K is
the matrix kept exactly and J is reported through it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .field import FieldElement, QuadraticField, element_from_json
from .hermlat import from_trace_coords, to_trace_coords
from .qseries import FourierSeries
from .taylorforms import TaylorForm, multi_indices

FLOAT_BITS = 200


def _mult_block(K):
    """Matrix of x -> sqrt(D) x on the pair (1, zeta)."""
    D, N = K.D, K.N
    # zeta * (a + b zeta) = -N b + (a + D b) zeta, and sqrt(D) = 2 zeta - D
    return [[-D, -2 * N], [2, D]]


def block_diag(blocks):
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


@dataclass
class ComplexStructure:
    """K = multiplication by sqrt(D); J = K / sqrt(|D|)."""

    field: QuadraticField
    K: list
    gram: list

    @property
    def scale_squared(self):
        """|D|, so that J = K / sqrt(scale_squared)."""
        return abs(self.field.D)

    @property
    def dim(self):
        return len(self.K)

    @property
    def J(self):
        """J as an exact rational matrix when |D| is a perfect square, else None."""
        s = math.isqrt(self.scale_squared)
        if s * s != self.scale_squared:
            return None
        return [[Fraction(x, s) for x in row] for row in self.K]

    def J_float(self, dps=50):
        import mpmath
        with mpmath.workdps(dps):
            r = mpmath.sqrt(self.scale_squared)
            return mpmath.matrix([[mpmath.mpf(x) / r for x in row] for row in self.K])

    def zeta_matrix(self):
        """(D/2) I + (sqrt|D|/2) J, i.e. multiplication by zeta."""
        D = self.field.D
        n = self.dim
        return [[Fraction(D * (i == j) + self.K[i][j], 2) for j in range(n)] for i in range(n)]

    def check(self):
        """Exact invariants: K^2 = D, K an similitude of ratio |D|, det K = |D|^(n+1).
        These are J^2 = -1, J an isometry, det J = 1."""
        D = self.field.D
        n = self.dim
        K2 = linalg.mat_mul(self.K, self.K)
        out = {
            "J_squared_is_minus_identity": K2 == [[D * (i == j) for j in range(n)]
                                                  for i in range(n)],
            "J_is_isometry": linalg.mat_mul(linalg.mat_mul(linalg.transpose(self.K), self.gram),
                                            self.K)
            == [[abs(D) * x for x in row] for row in self.gram],
            "det_J_is_one": linalg.det(self.K) == abs(D) ** (n // 2),
        }
        Z = self.zeta_matrix()
        zb = _zeta_block(self.field)
        out["zeta_compatible"] = Z == block_diag([zb] * (n // 2))
        return out

    def reconstruct(self, x, y):
        """<x, y> from the bilinear form: (x, y)/2 + (Kx, y)/(2 sqrt(D)), x, y in trace
        coordinates.  Equals (x, y)/2 + (Jx, y)/(2i)."""
        K = self.field
        Gy = linalg.mat_vec(self.gram, y)
        xy = sum(Fraction(a) * b for a, b in zip(x, Gy))
        Kx = linalg.mat_vec(self.K, x)
        kxy = sum(Fraction(a) * b for a, b in zip(Kx, Gy))
        return K(xy / 2) + K(kxy / 2) / K.sqrt_D


def _zeta_block(K):
    return [[Fraction(0), Fraction(-K.N)], [Fraction(1), Fraction(K.D)]]


def complex_structure(L):
    blocks = [_mult_block(L.K)] * L.rank
    return ComplexStructure(L.K, block_diag(blocks), L.trace_form().gram)


@dataclass
class HolSplit:
    """Projectors onto the +i and -i eigenspaces of J, with entries in F
    (i sqrt|D| is sqrt(D) in F)."""

    projector_hol: list
    projector_anti: list

    def check(self, cs):
        F = cs.field
        n = cs.dim
        Id = [[F(int(i == j)) for j in range(n)] for i in range(n)]
        P, Q = self.projector_hol, self.projector_anti
        Kf = [[F(x) for x in row] for row in cs.K]
        zero = [[F(0)] * n for _ in range(n)]
        s = F.sqrt_D
        return {
            "idempotent": _fmul(P, P) == P and _fmul(Q, Q) == Q,
            "complementary": _fadd(P, Q) == Id and _fmul(P, Q) == zero,
            "J_acts_as_i_on_hol": _fmul(Kf, P) == [[s * x for x in row] for row in P],
            "J_acts_as_minus_i_on_anti": _fmul(Kf, Q) == [[-s * x for x in row] for row in Q],
        }


def _fmul(a, b):
    K = a[0][0].K
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), K.zero())
             for j in range(len(b[0]))] for i in range(len(a))]


def _fadd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def hol_split(cs):
    F = cs.field
    n = cs.dim
    inv = 1 / F.sqrt_D
    half = Fraction(1, 2)
    P = [[(F(int(i == j)) + inv * cs.K[i][j]) * half for j in range(n)] for i in range(n)]
    Q = [[(F(int(i == j)) - inv * cs.K[i][j]) * half for j in range(n)] for i in range(n)]
    return HolSplit(P, Q)


def split_coordinates(cs, z):
    """(z_hol, z_anti) = ((z - iJz)/2, (z + iJz)/2) for a real/rational vector z."""
    hs = hol_split(cs)
    F = cs.field
    zf = [F(Fraction(x)) for x in z]
    hol = [sum((p * x for p, x in zip(row, zf)), F.zero()) for row in hs.projector_hol]
    anti = [sum((p * x for p, x in zip(row, zf)), F.zero()) for row in hs.projector_anti]
    return hol, anti


# unitary elements of O(V) -------------------------------------------------


def is_isometry(G, gamma):
    return linalg.mat_mul(linalg.mat_mul(linalg.transpose(gamma), G), gamma) == \
        [[Fraction(x) for x in row] for row in G]


def is_unitary_isometry(L, gamma):
    """True iff the trace-form isometry gamma commutes with J (J gamma J = -gamma)."""
    G = L.trace_form().gram
    gamma = [[Fraction(x) for x in row] for row in gamma]
    if not is_isometry(G, gamma):
        raise ValueError("gamma is not an isometry of the trace form")
    Km = complex_structure(L).K
    return linalg.mat_mul(gamma, Km) == linalg.mat_mul(Km, gamma)


def to_trace_matrix(L, M):
    """An F-linear map (columns = images of b_j) written on b_1, zeta b_1, ..."""
    F = L.K
    n = L.rank
    cols = []
    for j in range(n):
        col = [M[i][j] for i in range(n)]
        cols.append(to_trace_coords(col))
        cols.append(to_trace_coords([F.zeta * x for x in col]))
    return [[Fraction(cols[j][i]) for j in range(2 * n)] for i in range(2 * n)]


# restriction of tube-domain Fourier series --------------------------------


def s_value(F, dps=60):
    """s = e(-conj(zeta)) = (-1)^D exp(-pi sqrt|D|)."""
    import mpmath
    with mpmath.workdps(dps):
        return (-1) ** (F.D % 2) * mpmath.exp(-mpmath.pi * mpmath.sqrt(abs(F.D)))


def s_tail_bound(F, m, coeff_bound=1):
    """Bound for sum_{j > m} coeff_bound * |s|^j."""
    a = math.exp(-math.pi * math.sqrt(abs(F.D)))
    return coeff_bound * a ** (m + 1) / (1 - a)


@dataclass
class TubeEntry:
    n: Fraction
    lam: list
    m: Fraction
    value: object


def _read_lambda(L0, lam):
    F = L0.K
    if lam and all(isinstance(x, (int, str)) and _is_rational_text(x) for x in lam) \
            and len(lam) == 2 * L0.rank:
        return from_trace_coords(F, [Fraction(str(x)) for x in lam])
    if len(lam) != L0.rank:
        raise ValueError(f"lambda {lam!r} does not fit a rank {L0.rank} lattice")
    return [x if isinstance(x, FieldElement) else element_from_json(F, x) for x in lam]


def _is_rational_text(x):
    try:
        Fraction(str(x))
        return True
    except ValueError:
        return False


def read_tube_table(L0, doc):
    """Entries of the tube-series document format (see the README)."""
    rows = doc["coeffs"] if isinstance(doc, dict) else doc
    out = []
    for e in rows:
        lam = _read_lambda(L0, e.get("lambda", []) or [0] * (2 * L0.rank))
        v = e["value"]
        if isinstance(v, float):
            value = v
        elif isinstance(v, str) and any(c.isalpha() for c in v):
            value = element_from_json(L0.K, v)
        else:
            value = Fraction(str(v))
        out.append(TubeEntry(Fraction(str(e["n"])), lam, Fraction(str(e["m"])), value))
    return out


def restrict_tube_series(table, L0, mode="float", max_degree=6, weight=0, ring=None):
    """Taylor expansion in z_hol of  sum a(n, lam, m) q^n exp(sum_j l_j z_j) s^m,
    with l_j = <lam, c_j> for the basis c_j of the definite lattice L0 and
    s = e(-conj(zeta)).

    The z variables are normalized so that the character of lam is exactly
    exp(sum_j l_j z_j).  The coefficient of z^alpha is then
    sum a s^m prod_j l_j^alpha_j / alpha_j! q^n.

    mode "float": s and the coefficients are complex numbers at 200 bits.
    mode "formal": s stays a formal constant (integer m only); lambda pairings
    are exact field elements.
    """
    import mpmath

    if not table:
        raise ValueError("empty Fourier table")
    F = L0.K
    m_vars = L0.rank
    entries = table if isinstance(table[0], TubeEntry) else read_tube_table(L0, table)
    N = 1
    for e in entries:
        N = N * e.n.denominator // math.gcd(N, e.n.denominator)
    prec = int(max(e.n for e in entries) * N) + 1
    alphas = multi_indices(m_vars, max_degree)

    if mode == "formal":
        from .formal import FormalRing
        if ring is None:
            ring = FormalRing(["s"], field=F)
        s = ring.gen("s")
        zero = ring.const(0)
        coeffs = {a: {} for a in alphas}
        for e in entries:
            if e.m.denominator != 1 or e.m < 0:
                raise ValueError("formal mode needs non-negative integer powers of s")
            if isinstance(e.value, float):
                raise ValueError("formal mode needs exact coefficients")
            ell = [L0.hermitian(e.lam, _unit(F, m_vars, j)) for j in range(m_vars)]
            base = s ** int(e.m) * e.value
            k = int(e.n * N)
            for a in alphas:
                c = base
                for j, aj in enumerate(a):
                    if aj:
                        c = c * (ell[j] ** aj * Fraction(1, math.factorial(aj)))
                if c:
                    coeffs[a][k] = coeffs[a].get(k, zero) + c
        out = {a: FourierSeries(c, prec, N, weight + sum(a), zero) for a, c in coeffs.items()}
        return TaylorForm(weight, m_vars, out, max_degree)

    if mode != "float":
        raise ValueError(f"unknown mode {mode!r}")
    with mpmath.workprec(FLOAT_BITS):
        s = s_value(F, dps=int(FLOAT_BITS * 0.31) + 5)
        zero = mpmath.mpc(0)
        coeffs = {a: {} for a in alphas}
        for e in entries:
            ell = [L0.hermitian(e.lam, _unit(F, m_vars, j)).to_complex() for j in range(m_vars)]
            val = e.value.to_complex() if isinstance(e.value, FieldElement) else \
                mpmath.mpf(e.value.numerator) / e.value.denominator \
                if isinstance(e.value, Fraction) else mpmath.mpf(e.value)
            base = val * s ** (mpmath.mpf(e.m.numerator) / e.m.denominator)
            k = int(e.n * N)
            for a in alphas:
                c = base
                for j, aj in enumerate(a):
                    if aj:
                        c = c * ell[j] ** aj / math.factorial(aj)
                coeffs[a][k] = coeffs[a].get(k, zero) + c
        out = {a: FourierSeries(c, prec, N, weight + sum(a), zero) for a, c in coeffs.items()}
    return TaylorForm(weight, m_vars, out, max_degree)


def _unit(F, n, j):
    return [F(int(i == j)) for i in range(n)]


def e4_at_i(dps=50):
    """E_4(i) = 3 Gamma(1/4)^8 / (64 pi^6)."""
    import mpmath
    with mpmath.workdps(dps):
        return 3 * mpmath.gamma(mpmath.mpf(1) / 4) ** 8 / (64 * mpmath.pi ** 6)
