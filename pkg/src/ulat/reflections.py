"""Unitary reflections sigma_{r,alpha} and their membership in U(L).

sigma_{r,alpha}(x) = x - (1 - alpha) <x, r> / <r, r> * r.

Two independent routes decide whether a reflection preserves L (and the
discriminant kernel): ``membership`` builds the matrix and looks at it,
``classify_by_lemma`` only uses dual-lattice membership and ideal
conditions attached to r.  ``scan_reflections`` runs both on every
primitive root in a box and records whether they agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .field import unit_order
from .hermlat import (HermitianLattice, content_index, is_primitive, to_trace_coords,
                      vectors_up_to_norm)

SIGMA_R = "sigma_r"
SIGMA_SCALED = "sigma_scaled_r"
NONE = "none"


@dataclass(frozen=True)
class MembershipVerdict:
    in_unitary: bool
    in_kernel: bool
    orthogonal_partner: str
    clause: str | None = field(default=None, compare=False)

    def to_json(self):
        out = {"in_unitary": self.in_unitary, "in_kernel": self.in_kernel,
               "orthogonal_partner": self.orthogonal_partner}
        if self.clause is not None:
            out["clause"] = self.clause
        return out


def _check_alpha(K, alpha):
    if not alpha.is_integral() or alpha.norm() != 1:
        raise ValueError(f"{alpha} is not a unit of O_F")
    if alpha == 1:
        raise ValueError("alpha = 1 gives the identity, not a reflection")
    return unit_order(alpha)


def _image_row(L, r):
    # w_j = <b_j, r>, so that <x, r> = sum_j x_j w_j
    return [sum((L.gram[j][k] * r[k].conjugate() for k in range(L.rank)), L.K.zero())
            for j in range(L.rank)]


def reflection_matrix(L, r, alpha):
    """Matrix of sigma_{r,alpha}; column j holds the image of the j-th basis vector."""
    K = L.K
    _check_alpha(K, alpha)
    h = L.hermitian(r, r)
    if not h:
        raise ValueError("r is isotropic")
    c = (1 - alpha) / h
    w = _image_row(L, r)
    n = L.rank
    return [[K(int(i == j)) - c * r[i] * w[j] for j in range(n)] for i in range(n)]


def orthogonal_reflection_matrix(L, v):
    """sigma_v(t) = t - 2 (t, v)/(v, v) v on trace coordinates of L."""
    G = L.trace_form().gram
    t = to_trace_coords(v)
    Gv = linalg.mat_vec(G, t)
    vv = sum(a * b for a, b in zip(t, Gv))
    if vv == 0:
        raise ValueError("v is isotropic")
    m = len(t)
    return [[Fraction(int(i == j)) - Fraction(2 * t[i] * Gv[j], vv) for j in range(m)]
            for i in range(m)]


def designated_scale(K, alpha):
    """The multiplier c for which sigma_{c r} is the orthogonal reflection paired
    with sigma_{r, alpha}."""
    k = unit_order(alpha)
    if K.d == -1:
        return K.one() if k == 2 else 1 + K.parse("i")
    if K.d == -3:
        return K.one() + K.parse("w") if k == 6 else K.one()
    if K.D % 4 == 0:
        return K.sqrt_d
    return K.one()


def membership(L, r, alpha):
    """Decide membership by direct matrix arithmetic."""
    K = L.K
    M = reflection_matrix(L, r, alpha)
    n = L.rank
    in_u = all(x.is_integral() for row in M for x in row)
    in_k = False
    if in_u:
        B = L.dual_basis()
        # (M - I) B: images of sigma(x) - x for x running over a basis of L'
        diff = [[M[i][j] - int(i == j) for j in range(n)] for i in range(n)]
        in_k = all(sum((diff[i][k] * B[k][j] for k in range(n)), K.zero()).is_integral()
                   for i in range(n) for j in range(n))
    partner = NONE
    if in_u:
        c = designated_scale(K, alpha)
        S = orthogonal_reflection_matrix(L, [c * x for x in r])
        if linalg.is_integral(S):
            partner = SIGMA_R if c == 1 else SIGMA_SCALED
    return MembershipVerdict(in_u, in_k, partner)


def _pairing_ideal(L, v):
    """Positive generator g of the ideal (L, v) = {(l, v) : l in L} = gZ."""
    K = L.K
    g = Fraction(0)
    for i in range(L.rank):
        e = [K(int(i == j)) for j in range(L.rank)]
        for b in (e, [K.zeta * x for x in e]):
            t = L.hermitian(b, v).trace()
            num = g.numerator * t.denominator
            g = Fraction(math.gcd(num, t.numerator * g.denominator),
                         g.denominator * t.denominator)
    return abs(g)


def classify_by_lemma(L, r, alpha):
    """Decide membership from the lemma criteria alone (no reflection matrix).

    Requires L even and r primitive; F must have class number one.
    """
    K = L.K
    k = _check_alpha(K, alpha)
    if not L.is_even():
        raise ValueError("lattice is not even")
    if not is_primitive(L, r):
        raise ValueError("r is not primitive")
    h = L.hermitian(r, r)
    if not h:
        raise ValueError("r is isotropic")
    h = h.a

    def dual(c):
        return L.in_dual([c * x for x in r])

    d = K.d
    in_kernel = False
    if d == -1:
        in_kernel = h == 1 and k == 2
        if k == 2:
            ok = dual(K(1 / h))
            return MembershipVerdict(ok, in_kernel and ok, SIGMA_R if ok else NONE,
                                     "gaussian-reflection")
        ok = dual((1 + K.parse("i")) / (2 * h))
        return MembershipVerdict(ok, False, SIGMA_SCALED if ok else NONE,
                                 "gaussian-tetraflection")
    if d == -3:
        w = K.parse("w")
        in_kernel = h == 1 and k == 3
        if k == 3:
            ok = dual(K(1 / h))
            return MembershipVerdict(ok, in_kernel and ok, SIGMA_R if ok else NONE,
                                     "eisenstein-triflection")
        hexa = dual((1 + w) / (3 * h))
        if k == 6:
            return MembershipVerdict(hexa, False, SIGMA_SCALED if hexa else NONE,
                                     "eisenstein-hexaflection")
        rr = 2 * h
        t = rr / 4
        lonely = (rr % 4 == 0
                  and _pairing_ideal(L, [(1 + w) * x for x in r]) == 3 * t)
        if lonely:
            return MembershipVerdict(True, False, NONE, "eisenstein-biflection-no-partner")
        return MembershipVerdict(hexa, False, SIGMA_R if hexa else NONE,
                                 "eisenstein-biflection-via-hexaflection")
    # other class number one fields: only biflections
    if K.D % 4 == 0:
        ok = dual(1 / (K.sqrt_d * h))
        return MembershipVerdict(ok, False, SIGMA_SCALED if ok else NONE,
                                 "biflection-d-2-3-mod-4")
    rr = 2 * h
    t = rr / 4
    lonely = (rr % 4 == 0
              and _pairing_ideal(L, [K.sqrt_d * x for x in r]) == abs(d) * t)
    if lonely:
        return MembershipVerdict(True, False, NONE, "biflection-d-1-mod-4-no-partner")
    ok = dual(1 / (K.sqrt_d * h))
    return MembershipVerdict(ok, False, SIGMA_R if ok else NONE,
                             "biflection-d-1-mod-4-with-partner")


@dataclass
class ScanRecord:
    r: tuple
    norm: Fraction
    alpha: object
    order: int
    by_matrix: MembershipVerdict
    by_lemma: MembershipVerdict

    @property
    def agree(self):
        return self.by_matrix == self.by_lemma


@dataclass
class ScanResult:
    lattice: HermitianLattice
    records: list

    @property
    def all_agree(self):
        return all(rec.agree for rec in self.records)

    def disagreements(self):
        return [rec for rec in self.records if not rec.agree]

    def roots(self):
        seen = {}
        for rec in self.records:
            seen.setdefault(rec.r, []).append(rec)
        return seen

    def summary(self):
        """One entry per root: orders of alpha giving elements of U(L), kernel flag,
        and the lemma clauses that fired."""
        out = []
        for r, recs in self.roots().items():
            orders = sorted({rec.order for rec in recs if rec.by_matrix.in_unitary})
            clauses = sorted({rec.by_lemma.clause for rec in recs if rec.by_lemma.in_unitary})
            out.append({
                "r": [str(x) for x in r],
                "norm": str(recs[0].norm),
                "orders_present": orders,
                "in_kernel": any(rec.by_matrix.in_kernel for rec in recs),
                "lemma_clause": clauses,
                "agree": all(rec.agree for rec in recs),
            })
        return out

    def tetraflections(self):
        return [rec for rec in self.records if rec.order == 4 and rec.by_matrix.in_unitary]

    def lonely_biflections(self):
        return [rec for rec in self.records if rec.order == 2 and rec.by_matrix.in_unitary
                and rec.by_matrix.orthogonal_partner == NONE]

    def kernel_reflections(self):
        return [rec for rec in self.records if rec.by_matrix.in_kernel]


def canonical_root(L, r):
    """Lexicographically least unit multiple of r (by trace coordinates)."""
    return min((tuple(u * x for x in r) for u in L.K.units()),
               key=lambda v: tuple(to_trace_coords(v)))


def scan_reflections(L, norm_bound, box_radius):
    """Check every primitive r with 0 < <r, r> <= norm_bound in the coordinate box,
    up to units, against every alpha != 1, by both routes."""
    K = L.K
    roots = {}
    for r, h in vectors_up_to_norm(L, norm_bound, box_radius):
        if content_index(K, r) != 1:
            continue
        c = canonical_root(L, r)
        roots[c] = h
    alphas = [u for u in K.units() if u != 1]
    orders = [unit_order(a) for a in alphas]
    records = []
    for r in sorted(roots, key=lambda v: (roots[v], tuple(to_trace_coords(v)))):
        rl = list(r)
        for a, k in zip(alphas, orders):
            records.append(ScanRecord(r, roots[r], a, k, membership(L, rl, a),
                                      classify_by_lemma(L, rl, a)))
    return ScanResult(L, records)
