"""Hermitian lattices over O_F and their underlying even Z-lattices.

The Hermitian form is linear in the first slot and conjugate-linear in the
second, <x, y> = x^T H conj(y), where H[i][j] = <b_i, b_j>.  The trace form
(x, y) = Tr <x, y> is written on the Z-basis b_1, zeta b_1, b_2, zeta b_2, ...
and vectors are handled in those "trace coordinates" whenever integer work
is needed.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .field import FieldElement, QuadraticField, element_from_json
from .linalg import integer_kernel_index


# matrices over F ------------------------------------------------------------

def fmat_mul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), row[0].K.zero()) for col in bt]
            for row in a]


def fmat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v)), v[0].K.zero()) for row in a]


def fmat_conj(a):
    return [[x.conjugate() for x in row] for row in a]


def fmat_transpose(a):
    return [list(r) for r in zip(*a)]


def fmat_inverse(a):
    K = a[0][0].K
    n = len(a)
    m = [list(row) + [K(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def fmat_is_integral(a):
    return all(x.is_integral() for row in a for x in row)


def same_module(b1, b2):
    """True if the column spans of b1 and b2 over O_F coincide."""
    return (fmat_is_integral(fmat_mul(fmat_inverse(b1), b2))
            and fmat_is_integral(fmat_mul(fmat_inverse(b2), b1)))


# trace form -----------------------------------------------------------------

@dataclass
class TraceForm:
    gram: list
    signature: tuple
    det: int

    @property
    def rank(self):
        return len(self.gram)

    @property
    def is_integral(self):
        return linalg.is_integral(self.gram)

    @property
    def is_even(self):
        return self.is_integral and all(int(self.gram[i][i]) % 2 == 0
                                        for i in range(self.rank))

    def elementary_divisors(self):
        s, _, _ = linalg.smith_normal_form(self.gram)
        return [s[i][i] for i in range(len(s))]


def trace_gram(H):
    """Gram matrix of (x, y) = Tr<x, y> on b_1, zeta b_1, b_2, ..."""
    K = H[0][0].K
    zeta = K.zeta
    pw = [K.one(), zeta]
    cpw = [K.one(), zeta.conjugate()]
    n = len(H)
    g = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            for s in range(2):
                for t in range(2):
                    v = (pw[s] * cpw[t] * H[i][j]).trace()
                    g[2 * i + s][2 * j + t] = int(v) if v.denominator == 1 else v
    return g


def to_trace_coords(v):
    out = []
    for x in v:
        a, b = x.a, x.b
        out.append(int(a) if a.denominator == 1 else a)
        out.append(int(b) if b.denominator == 1 else b)
    return out


def from_trace_coords(K, t):
    return [K(t[2 * i], t[2 * i + 1]) for i in range(len(t) // 2)]


# lattices -------------------------------------------------------------------

class HermitianLattice:
    """A free O_F-lattice with Hermitian Gram matrix H.

    ``basis`` optionally records the basis vectors (as columns) inside an
    ambient space with Gram matrix ``ambient``; this is how duals and
    sublattices keep track of where they live.
    """

    def __init__(self, K, gram, name=None, basis=None, ambient=None):
        if isinstance(K, int):
            K = QuadraticField(K)
        self.K = K
        self.gram = [[x if isinstance(x, FieldElement) else K(x) for x in row] for row in gram]
        self.name = name
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.gram[j][i] != self.gram[i][j].conjugate():
                    raise ValueError(f"Gram matrix is not Hermitian at ({i}, {j})")
        self.basis = basis if basis is not None else [[K(int(i == j)) for j in range(n)]
                                                      for i in range(n)]
        self.ambient = ambient if ambient is not None else self.gram
        self._tf = None

    def __repr__(self):
        return f"HermitianLattice(d={self.K.d}, rank={self.rank}, name={self.name!r})"

    @property
    def rank(self):
        return len(self.gram)

    @property
    def n(self):
        """Hermitian rank minus one, so the signature is (n, 1) when hyperbolic."""
        return self.rank - 1

    def hermitian(self, x, y):
        """<x, y> for coordinate vectors x, y relative to this basis."""
        K = self.K
        tot = K.zero()
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gram[i]
            for j, yj in enumerate(y):
                if yj:
                    tot = tot + xi * row[j] * yj.conjugate()
        return tot

    def norm(self, x):
        return self.hermitian(x, x).a

    def trace_form(self):
        if self._tf is None:
            g = trace_gram(self.gram)
            self._tf = TraceForm(g, linalg.signature(g), linalg.det(g))
        return self._tf

    def is_integral(self):
        return self.trace_form().is_integral

    def is_even(self):
        return self.trace_form().is_even

    def hermitian_signature(self):
        p, m = self.trace_form().signature
        if p % 2 or m % 2:
            raise ArithmeticError("trace signature is not even")
        return p // 2, m // 2

    def dual_basis(self):
        """Columns spanning L' = {x : <x, L> in D^-1} in this lattice's coordinates."""
        K = self.K
        inv_t = fmat_inverse(fmat_transpose(self.gram))
        c = K.inverse_different()
        return [[c * x for x in row] for row in inv_t]

    def dual_lattice(self):
        B = self.dual_basis()
        g = fmat_mul(fmat_mul(fmat_transpose(B), self.gram), fmat_conj(B))
        return HermitianLattice(self.K, g, name=f"dual({self.name})" if self.name else None,
                                basis=B, ambient=self.gram)

    def contains(self, x):
        """Is the coordinate vector x (in this basis) in L?"""
        return all(xi.is_integral() for xi in x)

    def in_dual(self, x):
        K = self.K
        return all(K.in_inverse_different(self.hermitian(x, e)) for e in self._unit_vectors())

    def _unit_vectors(self):
        K = self.K
        return [[K(int(i == j)) for j in range(self.rank)] for i in range(self.rank)]

    def discriminant_group(self):
        return DiscriminantGroup.from_lattice(self)

    def sublattice(self, indices, name=None):
        g = [[self.gram[i][j] for j in indices] for i in indices]
        return HermitianLattice(self.K, g, name=name)

    def with_gram_coords(self, x):
        return [self.K(v) if not isinstance(v, FieldElement) else v for v in x]


def trace_form(L):
    return L.trace_form()


def dual_lattice(L):
    return L.dual_lattice()


def discriminant_group(L):
    return L.discriminant_group()


# discriminant form ----------------------------------------------------------

@dataclass
class DiscriminantGroup:
    """L'/L presented by Smith normal form of the trace Gram matrix.

    ``generators`` are rational vectors in trace coordinates of L; the i-th
    has order ``invariants[i]``.  ``q`` is the quadratic form x -> (x, x)/2
    mod 1, which equals the Hermitian norm <x, x> mod 1.
    """
    gram: list
    invariants: list
    generators: list
    q_values: list = field(default_factory=list)

    @classmethod
    def from_lattice(cls, L):
        tf = L.trace_form()
        if not tf.is_integral:
            raise ValueError("lattice is not integral")
        s, u, v = linalg.smith_normal_form(tf.gram)
        m = len(s)
        inv, gens = [], []
        for i in range(m):
            di = s[i][i]
            if di == 0:
                raise ValueError("degenerate lattice")
            if di > 1:
                inv.append(di)
                gens.append([Fraction(v[r][i], di) for r in range(m)])
        self = cls(tf.gram, inv, gens)
        self.q_values = [self.q(g) for g in gens]
        return self

    @property
    def order(self):
        return math.prod(self.invariants)

    def bilinear(self, x, y):
        v = sum(x[i] * self.gram[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))
        return Fraction(v) % 1

    def q(self, x):
        v = sum(x[i] * self.gram[i][j] * x[j] for i in range(len(x)) for j in range(len(x)))
        return (Fraction(v) / 2) % 1

    def element(self, coeffs):
        m = len(self.gram)
        return [sum(c * g[r] for c, g in zip(coeffs, self.generators)) for r in range(m)]

    def elements(self):
        for coeffs in itertools.product(*[range(d) for d in self.invariants]):
            yield coeffs, self.element(coeffs)

    def q_histogram(self, limit=20000):
        """Counts of each value of q over the whole group (an isometry invariant)."""
        if self.order > limit:
            return None
        return Counter(self.q(x) for _, x in self.elements())


# vectors --------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeVector:
    coords: tuple
    norm: Fraction

    def trace_coords(self):
        return tuple(to_trace_coords(self.coords))

    def to_json(self):
        return {"coords": [str(x) for x in self.coords], "norm": str(self.norm)}


MAX_BOX = 2_000_000


def box_points(dim, radius):
    """Integer points of [-radius, radius]^dim in lexicographic order, in chunks."""
    side = np.arange(-radius, radius + 1, dtype=np.int64)
    total = (2 * radius + 1) ** dim
    # split off leading coordinates until each chunk is manageable
    lead = 0
    while (2 * radius + 1) ** (dim - lead) > MAX_BOX and lead < dim:
        lead += 1
    tail = dim - lead
    if tail:
        grids = np.meshgrid(*([side] * tail), indexing="ij")
        block = np.stack([g.ravel() for g in grids], axis=1)
    else:
        block = np.zeros((1, 0), dtype=np.int64)
    if total == 0:
        return
    for head in itertools.product(range(-radius, radius + 1), repeat=lead):
        if lead:
            h = np.broadcast_to(np.array(head, dtype=np.int64), (len(block), lead))
            yield np.concatenate([h, block], axis=1)
        else:
            yield block


def _int_scaled(g):
    den = 1
    for row in g:
        for x in row:
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return np.array([[int(Fraction(x) * den) for x in row] for row in g], dtype=np.int64), den


def box_norms(L, radius):
    """Yield (points, twice_norm_numerators, denominator) over the radius box.

    Twice the Hermitian norm of a trace-coordinate vector t is t^T G t.
    """
    G, den = _int_scaled(L.trace_form().gram)
    for pts in box_points(2 * L.rank, radius):
        vals = np.einsum("ij,jk,ik->i", pts, G, pts)
        yield pts, vals, den


def _close_under_units(L, vecs):
    out = set()
    units = L.K.units()
    for v in vecs:
        for u in units:
            out.add(tuple(u * x for x in v))
    return out


def _sort_key(v):
    return tuple(to_trace_coords(v))


def enumerate_vectors(L, norm, box_radius, in_dual=False, coset=None):
    """Vectors of Hermitian norm ``norm`` in a coordinate box, closed under units.

    Coordinates are the zeta-basis coordinates of L (or of L' when
    ``in_dual``); the box is |coordinate| <= box_radius.  The result is the
    set of such vectors together with their unit multiples, sorted
    lexicographically by trace coordinates and expressed in L's basis.
    ``coset`` (a vector of L') restricts to the coset coset + L.
    """
    norm = Fraction(norm)
    if box_radius < 0:
        raise ValueError("box radius must be non-negative")
    M = L.dual_lattice() if in_dual or coset is not None else L
    K = L.K
    found = []
    for pts, vals, den in box_norms(M, box_radius):
        target = norm * 2 * den
        if target.denominator != 1:
            continue
        idx = np.nonzero(vals == int(target))[0]
        for i in idx:
            y = from_trace_coords(K, [int(t) for t in pts[i]])
            if M is not L:
                y = fmat_vec(M.basis, y)
            found.append(y)
    vecs = _close_under_units(L, found)
    if coset is not None:
        beta = [x if isinstance(x, FieldElement) else K.parse(x) for x in coset]
        vecs = {v for v in vecs if L.contains([a - b for a, b in zip(v, beta)])}
    return [LatticeVector(v, norm) for v in sorted(vecs, key=_sort_key)]


def vectors_up_to_norm(L, norm_bound, box_radius):
    """Nonzero vectors of L in the box with 0 < <x, x> <= norm_bound (no unit closure)."""
    K = L.K
    bound = Fraction(norm_bound)
    out = []
    for pts, vals, den in box_norms(L, box_radius):
        lim = bound * 2 * den
        idx = np.nonzero((vals > 0) & (vals <= math.floor(lim)))[0]
        for i in idx:
            t = [int(x) for x in pts[i]]
            out.append((from_trace_coords(K, t), Fraction(int(vals[i]), 2 * den)))
    return out


def fincke_pohst(G, bound):
    """All nonzero integer x with x^T G x <= bound, G positive definite rational.

    Returns a list of (x, value) pairs, sorted, with only one of x, -x kept.
    """
    n = len(G)
    a = [[Fraction(x) for x in row] for row in G]
    # q(x) = sum_i Q[i][i] (x_i + sum_{j>i} Q[i][j] x_j)^2
    Q = [row[:] for row in a]
    for i in range(n):
        if Q[i][i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for j in range(k, n):
                Q[k][j] -= Q[k][i] * Q[i][j]
    bound = Fraction(bound)
    out = []
    x = [0] * n

    def rec(i, remaining):
        c = -sum(Q[i][j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(float(remaining / Q[i][i])) + 1e-9
        lo, hi = math.ceil(float(c) - r), math.floor(float(c) + r)
        for xi in range(lo, hi + 1):
            t = Q[i][i] * (xi - c) ** 2
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    out.append(list(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, bound)
    res = []
    for v in out:
        first = next(t for t in v if t)
        if first > 0:
            val = sum(v[i] * a[i][j] * v[j] for i in range(n) for j in range(n))
            res.append((v, val))
    res.sort()
    return res


def short_vectors(L, norm_bound):
    """Exact norm-ball enumeration on a positive-definite Hermitian lattice.

    Returns LatticeVector objects with 0 < <x, x> <= norm_bound, all of them
    (both signs and all unit multiples).
    """
    G = L.trace_form().gram
    vecs = set()
    for t, val in fincke_pohst(G, 2 * Fraction(norm_bound)):
        v = from_trace_coords(L.K, t)
        vecs.add(tuple(v))
        vecs.add(tuple(-x for x in v))
    return [LatticeVector(v, L.norm(list(v))) for v in sorted(vecs, key=_sort_key)]


# primitivity ----------------------------------------------------------------

def content_index(K, v):
    """Index in O_F of the ideal generated by the entries of v (0 for v = 0)."""
    gens = []
    for x in v:
        if not x.is_integral():
            raise ValueError("vector does not lie in the lattice")
        a, b = int(x.a), int(x.b)
        gens.append((a, b))                       # x * 1
        gens.append((-b * K.N, a + b * K.D))      # x * zeta
    return integer_kernel_index(gens)


def is_primitive(L, v):
    """v in L is primitive iff no non-unit of O_F divides all its coordinates."""
    if not L.K.class_number_one:
        raise ValueError(f"class number of Q(sqrt({L.K.d})) is not one")
    return content_index(L.K, v) == 1


# named lattices -------------------------------------------------------------

def _cartan_a(n):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def _cartan_d(n):
    g = _cartan_a(n)
    g[n - 1][n - 2] = g[n - 2][n - 1] = 0
    g[n - 1][n - 3] = g[n - 3][n - 1] = -1
    return g


def _cartan_e(n):
    # chain 1-3-4-5-...-n with 2 attached to 4 (Bourbaki numbering)
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return g


_COMPONENT = re.compile(r"^(\d*)(U|A\d+|D\d+|E[678])(?:\((\d+)\))?$")


def named_lattice_gram(name):
    """Gram matrix of a lattice written like '2U+D4', 'U+U(2)+2A1' or '2U(3)+A2'."""
    parts = [p.strip() for p in re.split(r"[+⊕]", name.replace(" ", ""))]
    blocks = []
    for p in parts:
        m = _COMPONENT.match(p)
        if not m:
            raise ValueError(f"cannot parse lattice component {p!r}")
        mult = int(m.group(1) or 1)
        kind = m.group(2)
        scale = int(m.group(3) or 1)
        if kind == "U":
            b = [[0, 1], [1, 0]]
        elif kind[0] == "A":
            b = _cartan_a(int(kind[1:]))
        elif kind[0] == "D":
            b = _cartan_d(int(kind[1:]))
        else:
            b = _cartan_e(int(kind[1:]))
        b = [[scale * x for x in row] for row in b]
        blocks.extend([b] * mult)
    size = sum(len(b) for b in blocks)
    g = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        off += len(b)
    return g


def named_lattice_rank(name):
    return len(named_lattice_gram(name))


def lattice_invariants(gram):
    """Genus-level data used to compare trace forms with named lattices."""
    tf = TraceForm(gram, linalg.signature(gram), linalg.det(gram))
    s, _, v = linalg.smith_normal_form(gram)
    inv, gens = [], []
    for i in range(len(s)):
        if s[i][i] > 1:
            inv.append(s[i][i])
            gens.append([Fraction(v[r][i], s[i][i]) for r in range(len(s))])
    hist = DiscriminantGroup(gram, inv, gens).q_histogram()
    return {
        "rank": tf.rank,
        "signature": tf.signature,
        "even": tf.is_even,
        "abs_det": abs(tf.det),
        "elementary_divisors": inv,
        "q_histogram": None if hist is None else sorted(hist.items()),
    }


def matches_named(L, name):
    """Compare the trace form of L with the named lattice by invariants.

    Returns (ok, mismatches) where mismatches lists the differing keys.
    """
    a = lattice_invariants(L.trace_form().gram)
    b = lattice_invariants(named_lattice_gram(name))
    bad = [k for k in a if a[k] != b[k]]
    return not bad, bad


def isometric_definite(g1, g2):
    """Brute-force isometry test for small positive-definite integral lattices."""
    n = len(g1)
    if n != len(g2) or linalg.det(g1) != linalg.det(g2):
        return False
    if linalg.signature(g1) != (n, 0) or linalg.signature(g2) != (n, 0):
        raise ValueError("isometry search needs positive-definite input")
    top = max(g2[i][i] for i in range(n))
    cands = []
    for v, val in fincke_pohst(g1, top):
        cands.append((v, val))
        cands.append(([-t for t in v], val))
    by_norm = {}
    for v, val in cands:
        by_norm.setdefault(val, []).append(v)

    def ip(x, y):
        return sum(x[i] * g1[i][j] * y[j] for i in range(n) for j in range(n))

    chosen = []

    def rec(k):
        if k == n:
            return True
        for v in by_norm.get(g2[k][k], []):
            if all(ip(v, chosen[j]) == g2[k][j] for j in range(k)):
                chosen.append(v)
                if rec(k + 1):
                    return True
                chosen.pop()
        return False

    return rec(0)


def lattice_from_json(obj):
    """Build a HermitianLattice from the fixture format {"d", "gram", "name", ...}."""
    if not isinstance(obj, dict) or "d" not in obj or "gram" not in obj:
        raise ValueError("lattice fixture needs keys 'd' and 'gram'")
    K = QuadraticField(int(obj["d"]))
    gram = [[element_from_json(K, x) for x in row] for row in obj["gram"]]
    return HermitianLattice(K, gram, name=obj.get("name"))
