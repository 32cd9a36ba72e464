"""Unitary modular forms as truncated Taylor series in z with q-series coefficients.

A TaylorForm of weight k in m variables stores, for every multi-index alpha
with |alpha| <= max_degree, a FourierSeries f_alpha of weight k + |alpha|:

    F(tau, z) = sum_alpha f_alpha(tau) z^alpha.

The modular Jacobian of n+1 forms in n-1 variables is the determinant with
rows (k_i F_i), (S F_i), (dF_i/dz_j).
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .formal import FormalRing
from .qseries import DEFAULT_ORDER, FourierSeries, parse_series, serre_derivative

DEFAULT_MAX_DEGREE = 12
INFINITY = math.inf


def multi_indices(m, max_degree):
    """All alpha in N^m with |alpha| <= max_degree, ordered by total degree."""
    out = []
    for deg in range(max_degree + 1):
        for c in itertools.combinations_with_replacement(range(m), deg):
            a = [0] * m
            for j in c:
                a[j] += 1
            out.append(tuple(a))
    # combinations_with_replacement gives each alpha exactly once per degree
    return sorted(set(out), key=lambda a: (sum(a), tuple(-x for x in a)))


def _weight(k):
    return Fraction(k)


class TaylorForm:
    """Weight-graded Taylor series; missing multi-indices are exact zeros."""

    __slots__ = ("weight", "num_z", "max_degree", "coeffs", "parity")

    def __init__(self, weight, num_z, coeffs=None, max_degree=DEFAULT_MAX_DEGREE,
                 parity=None):
        self.weight = _weight(weight)
        self.num_z = int(num_z)
        self.max_degree = int(max_degree)
        self.parity = parity
        self.coeffs = {}
        for alpha, f in (coeffs or {}).items():
            alpha = tuple(int(x) for x in alpha)
            if len(alpha) != self.num_z:
                raise ValueError(f"multi-index {alpha} has wrong length for {num_z} variables")
            if min(alpha, default=0) < 0:
                raise ValueError(f"negative multi-index {alpha}")
            if sum(alpha) > self.max_degree:
                continue
            if parity is not None:
                mod, res = parity
                if sum(alpha) % mod != res and not f.is_zero():
                    raise ValueError(f"degree {sum(alpha)} violates |alpha| = {res} mod {mod}")
            if f.is_zero():
                continue
            self.coeffs[alpha] = f

    # constructors ------------------------------------------------------

    @classmethod
    def from_series(cls, f, num_z=0, weight=None, max_degree=DEFAULT_MAX_DEGREE):
        """The z-free form with coefficient f at alpha = 0."""
        w = weight if weight is not None else f.weight
        if w is None:
            raise ValueError("weight is required")
        return cls(w, num_z, {(0,) * num_z: f}, max_degree)

    @classmethod
    def constant(cls, c, num_z=0, order=DEFAULT_ORDER, max_degree=DEFAULT_MAX_DEGREE):
        return cls(0, num_z, {(0,) * num_z: FourierSeries.constant(c, order, weight=0)},
                   max_degree)

    # accessors ---------------------------------------------------------

    def __getitem__(self, alpha):
        alpha = tuple(alpha)
        if sum(alpha) > self.max_degree:
            raise IndexError(f"|alpha| = {sum(alpha)} beyond the degree bound {self.max_degree}")
        return self.coeffs.get(alpha)

    def coefficient_weight(self, alpha):
        return self.weight + sum(alpha)

    @property
    def q_order(self):
        """Smallest q-truncation order among the stored coefficients."""
        if not self.coeffs:
            return math.inf
        return min(f.order for f in self.coeffs.values())

    def is_zero(self):
        return not self.coeffs

    def degrees(self):
        return sorted({sum(a) for a in self.coeffs})

    def __repr__(self):
        return (f"TaylorForm(weight={self.weight}, num_z={self.num_z}, "
                f"max_degree={self.max_degree}, terms={len(self.coeffs)})")

    # arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, TaylorForm):
            raise TypeError("expected a TaylorForm")
        if other.num_z != self.num_z:
            raise ValueError("forms have different numbers of variables")

    def __add__(self, other):
        self._check(other)
        if self.weight != other.weight:
            raise ValueError(f"cannot add weights {self.weight} and {other.weight}")
        D = min(self.max_degree, other.max_degree)
        out = {}
        for a in set(self.coeffs) | set(other.coeffs):
            if sum(a) > D:
                continue
            f, g = self.coeffs.get(a), other.coeffs.get(a)
            out[a] = f + g if f is not None and g is not None else (f if g is None else g)
        return TaylorForm(self.weight, self.num_z, out, D)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TaylorForm(self.weight, self.num_z,
                          {a: f.scale(c) for a, f in self.coeffs.items()}, self.max_degree)

    def valuation(self):
        """Lowest total degree present (INFINITY for the zero form)."""
        return min((sum(a) for a in self.coeffs), default=INFINITY)

    def __mul__(self, other):
        if not isinstance(other, TaylorForm):
            return self.scale(other)
        self._check(other)
        vf, vg = self.valuation(), other.valuation()
        if vf == INFINITY or vg == INFINITY:
            return TaylorForm(self.weight + other.weight, self.num_z, {},
                              min(self.max_degree, other.max_degree))
        # a product coefficient of degree d is known once every factor pair is known
        D = int(min(self.max_degree + vg, other.max_degree + vf))
        out = {}
        for a, f in self.coeffs.items():
            for b, g in other.coeffs.items():
                c = tuple(x + y for x, y in zip(a, b))
                if sum(c) > D:
                    continue
                p = f * g
                out[c] = out[c] + p if c in out else p
        return TaylorForm(self.weight + other.weight, self.num_z, out, D)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not supported; use divide")
        out = TaylorForm.constant(1, self.num_z, self.q_order if self.coeffs else DEFAULT_ORDER,
                                  self.max_degree)
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, max_degree=None, order=None):
        D = self.max_degree if max_degree is None else min(max_degree, self.max_degree)
        out = {}
        for a, f in self.coeffs.items():
            if sum(a) <= D:
                out[a] = f.truncate(order) if order is not None else f
        return TaylorForm(self.weight, self.num_z, out, D)

    # derivatives -------------------------------------------------------

    def dz(self, j):
        """Partial derivative in z_j: weight +1, degree bound -1."""
        if not 0 <= j < self.num_z:
            raise IndexError(f"no variable z_{j}")
        out = {}
        for a, f in self.coeffs.items():
            if a[j] == 0:
                continue
            b = list(a)
            b[j] -= 1
            out[tuple(b)] = f.scale(a[j])
        return TaylorForm(self.weight + 1, self.num_z, out, max(self.max_degree - 1, 0))

    def serre_tau(self):
        """Coefficientwise Serre derivative S_{k+|alpha|} on f_alpha; weight +2.

        This keeps every coefficient modular.  It differs from the derivative
        D - k E_2/12 applied to F as a whole by multiples of z_j dF/dz_j, which
        the Jacobian determinant does not see.
        """
        out = {}
        for a, f in self.coeffs.items():
            out[a] = serre_derivative(f, self.weight + sum(a))
        return TaylorForm(self.weight + 2, self.num_z, out, self.max_degree)

    def theta_tau(self):
        """q d/dq applied coefficientwise (not modular; for tests and comparisons)."""
        from .qseries import theta
        return TaylorForm(self.weight + 2, self.num_z,
                          {a: theta(f) for a, f in self.coeffs.items()}, self.max_degree)

    # z-substitutions ---------------------------------------------------

    def restrict(self, keep):
        """Set every z_j with j not in ``keep`` to zero."""
        keep = list(keep)
        out = {}
        for a, f in self.coeffs.items():
            if any(a[j] for j in range(self.num_z) if j not in keep):
                continue
            out[tuple(a[j] for j in keep)] = f
        return TaylorForm(self.weight, len(keep), out, self.max_degree)

    def leading_term(self):
        """(alpha, f_alpha) for the lowest-degree, then lexicographically largest, alpha."""
        if not self.coeffs:
            return None
        a = min(self.coeffs, key=lambda a: (sum(a), tuple(-x for x in a)))
        return a, self.coeffs[a]

    def divide(self, other):
        """Exact quotient self / other when other's lowest degree part is a single
        monomial whose q-series is invertible (its leading coefficient is a unit)."""
        self._check(other)
        lead = other.leading_term()
        if lead is None:
            raise ZeroDivisionError("division by the zero form")
        beta, g0 = lead
        v = sum(beta)
        low = [a for a in other.coeffs if sum(a) == v]
        if len(low) != 1:
            raise ValueError("leading part of the divisor is not a single monomial")
        g0inv = g0.inverse()
        D = min(self.max_degree, other.max_degree) - v
        rest = {b: g for b, g in other.coeffs.items() if b != beta}
        out = {}
        for a in multi_indices(self.num_z, D):
            target = tuple(x + y for x, y in zip(a, beta))
            acc = self.coeffs.get(target)
            for b, g in rest.items():
                c = tuple(t - y for t, y in zip(target, b))
                if min(c, default=0) < 0 or c not in out:
                    continue
                term = out[c] * g
                acc = -term if acc is None else acc - term
            if acc is not None and not acc.is_zero():
                out[a] = acc * g0inv
        q = TaylorForm(self.weight - other.weight, self.num_z, out, D)
        if not (q * other).equals(self):
            raise ValueError("not divisible within the degree bound")
        return q

    def __truediv__(self, other):
        if isinstance(other, TaylorForm):
            return self.divide(other)
        return self.scale(1 / Fraction(other) if isinstance(other, int) else 1 / other)

    def nth_root(self, m):
        """m-th root when the alpha = 0 coefficient has an exact m-th root."""
        zero = (0,) * self.num_z
        f0 = self.coeffs.get(zero)
        if f0 is None:
            raise ValueError("nth_root needs a nonzero z-constant term")
        g0 = f0.nth_root(m)            # raises when the leading coefficient is not an m-th power
        N = g0.N
        g0inv = g0.inverse()
        # G^m = F with G = g0 (1 + H): solve (1 + H)^m = F / g0^m degree by degree
        u = {a: f.with_N(N) * g0inv ** m for a, f in self.coeffs.items() if a != zero}
        one = TaylorForm.constant(1, self.num_z, g0.order, self.max_degree)
        U = TaylorForm(0, self.num_z, u, self.max_degree)
        # (1 + U)^{1/m} via the binomial series; U has valuation >= 1
        out = one
        term = one
        coef = Fraction(1)
        for j in range(1, self.max_degree + 1):
            coef = coef * (Fraction(1, m) - (j - 1)) / j
            term = (term * U).truncate(self.max_degree)
            if term.is_zero():
                break
            out = out + term.scale(coef)
        res = {a: f * g0 for a, f in out.coeffs.items()}
        return TaylorForm(self.weight / m, self.num_z, res, self.max_degree)

    def equals(self, other, order=None):
        self._check(other)
        D = min(self.max_degree, other.max_degree)
        for a in set(self.coeffs) | set(other.coeffs):
            if sum(a) > D:
                continue
            f, g = self.coeffs.get(a), other.coeffs.get(a)
            if f is None:
                f, g = g, f
            if g is None:
                if not f.truncate(order).is_zero() if order is not None else not f.is_zero():
                    return False
            elif not f.equal_to(g, order):
                return False
        return True

    def proportional_to(self, other, order=None):
        """Scalar c with self = c * other on every common known coefficient, else None."""
        self._check(other)
        D = min(self.max_degree, other.max_degree)
        keys = sorted({a for a in set(self.coeffs) | set(other.coeffs) if sum(a) <= D},
                      key=lambda a: (sum(a), a))
        c = None
        for a in keys:
            f, g = self.coeffs.get(a), other.coeffs.get(a)
            if g is None or g.is_zero():
                if f is not None and not (f.truncate(order) if order else f).is_zero():
                    return None
                continue
            if f is None:
                f = g.scale(0)
            if c is None:
                c = f.proportional_to(g, order)
                if c is None:
                    return None
            elif not f.equal_to(g.scale(c), order):
                return None
        return c

    def to_json(self):
        return {"weight": str(self.weight), "num_z": self.num_z, "max_degree": self.max_degree,
                "terms": [{"alpha": list(a), "series": self.coeffs[a].to_lines()}
                          for a in sorted(self.coeffs, key=lambda a: (sum(a), a))]}


def vanishing_order_z0(f):
    """Least |alpha| with a nonzero coefficient; INFINITY if none is known."""
    return f.valuation()


# Jacobian ----------------------------------------------------------------


@dataclass
class JacobianResult:
    value: TaylorForm
    input_weights: list

    @property
    def weight(self):
        n = len(self.input_weights) - 1
        return n + 1 + sum(self.input_weights)

    def __post_init__(self):
        if not self.value.is_zero() and self.value.weight != self.weight:
            raise AssertionError("Jacobian weight does not match n + 1 + sum(k_j)")


def jacobian_rows(forms):
    rows = [[f.scale(f.weight) for f in forms], [f.serre_tau() for f in forms]]
    m = forms[0].num_z
    for j in range(m):
        rows.append([f.dz(j) for f in forms])
    return rows


def determinant(rows):
    """Cofactor expansion along the first row, memoized on column subsets."""
    size = len(rows)
    memo = {}

    def det(r, cols):
        if r == size:
            return None        # empty product marker
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = None
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            rest = det(r + 1, cols[:pos] + cols[pos + 1:])
            if rest is not None and rest.is_zero():
                continue
            term = entry if rest is None else entry * rest
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            # zero of the correct weight: derive it from the first entries
            w = sum(rows[i][c].weight for i, c in zip(range(r, size), cols))
            D = min(rows[i][c].max_degree for i in range(r, size) for c in cols)
            total = TaylorForm(w, rows[0][0].num_z, {}, D)
        memo[key] = total
        return total

    return det(0, tuple(range(size)))


def jacobian(forms, n=None):
    """det of (k_i F_i; S F_i; dF_i/dz_j) for n+1 forms in n-1 variables."""
    forms = list(forms)
    if n is None:
        n = len(forms) - 1
    if len(forms) != n + 1:
        raise ValueError(f"need {n + 1} forms, got {len(forms)}")
    if n < 1:
        raise ValueError("need at least two forms")
    for f in forms:
        if f.num_z != n - 1:
            raise ValueError(f"forms must have {n - 1} variables, got {f.num_z}")
    value = determinant(jacobian_rows(forms))
    weights = [f.weight for f in forms]
    expected = n + 1 + sum(weights)
    if value.weight != expected:
        value = TaylorForm(expected, value.num_z, value.coeffs, value.max_degree)
    return JacobianResult(value, weights)


def independence_witness(forms, n=None):
    """True when the Jacobian has a nonzero known coefficient (proves independence);
    False is inconclusive."""
    return not jacobian(forms, n).value.is_zero()


# fixtures ----------------------------------------------------------------


def _ring_from_doc(doc):
    names = doc.get("constants", [])
    d = doc.get("d")
    if not names:
        return None
    ring = FormalRing(names, field=d)
    for rel in doc.get("relations", []):
        ring.add_relation(rel["name"], rel["power"], rel["value"])
    return ring


def taylor_from_doc(doc, ring=None, order=DEFAULT_ORDER):
    """Build a TaylorForm from the fixture document format.

    Each term's "series" is an expression over registered forms and formal
    constants, or a list of [exponent, coefficient] pairs.
    """
    from .field import QuadraticField
    field = QuadraticField(doc["d"]) if doc.get("d") is not None else None
    coeffs = {}
    for term in doc["terms"]:
        s = term["series"]
        if isinstance(s, str):
            f = parse_series(s, order, ring=ring, field=field)
        else:
            f = FourierSeries({int(e): Fraction(c) for e, c in s}, order + 1)
        alpha = tuple(term["alpha"])
        f.weight = Fraction(doc["weight"]) + sum(alpha)
        if alpha in coeffs:
            coeffs[alpha] = coeffs[alpha] + f
        else:
            coeffs[alpha] = f
    parity = tuple(doc["degree_constraint"]) if "degree_constraint" in doc else None
    return TaylorForm(Fraction(doc["weight"]), doc["num_z"], coeffs,
                      doc.get("max_degree", DEFAULT_MAX_DEGREE), parity)


@dataclass
class TaylorFixture:
    name: str
    ring: FormalRing | None
    forms: dict
    doc: dict


def load_taylor_fixture(path, order=DEFAULT_ORDER):
    """Load a file holding either one form or {"forms": {...}} sharing constants."""
    doc = json.loads(Path(path).read_text())
    ring = _ring_from_doc(doc)
    if "forms" in doc:
        forms = {}
        for key, sub in doc["forms"].items():
            sub = dict(sub)
            sub.setdefault("d", doc.get("d"))
            forms[key] = taylor_from_doc(sub, ring, order)
    else:
        forms = {doc.get("name", Path(path).stem): taylor_from_doc(doc, ring, order)}
    return TaylorFixture(doc.get("name", Path(path).stem), ring, forms, doc)


def fixture_dir():
    return Path(__file__).parent / "fixtures" / "taylor"


def taylor_fixtures():
    return sorted(fixture_dir().glob("*.json"))
