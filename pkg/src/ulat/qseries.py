"""Truncated Fourier expansions in q^(1/N) and a registry of named forms.

A FourierSeries stores coefficients c_k of q^(k/N) for k < prec, where prec
is kept in units of 1/N.  Coefficients may be Fractions, quadratic field
elements, formal-constant polynomials or mpmath complex numbers; the series
only needs +, -, * and a zero test from them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

DEFAULT_ORDER = 50


def _lcm(a, b):
    return a * b // gcd(a, b)


class FourierSeries:
    """sum_k coeffs[k] q^(k/N), known for all k < prec."""

    __slots__ = ("N", "coeffs", "prec", "weight", "zero")

    def __init__(self, coeffs, prec, N=1, weight=None, zero=None):
        self.N = int(N)
        self.zero = Fraction(0) if zero is None else zero
        self.coeffs = {int(k): c for k, c in coeffs.items() if c and k < prec}
        self.prec = int(prec)
        self.weight = None if weight is None else Fraction(weight)

    @classmethod
    def from_list(cls, values, start=0, N=1, weight=None, prec=None):
        vals = [Fraction(v) if isinstance(v, (int, str)) else v for v in values]
        zero = vals[0] * 0 if vals else Fraction(0)
        co = {start + i * 1: v for i, v in enumerate(vals)}
        return cls(co, prec if prec is not None else start + len(vals), N, weight, zero)

    @classmethod
    def constant(cls, c, order=DEFAULT_ORDER, N=1, weight=None):
        c = Fraction(c) if isinstance(c, int) else c
        return cls({0: c}, (order + 1) * N, N, weight, c * 0)

    # exponents ------------------------------------------------------------
    @property
    def order(self):
        """Largest exponent e such that all coefficients up to q^e are known
        (exponents are compared as rationals)."""
        return Fraction(self.prec - 1, self.N)

    def valuation(self):
        """Smallest exponent with nonzero coefficient, or None if all known vanish."""
        return Fraction(min(self.coeffs), self.N) if self.coeffs else None

    def __getitem__(self, e):
        e = Fraction(e)
        k = e * self.N
        if k.denominator != 1:
            return self.zero
        k = int(k)
        if k >= self.prec:
            raise IndexError(f"coefficient of q^{e} is beyond the truncation order")
        return self.coeffs.get(k, self.zero)

    def items(self):
        for k in sorted(self.coeffs):
            yield Fraction(k, self.N), self.coeffs[k]

    def with_N(self, N):
        if N % self.N:
            raise ValueError("new denominator must be a multiple")
        m = N // self.N
        return FourierSeries({k * m: c for k, c in self.coeffs.items()}, self.prec * m,
                             N, self.weight, self.zero)

    def _align(self, other):
        if self.N == other.N:
            return self, other
        N = _lcm(self.N, other.N)
        return self.with_N(N), other.with_N(N)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FourierSeries):
            other = FourierSeries({0: other}, 10 ** 9, self.N, None, self.zero)
        a, b = self._align(other)
        co = dict(a.coeffs)
        for k, c in b.coeffs.items():
            co[k] = co[k] + c if k in co else c
        w = a.weight if a.weight == b.weight else None
        return FourierSeries(co, min(a.prec, b.prec), a.N, w, a.zero)

    __radd__ = __add__

    def __neg__(self):
        return FourierSeries({k: -c for k, c in self.coeffs.items()}, self.prec, self.N,
                             self.weight, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return FourierSeries({k: v * c for k, v in self.coeffs.items()}, self.prec, self.N,
                             self.weight, self.zero)

    def __mul__(self, other):
        if not isinstance(other, FourierSeries):
            return self.scale(other)
        a, b = self._align(other)
        if not a.coeffs or not b.coeffs:
            va = min(a.coeffs) if a.coeffs else a.prec
            vb = min(b.coeffs) if b.coeffs else b.prec
            return FourierSeries({}, min(va + b.prec, vb + a.prec), a.N, None, a.zero)
        va, vb = min(a.coeffs), min(b.coeffs)
        prec = min(va + b.prec, vb + a.prec)
        co = {}
        bi = sorted(b.coeffs.items())
        for k1, c1 in a.coeffs.items():
            lim = prec - k1
            for k2, c2 in bi:
                if k2 >= lim:
                    break
                k = k1 + k2
                p = c1 * c2
                co[k] = co[k] + p if k in co else p
        w = a.weight + b.weight if a.weight is not None and b.weight is not None else None
        return FourierSeries(co, prec, a.N, w, a.zero)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = FourierSeries({0: self.zero + 1}, 10 ** 9, self.N, 0, self.zero)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, order):
        """Keep coefficients of exponents <= order."""
        p = int(Fraction(order) * self.N) + 1
        return FourierSeries(self.coeffs, min(p, self.prec), self.N, self.weight, self.zero)

    def inverse(self):
        """1/f for f with an invertible leading coefficient (Laurent series allowed)."""
        if not self.coeffs:
            raise ZeroDivisionError("series has no known nonzero coefficient")
        v = min(self.coeffs)
        lead = self.coeffs[v]
        inv_lead = 1 / lead
        n = self.prec - v
        g = [self.coeffs.get(v + i, self.zero) for i in range(n)]
        h = [inv_lead]
        for i in range(1, n):
            s = self.zero
            for j in range(1, i + 1):
                if g[j]:
                    s = s + g[j] * h[i - j]
            h.append(-s * inv_lead)
        w = -self.weight if self.weight is not None else None
        return FourierSeries({i - v: c for i, c in enumerate(h)}, n - v, self.N, w, self.zero)

    def __truediv__(self, other):
        if isinstance(other, FourierSeries):
            return self * other.inverse()
        return self.scale(1 / Fraction(other) if isinstance(other, int) else 1 / other)

    def nth_root(self, m):
        """f^(1/m) when the leading coefficient is an exact m-th power of a rational."""
        if not self.coeffs:
            raise ValueError("cannot take a root of a series with no known nonzero coefficient")
        v = min(self.coeffs)
        lead = self.coeffs[v]
        r = _exact_rational_root(lead, m)
        if r is None:
            raise ValueError(f"leading coefficient {lead} is not an exact {m}-th power")
        N = self.N * m
        # work with g = f / (lead q^v) = 1 + ..., then g^(1/m) by the J.C.P. Miller recurrence
        n = self.prec - v
        g = [self.coeffs.get(v + i, self.zero) / lead for i in range(n)]
        a = Fraction(1, m)
        h = [self.zero + 1]
        for i in range(1, n):
            s = self.zero
            for j in range(1, i + 1):
                if g[j]:
                    s = s + (a * j - (i - j)) * g[j] * h[i - j]
            h.append(s / i)
        w = self.weight / m if self.weight is not None else None
        # q^(v/N) * q^(i/N) becomes q^((v + i*m)/(N*m)) after the root
        co = {v + i * m: h[i] * r for i in range(n) if h[i]}
        return FourierSeries(co, v + n * m, N, w, self.zero)

    # comparisons ----------------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def equal_to(self, other, order=None):
        """Equality of all coefficients known to both (optionally only up to order)."""
        a, b = self._align(other)
        p = min(a.prec, b.prec)
        if order is not None:
            p = min(p, int(Fraction(order) * a.N) + 1)
        keys = {k for k in set(a.coeffs) | set(b.coeffs) if k < p}
        return all(a.coeffs.get(k, a.zero) == b.coeffs.get(k, b.zero) for k in keys)

    def __eq__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return self.equal_to(other)

    __hash__ = None

    def proportional_to(self, other, order=None):
        """Return c with self == c*other (scalar from the first jointly nonzero
        coefficient), or None if no such scalar exists."""
        a, b = self._align(other)
        p = min(a.prec, b.prec)
        if order is not None:
            p = min(p, int(Fraction(order) * a.N) + 1)
        keys = sorted(k for k in set(a.coeffs) | set(b.coeffs) if k < p)
        c = None
        for k in keys:
            x, y = a.coeffs.get(k, a.zero), b.coeffs.get(k, b.zero)
            if c is None:
                if not y:
                    if x:
                        return None
                    continue
                c = x / y
            elif x != c * y:
                return None
        return c

    def __repr__(self):
        terms = []
        for e, c in list(self.items())[:6]:
            terms.append(f"({c})*q^{e}")
        return f"FourierSeries({' + '.join(terms) or '0'} + O(q^{Fraction(self.prec, self.N)}))"

    def to_lines(self, order=None):
        """Exponent/coefficient pairs on the natural exponent grid up to order."""
        last = self.prec - 1 if order is None else min(self.prec - 1,
                                                       int(Fraction(order) * self.N))
        if self.coeffs:
            res = {k % self.N for k in self.coeffs}
            start = min(self.coeffs)
            step = self.N if len(res) == 1 else 1
        else:
            start, step = 0, self.N
        out = []
        k = start
        while k <= last:
            out.append((Fraction(k, self.N), self.coeffs.get(k, self.zero)))
            k += step
        return out


def _exact_rational_root(x, m):
    x = Fraction(x) if isinstance(x, int) else x
    if not isinstance(x, Fraction):
        return 1 if x == 1 else None
    if x < 0 and m % 2 == 0:
        return None
    sign = -1 if x < 0 else 1
    num, den = abs(x.numerator), x.denominator
    rn, rd = round(num ** (1 / m)), round(den ** (1 / m))
    for a in (rn - 1, rn, rn + 1):
        for b in (rd - 1, rd, rd + 1):
            if a >= 0 and b > 0 and a ** m == num and b ** m == den:
                return sign * Fraction(a, b)
    return None


# arithmetic functions ---------------------------------------------------------

def bernoulli(k):
    """B_k with B_1 = -1/2 (Akiyama-Tanigawa)."""
    a = [Fraction(0)] * (k + 1)
    for m in range(k + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    b = a[0]
    return -b if k == 1 else b


def divisor_sums(power, n_max):
    s = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dp = d ** power
        for m in range(d, n_max + 1, d):
            s[m] += dp
    return s


def kronecker_m3(n):
    """The character (-3/n)."""
    r = n % 3
    return 0 if r == 0 else 1 if r == 1 else -1


# named forms ----------------------------------------------------------------

def eisenstein(k, order=DEFAULT_ORDER):
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein series needs an even weight k >= 2")
    c = -Fraction(2 * k) / bernoulli(k)
    s = divisor_sums(k - 1, order)
    co = {0: Fraction(1)}
    for n in range(1, order + 1):
        co[n] = c * s[n]
    return FourierSeries(co, order + 1, 1, k)


def euler_product(order):
    """prod_{n>=1} (1 - q^n) as an integer list of length order+1."""
    p = [0] * (order + 1)
    p[0] = 1
    for n in range(1, order + 1):
        for m in range(order, n - 1, -1):
            p[m] -= p[m - n]
    return p


def eta(order=DEFAULT_ORDER):
    """Dedekind eta q^(1/24) prod (1 - q^n), with exponents over N = 24."""
    p = euler_product(order)
    co = {1 + 24 * n: Fraction(c) for n, c in enumerate(p) if c}
    return FourierSeries(co, 24 * order + 2, 24, Fraction(1, 2))


def eta_power(r, order=DEFAULT_ORDER, scale=1):
    """eta(scale*tau)^r as a series; integer exponents whenever 24 | r*scale."""
    p = euler_product(order)
    base = FourierSeries({n: Fraction(c) for n, c in enumerate(p) if c}, order + 1, 1, 0)
    base = rescale_variable(base, scale).truncate(order)
    out = base ** r
    shift = Fraction(r * scale, 24)
    N = shift.denominator
    out = out.with_N(N) if N > 1 else out
    co = {k + int(shift * N): c for k, c in out.coeffs.items()}
    return FourierSeries(co, out.prec + int(shift * N), N, Fraction(r, 2))


def delta(order=DEFAULT_ORDER):
    return eta_power(24, order)


def rescale_variable(f, m):
    """q -> q^m."""
    m = int(m)
    if m < 1:
        raise ValueError("rescaling factor must be a positive integer")
    return FourierSeries({k * m: c for k, c in f.coeffs.items()}, f.prec * m, f.N,
                         f.weight, f.zero)


def theta(f):
    """q d/dq."""
    return FourierSeries({k: c * Fraction(k, f.N) for k, c in f.coeffs.items()}, f.prec, f.N,
                         None if f.weight is None else f.weight + 2, f.zero)


def serre_derivative(f, k=None, order=None):
    """S_k f = theta f - (k/12) E_2 f; raises weight by 2."""
    if k is None:
        k = f.weight
    if k is None:
        raise ValueError("serre_derivative needs a weight (none declared on the series)")
    k = Fraction(k)
    o = int(f.order) + 1 if order is None else order
    e2 = eisenstein(2, max(o, 1))
    out = theta(f) - (e2 * f).scale(k / 12)
    out.weight = k + 2
    return out


def e2_level2(order=DEFAULT_ORDER):
    """2 E_2(2 tau) - E_2(tau), weight 2 on Gamma_0(2)."""
    e2 = eisenstein(2, order)
    out = (rescale_variable(e2, 2).truncate(order) * 2 - e2)
    out.weight = Fraction(2)
    return out


def e4_level2(order=DEFAULT_ORDER):
    """E_4(2 tau), weight 4 on Gamma_0(2)."""
    out = rescale_variable(eisenstein(4, order), 2).truncate(order)
    out.weight = Fraction(4)
    return out


def s6_level3(order=DEFAULT_ORDER):
    """eta(tau)^6 eta(3 tau)^6, weight 6 on Gamma_0(3)."""
    out = (eta_power(6, order) * eta_power(6, order, scale=3)).truncate(order)
    out.weight = Fraction(6)
    return out


def e3_level3(order=DEFAULT_ORDER):
    """2(1 - 9 sum_n sum_{d|n} d^2 (-3/d) q^n) - (1 + 6 sum_n sum_{d|n} (-3/d) q^n)^3."""
    a = {0: Fraction(1)}
    b = {0: Fraction(1)}
    for n in range(1, order + 1):
        s2 = s0 = 0
        for d in range(1, n + 1):
            if n % d == 0:
                chi = kronecker_m3(d)
                s2 += d * d * chi
                s0 += chi
        a[n] = Fraction(-9 * s2)
        b[n] = Fraction(6 * s0)
    A = FourierSeries(a, order + 1)
    B = FourierSeries(b, order + 1)
    out = A.scale(2) - B ** 3
    out.weight = Fraction(3)
    return out


@dataclass
class NamedForm:
    name: str
    weight: Fraction
    group: str
    builder: object
    description: str = ""

    def series(self, order=DEFAULT_ORDER):
        f = self.builder(order)
        f.weight = self.weight
        return f


class NamedFormRegistry:
    def __init__(self):
        self._forms = {}

    def register(self, name, weight, group, builder, description=""):
        if name in self._forms:
            raise ValueError(f"form {name!r} is already registered")
        self._forms[name] = NamedForm(name, Fraction(weight), group, builder, description)

    def __contains__(self, name):
        return name in self._forms

    def names(self):
        return sorted(self._forms)

    def get(self, name):
        try:
            return self._forms[name]
        except KeyError:
            raise KeyError(f"unknown form {name!r}; known: {', '.join(self.names())}") from None

    def series(self, name, order=DEFAULT_ORDER):
        return self.get(name).series(order)


REGISTRY = NamedFormRegistry()
for _k in (2, 4, 6, 8, 10, 12, 14):
    REGISTRY.register(f"E{_k}", _k, "SL2(Z)" if _k > 2 else "quasimodular",
                      lambda o, k=_k: eisenstein(k, o), f"Eisenstein series of weight {_k}")
REGISTRY.register("Delta", 12, "SL2(Z)", delta, "eta^24")
REGISTRY.register("eta", Fraction(1, 2), "SL2(Z) with multiplier", eta, "Dedekind eta")
REGISTRY.register("e2", 2, "Gamma0(2)", e2_level2, "2E2(2tau) - E2(tau)")
REGISTRY.register("e4", 4, "Gamma0(2)", e4_level2, "E4(2tau)")
REGISTRY.register("e3", 3, "Gamma0(3), character (-3/.)", e3_level3,
                  "weight 3 Eisenstein series on Gamma0(3)")
REGISTRY.register("s6", 6, "Gamma0(3)", s6_level3, "eta(tau)^6 eta(3tau)^6")


# expressions ----------------------------------------------------------------

def parse_series(text, order=DEFAULT_ORDER, ring=None, field=None, registry=REGISTRY):
    """Evaluate an expression such as '3*sqrt(-3)*eta_rho^36 * eta^36*E6'.

    Names resolve to registered forms (as series) or to constants of the
    formal ring ``ring``; numeric parts are read in ``field`` when given.
    The result is always a FourierSeries.
    """
    import ast
    from .field import parse_element

    tree = ast.parse(str(text).replace("^", "**"), mode="eval")
    names = set(ring.names) if ring is not None else set()

    def has_name(node):
        return any(isinstance(n, ast.Name) and (n.id in names or n.id in registry)
                   for n in ast.walk(node))

    def ev(node):
        if not has_name(node):
            src = ast.unparse(node)
            if ring is not None:
                return ring.parse(src)
            if field is not None:
                return parse_element(field, src)
            return _rational(node)
        if isinstance(node, ast.Name):
            if node.id in names:
                return ring.gen(node.id)
            return registry.series(node.id, order)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _rational(node.right)
                if k.denominator != 1:
                    raise ValueError("only integer powers are supported")
                base = ev(node.left)
                if isinstance(base, FourierSeries):
                    return (base ** int(k)).truncate(order)
                return base ** int(k)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                out = a * b
                return out.truncate(order) if isinstance(out, FourierSeries) else out
            if isinstance(node.op, ast.Div):
                if isinstance(b, FourierSeries):
                    raise ValueError("division by a series is not supported in expressions")
                return a * (1 / b if not isinstance(b, int) else Fraction(1, b))
        raise ValueError(f"unsupported series expression {ast.unparse(node)!r}")

    out = ev(tree.body)
    if not isinstance(out, FourierSeries):
        out = FourierSeries.constant(out, order)
    return out


def _rational(node):
    import ast
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_rational(node.operand)
    if isinstance(node, ast.BinOp):
        a, b = _rational(node.left), _rational(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
        if isinstance(node.op, ast.Pow) and b.denominator == 1:
            return a ** int(b)
    raise ValueError(f"not a rational number: {ast.unparse(node)!r}")
