"""Imaginary quadratic fields F = Q(sqrt d) and their elements.

An element is stored as a + b*zeta with zeta = (D + sqrt D)/2, where D is
the field discriminant, so O_F = Z + Z*zeta.  Coordinates are kept as a
pair of integer numerators over a common positive denominator, which is a
good deal faster than two Fractions and keeps everything exact.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from math import gcd

CLASS_NUMBER_ONE = (-1, -2, -3, -7, -11, -19, -43, -67, -163)


def _squarefree_part(n):
    """Write n = f^2 * s with s squarefree (sign kept on s)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    f, s, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return f, sign * s * n


class QuadraticField:
    """The field Q(sqrt d) for a negative squarefree integer d."""

    _cache: dict = {}

    def __new__(cls, d):
        d = int(d)
        if d in cls._cache:
            return cls._cache[d]
        if d >= 0:
            raise ValueError(f"d must be negative, got {d}")
        f, _ = _squarefree_part(d)
        if f != 1:
            raise ValueError(f"d must be squarefree, got {d}")
        self = super().__new__(cls)
        self.d = d
        self.D = d if d % 4 == 1 else 4 * d
        # zeta^2 = D*zeta - N
        self.N = (self.D * self.D - self.D) // 4
        cls._cache[d] = self
        return self

    def __reduce__(self):
        return (QuadraticField, (self.d,))

    def __repr__(self):
        return f"QuadraticField({self.d})"

    @property
    def class_number_one(self):
        return self.d in CLASS_NUMBER_ONE

    def __call__(self, a=0, b=0):
        return FieldElement(self, a, b)

    def zero(self):
        return FieldElement(self, 0, 0)

    def one(self):
        return FieldElement(self, 1, 0)

    @property
    def zeta(self):
        return FieldElement(self, 0, 1)

    @property
    def sqrt_D(self):
        return FieldElement(self, -self.D, 2)

    @property
    def sqrt_d(self):
        if self.D == self.d:
            return FieldElement(self, -self.d, 2)
        return FieldElement(self, -self.D // 2, 1)

    def from_sqrt(self, p, q):
        """The element p + q*sqrt(d)."""
        p, q = Fraction(p), Fraction(q)
        if self.D == self.d:
            return FieldElement(self, p - q * self.d, 2 * q)
        return FieldElement(self, p - q * self.D // 2, q)

    def generator_unit(self):
        if self.d == -1:
            return self.from_sqrt(0, 1)
        if self.d == -3:
            return self.from_sqrt(Fraction(1, 2), Fraction(1, 2))
        return FieldElement(self, -1, 0)

    def units(self):
        """All units, listed as successive powers of a generator."""
        g = self.generator_unit()
        out = [self.one()]
        x = g
        while x != 1:
            out.append(x)
            x = x * g
        return out

    @property
    def unit_count(self):
        return {-1: 4, -3: 6}.get(self.d, 2)

    def inverse_different(self):
        """A generator of the inverse different: 1/sqrt(D)."""
        return 1 / self.sqrt_D

    def in_inverse_different(self, x):
        return (x * self.sqrt_D).is_integral()

    def parse(self, text):
        return parse_element(self, text)


class FieldElement:
    __slots__ = ("K", "_a", "_b", "_n")

    def __init__(self, K, a=0, b=0, _raw=None):
        self.K = K
        if _raw is not None:
            self._a, self._b, self._n = _raw
            return
        a, b = Fraction(a), Fraction(b)
        n = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._a = a.numerator * (n // a.denominator)
        self._b = b.numerator * (n // b.denominator)
        self._n = n

    @classmethod
    def _make(cls, K, a, b, n):
        g = gcd(gcd(a, b), n)
        if g != 1:
            a //= g
            b //= g
            n //= g
        return cls(K, _raw=(a, b, n))

    @property
    def a(self):
        return Fraction(self._a, self._n)

    @property
    def b(self):
        return Fraction(self._b, self._n)

    def coords(self):
        return self.a, self.b

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.K is not self.K:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.K, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self._n * o._n
        return FieldElement._make(self.K, self._a * o._n + o._a * self._n,
                                  self._b * o._n + o._b * self._n, n)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.K, _raw=(-self._a, -self._b, self._n))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement._make(self.K, self._a * other, self._b * other, self._n)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.K
        a, b, c, e = self._a, self._b, o._a, o._b
        be = b * e
        return FieldElement._make(K, a * c - be * K.N, a * e + b * c + be * K.D,
                                  self._n * o._n)

    __rmul__ = __mul__

    def conjugate(self):
        # zeta-bar = D - zeta
        return FieldElement(self.K, _raw=(self._a + self._b * self.K.D, -self._b, self._n))

    def norm(self):
        K = self.K
        a, b = self._a, self._b
        return Fraction(a * a + a * b * K.D + b * b * K.N, self._n * self._n)

    def trace(self):
        return Fraction(2 * self._a + self._b * self.K.D, self._n)

    def inverse(self):
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("division by zero in " + repr(self.K))
        return self.conjugate() * (1 / nm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return FieldElement(self.K, other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElement(self.K, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (self.K is other.K and self._a == other._a and self._b == other._b
                    and self._n == other._n)
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._n) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._n))
        return hash((self.K.d, self._a, self._b, self._n))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def is_integral(self):
        return self._n == 1

    def is_rational(self):
        return self._b == 0

    def sqrt_coords(self):
        """(p, q) with self = p + q*sqrt(d)."""
        K = self.K
        a, b = self.a, self.b
        if K.D == K.d:
            return a + b * K.d / 2, b / 2
        return a + b * K.D // 2, b

    def to_complex(self):
        import mpmath
        p, q = self.sqrt_coords()
        return mpmath.mpc(mpmath.mpf(p.numerator) / p.denominator,
                          mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(-self.K.d))

    def __complex__(self):
        p, q = self.sqrt_coords()
        return complex(float(p), float(q) * (-self.K.d) ** 0.5)

    def __str__(self):
        p, q = self.sqrt_coords()
        r = "i" if self.K.d == -1 else f"sqrt({self.K.d})"
        if q == 0:
            return str(p)
        qs = "" if q == 1 else "-" if q == -1 else f"{q}*"
        if p == 0:
            return f"{qs}{r}"
        sign = "+" if q > 0 else "-"
        qa = abs(q)
        qs = "" if qa == 1 else f"{qa}*"
        return f"{p} {sign} {qs}{r}"

    def __repr__(self):
        return f"FieldElement(d={self.K.d}, a={self.a}, b={self.b})"

    def to_json(self):
        return {"a": str(self.a), "b": str(self.b)}


def conjugate(x):
    return x.conjugate()


def norm(x):
    return x.norm()


def trace(x):
    return x.trace()


def units(K):
    return K.units()


def divides(x, y):
    """True if x divides y in O_F (x nonzero)."""
    if not x:
        raise ZeroDivisionError("divisor is zero")
    return (y / x).is_integral()


def unit_order(u):
    """Multiplicative order of a root of unity."""
    if u.norm() != 1 or not u.is_integral():
        raise ValueError(f"{u!r} is not a unit")
    k, x = 1, u
    while x != 1:
        x = x * u
        k += 1
    return k


def element_from_json(K, obj):
    if isinstance(obj, dict):
        if set(obj) != {"a", "b"}:
            raise ValueError(f"field element object needs keys a and b: {obj!r}")
        return FieldElement(K, Fraction(str(obj["a"])), Fraction(str(obj["b"])))
    if isinstance(obj, (int,)):
        return FieldElement(K, obj)
    if isinstance(obj, str):
        return parse_element(K, obj)
    raise ValueError(f"cannot read field element from {obj!r}")


# Expression parsing.  Values live in a multi-quadratic scratch space
# {squarefree s: coefficient of sqrt(s)}, so that inputs such as i/sqrt(3)
# can be written even though neither i nor sqrt(3) lies in Q(sqrt -3).

def _rad_mul(x, y):
    out = {}
    for s, c in x.items():
        for t, e in y.items():
            f, u = _squarefree_part(s * t)
            coef = c * e * f
            if s < 0 and t < 0:
                coef = -coef
            out[u] = out.get(u, 0) + coef
    return {k: v for k, v in out.items() if v}


def _rad_add(x, y, sign=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _rad_inv(x):
    if len(x) != 1:
        raise ValueError("can only divide by a single radical term")
    (s, c), = x.items()
    # 1/(c sqrt s) = sqrt(s) / (c s)
    return {s: Fraction(1) / (c * s)} if s != 1 else {1: Fraction(1) / c}


def _rad_sqrt(n):
    if isinstance(n, Fraction):
        if n.denominator != 1:
            raise ValueError("sqrt argument must be an integer")
        n = n.numerator
    f, s = _squarefree_part(n)
    return {s: Fraction(f)}


_NAMES = {
    "i": {-1: Fraction(1)},
    # w = exp(pi i/3), rho = exp(2 pi i/3)
    "w": {1: Fraction(1, 2), -3: Fraction(1, 2)},
    "omega": {1: Fraction(1, 2), -3: Fraction(1, 2)},
    "rho": {1: Fraction(-1, 2), -3: Fraction(1, 2)},
}


def _rad_eval(node, K):
    if isinstance(node, ast.Expression):
        return _rad_eval(node.body, K)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return {1: Fraction(node.value)} if node.value else {}
    if isinstance(node, ast.Name):
        if node.id == "zeta":
            D = K.D
            return _rad_add({1: Fraction(D, 2)}, _rad_sqrt(D))
        if node.id in _NAMES:
            return dict(_NAMES[node.id])
        raise ValueError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        v = _rad_eval(node.operand, K)
        if isinstance(node.op, ast.USub):
            return {k: -c for k, c in v.items()}
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        x, y = _rad_eval(node.left, K), _rad_eval(node.right, K)
        if isinstance(node.op, ast.Add):
            return _rad_add(x, y)
        if isinstance(node.op, ast.Sub):
            return _rad_add(x, y, -1)
        if isinstance(node.op, ast.Mult):
            return _rad_mul(x, y)
        if isinstance(node.op, ast.Div):
            return _rad_mul(x, _rad_inv(y))
        if isinstance(node.op, ast.Pow):
            if set(y) - {1} or y.get(1, Fraction(0)).denominator != 1:
                raise ValueError("exponent must be an integer")
            k = int(y.get(1, 0))
            base = x if k >= 0 else _rad_inv(x)
            out = {1: Fraction(1)}
            for _ in range(abs(k)):
                out = _rad_mul(out, base)
            return out
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
            and node.func.id == "sqrt" and len(node.args) == 1:
        v = _rad_eval(node.args[0], K)
        if set(v) - {1}:
            raise ValueError("sqrt argument must be rational")
        return _rad_sqrt(v.get(1, Fraction(0)))
    raise ValueError(f"unsupported syntax in field expression: {ast.dump(node)}")


def parse_element(K, text):
    """Parse strings such as '(1+i)/2', 'i/sqrt(3)' or '-1/sqrt(-3)'."""
    try:
        tree = ast.parse(str(text).replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse field element {text!r}") from exc
    v = _rad_eval(tree, K)
    extra = set(v) - {1, K.d}
    if extra:
        raise ValueError(f"{text!r} does not lie in Q(sqrt({K.d}))")
    return K.from_sqrt(v.get(1, 0), v.get(K.d, 0))
