"""Polynomials in named formal constants, reduced by declared relations.

Used for coefficients such as E_6(rho) or eta(rho) that appear in Taylor
expansions at CM points.  A relation is a rewriting rule  c^k -> p  where p
has lower degree in c; for instance eta_rho^24 -> -E6_rho^2/1728.
Arithmetic between elements of different rings is refused, so no constant
can sneak in unannounced.
"""
from __future__ import annotations

import ast
from fractions import Fraction

from .field import FieldElement, QuadraticField, parse_element


class FormalRing:
    def __init__(self, names, field=None, relations=()):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate constant names")
        self.field = QuadraticField(field) if isinstance(field, int) else field
        self.rules = []
        for rel in relations:
            self.add_relation(*rel)

    def __repr__(self):
        return f"FormalRing({list(self.names)}, field={self.field!r})"

    def base(self, x):
        if self.field is not None and not isinstance(x, FieldElement):
            return self.field(Fraction(x))
        return x if isinstance(x, FieldElement) else Fraction(x)

    def const(self, x):
        x = self.base(x)
        if not x:
            return FormalElement(self, {})
        return FormalElement(self, {(0,) * len(self.names): x})

    def gen(self, name):
        i = self.names.index(name)
        e = [0] * len(self.names)
        e[i] = 1
        one = self.base(1)
        return FormalElement(self, {tuple(e): one})

    def add_relation(self, name, power, replacement):
        """Declare name**power == replacement (an element or expression string)."""
        if isinstance(replacement, str):
            replacement = self.parse(replacement)
        i = self.names.index(name)
        for e in replacement.terms:
            if e[i] >= power:
                raise ValueError("replacement must have lower degree in the rewritten constant")
        self.rules.append((i, int(power), replacement))

    def parse(self, text):
        tree = ast.parse(str(text).replace("^", "**"), mode="eval")
        return self._eval(tree.body)

    def _has_const(self, node):
        return any(isinstance(n, ast.Name) and n.id in self.names for n in ast.walk(node))

    def _eval(self, node):
        if not self._has_const(node):
            src = ast.unparse(node)
            if self.field is not None:
                return self.const(parse_element(self.field, src))
            return self.const(_rational_eval(node))
        if isinstance(node, ast.Name):
            return self.gen(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -self._eval(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _rational_eval(node.right)
                if k.denominator != 1:
                    raise ValueError("only integer powers of constants")
                return self._eval(node.left) ** int(k)
            a, b = self._eval(node.left), self._eval(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ValueError(f"unsupported expression {ast.unparse(node)!r}")


def _rational_eval(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_rational_eval(node.operand)
    if isinstance(node, ast.BinOp):
        a, b = _rational_eval(node.left), _rational_eval(node.right)
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
    raise ValueError(f"not a rational expression: {ast.unparse(node)!r}")


class FormalElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, FormalElement):
            if other.ring is not self.ring:
                raise ValueError("formal constants from different rings")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t[e] + c if e in t else c
        return FormalElement(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return FormalElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (isinstance(other, FieldElement)):
            if not other:
                return FormalElement(self.ring, {})
            return FormalElement(self.ring, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t[e] + c1 * c2 if e in t else c1 * c2
        return FormalElement(self.ring, t)._reduce()

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self * (1 / other if not isinstance(other, int) else Fraction(1, other))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self):
        """Inverse of a single monomial c * prod(x_i^e_i); constants may get negative
        exponents.  Sums of several monomials are not invertible here."""
        if len(self.terms) != 1:
            raise ValueError(f"cannot invert {self}: not a monomial")
        (e, c), = self.terms.items()
        return FormalElement(self.ring, {tuple(-x for x in e): 1 / c})._reduce()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.const(1)
        for _ in range(k):
            out = out * self
        return out

    def _reduce(self):
        terms = self.terms
        changed = True
        while changed and self.ring.rules:
            changed = False
            new = {}
            for e, c in terms.items():
                for i, p, rep in self.ring.rules:
                    if e[i] >= p:
                        rest = list(e)
                        rest[i] -= p
                        for e2, c2 in rep.terms.items():
                            ee = tuple(a + b for a, b in zip(rest, e2))
                            new[ee] = new[ee] + c * c2 if ee in new else c * c2
                        changed = True
                        break
                else:
                    new[e] = new[e] + c if e in new else c
            terms = {e: c for e, c in new.items() if c}
        self.terms = terms
        return self

    def as_base(self):
        """The element as a plain number if it involves no constants, else None."""
        if not self.terms:
            return self.ring.base(0)
        if set(self.terms) == {(0,) * len(self.ring.names)}:
            return self.terms[(0,) * len(self.ring.names)]
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).terms == {}

    def __hash__(self):
        return hash(tuple(sorted((e, str(c)) for e, c in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"FormalElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(f"{n}^{k}" if k > 1 else n
                            for n, k in zip(self.ring.names, e) if k)
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)
