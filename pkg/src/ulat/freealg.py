"""Weight bookkeeping for free algebras of unitary modular forms.

Every number lives in the JSON fixtures under ``fixtures/tables``; this
module only does arithmetic on them.  The checks are all exact:

* generator counts against the Hermitian rank of the named lattice,
* Jacobian weights (n + 1 + sum of generator weights),
* Borcherds weights c0/2 and the weights of monomials in the products,
* the unit-order filter that turns orthogonal generator weights into
  unitary ones for d = -1, -3,
* Hilbert series identities, by cross-multiplication of polynomials.

A check whose inputs are not in the fixtures reports NA instead of passing.
"""
from __future__ import annotations

import ast
import math
import os
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .hermlat import named_lattice_rank

PASS = "PASS"
FAIL = "FAIL"
NA = "NA"
AMBIGUOUS = "AMBIGUOUS"
VERDICTS = (PASS, FAIL, NA, AMBIGUOUS)

# J_U = (J_O restricted)^(exponent) for the discriminant-kernel twins
TWIN_EXPONENT = {-1: Fraction(1, 2), -3: Fraction(2, 3)}
UNIT_WEIGHT_DIVISOR = {-1: 4, -3: 6}


def rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("not a weight")
    return Fraction(x) if isinstance(x, int) else Fraction(str(x))


def fmt(x):
    return str(x) if not isinstance(x, (list, tuple)) else ",".join(map(str, x))


def ring_label(d):
    return {-1: "Z[i]", -3: "Z[w]", -2: "Z[sqrt-2]"}.get(d, f"d={d}")


def hermitian_rank(lattice):
    """Rank over O_F of a Hermitian lattice whose trace form is ``lattice``."""
    r = named_lattice_rank(lattice)
    if r % 2:
        raise ValueError(f"{lattice} has odd rank {r}")
    return r // 2


# domain types ---------------------------------------------------------------

@dataclass(frozen=True)
class LatticeRecord:
    lattice: str
    d: int
    group: str
    generator_weights: tuple
    relation_weights: tuple = ()
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generator_weights", tuple(map(rational, self.generator_weights)))
        object.__setattr__(self, "relation_weights", tuple(map(rational, self.relation_weights)))
        if any(w <= 0 for w in self.generator_weights + self.relation_weights):
            raise ValueError(f"{self.name}: weights must be positive")

    @property
    def name(self):
        return f"{self.lattice}/{ring_label(self.d)}/{self.group}"

    @property
    def is_free(self):
        return not self.relation_weights

    @property
    def n(self):
        """Complex ball dimension, from the Hermitian rank of the named lattice."""
        return hermitian_rank(self.lattice) - 1

    @classmethod
    def from_json(cls, obj):
        return cls(obj["lattice"], obj["d"], obj["group"], obj["generators"],
                   obj.get("relations", ()), obj.get("source", ""))


@dataclass(frozen=True)
class OrbitTerm:
    q: Fraction
    norm: Fraction | None = None
    ord: int | None = None
    coset: str | None = None
    coeff: int = 1


@dataclass(frozen=True)
class BorcherdsWeightRecord:
    """A Borcherds product: weight c0/2, or a stated weight for factors of one."""
    label: str
    c0: int | None
    orbit_terms: tuple = ()
    count: int = 1
    stated_weight: Fraction | None = None

    @property
    def orthogonal_weight(self):
        if self.c0 is not None:
            return Fraction(self.c0, 2)
        return self.stated_weight

    # unitary restriction keeps the weight
    unitary_weight = orthogonal_weight

    @classmethod
    def from_json(cls, obj):
        terms = tuple(OrbitTerm(rational(t["q"]),
                                rational(t["norm"]) if "norm" in t else None,
                                t.get("ord"), t.get("coset"), t.get("coeff", 1))
                      for t in obj.get("orbit_terms", ()))
        w = rational(obj["weight"]) if "weight" in obj else None
        return cls(obj["label"], obj.get("c0"), terms, obj.get("count", 1), w)


@dataclass(frozen=True)
class MirrorFactorization:
    """A monomial prod label^exponent, with the weight it is claimed to have."""
    factors: tuple
    claimed_weight: Fraction | None = None
    text: str = ""

    @classmethod
    def parse(cls, text, claimed_weight=None):
        exps = monomial_exponents(text)
        return cls(tuple(sorted(exps.items())),
                   None if claimed_weight is None else rational(claimed_weight), text)

    def weight(self, product_weights):
        total = Fraction(0)
        for label, e in self.factors:
            if label not in product_weights:
                raise KeyError(f"unresolved label {label!r} in {self.text or self.factors}")
            total += e * product_weights[label]
        return total


def monomial_exponents(text):
    """Exponents of a monomial such as 'f1^(5/3)*(f2/f1)^(2/3)*prod(f_i)^(1/2)'.

    Numeric factors are scalars and dropped.  ``prod(x)`` stands for the
    product of all members of a family x.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    out = {}
    for k, v in _exponents(tree.body).items():
        if v:
            out[k] = v
    return out


def _exponents(node):
    if isinstance(node, ast.Name):
        return {node.id: Fraction(1)}
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return {}
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "prod"
            and len(node.args) == 1 and isinstance(node.args[0], ast.Name)):
        return {f"prod({node.args[0].id})": Fraction(1)}
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return _exponents(node.operand)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = _rational_node(node.right)
            return {k: v * e for k, v in _exponents(node.left).items()}
        a, b = _exponents(node.left), _exponents(node.right)
        if isinstance(node.op, (ast.Mult, ast.Div)):
            sign = 1 if isinstance(node.op, ast.Mult) else -1
            for k, v in b.items():
                a[k] = a.get(k, 0) + sign * v
            return a
    raise ValueError(f"not a monomial: {ast.unparse(node)!r}")


def _rational_node(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_rational_node(node.operand)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        return _rational_node(node.left) / _rational_node(node.right)
    raise ValueError(f"exponent must be rational: {ast.unparse(node)!r}")


# Hilbert series -------------------------------------------------------------

def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _one_minus(k):
    p = [0] * (k + 1)
    p[0] += 1
    p[k] -= 1
    return p


@dataclass(frozen=True)
class HilbertSeries:
    """numerator/denominator as integer polynomials in u = t^(1/scale)."""
    numerator: tuple
    denominator: tuple
    scale: int = 1

    @classmethod
    def from_weights(cls, generators, relations=()):
        ws = [rational(w) for w in list(generators) + list(relations)]
        scale = math.lcm(*(w.denominator for w in ws)) if ws else 1
        num, den = [1], [1]
        for r in relations:
            num = _pmul(num, _one_minus(int(rational(r) * scale)))
        for k in generators:
            den = _pmul(den, _one_minus(int(rational(k) * scale)))
        return cls(tuple(num), tuple(den), scale)

    @classmethod
    def of_record(cls, record):
        return cls.from_weights(record.generator_weights, record.relation_weights)

    def rescale(self, m):
        """Same series written in u' = t^(1/(m*scale))."""
        def up(p):
            out = [0] * ((len(p) - 1) * m + 1)
            for i, c in enumerate(p):
                out[i * m] = c
            return tuple(out)
        return HilbertSeries(up(self.numerator), up(self.denominator), self.scale * m)

    def module(self, shifts):
        """Series of the free module sum_s t^s * (this algebra)."""
        ss = [rational(s) for s in shifts]
        m = math.lcm(*(s.denominator for s in ss)) if ss else 1
        h = self.rescale(m) if m > 1 else self
        shift_poly = [0] * (max(int(s * h.scale) for s in ss) + 1)
        for s in ss:
            shift_poly[int(s * h.scale)] += 1
        return HilbertSeries(tuple(_pmul(list(h.numerator), shift_poly)), h.denominator, h.scale)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        m = math.lcm(self.scale, other.scale)
        a = self.rescale(m // self.scale)
        b = other.rescale(m // other.scale)
        return (_trim(_pmul(list(a.numerator), list(b.denominator)))
                == _trim(_pmul(list(b.numerator), list(a.denominator))))

    __hash__ = None

    def coefficients(self, count):
        """First ``count`` coefficients of the power series in u."""
        num = list(self.numerator) + [0] * count
        den = list(self.denominator) + [0] * count
        out = []
        for i in range(count):
            c = num[i] - sum(den[j] * out[i - j] for j in range(1, i + 1))
            out.append(c // den[0])
        return out

    def __str__(self):
        def poly(p):
            var = "t" if self.scale == 1 else f"t^(1/{self.scale})"
            terms = [f"{c}" if i == 0 else f"{c}*{var}^{i}" for i, c in enumerate(p) if c]
            return " + ".join(terms) or "0"
        return f"({poly(self.numerator)}) / ({poly(self.denominator)})"


# operations -----------------------------------------------------------------

def jacobian_weight(record, n=None):
    """Weight n + 1 + sum k_j of the Jacobian of the generators."""
    if not record.is_free and n is None:
        raise ValueError(f"{record.name} is not free; pass n explicitly")
    count = len(record.generator_weights) if n is None else n + 1
    return count + sum(record.generator_weights, Fraction(0))


def orthogonal_jacobian_weight(weights):
    """Weight of the orthogonal Jacobian: (number of generators - 1) + sum."""
    ws = [rational(w) for w in weights]
    return len(ws) - 1 + sum(ws, Fraction(0))


def filter_weights_by_unit_order(orth_weights, d):
    if d not in UNIT_WEIGHT_DIVISOR:
        raise ValueError(f"unit-order filter only applies to d = -1, -3 (got {d})")
    m = UNIT_WEIGHT_DIVISOR[d]
    out = []
    for w in orth_weights:
        w = rational(w)
        if w.denominator == 1 and w.numerator % m == 0:
            out.append(w)
    return out


@dataclass(frozen=True)
class ReportLine:
    record: str
    check: str
    verdict: str
    lhs: str
    rhs: str
    source: str

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(self.verdict)

    def to_json(self):
        return {"record": self.record, "check": self.check, "verdict": self.verdict,
                "lhs": self.lhs, "rhs": self.rhs, "source": self.source}


def check_mirror_factorization(record, factorization, product_weights, reading=None,
                               source=""):
    """Compare the Jacobian weight of ``record`` with the weight of a product.

    ``reading`` is an alternative factorization for a printed product whose
    weight does not balance; the line is AMBIGUOUS when only the alternative
    balances.
    """
    target = jacobian_weight(record) if record is not None and record.is_free else None
    claimed = factorization.claimed_weight
    if target is None and claimed is None:
        raise ValueError("no Jacobian weight to compare with")
    goals = [w for w in (target, claimed) if w is not None]
    w = factorization.weight(product_weights)
    ok = all(g == w for g in goals)
    lhs = f"J weight {goals[0]}" if len(set(goals)) == 1 else f"J weight {target}, claimed {claimed}"
    rhs = f"{factorization.text} -> {w}"
    verdict = PASS if ok else FAIL
    if reading is not None:
        w2 = reading.weight(product_weights)
        rhs += f"; reading {reading.text} -> {w2}"
        if not ok and all(g == w2 for g in goals):
            verdict = AMBIGUOUS
    name = record.name if record is not None else factorization.text
    return ReportLine(name, "mirror_factorization", verdict, lhs, rhs, source)


def hilbert_identity_check(free_record_a, module_decomposition):
    """Exact equality of the Hilbert series of ``free_record_a`` with a decomposition.

    ``module_decomposition`` is either a HilbertSeries or a pair
    (HilbertSeries of a free algebra, list of module shifts).
    """
    lhs = free_record_a if isinstance(free_record_a, HilbertSeries) else HilbertSeries.of_record(free_record_a)
    if isinstance(module_decomposition, HilbertSeries):
        rhs = module_decomposition
    else:
        base, shifts = module_decomposition
        rhs = base.module(shifts)
    return lhs == rhs


# relation polynomials -----------------------------------------------------------

_RANGE = re.compile(r"^([A-Za-z_]+)(\d+)\.\.\1(\d+)$")


def expand_variables(spec):
    out = {}
    for key, w in spec.items():
        m = _RANGE.match(key)
        if m:
            for i in range(int(m.group(2)), int(m.group(3)) + 1):
                out[f"{m.group(1)}{i}"] = rational(w)
        else:
            out[key] = rational(w)
    return out


def polynomial_terms(text, constants=()):
    """Monomials (as {variable: degree}) of a polynomial without parentheses."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    return _terms(tree.body, set(constants))


def _terms(node, consts):
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
        return _terms(node.left, consts) + _terms(node.right, consts)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return _terms(node.operand, consts)
    return [_monomial(node, consts)]


def _monomial(node, consts):
    if isinstance(node, ast.Name):
        return Counter() if node.id in consts else Counter({node.id: 1})
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Counter()
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        return _monomial(node.left, consts) + _monomial(node.right, consts)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
        e = _rational_node(node.right)
        if e.denominator != 1 or e < 0:
            raise ValueError("relation exponents must be non-negative integers")
        base = _monomial(node.left, consts)
        return Counter({k: v * int(e) for k, v in base.items()})
    raise ValueError(f"unsupported relation term {ast.unparse(node)!r}")


def relation_weights(relation, variables, constants=()):
    """Set of weights of the monomials of one relation."""
    out = set()
    for mono in polynomial_terms(relation, constants):
        missing = set(mono) - set(variables)
        if missing:
            raise KeyError(f"unknown variables {sorted(missing)} in {relation!r}")
        out.add(sum((variables[v] * k for v, k in mono.items()), Fraction(0)))
    return out


# fixture driver -----------------------------------------------------------------

@dataclass
class VerificationReport:
    lines: list = field(default_factory=list)

    def add(self, *args):
        self.lines.append(ReportLine(*args))

    def counts(self):
        c = Counter(line.verdict for line in self.lines)
        return {v: c.get(v, 0) for v in VERDICTS}

    @property
    def exit_code(self):
        return 1 if any(line.verdict == FAIL for line in self.lines) else 0

    def failures(self):
        return [line for line in self.lines if line.verdict == FAIL]

    def select(self, check=None, verdict=None, record=None):
        return [line for line in self.lines
                if (check is None or line.check == check)
                and (verdict is None or line.verdict == verdict)
                and (record is None or line.record == record)]

    def to_json(self):
        return [line.to_json() for line in self.lines]

    def to_text(self):
        out = [f"{ln.verdict:9} {ln.record:34} {ln.check:22} {ln.lhs} | {ln.rhs}" for ln in self.lines]
        c = self.counts()
        out.append("summary: " + ", ".join(f"{k} {c[k]}" for k in VERDICTS))
        return "\n".join(out)


def default_fixture_dir():
    root = os.environ.get("ULAT_FIXTURE_DIR")
    if root:
        return Path(root) / "tables"
    return Path(__file__).parent / "fixtures" / "tables"


@dataclass
class TableFixtures:
    records: list = field(default_factory=list)
    twins: list = field(default_factory=list)
    scopes: list = field(default_factory=list)
    hilbert: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    lattice_ranks: dict = field(default_factory=dict)

    def record(self, lattice, d, group):
        for r in self.records:
            if (r.lattice, r.d, r.group) == (lattice, d, group):
                return r
        return None


def load_table_fixtures(fixture_dir=None):
    fixture_dir = Path(fixture_dir) if fixture_dir is not None else default_fixture_dir()
    if not fixture_dir.is_dir():
        raise jsonio.FixtureError(f"{fixture_dir}:0: not a directory")
    fx = TableFixtures()
    for path in sorted(fixture_dir.glob("*.json")):
        doc = jsonio.load(path, "tables")
        for i, obj in enumerate(doc.get("records", ())):
            try:
                fx.records.append(LatticeRecord.from_json(obj))
            except ValueError as exc:
                raise jsonio.FixtureError(f"{path}:{_line(path, ('records', i))}: {exc}") from None
        fx.twins.extend(doc.get("twins", ()))
        fx.scopes.extend(doc.get("scopes", ()))
        fx.hilbert.extend(doc.get("hilbert_identities", ()))
        fx.relations.extend(doc.get("relation_sets", ()))
    lattices = fixture_dir.parent / "lattices"
    if lattices.is_dir():
        for path in sorted(lattices.glob("*.json")):
            doc = jsonio.load(path, "lattice")
            if "expected_trace_form" in doc:
                key = (doc["expected_trace_form"], doc["d"])
                fx.lattice_ranks.setdefault(key, []).append((path.name, len(doc["gram"])))
    return fx


def _line(path, json_path):
    return jsonio.line_of(Path(path).read_text(), json_path)


def verify_all_tables(fixture_dir=None):
    fx = load_table_fixtures(fixture_dir)
    rep = VerificationReport()
    expected_j = _expected_jacobian_weights(fx)
    for r in fx.records:
        _check_record(rep, fx, r, expected_j.get(r.name))
    for key, found in fx.lattice_ranks.items():
        lattice, d = key
        if not any(r.lattice == lattice and r.d == d for r in fx.records):
            continue
        h = hermitian_rank(lattice)
        ranks = sorted({rank for _, rank in found})
        rep.add(f"{lattice}/{ring_label(d)}", "fixture_rank", PASS if ranks == [h] else FAIL,
                f"fixture rank {fmt(ranks)}", f"rank({lattice})/2 = {h}",
                ", ".join(name for name, _ in found))
    for t in fx.twins:
        _check_twin(rep, fx, t)
    for s in fx.scopes:
        _check_scope(rep, fx, s)
    for h in fx.hilbert:
        _check_hilbert(rep, fx, h)
    for rs in fx.relations:
        _check_relations(rep, fx, rs)
    return rep


def _expected_jacobian_weights(fx):
    """Independent statements of Jacobian weights: claimed weights in the
    product fixtures and the kernel-twin relation J_U = J_O * exponent."""
    out = {}
    for s in fx.scopes:
        for g in s.get("generator_sets", ()):
            if "claimed_weight" in g:
                r = fx.record(s["lattice"], s["d"], g["group"])
                if r is not None:
                    out.setdefault(r.name, []).append((rational(g["claimed_weight"]), g["source"]))
    for t in fx.twins:
        if t["kind"] == "kernel":
            r = fx.record(t["lattice"], t["d"], "U~")
            if r is not None and Counter(r.generator_weights) == Counter(map(rational, t["unitary"])):
                w = TWIN_EXPONENT[t["d"]] * orthogonal_jacobian_weight(t["orthogonal"])
                out.setdefault(r.name, []).append((w, t["source"]))
    return out


def _check_record(rep, fx, r, expected):
    h = hermitian_rank(r.lattice)
    count = len(r.generator_weights) - len(r.relation_weights)
    rep.add(r.name, "generator_count", PASS if count == h else FAIL,
            f"{len(r.generator_weights)} generators - {len(r.relation_weights)} relations = {count}",
            f"n+1 = rank({r.lattice})/2 = {h}", r.source)
    if not r.is_free:
        rep.add(r.name, "jacobian_weight", NA, fmt(r.generator_weights),
                f"not free (relations in weight {fmt(r.relation_weights)})", r.source)
        return
    j = jacobian_weight(r)
    if not expected:
        mirrored = any(g["group"] == r.group and "jacobian" in g for s in fx.scopes
                       if (s["lattice"], s["d"]) == (r.lattice, r.d) for g in s.get("generator_sets", ()))
        note = "see mirror_factorization" if mirrored else "no independent statement"
        rep.add(r.name, "jacobian_weight", NA, f"{j}", note, r.source)
        return
    ok = all(w == j for w, _ in expected)
    rep.add(r.name, "jacobian_weight", PASS if ok else FAIL, f"{len(r.generator_weights)} + "
            f"{sum(r.generator_weights)} = {j}", ", ".join(f"{w} ({src})" for w, src in expected),
            r.source)


def _check_twin(rep, fx, t):
    d = t["d"]
    name = f"{t['lattice']}/{ring_label(d)}/{'U' if t['kind'] == 'full' else 'U~'}"
    orth = [rational(w) for w in t["orthogonal"]]
    uni = [rational(w) for w in t["unitary"]]
    if t["kind"] == "full":
        got = filter_weights_by_unit_order(orth, d)
        rep.add(name, "unit_order_filter", PASS if got == uni else FAIL,
                f"filter({fmt(orth)}) = {fmt(got)}", fmt(uni), t["source"])
    else:
        jo = orthogonal_jacobian_weight(orth)
        ju = len(uni) + sum(uni, Fraction(0))
        e = TWIN_EXPONENT[d]
        rep.add(name, "twin_jacobian", PASS if ju == e * jo else FAIL,
                f"J_U weight {ju}", f"{e} * J_O weight {jo} = {e * jo}", t["source"])
    rec = fx.record(t["lattice"], d, "U" if t["kind"] == "full" else "U~")
    if rec is not None:
        same = Counter(rec.generator_weights) == Counter(uni)
        rep.add(name, "table_consistency", PASS if same else FAIL,
                f"table {fmt(uni)}", f"record {fmt(rec.generator_weights)}", t["source"])


def _product_weights(scope):
    weights = {}
    for p in scope["products"]:
        b = BorcherdsWeightRecord.from_json(p)
        weights[b.label] = b.unitary_weight
        weights[f"prod({b.label})"] = b.count * b.unitary_weight
    for k, w in scope.get("forms", {}).items():
        weights[k] = rational(w)
    return weights


def _check_scope(rep, fx, s):
    lat, d = s["lattice"], s["d"]
    scope_name = f"{lat}/{ring_label(d)}"
    for p in s["products"]:
        b = BorcherdsWeightRecord.from_json(p)
        if b.c0 is not None and b.stated_weight is not None:
            w = Fraction(b.c0, 2)
            rep.add(f"{scope_name}:{b.label}", "borcherds_weight",
                    PASS if w == b.stated_weight else FAIL, f"c0/2 = {w}",
                    f"stated {b.stated_weight}", s["source"])
        normed = [t for t in b.orbit_terms if t.norm is not None]
        if normed:
            bad = [t for t in normed if t.q != -t.norm / 2]
            rep.add(f"{scope_name}:{b.label}", "principal_part", FAIL if bad else PASS,
                    ", ".join(f"q^{t.q}" for t in normed),
                    ", ".join(f"(v,v) = {t.norm}" for t in normed), s["source"])
    weights = _product_weights(s)
    for sw in s.get("stated_weights", ()):
        w = MirrorFactorization.parse(sw["expr"]).weight(weights)
        rep.add(f"{scope_name}:{sw['expr']}", "stated_weight",
                PASS if w == rational(sw["weight"]) else FAIL, f"{w}", f"{sw['weight']}",
                sw["source"])
    for ident in s.get("identities", ()):
        a = MirrorFactorization.parse(ident["lhs"]).weight(weights)
        b = MirrorFactorization.parse(ident["rhs"]).weight(weights)
        rep.add(f"{scope_name}:{ident['lhs']}", "product_identity", PASS if a == b else FAIL,
                f"{ident['lhs']} -> {a}", f"{ident['rhs']} -> {b}", ident["source"])
    for g in s.get("generator_sets", ()):
        rec = fx.record(lat, d, g["group"])
        if rec is None:
            raise jsonio.FixtureError(f"generator set {scope_name}/{g['group']}: no such record")
        if "generators" in g:
            ws = sorted(MirrorFactorization.parse(x).weight(weights) for x in g["generators"])
            ok = ws == sorted(rec.generator_weights)
            rep.add(rec.name, "generator_weights", PASS if ok else FAIL,
                    f"{fmt(g['generators'])} -> {fmt(ws)}", f"record {fmt(rec.generator_weights)}",
                    g["source"])
        if "relations" in g:
            ws = sorted(MirrorFactorization.parse(x).weight(weights) for x in g["relations"])
            ok = ws == sorted(rec.relation_weights)
            rep.add(rec.name, "relation_weights", PASS if ok else FAIL,
                    f"{fmt(g['relations'])} -> {fmt(ws)}", f"record {fmt(rec.relation_weights)}",
                    g["source"])
        if "jacobian" in g:
            fac = MirrorFactorization.parse(g["jacobian"], g.get("claimed_weight"))
            reading = MirrorFactorization.parse(g["reading"]) if "reading" in g else None
            rep.lines.append(check_mirror_factorization(rec, fac, weights, reading, g["source"]))


def _check_hilbert(rep, fx, h):
    rec = fx.record(h["lattice"], h["d"], h["group"])
    if rec is None:
        raise jsonio.FixtureError(f"Hilbert identity for unknown record {h['lattice']}/{h['group']}")
    dec = h["decomposition"]
    if "group" in dec:
        base_rec = fx.record(h["lattice"], h["d"], dec["group"])
        if base_rec is None:
            raise jsonio.FixtureError(f"Hilbert identity refers to unknown group {dec['group']}")
        base = HilbertSeries.of_record(base_rec)
        label = base_rec.group
    else:
        base = HilbertSeries.from_weights(dec["generators"])
        label = f"free({fmt(dec['generators'])})"
    ok = hilbert_identity_check(rec, (base, dec["shifts"]))
    shifts = " + ".join("1" if rational(s) == 0 else f"t^{s}" for s in dec["shifts"])
    rep.add(rec.name, "hilbert_identity", PASS if ok else FAIL, str(HilbertSeries.of_record(rec)),
            f"({shifts}) * H[{label}]", h["source"])


def _check_relations(rep, fx, rs):
    name = f"{rs['lattice']}/{ring_label(rs['d'])}/{rs['group']}"
    variables = expand_variables(rs["variables"])
    consts = rs.get("constants", ())
    weights = []
    bad = []
    for rel in rs["relations"]:
        ws = relation_weights(rel, variables, consts)
        if len(ws) != 1:
            bad.append(rel)
        weights.append(max(ws))
    rep.add(name, "relation_homogeneity", FAIL if bad else PASS,
            f"{len(rs['relations'])} relations, weights {fmt(weights)}",
            "each relation homogeneous" + (f"; not: {bad}" if bad else ""), rs["source"])
    rec = fx.record(rs["lattice"], rs["d"], rs["group"])
    if rec is not None and rec.relation_weights:
        ok = set(weights) <= set(rec.relation_weights)
        rep.add(name, "relation_weight", PASS if ok else FAIL, fmt(sorted(set(weights))),
                f"record relations {fmt(rec.relation_weights)}", rs["source"])
    jf = rs.get("jacobian_factors")
    if jf is not None and "character_count" in rs:
        order = rational(jf["exponent"]).denominator
        got = order ** jf["count"]
        rep.add(name, "character_count", PASS if got == rs["character_count"] else FAIL,
                f"{order}^{jf['count']} = {got}", f"{rs['character_count']}", rs["source"])
