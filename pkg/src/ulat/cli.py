"""Command-line front end: ``ulat lattice|reflect|qseries|jacobian|tables``.

Exit status: 0 when everything checked passes, 1 when a check fails,
2 on unreadable or schema-violating input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, embed, freealg, jsonio
from .hermlat import lattice_from_json
from .qseries import REGISTRY, parse_series
from .reflections import scan_reflections
from .taylorforms import TaylorForm, jacobian

DEFAULT_ORDER = 50
DEFAULT_DEGREE = 12
DEFAULT_PRECISION = 200


class UsageError(Exception):
    pass


def _s(x):
    return str(x) if isinstance(x, Fraction) else x


def fixture_root():
    env = os.environ.get("ULAT_FIXTURE_DIR")
    return Path(env) if env else Path(__file__).parent / "fixtures"


def _load_lattice(path):
    doc = jsonio.load(path, "lattice")
    try:
        return lattice_from_json(doc)
    except (ValueError, ArithmeticError) as exc:
        line = jsonio.line_of(Path(path).read_text(), ("gram",))
        raise jsonio.FixtureError(f"{path}:{line}: {exc}") from None


# commands ---------------------------------------------------------------------

def cmd_lattice_info(args):
    L = _load_lattice(args.path)
    tf = L.trace_form()
    out = {
        "name": L.name,
        "d": L.K.d,
        "rank": L.rank,
        "trace_rank": tf.rank,
        "trace_det": tf.det,
        "trace_signature": list(tf.signature),
        "integral": tf.is_integral,
        "even": tf.is_even,
    }
    if tf.is_integral and tf.det:
        out["discriminant_group"] = L.discriminant_group().invariants
    else:
        out["discriminant_group"] = None
    lines = [
        f"lattice          {L.name or args.path}",
        f"d                {L.K.d}",
        f"rank             {L.rank}",
        f"trace form       rank {tf.rank}, det {tf.det}, signature {tf.signature}",
        f"integral         {'yes' if tf.is_integral else 'no'}",
        f"even             {'yes' if tf.is_even else 'no'}",
        "discriminant     " + (_shape(out["discriminant_group"])),
    ]
    return out, lines, 0


def _shape(inv):
    if inv is None:
        return "n/a"
    return " x ".join(f"Z/{k}" for k in inv) if inv else "trivial"


def cmd_reflect_scan(args):
    L = _load_lattice(args.lattice)
    res = scan_reflections(L, Fraction(args.norm_max), args.radius)
    out = {
        "lattice": L.name,
        "d": L.K.d,
        "norm_max": str(Fraction(args.norm_max)),
        "radius": args.radius,
        "roots": len(res.roots()),
        "cases": len(res.records),
        "agree": res.all_agree,
        "disagreements": len(res.disagreements()),
        "tetraflections": len(res.tetraflections()),
        "lonely_biflections": len(res.lonely_biflections()),
        "kernel_reflections": len(res.kernel_reflections()),
        "roots_detail": res.summary(),
    }
    lines = [f"{k:20} {out[k]}" for k in out if k != "roots_detail"]
    return out, lines, 0 if res.all_agree else 1


def cmd_qseries_eval(args):
    if args.form.isidentifier() and args.form not in REGISTRY:
        raise UsageError(f"unknown form {args.form!r}; known: {', '.join(REGISTRY.names())}")
    f = parse_series(args.form, order=args.order)
    coeffs = [(e, c) for e, c in f.to_lines(args.order)]
    out = {"form": args.form, "weight": _s(f.weight), "order": args.order,
           "coefficients": [[str(e), str(c)] for e, c in coeffs]}
    lines = [f"# {args.form}  weight {f.weight}"] + [f"q^{e}\t{c}" for e, c in coeffs]
    return out, lines, 0


def cmd_jacobian(args):
    names = [x.strip() for x in args.forms.split(",") if x.strip()]
    if len(names) != 2:
        raise UsageError("the z-free Jacobian takes exactly two forms")
    forms = [TaylorForm.from_series(REGISTRY.series(n, args.order), 0,
                                    max_degree=args.degree) for n in names]
    res = jacobian(forms)
    value = res.value[()] if not res.value.is_zero() else None
    delta = REGISTRY.series("Delta", args.order)
    c = value.proportional_to(delta, args.order) if value is not None else None
    coeffs = value.to_lines(args.order) if value is not None else []
    out = {"forms": names, "weight": _s(res.weight), "order": args.order,
           "proportional_to_delta": c is not None, "scalar": None if c is None else str(c),
           "coefficients": [[str(e), str(v)] for e, v in coeffs]}
    lines = [f"J({', '.join(names)}) weight {res.weight}",
             f"proportional to Delta through q^{args.order}: "
             + (f"yes, scalar {c}" if c is not None else "no")]
    lines += [f"q^{e}\t{v}" for e, v in coeffs]
    return out, lines, 0


def cmd_tables_verify(args):
    d = Path(args.fixture_dir) if args.fixture_dir else fixture_root() / "tables"
    rep = freealg.verify_all_tables(d)
    out = {"counts": rep.counts(), "lines": rep.to_json()}
    return out, rep.to_text().splitlines(), rep.exit_code


# argument parsing ---------------------------------------------------------------

def _common(parser, suppress):
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=dflt(False),
                        help="machine-readable output")
    parser.add_argument("--order", type=int, default=dflt(DEFAULT_ORDER),
                        help="q-expansion truncation order")
    parser.add_argument("--degree", type=int, default=dflt(DEFAULT_DEGREE),
                        help="Taylor degree budget")
    parser.add_argument("--precision", type=int, default=dflt(DEFAULT_PRECISION),
                        help="working precision in bits for floating routines")


def build_parser():
    p = argparse.ArgumentParser(prog="ulat", description="Unitary lattices and modular forms")
    p.add_argument("--version", action="version", version=f"ulat {__version__}")
    _common(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice").add_subparsers(dest="action", required=True)
    info = lat.add_parser("info", help="invariants of a lattice fixture")
    info.add_argument("path")
    _common(info, True)
    info.set_defaults(func=cmd_lattice_info)

    ref = sub.add_parser("reflect").add_subparsers(dest="action", required=True)
    scan = ref.add_parser("scan", help="classify reflections by both routes")
    scan.add_argument("--lattice", required=True)
    scan.add_argument("--norm-max", default="4")
    scan.add_argument("--radius", type=int, default=2)
    _common(scan, True)
    scan.set_defaults(func=cmd_reflect_scan)

    qs = sub.add_parser("qseries").add_subparsers(dest="action", required=True)
    ev = qs.add_parser("eval", help="expand a named form or expression")
    ev.add_argument("--form", required=True)
    _common(ev, True)
    ev.set_defaults(func=cmd_qseries_eval)

    jac = sub.add_parser("jacobian", help="z-free modular Jacobian of two forms")
    jac.add_argument("--forms", default="E4,E6")
    _common(jac, True)
    jac.set_defaults(func=cmd_jacobian)

    tab = sub.add_parser("tables").add_subparsers(dest="action", required=True)
    ver = tab.add_parser("verify", help="check every table fixture")
    ver.add_argument("--fixture-dir")
    ver.add_argument("--text", dest="json", action="store_false", default=argparse.SUPPRESS)
    _common(ver, True)
    ver.set_defaults(func=cmd_tables_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    embed.FLOAT_BITS = args.precision
    try:
        out, lines, code = args.func(args)
    except (jsonio.FixtureError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(out, indent=1, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
