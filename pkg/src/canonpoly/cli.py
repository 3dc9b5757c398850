"""Command-line front end: ``canonpoly <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import canonical as C
from . import fps
from . import multivariate as M
from . import sheffer as Sh
from . import systems as S
from . import verify as Vf
from .errors import CanonError
from .poly import Poly
from .rational import Q, parse_rational_list, to_wire

FORMATS = ("pretty", "json", "csv", "latex")
SYSTEM_CHOICES = S.NAMES + ("custom",)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "--sigma -1/2" read as a value, not an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def max_order() -> int:
    raw = os.environ.get("CANON_MAX_ORDER", "64")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CANON_MAX_ORDER must be an integer, got {raw!r}")


def _order_for(n_max: int) -> int:
    order = C.default_order(n_max)
    cap = max_order()
    if order > cap:
        raise UsageError(f"index {n_max} needs truncation order {order}, above CANON_MAX_ORDER={cap}")
    return order


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def custom_symbol(text: str, order: int) -> fps.Series:
    """V from comma-separated coefficients; unspecified higher terms are zero."""
    try:
        cs = parse_rational_list(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --v coefficients: {exc}")
    if len(cs) < 2:
        raise UsageError("--v needs at least c0 and c1")
    if cs[0] != 0:
        raise UsageError("--v violates the canonical condition V(0) = 0 (c0 must be 0)")
    if cs[1] == 0:
        raise UsageError("--v violates the canonical condition V'(0) != 0 (c1 must be nonzero)")
    if len(cs) > order + 1 and any(cs[order + 1 :]):
        order = len(cs) - 1
    return fps.Series(cs, order)


def resolve_system(name, alpha, v, n_max):
    """Return ``(label, param, CanonicalSystem)``."""
    order = _order_for(n_max)
    if name == "custom":
        if v is None:
            raise UsageError("--system custom needs --v")
        if alpha is not None:
            raise UsageError("--alpha applies only to gegenbauer")
        return "custom", None, C.new_system(custom_symbol(v, order))
    if v is not None:
        raise UsageError("--v applies only to --system custom")
    ns = S.build(name, alpha, order)
    return name, ns.param, ns.system


def _add_system_args(p, suffix=""):
    p.add_argument(f"--system{suffix}", choices=SYSTEM_CHOICES, required=True)
    p.add_argument(f"--alpha{suffix}", type=_rational, default=None, help="gegenbauer parameter")
    p.add_argument(f"--v{suffix}", default=None, help='custom V coefficients "c0,c1,..."')


def _add_output_args(p, formats=FORMATS):
    p.add_argument("--format", choices=formats, default="pretty")
    p.add_argument("--float", action="store_true", help="render decimals (display only)")
    p.add_argument("--output", default=None, help="write to this path instead of stdout")


# rendering -------------------------------------------------------------------


def _num(q: Fraction, as_float: bool) -> str:
    return repr(float(q)) if as_float else str(q)


def render_polys(polys, side: str, fmt: str, as_float: bool = False, meta=None) -> str:
    var = "x" if side == "p" else "y"
    if fmt == "json":
        data = dict(meta or {})
        data.update({"side": side, "rows": [p.to_list() for p in polys]})
        return json.dumps(data, indent=None) + "\n"
    if fmt == "csv":
        lines = []
        for n, p in enumerate(polys):
            cs = [p[k] for k in range(max(p.degree, 0) + 1)]
            lines.append(f"{n}: " + ", ".join(_num(c, as_float) for c in cs))
        return "\n".join(lines) + "\n"
    if fmt == "latex":
        lines = [r"\begin{align*}"]
        for n, p in enumerate(polys):
            lines.append(f"{side}_{{{n}}} &= {p.pretty(var, latex=True, as_float=as_float)}\\\\")
        lines.append(r"\end{align*}")
        return "\n".join(lines) + "\n"
    return "".join(f"{side}_{n} = {p.pretty(var, as_float=as_float)}\n" for n, p in enumerate(polys))


def parse_poly_table(text: str) -> list[Poly]:
    """Inverse of the json form of :func:`render_polys`."""
    return [Poly.from_list(row) for row in json.loads(text)["rows"]]


def render_matrix(rows, fmt: str, as_float: bool = False, basis=None) -> str:
    """Square matrix given as a list of rows (lists of Fractions)."""
    if fmt == "json":
        if basis is not None:
            return json.dumps(M.matrix_to_dict(basis, rows)) + "\n"
        return json.dumps({"rows": len(rows), "entries": [[to_wire(c) for c in r] for r in rows]}) + "\n"
    if fmt == "csv":
        return "".join(",".join(_num(c, as_float) for c in r) + "\n" for r in rows)
    if fmt == "latex":
        width = max((len(r) for r in rows), default=0)
        lines = [r"\left(\begin{array}{" + "r" * width + "}"]
        for r in rows:
            lines.append(" & ".join(_latex_num(c, as_float) for c in r) + r" \\")
        lines.append(r"\end{array}\right)")
        return "\n".join(lines) + "\n"
    cells = [[_num(c, as_float) for c in r] for r in rows]
    w = max((len(c) for r in cells for c in r), default=1)
    out = []
    if basis is not None:
        out.append("basis: " + " ".join(_mono(e) for e in basis))
    out.extend(" ".join(c.rjust(w) for c in r) for r in cells)
    return "\n".join(out) + "\n"


def _latex_num(q, as_float):
    if as_float:
        return repr(float(q))
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _mono(e) -> str:
    parts = [f"x{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a]
    return "*".join(parts) or "1"


def _coeff_matrix_text(m: C.CoeffMatrix, fmt: str, as_float: bool) -> str:
    if fmt == "json":
        return m.to_json() + "\n"
    if fmt == "csv":
        return m.to_csv(as_float)
    if fmt == "latex":
        return m.to_latex(as_float)
    rows = [[m[n, k] for k in range(n + 1)] for n in range(m.n_rows)]
    cells = [[_num(c, as_float) for c in r] for r in rows]
    w = max(len(c) for r in cells for c in r)
    return "".join(" ".join(c.rjust(w) for c in r) + "\n" for r in cells)


# subcommands -------------------------------------------------------------------


def _meta(label, param):
    return {"system": label, "alpha": to_wire(param) if param is not None else None}


def cmd_poly(args) -> tuple[str, int]:
    label, param, sysm = resolve_system(args.system, args.alpha, args.v, args.n)
    get = C.p_poly if args.side == "p" else C.q_poly
    polys = [get(sysm, n) for n in range(args.n + 1)]
    return render_polys(polys, args.side, args.format, args.float, _meta(label, param)), 0


def cmd_matrix(args) -> tuple[str, int]:
    _, _, sysm = resolve_system(args.system, args.alpha, args.v, args.n)
    m = C.p_matrix(sysm, args.n) if args.side == "p" else C.q_matrix(sysm, args.n)
    return _coeff_matrix_text(m, args.format, args.float), 0


def cmd_verify(args) -> tuple[str, int]:
    label, param, sysm = resolve_system(args.system, args.alpha, args.v, args.n + 2)
    checks = Vf.run_suite(label, param, args.n, sys=sysm)
    lines = [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} identities hold for {label} up to n={args.n}")
    return "\n".join(lines) + "\n", (2 if failed else 0)


def cmd_compose(args) -> tuple[str, int]:
    _, _, s1 = resolve_system(args.system1, args.alpha1, args.v1, args.n)
    _, _, s2 = resolve_system(args.system2, args.alpha2, args.v2, args.n)
    if args.dual1:
        s1 = C.inverse_system(s1)
    if args.dual2:
        s2 = C.inverse_system(s2)
    composed = C.compose_systems(s1, s2, args.sigma, args.gamma)
    polys = [C.p_poly(composed, n) for n in range(args.n + 1)]
    meta = {
        "sigma": to_wire(args.sigma),
        "gamma": to_wire(args.gamma),
        "V": composed.V.to_dict(),
    }
    return render_polys(polys, "p", args.format, args.float, meta), 0


def cmd_subordinate(args) -> tuple[str, int]:
    label, param, sysm = resolve_system(args.system, args.alpha, args.v, args.n)
    polys = [C.poisson_subordinate(sysm, args.sigma, args.gamma, n) for n in range(args.n + 1)]
    meta = _meta(label, param)
    meta.update({"sigma": to_wire(args.sigma), "gamma": to_wire(args.gamma)})
    return render_polys(polys, "p", args.format, args.float, meta), 0


def _load_matrix(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc}")
    if isinstance(data, dict):
        data = data.get("matrix", data.get("entries"))
    try:
        A = [[Q(c) for c in row] for row in data]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"matrix file {path} is not a rational matrix: {exc}")
    if not A or any(len(r) != len(A) for r in A):
        raise UsageError("matrix must be square and non-empty")
    return A


def cmd_tensor(args) -> tuple[str, int]:
    A = _load_matrix(args.matrix)
    if args.degree < 0:
        raise UsageError("degree must be non-negative")
    fn = M.sym_power if args.which == "sym" else M.gamma_map
    basis, rows = fn(A, args.degree)
    return render_matrix(rows, args.format, args.float, basis=basis), 0


def cmd_mvpoly(args) -> tuple[str, int]:
    try:
        index = tuple(int(a) for a in args.index.split(","))
    except ValueError:
        raise UsageError(f"bad multi-index {args.index!r}")
    if any(a < 0 for a in index):
        raise UsageError("multi-index entries must be non-negative")
    deg = sum(index)
    order = _order_for(deg)
    if args.system == "hermite_bessel":
        N = len(index)
        V = M.mv_hermite_bessel(N, order)
    else:
        if not args.matrix:
            raise UsageError("--system linear needs --matrix")
        A = _load_matrix(args.matrix)
        if len(A) != len(index):
            raise UsageError("multi-index length must match the matrix size")
        V = M.mv_linear(A, order)
    msys = M.mv_system(V)
    p = M.mv_p_poly(msys, index) if args.side == "p" else M.mv_q_poly(msys, index)
    if args.format == "json":
        return json.dumps({"side": args.side, "index": list(index), "terms": p.to_list()}) + "\n", 0
    names = [("x" if args.side == "p" else "y") + str(i + 1) for i in range(len(index))]
    return f"{args.side}_{index} = {p.pretty(names)}\n", 0


def cmd_sheffer(args) -> tuple[str, int]:
    _, _, base = resolve_system(args.system, args.alpha, args.v, args.n)
    try:
        H = fps.Series(parse_rational_list(args.h), base.order)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --h coefficients: {exc}")
    d = Sh.ShefferDeformation(base, H, args.t)
    polys = [Sh.deformed_p(d, n) for n in range(args.n + 1)]
    meta = {"H": H.to_dict(), "t": to_wire(d.t)}
    return render_polys(polys, "p", args.format, args.float, meta), 0


# entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="canonpoly", description="Canonical polynomial systems in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("poly", help="table of p_n or q_n")
    _add_system_args(p)
    p.add_argument("--side", choices=("p", "q"), default="p")
    p.add_argument("--n", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("matrix", help="P- or Q-matrix rows 0..n")
    _add_system_args(p)
    p.add_argument("--side", choices=("p", "q"), default="p")
    p.add_argument("--n", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", help="run the identity suite for one system")
    _add_system_args(p)
    p.add_argument("--n", type=int, default=10)
    p.set_defaults(func=cmd_verify, format="pretty", output=None)

    p = sub.add_parser("compose", help="p-table of Z1(sigma Z2(gamma v))")
    _add_system_args(p, "1")
    _add_system_args(p, "2")
    p.add_argument("--dual1", action="store_true", help="use the inverse system of system1")
    p.add_argument(
        "--dual2",
        action="store_true",
        help="use the inverse system of system2; with poisson this is Poisson subordination",
    )
    p.add_argument("--sigma", type=_rational, default=Fraction(1))
    p.add_argument("--gamma", type=_rational, default=Fraction(1))
    p.add_argument("--n", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("subordinate", help="Poisson subordination of a system")
    _add_system_args(p)
    p.add_argument("--sigma", type=_rational, default=Fraction(1))
    p.add_argument("--gamma", type=_rational, default=Fraction(1))
    p.add_argument("--n", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_subordinate)

    p = sub.add_parser("tensor", help="symmetric tensor power or Gamma(A) of a matrix")
    p.add_argument("--matrix", required=True, help="JSON file holding a square rational matrix")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--which", choices=("sym", "gamma"), default="sym")
    _add_output_args(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("mvpoly", help="multivariate p- or q-polynomial")
    p.add_argument("--system", choices=("hermite_bessel", "linear"), required=True)
    p.add_argument("--matrix", default=None)
    p.add_argument("--index", required=True, help='multi-index such as "2,0"')
    p.add_argument("--side", choices=("p", "q"), default="p")
    _add_output_args(p, ("pretty", "json"))
    p.set_defaults(func=cmd_mvpoly)

    p = sub.add_parser("sheffer", help="deformed family exp(t H(D)) p_n")
    _add_system_args(p)
    p.add_argument("--h", required=True, help='H coefficients "0,h1,h2,..."')
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_sheffer)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if getattr(args, "n", 0) is not None and getattr(args, "n", 0) < 0:
        print("canonpoly: error: --n must be non-negative", file=sys.stderr)
        return 1
    try:
        text, code = args.func(args)
    except (UsageError, CanonError) as exc:
        print(f"canonpoly: error: {exc}", file=sys.stderr)
        return 1
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
