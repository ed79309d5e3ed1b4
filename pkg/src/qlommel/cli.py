"""Command-line front end: ``qlommel <command> [options]``.

Every command writes either JSON (``{"meta": ..., "data": ...}``) or CSV
with a header row.  Exit status: 0 on success, 1 when ``verify`` reports a
failing case, 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .bessel import J, j
from .errors import QLommelError
from .lommel import (
    LaurentCoeffs,
    P_eval,
    al_salam_chihara,
    chebyshev_U,
    h_eval,
    p_eval,
    q_hermite,
)
from .moments import L_apply, L_residue, c_moments, d_moments, gram_laurent, gram_P, gram_p
from .qseries import QContext
from .spectral import laurent_zeros, x_zeros, zeros_J, zeros_j
from .verify import IDS, SuiteConfig, run_suite

DEFAULT_TOL = 1e-8
FAMILIES = ("J", "j", "h", "p", "P", "asc", "hermite", "chebU")


class _UsageError(Exception):
    pass


def _number(text: str):
    """Parse a real or complex literal such as ``0.5``, ``2j`` or ``1+2j``."""
    try:
        return float(text)
    except ValueError:
        try:
            return complex(text.replace(" ", ""))
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_laurent(text: str) -> LaurentCoeffs:
    """``"e:c,e:c,..."`` with integer exponents and real coefficients."""
    coeffs: dict[int, float] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            e, c = item.split(":")
            coeffs[int(e)] = coeffs.get(int(e), 0.0) + float(c)
        except ValueError:
            raise _UsageError(f"bad Laurent term {item!r}; expected exponent:coefficient") from None
    if not coeffs:
        raise _UsageError("empty Laurent polynomial")
    return LaurentCoeffs(coeffs)


def _parse_grid(text: str) -> dict:
    out = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        try:
            key, vals = part.split("=")
            out[key.strip()] = tuple(float(v) for v in vals.split(",") if v.strip())
        except ValueError:
            raise _UsageError(f"bad grid component {part!r}; expected name=v1,v2") from None
    unknown = set(out) - {"q", "nu"}
    if unknown:
        raise _UsageError(f"unknown grid keys {sorted(unknown)}")
    return out


def _default_tol() -> float:
    env = os.environ.get("QLOMMEL_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise _UsageError(f"QLOMMEL_TOL is not a number: {env!r}") from None


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, default=0.5, help="base q in (0, 1)")
    common.add_argument("--nu", type=float, default=1.5, help="order nu")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", default="-", help="output file ('-' for stdout)")
    common.add_argument("--tol", type=float, default=None,
                        help="diagnostic tolerance (default from QLOMMEL_TOL or 1e-8)")

    parser = argparse.ArgumentParser(prog="qlommel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qlommel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a function or polynomial")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, default=0, help="degree or index")
    p.add_argument("--x", type=_number, nargs="+", required=True)
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=_number, default=0.0,
                       help="Al-Salam--Chihara parameter (family asc)")

    p = sub.add_parser("zeros", parents=[common], help="zeros of J, j or V_{n,nu}")
    p.add_argument("--function", choices=("J", "j", "laurent"), required=True)
    p.add_argument("--count", type=int, default=10, help="number of positive zeros (J, j)")
    p.add_argument("--n", type=int, default=10, help="degree of V_{n,nu} (laurent)")

    p = sub.add_parser("gram", parents=[common], help="Gram matrix of an orthogonal family")
    p.add_argument("--family", choices=("laurent", "p", "P"), required=True)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--kzeros", type=int, default=60, help="zeros used by discrete measures")

    p = sub.add_parser("moments", parents=[common], help="moment coefficients c_k or d_k")
    p.add_argument("--kind", choices=("c", "d"), required=True)
    p.add_argument("--K", type=int, default=10)

    p = sub.add_parser("functional", parents=[common], help="apply the strong moment functional")
    p.add_argument("--poly", required=True, help="Laurent polynomial 'e:c,e:c,...'")
    p.add_argument("--path", choices=("moments", "residue"), default="moments")
    p.add_argument("--s", type=float, default=1.0, help="contour radius (residue path)")

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("--id", action="append", dest="ids", choices=IDS, metavar="ID",
                   help="restrict to this id (repeatable)")
    p.add_argument("--grid", default=None, help="e.g. 'q=0.3,0.5;nu=1,1.5'")
    p.add_argument("--tol-algebraic", type=float, default=1e-11)

    p = sub.add_parser("table", parents=[common], help="(x, value) grid for plotting")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--x-min", type=float, default=0.1)
    p.add_argument("--x-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=50)
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=_number, default=0.0)
    return parser


# --------------------------------------------------------------------------
# commands; each returns (data, csv_rows, exit_status)


def _evaluate(ctx, args, x):
    fam, nu, n = args.family, args.nu, args.n
    if fam == "J":
        return J(ctx, nu, x)
    if fam == "j":
        return j(ctx, nu, x)
    if fam == "h":
        return h_eval(ctx, nu, n, x)
    if fam == "p":
        return p_eval(ctx, nu, n, x)
    if fam == "P":
        return P_eval(ctx, nu, n, x)
    if fam == "asc":
        return al_salam_chihara(ctx, n, args.a, args.b, args.c, x)
    if fam == "hermite":
        return q_hermite(ctx, n, x)
    return chebyshev_U(n, x)


def _xy_rows(pairs):
    cplx = any(isinstance(v, complex) for pair in pairs for v in pair)
    if cplx:
        rows = [["x_re", "x_im", "value_re", "value_im"]]
        rows += [[complex(x).real, complex(x).imag, complex(v).real, complex(v).imag]
                 for x, v in pairs]
    else:
        rows = [["x", "value"]] + [[x, v] for x, v in pairs]
    return rows


def _cmd_eval(ctx, args, tol):
    pairs = [(x, _evaluate(ctx, args, x)) for x in args.x]
    data = {"family": args.family, "n": args.n,
            "values": [{"x": x, "value": v} for x, v in pairs]}
    return data, _xy_rows(pairs), 0


def _cmd_table(ctx, args, tol):
    if args.points < 2:
        raise _UsageError("--points must be at least 2")
    xs = np.linspace(args.x_min, args.x_max, args.points)
    pairs = [(float(x), _evaluate(ctx, args, float(x))) for x in xs]
    data = {"family": args.family, "n": args.n, "x": [p[0] for p in pairs],
            "value": [p[1] for p in pairs]}
    return data, _xy_rows(pairs), 0


def _cmd_zeros(ctx, args, tol):
    if args.function == "laurent":
        z = laurent_zeros(ctx, args.nu, args.n, tol=tol)
        xz = x_zeros(z)
        data = {"function": "laurent", "n": args.n,
                "spectrum": [complex(v) for v in z], "x_zeros": [complex(v) for v in xz]}
        rows = [["k", "z_re", "z_im"]] + [[k, v.real, v.imag] for k, v in enumerate(z)]
        return data, rows, 0
    finder = zeros_J if args.function == "J" else zeros_j
    table = finder(ctx, args.nu, args.count)
    data = {"function": table.function, "nu": table.nu, "tol": table.tol,
            "zeros": list(table.zeros), "brackets": [list(b) for b in table.brackets]}
    rows = [["k", "zero", "bracket_lo", "bracket_hi"]]
    rows += [[k + 1, z, b[0], b[1]] for k, (z, b) in enumerate(zip(table.zeros, table.brackets))]
    return data, rows, 0


def _matrix_rows(name, m):
    return [[name, i] + list(row) for i, row in enumerate(m)]


def _gram_dict(g):
    return {"matrix": g.matrix, "target_diagonal": g.target_diagonal,
            "max_off_diagonal": g.max_off_diagonal,
            "max_diagonal_error": g.max_diagonal_error}


def _cmd_gram(ctx, args, tol):
    size = args.nmax + 1
    header = ["block", "row"] + [f"col{k}" for k in range(size)]
    if args.family == "laurent":
        plus, minus = gram_laurent(ctx, args.nu, args.nmax)
        data = {"family": "laurent", "h_h": _gram_dict(plus), "xinv_h_xinv_h": _gram_dict(minus)}
        rows = [header] + _matrix_rows("h_h", plus.matrix) + _matrix_rows("xinv_h_xinv_h", minus.matrix)
        rows += _matrix_rows("target_h_h", [plus.target_diagonal])
        rows += _matrix_rows("target_xinv_h_xinv_h", [minus.target_diagonal])
        return data, rows, 0
    builder = gram_p if args.family == "p" else gram_P
    g = builder(ctx, args.nu, args.nmax, K=args.kzeros, tol=tol)
    data = {"family": args.family, **_gram_dict(g), "mass0": g.extra["mass0"],
            "tail": g.extra["tail"], "all_weights_positive": bool(np.all(g.extra["signs"] > 0))}
    rows = [header] + _matrix_rows("gram", g.matrix) + _matrix_rows("target", [g.target_diagonal])
    return data, rows, 0


def _cmd_moments(ctx, args, tol):
    table = (c_moments if args.kind == "c" else d_moments)(ctx, args.nu, args.K)
    data = {"kind": table.kind, "nu": table.nu, "K": table.K, "values": list(table.values)}
    rows = [["k", args.kind]] + [[k, v] for k, v in enumerate(table.values)]
    return data, rows, 0


def _cmd_functional(ctx, args, tol):
    poly = parse_laurent(args.poly)
    terms = {str(e): poly[e] for e in poly.exponents()}
    if args.path == "moments":
        value = L_apply(ctx, args.nu, poly)
        data = {"poly": terms, "path": "moments", "value": value}
        return data, [["path", "value"], ["moments", value]], 0
    rep = L_residue(ctx, args.nu, poly, s=args.s)
    data = {"poly": terms, "path": "residue", "s": rep.s, "value": rep.value_residue,
            "value_moments": rep.value_moments, "discrepancy": rep.discrepancy,
            "N": rep.N, "M": rep.M, "J_zeros": list(rep.J_zeros),
            "J_weights": list(rep.J_weights), "j_zeros": list(rep.j_zeros),
            "j_weights": list(rep.j_weights), "nodes": rep.nodes}
    value = rep.value_residue
    if isinstance(value, complex):
        value = value.real
    rows = [["path", "value", "value_moments", "discrepancy"],
            ["residue", value, rep.value_moments, rep.discrepancy]]
    return data, rows, 0


def _cmd_verify(ctx, args, tol):
    grid = _parse_grid(args.grid) if args.grid else {}
    config = SuiteConfig(q_values=grid.get("q", SuiteConfig.q_values),
                         nu_values=grid.get("nu", SuiteConfig.nu_values),
                         ids=tuple(args.ids) if args.ids else None,
                         tol_algebraic=args.tol_algebraic, tol_limit=tol)
    report = run_suite(ctx, config)
    rows = [["id", "q", "nu", "kind", "residual", "tolerance", "passed", "error"]]
    for c in report.cases:
        rows.append([c.id, c.params.get("q"), c.params.get("nu"), c.kind, c.residual,
                     c.tolerance, c.passed, c.error or ""])
    return report.to_dict(), rows, 0 if report.passed else 1


_COMMANDS = {"eval": _cmd_eval, "zeros": _cmd_zeros, "gram": _cmd_gram,
             "moments": _cmd_moments, "functional": _cmd_functional,
             "verify": _cmd_verify, "table": _cmd_table}


# --------------------------------------------------------------------------
# output


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _fmt(v):
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v)
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    if isinstance(v, (complex, np.complexfloating)):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return str(v)


def render(meta: dict, data, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"meta": _to_jsonable(meta), "data": _to_jsonable(data)}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(rows[0])
    for row in rows[1:]:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        tol = args.tol if args.tol is not None else _default_tol()
        if not (tol > 0 and math.isfinite(tol)):
            raise _UsageError("tolerance must be positive")
        ctx = QContext(args.q)
        data, rows, status = _COMMANDS[args.command](ctx, args, tol)
    except (_UsageError, QLommelError, ValueError) as exc:
        print(f"qlommel {args.command}: error: {exc}", file=sys.stderr)
        return 2
    meta = {"command": args.command, "q": args.q, "nu": args.nu, "tol": tol,
            "version": __version__,
            "arguments": {k: v for k, v in vars(args).items() if k not in ("output",)}}
    text = render(meta, data, rows, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
