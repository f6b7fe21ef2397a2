"""Command-line surface: basis listings, coefficient tables, verification
suites, identity proofs and one-off operator applications.

All output is deterministic: rationals are rendered as "p/q" strings, no
timestamps or environment data appear, and repeated runs with the same
configuration produce byte-identical bytes.  Exit codes: 0 when everything
requested checks out, 1 when a verification or proof fails, 2 for
configuration errors (bad flags, bad rationals, non-generic parameters).

Every flag can also be set through an environment variable with the
``B2DUNKL_`` prefix (``B2DUNKL_K0``, ``B2DUNKL_MAX_DEGREE``, ...); explicit
flags win over the environment.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .basis import energy, enumerate_basis, isotype, psi, rho1_eigenvalue
from .kernel import IDENTITY_NAMES, get_identity, prove, prove_named
from .operators import apply as op_apply
from .operators import expr_from_json, expr_to_json, named, OPERATOR_NAMES
from .params import DEFAULT_PARAMS, Params
from .poly import MPoly
from .scalars import format_rat, parse_rat
from .spectra import (h0_table, j2_table, k_table, label_str, norm_table,
                      parse_label)
from .verify import SUITE_ORDER, run_suites

_ENV_PREFIX = "B2DUNKL_"

_ISOTYPE_NAMES = {0: "chi0", 1: "chi1", 2: "chi2", 3: "chi3"}


class ConfigError(Exception):
    pass


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _env(env, key: str, fallback):
    return env.get(_ENV_PREFIX + key, fallback)


def _build_parser(env) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="b2dunkl",
        description="Exact tables, verification suites and identity proofs "
                    "for the square-symmetric Dunkl oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k0", type=_rat,
                        default=_env(env, "K0", DEFAULT_PARAMS.k0),
                        help="first reflection coupling, exact p/q")
    common.add_argument("--k1", type=_rat,
                        default=_env(env, "K1", DEFAULT_PARAMS.k1),
                        help="second reflection coupling, exact p/q")
    common.add_argument("--omega", type=_rat,
                        default=_env(env, "OMEGA", DEFAULT_PARAMS.w),
                        help="oscillator frequency, exact p/q")
    common.add_argument("--max-degree", "--degree", dest="max_degree",
                        type=int,
                        default=_env(env, "MAX_DEGREE", None),
                        help="degree bound (alias: --degree)")
    common.add_argument("--format", choices=("json", "csv"),
                        default=_env(env, "FORMAT", None),
                        help="output format (default json; prove defaults "
                             "to a plain verdict)")
    common.add_argument("--out", default=_env(env, "OUT", None),
                        help="write output to this path instead of stdout")

    p = sub.add_parser("basis", parents=[common],
                       help="list basis states up to a degree")
    p.set_defaults(handler=_cmd_basis, default_degree=4)

    p = sub.add_parser("table", parents=[common],
                       help="one level of an exact coefficient table")
    p.add_argument("which", choices=("h0", "k", "j2", "norms"))
    p.set_defaults(handler=_cmd_table, default_degree=4)

    p = sub.add_parser("verify", parents=[common],
                       help="run verification suites")
    p.add_argument("--suite", action="append",
                   default=None,
                   help="suite id or 'all'; repeat or comma-separate "
                        "(default: all)")
    p.set_defaults(handler=_cmd_verify, default_degree=8,
                   env_suite=_env(env, "SUITE", None))

    p = sub.add_parser("prove", parents=[common],
                       help="prove or refute an operator identity")
    p.add_argument("--identity", default=None,
                   help="catalogued identity name, or a JSON object "
                        '{"lhs": expr, "rhs": expr}')
    p.add_argument("--list", action="store_true", dest="list_identities",
                   help="list catalogued identity names and exit")
    p.set_defaults(handler=_cmd_prove, default_degree=0)

    p = sub.add_parser("apply", parents=[common],
                       help="apply an operator to a polynomial or state")
    p.add_argument("--op", required=True,
                   help="operator name or JSON expression")
    p.add_argument("--label", default=None,
                   help="basis state 'a,b' to act on")
    p.add_argument("--poly", default=None,
                   help="polynomial JSON to act on")
    p.add_argument("--expand", action="store_true",
                   help="also expand the image over the basis level")
    p.set_defaults(handler=_cmd_apply, default_degree=0)

    return parser


def _params_from(args) -> Params:
    return Params.numeric(args.k0, args.k1, args.omega)


def _format_from(args, fallback: str = "json") -> str:
    return args.format if args.format is not None else fallback


def _degree_from(args) -> int:
    raw = args.max_degree if args.max_degree is not None \
        else args.default_degree
    deg = int(raw)
    if deg < 0:
        raise ConfigError("degree bound must be nonnegative")
    return deg


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, args) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", args)


def _emit_csv(rows: Sequence[Sequence[str]], args) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    _emit(buf.getvalue(), args)


# ---- commands --------------------------------------------------------------


def _cmd_basis(args) -> int:
    params = _params_from(args)
    degree = _degree_from(args)
    params.require_generic(degree)
    levels = []
    for deg in range(degree + 1):
        states = []
        for lb in enumerate_basis(deg):
            iso = isotype(lb)
            states.append({
                "label": label_str(lb),
                "family": lb.family,
                "isotype": _ISOTYPE_NAMES.get(iso, "plane"),
                "rotation_phase": str(rho1_eigenvalue(lb)),
                "polynomial": psi(lb, params).to_json_dict(),
            })
        levels.append({"degree": deg,
                       "energy": format_rat(energy(deg, params)),
                       "states": states})
    if _format_from(args) == "csv":
        rows = [["degree", "label", "family", "isotype", "rotation_phase",
                 "energy", "polynomial"]]
        for level in levels:
            for st in level["states"]:
                rows.append([str(level["degree"]), st["label"],
                             st["family"], st["isotype"],
                             st["rotation_phase"], level["energy"],
                             str(psi(parse_label(st["label"]), params))])
        _emit_csv(rows, args)
    else:
        _emit_json({"command": "basis", "max_degree": degree,
                    "params": params.to_json_dict(), "levels": levels}, args)
    return 0


def _cmd_table(args) -> int:
    params = _params_from(args)
    degree = _degree_from(args)
    if args.which == "norms":
        data = norm_table(degree, params)
        if _format_from(args) == "csv":
            rows = [["label", "seed_norm_rel", "norm_ratio_to_head"]]
            rows += [[r["label"], r["seed_norm_rel"],
                      r["norm_ratio_to_head"]] for r in data["rows"]]
            _emit_csv(rows, args)
        else:
            _emit_json({"command": "table", "which": "norms", **data}, args)
        return 0
    maker = {"h0": h0_table, "k": k_table, "j2": j2_table}[args.which]
    table = maker(degree, params)
    if _format_from(args) == "csv":
        _emit_csv(table.to_csv_rows(), args)
    else:
        _emit_json({"command": "table", "which": args.which,
                    **table.to_json_dict()}, args)
    return 0


def _parse_suites(raw: Optional[List[str]]) -> List[str]:
    if not raw:
        return list(SUITE_ORDER)
    names: List[str] = []
    for chunk in raw:
        for part in chunk.split(","):
            part = part.strip()
            if not part:
                continue
            if part == "all":
                names.extend(SUITE_ORDER)
            else:
                names.append(part)
    return names


def _cmd_verify(args) -> int:
    params = _params_from(args)
    degree = _degree_from(args)
    raw = args.suite
    if raw is None and args.env_suite:
        raw = [args.env_suite]
    suites = _parse_suites(raw)
    reports = run_suites(suites, params, degree)
    ok = all(r.passed for r in reports)
    if _format_from(args) == "csv":
        rows = [["suite", "case", "status", "detail"]]
        for rep in reports:
            for case in rep.cases:
                rows.append([rep.suite, case.name,
                             "pass" if case.passed else "fail",
                             case.detail])
        _emit_csv(rows, args)
    else:
        _emit_json({
            "command": "verify",
            "max_degree": degree,
            "params": params.to_json_dict(),
            "status": "pass" if ok else "fail",
            "suites": [rep.to_json_dict() for rep in reports],
        }, args)
    return 0 if ok else 1


def _identity_from_arg(text: str):
    if text in IDENTITY_NAMES:
        ident = get_identity(text)
        return ident.name, ident.lhs, ident.rhs
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        raise ConfigError(
            f"unknown identity {text!r}; catalogued names: "
            + ", ".join(IDENTITY_NAMES)
            + '; or pass a JSON object {"lhs": ..., "rhs": ...}') from None
    if not isinstance(obj, dict):
        raise ConfigError("identity JSON must be an object")
    try:
        if "lhs" in obj:
            lhs = expr_from_json(obj["lhs"])
            rhs_obj = obj.get("rhs")
            rhs = expr_from_json(rhs_obj) if rhs_obj is not None else None
        else:
            lhs = expr_from_json(obj)
            rhs = None
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad identity JSON: {exc}") from None
    return None, lhs, rhs


def _cmd_prove(args) -> int:
    if args.list_identities:
        _emit("\n".join(IDENTITY_NAMES) + "\n", args)
        return 0
    if args.identity is None:
        raise ConfigError("prove needs --identity (or --list)")
    name, lhs, rhs = _identity_from_arg(args.identity)
    if name is not None:
        result = prove_named(name)
    elif rhs is not None:
        result = prove(lhs, rhs)
    else:
        result = prove(lhs)
    if args.format == "csv":
        rows = [["identity", "status"],
                [name or "<expression>", result.status]]
        _emit_csv(rows, args)
    elif args.format == "json":
        _emit_json(result.to_json_dict(), args)
    elif result.proven:
        _emit("PROVEN\n", args)
    else:
        _emit("REFUTED\n" + json.dumps(result.to_json_dict(), indent=2)
              + "\n", args)
    return 0 if result.proven else 1


def _cmd_apply(args) -> int:
    params = _params_from(args)
    if (args.label is None) == (args.poly is None):
        raise ConfigError("apply needs exactly one of --label or --poly")
    if args.op in OPERATOR_NAMES:
        expr = named(args.op)
        op_blob = args.op
    else:
        try:
            expr = expr_from_json(json.loads(args.op))
        except (json.JSONDecodeError, KeyError, ValueError,
                TypeError) as exc:
            raise ConfigError(
                f"--op must be one of {', '.join(OPERATOR_NAMES)} or an "
                f"operator JSON expression ({exc})") from None
        op_blob = expr_to_json(expr)
    if args.label is not None:
        label = parse_label(args.label)
        params.require_generic(label.degree)
        source = psi(label, params)
    else:
        try:
            source = MPoly.from_json_dict(json.loads(args.poly))
        except (json.JSONDecodeError, KeyError, ValueError,
                TypeError) as exc:
            raise ConfigError(f"bad polynomial JSON: {exc}") from None
    image = op_apply(expr, source, params)
    out = {
        "command": "apply",
        "operator": op_blob,
        "params": params.to_json_dict(),
        "input": source.to_json_dict(),
        "result": image.to_json_dict(),
    }
    if args.expand:
        from .spectra import expand
        degree = image.total_degree()
        params.require_generic(degree)
        coeffs = expand(image, degree, params)
        out["expansion"] = [
            {"label": label_str(lb), "coefficient": str(c)}
            for lb, c in coeffs.items()
        ]
    _emit_json(out, args)
    return 0


def main(argv: Optional[Sequence[str]] = None,
         env: Optional[dict] = None) -> int:
    env = dict(os.environ) if env is None else env
    parser = _build_parser(env)
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"b2dunkl: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
