"""Command-line front end: ``pcv verify | eval | lines | sing | orbit | stokes``.

Exit codes: 0 pass, 1 verification failure, 2 inconclusive, 64 usage error,
65 domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import braid_vi, charvar_v, charvar_vi, stokes, verify, wild
from .identity import default_seed
from .scalar import AlgebraError, is_exact, parse_exact, parse_numeric
from .serialize import encode_point, encode_scalar

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- parameter and point parsing ---------------------------------------------

@dataclass(frozen=True)
class ParamsVA:
    """S_V parameters given through a0, ainf and e~1 (what theta~ needs)."""

    e1t: object
    a0: object
    ainf: object

    @property
    def a1t(self):
        return self.e1t + 1 / self.e1t


def _scalar(text: str, numeric: bool):
    try:
        return parse_numeric(text) if numeric else parse_exact(text)
    except AlgebraError as exc:
        raise UsageError(str(exc)) from exc


def _numeric_mode(values: Sequence[Optional[str]]) -> bool:
    given = [v for v in values if v is not None]
    modes = {"," in v for v in given}
    if len(modes) > 1:
        raise UsageError("exact and numeric scalars cannot be mixed in one command")
    return modes == {True}


PARAM_FLAGS = ("e0", "et", "e1", "einf", "e1t", "a0", "at", "a1", "a8")


def _params(args, numeric: bool):
    vals = {k: getattr(args, k, None) for k in PARAM_FLAGS}
    get = {k: (_scalar(v, numeric) if v is not None else None) for k, v in vals.items()}
    if args.surface == "vi":
        e = [get[k] for k in ("e0", "et", "e1", "einf")]
        a = [get[k] for k in ("a0", "at", "a1", "a8")]
        if all(x is not None for x in e):
            return charvar_vi.ParamsVI(*e)
        if all(x is not None for x in a):
            return tuple(a)
        raise UsageError("S_VI needs --e0 --et --e1 --einf or --a0 --at --a1 --a8")
    if get["e1t"] is None:
        raise UsageError("S_V needs --e1t")
    if get["e0"] is not None and get["einf"] is not None:
        return charvar_v.ParamsV(get["e0"], get["e1t"], get["einf"])
    if get["a0"] is not None and get["a8"] is not None:
        return ParamsVA(get["e1t"], get["a0"], get["a8"])
    raise UsageError("S_V needs --e1t with --e0 --einf or with --a0 --a8")


def _point(text: str, numeric: bool):
    """Exact: "x,y,z"; numeric: "re,im;re,im;re,im"."""
    if ";" in text:
        parts = text.split(";")
        vals = [_scalar(p, True) for p in parts]
    else:
        if numeric:
            raise UsageError("numeric points are written re,im;re,im;re,im")
        vals = [_scalar(p, False) for p in text.split(",")]
    if len(vals) != 3:
        raise UsageError("a point has three coordinates")
    return tuple(vals)


def _all_strings(args, extra: Sequence[Optional[str]] = ()):
    return [getattr(args, k, None) for k in PARAM_FLAGS] + list(extra)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# --- commands ------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        reports = verify.run_suite(args.suite, args.seed, args.mutate)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        text = _dump({"seed": reports[0].seed, "exit_code": verify.combined_exit_code(reports),
                      "suites": [r.to_json() for r in reports]})
    else:
        text = "".join("\n".join(r.lines()) + "\n" for r in reports)
    _emit(text, args.out)
    return verify.combined_exit_code(reports)


def cmd_eval(args) -> int:
    numeric = _numeric_mode(_all_strings(args, ["0,0" if ";" in args.point else "0"]))
    params = _params(args, numeric)
    P = _point(args.point, numeric)
    out = {"surface": args.surface, "point": encode_point(P)}
    if args.surface == "vi":
        F, *grad = charvar_vi.fricke_eval(P, params)
        out["F"] = encode_scalar(F)
        if args.word:
            res = braid_vi.apply_word(args.word, P, params)
            out["word"] = str(braid_vi.parse_word(args.word))
            out["image"] = encode_point(res.point)
            out["F_image"] = encode_scalar(charvar_vi.fricke(res.point, res.params))
    else:
        F, *grad = charvar_v.fricke_v_eval(P, params)
        out["F~"] = encode_scalar(F)
        if args.word:
            nu = _scalar(args.nu, True) if args.nu else None
            Q = wild.apply_v_word(args.word, P, _as_params_v(params), nu)
            out["word"] = args.word
            out["image"] = encode_point(Q)
    out["gradient"] = encode_point(grad)
    _emit(_dump(out), args.out)
    return EXIT_OK


def _as_params_v(params):
    if isinstance(params, ParamsVA):
        raise UsageError("words on S_V need --e0 and --einf")
    return params


def _fmt(x) -> str:
    if is_exact(x):
        return encode_scalar(x)
    z = complex(x)
    return f"{z.real!r},{z.imag!r}"


def cmd_lines(args) -> int:
    numeric = _numeric_mode(_all_strings(args))
    params = _params(args, numeric)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.surface == "vi":
        if not isinstance(params, charvar_vi.ParamsVI):
            raise UsageError("lines on S_VI need e-parameters")
        w.writerow(["k", "family", "Xk_value", "i", "j", "A", "B", "C"])
        for ln in charvar_vi.lines_vi(params):
            w.writerow([ln.k, ln.family, _fmt(ln.value), ln.i, ln.j, _fmt(ln.A), _fmt(ln.B), _fmt(ln.C)])
    else:
        if not isinstance(params, charvar_v.ParamsV):
            raise UsageError("lines on S_V need --e0 --e1t --einf")
        w.writerow(["decomposition", "factor"] + [f"eq1_{c}" for c in ("X0", "Wt", "U1", "const")]
                   + [f"eq2_{c}" for c in ("X0", "Wt", "U1", "const")])
        for ln in charvar_v.lines_v(params):
            w.writerow([ln.family, ln.branch] + [_fmt(x) for x in ln.eq1] + [_fmt(x) for x in ln.eq2])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def _singular(args, params, numeric):
    tol = args.tol if numeric else None
    if args.surface == "vi":
        if not isinstance(params, charvar_vi.ParamsVI):
            raise UsageError("singular points of S_VI need e-parameters")
        return charvar_vi.singularities_vi(params, tol)
    if not isinstance(params, charvar_v.ParamsV):
        raise UsageError("singular points of S_V need --e0 --e1t --einf")
    return charvar_v.singularities_v(params, tol)


def cmd_sing(args) -> int:
    numeric = _numeric_mode(_all_strings(args))
    params = _params(args, numeric)
    pts = _singular(args, params, numeric)
    out = {"surface": args.surface, "count": len(pts),
           "points": [{"kind": p.kind, "location": encode_point(p.location)} for p in pts]}
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_orbit(args) -> int:
    numeric = _numeric_mode(_all_strings(args))
    params = _params(args, numeric)
    if args.start == "singular":
        pts = _singular(args, params, numeric)
        if not pts:
            raise AlgebraError("the surface has no singular point for these parameters")
        P0 = pts[0].location
    elif args.start == "random":
        P0 = (charvar_vi.sample_point_vi(params, args.seed) if args.surface == "vi"
              else charvar_v.sample_point_v(_as_params_v(params), args.seed))
    else:
        P0 = _point(args.start, numeric)
    nu = _scalar(args.nu, True) if args.nu else None
    if args.surface == "v" and nu is None and any("0t" in t for t in args.word.split(",")):
        raise UsageError("words with g0t^2 / gt0^2 on S_V need --nu")
    if args.surface == "vi":
        braid_vi.parse_word(args.word)
    rec = wild.orbit_run(args.surface, P0, params if args.surface == "vi" else _as_params_v(params),
                         args.word, args.max_iter, args.escape_radius, args.match_tol, nu)
    if args.format == "json":
        label = rec.classification if rec.period is None else f"{rec.classification}({rec.period})"
        text = _dump({"surface": rec.surface, "word": rec.word, "classification": label,
                      "note": rec.note, "iterates": [encode_point(P) for P in rec.iterates],
                      "norms": rec.norms})
    else:
        text = rec.to_csv()
    _emit(text, args.out)
    return EXIT_OK


def cmd_stokes(args) -> int:
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                d = stokes.StokesDataVI.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            if isinstance(exc, AlgebraError):
                raise
            raise UsageError(f"cannot read Stokes data: {exc}") from exc
    else:
        d = stokes.random_admissible(args.seed)
    X0, Xt, X1, a = stokes.traces_from_stokes(d)
    m = stokes.monodromy_from_stokes(d)
    out = {"data": d.to_json(), "traces": encode_point((X0, Xt, X1)),
           "a": [encode_scalar(x) for x in a], "E": encode_scalar(m.E), "E'": encode_scalar(m.Eprime),
           "admissibility": encode_scalar(stokes.admissibility(d)),
           "fricke": encode_scalar(charvar_vi.fricke((X0, Xt, X1), a))}
    if args.braid:
        nd = stokes.braid_on_stokes(args.braid, d)
        out["braid"] = {"name": args.braid, "data": nd.to_json(),
                        "traces": encode_point(stokes.traces_from_stokes(nd)[:3])}
    if args.confluent:
        o, P = stokes.confluent_stokes(d)
        out["outer"] = {"s0t": encode_scalar(o.s0t), "s01": encode_scalar(o.s01),
                        "st0": encode_scalar(o.st0), "s10": encode_scalar(o.s10)}
        out["XWU"] = encode_point(P)
    _emit(_dump(out), args.out)
    return EXIT_OK


# --- parser ----------------------------------------------------------------------

def _add_params(p) -> None:
    p.add_argument("--surface", choices=("vi", "v"), default="vi")
    for k in PARAM_FLAGS:
        help_ = "a_inf" if k == "a8" else None
        p.add_argument(f"--{k}", help=help_)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcv", description="Character varieties of Painleve VI and V: checks and tools")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", choices=verify.SUITES + ("all",))
    p.add_argument("--mutate", choices=tuple(verify.MUTATIONS))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate the cubic (and optionally a word) at a point")
    _add_params(p)
    p.add_argument("--point", required=True)
    p.add_argument("--word")
    p.add_argument("--nu")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lines", help="CSV catalog of lines on the surface")
    _add_params(p)
    p.add_argument("--format", choices=("csv",), default="csv")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_lines)

    p = sub.add_parser("sing", help="singular points")
    _add_params(p)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_sing)

    p = sub.add_parser("orbit", help="iterate a word and classify the orbit")
    _add_params(p)
    p.add_argument("--word", required=True)
    p.add_argument("--start", default="random", help='"singular", "random", or a point')
    p.add_argument("--nu")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--escape-radius", type=float, default=1e8)
    p.add_argument("--match-tol", type=float, default=1e-9)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("stokes", help="Stokes data pipeline")
    p.add_argument("--input", help="JSON file {\"s\": {...}, \"e\": {...}}; random admissible data if omitted")
    p.add_argument("--braid", choices=("b0t", "bt1"))
    p.add_argument("--confluent", action="store_true")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_stokes)
    return parser


def _glue_negative_values(argv: List[str]) -> List[str]:
    """Rewrite "--flag -2,0,0" as "--flag=-2,0,0" so values may start with a minus."""
    out: List[str] = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        nxt = argv[k + 1] if k + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and nxt is not None and len(nxt) > 1
                and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] in "./i")):
            out.append(f"{tok}={nxt}")
            k += 2
            continue
        out.append(tok)
        k += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        # argparse exits on --help (0) and on errors (64 via _Parser.error)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.seed is None:
        args.seed = default_seed()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pcv: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, ZeroDivisionError) as exc:
        print(f"pcv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"pcv: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
