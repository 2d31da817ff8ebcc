"""Command line: gen, iterate, desing, verify, report.

Exit codes: 0 ok, 2 input error, 3 exceptional singularity type,
4 verification failure.  PENTAGRAM_SEED supplies the default seed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import confinement as cf
from .decorated import decorated_to_json
from .desing import DeformationOracle, MainTrace, main as desingularize
from .polygon import (
    HALF,
    INTEGER,
    SingularError,
    TwistedPolygon,
    pentagram,
    polygon_from_json,
    polygon_to_json,
    random_polygon,
    random_polygon_in_XS,
    regular_polygon,
    singularity_type,
    y_params,
)
from .projective import DegenerateError, RandomSource
from .render import svg_document
from .scalar import format_scalar

EXIT_OK, EXIT_INPUT, EXIT_EXCEPTIONAL, EXIT_VERIFY = 0, 2, 3, 4


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = 0
    n: int | None = None
    type_spec: cf.TypeSpec | None = None
    k: int | None = None
    m: int | None = None
    output: str | None = None
    svg: str | None = None
    format: str = "json"
    extra: dict = field(default_factory=dict)


def default_seed() -> int:
    raw = os.environ.get("PENTAGRAM_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"PENTAGRAM_SEED must be an integer, got {raw!r}")


def _emit(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _load_json(path: str):
    try:
        raw = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}")


def _load_polygon(path: str) -> TwistedPolygon:
    """A polygon JSON, or the last polygon of an iterate trace."""
    d = _load_json(path)
    if isinstance(d, dict) and "trace" in d:
        if not d["trace"]:
            raise InputError("empty trace")
        d = d["trace"][-1]
    try:
        return polygon_from_json(d)
    except (KeyError, TypeError, ValueError, DegenerateError) as e:
        raise InputError(f"invalid polygon JSON: {e}")


# ---------------------------------------------------------------------------
# commands

def cmd_gen(cfg: RunConfig) -> tuple[dict, int]:
    n = cfg.n
    if n is None or n < 5:
        raise InputError("n must be at least 5")
    indexing = cfg.extra.get("indexing", INTEGER)
    if cfg.extra.get("regular"):
        if cfg.type_spec and cfg.type_spec.kind != "none":
            raise InputError("--regular takes no singularity type")
        return polygon_to_json(regular_polygon(n)), EXIT_OK
    src = RandomSource(cfg.seed, stream="gen")
    closed = cfg.extra.get("closed", False)
    members = cfg.type_spec.members(n) if cfg.type_spec else []
    try:
        if members:
            A = random_polygon_in_XS(n, members, src, indexing=indexing, closed=closed)
        else:
            A = random_polygon(n, indexing, src, closed=closed)
    except (DegenerateError, ValueError) as e:
        raise InputError(f"unsatisfiable: {e}")
    return polygon_to_json(A), EXIT_OK


def cmd_iterate(cfg: RunConfig, A: TwistedPolygon) -> tuple[dict, list, int]:
    """Trace JSON and the list of polygons reached."""
    k = cfg.k if cfg.k is not None else 1
    if k < 0:
        raise InputError("k must be nonnegative")
    polys = [A]
    failure = None
    for step in range(1, k + 1):
        try:
            polys.append(pentagram(polys[-1]))
        except SingularError as e:
            failure = {"step": step, "index": format_scalar(e.index) if e.index is not None else None,
                       "message": str(e)}
            break
    out = {"trace": [polygon_to_json(P) for P in polys], "steps": len(polys) - 1}
    if A.indexing == INTEGER:
        y = y_params(A)
        diag = {}
        F = cf.FTable(y, k)
        for q in range(1, k + 1):
            bad = cf.singular_denominators(y, q, F)
            if bad:
                diag[str(q)] = [f"F[{p},{r}]" for p, r in bad]
        out["vanishing_denominators"] = diag
    if failure:
        out["singular"] = failure
    return out, polys, EXIT_OK


def _type_report(A: TwistedPolygon):
    S = singularity_type(A)
    st = cf.classify(S, A.n)
    return S, st


def cmd_desing(cfg: RunConfig, A: TwistedPolygon) -> tuple[dict, list[str], int]:
    messages = []
    S, st = _type_report(A)
    out = {"type": sorted(format_scalar(s) for s in S), "classification": st.classification.value}
    m = cfg.m
    try:
        pred = cf.predict_confinement(st)
    except cf.OutOfTheoremRange as e:
        pred = cf.Prediction("experimental", note=str(e))
    out["prediction"] = {"kind": pred.kind, "first_regular_step": pred.first_regular_step, "note": pred.note}
    if pred.kind == "exceptional":
        messages.append(f"exceptional classification {st.classification.value}: {pred.note}")
        return out, messages, EXIT_EXCEPTIONAL
    if m is None:
        m = pred.first_regular_step
        if pred.kind == "experimental" or m is None:
            if A.indexing != INTEGER:
                raise InputError("experimental step detection needs an integer-indexed polygon; pass --m")
            m = cf.observed_first_regular_step(A, 2 * A.n + 2)
        if m is None:
            raise InputError("no regular step found; pass --m")
    out["m"] = m
    trace = MainTrace()
    try:
        result = desingularize(A, m, seed=cfg.seed, trace=trace)
    except DegenerateError as e:
        raise InputError(f"construction failed: {e}")
    out["iterates"] = [decorated_to_json(D) for D in trace.iterates]
    out["random_slots"] = [{"step": s, "kind": kind, "index": format_scalar(i)} for s, kind, i in trace.random_slots]
    out["result"] = polygon_to_json(result)
    code = EXIT_OK
    if cfg.extra.get("verify"):
        oracle = DeformationOracle(A, src=RandomSource(cfg.seed, stream="oracle")).iterate(m)
        same = result.same_as(oracle, sides=True)
        out["main_equals_oracle"] = same
        messages.append(f"main == oracle: {str(same).lower()}")
        if not same:
            code = EXIT_VERIFY
    K = cfg.extra.get("verify_seeds") or 0
    if K > 1:
        agree = all(desingularize(A, m, seed=cfg.seed + s).same_as(result, sides=True) for s in range(1, K))
        out["seeds_agree"] = agree
        messages.append(f"seeds agree ({K} seeds): {str(agree).lower()}")
        if not agree:
            code = EXIT_VERIFY
    return out, messages, code


def cmd_verify(name: str, opts: dict):
    from .suites import SUITES, run_suite
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    res = run_suite(name, **opts)
    return res, (EXIT_OK if res.ok else EXIT_VERIFY)


# ---------------------------------------------------------------------------
# argument parsing

def _type_arg(text: str) -> cf.TypeSpec:
    try:
        return cf.parse_type_spec(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pentaconf", description="Pentagram map singularities and their desingularization.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random (singular) twisted polygon")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--type", type=_type_arg, default=None, help='e.g. "step2:i=4,m=2", "complement:i=7", "set:{3,4,6}"')
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--indexing", choices=(INTEGER, HALF), default=INTEGER)
    g.add_argument("--closed", action="store_true", help="identity monodromy")
    g.add_argument("--regular", action="store_true", help="rounded regular n-gon instead of a random one")
    g.add_argument("-o", "--output")

    it = sub.add_parser("iterate", help="apply the pentagram map k times")
    it.add_argument("input", help="polygon or trace JSON ('-' for stdin)")
    it.add_argument("--k", type=int, default=1)
    it.add_argument("--svg", help="also write the nested polygons as SVG")
    it.add_argument("--format", choices=("json", "svg", "text"), default="json")
    it.add_argument("-o", "--output")

    d = sub.add_parser("desing", help="desingularized iterate through decorated polygons")
    d.add_argument("input")
    d.add_argument("--m", type=int, default=None, help="number of steps (default: predicted first regular step)")
    d.add_argument("--seed", type=int, default=None)
    d.add_argument("--verify", action="store_true", help="compare with the deformation oracle")
    d.add_argument("--verify-seeds", type=int, default=0, metavar="K", help="rerun with K seeds and compare")
    d.add_argument("--svg")
    d.add_argument("--format", choices=("json", "text"), default="json")
    d.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite")
    v.add_argument("--kmax", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--instances", type=int)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--jobs", type=int)
    v.add_argument("--json", action="store_true", help="machine-readable result")

    r = sub.add_parser("report", help="figures (PNG/SVG) and tables (CSV/TSV)")
    r.add_argument("--out", required=True)
    r.add_argument("--seed", type=int, default=None)
    return p


def _seed(args) -> int:
    return args.seed if getattr(args, "seed", None) is not None else default_seed()


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def _dispatch(args) -> int:
    if args.command == "gen":
        cfg = RunConfig(seed=_seed(args), n=args.n, type_spec=args.type, output=args.output,
                        extra={"indexing": args.indexing, "closed": args.closed, "regular": args.regular})
        out, code = cmd_gen(cfg)
        _emit(_dumps(out), cfg.output)
        return code

    if args.command == "iterate":
        cfg = RunConfig(k=args.k, output=args.output, svg=args.svg, format=args.format)
        A = _load_polygon(args.input)
        out, polys, code = cmd_iterate(cfg, A)
        svg = svg_document(polys, title=f"{len(polys) - 1} pentagram iterates") if (args.svg or args.format == "svg") else None
        if svg is not None and args.svg:
            Path(args.svg).write_text(svg)
        if args.format == "svg":
            _emit(svg, cfg.output)
        elif args.format == "text":
            lines = [f"steps completed: {out['steps']}"]
            if "singular" in out:
                s = out["singular"]
                lines.append(f"singular at step {s['step']}, index {s['index']}: {s['message']}")
            for q, fs in out.get("vanishing_denominators", {}).items():
                lines.append(f"T^{q}: vanishing {' '.join(fs)}")
            _emit("\n".join(lines) + "\n", cfg.output)
        else:
            _emit(_dumps(out), cfg.output)
        if "singular" in out:
            s = out["singular"]
            print(f"singular at step {s['step']}, index {s['index']}", file=sys.stderr)
        return code

    if args.command == "desing":
        cfg = RunConfig(seed=_seed(args), m=args.m, output=args.output, format=args.format,
                        extra={"verify": args.verify, "verify_seeds": args.verify_seeds})
        A = _load_polygon(args.input)
        out, messages, code = cmd_desing(cfg, A)
        for msg in messages:
            print(msg, file=sys.stderr)
        if code == EXIT_EXCEPTIONAL:
            return code
        if args.svg:
            polys = [A, polygon_from_json(out["result"])]
            Path(args.svg).write_text(svg_document(polys, title=f"desingularized T^{out['m']}"))
        if args.format == "text":
            _emit(f"type {out['type']} ({out['classification']}), m = {out['m']}, "
                  f"{len(out['random_slots'])} random slots\n", cfg.output)
        else:
            _emit(_dumps(out), cfg.output)
        return code

    if args.command == "verify":
        opts = {k: getattr(args, k) for k in ("kmax", "n", "instances", "jobs") if getattr(args, k) is not None}
        opts["seed"] = _seed(args)
        res, code = cmd_verify(args.suite, opts)
        if args.json:
            print(json.dumps({"suite": res.name, "status": res.status, "counts": res.counts,
                              "lines": res.lines, "rows": res.rows}, default=str, indent=2))
        else:
            print(res.text())
        return code

    if args.command == "report":
        from .report import write_report
        for path in write_report(Path(args.out), seed=_seed(args)):
            print(path)
        return EXIT_OK
    raise InputError(f"unknown command {args.command}")


def main(argv: list[str] | None = None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
