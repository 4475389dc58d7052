"""Command line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from ncdiv.algebra import (AlgebraError, FreeAlgebra, TraceElement, TraceTensor,
                           format_coeff)
from ncdiv.brackets import DoubleBracket, PairingTable, derivation_from_ham
from ncdiv.calculus import Derivation, DRElement
from ncdiv.divergence import (Connection, div_k, make_nabla_C, make_nabla_W,
                              setting_for)
from ncdiv.parsing import parse_trace
from ncdiv.ribbon import RibbonGraph, bar_graph, graph_operate, graph_validate, make_Lk
from ncdiv import suites


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from None


def render_key(value, key) -> str:
    alg = value.algebra
    if isinstance(value, TraceTensor):
        return " (x) ".join(alg.word_str(w) for w in key)
    if isinstance(value, TraceElement):
        return alg.word_str(key)
    if isinstance(value, DRElement):
        return value._render(key).strip("|")
    return str(key)


def term_lines(value) -> List[str]:
    """One ``coefficient term`` line per term, in canonical order."""
    return [f"{format_coeff(c)} {render_key(value, k)}" for k, c in value.sorted_items()]


def value_json(value):
    return {"terms": [[format_coeff(c), render_key(value, k)] for k, c in value.sorted_items()],
            "text": str(value)}


# ---------------------------------------------------------------------------
# input resolution


def resolve_algebra(args, fallback: Optional[FreeAlgebra] = None) -> FreeAlgebra:
    if getattr(args, "algebra", None):
        return FreeAlgebra.from_json(_read_json(args.algebra))
    if getattr(args, "generators", None):
        names = args.generators.split(",") if "," in args.generators else list(args.generators)
        return FreeAlgebra(args.kind, names)
    if fallback is not None:
        return fallback
    raise UsageError("no algebra given; use --algebra FILE or --generators NAMES")


def resolve_connection(spec: Optional[str], alg: FreeAlgebra) -> Connection:
    if spec is None:
        return make_nabla_C(alg) if alg.is_group else make_nabla_W(alg)
    if spec == "nabla_W":
        return make_nabla_W(alg)
    if spec == "nabla_C":
        return make_nabla_C(alg)
    return Connection.from_json(_read_json(spec), alg)


def load_pairing(path: str, alg: Optional[FreeAlgebra]):
    data = _read_json(path)
    if alg is None:
        if "generators" in data:
            alg = FreeAlgebra("tensor", data["generators"])
        else:
            seen = []
            for key in data.get("values", {}):
                for n in key.split(","):
                    n = n.strip()
                    if n not in seen:
                        seen.append(n)
            alg = FreeAlgebra("tensor", seen)
    return PairingTable.from_json(data, alg)


# ---------------------------------------------------------------------------
# commands


def cmd_delta(args) -> dict:
    if bool(args.words) == bool(args.derivations):
        raise UsageError("give exactly one of --words or --derivations")
    if args.action != "default":
        raise UsageError("only the default action is available from the command line")
    pi = None
    alg = None
    if args.pairing:
        pi = load_pairing(args.pairing, resolve_algebra(args, None) if args.generators or args.algebra else None)
        alg = pi.algebra
    elif args.bracket:
        pi = DoubleBracket.from_json(_read_json(args.bracket))
        alg = pi.algebra
    elif args.words and not (args.algebra or args.generators):
        pi = suites.load_surface_bracket()
        alg = pi.algebra
    else:
        alg = resolve_algebra(args)
    conn = resolve_connection(args.connection, alg)
    setting = setting_for(conn)
    if args.derivations:
        fs = [Derivation.from_json(alg, _read_json(p)) for p in args.derivations]
        inputs = list(args.derivations)
    else:
        if pi is None:
            raise UsageError("--words needs --pairing or --bracket (or the bundled surface)")
        xs = [parse_trace(w, alg) for w in args.words]
        fs = [derivation_from_ham(pi, x) for x in xs]
        inputs = [str(x) for x in xs]
    value = div_k(setting, fs)
    return {"command": "delta", "k": len(fs), "connection": conn.kind,
            "inputs": inputs, "value": value, "passed": True}


def load_graph(spec: str) -> RibbonGraph:
    if spec == "bar":
        return bar_graph()
    if spec.startswith("L") and spec[1:].isdigit():
        return make_Lk(int(spec[1:]))
    return RibbonGraph.from_json(_read_json(spec))


def cmd_ribbon(args) -> dict:
    graph = load_graph(args.graph)
    diag = graph_validate(graph)
    if not diag["valid"]:
        return {"command": "ribbon", "diagnostics": diag, "passed": False}
    alg = resolve_algebra(args) if (args.algebra or args.generators) else None
    p = load_pairing(args.pairing, alg)
    if not p.is_skew():
        raise UsageError("the ribbon graph operation needs a skew-symmetric pairing")
    ws = [parse_trace(w, p.algebra) for w in args.words]
    if len(ws) != len(graph.vertices):
        raise UsageError(f"graph has {len(graph.vertices)} vertices but {len(ws)} words were given")
    value = graph_operate(graph, p, ws)
    return {"command": "ribbon", "diagnostics": diag, "inputs": [str(w) for w in ws],
            "value": value, "passed": True}


def cmd_verify(args) -> dict:
    suite = args.suite
    if suite not in suites.SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {sorted(suites.SUITES)}")
    fn = suites.SUITES[suite]
    kw = {"seed": args.seed}
    if args.trials is not None:
        kw["trials"] = args.trials
    if suite in ("ribbon-equivalence", "cocycle", "fuks"):
        kw["k"] = args.k if args.k is not None else 3
        if suite == "ribbon-equivalence" and kw["k"] < 1:
            raise UsageError("--k must be at least 1")
    if suite == "cocycle":
        kw["connection"] = args.connection or "nabla_W"
    if args.rank is not None:
        if args.rank < 1:
            raise UsageError("--rank must be at least 1")
        if suite in ("appendix", "cocycle"):
            kw["rank"] = args.rank
        elif suite == "mc":
            kw["max_rank"] = args.rank
    report = fn(**kw)
    report["command"] = "verify"
    return report


def cmd_table1(args) -> dict:
    report = suites.table1_report()
    report["command"] = "table1"
    return report


def cmd_experiment(args) -> dict:
    pairs = None
    if args.pairs:
        pairs = []
        for item in args.pairs:
            if "," not in item:
                raise UsageError(f"pairs are written x,y; got {item!r}")
            x, y = item.split(",", 1)
            pairs.append((x, y))
    report = suites.symmetric_connection_experiment(pairs)
    report["command"] = "experiment-symmetric-connection"
    report["passed"] = True
    return report


# ---------------------------------------------------------------------------
# output


def _jsonable(obj):
    if isinstance(obj, (TraceTensor, TraceElement, DRElement)):
        return value_json(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def render_text(report: dict) -> str:
    lines = []
    cmd = report.get("command")
    if cmd in ("delta", "ribbon"):
        if "value" in report:
            for x in report.get("inputs", []):
                lines.append(f"# input {x}")
            body = term_lines(report["value"])
            lines.extend(body or ["0"])
        else:
            lines.append("invalid graph")
            lines.extend(f"  {e}" for e in report["diagnostics"]["errors"])
    elif cmd == "table1":
        for r in report["rows"]:
            status = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{status} delta2({r['x']}, {r['y']}) = {r['got']}")
            if not r["passed"]:
                lines.append(f"     expected {r['expected']}")
            if r.get("note"):
                lines.append(f"     ({r['note']})")
        lines.append("table1: " + ("PASS" if report["passed"] else "FAIL"))
    elif cmd == "verify":
        lines.append(f"suite {report['suite']} {json.dumps(report['params'], sort_keys=True)}")
        for c in report["checks"]:
            status = "PASS" if c["passed"] else "FAIL"
            extra = f", nontrivial={c['nontrivial']}" if "nontrivial" in c else ""
            lines.append(f"{status} {c['name']} (cases={c['cases']}{extra})")
            for n in c.get("notes", []):
                lines.append(f"     note: {n}")
            for ce in c.get("counterexamples", []):
                lines.append(f"     counterexample: {json.dumps(ce, sort_keys=True)}")
        lines.append(f"{report['suite']}: " + ("PASS" if report["passed"] else "FAIL"))
    elif cmd == "experiment-symmetric-connection":
        for r in report["rows"]:
            kind = ("symmetric" if r["symmetric"] else
                    "antisymmetric" if r["antisymmetric"] else "neither")
            lines.append(f"delta2({r['x']}, {r['y']}): {kind}")
        lines.append(f"note: {report['note']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="ncdiv", parents=[common],
                                     description="k-divergences on free algebras, ribbon graph "
                                                 "operations and verification suites")
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_flags(p):
        p.add_argument("--algebra", help="algebra JSON file")
        p.add_argument("--generators", help="generator names, e.g. uvw or al,be")
        p.add_argument("--kind", choices=("tensor", "group"), default="tensor")

    for name in ("delta", "divk"):
        p = sub.add_parser(name, parents=[common], help="evaluate Div_k / delta_k")
        algebra_flags(p)
        p.add_argument("--connection", help="nabla_W, nabla_C or a connection JSON file")
        p.add_argument("--action", default="default")
        p.add_argument("--derivations", nargs="+", help="derivation JSON files")
        p.add_argument("--words", nargs="+", help="cyclic words fed through Ham")
        p.add_argument("--pairing", help="scalar pairing JSON file (tensor algebras)")
        p.add_argument("--bracket", help="double bracket JSON file")
        p.set_defaults(func=cmd_delta)

    p = sub.add_parser("ribbon", parents=[common], help="apply a ribbon graph")
    algebra_flags(p)
    p.add_argument("--graph", required=True, help="graph JSON file, bar, or L<k>")
    p.add_argument("--pairing", required=True)
    p.add_argument("--words", nargs="+", required=True)
    p.set_defaults(func=cmd_ribbon)

    p = sub.add_parser("verify", parents=[common], help="run a randomized suite")
    p.add_argument("suite", help=", ".join(sorted(suites.SUITES)))
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--connection", choices=("nabla_W", "nabla_C"))
    p.add_argument("--rank", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table1", parents=[common], help="reproduce the delta_2 table")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("experiment-symmetric-connection", parents=[common],
                       help="symmetry of delta_2 values for the surface action")
    p.add_argument("--pairs", nargs="+", help="pairs x,y of cyclic words")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (UsageError, AlgebraError, suites.ConfigError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"ncdiv: error: {msg}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return 0 if report.get("passed", True) else 1


if __name__ == "__main__":
    sys.exit(main())
