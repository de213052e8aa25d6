"""Command-line front end.

Exit codes: 0 success, 1 a checked claim failed, 2 the input did not parse,
3 a size limit was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .bounds import MAX_LP_VERTICES, MAX_MINRANK_ARCS, BoundError, mais_with_witness, minrank2
from .bounds import EntropicLP
from .codes import CodeError, concatenate, verify_decodable
from .confusion import ConfusionError, binary_restricted_length, build_confusion, chromatic_number
from .digraph import Digraph, enumerate_nonisomorphic, format_edge_list, members, parse_edge_lists

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_LIMIT = 0, 1, 2, 3
JOBS_ENV = "INDEXCODING_JOBS"


def read_graph(source: str) -> Digraph:
    """A file path, ``-`` for stdin, or an inline ``n=3;1->2->3`` record.

    Files and stdin use the strict edge-list format; inline records also
    accept chains such as ``1<->2<->3``.
    """
    if source == "-":
        text = sys.stdin.read()
    elif os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    else:
        head, _, rest = source.partition(";")
        m = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*", head)
        if not m:
            raise ValueError(f"expected 'n=<k>;<arcs>', got {source!r}")
        return Digraph.parse(int(m.group(1)), rest)
    graphs = parse_edge_lists(text)
    if len(graphs) != 1:
        raise ValueError(f"expected one graph, found {len(graphs)}")
    return graphs[0]


def _fmt_frac(x: Fraction) -> str:
    return str(x) if x.denominator != 1 else str(x.numerator)


def analysis(g: Digraph, m: int, certificates: bool, t: int | None = None) -> tuple[dict, int]:
    """Report dict and exit status; ``t`` stretches the code by time-sharing."""
    from .catalog.reference import classify_gs
    from .catalog.survey import construct

    out: dict = {"n": g.n, "arcs": g.arc_string()}
    status = EXIT_OK
    mw = mais_with_witness(g)
    out["mais"] = mw.size
    out["mais_witness"] = [v + 1 for v in members(mw.witness)]
    mr = None
    if g.arc_count <= MAX_MINRANK_ARCS:
        res = minrank2(g, lower=mw.size)
        mr = res.rank
        out["minrank2"] = mr
        if certificates:
            out["fitting_matrix"] = res.dense()
    else:
        out["minrank2"] = None
        out["limits"] = [f"minrank skipped: more than {MAX_MINRANK_ARCS} arcs"]
    lp = None
    if g.n <= MAX_LP_VERTICES:
        sol = EntropicLP(g).solve()
        lp = sol.value
        out["shannon"] = _fmt_frac(lp)
        if certificates:
            out["lp_dual"] = {k: _fmt_frac(v) for k, v in sorted(sol.dual.items())}
    else:
        out["shannon"] = None
        out.setdefault("limits", []).append(f"entropic LP skipped: more than {MAX_LP_VERTICES} vertices")
    hit = classify_gs(g)
    out["gs"] = hit is not None
    if hit is not None:
        out["family"] = hit.family
    try:
        name, code = construct(g, mw.size, hit is not None)
    except CodeError as exc:
        out["construction"] = None
        out["note"] = str(exc)
        return out, status
    if t is not None:
        if t % code.t:
            raise ValueError(f"t={t} is not a multiple of the constructed code's t={code.t}")
        stretched = code
        for _ in range(t // code.t - 1):
            stretched = concatenate(stretched, code)
        code = stretched
    out["construction"] = name
    out["code"] = str(code)
    out["code_json"] = code.to_json()
    out["t"] = code.t
    out["normalized_length"] = _fmt_frac(code.normalized_length)
    try:
        ok = verify_decodable(g, code, m)
    except CodeError as exc:
        out["decodes"] = None
        out.setdefault("limits", []).append(str(exc))
        return out, EXIT_LIMIT
    out["decodes"] = {f"m={m},t={code.t}": ok}
    if not ok:
        status = EXIT_FAIL
    if lp is not None and lp == code.normalized_length:
        out["rate"] = _fmt_frac(lp)
    return out, status


def cmd_analyze(args) -> int:
    g = read_graph(args.graph)
    report, status = analysis(g, args.m, args.certificates, args.t)
    if args.json:
        print(json.dumps(report, sort_keys=True))
        return status
    print(f"graph: n={report['n']} arcs={report['arcs'] or '(none)'}")
    print(f"mais={report['mais']} witness={report['mais_witness']}")
    print(f"minrank2={report['minrank2']}")
    print(f"shannon={report['shannon']}")
    print(f"gs={'yes (family ' + report['family'] + ')' if report['gs'] else 'no'}")
    if report.get("construction"):
        print(f"construction={report['construction']} t={report['t']} "
              f"normalized_length={report['normalized_length']}")
        print(f"code={report['code']}")
        for k, v in (report.get("decodes") or {}).items():
            print(f"decodes[{k}]={'yes' if v else 'NO'}")
    elif report.get("note"):
        print(f"construction=none ({report['note']})")
    if "rate" in report:
        print(f"r={report['rate']}")
    for k in ("fitting_matrix", "lp_dual"):
        if k in report:
            print(f"{k}={json.dumps(report[k])}")
    for note in report.get("limits", []):
        print(f"limit: {note}")
    return status


def cmd_survey(args) -> int:
    from .catalog.survey import full_survey, summarize, write_ndjson

    reports = full_survey(args.n, jobs=args.jobs, strict=False)
    if args.out:
        write_ndjson(reports, args.out)
    s = summarize(reports)
    print(s.line())
    print(f"with_null_graph: classes={s.classes + 1} r_eq_mais={s.r_eq_mais + 1} gs={s.gs}")
    for n in sorted(s.per_n):
        print(f"n={n} classes={s.per_n[n]} acyclic_or_perfect={s.known_before[n]}")
    if 5 in s.per_n:
        print("n=5 strata " + " ".join(f"{k}={v}" for k, v in s.strata_5.items()))
        print("n=5 mais-split " + " ".join(f"{k}={v}" for k, v in s.alt_split_5.items()))
    print(f"failures={s.failures}")
    return EXIT_OK if s.failures == 0 else EXIT_FAIL


def cmd_confusion(args) -> int:
    g = read_graph(args.graph)
    cg = build_confusion(g, args.m, args.t)
    res = chromatic_number(cg, budget=args.budget)
    if args.dimacs:
        with open(args.dimacs, "w") as fh:
            fh.write(cg.to_dimacs())
    import math

    line = f"{cg.vertex_count} vertices, {cg.edge_count} edges, "
    if res.exact:
        rate = math.log(res.value) / math.log(args.m ** args.t)
        line += f"chi={res.value}, r={rate:.4f}"
        if (args.m, args.t) == (2, 1):
            line += f", binary length={binary_restricted_length(g, budget=args.budget)}"
    else:
        line += f"chi in [{res.lower}, {res.upper}] (search budget exhausted, interval only)"
    print(line)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    graphs = enumerate_nonisomorphic(args.n)
    if args.list:
        for g in graphs:
            sys.stdout.write(format_edge_list(g) + "\n")
    print(f"n={args.n} classes={len(graphs)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="indexcoding", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="bounds and an optimal code for one graph")
    a.add_argument("graph", help="edge-list file, '-' for stdin, or inline 'n=3;1->2,2->1'")
    a.add_argument("--m", type=int, default=2, help="ring size for the decodability check")
    a.add_argument("--t", type=int, default=None, help="message length; the code is repeated by time-sharing")
    a.add_argument("--certificates", action="store_true", help="print fitting matrix and LP duals")
    a.add_argument("--json", action="store_true", help="emit one JSON object")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("survey", help="every class up to n vertices")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--out", help="NDJSON report file")
    s.add_argument("--jobs", type=int, default=int(os.environ.get(JOBS_ENV, "1")),
                   help=f"worker processes (default ${JOBS_ENV} or 1)")
    s.set_defaults(func=cmd_survey)

    c = sub.add_parser("confusion", help="confusion graph and chromatic number")
    c.add_argument("graph")
    c.add_argument("m", type=int)
    c.add_argument("t", type=int)
    c.add_argument("--budget", type=int, default=2_000_000, help="search nodes before giving up")
    c.add_argument("--dimacs", help="write the graph in DIMACS edge format")
    c.set_defaults(func=cmd_confusion)

    e = sub.add_parser("enumerate", help="one digraph per isomorphism class")
    e.add_argument("n", type=int)
    e.add_argument("--list", action="store_true", help="print the graphs as edge lists")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if getattr(args, "m", 2) < 2 or (getattr(args, "t", None) or 1) < 1:
        print("error: need m >= 2 and t >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (ConfusionError, BoundError) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        if "limited to" in str(exc) or "exceeds" in str(exc):
            print(f"limit: {exc}", file=sys.stderr)
            return EXIT_LIMIT
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
