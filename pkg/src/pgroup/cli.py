"""``pgroup`` command line: info, noninner, corpus, parse.

Exit codes: 0 success, 1 I/O or parse error, 2 precondition violation,
3 theorem violation (a certificate or oracle check that does not hold).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import corpus
from .construction import THEOREM_VIOLATION, construct_noninner
from .errors import GroupError, NotPGroup, PreconditionViolated, TheoremViolation
from .oracle import enumerate_automorphisms, oracle_report
from .pc import check_consistency, load_presentation, to_cayley
from .structure import profile
from .table import load_cayley, save_cayley

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_THEOREM = 0, 1, 2, 3


class LoadError(Exception):
    pass


def load_group(source: str, fmt: str | None = None):
    """Resolve ``corpus:<name>``, ``pc:<path>``, ``cayley:<path>`` or a bare path."""
    kind, _, rest = source.partition(":")
    if kind not in ("corpus", "pc", "cayley") or not rest:
        kind, rest = fmt or ("cayley" if source.endswith(".json") else "pc"), source
    try:
        if kind == "corpus":
            return corpus.get(rest).group()
        if kind == "pc":
            return to_cayley(load_presentation(rest))[0]
        return load_cayley(rest)
    except KeyError as exc:
        raise LoadError(str(exc.args[0])) from None
    except (OSError, json.JSONDecodeError) as exc:
        raise LoadError(f"{rest}: {exc}") from None
    except GroupError as exc:
        raise LoadError(f"{rest}: {type(exc).__name__}: {exc}") from None


def _dump(obj):
    return json.dumps(obj, indent=2)


def cmd_info(args) -> int:
    G = load_group(args.source, args.format)
    try:
        prof = profile(G)
    except NotPGroup as exc:
        print(f"error: NotPGroup: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    data = {"source": args.source, **prof.to_json()}
    if args.json:
        print(_dump(data))
        return EXIT_OK
    print(f"group          {args.source}")
    print(f"order          {prof.order} = {prof.prime}^{_log(prof.order, prof.prime)}")
    print(f"class          {prof.nilpotency_class}")
    print(f"|G'|           {len(prof.derived)} ({'cyclic' if prof.derived_cyclic else 'not cyclic'})")
    print(f"n              {prof.n}")
    print(f"|Z(G)|         {len(prof.center)} ({'cyclic' if prof.center_cyclic else 'not cyclic'})")
    print(f"|Phi(G)|       {len(prof.frattini)}")
    print(f"|Omega1(Z(G))| {len(prof.omega1_center)}")
    print(f"exp(G/Z(G))    {prof.quotient_exponent}")
    print(f"C(Z(Phi))=Phi  {prof.ds_condition}")
    print(f"(a, b)         {prof.commutator_pair}")
    return EXIT_OK


def _log(n, p):
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def _noninner_payload(G, source, verify_oracle):
    cert = construct_noninner(G)
    data = {"source": source, "certificate": cert.to_json()}
    ok = cert.accepted and THEOREM_VIOLATION not in cert.anomalies
    if verify_oracle:
        p = profile(G).prime
        enum = enumerate_automorphisms(G, p=p)
        rep = oracle_report(source, G, p, enum)
        rep["pipeline_member"] = cert.automorphism in enum
        data["oracle"] = rep
        ok = ok and rep["complete"] and rep["witness_count"] > 0 and rep["pipeline_member"]
    return cert, data, ok


def cmd_noninner(args) -> int:
    G = load_group(args.source, args.format)
    try:
        cert, data, ok = _noninner_payload(G, args.source, args.verify_oracle)
    except PreconditionViolated as exc:
        print(f"error: PreconditionViolated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except TheoremViolation as exc:
        print(f"THEOREM_VIOLATION: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    if args.json:
        print(_dump(data))
    else:
        c = data["certificate"]
        print(f"group      {args.source} (order {G.order})")
        print(f"case       {c['case_tag']}")
        print(f"fixes      {c['fixed_set']}")
        print("witnesses  " + ", ".join(f"{k}={v}" for k, v in c["witnesses"].items() if k != "M"))
        for flag, val in c["verified"].items():
            print(f"  {flag:<20} {'ok' if val else 'FAILED'}")
        if c["anomalies"]:
            print(f"anomalies  {', '.join(c['anomalies'])}")
        if "oracle" in data:
            o = data["oracle"]
            print(f"oracle     |Aut|={o['aut_count']} |Inn|={o['inn_count']} "
                  f"witnesses={o['witness_count']} member={o['pipeline_member']} "
                  f"complete={o['complete']}")
    return EXIT_OK if ok else EXIT_THEOREM


def cmd_corpus(args) -> int:
    if not args.run_all:
        rows = [{"name": e.name, "source": e.source, "description": e.description,
                 "expected": e.expected} for e in corpus.entries()]
        if args.json:
            print(_dump({"entries": rows}))
        else:
            for e in corpus.entries():
                print(f"{e.name:<16} {e.expected.get('order', '?'):>4}  {e.description}")
        return EXIT_OK
    rows, timings = [], []
    for entry in corpus.entries():
        t0 = time.perf_counter()
        rows.append(corpus.run_entry(entry))
        timings.append(time.perf_counter() - t0)
    ok = all(r["pass"] for r in rows)
    if args.json:
        print(_dump({"rows": rows, "all_pass": ok}))
    else:
        print(f"{'name':<16} {'order':>5} {'p':>2} {'case':<16} {'fixed':<17} {'flags':<5} "
              f"{'oracle':<14} {'time':>7}  result")
        for r, t in zip(rows, timings):
            flags = "ok" if r["verified"] and all(r["verified"].values()) else "-"
            if r["oracle"]:
                o = r["oracle"]
                orc = f"{o['witness_count']}/{o['aut_count']}" + ("" if o["pipeline_member"] else "!")
            else:
                orc = "n/a"
            print(f"{r['name']:<16} {r['order'] or '?':>5} {r['prime'] or '?':>2} "
                  f"{r['case_tag'] or '-':<16} {r['fixed_set'] or '-':<17} {flags:<5} "
                  f"{orc:<14} {t:6.2f}s  {'PASS' if r['pass'] else 'FAIL'}")
            for m in r["mismatches"]:
                print(f"    mismatch: {m}")
        covered = sorted({r["case_tag"] for r in rows if r["case_tag"]})
        print(f"cases exercised: {', '.join(covered)}")
        print(f"total {sum(timings):.2f}s, {'all pass' if ok else 'FAILURES'}")
    return EXIT_OK if ok else EXIT_THEOREM


def cmd_parse(args) -> int:
    try:
        P = load_presentation(args.file)
        report = check_consistency(P)
    except OSError as exc:
        raise LoadError(f"{args.file}: {exc}") from None
    except GroupError as exc:
        raise LoadError(f"{args.file}: {type(exc).__name__}: {exc}") from None
    data = {"file": str(args.file), "prime": P.prime, "generators": list(P.generators),
            "relative_orders": list(P.relative_orders), "consistent": True,
            "order": report.order, "method": report.method}
    if args.emit_cayley:
        G, _ = to_cayley(P)
        save_cayley(G, args.emit_cayley)
        data["emitted"] = str(args.emit_cayley)
    if args.json:
        print(_dump(data))
    else:
        print(f"{args.file}: consistent, order {report.order} ({report.method})")
        if args.emit_cayley:
            print(f"wrote Cayley table to {args.emit_cayley}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgroup", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def source_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("source", help="corpus:<name>, pc:<path>, cayley:<path> or a path")
        sp.add_argument("--format", choices=["pc", "cayley"], help="loader for a bare path")
        sp.add_argument("--json", action="store_true")
        return sp

    source_cmd("info", "print the structural profile of a group").set_defaults(func=cmd_info)
    sp = source_cmd("noninner", "construct and certify a noninner automorphism of order p")
    sp.add_argument("--verify-oracle", action="store_true",
                    help="also enumerate Aut(G) and check the certificate against it")
    sp.set_defaults(func=cmd_noninner)

    sp = sub.add_parser("corpus", help="list or run the built-in corpus")
    sp.add_argument("--run-all", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("parse", help="parse and consistency-check a presentation file")
    sp.add_argument("file", type=Path)
    sp.add_argument("--emit-cayley", type=Path, metavar="OUT")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_parse)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
