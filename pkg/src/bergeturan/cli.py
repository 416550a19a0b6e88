"""Command-line driver.

Exit codes: 0 success, 1 domain error (invalid parameters, failed
verification), 2 budget exhausted (partial output flagged), 3 I/O or
parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bergesearch, classifier, constructions, hypercore, oracle
from .errors import BudgetExhausted, DomainError, ParseError

ENV_BUDGET = "BTL_BUDGET_NODES"


def _default_budget(args) -> int | None:
    if args.budget_nodes is not None:
        return args.budget_nodes
    env = os.environ.get(ENV_BUDGET)
    return int(env) if env else None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_hg(path: str) -> hypercore.Hypergraph:
    return hypercore.read_hg(path)


def _params_from(args) -> constructions.ConstructionParams:
    return constructions.ConstructionParams(
        n=args.n, a=args.a, bs=tuple(args.b or ()), r=args.r)


def _cmd_construct(args) -> int:
    p = _params_from(args)
    if args.plus is not None:
        if p.bs:
            raise DomainError("--plus applies to blockless parameters only")
        variant = constructions.make_plus_variant(args.n, args.a, args.r, args.plus)
        h = constructions.build_extremal_plus(variant)
        extra = list(variant.extra)
    else:
        h = constructions.build_extremal(p, permissive=args.permissive)
        extra = None
    base = args.out
    hypercore.write_hg(h, base + ".hg")
    header = {
        "schema_version": 1,
        "params": {"n": p.n, "a": p.a, "b": list(p.bs), "r": p.r},
        "partition": constructions.partition(p),
        "edge_count": h.m,
        "extra_edge": extra,
    }
    with open(base + ".json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(header, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
    sys.stdout.write(f"wrote {base}.hg ({h.m} edges) and {base}.json\n")
    return 0


def _cmd_count(args) -> int:
    p = _params_from(args)
    count = constructions.edge_count_formula(p)
    payload = {"schema_version": 1,
               "params": {"n": p.n, "a": p.a, "b": list(p.bs), "r": p.r},
               "edge_count": count}
    _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    return 0


def _cmd_longest_path(args) -> int:
    h = _load_hg(args.hypergraph)
    length, witness = bergesearch.longest_berge_path(h, budget=_default_budget(args))
    sys.stdout.write(f"longest berge path length: {length}\n")
    if witness is not None and args.witness:
        _emit(witness.to_json(), args.witness)
    return 0


def _cmd_longest_cycle(args) -> int:
    h = _load_hg(args.hypergraph)
    length, witness = bergesearch.longest_berge_cycle(
        h, min_length=args.min_length, budget=_default_budget(args))
    sys.stdout.write(f"longest berge cycle length: {length}\n")
    if witness is not None and args.witness:
        _emit(witness.to_json(), args.witness)
    return 0


def _cmd_check_free(args) -> int:
    h = _load_hg(args.hypergraph)
    witness = bergesearch.has_berge_path(h, args.k, budget=_default_budget(args))
    payload = {"schema_version": 1, "k": args.k, "free": witness is None,
               "witness": json.loads(witness.to_json()) if witness else None}
    _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    return 0


def _cmd_embed(args) -> int:
    h = _load_hg(args.hypergraph)
    bs = tuple(args.b or ())
    if args.pendant:
        cert = classifier.in_pendant_class(h, args.a, bs or None)
    elif args.plus:
        cert = classifier.embeds_in_core_plus(h, args.a)
    elif bs:
        cert = classifier.embeds_in_core_block(h, args.a, bs)
    else:
        cert = classifier.embeds_in_core(h, args.a)
    if cert is None:
        _emit(json.dumps({"certificate": None}, sort_keys=True) + "\n", args.out)
        sys.stdout.write("no embedding\n")
        return 0
    _emit(cert.to_json(), args.out)
    return 0


def _cmd_kernelize(args) -> int:
    h = _load_hg(args.hypergraph)
    res = classifier.kernelize(h, args.k, order=args.order,
                               budget=_default_budget(args))
    log_payload = {
        "schema_version": 1,
        "k": args.k,
        "order": args.order,
        "steps": [
            {"removed": sorted(st.removed), "incident_edges": st.incident_edges,
             "potential_before": st.potential_before,
             "potential_after": st.potential_after}
            for st in res.log
        ],
        "kernel_empty": res.kernel is None,
        "vertex_map": {str(k_): v for k_, v in sorted(res.vertex_map.items())},
    }
    base = args.out
    if res.kernel is not None:
        hypercore.write_hg(res.kernel, base + ".hg")
    with open(base + ".log.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(log_payload, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
    sys.stdout.write(
        f"kernelize: {len(res.log)} removals; kernel "
        f"{'empty' if res.kernel is None else f'{res.kernel.n} vertices, {res.kernel.m} edges'}\n")
    return 0


def _report_out(report: oracle.SearchReport, args) -> int:
    if args.format == "csv":
        text = oracle.CSV_HEADER + "\n" + report.csv_row() + "\n"
    else:
        text = report.to_json()
    _emit(text, args.out)
    return 2 if report.budget_exhausted else 0


def _cmd_turan(args) -> int:
    report = oracle.exconn_bruteforce(
        args.n, args.r, args.k, budget=_default_budget(args), workers=args.threads)
    return _report_out(report, args)


def _cmd_audit_lemma1(args) -> int:
    report = oracle.audit_lemma1(args.n, args.r, workers=args.threads)
    return _report_out(report, args)


def _cmd_verify_stability(args) -> int:
    report = oracle.verify_stability(
        args.n, args.r, args.k, budget=_default_budget(args), workers=args.threads)
    return _report_out(report, args)


def _cmd_verify(args) -> int:
    h = _load_hg(args.hypergraph)
    with open(args.artifact, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"artifact is not JSON: {exc}") from exc
    if isinstance(payload, dict) and "kind" in payload:
        witness = bergesearch.witness_from_json(text)
        ok = bergesearch.verify_witness(h, witness)
    elif isinstance(payload, dict) and "A" in payload:
        cert = classifier.certificate_from_json(text)
        ok = classifier.certificate_is_valid(h, cert)
    else:
        raise ParseError("artifact is neither a witness nor a certificate")
    sys.stdout.write("valid\n" if ok else "INVALID\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bergeturan",
        description="Extremal Berge-path-free hypergraphs: constructions, "
                    "exact searches, classifiers and desk-scale censuses.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, budget=True):
        p.add_argument("--out", "-o", help="output path (default: stdout)")
        p.add_argument("--threads", "--workers", type=int, default=1, dest="threads")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized sampling (core runs are deterministic)")
        if budget:
            p.add_argument("--budget-nodes", type=int, default=None,
                           help=f"search node budget (env {ENV_BUDGET})")

    p = sub.add_parser("construct", help="build a core-block-pendant hypergraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, action="append")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--plus", type=int, default=None,
                   help="add the extra hyperedge with this many core vertices")
    p.add_argument("--permissive", action="store_true")
    p.add_argument("--out", "-o", required=True, help="output basename")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("count", help="closed-form hyperedge count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, action="append")
    p.add_argument("--r", type=int, required=True)
    common(p, budget=False)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("longest-path", help="exact longest Berge path")
    p.add_argument("hypergraph")
    p.add_argument("--witness", help="write the witness JSON here")
    common(p)
    p.set_defaults(func=_cmd_longest_path)

    p = sub.add_parser("longest-cycle", help="exact longest Berge cycle")
    p.add_argument("hypergraph")
    p.add_argument("--witness", help="write the witness JSON here")
    p.add_argument("--min-length", type=int, default=2)
    common(p)
    p.set_defaults(func=_cmd_longest_cycle)

    p = sub.add_parser("check-free", help="is there no Berge path of length k?")
    p.add_argument("hypergraph")
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_check_free)

    p = sub.add_parser("embed", help="class membership certificates")
    p.add_argument("hypergraph")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, action="append")
    p.add_argument("--plus", action="store_true")
    p.add_argument("--pendant", action="store_true")
    common(p, budget=False)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("kernelize", help="greedy set-degree kernelization")
    p.add_argument("hypergraph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", choices=("smallest", "max_deficit"), default="smallest")
    p.add_argument("--out", "-o", required=True, help="output basename")
    p.add_argument("--threads", "--workers", type=int, default=1, dest="threads")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.set_defaults(func=_cmd_kernelize)

    p = sub.add_parser("turan", help="exact connected Turan number by search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=_cmd_turan)

    p = sub.add_parser("audit-lemma1", help="longest-cycle structure audit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--format", choices=("json",), default="json")
    common(p)
    p.set_defaults(func=_cmd_audit_lemma1)

    p = sub.add_parser("verify-stability", help="stability census with classifier verdicts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("json",), default="json")
    common(p)
    p.set_defaults(func=_cmd_verify_stability)

    p = sub.add_parser("verify", help="re-check a witness or certificate file")
    p.add_argument("artifact", help="witness or certificate JSON")
    p.add_argument("hypergraph", help=".hg file it refers to")
    p.set_defaults(func=_cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return 2
    except (ParseError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 3
    except DomainError as exc:
        sys.stderr.write(f"invalid request: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
