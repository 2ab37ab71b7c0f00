"""Command-line front end.

Subcommands: extract (run the pipeline, write a certificate), verify
(re-check a certificate against its graph), oracle (brute-force minimum for
small graphs), gen (instance generators), audit (inspect good sets and
buckets for a graph).  Exit codes: 0 success, 1 failed verification,
2 guard violations (bad config, too few edges, oversized oracle input),
3 unreadable or malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import (
    DomainError,
    GraphFormatError,
    InsufficientEdges,
    InvalidConfig,
    PreconditionViolated,
    TooLarge,
)
from .extractor import (
    ExtractionCertificate,
    ExtractionConfig,
    extract,
    partition_dyadic,
    verify_certificate,
)
from .goodsets import GoodSetEscape, format_set, grow_good_sets
from .graph import parse_edge_list, serialize_edge_list
from .oracle import brute_min_subgraph, gen_near_threshold, gen_wheel
from .peeler import peel_to_core

GUARD_ERRORS = (InsufficientEdges, InvalidConfig, DomainError, TooLarge, PreconditionViolated)


def _read_graph(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_edge_list(text)


def _extract_one(path: str, k: int, t: int, out: str | None) -> str:
    """Worker for single files and --jobs batches; returns the status line."""
    cfg = ExtractionConfig(k=k, t=t)
    G = _read_graph(path)
    cert = extract(G, cfg)
    target = Path(out) if out else Path(path).with_suffix(Path(path).suffix + ".cert.json")
    target.write_text(cert.to_json(), encoding="utf-8")
    return f"branch={cert.branch} size={cert.witness_size}"


def _batch_entry(args: tuple[str, int, int]) -> tuple[str, int, str]:
    path, k, t = args
    try:
        line = _extract_one(path, k, t, None)
        return path, 0, line
    except GUARD_ERRORS as exc:
        return path, 2, f"error: {exc}"
    except GraphFormatError as exc:
        return path, 3, f"error: {exc}"


def _cmd_extract(ns: argparse.Namespace) -> int:
    src = Path(ns.input)
    if src.is_dir():
        files = sorted(str(p) for p in src.glob("*.edges"))
        if not files:
            print(f"no .edges files in {src}", file=sys.stderr)
            return 2
        jobs = max(1, ns.jobs)
        work = [(f, ns.k, ns.t) for f in files]
        if jobs == 1:
            results = [_batch_entry(w) for w in work]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_batch_entry, work))
        status = 0
        for path, code, line in sorted(results):
            print(f"{Path(path).name} {line}")
            if code:
                status = max(status, code)
        return status
    line = _extract_one(ns.input, ns.k, ns.t, ns.output)
    print(line)
    if ns.audit:
        cert_path = (
            Path(ns.output)
            if ns.output
            else Path(ns.input).with_suffix(Path(ns.input).suffix + ".cert.json")
        )
        cert = ExtractionCertificate.from_json(cert_path.read_text(encoding="utf-8"))
        for entry in cert.replay_log:
            print(entry, file=sys.stderr)
    return 0


def _cmd_verify(ns: argparse.Namespace) -> int:
    G = _read_graph(ns.input)
    try:
        cert = ExtractionCertificate.from_json(Path(ns.cert).read_text(encoding="utf-8"))
    except OSError as exc:
        raise GraphFormatError(f"cannot read {ns.cert}: {exc.strerror}") from exc
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise GraphFormatError(f"malformed certificate {ns.cert}: {exc}") from exc
    ok, reason = verify_certificate(G, cert)
    if not ok:
        print(reason, file=sys.stderr)
        return 1
    print("ok")
    return 0


def _cmd_oracle(ns: argparse.Namespace) -> int:
    G = _read_graph(ns.input)
    res = brute_min_subgraph(G, ns.k)
    print(f"min_size={res.min_size}" if res.found else "none")
    return 0


def _cmd_gen(ns: argparse.Namespace) -> int:
    if ns.kind == "wheel":
        G = gen_wheel(ns.k, ns.n)
    else:
        G = gen_near_threshold(ns.n, ns.k, ns.t, ns.excess, ns.seed)
    text = serialize_edge_list(G)
    if ns.output:
        Path(ns.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_audit(ns: argparse.Namespace) -> int:
    G = _read_graph(ns.input)
    core = peel_to_core(G, ns.k).core
    print(f"core n={core.n} m={core.m}")
    if core.n == 0:
        return 0
    grown = grow_good_sets(core, ns.k)
    if isinstance(grown, GoodSetEscape):
        print(f"escape {grown.kind} size={len(grown.witness_set)} {grown.detail}")
        for line in grown.witness_trace:
            print(f"  {line}")
        return 0
    print(f"family m={grown.m} total={grown.total_size}")
    for idx, (D, trace) in enumerate(zip(grown.members, grown.traces), start=1):
        print(f"D{idx} size={len(D)} {format_set(D)}")
        for line in trace:
            print(f"  {line}")
    buckets = partition_dyadic(grown, core.n, ns.k)
    print(f"buckets J={buckets.J} jprime={buckets.jprime} norms={list(buckets.norms)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="degcore",
        description="extract induced subgraphs of large minimum degree, with certificates",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="run the extraction pipeline")
    ex.add_argument("--k", type=int, required=True)
    ex.add_argument("--t", type=int, required=True)
    ex.add_argument("-i", "--input", required=True, help="edge-list file or directory")
    ex.add_argument("-o", "--output", help="certificate path (default: <input>.cert.json)")
    ex.add_argument("--jobs", type=int, default=1, help="parallel workers for directories")
    ex.add_argument("--audit", action="store_true", help="echo the replay log to stderr")
    ex.set_defaults(fn=_cmd_extract)

    ve = sub.add_parser("verify", help="re-check a certificate")
    ve.add_argument("-i", "--input", required=True)
    ve.add_argument("-c", "--cert", required=True)
    ve.set_defaults(fn=_cmd_verify)

    orc = sub.add_parser("oracle", help="exhaustive minimum subgraph search (n <= 20)")
    orc.add_argument("--k", type=int, required=True)
    orc.add_argument("-i", "--input", required=True)
    orc.set_defaults(fn=_cmd_oracle)

    gen = sub.add_parser("gen", help="write generator instances")
    gsub = gen.add_subparsers(dest="kind", required=True)
    gw = gsub.add_parser("wheel")
    gw.add_argument("--k", type=int, required=True)
    gw.add_argument("--n", type=int, required=True)
    gw.add_argument("-o", "--output")
    gr = gsub.add_parser("random")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--k", type=int, required=True)
    gr.add_argument("--t", type=int, required=True)
    gr.add_argument("--excess", type=int, default=0)
    gr.add_argument("--seed", type=int, default=0)
    gr.add_argument("-o", "--output")
    gen.set_defaults(fn=_cmd_gen)

    au = sub.add_parser("audit", help="inspect good sets and buckets")
    au.add_argument("--k", type=int, required=True)
    au.add_argument("-i", "--input", required=True)
    au.set_defaults(fn=_cmd_audit)
    return p


def run(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.fn(ns)
    except GUARD_ERRORS as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except GraphFormatError as exc:
        print(str(exc), file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
