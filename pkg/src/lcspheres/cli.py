"""Command line entry point: ``lcspheres <command> [options]``.

Exit codes: 0 when the question was decided or the command completed, 2
when a search ran out of budget (unknown), 1 for bad input.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from . import catalog
from .canonical import canonical_key, key_digest
from .collapse import CollapseBudget, is_collapsible, replay_collapse, verify_collapse
from .complex import boundary_complex, pseudomanifold_check
from .errors import LCError, ParseError
from .io import (
    collapse_from_text,
    collapse_to_text,
    parse_complex,
    read_complex,
    serialize_complex,
)
from .lc.certificates import (
    certificate_from_text,
    certificate_to_text,
    check_lc_certificate,
    kT,
    random_spanning_tree,
)
from .lc.decide import MODES, LCBudget, is_lc
from .sampler import lc_census, lc_upper_bound, sample_lc_closed
from .trees import (
    enumerate_dary_trees,
    enumerate_trees_unlabeled,
    fuss_catalan,
    preorder_word,
    unlabeled_bounds,
)

OK, INPUT_ERROR, UNKNOWN = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR)


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: Optional[str] = None
    d: Optional[int] = None
    N: Optional[int] = None
    seed: int = 0
    retries: int = 64
    exhaustive_threshold: int = 60
    max_restarts: int = 100
    output: Optional[str] = None
    verbosity: int = 0


class _Out:
    """Report lines, echoed to a stream as they are produced."""

    def __init__(self, stream):
        self.stream = stream
        self.lines = []

    def __call__(self, text=""):
        self.lines.append(text)
        print(text, file=self.stream)


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        source=getattr(args, "builtin", None) or getattr(args, "input", None),
        d=getattr(args, "d", None),
        N=getattr(args, "N", None),
        seed=getattr(args, "seed", 0),
        retries=getattr(args, "retries", 64),
        exhaustive_threshold=getattr(args, "exhaustive_threshold", 60),
        max_restarts=getattr(args, "max_restarts", 100),
        output=getattr(args, "output", None),
        verbosity=args.verbose,
    )


def _add_input(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", "-i", help="facet list file")
    g.add_argument("--builtin", "-b", help="catalog entry name")


def _add_budget(p):
    p.add_argument("--retries", type=int, default=64, help="randomised greedy attempts")
    p.add_argument("--exhaustive-threshold", type=int, default=60, help="face count up to which search is exhaustive")
    p.add_argument("--max-nodes", type=int, default=200_000)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lcspheres", description="Local constructibility of spheres and balls.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="f-vector, Euler characteristic, pseudomanifold report")
    _add_input(p)

    p = sub.add_parser("check-collapsible", help="search a collapse to a point")
    _add_input(p)
    _add_budget(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")

    p = sub.add_parser("check-lc", help="decide local constructibility")
    _add_input(p)
    _add_budget(p)
    p.add_argument("--mode", choices=MODES, default="sphere")
    p.add_argument("--strategy", choices=("A", "B"))
    p.add_argument("--max-trees", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")

    p = sub.add_parser("kt", help="the ridges not crossed by a spanning tree of the dual graph")
    _add_input(p)
    p.add_argument("--tree", help="file of dual-tree edges 'facet | facet'; random if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")

    for name, text in (("count-trees", "tree counts"), ("enumerate-trees", "list trees")):
        p = sub.add_parser(name, help=text)
        p.add_argument("-d", type=int, required=True)
        p.add_argument("-N", type=int, required=True)
        p.add_argument("--unlabeled", action="store_true", help="up to combinatorial isomorphism")
        if name == "count-trees":
            p.add_argument("--exhaustive", action="store_true", help="also count by enumeration")

    p = sub.add_parser("sample", help="random LC pseudomanifolds")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-restarts", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--output", "-o", help="write the first closed sample's certificate here")

    p = sub.add_parser("census", help="distinct closed complexes from all trees")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-N", type=int, required=True)

    p = sub.add_parser("bound", help="upper bound on LC complexes with N facets")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-N", type=int, required=True)

    p = sub.add_parser("verify", help="replay a certificate file against a complex")
    p.add_argument("certificate")
    _add_input(p)
    return parser


def _load(args) -> tuple:
    if args.builtin:
        return args.builtin, catalog.builtin(args.builtin)
    return args.input, read_complex(args.input)


def _collapse_budget(args):
    return CollapseBudget(args.retries, args.exhaustive_threshold, args.max_nodes, args.seed)


def _emit(out, args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        out(f"certificate written to {args.output}")
    else:
        for line in text.rstrip("\n").split("\n"):
            out(line)


def cmd_info(args, out):
    name, C = _load(args)
    rep = pseudomanifold_check(C)
    out(f"complex: {name}")
    out(f"dimension: {C.dim}")
    out(f"f-vector: {' '.join(map(str, C.f_vector()))}")
    out(f"euler: {C.euler_characteristic()}")
    out(f"pure: {rep.pure}  ridge-degrees<=2: {rep.ridge_degrees_ok}  strongly-connected: {rep.strongly_connected}")
    if rep.pure and rep.ridge_degrees_ok:
        out(f"boundary facets: {len(boundary_complex(C).facets)}")
    out(f"key: {key_digest(canonical_key(C))}")
    return OK


def cmd_check_collapsible(args, out):
    name, C = _load(args)
    out(f"complex: {name}  seed={args.seed}")
    res = is_collapsible(C, _collapse_budget(args))
    if res.status == "found":
        out(f"collapsible: yes ({len(res.sequence)} steps)")
        _emit(out, args, collapse_to_text(res.sequence))
        return OK
    if res.status == "impossible":
        out("collapsible: no (exhaustive search)")
        return OK
    out("collapsible: unknown (search budget exhausted)")
    return UNKNOWN


def cmd_check_lc(args, out):
    name, C = _load(args)
    out(f"complex: {name}  mode={args.mode}  seed={args.seed}")
    budget = LCBudget(_collapse_budget(args), max_trees=args.max_trees, max_nodes=args.max_nodes, seed=args.seed)
    res = is_lc(C, args.mode, args.strategy, budget)
    if res.status == "found":
        out(f"LC: yes (strategy {res.strategy}; {res.detail})")
        _emit(out, args, certificate_to_text(res.certificate))
        return OK
    if res.status == "no":
        out(f"LC: no (strategy {res.strategy}; {res.detail})")
        return OK
    out(f"LC: unknown (strategy {res.strategy}; {res.detail})")
    return UNKNOWN


def _read_tree(path, C):
    T = nx.Graph()
    T.add_nodes_from(C.facets)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("|")
            if len(parts) != 2:
                raise ParseError(lineno, "a tree edge reads 'facet | facet'")
            a, b = (frozenset(parse_complex(p).sorted_facets()[0]) for p in parts)
            T.add_edge(a, b)
    return T


def cmd_kt(args, out):
    name, C = _load(args)
    if args.tree:
        T = _read_tree(args.tree, C)
        out(f"complex: {name}  tree={args.tree}")
    else:
        T = random_spanning_tree(C, args.seed)
        out(f"complex: {name}  random tree seed={args.seed}")
    K = kT(C, T)
    out(f"K^T: {len(K.facets)} facets, f-vector {' '.join(map(str, K.f_vector()))}")
    _emit(out, args, serialize_complex(K, canonical=False))
    return OK


def cmd_count_trees(args, out):
    if args.unlabeled:
        lo, hi = unlabeled_bounds(args.d, args.N)
        out(f"d={args.d} N={args.N} unlabeled={len(enumerate_trees_unlabeled(args.d, args.N))} bounds=[{lo:.4g}, {hi}]")
        return OK
    line = f"d={args.d} N={args.N} formula={fuss_catalan(args.d, args.N)}"
    if args.exhaustive:
        line += f" exhaustive={sum(1 for _ in enumerate_dary_trees(args.d, args.N))}"
    out(line)
    return OK


def cmd_enumerate_trees(args, out):
    if args.unlabeled:
        for key in enumerate_trees_unlabeled(args.d, args.N):
            out(" ; ".join(" ".join(map(str, f)) for f in key))
        return OK
    for t in enumerate_dary_trees(args.d, args.N):
        out("".join(map(str, preorder_word(t))))
    return OK


def _sample_one(job):
    d, N, seed, restarts = job
    return sample_lc_closed(d, N, seed, restarts)


def cmd_sample(args, out):
    out(f"sample d={args.d} N={args.N} count={args.count} seed={args.seed} max_restarts={args.max_restarts}")
    jobs = [(args.d, args.N, args.seed + i, args.max_restarts) for i in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_sample_one, jobs))
    else:
        reports = [_sample_one(j) for j in jobs]
    attempts = stalls = invalid = closed = 0
    first = None
    for rep in reports:
        out(rep.summary())
        attempts += rep.attempts
        stalls += rep.stalls
        invalid += rep.invalid
        if rep.closed:
            closed += 1
            first = first or rep
    rate = stalls / attempts if attempts else 0.0
    out(f"closed={closed}/{len(reports)} attempts={attempts} stalls={stalls} invalid={invalid} stall_rate={rate:.4f}")
    if args.output and first is not None:
        _emit(out, args, certificate_to_text(first.certificate))
    return OK


def cmd_census(args, out):
    c = lc_census(args.d, args.N)
    out(f"census d={args.d} N={args.N} trees={c.trees} bound={lc_upper_bound(args.d, args.N)}")
    out(f"distinct={c.distinct}")
    return OK


def cmd_bound(args, out):
    out(str(lc_upper_bound(args.d, args.N)))
    return OK


def cmd_verify(args, out):
    name, C = _load(args)
    with open(args.certificate, encoding="utf-8") as fh:
        text = fh.read()
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "COLLAPSE":
        seq = collapse_from_text(text)
        ok = verify_collapse(C, seq)
        final = replay_collapse(C, seq) if ok else None
        out(f"collapse certificate on {name}: {'valid' if ok else 'rejected'}"
            + (f", final f-vector {' '.join(map(str, final.f_vector()))}" if final else ""))
        return OK if ok else INPUT_ERROR
    cert = certificate_from_text(text)
    verdict = check_lc_certificate(C, cert)
    if verdict:
        out(f"LC certificate on {name}: valid ({cert.N} simplices, {len(cert.glues)} gluings)")
        return OK
    out(f"LC certificate on {name}: rejected at step {verdict.step} ({verdict.reason})")
    return INPUT_ERROR


COMMANDS = {
    "info": cmd_info,
    "check-collapsible": cmd_check_collapsible,
    "check-lc": cmd_check_lc,
    "kt": cmd_kt,
    "count-trees": cmd_count_trees,
    "enumerate-trees": cmd_enumerate_trees,
    "sample": cmd_sample,
    "census": cmd_census,
    "bound": cmd_bound,
    "verify": cmd_verify,
}


def run(argv=None, stdout=None) -> int:
    out = _Out(stdout or sys.stdout)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    if args.verbose:
        print(config_from_args(args), file=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except (LCError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main():
    sys.exit(run())
