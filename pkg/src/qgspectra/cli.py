"""Command-line interface.

One executable, ``qgs``, with a subcommand per library operation.  Human
text goes to standard output, machine output sits behind ``--json`` (the
search commands emit JSONL always), errors go to standard error.  Every
run ends with a one-line reproducibility manifest on standard error; runs
that write an output file also get a ``<out>.manifest.json`` sidecar.

Exit codes: 0 success, 2 verification failure, 64 usage or bad input.

A graphspec argument accepts, in order of precedence, an existing file
path (first nonblank line read as graph6), a ``json:{...}`` literal for
multigraphs with explicit integer edge lengths, a family form such as
``loop:8`` or ``chain-of-loops:1,1,2``, or a bare graph6 literal.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .corpusgen import connected_corpus, tree_corpus
from .errors import UnsupportedInputError, VerificationError
from .families import (
    ChainOfLoops,
    Complete,
    ConnectedPumpkinPair,
    Flower,
    RingOfLoops,
    StarWithPumpkinLeaves,
    build,
    parse_family,
    validate_doubling,
    validate_formula,
    validate_tadpole_pair,
)
from .mfunction import hot_classes, m_signature, same_m
from .multigraph import MetricGraph, encode_graph6, equilateral, parse_graph6
from .search import (
    SearchConfig,
    prefilter_soundness_audit,
    search,
    sets_to_jsonl,
    tree_search,
)
from .secular import is_isospectral, secular_polynomial
from .spectrum import graph_spectrum


# --- run bookkeeping ------------------------------------------------------


@dataclass
class RunContext:
    """Accumulates what a run consumed and produced, for the manifest."""

    command: list[str]
    config: dict = field(default_factory=dict)
    inputs: dict[str, str] = field(default_factory=dict)
    out_path: str | None = None

    def digest_text(self, label: str, text: str) -> None:
        self.inputs[label] = hashlib.sha256(text.encode()).hexdigest()

    def read_file(self, path: str) -> str:
        try:
            with open(path, "rb") as handle:
                data = handle.read()
        except OSError as exc:
            raise UnsupportedInputError(f"cannot read {path}: {exc}") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode("ascii")

    def manifest(self, wall: float, exit_code: int) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "tool_version": __version__,
            "wall_time_s": round(wall, 3),
            "exit_code": exit_code,
        }


def _snapshot_config(args: argparse.Namespace) -> dict:
    skip = {"handler"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        out[key] = value if isinstance(value, (str, int, float, bool, type(None))) else list(value)
    return out


# --- graphspec resolution -------------------------------------------------


def _metric_from_json(text: str) -> MetricGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UnsupportedInputError(f"bad json graphspec: {exc}") from None
    if not isinstance(data, dict) or "edges" not in data:
        raise UnsupportedInputError('json graphspec needs an "edges" list')
    edges = []
    for item in data["edges"]:
        if len(item) == 2:
            u, v = item
            ell = 1
        elif len(item) == 3:
            u, v, ell = item
        else:
            raise UnsupportedInputError("each edge is [u, v] or [u, v, length]")
        edges.append((int(u), int(v), int(ell)))
    vertices = data.get("vertices")
    if vertices is None:
        vertices = 1 + max(max(u, v) for u, v, _ in edges)
    unit = data.get("unit", 1)
    if isinstance(unit, list):
        unit = Fraction(int(unit[0]), int(unit[1]))
    return MetricGraph(int(vertices), tuple(edges), Fraction(unit))


def resolve_graphspec(text: str, ctx: RunContext) -> MetricGraph:
    """Build the metric graph a graphspec denotes, at native edge lengths."""
    if os.path.isfile(text):
        body = ctx.read_file(text)
        for line in body.splitlines():
            line = line.strip()
            if line:
                return equilateral(parse_graph6(line), 1)
        raise UnsupportedInputError(f"{text}: no graph6 line found")
    ctx.digest_text(f"arg:{text}", text)
    if text.startswith("json:"):
        return _metric_from_json(text[len("json:"):])
    if ":" in text:
        return build(parse_family(text))
    return equilateral(parse_graph6(text), 1)


def _check_vertex(graph: MetricGraph, vertex: int) -> int:
    if not 0 <= vertex < graph.num_vertices:
        raise UnsupportedInputError(
            f"vertex {vertex} out of range for a graph on {graph.num_vertices} vertices"
        )
    return vertex


def _read_corpus(paths: Sequence[str], ctx: RunContext) -> list[tuple[str, str]]:
    lines: list[tuple[str, str]] = []
    for path in paths:
        body = ctx.read_file(path)
        for lineno, line in enumerate(body.splitlines(), 1):
            lines.append((f"{path}:{lineno}", line))
    return lines


def _jobs(args: argparse.Namespace) -> int:
    if args.jobs is not None:
        return args.jobs
    env = os.environ.get("QGS_JOBS", "").strip()
    if not env:
        return 1
    try:
        return int(env)
    except ValueError:
        raise UnsupportedInputError(f"QGS_JOBS must be an integer, got {env!r}") from None


# --- subcommand handlers --------------------------------------------------


def _cmd_secular(args: argparse.Namespace, ctx: RunContext) -> int:
    metric = resolve_graphspec(args.graphspec, ctx)
    p = secular_polynomial(metric)
    if args.json:
        print(json.dumps(p.to_json_dict()))
        return 0
    print(f"unit: {p.unit}")
    print(f"denominator: {p.denom}")
    print(f"degree: {p.degree}")
    print("coefficients:", " ".join(str(c) for c in p.coeffs))
    return 0


def _format_point(point) -> str:
    if point.pi_multiple is not None:
        q = point.pi_multiple
        if q == 0:
            head = "k = 0"
        elif q == 1:
            head = "k = pi"
        else:
            head = f"k = {q}*pi"
    else:
        head = f"k = {point.k:.9f}"
    return f"{head} (multiplicity {point.multiplicity})"


def _cmd_spectrum(args: argparse.Namespace, ctx: RunContext) -> int:
    metric = resolve_graphspec(args.graphspec, ctx)
    kmax, count = args.kmax, args.count
    if kmax is None and count is None:
        count = 8
    points = graph_spectrum(metric, kmax=kmax, count=count)
    if args.json:
        print(json.dumps([pt.to_json_dict() for pt in points]))
        return 0
    for pt in points:
        print(_format_point(pt))
    return 0


def _normalized(metric: MetricGraph) -> MetricGraph:
    return metric.with_unit(metric.unit / metric.total_length())


def _cmd_isospectral(args: argparse.Namespace, ctx: RunContext) -> int:
    g1 = resolve_graphspec(args.first, ctx)
    g2 = resolve_graphspec(args.second, ctx)
    if args.normalize:
        g1, g2 = _normalized(g1), _normalized(g2)
    same = is_isospectral(g1, g2)
    if args.json:
        print(json.dumps({"isospectral": same}))
    else:
        print("ISOSPECTRAL" if same else "NOT ISOSPECTRAL")
    return 0


def _run_search(args: argparse.Namespace, ctx: RunContext, trees: bool) -> int:
    lines = _read_corpus(args.corpus, ctx)
    config = SearchConfig(
        prefilter=not args.no_prefilter,
        native_units=args.native_units,
        jobs=_jobs(args),
    )
    sets = (tree_search if trees else search)(lines, config)
    text = sets_to_jsonl(sets)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(text)
        ctx.out_path = args.out
        print(f"{len(sets)} isospectral sets -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_search(args: argparse.Namespace, ctx: RunContext) -> int:
    return _run_search(args, ctx, trees=False)


def _cmd_tree_search(args: argparse.Namespace, ctx: RunContext) -> int:
    return _run_search(args, ctx, trees=True)


def _cmd_audit(args: argparse.Namespace, ctx: RunContext) -> int:
    lines = _read_corpus(args.corpus, ctx)
    report = prefilter_soundness_audit(lines, jobs=_jobs(args))
    if args.json:
        print(json.dumps(report.to_json_dict()))
        return 0
    print(f"sets with prefilter: {report.sets_with_prefilter}")
    print(f"sets without prefilter: {report.sets_without_prefilter}")
    print(f"identical: {'yes' if report.identical else 'NO'}")
    if report.char_conflicts:
        print(f"char-poly conflicts: {len(report.char_conflicts)} (prefilter would miss these)")
    else:
        print("char-poly conflicts: none")
    return 0


def _poly_line(poly: Sequence[int]) -> str:
    return " ".join(str(c) for c in poly) if poly else "0"


def _cmd_msig(args: argparse.Namespace, ctx: RunContext) -> int:
    metric = resolve_graphspec(args.graphspec, ctx)
    vertex = _check_vertex(metric, args.vertex)
    sig = m_signature(metric, vertex)
    if args.json:
        print(json.dumps(sig.to_json_dict()))
        return 0
    q0, _, q2 = sig.coeffs
    print(f"unit: {sig.unit}")
    print("signature w^0:", _poly_line(q0))
    print("signature w^2:", _poly_line(q2))
    print("discarded factor:", _poly_line(sig.discarded))
    return 0


def _cmd_same_m(args: argparse.Namespace, ctx: RunContext) -> int:
    g1 = resolve_graphspec(args.first, ctx)
    g2 = resolve_graphspec(args.second, ctx)
    v1 = _check_vertex(g1, args.v1)
    v2 = _check_vertex(g2, args.v2)
    same = same_m(g1, v1, g2, v2)
    if args.json:
        print(json.dumps({"same_m": same}))
    else:
        print("SAME M-SIGNATURE" if same else "DIFFERENT M-SIGNATURE")
    return 0


def _cmd_hot_classes(args: argparse.Namespace, ctx: RunContext) -> int:
    graphs = [resolve_graphspec(spec, ctx) for spec in args.graphs]
    classes = hot_classes(graphs)
    if args.json:
        print(json.dumps([[list(pair) for pair in cls] for cls in classes]))
        return 0
    if not classes:
        print("no shared M-signatures")
        return 0
    for i, cls in enumerate(classes, 1):
        members = " ".join(f"(graph {g}, vertex {v})" for g, v in cls)
        print(f"class {i}: {members}")
    return 0


def _cmd_build(args: argparse.Namespace, ctx: RunContext) -> int:
    ctx.digest_text(f"arg:{args.familyspec}", args.familyspec)
    metric = build(parse_family(args.familyspec))
    if args.json:
        print(
            json.dumps(
                {
                    "vertices": metric.num_vertices,
                    "unit": [metric.unit.numerator, metric.unit.denominator],
                    "edges": [[u, v, ell] for u, v, ell in metric.edges],
                }
            )
        )
        return 0
    if args.dot:
        print("graph g {")
        for u, v, ell in metric.edges:
            print(f'  {u} -- {v} [label="{ell}"];')
        print("}")
        return 0
    if args.g6:
        comb = metric.combinatorial()
        if not comb.is_simple():
            raise UnsupportedInputError("graph6 cannot encode loops or parallel edges")
        lengths = {ell for _, _, ell in metric.edges}
        if len(lengths) > 1:
            raise UnsupportedInputError("graph6 output needs equilateral edges")
        print(encode_graph6(comb))
        return 0
    print(f"vertices: {metric.num_vertices}")
    print(f"edges: {metric.num_edges}")
    print(f"unit: {metric.unit}")
    print(f"total length: {metric.total_length()}")
    for u, v, ell in metric.edges:
        print(f"{u} -- {v} length {ell}")
    return 0


def _cmd_gen_corpus(args: argparse.Namespace, ctx: RunContext) -> int:
    ctx.digest_text(f"arg:{args.kind}:{args.n}", f"{args.kind}:{args.n}")
    if args.n < 1:
        raise UnsupportedInputError("vertex count must be positive")
    lines = connected_corpus(args.n) if args.kind == "connected" else tree_corpus(args.n)
    text = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(text)
        ctx.out_path = args.out
        print(f"{len(lines)} graphs -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# --- closed-form validation suite ----------------------------------------


def _partitions(total: int, max_parts: int | None = None):
    """Weakly decreasing positive integer tuples summing to total."""

    def rec(remaining: int, cap: int, parts: int):
        if remaining == 0:
            yield ()
            return
        if max_parts is not None and parts >= max_parts:
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first, parts + 1):
                yield (first,) + rest

    yield from rec(total, total, 0)


def _random_metric_graph(rng: random.Random) -> MetricGraph:
    n = rng.randrange(2, 7)
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v, rng.randrange(1, 4)))
    for _ in range(rng.randrange(0, 3)):
        u = rng.randrange(n)
        v = rng.randrange(n)
        edges.append((u, v, rng.randrange(1, 4)))
    return MetricGraph(n, tuple(edges))


def validation_suite(
    family: str | None = None,
    max_size: int | None = None,
    seed: int = 20260818,
) -> list[tuple[str, bool]]:
    """Run the standard closed-form battery; returns (label, matched) pairs.

    ``family`` restricts to one family name; ``max_size`` overrides that
    family's default size cap (vertex count, total loop length, total edge
    count, petal count, or sample count, as appropriate).
    """
    known = (
        "complete",
        "chain-of-loops",
        "ring-of-loops",
        "doubling",
        "pumpkin-pair",
        "pumpkin-star",
        "flower",
        "tadpole-pair",
    )
    if family is not None and family not in known:
        raise UnsupportedInputError(f"unknown family {family!r}; one of {', '.join(known)}")

    def cap(default: int) -> int:
        return max_size if max_size is not None else default

    results: list[tuple[str, bool]] = []

    def run(label: str, check: Callable[[], bool]) -> None:
        results.append((label, check()))

    if family in (None, "complete"):
        for v in range(3, cap(10) + 1):
            run(f"complete:{v}", lambda s=Complete(v): validate_formula(s, False).matched)
    if family in (None, "chain-of-loops"):
        for total in range(1, cap(12) + 1):
            for parts in _partitions(total):
                spec = ChainOfLoops(parts)
                label = "chain-of-loops:" + ",".join(map(str, parts))
                run(label, lambda s=spec: validate_formula(s, False).matched)
    if family in (None, "ring-of-loops"):
        for total in range(2, cap(12) + 1):
            for parts in _partitions(total):
                if len(parts) < 2:
                    continue
                spec = RingOfLoops(parts)
                label = "ring-of-loops:" + ",".join(map(str, parts))
                run(label, lambda s=spec: validate_formula(s, False).matched)
    if family in (None, "doubling"):
        rng = random.Random(seed)
        for i in range(cap(30)):
            graph = _random_metric_graph(rng)
            run(f"doubling:sample-{i}", lambda g=graph: validate_doubling(g, False).matched)
    if family in (None, "pumpkin-pair"):
        for total in range(2, cap(12) + 1):
            for k1 in range(1, total // 2 + 1):
                spec = ConnectedPumpkinPair(total - k1, k1, 1)
                run(
                    f"pumpkin-pair:{total - k1}+{k1}",
                    lambda s=spec: validate_formula(s, False).matched,
                )
    if family in (None, "pumpkin-star"):
        for total in range(1, cap(12) + 1):
            for counts in _partitions(total, max_parts=5):
                spec = StarWithPumpkinLeaves(counts, (1,) * len(counts))
                label = "pumpkin-star:" + "+".join(map(str, counts))
                run(label, lambda s=spec: validate_formula(s, False).matched)
    if family in (None, "flower"):
        for petals in range(1, cap(5) + 1):
            for ell in (1, 2):
                spec = Flower(petals, ell)
                run(f"flower:{petals}@{ell}", lambda s=spec: validate_formula(s, False).matched)
    if family in (None, "tadpole-pair"):
        run("tadpole-pair", lambda: validate_tadpole_pair(False).matched)
    return results


def _cmd_validate(args: argparse.Namespace, ctx: RunContext) -> int:
    results = validation_suite(args.family, args.max, args.seed)
    failures = [label for label, ok in results if not ok]
    if args.json:
        print(json.dumps({"cases": len(results), "failures": failures}))
    else:
        for label in failures:
            print(f"FAIL {label}")
        print(f"{len(results)} closed-form checks: {len(results) - len(failures)} passed, "
              f"{len(failures)} failed")
    if failures:
        raise VerificationError(f"{len(failures)} closed-form checks failed")
    return 0


# --- parser and entry point -----------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code pinned to 64."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _add_json(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def _add_search_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("corpus", nargs="+", help="graph6 files, one graph per line")
    sub.add_argument("--no-prefilter", action="store_true",
                     help="skip the characteristic-polynomial bucketing")
    sub.add_argument("--jobs", type=int, default=None,
                     help="worker processes (default: QGS_JOBS or 1)")
    sub.add_argument("--native-units", action="store_true",
                     help="keep unit edge lengths instead of normalizing total length to 1")
    sub.add_argument("--out", help="write JSONL here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qgs {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = subs.add_parser("secular", help="exact secular polynomial of a graph")
    p.add_argument("graphspec")
    _add_json(p)
    p.set_defaults(handler=_cmd_secular)

    p = subs.add_parser("spectrum", help="eigenvalues with multiplicities")
    p.add_argument("graphspec")
    p.add_argument("--kmax", type=float, help="list eigenvalues up to this k")
    p.add_argument("--count", type=int, help="list this many eigenvalues (with multiplicity)")
    _add_json(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = subs.add_parser("isospectral", help="exact isospectrality decision")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--normalize", action="store_true",
                   help="rescale both graphs to total length 1 first")
    _add_json(p)
    p.set_defaults(handler=_cmd_isospectral)

    p = subs.add_parser("search", help="find isospectral sets in graph6 corpora")
    _add_search_flags(p)
    p.set_defaults(handler=_cmd_search)

    p = subs.add_parser("tree-search", help="search restricted to trees")
    _add_search_flags(p)
    p.set_defaults(handler=_cmd_tree_search)

    p = subs.add_parser("audit-prefilter", help="compare prefiltered and exhaustive search")
    p.add_argument("corpus", nargs="+")
    p.add_argument("--jobs", type=int, default=None)
    _add_json(p)
    p.set_defaults(handler=_cmd_audit)

    p = subs.add_parser("msig", help="M-function signature at a vertex")
    p.add_argument("graphspec")
    p.add_argument("vertex", type=int)
    _add_json(p)
    p.set_defaults(handler=_cmd_msig)

    p = subs.add_parser("same-m", help="whether two vertices share an M-function")
    p.add_argument("first")
    p.add_argument("v1", type=int)
    p.add_argument("second")
    p.add_argument("v2", type=int)
    _add_json(p)
    p.set_defaults(handler=_cmd_same_m)

    p = subs.add_parser("hot-classes", help="group vertices of several graphs by M-function")
    p.add_argument("graphs", nargs="+", metavar="graphspec")
    _add_json(p)
    p.set_defaults(handler=_cmd_hot_classes)

    p = subs.add_parser("build", help="construct a named family graph")
    p.add_argument("familyspec")
    p.add_argument("--dot", action="store_true", help="emit DOT for external renderers")
    p.add_argument("--g6", action="store_true", help="emit graph6 (simple equilateral only)")
    _add_json(p)
    p.set_defaults(handler=_cmd_build)

    p = subs.add_parser("validate-formulas", help="check closed forms against computed polynomials")
    p.add_argument("--family", help="restrict to one family")
    p.add_argument("--max", type=int, help="override the family size cap")
    p.add_argument("--seed", type=int, default=20260818, help="seed for the doubling samples")
    _add_json(p)
    p.set_defaults(handler=_cmd_validate)

    p = subs.add_parser("gen-corpus", help="enumerate connected graphs or trees as graph6")
    p.add_argument("kind", choices=("connected", "trees"))
    p.add_argument("n", type=int, help="vertex count")
    p.add_argument("--out", help="write lines here instead of standard output")
    p.set_defaults(handler=_cmd_gen_corpus)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = RunContext(command=["qgs"] + argv, config=_snapshot_config(args))
    start = time.monotonic()
    try:
        code = args.handler(args, ctx)
    except UnsupportedInputError as exc:
        print(f"qgs: {exc}", file=sys.stderr)
        code = 64
    except VerificationError as exc:
        print(f"qgs: verification failure: {exc}", file=sys.stderr)
        code = 2
    manifest = ctx.manifest(time.monotonic() - start, code)
    if ctx.out_path is not None:
        with open(ctx.out_path + ".manifest.json", "w", encoding="ascii") as handle:
            json.dump(manifest, handle, indent=2)
            handle.write("\n")
    print("manifest " + json.dumps(manifest, separators=(",", ":")), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
