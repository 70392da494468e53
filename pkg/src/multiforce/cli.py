"""Command line: run, contract, classify, verify, enumerate, search.

Instance files are JSON documents with the fields palette, rules, vertices,
edges, coloring (see parse_instance).  A small subset of DOT is also accepted
for graphs (node statements carrying a color attribute, undirected edge
statements); the network then comes from --palette/--rules.

Exit codes: 0 success / run terminated; 1 input error; 2 non-termination
(detected repeat, or step limit hit); 3 no classification available.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from .classifiers import predict
from .contraction import color_contract
from .core import ColoredGraph, ForcingNetwork, StateLabel, validate_colored_graph, validate_network
from .corpora import DEFAULT_BUDGET, GraphSkeleton, enumerate_colorings
from .engine import (
    ForcingTrace,
    Terminated,
    end_state,
    run_with_propagation,
    run_without_propagation,
)
from .errors import (
    ForcingError,
    LimitExceededError,
    UnsupportedNetworkError,
)
from .lab import search_extremal, verify_claim

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NONTERMINATION = 2
EXIT_UNKNOWN = 3


class InstanceFormatError(ValueError):
    pass


@dataclass
class InstanceDocument:
    """The on-disk instance shape: a network plus a named colored graph."""

    palette: list[int]
    rules: list[tuple[int, int]]
    vertices: list[str]
    edges: list[tuple[str, str]]
    coloring: dict[str, int]


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise InstanceFormatError(msg)


def parse_instance(text: str) -> InstanceDocument:
    """Parse a JSON instance document; graph fields may be omitted for
    commands that only need the network."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    _expect(isinstance(raw, dict), "top level must be an object")
    _expect("palette" in raw and "rules" in raw, "palette and rules are required")
    palette = raw["palette"]
    _expect(isinstance(palette, list) and all(isinstance(c, int) for c in palette),
            "palette must be a list of integers")
    rules_raw = raw["rules"]
    _expect(isinstance(rules_raw, list), "rules must be a list of [source, target] pairs")
    rules = []
    for r in rules_raw:
        _expect(isinstance(r, list) and len(r) == 2 and all(isinstance(x, int) for x in r),
                f"rule {r!r} must be a [source, target] pair of integers")
        rules.append((r[0], r[1]))
    vertices = raw.get("vertices", [])
    _expect(isinstance(vertices, list) and all(isinstance(v, str) for v in vertices),
            "vertices must be a list of names")
    _expect(len(set(vertices)) == len(vertices), "vertex names must be unique")
    edges_raw = raw.get("edges", [])
    _expect(isinstance(edges_raw, list), "edges must be a list of [name, name] pairs")
    edges = []
    for e in edges_raw:
        _expect(isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e),
                f"edge {e!r} must be a [name, name] pair")
        edges.append((e[0], e[1]))
    coloring_raw = raw.get("coloring", {})
    _expect(isinstance(coloring_raw, dict)
            and all(isinstance(k, str) and isinstance(v, int) for k, v in coloring_raw.items()),
            "coloring must map vertex names to integers")
    return InstanceDocument(list(palette), rules, list(vertices), edges, dict(coloring_raw))


def serialize_instance(doc: InstanceDocument) -> str:
    body = {
        "palette": doc.palette,
        "rules": [list(r) for r in doc.rules],
        "vertices": doc.vertices,
        "edges": [list(e) for e in doc.edges],
        "coloring": doc.coloring,
    }
    return json.dumps(body, indent=2) + "\n"


def document_to_objects(doc: InstanceDocument) -> tuple[ForcingNetwork, ColoredGraph, list[str]]:
    network = validate_network(doc.palette, doc.rules)
    index = {name: i for i, name in enumerate(doc.vertices)}
    edges = []
    for a, b in doc.edges:
        _expect(a in index, f"edge endpoint {a!r} is not a declared vertex")
        _expect(b in index, f"edge endpoint {b!r} is not a declared vertex")
        edges.append((index[a], index[b]))
    for name in doc.coloring:
        _expect(name in index, f"colored vertex {name!r} is not a declared vertex")
    coloring = {index[name]: c for name, c in doc.coloring.items()}
    graph = validate_colored_graph(len(doc.vertices), edges, coloring, network)
    return network, graph, list(doc.vertices)


_DOT_NAME = r'"[^"]*"|[A-Za-z_][A-Za-z0-9_.]*|[0-9]+'


def _unquote(name: str) -> str:
    return name[1:-1] if name.startswith('"') else name


def parse_dot(text: str) -> tuple[list[str], list[tuple[str, str]], dict[str, int]]:
    """Read the graph part of a DOT-like file: node statements with a color
    attribute and undirected edge statements."""
    text = re.sub(r"/\*.*?\*/", " ", text, flags=re.S)
    text = re.sub(r"//[^\n]*", " ", text)
    text = re.sub(r"^\s*#[^\n]*", " ", text, flags=re.M)
    if "->" in text:
        raise InstanceFormatError("directed edges are not supported; use --")
    m = re.search(r"\{(.*)\}", text, flags=re.S)
    _expect(m is not None, "no graph body found")
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    coloring: dict[str, int] = {}

    def note(name: str) -> None:
        if name not in vertices:
            vertices.append(name)

    for stmt in re.split(r"[;\n]", m.group(1)):
        stmt = stmt.strip()
        # skip blanks and default-attribute statements, they carry no vertices
        if not stmt or re.match(r"(graph|node|edge)\s*\[", stmt):
            continue
        if "--" in stmt:
            chain = [re.match(_DOT_NAME, part.strip()) for part in stmt.split("--")]
            _expect(all(chain), f"cannot read edge statement {stmt!r}")
            names = [_unquote(c.group(0)) for c in chain]
            for name in names:
                note(name)
            edges.extend((names[i], names[i + 1]) for i in range(len(names) - 1))
            continue
        m2 = re.match(rf"({_DOT_NAME})\s*(\[(.*)\])?$", stmt)
        _expect(m2 is not None, f"cannot read statement {stmt!r}")
        name = _unquote(m2.group(1))
        note(name)
        if m2.group(3):
            cm = re.search(r'color\s*=\s*"?(\d+)"?', m2.group(3))
            if cm:
                coloring[name] = int(cm.group(1))
    return vertices, edges, coloring


_FILL = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf")


def to_dot(vertices: Sequence[str], edges: Sequence[tuple[str, str]], coloring: dict[str, int]) -> str:
    """Render a colored graph for external viewers."""
    lines = ["graph G {"]
    for name in vertices:
        c = coloring[name]
        fill = _FILL[(c - 1) % len(_FILL)]
        lines.append(f'  "{name}" [label="{name} ({c})", color={c}, style=filled, fillcolor="{fill}"];')
    for a, b in edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_palette_flag(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise InstanceFormatError(f"cannot read palette {text!r}; expected e.g. 1,2,3") from exc


def _parse_rules_flag(text: str) -> list[tuple[int, int]]:
    rules = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d+)\s*(?:->|:)\s*(\d+)", part)
        if not m:
            raise InstanceFormatError(f"cannot read rule {part!r}; expected e.g. 1:2 or 1->2")
        rules.append((int(m.group(1)), int(m.group(2))))
    return rules


def load_instance(path: str, fmt: str | None, palette_flag: str | None, rules_flag: str | None) -> InstanceDocument:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt is None:
        fmt = "dot" if path.endswith((".dot", ".gv")) else "json"
    if fmt == "dot":
        _expect(palette_flag is not None and rules_flag is not None,
                "dot input needs --palette and --rules")
        vertices, edges, coloring = parse_dot(text)
        return InstanceDocument(_parse_palette_flag(palette_flag),
                                _parse_rules_flag(rules_flag), vertices, edges, coloring)
    doc = parse_instance(text)
    if palette_flag is not None:
        doc.palette = _parse_palette_flag(palette_flag)
    if rules_flag is not None:
        doc.rules = _parse_rules_flag(rules_flag)
    return doc


# --- rendering ---


def _coloring_line(names: Sequence[str], colors: Sequence[int]) -> str:
    return " ".join(f"{n}={c}" for n, c in zip(names, colors))


def _trace_document(trace: ForcingTrace, names: Sequence[str], mode: str) -> dict:
    events = []
    for ev in trace.events:
        item = {"fs": ev.fs_index}
        if ev.pfs_index is not None:
            item["pfs"] = ev.pfs_index
        item["rule"] = [ev.rule.source, ev.rule.target]
        item["recolored"] = [names[v] for v in sorted(ev.recolored)]
        events.append(item)
    doc: dict = {
        "mode": mode,
        "initial": {n: c for n, c in zip(names, trace.initial.colors)},
        "events": events,
        "fs_count": trace.fs_count,
    }
    if trace.pfs_count is not None:
        doc["pfs_count"] = trace.pfs_count
    if isinstance(trace.outcome, Terminated):
        doc["outcome"] = {
            "status": "terminated",
            "final": {n: c for n, c in zip(names, trace.outcome.final.colors)},
        }
    else:
        doc["outcome"] = {
            "status": "non-terminating",
            "first_index": trace.outcome.first_index,
            "repeat_index": trace.outcome.repeat_index,
        }
    return doc


def _print_trace_text(trace: ForcingTrace, names: Sequence[str]) -> None:
    print("initial:", _coloring_line(names, trace.initial.colors))
    for ev in trace.events:
        where = f"FS {ev.fs_index}"
        if ev.pfs_index is not None:
            where += f" (PFS {ev.pfs_index})"
        hit = ", ".join(names[v] for v in sorted(ev.recolored)) or "-"
        print(f"{where}: {ev.rule} recolors {hit}")
    if isinstance(trace.outcome, Terminated):
        summary = f"terminated: FS={trace.fs_count}"
        if trace.pfs_count is not None:
            summary += f" PFS={trace.pfs_count}"
        print(summary)
        print("final:", _coloring_line(names, trace.outcome.final.colors))
    else:
        print(f"non-terminating: the state before step {trace.outcome.first_index} "
              f"repeats before step {trace.outcome.repeat_index}")


# --- subcommands ---


def _cmd_run(args) -> int:
    doc = load_instance(args.instance, args.format, args.palette, args.rules)
    network, graph, names = document_to_objects(doc)
    try:
        if args.mode == "prop":
            trace = run_with_propagation(graph, network)
        else:
            trace = run_without_propagation(graph, network, max_fs=args.max_fs)
    except LimitExceededError as exc:
        print(f"step limit exceeded: {exc}", file=sys.stderr)
        return EXIT_NONTERMINATION
    if args.output == "structured":
        print(json.dumps(_trace_document(trace, names, args.mode), indent=2))
    else:
        _print_trace_text(trace, names)
    if args.dot:
        if not isinstance(trace.outcome, Terminated):
            print("--dot skipped: run did not terminate", file=sys.stderr)
        else:
            final = {n: c for n, c in zip(names, trace.outcome.final.colors)}
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(names, doc.edges, final))
    return EXIT_OK if isinstance(trace.outcome, Terminated) else EXIT_NONTERMINATION


def _quotient_document(doc: InstanceDocument, names: Sequence[str], cmap) -> InstanceDocument:
    # quotient vertices are named after their smallest member, so an already
    # contracted instance round-trips to itself
    qnames = [names[members[0]] for members in cmap.components]
    q = cmap.quotient
    qedges = sorted((min(u, v), max(u, v)) for u, v in q.edges)
    return InstanceDocument(
        list(doc.palette),
        list(doc.rules),
        qnames,
        [(qnames[u], qnames[v]) for u, v in qedges],
        {qnames[i]: q.colors[i] for i in range(q.vertex_count)},
    )


def _cmd_contract(args) -> int:
    doc = load_instance(args.instance, args.format, args.palette, args.rules)
    _network, graph, names = document_to_objects(doc)
    cmap = color_contract(graph)
    qdoc = _quotient_document(doc, names, cmap)
    if args.output == "structured":
        print(json.dumps({
            "components": [[names[v] for v in members] for members in cmap.components],
            "quotient": json.loads(serialize_instance(qdoc)),
        }, indent=2))
    else:
        for i, members in enumerate(cmap.components):
            member_names = ", ".join(names[v] for v in members)
            print(f"component {qdoc.vertices[i]} (color {cmap.quotient.colors[i]}): {member_names}")
        print(serialize_instance(qdoc), end="")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(qdoc.vertices, qdoc.edges, qdoc.coloring))
    return EXIT_OK


def _cmd_classify(args) -> int:
    doc = load_instance(args.instance, args.format, args.palette, args.rules)
    network, graph, names = document_to_objects(doc)
    try:
        pred = predict(graph, network)
    except UnsupportedNetworkError as exc:
        if args.output == "structured":
            print(json.dumps({"result": "unsupported-network", "detail": str(exc)}, indent=2))
        else:
            print(f"no classification: {exc}")
        return EXIT_UNKNOWN
    check = None
    if args.check:
        final = end_state(run_with_propagation(graph, network)).colors
        if pred.color is None:
            check = {"engine_final": dict(zip(names, final))}
        else:
            check = {"engine_final": dict(zip(names, final)),
                     "agrees": set(final) == {pred.color}}
    if args.output == "structured":
        body: dict = {"result": "monochrome" if pred.is_monochrome else "unknown",
                      "basis": pred.basis}
        if pred.is_monochrome:
            body["color"] = pred.color
        if check is not None:
            body["check"] = check
        print(json.dumps(body, indent=2))
    else:
        print(str(pred))
        if check is not None:
            if "agrees" in check:
                verdict = "agrees" if check["agrees"] else "DISAGREES"
                print(f"engine end state {verdict}: "
                      + " ".join(f"{n}={c}" for n, c in check["engine_final"].items()))
            else:
                print("engine end state: "
                      + " ".join(f"{n}={c}" for n, c in check["engine_final"].items()))
    if args.check and check and check.get("agrees") is False:
        return EXIT_INPUT
    return EXIT_OK if pred.is_monochrome else EXIT_UNKNOWN


def _cmd_verify(args) -> int:
    report = verify_claim(args.claim, n_max=args.n_max, samples=args.samples,
                          seed=args.seed, budget=args.budget, workers=args.workers)
    if args.output == "structured":
        print(json.dumps(report.as_document(), indent=2))
    else:
        state = "ok" if report.ok else f"{len(report.counterexamples)} counterexample(s)"
        seed_note = f" seed={report.seed}" if report.seed is not None else ""
        print(f"claim {report.claim_id}: checked {report.instances_checked} instance(s), "
              f"{state}{seed_note} ({report.elapsed_ms} ms)")
        for cx in report.counterexamples:
            print(f"  n={cx.n} edges={list(cx.edges)} coloring={list(cx.coloring)} "
                  f"network={cx.network} expected {cx.expected}, observed {cx.observed}")
    return EXIT_OK if report.ok else EXIT_INPUT


def _cmd_enumerate(args) -> int:
    doc = load_instance(args.instance, args.format, args.palette, args.rules)
    network, graph, names = document_to_objects(doc)
    skel = GraphSkeleton(graph.vertex_count, graph.edges)
    colorings = list(enumerate_colorings(
        skel, sorted(network.palette),
        all_colors_present=args.all_colors_present,
        contracted=args.contracted,
        budget=args.budget,
    ))
    if args.output == "structured":
        print(json.dumps({
            "vertices": list(names),
            "colorings": [list(cs) for cs in colorings],
            "count": len(colorings),
        }, indent=2))
    else:
        for cs in colorings:
            print(_coloring_line(names, cs))
        print(f"count: {len(colorings)}")
    return EXIT_OK


def _cmd_search(args) -> int:
    doc = load_instance(args.instance, args.format, args.palette, args.rules)
    network = validate_network(doc.palette, doc.rules)
    result = search_extremal(args.n_max, network, budget=args.budget,
                             seed=args.seed, workers=args.workers)
    if args.output == "structured":
        print(json.dumps({
            "n": args.n_max,
            "instances": [{
                "edges": [list(e) for e in inst.edges],
                "coloring": list(inst.coloring),
                "pfs_count": inst.pfs_count,
            } for inst in result.instances],
            "checked": result.checked,
            "exhaustive": result.exhaustive,
            "truncated": result.truncated,
            **({"seed": result.seed} if result.seed is not None else {}),
        }, indent=2))
    else:
        for inst in result.instances:
            edges = ",".join(f"{u}-{v}" for u, v in inst.edges)
            print(f"edges=[{edges}] coloring={list(inst.coloring)} pfs={inst.pfs_count}")
        notes = []
        if result.truncated:
            notes.append("budget hit, results are partial")
        if not result.exhaustive:
            notes.append(f"sampled (seed={result.seed})")
        suffix = f" ({'; '.join(notes)})" if notes else ""
        print(f"found {len(result.instances)} extremal instance(s) out of {result.checked} checked{suffix}")
    return EXIT_OK


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep 2 for non-termination
        raise _UsageError(message)


def _add_common_io(sub) -> None:
    sub.add_argument("instance", help="instance file (JSON, or DOT with --palette/--rules)")
    sub.add_argument("--format", choices=("json", "dot"), default=None,
                     help="input format; default: by file extension")
    sub.add_argument("--palette", default=None, help="palette override, e.g. 1,2,3")
    sub.add_argument("--rules", default=None, help="rules override, e.g. 1:2,2:3,3:1")
    sub.add_argument("--output", choices=("text", "structured"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multiforce", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("run", help="run the forcing process on an instance")
    _add_common_io(p)
    p.add_argument("--mode", choices=("prop", "noprop"), default="prop",
                   help="with propagation (default) or one round per rule visit")
    p.add_argument("--max-fs", type=int, default=None,
                   help="step budget for noprop runs (default: a state-space bound)")
    p.add_argument("--dot", default=None, help="write the final coloring as DOT to this file")

    p = subs.add_parser("contract", help="contract monochromatic components")
    _add_common_io(p)
    p.add_argument("--dot", default=None, help="write the quotient as DOT to this file")

    p = subs.add_parser("classify", help="predict the end state without running")
    _add_common_io(p)
    p.add_argument("--check", action="store_true", help="also run the engine and compare")

    p = subs.add_parser("verify", help="check a registered claim over a corpus")
    p.add_argument("claim", help="claim id (e.g. pfs-bound, contract-commute)")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--samples", type=int, default=None,
                   help="random-corpus size for claims with a seeded part")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", choices=("text", "structured"), default="text")

    p = subs.add_parser("enumerate", help="list colorings of the instance graph")
    _add_common_io(p)
    p.add_argument("--all-colors-present", action="store_true")
    p.add_argument("--contracted", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = subs.add_parser("search", help="find instances needing the maximum number of propagating steps")
    _add_common_io(p)
    p.add_argument("--n-max", type=int, required=True, help="number of vertices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)

    return parser


_HANDLERS = {
    "run": _cmd_run,
    "contract": _cmd_contract,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "enumerate": _cmd_enumerate,
    "search": _cmd_search,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (ForcingError, InstanceFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
