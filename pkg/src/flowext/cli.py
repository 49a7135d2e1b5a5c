"""Command-line interface: ``flowext <command> ...``.

Every run prints one JSON report on stdout and a one-line summary on stderr.
Exit status: 0 the property holds (or the artifact was built), 1 it fails
(the report carries a witness), 2 usage, input or budget errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus as corpus_mod
from . import gadgets, groupconn, ltwz, planardual
from .errors import FlowExtError, HypothesisError, InternalConsistencyError, ParseError, PreconditionError, ResourceLimitError
from .graphcore import (
    Multigraph,
    apex_augment,
    critical_sets,
    edge_connectivity,
    enumerate_small_cuts,
    mader_complete_split,
)
from .io import (
    _lines,
    _parse_graph_lines,
    compact,
    digest,
    dump_json,
    format_boundary,
    format_embedding,
    format_graph,
    format_preorientation,
    orientation_to_dict,
    parse_boundary,
    parse_embedding,
    parse_preorientation,
)
from .orient import SolverStats, find_beta_orientation, is_beta_orientation

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE = 0, 1, 2


@dataclass
class RunReport:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    verdict: bool | None = None
    witness: object = None
    counters: dict[str, int] = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    elapsed: float = 0.0
    mode: str | None = None
    seed: int | None = None
    error: str | None = None
    summary: str = ""

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "witness": self.witness,
            "counters": self.counters,
            "result": self.result,
            "elapsed": round(self.elapsed, 6),
            "mode": self.mode,
            "seed": self.seed,
            "error": self.error,
        }


# -- helpers ------------------------------------------------------------------


def _read(report: RunReport, path: str) -> str:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None
    report.inputs[path] = digest(text)
    return text


def _graph(report: RunReport, path: str) -> Multigraph:
    text = _read(report, path)
    # Embedding files are graph files with extra rotation lines.
    return _parse_graph_lines(_lines(text), path, extra=("rot",))[0]


def _boundary(report: RunReport, path: str | None, graph: Multigraph) -> dict[int, int]:
    if path is None:
        return {v: 0 for v in graph.vertices}
    return parse_boundary(_read(report, path), graph, path)


def _preorient(report: RunReport, path: str | None, graph: Multigraph) -> dict[int, int]:
    if path is None:
        return {}
    return parse_preorientation(_read(report, path), graph, path)


def _graph_dict(graph: Multigraph) -> dict:
    return {"vertices": list(graph.vertices), "edges": [[e.id, e.a, e.b] for e in graph.edges]}


def _boundary_dict(beta: dict[int, int] | None):
    return None if beta is None else {str(v): b for v, b in sorted(beta.items())}


def _write_graph(path: str | None, graph: Multigraph, report: RunReport) -> None:
    if path:
        Path(path).write_text(format_graph(compact(graph)))
        report.result["written"] = path


def _embedding(report: RunReport, args):
    if args.builtin:
        report.inputs[f"builtin:{args.builtin}"] = digest(args.builtin)
        return planardual.load_embedding(args.builtin)
    if not args.path:
        raise PreconditionError("give an embedding file or --builtin NAME")
    return parse_embedding(_read(report, args.path), args.path)


# -- commands -------------------------------------------------------------------


def cmd_mod3(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    beta = _boundary(report, args.beta, g)
    pre = _preorient(report, args.preorient, g)
    stats = SolverStats()
    found = find_beta_orientation(g, beta, pre, stats=stats)
    report.counters.update(solver_nodes=stats.nodes, memo_hits=stats.memo_hits)
    report.mode = "exhaustive"
    report.verdict = found is not None
    what = "mod 3-orientation" if not any(beta.values()) else "β-orientation"
    if found is None:
        report.witness = f"no {what}" + (" extending the pre-orientation" if pre else "")
        report.summary = report.witness
        return EXIT_FAILS
    report.result["orientation"] = orientation_to_dict(found)
    report.summary = f"found a {what}"
    return EXIT_HOLDS


def cmd_z3(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    if args.sample:
        v = groupconn.is_z3_connected(g, "sample", samples=args.sample, seed=args.seed)
        report.seed = args.seed
    else:
        v = groupconn.is_z3_connected(g, budget=args.budget, engine=args.engine, jobs=args.jobs)
    report.mode = v.mode
    report.verdict = v.connected
    report.witness = _boundary_dict(v.witness)
    report.counters.update(boundaries_tested=v.boundaries_tested, solver_calls=v.solver_calls)
    report.summary = "Z3-connected" if v.connected else "not Z3-connected"
    if v.mode == "sample" and v.connected:
        report.summary += f" on {v.samples} sampled boundaries (seed {v.seed})"
    return EXIT_HOLDS if v.connected else EXIT_FAILS


def cmd_extendable(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    report.mode = "exhaustive"
    if args.method == "direct":
        ok = groupconn.is_z3_extendable_at(g, args.vertex, "direct")
    else:
        g.require(args.vertex)
        v = groupconn.is_z3_connected(g.delete_vertex(args.vertex), budget=args.budget)
        ok = v.connected
        report.witness = _boundary_dict(v.witness)
        report.counters["boundaries_tested"] = v.boundaries_tested
    report.verdict = ok
    report.result["method"] = args.method
    report.summary = f"{'' if ok else 'not '}Z3-extendable at {args.vertex}"
    return EXIT_HOLDS if ok else EXIT_FAILS


def cmd_m3(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    g.require(args.vertex)
    pres = list(groupconn.balanced_preorientations(g, args.vertex))
    failures = groupconn.m3_extension_failures(g, args.vertex)
    report.mode = "exhaustive"
    report.counters["preorientations"] = len(pres)
    report.counters["failures"] = len(failures)
    report.verdict = not failures
    if failures:
        report.witness = format_preorientation(g, failures[0]).splitlines()
    report.summary = f"{'' if not failures else 'not '}M3-extendable at {args.vertex}"
    return EXIT_HOLDS if not failures else EXIT_FAILS


def cmd_reduced(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    sub = groupconn.find_z3_connected_subgraph(g)
    report.mode = "exhaustive"
    report.verdict = sub is None
    if sub is not None:
        report.witness = sorted(sub)
    report.summary = "Z3-reduced" if sub is None else f"contains a Z3-connected subgraph on {sorted(sub)}"
    return EXIT_HOLDS if sub is None else EXIT_FAILS


def cmd_hunt(args, report: RunReport) -> int:
    stats = groupconn.HuntStats()
    found = groupconn.hunt_z3_reduced(
        args.min_degree,
        args.max_vertices,
        simple_only=not args.multigraph,
        max_multiplicity=args.max_multiplicity,
        stats=stats,
    )
    report.mode = "exhaustive"
    report.counters.update(candidates=stats.candidates, isomorphs_rejected=stats.isomorphs_rejected, found=len(found))
    report.result["reduced_by_size"] = {str(k): v for k, v in stats.reduced_by_size.items()}
    report.result["graphs"] = [_graph_dict(g) for g in found]
    report.verdict = not found
    if found:
        report.witness = _graph_dict(found[0])
    report.summary = f"{len(found)} Z3-reduced graphs with minimum degree >= {args.min_degree} on <= {args.max_vertices} vertices"
    return EXIT_HOLDS if not found else EXIT_FAILS


def cmd_cuts(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    cuts = enumerate_small_cuts(g, args.k)
    report.mode = "exhaustive"
    report.counters["cuts"] = len(cuts)
    report.result["cuts"] = [{"side": sorted(c.side), "size": c.size, "critical": c.critical} for c in cuts]
    report.result["edge_connectivity"] = edge_connectivity(g) if g.n >= 2 else None
    report.summary = f"{len(cuts)} cuts of size <= {args.k}"
    return EXIT_HOLDS


def cmd_critical(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    sets = critical_sets(g, args.k, check=not args.no_check)
    report.mode = "exhaustive"
    report.counters["critical_sets"] = len(sets)
    report.result["critical_sets"] = [sorted(s) for s in sets]
    report.summary = f"{len(sets)} {args.k}-critical sets"
    return EXIT_HOLDS


def cmd_apex(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    sets = critical_sets(g, args.k)
    mult = args.mult if args.mult else [1] * len(sets)
    out = apex_augment(g, args.k, mult)
    report.result["apex"] = out.vertices[-1]
    report.result["graph"] = _graph_dict(out)
    _write_graph(args.out, out, report)
    report.verdict = True
    report.summary = f"apex joined into {len(sets)} critical sets"
    return EXIT_HOLDS


def cmd_split(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    out = mader_complete_split(g, args.vertex, args.k)
    report.mode = "exhaustive"
    report.verdict = out is not None
    if out is None:
        report.witness = f"no complete splitting at {args.vertex} keeps {args.k}-edge-connectivity"
        report.summary = report.witness
        return EXIT_FAILS
    report.result["graph"] = _graph_dict(out)
    _write_graph(args.out, out, report)
    report.summary = f"complete splitting at {args.vertex} keeps {args.k}-edge-connectivity"
    return EXIT_HOLDS


def _solve_h(h, beta, report):
    stats = SolverStats()
    found = find_beta_orientation(h, beta, stats=stats)
    report.counters.update(solver_nodes=stats.nodes, memo_hits=stats.memo_hits)
    if found is None:
        raise InternalConsistencyError("replacement graph has no orientation of the required kind")
    return found


def _emit_h(args, h, prov, report):
    report.result["h"] = {"n": h.n, "m": h.m}
    _write_graph(args.out, h, report)
    if args.provenance:
        Path(args.provenance).write_text(dump_json(prov.to_dict()))
        report.result["provenance"] = args.provenance


def cmd_gadget(args, report: RunReport) -> int:
    kind = args.gadget
    report.verdict = True
    if kind == "w":
        report.result["graph"] = _graph_dict(gadgets.W)
        _write_graph(args.out, gadgets.W, report)
        report.summary = "gadget W: 6 vertices, 15 edges"
        return EXIT_HOLDS
    g = _graph(report, args.graph)
    if kind == "h3":
        pre = _preorient(report, args.preorient, g)
        h, prov = gadgets.build_h_3flow(g, args.vertex, pre, args.shift)
        _emit_h(args, h, prov, report)
        if args.solve:
            d = gadgets.kochol_extract(h, _solve_h(h, {}, report), prov, g, args.vertex, pre)
            report.result["orientation"] = orientation_to_dict(d)
        report.summary = f"H built: {h.n} vertices, {h.m} edges"
        return EXIT_HOLDS
    if kind == "hz3":
        g.require(args.vertex)
        rest = g.delete_vertex(args.vertex)
        beta1 = _boundary(report, args.beta, rest)
        h, beta_star, prov = gadgets.build_h_z3(g, args.vertex, beta1)
        _emit_h(args, h, prov, report)
        report.result["beta_star"] = format_boundary(beta_star).splitlines()
        if args.solve:
            beta = gadgets.lift_boundary(g, args.vertex, beta1)
            d = gadgets.z3_extract(h, _solve_h(h, beta_star, report), prov, g, args.vertex, beta)
            report.result["orientation"] = orientation_to_dict(d)
        report.summary = f"H built: {h.n} vertices, {h.m} edges"
        return EXIT_HOLDS
    if kind == "crossing":
        out = gadgets.crossing_reduction(g, args.e1, args.e2, args.doubled)
        report.result["graph"] = _graph_dict(out)
        report.result["new_vertex"] = out.vertices[-1]
        _write_graph(args.out, out, report)
        report.summary = f"crossing of edges {args.e1} and {args.e2} replaced by a 5-vertex"
        return EXIT_HOLDS
    raise PreconditionError(f"unknown gadget {kind!r}")


def cmd_verify(args, report: RunReport) -> int:
    report.mode = "exhaustive"
    if args.what == "lemma-w":
        minor = gadgets.scan_w_minor_edge()
        sink = gadgets.scan_w_sink()
        report.counters.update(
            orientations_scanned=minor.scanned + sink.scanned,
            mod3_orientations=minor.compliant,
            beta1_orientations=sink.compliant,
        )
        report.result.update(minor_edge=minor.to_dict(), sink=sink.to_dict())
        report.verdict = minor.holds and sink.holds
        if not report.verdict:
            report.witness = (minor.violations or sink.violations)[:1]
        report.summary = "both W properties hold" if report.verdict else "a W property fails"
        return EXIT_HOLDS if report.verdict else EXIT_FAILS
    graphs = corpus_mod.random_multigraphs(args.seed, args.count)
    report.seed = args.seed
    checked = 0
    for i, g in enumerate(graphs):
        for x in g.vertices:
            direct = groupconn.is_z3_extendable_at(g, x, "direct")
            via = groupconn.is_z3_extendable_at(g, x, "via_deletion", budget=args.budget)
            checked += 1
            if direct != via:
                report.verdict = False
                report.witness = {"graph": _graph_dict(g), "vertex": x, "direct": direct, "via_deletion": via}
                report.counters.update(graphs=i + 1, vertices=checked)
                report.summary = "extendability and deletion disagree"
                return EXIT_FAILS
    report.counters.update(graphs=len(graphs), vertices=checked)
    report.verdict = True
    report.summary = f"extendability agrees with deletion on {checked} (graph, vertex) pairs"
    return EXIT_HOLDS


def cmd_ltwz(args, report: RunReport) -> int:
    g = _graph(report, args.graph)
    report.mode = "exhaustive"
    if args.ltwz in ("check", "extend"):
        beta = _boundary(report, args.beta, g)
        pre = _preorient(report, args.preorient, g)
        rep = ltwz.check_ltwz_hypotheses(g, beta, args.z, pre)
        report.result["hypotheses"] = rep.to_dict()
        report.counters["subsets_scanned"] = rep.subsets_scanned
        report.verdict = rep.passed
        if not rep.passed:
            report.witness = rep.to_dict()
            report.summary = "hypotheses fail"
            return EXIT_FAILS
        if args.ltwz == "extend":
            found = ltwz.extend_with_ltwz(g, beta, args.z, pre)
            report.result["orientation"] = orientation_to_dict(found)
            report.summary = "extension found"
        else:
            report.summary = "hypotheses hold"
        return EXIT_HOLDS
    if args.ltwz == "d1":
        beta = _boundary(report, args.beta, g)
        con = ltwz.build_dI_construction(g, beta)
        found = ltwz.solve_dI(g, beta)
        report.result.update(
            apex=con.z,
            critical_sets=[sorted(a) for a in con.critical],
            taus=con.taus,
            orientation=orientation_to_dict(found),
        )
        report.verdict = is_beta_orientation(found, beta)
        report.summary = f"β-orientation via an apex over {len(con.critical)} critical sets"
        return EXIT_HOLDS if report.verdict else EXIT_FAILS
    v = ltwz.check_dII(g, mode="sample" if args.sample else "auto", samples=args.sample or 100, seed=args.seed, budget=args.budget)
    report.mode = v.mode
    report.seed = v.seed
    report.verdict = v.connected
    report.counters.update(boundaries_tested=v.boundaries_tested, solver_calls=v.solver_calls)
    report.summary = f"Z3-connected ({v.mode})"
    return EXIT_HOLDS


def cmd_dual(args, report: RunReport) -> int:
    report.mode = "exhaustive"
    if args.dual == "color":
        if args.builtin:
            g, _ = _embedding(report, args)
        else:
            g = _graph(report, args.path)
        col = planardual.chromatic_3(g)
        report.verdict = col is not None
        if col is None:
            report.witness = "no proper 3-coloring"
            report.summary = report.witness
            return EXIT_FAILS
        report.result["coloring"] = {str(v): c for v, c in col.items()}
        report.summary = "3-colorable"
        return EXIT_HOLDS
    g, rot = _embedding(report, args)
    if args.dual == "faces":
        walks = planardual.faces(rot, g)
        report.result["faces"] = [[f"{e}{t}" for e, t in w] for w in walks]
        report.verdict = True
        report.summary = f"{len(walks)} faces"
        return EXIT_HOLDS
    if args.dual == "dual":
        d = planardual.dual(rot, g, strict=not args.allow_bridges)
        report.result["graph"] = _graph_dict(d.graph)
        report.result["bridges"] = list(d.bridges)
        if args.out:
            Path(args.out).write_text(format_embedding(d.graph, d.rotation))
            report.result["written"] = args.out
        report.verdict = True
        report.summary = f"dual: {d.graph.n} vertices, {d.graph.m} edges"
        return EXIT_HOLDS
    v = planardual.duality_check(rot, g)
    report.result.update(orientable=v.orientable, colorable=v.colorable)
    report.verdict = v.holds
    report.summary = f"mod 3-orientable={v.orientable}, dual 3-colorable={v.colorable}: equivalence holds"
    return EXIT_HOLDS


def cmd_corpus(args, report: RunReport) -> int:
    paths = corpus_mod.write_corpus(args.seed, args.out, args.count)
    report.seed = args.seed
    report.counters["files"] = len(paths)
    report.result["out"] = str(args.out)
    report.verdict = True
    report.summary = f"wrote {len(paths)} files to {args.out}"
    return EXIT_HOLDS


# -- parser ---------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampling and generation")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for boundary scans")
    common.add_argument("--budget", type=_positive, default=None, help="cap on exhaustively enumerated boundaries")
    common.add_argument("--sample", type=_positive, default=None, help="sample this many boundaries instead of enumerating")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="flowext", description="Orientations, group connectivity and flow-extension gadgets.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("mod3", cmd_mod3, help="find a mod 3-orientation (or β-orientation)")
    sp.add_argument("graph")
    sp.add_argument("--beta")
    sp.add_argument("--preorient")

    sp = add("z3", cmd_z3, help="decide Z3-connectivity")
    sp.add_argument("graph")
    sp.add_argument("--engine", choices=("solver", "table"), default="solver")

    sp = add("extendable", cmd_extendable, help="Z3-extendability at a vertex")
    sp.add_argument("graph")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--method", choices=("via_deletion", "direct"), default="via_deletion")

    sp = add("m3-extendable", cmd_m3, help="M3-extendability at a vertex")
    sp.add_argument("graph")
    sp.add_argument("--vertex", type=int, required=True)

    sp = add("reduced", cmd_reduced, help="decide Z3-reducedness")
    sp.add_argument("graph")

    sp = add("hunt", cmd_hunt, help="search for Z3-reduced graphs of given minimum degree")
    sp.add_argument("--min-degree", type=int, required=True)
    sp.add_argument("--max-vertices", type=int, required=True)
    sp.add_argument("--multigraph", action="store_true")
    sp.add_argument("--max-multiplicity", type=int, default=2)

    sp = add("cuts", cmd_cuts, help="enumerate cuts of size <= k")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)

    sp = add("critical", cmd_critical, help="list k-critical sets")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--no-check", action="store_true", help="skip the k-edge-connectivity precondition")

    sp = add("apex", cmd_apex, help="apex augmentation over k-critical sets")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mult", type=_int_list, help="edge multiplicities per critical set")
    sp.add_argument("--out")

    sp = add("split", cmd_split, help="complete splitting at an even vertex")
    sp.add_argument("graph")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out")

    sp = add("gadget", cmd_gadget, help="build W, H graphs or a crossing reduction")
    sp.add_argument("gadget", choices=("w", "h3", "hz3", "crossing"))
    sp.add_argument("--graph")
    sp.add_argument("--vertex", type=int)
    sp.add_argument("--preorient")
    sp.add_argument("--beta")
    sp.add_argument("--shift", type=int, nargs=6, metavar="S")
    sp.add_argument("--e1", type=int)
    sp.add_argument("--e2", type=int)
    sp.add_argument("--doubled", choices=("y1", "y2"), default="y2")
    sp.add_argument("--solve", action="store_true", help="also solve H and extract an orientation of G")
    sp.add_argument("--out")
    sp.add_argument("--provenance")

    sp = add("verify", cmd_verify, help="exhaustive lemma checks")
    sp.add_argument("what", choices=("lemma-w", "lemma-2-3"))
    sp.add_argument("--count", type=_positive, default=corpus_mod.RANDOM_COUNT)

    sp = add("ltwz", cmd_ltwz, help="extension-theorem hypotheses and constructions")
    sp.add_argument("ltwz", choices=("check", "extend", "d1", "d2"))
    sp.add_argument("--graph", required=True)
    sp.add_argument("--beta")
    sp.add_argument("--z", type=int)
    sp.add_argument("--preorient")

    sp = add("dual", cmd_dual, help="faces, duals, coloring and the flow-coloring check")
    sp.add_argument("dual", choices=("faces", "dual", "color", "check"))
    sp.add_argument("path", nargs="?")
    sp.add_argument("--builtin", choices=planardual.EMBEDDING_NAMES)
    sp.add_argument("--allow-bridges", action="store_true")
    sp.add_argument("--out")

    sp = add("corpus", cmd_corpus, help="write the seeded test corpus")
    sp.add_argument("--out", required=True)
    sp.add_argument("--count", type=_positive, default=corpus_mod.RANDOM_COUNT)
    return p


_REQUIRED = {
    ("gadget", "h3"): ("graph", "vertex", "preorient"),
    ("gadget", "hz3"): ("graph", "vertex"),
    ("gadget", "crossing"): ("graph", "e1", "e2"),
    ("ltwz", "check"): ("z", "preorient"),
    ("ltwz", "extend"): ("z", "preorient"),
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_HOLDS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=stderr)
    sub = getattr(args, args.command, None) if args.command in ("gadget", "ltwz") else None
    for name in _REQUIRED.get((args.command, sub), ()):
        if getattr(args, name) is None:
            print(f"flowext {args.command} {sub}: --{name} is required", file=stderr)
            return EXIT_USAGE
    report = RunReport(command=["flowext", *argv])
    start = time.perf_counter()
    try:
        code = args.func(args, report)
    except HypothesisError as exc:
        code = EXIT_FAILS
        report.verdict = False
        report.error = str(exc)
        report.witness = exc.report.to_dict() if exc.report is not None else None
        report.summary = str(exc)
    except (ParseError, PreconditionError, ResourceLimitError) as exc:
        code = EXIT_USAGE
        report.error = f"{type(exc).__name__}: {exc}"
        report.summary = report.error
    except InternalConsistencyError as exc:
        code = EXIT_FAILS
        report.verdict = False
        report.error = f"InternalConsistencyError: {exc}"
        report.summary = report.error
    except FlowExtError as exc:
        code = EXIT_USAGE
        report.error = f"{type(exc).__name__}: {exc}"
        report.summary = report.error
    report.elapsed = time.perf_counter() - start
    stdout.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")
    print(f"flowext {args.command}: {report.summary}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
