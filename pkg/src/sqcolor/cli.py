"""Command-line front end.

Exit codes: 0 success/PASS, 1 FAIL or infeasible, 2 usage or format error,
3 size guard hit.  With ``--force`` the guards are lifted, so code 3 is
never returned and the report carries ``forced  true``.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from . import exact, games, kernels
from .degeneracy import good_order_certificate, greedy_color_from_order, is_proper
from .discharge import (
    BIG_THRESHOLD,
    check_discharge_domain,
    discharging_contradiction_check,
    find_reducible_configurations,
    run_discharging,
)
from .errors import (
    AdjacentSuppressible,
    CapExceeded,
    FormatError,
    HypothesesTooTight,
    PreconditionViolated,
    SqColorError,
    TooLarge,
)
from .formats import (
    format_graph,
    format_multigraph,
    format_plane,
    parse_assignment,
    parse_digraph,
    parse_graph,
    parse_plane,
)
from .generators import GeneratorSpec, KINDS as GEN_KINDS, generate, random_plane_c4free
from .graph import Graph, classify_vertices, default_threshold, forbidden_cycles, square
from .plane import PlaneGraph
from .reduction import (
    build_g_double_prime,
    build_g_prime,
    build_g_triple_prime,
    check_region_decomposition,
    classify_edge_types,
    find_regions,
    half_edge_diagnostics,
    provenance_round_trip,
    smallfaces_diagnostic,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
VERDICTS = ("PASS", "FAIL", "INFO")


def default_seed() -> int:
    raw = os.environ.get("CHROMA_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


# ---------------------------------------------------------------- reports

def _encode(x: Any) -> Any:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [_encode(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _encode(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted(_encode(y) for y in x)
    return x


def verdict_from(results: dict) -> str:
    ok = results.get("ok")
    if ok is True:
        return "PASS"
    if ok is False:
        return "FAIL"
    return "INFO"


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    elapsed_ms: Optional[int] = None

    @property
    def verdict(self) -> str:
        return verdict_from(self.results)

    def to_dict(self) -> dict:
        d = {
            "command": self.command,
            "inputs": _encode(self.inputs),
            "results": _encode(self.results),
            "verdict": self.verdict,
        }
        if self.elapsed_ms is not None:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        rep = cls(d["command"], d.get("inputs", {}), d.get("results", {}), d.get("elapsed_ms"))
        if "verdict" in d and d["verdict"] != rep.verdict:
            raise ValueError(f"stored verdict {d['verdict']} disagrees with results ({rep.verdict})")
        return rep

    def to_lines(self) -> str:
        out = []
        for k, v in self.results.items():
            v = _encode(v)
            if isinstance(v, list):
                v = " ".join(json.dumps(x, separators=(",", ":")) if isinstance(x, (list, dict)) else str(x) for x in v)
            elif isinstance(v, dict):
                v = json.dumps(v, sort_keys=True, separators=(",", ":"))
            elif isinstance(v, bool):
                v = "true" if v else "false"
            out.append(f"{k}\t{v}")
        out.append(f"verdict\t{self.verdict}")
        if self.elapsed_ms is not None:
            out.append(f"elapsed_ms\t{self.elapsed_ms}")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------- input helpers

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _first_line_tokens(text: str) -> int:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return len(line.split())
    return 0


def load_any(path: str) -> Graph | PlaneGraph:
    """Edge list (header 'n m') or rotation system (header 'n')."""
    text = _read(path)
    if _first_line_tokens(text) == 1:
        return parse_plane(text)
    return parse_graph(text)


def load_graph(path: str) -> Graph:
    x = load_any(path)
    return x.graph if isinstance(x, PlaneGraph) else x


def load_plane(path: str) -> PlaneGraph:
    x = load_any(path)
    if not isinstance(x, PlaneGraph):
        raise FormatError("this command needs a rotation-system input (header 'n')", line=1, column=1)
    return x


@contextlib.contextmanager
def lifted_guards(active: bool):
    """Temporarily raise every solver size limit."""
    names = {
        exact: ("CHROMATIC_LIMIT", "LIST_LIMIT", "CORR_LIMIT", "CHOOSE_LIMIT"),
        games: ("EULERIAN_EDGE_LIMIT", "AT_EDGE_LIMIT", "PAINT_VERTEX_LIMIT"),
        kernels: ("KERNEL_LIMIT", "PERFECT_LIMIT"),
    }
    saved = {}
    if active:
        for mod, attrs in names.items():
            for a in attrs:
                saved[(mod, a)] = getattr(mod, a)
                setattr(mod, a, 10**9)
    try:
        yield
    finally:
        for (mod, a), v in saved.items():
            setattr(mod, a, v)


# ---------------------------------------------------------------- commands

def cmd_gen(args) -> tuple[Optional[RunReport], str]:
    params = {}
    for name in ("k", "t", "q", "n"):
        val = getattr(args, name)
        if val is not None:
            params[name] = val
    if args.kind == "randomPlaneC4Free":
        params["seed"] = args.seed if args.seed is not None else default_seed()
    obj = generate(GeneratorSpec(args.kind, params))
    if args.format == "edges" or not isinstance(obj, PlaneGraph):
        if args.format == "plane":
            raise FormatError(f"{args.kind} has no embedding; use --format edges", line=1, column=1)
        g = obj.graph if isinstance(obj, PlaneGraph) else obj
        return None, format_graph(g)
    return None, format_plane(obj)


def cmd_square(args):
    g = load_graph(args.input)
    h = square(g)
    if args.emit:
        return None, format_graph(h)
    res = {"n": g.n, "m": g.m, "max_degree": g.max_degree, "square_m": h.m, "square_max_degree": h.max_degree}
    return RunReport("square", {"input": args.input}, res), ""


def cmd_check_c4free(args):
    g = load_graph(args.input)
    lengths = sorted(set(args.lengths))
    cyc = forbidden_cycles(g, lengths, cap=args.cap)
    res: dict = {"lengths": lengths, "count": len(cyc)}
    if cyc:
        res["witness"] = list(cyc[0])
    res["ok"] = not cyc
    return RunReport("check-c4free", {"input": args.input, "lengths": lengths}, res), ""


def cmd_degeneracy(args):
    g = load_graph(args.input)
    cert = good_order_certificate(g, slack=args.slack)
    h = square(g)
    colors = greedy_color_from_order(h, list(reversed(cert.order)))
    res = {
        "n": g.n,
        "max_degree": g.max_degree,
        "order": cert.order,
        "maxBackDegree": cert.max_back_degree,
        "bound": cert.bound,
        "greedy_colors": max(colors, default=0),
        "ok": cert.ok and is_proper(h, colors) and max(colors, default=0) <= cert.bound + 1,
    }
    return RunReport("degeneracy", {"input": args.input, "slack": args.slack}, res), ""


def _target(args) -> Graph:
    g = load_graph(args.input)
    return square(g) if args.square else g


def cmd_chromatic(args):
    h = _target(args)
    chi, coloring = exact.chromatic_number(h, with_coloring=True)
    res = {"n": h.n, "chi": chi, "coloring": coloring}
    return RunReport("chromatic", {"input": args.input, "square": args.square}, res), ""


def cmd_list_color(args):
    h = _target(args)
    mode, L = parse_assignment(_read(args.assignment), h)
    if mode != "lists":
        raise FormatError("list-color needs a 'lists n' file", line=1, column=1)
    col = exact.list_color(h, L)
    res: dict = {"feasible": col is not None}
    if col is not None:
        res["coloring"] = col
    res["ok"] = col is not None
    return RunReport("list-color", {"input": args.input, "assignment": args.assignment, "square": args.square}, res), ""


def cmd_corr_color(args):
    h = _target(args)
    mode, C = parse_assignment(_read(args.assignment), h)
    if mode != "corr":
        raise FormatError("corr-color needs a 'corr n' file", line=1, column=1)
    col = exact.corr_color(h, C)
    res: dict = {"feasible": col is not None}
    if col is not None:
        res["coloring"] = col
    res["ok"] = col is not None
    return RunReport("corr-color", {"input": args.input, "assignment": args.assignment, "square": args.square}, res), ""


def cmd_at(args):
    h = _target(args)
    k, d = games.alon_tarsi_number(h, with_orientation=True)
    res = {"at": k, "orientation": [list(a) for a in d.arcs], "parity_diff": games.eulerian_parity_diff(d)}
    return RunReport("at", {"input": args.input, "square": args.square}, res), ""


def cmd_paint(args):
    h = _target(args)
    return RunReport("paint", {"input": args.input, "square": args.square}, {"paint": games.paint_number(h)}), ""


def cmd_chain(args):
    h = _target(args)
    rep = games.parameter_chain_check(h)
    res = {
        "chi": rep.chi,
        "choice": rep.choice,
        "paint": rep.paint,
        "at": rep.at,
        "degeneracy_plus_one": rep.degeneracy_plus_one,
        "ok": rep.ok,
    }
    return RunReport("chain", {"input": args.input, "square": args.square}, res), ""


def cmd_kernel(args):
    if args.mode == "check":
        d = parse_digraph(_read(args.input))
        wit = kernels.kernel_perfect_witness(d)
        k = kernels.find_kernel(d)
        res: dict = {"kernel": sorted(k) if k is not None else "none", "kernel_perfect": wit is None}
        if wit is not None:
            res["kernelless_subset"] = sorted(wit)
        res["ok"] = wit is None
        return RunReport("kernel", {"mode": "check", "input": args.input}, res), ""
    if args.mode == "color":
        d = parse_digraph(_read(args.input))
        if not args.assignment:
            raise FormatError("kernel color needs --assignment", line=1, column=1)
        mode, L = parse_assignment(_read(args.assignment))
        if mode != "lists":
            raise FormatError("kernel color needs a 'lists n' file", line=1, column=1)
        try:
            col = kernels.kernel_coloring(d, L)
        except PreconditionViolated as exc:
            return RunReport("kernel", {"mode": "color"}, {"error": str(exc), "witness": list(exc.witness or ()), "ok": False}), ""
        g = d.underlying()
        return RunReport("kernel", {"mode": "color", "input": args.input}, {"coloring": col, "ok": is_proper(g, col)}), ""
    # two-cliques
    seed = args.seed if args.seed is not None else default_seed()
    inst = kernels.random_two_clique_instance(
        args.n1, args.n2, args.p, seed,
        t1_size=args.tail_size, t2_size=args.tail_size,
        tail_size=args.tail_size, list_slack=args.slack,
    )
    orient = kernels.build_two_clique_orientation(inst, check_bounds=args.check_bounds)
    d = orient.digraph
    perfect = kernels.is_kernel_perfect(d)
    bounds_ok = all(d.out_degree(v) < kernels.list_bound(inst, v) for v in range(d.n))
    paths = kernels.short_alternating_paths(inst, orient.z1, orient.z2)
    res = {
        "branch": orient.branch,
        "z1": sorted(orient.z1),
        "z2": sorted(orient.z2),
        "kernel_perfect": perfect,
        "out_degrees_below_lists": bounds_ok,
        "short_paths": len(paths),
        "ok": perfect and bounds_ok and not paths,
    }
    inputs = {"mode": "two-cliques", "n1": args.n1, "n2": args.n2, "p": args.p, "seed": seed}
    return RunReport("kernel", inputs, res), ""


def cmd_discharge(args):
    pg = load_plane(args.input)
    ledger = run_discharging(pg, args.beta)
    key, val = ledger.minimum()
    report = find_reducible_configurations(pg, args.beta)
    res: dict = {
        "stage_totals": {k: v for k, v in ledger.stage_totals().items()},
        "min_charge": val,
        "min_element": [key[0], key[1]],
        "configurations": report.kinds(),
    }
    if args.ledger:
        res["ledger"] = {f"{k[0]}:{k[1]}": v for k, v in sorted(ledger.charges.items(), key=lambda kv: (kv[0][0], str(kv[0][1])))}
    totals_ok = all(t == -8 for t in ledger.stage_totals().values())
    if pg.graph.max_degree >= args.beta:
        verdict = discharging_contradiction_check(pg, args.beta)
        res["contradiction"] = verdict.verdict
        res["ok"] = totals_ok and verdict.ok
    elif not totals_ok:
        res["ok"] = False
    return RunReport("discharge", {"input": args.input, "beta": args.beta}, res), ""


def _pipeline(pg: PlaneGraph, beta: Optional[int]):
    g = pg.graph
    vc = classify_vertices(g, beta)
    gp = build_g_prime(pg, vc)
    gpp = build_g_double_prime(gp)
    g3 = build_g_triple_prime(gpp)
    return g, vc, gp, gpp, g3


def cmd_reduce(args):
    pg = load_plane(args.input)
    g, vc, gp, gpp, g3 = _pipeline(pg, args.beta)
    types = classify_edge_types(gp, g, vc)
    he = half_edge_diagnostics(gp)
    counts = {t: 0 for t in range(1, 7)}
    for et in types.values():
        counts[et.type] += 1
    res = {
        "beta": vc.threshold,
        "gprime_vertices": len(gp.vertices),
        "gprime_edges": len(gp.edges),
        "gprime_loops": len(gp.loops()),
        "gdouble_edges": len(gpp.edges),
        "two_faces": g3.initial_two_faces,
        "gtriple_edges": len(g3.graph.edges),
        "deleted": g3.deleted,
        "edge_types": counts,
        "degree_violations": [list(x) for x in he.degree_violations],
        "loop_adjacency_violations": he.loop_adjacency_violations,
        "smallfaces_violations": [list(x) for x in smallfaces_diagnostic(gpp, vc)],
        "ok": provenance_round_trip(gp, g),
    }
    text = ""
    if args.emit:
        text = format_multigraph(gp, "gprime") + format_multigraph(gpp, "gdouble") + format_multigraph(g3.graph, "gtriple")
    return RunReport("reduce", {"input": args.input, "beta": vc.threshold}, res), text


def cmd_regions(args):
    pg = load_plane(args.input)
    g, vc, gp, gpp, _ = _pipeline(pg, args.beta)
    regs = find_regions(gpp, vc, gp)
    res: dict = {"beta": vc.threshold, "regions": len(regs)}
    sound = True
    for i, r in enumerate(regs):
        issues = check_region_decomposition(r, g)
        sound &= not issues
        res[f"region{i}"] = {
            "b1": r.b1,
            "b2": r.b2,
            "size": r.size,
            "B1": sorted(r.B1),
            "B2": sorted(r.B2),
            "D": sorted(r.D),
            "issues": issues,
        }
    res["ok"] = sound
    return RunReport("regions", {"input": args.input, "beta": vc.threshold}, res), ""


# ---------------------------------------------------------------- corpus

def corpus_job(n: int, seed: int, check: str) -> tuple[int, str, str]:
    """(seed, verdict, detail) for one corpus graph."""
    pg = random_plane_c4free(n, seed)
    g = pg.graph
    delta = g.max_degree
    if check == "degeneracy":
        cert = good_order_certificate(g)
        h = square(g)
        colors = greedy_color_from_order(h, list(reversed(cert.order)))
        ok = cert.ok and is_proper(h, colors) and max(colors) <= delta + 73
        return seed, "PASS" if ok else "FAIL", f"n={g.n} delta={delta} back={cert.max_back_degree} colors={max(colors)}"
    if check == "c4free":
        ok = not forbidden_cycles(g, {4}, cap=4)
        return seed, "PASS" if ok else "FAIL", f"n={g.n} delta={delta}"
    if check == "discharge":
        check_discharge_domain(pg)
        ledger = run_discharging(pg, BIG_THRESHOLD, check=False)
        ok = all(t == -8 for t in ledger.stage_totals().values())
        extra = ""
        if delta >= BIG_THRESHOLD:
            v = discharging_contradiction_check(pg, BIG_THRESHOLD)
            ok = ok and v.ok
            extra = f" contradiction={v.verdict}"
        return seed, "PASS" if ok else "FAIL", f"n={g.n} delta={delta} total={ledger.total()}{extra}"
    if check == "reduction":
        vc = classify_vertices(g, default_threshold(g))
        try:
            gp = build_g_prime(pg, vc)
        except AdjacentSuppressible as exc:
            return seed, "INFO", f"out-of-domain edge={exc.edge}"
        classify_edge_types(gp, g, vc)
        gpp = build_g_double_prime(gp)
        build_g_triple_prime(gpp)
        regs = find_regions(gpp, vc, gp)
        ok = provenance_round_trip(gp, g) and all(not check_region_decomposition(r, g) for r in regs)
        return seed, "PASS" if ok else "FAIL", f"n={g.n} delta={delta} edges={len(gp.edges)} regions={len(regs)}"
    raise ValueError(f"unknown check {check}")


def run_corpus(args) -> tuple[int, str]:
    start = args.start_seed if args.start_seed is not None else default_seed()
    seeds = list(range(start, start + args.seeds))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(corpus_job, [args.n] * len(seeds), seeds, [args.check] * len(seeds)))
    else:
        rows = [corpus_job(args.n, s, args.check) for s in seeds]
    rows.sort()
    lines = [f"{s}\t{v}\t{detail}" for s, v, detail in rows]
    fails = sum(1 for _, v, _ in rows if v == "FAIL")
    lines.append(f"summary\t{len(rows) - fails}/{len(rows)} not failing ({args.check})")
    return (EXIT_FAIL if fails else EXIT_OK), "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sqcolor", description="Tools for coloring squares of C4-free plane graphs.")
    p.add_argument("--json", action="store_true", help="print one JSON object instead of key/value lines")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed time (byte-stable output)")
    p.add_argument("--force", action="store_true", help="lift solver size guards")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp, square_flag=False):
        sp.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin")
        if square_flag:
            sp.add_argument("--square", action="store_true", help="work on the square of the input")
        return sp

    g = sub.add_parser("gen", help="generate a graph")
    g.add_argument("kind", choices=GEN_KINDS)
    for name in ("k", "t", "q", "n", "seed"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--format", choices=("auto", "plane", "edges"), default="auto", help="auto: rotation system when an embedding exists")
    g.set_defaults(func=cmd_gen)

    s = with_input(sub.add_parser("square", help="square statistics or edge list"))
    s.add_argument("--emit", action="store_true", help="print the square as an edge list")
    s.set_defaults(func=cmd_square)

    c = with_input(sub.add_parser("check-c4free", help="look for forbidden cycle lengths"))
    c.add_argument("--lengths", type=int, nargs="+", default=[4])
    c.add_argument("--cap", type=int, default=12)
    c.set_defaults(func=cmd_check_c4free)

    d = with_input(sub.add_parser("degeneracy", help="degeneracy order of the square against Delta+slack"))
    d.add_argument("--slack", type=int, default=72)
    d.set_defaults(func=cmd_degeneracy)

    for name, fn, helptext in (
        ("chromatic", cmd_chromatic, "exact chromatic number"),
        ("at", cmd_at, "Alon-Tarsi number"),
        ("paint", cmd_paint, "paint number"),
        ("chain", cmd_chain, "chi <= choice <= paint <= AT <= degeneracy+1"),
    ):
        with_input(sub.add_parser(name, help=helptext), square_flag=True).set_defaults(func=fn)

    for name, fn in (("list-color", cmd_list_color), ("corr-color", cmd_corr_color)):
        sp = sub.add_parser(name, help=f"{name.split('-')[0]} coloring from an assignment file")
        sp.add_argument("input")
        sp.add_argument("assignment")
        sp.add_argument("--square", action="store_true")
        sp.set_defaults(func=fn)

    k = sub.add_parser("kernel", help="kernels, kernel colorings and two-clique orientations")
    k.add_argument("mode", choices=("check", "color", "two-cliques"))
    k.add_argument("input", nargs="?", default="-", help="digraph as 'n m' then arcs 'u v'")
    k.add_argument("--assignment")
    k.add_argument("--n1", type=int, default=7)
    k.add_argument("--n2", type=int, default=7)
    k.add_argument("--p", type=int, default=1)
    k.add_argument("--tail-size", type=int, default=1)
    k.add_argument("--slack", type=int, default=1)
    k.add_argument("--seed", type=int)
    k.add_argument("--check-bounds", action="store_true", help="enforce the counting floor")
    k.set_defaults(func=cmd_kernel)

    ds = with_input(sub.add_parser("discharge", help="run the discharging rules"))
    ds.add_argument("--beta", type=int, default=BIG_THRESHOLD)
    ds.add_argument("--ledger", action="store_true", help="dump every final charge")
    ds.set_defaults(func=cmd_discharge)

    r = with_input(sub.add_parser("reduce", help="build G', G'' and G'''"))
    r.add_argument("--beta", type=int)
    r.add_argument("--emit", action="store_true", help="print the three multigraphs before the report")
    r.set_defaults(func=cmd_reduce)

    rg = with_input(sub.add_parser("regions", help="list r-regions and their decompositions"))
    rg.add_argument("--beta", type=int)
    rg.set_defaults(func=cmd_regions)

    cp = sub.add_parser("corpus", help="run a check over random C4-free plane graphs")
    cp.add_argument("--n", type=int, default=100)
    cp.add_argument("--seeds", type=int, default=20)
    cp.add_argument("--start-seed", type=int)
    cp.add_argument("--check", choices=("degeneracy", "discharge", "reduction", "c4free"), default="degeneracy")
    cp.add_argument("--jobs", type=int, default=1)
    cp.set_defaults(func=None)
    return p


def dispatch(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    t0 = time.perf_counter()
    out = sys.stdout
    try:
        with lifted_guards(args.force):
            if args.command == "corpus":
                code, text = run_corpus(args)
                out.write(text)
                return code
            report, text = args.func(args)
    except TooLarge as exc:
        print(f"error\tsize guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (FormatError, CapExceeded) as exc:
        print(f"error\t{exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionViolated, HypothesesTooTight, AdjacentSuppressible) as exc:
        print(f"error\t{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SqColorError, ValueError, KeyError) as exc:
        print(f"error\t{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error\t{exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is None:
        out.write(text)
        return EXIT_OK
    if args.force:
        report.results["forced"] = True
    if not args.no_timing:
        report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    if text:
        out.write(text)
    out.write(report.to_json() + "\n" if args.json else report.to_lines())
    return EXIT_FAIL if report.verdict == "FAIL" else EXIT_OK


def main() -> None:
    sys.exit(dispatch())
