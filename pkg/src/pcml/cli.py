"""Command-line front end.

Plain-text line protocol on stdout; `--json` switches any subcommand to a
single JSON document.  Identical invocations produce byte-identical output.
Exit codes: 0 for success (and for "equivalent"/"equal"), 1 for a negative
verdict or exhausted search, 2 for any parse or semantic error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import PcmlError, PhiSearchExhausted
from .freemetab import LiePoly
from .graph import Graph, classify_vertices, parse_graph, format_graph, t_prime, t_star
from .oracle import abs_det, build_component, coordinates
from .parsing import (
    format_comm,
    format_lie,
    format_mdeg,
    format_monomial,
    format_word,
    parse_comm,
    parse_lie,
)
from .pcalg import (
    PCAlgebra,
    build_hom,
    default_phi_config,
    find_injective_phi,
    parse_map_spec,
    phi_map,
)
from .equivalence import decide_universal_equivalence
from .structure import (
    annihilator_generators,
    centralizer_description,
    in_annihilator,
    in_centralizer,
    phi_formula_witness,
    two_nonendpoint_witness,
)
from . import figures as figmod

DEFAULT_SEARCH_BOUND = 64


class _Report:
    def __init__(self, json_mode: bool, out):
        self.json_mode = json_mode
        self.out = out
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, s: str) -> None:
        self.lines.append(s)

    def set(self, key: str, value) -> None:
        self.data[key] = value

    def flush(self) -> None:
        if self.json_mode:
            print(json.dumps(self.data, sort_keys=True, indent=2), file=self.out)
        else:
            for s in self.lines:
                print(s, file=self.out)


def _load_graph(path: str) -> Graph:
    return parse_graph(Path(path).read_text())


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _figure_lines(rep: _Report, paths) -> None:
    rep.set("figures", [str(p) for p in paths])
    for p in paths:
        rep.line(f"figure: {p}")


def _graph_json(g: Graph) -> dict:
    return {"vertices": g.n, "edges": sorted(list(e) for e in g.edges)}


# ---------------------------------------------------------------------------
# handlers


def _cmd_nf(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    raw = parse_lie(g.n, ns.expr)
    if ns.map:
        hom = build_hom(alg, parse_map_spec(Path(ns.map).read_text()))
        poly = hom.apply(raw)
        rep.set("warnings", list(hom.warnings))
    else:
        poly = alg.normal_form(raw)
    text = format_lie(poly)
    rep.line(text)
    rep.set("normal_form", text)
    return 0


def _cmd_eq(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    equal = alg.normal_form(parse_lie(g.n, ns.expr1)) == alg.normal_form(
        parse_lie(g.n, ns.expr2)
    )
    rep.line(f"equal: {_bool(equal)}")
    rep.set("equal", equal)
    return 0 if equal else 1


def _cmd_bracket(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    poly = alg.bracket(parse_lie(g.n, ns.expr1), parse_lie(g.n, ns.expr2))
    text = format_lie(poly)
    rep.line(text)
    rep.set("normal_form", text)
    return 0


def _cmd_act(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    poly = alg.module_action(parse_lie(g.n, ns.lie_expr), parse_comm(g.n, ns.comm_expr))
    text = format_lie(poly)
    rep.line(text)
    rep.set("normal_form", text)
    return 0


def _cmd_basis(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    groups = []
    for delta, words in alg.enumerate_basis(ns.max_degree):
        groups.append(
            {"mdeg": list(delta), "monomials": [format_word(w) for w in words]}
        )
        for w in words:
            rep.line(f"{format_mdeg(delta)} {format_word(w)}")
    rep.set("basis", groups)
    return 0


def _cmd_ann(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    ideal = annihilator_generators(alg, ns.i, ns.j)
    gens = [format_monomial(e) for e in ideal.generators]
    rep.line("generators: " + (", ".join(gens) if gens else "0"))
    rep.set("generators", gens)
    if ns.member is not None:
        member = in_annihilator(alg, ns.i, ns.j, parse_comm(g.n, ns.member))
        rep.line(f"member: {_bool(member)}")
        rep.set("member", member)
    return 0


def _cmd_cent(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    if ns.target is not None:
        desc = centralizer_description(alg, ns.target)
        linear = ", ".join(f"x{v}" for v in desc.linear)
        quads = ", ".join(f"[x{i},x{j}]" for i, j in desc.quadratic_pairs)
        fdom = ", ".join(f"x{v}" for v in desc.f_domain)
        rep.line(f"case: {desc.case}")
        rep.line(f"linear: {linear or 'none'}")
        rep.line(f"quadratic: {quads or 'none'}")
        rep.line(f"f-domain: {fdom or 'none'}")
        rep.set(
            "description",
            {
                "case": desc.case,
                "linear": list(desc.linear),
                "quadratic_pairs": [list(p) for p in desc.quadratic_pairs],
                "f_domain": list(desc.f_domain),
            },
        )
        return 0
    member = in_centralizer(
        alg, parse_lie(g.n, ns.of), parse_lie(g.n, ns.element)
    )
    rep.line(f"member: {_bool(member)}")
    rep.set("member", member)
    return 0


def _cmd_ueq(ns, rep: _Report) -> int:
    t1 = _load_graph(ns.g1)
    t2 = _load_graph(ns.g2)
    verdict = decide_universal_equivalence(t1, t2)
    rep.line(f"equivalent: {_bool(verdict.equivalent)}")
    rep.set("equivalent", verdict.equivalent)
    if ns.certificate:
        rep.line(f"tstar1: {verdict.star1}")
        rep.line(f"tstar2: {verdict.star2}")
        rep.line(f"tprime1: {verdict.prime1}")
        rep.line(f"tprime2: {verdict.prime2}")
        rep.set(
            "certificate",
            {
                "tstar1": verdict.star1,
                "tstar2": verdict.star2,
                "tprime1": verdict.prime1,
                "tprime2": verdict.prime2,
            },
        )
    if ns.figures:
        outdir = Path(ns.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        paths = [
            figmod.render_graph(
                t1,
                outdir / "ueq_t1.png",
                "input 1",
                classify_vertices(t1).non_endpoints,
            ),
            figmod.render_graph(
                t2,
                outdir / "ueq_t2.png",
                "input 2",
                classify_vertices(t2).non_endpoints,
            ),
            figmod.render_graph(t_star(t1), outdir / "ueq_core1.png", "core 1"),
            figmod.render_graph(t_star(t2), outdir / "ueq_core2.png", "core 2"),
        ]
        _figure_lines(rep, paths)
    return 0 if verdict.equivalent else 1


def _cmd_tstar(ns, rep: _Report) -> int:
    t = _load_graph(ns.graph)
    result = t_prime(t) if ns.prime else t_star(t)
    for line in format_graph(result).splitlines():
        rep.line(line)
    rep.set("graph", _graph_json(result))
    if ns.figures:
        outdir = Path(ns.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        name = "tprime" if ns.prime else "tstar"
        paths = [
            figmod.render_graph(
                t,
                outdir / f"{name}_input.png",
                "input",
                classify_vertices(t).non_endpoints,
            ),
            figmod.render_graph(result, outdir / f"{name}_result.png", name),
        ]
        _figure_lines(rep, paths)
    return 0


def _cmd_phi(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    endpoint, sib1, sib2 = default_phi_config(g, ns.endpoint, ns.sib1, ns.sib2)
    rep.set("endpoint", endpoint)
    rep.set("sib1", sib1)
    rep.set("sib2", sib2)
    if ns.apply is not None:
        hom = phi_map(alg, endpoint, sib1, sib2, ns.lam, ns.p)
        text = format_lie(hom.apply(parse_lie(g.n, ns.apply)))
        rep.line(text)
        rep.set("normal_form", text)
        return 0
    env_bound = int(os.environ.get("PCML_MAX_SEARCH", DEFAULT_SEARCH_BOUND))
    max_lambda = ns.max_lambda if ns.max_lambda is not None else env_bound
    max_p = ns.max_p if ns.max_p is not None else env_bound
    gammas = [parse_lie(g.n, expr) for expr in ns.gamma]
    try:
        lam, p = find_injective_phi(
            alg,
            gammas,
            endpoint=endpoint,
            sib1=sib1,
            sib2=sib2,
            max_lambda=max_lambda,
            max_p=max_p,
        )
    except PhiSearchExhausted as exc:
        rep.line(f"not-found: lambda<={exc.max_lambda} p<={exc.max_p}")
        rep.set("found", False)
        rep.set("max_lambda", exc.max_lambda)
        rep.set("max_p", exc.max_p)
        return 1
    rep.line(f"lambda={lam} p={p}")
    rep.set("found", True)
    rep.set("lambda", lam)
    rep.set("p", p)
    return 0


def _cmd_witness(ns, rep: _Report) -> int:
    t = _load_graph(ns.graph)
    if ns.kind == "formula":
        report = phi_formula_witness(t)
    else:
        report = two_nonendpoint_witness(t)
        if report is None:
            rep.line("witness: absent")
            rep.set("witness", "absent")
            return 0
    rep.line(report.assignment_line())
    for c in report.conjuncts:
        rep.line(c.report_line())
    ok = report.all_hold()
    rep.line(f"result: {'pass' if ok else 'fail'}")
    rep.set("assignment", {k: v for k, v in report.assignment})
    rep.set(
        "conjuncts",
        [
            {"expr": c.expr, "expected": c.expected, "got": c.got}
            for c in report.conjuncts
        ],
    )
    rep.set("result", "pass" if ok else "fail")
    if ns.figures:
        outdir = Path(ns.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        hot = {v for _, v in report.assignment}
        paths = [
            figmod.render_graph(
                t, outdir / f"witness_{report.kind}.png", f"{report.kind} witness", hot
            )
        ]
        _figure_lines(rep, paths)
    return 0 if ok else 1


def _cmd_oracle_check(ns, rep: _Report) -> int:
    g = _load_graph(ns.graph)
    alg = PCAlgebra(g)
    from .freemetab import multidegrees_up_to

    all_ok = True
    rows_json = []
    by_degree: dict[int, int] = {}
    for delta in multidegrees_up_to(g.n, ns.max_degree):
        qc = build_component(g, delta)
        words = alg.basis_for_multidegree(delta)
        match = len(words) == qc.rank
        if match:
            matrix = [coordinates(qc, LiePoly(g.n, {w: 1})) for w in words]
            det = abs_det(matrix)
        else:
            det = 0
        ok = match and det == 1
        all_ok = all_ok and ok
        by_degree[sum(delta)] = by_degree.get(sum(delta), 0) + qc.rank
        rep.line(
            f"DELTA {format_mdeg(delta)} RANK {qc.rank} BASIS {len(words)} "
            f"MATCH {_bool(match)} DET {det}"
        )
        rows_json.append(
            {
                "mdeg": list(delta),
                "rank": qc.rank,
                "basis": len(words),
                "match": match,
                "det": det,
            }
        )
    rep.line(f"result: {'certified' if all_ok else 'failed'}")
    rep.set("components", rows_json)
    rep.set("result", "certified" if all_ok else "failed")
    if ns.figures:
        outdir = Path(ns.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        degrees = sorted(by_degree)
        paths = [
            figmod.render_rank_chart(
                degrees,
                [by_degree[d] for d in degrees],
                outdir / "oracle_ranks.png",
                "certified basis size by degree",
            )
        ]
        _figure_lines(rep, paths)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcml",
        description="partially commutative metabelian Lie rings over graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, handler):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        return p

    p = add("nf", "canonical form of a Lie expression", _cmd_nf)
    p.add_argument("-g", "--graph", required=True, help="graph file")
    p.add_argument("expr")
    p.add_argument("--map", help="apply a homomorphism spec file first")

    p = add("eq", "decide equality of two expressions", _cmd_eq)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = add("bracket", "bracket of two expressions", _cmd_bracket)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = add("act", "polynomial action on a derived-subring element", _cmd_act)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("lie_expr")
    p.add_argument("comm_expr")

    p = add("basis", "basis monomials up to a total degree", _cmd_basis)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-k", "--max-degree", type=int, required=True)

    p = add("ann", "annihilator ideal of a bracket [xI, xJ]", _cmd_ann)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--member", help="test a polynomial for membership")

    p = add("cent", "centralizer description or membership", _cmd_cent)
    p.add_argument("-g", "--graph", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--target", type=int, help="describe the centralizer of xN")
    mode.add_argument("--element", help="candidate element")
    p.add_argument("--of", help="centralize this expression (with --element)")

    p = add("ueq", "universal equivalence of two trees", _cmd_ueq)
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--certificate", action="store_true")
    p.add_argument("--figures", help="directory for rendered figures")

    p = add("tstar", "core of a tree (induced on non-endpoints)", _cmd_tstar)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--prime", action="store_true", help="prune unnecessary endpoints instead")
    p.add_argument("--figures", help="directory for rendered figures")

    p = add("phi", "endpoint-killing maps: search or apply", _cmd_phi)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--endpoint", type=int)
    p.add_argument("--sib1", type=int)
    p.add_argument("--sib2", type=int)
    p.add_argument("--gamma", action="append", default=[], help="finite set member (repeatable)")
    p.add_argument("--max-lambda", type=int)
    p.add_argument("--max-p", type=int)
    p.add_argument("--apply", help="apply the map to this expression instead")
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--p", dest="p", type=int, default=1)

    p = add("witness", "verify a formula witness over a tree", _cmd_witness)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--kind", choices=["formula", "path"], default="formula")
    p.add_argument("--figures", help="directory for rendered figures")

    p = add("oracle-check", "certify canonical bases against the coordinate model", _cmd_oracle_check)
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-k", "--max-degree", type=int, default=4)
    p.add_argument("--figures", help="directory for rendered figures")

    return parser


def run(argv, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 2 if code not in (0,) else 0
    if ns.command == "phi" and ns.apply is None and not ns.gamma:
        print("error: phi needs --gamma entries (search) or --apply", file=err)
        return 2
    rep = _Report(ns.json, out)
    try:
        code = ns.handler(ns, rep)
    except (PcmlError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    rep.flush()
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
