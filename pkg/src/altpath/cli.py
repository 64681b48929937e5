"""Command-line front end.

Subcommands: filter (write the bounded relevance neighborhood), solve
(relevance-restricted DPLL over ground input), deepen (try growing
neighborhood levels until one refutes), distance / path / radius / stats
(diagnostics), split (instance-preserving clause splitting), gen (seeded
benchmark families).

Exit codes follow solver conventions: 10 satisfiable, 20 unsatisfiable,
0 finished without a verdict, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import random
import re
import shlex
import subprocess
import sys
import tempfile
from dataclasses import dataclass

from altpath.clauses import ClauseSet, Literal
from altpath.dpll import (
    SolverConfig,
    UNIT_POLICIES,
    dpll,
    dpll_rel,
    support_radius,
)
from altpath.generators import bounded_occurrence, horn_tree, random_3sat
from altpath.graph import (
    FIRST_ORDER,
    INF,
    PROPOSITIONAL_HUB,
    bfs_from_support,
    build_graph,
    check_alternating_path,
    multi_support_intersection,
    purity_filter,
)
from altpath.parsing import (
    ParseError,
    parse_auto,
    parse_dimacs,
    parse_tptp,
    print_format,
    print_tptp,
)
from altpath.splitting import (
    binary_split_plan,
    choose_split_variable,
    descendants,
    expand_restricted,
    full_split_plan,
    split_clause,
)


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation; every subcommand reads the slice it needs."""

    command: str = ""
    input: str | None = None
    fmt: str = "auto"
    supports: tuple[str, ...] = ()
    bound: int | None = None
    trusted: bool = False
    no_relevance: bool = False
    unit_policy: str = "relevant_only"
    hub: bool = False
    purity: bool = False
    intersect: bool = False
    output: str | None = None
    csv: str | None = None
    json_out: bool = False
    count_calls: bool = False
    max_calls: int | None = None
    slice_calls: int = 256
    max_rounds: int = 16
    prover: str | None = None
    prover_timeout: float = 5.0
    include_base: str | None = None
    seed: int = 0
    pairs: tuple[tuple[int, int], ...] = ()
    to_id: int | None = None
    clause_id: int | None = None
    var: str | None = None
    binary: bool = False
    extra_constant: str | None = None
    family: str | None = None
    gen_vars: int = 20
    gen_clauses: int = 80
    depth: int = 3
    branching: int = 2
    b: int = 3
    k: int = 3
    preds: int = 12
    first_order: bool = False


EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_UNKNOWN = 0

_VERDICT_CODE = {"sat": EXIT_SAT, "unsat": EXIT_UNSAT, "unknown": EXIT_UNKNOWN}
_VERDICT_LINE = {
    "sat": "s SATISFIABLE",
    "unsat": "s UNSATISFIABLE",
    "unknown": "s UNKNOWN",
}

_COUNTING_NOTE = (
    "note: levels count clauses along a connection, so support clauses sit "
    "at level 1; a convention starting the support at 0 reports one less"
)


# ---------------------------------------------------------------------------
# Input plumbing


def _load(cfg: RunConfig) -> tuple[ClauseSet, str]:
    if cfg.input is None:
        raise ValueError("an input file is required")
    with open(cfg.input, "rb") as fh:
        data = fh.read()
    base = cfg.include_base or os.environ.get("TPTP")
    if cfg.fmt == "auto":
        return parse_auto(data, path=cfg.input, include_base=base)
    if cfg.fmt == "dimacs":
        return parse_dimacs(data, source=cfg.input), "dimacs"
    return parse_tptp(data, source=cfg.input, include_base=base), "tptp"


def resolve_support(cs: ClauseSet, spec: str | None, fmt: str) -> list[int]:
    """Turn a support spec into clause ids; error when it selects nothing.

    Specs: role:<role>, pos, neg, ids:<comma list>, file:<path of ids>.
    Default: negated_conjecture clauses for TPTP, all-negative clauses for
    DIMACS.
    """
    if spec is None:
        spec = "role:negated_conjecture" if fmt == "tptp" else "neg"
    if spec.startswith("role:"):
        role = spec[5:]
        ids = [c.id for c in cs.clauses if cs.roles.get(c.id) == role]
    elif spec == "pos":
        ids = [c.id for c in cs.clauses if c.literals and all(l.positive for l in c.literals)]
    elif spec == "neg":
        ids = [c.id for c in cs.clauses if c.literals and not any(l.positive for l in c.literals)]
    elif spec.startswith("ids:"):
        ids = [int(tok) for tok in spec[4:].split(",") if tok]
        for cid in ids:
            if not cs.has_id(cid):
                raise ValueError(f"support id {cid} not in the clause set")
    elif spec.startswith("file:"):
        with open(spec[5:]) as fh:
            ids = [int(tok) for tok in fh.read().split()]
        for cid in ids:
            if not cs.has_id(cid):
                raise ValueError(f"support id {cid} not in the clause set")
    else:
        raise ValueError(
            f"unknown support spec {spec!r} (use role:<r>, pos, neg, ids:<list> or file:<path>)"
        )
    if not ids:
        raise ValueError(f"support spec {spec!r} selects no clauses")
    return ids


def _graph_mode(cfg: RunConfig) -> str:
    return PROPOSITIONAL_HUB if cfg.hub else FIRST_ORDER


def _solver_config(cfg: RunConfig) -> SolverConfig:
    return SolverConfig(unit_policy=cfg.unit_policy, max_calls=cfg.max_calls)


def _emit(cfg: RunConfig, text: str) -> None:
    # with --json and no --output the payload is dropped: the JSON line is
    # the whole stdout contract then
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    elif not cfg.json_out:
        sys.stdout.write(text)


def _json_dump(payload) -> None:
    print(json.dumps(payload, sort_keys=True))


def _show(d: float) -> str:
    return "inf" if d == INF else str(int(d))


# ---------------------------------------------------------------------------
# filter


def cmd_filter(cfg: RunConfig) -> int:
    cs, fmt = _load(cfg)
    if cfg.bound is None:
        raise ValueError("filter needs a distance bound (-n)")
    total = len(cs)
    if cfg.purity:
        cs = purity_filter(cs)
    specs = list(cfg.supports) or [None]
    if len(specs) > 1 and not cfg.intersect:
        raise ValueError("several --support specs need --intersect")
    supports = [resolve_support(cs, spec, fmt) for spec in specs]
    if cfg.intersect and len(supports) > 1:
        sub = multi_support_intersection(cs, supports, cfg.bound, _graph_mode(cfg))
        dmap = None
    else:
        dmap = bfs_from_support(build_graph(cs, _graph_mode(cfg)), supports[0])
        sub = cs.subset(dmap.relevant_ids(cfg.bound))
    _emit(cfg, print_format(sub, fmt))
    if cfg.csv:
        if dmap is None:
            raise ValueError("--csv needs a single support set")
        with open(cfg.csv, "w") as fh:
            fh.write(dmap.to_csv())
    histogram: dict[str, int] = {}
    if dmap is not None:
        for d in dmap.clause_distance.values():
            histogram[_show(d)] = histogram.get(_show(d), 0) + 1
    if cfg.json_out:
        _json_dump(
            {
                "input_clauses": total,
                "after_purity": len(cs) if cfg.purity else None,
                "support": sorted(set().union(*map(set, supports))),
                "bound": cfg.bound,
                "relevant": len(sub),
                "histogram": histogram,
            }
        )
        return 0
    out = sys.stderr if cfg.output is None else sys.stdout
    print(f"input clauses: {total}", file=out)
    if cfg.purity:
        print(f"after purity: {len(cs)}", file=out)
    print(f"support clauses: {sum(len(s) for s in supports)}", file=out)
    print(f"relevant at {cfg.bound}: {len(sub)}", file=out)
    for key in sorted(histogram, key=lambda s: (s == "inf", len(s), s)):
        label = "unreachable" if key == "inf" else f"distance {key}"
        print(f"{label}: {histogram[key]}", file=out)
    return 0


# ---------------------------------------------------------------------------
# solve


def _model_lines(cs: ClauseSet, model: dict[Literal, bool], fmt: str) -> list[str]:
    if not model:
        return []
    if fmt == "dimacs":
        ints = sorted(
            (int(atom.pred) if value else -int(atom.pred)
             for atom, value in model.items()),
            key=abs,
        )
        return ["v " + " ".join(str(i) for i in ints) + " 0"]
    lits = sorted(
        (atom if value else atom.negated() for atom, value in model.items()),
        key=str,
    )
    return ["v " + " ".join(str(l) for l in lits)]


def cmd_solve(cfg: RunConfig) -> int:
    cs, fmt = _load(cfg)
    if not cs.is_ground():
        raise ValueError(
            "solving needs a variable-free clause set; use deepen with an "
            "external prover for first-order input"
        )
    solver_cfg = _solver_config(cfg)
    if cfg.no_relevance:
        result = dpll(cs, solver_cfg)
    else:
        spec = cfg.supports[0] if cfg.supports else None
        support = resolve_support(cs, spec, fmt)
        result = dpll_rel(
            cs, support, solver_cfg, mode="trusted" if cfg.trusted else "fallback"
        )
    stats = result.stats
    lines = [
        f"c calls={stats.calls} splits={stats.splits} units={stats.unit_props} "
        f"fallback={stats.fallback_calls}"
    ]
    budget = None
    if cfg.count_calls and result.neighborhood is not None:
        k = result.neighborhood["atoms"]
        budget = 2**k
        lines.append(f"c calls={stats.calls} k={k} budget={budget}")
    lines.append(_VERDICT_LINE[result.verdict])
    if result.verdict == "sat":
        lines.extend(_model_lines(cs, result.model, fmt))
    if cfg.json_out:
        _json_dump(
            {
                "verdict": result.verdict,
                "calls": stats.calls,
                "splits": stats.splits,
                "units": stats.unit_props,
                "fallback": stats.fallback_calls,
                "k": None if result.neighborhood is None else result.neighborhood["atoms"],
                "budget": budget,
                "model": {str(a): v for a, v in sorted(result.model.items(), key=lambda kv: str(kv[0]))},
            }
        )
    else:
        for line in lines:
            print(line)
    return _VERDICT_CODE[result.verdict]


# ---------------------------------------------------------------------------
# deepen


_SZS = re.compile(r"SZS status (\w+)")
_SZS_VERDICT = {
    "Theorem": "unsat",
    "Unsatisfiable": "unsat",
    "ContradictoryAxioms": "unsat",
    "Satisfiable": "sat",
    "CounterSatisfiable": "sat",
}


def _prover_verdict(template: str, cs: ClauseSet, timeout: float) -> tuple[str, str]:
    """Run the external prover on a temp TPTP file; (verdict, detail)."""
    fd, path = tempfile.mkstemp(suffix=".p")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(print_tptp(cs))
        argv = [tok.replace("{file}", path) for tok in shlex.split(template)]
        try:
            proc = subprocess.run(
                argv, capture_output=True, text=True, timeout=timeout
            )
        except subprocess.TimeoutExpired:
            return "unknown", "timeout"
        except OSError as exc:
            return "unknown", f"prover error ({exc})"
        match = _SZS.search(proc.stdout)
        if match:
            status = match.group(1)
            return _SZS_VERDICT.get(status, "unknown"), f"SZS {status}"
        if proc.returncode != 0:
            return "unknown", f"prover error (exit {proc.returncode})"
        return "unknown", "no SZS status in prover output"
    finally:
        os.unlink(path)


def _deepen_stages(cs: ClauseSet, cfg: RunConfig, support: list[int]):
    """Level slices in ascending order, ending with the full set if the
    reachable part does not already cover it."""
    dmap = bfs_from_support(build_graph(cs, _graph_mode(cfg)), support)
    levels = sorted({int(d) for d in dmap.clause_distance.values() if d < INF})
    stages = [(str(n), cs.subset(dmap.relevant_ids(n))) for n in levels]
    if not stages or len(stages[-1][1]) < len(cs):
        stages.append(("full", cs))
    return stages


def _finish_deepen(cfg: RunConfig, label: str | None, verdict: str,
                   pending: list[str], lines: list[str]) -> int:
    if verdict == "unsat":
        lines.append(f"c unsat at level {label}")
        if pending:
            lines.append(
                "c levels " + ", ".join(pending)
                + f" undecided; the support radius is at most {label}"
            )
        lines.append("c " + _COUNTING_NOTE)
    lines.append(_VERDICT_LINE[verdict])
    if cfg.json_out:
        _json_dump(
            {
                "verdict": verdict,
                "level": label,
                "undecided": pending,
                "note": _COUNTING_NOTE if verdict == "unsat" else None,
            }
        )
    else:
        for line in lines:
            print(line)
    return _VERDICT_CODE[verdict]


def cmd_deepen(cfg: RunConfig) -> int:
    cs, fmt = _load(cfg)
    spec = cfg.supports[0] if cfg.supports else None
    support = resolve_support(cs, spec, fmt)
    stages = _deepen_stages(cs, cfg, support)
    lines: list[str] = []
    if not cs.is_ground():
        if not cfg.prover:
            raise ValueError(
                "first-order deepening needs an external prover "
                "(--prover 'command {file}')"
            )
        undecided: list[str] = []
        for label, sub in stages:
            verdict, detail = _prover_verdict(cfg.prover, sub, cfg.prover_timeout)
            lines.append(f"c level {label}: {verdict} ({detail})")
            if verdict == "unsat":
                return _finish_deepen(cfg, label, "unsat", undecided, lines)
            if verdict == "unknown":
                undecided.append(label)
        if undecided:
            return _finish_deepen(cfg, None, "unknown", undecided, lines)
        return _finish_deepen(cfg, stages[-1][0], "sat", [], lines)

    resolved: dict[str, str] = {}
    for rnd in range(1, cfg.max_rounds + 1):
        budget = cfg.slice_calls * 2 ** (rnd - 1)
        for idx, (label, sub) in enumerate(stages):
            if label in resolved:
                continue
            run_cfg = SolverConfig(unit_policy=cfg.unit_policy, max_calls=budget)
            verdict = dpll(sub, run_cfg).verdict
            if verdict == "unknown":
                continue
            resolved[label] = verdict
            lines.append(f"c level {label}: {verdict} (round {rnd}, budget {budget})")
            if verdict == "unsat":
                pending = [l for l, _ in stages[:idx] if l not in resolved]
                return _finish_deepen(cfg, label, "unsat", pending, lines)
        if len(resolved) == len(stages):
            return _finish_deepen(cfg, stages[-1][0], "sat", [], lines)
    pending = [l for l, _ in stages if l not in resolved]
    return _finish_deepen(cfg, None, "unknown", pending, lines)


# ---------------------------------------------------------------------------
# diagnostics


def cmd_distance(cfg: RunConfig) -> int:
    cs, _ = _load(cfg)
    if not cfg.pairs:
        raise ValueError("distance needs at least one --pair FROM TO")
    graph = build_graph(cs, _graph_mode(cfg))
    results = []
    for from_id, to_id in cfg.pairs:
        results.append(bfs_from_support(graph, [from_id]).distance(to_id))
    if cfg.json_out:
        _json_dump(
            [
                {"from": f, "to": t, "distance": "inf" if d == INF else int(d)}
                for (f, t), d in zip(cfg.pairs, results)
            ]
        )
    else:
        for d in results:
            print(_show(d))
    return 0


def cmd_path(cfg: RunConfig) -> int:
    cs, fmt = _load(cfg)
    if cfg.to_id is None:
        raise ValueError("path needs --to CLAUSE_ID")
    spec = cfg.supports[0] if cfg.supports else None
    support = resolve_support(cs, spec, fmt)
    dmap = bfs_from_support(build_graph(cs, _graph_mode(cfg)), support)
    path = dmap.witness(cfg.to_id)
    check_alternating_path(cs, path)
    if cfg.json_out:
        _json_dump(
            {
                "clauses": list(path.clause_ids),
                "length": path.length,
                "links": [[str(e), str(n)] for e, n in path.links],
            }
        )
    else:
        print(path)
        print(f"length {path.length}")
        print("valid")
    return 0


def cmd_radius(cfg: RunConfig) -> int:
    cs, fmt = _load(cfg)
    if not cs.is_ground():
        raise ValueError("the radius measurement needs a variable-free clause set")
    spec = cfg.supports[0] if cfg.supports else None
    support = resolve_support(cs, spec, fmt)
    radius = support_radius(cs, support, _solver_config(cfg))
    if cfg.json_out:
        _json_dump({"radius": _show(radius)})
    else:
        print(f"support radius: {_show(radius)}")
    return 0


def _occurrence_bound(cs: ClauseSet) -> int:
    counts: dict[tuple[str, bool], int] = {}
    for c in cs.clauses:
        for key in {(l.pred, l.positive) for l in c.literals}:
            counts[key] = counts.get(key, 0) + 1
    return max(counts.values(), default=0)


def _growth_budget(n_support: int, b: int, k: int, n: int) -> int:
    """Worst-case size of the level-n neighborhood when every predicate
    occurs with a given sign in at most b clauses and clauses have at most
    k literals."""
    if n <= 1:
        return n_support
    return 2 * n_support * b ** (n - 1) * k * (k - 1) ** (n - 2)


def cmd_stats(cfg: RunConfig) -> int:
    cs, fmt = _load(cfg)
    b = _occurrence_bound(cs)
    k = max((len(c) for c in cs.clauses), default=0)
    payload = {
        "clauses": len(cs),
        "atoms": len(cs.atoms()),
        "b": b,
        "k": k,
    }
    if cfg.supports or cfg.bound is not None:
        if cfg.bound is None:
            raise ValueError("--bound is needed to print the size budget")
        spec = cfg.supports[0] if cfg.supports else None
        support = resolve_support(cs, spec, fmt)
        dmap = bfs_from_support(build_graph(cs, _graph_mode(cfg)), support)
        payload["support"] = len(support)
        payload["relevant"] = len(dmap.relevant_ids(cfg.bound))
        payload["budget"] = _growth_budget(len(support), b, k, cfg.bound)
    if cfg.json_out:
        _json_dump(payload)
    else:
        print(f"clauses: {payload['clauses']}")
        print(f"atoms: {payload['atoms']}")
        print(f"b={payload['b']} k={payload['k']}")
        if "budget" in payload:
            print(f"support clauses: {payload['support']}")
            print(f"relevant at {cfg.bound}: {payload['relevant']}")
            print(f"size budget at {cfg.bound}: {payload['budget']}")
    return 0


# ---------------------------------------------------------------------------
# split


def cmd_split(cfg: RunConfig) -> int:
    cs, _ = _load(cfg)
    if cs.is_ground():
        raise ValueError("the input is variable-free; there is nothing to split")
    if cfg.var is not None and cfg.clause_id is None:
        raise ValueError("--var needs --clause")
    clause_id, var = cfg.clause_id, cfg.var
    if clause_id is None:
        for c in cs.clauses:
            picked = choose_split_variable(cs, c.id)
            if picked is not None:
                clause_id, var = c.id, picked.name
                break
        if clause_id is None:
            raise ValueError(
                "no clause/variable pair breaks any unification; "
                "pick one with --clause and --var"
            )
    builder = binary_split_plan if cfg.binary else full_split_plan
    plan = builder(cs, clause_id, var=var, extra_constant=cfg.extra_constant)
    after = split_clause(cs, plan)
    kids = descendants(cs, after)
    flat = expand_restricted(after)
    header = (
        f"% split c{plan.clause_id} on {plan.var} into {len(kids)} clauses"
        f" ({'binary' if cfg.binary else 'full'})\n"
    )
    _emit(cfg, header + print_tptp(flat))
    if cfg.json_out:
        _json_dump(
            {
                "clause": plan.clause_id,
                "var": plan.var,
                "groups": [sorted(g) for g in plan.groups],
                "replacements": kids,
                "output_clauses": len(flat),
            }
        )
    return 0


# ---------------------------------------------------------------------------
# gen


def cmd_gen(cfg: RunConfig) -> int:
    rng = random.Random(cfg.seed)
    if cfg.family == "3sat":
        cs = random_3sat(rng, cfg.gen_vars, cfg.gen_clauses)
        fmt = "dimacs"
    elif cfg.family == "horn-tree":
        cs = horn_tree(cfg.depth, cfg.branching)
        cs = ClauseSet.from_clauses(
            list(cs.clauses), roles={1: "negated_conjecture"}
        )
        fmt = "tptp"
    elif cfg.family == "bounded":
        cs = bounded_occurrence(
            rng, cfg.b, cfg.k, cfg.preds, cfg.gen_clauses,
            first_order=cfg.first_order,
        )
        fmt = "tptp" if cfg.first_order else "dimacs"
    else:
        raise ValueError(f"unknown family {cfg.family!r}")
    _emit(cfg, print_format(cs, fmt))
    return 0


# ---------------------------------------------------------------------------
# argument wiring


def _add_common(p: argparse.ArgumentParser, input_required: bool = True) -> None:
    if input_required:
        p.add_argument("input", help="input file (DIMACS or TPTP CNF)")
    p.add_argument("--format", dest="fmt", choices=("auto", "dimacs", "tptp"),
                   default="auto", help="input format (default: detect)")
    p.add_argument("--support", dest="supports", action="append", default=[],
                   metavar="SPEC",
                   help="support spec: role:<r>, pos, neg, ids:<list>, file:<path>")
    p.add_argument("--hub", action="store_true",
                   help="shared-literal graph (ground input only)")
    p.add_argument("--include-base", dest="include_base",
                   help="directory for TPTP includes (default: $TPTP)")
    p.add_argument("--json", dest="json_out", action="store_true",
                   help="machine-readable summary on stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="altpath",
        description="Relevance filtering, solving and diagnostics over clause sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter", help="write the distance-n neighborhood of the support set")
    _add_common(p)
    p.add_argument("-n", "--bound", type=int, help="distance bound")
    p.add_argument("--purity", action="store_true", help="drop partnerless clauses first")
    p.add_argument("--intersect", action="store_true",
                   help="intersect the neighborhoods of several --support specs")
    p.add_argument("-o", "--output", help="write clauses here instead of stdout")
    p.add_argument("--csv", help="write a clause_id,distance table here")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("solve", help="relevance-restricted DPLL on ground input")
    _add_common(p)
    p.add_argument("--trusted", action="store_true",
                   help="accept stepping-free leftovers as satisfied")
    p.add_argument("--no-relevance", dest="no_relevance", action="store_true",
                   help="plain DPLL without a support set")
    p.add_argument("--unit-policy", dest="unit_policy", choices=UNIT_POLICIES,
                   default="relevant_only")
    p.add_argument("--max-calls", dest="max_calls", type=int)
    p.add_argument("--count-calls", dest="count_calls", action="store_true",
                   help="print the call count against the 2^k budget")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("deepen", help="grow neighborhood levels until one refutes")
    _add_common(p)
    p.add_argument("--unit-policy", dest="unit_policy", choices=UNIT_POLICIES,
                   default="relevant_only")
    p.add_argument("--slice", dest="slice_calls", type=int, default=256,
                   help="call budget of the first round (doubles per round)")
    p.add_argument("--max-rounds", dest="max_rounds", type=int, default=16)
    p.add_argument("--prover", help="external prover command, {file} is the TPTP path")
    p.add_argument("--prover-timeout", dest="prover_timeout", type=float, default=5.0)
    p.set_defaults(func=cmd_deepen)

    p = sub.add_parser("distance", help="relevance distance between clause pairs")
    _add_common(p)
    p.add_argument("--pair", dest="pairs", nargs=2, type=int, action="append",
                   default=[], metavar=("FROM", "TO"))
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("path", help="shortest connection witness to a clause")
    _add_common(p)
    p.add_argument("--to", dest="to_id", type=int, help="target clause id")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("radius", help="smallest refuting neighborhood level")
    _add_common(p)
    p.add_argument("--unit-policy", dest="unit_policy", choices=UNIT_POLICIES,
                   default="all")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("stats", help="occurrence bound b, width k and size budgets")
    _add_common(p)
    p.add_argument("-n", "--bound", type=int, help="level for the size budget")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="replace a clause by symbol-wise instances")
    _add_common(p)
    p.add_argument("--clause", dest="clause_id", type=int, help="clause to split")
    p.add_argument("--var", help="variable to split on")
    p.add_argument("--binary", action="store_true",
                   help="two balanced symbol groups instead of one per symbol")
    p.add_argument("--extra-constant", dest="extra_constant",
                   help="allow this fresh constant when the set has none")
    p.add_argument("-o", "--output", help="write the result here instead of stdout")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("gen", help="seeded benchmark families")
    p.add_argument("family", choices=("3sat", "horn-tree", "bounded"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vars", dest="gen_vars", type=int, default=20)
    p.add_argument("--clauses", dest="gen_clauses", type=int, default=80)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--branching", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--preds", type=int, default=12)
    p.add_argument("--first-order", dest="first_order", action="store_true")
    p.add_argument("-o", "--output", help="write the instance here instead of stdout")
    p.set_defaults(func=cmd_gen)

    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    values = {}
    for field in dataclasses.fields(RunConfig):
        if not hasattr(ns, field.name):
            continue
        value = getattr(ns, field.name)
        if field.name == "supports":
            value = tuple(value)
        elif field.name == "pairs":
            value = tuple((int(a), int(b)) for a, b in value)
        values[field.name] = value
    return RunConfig(**values)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(_config(ns))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
