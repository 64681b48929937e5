"""Ground resolution under the set-of-support discipline.

The search is breadth-first level saturation: level k resolvents take at
least one parent from level k-1 and at least one supported parent, so the
level at which the empty clause appears equals the minimum derivation depth
of any refutation obeying the discipline.  Deduplication is exact-duplicate
only, and only against supported clauses: a resolvent that repeats an
unsupported input clause is kept, because unlike the input it may act as the
supported parent of later steps.  Tautology resolvents are discarded and
tautology inputs never enter the search; both are sound for refutation
finding.

Refutations are emitted as explicit resolution sequences: the supported
input clauses first in id order, then the derivation DAG bottom-up with
every other input clause placed immediately before its first use.  That
ordering keeps each input clause's relevance distance from the support set
within its sequence position, which verify_support_path_property checks.
The converse construction, linear_sequence_from_path, turns a shortest
alternating path into a sequence of 2n-1 entries whose last input is the
path's final clause.

For Horn sets with an all-negative support set the module also provides
positive hyper-resolution by forward chaining, used to contrast derivation
depth against the set-of-support search on goal-tree shaped problems.
"""

from __future__ import annotations

from dataclasses import dataclass

from altpath.clauses import Clause, ClauseSet, Literal, literal_key
from altpath.graph import (
    FIRST_ORDER,
    INF,
    AlternatingPath,
    DistanceMap,
    bfs_from_support,
    build_graph,
)

REFUTED = "refuted"
SATURATED = "saturated"
LIMIT = "limit"

MAX_KEPT_CLAUSES = 100_000
MAX_LEVELS = 50


# ---------------------------------------------------------------------------
# The resolution rule


def resolve(c1: Clause, c2: Clause, atom: Literal) -> Clause:
    """Resolvent of two clauses on an atom, with set semantics.

    The atom must occur positively in one parent and negatively in the
    other; a literal of either sign selects its atom.  Matching is by
    literal identity, so this is the ground rule.
    """
    pos = atom.atom
    neg = pos.negated()
    if pos in c1.literals and neg in c2.literals:
        keep = [l for l in c1.literals if l != pos]
        keep += [l for l in c2.literals if l != neg]
    elif pos in c2.literals and neg in c1.literals:
        keep = [l for l in c1.literals if l != neg]
        keep += [l for l in c2.literals if l != pos]
    else:
        raise ValueError(
            f"atom {pos} does not occur with opposite signs in the two parents"
        )
    return Clause(0, tuple(keep))


# ---------------------------------------------------------------------------
# Resolution sequences


@dataclass(frozen=True)
class SequenceEntry:
    """One line of a resolution sequence.

    Input entries carry the clause under its original id and have no
    parents.  Derived entries name the 1-based positions of their parents
    and the atom resolved on.
    """

    clause: Clause
    parents: tuple[int, int] | None = None
    atom: Literal | None = None
    supported: bool = False

    @property
    def is_input(self) -> bool:
        return self.parents is None


@dataclass(frozen=True)
class ResolutionSequence:
    entries: tuple[SequenceEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def resolution_count(self) -> int:
        return sum(1 for e in self.entries if not e.is_input)

    @property
    def last_clause(self) -> Clause:
        return self.entries[-1].clause

    @property
    def is_refutation(self) -> bool:
        return bool(self.entries) and self.last_clause.is_empty

    def input_ids(self) -> list[int]:
        """Ids of the input clauses, in sequence order, repeats dropped."""
        seen: list[int] = []
        for e in self.entries:
            if e.is_input and e.clause.id not in seen:
                seen.append(e.clause.id)
        return seen

    def proof_depth(self) -> int:
        """Derivation depth of the last clause: inputs count zero, a
        resolvent is one deeper than its deeper parent."""
        depth: list[int] = []
        for e in self.entries:
            if e.is_input:
                depth.append(0)
            else:
                j, k = e.parents
                depth.append(1 + max(depth[j - 1], depth[k - 1]))
        return depth[-1] if depth else 0

    def __str__(self) -> str:
        return format_sequence(self)


def format_sequence(seq: ResolutionSequence) -> str:
    lines = []
    for i, e in enumerate(seq.entries, start=1):
        if e.is_input:
            src = "input"
        else:
            j, k = e.parents
            src = f"resolve({j},{k}) on {e.atom}"
        lines.append(f"{i}. {e.clause}  [{src}]  supported={e.supported}")
    return "\n".join(lines)


def _support_literal_sets(cs: ClauseSet, support: frozenset[int]) -> set[frozenset[Literal]]:
    return {frozenset(cs.by_id(cid).literals) for cid in support}


def validate_sequence(seq: ResolutionSequence, cs: ClauseSet, support_ids) -> None:
    """Raise ValueError unless seq is a valid set-of-support sequence from cs.

    Checks that inputs match the clause set by id, that every derived entry
    is the recomputed resolvent of two earlier entries, that supported flags
    follow the definition (clauses equal to a support clause count as
    supported), and that every derived entry has a supported ancestor chain.
    """
    support = frozenset(support_ids)
    for cid in support:
        if not cs.has_id(cid):
            raise ValueError(f"support id {cid} not in the clause set")
    if not seq.entries:
        raise ValueError("empty sequence")
    sprime = _support_literal_sets(cs, support)
    flags: list[bool] = []
    for i, e in enumerate(seq.entries, start=1):
        lits = frozenset(e.clause.literals)
        if e.is_input:
            if not cs.has_id(e.clause.id):
                raise ValueError(f"entry {i}: input id {e.clause.id} not in the clause set")
            if lits != frozenset(cs.by_id(e.clause.id).literals):
                raise ValueError(
                    f"entry {i}: literals differ from clause c{e.clause.id} of the set"
                )
            supported = e.clause.id in support or lits in sprime
        else:
            j, k = e.parents
            if not (1 <= j < i and 1 <= k < i):
                raise ValueError(f"entry {i}: parents {(j, k)} must name earlier entries")
            if e.atom is None:
                raise ValueError(f"entry {i}: derived entry without a resolved atom")
            recomputed = resolve(
                seq.entries[j - 1].clause, seq.entries[k - 1].clause, e.atom
            )
            if lits != frozenset(recomputed.literals):
                raise ValueError(
                    f"entry {i}: clause is not the resolvent of entries {j} and {k} "
                    f"on {e.atom.atom}"
                )
            supported = lits in sprime or flags[j - 1] or flags[k - 1]
            if not supported:
                raise ValueError(
                    f"entry {i}: derived clause has no supported parent, "
                    f"violating the set-of-support discipline"
                )
        if e.supported != supported:
            raise ValueError(
                f"entry {i}: supported flag is {e.supported}, should be {supported}"
            )
        flags.append(supported)


def verify_support_path_property(
    seq: ResolutionSequence,
    cs: ClauseSet,
    support_ids,
    dmap: DistanceMap | None = None,
) -> bool:
    """True iff every input entry at position i lies within relevance
    distance i of the support set.  The sequence is validated first."""
    validate_sequence(seq, cs, support_ids)
    if dmap is None:
        dmap = bfs_from_support(build_graph(cs, FIRST_ORDER), support_ids)
    for i, e in enumerate(seq.entries, start=1):
        if e.is_input and dmap.distance(e.clause.id) > i:
            return False
    return True


# ---------------------------------------------------------------------------
# Set-of-support search

# One kept clause of the search: its literals as signed atom indexes, the
# input id or the parent record indexes, the atom resolved on, the level it
# appeared at, and whether it is supported.
@dataclass
class _Rec:
    fs: frozenset[int]
    cid: int | None
    parents: tuple[int, int] | None
    atom: int | None
    level: int
    supported: bool


@dataclass
class SosResult:
    """Outcome of a set-of-support search.

    status is "refuted" (sequence set, ends in the empty clause),
    "saturated" (no new clauses; levels counts the productive levels), or
    "limit" (clause or level budget exhausted).
    """

    status: str
    sequence: ResolutionSequence | None
    levels: int
    derived_count: int


def _encode_inputs(cs: ClauseSet):
    atoms = sorted({lit.atom for c in cs.clauses for lit in c.literals}, key=literal_key)
    index = {a: i + 1 for i, a in enumerate(atoms)}
    rows: list[tuple[int, frozenset[int]]] = []
    for c in cs.clauses:
        if c.is_tautology():
            continue
        rows.append(
            (c.id, frozenset(index[l.atom] if l.positive else -index[l.atom] for l in c.literals))
        )
    return atoms, rows


def sos_refute(
    cs: ClauseSet,
    support_ids,
    max_clauses: int = MAX_KEPT_CLAUSES,
    max_levels: int = MAX_LEVELS,
) -> SosResult:
    """Saturate a ground clause set under resolution restricted to steps
    with at least one supported parent.

    Stops at the first empty clause, at a fixpoint, or at the clause/level
    budget; all three are normal outcomes.
    """
    if not cs.is_ground():
        raise ValueError("resolution search requires a variable-free clause set")
    support = frozenset(support_ids)
    for cid in support:
        if not cs.has_id(cid):
            raise ValueError(f"support id {cid} not in the clause set")
    if not support:
        raise ValueError("sos_refute needs a nonempty support set")

    atoms, rows = _encode_inputs(cs)
    records: list[_Rec] = []
    seen: dict[frozenset[int], int] = {}
    frontier: list[int] = []
    for cid, fs in rows:
        rec = _Rec(fs, cid, None, None, 0, cid in support)
        records.append(rec)
        idx = len(records) - 1
        if rec.supported:
            frontier.append(idx)
            seen.setdefault(fs, idx)
        if not fs:
            return SosResult(REFUTED, _emit_sequence(cs, atoms, records, idx, support), 0, 0)

    derived = 0
    level = 0
    while frontier and level < max_levels:
        level += 1
        new_frontier: list[int] = []
        for f_idx in frontier:
            f = records[f_idx]
            partners = list(range(f_idx))
            if level == 1:
                # inputs are not ordered supported-first, so pair forward too
                partners += [
                    g for g in range(f_idx + 1, len(rows)) if not records[g].supported
                ]
            for g_idx in partners:
                g = records[g_idx]
                for v in f.fs:
                    if -v not in g.fs:
                        continue
                    fs_r = (f.fs - {v}) | (g.fs - {-v})
                    if any(-u in fs_r for u in fs_r):
                        continue  # tautology
                    if fs_r in seen:
                        continue
                    rec = _Rec(fs_r, None, (f_idx, g_idx), abs(v), level, True)
                    records.append(rec)
                    idx = len(records) - 1
                    seen[fs_r] = idx
                    derived += 1
                    if not fs_r:
                        return SosResult(
                            REFUTED,
                            _emit_sequence(cs, atoms, records, idx, support),
                            level,
                            derived,
                        )
                    new_frontier.append(idx)
                    if derived >= max_clauses:
                        return SosResult(LIMIT, None, level, derived)
        if not new_frontier:
            return SosResult(SATURATED, None, level - 1, derived)
        frontier = new_frontier
    return SosResult(LIMIT, None, level, derived)


def _emit_sequence(
    cs: ClauseSet,
    atoms: list[Literal],
    records: list[_Rec],
    root: int,
    support: frozenset[int],
) -> ResolutionSequence:
    """Turn the derivation DAG under records[root] into an explicit
    sequence: used support inputs first by id, every other input right
    before its first use, derived clauses bottom-up."""
    used_inputs: set[int] = set()
    stack = [root]
    visited: set[int] = set()
    while stack:
        idx = stack.pop()
        if idx in visited:
            continue
        visited.add(idx)
        rec = records[idx]
        if rec.parents is None:
            used_inputs.add(idx)
        else:
            stack.extend(rec.parents)

    sprime = _support_literal_sets(cs, support)
    entries: list[SequenceEntry] = []
    pos: dict[int, int] = {}

    def add_input(idx: int) -> None:
        rec = records[idx]
        clause = cs.by_id(rec.cid)
        supported = rec.cid in support or frozenset(clause.literals) in sprime
        entries.append(SequenceEntry(clause, None, None, supported))
        pos[idx] = len(entries)

    for idx in sorted(used_inputs, key=lambda i: records[i].cid):
        if records[idx].cid in support:
            add_input(idx)

    def emit(idx: int) -> None:
        rec = records[idx]
        a, b = rec.parents
        for p in (a, b):
            if records[p].parents is not None and p not in pos:
                emit(p)
        for p in (a, b):
            if p not in pos:
                add_input(p)
        atom = atoms[rec.atom - 1]
        lits = tuple(
            atoms[v - 1] if v > 0 else atoms[-v - 1].negated() for v in rec.fs
        )
        supported = entries[pos[a] - 1].supported or entries[pos[b] - 1].supported
        entries.append(
            SequenceEntry(Clause(len(entries) + 1, lits), (pos[a], pos[b]), atom, supported)
        )
        pos[idx] = len(entries)

    if records[root].parents is None:
        if root not in pos:
            add_input(root)
    else:
        emit(root)
    return ResolutionSequence(tuple(entries))


# ---------------------------------------------------------------------------
# Shortest path -> linear sequence


def linear_sequence_from_path(
    cs: ClauseSet, path: AlternatingPath, support_ids
) -> ResolutionSequence:
    """Linear resolution along an alternating path.

    A path of n clauses yields 2n-1 entries whose last input is the path's
    final clause; when the path starts inside the support set the result
    obeys the set-of-support discipline.  Each hop's leave literal survives
    into the running resolvent because it differs from the literal the
    clause was entered through, which is exactly the alternation condition.
    """
    if not cs.is_ground():
        raise ValueError("linear resolution requires a variable-free clause set")
    if not path.clause_ids:
        raise ValueError("empty path")
    support = frozenset(support_ids)
    sprime = _support_literal_sets(cs, support)

    def input_entry(cid: int) -> SequenceEntry:
        clause = cs.by_id(cid)
        supported = cid in support or frozenset(clause.literals) in sprime
        return SequenceEntry(clause, None, None, supported)

    entries = [input_entry(path.clause_ids[0])]
    run = entries[0].clause
    run_pos = 1
    run_sup = entries[0].supported
    for (exit_lit, _entry_lit), cid in zip(path.links, path.clause_ids[1:]):
        entries.append(input_entry(cid))
        in_pos = len(entries)
        resolvent = resolve(run, cs.by_id(cid), exit_lit.atom)
        run_sup = run_sup or entries[-1].supported or frozenset(resolvent.literals) in sprime
        run = Clause(len(entries) + 1, resolvent.literals)
        entries.append(SequenceEntry(run, (run_pos, in_pos), exit_lit.atom, run_sup))
        run_pos = len(entries)
    return ResolutionSequence(tuple(entries))


# ---------------------------------------------------------------------------
# Positive hyper-resolution for Horn sets


def _check_horn(cs: ClauseSet) -> None:
    if not cs.is_ground():
        raise ValueError("hyper-resolution forward chaining requires a variable-free set")
    for c in cs.clauses:
        if sum(1 for l in c.literals if l.positive) > 1:
            raise ValueError(f"clause c{c.id} has two positive literals; the set is not Horn")


def hyper_resolution_levels(cs: ClauseSet) -> int | None:
    """Levels of positive hyper-resolution until the empty clause on a
    ground Horn set, or None when forward chaining reaches a fixpoint
    without contradiction.  Facts present as input units are level 0.
    """
    _check_horn(cs)
    facts: set[Literal] = set()
    rules: list[tuple[frozenset[Literal], Literal | None]] = []
    for c in cs.clauses:
        if c.is_empty:
            return 0
        head = next((l for l in c.literals if l.positive), None)
        body = frozenset(l.atom for l in c.literals if not l.positive)
        if not body:
            facts.add(head)
        else:
            rules.append((body, head))
    level = 0
    while True:
        level += 1
        new: set[Literal] = set()
        for body, head in rules:
            if body <= facts:
                if head is None:
                    return level
                if head not in facts:
                    new.add(head)
        if not new:
            return None
        facts |= new


@dataclass
class HyperDepthReport:
    """Comparison of set-of-support search depth against positive
    hyper-resolution levels on the same Horn set."""

    clause_count: int
    support_size: int
    sos_status: str
    sos_resolutions: int | None
    sos_depth: int | None
    hyper_levels: int | None
    max_input_distance: float | None

    def text(self) -> str:
        lines = [f"clauses: {self.clause_count}  support clauses: {self.support_size}"]
        if self.sos_status == REFUTED:
            lines.append(
                f"set-of-support search: refuted, {self.sos_resolutions} resolutions, "
                f"proof depth {self.sos_depth}"
            )
        else:
            lines.append(f"set-of-support search: {self.sos_status}")
        if self.hyper_levels is None:
            lines.append("positive hyper-resolution: no contradiction")
        else:
            lines.append(
                f"positive hyper-resolution: contradiction at level {self.hyper_levels}"
            )
        if self.max_input_distance is not None:
            d = self.max_input_distance
            lines.append(
                "deepest input clause distance from support: "
                f"{'inf' if d == INF else int(d)}"
            )
        if self.sos_status == REFUTED and self.hyper_levels is not None:
            lines.append(
                f"depth contrast: {self.hyper_levels} hyper-resolution levels vs "
                f"{self.sos_depth} set-of-support proof depth"
            )
        return "\n".join(lines)


def hyper_depth_demo(
    cs: ClauseSet,
    support_ids,
    max_clauses: int = MAX_KEPT_CLAUSES,
    max_levels: int = MAX_LEVELS,
) -> HyperDepthReport:
    """Run both engines on a Horn set with an all-negative support set and
    report the depth contrast between them."""
    _check_horn(cs)
    support = frozenset(support_ids)
    for cid in support:
        if any(l.positive for l in cs.by_id(cid).literals):
            raise ValueError(f"support clause c{cid} is not all-negative")
    sos = sos_refute(cs, support, max_clauses=max_clauses, max_levels=max_levels)
    resolutions = depth = None
    max_dist: float | None = None
    if sos.status == REFUTED:
        resolutions = sos.sequence.resolution_count
        depth = sos.sequence.proof_depth()
        dmap = bfs_from_support(build_graph(cs, FIRST_ORDER), support)
        max_dist = max(dmap.distance(cid) for cid in sos.sequence.input_ids())
    return HyperDepthReport(
        clause_count=len(cs),
        support_size=len(support),
        sos_status=sos.status,
        sos_resolutions=resolutions,
        sos_depth=depth,
        hyper_levels=hyper_resolution_levels(cs),
        max_input_distance=max_dist,
    )
