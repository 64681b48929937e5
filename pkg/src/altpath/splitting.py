"""Clause splitting: replace a clause C[x] by instances that jointly keep
the same ground instances, to break spurious complement unifications and
push relevance distances apart.

A split is described by a plan: the clause, the variable, and a partition
of the clause set's function symbols (constants included) into groups.  A
singleton group contributes the instance C[x -> f(y1..yn)] with fresh
variables; a larger group contributes one clause in which x keeps its name
but is restricted to the group's symbols at the top level.  Unification and
ground-instance enumeration both honor such restrictions, and
expand_restricted rewrites them away for export formats that cannot carry
them.

Splitting can only narrow a literal's set of unification partners, so
relevance distances between the untouched clauses never decrease; the
variable chooser looks for the split that disconnects the most partner
links outright.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from altpath.clauses import (
    App,
    Clause,
    ClauseSet,
    Literal,
    Term,
    Var,
    apply_literal,
    complementary_unifiable,
    term_depth,
)

_SV = re.compile(r"_sv(\d+)$")

# fresh variables for the chooser's probe instances; never stored in output
_probe = itertools.count()


def _fresh_sv_start(cs: ClauseSet) -> int:
    start = 0
    for c in cs.clauses:
        for v in c.variables():
            m = _SV.match(v.name)
            if m:
                start = max(start, int(m.group(1)) + 1)
    return start


@dataclass(frozen=True)
class SplitPlan:
    """Which clause to split, on which variable, over which symbol groups.

    groups partition the clause set's function symbols; symbols unknown to
    the set are permitted as extra constants for sets that have none.
    """

    clause_id: int
    var: str
    groups: tuple[frozenset[str], ...]


def _check_plan(cs: ClauseSet, plan: SplitPlan) -> Clause:
    clause = cs.by_id(plan.clause_id)
    if all(v.name != plan.var for v in clause.variables()):
        raise ValueError(
            f"variable {plan.var} does not occur in clause c{plan.clause_id}"
        )
    if not plan.groups or any(not g for g in plan.groups):
        raise ValueError("split groups must be nonempty")
    union: set[str] = set()
    for g in plan.groups:
        overlap = union & g
        if overlap:
            raise ValueError(f"split groups overlap on {sorted(overlap)}")
        union |= g
    missing = set(cs.functions) - union
    if missing:
        raise ValueError(f"split groups do not cover {sorted(missing)}")
    if not any(_arity(cs, f) == 0 for f in union):
        raise ValueError(
            "the clause set has no constant symbol; allow one explicitly or "
            "the split instances have no ground instances"
        )
    return clause


def _arity(cs: ClauseSet, symbol: str) -> int:
    # symbols outside the set's tables are extra constants by construction
    return cs.functions.get(symbol, 0)


def _symbols_for_split(cs: ClauseSet, extra_constant: str | None) -> dict[str, int]:
    syms = dict(cs.functions)
    if extra_constant is not None:
        known = syms.get(extra_constant)
        if known not in (None, 0):
            raise ValueError(
                f"{extra_constant!r} is a function symbol of arity {known}, not a constant"
            )
        syms.setdefault(extra_constant, 0)
    if not any(ar == 0 for ar in syms.values()):
        raise ValueError(
            "the clause set has no constant symbol; pass extra_constant to allow one"
        )
    return syms


def _resolve_var(cs: ClauseSet, clause_id: int, var) -> str:
    if var is None:
        picked = choose_split_variable(cs, clause_id)
        if picked is None:
            raise ValueError(
                f"no variable of clause c{clause_id} breaks any unification when split"
            )
        return picked.name
    name = var.name if isinstance(var, Var) else var
    clause = cs.by_id(clause_id)
    if all(v.name != name for v in clause.variables()):
        raise ValueError(f"variable {name} does not occur in clause c{clause_id}")
    return name


def full_split_plan(
    cs: ClauseSet, clause_id: int, var=None, extra_constant: str | None = None
) -> SplitPlan:
    """One singleton group per function symbol of the set."""
    name = _resolve_var(cs, clause_id, var)
    syms = _symbols_for_split(cs, extra_constant)
    groups = tuple(frozenset([f]) for f in sorted(syms))
    return SplitPlan(clause_id, name, groups)


def binary_split_plan(
    cs: ClauseSet, clause_id: int, var=None, extra_constant: str | None = None
) -> SplitPlan:
    """Two groups balanced by how often the symbols occur in the set."""
    name = _resolve_var(cs, clause_id, var)
    syms = _symbols_for_split(cs, extra_constant)
    if len(syms) < 2:
        raise ValueError("binary split needs at least two function symbols")
    counts = {f: 0 for f in syms}

    def visit(t: Term) -> None:
        if isinstance(t, App):
            counts[t.functor] += 1
            for a in t.args:
                visit(a)

    for c in cs.clauses:
        for lit in c.literals:
            for a in lit.args:
                visit(a)
    sides: tuple[list[str], list[str]] = ([], [])
    weights = [0, 0]
    for f in sorted(syms, key=lambda f: (-counts[f], f)):
        pick = 0 if weights[0] <= weights[1] else 1
        sides[pick].append(f)
        weights[pick] += counts[f]
    return SplitPlan(clause_id, name, (frozenset(sides[0]), frozenset(sides[1])))


def split_clause(cs: ClauseSet, plan: SplitPlan) -> ClauseSet:
    """Replace the planned clause by one instance per symbol group.

    A group that a pre-existing restriction on the variable rules out
    entirely contributes nothing.  Replacement clauses take fresh ids above
    every existing id, sit at the replaced clause's position, and inherit
    its role.
    """
    clause = _check_plan(cs, plan)
    allowed = next(v for v in clause.variables() if v.name == plan.var).allowed
    counter = itertools.count(_fresh_sv_start(cs))
    next_id = cs.max_id() + 1
    replacements: list[Clause] = []
    for group in plan.groups:
        eff = sorted(group if allowed is None else (group & allowed))
        if not eff:
            continue
        image: Term
        if len(eff) == 1:
            f = eff[0]
            image = App(f, tuple(Var(f"_sv{next(counter)}") for _ in range(_arity(cs, f))))
        else:
            image = Var(plan.var, frozenset(eff))
        subst = {plan.var: image}
        replacements.append(
            Clause(next_id, tuple(apply_literal(l, subst) for l in clause.literals))
        )
        next_id += 1

    out: list[Clause] = []
    roles = dict(cs.roles)
    names = dict(cs.names)
    role = roles.pop(plan.clause_id, None)
    names.pop(plan.clause_id, None)
    for c in cs.clauses:
        if c.id == plan.clause_id:
            out.extend(replacements)
            if role is not None:
                for r in replacements:
                    roles[r.id] = role
        else:
            out.append(c)
    return ClauseSet.from_clauses(out, roles=roles, names=names)


def descendants(before: ClauseSet, after: ClauseSet) -> list[int]:
    """Ids present only in the split result."""
    old = set(before.ids())
    return [cid for cid in after.ids() if cid not in old]


def choose_split_variable(cs: ClauseSet, clause_id: int) -> Var | None:
    """The clause variable whose full split breaks the most unifications.

    A split instance literal counts as a break when it no longer
    complement-unifies with any occurrence in the other clauses, and it
    scores the number of partners the original literal had; the variable
    with the highest positive total wins, ties going to the one occurring
    first.  None for ground clauses and when no instance literal comes out
    partnerless.
    """
    clause = cs.by_id(clause_id)
    variables = clause.variables()
    if not variables or not cs.functions:
        return None
    others = [
        lit for c in cs.clauses if c.id != clause_id for lit in c.literals
    ]
    partners = [
        [m for m in others if complementary_unifiable(l, m)] for l in clause.literals
    ]
    best: Var | None = None
    best_score = 0
    for v in variables:
        symbols = [
            f for f in sorted(cs.functions) if v.allowed is None or f in v.allowed
        ]
        score = 0
        for f in symbols:
            args = tuple(Var(f"_q{next(_probe)}") for _ in range(cs.functions[f]))
            subst = {v.name: App(f, args)}
            for l, candidates in zip(clause.literals, partners):
                if not candidates:
                    continue
                inst = apply_literal(l, subst)
                if not any(complementary_unifiable(inst, m) for m in candidates):
                    score += len(candidates)
        if score > best_score:
            best, best_score = v, score
    return best


def expand_restricted(cs: ClauseSet) -> ClauseSet:
    """Rewrite every restricted variable into one clause per allowed symbol.

    The result carries no restrictions and has the same ground instances;
    untouched clauses keep their ids, expansions get fresh ids in place.
    """
    counter = itertools.count(_fresh_sv_start(cs))
    next_id = cs.max_id() + 1

    def first_restricted(lits: tuple[Literal, ...]) -> Var | None:
        for l in lits:
            for a in l.args:
                for v in _terms_vars(a):
                    if v.allowed is not None:
                        return v
        return None

    def expand(lits: tuple[Literal, ...]) -> list[tuple[Literal, ...]]:
        restricted = first_restricted(lits)
        if restricted is None:
            return [lits]
        out: list[tuple[Literal, ...]] = []
        for f in sorted(restricted.allowed):
            ar = cs.functions.get(f, 0)
            image = App(f, tuple(Var(f"_sv{next(counter)}") for _ in range(ar)))
            subst = {restricted.name: image}
            out.extend(expand(tuple(apply_literal(l, subst) for l in lits)))
        return out

    clauses: list[Clause] = []
    roles = dict(cs.roles)
    names = dict(cs.names)
    for c in cs.clauses:
        groups = expand(c.literals)
        if len(groups) == 1 and groups[0] == c.literals:
            clauses.append(c)
            continue
        roles.pop(c.id, None)
        names.pop(c.id, None)
        for lits in groups:
            clauses.append(Clause(next_id, lits))
            if c.id in cs.roles:
                roles[clauses[-1].id] = cs.roles[c.id]
            next_id += 1
    return ClauseSet.from_clauses(clauses, roles=roles, names=names)


def _terms_vars(t: Term):
    if isinstance(t, Var):
        yield t
    else:
        for a in t.args:
            yield from _terms_vars(a)


# ---------------------------------------------------------------------------
# Ground instances over a bounded universe


def herbrand_universe(
    functions: dict[str, int], depth: int, extra_constant: str | None = None
) -> list[Term]:
    """All ground terms of depth up to the bound, shallowest first.

    Empty when the symbol table has no constants and none is supplied.
    """
    syms = dict(functions)
    if extra_constant is not None:
        syms.setdefault(extra_constant, 0)
    terms: list[Term] = []
    for d in range(1, depth + 1):
        new: list[Term] = []
        for f, ar in sorted(syms.items()):
            if ar == 0:
                if d == 1:
                    new.append(App(f))
                continue
            for combo in itertools.product(terms, repeat=ar):
                if max(term_depth(t) for t in combo) == d - 1:
                    new.append(App(f, combo))
        terms.extend(new)
    return terms


def ground_instances(
    clause: Clause, universe: list[Term], max_depth: int | None = None
) -> set[frozenset[Literal]]:
    """Ground instances of a clause, as literal sets, over the universe.

    Variable restrictions narrow the candidate terms by top symbol.  With
    max_depth set, instances containing any deeper argument term are
    dropped; applying the same cutoff to a clause and to its split
    replacements makes the two instance sets directly comparable.
    """
    variables = clause.variables()
    candidates = []
    for v in variables:
        terms = [
            t
            for t in universe
            if v.allowed is None or (isinstance(t, App) and t.functor in v.allowed)
        ]
        candidates.append(terms)
    out: set[frozenset[Literal]] = set()
    for combo in itertools.product(*candidates):
        subst = {v.name: t for v, t in zip(variables, combo)}
        lits = frozenset(apply_literal(l, subst) for l in clause.literals)
        if max_depth is not None and any(
            term_depth(a) > max_depth for lit in lits for a in lit.args
        ):
            continue
        out.add(lits)
    return out


def instance_sets(
    cs: ClauseSet, ids, universe: list[Term], max_depth: int | None = None
) -> set[frozenset[Literal]]:
    """Union of the clauses' ground instances; the comparison side of the
    same-instances invariant."""
    out: set[frozenset[Literal]] = set()
    for cid in ids:
        out |= ground_instances(cs.by_id(cid), universe, max_depth)
    return out
