"""Terms, literals, clauses and unification for first-order clause sets.

Propositional problems are the variable-free special case: atoms are
zero-arity predicates and everything below degrades to set manipulation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class ArityError(ValueError):
    """A predicate or function symbol is used at two different arities."""


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    """A variable, scoped to the clause it occurs in.

    ``allowed`` optionally restricts the function symbols the variable may be
    instantiated with at the top level.  Restrictions are produced by clause
    splitting and are consulted by unification and by ground-instance
    enumeration; parsed input never carries them.
    """

    name: str
    allowed: frozenset[str] | None = None

    def __str__(self) -> str:
        if self.allowed is not None:
            return "%s{%s}" % (self.name, ",".join(sorted(self.allowed)))
        return self.name


@dataclass(frozen=True)
class App:
    """A function application; constants are zero-arity applications."""

    functor: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.functor
        return "%s(%s)" % (self.functor, ",".join(str(a) for a in self.args))


Term = Var | App

# A substitution maps variable names to terms.  Substitutions returned by
# unify() are idempotent: no variable bound by the map occurs in its images.
Substitution = dict[str, Term]


def term_vars(t: Term, acc: list[Var] | None = None) -> list[Var]:
    """Variables of ``t`` in first-occurrence order (with duplicates removed)."""
    if acc is None:
        acc = []
    if isinstance(t, Var):
        if all(v.name != t.name for v in acc):
            acc.append(t)
    else:
        for a in t.args:
            term_vars(a, acc)
    return acc


def term_functions(t: Term, acc: dict[str, int] | None = None) -> dict[str, int]:
    """Function symbols of ``t`` with arities; raises ArityError on conflict."""
    if acc is None:
        acc = {}
    if isinstance(t, App):
        seen = acc.get(t.functor)
        if seen is not None and seen != len(t.args):
            raise ArityError(
                f"function symbol {t.functor!r} used at arity {seen} and {len(t.args)}"
            )
        acc[t.functor] = len(t.args)
        for a in t.args:
            term_functions(a, acc)
    return acc


def term_depth(t: Term) -> int:
    """Depth of a term; constants and variables have depth 1."""
    if isinstance(t, Var) or not t.args:
        return 1
    return 1 + max(term_depth(a) for a in t.args)


def apply_term(t: Term, subst: Substitution) -> Term:
    if isinstance(t, Var):
        return subst.get(t.name, t)
    if not t.args:
        return t
    return App(t.functor, tuple(apply_term(a, subst) for a in t.args))


# ---------------------------------------------------------------------------
# Unification

_fresh = itertools.count()


def _walk(t: Term, bind: Substitution) -> Term:
    while isinstance(t, Var):
        nxt = bind.get(t.name)
        if nxt is None:
            return t
        t = nxt
    return t


def _occurs(name: str, t: Term, bind: Substitution) -> bool:
    t = _walk(t, bind)
    if isinstance(t, Var):
        return t.name == name
    return any(_occurs(name, a, bind) for a in t.args)


def _bind_var(x: Var, t: Term, bind: Substitution) -> Substitution | None:
    # t is already walked and is not the same variable as x
    if isinstance(t, App):
        if x.allowed is not None and t.functor not in x.allowed:
            return None
        if _occurs(x.name, t, bind):
            return None
        bind[x.name] = t
        return bind
    # variable-to-variable: merge top-symbol restrictions when present
    if x.allowed is None:
        bind[x.name] = t
        return bind
    if t.allowed is None:
        bind[t.name] = x
        return bind
    merged = x.allowed & t.allowed
    if not merged:
        return None
    if merged == t.allowed:
        bind[x.name] = t
    elif merged == x.allowed:
        bind[t.name] = x
    else:
        z = Var(f"_u{next(_fresh)}", merged)
        bind[x.name] = z
        bind[t.name] = z
    return bind


def _unify(t1: Term, t2: Term, bind: Substitution) -> Substitution | None:
    t1 = _walk(t1, bind)
    t2 = _walk(t2, bind)
    if isinstance(t1, Var) and isinstance(t2, Var) and t1.name == t2.name:
        return bind
    if isinstance(t1, Var):
        return _bind_var(t1, t2, bind)
    if isinstance(t2, Var):
        return _bind_var(t2, t1, bind)
    if t1.functor != t2.functor or len(t1.args) != len(t2.args):
        return None
    for a, b in zip(t1.args, t2.args):
        result = _unify(a, b, bind)
        if result is None:
            return None
        bind = result
    return bind


def _resolve(t: Term, bind: Substitution) -> Term:
    t = _walk(t, bind)
    if isinstance(t, Var):
        return t
    if not t.args:
        return t
    return App(t.functor, tuple(_resolve(a, bind) for a in t.args))


def _finish(bind: Substitution) -> Substitution:
    out: Substitution = {}
    for name in bind:
        resolved = _resolve(Var(name), bind)
        if isinstance(resolved, Var) and resolved.name == name:
            continue
        out[name] = resolved
    return out


def unify(t1: Term, t2: Term) -> Substitution | None:
    """Most general unifier of two terms, or None.

    Uses the textbook recursive algorithm with an occurs check; the result is
    idempotent.  Variables with top-symbol restrictions unify only when the
    restrictions are compatible.
    """
    bind = _unify(t1, t2, {})
    return None if bind is None else _finish(bind)


def unify_seq(ts1: tuple[Term, ...], ts2: tuple[Term, ...]) -> Substitution | None:
    """Simultaneous unifier of two equal-length term tuples, or None."""
    if len(ts1) != len(ts2):
        return None
    bind: Substitution | None = {}
    for a, b in zip(ts1, ts2):
        bind = _unify(a, b, bind)
        if bind is None:
            return None
    return _finish(bind)


# ---------------------------------------------------------------------------
# Literals


def _symbol_key(name: str):
    # numeric atom names (DIMACS) sort numerically, everything else by name
    if name.isdigit():
        return (0, int(name), "")
    return (1, 0, name)


@dataclass(frozen=True)
class Literal:
    """A possibly negated atom."""

    positive: bool
    pred: str
    args: tuple[Term, ...] = ()

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.pred, self.args)

    @property
    def atom(self) -> "Literal":
        """The positive literal with the same predicate and arguments."""
        return self if self.positive else Literal(True, self.pred, self.args)

    def is_ground(self) -> bool:
        return not any(term_vars(a) for a in self.args)

    def __str__(self) -> str:
        body = self.pred if not self.args else "%s(%s)" % (
            self.pred,
            ",".join(str(a) for a in self.args),
        )
        return body if self.positive else "~" + body


def negate(lit: Literal) -> Literal:
    """Complement of a literal; double negation never arises."""
    return lit.negated()


def literal_key(lit: Literal):
    """Canonical order: sign first (positive before negative), then atom."""
    return (
        0 if lit.positive else 1,
        _symbol_key(lit.pred),
        tuple(str(a) for a in lit.args),
    )


def unify_atoms(l1: Literal, l2: Literal) -> Substitution | None:
    """Unifier of the atoms of two literals, ignoring sign.  None on clash."""
    if l1.pred != l2.pred or len(l1.args) != len(l2.args):
        return None
    return unify_seq(l1.args, l2.args)


def rename_literal(lit: Literal, mapping: dict[str, str]) -> Literal:
    def ren(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(mapping.get(t.name, t.name), t.allowed)
        return App(t.functor, tuple(ren(a) for a in t.args))

    return Literal(lit.positive, lit.pred, tuple(ren(a) for a in lit.args))


def literal_vars(lit: Literal) -> list[Var]:
    acc: list[Var] = []
    for a in lit.args:
        term_vars(a, acc)
    return acc


def complementary_unifiable(l1: Literal, l2: Literal) -> bool:
    """True iff the two literals have opposite signs and, after renaming the
    occurrences apart, their atoms unify.

    Each side is renamed independently, so two occurrences of the same clause
    (or the same literal) are treated as variable-disjoint copies.
    """
    if l1.positive == l2.positive:
        return False
    if l1.pred != l2.pred or len(l1.args) != len(l2.args):
        return False
    m1 = {v.name: v.name + "#1" for v in literal_vars(l1)}
    m2 = {v.name: v.name + "#2" for v in literal_vars(l2)}
    r1 = rename_literal(l1, m1)
    r2 = rename_literal(l2, m2)
    return unify_seq(r1.args, r2.args) is not None


def apply_literal(lit: Literal, subst: Substitution) -> Literal:
    return Literal(lit.positive, lit.pred, tuple(apply_term(a, subst) for a in lit.args))


# ---------------------------------------------------------------------------
# Clauses


@dataclass(frozen=True)
class Clause:
    """A clause: a set of literals with a stable integer id.

    Duplicate literals are merged and the remainder is kept in canonical
    order, so two clauses with the same literals compare equal literal-wise
    regardless of construction order.
    """

    id: int
    literals: tuple[Literal, ...]

    def __post_init__(self):
        canon = tuple(sorted(set(self.literals), key=literal_key))
        object.__setattr__(self, "literals", canon)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def is_ground(self) -> bool:
        return all(lit.is_ground() for lit in self.literals)

    def is_tautology(self) -> bool:
        lits = set(self.literals)
        return any(lit.negated() in lits for lit in self.literals)

    def variables(self) -> list[Var]:
        """Variables in first-occurrence order."""
        acc: list[Var] = []
        for lit in self.literals:
            for a in lit.args:
                term_vars(a, acc)
        return acc

    def atoms(self) -> set[Literal]:
        return {lit.atom for lit in self.literals}

    def __str__(self) -> str:
        if not self.literals:
            return "$false"
        return " | ".join(str(lit) for lit in self.literals)


@dataclass
class ClauseSet:
    """An ordered collection of clauses with stable ids and symbol tables.

    Instances are treated as immutable once built; operations that change
    membership return a new ClauseSet and keep surviving clause ids intact.
    """

    clauses: list[Clause] = field(default_factory=list)
    roles: dict[int, str] = field(default_factory=dict)
    names: dict[int, str] = field(default_factory=dict)
    predicates: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)
    _index: dict[int, Clause] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self):
        if not self._index:
            self._index = {c.id: c for c in self.clauses}

    @classmethod
    def from_groups(
        cls,
        groups,
        roles: dict[int, str] | None = None,
        names: dict[int, str] | None = None,
        start_id: int = 1,
    ) -> "ClauseSet":
        """Build a clause set from an iterable of literal collections.

        Ids are assigned consecutively from ``start_id``.  Symbol arities are
        checked across the whole set.
        """
        clauses = [Clause(start_id + i, tuple(lits)) for i, lits in enumerate(groups)]
        return cls.from_clauses(clauses, roles=roles, names=names)

    @classmethod
    def from_clauses(
        cls,
        clauses: list[Clause],
        roles: dict[int, str] | None = None,
        names: dict[int, str] | None = None,
    ) -> "ClauseSet":
        ids = [c.id for c in clauses]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate clause ids")
        cs = cls(list(clauses), dict(roles or {}), dict(names or {}))
        cs._check_symbols()
        return cs

    def _check_symbols(self) -> None:
        for clause in self.clauses:
            for lit in clause.literals:
                seen = self.predicates.get(lit.pred)
                if seen is not None and seen != len(lit.args):
                    raise ArityError(
                        f"predicate {lit.pred!r} used at arity {seen} and "
                        f"{len(lit.args)} (clause {clause.id})"
                    )
                self.predicates[lit.pred] = len(lit.args)
                for a in lit.args:
                    term_functions(a, self.functions)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def ids(self) -> list[int]:
        return [c.id for c in self.clauses]

    def by_id(self, cid: int) -> Clause:
        try:
            return self._index[cid]
        except KeyError:
            raise KeyError(f"no clause with id {cid}") from None

    def has_id(self, cid: int) -> bool:
        return cid in self._index

    def subset(self, keep_ids) -> "ClauseSet":
        """The sub-collection with the given ids, original order and ids kept."""
        keep = set(keep_ids)
        unknown = keep - set(self._index)
        if unknown:
            raise KeyError(f"unknown clause ids: {sorted(unknown)}")
        clauses = [c for c in self.clauses if c.id in keep]
        return ClauseSet(
            clauses,
            {i: r for i, r in self.roles.items() if i in keep},
            {i: n for i, n in self.names.items() if i in keep},
            dict(self.predicates),
            dict(self.functions),
        )

    def is_ground(self) -> bool:
        return all(c.is_ground() for c in self.clauses)

    def atoms(self) -> list[Literal]:
        """All atoms of the set, in canonical order."""
        seen: set[Literal] = set()
        for c in self.clauses:
            seen.update(lit.atom for lit in c.literals)
        return sorted(seen, key=literal_key)

    def max_id(self) -> int:
        return max((c.id for c in self.clauses), default=0)

    def __str__(self) -> str:
        return "\n".join(f"c{c.id}: {c}" for c in self.clauses)
