"""Readers and writers for DIMACS CNF and a CNF-only TPTP subset.

Both printers are deterministic: literals appear in the clause's canonical
order (positive before negative, atoms in lexicographic/numeric order), so
printing the same clause set twice yields identical bytes.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from altpath.clauses import App, Clause, ClauseSet, Literal, Term, Var


class ParseError(ValueError):
    """Input rejected, with the offending location when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# DIMACS


def _decode(data: str | bytes) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def parse_dimacs(data: str | bytes, source: str | None = None) -> ClauseSet:
    """Parse DIMACS CNF.  Atoms are named by their variable index."""
    text = _decode(data)
    n_vars: int | None = None
    declared_clauses: int | None = None
    groups: list[list[Literal]] = []
    current: list[Literal] = []
    open_line: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n_vars is not None:
                raise ParseError("duplicate problem line", lineno, source)
            m = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if not m:
                raise ParseError(f"malformed problem line {line!r}", lineno, source)
            n_vars, declared_clauses = int(m.group(1)), int(m.group(2))
            continue
        if n_vars is None:
            raise ParseError("clause data before problem line", lineno, source)
        for tok in line.split():
            if not re.fullmatch(r"-?\d+", tok):
                raise ParseError(f"invalid token {tok!r}", lineno, source)
            val = int(tok)
            if tok in ("-0",):
                raise ParseError("literal index 0 in clause body", lineno, source)
            if val == 0:
                groups.append(current)
                current = []
                open_line = None
                continue
            if abs(val) > n_vars:
                raise ParseError(
                    f"literal {val} exceeds declared variable count {n_vars}",
                    lineno,
                    source,
                )
            if not current:
                open_line = lineno
            current.append(Literal(val > 0, str(abs(val))))
    if current:
        raise ParseError("unterminated clause at end of input", open_line, source)
    if declared_clauses is not None and declared_clauses != len(groups):
        raise ParseError(
            f"problem line declares {declared_clauses} clauses, found {len(groups)}",
            None,
            source,
        )
    return ClauseSet.from_groups(groups)


def print_dimacs(cs: ClauseSet) -> str:
    """Serialize a propositional clause set with integer atom names."""
    if not cs.is_ground():
        raise ValueError("DIMACS output requires a variable-free clause set")
    indices: list[int] = []
    for name, arity in cs.predicates.items():
        if arity != 0 or not name.isdigit():
            raise ValueError(
                f"DIMACS output requires integer-named propositional atoms, got {name!r}"
            )
        indices.append(int(name))
    n_vars = max(indices, default=0)
    lines = [f"p cnf {n_vars} {len(cs)}"]
    for clause in cs.clauses:
        ints = [int(l.pred) if l.positive else -int(l.pred) for l in clause.literals]
        lines.append(" ".join(str(i) for i in ints + [0]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# TPTP (CNF subset)

SUPPORTED_ROLES = ("axiom", "hypothesis", "negated_conjecture")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*|/\*.*?\*/)
  | (?P<lower>[a-z][A-Za-z0-9_]*)
  | (?P<upper>[A-Z_][A-Za-z0-9_]*)
  | (?P<dfalse>\$false)
  | (?P<quoted>'[^']*')
  | (?P<punct>[(),.|~])
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int


def _tokenize(text: str, source: str | None) -> list[_Tok]:
    out: list[_Tok] = []
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, source)
        kind = m.lastgroup or ""
        chunk = m.group()
        if kind != "ws":
            out.append(_Tok(kind, chunk, line))
        line += chunk.count("\n")
        pos = m.end()
    return out


class _TptpParser:
    def __init__(self, text: str, source: str | None, include_base: str | None,
                 seen_files: set[str] | None = None):
        self.toks = _tokenize(text, source)
        self.pos = 0
        self.source = source
        self.include_base = include_base
        self.seen_files = seen_files if seen_files is not None else set()
        self.groups: list[tuple[str, str, list[Literal]]] = []

    def error(self, message: str) -> ParseError:
        line = self.toks[self.pos].line if self.pos < len(self.toks) else None
        return ParseError(message, line, self.source)

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", None, self.source)
        if text is not None and tok.text != text:
            raise self.error(f"expected {text!r}, got {tok.text!r}")
        if kind is not None and tok.kind != kind:
            raise self.error(f"expected {kind}, got {tok.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> list[tuple[str, str, list[Literal]]]:
        while self.peek() is not None:
            tok = self.peek()
            if tok.text == "include":
                self._include()
            elif tok.text == "cnf":
                self._annotated()
            else:
                raise self.error(f"expected 'cnf' or 'include', got {tok.text!r}")
        return self.groups

    def _include(self) -> None:
        self.take("include")
        self.take("(")
        path_tok = self.take(kind="quoted")
        self.take(")")
        self.take(".")
        rel = path_tok.text.strip("'")
        base = self.include_base or "."
        full = rel if os.path.isabs(rel) else os.path.join(base, rel)
        full = os.path.normpath(full)
        if not os.path.exists(full):
            raise ParseError(
                f"cannot resolve include {rel!r} (looked at {full})",
                path_tok.line,
                self.source,
            )
        if full in self.seen_files:
            raise ParseError(f"circular include of {rel!r}", path_tok.line, self.source)
        self.seen_files.add(full)
        with open(full, "r", encoding="utf-8") as handle:
            text = handle.read()
        sub = _TptpParser(text, full, self.include_base, self.seen_files)
        self.groups.extend(sub.parse())

    def _annotated(self) -> None:
        self.take("cnf")
        self.take("(")
        name = self.take().text
        self.take(",")
        role_tok = self.take()
        role = role_tok.text
        if role not in SUPPORTED_ROLES:
            raise ParseError(
                f"unsupported role {role!r} in cnf({name}, ...); "
                f"supported roles: {', '.join(SUPPORTED_ROLES)}",
                role_tok.line,
                self.source,
            )
        self.take(",")
        lits = self._formula(name)
        self.take(")")
        self.take(".")
        self.groups.append((name, role, lits))

    def _formula(self, name: str) -> list[Literal]:
        # literals never start with '(' in this subset, so a leading
        # parenthesis always wraps the whole disjunction
        tok = self.peek()
        if tok is not None and tok.text == "(":
            self.take("(")
            lits = self._disjunction(name)
            self.take(")")
            return lits
        return self._disjunction(name)

    def _disjunction(self, name: str) -> list[Literal]:
        lits = self._literal(name)
        while self.peek() is not None and self.peek().text == "|":
            self.take("|")
            lits.extend(self._literal(name))
        return lits

    def _literal(self, name: str) -> list[Literal]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", None, self.source)
        positive = True
        if tok.text == "~":
            self.take("~")
            positive = False
            tok = self.peek()
        if tok is not None and tok.kind == "dfalse":
            if not positive:
                raise self.error("negated $false is not part of the CNF subset")
            self.take()
            return []  # $false contributes no literal: the empty clause
        if tok is None or tok.kind != "lower":
            got = tok.text if tok else "end of input"
            raise self.error(f"expected a predicate in cnf({name}, ...), got {got!r}")
        pred = self.take().text
        args: tuple[Term, ...] = ()
        if self.peek() is not None and self.peek().text == "(":
            args = self._args()
        return [Literal(positive, pred, args)]

    def _args(self) -> tuple[Term, ...]:
        self.take("(")
        args = [self._term()]
        while self.peek() is not None and self.peek().text == ",":
            self.take(",")
            args.append(self._term())
        self.take(")")
        return tuple(args)

    def _term(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", None, self.source)
        if tok.kind == "upper":
            self.take()
            return Var(tok.text)
        if tok.kind != "lower":
            raise self.error(f"expected a term, got {tok.text!r}")
        functor = self.take().text
        if self.peek() is not None and self.peek().text == "(":
            return App(functor, self._args())
        return App(functor)


def parse_tptp(
    data: str | bytes,
    source: str | None = None,
    include_base: str | None = None,
) -> ClauseSet:
    """Parse the CNF subset of TPTP: cnf(...) formulas and simple includes.

    Include paths resolve against ``include_base`` (falling back to the
    current directory).  Arity consistency is enforced across the whole set.
    """
    text = _decode(data)
    parser = _TptpParser(text, source, include_base)
    triples = parser.parse()
    groups = [lits for (_, _, lits) in triples]
    names = {i + 1: name for i, (name, _, _) in enumerate(triples)}
    roles = {i + 1: role for i, (_, role, _) in enumerate(triples)}
    try:
        return ClauseSet.from_groups(groups, roles=roles, names=names)
    except ValueError as exc:
        raise ParseError(str(exc), None, source) from exc


def _term_tptp(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.functor
    return "%s(%s)" % (t.functor, ",".join(_term_tptp(a) for a in t.args))


def _literal_tptp(lit: Literal) -> str:
    body = lit.pred if not lit.args else "%s(%s)" % (
        lit.pred,
        ",".join(_term_tptp(a) for a in lit.args),
    )
    return body if lit.positive else "~" + body


def print_tptp(cs: ClauseSet) -> str:
    """Serialize as annotated cnf() formulas, one per line."""
    lines = []
    for clause in cs.clauses:
        name = cs.names.get(clause.id, f"c{clause.id}")
        role = cs.roles.get(clause.id, "axiom")
        if clause.is_empty:
            body = "$false"
        else:
            body = " | ".join(_literal_tptp(l) for l in clause.literals)
        lines.append(f"cnf({name}, {role}, ({body})).")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Format detection


def detect_format(data: str | bytes, path: str | None = None) -> str:
    """Guess 'dimacs' or 'tptp' from the file name or the content."""
    if path:
        lowered = path.lower()
        if lowered.endswith((".cnf", ".dimacs")):
            return "dimacs"
        if lowered.endswith((".p", ".ax", ".tptp")):
            return "tptp"
    text = _decode(data)
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("p cnf") or (line.startswith("c") and "(" not in line):
            return "dimacs"
        if line.startswith(("cnf(", "include(", "%")):
            return "tptp"
    return "dimacs"


def parse_auto(data: str | bytes, path: str | None = None,
               include_base: str | None = None) -> tuple[ClauseSet, str]:
    fmt = detect_format(data, path)
    if fmt == "dimacs":
        return parse_dimacs(data, source=path), fmt
    return parse_tptp(data, source=path, include_base=include_base), fmt


def print_format(cs: ClauseSet, fmt: str) -> str:
    if fmt == "dimacs":
        return print_dimacs(cs)
    if fmt == "tptp":
        return print_tptp(cs)
    raise ValueError(f"unknown format {fmt!r}")
