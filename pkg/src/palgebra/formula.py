"""Formulas and sequents of the propositional language.

The language has atoms, the constant ``0``, negation and a single binary
connective, conjunction.  Conjunction is *not* associative, so the tree
shape of a formula carries meaning and the parser refuses to guess it.
Disjunction is sugar: ``a | b`` is read as ``~(~b & ~a)`` (note the swap).

Surface syntax (ASCII)::

    formula  := operand [ ('&' | '|') operand ]
    operand  := '~' operand | '0' | IDENT | '(' formula ')'
    sequent  := [formula {',' formula}] '|-' [formula {',' formula}]
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple, Union

__all__ = [
    "Atom",
    "Zero",
    "Neg",
    "And",
    "Formula",
    "SequentSurface",
    "SequentNorm",
    "ParseError",
    "parse_formula",
    "parse_formulas",
    "parse_sequent",
    "parse_norm",
    "print_formula",
    "print_formulas",
    "print_sequent",
    "disj",
    "phi_fold",
    "psi_fold",
    "psi_fold_onto",
    "disj_fold",
    "jump_normalize",
    "atoms_of",
    "subformulas",
    "depth",
]


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not _IDENT.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class Zero:
    pass


def _cached_hash(self) -> int:
    # formulas are hashed constantly by the search; cache on first use
    try:
        return self.__dict__["_hash"]
    except KeyError:
        h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
        object.__setattr__(self, "_hash", h)
        return h


def _reduce(self):
    # never ship the cached hash: string hashes differ between processes
    return (type(self), tuple(getattr(self, f) for f in self.__dataclass_fields__))


@dataclass(frozen=True)
class Neg:
    operand: "Formula"

    __hash__ = _cached_hash
    __reduce__ = _reduce


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    __hash__ = _cached_hash
    __reduce__ = _reduce


Formula = Union[Atom, Zero, Neg, And]
ZERO = Zero()
ONE = Neg(ZERO)


@dataclass(frozen=True)
class SequentSurface:
    """Two-sided sequent ``lhs |- rhs``."""

    lhs: Tuple[Formula, ...] = ()
    rhs: Tuple[Formula, ...] = ()

    def __str__(self):
        return print_sequent(self)


@dataclass(frozen=True)
class SequentNorm:
    """One-sided sequent ``props |-`` (empty right-hand side)."""

    props: Tuple[Formula, ...] = ()

    def __str__(self):
        return print_sequent(self)

    def __len__(self):
        return len(self.props)

    def __iter__(self):
        return iter(self.props)

    def __getitem__(self, item):
        return self.props[item]


class ParseError(ValueError):
    """Raised on malformed formula or sequent text; ``pos`` is a column."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at column {pos + 1}"
        super().__init__(message)


# ---------------------------------------------------------------- lexing

_IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")
_TOKEN = re.compile(
    r"\s*(?:(?P<turnstile>\|-)|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<zero>0(?![0-9]))"
    r"|(?P<op>[~&|(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        tokens.append((kind if kind != "op" else value, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise ParseError(message, self.text, self.tokens[self.i][2])

    def expect(self, kind: str):
        if self.peek() != kind:
            found = self.tokens[self.i][1] or "end of input"
            self.fail(f"expected {kind!r}, found {found!r}")
        return self.take()

    def formula(self) -> Formula:
        left = self.operand()
        if self.peek() in ("&", "|"):
            op = self.take()[0]
            right = self.operand()
            if self.peek() in ("&", "|"):
                self.fail("parentheses required: '&' and '|' are not associative")
            return And(left, right) if op == "&" else disj(left, right)
        return left

    def operand(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.take()
            return Neg(self.operand())
        if kind == "zero":
            self.take()
            return ZERO
        if kind == "ident":
            return Atom(self.take()[1])
        if kind == "(":
            self.take()
            inner = self.formula()
            if self.peek() != ")":
                self.fail("unbalanced parentheses")
            self.take()
            return inner
        if kind == ")":
            self.fail("unbalanced parentheses")
        found = self.tokens[self.i][1] or "end of input"
        self.fail(f"expected a formula, found {found!r}")

    def formula_list(self, stop: Iterable[str]) -> list[Formula]:
        stop = set(stop)
        if self.peek() in stop:
            return []
        out = [self.formula()]
        while self.peek() == ",":
            self.take()
            out.append(self.formula())
        return out


def disj(left: Formula, right: Formula) -> Formula:
    """``left ∨ right`` desugared to ``¬(¬right ∧ ¬left)``."""
    return Neg(And(Neg(right), Neg(left)))


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "end":
        if p.peek() == ")":
            p.fail("unbalanced parentheses")
        p.fail(f"unexpected {p.tokens[p.i][1]!r}")
    return f


def parse_formulas(text: str) -> tuple[Formula, ...]:
    """Parse a comma separated, possibly empty, list of formulas."""
    p = _Parser(text)
    out = p.formula_list(["end"])
    if p.peek() != "end":
        p.fail(f"unexpected {p.tokens[p.i][1]!r}")
    return tuple(out)


def parse_sequent(text: str) -> SequentSurface:
    p = _Parser(text)
    if not any(t[0] == "turnstile" for t in p.tokens):
        raise ParseError("missing turnstile '|-'", text)
    lhs = p.formula_list(["turnstile"])
    p.expect("turnstile")
    rhs = p.formula_list(["end"])
    if p.peek() != "end":
        p.fail(f"unexpected {p.tokens[p.i][1]!r}")
    return SequentSurface(tuple(lhs), tuple(rhs))


def parse_norm(text: str) -> SequentNorm:
    """Parse a sequent that must already be one-sided."""
    s = parse_sequent(text)
    if s.rhs:
        raise ParseError("expected an empty right-hand side", text)
    return SequentNorm(s.lhs)


# -------------------------------------------------------------- printing

_ASCII = {"neg": "~", "and": " & ", "zero": "0", "turnstile": "|-"}
_UNICODE = {"neg": "¬", "and": " ∧ ", "zero": "𝟎", "turnstile": "⊢"}


def print_formula(f: Formula, unicode: bool = False) -> str:
    sym = _UNICODE if unicode else _ASCII
    return _show(f, sym)


def _show(f: Formula, sym) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Zero):
        return sym["zero"]
    if isinstance(f, Neg):
        inner = _show(f.operand, sym)
        if isinstance(f.operand, And):
            inner = f"({inner})"
        return sym["neg"] + inner
    left = _show(f.left, sym)
    right = _show(f.right, sym)
    if isinstance(f.left, And):
        left = f"({left})"
    if isinstance(f.right, And):
        right = f"({right})"
    return left + sym["and"] + right


def print_formulas(props: Iterable[Formula], unicode: bool = False) -> str:
    return ", ".join(print_formula(f, unicode) for f in props)


def print_sequent(s: SequentSurface | SequentNorm | Sequence[Formula], unicode: bool = False) -> str:
    sym = _UNICODE if unicode else _ASCII
    if isinstance(s, SequentSurface):
        lhs, rhs = s.lhs, s.rhs
    elif isinstance(s, SequentNorm):
        lhs, rhs = s.props, ()
    else:
        lhs, rhs = tuple(s), ()
    left = print_formulas(lhs, unicode)
    right = print_formulas(rhs, unicode)
    out = sym["turnstile"]
    if left:
        out = f"{left} {out}"
    if right:
        out = f"{out} {right}"
    return out


# ----------------------------------------------------------------- folds

def phi_fold(props: Sequence[Formula]) -> Formula:
    """Left-associated conjunction; the empty sequence folds to ``~0``."""
    if not props:
        return ONE
    acc = props[0]
    for f in props[1:]:
        acc = And(acc, f)
    return acc


def psi_fold(props: Sequence[Formula]) -> Formula:
    """Right-associated disjunction of the negations; empty folds to ``0``.

    ``[s0, s1, s2]`` becomes ``~s0 | (~s1 | ~s2)``.
    """
    if not props:
        return ZERO
    return psi_fold_onto(props[:-1], Neg(props[-1]))


def psi_fold_onto(props: Sequence[Formula], tail: Formula) -> Formula:
    """Right-associated disjunction of the negations of ``props`` ending in ``tail``.

    ``psi_fold(G + D) == psi_fold_onto(G, psi_fold(D))`` for nonempty ``D``.
    """
    acc = tail
    for f in reversed(props):
        acc = disj(Neg(f), acc)
    return acc


def disj_fold(props: Sequence[Formula]) -> Formula:
    """Right-associated disjunction (the reading of a right-hand side)."""
    if not props:
        return ZERO
    acc = props[-1]
    for f in reversed(props[:-1]):
        acc = disj(f, acc)
    return acc


def jump_normalize(s: SequentSurface) -> SequentNorm:
    """Move right-hand formulas, leftmost first, to the end of the left side negated."""
    lhs = list(s.lhs)
    for f in s.rhs:
        lhs.append(Neg(f))
    return SequentNorm(tuple(lhs))


# ------------------------------------------------------------- utilities

def atoms_of(fs: Formula | Iterable[Formula]) -> list[str]:
    """Atom names in order of first occurrence."""
    seen: dict[str, None] = {}
    stack = [fs] if isinstance(fs, (Atom, Zero, Neg, And)) else list(fs)[::-1]
    while stack:
        f = stack.pop()
        if isinstance(f, Atom):
            seen.setdefault(f.name)
        elif isinstance(f, Neg):
            stack.append(f.operand)
        elif isinstance(f, And):
            stack.append(f.right)
            stack.append(f.left)
    return list(seen)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Neg):
        yield from subformulas(f.operand)
    elif isinstance(f, And):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def depth(f: Formula) -> int:
    """Tree height, leaves count 1."""
    if isinstance(f, Neg):
        return 1 + depth(f.operand)
    if isinstance(f, And):
        return 1 + max(depth(f.left), depth(f.right))
    return 1
