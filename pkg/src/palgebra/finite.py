"""Finite P-algebras given by tables, the MO family and an enumerator.

Elements are indices ``0 .. size-1``; index 0 is the element ``0``.  The
table file format is line oriented::

    palgebra
    size 4
    names 0 1 a a'
    comp 1 0 3 2
    dot
    0 0 0 0
    0 1 2 3
    0 2 2 0
    0 3 0 3

``#`` starts a comment.  ``comp`` lists the image of each index and the
``dot`` rows give ``dot[x][y]`` for ``x·y``.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .core import PAlgebraModel
from .laws import AXIOM_IDS, get_law, laws_in

__all__ = [
    "FiniteAlgebra",
    "AxiomViolation",
    "TableError",
    "mo_algebra",
    "boolean2",
    "load",
    "save",
    "load_file",
    "check_table",
    "enumerate_palgebras",
    "canonical_form",
    "is_isomorphic",
]


class TableError(ValueError):
    """Malformed table or text."""


class AxiomViolation(ValueError):
    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at ({', '.join(witness)})")


class FiniteAlgebra(PAlgebraModel):
    """A table model.  Built through :meth:`create` or :func:`load`, which
    check the axioms; the bare constructor only checks the table shape."""

    def __init__(self, names: Sequence[str], comp: Sequence[int], dot: Sequence[Sequence[int]],
                 name: Optional[str] = None):
        n = len(names)
        if n < 1:
            raise TableError("empty carrier")
        if len(set(names)) != n:
            raise TableError("duplicate element names")
        if len(comp) != n or len(dot) != n or any(len(row) != n for row in dot):
            raise TableError(f"table shape does not match size {n}")
        for v in itertools.chain(comp, *dot):
            if not (isinstance(v, int) and 0 <= v < n):
                raise TableError(f"index {v!r} out of range 0..{n - 1}")
        if any(comp[comp[i]] != i for i in range(n)):
            raise TableError("comp is not an involution")
        self.size = n
        self.names = tuple(names)
        self.comp_table = tuple(comp)
        self.dot_table = tuple(tuple(row) for row in dot)
        self.name = name or f"finite:{n}"
        self._index = {s: i for i, s in enumerate(self.names)}
        self._carrier = list(range(n))

    @classmethod
    def create(cls, names, comp, dot, name=None) -> "FiniteAlgebra":
        a = cls(names, comp, dot, name)
        a.require_axioms()
        return a

    def require_axioms(self):
        bad = axiom_violation(self)
        if bad is not None:
            raise AxiomViolation(*bad)

    def __reduce__(self):
        return (FiniteAlgebra, (self.names, self.comp_table, self.dot_table, self.name))

    def key(self):
        return (self.names, self.comp_table, self.dot_table)

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # model interface
    def zero(self):
        return 0

    def comp(self, x):
        return self.comp_table[x]

    def dot(self, x, y):
        return self.dot_table[x][y]

    def sample(self, rng):
        return rng.randrange(self.size)

    def enumerate(self):
        return self._carrier

    def format(self, x):
        return self.names[x]

    def parse(self, text):
        try:
            return self._index[text.strip()]
        except KeyError:
            raise ValueError(f"no element named {text!r} in {self.name}") from None

    def is_commutative(self) -> bool:
        return all(self.dot_table[x][y] == self.dot_table[y][x]
                   for x in range(self.size) for y in range(self.size))


def axiom_violation(m: PAlgebraModel) -> Optional[tuple[str, tuple]]:
    """First failing axiom and its witness (names), scanning exhaustively."""
    carrier = m.enumerate()
    for law in laws_in("axiom"):
        for xs in itertools.product(carrier, repeat=law.arity):
            if not law.holds(m, xs):
                return law.id, tuple(m.format(x) for x in xs)
    return None


def check_table(names, comp, dot) -> Optional[tuple[str, tuple]]:
    """``None`` when the table is a P-algebra, else ``(axiom id, witness)``."""
    return axiom_violation(FiniteAlgebra(names, comp, dot))


# ------------------------------------------------------------ constructors

def boolean2() -> FiniteAlgebra:
    return FiniteAlgebra.create(["0", "1"], [1, 0], [[0, 0], [0, 1]], name="bool2")


def mo_algebra(k: int) -> FiniteAlgebra:
    """``0``, ``1`` and ``k`` orthogonal pairs of lines of the plane.

    Names are ``0 1 a a' b b' ...`` (then ``p6 p6'`` ... past ``z``).  The
    projection of a line onto a different, non-orthogonal line is that line.
    """
    if k < 1:
        raise ValueError("mo_algebra needs k >= 1")
    letters = "abcdefghijklmnopqrstuvwxyz"
    names = ["0", "1"]
    for i in range(k):
        base = letters[i] if i < len(letters) else f"p{i}"
        names += [base, base + "'"]
    n = 2 * k + 2
    comp = [1, 0] + [j + 1 if j % 2 == 0 else j - 1 for j in range(2, n)]
    dot = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x == 0 or y == 0:
                v = 0
            elif x == 1:
                v = y
            elif y == 1 or x == y:
                v = x
            elif comp[x] == y:
                v = 0
            else:
                v = y
            dot[x][y] = v
    return FiniteAlgebra.create(names, comp, dot, name=f"mo:{k}")


# -------------------------------------------------------------------- I/O

def save(a: FiniteAlgebra) -> str:
    lines = ["palgebra", f"size {a.size}", "names " + " ".join(a.names),
             "comp " + " ".join(map(str, a.comp_table)), "dot"]
    lines += [" ".join(map(str, row)) for row in a.dot_table]
    return "\n".join(lines) + "\n"


def load(text: str, check: bool = True, name: Optional[str] = None) -> FiniteAlgebra:
    """Parse a table; with ``check`` the axioms must hold."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != "palgebra":
        raise TableError("missing 'palgebra' header")
    fields: dict[str, list[str]] = {}
    i = 1
    while i < len(lines):
        key, _, rest = lines[i].partition(" ")
        if key == "dot":
            fields["dot"] = lines[i + 1:]
            break
        if key not in ("size", "names", "comp"):
            raise TableError(f"unexpected line {lines[i]!r}")
        fields[key] = rest.split()
        i += 1
    for key in ("size", "names", "comp", "dot"):
        if key not in fields:
            raise TableError(f"missing '{key}' section")
    try:
        n = int(fields["size"][0])
        comp = [int(v) for v in fields["comp"]]
        dot = [[int(v) for v in row.split()] for row in fields["dot"]]
    except (ValueError, IndexError) as exc:
        raise TableError(f"malformed number: {exc}") from None
    names = fields["names"]
    if len(names) != n:
        raise TableError(f"expected {n} names, found {len(names)}")
    if len(dot) != n:
        raise TableError(f"expected {n} dot rows, found {len(dot)}")
    a = FiniteAlgebra(names, comp, dot, name=name)
    if check:
        a.require_axioms()
    return a


def load_file(path, check: bool = True) -> FiniteAlgebra:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read(), check=check, name=f"file:{path}")


# ------------------------------------------------------------- enumerator

class _Unknown(Exception):
    pass


class _PartialAlgebra(PAlgebraModel):
    """A table under construction; reading an empty cell raises."""

    def __init__(self, comp, dot):
        self.comp_table = comp
        self.dot_table = dot
        self._carrier = list(range(len(comp)))

    def zero(self):
        return 0

    def comp(self, x):
        return self.comp_table[x]

    def dot(self, x, y):
        v = self.dot_table[x][y]
        if v < 0:
            raise _Unknown
        return v

    def enumerate(self):
        return self._carrier


def _involutions(n: int) -> Iterator[list[int]]:
    """``comp`` candidates: 0 and 1 swapped, the rest paired without fixed points."""

    def pairings(rest):
        if not rest:
            yield []
            return
        first = rest[0]
        for j in range(1, len(rest)):
            for tail in pairings(rest[1:j] + rest[j + 1:]):
                yield [(first, rest[j])] + tail

    for pairs in pairings(list(range(2, n))):
        comp = [1, 0] + [0] * (n - 2)
        for x, y in pairs:
            comp[x], comp[y] = y, x
        yield comp


def _forced_table(n: int, comp: list[int]) -> list[list[int]]:
    dot = [[-1] * n for _ in range(n)]
    for x in range(n):
        dot[0][x] = dot[x][0] = 0
        dot[1][x] = x
        dot[x][1] = x
        dot[x][x] = x
        dot[x][comp[x]] = 0
        dot[comp[x]][x] = 0
    dot[0][1] = dot[1][0] = 0
    return dot


_PRUNE_LAWS = [get_law(i) for i in (
    "axiom.dot-mono.right",
    "axiom.partial-order",
    "axiom.p-commutativity",
    "axiom.p-assoc.reversal",
    "axiom.p-assoc.left",
    "axiom.p-assoc.right",
    "axiom.dot-mono.left",
    "axiom.O",
)]


def _refuted(p: _PartialAlgebra, cell: tuple[int, int]) -> bool:
    """True when some axiom instance touching ``cell``'s indices is already false.

    Instances that read an empty cell are skipped; the full check at the
    leaves makes up for anything missed here.
    """
    n = len(p.comp_table)
    x0, y0 = cell
    for law in _PRUNE_LAWS:
        for xs in itertools.product(range(n), repeat=law.arity):
            if x0 not in xs or y0 not in xs:
                continue
            try:
                if not law.holds(p, xs):
                    return True
            except _Unknown:
                continue
    return False


def _search(n: int, comp: list[int]) -> Iterator[tuple]:
    dot = _forced_table(n, comp)
    p = _PartialAlgebra(comp, dot)
    cells = [(x, y) for x in range(n) for y in range(n) if dot[x][y] < 0]

    def rec(i):
        if i == len(cells):
            a = FiniteAlgebra([str(j) for j in range(n)], comp, [row[:] for row in dot])
            if axiom_violation(a) is None:
                yield tuple(tuple(row) for row in dot)
            return
        x, y = cells[i]
        for v in range(n):
            dot[x][y] = v
            if not _refuted(p, (x, y)):
                yield from rec(i + 1)
        dot[x][y] = -1

    yield from rec(0)


def _default_names(n: int, comp: Sequence[int]) -> list[str]:
    names = ["0", "1"] + [""] * (n - 2)
    letter = iter("abcdefghijklmnopqrstuvwxyz")
    for x in range(2, n):
        if not names[x]:
            base = next(letter)
            names[x] = base
            names[comp[x]] = base + "'"
    return names


def _search_job(args):
    n, comp = args
    return [(tuple(comp), table) for table in _search(n, comp)]


def enumerate_palgebras(size: int, iso_reduce: bool = False, jobs: int = 1) -> Iterator[FiniteAlgebra]:
    """All P-algebra tables of the given size with ``0`` at index 0 and ``1`` at index 1.

    Every table emitted passes the full axiom check.  Sizes 3 and 5 give
    nothing: apart from ``0`` and ``1`` the complement pairs elements up.
    With ``iso_reduce`` only the first table of each isomorphism class is
    kept.  ``jobs > 1`` splits the search by complement choice; the output
    order does not depend on it.
    """
    if not 2 <= size <= 6:
        raise ValueError("enumerate_palgebras supports sizes 2..6")
    comps = list(_involutions(size))
    if jobs > 1 and len(comps) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_search_job, [(size, c) for c in comps]))
    else:
        batches = (_search_job((size, c)) for c in comps)
    seen = set()
    count = 0
    for batch in batches:
        for comp, table in batch:
            a = FiniteAlgebra(_default_names(size, comp), comp, table)
            if iso_reduce:
                key = canonical_form(a)
                if key in seen:
                    continue
                seen.add(key)
            count += 1
            a.name = f"enum:{size}#{count}"
            yield a


def canonical_form(a: FiniteAlgebra) -> tuple:
    """Least relabelled ``(comp, dot)`` over permutations fixing 0 and 1."""
    n = a.size
    best = None
    for perm in itertools.permutations(range(2, n)):
        sigma = [0, 1] + list(perm)  # old index -> new index
        inv = [0] * n
        for old, new in enumerate(sigma):
            inv[new] = old
        comp = tuple(sigma[a.comp_table[inv[i]]] for i in range(n))
        dot = tuple(tuple(sigma[a.dot_table[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        key = (comp, dot)
        if best is None or key < best:
            best = key
    return best


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    if a.size != b.size:
        return False
    if a.comp_table[0] != 1 or b.comp_table[0] != 1:
        raise ValueError("isomorphism test expects 1 at index 1")
    return canonical_form(a) == canonical_form(b)
