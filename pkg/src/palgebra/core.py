"""Abstract P-algebra models and the relations derived from ``0``, ``'`` and ``·``.

A backend supplies the carrier through :class:`PAlgebraModel`; everything
else (``1``, ``≤``, ``⊥``, ``⌣``, ``+``, atoms, l.u.b. constructions) is
computed here on demand and never cached on the model.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Optional, Sequence

__all__ = [
    "PAlgebraModel",
    "PreconditionError",
    "NoLeastUpperBound",
    "CSetReport",
    "one",
    "leq",
    "bot",
    "smile",
    "plus",
    "is_atom",
    "atoms_of",
    "atom_below",
    "sample_atom",
    "gram_schmidt_witness",
    "lub_of_chain",
    "lub_of_ortho_set",
    "lub_scan",
    "glb_scan",
    "cset_boolean_check",
    "is_commutative",
]

Feature = Hashable


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class NoLeastUpperBound(LookupError):
    """The finite poset has no least upper bound for the given set."""

    def __init__(self, items, upper_bounds):
        self.items = list(items)
        self.upper_bounds = list(upper_bounds)
        super().__init__(
            f"no least upper bound among {len(self.upper_bounds)} upper bounds"
        )


class PAlgebraModel:
    """Carrier interface: ``zero``, ``comp``, ``dot`` plus sampling.

    Subclasses override ``enumerate`` when the carrier is finite, and may
    override ``atom_test``/``atom_below``/``random_atom``/``lub_direct``
    with a specialised computation.
    """

    name = "model"

    def zero(self) -> Feature:
        raise NotImplementedError

    def comp(self, x: Feature) -> Feature:
        raise NotImplementedError

    def dot(self, x: Feature, y: Feature) -> Feature:
        raise NotImplementedError

    def eq(self, x: Feature, y: Feature) -> bool:
        return x == y

    def sample(self, rng: random.Random) -> Feature:
        raise NotImplementedError

    def enumerate(self) -> Optional[Sequence[Feature]]:
        return None

    def format(self, x: Feature) -> str:
        return str(x)

    def parse(self, text: str) -> Feature:
        raise NotImplementedError

    # specialisations; the defaults work on enumerable carriers
    def atom_test(self, x: Feature) -> bool:
        carrier = self._require_finite("is_atom")
        if self.eq(x, self.zero()):
            return False
        return all(bot(self, y, x) or self.eq(self.dot(y, x), x) for y in carrier)

    def atom_below(self, x: Feature) -> Optional[Feature]:
        found = atoms_of(self, x)
        return found[0] if found else None

    def random_atom(self, rng: random.Random) -> Feature:
        atoms = [a for a in self._require_finite("sample_atom") if self.atom_test(a)]
        if not atoms:
            raise PreconditionError("model has no atoms")
        return rng.choice(atoms)

    def lub_direct(self, items: Sequence[Feature]) -> Feature:
        self._require_finite("l.u.b. scan")
        return lub_scan(self, items)

    def glb_direct(self, items: Sequence[Feature]) -> Feature:
        self._require_finite("g.l.b. scan")
        return glb_scan(self, items)

    def below_probe(self, x: Feature) -> Sequence[Feature]:
        """Elements known to lie below ``x``: all of them on a finite carrier."""
        carrier = self._require_finite("down-set scan")
        return [y for y in carrier if leq(self, y, x)]

    @property
    def finite(self) -> bool:
        return self.enumerate() is not None

    def _require_finite(self, what: str) -> Sequence[Feature]:
        carrier = self.enumerate()
        if carrier is None:
            raise PreconditionError(f"{what} needs a finite carrier ({self.name})")
        return carrier

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# ------------------------------------------------------- derived relations

def one(m: PAlgebraModel) -> Feature:
    return m.comp(m.zero())


def leq(m: PAlgebraModel, x, y) -> bool:
    return m.eq(m.dot(x, y), x)


def bot(m: PAlgebraModel, x, y) -> bool:
    return m.eq(m.dot(x, y), m.zero())


def smile(m: PAlgebraModel, x, y) -> bool:
    return leq(m, m.dot(x, y), x)


def plus(m: PAlgebraModel, x, y):
    """``x + y = (y' · x')'``."""
    return m.comp(m.dot(m.comp(y), m.comp(x)))


def is_commutative(m: PAlgebraModel) -> bool:
    carrier = m._require_finite("commutativity scan")
    return all(m.eq(m.dot(x, y), m.dot(y, x)) for x in carrier for y in carrier)


# ------------------------------------------------------------------ atoms

def is_atom(m: PAlgebraModel, x) -> bool:
    return m.atom_test(x)


def atoms_of(m: PAlgebraModel, x) -> list:
    """All atoms below ``x``; only defined on finite carriers."""
    carrier = m.enumerate()
    if carrier is None:
        raise PreconditionError(
            f"atoms_of needs a finite carrier; {m.name} has infinitely many atoms"
        )
    return [a for a in carrier if m.atom_test(a) and leq(m, a, x)]


def atom_below(m: PAlgebraModel, x):
    """Some atom ``a <= x``, or ``None`` when there is none."""
    return m.atom_below(x)


def sample_atom(m: PAlgebraModel, rng: random.Random):
    return m.random_atom(rng)


def gram_schmidt_witness(m: PAlgebraModel, x, y):
    """An atom below ``y`` and orthogonal to ``x``, given ``x < y``.

    The atom is taken below ``y · x'``, which is nonzero by orthomodularity.
    """
    if not leq(m, x, y) or m.eq(x, y):
        raise PreconditionError("gram_schmidt_witness needs x <= y and x != y")
    rest = m.dot(y, m.comp(x))
    a = m.atom_below(rest)
    if a is None:
        raise PreconditionError("no atom below y·x'; the model is not atomic")
    return a


# ----------------------------------------------------- bounds and chains

def _upper_bounds(m, items, carrier):
    return [u for u in carrier if all(leq(m, x, u) for x in items)]


def lub_scan(m: PAlgebraModel, items: Sequence) -> Any:
    """Least upper bound by scanning a finite carrier."""
    carrier = m._require_finite("l.u.b. scan")
    ubs = _upper_bounds(m, items, carrier)
    for u in ubs:
        if all(leq(m, u, w) for w in ubs):
            return u
    raise NoLeastUpperBound(items, ubs)


def glb_scan(m: PAlgebraModel, items: Sequence) -> Any:
    carrier = m._require_finite("g.l.b. scan")
    lbs = [u for u in carrier if all(leq(m, u, x) for x in items)]
    for u in lbs:
        if all(leq(m, w, u) for w in lbs):
            return u
    raise LookupError("no greatest lower bound")


@dataclass
class ChainLub:
    lub: Any
    orthogonal_parts: list
    partial_sums: list


def lub_of_chain(m: PAlgebraModel, chain: Sequence, detail: bool = False):
    """Least upper bound of an ascending chain, computed two ways.

    Route (a) asks the backend directly (poset scan or span closure).
    Route (b) splits the chain into orthogonal increments
    ``y0 = x0, y(i+1) = x(i+1)·x(i)'`` and sums them.  The two must agree.
    """
    chain = list(chain)
    if not chain:
        raise PreconditionError("empty chain")
    for i in range(len(chain) - 1):
        if not leq(m, chain[i], chain[i + 1]):
            raise PreconditionError(f"chain not ascending at link {i}")
    direct = m.lub_direct(chain)
    parts = [chain[0]] + [
        m.dot(chain[i + 1], m.comp(chain[i])) for i in range(len(chain) - 1)
    ]
    sums = []
    acc = m.zero()
    for p in parts:
        acc = plus(m, acc, p)
        sums.append(acc)
    via_parts = lub_of_ortho_set(m, parts, allow_repeats=True)
    if not m.eq(direct, via_parts):
        raise AssertionError(
            f"chain l.u.b. routes disagree: {m.format(direct)} vs {m.format(via_parts)}"
        )
    if detail:
        return ChainLub(direct, parts, sums)
    return direct


def lub_of_ortho_set(m: PAlgebraModel, ys: Iterable, allow_repeats: bool = False):
    """Sum of pairwise orthogonal features, cross-checked on finite carriers.

    Order is irrelevant for orthogonal summands.  ``allow_repeats`` lets a
    sequence repeat ``0`` (a chain with equal links produces zero parts).
    """
    ys = list(ys)
    if not allow_repeats:
        uniq = []
        for y in ys:
            if not any(m.eq(y, u) for u in uniq):
                uniq.append(y)
        ys = uniq
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            if not bot(m, ys[i], ys[j]):
                raise PreconditionError(
                    f"not an ortho-set: {m.format(ys[i])} and {m.format(ys[j])} are not orthogonal"
                )
    acc = m.zero()
    for y in ys:
        acc = plus(m, acc, y)
    if m.finite and ys:
        direct = lub_scan(m, ys)
        if not m.eq(direct, acc):
            raise AssertionError("ortho-set sum differs from the scanned l.u.b.")
    elif ys:
        direct = m.lub_direct(ys)
        if not m.eq(direct, acc):
            raise AssertionError("ortho-set sum differs from the direct l.u.b.")
    return acc


# ------------------------------------------------------------------ c-sets

@dataclass
class CSetReport:
    ok: bool
    law: str = ""
    witness: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.ok


def cset_boolean_check(m: PAlgebraModel, ys: Iterable) -> CSetReport:
    """Check that a finite c-set with ``0``, closed under ``'``, is a Boolean algebra.

    Raises :class:`PreconditionError` when ``ys`` is not such a c-set;
    otherwise returns a report naming the first Boolean law that fails.
    """
    ys = list(ys)
    members = []
    for y in ys:
        if not any(m.eq(y, u) for u in members):
            members.append(y)
    ys = members

    def member(x):
        return any(m.eq(x, u) for u in ys)

    zero, top = m.zero(), one(m)
    if not member(zero):
        raise PreconditionError("c-set must contain 0")
    for x in ys:
        if not member(m.comp(x)):
            raise PreconditionError(f"not closed under complement: {m.format(x)}")
    for x in ys:
        for y in ys:
            if not smile(m, x, y):
                raise PreconditionError(
                    f"not a c-set: {m.format(x)} and {m.format(y)} do not commute"
                )

    def fail(law, *w):
        return CSetReport(False, law, tuple(w))

    for x in ys:
        for y in ys:
            xy, s = m.dot(x, y), plus(m, x, y)
            if not member(xy):
                return fail("closed under dot", x, y)
            if not member(s):
                return fail("closed under plus", x, y)
            if not m.eq(xy, m.dot(y, x)):
                return fail("meet commutative", x, y)
            if not m.eq(s, plus(m, y, x)):
                return fail("join commutative", x, y)
            if not (leq(m, xy, x) and leq(m, xy, y)):
                return fail("meet is a lower bound", x, y)
            if not (leq(m, x, s) and leq(m, y, s)):
                return fail("join is an upper bound", x, y)
            if not m.eq(m.dot(x, s), x):
                return fail("absorption x·(x+y) = x", x, y)
            if not m.eq(plus(m, x, xy), x):
                return fail("absorption x + x·y = x", x, y)
    for x in ys:
        if not m.eq(m.dot(x, m.comp(x)), zero):
            return fail("complement meet", x)
        if not m.eq(plus(m, x, m.comp(x)), top):
            return fail("complement join", x)
        for y in ys:
            for z in ys:
                if not m.eq(m.dot(m.dot(x, y), z), m.dot(x, m.dot(y, z))):
                    return fail("meet associative", x, y, z)
                if not m.eq(plus(m, plus(m, x, y), z), plus(m, x, plus(m, y, z))):
                    return fail("join associative", x, y, z)
                lhs = m.dot(x, plus(m, y, z))
                rhs = plus(m, m.dot(x, y), m.dot(x, z))
                if not m.eq(lhs, rhs):
                    return fail("distributive", x, y, z)
    return CSetReport(True)
