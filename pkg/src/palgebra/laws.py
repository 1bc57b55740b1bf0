"""Law registry and the harness that runs it against a model.

Every law is data: an id, an arity, an optional hypothesis, a conclusion
and an optional constructive sampler.  On a finite carrier a law is checked
on every tuple satisfying its hypothesis; on an infinite carrier it is
checked on ``budget`` seeded tuples drawn by the sampler.

Hypotheses are kept apart from conclusions so that samplers can aim at
them; a failure is always a tuple where the hypothesis holds and the
conclusion does not, which :func:`recheck` reproduces.
"""
from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Sequence

from .core import (
    NoLeastUpperBound,
    PAlgebraModel,
    PreconditionError,
    bot,
    cset_boolean_check,
    leq,
    lub_of_chain,
    lub_of_ortho_set,
    one,
    plus,
    smile,
)

__all__ = [
    "Law",
    "LawReport",
    "REGISTRY",
    "AXIOM_IDS",
    "laws_in",
    "get_law",
    "check_axioms",
    "check_theorems",
    "check_appendices",
    "run_laws",
    "recheck",
    "conditional_sampler",
    "format_reports",
    "reports_to_json",
    "generated_subalgebra",
]

Sampler = Callable[[PAlgebraModel, random.Random], tuple]


@dataclass(frozen=True)
class Law:
    id: str
    group: str  # axiom | theorem | appendix
    arity: int
    statement: str
    conclusion: Callable[..., bool]
    hypothesis: Optional[Callable[..., bool]] = None
    sampler: Optional[Sampler] = None

    def admissible(self, m: PAlgebraModel, xs: Sequence) -> bool:
        return self.hypothesis is None or bool(self.hypothesis(m, *xs))

    def holds(self, m: PAlgebraModel, xs: Sequence) -> bool:
        return not self.admissible(m, xs) or bool(self.conclusion(m, *xs))


@dataclass
class LawReport:
    law: str
    status: str  # pass | fail | skipped
    trials: int
    seed: Any
    witness: tuple = ()
    message: str = ""
    model: str = ""
    witness_text: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {
            "law": self.law,
            "status": self.status,
            "witness": list(self.witness_text),
            "trials": self.trials,
            "seed": self.seed,
            "message": self.message,
            "model": self.model,
        }


# --------------------------------------------------------------- samplers

def _s(m, rng):
    return m.sample(rng)


def _sub(m, rng, y):
    """Something below ``y``: ``s·y <= y`` for any ``s``."""
    return m.dot(_s(m, rng), y)


def _sup(m, rng, x):
    """Something above ``x``: ``(s·x')'`` contains ``x``."""
    return m.comp(m.dot(_s(m, rng), m.comp(x)))


def _orth(m, rng, x):
    """Something orthogonal to ``x``: it lies below ``x'``."""
    return m.dot(_s(m, rng), m.comp(x))


def independent(k: int) -> Sampler:
    return lambda m, rng: tuple(_s(m, rng) for _ in range(k))


def leq_pair(m, rng):
    y = _s(m, rng)
    return (_sub(m, rng, y), y)


def bot_pair(m, rng):
    x = _s(m, rng)
    return (x, _orth(m, rng, x))


def orthogonal_parts(m, rng, k: int) -> list:
    parts = []
    acc = m.zero()
    for _ in range(k):
        p = m.dot(_s(m, rng), m.comp(acc))
        parts.append(p)
        acc = plus(m, acc, p)
    return parts


def commuting_set(k: int) -> Sampler:
    """``k`` sums of random subsets of one orthogonal decomposition."""

    def draw(m, rng):
        parts = orthogonal_parts(m, rng, k + 1)
        out = []
        for _ in range(k):
            acc = m.zero()
            for p in parts:
                if rng.random() < 0.5:
                    acc = plus(m, acc, p)
            out.append(acc)
        return tuple(out)

    return draw


def ascending_chain(k: int) -> Sampler:
    def draw(m, rng):
        chain = [_s(m, rng)]
        for _ in range(k - 1):
            chain.append(_sub(m, rng, chain[-1]))
        return tuple(reversed(chain))

    return draw


def strict_pair(m, rng):
    y = _s(m, rng)
    x = _sub(m, rng, y)
    if m.eq(x, y):
        # a second attempt below a proper part of y
        x = _sub(m, rng, m.dot(y, m.comp(m.atom_below(y) or m.zero())))
    return (x, y)


def mix(*samplers: Sampler) -> Sampler:
    return lambda m, rng: rng.choice(samplers)(m, rng)


def _with(base: Sampler, extra: int) -> Sampler:
    return lambda m, rng: tuple(base(m, rng)) + tuple(_s(m, rng) for _ in range(extra))


def _atom_below_random(m, rng, x):
    """A random atom below ``x`` if one can be found cheaply."""
    for _ in range(8):
        a = m.dot(m.random_atom(rng), x)
        if m.atom_test(a):
            return a
    a = m.atom_below(x)
    if a is None:
        raise PreconditionError("no atom below the sampled element")
    return a


def _random_atom(m, rng):
    return m.random_atom(rng)


_HYPOTHESES = {
    "leq-pair": leq_pair,
    "bot-pair": bot_pair,
    "smile-pair": commuting_set(2),
}


def conditional_sampler(m: PAlgebraModel, hypothesis: str, budget: int, seed=0):
    """Yield ``budget`` tuples satisfying ``hypothesis``.

    Supported: ``leq-pair`` (x = s·y), ``bot-pair`` (y = s·x'),
    ``smile-pair`` and ``commuting-set(k)`` (sums of parts of one
    orthogonal decomposition), ``ascending-chain(k)`` (repeated
    projection downwards, then reversed).  Every tuple is re-verified;
    draws that fail verification are dropped and, after ``20 * budget``
    attempts without success, generation stops.
    """
    rng = random.Random(f"{seed}:{hypothesis}")
    if hypothesis in _HYPOTHESES:
        draw = _HYPOTHESES[hypothesis]
    elif hypothesis.startswith("commuting-set(") and hypothesis.endswith(")"):
        draw = commuting_set(int(hypothesis[14:-1]))
    elif hypothesis.startswith("ascending-chain(") and hypothesis.endswith(")"):
        draw = ascending_chain(int(hypothesis[16:-1]))
    else:
        raise ValueError(f"unknown hypothesis {hypothesis!r}")
    verify = {
        "leq-pair": lambda t: leq(m, *t),
        "bot-pair": lambda t: bot(m, *t),
    }.get(hypothesis)
    if verify is None and ("commuting" in hypothesis or hypothesis == "smile-pair"):
        verify = lambda t: all(smile(m, a, b) for a in t for b in t)
    if verify is None:
        verify = lambda t: all(leq(m, t[i], t[i + 1]) for i in range(len(t) - 1))
    produced = attempts = 0
    while produced < budget and attempts < 20 * budget:
        attempts += 1
        t = draw(m, rng)
        if verify(t):
            produced += 1
            yield t


# ---------------------------------------------------------- law helpers

def _eq(m, *xs):
    return all(m.eq(xs[0], x) for x in xs[1:])


def _is_glb(m, g, x, y):
    return m.eq(g, m.glb_direct([x, y]))


def _is_lub(m, s, x, y):
    return m.eq(s, m.lub_direct([x, y]))


def _pairwise_smile(m, *xs):
    return all(smile(m, a, b) for a in xs for b in xs)


def _ascending(m, *xs):
    return all(leq(m, xs[i], xs[i + 1]) for i in range(len(xs) - 1))


def generated_subalgebra(m: PAlgebraModel, gens: Iterable, limit: int = 64) -> list:
    """Closure of ``gens`` and ``0`` under ``'`` and ``·``."""
    items: list = []

    def add(x):
        if not any(m.eq(x, u) for u in items):
            items.append(x)
            return True
        return False

    for g in [m.zero(), *gens]:
        add(g)
    changed = True
    while changed:
        changed = False
        for x in list(items):
            changed |= add(m.comp(x))
        for x in list(items):
            for y in list(items):
                changed |= add(m.dot(x, y))
        if len(items) > limit:
            raise PreconditionError(f"generated subalgebra exceeds {limit} elements")
    return items


def _boolean_triple(m, x, y, z):
    if not _eq(m, m.dot(m.dot(x, y), z), m.dot(x, m.dot(y, z))):
        return False
    if m.finite:
        return cset_boolean_check(m, generated_subalgebra(m, [x, y, z])).ok
    # infinite carriers: the Boolean identities on the triple itself
    return (
        _eq(m, m.dot(x, y), m.dot(y, x))
        and _eq(m, m.dot(x, plus(m, y, z)), plus(m, m.dot(x, y), m.dot(x, z)))
        and _eq(m, plus(m, x, m.dot(y, z)), m.dot(plus(m, x, y), plus(m, x, z)))
        and _eq(m, plus(m, x, m.dot(x, y)), x)
    )


def _atoms_below_probe(m, x):
    return [a for a in m.below_probe(x) if m.atom_test(a)]


def _chain_links(m, *xs):
    for i in range(len(xs) - 1):
        step = m.dot(xs[i + 1], m.comp(xs[i]))
        if not m.eq(xs[i + 1], plus(m, xs[i], step)):
            return False
    return True


def _chain_routes(m, *xs):
    detail = lub_of_chain(m, xs, detail=True)
    if not m.eq(detail.lub, xs[-1]):
        return False
    return all(m.eq(s, x) for s, x in zip(detail.partial_sums, xs))


def _ortho_set_lub(m, *ys):
    total = lub_of_ortho_set(m, ys, allow_repeats=True)
    return all(leq(m, y, total) for y in ys)


def _gram_schmidt(m, x, y):
    from .core import gram_schmidt_witness

    a = gram_schmidt_witness(m, x, y)
    return m.atom_test(a) and leq(m, a, y) and bot(m, a, x)


def _atom_nonempty(m, x):
    if m.finite:
        from .core import atoms_of

        return (len(atoms_of(m, x)) == 0) == m.eq(x, m.zero())
    a = m.atom_below(x)
    if m.eq(x, m.zero()):
        return a is None
    return a is not None and m.atom_test(a) and leq(m, a, x)


def _atom_characterization(m, a):
    below_trivial = all(m.eq(y, m.zero()) or m.eq(y, a) for y in m.below_probe(a))
    nonzero = not m.eq(a, m.zero())
    return m.atom_test(a) == (nonzero and below_trivial)


# ----------------------------------------------------------- registry

def _law(id, group, arity, statement, conclusion, hypothesis=None, sampler=None):
    return Law(id, group, arity, statement, conclusion, hypothesis, sampler)


_AXIOMS = [
    _law("axiom.partial-order", "axiom", 3,
         "x <= x; x <= y and y <= x => x = y; x <= y and y <= z => x <= z",
         lambda m, x, y, z: leq(m, x, x)
         and (not (leq(m, x, y) and leq(m, y, x)) or m.eq(x, y))
         and (not (leq(m, x, y) and leq(m, y, z)) or leq(m, x, z)),
         sampler=mix(independent(3), ascending_chain(3),
                     lambda m, r: (lambda p: (p[0], p[1], p[0]))(leq_pair(m, r)))),
    _law("axiom.p-commutativity", "axiom", 2, "x smile y iff y smile x",
         lambda m, x, y: smile(m, x, y) == smile(m, y, x),
         sampler=mix(independent(2), commuting_set(2), leq_pair)),
    _law("axiom.p-assoc.reversal", "axiom", 3, "(x·y)·z = 0 iff (z·y)·x = 0",
         lambda m, x, y, z: m.eq(m.dot(m.dot(x, y), z), m.zero())
         == m.eq(m.dot(m.dot(z, y), x), m.zero()),
         sampler=mix(independent(3),
                     lambda m, r: (lambda x, y: (x, y, _orth(m, r, m.dot(x, y))))(_s(m, r), _s(m, r)))),
    _law("axiom.p-assoc.left", "axiom", 3, "x <= y => (x·y)·z = x·(y·z)",
         lambda m, x, y, z: m.eq(m.dot(m.dot(x, y), z), m.dot(x, m.dot(y, z))),
         hypothesis=lambda m, x, y, z: leq(m, x, y), sampler=_with(leq_pair, 1)),
    _law("axiom.p-assoc.right", "axiom", 3, "x <= y => (z·y)·x = z·(y·x)",
         lambda m, x, y, z: m.eq(m.dot(m.dot(z, y), x), m.dot(z, m.dot(y, x))),
         hypothesis=lambda m, x, y, z: leq(m, x, y), sampler=_with(leq_pair, 1)),
    _law("axiom.dot-mono.left", "axiom", 3, "x <= y => x·z <= y·z",
         lambda m, x, y, z: leq(m, m.dot(x, z), m.dot(y, z)),
         hypothesis=lambda m, x, y, z: leq(m, x, y), sampler=_with(leq_pair, 1)),
    _law("axiom.dot-mono.right", "axiom", 2, "x·y <= y",
         lambda m, x, y: leq(m, m.dot(x, y), y), sampler=independent(2)),
    _law("axiom.zero", "axiom", 1, "0·x = 0",
         lambda m, x: m.eq(m.dot(m.zero(), x), m.zero()), sampler=independent(1)),
    _law("axiom.comp", "axiom", 1, "x·x' = 0",
         lambda m, x: m.eq(m.dot(x, m.comp(x)), m.zero()), sampler=independent(1)),
    _law("axiom.O", "axiom", 3, "x·y <= z and x·y' <= z => x <= z",
         lambda m, x, y, z: leq(m, x, z),
         hypothesis=lambda m, x, y, z: leq(m, m.dot(x, y), z) and leq(m, m.dot(x, m.comp(y)), z),
         sampler=lambda m, r: (lambda x, y: (x, y, _sup(m, r, plus(m, m.dot(x, y), m.dot(x, m.comp(y))))))(
             _s(m, r), _s(m, r))),
]


def _sub_both(m, r):
    z = _s(m, r)
    return (_sup(m, r, z), _sup(m, r, z), z)


def _below_common(m, r):
    z = _s(m, r)
    return (_sub(m, r, z), _sub(m, r, z), z)


_smile_mix = mix(commuting_set(2), independent(2), leq_pair)
_bot_mix = mix(bot_pair, independent(2))
_leq_mix = mix(leq_pair, independent(2))

_THEOREMS = [
    _law("basic.1", "theorem", 3, "z <= x and z <= y => z <= x·y",
         lambda m, x, y, z: leq(m, z, m.dot(x, y)),
         hypothesis=lambda m, x, y, z: leq(m, z, x) and leq(m, z, y), sampler=_sub_both),
    _law("basic.2", "theorem", 2, "x smile y iff x·y is the g.l.b. of x and y",
         lambda m, x, y: smile(m, x, y) == _is_glb(m, m.dot(x, y), x, y), sampler=_smile_mix),
    _law("basic.3", "theorem", 2, "x smile y iff x·y = y·x",
         lambda m, x, y: smile(m, x, y) == m.eq(m.dot(x, y), m.dot(y, x)), sampler=_smile_mix),
    _law("basic.4", "theorem", 2, "x <= y => x smile y",
         lambda m, x, y: smile(m, x, y),
         hypothesis=lambda m, x, y: leq(m, x, y), sampler=leq_pair),
    _law("basic.5", "theorem", 2, "x <= y => x·y = x = y·x",
         lambda m, x, y: _eq(m, m.dot(x, y), x, m.dot(y, x)),
         hypothesis=lambda m, x, y: leq(m, x, y), sampler=leq_pair),
    _law("basic.6", "theorem", 3, "(x·y)·z <= y·z",
         lambda m, x, y, z: leq(m, m.dot(m.dot(x, y), z), m.dot(y, z)), sampler=independent(3)),
    _law("basic.7", "theorem", 1, "x·0 = 0",
         lambda m, x: m.eq(m.dot(x, m.zero()), m.zero()), sampler=independent(1)),
    _law("basic.8", "theorem", 2, "x bot y => y bot x; x'·x = 0",
         lambda m, x, y: (not bot(m, x, y) or bot(m, y, x))
         and m.eq(m.dot(m.comp(x), x), m.zero()), sampler=_bot_mix),
    _law("basic.9", "theorem", 3, "x bot y and z <= y => x bot z",
         lambda m, x, y, z: bot(m, x, z),
         hypothesis=lambda m, x, y, z: bot(m, x, y) and leq(m, z, y),
         sampler=lambda m, r: (lambda x, y: (x, y, _sub(m, r, y)))(*bot_pair(m, r))),
    _law("basic.10", "theorem", 2, "x bot y iff x <= y'",
         lambda m, x, y: bot(m, x, y) == leq(m, x, m.comp(y)), sampler=_bot_mix),
    _law("boolean-when-commutative", "theorem", 3,
         "pairwise commuting x, y, z: dot is associative on them and they generate a Boolean algebra",
         _boolean_triple, hypothesis=_pairwise_smile, sampler=commuting_set(3)),
    _law("ortho.1", "theorem", 1, "x'' = x",
         lambda m, x: m.eq(m.comp(m.comp(x)), x), sampler=independent(1)),
    _law("ortho.2", "theorem", 2, "x <= y iff y' <= x'",
         lambda m, x, y: leq(m, x, y) == leq(m, m.comp(y), m.comp(x)), sampler=_leq_mix),
    _law("ortho.3", "theorem", 1, "x <= 1",
         lambda m, x: leq(m, x, one(m)), sampler=independent(1)),
    _law("ortho.4", "theorem", 2, "x smile y => x' smile y",
         lambda m, x, y: smile(m, m.comp(x), y),
         hypothesis=lambda m, x, y: smile(m, x, y), sampler=commuting_set(2)),
    _law("plus.1", "theorem", 1, "x + x' = x' + x = 1",
         lambda m, x: _eq(m, plus(m, x, m.comp(x)), plus(m, m.comp(x), x), one(m)),
         sampler=independent(1)),
    _law("plus.2", "theorem", 2, "x·y = 0 and x + y = 1 => y = x'",
         lambda m, x, y: m.eq(y, m.comp(x)),
         hypothesis=lambda m, x, y: bot(m, x, y) and m.eq(plus(m, x, y), one(m)),
         sampler=mix(lambda m, r: (lambda x: (x, m.comp(x)))(_s(m, r)), bot_pair)),
    _law("plus.3", "theorem", 2, "x·y = (y' + x')'",
         lambda m, x, y: m.eq(m.dot(x, y), m.comp(plus(m, m.comp(y), m.comp(x)))),
         sampler=independent(2)),
    _law("plus.4", "theorem", 2, "x <= y => y = x + y = y + x",
         lambda m, x, y: _eq(m, y, plus(m, x, y), plus(m, y, x)),
         hypothesis=lambda m, x, y: leq(m, x, y), sampler=leq_pair),
    _law("plus.5", "theorem", 2, "x <= x + y",
         lambda m, x, y: leq(m, x, plus(m, x, y)), sampler=independent(2)),
    _law("plus.6", "theorem", 3, "x <= y => z + x <= z + y",
         lambda m, x, y, z: leq(m, plus(m, z, x), plus(m, z, y)),
         hypothesis=lambda m, x, y, z: leq(m, x, y), sampler=_with(leq_pair, 1)),
    _law("plus.7", "theorem", 3, "x <= z and y <= z => x + y <= z; 0 + 0 = 0",
         lambda m, x, y, z: leq(m, plus(m, x, y), z)
         and m.eq(plus(m, m.zero(), m.zero()), m.zero()),
         hypothesis=lambda m, x, y, z: leq(m, x, z) and leq(m, y, z), sampler=_below_common),
    _law("plus.8", "theorem", 2, "x smile y => x + y is the l.u.b. of x and y",
         lambda m, x, y: _is_lub(m, plus(m, x, y), x, y),
         hypothesis=lambda m, x, y: smile(m, x, y), sampler=commuting_set(2)),
    _law("plus-more.1", "theorem", 2, "x smile y => x + y = y + x",
         lambda m, x, y: m.eq(plus(m, x, y), plus(m, y, x)),
         hypothesis=lambda m, x, y: smile(m, x, y), sampler=commuting_set(2)),
    _law("plus-more.2", "theorem", 2, "x smile y => x + y is the l.u.b. of x and y (via y + x)",
         lambda m, x, y: _is_lub(m, plus(m, y, x), x, y) and _is_lub(m, plus(m, x, y), y, x),
         hypothesis=lambda m, x, y: smile(m, x, y), sampler=commuting_set(2)),
    _law("plus-more.3", "theorem", 3, "x smile y => x·z + y·z <= (x + y)·z",
         lambda m, x, y, z: leq(m, plus(m, m.dot(x, z), m.dot(y, z)), m.dot(plus(m, x, y), z)),
         hypothesis=lambda m, x, y, z: smile(m, x, y), sampler=_with(commuting_set(2), 1)),
    _law("plus-more.4", "theorem", 2, "x <= x·y + x·y'",
         lambda m, x, y: leq(m, x, plus(m, m.dot(x, y), m.dot(x, m.comp(y)))),
         sampler=independent(2)),
    _law("plus-more.5", "theorem", 2, "x·(x + y) = x = (x + y)·x; x'·(x + y) = (x + y)·x'",
         lambda m, x, y: _eq(m, m.dot(x, plus(m, x, y)), x, m.dot(plus(m, x, y), x))
         and m.eq(m.dot(m.comp(x), plus(m, x, y)), m.dot(plus(m, x, y), m.comp(x))),
         sampler=independent(2)),
    _law("plus-more.6", "theorem", 3, "x <= y + z iff x·y' <= z",
         lambda m, x, y, z: leq(m, x, plus(m, y, z)) == leq(m, m.dot(x, m.comp(y)), z),
         sampler=mix(independent(3),
                     lambda m, r: (lambda y, z: (_sub(m, r, plus(m, y, z)), y, z))(_s(m, r), _s(m, r)))),
    _law("orthomodularity", "theorem", 2,
         "x <= y => y = x + x'·y = x + y·x' = y·x' + x = x'·y + x",
         lambda m, x, y: _eq(m, y,
                             plus(m, x, m.dot(m.comp(x), y)),
                             plus(m, x, m.dot(y, m.comp(x))),
                             plus(m, m.dot(y, m.comp(x)), x),
                             plus(m, m.dot(m.comp(x), y), x)),
         hypothesis=lambda m, x, y: leq(m, x, y), sampler=leq_pair),
]

_is_atom = lambda m, a: m.atom_test(a)  # noqa: E731


def _atom_and(base: Sampler) -> Sampler:
    return lambda m, r: (_random_atom(m, r),) + tuple(base(m, r))


_APPENDICES = [
    _law("cset.glb-lub", "appendix", 2,
         "x smile y => x·y is the g.l.b. and x + y the l.u.b. of x and y",
         lambda m, x, y: _is_glb(m, m.dot(x, y), x, y) and _is_lub(m, plus(m, x, y), x, y),
         hypothesis=lambda m, x, y: smile(m, x, y), sampler=commuting_set(2)),
    _law("cset.boolean", "appendix", 3,
         "a c-set with 0 closed under ' (and generated under ·) is a Boolean algebra",
         lambda m, x, y, z: cset_boolean_check(m, generated_subalgebra(m, [x, y, z])).ok,
         hypothesis=_pairwise_smile, sampler=commuting_set(3)),
    _law("chain.link-identity", "appendix", 4,
         "ascending x0..x3: x(i+1) = x(i) + x(i+1)·x(i)'",
         _chain_links, hypothesis=_ascending, sampler=ascending_chain(4)),
    _law("chain.lub-routes", "appendix", 4,
         "ascending x0..x3: direct l.u.b. equals the sum of orthogonal increments",
         _chain_routes, hypothesis=_ascending, sampler=ascending_chain(4)),
    _law("ortho-set.lub", "appendix", 3,
         "pairwise orthogonal y0..y2: their sum is their l.u.b.",
         _ortho_set_lub, hypothesis=lambda m, *ys: all(
             bot(m, a, b) for i, a in enumerate(ys) for b in ys[i + 1:]),
         sampler=lambda m, r: tuple(orthogonal_parts(m, r, 3))),
    _law("atom.below-characterization", "appendix", 1,
         "a is an atom iff a != 0 and every x <= a is 0 or a",
         _atom_characterization,
         sampler=mix(independent(1), lambda m, r: (_random_atom(m, r),))),
    _law("atom.1", "appendix", 3, "x <= y and a an atom below x => a <= y",
         lambda m, a, x, y: leq(m, a, y),
         hypothesis=lambda m, a, x, y: _is_atom(m, a) and leq(m, x, y) and leq(m, a, x),
         sampler=lambda m, r: (lambda x, y: (_atom_below_random(m, r, x), x, y))(*leq_pair(m, r))),
    _law("atom.2", "appendix", 1, "no atom lies below 0",
         lambda m, a: not leq(m, a, m.zero()),
         hypothesis=_is_atom, sampler=lambda m, r: (_random_atom(m, r),)),
    _law("atom.3", "appendix", 2, "for an atom b: b <= x' iff b bot x",
         lambda m, b, x: leq(m, b, m.comp(x)) == bot(m, b, x),
         hypothesis=lambda m, b, x: _is_atom(m, b),
         sampler=mix(_atom_and(independent(1)),
                     lambda m, r: (lambda x: (_atom_below_random(m, r, m.comp(x)), x))(_s(m, r)))),
    _law("atom.4", "appendix", 2, "for an atom a: a = x·a + x'·a",
         lambda m, a, x: m.eq(a, plus(m, m.dot(x, a), m.dot(m.comp(x), a))),
         hypothesis=lambda m, a, x: _is_atom(m, a), sampler=_atom_and(independent(1))),
    _law("atom.5", "appendix", 2, "for an atom a not orthogonal to x: a·x is an atom",
         lambda m, a, x: _is_atom(m, m.dot(a, x)),
         hypothesis=lambda m, a, x: _is_atom(m, a) and not bot(m, a, x),
         sampler=_atom_and(independent(1))),
    _law("atom.6", "appendix", 3, "a an atom below x, a not orthogonal to y => a·y is an atom below x·y",
         lambda m, a, x, y: _is_atom(m, m.dot(a, y)) and leq(m, m.dot(a, y), m.dot(x, y)),
         hypothesis=lambda m, a, x, y: _is_atom(m, a) and leq(m, a, x) and not bot(m, a, y),
         sampler=lambda m, r: (lambda x, y: (_atom_below_random(m, r, x), x, y))(_s(m, r), _s(m, r))),
    _law("atom.gram-schmidt", "appendix", 2,
         "x <= y, x != y => some atom a <= y with a bot x",
         _gram_schmidt,
         hypothesis=lambda m, x, y: leq(m, x, y) and not m.eq(x, y), sampler=strict_pair),
    _law("atom.nonempty", "appendix", 1, "no atom lies below x iff x = 0",
         _atom_nonempty, sampler=mix(independent(1), lambda m, r: (m.zero(),))),
]

REGISTRY: tuple[Law, ...] = tuple(_AXIOMS + _THEOREMS + _APPENDICES)
AXIOM_IDS = tuple(l.id for l in _AXIOMS)
_BY_ID = {l.id: l for l in REGISTRY}
assert len(_BY_ID) == len(REGISTRY), "duplicate law id"


def get_law(law_id: str) -> Law:
    try:
        return _BY_ID[law_id]
    except KeyError:
        raise KeyError(f"unknown law {law_id!r}") from None


def laws_in(group: Optional[str] = None) -> list[Law]:
    return [l for l in REGISTRY if group is None or l.group == group]


# ----------------------------------------------------------------- runner

def _evaluate(law: Law, m: PAlgebraModel, xs) -> tuple[bool, bool, str]:
    """Return ``(admissible, holds, message)``; exceptions count as failures."""
    try:
        if not law.admissible(m, xs):
            return False, True, ""
        return True, bool(law.conclusion(m, *xs)), ""
    except (AssertionError, PreconditionError, NoLeastUpperBound, ArithmeticError) as exc:
        return True, False, f"{type(exc).__name__}: {exc}"


def _fail(law, m, xs, trials, seed, message):
    return LawReport(law.id, "fail", trials, seed, tuple(xs), message or "conclusion false",
                     m.name, tuple(m.format(x) for x in xs))


def run_law(law: Law, m: PAlgebraModel, budget: int = 500, seed: Any = 0) -> LawReport:
    carrier = m.enumerate()
    trials = 0
    if carrier is not None:
        for xs in itertools.product(carrier, repeat=law.arity):
            admissible, ok, msg = _evaluate(law, m, xs)
            if not admissible:
                continue
            trials += 1
            if not ok:
                return _fail(law, m, xs, trials, seed, msg)
    else:
        if law.sampler is None:
            return LawReport(law.id, "skipped", 0, seed, message="no sampler for infinite carrier",
                             model=m.name)
        rng = random.Random(f"{seed}:{law.id}")
        attempts = 0
        while trials < budget and attempts < 20 * budget:
            attempts += 1
            try:
                xs = tuple(law.sampler(m, rng))
            except PreconditionError:
                continue
            admissible, ok, msg = _evaluate(law, m, xs)
            if not admissible:
                continue
            trials += 1
            if not ok:
                return _fail(law, m, xs, trials, seed, msg)
    if trials == 0:
        return LawReport(law.id, "skipped", 0, seed, message="no tuple satisfies the hypothesis",
                         model=m.name)
    return LawReport(law.id, "pass", trials, seed, model=m.name)


def _run_one(args):
    law_id, m, budget, seed = args
    return run_law(get_law(law_id), m, budget, seed)


def run_laws(m: PAlgebraModel, laws: Iterable[Law] | None = None, budget: int = 500,
             seed: Any = 0, jobs: int = 1) -> list[LawReport]:
    """Run ``laws`` (default: the whole registry); reports come back in registry order."""
    laws = list(REGISTRY if laws is None else laws)
    if jobs > 1 and len(laws) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, [(l.id, m, budget, seed) for l in laws]))
    else:
        reports = [run_law(l, m, budget, seed) for l in laws]
    return reports


def check_axioms(m: PAlgebraModel, budget: int = 500, seed: Any = 0, jobs: int = 1):
    return run_laws(m, laws_in("axiom"), budget, seed, jobs)


def check_theorems(m: PAlgebraModel, budget: int = 500, seed: Any = 0, jobs: int = 1):
    return run_laws(m, laws_in("theorem"), budget, seed, jobs)


def check_appendices(m: PAlgebraModel, budget: int = 500, seed: Any = 0, jobs: int = 1):
    return run_laws(m, laws_in("appendix"), budget, seed, jobs)


def recheck(m: PAlgebraModel, report: LawReport) -> bool:
    """True when the report's witness still violates its law."""
    if report.status != "fail":
        raise ValueError("only failing reports carry a witness")
    xs = report.witness or tuple(m.parse(t) for t in report.witness_text)
    admissible, ok, _ = _evaluate(get_law(report.law), m, xs)
    return admissible and not ok


# ----------------------------------------------------------------- output

def format_reports(reports: Sequence[LawReport]) -> str:
    lines = []
    for r in reports:
        line = f"{r.status.upper():7} {r.law:32} trials={r.trials} seed={r.seed}"
        if r.status == "fail":
            line += "  witness=(" + ", ".join(r.witness_text) + ")"
        if r.message and r.status != "pass":
            line += f"  {r.message}"
        lines.append(line)
    return "\n".join(lines)


def reports_to_json(reports: Sequence[LawReport]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2)
