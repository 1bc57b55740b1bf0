"""Interpretation of formulas and sequents in P-algebra models.

An assignment maps atom names to features of one model.  A sequent
``G1, ..., Gn |- D1, ..., Dk`` holds under an assignment when the
left-associated product of the ``Gi`` lies below the right-associated
disjunction of the ``Dj``; an empty left side reads as ``1`` and an empty
right side as ``0``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Mapping, Optional, Sequence

from .core import PAlgebraModel, leq, one
from .finite import boolean2, mo_algebra
from .formula import (
    And,
    Atom,
    Formula,
    Neg,
    SequentNorm,
    SequentSurface,
    Zero,
    atoms_of,
    disj_fold,
    phi_fold,
    print_sequent,
    psi_fold,
)
from .kernel import apply_rule
from .subspace import SubspaceModel, random_subspace

__all__ = [
    "Assignment",
    "UnboundAtom",
    "ExhaustiveCapError",
    "evaluate",
    "sequent_valid",
    "split_valid",
    "Verdict",
    "validity_check",
    "Countermodel",
    "countermodel_search",
    "format_assignment",
    "zoo",
    "finite_zoo",
    "model_from_spec",
    "RuleReport",
    "soundness_harness",
    "SOUNDNESS_RULES",
    "EXHAUSTIVE_CAP",
]

Assignment = Mapping[str, Any]
EXHAUSTIVE_CAP = 10 ** 6


class UnboundAtom(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"atom {name!r} has no value in the assignment")

    def __str__(self):
        return self.args[0]


class ExhaustiveCapError(ValueError):
    """Exhaustive checking would visit more than ``EXHAUSTIVE_CAP`` assignments."""


def evaluate(m: PAlgebraModel, v: Assignment, f: Formula):
    """Value of ``f``: atoms from ``v``, ``0`` to zero, ``~`` to comp, ``&`` to dot."""
    if isinstance(f, Atom):
        try:
            return v[f.name]
        except KeyError:
            raise UnboundAtom(f.name) from None
    if isinstance(f, Zero):
        return m.zero()
    if isinstance(f, Neg):
        return m.comp(evaluate(m, v, f.operand))
    if isinstance(f, And):
        return m.dot(evaluate(m, v, f.left), evaluate(m, v, f.right))
    raise TypeError(f"not a formula: {f!r}")


def _sides(s) -> tuple[tuple, tuple]:
    if isinstance(s, SequentSurface):
        return tuple(s.lhs), tuple(s.rhs)
    if isinstance(s, SequentNorm):
        return tuple(s.props), ()
    return tuple(s), ()


def sequent_valid(m: PAlgebraModel, v: Assignment, s) -> bool:
    """Whether ``s`` (surface, one-sided, or a formula list) holds under ``v``."""
    lhs, rhs = _sides(s)
    left = evaluate(m, v, phi_fold(lhs)) if lhs else one(m)
    right = evaluate(m, v, disj_fold(rhs)) if rhs else m.zero()
    return leq(m, left, right)


def split_valid(m: PAlgebraModel, v: Assignment, props: Sequence[Formula], k: int) -> bool:
    """``phi(props[:k]) <= psi(props[k:])``, the split reading of a one-sided sequent."""
    left = evaluate(m, v, phi_fold(props[:k])) if k else one(m)
    return leq(m, left, evaluate(m, v, psi_fold(props[k:])))


def format_assignment(m: PAlgebraModel, v: Assignment) -> str:
    return ", ".join(f"{k} := {m.format(x)}" for k, x in v.items())


# ------------------------------------------------------------ validity

@dataclass
class Verdict:
    """``status`` is ``valid-in-model``, ``countermodel`` or ``exhausted``."""

    status: str
    model: PAlgebraModel
    assignment: Optional[dict] = None
    checked: int = 0

    @property
    def refuted(self) -> bool:
        return self.status == "countermodel"

    def describe(self) -> str:
        if self.refuted:
            return f"countermodel in {self.model.name}: {format_assignment(self.model, self.assignment)}"
        if self.status == "valid-in-model":
            return f"valid in {self.model.name} ({self.checked} assignments, exhaustive)"
        return f"no countermodel in {self.model.name} after {self.checked} sampled assignments"


def _atoms(s) -> list[str]:
    lhs, rhs = _sides(s)
    return atoms_of(lhs + rhs)


def assignments(m: PAlgebraModel, names: Sequence[str]) -> Iterable[dict]:
    """All assignments over a finite carrier, in lexicographic order."""
    carrier = m.enumerate()
    for values in itertools.product(carrier, repeat=len(names)):
        yield dict(zip(names, values))


def validity_check(m: PAlgebraModel, s, budget: int = 200, seed: Any = 0) -> Verdict:
    """Exhaustive on finite carriers, seeded sampling otherwise.

    Sampling never reports ``valid-in-model``: at best ``exhausted``.
    """
    names = _atoms(s)
    carrier = m.enumerate()
    if carrier is not None:
        total = len(carrier) ** len(names)
        if total > EXHAUSTIVE_CAP:
            raise ExhaustiveCapError(
                f"{len(carrier)}^{len(names)} = {total} assignments exceed the cap of {EXHAUSTIVE_CAP}")
        n = 0
        for v in assignments(m, names):
            n += 1
            if not sequent_valid(m, v, s):
                return Verdict("countermodel", m, v, n)
        return Verdict("valid-in-model", m, None, n)
    rng = random.Random(f"{seed}:{m.name}:{print_sequent(s) if not isinstance(s, tuple) else s}")
    for n in range(1, budget + 1):
        v = {a: m.sample(rng) for a in names}
        if not sequent_valid(m, v, s):
            return Verdict("countermodel", m, v, n)
    return Verdict("exhausted", m, None, budget)


# ----------------------------------------------------------------- zoo

@lru_cache(maxsize=None)
def finite_zoo() -> tuple:
    """Registered finite P-algebras, smallest first."""
    return (boolean2(), mo_algebra(1), mo_algebra(2), mo_algebra(3))


@lru_cache(maxsize=None)
def zoo() -> tuple:
    """Finite models first, then the subspace models of dimension 2 to 4."""
    return finite_zoo() + tuple(SubspaceModel(n) for n in (2, 3, 4))


def model_from_spec(spec: str, check: bool = True) -> PAlgebraModel:
    """``bool2``, ``mo:K``, ``file:PATH`` or ``subspace:dim=N``.

    ``check=False`` loads a file table without the axiom check.
    """
    from .finite import load_file

    spec = spec.strip()
    if spec == "bool2":
        return boolean2()
    kind, _, arg = spec.partition(":")
    try:
        if kind == "mo":
            return mo_algebra(int(arg))
        if kind == "subspace":
            key, _, val = arg.partition("=")
            if key != "dim":
                raise ValueError
            return SubspaceModel(int(val))
    except ValueError:
        raise ValueError(f"bad model specification {spec!r}") from None
    if kind == "file" and arg:
        return load_file(arg, check=check)
    raise ValueError(f"bad model specification {spec!r} (use mo:K, file:PATH or subspace:dim=N)")


@dataclass
class Countermodel:
    model: PAlgebraModel
    assignment: dict

    def describe(self) -> str:
        return f"{self.model.name}: {format_assignment(self.model, self.assignment)}"


def countermodel_search(s, budget: int = 200, seed: Any = 0,
                        models: Optional[Sequence[PAlgebraModel]] = None) -> Optional[Countermodel]:
    """First countermodel in zoo order; finite models are searched
    exhaustively when under the cap, the others with ``budget`` samples."""
    for m in (zoo() if models is None else models):
        try:
            verdict = validity_check(m, s, budget, seed)
        except ExhaustiveCapError:
            continue
        if verdict.refuted:
            return Countermodel(m, verdict.assignment)
    return None


# ------------------------------------------------------ soundness harness

SOUNDNESS_RULES = (
    "Cut", "Circ", "EWeak", "MWeak", "ZeroAxiom", "NAxiom",
    "LLAndIntro", "LLAndElim", "MLAndIntro", "MLAndElim",
)
_POOL = tuple(Atom(x) for x in "pqr")


def _random_formula(rng: random.Random, depth: int = 2) -> Formula:
    r = rng.random()
    if depth <= 1 or r < 0.45:
        return rng.choice(_POOL) if rng.random() < 0.95 else Zero()
    if r < 0.7:
        return Neg(_random_formula(rng, depth - 1))
    return And(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))


def _random_list(rng: random.Random, lo: int = 0, hi: int = 2) -> tuple:
    return tuple(_random_formula(rng) for _ in range(rng.randint(lo, hi)))


def _instance(rule: str, rng: random.Random) -> tuple[list[SequentNorm], dict]:
    """Premises and parameters of a random instance of ``rule``."""
    f = lambda: _random_formula(rng)  # noqa: E731
    g, d = _random_list(rng), _random_list(rng)
    if rule == "Cut":
        a = f()
        return [SequentNorm(g + (a,) + d), SequentNorm(g + (Neg(a),) + d)], {"pos": len(g), "formula": a}
    if rule == "Circ":
        return [SequentNorm((f(), f(), f()))], {}
    if rule == "EWeak":
        return [SequentNorm(_random_list(rng, 0, 3))], {"prefix": g, "suffix": d}
    if rule == "MWeak":
        a = f()
        return [SequentNorm(g + d), SequentNorm(g + (Neg(a),))], {"pos": len(g), "formula": a}
    if rule == "ZeroAxiom":
        return [], {}
    if rule == "NAxiom":
        return [], {"formula": f()}
    if rule == "LLAndIntro":
        return [SequentNorm((f(), f()) + d)], {}
    if rule == "LLAndElim":
        return [SequentNorm((And(f(), f()),) + d)], {}
    if rule == "MLAndIntro":
        a, b = f(), f()
        return [SequentNorm(g + (b,) + d), SequentNorm(g + (Neg(a),))], {"pos": len(g), "formula": a}
    if rule == "MLAndElim":
        a, b = f(), f()
        return [SequentNorm(g + (And(a, b),) + d), SequentNorm(g + (Neg(a),))], {"pos": len(g)}
    raise ValueError(rule)


def _unchecked_mweak(premises: Sequence[SequentNorm], params: Mapping) -> SequentNorm:
    """MWeak with its side premise ignored: the negative control."""
    main = tuple(premises[0].props)
    k = params["pos"]
    return SequentNorm(main[:k] + (params["formula"],) + main[k:])


def _harness_value(m: PAlgebraModel, rng: random.Random):
    # mostly proper features; small entries make orthogonal and equal
    # subspaces frequent, so valid premises are not confined to 0 and 1
    proper = rng.random() < 0.9
    if isinstance(m, SubspaceModel):
        n = m.ambient_dim
        dim = rng.randint(1, n - 1) if proper and n > 1 else None
        return random_subspace(n, rng=rng, entry_range=1, dim=dim)
    carrier = m.enumerate()
    inner = [x for x in carrier if not m.eq(x, m.zero()) and not m.eq(x, one(m))]
    return rng.choice(inner) if proper and inner else m.sample(rng)


@dataclass
class RuleReport:
    rule: str
    model: str
    instances: int = 0
    proper: int = 0  # instances with no atom sent to 0 or 1
    attempts: int = 0
    violations: list = field(default_factory=list)
    control: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def line(self) -> str:
        if self.control:
            status = "CAUGHT" if self.violations else "no-violation"
        else:
            status = "PASS" if self.ok else "FAIL"
        text = (f"{status} {self.rule} on {self.model}: instances={self.instances} "
                f"proper={self.proper} attempts={self.attempts}")
        if self.violations:
            text += f" violation: {self.violations[0]}"
        return text


def _run_rule(rule: str, m: PAlgebraModel, target: int, seed: Any, max_attempts: int,
              control: bool = False) -> RuleReport:
    rng = random.Random(f"{seed}:{rule}:{m.name}:{control}")
    report = RuleReport(rule + (" without side premise" if control else ""), m.name, control=control)
    top = one(m)
    while report.instances < target and report.attempts < max_attempts:
        report.attempts += 1
        premises, params = _instance(rule, rng)
        concl = _unchecked_mweak(premises, params) if control else apply_rule(rule, params, premises)
        names = atoms_of([f for p in premises for f in p.props] + list(concl.props))
        v = {a: _harness_value(m, rng) for a in names}
        used = premises[:1] if control else premises
        if not all(sequent_valid(m, v, p) for p in used):
            continue
        report.instances += 1
        report.proper += all(not m.eq(x, m.zero()) and not m.eq(x, top) for x in v.values())
        if not sequent_valid(m, v, concl):
            shown = " ; ".join(print_sequent(p) for p in used)
            report.violations.append(f"{shown} => {print_sequent(concl)} under {format_assignment(m, v)}")
            if control:
                break
    return report


def soundness_harness(budget: int = 200, seed: Any = 0, models: Optional[Sequence[PAlgebraModel]] = None,
                      rules: Sequence[str] = SOUNDNESS_RULES, max_attempts: int = 200_000,
                      negative_control: bool = True) -> list[RuleReport]:
    """Per rule and model: ``budget`` random instances with valid premises,
    each checked for a valid conclusion.

    With ``negative_control`` the list ends with MWeak stripped of its side
    premise, one report per model; a sound harness must find violations there.
    """
    models = list(zoo() if models is None else models)
    out = [_run_rule(rule, m, budget, seed, max_attempts) for rule in rules for m in models]
    if negative_control:
        out += [_run_rule("MWeak", m, budget, seed, max_attempts, control=True) for m in models]
    return out
