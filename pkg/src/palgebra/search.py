"""Bounded backward proof search and the implication layer built on it.

Search runs rules backwards from the goal with iterative deepening.  Cut
formulas (and the formulas that growing rules may introduce) are drawn
from the subformulas of the goal and their negations.  A subgoal with a
countermodel in a small finite model is dropped at once: by soundness it
has no derivation.  Found proofs are replayed through the kernel before
they are returned.

``not found`` only means "not within this budget"; it is not a disproof.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional, Sequence

import numpy as np

from .derived import Builder
from .finite import boolean2, mo_algebra
from .formula import (
    And,
    Atom,
    Formula,
    Neg,
    SequentNorm,
    Zero,
    atoms_of,
    depth,
    print_formula,
    subformulas,
)
from .kernel import RULE_SCHEMA, ProofScript, check_proof

__all__ = [
    "SearchBudget",
    "SearchResult",
    "search",
    "prove",
    "implies",
    "EquivResult",
    "equiv_classes",
    "formulas_up_to",
]


@dataclass(frozen=True)
class SearchBudget:
    """``max_depth`` bounds rule applications along a branch; ``time_limit``
    is a wall-clock safety net in seconds (``None`` for no limit)."""

    max_depth: int = 8
    max_cut_formulas: int = 64
    time_limit: Optional[float] = 30.0

    def __post_init__(self):
        if self.max_depth < 1 or self.max_cut_formulas < 1:
            raise ValueError("search budget fields must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


@dataclass
class SearchResult:
    goal: SequentNorm
    script: Optional[ProofScript] = None
    depth: Optional[int] = None
    nodes: int = 0
    refuted_by: Optional[str] = None  # pruning model that refutes the goal itself
    timed_out: bool = False

    @property
    def found(self) -> bool:
        return self.script is not None


class _Timeout(Exception):
    pass


# ------------------------------------------------- formulas as integers

_PRUNE_MODELS: tuple = ()


def _prune_models() -> tuple:
    global _PRUNE_MODELS
    if not _PRUNE_MODELS:
        _PRUNE_MODELS = (boolean2(), mo_algebra(2), mo_algebra(3))
    return _PRUNE_MODELS


class _Formulas:
    """Interned formulas with their values in the pruning models.

    The models' tables are merged into one table over the disjoint union of
    the carriers; a formula's value is a vector with one entry per
    assignment of the goal's atoms in each model.
    """

    def __init__(self, atom_names: Sequence[str]):
        models = _prune_models()
        total = sum(m.size for m in models)
        comp = np.zeros(total, dtype=np.int16)
        dot = np.zeros((total, total), dtype=np.int16)
        is_zero = np.zeros(total, dtype=bool)
        cols: list[list[int]] = [[] for _ in atom_names]
        zero_col: list[int] = []
        self.bounds: list[tuple[int, str]] = []  # (end column, model name)
        off = 0
        for m in models:
            n = m.size
            comp[off:off + n] = np.array(m.comp_table) + off
            dot[off:off + n, off:off + n] = np.array(m.dot_table) + off
            is_zero[off] = True
            for row in itertools.product(range(n), repeat=len(atom_names)):
                for k, v in enumerate(row):
                    cols[k].append(off + v)
                zero_col.append(off)
            self.bounds.append((len(zero_col), m.name))
            off += n
        self.comp, self.dot, self.is_zero = comp, dot, is_zero
        self.forms: list[Formula] = []
        self.ids: dict[Formula, int] = {}
        self.vecs: list = []
        self.negs: dict[int, int] = {}
        self.intern(Zero(), np.array(zero_col, dtype=np.int16))
        for a, c in zip(atom_names, cols):
            self.intern(Atom(a), np.array(c, dtype=np.int16))
        self.products: dict[tuple, Any] = {}
        self.valid_cache: dict[tuple, bool] = {}

    def intern(self, f: Formula, vec=None) -> int:
        i = self.ids.get(f)
        if i is not None:
            return i
        if vec is None:
            if isinstance(f, Neg):
                vec = self.comp[self.vecs[self.intern(f.operand)]]
            elif isinstance(f, And):
                vec = self.dot[self.vecs[self.intern(f.left)], self.vecs[self.intern(f.right)]]
            else:
                raise KeyError(f"atom {f!r} is not among the goal's atoms")
        i = len(self.forms)
        self.forms.append(f)
        self.ids[f] = i
        self.vecs.append(vec)
        return i

    def neg(self, i: int) -> int:
        j = self.negs.get(i)
        if j is None:
            j = self.negs[i] = self.intern(Neg(self.forms[i]))
        return j

    def product(self, seq: tuple):
        hit = self.products.get(seq)
        if hit is None:
            if len(seq) == 1:
                hit = self.vecs[seq[0]]
            else:
                hit = self.dot[self.product(seq[:-1]), self.vecs[seq[-1]]]
            self.products[seq] = hit
        return hit

    def valid(self, seq: tuple) -> bool:
        """Valid in every pruning model under every assignment."""
        hit = self.valid_cache.get(seq)
        if hit is None:
            hit = bool(seq) and bool(self.is_zero[self.product(seq)].all())
            self.valid_cache[seq] = hit
        return hit

    def refuting_model(self, seq: tuple) -> Optional[str]:
        if self.valid(seq):
            return None
        if not seq:
            return self.bounds[0][1]
        col = int(np.argmin(self.is_zero[self.product(seq)]))
        return next(name for end, name in self.bounds if col < end)


# ------------------------------------------------------------- the search

@dataclass
class _Node:
    rule: str
    params: dict  # formulas as ids
    children: tuple
    seq: tuple


class _Searcher:
    def __init__(self, goal: Sequence[Formula], budget: SearchBudget):
        self.budget = budget
        self.fs = fs = _Formulas(atoms_of(goal))
        self.goal = tuple(fs.intern(f) for f in goal)
        seen: dict[Formula, None] = {}
        for f in goal:
            for sub in subformulas(f):
                seen.setdefault(sub)
        for sub in list(seen):
            seen.setdefault(Neg(sub))
        ordered = sorted(seen, key=lambda f: (len(print_formula(f)), print_formula(f)))
        self.universe = [fs.intern(f) for f in ordered]
        self.cuts = self.universe[: budget.max_cut_formulas]
        self.conj: dict[tuple[int, int], int] = {}
        self.conj_right: dict[int, list[tuple[int, int]]] = {}
        self.double_neg: dict[int, int] = {}
        for f in ordered:
            i = fs.ids[f]
            if isinstance(f, And):
                left, right = fs.ids[f.left], fs.ids[f.right]
                self.conj[(left, right)] = i
                self.conj_right.setdefault(right, []).append((left, i))
            if isinstance(f, Neg) and isinstance(f.operand, Neg):
                self.double_neg[fs.intern(f.operand.operand)] = i
        self.failed: dict[tuple, int] = {}
        self.proved: dict[tuple, _Node] = {}
        self.nodes = 0
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    # backward moves: (rule, params, premises), main premise first
    def moves(self, s: tuple, axioms_only: bool = False) -> Iterator[tuple[str, dict, tuple]]:
        fs = self.fs
        forms, ids, neg = fs.forms, fs.ids, fs.neg
        n = len(s)
        if n == 2 and s[1] == neg(s[0]):
            yield "NAxiom", {"formula": s[0]}, ()
        if n == 1 and isinstance(forms[s[0]], Zero):
            yield "ZeroAxiom", {}, ()
        if axioms_only:
            return
        # moves that shrink the sequent
        for i, x in enumerate(s):
            f = forms[x]
            if isinstance(f, Neg) and isinstance(f.operand, Neg):
                yield "D2", {"pos": i}, (s[:i] + (ids[f.operand.operand],) + s[i + 1:],)
        if n and isinstance(forms[s[0]], And):
            f = forms[s[0]]
            yield "LLAndIntro", {}, ((ids[f.left], ids[f.right]) + s[1:],)
        if n and isinstance(forms[s[-1]], And):
            f = forms[s[-1]]
            yield "LRAndIntro", {}, (s[:-1] + (ids[f.right], ids[f.left]),)
        for i in range(1, n):
            f = forms[s[i]]
            if isinstance(f, And):
                left = ids[f.left]
                yield ("MLAndIntro", {"pos": i, "formula": left},
                       (s[:i] + (ids[f.right],) + s[i + 1:], s[:i] + (neg(left),)))
        for i in range(n - 1):
            if s[i] == s[i + 1]:
                yield "Repetition", {"pos": i}, (s[:i + 1] + s[i + 2:],)
        for lo in range(n):
            for hi in range(n, lo, -1):
                if lo or hi != n:
                    yield "EWeak", {"prefix": s[:lo], "suffix": s[hi:]}, (s[lo:hi],)
        if n == 3:
            yield "Circ", {}, (s[::-1],)
        if n == 2:
            yield "Exchange", {}, ((s[1], s[0]),)
        if n > 1:
            for i, x in enumerate(s):
                yield "MWeak", {"pos": i, "formula": x}, (s[:i] + s[i + 1:], s[:i] + (neg(x),))
        # moves that grow it, restricted to the goal's subformulas
        for a in self.cuts:
            na = neg(a)
            for k in range(n + 1):
                yield "Cut", {"pos": k, "formula": a}, (s[:k] + (a,) + s[k:], s[:k] + (na,) + s[k:])
        for i in range(n):
            yield "Contraction", {"pos": i}, (s[:i + 1] + (s[i],) + s[i + 1:],)
        for i, x in enumerate(s):
            dn = self.double_neg.get(x)
            if dn is not None:
                yield "D1", {"pos": i}, (s[:i] + (dn,) + s[i + 1:],)
        if n >= 2:
            c = self.conj.get((s[0], s[1]))
            if c is not None:
                yield "LLAndElim", {}, ((c,) + s[2:],)
            c = self.conj.get((s[-1], s[-2]))
            if c is not None:
                yield "LRAndElim", {}, (s[:-2] + (c,),)
        for i, x in enumerate(s):
            for a, c in self.conj_right.get(x, ()):
                yield "MLAndElim", {"pos": i}, (s[:i] + (c,) + s[i + 1:], s[:i] + (neg(a),))

    def prove(self, s: tuple, budget: int) -> Optional[_Node]:
        hit = self.proved.get(s)
        if hit is not None:
            return hit
        if budget <= 0 or self.failed.get(s, -1) >= budget:
            return None
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Timeout
        valid = self.fs.valid
        # with one level left only an axiom can close the branch
        for rule, params, premises in self.moves(s, axioms_only=budget == 1):
            if not all(valid(p) for p in premises):
                continue
            children = []
            for p in premises:
                child = self.prove(p, budget - 1)
                if child is None:
                    break
                children.append(child)
            else:
                node = _Node(rule, params, tuple(children), s)
                self.proved[s] = node
                return node
        self.failed[s] = budget
        return None


def _to_script(node: _Node, forms: Sequence[Formula], name: str) -> ProofScript:
    b = Builder()
    done: dict[tuple, str] = {}

    def decode(rule: str, params: dict) -> dict:
        kinds = RULE_SCHEMA[rule][1]
        out = {}
        for k, v in params.items():
            if kinds[k] == "formula":
                out[k] = forms[v]
            elif kinds[k] == "formulas":
                out[k] = tuple(forms[i] for i in v)
            else:
                out[k] = v
        return out

    def emit(n: _Node) -> str:
        if n.seq in done:
            return done[n.seq]
        ids = [emit(c) for c in n.children]
        sid = b.apply(n.rule, *ids, **decode(n.rule, n.params))
        if b.seq(sid) != tuple(forms[i] for i in n.seq):
            raise AssertionError(f"search bookkeeping went wrong at {n.rule}")
        done[n.seq] = sid
        return sid

    emit(node)
    return b.script(name=name)


def search(goal: SequentNorm | Sequence[Formula], budget: SearchBudget = SearchBudget(),
           prune_goal: bool = True) -> SearchResult:
    """Iterative deepening up to ``budget.max_depth``; a returned script has
    passed ``check_proof``.

    With ``prune_goal=False`` the goal is searched even when a pruning model
    refutes it (subgoals are still pruned); consistency sweeps use this so
    that a kernel defect could still surface as a proof of a refuted goal.
    """
    seq = tuple(goal.props) if isinstance(goal, SequentNorm) else tuple(goal)
    result = SearchResult(SequentNorm(seq))
    s = _Searcher(seq, budget)
    result.refuted_by = s.fs.refuting_model(s.goal)
    if result.refuted_by is not None and prune_goal:
        return result
    try:
        for d in range(1, budget.max_depth + 1):
            node = s.prove(s.goal, d)
            if node is not None:
                script = _to_script(node, s.fs.forms, "search")
                check = check_proof(script)
                if not check.ok:
                    raise AssertionError(f"search produced a rejected proof: {check.error}")
                result.script, result.depth = script, d
                break
    except _Timeout:
        result.timed_out = True
    result.nodes = s.nodes
    return result


def prove(goal: SequentNorm | Sequence[Formula], budget: SearchBudget = SearchBudget()) -> Optional[ProofScript]:
    return search(goal, budget).script


def implies(a: Formula, b: Formula, budget: SearchBudget = SearchBudget()) -> Optional[ProofScript]:
    """A derivation of ``a -> b``, that is of the sequent ``a, ~b |-``."""
    return prove((a, Neg(b)), budget)


# ---------------------------------------------------------- equivalence

@dataclass
class EquivResult:
    formulas: list
    classes: list = field(default_factory=list)       # lists of formulas proved equivalent
    distinct: list = field(default_factory=list)      # (f, g, witness) across classes
    unknown: list = field(default_factory=list)       # (f, g) neither proved nor separated


def equiv_classes(formulas: Iterable[Formula], budget: SearchBudget = SearchBudget(),
                  seed: Any = 0, trials: int = 100) -> EquivResult:
    """Merge formulas proved equivalent; separate classes by countermodels.

    Two classes are distinct when some cross pair has a countermodel to one
    of its two implications; otherwise the pair is reported as unknown.
    """
    from .semantics import countermodel_search

    fs = list(dict.fromkeys(formulas))
    parent = list(range(len(fs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    result = EquivResult(fs)
    separated: dict[tuple[int, int], str] = {}
    for i, j in itertools.combinations(range(len(fs)), 2):
        if find(i) == find(j):
            continue
        a, b = fs[i], fs[j]
        witness = None
        for seq in ((a, Neg(b)), (b, Neg(a))):
            cm = countermodel_search(SequentNorm(seq), budget=trials, seed=seed)
            if cm is not None:
                witness = f"{print_formula(seq[0])} -> {print_formula(seq[1].operand)} fails in {cm.describe()}"
                break
        if witness is not None:
            separated[(i, j)] = witness
            continue
        if implies(a, b, budget) is not None and implies(b, a, budget) is not None:
            parent[find(j)] = find(i)
    groups: dict[int, list] = {}
    for i in range(len(fs)):
        groups.setdefault(find(i), []).append(i)
    result.classes = [[fs[i] for i in g] for g in groups.values()]
    roots = list(groups)
    for r1, r2 in itertools.combinations(roots, 2):
        wit = next((separated[(min(i, j), max(i, j))] for i in groups[r1] for j in groups[r2]
                    if (min(i, j), max(i, j)) in separated), None)
        if wit is None:
            result.unknown.append((fs[r1], fs[r2]))
        else:
            result.distinct.append((fs[r1], fs[r2], wit))
    return result


def formulas_up_to(atom_names: Sequence[str], max_depth: int, with_zero: bool = True) -> list[Formula]:
    """Every formula over the atoms (and ``0``) of height at most ``max_depth``."""
    out = [Atom(a) for a in atom_names] + ([Zero()] if with_zero else [])
    for _ in range(max_depth - 1):
        new = [Neg(f) for f in out] + [And(f, g) for f in out for g in out]
        out = list(dict.fromkeys(out + new))
    return [f for f in out if depth(f) <= max_depth]
