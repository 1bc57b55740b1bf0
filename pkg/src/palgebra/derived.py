"""Derived rules as fragments of kernel steps, and a small script builder.

Each expansion follows the published derivation of the rule step by step;
nested derived rules (``Exchange`` inside ``D1``, say) appear as single
steps and are expanded again when the kernel checks them.
"""
from __future__ import annotations

from typing import Callable, Mapping, Optional, Sequence

from .formula import And, Formula, Neg, SequentNorm
from .kernel import (
    DERIVED_RULES,
    PRIMITIVE_RULES,
    KernelError,
    ProofScript,
    Step,
    apply_rule,
)

__all__ = ["Builder", "expand_derived", "derived_conclusion"]


class Builder:
    """Accumulates steps; every ``apply`` computes and stores the conclusion.

    ``premises`` become placeholder ids ``#0``, ``#1``... so that a fragment
    can be checked against sequents proved elsewhere.
    """

    def __init__(self, premises: Sequence[SequentNorm] = (), prefix: str = "s"):
        self.steps: list[Step] = []
        self.known: dict[str, SequentNorm] = {f"#{i}": p for i, p in enumerate(premises)}
        self._prefix = prefix
        self._n = 0
        self._h = 0

    def seq(self, sid: str) -> tuple:
        return tuple(self.known[sid].props)

    def _record(self, rule, params, premises, result, sid=None) -> str:
        if sid is None:
            self._n += 1
            sid = f"{self._prefix}{self._n}"
        if sid in self.known:
            raise ValueError(f"duplicate step id {sid!r}")
        step = Step.make(sid, rule, params, premises, result)
        self.steps.append(step)
        self.known[sid] = step.result
        return sid

    def assume(self, sequent: Sequence[Formula] | SequentNorm, sid: Optional[str] = None) -> str:
        if sid is None:
            self._h += 1
            sid = f"h{self._h}"
        if not isinstance(sequent, SequentNorm):
            sequent = SequentNorm(tuple(sequent))
        return self._record("Assume", {}, (), sequent, sid)

    def apply(self, rule: str, *premises: str, sid: Optional[str] = None, **params) -> str:
        """Record one step (primitive, or a derived rule as a single step)."""
        prem_seqs = [self.known[p] for p in premises]
        params = {k: tuple(v) if isinstance(v, list) else v for k, v in params.items()}
        if rule in PRIMITIVE_RULES:
            result = apply_rule(rule, params, prem_seqs)
        elif rule in DERIVED_RULES:
            result = derived_conclusion(rule, prem_seqs, params)
        else:
            raise KernelError(rule, "unknown rule")
        return self._record(rule, params, premises, result, sid)

    def inline(self, rule: str, *premises: str, **params) -> str:
        """Emit a derived rule's expansion in place instead of one step."""
        return _EXPANSIONS[rule](self, *premises, **params)

    def script(self, goal_id: Optional[str] = None, name: str = "", doc: str = "") -> ProofScript:
        last = self.steps[-1]
        if goal_id is not None and goal_id != last.id:
            raise ValueError("goal must be the last step")
        return ProofScript(tuple(self.steps), last.result, last.id, name, doc)


# ------------------------------------------------------------- expansions

def _fail(msg: str):
    raise ValueError(msg)


def _repetition(b: Builder, p: str, pos: int) -> str:
    s = b.seq(p)
    if pos >= len(s):
        _fail("position outside the premise")
    gamma, a = s[:pos], s[pos]
    n = b.apply("NAxiom", formula=a)
    w = b.apply("EWeak", n, prefix=gamma, suffix=())
    return b.apply("MWeak", p, w, pos=pos + 1, formula=a)


def _contraction(b: Builder, p: str, pos: int) -> str:
    s = b.seq(p)
    if pos + 1 >= len(s) or s[pos] != s[pos + 1]:
        _fail("premise must repeat a formula at pos, pos+1")
    gamma, a, delta = s[:pos], s[pos], s[pos + 2:]
    n = b.apply("NAxiom", formula=a)
    w = b.apply("EWeak", n, prefix=gamma, suffix=delta)
    return b.apply("Cut", p, w, pos=pos + 1, formula=a)


def _exchange(b: Builder, p: str) -> str:
    if len(b.seq(p)) != 2:
        _fail("Exchange needs a premise of exactly two formulas")
    r = b.apply("Repetition", p, pos=1)
    c = b.apply("Circ", r)
    return b.apply("Contraction", c, pos=0)


def _d1(b: Builder, p: str, pos: int) -> str:
    s = b.seq(p)
    if pos >= len(s) or not (isinstance(s[pos], Neg) and isinstance(s[pos].operand, Neg)):
        _fail("formula at pos must be a double negation")
    gamma, a, delta = s[:pos], s[pos].operand.operand, s[pos + 1:]
    n1 = b.apply("NAxiom", formula=Neg(a))
    e1 = b.apply("Exchange", n1)
    w1 = b.apply("EWeak", e1, prefix=gamma, suffix=())
    m = b.apply("MWeak", p, w1, pos=pos + 1, formula=a)
    n2 = b.apply("NAxiom", formula=a)
    e2 = b.apply("Exchange", n2)
    w2 = b.apply("EWeak", e2, prefix=gamma, suffix=delta)
    return b.apply("Cut", w2, m, pos=pos, formula=Neg(a))


def _d2(b: Builder, p: str, pos: int) -> str:
    s = b.seq(p)
    if pos >= len(s):
        _fail("position outside the premise")
    gamma, a, delta = s[:pos], s[pos], s[pos + 1:]
    nna = Neg(Neg(a))
    n1 = b.apply("NAxiom", formula=nna)
    w1 = b.apply("EWeak", n1, prefix=gamma, suffix=())
    d = b.apply("D1", w1, pos=pos)
    m = b.apply("MWeak", p, d, pos=pos + 1, formula=nna)
    n2 = b.apply("NAxiom", formula=Neg(a))
    w2 = b.apply("EWeak", n2, prefix=gamma, suffix=delta)
    return b.apply("Cut", m, w2, pos=pos, formula=a)


def _equiv(b: Builder, p: str, pa: str, pb: str, pos: int) -> str:
    s, sa, sb = b.seq(p), b.seq(pa), b.seq(pb)
    if pos >= len(s):
        _fail("position outside the premise")
    gamma, a, delta = s[:pos], s[pos], s[pos + 1:]
    if len(sa) != 2 or sa[0] != a or not isinstance(sa[1], Neg):
        _fail("second premise must be α, ~β with α the formula at pos")
    beta = sa[1].operand
    if sb != (beta, Neg(a)):
        _fail("third premise must be β, ~α")
    w1 = b.apply("EWeak", pa, prefix=gamma, suffix=())
    m = b.apply("MWeak", p, w1, pos=pos + 1, formula=beta)
    x = b.apply("Exchange", pb)
    w2 = b.apply("EWeak", x, prefix=gamma, suffix=delta)
    return b.apply("Cut", m, w2, pos=pos, formula=a)


def _fold(b: Builder, p: str, k: int) -> str:
    """``g1, ..., gk, rest`` to ``phi(g1..gk), rest`` by k-1 left introductions."""
    for _ in range(max(k - 1, 0)):
        p = b.apply("LLAndIntro", p)
    return p


def _unfold(b: Builder, p: str, k: int) -> str:
    for _ in range(max(k - 1, 0)):
        p = b.apply("LLAndElim", p)
    return p


def _lr_intro(b: Builder, p: str) -> str:
    s = b.seq(p)
    if len(s) < 2:
        _fail("LRAndIntro needs at least two formulas")
    k = len(s) - 2
    if k == 0:
        return b.apply("LLAndIntro", b.apply("Exchange", p))
    f = _fold(b, p, k)
    c = b.apply("Circ", f)
    i = b.apply("LLAndIntro", c)
    x = b.apply("Exchange", i)
    return _unfold(b, x, k)


def _lr_elim(b: Builder, p: str) -> str:
    s = b.seq(p)
    if not s or not isinstance(s[-1], And):
        _fail("LRAndElim needs a conjunction in the last position")
    k = len(s) - 1
    if k == 0:
        return b.apply("Exchange", b.apply("LLAndElim", p))
    f = _fold(b, p, k)
    x = b.apply("Exchange", f)
    e = b.apply("LLAndElim", x)
    c = b.apply("Circ", e)
    return _unfold(b, c, k)


_EXPANSIONS: dict[str, Callable[..., str]] = {
    "Repetition": _repetition,
    "Contraction": _contraction,
    "Exchange": _exchange,
    "D1": _d1,
    "D2": _d2,
    "Equiv": _equiv,
    "LRAndIntro": _lr_intro,
    "LRAndElim": _lr_elim,
}


def expand_derived(rule: str, premises: Sequence[SequentNorm], params: Mapping) -> ProofScript:
    """Kernel-step fragment for one derived-rule instance.

    Premises are referenced as ``#0``, ``#1``...; the fragment's last step is
    the conclusion.  Raises ``ValueError`` when the instance does not match
    the rule's schema.
    """
    if rule not in _EXPANSIONS:
        raise ValueError(f"{rule!r} is not a derived rule")
    b = Builder(premises, prefix="x")
    _EXPANSIONS[rule](b, *[f"#{i}" for i in range(len(premises))], **dict(params))
    return b.script()


def derived_conclusion(rule: str, premises: Sequence[SequentNorm], params: Mapping) -> SequentNorm:
    try:
        return expand_derived(rule, premises, params).steps[-1].result
    except ValueError as exc:
        raise KernelError(rule, f"schema mismatch: {exc}") from None
