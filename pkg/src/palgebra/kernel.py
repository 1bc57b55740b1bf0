"""Trusted checker for the one-sided sequent calculus.

A proof script is a list of steps.  Each step names a rule, its parameters,
the ids of earlier steps it uses, and the sequent it claims to establish.
The kernel recomputes the conclusion from the premises and compares it with
the stored one by structural equality (``~~a`` is never identified with
``a``).  Derived rules are accepted only by expanding them into a fragment
of kernel steps (see :mod:`palgebra.derived`) which is checked in turn.

Script text, one step per line::

    h1 = Assume => "a, ~b |-"
    s1 = NAxiom formula="a" => "a, ~a |-"
    s2 = EWeak prefix="" suffix="~b" [s1] => "a, ~a, ~b |-"
    s3 = Cut pos=1 formula="b" [s4 s5] => "a, c |-"
    goal s3 "a, c |-"

``#`` starts a comment.  The full grammar is in ``docs/proof_format.md``.
"""
from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .formula import (
    And,
    Formula,
    Neg,
    ParseError,
    SequentNorm,
    Zero,
    ZERO,
    parse_formula,
    parse_formulas,
    parse_norm,
    print_formula,
    print_formulas,
    print_sequent,
)

__all__ = [
    "PRIMITIVE_RULES",
    "DERIVED_RULES",
    "RULE_SCHEMA",
    "KernelError",
    "Step",
    "ProofScript",
    "ProofCheck",
    "apply_rule",
    "check_step",
    "check_proof",
    "parse_script",
    "print_script",
    "ScriptSyntaxError",
]

PRIMITIVE_RULES = (
    "Cut", "Circ", "EWeak", "MWeak", "ZeroAxiom", "NAxiom",
    "LLAndIntro", "LLAndElim", "MLAndIntro", "MLAndElim",
)
DERIVED_RULES = (
    "Repetition", "Contraction", "Exchange", "D1", "D2", "Equiv", "LRAndIntro", "LRAndElim",
)

# rule -> (number of premises, {param: kind}); kinds: int, formula, formulas
RULE_SCHEMA: dict[str, tuple[int, dict[str, str]]] = {
    "Assume": (0, {}),
    "Cut": (2, {"pos": "int", "formula": "formula"}),
    "Circ": (1, {}),
    "EWeak": (1, {"prefix": "formulas", "suffix": "formulas"}),
    "MWeak": (2, {"pos": "int", "formula": "formula"}),
    "ZeroAxiom": (0, {}),
    "NAxiom": (0, {"formula": "formula"}),
    "LLAndIntro": (1, {}),
    "LLAndElim": (1, {}),
    "MLAndIntro": (2, {"pos": "int", "formula": "formula"}),
    "MLAndElim": (2, {"pos": "int"}),
    "Repetition": (1, {"pos": "int"}),
    "Contraction": (1, {"pos": "int"}),
    "Exchange": (1, {}),
    "D1": (1, {"pos": "int"}),
    "D2": (1, {"pos": "int"}),
    "Equiv": (3, {"pos": "int"}),
    "LRAndIntro": (1, {}),
    "LRAndElim": (1, {}),
}


class KernelError(Exception):
    """A rejected step.  ``position`` is the first offending formula index,
    or ``None`` when the problem is not tied to one formula."""

    def __init__(self, rule: str, message: str, position: Optional[int] = None,
                 step: Optional[str] = None):
        self.rule = rule
        self.position = position
        self.step = step
        self.detail = message
        super().__init__(self._render())

    def _render(self):
        where = f"step {self.step}: " if self.step else ""
        at = f" at position {self.position}" if self.position is not None else ""
        return f"{where}{self.rule}{at}: {self.detail}"

    def at_step(self, step_id: str) -> "KernelError":
        return KernelError(self.rule, self.detail, self.position, step_id)


@dataclass(frozen=True)
class Step:
    id: str
    rule: str
    params: tuple = ()  # sorted (name, value) pairs
    premises: tuple = ()
    result: SequentNorm = field(default_factory=SequentNorm)

    @property
    def param(self) -> dict:
        return dict(self.params)

    @staticmethod
    def make(id: str, rule: str, params: Optional[Mapping] = None, premises: Sequence[str] = (),
             result: Sequence[Formula] | SequentNorm = ()) -> "Step":
        if not isinstance(result, SequentNorm):
            result = SequentNorm(tuple(result))
        items = []
        for k, v in sorted((params or {}).items()):
            if isinstance(v, list):
                v = tuple(v)
            items.append((k, v))
        return Step(id, rule, tuple(items), tuple(premises), result)


@dataclass(frozen=True)
class ProofScript:
    steps: tuple
    goal: SequentNorm
    goal_id: str = ""
    name: str = ""
    doc: str = ""

    def step(self, step_id: str) -> Step:
        for s in self.steps:
            if s.id == step_id:
                return s
        raise KeyError(step_id)

    @property
    def assumptions(self) -> list[SequentNorm]:
        return [s.result for s in self.steps if s.rule == "Assume"]


@dataclass
class ProofCheck:
    ok: bool
    error: Optional[KernelError] = None
    assumptions: tuple = ()
    primitive_steps: int = 0

    def __bool__(self):
        return self.ok


# ------------------------------------------------------------ rule logic

def _fmt(f: Formula) -> str:
    return print_formula(f)


def _need(cond: bool, rule: str, message: str, position: Optional[int] = None):
    if not cond:
        raise KernelError(rule, message, position)


def _first_diff(xs: Sequence, ys: Sequence) -> int:
    for i, (x, y) in enumerate(zip(xs, ys)):
        if x != y:
            return i
    return min(len(xs), len(ys))


def _check_params(rule: str, params: Mapping, premises: Sequence[SequentNorm]):
    if rule not in RULE_SCHEMA:
        raise KernelError(rule, "unknown rule")
    n_prem, schema = RULE_SCHEMA[rule]
    _need(len(premises) == n_prem, rule, f"expects {n_prem} premise(s), got {len(premises)}")
    extra = set(params) - set(schema)
    _need(not extra, rule, f"unexpected parameter(s) {sorted(extra)}")
    for name, kind in schema.items():
        _need(name in params, rule, f"missing parameter {name!r}")
        v = params[name]
        if kind == "int":
            _need(isinstance(v, int) and not isinstance(v, bool) and v >= 0, rule,
                  f"parameter {name!r} must be a non-negative integer")
        elif kind == "formula":
            _need(isinstance(v, (And, Neg, Zero)) or type(v).__name__ == "Atom", rule,
                  f"parameter {name!r} must be a formula")
        else:
            _need(isinstance(v, tuple), rule, f"parameter {name!r} must be a formula list")


def apply_rule(rule: str, params: Mapping, premises: Sequence[SequentNorm]) -> SequentNorm:
    """Conclusion of a primitive rule, or :class:`KernelError` if the premises
    do not fit its pattern."""
    if rule not in PRIMITIVE_RULES:
        raise KernelError(rule, "not a primitive rule")
    _check_params(rule, params, premises)
    ps = [tuple(p.props) for p in premises]

    if rule == "ZeroAxiom":
        return SequentNorm((ZERO,))
    if rule == "NAxiom":
        a = params["formula"]
        return SequentNorm((a, Neg(a)))
    if rule == "Circ":
        (p,) = ps
        _need(len(p) == 3, rule, f"premise must have exactly 3 formulas, has {len(p)}")
        return SequentNorm(p[::-1])
    if rule == "EWeak":
        (p,) = ps
        return SequentNorm(tuple(params["prefix"]) + p + tuple(params["suffix"]))
    if rule == "LLAndIntro":
        (p,) = ps
        _need(len(p) >= 2, rule, "premise needs at least 2 formulas")
        return SequentNorm((And(p[0], p[1]),) + p[2:])
    if rule == "LLAndElim":
        (p,) = ps
        _need(len(p) >= 1 and isinstance(p[0], And), rule, "first formula must be a conjunction", 0)
        return SequentNorm((p[0].left, p[0].right) + p[1:])
    if rule == "Cut":
        p1, p2 = ps
        k, a = params["pos"], params["formula"]
        _need(k < len(p1), rule, f"position {k} outside first premise of length {len(p1)}", k)
        _need(p1[k] == a, rule, f"first premise has {_fmt(p1[k])}, expected cut formula {_fmt(a)}", k)
        _need(len(p2) == len(p1), rule, "premises differ in length")
        _need(p2[k] == Neg(a), rule,
              f"second premise has {_fmt(p2[k])}, expected {_fmt(Neg(a))}", k)
        for i in range(len(p1)):
            _need(i == k or p1[i] == p2[i], rule, "premises differ outside the cut position", i)
        return SequentNorm(p1[:k] + p1[k + 1:])
    if rule == "MWeak":
        main, side = ps
        k, a = params["pos"], params["formula"]
        _need(k <= len(main), rule, f"position {k} outside main premise of length {len(main)}", k)
        expected = main[:k] + (Neg(a),)
        _need(side == expected, rule, "side premise must be Γ, ~α with Γ the main premise's prefix",
              _first_diff(side, expected))
        return SequentNorm(main[:k] + (a,) + main[k:])
    if rule == "MLAndIntro":
        main, side = ps
        k, a = params["pos"], params["formula"]
        _need(k < len(main), rule, f"position {k} outside main premise of length {len(main)}", k)
        expected = main[:k] + (Neg(a),)
        _need(side == expected, rule, "side premise must be Γ, ~α with Γ the main premise's prefix",
              _first_diff(side, expected))
        return SequentNorm(main[:k] + (And(a, main[k]),) + main[k + 1:])
    if rule == "MLAndElim":
        main, side = ps
        k = params["pos"]
        _need(k < len(main), rule, f"position {k} outside main premise of length {len(main)}", k)
        _need(isinstance(main[k], And), rule, "formula at position is not a conjunction", k)
        expected = main[:k] + (Neg(main[k].left),)
        _need(side == expected, rule, "side premise must be Γ, ~α with Γ the main premise's prefix",
              _first_diff(side, expected))
        return SequentNorm(main[:k] + (main[k].right,) + main[k + 1:])
    raise AssertionError(rule)  # pragma: no cover


def _derive(rule: str, params: Mapping, premises: Sequence[SequentNorm], depth: int):
    """Check a derived step by expansion; returns (conclusion, primitive count)."""
    from .derived import expand_derived

    _check_params(rule, params, premises)
    try:
        fragment = expand_derived(rule, premises, params)
    except ValueError as exc:
        raise KernelError(rule, f"schema mismatch: {exc}") from None
    count = _check_steps(fragment.steps, depth + 1, premises)
    return fragment.steps[-1].result, count


def check_step(step: Step, context: Mapping[str, SequentNorm], depth: int = 0) -> int:
    """Check one step against already verified sequents; returns the number
    of primitive inferences it stands for."""
    for pid in step.premises:
        if pid not in context:
            raise KernelError(step.rule, f"unknown or later premise {pid!r}").at_step(step.id)
    premises = [context[p] for p in step.premises]
    try:
        if step.rule == "Assume":
            _check_params("Assume", step.param, premises)
            return 0
        if step.rule in PRIMITIVE_RULES:
            concl, count = apply_rule(step.rule, step.param, premises), 1
        elif step.rule in DERIVED_RULES:
            if depth > 16:
                raise KernelError(step.rule, "derived rule nesting too deep")
            concl, count = _derive(step.rule, step.param, premises, depth)
        else:
            raise KernelError(step.rule, "unknown rule")
        got, want = tuple(step.result.props), tuple(concl.props)
        if got != want:
            i = _first_diff(got, want)
            shown = _fmt(want[i]) if i < len(want) else "end of sequent"
            raise KernelError(step.rule, f"stored result {print_sequent(step.result)!r} "
                                         f"differs from {print_sequent(concl)!r} (expected {shown})", i)
        return count
    except KernelError as err:
        raise err.at_step(step.id) if err.step is None else err


def _check_steps(steps: Sequence[Step], depth: int, placeholders: Sequence[SequentNorm] = ()) -> int:
    context: dict[str, SequentNorm] = {f"#{i}": p for i, p in enumerate(placeholders)}
    used: set[str] = set()
    total = 0
    for st in steps:
        if st.id in context:
            raise KernelError(st.rule, f"duplicate step id {st.id!r}", step=st.id)
        total += check_step(st, context, depth)
        used.update(st.premises)
        context[st.id] = st.result
    for st in steps[:-1]:
        if st.id not in used:
            raise KernelError(st.rule, "step is never used", step=st.id)
    return total


def check_proof(p: ProofScript, hypotheses: Optional[Sequence[SequentNorm]] = None) -> ProofCheck:
    """Check every step, reject unused steps, and match the goal.

    With ``hypotheses`` given, the script's ``Assume`` steps must state
    exactly those sequents, in order, so that the script proves the intended
    statement and not a variant with other assumptions.
    """
    try:
        if not p.steps:
            raise KernelError("goal", "empty script")
        count = _check_steps(p.steps, 0)
        if hypotheses is not None:
            got = [tuple(h.props) for h in p.assumptions]
            want = [tuple(h.props) for h in hypotheses]
            if got != want:
                shown = ", ".join(repr(print_sequent(h)) for h in p.assumptions) or "none"
                raise KernelError("Assume", f"assumptions {shown} differ from the stated hypotheses")
        last = p.steps[-1]
        if p.goal_id and p.goal_id != last.id:
            raise KernelError("goal", f"goal names {p.goal_id!r} but the last step is {last.id!r}")
        if tuple(p.goal.props) != tuple(last.result.props):
            i = _first_diff(p.goal.props, last.result.props)
            raise KernelError("goal", f"goal {print_sequent(p.goal)!r} differs from "
                                      f"{print_sequent(last.result)!r}", i)
    except KernelError as err:
        return ProofCheck(False, err, tuple(p.assumptions))
    return ProofCheck(True, None, tuple(p.assumptions), count)


# ---------------------------------------------------------------- text I/O

class ScriptSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


_ID = r"[A-Za-z_][A-Za-z0-9_.-]*"
_STEP = re.compile(rf"^({_ID})\s*=\s*([A-Za-z][A-Za-z0-9]*)(.*?)=>\s*(\".*\")\s*$")
_GOAL = re.compile(rf"^goal\s+({_ID})\s+(\".*\")\s*$")
_PREMS = re.compile(r"\[([^\[\]]*)\]\s*$")


def _unquote(text: str, lineno: int) -> str:
    try:
        parts = shlex.split(text)
    except ValueError as exc:
        raise ScriptSyntaxError(str(exc), lineno) from None
    if len(parts) != 1:
        raise ScriptSyntaxError(f"expected one quoted sequent, found {text!r}", lineno)
    return parts[0]


def _parse_param(rule: str, name: str, raw: str, lineno: int):
    kind = RULE_SCHEMA.get(rule, (0, {}))[1].get(name)
    try:
        if kind == "int":
            return int(raw)
        if kind == "formula":
            return parse_formula(raw)
        if kind == "formulas":
            return parse_formulas(raw)
    except (ValueError, ParseError) as exc:
        raise ScriptSyntaxError(f"bad value for {name}: {exc}", lineno) from None
    raise ScriptSyntaxError(f"{rule} has no parameter {name!r}", lineno)


def parse_script(text: str, name: str = "") -> ProofScript:
    steps: list[Step] = []
    goal = None
    doc_lines: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            if not steps and goal is None:
                doc_lines.append(stripped[1:].strip())
            continue
        line = _strip_comment(raw)
        if not line:
            continue
        if goal is not None:
            raise ScriptSyntaxError("nothing may follow the goal line", lineno)
        m = _GOAL.match(line)
        if m:
            try:
                goal = (m.group(1), parse_norm(_unquote(m.group(2), lineno)))
            except ParseError as exc:
                raise ScriptSyntaxError(str(exc), lineno) from None
            continue
        m = _STEP.match(line)
        if not m:
            raise ScriptSyntaxError(f"cannot parse {line!r}", lineno)
        sid, rule, middle, seq = m.groups()
        if rule not in RULE_SCHEMA:
            raise ScriptSyntaxError(f"unknown rule {rule!r}", lineno)
        premises: tuple = ()
        pm = _PREMS.search(middle)
        if pm:
            premises = tuple(pm.group(1).replace(",", " ").split())
            middle = middle[:pm.start()]
        try:
            tokens = shlex.split(middle)
        except ValueError as exc:
            raise ScriptSyntaxError(str(exc), lineno) from None
        params = {}
        for tok in tokens:
            key, eq, value = tok.partition("=")
            if not eq:
                raise ScriptSyntaxError(f"expected name=value, found {tok!r}", lineno)
            if key in params:
                raise ScriptSyntaxError(f"repeated parameter {key!r}", lineno)
            params[key] = _parse_param(rule, key, value, lineno)
        try:
            result = parse_norm(_unquote(seq, lineno))
        except ParseError as exc:
            raise ScriptSyntaxError(str(exc), lineno) from None
        steps.append(Step.make(sid, rule, params, premises, result))
    if goal is None:
        raise ScriptSyntaxError("missing goal line", len(text.splitlines()) + 1)
    return ProofScript(tuple(steps), goal[1], goal[0], name, "\n".join(doc_lines))


def _strip_comment(raw: str) -> str:
    """Drop a trailing comment that is not inside double quotes."""
    inside = False
    for i, ch in enumerate(raw):
        if ch == '"':
            inside = not inside
        elif ch == "#" and not inside:
            return raw[:i].strip()
    return raw.strip()


def _show_param(kind: str, value) -> str:
    # dispatch on the value so that malformed steps still print
    if isinstance(value, int):
        return str(value)
    if isinstance(value, tuple):
        return '"' + print_formulas(value) + '"'
    return '"' + print_formula(value) + '"'


def print_step(st: Step) -> str:
    schema = RULE_SCHEMA.get(st.rule, (0, {}))[1]
    parts = [f"{st.id} = {st.rule}"]
    for name, value in st.params:
        parts.append(f"{name}={_show_param(schema.get(name, 'formula'), value)}")
    if st.premises:
        parts.append("[" + " ".join(st.premises) + "]")
    parts.append(f'=> "{print_sequent(st.result)}"')
    return " ".join(parts)


def print_script(p: ProofScript) -> str:
    lines = []
    if p.doc:
        lines += ["# " + ln if ln else "#" for ln in p.doc.split("\n")]
    lines += [print_step(s) for s in p.steps]
    goal_id = p.goal_id or (p.steps[-1].id if p.steps else "")
    lines.append(f'goal {goal_id} "{print_sequent(p.goal)}"')
    return "\n".join(lines) + "\n"
