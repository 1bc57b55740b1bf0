"""The shipped proof corpus and a single-step mutation harness.

Each ``*.proof`` file under ``palgebra/corpus`` is one named script.  The
hypotheses of a script are its ``Assume`` steps; a mutant counts as
rejected when the kernel refuses it as a proof of the original statement
(same goal, same hypotheses).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterator, Optional

from .formula import Atom, Neg, SequentNorm, ZERO
from .kernel import (
    RULE_SCHEMA,
    ProofScript,
    ScriptSyntaxError,
    Step,
    check_proof,
    parse_script,
    print_script,
)

__all__ = [
    "corpus",
    "corpus_names",
    "load_script",
    "load_dir",
    "mutants",
    "MutationReport",
    "mutation_report",
]

_FRESH = Atom("z")


def _corpus_files() -> list:
    root = resources.files("palgebra") / "corpus"
    return sorted((f for f in root.iterdir() if f.name.endswith(".proof")), key=lambda f: f.name)


def corpus_names() -> list[str]:
    return [f.name[: -len(".proof")] for f in _corpus_files()]


def corpus() -> dict[str, ProofScript]:
    """All shipped scripts by name, in name order."""
    return {f.name[: -len(".proof")]: parse_script(f.read_text(), f.name[: -len(".proof")])
            for f in _corpus_files()}


def load_script(path) -> ProofScript:
    path = Path(path)
    return parse_script(path.read_text(), path.stem)


def load_dir(path) -> dict[str, ProofScript]:
    return {p.stem: load_script(p) for p in sorted(Path(path).glob("*.proof"))}


# ---------------------------------------------------------------- mutation

def _seq_variants(props: tuple) -> Iterator[tuple[str, tuple]]:
    n = len(props)
    for i in range(n):
        yield f"drop formula {i}", props[:i] + props[i + 1:]
        yield f"negate formula {i}", props[:i] + (Neg(props[i]),) + props[i + 1:]
        if isinstance(props[i], Neg):
            yield f"strip negation {i}", props[:i] + (props[i].operand,) + props[i + 1:]
        yield f"replace formula {i}", props[:i] + (_FRESH,) + props[i + 1:]
    for i in range(n - 1):
        yield f"swap formulas {i},{i + 1}", props[:i] + (props[i + 1], props[i]) + props[i + 2:]
    yield "append fresh atom", props + (_FRESH,)
    yield "append 0", props + (ZERO,)
    yield "prepend fresh atom", (_FRESH,) + props


def _param_variants(step: Step) -> Iterator[tuple[str, dict]]:
    params = step.param
    for name, value in params.items():
        kind = RULE_SCHEMA.get(step.rule, (0, {}))[1].get(name, "formula")
        options = []
        if kind == "int":
            options = [("+1", value + 1), ("-1", value - 1)]
        elif kind == "formula":
            options = [("negated", Neg(value)), ("fresh", _FRESH)]
            if isinstance(value, Neg):
                options.append(("stripped", value.operand))
        else:
            options = [(f"variant {d}", v) for d, v in _seq_variants(tuple(value))]
        for desc, new in options:
            yield f"param {name} {desc}", {**params, name: new}
        yield f"drop param {name}", {k: v for k, v in params.items() if k != name}
    schema = RULE_SCHEMA.get(step.rule, (0, {}))[1]
    for name in schema:
        if name not in params:
            yield f"add param {name}", {**params, name: 0 if schema[name] == "int" else _FRESH}


def mutants(script: ProofScript) -> Iterator[tuple[str, ProofScript]]:
    """Every single-step (or goal) alteration whose text differs from the original.

    Mutants are judged through their text: ``mutation_report`` prints each
    one and parses it back, so a mutant the parser refuses is rejected.
    """
    original = print_script(script)
    steps = list(script.steps)
    seen = {original}

    def emit(desc: str, new_steps: list, goal: Optional[SequentNorm] = None, goal_id: Optional[str] = None):
        mutant = replace(script, steps=tuple(new_steps),
                         goal=script.goal if goal is None else goal,
                         goal_id=script.goal_id if goal_id is None else goal_id)
        text = print_script(mutant)
        if text in seen:
            return None
        seen.add(text)
        return desc, mutant

    def with_step(i: int, st: Step) -> list:
        return steps[:i] + [st] + steps[i + 1:]

    candidates = []
    for i, st in enumerate(steps):
        tag = f"step {st.id}"
        for d, props in _seq_variants(tuple(st.result.props)):
            candidates.append((f"{tag}: result {d}", with_step(i, replace(st, result=SequentNorm(props)))))
        for d, params in _param_variants(st):
            candidates.append((f"{tag}: {d}", with_step(i, Step.make(st.id, st.rule, params, st.premises, st.result))))
        for rule in RULE_SCHEMA:
            if rule != st.rule:
                candidates.append((f"{tag}: rule {rule}", with_step(i, replace(st, rule=rule))))
        prem = list(st.premises)
        if len(prem) >= 2:
            candidates.append((f"{tag}: premises reversed", with_step(i, replace(st, premises=tuple(prem[::-1])))))
        earlier = [s.id for s in steps[:i]]
        for k in range(len(prem)):
            for other in earlier:
                if other != prem[k]:
                    new = prem[:k] + [other] + prem[k + 1:]
                    candidates.append((f"{tag}: premise {k} -> {other}", with_step(i, replace(st, premises=tuple(new)))))
            candidates.append((f"{tag}: drop premise {k}",
                               with_step(i, replace(st, premises=tuple(prem[:k] + prem[k + 1:])))))
        for other in earlier:
            candidates.append((f"{tag}: extra premise {other}", with_step(i, replace(st, premises=tuple(prem + [other])))))
        candidates.append((f"{tag}: deleted", steps[:i] + steps[i + 1:]))
        # swapping independent neighbours yields the same proof, so only
        # dependency-breaking moves count as mutants
        if i > 0 and steps[i - 1].id in st.premises:
            swapped = steps[:i - 1] + [steps[i], steps[i - 1]] + steps[i + 1:]
            candidates.append((f"{tag}: moved up", swapped))
    for desc, new_steps in candidates:
        out = emit(desc, new_steps)
        if out:
            yield out
    for d, props in _seq_variants(tuple(script.goal.props)):
        out = emit(f"goal: {d}", steps, goal=SequentNorm(props))
        if out:
            yield out
    for st in steps[:-1]:
        out = emit(f"goal: names {st.id}", steps, goal_id=st.id)
        if out:
            yield out


@dataclass
class MutationReport:
    name: str
    total: int = 0
    rejected: int = 0
    survivors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.rejected == self.total


def mutation_report(script: ProofScript) -> MutationReport:
    hyps = script.assumptions
    report = MutationReport(script.name)
    for desc, mutant in mutants(script):
        report.total += 1
        try:
            reread = parse_script(print_script(mutant))
        except ScriptSyntaxError:
            report.rejected += 1
            continue
        if check_proof(reread, hyps).ok:
            report.survivors.append(desc)
        else:
            report.rejected += 1
    return report
