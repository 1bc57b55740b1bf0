import random

import pytest
from hypothesis import settings, strategies as st

from palgebra.formula import And, Atom, Neg, Zero

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ATOMS = ("a", "b", "c")


def formulas(atoms=ATOMS, max_depth=3):
    """Formulas over ``atoms`` and 0 of height at most ``max_depth``."""
    leaves = st.sampled_from([Atom(a) for a in atoms] + [Zero()])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(Neg, sub), st.builds(And, sub, sub)),
        max_leaves=2 ** (max_depth - 1),
    ).filter(lambda f: _height(f) <= max_depth)


def _height(f):
    if isinstance(f, Neg):
        return 1 + _height(f.operand)
    if isinstance(f, And):
        return 1 + max(_height(f.left), _height(f.right))
    return 1


def random_formula(rng: random.Random, atoms=ATOMS, max_depth=3):
    if max_depth <= 1 or rng.random() < 0.3:
        return Zero() if rng.random() < 0.1 else Atom(rng.choice(atoms))
    if rng.random() < 0.4:
        return Neg(random_formula(rng, atoms, max_depth - 1))
    return And(random_formula(rng, atoms, max_depth - 1), random_formula(rng, atoms, max_depth - 1))


@pytest.fixture
def rng():
    return random.Random(20261019)


ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
