import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import formulas, random_formula
from palgebra.core import leq, one, plus
from palgebra.finite import boolean2, mo_algebra
from palgebra.formula import (
    And, Atom, Neg, SequentNorm, SequentSurface, Zero, jump_normalize, parse_formula, parse_norm,
    parse_sequent, phi_fold, psi_fold,
)
from palgebra.semantics import (
    EXHAUSTIVE_CAP, ExhaustiveCapError, UnboundAtom, countermodel_search, evaluate, finite_zoo,
    model_from_spec, sequent_valid, soundness_harness, split_valid, validity_check, zoo,
)
from palgebra.subspace import SubspaceModel, line, random_subspace

MO2, Q2, Q3 = mo_algebra(2), SubspaceModel(2), SubspaceModel(3)


def test_eval_examples():
    for m in (MO2, Q3):
        rng = random.Random(1)
        for _ in range(20):
            x, y = m.sample(rng), m.sample(rng)
            v = {"a": x, "b": y}
            assert evaluate(m, v, parse_formula("a & ~a")) == m.zero()
            assert evaluate(m, v, parse_formula("~~a")) == x
            assert evaluate(m, v, parse_formula("a | b")) == plus(m, x, y)
            assert evaluate(m, v, Zero()) == m.zero()


def test_unbound_atom():
    with pytest.raises(UnboundAtom):
        evaluate(MO2, {"a": 0}, parse_formula("a & b"))


def test_sequent_conventions():
    v = {"a": line(1, 0), "b": line(1, 1)}
    assert sequent_valid(Q2, v, parse_sequent("a |- a, a"))
    assert not sequent_valid(Q2, v, parse_sequent("a, b, ~a |-"))
    assert sequent_valid(Q2, v, parse_sequent("|- a | ~a"))
    assert not sequent_valid(Q2, v, parse_sequent("|-"))
    assert sequent_valid(Q2, v, parse_sequent("0 |-"))


def test_validity_check_examples():
    assert validity_check(MO2, parse_sequent("a, ~a |-")).status == "valid-in-model"
    r = validity_check(Q2, parse_sequent("a, b, ~a |-"), budget=100)
    assert r.refuted and not sequent_valid(Q2, r.assignment, parse_sequent("a, b, ~a |-"))


def test_sampled_models_never_report_validity():
    r = validity_check(Q3, parse_sequent("a, ~a |-"), budget=50)
    assert r.status == "exhausted" and r.checked == 50


def test_exhaustive_cap():
    s = SequentNorm(tuple(Atom(f"x{i}") for i in range(8)))
    assert 8 ** 8 > EXHAUSTIVE_CAP
    with pytest.raises(ExhaustiveCapError):
        validity_check(mo_algebra(3), s)


def test_validity_check_is_seeded():
    s = parse_sequent("a & b, ~(b & a) |-")
    one_ = validity_check(Q3, s, budget=50, seed=4)
    two = validity_check(Q3, s, budget=50, seed=4)
    assert (one_.status, one_.checked) == (two.status, two.checked)


def test_countermodel_examples():
    cm = countermodel_search(parse_sequent("a, b, ~a |-"))
    assert cm is not None and cm.model.name == "mo:2"
    assert countermodel_search(parse_sequent("a, ~a |-")) is None
    cm = countermodel_search(parse_sequent("a & b, ~(b & a) |-"))
    assert cm.model.name == "mo:2"
    assert {k: cm.model.format(x) for k, x in cm.assignment.items()} == {"a": "a", "b": "b"}
    plane = countermodel_search(parse_sequent("a, b, ~a |-"), models=[Q2], budget=100)
    assert plane is not None and plane.model.name == "subspace:dim=2"


def test_zoo_is_smallest_first():
    sizes = [len(m.enumerate()) for m in finite_zoo()]
    assert sizes == sorted(sizes)
    assert [m.name for m in zoo()][len(sizes):] == ["subspace:dim=2", "subspace:dim=3", "subspace:dim=4"]


@pytest.mark.parametrize("spec,name", [("bool2", "bool2"), ("mo:3", "mo:3"), ("subspace:dim=2", "subspace:dim=2")])
def test_model_from_spec(spec, name):
    assert model_from_spec(spec).name == name


@pytest.mark.parametrize("spec", ["mo:x", "subspace:n=2", "nothing", "file:"])
def test_bad_model_spec(spec):
    with pytest.raises(ValueError):
        model_from_spec(spec)


# ------------------------------------------------------------- properties

surface = st.builds(
    lambda l, r: SequentSurface(tuple(l), tuple(r)),
    st.lists(formulas(max_depth=3), max_size=3), st.lists(formulas(max_depth=3), max_size=3),
)


def _assign(m, seed):
    rng = random.Random(seed)
    return {a: m.sample(rng) for a in "abc"}


@given(surface, st.integers(min_value=0, max_value=10 ** 6))
def test_jump_invariance(s, seed):
    for m in (MO2, Q3):
        v = _assign(m, seed)
        assert sequent_valid(m, v, s) == sequent_valid(m, v, jump_normalize(s))


@given(st.lists(formulas(max_depth=2), max_size=5), st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=0, max_value=5))
def test_phi_psi_split(props, seed, k):
    k = min(k, len(props))
    for m in (MO2, Q3):
        v = _assign(m, seed)
        direct = leq(m, evaluate(m, v, phi_fold(props[:k])), evaluate(m, v, psi_fold(props[k:])))
        assert split_valid(m, v, props, k) == direct == sequent_valid(m, v, SequentNorm(tuple(props)))


def test_literal_psi_composition_fails_semantically():
    a, b = Atom("a"), Atom("b")
    lit, real = psi_fold([a, psi_fold([b])]), psi_fold([a, b])
    diffs = [(x, y) for x in MO2.enumerate() for y in MO2.enumerate()
             if evaluate(MO2, {"a": x, "b": y}, lit) != evaluate(MO2, {"a": x, "b": y}, real)]
    assert diffs


# ------------------------------------------------------------ soundness

def test_cut_sound_on_mo2_and_q3():
    reports = soundness_harness(budget=200, models=[MO2, Q3], rules=["Cut"], negative_control=False)
    assert all(r.ok and r.instances == 200 for r in reports)


def test_circ_exhaustive_on_mo2():
    for x, y, z in itertools.product(MO2.enumerate(), repeat=3):
        v = {"a": x, "b": y, "c": z}
        if sequent_valid(MO2, v, parse_norm("a, b, c |-")):
            assert sequent_valid(MO2, v, parse_norm("c, b, a |-"))


def test_negative_control_caught():
    reports = soundness_harness(budget=200, models=[MO2, Q3], rules=[], negative_control=True)
    assert [r.control for r in reports] == [True, True]
    assert all(r.violations for r in reports)
    assert all(r.line().startswith("CAUGHT") for r in reports)


def test_negative_control_is_sound_in_boolean_models():
    (r,) = soundness_harness(budget=100, models=[boolean2()], rules=[], negative_control=True)
    assert not r.violations and r.line().startswith("no-violation")


def test_harness_reports_proper_instances():
    (r,) = soundness_harness(budget=100, models=[Q3], rules=["MLAndIntro"], negative_control=False)
    assert r.ok and r.proper > 50


def test_kernel_corpus_goals_have_no_countermodel():
    from palgebra.proofs import corpus

    for name, p in corpus().items():
        if not p.assumptions:
            assert countermodel_search(p.goal, budget=20) is None, name
