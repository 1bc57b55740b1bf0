import pytest
from hypothesis import given, strategies as st

from conftest import formulas
from palgebra.formula import (
    And, Atom, Neg, ParseError, SequentNorm, SequentSurface, Zero, atoms_of, depth, disj,
    jump_normalize, parse_formula, parse_norm, parse_sequent, phi_fold, print_formula,
    print_sequent, psi_fold, psi_fold_onto, subformulas,
)

a, b, c = Atom("a"), Atom("b"), Atom("c")


def test_parse_negated_conjunction():
    assert parse_formula("~(a & b)") == Neg(And(a, b))


def test_disjunction_desugars_with_swapped_operands():
    assert parse_formula("a | b") == Neg(And(Neg(b), Neg(a)))


@pytest.mark.parametrize("text", ["a & b & c", "a | b | c", "a & b | c"])
def test_unparenthesized_chains_are_rejected(text):
    with pytest.raises(ParseError, match="parenthes"):
        parse_formula(text)


@pytest.mark.parametrize("text", ["(a & b", "a & b)", "a $ b", "", "~", "a b"])
def test_malformed_formulas(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_negation_binds_tightest():
    assert parse_formula("~a & b") == And(Neg(a), b)
    assert parse_formula("~~a") == Neg(Neg(a))
    assert parse_formula("0") == Zero()


def test_parse_sequent_examples():
    assert parse_sequent("a, ~b |- c") == SequentSurface((a, Neg(b)), (c,))
    assert parse_sequent("|-") == SequentSurface((), ())
    assert parse_sequent("a |- a, a") == SequentSurface((a,), (a, a))


def test_sequent_needs_turnstile():
    with pytest.raises(ParseError, match="turnstile"):
        parse_sequent("a, b")


def test_print_examples():
    assert print_formula(Neg(Zero())) == "~0"
    assert print_formula(And(a, Neg(b))) == "a & ~b"


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(print_formula(f)) == f


@given(st.lists(formulas(max_depth=2), max_size=4), st.lists(formulas(max_depth=2), max_size=3))
def test_sequent_round_trip(lhs, rhs):
    s = SequentSurface(tuple(lhs), tuple(rhs))
    assert parse_sequent(print_sequent(s)) == s


def test_phi_fold_examples():
    assert phi_fold([a, b, c]) == And(And(a, b), c)
    assert phi_fold([a]) == a
    assert phi_fold([]) == Neg(Zero())


def test_psi_fold_examples():
    assert psi_fold([a, b]) == Neg(And(Neg(Neg(b)), Neg(Neg(a))))
    assert psi_fold([a, b]) == disj(Neg(a), Neg(b))
    assert psi_fold([a]) == Neg(a)
    assert psi_fold([]) == Zero()


def test_jump_normalize_examples():
    assert jump_normalize(parse_sequent("a |- b")) == SequentNorm((a, Neg(b)))
    assert jump_normalize(parse_sequent("|- a")) == SequentNorm((Neg(a),))
    assert jump_normalize(parse_sequent("a, b |-")) == SequentNorm((a, b))
    assert jump_normalize(parse_sequent("a |- b, c")) == SequentNorm((a, Neg(b), Neg(c)))


def test_parse_norm_rejects_right_side():
    assert parse_norm("a, ~a |-") == SequentNorm((a, Neg(a)))
    with pytest.raises(ParseError):
        parse_norm("a |- b")


@given(st.lists(formulas(max_depth=2), min_size=1, max_size=4),
       st.lists(formulas(max_depth=2), max_size=4))
def test_phi_fold_regroups_prefix(gamma, delta):
    assert phi_fold(gamma + delta) == phi_fold([phi_fold(gamma)] + delta)


@given(st.lists(formulas(max_depth=2), max_size=4),
       st.lists(formulas(max_depth=2), min_size=1, max_size=4))
def test_psi_fold_composes_onto_tail(gamma, delta):
    assert psi_fold(gamma + delta) == psi_fold_onto(gamma, psi_fold(delta))


def test_literal_psi_composition_differs_syntactically():
    # appending psi(D) as one more proposition negates it once more
    assert psi_fold([a] + [psi_fold([b])]) != psi_fold([a, b])


def test_utilities():
    f = parse_formula("(a & ~b) & a")
    assert atoms_of(f) == ["a", "b"]
    assert depth(f) == 4
    subs = set(subformulas(f))
    assert {a, b, Neg(b), And(a, Neg(b)), f} == subs


@given(formulas())
def test_formulas_hash_consistently(f):
    g = parse_formula(print_formula(f))
    assert hash(f) == hash(g)
    assert {f: 1}[g] == 1
