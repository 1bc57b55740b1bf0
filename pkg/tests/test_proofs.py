import pytest

from palgebra.formula import atoms_of, print_sequent
from palgebra.kernel import check_proof, print_script
from palgebra.proofs import corpus, corpus_names, load_dir, load_script, mutants, mutation_report
from palgebra.semantics import assignments, finite_zoo, sequent_valid

CORPUS = corpus()

EXPECTED = {
    "repetition", "contraction", "exchange", "d1", "d2", "equiv", "lr-and-intro", "lr-and-elim",
    "implication-reflexivity", "implication-transitivity", "implication-context",
    "contradiction-to-zero", "zero-implies-all", "zero-to-contradiction",
    "congruence-negation", "congruence-dot-left", "congruence-dot-right",
    "dot-right", "absorption-left", "absorption-right", "idempotence",
    "assoc-left-forward", "assoc-left-backward", "assoc-right-forward", "assoc-right-backward",
    "reversal", "smile-symmetry", "property-o", "phi-fold", "phi-unfold",
}


def test_corpus_contents():
    assert set(corpus_names()) == EXPECTED
    assert len(CORPUS) >= 15


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_corpus_script_accepted(name):
    p = CORPUS[name]
    res = check_proof(p, p.assumptions)
    assert res.ok, res.error
    assert p.doc, "every corpus script starts with a comment"


def test_dot_right_script():
    p = CORPUS["dot-right"]
    assert [s.rule for s in p.steps] == ["NAxiom", "EWeak", "LLAndIntro"]
    assert print_sequent(p.goal) == "a & b, ~b |-"


def test_load_dir(tmp_path):
    for name in ("dot-right", "exchange"):
        (tmp_path / f"{name}.proof").write_text(print_script(CORPUS[name]))
    got = load_dir(tmp_path)
    assert sorted(got) == ["dot-right", "exchange"]
    assert check_proof(load_script(tmp_path / "exchange.proof")).ok


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_goal_follows_from_hypotheses_in_finite_models(name):
    p = CORPUS[name]
    hyps = p.assumptions
    names = atoms_of(list(p.goal.props) + [f for h in hyps for f in h.props])
    for m in finite_zoo():
        if len(m.enumerate()) ** len(names) > 5000:
            continue
        for v in assignments(m, names):
            if all(sequent_valid(m, v, h) for h in hyps):
                assert sequent_valid(m, v, p.goal), (m.name, v)


def test_mutants_differ_and_keep_names():
    p = CORPUS["implication-transitivity"]
    original = print_script(p)
    seen = set()
    for desc, mut in mutants(p):
        text = print_script(mut)
        assert text != original and text not in seen, desc
        seen.add(text)
    assert len(seen) > 100


def test_mutation_harness_on_sample():
    for name in ("dot-right", "implication-transitivity", "exchange"):
        rep = mutation_report(CORPUS[name])
        assert rep.total > 0 and rep.survivors == [] and rep.ok


def test_harness_flags_a_weak_kernel(monkeypatch):
    """Disable goal matching and the harness must notice surviving mutants."""
    import palgebra.proofs as proofs
    from palgebra.kernel import ProofCheck

    def lax(p, hyps=None):
        res = check_proof(p, hyps)
        if not res.ok and res.error.rule == "goal":
            return ProofCheck(True)
        return res

    monkeypatch.setattr(proofs, "check_proof", lax)
    rep = proofs.mutation_report(CORPUS["dot-right"])
    assert rep.survivors and not rep.ok
