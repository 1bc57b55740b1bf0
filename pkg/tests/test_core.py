import random

import pytest
from hypothesis import given, strategies as st

from palgebra.core import (
    PAlgebraModel, lub_scan,
    NoLeastUpperBound, PreconditionError, atoms_of, bot, cset_boolean_check, gram_schmidt_witness,
    is_atom, leq, lub_of_chain, lub_of_ortho_set, one, plus, smile,
)
from palgebra.finite import boolean2, mo_algebra
from palgebra.subspace import (
    SubspaceModel, complement, full_space, line, parse_subspace, project, random_subspace, zero_space,
)

Q2, Q3 = SubspaceModel(2), SubspaceModel(3)
MO2 = mo_algebra(2)
seeds = st.integers(min_value=0, max_value=10 ** 9)


def el(m, name):
    return m.parse(name)


def test_one_in_each_backend():
    assert boolean2().format(one(boolean2())) == "1"
    assert one(Q3) == full_space(3)
    assert MO2.format(one(MO2)) == "1"


@given(seeds)
def test_zero_and_one_bound_everything(seed):
    x = random_subspace(3, seed)
    assert leq(Q3, Q3.zero(), x) and leq(Q3, x, one(Q3))
    assert bot(Q3, x, Q3.comp(x))
    assert smile(Q3, x, x) and smile(Q3, x, Q3.comp(x))


@given(seeds, seeds)
def test_orthogonality_is_symmetric(s1, s2):
    x = random_subspace(3, s1)
    y = project(random_subspace(3, s2), complement(x)) if s2 % 2 else random_subspace(3, s2)
    assert bot(Q3, x, y) == bot(Q3, y, x)


def test_two_lines_in_the_plane():
    x, y = line(1, 0), line(1, 1)
    assert not leq(Q2, x, y)
    assert not bot(Q2, x, y)
    assert not smile(Q2, x, y)
    assert plus(Q2, x, y) == x


def test_plus_identities():
    for m in (boolean2(), MO2):
        for x in m.enumerate():
            assert plus(m, x, m.comp(x)) == one(m)
    assert plus(Q3, Q3.zero(), Q3.zero()) == Q3.zero()


def test_atoms():
    assert is_atom(Q3, line(1, 2, 3))
    assert not is_atom(Q3, zero_space(3))
    assert not is_atom(Q3, parse_subspace("span{(1,0,0),(0,1,0)}"))
    assert atoms_of(MO2, MO2.zero()) == []
    assert sorted(MO2.format(a) for a in atoms_of(MO2, one(MO2))) == ["a", "a'", "b", "b'"]
    with pytest.raises(PreconditionError):
        atoms_of(Q3, one(Q3))


def test_atoms_monotone_in_finite_models():
    for m in (boolean2(), mo_algebra(1), MO2, mo_algebra(3)):
        for x in m.enumerate():
            for y in m.enumerate():
                if leq(m, x, y):
                    assert set(atoms_of(m, x)) <= set(atoms_of(m, y))


def test_gram_schmidt_examples():
    x = line(1, 0, 0)
    y = parse_subspace("span{(1,0,0),(0,1,0)}")
    assert gram_schmidt_witness(Q3, x, y) == line(0, 1, 0)
    ell = line(2, -1, 1)
    assert gram_schmidt_witness(Q3, Q3.zero(), ell) == ell
    a = el(MO2, "a")
    assert gram_schmidt_witness(MO2, MO2.zero(), a) == a
    with pytest.raises(PreconditionError):
        gram_schmidt_witness(Q3, y, y)


@given(seeds)
def test_gram_schmidt_witness_properties(seed):
    rng = random.Random(seed)
    y = random_subspace(4, rng=rng, dim=rng.randint(1, 4))
    x = project(random_subspace(4, rng=rng, dim=rng.randint(0, y.dim - 1)), y)
    if x.dim == y.dim:
        return
    m = SubspaceModel(4)
    a = gram_schmidt_witness(m, x, y)
    assert a.dim == 1 and leq(m, a, y) and bot(m, a, x)


def test_chain_examples():
    ell = line(1, 0, 0)
    plane = parse_subspace("span{(1,0,0),(0,1,0)}")
    assert lub_of_chain(Q3, [ell, plane, full_space(3)]) == full_space(3)
    assert lub_of_chain(Q3, [ell, ell, ell]) == ell
    detail = lub_of_chain(Q3, [ell, plane, full_space(3)], detail=True)
    assert detail.orthogonal_parts == [ell, line(0, 1, 0), line(0, 0, 1)]
    with pytest.raises(PreconditionError):
        lub_of_chain(Q3, [plane, ell])


def test_chain_in_finite_model():
    a = el(MO2, "a")
    assert lub_of_chain(MO2, [MO2.zero(), a, one(MO2)]) == one(MO2)


def test_ortho_set_examples():
    xs = [line(1, 0, 0), line(0, 1, 0)]
    assert lub_of_ortho_set(Q3, xs) == parse_subspace("span{(1,0,0),(0,1,0)}")
    assert lub_of_ortho_set(Q3, [line(1, 1, 0)]) == line(1, 1, 0)
    assert lub_of_ortho_set(Q3, []) == Q3.zero()
    with pytest.raises(PreconditionError):
        lub_of_ortho_set(Q3, [line(1, 0, 0), line(1, 1, 0)])


class _Bowtie(PAlgebraModel):
    """0 < x, y < u, v: x and y have two minimal upper bounds."""

    name = "bowtie"
    below = {"0": {"0"}, "x": {"0", "x"}, "y": {"0", "y"},
             "u": {"0", "x", "y", "u"}, "v": {"0", "x", "y", "v"}}

    def zero(self):
        return "0"

    def enumerate(self):
        return list(self.below)

    def dot(self, p, q):
        return p if p in self.below[q] else "0"


def test_missing_lub_is_reported():
    m = _Bowtie()
    assert lub_scan(m, ["x", "0"]) == "x"
    with pytest.raises(NoLeastUpperBound):
        lub_scan(m, ["x", "y"])


def test_cset_examples():
    for m, x in ((MO2, el(MO2, "a")), (Q3, line(1, 2, 0))):
        assert cset_boolean_check(m, [m.zero(), one(m), x, m.comp(x)]).ok
        assert cset_boolean_check(m, [m.zero(), one(m)]).ok
    parts = [line(1, 0, 0), line(0, 1, 1), line(0, 1, -1)]
    family = [Q3.zero()]
    for mask in range(1, 8):
        family.append(lub_of_ortho_set(Q3, [p for i, p in enumerate(parts) if mask >> i & 1]))
    assert cset_boolean_check(Q3, family).ok


def test_cset_preconditions():
    with pytest.raises(PreconditionError):
        cset_boolean_check(MO2, [MO2.zero(), one(MO2), el(MO2, "a"), el(MO2, "a'"),
                                 el(MO2, "b"), el(MO2, "b'")])
    with pytest.raises(PreconditionError):
        cset_boolean_check(MO2, [one(MO2), el(MO2, "a"), el(MO2, "a'")])


def test_decomposition_through_complement_exploration():
    """Search for y != x·y + x'·y.

    In finite dimension x·y and x'·y both lie in y and together span it, so
    no subspace witness exists; the search confirms that on biased draws and
    on every finite zoo model.
    """
    from palgebra.semantics import finite_zoo

    for n in (2, 3, 4):
        m = SubspaceModel(n)
        rng = random.Random(n)
        for _ in range(300):
            x = random_subspace(n, rng=rng, dim=rng.randint(1, n - 1), entry_range=2)
            y = random_subspace(n, rng=rng, dim=rng.randint(1, n - 1), entry_range=2)
            assert plus(m, m.dot(x, y), m.dot(m.comp(x), y)) == y
    for m in finite_zoo():
        for x in m.enumerate():
            for y in m.enumerate():
                assert plus(m, m.dot(x, y), m.dot(m.comp(x), y)) == y
