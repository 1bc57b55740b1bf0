import itertools
from fractions import Fraction

import pytest

from palgebra.core import cset_boolean_check, leq
from palgebra.finite import (
    AxiomViolation, FiniteAlgebra, TableError, axiom_violation, boolean2, canonical_form,
    enumerate_palgebras, is_isomorphic, load, load_file, mo_algebra, save,
)
from palgebra.laws import run_laws
from palgebra.subspace import SubspaceModel, line


def naive_is_palgebra(comp, dot) -> bool:
    """The seven defining properties, written out directly over index tables."""
    n = len(comp)
    X = range(n)
    le = lambda x, y: dot[x][y] == x  # noqa: E731
    sm = lambda x, y: le(dot[x][y], x)  # noqa: E731
    for x in X:
        if not le(x, x) or dot[0][x] != 0 or dot[x][comp[x]] != 0:
            return False
    for x, y in itertools.product(X, X):
        if le(x, y) and le(y, x) and x != y:
            return False
        if sm(x, y) != sm(y, x) or not le(dot[x][y], y):
            return False
    for x, y, z in itertools.product(X, X, X):
        if le(x, y) and le(y, z) and not le(x, z):
            return False
        if (dot[dot[x][y]][z] == 0) != (dot[dot[z][y]][x] == 0):
            return False
        if le(x, y):
            if dot[dot[x][y]][z] != dot[x][dot[y][z]] or dot[dot[z][y]][x] != dot[z][dot[y][x]]:
                return False
            if not le(dot[x][z], dot[y][z]):
                return False
        if le(dot[x][y], z) and le(dot[x][comp[y]], z) and not le(x, z):
            return False
    return True


def naive_tables(size):
    """Every involution fixing 0<->1 and every table with rows/columns of 0 and 1 fixed."""
    rest = list(range(2, size))
    free = [(i, j) for i in rest for j in rest]
    for perm in itertools.permutations(rest):
        comp = [1, 0] + list(perm)
        if any(comp[comp[i]] != i for i in range(size)):
            continue
        for values in itertools.product(range(size), repeat=len(free)):
            dot = [[0] * size for _ in range(size)]
            for x in range(size):
                dot[x][1] = dot[1][x] = x
                dot[x][0] = dot[0][x] = 0
            for (i, j), v in zip(free, values):
                dot[i][j] = v
            if naive_is_palgebra(comp, dot):
                yield tuple(comp), tuple(map(tuple, dot))


@pytest.mark.parametrize("size", [2, 3, 4])
def test_enumerator_matches_naive_oracle(size):
    got = {(a.comp_table, a.dot_table) for a in enumerate_palgebras(size)}
    assert got == set(naive_tables(size))


def test_enumeration_counts():
    assert [len(list(enumerate_palgebras(n))) for n in range(2, 7)] == [1, 0, 1, 0, 3]
    assert len(list(enumerate_palgebras(6, iso_reduce=True))) == 1


def test_enumeration_does_not_depend_on_jobs():
    one = [(a.name, a.dot_table) for a in enumerate_palgebras(6)]
    two = [(a.name, a.dot_table) for a in enumerate_palgebras(6, jobs=2)]
    assert one == two


def test_size_two_is_boolean():
    (a,) = enumerate_palgebras(2)
    assert is_isomorphic(a, boolean2())


def test_size_six_contains_mo2():
    assert any(is_isomorphic(a, mo_algebra(2)) for a in enumerate_palgebras(6))


def test_size_four_is_mo1():
    (a,) = enumerate_palgebras(4)
    assert is_isomorphic(a, mo_algebra(1)) and a.is_commutative()


def test_commutative_emissions_are_boolean():
    for n in range(2, 7):
        for a in enumerate_palgebras(n):
            if not a.is_commutative():
                continue
            X = a.enumerate()
            assert all(a.dot(a.dot(x, y), z) == a.dot(x, a.dot(y, z)) for x in X for y in X for z in X)
            assert cset_boolean_check(a, X).ok


def test_enumerator_size_range():
    with pytest.raises(ValueError):
        list(enumerate_palgebras(7))
    with pytest.raises(ValueError):
        list(enumerate_palgebras(1))


def _plane_lines(k):
    slopes = [Fraction(0), Fraction(1), Fraction(2), Fraction(1, 3)][:k]
    out = []
    for t in slopes:
        out += [line(1, t), line(-t, 1)]
    return out


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_mo_family_embeds_in_the_plane(k):
    m = mo_algebra(k)
    q2 = SubspaceModel(2)
    image = [q2.zero(), q2.comp(q2.zero())] + _plane_lines(k)
    assert len(set(image)) == m.size
    for x in m.enumerate():
        assert image[m.comp(x)] == q2.comp(image[x])
        for y in m.enumerate():
            assert image[m.dot(x, y)] == q2.dot(image[x], image[y])


def test_mo_family_shape():
    assert mo_algebra(1).is_commutative()
    for k in (2, 3, 4):
        m = mo_algebra(k)
        assert m.size == 2 * k + 2 and not m.is_commutative()
    m = mo_algebra(2)
    a, b = m.parse("a"), m.parse("b")
    assert m.dot(a, b) == b and m.dot(b, a) == a
    assert axiom_violation(m) is None


def test_save_load_round_trip():
    m = mo_algebra(2)
    again = load(save(m))
    assert (again.names, again.comp_table, again.dot_table) == (m.names, m.comp_table, m.dot_table)
    assert load(save(boolean2())).size == 2


def _corrupt(cells):
    m = mo_algebra(2)
    t = [list(r) for r in m.dot_table]
    for (i, j), v in cells.items():
        t[m.parse(i)][m.parse(j)] = m.parse(v)
    return m.names, m.comp_table, t


def test_corrupted_mo2_fails_p_commutativity_first():
    names, comp, dot = _corrupt({("a", "b"): "0"})
    assert axiom_violation(FiniteAlgebra(names, comp, dot)) == ("axiom.p-commutativity", ("a", "b"))
    text = save(FiniteAlgebra(names, comp, dot))
    with pytest.raises(AxiomViolation, match="p-commutativity"):
        load(text)
    assert load(text, check=False).size == 6


def test_other_corruption_breaks_reversal_instead():
    names, comp, dot = _corrupt({("a", "b"): "a", ("b", "a"): "a"})
    m = FiniteAlgebra(names, comp, dot)
    assert leq(m, m.parse("a"), m.parse("b"))  # so smile stays symmetric
    assert axiom_violation(m) == ("axiom.p-assoc.reversal", ("a", "b", "a'"))


@pytest.mark.parametrize("text", [
    "size 2\nnames 0 1\ncomp 1 0\ndot\n0 0\n0 1\n",
    "palgebra\nsize 2\nnames 0 1\ncomp 0 0\ndot\n0 0\n0 1\n",
    "palgebra\nsize 2\nnames 0 1\ncomp 1 0\ndot\n0 0\n",
    "palgebra\nsize 2\nnames 0 0\ncomp 1 0\ndot\n0 0\n0 1\n",
])
def test_malformed_tables(text):
    with pytest.raises((TableError, AxiomViolation)):
        load(text)


def test_shipped_negative_control(tmp_path):
    from importlib import resources
    path = resources.files("palgebra") / "models" / "o6.palg"
    with pytest.raises(AxiomViolation):
        load(path.read_text())
    o6 = load(path.read_text(), check=False)
    failing = {r.law for r in run_laws(o6) if not r.ok}
    assert {"axiom.O", "orthomodularity"} <= failing
    assert not {"axiom.partial-order", "axiom.zero", "axiom.comp", "axiom.p-assoc.reversal"} & failing
    p = tmp_path / "o6.palg"
    p.write_text(path.read_text())
    assert load_file(p, check=False).name == f"file:{p}"


def test_emitted_tables_pass_the_law_suite():
    for n in (2, 4, 6):
        for a in enumerate_palgebras(n, iso_reduce=True):
            assert all(r.ok for r in run_laws(a)), a.name


def test_canonical_form_ignores_relabelling():
    tables = list(enumerate_palgebras(6))
    assert len({canonical_form(a) for a in tables}) == 1
