import itertools

import pytest
from hypothesis import given, settings, strategies as st

from schubert_lab.combinatorics import (
    Diagram, NotColumnConvexError, ParFamily, Partition, Permutation, all_families,
    all_permutations, avoids_patterns, diagram_from_family, find_pattern, grassmannian_shape,
    is_column_convex, par_family, partitions_in_box, reduce_diagram, rothe_diagram,
)


def rothe_from_inversions(w):
    """Oracle: one box ``(i, w(k))`` per inversion ``i < k``, ``w(i) > w(k)``."""
    n = w.n
    return {(i, w(k)) for i in range(1, n + 1) for k in range(i + 1, n + 1) if w(i) > w(k)}


def contains_pattern(word, pattern):
    """Oracle: brute-force order-isomorphic subsequence search."""
    k = len(pattern)
    for sub in itertools.combinations(word, k):
        if all((sub[a] < sub[b]) == (pattern[a] < pattern[b]) for a in range(k) for b in range(k)):
            return True
    return False


# permutations


@pytest.mark.parametrize("text", ["121", "1,2,2", "0,1", "14", "1,x,3"])
def test_bad_permutations_rejected(text):
    with pytest.raises(ValueError):
        Permutation.parse(text)


def test_bad_token_is_named():
    with pytest.raises(ValueError, match="'x'"):
        Permutation.parse("1,x,3")
    with pytest.raises(ValueError, match="repeated"):
        Permutation.parse("121")


def test_parse_forms_agree():
    assert Permutation.parse("256413") == Permutation.parse("2,5,6,4,1,3") == Permutation.parse("[2, 5, 6, 4, 1, 3]")


def test_permutation_basics():
    w = Permutation.parse("3142")
    assert w.inverse().inverse() == w
    assert w.descents() == [1, 3]
    assert w.length() == 3
    assert Permutation.longest(4).length() == 6
    assert w.times_s(1) == Permutation.parse("1342")
    assert str(w) == "3142"


# Rothe diagrams


def test_rothe_worked_example():
    D = rothe_diagram(Permutation.parse("256413"))
    assert D.boxes == {(1, 1), (2, 1), (3, 1), (4, 1), (2, 3), (3, 3), (4, 3), (2, 4), (3, 4)}
    assert is_column_convex(D)


def test_rothe_small_examples():
    assert rothe_diagram(Permutation.identity(5)).boxes == frozenset()
    assert rothe_diagram(Permutation.parse("3142")).boxes == {(1, 1), (1, 2), (3, 2)}
    assert not is_column_convex(rothe_diagram(Permutation.parse("3142")))


@pytest.mark.parametrize("n", range(1, 6))
def test_rothe_matches_inversion_oracle(n):
    for w in all_permutations(n):
        D = rothe_diagram(w)
        assert set(D.boxes) == rothe_from_inversions(w)
        assert len(D) == w.length()


@pytest.mark.parametrize("n", range(1, 7))
def test_column_convex_iff_pattern_avoiding(n):
    for w in all_permutations(n):
        by_oracle = not (contains_pattern(w.word, (3, 1, 4, 2)) or contains_pattern(w.word, (4, 1, 3, 2)))
        assert avoids_patterns(w) == by_oracle
        assert is_column_convex(rothe_diagram(w)) == by_oracle


def test_column_convex_counts():
    # avoiders of {3142, 4132}: 1, 2, 6, 22, 90, 394
    assert [sum(avoids_patterns(w) for w in all_permutations(n)) for n in range(1, 7)] == [1, 2, 6, 22, 90, 394]


def test_find_pattern_reports_positions():
    pattern, positions = find_pattern(Permutation.parse("53142"))
    word = Permutation.parse("53142").word
    vals = [word[p - 1] for p in positions]
    assert tuple(sorted(vals).index(v) + 1 for v in vals) == pattern
    assert find_pattern(Permutation.parse("256413")) is None


# families and reduction


def test_empty_diagram_family():
    fam = par_family(Diagram(frozenset(), 3))
    assert fam == ParFamily.zero(3)


@pytest.mark.parametrize("k,n", [(1, 1), (1, 3), (2, 3), (3, 3), (2, 4)])
def test_single_column_family(k, n):
    D = Diagram(frozenset((i, 1) for i in range(1, k + 1)), n)
    fam = par_family(D)
    for i in range(1, n + 1):
        assert fam[i].parts == ((1,) * k if i == k else (0,) * i)


def test_par_family_rejects_gaps():
    with pytest.raises(NotColumnConvexError):
        par_family(Diagram(frozenset({(1, 1), (3, 1)}), 3))


def test_family_shapes_have_declared_lengths():
    with pytest.raises(ValueError):
        ParFamily.from_lists([[0], [1]])


@pytest.mark.parametrize("n,m", [(1, 3), (2, 2), (3, 2), (4, 1)])
def test_family_diagram_round_trip(n, m):
    for fam in all_families(n, m):
        D = diagram_from_family(fam)
        assert is_column_convex(D)
        assert par_family(D) == fam


def test_par_family_is_invariant_under_column_order():
    D = rothe_diagram(Permutation.parse("256413"))
    mirrored = Diagram(frozenset((i, 10 - j) for i, j in D.boxes), D.rows)
    assert par_family(mirrored) == par_family(D)


def test_reduce_examples():
    red = reduce_diagram(Diagram(frozenset(), 3))
    assert red.tilde.boxes == frozenset() and red.mu.parts == (0, 0, 0)
    full = Diagram(frozenset((i, 1) for i in range(1, 4)), 3)
    red = reduce_diagram(full)
    assert red.tilde.boxes == frozenset() and red.mu.parts == (1, 1, 1)


def test_reduce_worked_example():
    fam = ParFamily.from_lists([[0], [1, 0], [2, 1, 0]])  # a = b = c = 1
    red = reduce_diagram(diagram_from_family(fam))
    assert red.mu.parts == (0, 0, 0)
    tilde = par_family(red.tilde)
    assert tilde[2].parts == (2, 1) and tilde[1].parts == (1,)


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2)])
def test_mu_formula(n, m):
    # mu_k = sum over i >= k of lambda^(i)_i
    for fam in all_families(n, m):
        mu = reduce_diagram(diagram_from_family(fam)).mu
        assert mu.parts == tuple(sum(fam.lam(i, i) for i in range(k, n + 1)) for k in range(1, n + 1))


# Grassmannian shapes


def test_grassmannian_examples():
    assert grassmannian_shape(Permutation.identity(4)) == Partition.zero(4)
    assert grassmannian_shape(Permutation.parse("132")).parts == (1, 0)
    assert grassmannian_shape(Permutation.parse("3142")) is None


def test_grassmannian_shape_size_is_length():
    for n in range(1, 6):
        for w in all_permutations(n):
            shape = grassmannian_shape(w)
            if shape is not None:
                assert shape.size() == w.length()


# partitions


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((1, -1))
    lam = Partition((3, 1, 0))
    assert lam[1] == 3 and lam[4] == 0
    assert (lam + Partition((1, 1, 1))).parts == (4, 2, 1)
    assert lam.scaled(2).parts == (6, 2, 0)


def test_partitions_in_box_count():
    from math import comb
    for length in range(1, 5):
        for m in range(0, 4):
            assert len(list(partitions_in_box(length, m))) == comb(length + m, m)


@settings(max_examples=60, deadline=None)
@given(st.permutations(list(range(1, 7))))
def test_inverse_property(word):
    w = Permutation(tuple(word))
    assert all(w.inverse()(w(i)) == i for i in range(1, 7))
    assert rothe_diagram(w.inverse()).boxes == {(j, i) for i, j in rothe_diagram(w).boxes}
