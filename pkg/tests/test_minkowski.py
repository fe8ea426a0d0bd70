import itertools
import random

import pytest

from schubert_lab.combinatorics import (
    Diagram, NotColumnConvexError, ParFamily, Partition, Permutation, all_families,
    all_permutations, grassmannian_shape, is_column_convex, rothe_diagram,
)
from schubert_lab.gt import gt_points, schur
from schubert_lab.lattice import Constraint, InequalitySystem, TrianglePoint, enumerate_lattice, triangle
from schubert_lab.minkowski import (
    Parallelepiped, ParapolytopeViolation, ZigzagSequence, embed, embed_points, fiber_box,
    minkowski_oracle, p_d_points, q_system, slice_system, verify_theorem1, zigzag_sequences,
)
from schubert_lab.poly import schubert


def zigzag_functional(i, j, fam):
    """Oracle for the left and right sides; accepts weakly interleaved sequences too."""
    n = fam.n
    lhs = {}
    for s in range(len(i)):
        key = (j[s] - i[s], j[s])
        lhs[key] = lhs.get(key, 0) + 1
    for s in range(len(i) - 1):
        key = (j[s + 1] - i[s], j[s + 1])
        lhs[key] = lhs.get(key, 0) - 1
    rhs = sum(fam.lam(n - s, j[0] - s) for s in range(i[-1] + 1))
    return lhs, rhs


def test_embed_examples():
    p = TrianglePoint(1, (7,))
    assert embed(1, 3, p) == TrianglePoint.from_dict(3, {(1, 3): 7})
    q = TrianglePoint(3, (1, 2, 3, 4, 5, 6))
    assert embed(3, 3, q) == q
    assert embed(2, 4, TrianglePoint.zero(2)) == TrianglePoint.zero(4)
    with pytest.raises(ValueError):
        embed(3, 2, q)
    with pytest.raises(ValueError):
        embed_points(3, 2, gt_points(Partition((1, 0, 0))))


def test_zigzag_small_cases():
    assert zigzag_sequences(1) == [ZigzagSequence((0,), (1,))]
    z = ZigzagSequence((1, 0), (2, 3))
    assert z in zigzag_sequences(3)
    assert z.lhs() == {(1, 2): 1, (3, 3): 1, (2, 3): -1}
    with pytest.raises(ValueError):
        ZigzagSequence((0, 1), (2, 3))
    with pytest.raises(ValueError):
        zigzag_sequences(0)


@pytest.mark.parametrize("n", range(1, 7))
def test_zigzag_count_and_invariant(n):
    seqs = zigzag_sequences(n)
    assert len(seqs) == 2 ** n - 1  # nonempty even-size subsets of {0..n}
    assert len(set(seqs)) == len(seqs)
    for z in seqs:
        chain = tuple(reversed(z.i)) + z.j
        assert all(a < b for a, b in zip(chain, chain[1:])) and chain[0] >= 0 and chain[-1] <= n


@pytest.mark.parametrize("n", range(1, 6))
def test_no_zigzag_couples_a_row(n):
    for z in zigzag_sequences(n):
        rows = [r for r, _ in z.lhs()]
        assert len(rows) == len(set(rows))


def test_three_row_system_contents():
    fam = ParFamily.from_lists([[5], [7, 3], [11, 2, 1]])
    t = triangle(3)
    cons = set(q_system(fam).constraints)
    x = lambda i, j: t.index(i, j)
    assert Constraint.make({x(1, 1): 1}, 11, equality=True) in cons
    assert Constraint.make({x(1, 2): 1}, 7 + 2, equality=True) in cons
    assert Constraint.make({x(1, 3): 1}, 5 + 3 + 1, equality=True) in cons
    assert Constraint.make({x(2, 2): 1}, 2) in cons
    assert Constraint.make({x(2, 3): 1}, 3 + 1) in cons
    assert Constraint.make({x(3, 3): 1}, 1) in cons
    assert Constraint.make({x(1, 2): 1, x(2, 3): -1, x(3, 3): 1}, 2) in cons


def test_zero_family_is_origin():
    for n in range(1, 5):
        assert p_d_points(ParFamily.zero(n)).points == ((0,) * (n * (n + 1) // 2),)


@pytest.mark.parametrize("n,m", [(1, 3), (2, 3), (3, 2)])
def test_zigzag_system_equals_sumset(n, m):
    for fam in all_families(n, m):
        assert p_d_points(fam).as_set() == minkowski_oracle(fam).as_set()


def test_zigzag_system_random_n5():
    rng = random.Random(5)
    for _ in range(6):
        fam = ParFamily.from_lists(
            [sorted((rng.randint(0, 2) for _ in range(i)), reverse=True) for i in range(1, 6)]
        )
        assert p_d_points(fam).as_set() == minkowski_oracle(fam).as_set()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weak_sequences_are_redundant(n):
    # adding the inequalities of weakly interleaved sequences never changes the lattice set
    t = triangle(n)
    rng = random.Random(n)
    fams = list(all_families(n, 2))
    for fam in rng.sample(fams, min(30, len(fams))):
        extra = []
        for k in range(2, 4):
            for i in itertools.combinations_with_replacement(range(n + 1), k):
                for j in itertools.combinations_with_replacement(range(n + 1), k):
                    iw, jw = tuple(reversed(i)), j
                    if iw[0] >= jw[0]:
                        continue
                    lhs, rhs = zigzag_functional(iw, jw, fam)
                    extra.append(Constraint.make({t.index(*c): v for c, v in lhs.items()}, rhs))
        base = q_system(fam)
        assert enumerate_lattice(base.with_constraints(extra)).as_set() == enumerate_lattice(base).as_set()


def test_rhs_matches_oracle():
    fam = ParFamily.from_lists([[1], [2, 1], [3, 2, 0], [3, 3, 1, 0]])
    for z in zigzag_sequences(4):
        assert (z.lhs(), z.rhs(fam)) == zigzag_functional(z.i, z.j, fam)


# slices and fibers


def test_slice_rejects_first_row_boxes():
    fam = ParFamily.from_lists([[1], [0, 0], [0, 0, 0]])
    with pytest.raises(ValueError):
        slice_system(fam, 1)
    good = ParFamily.from_lists([[0], [1, 0], [1, 1, 0]])
    with pytest.raises(ValueError):
        slice_system(good, 4)


def test_slice_accepts_diagrams():
    D = Diagram(frozenset({(2, 1), (3, 1), (3, 2)}), 3)
    from schubert_lab.combinatorics import par_family
    assert slice_system(D, 2) == slice_system(par_family(D), 2)


def test_slices_are_nested_projections():
    fam = ParFamily.from_lists([[0], [2, 0], [2, 1, 0]])
    n = fam.n
    t = triangle(n)
    sets = {m: enumerate_lattice(slice_system(fam, m)).as_set() for m in range(1, n + 1)}
    for m in range(2, n + 1):
        zeroed = set()
        for p in sets[m - 1]:
            q = list(p)
            for i in range(1, m + 1):
                q[t.index(i, n)] = 0
            zeroed.add(tuple(q))
        assert zeroed == sets[m]
        assert sets[m] <= sets[m - 1]


def test_gt_fibers_are_boxes():
    from schubert_lab.gt import gt_system
    lam = Partition((3, 1, 0))
    sys_ = gt_system(lam)
    pts = gt_points(lam)
    for p in pts.triangle_points():
        for k in (2, 3):
            box = fiber_box(sys_, k, p)
            assert box is not None
            row = [p[k, j] for j in range(k, 4)]
            assert all(lo <= v <= hi for lo, v, hi in zip(box.lower, row, box.upper))
            # every point of the box lies in the polytope
            for vals in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(box.lower, box.upper)]):
                q = dict(((i, j), p[i, j]) for i, j in triangle(3).coords)
                q.update({(k, j): v for j, v in zip(range(k, 4), vals)})
                assert TrianglePoint.from_dict(3, q).values in pts


def test_fiber_empty_and_violation_signals():
    from schubert_lab.gt import gt_system
    sys_ = gt_system(Partition((1, 0)))
    assert fiber_box(sys_, 1, {(2, 2): 0}) == Parallelepiped(1, (1, 0), (1, 0))
    assert fiber_box(sys_, 1, {(2, 2): 5}) is None  # x22 must lie between the pinned 1 and 0
    coupled = InequalitySystem(2, (Constraint.make({0: 1, 1: 1}, 0),))
    with pytest.raises(ParapolytopeViolation):
        fiber_box(coupled, 1, {(2, 2): 0})


def test_parallelepiped():
    assert Parallelepiped(2, (0, 1), (2, 1)).count() == 3
    with pytest.raises(ValueError):
        Parallelepiped(2, (2,), (1,))


# the main comparison


def test_identity_gives_one():
    for n in range(1, 5):
        rep = verify_theorem1(Permutation.identity(n))
        assert rep.ok and rep.lattice_count == 1 and rep.schubert == 1


def test_all_column_convex_s4():
    for w in all_permutations(4):
        if is_column_convex(rothe_diagram(w)):
            rep = verify_theorem1(w)
            assert rep.ok, rep.to_json()


def test_worked_example_permutation():
    w = Permutation.parse("256413")
    rep = verify_theorem1(w)
    assert rep.ok
    assert rep.lattice_count == sum(schubert(w).terms.values())


def test_non_convex_rejected_with_pattern():
    with pytest.raises(NotColumnConvexError, match="3142 at positions"):
        verify_theorem1(Permutation.parse("3142"))
    with pytest.raises(NotColumnConvexError, match="4132"):
        verify_theorem1(Permutation.parse("4132"))


def test_grassmannian_reproduces_schur():
    for n in range(2, 6):
        for w in all_permutations(n):
            shape = grassmannian_shape(w)
            if shape is None:
                continue
            rep = verify_theorem1(w)
            assert rep.grassmannian_match
            assert rep.polytope_side == schur(shape).extend(n)


def test_report_json_keys():
    rep = verify_theorem1(Permutation.parse("132")).to_json()
    assert {"w", "columnConvex", "latticeCount", "equalSchubert", "equalCharacter", "millis"} <= rep.keys()
    assert "schubert" not in rep  # polynomials are attached only on mismatch
