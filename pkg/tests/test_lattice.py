import itertools
import random

import pytest

from schubert_lab import lattice
from schubert_lab.combinatorics import Partition
from schubert_lab.gt import gt_system
from schubert_lab.lattice import (
    Constraint, InequalitySystem, LatticePointSet, TrianglePoint, UnboundedSystemError,
    backend_name, enumerate_lattice, set_backend, triangle,
)

HAVE_C = lattice._enum_c is not None


@pytest.fixture(params=["python", "cython"])
def backend(request):
    if request.param == "cython" and not HAVE_C:
        pytest.skip("compiled kernel not built")
    previous = backend_name()
    set_backend(request.param)
    yield request.param
    set_backend(previous)


def brute_force(system: InequalitySystem, lo: int, hi: int) -> set:
    """Oracle: test every point of the cube ``[lo, hi]^nvars``."""
    return {p for p in itertools.product(range(lo, hi + 1), repeat=system.nvars) if system.contains(p)}


def random_system(rng: random.Random, n: int) -> InequalitySystem:
    """Box ``0 <= x <= 3`` plus a few random constraints with small coefficients."""
    size = n * (n + 1) // 2
    cons = [Constraint.make({k: 1}, 0) for k in range(size)]
    cons += [Constraint.make({k: -1}, -3) for k in range(size)]
    for _ in range(rng.randint(1, 4)):
        vars_ = rng.sample(range(size), rng.randint(1, min(3, size)))
        terms = {v: rng.choice([-2, -1, 1, 2]) for v in vars_}
        cons.append(Constraint.make(terms, rng.randint(-4, 4), equality=rng.random() < 0.15))
    return InequalitySystem(n, tuple(cons))


def test_triangle_indexing():
    t = triangle(3)
    assert t.coords == [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    assert t.index(2, 3) == 4
    assert list(t.row(2)) == [3, 4]
    with pytest.raises(KeyError):
        t.index(3, 2)


def test_triangle_point():
    p = TrianglePoint.from_dict(3, {(1, 1): 2, (2, 3): 5})
    assert p[1, 1] == 2 and p[2, 3] == 5 and p.get(4, 4) == 0
    assert p.row_sum(2) == 5 and p.row_sum(4) == 0
    assert p.rows() == [[2, 0, 0], [0, 5], [0]]
    with pytest.raises(ValueError):
        TrianglePoint(2, (1, 2))


def test_constraint_normalization_and_description():
    c = Constraint.make([(0, 1), (0, 1), (2, -1), (1, 0)], 3)
    assert c.coeffs == ((0, 2), (2, -1))
    assert c.describe(2) == "2x11 - x22 >= 3"
    assert Constraint.make({}, 0, equality=True).describe(2) == "0 = 0"


def test_system_rejects_out_of_range():
    with pytest.raises(ValueError):
        InequalitySystem(2, (Constraint.make({5: 1}, 0),))


def test_gt_examples(backend):
    assert len(enumerate_lattice(gt_system(Partition((1, 0))))) == 2
    assert len(enumerate_lattice(gt_system(Partition((2, 1, 0))))) == 8
    assert enumerate_lattice(gt_system(Partition((0, 0, 0)))).points == ((0,) * 6,)


def test_infeasible_system_is_empty(backend):
    sys_ = InequalitySystem(1, (Constraint.make({0: 1}, 0, equality=True), Constraint.make({0: 1}, 1)))
    assert len(enumerate_lattice(sys_)) == 0
    assert enumerate_lattice(sys_, count_only=True) == 0


def test_constant_constraints(backend):
    box = (Constraint.make({0: 1}, 0), Constraint.make({0: -1}, -2))
    ok = InequalitySystem(1, box + (Constraint.make({}, -1),))
    bad = InequalitySystem(1, box + (Constraint.make({}, 1),))
    assert len(enumerate_lattice(ok)) == 3
    assert len(enumerate_lattice(bad)) == 0


def test_unbounded_detected(backend):
    with pytest.raises(UnboundedSystemError, match="x_11"):
        enumerate_lattice(InequalitySystem(1, (Constraint.make({0: 1}, 0),)))


def test_equality_divisibility(backend):
    # 2 x = 3 has no integer solution; 2 x = 4 has one
    for rhs, count in [(3, 0), (4, 1)]:
        sys_ = InequalitySystem(1, (Constraint.make({0: 2}, rhs, equality=True),))
        assert enumerate_lattice(sys_, count_only=True) == count


@pytest.mark.parametrize("seed", range(40))
def test_random_systems_match_brute_force(backend, seed):
    rng = random.Random(seed)
    n = rng.choice([1, 2])
    system = random_system(rng, n)
    got = enumerate_lattice(system)
    assert got.as_set() == brute_force(system, 0, 3)
    assert list(got.points) == sorted(got.points)
    assert enumerate_lattice(system, count_only=True) == len(got)


@pytest.mark.skipif(not HAVE_C, reason="compiled kernel not built")
@pytest.mark.parametrize("seed", range(25))
def test_backends_agree(seed):
    rng = random.Random(1000 + seed)
    system = random_system(rng, 3)
    previous = backend_name()
    try:
        set_backend("python")
        slow = enumerate_lattice(system)
        set_backend("cython")
        fast = enumerate_lattice(system)
    finally:
        set_backend(previous)
    assert slow.points == fast.points


@pytest.mark.skipif(not HAVE_C, reason="compiled kernel not built")
def test_overflow_guard():
    huge = 1 << 41
    system = InequalitySystem(1, (Constraint.make({0: 1}, huge - 1), Constraint.make({0: -1}, -huge)))
    previous = backend_name()
    set_backend("cython")
    try:
        # rhs too large to pack: falls back to Python and still answers exactly
        assert enumerate_lattice(system, count_only=True) == 2
    finally:
        set_backend(previous)
    from schubert_lab import _enum_c
    import numpy as np
    i64 = lambda xs: np.asarray(xs, dtype=np.int64)
    with pytest.raises(OverflowError):
        _enum_c.enumerate_points(
            1, i64([0, 2]), i64([0, 0, 0]), i64([]), i64([]), i64([1, -1]),
            i64([1 << 41, -(1 << 41) - 3]), np.asarray([0, 0], dtype=np.int8), True,
        )


def test_set_backend_validation():
    with pytest.raises(ValueError):
        set_backend("fortran")


def test_lattice_point_set_dedupes_and_sorts():
    s = LatticePointSet(1, ((2,), (1,), (2,)))
    assert s.points == ((1,), (2,))
    assert (2,) in s and TrianglePoint(1, (1,)) in s
    assert s.to_json() == {"n": 1, "points": [[1], [2]]}
