import random
from fractions import Fraction

import pytest

from lipfree import (MetricSpace, PointMap, coproduct, distance_to_set,
                     equilateral_space, is_retraction, path_space, quotient,
                     subspace, validate)
from lipfree.randgen import random_space, random_subset

from helpers import tiny_space


def test_valid_line_has_no_violations():
    assert validate(path_space(2)) == []


def test_triangle_violation_named():
    bad = tiny_space([[0, 1, 3], [1, 0, 1], [3, 1, 0]], labels=("e", "1", "2"))
    assert validate(bad) == ["triangle(e,2 via 1)"]


def test_zero_off_diagonal_is_positivity_violation():
    bad = tiny_space([[0, 1, 1], [1, 0, 0], [1, 0, 0]])
    assert "positivity(1,2)" in validate(bad)


def test_symmetry_and_diagonal_and_labels_reported():
    bad = MetricSpace(("a", "a"), 0, ((1, 2), (3, 0)))
    violations = validate(bad)
    assert any(v.startswith("labels") for v in violations)
    assert "diagonal(a)" in violations
    assert "symmetry(a,a)" in violations


def test_malformed_matrix_rejected():
    with pytest.raises(ValueError):
        MetricSpace(("a", "b"), 0, ((0, 1),))


def test_float_distances_rejected():
    with pytest.raises(TypeError):
        MetricSpace(("a", "b"), 0, ((0, 0.5), (0.5, 0)))


def test_sum_through_base():
    a = tiny_space([[0, 1], [1, 0]], labels=("e", "a"))
    b = tiny_space([[0, 1], [1, 0]], labels=("e", "b"))
    s = coproduct(a, b)
    assert s.points == ("e", "a", "b")
    assert s.d(1, 2) == 2


def test_sum_with_one_point_space_is_identity():
    m = path_space(3)
    s = coproduct(m, MetricSpace(("e",), 0, ((0,),)))
    assert s.points == m.points and s.dist == m.dist and s.base == m.base


def test_sum_formula_with_unequal_legs():
    a = tiny_space([[0, 2], [2, 0]], labels=("e", "a"))
    b = tiny_space([[0, 3], [3, 0]], labels=("e", "b"))
    s = coproduct(a, b)
    assert s.d(1, 2) == 5 and s.d(0, 1) == 2 and s.d(0, 2) == 3


def test_sum_renames_colliding_labels():
    a = tiny_space([[0, 1], [1, 0]], labels=("e", "x"))
    b = tiny_space([[0, 1], [1, 0]], labels=("e", "x"))
    s = coproduct(a, b)
    assert s.points == ("e", "x", "x'")
    assert validate(s) == []


def test_quotient_of_line_prefix():
    line = path_space(3)
    q, qmap = quotient(line, [0, 1])
    assert q.points == ("[0|1]", "[2]", "[3]")
    assert q.base == 0
    assert q.d(1, 2) == 1  # min(1, 1 + 2)
    assert q.d(0, 1) == 1 and q.d(0, 2) == 2
    assert qmap.image == (0, 0, 1, 2)
    assert qmap.lipschitz <= 1 and qmap.base_preserving


def test_quotient_singleton_is_isometric():
    line = path_space(3)
    q, _ = quotient(line, [2])
    assert q.dist == line.dist


def test_quotient_of_everything_collapses():
    line = path_space(3)
    q, qmap = quotient(line, range(4), collapsed_label="all")
    assert q.points == ("all",) and q.dist == ((Fraction(0),),)
    assert qmap.lipschitz == 0


def test_quotient_base_inside_collapse_moves_base():
    line = path_space(3, base=2)
    q, _ = quotient(line, [1, 2])
    assert q.points[q.base] == "[1|2]"


def test_quotient_rejects_empty():
    with pytest.raises(ValueError):
        quotient(path_space(2), [])


def test_subspace_examples():
    line = path_space(3)
    assert subspace(line, range(4)).dist == line.dist
    two = subspace(line, [0, 2])
    assert two.points == ("0", "2") and two.d(0, 1) == 2
    single = subspace(line, [0])
    assert single.n == 1


def test_subspace_requires_base():
    with pytest.raises(ValueError):
        subspace(path_space(3), [1, 2])


def test_distance_to_set():
    line = path_space(3)
    assert distance_to_set(line, 3, [0, 1]) == 2
    assert distance_to_set(line, 1, [1, 2]) == 0
    eq = equilateral_space(4)
    assert distance_to_set(eq, 3, [0, 1]) == 1
    with pytest.raises(ValueError):
        distance_to_set(line, 0, [])


def test_retraction_detection():
    line = path_space(2)
    clamp = PointMap.create(line, line, (0, 1, 1))
    assert is_retraction(clamp) and clamp.lipschitz == 1
    shift = PointMap.create(line, line, (1, 2, 2))
    assert not is_retraction(shift)


def test_pointmap_lipschitz_value():
    line = path_space(2)
    squash = PointMap.create(line, line, (0, 0, 1))
    # pairs: d(f0,f1)/d(0,1) = 0, d(f0,f2)/2 = 1/2, d(f1,f2)/1 = 1
    assert squash.lipschitz == 1


def test_random_quotients_stay_valid():
    rng = random.Random(11)
    for _ in range(60):
        space = random_space(rng, rng.randint(2, 8))
        assert validate(space) == []
        q, qmap = quotient(space, random_subset(rng, space))
        assert validate(q) == []
        assert qmap.lipschitz <= 1


def test_sum_associative_up_to_relabeling():
    rng = random.Random(12)
    for _ in range(25):
        a = random_space(rng, rng.randint(1, 5))
        b = random_space(rng, rng.randint(1, 5))
        c = random_space(rng, rng.randint(1, 5))
        left = coproduct(coproduct(a, b), c)
        right = coproduct(a, coproduct(b, c))
        assert left.dist == right.dist and left.base == right.base


def test_random_subspaces_stay_valid():
    rng = random.Random(13)
    for _ in range(40):
        space = random_space(rng, rng.randint(2, 8))
        keep = sorted(set(random_subset(rng, space)) | {space.base})
        assert validate(subspace(space, keep)) == []
