import itertools
import random
from fractions import Fraction

import pytest

from lipfree import (FreeVector, delta, four_point_norm, free_norm_dual,
                     free_norm_flow, graev_distance, lipschitz_number,
                     molecule, pairing, path_space, support)
from lipfree.randgen import random_direction, random_space, random_vector

from helpers import brute_force_free_norm, tiny_space


def test_delta_of_base_is_zero():
    line = path_space(2)
    assert delta(line, 0).is_zero()
    assert (delta(line, 1) - delta(line, 1)).is_zero()


def test_delta_norm_is_distance_to_base():
    two = tiny_space([[0, 2], [2, 0]], labels=("e", "a"))
    assert free_norm_dual(delta(two, 1))[0] == 2


def test_canonicalization_merges_and_drops():
    line = path_space(2)
    vec = FreeVector(line, ((1, 3), (2, 1), (2, -1), (0, 5)))
    assert vec.as_dict() == {1: Fraction(3)}
    assert support(vec) == {1}
    assert support(FreeVector.zero(line)) == set()
    assert support(delta(line, 1) - delta(line, 2)) == {1, 2}


def test_molecule_norm_one():
    rng = random.Random(31)
    for _ in range(25):
        space = random_space(rng, rng.randint(2, 6))
        x, y = rng.sample(range(space.n), 2)
        assert free_norm_dual(molecule(space, x, y))[0] == 1


def test_molecule_rejects_equal_endpoints():
    with pytest.raises(ValueError):
        molecule(path_space(2), 1, 1)


def test_molecule_canonical_form():
    line = path_space(2)
    assert molecule(line, 2, 1).as_dict() == {2: 1, 1: -1}
    # against the base point: just the rescaled evaluation
    assert molecule(line, 2, 0).as_dict() == {2: Fraction(1, 2)}


def test_line_examples_frozen():
    line = path_space(2)
    assert free_norm_dual(delta(line, 1) - delta(line, 2))[0] == 1
    assert free_norm_dual(delta(line, 1) + delta(line, 2))[0] == 3
    line3 = path_space(3)
    mixed = delta(line3, 1) - delta(line3, 2) + delta(line3, 3)
    assert free_norm_dual(mixed)[0] == 2
    assert free_norm_flow(mixed)[0] == 2


def test_flow_certificate_structure():
    two = tiny_space([[0, 1], [1, 0]], labels=("e", "a"))
    value, plan = free_norm_flow(2 * delta(two, 1))
    assert value == 2
    assert plan.edges == ((1, 0, Fraction(2)),)
    assert plan.divergence() == {1: Fraction(2), 0: Fraction(-2)}


def test_dual_certificate_attains_value():
    rng = random.Random(32)
    for _ in range(60):
        space = random_space(rng, rng.randint(2, 8))
        vec = random_vector(rng, space, integral=False)
        value, opt = free_norm_dual(vec)
        assert pairing(vec, opt) == value
        assert lipschitz_number(opt) <= 1
        assert opt.values[space.base] == 0


def test_both_solvers_match_brute_force():
    rng = random.Random(33)
    for _ in range(40):
        space = random_space(rng, rng.randint(2, 4))
        vec = random_vector(rng, space, integral=False)
        expected = brute_force_free_norm(space, vec)
        assert free_norm_dual(vec)[0] == expected
        assert free_norm_flow(vec)[0] == expected


def test_strong_duality_random():
    rng = random.Random(34)
    for _ in range(150):
        space = random_space(rng, rng.randint(2, 10))
        vec = random_vector(rng, space)
        assert free_norm_dual(vec)[0] == free_norm_flow(vec)[0]


def test_flow_divergence_matches_vector():
    rng = random.Random(35)
    for _ in range(60):
        space = random_space(rng, rng.randint(2, 9))
        vec = random_vector(rng, space, integral=False)
        cost, plan = free_norm_flow(vec)
        wanted = vec.as_dict()
        total = sum(wanted.values(), Fraction(0))
        if total != 0:
            wanted[space.base] = -total
        assert plan.divergence() == wanted
        assert sum((a * space.d(s, t) for s, t, a in plan.edges),
                   Fraction(0)) == cost


def test_four_point_examples():
    line = path_space(3)
    assert four_point_norm(line, 1, 2, 3, 0) == 2
    assert four_point_norm(line, 1, 1, 3, 3) == 0
    assert four_point_norm(line, 1, 2, 2, 1) == 0


def test_four_point_matches_dual_exhaustively_small():
    rng = random.Random(36)
    for _ in range(6):
        space = random_space(rng, rng.randint(2, 4))
        for a, b, c, d in itertools.product(range(space.n), repeat=4):
            vec = (delta(space, a) - delta(space, b)
                   + delta(space, c) - delta(space, d))
            assert four_point_norm(space, a, b, c, d) == \
                free_norm_dual(vec)[0]


def test_norm_axioms_random():
    rng = random.Random(37)
    for _ in range(60):
        space = random_space(rng, rng.randint(2, 8))
        u = random_vector(rng, space, integral=False)
        v = random_vector(rng, space, integral=False)
        t = Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3)))
        nu = free_norm_flow(u)[0]
        assert free_norm_flow(t * u)[0] == abs(t) * nu
        assert free_norm_flow(u + v)[0] <= nu + free_norm_flow(v)[0]
        assert (nu == 0) == u.is_zero()


def test_isometry_random():
    rng = random.Random(38)
    for _ in range(30):
        space = random_space(rng, rng.randint(2, 8))
        for x, y in space.pairs():
            vec = delta(space, x) - delta(space, y)
            assert free_norm_dual(vec)[0] == space.d(x, y)


def test_graev_examples():
    line = path_space(2)
    assert graev_distance(delta(line, 1), delta(line, 2)) == 1
    assert graev_distance(delta(line, 1), delta(line, 1)) == 0
    assert graev_distance(2 * delta(line, 1), delta(line, 2)) == 2


def test_graev_rejects_fractions():
    line = path_space(2)
    with pytest.raises(ValueError):
        graev_distance(Fraction(1, 2) * delta(line, 1), delta(line, 2))


def test_zero_vector_norms():
    line = path_space(2)
    zero = FreeVector.zero(line)
    value, opt = free_norm_dual(zero)
    assert value == 0 and set(opt.values) == {0}
    cost, plan = free_norm_flow(zero)
    assert cost == 0 and plan.edges == ()


def test_direction_sampling_duality():
    # unit-sphere points never pair above their norm, and scaled directions
    # land exactly on the sphere
    rng = random.Random(39)
    for _ in range(20):
        space = random_space(rng, rng.randint(2, 6))
        vec = random_direction(rng, space)
        norm = free_norm_dual(vec)[0]
        if norm == 0:
            continue
        unit = (1 / norm) * vec
        assert free_norm_dual(unit)[0] == 1
