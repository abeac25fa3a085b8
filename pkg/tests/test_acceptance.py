"""End-to-end acceptance battery.

Each test is one gate: it runs its full randomized load at exact rational
tolerance (zero: equalities must hold on the nose), checks the stated runtime
budget, and prints a one-line PASS verdict.  Run with `pytest -s
tests/test_acceptance.py` to see the lines.
"""

import itertools
import random
import time
from fractions import Fraction

from lipfree import (FreeVector, LinearWitness, apply, delta,
                     discrete_witness, doubling_constant, equilateral_space,
                     four_point_norm, free_norm_dual, free_norm_flow,
                     lipschitz_number, normalize_basis, operator_norm,
                     operator_norm_oracle, path_space, projection_split,
                     pullback, quotient_witness, separating_function, support,
                     uniform_discreteness, validate_witness)
from lipfree.lipschitz import pairing
from lipfree.randgen import (random_direction, random_lip_function,
                             random_projection_map, random_retraction,
                             random_space, random_vector)


def _verdict(name, budget, started, details):
    elapsed = time.time() - started
    print(f"ACCEPTANCE {name}: PASS ({details}, {elapsed:.1f}s"
          f" < {budget:.0f}s)")
    assert elapsed < budget, f"{name} exceeded its {budget}s budget"


def test_isometry_embedding():
    started = time.time()
    rng = random.Random(1001)
    pairs = 0
    for _ in range(200):
        space = random_space(rng, rng.randint(2, 8))
        for x, y in space.pairs():
            vec = delta(space, x) - delta(space, y)
            assert free_norm_dual(vec)[0] == space.d(x, y)
            pairs += 1
    _verdict("isometry", 30, started, f"200 spaces, {pairs} pairs exact")


def test_four_point_formula():
    started = time.time()
    rng = random.Random(1002)
    tuples = 0
    for _ in range(50):
        space = random_space(rng, rng.randint(2, 6))
        cache = {}
        for a, b, c, d in itertools.product(range(space.n), repeat=4):
            vec = (delta(space, a) - delta(space, b)
                   + delta(space, c) - delta(space, d))
            key = vec.coeffs
            if key not in cache:
                cache[key] = free_norm_dual(vec)[0]
            assert four_point_norm(space, a, b, c, d) == cache[key]
            tuples += 1
    _verdict("four_point", 60, started, f"50 spaces, {tuples} tuples exact")


def test_strong_duality():
    started = time.time()
    rng = random.Random(1003)
    for _ in range(500):
        space = random_space(rng, rng.randint(2, 10))
        vec = random_vector(rng, space, max_coeff=5)
        assert vec.is_integral()
        assert free_norm_dual(vec)[0] == free_norm_flow(vec)[0]
    _verdict("strong_duality", 60, started, "500 vectors exact")


def test_quotient_witnesses():
    started = time.time()
    rng = random.Random(1004)
    for _ in range(50):
        space = random_space(rng, rng.randint(2, 8))
        retraction = random_retraction(rng, space)
        witness = quotient_witness(space, retraction)
        report = validate_witness(witness)
        assert report.invertible
        for _ in range(20):
            vec = random_vector(rng, space, integral=False)
            assert apply(report.inverse, apply(witness, vec)) == vec
        bound_factor = retraction.lipschitz + 1
        for _ in range(20):
            f = random_lip_function(rng, witness.target)
            g = pullback(witness, f)
            assert lipschitz_number(g) <= lipschitz_number(f) * bound_factor
    _verdict("quotient_witness", 120, started,
             "50 retractions, 20 vectors + 20 functions each")


def test_projection_split():
    started = time.time()
    rng = random.Random(1005)
    functions = 0
    while functions < 50:
        space = random_space(rng, rng.randint(2, 7))
        nb = space.non_base()
        pi_map = random_projection_map(rng, len(nb))
        split = projection_split(
            space, [None if t is None else delta(space, nb[t])
                    for t in pi_map])
        # full rank and spanning: as many independent vectors as dimensions
        rows = [[vec.coeff(x) for x in nb] for vec in split.basis]
        from lipfree.linalg import rank
        assert len(split.basis) == len(nb)
        assert rank(rows) == len(nb)
        assert validate_witness(split.witness).invertible
        stretch = split.projector_norm + split.complement_norm
        for _ in range(5):
            f = random_lip_function(rng, split.witness.target)
            g = pullback(split.witness, f)
            assert lipschitz_number(g) <= lipschitz_number(f) * stretch
            functions += 1
    _verdict("projection_split", 120, started,
             f"{functions} extension-bound checks exact")


def test_normalization():
    started = time.time()
    rng = random.Random(1006)
    for _ in range(50):
        space = random_space(rng, rng.randint(2, 8))
        scaled, witness = normalize_basis(space)
        for vec in scaled:
            assert free_norm_dual(vec)[0] == 1
        assert len(set(scaled)) == len(scaled)  # injective
        report = validate_witness(witness)
        assert report.invertible
        assert report.condition is not None and report.condition > 0
    _verdict("normalization", 120, started,
             "50 spaces, unit norms exact, conditions finite")


def test_operator_norm_oracle():
    started = time.time()
    rng = random.Random(1007)
    checked = 0
    for _ in range(12):
        space = random_space(rng, rng.randint(2, 6))
        doubled = tuple(2 * delta(space, x) for x in space.non_base())
        nb = space.non_base()
        pi_map = random_projection_map(rng, len(nb))
        witnesses = [
            LinearWitness.identity(space),
            LinearWitness(space, space, doubled),
            quotient_witness(space, random_retraction(rng, space)),
            normalize_basis(space)[1],
            discrete_witness(space).witness,
            projection_split(
                space, [None if t is None else delta(space, nb[t])
                        for t in pi_map]).witness,
        ]
        for witness in witnesses:
            directions = [random_direction(rng, witness.source)
                          for _ in range(25)]
            assert operator_norm(witness) == \
                operator_norm_oracle(witness, directions)
            checked += 1
    _verdict("operator_norm_oracle", 120, started,
             f"{checked} witnesses, molecule max == LP oracle exactly")


def test_doubling_divergence():
    started = time.time()
    conditions = []
    for n in (4, 8, 16, 32):
        path_report = doubling_constant(path_space(n), exact_threshold=20)
        assert path_report.doubling_max <= 3

        flat = equilateral_space(n)
        flat_report = doubling_constant(flat, exact_threshold=20)
        assert flat_report.doubling_max == n

        disc = uniform_discreteness(flat)
        data = discrete_witness(flat)
        assert validate_witness(data.witness).invertible
        assert data.condition is not None
        assert data.condition <= 2 * disc.ratio
        conditions.append(data.condition)
    # measured conditioning stays bounded as the family grows
    assert max(conditions) <= 2
    _verdict("doubling_divergence", 120, started,
             f"paths <= 3, equilateral == n, conditions {conditions}")


def test_support_and_separation():
    started = time.time()
    rng = random.Random(1009)
    for _ in range(200):
        space = random_space(rng, rng.randint(2, 8))
        candidates = [x for x in range(space.n) if x != space.base]
        x = rng.choice(candidates)
        blocked = [a for a in range(space.n)
                   if a not in (x, space.base) and rng.random() < 0.4]
        f = separating_function(space, blocked, x)
        anchors = set(blocked) | {space.base}
        scale = min(space.d(x, a) for a in anchors)
        assert f.values[x] == 1
        assert all(f.values[a] == 0 for a in anchors)
        assert lipschitz_number(f) == 1 / scale

        vec = random_vector(rng, space, integral=False)
        assert support(vec) == {i for i, v in vec.as_dict().items() if v != 0}
        assert all(v != 0 for v in vec.as_dict().values())
    _verdict("support_separation", 120, started,
             "200 separating triples + supports exact")


def test_certificates_agree_with_norms():
    # certificate consistency across both solver routes
    started = time.time()
    rng = random.Random(1010)
    for _ in range(100):
        space = random_space(rng, rng.randint(2, 8))
        vec = random_vector(rng, space, integral=False)
        value, opt = free_norm_dual(vec)
        assert pairing(vec, opt) == value and lipschitz_number(opt) <= 1
        cost, plan = free_norm_flow(vec)
        assert cost == value
        wanted = vec.as_dict()
        total = sum(wanted.values(), Fraction(0))
        if total != 0:
            wanted[space.base] = -total
        assert plan.divergence() == wanted
    _verdict("certificates", 60, started, "100 certificate pairs exact")
