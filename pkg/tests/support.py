"""Independent oracles for cross-checking the engine.

Everything here works from the defining formulas using only the raw group
operations (multiply, invert, subgroup membership): double cosets as literal
element sets, left cosets as partitions under h ~ h' iff h^-1 h' in gamma,
convolution straight from its defining sum.  None of it touches the engine's
orbit enumeration, canonical forms, or expansion formulas, so agreement is
meaningful evidence.

Only usable when gamma is small and finite (the permutation and dihedral
pairs); the matrix pairs are instead checked against index formulas.
"""

from __future__ import annotations

import math
from fractions import Fraction

from heckegraph.catalog import generated_subgroup
from heckegraph.core import GroupOracle


def gamma_elements(oracle: GroupOracle, budget: int = 4096) -> frozenset:
    """All of gamma, materialized by closing the generators under products."""
    return generated_subgroup(oracle, (), budget)


def brute_class(oracle: GroupOracle, gammas, g) -> frozenset:
    """The double coset of g as a literal set of elements."""
    return frozenset(
        oracle.multiply(oracle.multiply(a, g), b) for a in gammas for b in gammas
    )


def brute_left_cosets(oracle: GroupOracle, gammas, g) -> list[frozenset]:
    """Partition of the double coset of g into left cosets."""
    remaining = set(brute_class(oracle, gammas, g))
    blocks = []
    while remaining:
        h = remaining.pop()
        block = {oracle.multiply(h, gamma) for gamma in gammas}
        remaining -= block
        blocks.append(frozenset(block))
    return blocks


def brute_l(oracle, gammas, g) -> int:
    return len(brute_left_cosets(oracle, gammas, g))


def brute_r(oracle, gammas, g) -> int:
    return brute_l(oracle, gammas, oracle.invert(g))


def brute_same_class(oracle, gammas, g, h) -> bool:
    return h in brute_class(oracle, gammas, g)


def brute_basis_product(oracle, gammas, a, b) -> dict[frozenset, Fraction]:
    """chi_A * chi_B from the defining convolution sum.

    The coefficient of the class of g is the number of left cosets h*gamma
    inside A with h^-1 g in B.
    """
    class_a = brute_class(oracle, gammas, a)
    class_b = brute_class(oracle, gammas, b)
    coset_reps = [next(iter(block)) for block in brute_left_cosets(oracle, gammas, a)]
    out: dict[frozenset, Fraction] = {}
    seen = set()
    for x in class_a:
        for y in class_b:
            g = oracle.multiply(x, y)
            cls = brute_class(oracle, gammas, g)
            if cls in seen:
                continue
            seen.add(cls)
            count = sum(
                1 for h in coset_reps
                if oracle.multiply(oracle.invert(h), g) in class_b
            )
            if count:
                out[cls] = Fraction(count)
    return out


def brute_involution_of_basis(oracle, gammas, g) -> tuple[frozenset, Fraction]:
    """(class of g^-1, scalar) with star(chi_g) = scalar * chi_{g^-1 class}."""
    g_inv = oracle.invert(g)
    delta = Fraction(brute_l(oracle, gammas, g), brute_r(oracle, gammas, g))
    return brute_class(oracle, gammas, g_inv), delta


# -- formula oracles for the matrix pairs -------------------------------------


def heisenberg_l_value(x: Fraction, y: Fraction) -> int:
    """Index of the stabilizer congruence condition for a unitriangular class.

    Conjugating an integral element by g inserts a*y - b*x into the corner,
    so the index is the order of the subgroup of Q/Z generated by x and y.
    """
    lattice_den = math.lcm(x.denominator, y.denominator)
    gcd_num = math.gcd(
        x.numerator * (lattice_den // x.denominator),
        y.numerator * (lattice_den // y.denominator),
    )
    gcd_num = math.gcd(gcd_num, lattice_den)
    return lattice_den // gcd_num


def affine_l_value(a: Fraction) -> int:
    """Left-coset count of the class of (b, a): the numerator of a."""
    return a.numerator


def congruence_index(p: int, exponent: int) -> int:
    """Index of the level-p^exponent upper congruence subgroup in SL2(Z)."""
    if exponent == 0:
        return 1
    return p ** exponent + p ** (exponent - 1)


def sample_in_region(rel, rng, count: int) -> list[tuple[Fraction, ...]]:
    """Random points of the quadratic region of a relations matrix.

    Mixes guaranteed members (scalings t*z for t in [0,1], which stay in the
    region because t^2 <= t) with rejection-sampled box points, so the sample
    is not confined to the scaling ray.
    """
    from heckegraph.certify import in_region_b

    z = tuple(Fraction(dc.L) for dc in rel.cosets)
    points = []
    attempts = 0
    while len(points) < count and attempts < count * 20:
        attempts += 1
        if rng.random() < 0.5:
            t = Fraction(rng.randint(0, 64), 64)
            candidate = tuple(t * zi for zi in z)
        else:
            candidate = tuple(
                Fraction(rng.randint(0, int(zi * 6) + 2), rng.randint(1, 5))
                for zi in z
            )
        if in_region_b(candidate, rel):
            points.append(candidate)
    while len(points) < count:
        t = Fraction(rng.randint(0, 64), 64)
        points.append(tuple(t * zi for zi in z))
    return points
