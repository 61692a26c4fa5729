"""Iterated-commutator probes, family tests, and pair restriction.

Every vertex at depth n of a successor closure admits a representative that
is an n-fold iterated commutator of the root against subgroup elements; this
module makes that constructive (:func:`witness_sequence`) and builds the
sampling probes that exploit it: stairway descent along a subnormal chain,
stabilization of commutator chains, the directedness index test, the
quadratic basis relation, and a protonormality falsifier.

Probes that sample are seeded and embed their seed in the report, so runs
are reproducible; a probe can falsify a property but never prove it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Optional, Sequence

from .algebra import HeckeAlgebra
from .core import (DoubleCoset, Element, GroupOracle, HeckeError, HeckePair,
                   random_gamma_word)

DEFAULT_SEED = 0xC05E7  # fixed default so byte-identical reruns need no flags
DEFAULT_WORD_LENGTH = 8


class NotInGamma(HeckeError):
    def __init__(self, index: int, text: str):
        self.index = index
        super().__init__(f"element #{index} is not in the subgroup: {text}")


class NotASuccessorPath(HeckeError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"path step {index} is not a successor of step {index - 1}")


class GammaNotContained(HeckeError):
    pass


# -- iterated commutators ----------------------------------------------------


def iterated_commutator(oracle: GroupOracle, g: Element,
                        gammas: Sequence[Element]) -> Element:
    """Left-nested commutator of g against subgroup elements.

    [g, a] = g^-1 a^-1 g a, and [g, a, b] = [[g, a], b], and so on.  Every
    entry of ``gammas`` must pass the subgroup membership test.
    """
    for i, gamma in enumerate(gammas):
        if not oracle.gamma_contains(gamma):
            raise NotInGamma(i, oracle.format_element(gamma))
    x = g
    for gamma in gammas:
        x = oracle.commutator(x, gamma)
    return x


def witness_sequence(algebra: HeckeAlgebra, path: Sequence[DoubleCoset]) -> list[Element]:
    """Subgroup elements realizing a successor path as commutator classes.

    Given path[0] -> path[1] -> ... with each step a successor of the one
    before, returns gammas such that the double coset of
    [path[0].rep, gamma_1, ..., gamma_i] is path[i] for every i >= 1.  The
    search walks the same coset enumeration that defines the successors and
    inverts the witness it finds at each step.
    """
    if not path:
        raise ValueError("empty path")
    pair = algebra.pair
    o = pair.oracle
    x = path[0].rep
    gammas: list[Element] = []
    for i in range(1, len(path)):
        target = path[i]
        hit = None
        for _, gamma_w in pair.left_cosets_with_witnesses(x):
            candidate = o.invert(gamma_w)
            stepped = o.commutator(x, candidate)
            if pair.same_double_coset(stepped, target.rep):
                hit = (candidate, stepped)
                break
        if hit is None:
            raise NotASuccessorPath(i)
        gammas.append(hit[0])
        x = hit[1]
    return gammas


# -- subnormal chains ----------------------------------------------------------


@dataclass(frozen=True)
class ChainLevel:
    """One subgroup in a descending chain, given by a membership predicate."""

    name: str
    contains: Callable[[Element], bool]
    sampler: Optional[Callable[[Random], Element]] = None
    declared_normal: bool = True  # next level is declared normal in this one


@dataclass(frozen=True)
class SubnormalChain:
    """Descending chain G = H_0 >= H_1 >= ... >= H_n = gamma of membership oracles."""

    levels: tuple[ChainLevel, ...]

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    def validate(self, oracle: GroupOracle, rng: Random, samples: int = 50) -> list[str]:
        """Sample-check declared properties; returns a list of failures."""
        problems: list[str] = []
        e = oracle.identity
        for level in self.levels:
            if not level.contains(e):
                problems.append(f"identity not in {level.name}")
        for _ in range(samples):
            gamma = random_gamma_word(oracle, rng)
            if not self.levels[-1].contains(gamma):
                problems.append("bottom level disagrees with gamma membership")
                break
        for upper, lower in zip(self.levels, self.levels[1:]):
            if upper.sampler is None or lower.sampler is None:
                continue
            for _ in range(samples):
                h = upper.sampler(rng)
                x = lower.sampler(rng)
                if not upper.contains(h) or not lower.contains(x):
                    problems.append(f"sampler escaped its level ({upper.name}/{lower.name})")
                    break
                if not lower.contains(oracle.conjugate(x, h)):
                    problems.append(
                        f"{lower.name} not normal in {upper.name} at sampled pair")
                    break
        return problems


@dataclass
class ProbeReport:
    test: str
    input: str
    verdict: str
    samples: int
    seed: int
    counterexample: Optional[dict] = None
    detail: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        doc = {
            "test": self.test,
            "input": self.input,
            "verdict": self.verdict,
            "samples": self.samples,
            "seed": self.seed,
        }
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        if self.detail:
            doc["detail"] = self.detail
        return doc

    @property
    def passed(self) -> bool:
        return self.verdict in ("pass", "no_counterexample")


def chain_condition_b(pair: HeckePair, g: Element, chain: SubnormalChain,
                      samples: int = 200, seed: int = DEFAULT_SEED,
                      word_length: int = DEFAULT_WORD_LENGTH) -> ProbeReport:
    """Stairway check along a chain: [g, gamma_1, ..., gamma_k] lands in H_k.

    Draws random gamma sequences of the chain length and verifies the descent
    level by level; a failure is reported with the offending sequence, never
    raised.
    """
    o = pair.oracle
    rng = Random(seed)
    n = chain.length
    for sample in range(samples):
        gammas = [random_gamma_word(o, rng, word_length) for _ in range(n)]
        x = g
        for k, gamma in enumerate(gammas, start=1):
            x = o.commutator(x, gamma)
            if not chain.levels[k].contains(x):
                return ProbeReport(
                    test="chain_condition_b",
                    input=o.format_element(g),
                    verdict="fail",
                    samples=sample + 1,
                    seed=seed,
                    counterexample={
                        "gammas": [o.format_element(w) for w in gammas],
                        "level": chain.levels[k].name,
                        "depth": k,
                        "element": o.format_element(x),
                    },
                )
    return ProbeReport(test="chain_condition_b", input=o.format_element(g),
                       verdict="pass", samples=samples, seed=seed,
                       detail={"chain_length": n})


def stabilization_probe(pair: HeckePair, g: Element, samples: int = 100,
                        horizon: int = 6, seed: int = DEFAULT_SEED,
                        word_length: int = DEFAULT_WORD_LENGTH) -> ProbeReport:
    """Track double cosets of iterated commutators along random sequences.

    Reports whether every sampled sequence collapsed into the subgroup within
    the horizon, the maximum depth needed, and how many distinct double
    cosets were met.  Collapse evidence is consistent with (not proof of) a
    finite closure.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    o = pair.oracle
    rng = Random(seed)
    seen_keys = set()
    all_collapsed = True
    max_depth = 0
    for _ in range(samples):
        x = g
        collapsed_at = None
        for k in range(1, horizon + 1):
            gamma = random_gamma_word(o, rng, word_length)
            x = o.commutator(x, gamma)
            seen_keys.add(pair.double_coset(x).key)
            if o.gamma_contains(x):
                collapsed_at = k
                break
        if collapsed_at is None:
            all_collapsed = False
        else:
            max_depth = max(max_depth, collapsed_at)
    verdict = "collapsed" if all_collapsed else "not_collapsed"
    return ProbeReport(
        test="stabilization_probe", input=o.format_element(g), verdict=verdict,
        samples=samples, seed=seed,
        detail={"horizon": horizon, "max_collapse_depth": max_depth,
                "distinct_cosets": len(seen_keys)},
    )


# -- family tests --------------------------------------------------------------


@dataclass
class DirectednessReport:
    """Coset-counting directedness test for a single element.

    ``r_value == 1`` is equivalent to the subgroup being contained in
    t^-1 gamma t, i.e. it certifies the containment for the inverse
    orientation; ``l_value == 1`` certifies gamma inside t gamma t^-1.  The
    report names the containment it verified instead of silently choosing an
    orientation.
    """

    element: str
    l_value: int
    r_value: int

    @property
    def r_is_one(self) -> bool:
        return self.r_value == 1

    @property
    def l_is_one(self) -> bool:
        return self.l_value == 1

    def __bool__(self) -> bool:
        return self.r_is_one

    def to_json_dict(self) -> dict:
        return {
            "test": "directed_test",
            "input": self.element,
            "l_value": self.l_value,
            "r_value": self.r_value,
            "verdict": "directed" if self.r_is_one else "not_directed",
            "containment_verified": (
                "gamma inside t^-1 gamma t" if self.r_is_one else
                ("gamma inside t gamma t^-1" if self.l_is_one else "none")
            ),
        }


def directed_test(pair: HeckePair, t: Element) -> DirectednessReport:
    return DirectednessReport(
        element=pair.oracle.format_element(t),
        l_value=pair.l_value(t),
        r_value=pair.r_value(t),
    )


@dataclass
class QuadraticReport:
    element: str
    holds: bool
    degenerate: bool
    support: list
    expected: list

    def __bool__(self):
        return self.holds

    def to_json_dict(self) -> dict:
        return {
            "test": "quadratic_relation",
            "input": self.element,
            "verdict": ("degenerate_true" if self.holds and self.degenerate
                        else "true" if self.holds else "false"),
            "support": self.support,
            "expected_coefficients": self.expected,
        }


def quadratic_relation_test(algebra: HeckeAlgebra, c: DoubleCoset) -> QuadraticReport:
    """Does star(chi) * chi equal L * unit + (L - 1) * chi?

    The defining relation of an order-two generator class.  When L = 1 the
    relation collapses to star(chi) * chi = unit and is reported as a
    degenerate truth.
    """
    o = algebra.pair.oracle
    chi = algebra.basis(c)
    product = chi.star() * chi
    unit_dc = algebra.pair.identity_coset()
    big_l = Fraction(c.L)
    expected: dict = {unit_dc.key: big_l}
    expected[c.key] = expected.get(c.key, Fraction(0)) + big_l - 1
    ok = (all(dc.key in expected for dc in product.support())
          and all(product.coefficient(key) == value
                  for key, value in expected.items()))
    return QuadraticReport(
        element=o.format_element(c.key),
        holds=ok,
        degenerate=ok and c.L == 1,
        support=[o.format_element(dc.key) for dc in product.support()],
        expected=[str(big_l), str(big_l - 1)],
    )


def protonormal_falsifier(pair: HeckePair, s: Element, samples: int = 100,
                          seed: int = DEFAULT_SEED,
                          word_length: int = DEFAULT_WORD_LENGTH) -> ProbeReport:
    """Search for a violation of gamma s^-1 gamma s == s^-1 gamma s gamma.

    Samples pairs of subgroup elements and tests both inclusions elementwise;
    membership in a set gamma x gamma is decided through the left-coset
    representatives of the double coset.  Finding nothing proves nothing.
    """
    o = pair.oracle
    rng = Random(seed)
    s_inv = o.invert(s)
    dc_s = pair.double_coset(s)
    dc_sinv = pair.double_coset(s_inv)
    for _ in range(samples):
        gamma, gamma2 = (random_gamma_word(o, rng, word_length) for _ in range(2))
        # x = gamma s^-1 gamma2 s must lie in s^-1 gamma s gamma,
        # equivalently s*x*gamma' in gamma s gamma for some gamma'; the coset
        # test below absorbs the trailing gamma factor.
        x = o.multiply(o.multiply(gamma, s_inv), o.multiply(gamma2, s))
        if not dc_s.contains_coset_of(o.coset_rep(o.multiply(s, x))):
            return ProbeReport(
                test="protonormal_falsifier", input=o.format_element(s),
                verdict="counterexample", samples=samples, seed=seed,
                counterexample={
                    "element": o.format_element(x),
                    "gammas": [o.format_element(gamma), o.format_element(gamma2)],
                    "violated": "gamma s^-1 gamma s inside s^-1 gamma s gamma",
                })
        # y = s^-1 gamma s gamma2 must lie in gamma s^-1 gamma s
        y = o.multiply(o.multiply(s_inv, gamma), o.multiply(s, gamma2))
        if not dc_sinv.contains_coset_of(o.coset_rep(o.multiply(y, o.invert(s)))):
            return ProbeReport(
                test="protonormal_falsifier", input=o.format_element(s),
                verdict="counterexample", samples=samples, seed=seed,
                counterexample={
                    "element": o.format_element(y),
                    "gammas": [o.format_element(gamma), o.format_element(gamma2)],
                    "violated": "s^-1 gamma s gamma inside gamma s^-1 gamma s",
                })
    return ProbeReport(test="protonormal_falsifier", input=o.format_element(s),
                       verdict="no_counterexample", samples=samples, seed=seed)


# -- restriction ----------------------------------------------------------------


class RestrictedOracle(GroupOracle):
    """Oracle of a sub-pair (K, gamma): same operations, elements filtered."""

    def __init__(self, base: GroupOracle, membership: Callable[[Element], bool],
                 subgroup_generators: tuple = ()):  # generators kept for samplers
        self.base = base
        self.membership = membership
        self.subgroup_generators = tuple(subgroup_generators)
        self.name = base.name + "-restricted"

    @property
    def identity(self):
        return self.base.identity

    def multiply(self, a, b):
        return self.base.multiply(a, b)

    def invert(self, a):
        return self.base.invert(a)

    def order_key(self, g):
        return self.base.order_key(g)

    def gamma_contains(self, g):
        return self.base.gamma_contains(g)

    @property
    def gamma_generators(self):
        return self.base.gamma_generators

    def coset_rep(self, g):
        return self.base.coset_rep(g)

    def format_element(self, g):
        return self.base.format_element(g)

    def parse_element(self, text):
        g = self.base.parse_element(text)
        if not self.membership(g):
            raise ValueError("element is outside the restricted subgroup")
        return g

    def contains(self, g) -> bool:
        return self.membership(g)


def restrict_pair(pair: HeckePair, membership: Callable[[Element], bool],
                  subgroup_generators: Sequence[Element] = ()) -> HeckePair:
    """Pair (K, gamma) for a subgroup K of G containing gamma.

    The subgroup must contain gamma; this is sample-checked on the declared
    gamma generators and the identity.  Double cosets computed in the
    sub-pair carry the same canonical keys as in the ambient pair.
    """
    o = pair.oracle
    if not membership(o.identity):
        raise GammaNotContained("identity fails the subgroup membership")
    for gen in o.gamma_generators:
        if not membership(gen) or not membership(o.invert(gen)):
            raise GammaNotContained(
                f"gamma generator {o.format_element(gen)} is outside the subgroup")
    for gen in subgroup_generators:
        if not membership(gen):
            raise GammaNotContained(
                f"declared subgroup generator {o.format_element(gen)} fails membership")
    restricted = RestrictedOracle(o, membership, tuple(subgroup_generators))
    return HeckePair(restricted, coset_budget=pair.coset_budget)
