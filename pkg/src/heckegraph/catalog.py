"""Seven concrete pairs (G, gamma) with declared family tags and expectations.

Each entry ships a ready :class:`~heckegraph.core.GroupOracle`, a seeded
random-element sampler, a designated seed coset for deterministic runs, and
hand-checkable expectations (closure sizes where derivable, budget blow-ups
for the negative examples).  Family tags are metadata: the undecidable ones
are declared, and only sample-checkable consequences are ever asserted.

Entries:

* ``finite-perm``       S4 with the order-two subgroup generated by (12)
* ``group-algebra``     S3 with the trivial subgroup
* ``quasicyclic-dihedral(p)``  dihedral group of the p-power roots of unity
* ``infinite-dihedral`` dihedral group of the integers (blows up)
* ``heisenberg``        3x3 rational unitriangular matrices over integral ones
* ``sl2-localized(p)``  SL2(Z[1/p]) over SL2(Z) (blows up)
* ``bc-axb``            rational affine line over integer translations
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from random import Random
from typing import Callable, Optional

from .commutators import ChainLevel, SubnormalChain
from .core import (BudgetExhausted, Element, GroupOracle, HeckeError,
                   HeckePair, random_gamma_word, verify_oracle)


class UnknownPair(HeckeError):
    pass


class BadParams(HeckeError):
    pass


class PairFamily(Enum):
    FINITE_INDEX = "finite_index"
    DIRECTED = "directed"
    IWAHORI = "iwahori"
    PROTONORMAL = "protonormal"
    SUBNORMAL = "subnormal"
    ASCENDANT = "ascendant"
    FINITELY_MANY_CONJUGATES = "finitely_many_conjugates"
    FINITE_BY_NILPOTENT = "finite_by_nilpotent"
    HYPERCENTRAL = "hypercentral"
    FC_WITH_FINITE_GAMMA = "fc_with_finite_gamma"
    LOCALLY_NILPOTENT_FINITE_GAMMA = "locally_nilpotent_finite_gamma"
    LOCALLY_FINITE_FINITE_GAMMA = "locally_finite_finite_gamma"
    NONE = "none"


@dataclass(frozen=True)
class Tag:
    family: PairFamily
    provenance: str = "declared"  # or "sample_checked"


@dataclass(frozen=True)
class Expectation:
    """Per-entry expected engine behavior used by the test corpus."""

    all_closures_finite: bool
    seed_closure_size: Optional[int] = None  # when hand-derivable
    exhaust_budget: Optional[int] = None     # negative entries: budget that must blow


@dataclass
class CatalogEntry:
    name: str
    params: dict
    oracle: GroupOracle
    tags: tuple[Tag, ...]
    chain: Optional[SubnormalChain]
    expectation: Expectation
    element_syntax: str
    sampler: Callable[[Random], Element]
    seed_coset: Element

    def make_pair(self, coset_budget: int = 10_000) -> HeckePair:
        return HeckePair(self.oracle, coset_budget=coset_budget)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "params": {k: str(v) for k, v in self.params.items()},
            "tags": [{"family": t.family.value, "provenance": t.provenance}
                     for t in self.tags],
            "chain": [lvl.name for lvl in self.chain.levels] if self.chain else None,
            "element_syntax": self.element_syntax,
            "seed_coset": self.oracle.format_element(self.seed_coset),
            "expectation": {
                "all_closures_finite": self.expectation.all_closures_finite,
                "seed_closure_size": self.expectation.seed_closure_size,
                "exhaust_budget": self.expectation.exhaust_budget,
            },
        }


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


# -- symmetric groups ----------------------------------------------------------


class SymmetricPairOracle(GroupOracle):
    """S_n as image tuples, with a small explicitly listed subgroup.

    Composition acts left-of-right: (a*b)(i) = a[b[i]].
    """

    def __init__(self, degree: int, subgroup: frozenset, generators: tuple,
                 name: str):
        self.degree = degree
        self._subgroup = subgroup
        self._generators = generators
        self.name = name

    @property
    def identity(self):
        return tuple(range(self.degree))

    def multiply(self, a, b):
        return tuple(a[b[i]] for i in range(self.degree))

    def invert(self, a):
        out = [0] * self.degree
        for i, image in enumerate(a):
            out[image] = i
        return tuple(out)

    def order_key(self, g):
        return g

    def gamma_contains(self, g):
        return g in self._subgroup

    @property
    def gamma_generators(self):
        return self._generators

    def coset_rep(self, g):
        return min((self.multiply(g, gamma) for gamma in self._subgroup),
                   key=self.order_key)

    def format_element(self, g):
        return ",".join(str(i) for i in g)

    def parse_element(self, text):
        images = tuple(int(part) for part in text.split(","))
        if sorted(images) != list(range(self.degree)):
            raise ValueError(
                f"need a permutation of 0..{self.degree - 1} as comma-separated images")
        return images

    def elements(self):
        import itertools

        return itertools.permutations(range(self.degree))


# -- dihedral-type semidirect products -----------------------------------------


class ReflectionSemidirectOracle(GroupOracle):
    """Offsets acted on by a sign flip; gamma is the two-element sign copy.

    Elements are (offset, sign) with (a, e)(b, d) = (a + e*b, e*d).  Offset
    arithmetic is delegated so the same machinery covers integer offsets and
    p-power-denominator fractions mod 1.
    """

    def __init__(self, name: str):
        self.name = name

    def normalize_offset(self, q):
        return q

    def validate_offset(self, q):
        return q

    @property
    def identity(self):
        return (self.normalize_offset(Fraction(0)), 1)

    def multiply(self, a, b):
        return (self.normalize_offset(a[0] + a[1] * b[0]), a[1] * b[1])

    def invert(self, a):
        return (self.normalize_offset(-a[1] * a[0]), a[1])

    def order_key(self, g):
        return (g[0], -g[1])

    def gamma_contains(self, g):
        return g[0] == 0

    @property
    def gamma_generators(self):
        return ((self.normalize_offset(Fraction(0)), -1),)

    def coset_rep(self, g):
        return (g[0], 1)

    def format_element(self, g):
        return f"{g[0]},{'+' if g[1] == 1 else '-'}"

    def parse_element(self, text):
        offset_text, _, sign_text = text.rpartition(",")
        if sign_text not in ("+", "-"):
            raise ValueError("element syntax is 'offset,+' or 'offset,-'")
        offset = self.validate_offset(_parse_fraction(offset_text))
        return (self.normalize_offset(offset), 1 if sign_text == "+" else -1)

    def make(self, offset, sign):
        return (self.validate_offset(self.normalize_offset(Fraction(offset))), sign)


class IntegerReflectionOracle(ReflectionSemidirectOracle):
    """Dihedral group of the integers."""

    def validate_offset(self, q):
        if q.denominator != 1:
            raise ValueError("offsets must be integers for this pair")
        return q


class PrimePowerReflectionOracle(ReflectionSemidirectOracle):
    """Dihedral group of the p-power roots of unity (offsets mod 1)."""

    def __init__(self, p: int, name: str):
        super().__init__(name)
        self.p = p

    def normalize_offset(self, q):
        return q - (q.numerator // q.denominator)

    def validate_offset(self, q):
        den = q.denominator
        while den % self.p == 0:
            den //= self.p
        if den != 1:
            raise ValueError(f"offset denominator must be a power of {self.p}")
        return q


# -- rational unitriangular matrices -------------------------------------------


class UnitriangularPairOracle(GroupOracle):
    """3x3 unitriangular rational matrices over the integral subgroup.

    Payload (x, y, z) stands for the matrix with first superdiagonal (x, y)
    and corner z; the product rule is (x1+x2, y1+y2, z1+z2+x1*y2).
    """

    name = "heisenberg"

    @property
    def identity(self):
        zero = Fraction(0)
        return (zero, zero, zero)

    def multiply(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def invert(self, a):
        return (-a[0], -a[1], -a[2] + a[0] * a[1])

    def order_key(self, g):
        return g

    def gamma_contains(self, g):
        return all(v.denominator == 1 for v in g)

    @property
    def gamma_generators(self):
        one, zero = Fraction(1), Fraction(0)
        return ((one, zero, zero), (zero, one, zero), (zero, zero, one))

    def coset_rep(self, g):
        x, y, z = g
        xf = x - (x.numerator // x.denominator)
        yf = y - (y.numerator // y.denominator)
        zc = z - x * (y.numerator // y.denominator)
        zf = zc - (zc.numerator // zc.denominator)
        return (xf, yf, zf)

    def format_element(self, g):
        x, y, z = g
        return ",".join(str(v) for v in (1, x, z, 0, 1, y, 0, 0, 1))

    def parse_element(self, text):
        entries = [_parse_fraction(part) for part in text.split(",")]
        if len(entries) != 9:
            raise ValueError("need nine comma-separated rationals, row-major")
        fixed = (entries[0], entries[3], entries[4], entries[6], entries[7], entries[8])
        if fixed != (1, 0, 1, 0, 0, 1):
            raise ValueError("matrix must be upper unitriangular")
        return (entries[1], entries[5], entries[2])

    def make(self, x, y, z):
        return (Fraction(x), Fraction(y), Fraction(z))

    def superdiagonal_integral(self, g) -> bool:
        return g[0].denominator == 1 and g[1].denominator == 1


# -- SL2 over Z[1/p] -------------------------------------------------------------


class MatrixLocalizationOracle(GroupOracle):
    """SL2(Z[1/p]) over SL2(Z), stored as (integer 2x2 matrix, p-exponent).

    The payload ((a, b, c, d), k) stands for the matrix divided by p^k, with
    k minimal (not all entries divisible by p when k > 0) and determinant
    p^(2k).  Left cosets are canonicalized by the column Hermite form of the
    integer matrix, which is a canonical basis of the associated lattice.
    """

    def __init__(self, p: int):
        self.p = p
        self.name = f"sl2-localized({p})"

    def _reduce(self, m, k):
        a, b, c, d = m
        while k > 0 and a % self.p == 0 and b % self.p == 0 \
                and c % self.p == 0 and d % self.p == 0:
            a, b, c, d = a // self.p, b // self.p, c // self.p, d // self.p
            k -= 1
        return ((a, b, c, d), k)

    @property
    def identity(self):
        return ((1, 0, 0, 1), 0)

    def multiply(self, g, h):
        (a, b, c, d), k1 = g
        (e, f, gg, hh), k2 = h
        prod = (a * e + b * gg, a * f + b * hh, c * e + d * gg, c * f + d * hh)
        return self._reduce(prod, k1 + k2)

    def invert(self, g):
        (a, b, c, d), k = g
        return self._reduce((d, -b, -c, a), k)

    def order_key(self, g):
        return (g[1], g[0])

    def gamma_contains(self, g):
        return g[1] == 0

    @property
    def gamma_generators(self):
        return (((0, -1, 1, 0), 0), ((1, 1, 0, 1), 0))

    def coset_rep(self, g):
        (a, b, c, d), k = g
        # column Hermite form of the lattice spanned by columns (a,c), (b,d)
        e = math.gcd(c, d)
        if e == 0:
            raise ValueError("singular matrix payload")
        det = a * d - b * c
        f = det // e
        s, t = _bezout(c, d)
        u1 = (s * a + t * b) % f
        return ((f, u1, 0, e), k)

    def format_element(self, g):
        (a, b, c, d), k = g
        scale = self.p ** k
        return ",".join(str(Fraction(v, scale)) for v in (a, b, c, d))

    def parse_element(self, text):
        entries = [_parse_fraction(part) for part in text.split(",")]
        if len(entries) != 4:
            raise ValueError("need four comma-separated rationals a,b,c,d")
        return self.make(*entries)

    def make(self, a, b, c, d):
        entries = [Fraction(v) for v in (a, b, c, d)]
        if entries[0] * entries[3] - entries[1] * entries[2] != 1:
            raise ValueError("matrix must have determinant 1")
        k = 0
        scale = 1
        common = math.lcm(*(e.denominator for e in entries))
        while scale < common:
            scale *= self.p
            k += 1
        if scale % common != 0:
            raise ValueError(f"denominators must be powers of {self.p}")
        ints = tuple(int(e * scale) for e in entries)
        return self._reduce(ints, k)


def _bezout(c: int, d: int) -> tuple[int, int]:
    """(s, t) with s*c + t*d == gcd(c, d) >= 0."""
    old_r, r = c, d
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


# -- affine line -----------------------------------------------------------------


class AffineLinePairOracle(GroupOracle):
    """Pairs (b, a) acting as x -> a*x + b, over the integer translations.

    (b1, a1)(b2, a2) = (b1 + a1*b2, a1*a2) with a always positive rational.
    """

    name = "bc-axb"

    @property
    def identity(self):
        return (Fraction(0), Fraction(1))

    def multiply(self, g, h):
        return (g[0] + g[1] * h[0], g[1] * h[1])

    def invert(self, g):
        return (-g[0] / g[1], 1 / g[1])

    def order_key(self, g):
        return (g[1], g[0])

    def gamma_contains(self, g):
        return g[1] == 1 and g[0].denominator == 1

    @property
    def gamma_generators(self):
        return ((Fraction(1), Fraction(1)),)

    def coset_rep(self, g):
        b, a = g
        q = b / a
        return (b - a * (q.numerator // q.denominator), a)

    def format_element(self, g):
        return f"{g[0]},{g[1]}"

    def parse_element(self, text):
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError("element syntax is 'b,a' with rational b and positive rational a")
        b, a = _parse_fraction(parts[0]), _parse_fraction(parts[1])
        return self.make(b, a)

    def make(self, b, a):
        a = Fraction(a)
        if a <= 0:
            raise ValueError("the scaling part must be positive")
        return (Fraction(b), a)


# -- entry builders ---------------------------------------------------------------


def _build_finite_perm(params: dict):
    if params:
        raise BadParams("finite-perm takes no parameters")
    swap = (1, 0, 2, 3)
    oracle = SymmetricPairOracle(
        degree=4,
        subgroup=frozenset({(0, 1, 2, 3), swap}),
        generators=(swap,),
        name="finite-perm",
    )

    def sampler(rng: Random):
        images = list(range(4))
        rng.shuffle(images)
        return tuple(images)

    entry = CatalogEntry(
        name="finite-perm", params={}, oracle=oracle,
        tags=(Tag(PairFamily.FINITE_INDEX), Tag(PairFamily.FC_WITH_FINITE_GAMMA)),
        chain=None,
        expectation=Expectation(all_closures_finite=True),
        element_syntax="images of 0,1,2,3 (e.g. '1,0,2,3' for the subgroup generator)",
        sampler=sampler,
        seed_coset=(1, 2, 3, 0),
    )
    return oracle, entry


def _build_group_algebra(params: dict):
    if params:
        raise BadParams("group-algebra takes no parameters")
    oracle = SymmetricPairOracle(
        degree=3,
        subgroup=frozenset({(0, 1, 2)}),
        generators=(),
        name="group-algebra",
    )

    def sampler(rng: Random):
        images = list(range(3))
        rng.shuffle(images)
        return tuple(images)

    entry = CatalogEntry(
        name="group-algebra", params={}, oracle=oracle,
        tags=(Tag(PairFamily.SUBNORMAL), Tag(PairFamily.FINITE_INDEX)),
        chain=SubnormalChain(levels=(
            ChainLevel("G", lambda g: True),
            ChainLevel("gamma", lambda g: g == (0, 1, 2)),
        )),
        expectation=Expectation(all_closures_finite=True, seed_closure_size=2),
        element_syntax="images of 0,1,2 (e.g. '1,2,0' for a 3-cycle)",
        sampler=sampler,
        seed_coset=(1, 2, 0),
    )
    return oracle, entry


def _build_quasicyclic(params: dict):
    p = int(params.get("p", 2))
    extra = set(params) - {"p"}
    if extra:
        raise BadParams(f"unknown parameters: {sorted(extra)}")
    if not _is_prime(p):
        raise BadParams(f"p must be prime, got {p}")
    oracle = PrimePowerReflectionOracle(p, name=f"quasicyclic-dihedral({p})")

    def sampler(rng: Random):
        exponent = rng.randint(0, 4)
        offset = Fraction(rng.randrange(0, p ** exponent), p ** exponent)
        return oracle.make(offset, rng.choice((1, -1)))

    tags = [Tag(PairFamily.LOCALLY_FINITE_FINITE_GAMMA),
            Tag(PairFamily.FC_WITH_FINITE_GAMMA)]
    if p == 2:
        tags.append(Tag(PairFamily.HYPERCENTRAL))
        tags.append(Tag(PairFamily.LOCALLY_NILPOTENT_FINITE_GAMMA))
    entry = CatalogEntry(
        name="quasicyclic-dihedral", params={"p": p}, oracle=oracle,
        tags=tuple(tags),
        chain=None,
        expectation=Expectation(
            all_closures_finite=True,
            seed_closure_size=4 if p == 2 else None,
        ),
        element_syntax=f"offset,sign with offset a fraction with {p}-power "
                       "denominator taken mod 1 (e.g. '1/8,-')",
        sampler=sampler,
        seed_coset=oracle.make(Fraction(1, p ** 3), -1),
    )
    return oracle, entry


def _build_infinite_dihedral(params: dict):
    if params:
        raise BadParams("infinite-dihedral takes no parameters")
    oracle = IntegerReflectionOracle(name="infinite-dihedral")

    def sampler(rng: Random):
        return oracle.make(rng.randint(-20, 20), rng.choice((1, -1)))

    entry = CatalogEntry(
        name="infinite-dihedral", params={}, oracle=oracle,
        tags=(Tag(PairFamily.NONE),),
        chain=None,
        expectation=Expectation(all_closures_finite=False, exhaust_budget=50),
        element_syntax="offset,sign with integer offset (e.g. '1,-')",
        sampler=sampler,
        seed_coset=oracle.make(1, -1),
    )
    return oracle, entry


def _build_heisenberg(params: dict):
    if params:
        raise BadParams("heisenberg takes no parameters")
    oracle = UnitriangularPairOracle()

    def _rand_frac(rng: Random, dens=(1, 1, 2, 2, 3, 4, 6)):
        return Fraction(rng.randint(-8, 8), rng.choice(dens))

    def sampler(rng: Random):
        return (_rand_frac(rng), _rand_frac(rng), _rand_frac(rng))

    def sample_h2(rng: Random):
        return (Fraction(rng.randint(-6, 6)), Fraction(rng.randint(-6, 6)),
                _rand_frac(rng))

    def sample_gamma(rng: Random):
        return tuple(Fraction(rng.randint(-6, 6)) for _ in range(3))

    chain = SubnormalChain(levels=(
        ChainLevel("G", lambda g: True, sampler),
        ChainLevel("superdiagonal-integral", oracle.superdiagonal_integral, sample_h2),
        ChainLevel("gamma", oracle.gamma_contains, sample_gamma),
    ))
    entry = CatalogEntry(
        name="heisenberg", params={}, oracle=oracle,
        tags=(Tag(PairFamily.SUBNORMAL), Tag(PairFamily.FINITE_BY_NILPOTENT),
              Tag(PairFamily.HYPERCENTRAL)),
        chain=chain,
        expectation=Expectation(all_closures_finite=True, seed_closure_size=3),
        element_syntax="nine comma-separated rationals, row-major unitriangular "
                       "matrix (e.g. '1,1/2,0,0,1,0,0,0,1')",
        sampler=sampler,
        seed_coset=oracle.make(Fraction(1, 2), 0, 0),
    )
    return oracle, entry


def _build_sl2_localized(params: dict):
    p = int(params.get("p", 2))
    extra = set(params) - {"p"}
    if extra:
        raise BadParams(f"unknown parameters: {sorted(extra)}")
    if not _is_prime(p):
        raise BadParams(f"p must be prime, got {p}")
    oracle = MatrixLocalizationOracle(p)
    dilation = oracle.make(p, 0, 0, Fraction(1, p))

    def sampler(rng: Random):
        # interleave at most two dilations with short subgroup words so the
        # left-coset orbits of sampled classes and their pairwise products
        # stay well under the default coset budget
        word = random_gamma_word(oracle, rng, max_len=4)
        for _ in range(rng.choice((0, 1, 1, 1, 2))):
            d = dilation if rng.random() < 0.5 else oracle.invert(dilation)
            word = oracle.multiply(word, d)
            word = oracle.multiply(word, random_gamma_word(oracle, rng, max_len=3))
        return word

    entry = CatalogEntry(
        name="sl2-localized", params={"p": p}, oracle=oracle,
        tags=(Tag(PairFamily.NONE),),
        chain=None,
        expectation=Expectation(all_closures_finite=False, exhaust_budget=50),
        element_syntax=f"four comma-separated rationals a,b,c,d with det 1 and "
                       f"{p}-power denominators (e.g. '{p},0,0,1/{p}')",
        sampler=sampler,
        seed_coset=dilation,
    )
    return oracle, entry


def _build_bc_axb(params: dict):
    if params:
        raise BadParams("bc-axb takes no parameters")
    oracle = AffineLinePairOracle()

    def sampler(rng: Random):
        b = Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3)))
        a = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        return oracle.make(b, a)

    entry = CatalogEntry(
        name="bc-axb", params={}, oracle=oracle,
        tags=(Tag(PairFamily.DIRECTED),),
        chain=None,
        expectation=Expectation(all_closures_finite=True, seed_closure_size=2),
        element_syntax="b,a for x -> a*x + b with rational b and positive "
                       "rational a (e.g. '0,1/2')",
        sampler=sampler,
        seed_coset=oracle.make(0, Fraction(1, 2)),
    )
    return oracle, entry


_BUILDERS = {
    "finite-perm": _build_finite_perm,
    "group-algebra": _build_group_algebra,
    "quasicyclic-dihedral": _build_quasicyclic,
    "infinite-dihedral": _build_infinite_dihedral,
    "heisenberg": _build_heisenberg,
    "sl2-localized": _build_sl2_localized,
    "bc-axb": _build_bc_axb,
}


def names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def build(name: str, **params) -> tuple[GroupOracle, CatalogEntry]:
    """Instantiate a catalog pair by name; raises UnknownPair / BadParams."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownPair(f"unknown pair {name!r}; known: {', '.join(names())}") from None
    try:
        return builder(dict(params))
    except BadParams:
        raise
    except (TypeError, ValueError) as exc:
        raise BadParams(str(exc)) from exc


def catalog_json() -> list[dict]:
    docs = []
    for name in names():
        _, entry = build(name)
        docs.append(entry.to_json_dict())
    return docs


# -- locally finite filtration ------------------------------------------------


@dataclass
class FiltrationReport:
    element: str
    subgroup_order: int
    dimension: int
    budget: int

    def to_json_dict(self) -> dict:
        return {
            "test": "af_filtration_check",
            "input": self.element,
            "subgroup_order": self.subgroup_order,
            "dimension": self.dimension,
            "budget": self.budget,
        }


def generated_subgroup(oracle: GroupOracle, extra: tuple, budget: int) -> frozenset:
    """Closure of gamma generators plus ``extra`` under multiplication.

    Breadth-first; raises BudgetExhausted when the subgroup would pass the
    budget, which for a declared locally finite pair means the tag is wrong.
    """
    gens: list = []
    for g in tuple(oracle.gamma_generators) + tuple(extra):
        for cand in (g, oracle.invert(g)):
            if cand not in gens:
                gens.append(cand)
    seen = {oracle.identity}
    frontier = [oracle.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = oracle.multiply(x, g)
                if y not in seen:
                    if len(seen) >= budget:
                        raise BudgetExhausted(budget, sorted(seen, key=oracle.order_key),
                                              "generating a subgroup")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def af_filtration_check(entry: CatalogEntry, g: Element,
                        budget: int = 4096) -> FiltrationReport:
    """Dimension of the sub-pair spanned by gamma and one extra generator.

    Only meaningful for entries tagged locally finite with finite gamma;
    computes the subgroup generated by gamma and g, restricts the pair to
    it, and counts its double cosets.
    """
    if PairFamily.LOCALLY_FINITE_FINITE_GAMMA not in {t.family for t in entry.tags}:
        raise HeckeError(
            f"{entry.name} is not tagged locally-finite-with-finite-gamma")
    from .commutators import restrict_pair

    oracle = entry.oracle
    members = generated_subgroup(oracle, (g,), budget)
    subpair = restrict_pair(entry.make_pair(), members.__contains__,
                            subgroup_generators=(g,))
    keys = {subpair.double_coset(x).key for x in members}
    return FiltrationReport(
        element=oracle.format_element(g),
        subgroup_order=len(members),
        dimension=len(keys),
        budget=budget,
    )


def entry_selfcheck(entry: CatalogEntry, rng: Random, samples: int = 200) -> list[str]:
    """Oracle laws, declared-structure sampling, and algebra-law spot checks."""
    from .algebra import HeckeAlgebra

    problems = list(verify_oracle(entry.oracle, entry.sampler, rng, samples).failures)
    if entry.chain is not None:
        problems.extend(entry.chain.validate(entry.oracle, rng))
    algebra = HeckeAlgebra(entry.make_pair())
    unit = algebra.unit()
    for _ in range(max(5, samples // 20)):
        f = algebra.coset(entry.sampler(rng))
        g = algebra.coset(entry.sampler(rng))
        h = algebra.coset(entry.sampler(rng))
        if (f * g) * h != f * (g * h):
            problems.append("associativity failure in the convolution algebra")
            break
        if (f * g).star() != g.star() * f.star() or f.star().star() != f:
            problems.append("involution law failure")
            break
        if f * unit != f or unit * f != f:
            problems.append("unit failure")
            break
        if (f * g).l1_norm() != f.l1_norm() * g.l1_norm():
            problems.append("L1 multiplicativity failure on basis elements")
            break
    return problems
