"""Group-oracle contract and exact double-coset decompositions.

A pair (G, gamma) is driven entirely through a :class:`GroupOracle`: group
arithmetic, membership in the distinguished subgroup, canonical left-coset
representatives, and a total order on elements.  On top of an oracle,
:class:`HeckePair` enumerates the left cosets inside a double coset by a
budgeted breadth-first orbit closure and builds canonical
:class:`DoubleCoset` records.

Elements are opaque immutable payloads (tuples of ``Fraction``, permutation
tuples, ...).  They must be hashable, and two payloads must be equal exactly
when the oracle considers the elements equal.
"""

from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional

Element = Any  # opaque oracle payload; hashable and immutable

DEFAULT_COSET_BUDGET = 10_000


class HeckeError(Exception):
    """Base class for all domain errors raised by this package."""


class BudgetExhausted(HeckeError):
    """An orbit enumeration outgrew its budget before closing.

    Either the budget is too small or the pair is not a Hecke pair at this
    element; the two cases are indistinguishable to the enumeration, so the
    message says so.  The partial orbit is kept for diagnostics.
    """

    def __init__(self, budget: int, partial_orbit: Iterable[Element], context: str = ""):
        self.budget = budget
        self.partial_orbit = tuple(partial_orbit)
        self.context = context
        where = f" while {context}" if context else ""
        super().__init__(
            f"orbit exceeded budget {budget} before closing{where}; "
            "either the budget is too small or this is not a Hecke pair "
            "at this element (the two are indistinguishable)"
        )


class GroupOracle(ABC):
    """Contract a concrete pair (G, gamma) must implement.

    ``coset_rep`` must be constant on left cosets g*gamma and idempotent, and
    ``gamma_generators`` must generate exactly the subgroup recognized by
    ``gamma_contains`` (sample-checked by :func:`verify_oracle`).
    """

    name: str = "oracle"

    @property
    @abstractmethod
    def identity(self) -> Element:
        ...

    @abstractmethod
    def multiply(self, a: Element, b: Element) -> Element:
        ...

    @abstractmethod
    def invert(self, a: Element) -> Element:
        ...

    @abstractmethod
    def order_key(self, g: Element):
        """Sort key realizing a total order on elements."""

    @abstractmethod
    def gamma_contains(self, g: Element) -> bool:
        ...

    @property
    @abstractmethod
    def gamma_generators(self) -> tuple[Element, ...]:
        ...

    @abstractmethod
    def coset_rep(self, g: Element) -> Element:
        """Canonical representative of the left coset g*gamma."""

    def equal(self, a: Element, b: Element) -> bool:
        # payloads are canonical values, so == agrees with group equality
        return a == b

    def format_element(self, g: Element) -> str:
        return repr(g)

    def parse_element(self, text: str) -> Element:
        raise NotImplementedError(f"{self.name} has no element parser")

    def enumerate_left_cosets(
        self, g: Element, budget: int
    ) -> Optional[tuple[tuple[Element, Element], ...]]:
        """Hook for pairs whose gamma is not finitely generated.

        Return ``((rep, witness), ...)`` with witness*g in rep's coset, or
        ``None`` to use the generic generator-orbit closure.
        """
        return None

    def conjugate(self, g: Element, by: Element) -> Element:
        return self.multiply(self.multiply(self.invert(by), g), by)

    def commutator(self, s: Element, t: Element) -> Element:
        """[s, t] = s^-1 t^-1 s t."""
        si, ti = self.invert(s), self.invert(t)
        return self.multiply(self.multiply(si, ti), self.multiply(s, t))


@dataclass(frozen=True)
class DoubleCoset:
    """Canonical record for one double coset gamma*g*gamma.

    ``key`` is the order-minimal canonical left-coset representative; it
    doubles as the dictionary key for the basis element and as the stored
    representative.  ``left_reps`` are all canonical left-coset
    representatives, sorted; ``L = len(left_reps)`` and ``R`` counts the
    right cosets, computed as L of the inverse.
    """

    key: Element
    rep: Element
    left_reps: tuple[Element, ...]
    L: int
    R: int
    delta: Fraction
    sort_key: Any

    def __eq__(self, other):
        if not isinstance(other, DoubleCoset):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: "DoubleCoset"):
        return self.sort_key < other.sort_key

    def contains_coset_of(self, rep: Element) -> bool:
        """True when ``rep`` (already canonicalized) lies in this double coset."""
        return rep in self._rep_set()

    def _rep_set(self) -> frozenset:
        s = getattr(self, "_reps_frozen", None)
        if s is None:
            s = frozenset(self.left_reps)
            object.__setattr__(self, "_reps_frozen", s)
        return s


class HeckePair:
    """Budgeted double-coset engine over a :class:`GroupOracle`.

    All values handed out are immutable; the internal memo caches are lock
    protected, so one pair may be shared across threads.
    """

    def __init__(self, oracle: GroupOracle, coset_budget: int = DEFAULT_COSET_BUDGET):
        if coset_budget < 1:
            raise ValueError("coset budget must be >= 1")
        self.oracle = oracle
        self.coset_budget = coset_budget
        self._lock = threading.Lock()
        self._orbits: dict[Element, tuple[tuple[Element, Element], ...]] = {}
        self._classes: dict[Element, DoubleCoset] = {}

    # -- left-coset orbits -------------------------------------------------

    def left_cosets(self, g: Element, budget: Optional[int] = None) -> tuple[Element, ...]:
        """Sorted canonical representatives of the left cosets in gamma*g*gamma."""
        return tuple(rep for rep, _ in self._orbit(g, budget))

    def left_cosets_with_witnesses(
        self, g: Element, budget: Optional[int] = None
    ) -> tuple[tuple[Element, Element], ...]:
        """Like :meth:`left_cosets` but each rep comes with a witness.

        The witness is an element w of gamma such that w*g lies in the rep's
        left coset.
        """
        return self._orbit(g, budget)

    def _orbit(self, g: Element, budget: Optional[int]) -> tuple[tuple[Element, Element], ...]:
        o = self.oracle
        limit = self.coset_budget if budget is None else budget
        if limit < 1:
            raise ValueError("budget must be >= 1")
        start = o.coset_rep(g)
        with self._lock:
            cached = self._orbits.get(start)
        if cached is not None:
            if len(cached) > limit:
                raise BudgetExhausted(limit, [r for r, _ in cached[:limit]],
                                      f"enumerating cosets of {o.format_element(g)}")
            return cached

        hook = o.enumerate_left_cosets(g, limit)
        if hook is not None:
            orbit = tuple(sorted(hook, key=lambda rw: o.order_key(rw[0])))
        else:
            orbit = self._generator_orbit(start, limit, o, g)
        with self._lock:
            self._orbits.setdefault(start, orbit)
        return orbit

    def _generator_orbit(self, start: Element, limit: int, o: GroupOracle, g: Element):
        gens: list[Element] = []
        for gen in o.gamma_generators:
            for cand in (gen, o.invert(gen)):
                if cand != o.identity and cand not in gens:
                    gens.append(cand)
        seen: dict[Element, Element] = {start: o.identity}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                gamma_w = seen[w]
                for gen in gens:
                    moved = o.coset_rep(o.multiply(gen, w))
                    if moved not in seen:
                        if len(seen) >= limit:
                            raise BudgetExhausted(
                                limit, sorted(seen, key=o.order_key),
                                f"enumerating cosets of {o.format_element(g)}")
                        seen[moved] = o.multiply(gen, gamma_w)
                        nxt.append(moved)
            frontier = nxt
        return tuple(sorted(seen.items(), key=lambda rw: o.order_key(rw[0])))

    # -- double cosets -----------------------------------------------------

    def double_coset(self, g: Element, budget: Optional[int] = None) -> DoubleCoset:
        o = self.oracle
        start = o.coset_rep(g)
        with self._lock:
            cached = self._classes.get(start)
        if cached is not None:
            return cached
        reps = self.left_cosets(g, budget)
        inv_reps = self.left_cosets(o.invert(g), budget)
        L, R = len(reps), len(inv_reps)
        key = reps[0]
        dc = DoubleCoset(key=key, rep=key, left_reps=reps, L=L, R=R,
                         delta=Fraction(L, R), sort_key=o.order_key(key))
        with self._lock:
            for rep in reps:
                self._classes.setdefault(rep, dc)
        return dc

    def identity_coset(self) -> DoubleCoset:
        return self.double_coset(self.oracle.identity)

    def l_value(self, g: Element, budget: Optional[int] = None) -> int:
        return len(self.left_cosets(g, budget))

    def r_value(self, g: Element, budget: Optional[int] = None) -> int:
        return len(self.left_cosets(self.oracle.invert(g), budget))

    def delta(self, g: Element, budget: Optional[int] = None) -> Fraction:
        return Fraction(self.l_value(g, budget), self.r_value(g, budget))

    def same_double_coset(self, g: Element, h: Element, budget: Optional[int] = None) -> bool:
        """True iff h lies in gamma*g*gamma."""
        dc = self.double_coset(g, budget)
        return dc.contains_coset_of(self.oracle.coset_rep(h))


def random_gamma_word(oracle: GroupOracle, rng, max_len: int = 8) -> Element:
    """Random element of gamma as a word of length <= max_len in the generators."""
    gens = oracle.gamma_generators
    g = oracle.identity
    if not gens:
        return g
    for _ in range(rng.randint(0, max_len)):
        gen = rng.choice(gens)
        if rng.random() < 0.5:
            gen = oracle.invert(gen)
        g = oracle.multiply(g, gen)
    return g


@dataclass
class OracleCheckReport:
    oracle: str
    samples: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_oracle(oracle: GroupOracle, sampler, rng, samples: int = 200) -> OracleCheckReport:
    """Spot-check the oracle laws on random elements.

    ``sampler(rng)`` must yield random elements of G.  Checks group axioms,
    canonicalization (idempotent, constant on cosets, gamma-consistent) and
    that the declared gamma generators live inside gamma.
    """
    o = oracle
    failures: list[str] = []

    def fail(msg, *elems):
        failures.append(msg + ": " + ", ".join(o.format_element(e) for e in elems))

    if not o.gamma_contains(o.identity):
        failures.append("identity not in gamma")
    for gen in o.gamma_generators:
        if not o.gamma_contains(gen):
            fail("generator outside gamma", gen)
        if not o.gamma_contains(o.invert(gen)):
            fail("generator inverse outside gamma", gen)

    e = o.identity
    for _ in range(samples):
        a, b, c = sampler(rng), sampler(rng), sampler(rng)
        if o.multiply(o.multiply(a, b), c) != o.multiply(a, o.multiply(b, c)):
            fail("associativity", a, b, c)
        if o.multiply(a, e) != a or o.multiply(e, a) != a:
            fail("identity law", a)
        if o.multiply(a, o.invert(a)) != e or o.multiply(o.invert(a), a) != e:
            fail("inverse law", a)
        rep = o.coset_rep(a)
        if o.coset_rep(rep) != rep:
            fail("coset_rep not idempotent", a)
        if not o.gamma_contains(o.multiply(o.invert(a), rep)):
            fail("coset_rep left its coset", a)
        gamma = random_gamma_word(o, rng)
        if o.coset_rep(o.multiply(a, gamma)) != rep:
            fail("coset_rep not constant on coset", a, gamma)
        if not o.gamma_contains(gamma):
            fail("gamma word escaped gamma", gamma)
        if failures:
            break
    return OracleCheckReport(oracle=o.name, samples=samples, failures=failures)
