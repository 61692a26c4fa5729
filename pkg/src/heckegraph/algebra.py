"""Convolution *-algebra on the double-coset basis.

Elements are finitely supported maps from canonical double-coset keys to
exact Gaussian rationals.  Products are computed two independent ways: the
representative expansion (:meth:`HeckeAlgebra.coset_product`, summing
L(g)/L(gw) over left cosets of the right factor) and the counting
reconstruction (:meth:`HeckeAlgebra.structure_coefficient`); tests cross
check one against the other.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .core import DoubleCoset, Element, HeckePair
from .gaussian import GaussianRational

Scalar = Union[int, Fraction, GaussianRational]


class HeckeElement:
    """Immutable sparse algebra element; never stores a zero coefficient."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: dict):
        live = {k: (dc, c) for k, (dc, c) in terms.items() if not c.is_zero}
        self._terms = dict(sorted(live.items(), key=lambda kv: kv[1][0].sort_key))
        self.algebra = algebra

    def terms(self) -> Iterator[tuple[DoubleCoset, GaussianRational]]:
        """Term pairs in canonical key order."""
        yield from self._terms.values()

    def support(self) -> tuple[DoubleCoset, ...]:
        return tuple(dc for dc, _ in self.terms())

    def coefficient(self, coset: Union[DoubleCoset, Element]) -> GaussianRational:
        key = coset.key if isinstance(coset, DoubleCoset) else coset
        entry = self._terms.get(key)
        return entry[1] if entry else GaussianRational(Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.algebra is not self.algebra:
            return NotImplemented
        if self._terms.keys() != other._terms.keys():
            return False
        return all(self._terms[k][1] == other._terms[k][1] for k in self._terms)

    def __hash__(self):
        return hash(tuple((k, c) for k, (_, c) in self._terms.items()))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        acc = dict(self._terms)
        for dc, c in other.terms():
            old = acc.get(dc.key)
            acc[dc.key] = (dc, c + old[1] if old else c)
        return HeckeElement(self.algebra, acc)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.convolve(self, other)
        return self._scaled(other)

    def __rmul__(self, scalar):
        return self._scaled(scalar)

    def _scaled(self, scalar: Scalar) -> "HeckeElement":
        s = GaussianRational.of(scalar)
        return HeckeElement(
            self.algebra, {k: (dc, s * c) for k, (dc, c) in self._terms.items()}
        )

    def star(self) -> "HeckeElement":
        return self.algebra.involution(self)

    def l1_norm(self) -> Fraction:
        return self.algebra.l1_norm(self)

    def __repr__(self):
        fmt = self.algebra.pair.oracle.format_element
        body = " + ".join(f"({c})*[{fmt(dc.key)}]" for dc, c in self.terms())
        return body or "0"


class HeckeAlgebra:
    """Operations on :class:`HeckeElement` values over one pair.

    The basis product is memoized per ordered key pair; the cache is lock
    protected so one algebra may be shared across threads.
    """

    def __init__(self, pair: HeckePair):
        self.pair = pair
        self._lock = threading.Lock()
        self._products: dict[tuple, HeckeElement] = {}

    # -- constructors --------------------------------------------------

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def basis(self, dc: DoubleCoset) -> HeckeElement:
        one = GaussianRational(Fraction(1))
        return HeckeElement(self, {dc.key: (dc, one)})

    def coset(self, g: Element) -> HeckeElement:
        """Characteristic function of gamma*g*gamma."""
        return self.basis(self.pair.double_coset(g))

    def unit(self) -> HeckeElement:
        return self.basis(self.pair.identity_coset())

    def from_terms(self, pairs: Iterable[tuple[DoubleCoset, Scalar]]) -> HeckeElement:
        acc: dict = {}
        for dc, scalar in pairs:
            c = GaussianRational.of(scalar)
            old = acc.get(dc.key)
            acc[dc.key] = (dc, c + old[1] if old else c)
        return HeckeElement(self, acc)

    # -- products --------------------------------------------------------

    def coset_product(self, a: DoubleCoset, b: DoubleCoset) -> HeckeElement:
        """Expansion of (gamma a gamma)*(gamma b gamma) in the basis.

        Sums L(a)/L(a*w) over the left-coset representatives w of b's double
        coset; all coefficients are positive rationals.
        """
        cache_key = (a.key, b.key)
        with self._lock:
            hit = self._products.get(cache_key)
        if hit is not None:
            return hit
        o = self.pair.oracle
        acc: dict = {}
        for w in b.left_reps:
            target = self.pair.double_coset(o.multiply(a.rep, w))
            coeff = GaussianRational(Fraction(a.L, target.L))
            old = acc.get(target.key)
            acc[target.key] = (target, coeff + old[1] if old else coeff)
        result = HeckeElement(self, acc)
        with self._lock:
            self._products.setdefault(cache_key, result)
        return result

    def structure_coefficient(self, a: DoubleCoset, b: DoubleCoset,
                              s: DoubleCoset) -> Fraction:
        """Coefficient of s's double coset in a*b, by counting.

        Counts the left cosets w of b's class with a*w inside s's class
        (decided by representative membership, not key equality) and returns
        L(a)*count/L(s).
        """
        o = self.pair.oracle
        count = 0
        for w in b.left_reps:
            moved = o.coset_rep(o.multiply(a.rep, w))
            if s.contains_coset_of(moved):
                count += 1
        return Fraction(a.L * count, s.L)

    def convolve(self, f1: HeckeElement, f2: HeckeElement) -> HeckeElement:
        acc: dict = {}
        for dca, ca in f1.terms():
            for dcb, cb in f2.terms():
                scale = ca * cb
                for dcs, q in self.coset_product(dca, dcb).terms():
                    contrib = scale * q
                    old = acc.get(dcs.key)
                    acc[dcs.key] = (dcs, contrib + old[1] if old else contrib)
        return HeckeElement(self, acc)

    def involution(self, f: HeckeElement) -> HeckeElement:
        """f*(gamma g gamma) = delta(g^-1) * conj(f(gamma g^-1 gamma))."""
        o = self.pair.oracle
        acc: dict = {}
        for dc, c in f.terms():
            target = self.pair.double_coset(o.invert(dc.rep))
            contrib = c.conjugate() * dc.delta
            old = acc.get(target.key)
            acc[target.key] = (target, contrib + old[1] if old else contrib)
        return HeckeElement(self, acc)

    # -- norms -------------------------------------------------------------

    def l1_norm(self, f: HeckeElement) -> Fraction:
        """Sum of |coefficient| * L over the support.

        Exact for real coefficients; a certified upper bound otherwise (see
        :meth:`l1_norm_flagged` for the exactness flag).
        """
        return self.l1_norm_flagged(f)[0]

    def l1_norm_flagged(self, f: HeckeElement) -> tuple[Fraction, bool]:
        total = Fraction(0)
        exact = True
        for dc, c in f.terms():
            bound, term_exact = c.modulus_bound()
            total += bound * dc.L
            exact = exact and term_exact
        return total, exact

    # -- serialization -------------------------------------------------

    def to_json_dict(self, f: HeckeElement) -> dict:
        fmt = self.pair.oracle.format_element
        terms = []
        for dc, c in f.terms():
            terms.append({
                "key": fmt(dc.key),
                "coefficient": {
                    "num_re": c.re.numerator, "den_re": c.re.denominator,
                    "num_im": c.im.numerator, "den_im": c.im.denominator,
                },
                "L": dc.L,
                "R": dc.R,
            })
        return {"terms": terms}
