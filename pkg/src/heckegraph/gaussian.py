"""Exact Gaussian-rational scalars (a + b*i with a, b rational).

The algebra never touches floating point: addition, multiplication and
conjugation are exact, and the complex modulus is exposed only as an exact
value (real case) or a certified rational upper bound (Heron iteration from
above, so every iterate provably dominates sqrt(a^2 + b^2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rationalish = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: "GaussianRational | Rationalish") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def modulus_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def modulus_bound(self, heron_steps: int = 4) -> tuple[Fraction, bool]:
        """(value, exact) with value >= |self|, exact when self is real.

        For genuinely complex values the bound starts from |a| + |b| and is
        tightened by Heron steps, each of which stays above the true root.
        """
        if self.im == 0:
            return abs(self.re), True
        if self.re == 0:
            return abs(self.im), True
        start = abs(self.re) + abs(self.im)
        return rational_sqrt_upper(self.modulus_squared(), heron_steps, start=start), False

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def rational_sqrt_upper(x: Fraction, heron_steps: int = 4,
                        start: Fraction | None = None) -> Fraction:
    """Rational upper bound for sqrt(x), x >= 0, certified by construction.

    ``start`` may supply a known upper bound; otherwise one is built from
    integer square roots.  Heron's rule t -> (t + x/t)/2 maps upper bounds to
    upper bounds by the AM-GM inequality, and rounding each iterate up to a
    fixed-denominator grid keeps it an upper bound while stopping the digit
    growth exact iteration would suffer.
    """
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0)
    if start is not None and start * start >= x:
        t = Fraction(start)
    else:
        t = Fraction(_isqrt_ceil(x.numerator), math.isqrt(x.denominator))
    grid = 1 << 64
    for _ in range(heron_steps):
        t = (t + x / t) / 2
        t = Fraction(-((-t.numerator * grid) // t.denominator), grid)
    if start is not None and start * start >= x:
        t = min(t, Fraction(start))  # both are upper bounds
    assert t * t >= x
    return t


def _isqrt_ceil(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1
