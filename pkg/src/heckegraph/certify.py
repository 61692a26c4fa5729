"""Certified universal-norm bounds from finite successor-closed vertex sets.

Two bounds are produced for every vertex of a complete closure:

* a crude bound beta^2, with beta the sum over rows of the square root of
  the row sum of the relations matrix, evaluated in floating point with
  outward rounding at every step so the reported number is a true upper
  bound; and
* the sharp bound L(s) (the L1-norm of the basis element), valid once four
  exact rational linear-algebra checks on the tangent-plane matrix A pass.

The checks are theorems for genuine closures, so a failing check signals an
implementation bug and aborts certification instead of degrading silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import HeckeAlgebra, HeckeElement
from .core import DoubleCoset, HeckeError
from .graph import ClosureReport, NotComplete


class RowIdentityViolation(HeckeError):
    """The exact row identity sum_j lambda_ij * L_j == L_i^2 failed (bug detector)."""


class CheckFailed(HeckeError):
    """One of the certificate checks failed (bug detector for genuine closures)."""

    def __init__(self, which: str, checks: "CertificateChecks"):
        self.which = which
        self.checks = checks
        super().__init__(f"certificate check failed: {which}")


class MissingCertificate(HeckeError):
    def __init__(self, key_text: str):
        super().__init__(f"no certified bound for basis element {key_text}")


class DimensionMismatch(HeckeError):
    pass


@dataclass(frozen=True)
class RelationsMatrix:
    """Nonnegative rational matrix with star(chi_i) * chi_i = sum_j lam[i][j] chi_j.

    ``cosets`` fixes the ordering (closure discovery order, root first); the
    row identity sum_j lam[i][j] * L(s_j) == L(s_i)^2 is verified exactly at
    construction time.
    """

    cosets: tuple[DoubleCoset, ...]
    lam: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.cosets)

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self.lam)

    def index_of(self, key) -> int:
        for i, dc in enumerate(self.cosets):
            if dc.key == key:
                return i
        raise KeyError(key)


@dataclass(frozen=True)
class CertificateChecks:
    az_equals_z_squared: bool
    a_nonsingular: bool
    inverse_columns_nonnegative: bool
    diagonal_dominates: bool

    @property
    def all_pass(self) -> bool:
        return (self.az_equals_z_squared and self.a_nonsingular
                and self.inverse_columns_nonnegative and self.diagonal_dominates)

    def first_failure(self) -> Optional[str]:
        for name in ("az_equals_z_squared", "a_nonsingular",
                     "inverse_columns_nonnegative", "diagonal_dominates"):
            if not getattr(self, name):
                return name
        return None


@dataclass(frozen=True)
class BoundCertificate:
    relations: RelationsMatrix
    z: tuple[int, ...]
    matrix_a: tuple[tuple[Fraction, ...], ...]
    checks: CertificateChecks
    beta_squared: float
    bounds: dict  # key -> Fraction, the certified per-coset norm bound


def relations(algebra: HeckeAlgebra, report: ClosureReport) -> RelationsMatrix:
    """Expand star(chi) * chi for every vertex of a complete closure."""
    if not report.complete:
        raise NotComplete("relations need a complete closure")
    cosets = tuple(report.vertices[k] for k in report.order)
    index = {dc.key: j for j, dc in enumerate(cosets)}
    rows = []
    for dc in cosets:
        chi = algebra.basis(dc)
        product = chi.star() * chi
        row = [Fraction(0)] * len(cosets)
        for target, coeff in product.terms():
            if not coeff.is_real or coeff.re < 0:
                raise RowIdentityViolation(
                    f"non-real or negative relation coefficient {coeff}")
            if target.key not in index:
                raise RowIdentityViolation(
                    "relation support escaped the closure (closure is not "
                    "successor-closed; engine bug)")
            row[index[target.key]] = coeff.re
        if sum(q * c.L for q, c in zip(row, cosets)) != Fraction(dc.L) ** 2:
            raise RowIdentityViolation(
                f"row for {algebra.pair.oracle.format_element(dc.key)} breaks "
                "the exact identity sum(lambda * L) == L^2")
        rows.append(tuple(row))
    return RelationsMatrix(cosets=cosets, lam=tuple(rows))


# -- outward-rounded floating point -----------------------------------------


def float_up(q: Fraction) -> float:
    """Smallest convenient float >= q (directed rounding via nextafter)."""
    f = float(q)
    while Fraction(f) < q:
        f = math.nextafter(f, math.inf)
    return f


def add_up(a: float, b: float) -> float:
    s = a + b
    while Fraction(s) < Fraction(a) + Fraction(b):
        s = math.nextafter(s, math.inf)
    return s


def mul_up(a: float, b: float) -> float:
    p = a * b
    while Fraction(p) < Fraction(a) * Fraction(b):
        p = math.nextafter(p, math.inf)
    return p


def sqrt_up(q: Fraction) -> float:
    """Float upper bound for sqrt(q), certified by exact squaring."""
    if q < 0:
        raise ValueError("negative radicand")
    s = math.sqrt(float_up(q))
    while Fraction(s) * Fraction(s) < q:
        s = math.nextafter(s, math.inf)
    return s


def beta_bound(rel: RelationsMatrix) -> float:
    """Upper bound beta^2 for the norm of every vertex in the closed set.

    beta is the sum over rows of sqrt(row sum); every floating operation
    rounds outward, so the result dominates the exact value.
    """
    beta = 0.0
    for row_sum in rel.row_sums():
        beta = add_up(beta, sqrt_up(row_sum))
    return mul_up(beta, beta)


# -- exact rational linear algebra -------------------------------------------


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(rows)
    m = [list(r) for r in rows]
    if any(len(r) != n for r in m):
        raise DimensionMismatch("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(rows: Sequence[Sequence[Fraction]]) -> Optional[list[list[Fraction]]]:
    """Exact inverse by Gauss-Jordan elimination, or None when singular."""
    n = len(rows)
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise DimensionMismatch("matrix is not square")
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return inv


def _integer_scaling(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    scaled = []
    for row in rows:
        denom = math.lcm(*(q.denominator for q in row)) if row else 1
        scaled.append([int(q * denom) for q in row])
    return scaled


# -- the certificate ----------------------------------------------------------


def tangent_matrix(rel: RelationsMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix A with A[i][i] = 2*L_i - lam[i][i] and A[i][j] = -lam[i][j] off it."""
    n = rel.size
    z = [dc.L for dc in rel.cosets]
    return tuple(
        tuple(
            (2 * z[i] - rel.lam[i][i]) if i == j else -rel.lam[i][j]
            for j in range(n)
        )
        for i in range(n)
    )


def l1_certificate(algebra: HeckeAlgebra, report: ClosureReport) -> BoundCertificate:
    """Certify bound L(s) for every vertex of a complete closure.

    Verifies, in exact arithmetic: A*z == z^2 componentwise; A nonsingular
    (fraction-free determinant of the integer scaling); the inverse of A is
    entrywise nonnegative; and every diagonal entry dominates L.  Raises
    :class:`CheckFailed` if any check fails.
    """
    rel = relations(algebra, report)
    n = rel.size
    z = tuple(dc.L for dc in rel.cosets)
    a = tangent_matrix(rel)

    az = [sum(a[i][j] * z[j] for j in range(n)) for i in range(n)]
    az_ok = all(az[i] == Fraction(z[i]) ** 2 for i in range(n))

    nonsingular = bareiss_determinant(_integer_scaling(a)) != 0
    inverse = rational_inverse(a) if nonsingular else None
    inverse_ok = inverse is not None and all(
        entry >= 0 for row in inverse for entry in row)
    diagonal_ok = all(a[i][i] >= z[i] > 0 for i in range(n))

    checks = CertificateChecks(
        az_equals_z_squared=az_ok,
        a_nonsingular=nonsingular,
        inverse_columns_nonnegative=inverse_ok,
        diagonal_dominates=diagonal_ok,
    )
    if not checks.all_pass:
        raise CheckFailed(checks.first_failure(), checks)
    bounds = {dc.key: Fraction(dc.L) for dc in rel.cosets}
    return BoundCertificate(
        relations=rel,
        z=z,
        matrix_a=a,
        checks=checks,
        beta_squared=beta_bound(rel),
        bounds=bounds,
    )


def element_bound(f: HeckeElement, bounds: dict) -> Fraction:
    """Norm bound for a general element: sum of |coefficient| * bound(key).

    Coincides with the L1-norm when every bound is the L1 one and the
    coefficients are real.
    """
    total = Fraction(0)
    for dc, c in f.terms():
        if dc.key not in bounds:
            raise MissingCertificate(f.algebra.pair.oracle.format_element(dc.key))
        modulus, _ = c.modulus_bound()
        total += modulus * bounds[dc.key]
    return total


def in_region_b(x: Sequence[Fraction], rel: RelationsMatrix) -> bool:
    """True iff x >= 0 and x_i^2 <= sum_j lam[i][j] * x_j for every row i."""
    if len(x) != rel.size:
        raise DimensionMismatch(f"point has dimension {len(x)}, matrix {rel.size}")
    if any(xi < 0 for xi in x):
        return False
    for i in range(rel.size):
        if Fraction(x[i]) ** 2 > sum(rel.lam[i][j] * x[j] for j in range(rel.size)):
            return False
    return True


def certificate_json_dict(cert: BoundCertificate, algebra: HeckeAlgebra) -> dict:
    fmt = algebra.pair.oracle.format_element
    return {
        "cosets": [fmt(dc.key) for dc in cert.relations.cosets],
        "lambda": [[_frac(q) for q in row] for row in cert.relations.lam],
        "z": list(cert.z),
        "A": [[_frac(q) for q in row] for row in cert.matrix_a],
        "checks": {
            "az_equals_z_squared": cert.checks.az_equals_z_squared,
            "a_nonsingular": cert.checks.a_nonsingular,
            "inverse_columns_nonnegative": cert.checks.inverse_columns_nonnegative,
            "diagonal_dominates": cert.checks.diagonal_dominates,
        },
        "beta_squared": cert.beta_squared,
        "bounds": {fmt(key): _frac(bound) for key, bound in cert.bounds.items()},
    }


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
