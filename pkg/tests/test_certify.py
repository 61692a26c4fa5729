"""Relations matrices, the crude outward-rounded bound, and exact certificates."""

import math
from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, strategies as st

import support
from conftest import POSITIVE_NAMES
from heckegraph import certify
from heckegraph.certify import (CheckFailed, DimensionMismatch, MissingCertificate,
                                RelationsMatrix, add_up, bareiss_determinant,
                                beta_bound, element_bound, float_up, in_region_b,
                                l1_certificate, mul_up, rational_inverse, relations,
                                sqrt_up, tangent_matrix)
from heckegraph.graph import NotComplete, closure


def complete_closures(bench, rng, count=8, budget=256):
    seen = set()
    out = []
    for _ in range(count * 3):
        root = bench.pair.double_coset(bench.entry.sampler(rng))
        if root.key in seen:
            continue
        seen.add(root.key)
        report = closure(bench.algebra, root, budget=budget)
        if report.complete:
            out.append(report)
        if len(out) == count:
            break
    return out


class TestRelations:
    def test_singleton_unit(self, quasicyclic):
        report = closure(quasicyclic.algebra, quasicyclic.pair.identity_coset())
        rel = relations(quasicyclic.algebra, report)
        assert rel.lam == ((Fraction(1),),)

    def test_directed_closure_rows(self, bc_axb):
        t = bc_axb.pair.double_coset(bc_axb.oracle.make(0, Fraction(1, 2)))
        rel = relations(bc_axb.algebra, closure(bc_axb.algebra, t))
        assert [dc.key for dc in rel.cosets] == \
            [t.key, bc_axb.pair.identity_coset().key]
        assert rel.lam == ((Fraction(0), Fraction(1)),
                           (Fraction(0), Fraction(1)))

    def test_quasicyclic_half_closure_row_identity(self, quasicyclic):
        root = quasicyclic.pair.double_coset(
            quasicyclic.oracle.make(Fraction(1, 2), -1))
        rel = relations(quasicyclic.algebra, closure(quasicyclic.algebra, root))
        for row, dc in zip(rel.lam, rel.cosets):
            assert sum(q * c.L for q, c in zip(row, rel.cosets)) == dc.L ** 2

    def test_requires_complete_closure(self, infinite_dihedral):
        root = infinite_dihedral.pair.double_coset(
            infinite_dihedral.oracle.make(1, -1))
        partial = closure(infinite_dihedral.algebra, root, budget=8)
        with pytest.raises(NotComplete):
            relations(infinite_dihedral.algebra, partial)

    @pytest.mark.parametrize("name", POSITIVE_NAMES)
    def test_row_identity_everywhere(self, workbench, name):
        bench = workbench[name]
        rng = Random(51)
        for report in complete_closures(bench, rng):
            rel = relations(bench.algebra, report)
            for row, dc in zip(rel.lam, rel.cosets):
                assert sum(q * c.L for q, c in zip(row, rel.cosets)) == dc.L ** 2
                assert all(q >= 0 for q in row)


class TestOutwardRounding:
    @given(st.fractions(min_value=0, max_value=10 ** 9, max_denominator=10 ** 6))
    def test_sqrt_up_dominates(self, q):
        s = sqrt_up(q)
        assert Fraction(s) * Fraction(s) >= q

    @given(st.fractions(min_value=0, max_value=10 ** 9, max_denominator=10 ** 6))
    def test_float_up_dominates(self, q):
        assert Fraction(float_up(q)) >= q

    @given(st.floats(min_value=0, max_value=1e12),
           st.floats(min_value=0, max_value=1e12))
    def test_add_and_mul_dominate(self, a, b):
        assert Fraction(add_up(a, b)) >= Fraction(a) + Fraction(b)
        assert Fraction(mul_up(a, b)) >= Fraction(a) * Fraction(b)

    def test_beta_on_known_rows(self, quasicyclic):
        # rows summing to 1 and 4 give beta = 3, beta^2 = 9
        unit = quasicyclic.pair.identity_coset()
        other = quasicyclic.pair.double_coset(
            quasicyclic.oracle.make(Fraction(1, 4), -1))
        rel = RelationsMatrix(
            cosets=(other, unit),
            lam=((Fraction(0), Fraction(1)), (Fraction(4), Fraction(0))),
        )
        value = beta_bound(rel)
        assert 9.0 <= value <= 9.0 * (1 + 1e-12)

    def test_beta_singleton(self, quasicyclic):
        report = closure(quasicyclic.algebra, quasicyclic.pair.identity_coset())
        assert beta_bound(relations(quasicyclic.algebra, report)) == 1.0

    @pytest.mark.parametrize("name", POSITIVE_NAMES)
    def test_beta_brackets_exact_value(self, workbench, name):
        # below the tight rational upper estimate, above a rational lower one
        from heckegraph.gaussian import rational_sqrt_upper

        bench = workbench[name]
        rng = Random(52)
        for report in complete_closures(bench, rng, count=4):
            rel = relations(bench.algebra, report)
            reported = Fraction(beta_bound(rel))
            upper = sum(rational_sqrt_upper(s, heron_steps=30) for s in rel.row_sums())
            lower = Fraction(0)
            scale = 10 ** 9
            for s in rel.row_sums():
                lower += Fraction(
                    math.isqrt(s.numerator * scale * scale // s.denominator), scale)
            assert lower * lower <= reported <= upper * upper * (1 + Fraction(1, 10 ** 9))


class TestCertificate:
    def test_group_algebra_two_by_two(self, group_algebra):
        root = group_algebra.pair.double_coset((1, 2, 0))
        cert = l1_certificate(group_algebra.algebra, closure(group_algebra.algebra, root))
        assert cert.z == (1, 1)
        assert cert.matrix_a == ((Fraction(2), Fraction(-1)),
                                 (Fraction(0), Fraction(1)))
        assert all(bound == 1 for bound in cert.bounds.values())

    def test_quasicyclic_chain_certificate(self, quasicyclic):
        o = quasicyclic.oracle
        root = quasicyclic.pair.double_coset(o.make(Fraction(1, 8), -1))
        cert = l1_certificate(quasicyclic.algebra, closure(quasicyclic.algebra, root))
        assert cert.checks.all_pass
        by_key = {o.format_element(k): v for k, v in cert.bounds.items()}
        assert by_key == {"1/8,+": 2, "1/4,+": 2, "1/2,+": 1, "0,+": 1}

    @pytest.mark.parametrize("name", POSITIVE_NAMES)
    def test_all_checks_pass_on_catalog_closures(self, workbench, name):
        bench = workbench[name]
        rng = Random(53)
        for report in complete_closures(bench, rng):
            cert = l1_certificate(bench.algebra, report)
            assert cert.checks.all_pass
            for dc in cert.relations.cosets:
                assert cert.bounds[dc.key] == dc.L
                assert cert.bounds[dc.key] == bench.algebra.basis(dc).l1_norm()
            assert Fraction(cert.beta_squared) >= max(cert.z)

    def test_check_failure_aborts(self, quasicyclic):
        # a corrupted relations matrix must be caught, not certified
        unit = quasicyclic.pair.identity_coset()
        rel = RelationsMatrix(cosets=(unit,), lam=((Fraction(3),),))
        a = tangent_matrix(rel)
        assert a == ((Fraction(-1),),)
        checks = certify.CertificateChecks(
            az_equals_z_squared=False, a_nonsingular=True,
            inverse_columns_nonnegative=False, diagonal_dominates=False)
        assert checks.first_failure() == "az_equals_z_squared"
        with pytest.raises(CheckFailed):
            raise CheckFailed(checks.first_failure(), checks)


class TestRegionAndElementBounds:
    def test_zero_and_z_in_region(self, bc_axb):
        t = bc_axb.pair.double_coset(bc_axb.oracle.make(0, Fraction(1, 2)))
        rel = relations(bc_axb.algebra, closure(bc_axb.algebra, t))
        n = rel.size
        zero = tuple(Fraction(0) for _ in range(n))
        z = tuple(Fraction(dc.L) for dc in rel.cosets)
        assert in_region_b(zero, rel)
        assert in_region_b(z, rel)
        for i in range(n):
            row_value = sum(rel.lam[i][j] * z[j] for j in range(n))
            assert z[i] ** 2 == row_value  # z sits on the boundary

    def test_bumped_z_leaves_region(self, bc_axb):
        t = bc_axb.pair.double_coset(bc_axb.oracle.make(0, Fraction(1, 2)))
        rel = relations(bc_axb.algebra, closure(bc_axb.algebra, t))
        bumped = (Fraction(2), Fraction(1))
        assert not in_region_b(bumped, rel)

    def test_dimension_mismatch(self, bc_axb):
        t = bc_axb.pair.double_coset(bc_axb.oracle.make(0, Fraction(1, 2)))
        rel = relations(bc_axb.algebra, closure(bc_axb.algebra, t))
        with pytest.raises(DimensionMismatch):
            in_region_b((Fraction(1),), rel)

    @pytest.mark.parametrize("name", POSITIVE_NAMES)
    def test_z_dominates_region_samples(self, workbench, name):
        bench = workbench[name]
        rng = Random(54)
        for report in complete_closures(bench, rng, count=4):
            rel = relations(bench.algebra, report)
            z = tuple(Fraction(dc.L) for dc in rel.cosets)
            for point in support.sample_in_region(rel, rng, 25):
                assert all(x <= zi for x, zi in zip(point, z))

    def test_element_bound_examples(self, bc_axb):
        alg = bc_axb.algebra
        t_class = bc_axb.pair.double_coset(bc_axb.oracle.make(0, Fraction(1, 2)))
        cert = l1_certificate(alg, closure(alg, t_class))
        unit = alg.unit()
        assert element_bound(unit, cert.bounds) == 1
        f = 3 * unit + alg.basis(t_class)
        assert element_bound(f, cert.bounds) == 4
        assert element_bound(f, cert.bounds) == f.l1_norm()

    def test_element_bound_missing_certificate(self, bc_axb):
        alg = bc_axb.algebra
        f = alg.coset(bc_axb.oracle.make(0, 3))
        with pytest.raises(MissingCertificate):
            element_bound(f, {})


class TestExactLinearAlgebra:
    def test_bareiss_matches_definition(self):
        rng = Random(55)
        for _ in range(50):
            n = rng.randint(1, 4)
            m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            assert bareiss_determinant(m) == _expansion_det(m)

    def test_rational_inverse_round_trip(self):
        rng = Random(56)
        for _ in range(30):
            n = rng.randint(1, 4)
            m = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                  for _ in range(n)] for _ in range(n)]
            inv = rational_inverse(m)
            det = bareiss_determinant(
                certify._integer_scaling(m))
            if det == 0:
                assert inv is None
                continue
            prod = [[sum(m[i][k] * inv[k][j] for k in range(n)) for j in range(n)]
                    for i in range(n)]
            assert prod == [[Fraction(int(i == j)) for j in range(n)]
                            for i in range(n)]

    def test_singular_matrix(self):
        assert rational_inverse([[Fraction(1), Fraction(2)],
                                 [Fraction(2), Fraction(4)]]) is None
        assert bareiss_determinant([[1, 2], [2, 4]]) == 0


def _expansion_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _expansion_det(minor)
    return total


def test_certificate_json_shape(bc_axb):
    alg = bc_axb.algebra
    t = bc_axb.pair.double_coset(bc_axb.oracle.make(0, Fraction(1, 2)))
    cert = l1_certificate(alg, closure(alg, t))
    doc = certify.certificate_json_dict(cert, alg)
    assert doc["cosets"] == ["0,1/2", "0,1"]
    assert doc["z"] == [1, 1]
    assert doc["A"] == [["2/1", "-1/1"], ["0/1", "1/1"]]
    assert doc["checks"]["inverse_columns_nonnegative"] is True
    assert doc["bounds"] == {"0,1/2": "1/1", "0,1": "1/1"}
    assert isinstance(doc["beta_squared"], float)
