"""Tests for Sturm verdicts, deterministic sampling and the lemma gate."""

import random
from fractions import Fraction

import pytest

from polygram.grammar import (
    FamilyKind,
    family_grammar,
    iterate_steps,
    surrogate_operator,
)
from polygram.checks import known_counterexample_point
from polygram.polyring import (
    A,
    B,
    GR_I,
    GaussianRational,
    P,
    Polynomial,
    U,
    V,
    X,
    Y,
    Z,
)
from polygram.stability import (
    NotUnivariateError,
    Witness,
    ZeroPolynomialError,
    _FactoredGate,
    _operator_parts,
    lemma_gate,
    partner_map,
    sample_falsify,
    sample_point,
    specialization_suite,
    stirling_second_table,
    sturm_report,
    verify_gessel_stanley,
    verify_tn_identity,
)

term = Polynomial.term
var = Polynomial.variable
x = var(X(0))


def poly_from_coeffs(coeffs) -> Polynomial:
    out = Polynomial.zero()
    for e, c in enumerate(coeffs):
        out = out + term(c, [X(0)] * e)
    return out


class TestSturm:
    def test_constructed_negative_roots(self):
        p = (x + 1) * (x + 2) * (x + 3)
        r = sturm_report(p)
        assert r.all_real and r.distinct and r.all_nonpositive
        assert r.real_root_count == 3 == r.degree

    def test_no_real_roots(self):
        r = sturm_report(x * x + 1)
        assert r.real_root_count == 0
        assert not r.all_real
        assert r.distinct

    def test_second_order_row_three(self):
        p = poly_from_coeffs([0, 1, 8, 6])
        r = sturm_report(p)
        assert r.all_real and r.distinct and r.all_nonpositive

    def test_repeated_roots_counted_with_multiplicity(self):
        p = x * x * (x + 1)
        r = sturm_report(p)
        assert r.all_real
        assert not r.distinct
        assert r.real_root_count == 3

    def test_positive_root_breaks_nonpositivity(self):
        r = sturm_report(x * x - 1)
        assert r.all_real and r.distinct
        assert not r.all_nonpositive

    def test_constant_polynomial(self):
        r = sturm_report(Polynomial.constant(5))
        assert r.degree == 0 and r.real_root_count == 0 and r.all_real

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            sturm_report(Polynomial.zero())

    def test_multivariate_rejected(self):
        with pytest.raises(NotUnivariateError):
            sturm_report(term(1, [X(0), Y(0)]))

    def test_against_constructed_factorizations(self):
        # Oracle: build polynomials from known linear factors (d*x + c has
        # the single root -c/d) and optional irreducible quadratics.
        rng = random.Random(20240814)
        for _ in range(40):
            n_linear = rng.randint(1, 5)
            n_quad = rng.randint(0, 2)
            p = Polynomial.one()
            roots = []
            while len(roots) < n_linear:
                den = rng.randint(1, 6)
                num = rng.randint(0, 12)
                root = Fraction(-num, den)
                if root in roots:
                    continue
                roots.append(root)
                p = p * (den * x + num)
            quad_constants = [rng.randint(1, 9) for _ in range(n_quad)]
            for c in quad_constants:
                p = p * (x * x + c)
            r = sturm_report(p)
            assert r.real_root_count == n_linear
            assert r.all_real == (n_quad == 0)
            assert r.distinct == (len(set(quad_constants)) == n_quad)
            assert r.all_nonpositive

    def test_distinct_flag_against_constructed_duplicates(self):
        p = (x + 2) * (x + 2) * (x + 5)
        r = sturm_report(p)
        assert not r.distinct
        assert r.real_root_count == 3


class TestSampling:
    def test_points_are_reproducible(self):
        vs = [X(1), Y(2), A(0)]
        assert sample_point(vs, 42, 17) == sample_point(vs, 42, 17)

    def test_points_depend_only_on_seed_and_index(self):
        vs = [X(1), Y(2)]
        stream_a = [sample_point(vs, 7, i) for i in range(5)]
        stream_b = [sample_point(vs, 7, i) for i in reversed(range(5))]
        assert stream_a == list(reversed(stream_b))

    def test_different_seeds_differ(self):
        vs = [X(1)]
        assert sample_point(vs, 1, 0) != sample_point(vs, 2, 0)

    def test_coordinate_ranges(self):
        for i in range(300):
            value = sample_point([X(1)], 42, i)[X(1)]
            assert Fraction(-10) <= value.re <= Fraction(10)
            assert Fraction(0) < value.im <= Fraction(10)
            assert value.re.denominator <= 64
            assert value.im.denominator <= 64


class TestSampleFalsify:
    def test_finds_injected_zero(self):
        p = term(1, [Z(1), Z(2)]) + 1
        witness = sample_falsify(p, 50, 42, inject=[{Z(1): GR_I, Z(2): GR_I}])
        assert witness is not None
        assert p.evaluate(witness.point).is_zero

    def test_sum_has_no_upper_half_plane_zero(self):
        p = var(Z(1)) + var(Z(2))
        assert sample_falsify(p, 1000, 42) is None

    def test_deterministic_result(self):
        p = term(1, [Z(1), Z(2)]) + 1
        assert sample_falsify(p, 500, 9) == sample_falsify(p, 500, 9)

    def test_rejects_zero_polynomial(self):
        with pytest.raises(ZeroPolynomialError):
            sample_falsify(Polynomial.zero(), 10, 1)

    def test_injected_point_outside_domain_is_skipped(self):
        p = var(Z(1))
        bad = {Z(1): GaussianRational(Fraction(0), Fraction(0))}
        assert sample_falsify(p, 10, 3, inject=[bad]) is None

    def test_witness_requires_positive_imaginary_parts(self):
        with pytest.raises(ValueError):
            Witness({Z(1): GaussianRational(Fraction(1), Fraction(0))})


class TestLemmaGate:
    def test_partition_surrogate_expansion_matches_closed_form(self):
        variables = [A(0), B(1), B(2)]
        partners = partner_map(variables)
        op = surrogate_operator("partition_multi", 3)
        gate = lemma_gate(op, variables, samples=0, seed=1)
        binomials = {
            v: var(v) + var(partners[v]) for v in variables
        }
        full = Polynomial.one()
        for f in binomials.values():
            full = full * f
        expected = var(B(3)) * full
        for target in (B(1), B(2)):
            cofactor = Polynomial.one()
            for v in variables:
                if v != target:
                    cofactor = cofactor * binomials[v]
            expected = expected + var(B(3)) * cofactor
        assert gate.polynomial == expected
        assert not gate.is_identically_zero

    def test_grammar_gate_expansion_matches_closed_form(self):
        variables = [X(0), Y(0), Z(0), X(1), Y(1), Z(1)]
        partners = partner_map(variables)
        op = family_grammar(FamilyKind.STIRLING2_MULTI, 2)
        gate = lemma_gate(op, variables, samples=0, seed=1)
        binomials = {v: var(v) + var(partners[v]) for v in variables}
        multiplier = term(1, [X(2), Y(2), Z(2)])
        expected = Polynomial.zero()
        for target in variables:
            cofactor = Polynomial.one()
            for v in variables:
                if v != target:
                    cofactor = cofactor * binomials[v]
            expected = expected + multiplier * cofactor
        assert gate.polynomial == expected

    @pytest.mark.parametrize(
        "kind,step,families",
        [
            (FamilyKind.STIRLING2_MULTI, 2, (X, Y, Z)),
            (FamilyKind.EULERIAN_MULTI, 2, (X, Y)),
            (FamilyKind.MARKED_MULTI, 2, (X, Y, Z)),
        ],
    )
    def test_stability_preserving_steps_produce_no_witness(self, kind, step, families):
        variables = [f(i) for i in range(step) for f in families]
        gate = lemma_gate(family_grammar(kind, step), variables, 800, 42)
        assert gate.witness is None
        assert not gate.is_identically_zero

    def test_raw_partition_step_two_is_falsified(self):
        gate = lemma_gate(
            family_grammar(FamilyKind.PARTITION_MULTI, 2),
            [A(0), B(1)],
            samples=0,
            seed=42,
            inject=[known_counterexample_point()],
        )
        expected = (
            term(1, [A(0), B(1), B(2)])
            + term(1, [A(0), P(1), B(2)])
            + term(1, [A(0), B(2)])
            + term(1, [P(0), B(2)])
        )
        assert gate.polynomial == expected
        assert gate.witness is not None
        assert gate.polynomial.evaluate(gate.witness.point).is_zero
        assert all(v.im > 0 for v in gate.witness.point.values())

    def test_factored_evaluator_matches_expanded_polynomial(self):
        op = family_grammar(FamilyKind.STIRLING2_MULTI, 2)
        variables = [f(i) for i in range(2) for f in (X, Y, Z)]
        partners = partner_map(variables)
        gate_poly = lemma_gate(op, variables, samples=0, seed=5).polynomial
        scalar, terms = _operator_parts(op, sorted(variables))
        all_vars = sorted(
            set(gate_poly.variables()) | set(variables) | set(partners.values())
        )
        fast = _FactoredGate(scalar, terms, sorted(variables), partners, all_vars)
        for i in range(25):
            point = sample_point(all_vars, 5, i)
            assert fast.value_at(point) == gate_poly.evaluate(point)
        # Integer-triple path agrees with the exact path on the stream.
        from polygram.stability import _sample_triples, _triple_to_gaussian

        for i in range(25):
            triples = _sample_triples(len(all_vars), 5, i)
            point = {v: _triple_to_gaussian(t) for v, t in zip(all_vars, triples)}
            assert fast.is_zero_at_triples(triples) == gate_poly.evaluate(point).is_zero

    def test_gate_samples_match_direct_falsification(self):
        op = surrogate_operator("partition_multi", 2)
        variables = [A(0), B(1)]
        gate = lemma_gate(op, variables, 300, 11)
        direct = sample_falsify(gate.polynomial, 300, 11)
        assert (gate.witness is None) == (direct is None)

    def test_partner_family_cannot_be_gated(self):
        with pytest.raises(ValueError):
            partner_map([P(0)])


class TestSpecializationSuite:
    def test_order_one(self):
        suite = specialization_suite(1)
        assert suite["An"] == x
        assert suite["Cn"] == x
        assert suite["Tn"] == x
        assert suite["Sn"] == x
        assert suite["Bn"] == 2 * x
        assert suite["Mn"] == x + 1

    def test_order_two_and_three(self):
        assert specialization_suite(2, names=("Tn",))["Tn"] == 2 * x + 2 * x * x
        assert specialization_suite(2, names=("Cn",))["Cn"] == x + 2 * x * x
        s3 = specialization_suite(3, names=("Sn", "Cn"))
        assert s3["Sn"] == x + 3 * x**2 + x**3
        assert s3["Cn"] == x + 8 * x**2 + 6 * x**3

    def test_descent_counts_match_univariate_output(self):
        from polygram.structures import WordFamily, coefficient_table

        for n in range(1, 5):
            bn = specialization_suite(n, names=("Bn",))["Bn"]
            table = coefficient_table(WordFamily.LEGENDRE, n, "des")
            expected = Polynomial.zero()
            for k, c in table.items():
                expected = expected + term(c, [X(0)] * k)
            assert bn == expected

    def test_barred_descent_counts_match_univariate_output(self):
        from polygram.structures import WordFamily, coefficient_table

        for n in range(1, 4):
            mn = specialization_suite(n, names=("Mn",))["Mn"]
            table = coefficient_table(WordFamily.LEGENDRE, n, "barred_des")
            expected = Polynomial.zero()
            for k, c in table.items():
                expected = expected + term(c, [X(0)] * k)
            assert mn == expected

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            specialization_suite(2, names=("Qn",))


class TestIdentities:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_doubling_identity(self, n):
        assert verify_tn_identity(n)

    def test_doubling_identity_values(self):
        tn = specialization_suite(4, names=("Tn",))["Tn"]
        row = {1: 1, 2: 22, 3: 58, 4: 24}
        expected = Polynomial.zero()
        for k, c in row.items():
            expected = expected + term(2 ** (4 - k) * c, [X(0)] * k)
        assert tn == expected

    @pytest.mark.parametrize("k", range(1, 4))
    def test_series_identity(self, k):
        assert verify_gessel_stanley(k, 6)

    def test_series_frozen_values(self):
        # k = 2: coefficients of (x + 2x^2) / (1-x)^5 are 0, 1, 7, 25, 65...
        table = stirling_second_table(8)
        assert [table[n + 2][n] for n in range(5)] == [0, 1, 7, 25, 65]

    def test_stirling_table_matches_partition_enumeration(self):
        from polygram.structures import WordFamily, coefficient_table

        table = stirling_second_table(7)
        for n in range(1, 8):
            blocks = coefficient_table(WordFamily.PARTITION, n, "blocks")
            for k, count in blocks.items():
                assert table[n][k] == count

    def test_series_parameter_validation(self):
        with pytest.raises(ValueError):
            verify_gessel_stanley(0, 4)
