import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from quadrules.associate import (ALL_NEGATIVE, ALL_POSITIVE, AssociateWeights,
                                 COMPANION_PAIRS, CompanionPair,
                                 IDENTICALLY_ZERO, SIGN_CHANGE,
                                 associate_value, bracket, check_assumption_A,
                                 companion_pair, derive_weights)
from quadrules.composite import composite_values
from quadrules.integrand import Integrand, builtin_integrand
from quadrules.precision import pi_at, ulp, workprec
from quadrules.rules import Interval, RULES

from oracles import exact_poly_integral, mpf_from_fraction, random_poly_tree


class TestDeriveWeights:
    def test_left_right_pair(self):
        assert derive_weights(2, 2) == AssociateWeights(1, 1)

    def test_midpoint_trapezoid_pair(self):
        assert derive_weights(24, 12) == AssociateWeights(2, 1)

    def test_t2_simpson_pair(self):
        assert derive_weights(1920, 2880) == AssociateWeights(2, 3)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            derive_weights(0, 4)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6),
           st.integers(1, 10))
    def test_invariant_under_common_scaling(self, d1, d2, k):
        assert derive_weights(k * d1, k * d2) == derive_weights(d1, d2)

    def test_weights_validate_coprimality(self):
        with pytest.raises(ValueError):
            AssociateWeights(2, 4)

    def test_pairs_use_their_rules_denominators(self):
        expected = {("L", "R"): (1, 1), ("M", "T"): (2, 1),
                    ("T2", "S"): (2, 3)}
        for pair in COMPANION_PAIRS:
            w = pair.weights()
            key = (pair.positive.name, pair.negative.name)
            assert (w.c1, w.c2) == expected[key]

    def test_companion_pair_validation(self):
        with pytest.raises(ValueError):
            CompanionPair(RULES["L"], RULES["T"])  # degree mismatch
        with pytest.raises(ValueError):
            CompanionPair(RULES["T"], RULES["M"])  # signs swapped

    def test_companion_pair_lookup(self):
        assert companion_pair("T", "M") is COMPANION_PAIRS[1]
        assert companion_pair("L", "M") is None


class TestAssociateValue:
    def test_formula_orientation(self):
        with workprec(53):
            v = associate_value(2 * mp.pi, mpf(0), AssociateWeights(2, 1))
            assert abs(v - 4 * mp.pi / 3) <= 4 * ulp(v, 53)

    def test_identical_operands(self):
        w = AssociateWeights(2, 3)
        assert associate_value(mpf("1.25"), mpf("1.25"), w) == mpf("1.25")

    def test_example_2_single_panel_simpson(self):
        # hand-formula midpoint and trapezoid values on 6/sqrt(1-x^2)
        with workprec(53):
            def f(x):
                return 6 / mp.sqrt(1 - x * x)

            m1 = mpf("0.5") * f(mpf("0.25"))
            t1 = mpf("0.25") * (f(mpf(0)) + f(mpf("0.5")))
            assert abs(m1 - mpf("3.0984")) < 5e-5
            assert abs(t1 - mpf("3.2321")) < 5e-5
            v = associate_value(m1, t1, derive_weights(24, 12))
            assert abs(v - mpf("3.1429414")) < 5e-8
            assert abs(v - (2 * m1 + t1) / 3) <= 2 * ulp(v, 53)

    @settings(max_examples=300, deadline=None)
    @given(st.fractions(min_value=-100, max_value=100),
           st.fractions(min_value=-100, max_value=100),
           st.integers(1, 5000), st.integers(1, 5000))
    def test_containment_and_unreduced_form(self, fx, fy, d1, d2):
        x = mpf_from_fraction(fx, 53)
        y = mpf_from_fraction(fy, 53)
        w = derive_weights(d1, d2)
        v = associate_value(x, y, w)
        assert min(x, y) <= v <= max(x, y)
        with workprec(53):
            unreduced = (d1 * x + d2 * y) / (d1 + d2)
        scale = max(abs(x), abs(y), mpf(1))
        assert abs(v - unreduced) <= 8 * ulp(scale, 53)


class TestBracket:
    def test_orders_endpoints(self):
        b = bracket(mpf(4), mpf(2))
        assert (b.lo, b.hi) == (2, 4)
        assert b.contains(3) and not b.contains(5)

    def test_degenerate(self):
        b = bracket(mpf(7), mpf(7))
        assert b.lo == b.hi == 7
        assert b.width == 0

    def test_example_3_single_panel_brackets_pi(self):
        f = builtin_integrand("atan2")
        vals = composite_values(f, f.interval, ("L", "M"), 1)
        assert vals["L"] == 2 and vals["M"] == 4
        assert bracket(vals["L"], vals["M"]).contains(pi_at(85))

    def test_example_2_single_panel_brackets_pi(self):
        f = builtin_integrand("asin6")
        vals = composite_values(f, f.interval, ("L", "R"), 1)
        assert vals["L"] == 3
        assert abs(vals["R"] - mpf("3.4641016")) < 5e-8
        assert bracket(vals["L"], vals["R"]).contains(pi_at(85))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            bracket(mpf("inf"), mpf(0))


class TestCheckAssumptionA:
    def test_sign_change_for_example_1_second_derivative(self):
        f = builtin_integrand("sin2")  # f'' = 4 cos 2x flips at pi/4
        verdict = check_assumption_A(f, 2, f.interval)
        assert verdict.kind == SIGN_CHANGE
        assert verdict.tag == "A!"
        lo, hi = verdict.subinterval
        quarter_pi = pi_at(53) / 4
        assert lo <= quarter_pi <= hi

    def test_all_positive_despite_a_zero_sample(self):
        f = builtin_integrand("asin6")  # f'(0) = 0, f' > 0 beyond
        verdict = check_assumption_A(f, 1, f.interval)
        assert verdict.kind == ALL_POSITIVE
        assert verdict.tag == "A+"
        assert verdict.uniform

    def test_all_negative(self):
        f = Integrand.from_text("1-x", 0, 1)
        verdict = check_assumption_A(f, 1, f.interval)
        assert verdict.kind == ALL_NEGATIVE

    def test_identically_zero_for_constants(self):
        f = Integrand.from_text("5", 0, 1)
        verdict = check_assumption_A(f, 1, f.interval)
        assert verdict.kind == IDENTICALLY_ZERO
        assert verdict.tag == "A0"

    def test_requires_two_samples(self):
        f = builtin_integrand("sin2")
        with pytest.raises(ValueError):
            check_assumption_A(f, 1, f.interval, samples=1)

    def test_endpoints_are_sampled(self):
        # f' of x^2 on [-1, 1] is negative only at the left endpoint region
        f = Integrand.from_text("x^2", -1, 1)
        verdict = check_assumption_A(f, 1, f.interval, samples=3)
        assert verdict.kind == SIGN_CHANGE


class TestCompanionContainment:
    """With a uniform-signed controlling derivative, the exact integral and
    the associate value both lie in [min(X, Y), max(X, Y)]."""

    PREC = 128

    def test_bracket_contains_integral_for_random_polynomials(self):
        rng = random.Random(424242)
        slack = mpf(2) ** -100
        checked = {pair: 0 for pair in COMPANION_PAIRS}
        for _ in range(100):
            tree, degree = random_poly_tree(rng)
            a = Fraction(rng.randint(-4, 3))
            b = a + rng.randint(1, 4)
            f = Integrand(tree, Interval(int(a), int(b)))
            exact = mpf_from_fraction(
                exact_poly_integral(tree, max(degree, 1), a, b), 160)
            for n in (1, 2, 5):
                values = composite_values(
                    f, f.interval, ("L", "R", "M", "T", "S", "T2"), n,
                    self.PREC)
                for pair in COMPANION_PAIRS:
                    x = values[pair.positive.name]
                    y = values[pair.negative.name]
                    enclosure = bracket(x, y)
                    assoc = associate_value(x, y, pair.weights())
                    assert enclosure.contains(assoc)
                    verdict = check_assumption_A(
                        f, pair.derivative_order, f.interval,
                        precision=self.PREC)
                    if verdict.kind in (ALL_POSITIVE, ALL_NEGATIVE):
                        pad = slack * max(1, abs(exact))
                        assert enclosure.lo - pad <= exact <= enclosure.hi + pad
                        checked[pair] += 1
                    elif verdict.kind == IDENTICALLY_ZERO:
                        pad = slack * max(1, abs(exact))
                        assert abs(x - exact) <= pad
                        assert abs(y - exact) <= pad
        # the property must actually have been exercised for every pair
        assert all(count >= 10 for count in checked.values()), checked

    def test_nested_brackets_on_example_2(self):
        f = builtin_integrand("asin6")
        reference = pi_at(160)
        for pair in COMPANION_PAIRS:
            verdict = check_assumption_A(f, pair.derivative_order, f.interval,
                                         precision=self.PREC)
            assert verdict.kind == ALL_POSITIVE
            previous = None
            for n in (1, 2, 4, 8, 16):
                values = composite_values(
                    f, f.interval,
                    (pair.positive.name, pair.negative.name), n, self.PREC)
                enclosure = bracket(values[pair.positive.name],
                                    values[pair.negative.name])
                assert enclosure.contains(reference)
                if previous is not None:
                    assert enclosure.width < previous.width
                previous = enclosure
