"""Companion pairs, associate rules (gcd-weighted means), and brackets.

Two rules of the same degree whose leading errors have opposite signs form
a companion pair.  Dividing their error denominators d1 (positive rule)
and d2 (negative rule) by gcd(d1, d2) gives coprime weights (c1, c2), and
the associate rule

    (c1 * X + c2 * Y) / (c1 + c2)

cancels the leading error terms.  Because it is a mean, the associate lies
between X and Y; when the relevant derivative of f keeps one sign on the
interval, the exact integral does too, so [min(X, Y), max(X, Y)] is a
guaranteed enclosure.  ``check_assumption_A`` decides that sign condition
numerically by sampling the symbolic derivative.

The three companion pairs here, with their weights and associates:

    (L, R)   d = (2, 2)       weights (1, 1)   associate T
    (M, T)   d = (24, 12)     weights (2, 1)   associate S
    (T2, S)  d = (1920, 2880) weights (2, 3)   associate Q
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .expr import DomainError, _eval
from .precision import as_mpf, workprec
from .rules import NEGATIVE, POSITIVE, RULES, RuleSpec, rule_meta


@dataclass(frozen=True)
class CompanionPair:
    positive: RuleSpec
    negative: RuleSpec

    def __post_init__(self):
        if self.positive.degree != self.negative.degree:
            raise ValueError("companion rules must share a degree")
        if (self.positive.error_sign, self.negative.error_sign) != \
                (POSITIVE, NEGATIVE):
            raise ValueError("companion pair needs one positive and one "
                             "negative rule, in that order")

    @property
    def derivative_order(self):
        """Order of the f derivative whose sign realizes the bracket."""
        return self.positive.degree + 1

    def weights(self):
        return derive_weights(self.positive.error_denominator,
                              self.negative.error_denominator)


COMPANION_PAIRS = (
    CompanionPair(RULES["L"], RULES["R"]),
    CompanionPair(RULES["M"], RULES["T"]),
    CompanionPair(RULES["T2"], RULES["S"]),
)


def companion_pair(x_rule, y_rule):
    """The known companion pair containing both rules, or None."""
    names = {rule_meta(x_rule).name, rule_meta(y_rule).name}
    for pair in COMPANION_PAIRS:
        if names == {pair.positive.name, pair.negative.name}:
            return pair
    return None


@dataclass(frozen=True)
class AssociateWeights:
    c1: int
    c2: int

    def __post_init__(self):
        if self.c1 < 1 or self.c2 < 1:
            raise ValueError("weights must be positive integers")
        if math.gcd(self.c1, self.c2) != 1:
            raise ValueError("weights must be coprime")


def derive_weights(d1, d2):
    """Coprime mean weights (d1/g, d2/g), g = gcd(d1, d2), exact integers.

    d1 belongs to the positive rule of the pair and d2 to the negative
    one; the weights bind to the same operands in ``associate_value``.
    """
    if d1 < 1 or d2 < 1:
        raise ValueError("error denominators must be positive integers")
    g = math.gcd(d1, d2)
    return AssociateWeights(d1 // g, d2 // g)


def associate_value(x_val, y_val, weights, precision=None):
    """(c1*x + c2*y)/(c1 + c2), clamped into [min(x, y), max(x, y)].

    The mean is computed at ``precision`` bits; the default is wide enough
    for the operands' significands, so no input digits are dropped.  The
    clamp only absorbs final-rounding overshoot of at most one ulp; it
    keeps the mean's containment property exact in floating point.
    """
    x_val, y_val = as_mpf(x_val), as_mpf(y_val)
    if x_val == y_val:
        return x_val
    if precision is None:
        precision = max(53, x_val._mpf_[3], y_val._mpf_[3])
    with workprec(precision):
        v = (weights.c1 * x_val + weights.c2 * y_val) \
            / (weights.c1 + weights.c2)
    lo, hi = min(x_val, y_val), max(x_val, y_val)
    return min(max(v, lo), hi)


@dataclass(frozen=True)
class Bracket:
    lo: object
    hi: object

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError("bracket requires lo <= hi")

    def contains(self, value):
        return self.lo <= value <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def bracket(x_val, y_val):
    """Ordered enclosure [min, max] of two rule values.

    Under a verified sign condition for the companion pair, the exact
    integral lies inside; the nest of these over growing panel counts
    gives ever-tighter bounds.
    """
    x_val, y_val = as_mpf(x_val), as_mpf(y_val)
    if not (mp.isfinite(x_val) and mp.isfinite(y_val)):
        raise ValueError("bracket endpoints must be finite")
    return Bracket(min(x_val, y_val), max(x_val, y_val))


# ---------------------------------------------------------------------------
# numeric sign check for the derivative that controls the error signs

ALL_POSITIVE = "all_positive"
ALL_NEGATIVE = "all_negative"
IDENTICALLY_ZERO = "identically_zero"
SIGN_CHANGE = "sign_change"
UNKNOWN = "unknown"

_TAGS = {ALL_POSITIVE: "A+", ALL_NEGATIVE: "A-", IDENTICALLY_ZERO: "A0",
         SIGN_CHANGE: "A!", UNKNOWN: "A?"}


@dataclass(frozen=True)
class AssumptionVerdict:
    kind: str
    subinterval: tuple | None = None  # (x_lo, x_hi) bracketing the first flip

    @property
    def tag(self):
        return _TAGS[self.kind]

    @property
    def uniform(self):
        """True when the sampled sign supports a guaranteed bracket."""
        return self.kind in (ALL_POSITIVE, ALL_NEGATIVE, IDENTICALLY_ZERO)

    def __str__(self):
        if self.kind == SIGN_CHANGE and self.subinterval is not None:
            lo, hi = self.subinterval
            return f"{self.tag} (sign change in [{lo}, {hi}])"
        return f"{self.tag} ({self.kind})"


def check_assumption_A(f, order, interval, samples=257, precision=53):
    """Sample the order-th derivative of f and classify its sign.

    The derivative is taken symbolically and evaluated at ``samples``
    equispaced points including both endpoints.  Samples whose magnitude
    is at most 2^-(precision-8) times the largest sampled magnitude count
    as zero.  Verdicts: all samples zero -> identically_zero; strict
    positives only -> all_positive (zeros allowed); strict negatives only
    -> all_negative; both strict signs -> sign_change, carrying the first
    subinterval between strictly signed samples where the flip happens;
    non-finite samples -> unknown.  Domain errors from evaluating the
    derivative propagate.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    deriv = f.derivative_expr(order)
    with workprec(precision):
        a, b = interval.bounds()
        step = (b - a) / (samples - 1)
        xs = [a + i * step for i in range(samples - 1)] + [b]
        values = []
        for x in xs:
            try:
                v = _eval(deriv, x)
            except DomainError as err:
                raise err.located(x=x) from None
            if not mp.isfinite(v):
                return AssumptionVerdict(UNKNOWN)
            values.append(v)

        scale = max(abs(v) for v in values)
        if scale == 0:
            return AssumptionVerdict(IDENTICALLY_ZERO)
        tol = scale * mpf(2) ** (8 - precision)

        seen_pos = seen_neg = False
        last_strict = None  # index of the last strictly signed sample
        for i, v in enumerate(values):
            if abs(v) <= tol:
                continue
            if v > 0:
                if seen_neg:
                    return AssumptionVerdict(
                        SIGN_CHANGE, (xs[last_strict], xs[i]))
                seen_pos = True
            else:
                if seen_pos:
                    return AssumptionVerdict(
                        SIGN_CHANGE, (xs[last_strict], xs[i]))
                seen_neg = True
            last_strict = i
        if seen_pos:
            return AssumptionVerdict(ALL_POSITIVE)
        if seen_neg:
            return AssumptionVerdict(ALL_NEGATIVE)
        return AssumptionVerdict(IDENTICALLY_ZERO)
