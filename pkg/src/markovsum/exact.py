"""Exact rational arithmetic and digit-certified decimal rendering.

The universal scalar of this package is the arbitrary-precision rational
number.  We use :class:`fractions.Fraction` as the carrier: it keeps the
canonical form (positive denominator, gcd-reduced) after every operation,
which is exactly the invariant the rest of the package relies on when
telescoping sums cancel massively.

Decimal output never guesses digits.  A value is always rendered from an
:class:`Enclosure` (a pair of rational bounds), and a fraction digit is
reported as proven only when both bounds agree on it after rounding.  No
floating point is used anywhere in this module; the logarithm helpers at
the bottom work on integer bit lengths.

Every value here is immutable and every operation pure, so concurrent use
needs no coordination.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Fraction

RationalLike = Union[Fraction, int]

ROUND_TRUNCATE = "truncate"
ROUND_HALF_EVEN = "round-half-even"

_ROUNDINGS = (ROUND_TRUNCATE, ROUND_HALF_EVEN)

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")
_DECIMAL_RE = re.compile(r"^(-?)(\d+)(?:\.(\d*))?$")


def normalize(n: int, d: int) -> Fraction:
    """Canonical rational n/d (positive denominator, reduced)."""
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(n, d)


def arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    """Apply one of '+', '-', '*', '/' exactly."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def parse_rational(text: str) -> Fraction:
    """Parse 'n/d' or a plain integer string (no decimals, no whitespace)."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return normalize(num, den)


def format_rational(x: RationalLike) -> str:
    """Serialize as 'n/d' in base 10 ('n' alone when the denominator is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_decimal(text: str) -> Fraction:
    """Parse a terminating decimal string like '-1.250' to an exact rational."""
    m = _DECIMAL_RE.match(text)
    if not m:
        raise ValueError(f"not a decimal literal: {text!r}")
    sign, intpart, frac = m.group(1), m.group(2), m.group(3) or ""
    value = Fraction(int(intpart))
    if frac:
        value += Fraction(int(frac), 10 ** len(frac))
    return -value if sign == "-" else value


@dataclass(frozen=True)
class Enclosure:
    """A pair of rational bounds lower <= true value <= upper."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("enclosure requires lower <= upper")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x: RationalLike) -> bool:
        return self.lower <= x <= self.upper

    @staticmethod
    def point(x: RationalLike) -> "Enclosure":
        x = Fraction(x)
        return Enclosure(x, x)


@dataclass(frozen=True)
class DecimalRendering:
    """Decimal digits proven correct by an enclosure.

    ``fraction_digits`` holds only the digits on which both enclosure
    bounds agree after rounding, so ``digits_proven == len(fraction_digits)``
    and the rendered value differs from any point of the enclosure by less
    than 10^(-digits_proven).  When even the sign or the integer part is
    ambiguous, ``digits_proven`` is 0 and ``width`` tells the caller how
    wide the enclosure was.
    """

    sign: str
    integer_part: str
    fraction_digits: str
    digits_proven: int
    rounding: str
    width: Fraction

    def __str__(self) -> str:
        if not self.integer_part:
            return f"(no digits proven; width {format_rational(self.width)})"
        s = "-" if self.sign == "-" else ""
        if self.fraction_digits:
            return f"{s}{self.integer_part}.{self.fraction_digits}"
        return f"{s}{self.integer_part}"

    def value(self) -> Fraction:
        """The rendered digits as an exact rational."""
        if not self.integer_part:
            raise ValueError("rendering proves no digits")
        v = Fraction(int(self.integer_part))
        if self.fraction_digits:
            v += Fraction(int(self.fraction_digits), 10 ** len(self.fraction_digits))
        return -v if self.sign == "-" else v


def _scale_round(x: Fraction, k: int, rounding: str) -> int:
    """Round x * 10^k to an integer under the given mode."""
    scaled = x * 10 ** k
    n, d = scaled.numerator, scaled.denominator
    if rounding == ROUND_TRUNCATE:
        # toward zero
        return -((-n) // d) if n < 0 else n // d
    q, r = divmod(n, d)  # floor semantics; half-even on the remainder
    if 2 * r > d or (2 * r == d and q % 2):
        q += 1
    return q


def _split_scaled(m: int, k: int) -> tuple[str, str, str]:
    sign = "-" if m < 0 else "+"
    digits = str(abs(m)).rjust(k + 1, "0")
    return sign, digits[: len(digits) - k], digits[len(digits) - k:]


def to_decimal(enclosure: Enclosure, requested_digits: int,
               rounding: str = ROUND_TRUNCATE) -> DecimalRendering:
    """Render the decimal digits certified by an enclosure.

    Both bounds are rounded to ``requested_digits`` fraction digits; the
    reported digits are the common prefix.  Truncation is toward zero, so
    for a nonnegative enclosure agreement on p digits means both bounds lie
    in the same half-open cell of width 10^(-p).  An enclosure too wide to
    prove even the integer part yields ``digits_proven == 0`` together with
    the width, never an error.
    """
    if requested_digits < 1:
        raise ValueError("requested_digits must be >= 1")
    if rounding not in _ROUNDINGS:
        raise ValueError(f"unknown rounding {rounding!r}")
    k = requested_digits
    ml = _scale_round(enclosure.lower, k, rounding)
    mh = _scale_round(enclosure.upper, k, rounding)
    sl, il, fl = _split_scaled(ml, k)
    sh, ih, fh = _split_scaled(mh, k)
    if ml == 0 and mh == 0:
        sl = sh = "+"
    if sl != sh or il != ih:
        return DecimalRendering("+", "", "", 0, rounding, enclosure.width)
    p = 0
    while p < k and fl[p] == fh[p]:
        p += 1
    return DecimalRendering(sl, il, fl[:p], p, rounding, enclosure.width)


def digits_capacity(width: Fraction, cap: int = 4096) -> int:
    """Largest p <= cap with width <= 10^(-p); 0 when width > 1/10."""
    if width < 0:
        raise ValueError("width must be nonnegative")
    if width == 0:
        return cap
    p = 0
    scaled = width * 10
    while p < cap and scaled <= 1:
        p += 1
        scaled *= 10
    return p


# ---------------------------------------------------------------------------
# Integer-arithmetic base-2 logarithm and power, for diagnostics elsewhere.
# Precision is bounded (about frac_bits binary digits); no floats involved.
# ---------------------------------------------------------------------------

def log2_approx(x: RationalLike, frac_bits: int = 32) -> Fraction:
    """Approximate log2(x) for x > 0 using bit lengths and fixed-point squaring."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log2_approx requires x > 0")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** k
    while m >= 2:
        m /= 2
        k += 1
    while m < 1:
        m *= 2
        k -= 1
    f = Fraction(0)
    prec = 1 << (frac_bits + 64)
    for j in range(1, frac_bits + 1):
        m = m * m
        m = Fraction(m.numerator * prec // m.denominator, prec)
        if m >= 2:
            m /= 2
            f += Fraction(1, 1 << j)
    return k + f


def exp2_approx(exponent: RationalLike, frac_bits: int = 32) -> Fraction:
    """Approximate 2**exponent as a rational, to about frac_bits binary digits."""
    exponent = Fraction(exponent)
    whole = exponent.numerator // exponent.denominator
    frac = exponent - whole
    base = 1 << 128
    # roots[j] ~ 2^(1/2^(j+1)) * base, by iterated integer square roots
    roots = []
    current = isqrt(2 * base * base)
    roots.append(current)
    for _ in range(1, frac_bits):
        current = isqrt(current * base)
        roots.append(current)
    p = frac.numerator * (1 << frac_bits) // frac.denominator
    value = base
    for j in range(frac_bits):
        if (p >> (frac_bits - 1 - j)) & 1:
            value = value * roots[j] // base
    return Fraction(value, base) * Fraction(2) ** whole
