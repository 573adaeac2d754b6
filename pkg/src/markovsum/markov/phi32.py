"""The worked q-series transformation: 3phi2(a,b,1; c,d; q, t), t = cd/(abq).

This is the fully explicit instance of the engine: the extension

    F_{x,z} = (a;q)_z (b;q)_z t^z / ((c;q)_{x+z} (d;q)_{x+z})
              * (c d q^(2z))^x * q^(x(x-1))

admits column multipliers A_x and row multipliers M_{x,z} = B_x + C_x q^z
in closed form:

    B_x / A_x = 1 / (1 - t q^(2x)),
    C_x / A_x = t q^(2x) ((c+d) q^x - (a+b))
                / ((1 - t q^(2x)) (1 - t q^(2x+1))),
    A_{x+1}/A_x = (1 - (c/a)q^x)(1 - (c/b)q^x)(1 - (d/a)q^x)(1 - (d/b)q^x)
                / (q (1 - t q^(2x)) (1 - t q^(2x+1))),
    A_0 = 1  =>  A_x = (c/a, c/b, d/a, d/b; q)_x / (q^x (t;q)_{2x}).

The transformed series then has terms V_{x,0} = M_{x,0} F_{x,0}, whose
step-to-step decay is of order q^(2x), much faster than the original t^z.
The same data in certificate form is

    P(x) = 1 - t q^(2x),
    Q(x) = (1-(c/a)q^x)(1-(c/b)q^x)(1-(d/a)q^x)(1-(d/b)q^x) / (q(1-tq^(2x+1))),
    R(x,z) = 1 + t q^(2x+z) ((c+d)q^x - (a+b)) / (1 - t q^(2x+1)),

with M/A = R/P and A_{x+1}/A_x = Q/P, so both roads produce the same pair.
"""

from __future__ import annotations

from fractions import Fraction

from ..exact import format_rational
from ..hgterm import BHGSpec, q_pochhammer
from .certificates import Certificate
from .pairs import EvaluationError, GridFunction, MarkovPair, TermExtension

DEFAULT_X_CAP = 512

#: Parameter tuples (a, b, c, d, q) used across tests and fixtures; all have
#: 0 < t < 1 and poles nowhere near the working grids.
SAMPLE_TUPLES = (
    (Fraction(1, 3), Fraction(1, 5), Fraction(1, 7), Fraction(1, 11), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 7), Fraction(1, 3)),
    (Fraction(2, 3), Fraction(1, 2), Fraction(1, 4), Fraction(1, 5), Fraction(1, 2)),
    (Fraction(3, 4), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)),
    (Fraction(2, 3), Fraction(3, 5), Fraction(1, 6), Fraction(1, 7), Fraction(1, 2)),
)


def markov_param_map(r, rp, s, sp, qq) -> tuple[Fraction, ...]:
    """Map the historical parameterization (r, r', s, s', q with |q|>1).

    Returns (a, b, c, d, q, t) in the modern |q| < 1 convention:
    a=1/r, b=1/r', c=1/s, d=1/s', q = 1/qq, t = r r' qq / (s s').
    """
    r, rp, s, sp, qq = (Fraction(v) for v in (r, rp, s, sp, qq))
    for name, v in (("r", r), ("r'", rp), ("s", s), ("s'", sp), ("q", qq)):
        if v == 0:
            raise ValueError(f"parameter {name} must be nonzero")
    if not abs(qq) > 1:
        raise ValueError("historical base must satisfy |q| > 1")
    return (1 / r, 1 / rp, 1 / s, 1 / sp, 1 / qq, r * rp * qq / (s * sp))


def markov_form_term(r, rp, s, sp, qq, n: int) -> Fraction:
    """Term n of the series in the historical form.

    term = q^n * prod_{i<n} (r q^i - 1)(r' q^i - 1) / ((s q^i - 1)(s' q^i - 1))
    with |q| > 1; termwise equal to the |q| < 1 form under markov_param_map.
    """
    r, rp, s, sp, qq = (Fraction(v) for v in (r, rp, s, sp, qq))
    prod = Fraction(1)
    power = Fraction(1)
    for _ in range(n):
        den = (s * power - 1) * (sp * power - 1)
        if den == 0:
            raise ZeroDivisionError(f"historical form denominator vanishes at step {n}")
        prod *= (r * power - 1) * (rp * power - 1) / den
        power *= qq
    return prod * qq ** n


class ThreePhiTwo:
    """The 3phi2(a,b,1; c,d) transformation at fixed rational parameters.

    Exposes the extension F, the closed-form multipliers A, B, C, the row
    multiplier M, transformed terms V0, the induced pair, and the matching
    certificate.  Construction requires |t| < 1 with t = cd/(abq), the
    regime in which both series converge.
    """

    def __init__(self, a, b, c, d, q, x_cap: int = DEFAULT_X_CAP):
        self.a, self.b, self.c, self.d, self.q = (Fraction(v) for v in (a, b, c, d, q))
        for name, v in (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d), ("q", self.q)):
            if v == 0:
                raise ValueError(f"parameter {name} must be nonzero")
        self.t = self.c * self.d / (self.a * self.b * self.q)
        if not abs(self.t) < 1:
            raise ValueError(f"|t| < 1 required, got t = {format_rational(self.t)}")
        self.x_cap = x_cap
        self._a_cache = [Fraction(1)]
        self._f_cache: dict[tuple[int, int], Fraction] = {}

    # -- parameters -------------------------------------------------------

    @property
    def params(self) -> tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d, self.q)

    def _check_cap(self, x: int):
        if x > self.x_cap:
            raise EvaluationError(f"x={x} beyond cap {self.x_cap}", x=x)
        if x < 0:
            raise ValueError("x must be >= 0")

    # -- extension and series ----------------------------------------------

    def f(self, x: int, z: int) -> Fraction:
        """The extension F_{x,z}; F_{0,z} is the series term."""
        cached = self._f_cache.get((x, z))
        if cached is not None:
            return cached
        self._check_cap(x)
        a, b, c, d, q, t = self.a, self.b, self.c, self.d, self.q, self.t
        den = q_pochhammer(c, q, x + z) * q_pochhammer(d, q, x + z)
        if den == 0:
            raise EvaluationError(
                f"(c,d;q)_{x + z} vanishes for c={format_rational(c)}, d={format_rational(d)}", x, z)
        num = q_pochhammer(a, q, z) * q_pochhammer(b, q, z) * t ** z
        value = num / den * (c * d * q ** (2 * z)) ** x * q ** (x * (x - 1))
        self._f_cache[(x, z)] = value
        return value

    def extension(self) -> TermExtension:
        return TermExtension(self.f, params={
            "a": self.a, "b": self.b, "c": self.c, "d": self.d,
            "q": self.q, "t": self.t}, label="3phi2 extension")

    def series_spec(self) -> BHGSpec:
        """The source series as a q-series spec (upper 1 listed literally)."""
        return BHGSpec(upper=(self.a, self.b, Fraction(1)),
                       lower=(self.c, self.d), q=self.q, z_arg=self.t)

    def series_term(self, z: int) -> Fraction:
        """Term z of the source series: (a,b;q)_z / (c,d;q)_z * t^z."""
        den = q_pochhammer(self.c, self.q, z) * q_pochhammer(self.d, self.q, z)
        if den == 0:
            raise EvaluationError(f"(c,d;q)_{z} vanishes", z=z)
        return q_pochhammer(self.a, self.q, z) * q_pochhammer(self.b, self.q, z) / den * self.t ** z

    # -- closed-form multipliers -------------------------------------------

    def _denoms(self, x: int) -> tuple[Fraction, Fraction]:
        q, t = self.q, self.t
        d0 = 1 - t * q ** (2 * x)
        d1 = 1 - t * q ** (2 * x + 1)
        if d0 == 0 or d1 == 0:
            raise EvaluationError(f"(1 - t q^(2x{'' if d0 == 0 else '+1'})) vanishes at x={x}", x=x)
        return d0, d1

    def A(self, x: int) -> Fraction:
        """Column multiplier, A_0 = 1."""
        self._check_cap(x)
        a, b, c, d, q, t = self.a, self.b, self.c, self.d, self.q, self.t
        while len(self._a_cache) <= x:
            k = len(self._a_cache) - 1
            d0, d1 = self._denoms(k)
            step = (1 - (c / a) * q ** k) * (1 - (c / b) * q ** k) \
                * (1 - (d / a) * q ** k) * (1 - (d / b) * q ** k) / (q * d0 * d1)
            self._a_cache.append(self._a_cache[-1] * step)
        return self._a_cache[x]

    def A_closed(self, x: int) -> Fraction:
        """Product form (c/a, c/b, d/a, d/b; q)_x / (q^x (t;q)_{2x})."""
        self._check_cap(x)
        a, b, c, d, q, t = self.a, self.b, self.c, self.d, self.q, self.t
        num = q_pochhammer(c / a, q, x) * q_pochhammer(c / b, q, x) \
            * q_pochhammer(d / a, q, x) * q_pochhammer(d / b, q, x)
        den = q ** x * q_pochhammer(t, q, 2 * x)
        if den == 0:
            raise EvaluationError(f"(t;q)_{2 * x} vanishes at x={x}", x=x)
        return num / den

    def B(self, x: int) -> Fraction:
        d0, _ = self._denoms(x)
        return self.A(x) / d0

    def C(self, x: int) -> Fraction:
        a, b, c, d, q, t = self.a, self.b, self.c, self.d, self.q, self.t
        d0, d1 = self._denoms(x)
        return self.A(x) * t * q ** (2 * x) * ((c + d) * q ** x - (a + b)) / (d0 * d1)

    def m(self, x: int, z: int) -> Fraction:
        """Row multiplier M_{x,z} = B_x + C_x q^z."""
        return self.B(x) + self.C(x) * self.q ** z

    def m0(self, x: int) -> Fraction:
        """M_{x,0} = A_x (1 - tq^(2x)(a+b+q) + tq^(3x)(c+d)) / ((1-tq^(2x))(1-tq^(2x+1)))."""
        a, b, c, d, q, t = self.a, self.b, self.c, self.d, self.q, self.t
        d0, d1 = self._denoms(x)
        return self.A(x) * (1 - t * q ** (2 * x) * (a + b + q) + t * q ** (3 * x) * (c + d)) / (d0 * d1)

    def v0(self, x: int) -> Fraction:
        """Term x of the transformed series, in fully reduced closed form."""
        self._check_cap(x)
        a, b, c, d, q, t = self.a, self.b, self.c, self.d, self.q, self.t
        num = q_pochhammer(c / a, q, x) * q_pochhammer(c / b, q, x) \
            * q_pochhammer(d / a, q, x) * q_pochhammer(d / b, q, x)
        den = q_pochhammer(c, q, x) * q_pochhammer(d, q, x) * q_pochhammer(t, q, 2 * x + 2)
        if den == 0:
            raise EvaluationError(f"transformed-term denominator vanishes at x={x}", x=x)
        return num / den * (c * d) ** x * q ** (x * (x - 2)) \
            * (1 - t * q ** (2 * x) * (a + b + q) + t * q ** (3 * x) * (c + d))

    # -- assembled objects ---------------------------------------------------

    def pair(self) -> MarkovPair:
        def u(x: int, z: int) -> Fraction:
            return self.A(x) * self.f(x, z)

        def v(x: int, z: int) -> Fraction:
            return self.m(x, z) * self.f(x, z)

        label = ",".join(format_rational(p) for p in self.params)
        return MarkovPair(GridFunction(u, f"U[3phi2 {label}]"),
                          GridFunction(v, f"V[3phi2 {label}]"),
                          provenance=f"3phi2:{label}")

    def certificate(self) -> Certificate:
        return make_certificate(self.a, self.b, self.c, self.d, self.q)


FIXTURE_NAME = "markov-3phi2"


def fixture_to_json(engine: ThreePhiTwo) -> dict:
    """Serialize the built-in pair/certificate fixture: name, form, parameters."""
    return {
        "fixture": FIXTURE_NAME,
        "form": "u1",
        "params": {name: format_rational(value)
                   for name, value in zip("abcdq", engine.params)},
    }


def fixture_from_json(obj: dict) -> ThreePhiTwo:
    from ..exact import parse_rational
    if obj.get("fixture") != FIXTURE_NAME:
        raise ValueError(f"unknown fixture {obj.get('fixture')!r}")
    return ThreePhiTwo(*(parse_rational(obj["params"][name]) for name in "abcdq"))


def make_certificate(a, b, c, d, q, label: str = FIXTURE_NAME) -> Certificate:
    """The built-in certificate fixture for the 3phi2 extension.

    Valid for any nonzero rational parameters away from poles; unlike the
    transformation object it does not require |t| < 1, since the identity
    it certifies is algebraic.
    """
    a, b, c, d, q = (Fraction(v) for v in (a, b, c, d, q))
    if 0 in (a, b, c, d, q):
        raise ValueError("certificate parameters must be nonzero")
    t = c * d / (a * b * q)

    def f(x: int, z: int) -> Fraction:
        den = q_pochhammer(c, q, x + z) * q_pochhammer(d, q, x + z)
        if den == 0:
            raise ZeroDivisionError(f"(c,d;q)_{x + z} vanishes")
        return q_pochhammer(a, q, z) * q_pochhammer(b, q, z) * t ** z / den \
            * (c * d * q ** (2 * z)) ** x * q ** (x * (x - 1))

    def p(x: int) -> Fraction:
        return 1 - t * q ** (2 * x)

    def qq(x: int) -> Fraction:
        den = q * (1 - t * q ** (2 * x + 1))
        if den == 0:
            raise ZeroDivisionError(f"certificate Q denominator vanishes at x={x}")
        return (1 - (c / a) * q ** x) * (1 - (c / b) * q ** x) \
            * (1 - (d / a) * q ** x) * (1 - (d / b) * q ** x) / den

    def r(x: int, z: int) -> Fraction:
        den = 1 - t * q ** (2 * x + 1)
        if den == 0:
            raise ZeroDivisionError(f"certificate R denominator vanishes at x={x}")
        return 1 + t * q ** (2 * x + z) * ((c + d) * q ** x - (a + b)) / den

    ext = TermExtension(f, params={"a": a, "b": b, "c": c, "d": d, "q": q, "t": t},
                        label=f"{label} extension")
    return Certificate(ext, p, qq, r, label=label)


def coefficient_residuals(a, b, c, d, q, x: int, *,
                          A_x=None, A_next=None, B_x=None, C_x=None) -> tuple[Fraction, ...]:
    """Residuals of the four coefficient equations at column x.

    The telescoping condition for the 3phi2 ansatz reduces to a degree-3
    polynomial identity in q^z; its four coefficients give, with the
    closed-form A, B, C substituted (the defaults), four vanishing
    residuals.  The cubic coefficient vanishes identically in C_x because
    t = cd/(abq); override A_x/B_x/C_x to probe soundness.
    """
    engine = ThreePhiTwo(a, b, c, d, q)
    a, b, c, d, q, t = engine.a, engine.b, engine.c, engine.d, engine.q, engine.t
    A0 = engine.A(x) if A_x is None else Fraction(A_x)
    A1 = engine.A(x + 1) if A_next is None else Fraction(A_next)
    B0 = engine.B(x) if B_x is None else Fraction(B_x)
    C0 = engine.C(x) if C_x is None else Fraction(C_x)
    r0 = A0 - B0 * (1 - t * q ** (2 * x))
    r1 = -A0 * (c + d) * q ** x - (
        C0 - B0 * (c + d) * q ** x + B0 * (a + b) * q ** (2 * x) * t - C0 * q ** (2 * x + 1) * t)
    r2 = (A0 - A1) * c * d * q ** (2 * x) - (
        B0 * (c * d - a * b * t) * q ** (2 * x)
        + C0 * ((a + b) * q ** (2 * x + 1) * t - (c + d) * q ** x))
    r3 = C0 * (c * d * q ** (2 * x) - a * b * q ** (2 * x + 1) * t)
    return (r0, r1, r2, r3)
