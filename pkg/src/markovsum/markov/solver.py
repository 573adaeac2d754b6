"""Stepwise determination of telescoping multipliers.

Given only a term extension F and an ansatz shape, the multipliers that
make (U, V) telescope can be found column by column: fixing what is known
at column x, the telescoping condition evaluated at enough z-samples is an
exact linear system for the new unknowns.  Supported shapes (with the
normalizations that pin the solution ray):

  u1:  U = F A_x,                    V = F (B_x + C_x q^z)        [q-series]
  u2:  U = F (A_x + B_x z),          V = F (C_x + D_x z + E_x z^2), B_0 = 0
  u3:  U = F (A_x + B_x z + C_x z^2),V = F (D_x + E_x z + G_x z^2), B_0 = C_0 = 0

and A_0 = 1 always.  Each step solves for the new column coefficients of U
*and* the row coefficients of V (3, 5, and 7 unknowns respectively), then
verifies the solution on extra z-samples; an ansatz that cannot close is
reported with the first failing column, never silently extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..exact import format_rational
from ..polys import solve_linear
from .pairs import GridFunction, MarkovPair, TermExtension

FORM_U1 = "u1"
FORM_U2 = "u2"
FORM_U3 = "u3"

_UNKNOWNS = {FORM_U1: 3, FORM_U2: 5, FORM_U3: 7}

#: coefficient counts of the z-polynomials (or q^z-linear form) of U and V
_SHAPE = {FORM_U1: (1, 2), FORM_U2: (2, 3), FORM_U3: (3, 3)}


@dataclass
class MultiplierData:
    """Solved multiplier tables for columns 0..x_max.

    ``u_coeffs[x]`` lists the z-polynomial coefficients of U's multiplier
    at column x (a single entry A_x for form u1); ``v_coeffs[x]`` those of
    V's multiplier, where for form u1 they are (B_x, C_x) with multiplier
    B_x + C_x q^z.
    """

    form: str
    u_coeffs: list[list[Fraction]]
    v_coeffs: list[list[Fraction]]
    q: Optional[Fraction] = None

    def a(self, x: int) -> Fraction:
        return self.u_coeffs[x][0]

    def u_multiplier(self, x: int, z: int) -> Fraction:
        return sum(c * z ** k for k, c in enumerate(self.u_coeffs[x]))

    def v_multiplier(self, x: int, z: int) -> Fraction:
        if self.form == FORM_U1:
            b, c = self.v_coeffs[x]
            return b + c * self.q ** z
        return sum(c * z ** k for k, c in enumerate(self.v_coeffs[x]))

    def pair(self, extension: TermExtension) -> MarkovPair:
        x_max = len(self.v_coeffs) - 1

        def u(x: int, z: int) -> Fraction:
            if x > x_max + 1:
                raise ValueError(f"multipliers solved only through x={x_max}")
            return self.u_multiplier(x, z) * extension(x, z)

        def v(x: int, z: int) -> Fraction:
            if x > x_max:
                raise ValueError(f"multipliers solved only through x={x_max}")
            return self.v_multiplier(x, z) * extension(x, z)

        return MarkovPair(GridFunction(u, f"U[solved {self.form}]"),
                          GridFunction(v, f"V[solved {self.form}]"),
                          provenance=f"stepwise:{self.form}")


@dataclass
class SolveResult:
    ok: bool
    data: Optional[MultiplierData] = None
    reason: str = ""
    failed_x: Optional[int] = None


def solve_multipliers_stepwise(extension: TermExtension, form: str,
                               x_max: int, z_samples: Optional[int] = None,
                               q: Optional[Fraction] = None) -> SolveResult:
    """Solve the multiplier tables column by column.

    ``z_samples`` defaults to (unknowns + 2); at least that many samples
    are required so every solve is checked on two extra consistency
    points.  For form u1 the base q is taken from the extension's recorded
    parameters unless given explicitly.
    """
    if form not in _UNKNOWNS:
        raise ValueError(f"unknown ansatz form {form!r}")
    unknowns = _UNKNOWNS[form]
    if z_samples is None:
        z_samples = unknowns + 2
    if z_samples < unknowns + 2:
        raise ValueError(f"form {form} needs z_samples >= {unknowns + 2}")
    if form == FORM_U1:
        q = q if q is not None else extension.params.get("q")
        if q is None:
            raise ValueError("form u1 needs the base q (extension params or argument)")
        q = Fraction(q)

    deg_u, deg_v = _SHAPE[form]
    u_coeffs: list[list[Fraction]] = [[Fraction(1)] + [Fraction(0)] * (deg_u - 1)]
    v_coeffs: list[list[Fraction]] = []

    for x in range(x_max + 1):
        rows, rhs = [], []
        for z in range(z_samples):
            f_xz = extension(x, z)
            f_xz1 = extension(x, z + 1)
            f_x1z = extension(x + 1, z)
            # unknown order: U(x+1) coefficients, then V(x) coefficients
            row = [z ** k * f_x1z for k in range(deg_u)]
            if form == FORM_U1:
                row += [f_xz - f_xz1,
                        q ** z * f_xz - q ** (z + 1) * f_xz1]
            else:
                row += [z ** k * f_xz - (z + 1) ** k * f_xz1 for k in range(deg_v)]
            rows.append(row)
            rhs.append(sum(c * z ** k for k, c in enumerate(u_coeffs[x])) * f_xz)
        # eliminate over all samples at once: the extra rows either confirm
        # the solution or surface an inconsistency
        solution, status = solve_linear(rows, rhs)
        if status == "underdetermined":
            return SolveResult(False, reason=f"ansatz underdetermined at x={x}", failed_x=x)
        if solution is None:
            return SolveResult(False, reason=f"ansatz does not close at x={x}", failed_x=x)
        for row, value in zip(rows, rhs):
            if sum(r * s for r, s in zip(row, solution)) != value:
                return SolveResult(False, reason=f"ansatz does not close at x={x}", failed_x=x)
        u_coeffs.append(list(solution[:deg_u]))
        v_coeffs.append(list(solution[deg_u:]))

    data = MultiplierData(form, u_coeffs, v_coeffs, q=q if form == FORM_U1 else None)
    return SolveResult(True, data=data)


# ---------------------------------------------------------------------------
# Built-in extension families for the solver (and the command line).
# ---------------------------------------------------------------------------

def phi32_family(a, b, c, d, q) -> TermExtension:
    """The q-series family solved exactly by form u1."""
    from .phi32 import ThreePhiTwo
    return ThreePhiTwo(a, b, c, d, q).extension()


def f4f3_family(a, h, b) -> TermExtension:
    """Extension of the 4F3(a, a+h, a-h, 1; b, b+h, b-h) series, form u2.

    F_{x,z} = (a)_z (a+h)_z (a-h)_z / ((b)_{x+z} (b+h)_{x+z} (b-h)_{x+z}).
    """
    from ..hgterm import rising_factorial
    a, h, b = Fraction(a), Fraction(h), Fraction(b)

    def f(x: int, z: int) -> Fraction:
        num = rising_factorial(a, z) * rising_factorial(a + h, z) * rising_factorial(a - h, z)
        den = rising_factorial(b, x + z) * rising_factorial(b + h, x + z) \
            * rising_factorial(b - h, x + z)
        if den == 0:
            raise ZeroDivisionError(f"lower rising factorial vanishes at (x={x}, z={z})")
        return num / den

    return TermExtension(f, params={"a": a, "h": h, "b": b},
                         label=f"4F3({format_rational(a)},{format_rational(h)},{format_rational(b)})")


def well_poised_family(a, b) -> TermExtension:
    """Extension of the alternating well-poised 4F3(a,a,a,1; b,b,b; -1), form u3."""
    from ..hgterm import rising_factorial
    a, b = Fraction(a), Fraction(b)

    def f(x: int, z: int) -> Fraction:
        den = rising_factorial(b, x + z) ** 3
        if den == 0:
            raise ZeroDivisionError(f"lower rising factorial vanishes at (x={x}, z={z})")
        return rising_factorial(a, z) ** 3 * (-1) ** z / den

    return TermExtension(f, params={"a": a, "b": b},
                         label=f"well-poised({format_rational(a)},{format_rational(b)})")


@dataclass(frozen=True)
class SolverFamily:
    name: str
    form: str
    build: object
    defaults: tuple
    description: str


FAMILIES = {
    "3phi2-u1": SolverFamily(
        "3phi2-u1", FORM_U1, phi32_family,
        (Fraction(1, 3), Fraction(1, 5), Fraction(1, 7), Fraction(1, 11), Fraction(1, 2)),
        "q-series 3phi2(a,b,1;c,d), multipliers A_x and B_x + C_x q^z"),
    "4f3-u2": SolverFamily(
        "4f3-u2", FORM_U2, f4f3_family,
        (Fraction(1), Fraction(1, 3), Fraction(2)),
        "4F3(a,a+h,a-h,1;b,b+h,b-h), z-linear U and z-quadratic V multipliers"),
    "4f3-wp-u3": SolverFamily(
        "4f3-wp-u3", FORM_U3, well_poised_family,
        (Fraction(1), Fraction(2)),
        "alternating well-poised 4F3(a,a,a,1;b,b,b;-1), z-quadratic multipliers"),
}
