"""Small exact-polynomial toolkit over rationals.

Coefficient lists are ordered low degree first.  This backs two needs:

* certifying that a rational function of the summation index stays below a
  geometric ratio for *all* indices past some point (tail-bound rigor in
  the series catalog), via a shift-and-inspect positivity certificate;
* solving the small exact linear systems of the stepwise multiplier solver.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Optional, Sequence

Poly = list[Fraction]


def poly(*coeffs) -> Poly:
    """Build a polynomial from low-degree-first coefficients."""
    return [Fraction(c) for c in coeffs]


def poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
            for i in range(n)]


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_scale(p: Sequence[Fraction], c) -> Poly:
    c = Fraction(c)
    return [a * c for a in p]


def poly_pow(p: Sequence[Fraction], e: int) -> Poly:
    out = [Fraction(1)]
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_shift(p: Sequence[Fraction], s) -> Poly:
    """Coefficients of p(x + s)."""
    s = Fraction(s)
    out = [Fraction(0)] * len(p)
    for i, a in enumerate(p):
        if a:
            for j in range(i + 1):
                out[j] += a * comb(i, j) * s ** (i - j)
    return out


def poly_eval(p: Sequence[Fraction], x) -> Fraction:
    x = Fraction(x)
    v = Fraction(0)
    for a in reversed(p):
        v = v * x + a
    return v


def eventually_nonneg(p: Sequence[Fraction], n0: int, max_shift: int = 256) -> Optional[int]:
    """Certify p(n) >= 0 for every integer n >= n0.

    Looks for a shift s such that all coefficients of p(n0 + s + m) are
    nonnegative (then p >= 0 for n >= n0 + s follows termwise) and checks
    the finitely many gap points n0 .. n0+s-1 exactly.  Returns the shift
    used, or None when no certificate was found within max_shift.
    """
    for s in range(max_shift + 1):
        shifted = poly_shift(p, n0 + s)
        if all(c >= 0 for c in shifted):
            if all(poly_eval(p, n0 + j) >= 0 for j in range(s)):
                return s
            return None
    return None


class RationalFunction:
    """Quotient of two exact polynomials in one integer variable."""

    def __init__(self, num: Sequence[Fraction], den: Sequence[Fraction]):
        self.num = list(num)
        self.den = list(den)

    def __call__(self, n) -> Fraction:
        d = poly_eval(self.den, n)
        if d == 0:
            raise ZeroDivisionError(f"rational function denominator vanishes at {n}")
        return poly_eval(self.num, n) / d

    def bounded_by(self, rho, n0: int, max_shift: int = 256) -> Optional[int]:
        """Certify num(n)/den(n) <= rho for all integers n >= n0.

        Assumes both num and den are eventually positive (each is checked
        with its own nonnegativity certificate first).  Returns the shift
        of the main certificate, or None.
        """
        if eventually_nonneg(self.num, n0, max_shift) is None:
            return None
        if eventually_nonneg(self.den, n0, max_shift) is None:
            return None
        margin = poly_add(poly_scale(self.den, Fraction(rho)), poly_scale(self.num, -1))
        return eventually_nonneg(margin, n0, max_shift)


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Exact Gaussian elimination.

    Returns ``(solution, "unique")`` when the system has exactly one
    solution, ``(None, "underdetermined")`` when consistent but rank
    deficient, and ``(None, "inconsistent")`` otherwise.
    """
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    n_rows = len(m)
    n_cols = len(m[0]) - 1
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [u - f * v for u, v in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if m[i][n_cols] != 0:
            return None, "inconsistent"
    if len(pivots) < n_cols:
        return None, "underdetermined"
    sol = [Fraction(0)] * n_cols
    for i, col in enumerate(pivots):
        sol[col] = m[i][n_cols]
    return sol, "unique"
