"""Grid-function pairs and the discrete Green identity.

A pair of functions U, V on the nonnegative integer lattice is *telescoping*
when U_{x,z} - U_{x+1,z} = V_{x,z} - V_{x,z+1} at every point.  Summing that
condition over a rectangle gives the exact boundary identity

    sum_{z<j} U_{0,z} - sum_{z<j} U_{i,z}
        = sum_{x<i} V_{x,0} - sum_{x<i} V_{x,j},

the engine of every series transformation in this package: when the edge
sums die off, the column series of U and the row series of V share a sum.
Everything here is exact; residuals are rationals, equality means equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from ..exact import format_rational


class EvaluationError(ArithmeticError):
    """A grid value is undefined; carries the lattice location."""

    def __init__(self, message: str, x: int | None = None, z: int | None = None):
        super().__init__(message)
        self.x = x
        self.z = z


@dataclass(frozen=True)
class GridFunction:
    """Deterministic exact evaluator on lattice points (x, z)."""

    evaluator: Callable[[int, int], Fraction]
    label: str = ""

    def __call__(self, x: int, z: int) -> Fraction:
        try:
            return self.evaluator(x, z)
        except ZeroDivisionError as exc:
            raise EvaluationError(
                f"{self.label or 'grid function'} undefined at (x={x}, z={z}): {exc}", x, z
            ) from exc


@dataclass(frozen=True)
class TermExtension:
    """Two-variable extension F of a series term: F_{0,z} is the z-th term.

    ``params`` records the parameters the evaluator closes over (e.g. the
    base q), which downstream consumers such as the stepwise solver need.
    """

    evaluator: Callable[[int, int], Fraction]
    params: Mapping[str, Fraction] = field(default_factory=dict)
    label: str = ""

    def __call__(self, x: int, z: int) -> Fraction:
        try:
            return self.evaluator(x, z)
        except ZeroDivisionError as exc:
            raise EvaluationError(
                f"{self.label or 'term extension'} undefined at (x={x}, z={z}): {exc}", x, z
            ) from exc


@dataclass(frozen=True)
class MarkovPair:
    """A (U, V) pair expected to satisfy the telescoping condition."""

    u: GridFunction
    v: GridFunction
    provenance: str = ""


@dataclass(frozen=True)
class PairCheck:
    holds: bool
    residual: Fraction

    def to_json(self) -> dict:
        return {"holds": self.holds, "residual": format_rational(self.residual)}


def check_pair_condition(pair: MarkovPair, x: int, z: int) -> PairCheck:
    """Residual of U_{x,z} - U_{x+1,z} = V_{x,z} - V_{x,z+1} at one point."""
    residual = (pair.u(x, z) - pair.u(x + 1, z)) - (pair.v(x, z) - pair.v(x, z + 1))
    return PairCheck(residual == 0, residual)


@dataclass(frozen=True)
class RectangleSums:
    """Both sides of the boundary identity over [0,i] x [0,j]."""

    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def green_rectangle(pair: MarkovPair, i: int, j: int) -> RectangleSums:
    """Exact boundary sums; lhs == rhs whenever the pair telescopes there."""
    if i < 1 or j < 1:
        raise ValueError("rectangle requires i, j >= 1")
    lhs = sum(pair.u(0, z) for z in range(j)) - sum(pair.u(i, z) for z in range(j))
    rhs = sum(pair.v(x, 0) for x in range(i)) - sum(pair.v(x, j) for x in range(i))
    return RectangleSums(lhs, rhs)


@dataclass(frozen=True)
class TransformSums:
    """Partial sums of both series plus the edge sums bounding their gap."""

    u_sum: Fraction
    v_sum: Fraction
    u_edge: Fraction
    v_edge: Fraction

    @property
    def discrepancy(self) -> Fraction:
        return self.u_sum - self.v_sum

    @property
    def edge_discrepancy(self) -> Fraction:
        return self.u_edge - self.v_edge


def transform_check(pair: MarkovPair, i: int, j: int) -> TransformSums:
    """Compare sum_{z<j} U_{0,z} with sum_{x<i} V_{x,0}.

    By the rectangle identity the gap equals u_edge - v_edge exactly, so
    the returned edge sums bound how far the two partial sums may differ.
    """
    if i < 1 or j < 1:
        raise ValueError("transform check requires i, j >= 1")
    u_sum = sum(pair.u(0, z) for z in range(j))
    v_sum = sum(pair.v(x, 0) for x in range(i))
    u_edge = sum(pair.u(i, z) for z in range(j))
    v_edge = sum(pair.v(x, j) for x in range(i))
    return TransformSums(u_sum, v_sum, u_edge, v_edge)
