"""Finite remainder diagnostics for double arrays of series.

For a family of row series z^(k) = sum_n a_n^(k), the classical criterion
for exchanging the order of summation involves the row remainders

    R_m = sum_k sum_{n >= m} a_n^(k):

the column sums form a convergent series with the same total iff R_m -> 0.
This module only *estimates* the R_m from finitely many terms; it is a
trend inspection aid, not a convergence proof.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..hgterm import TermSequence


def remainder_diagnostics(rows: Sequence[TermSequence], m_max: int, k_max: int,
                          n_cap: int = 80) -> list[Fraction]:
    """Finite estimates of the row-remainder sums R_m for m = 0..m_max.

    Row k contributes sum of its terms with indices m..n_cap (offset from
    each row's first index); rows beyond k_max are ignored.
    """
    if m_max < 0 or k_max < 0 or n_cap < m_max:
        raise ValueError("need m_max, k_max >= 0 and n_cap >= m_max")
    estimates = []
    for m in range(m_max + 1):
        total = Fraction(0)
        for row in rows[: k_max + 1]:
            for n in range(row.n0 + m, row.n0 + n_cap + 1):
                total += row.term(n)
        estimates.append(total)
    return estimates
