"""markovsum: exact-arithmetic series transformation and acceleration.

A library for telescoping series transformations over exact rationals:
pairs of lattice functions bound by a discrete curl-free condition, the
boundary identity that trades a slow series for a fast one, telescoping
certificates in operator form, and a catalog of geometrically convergent
series for zeta(2), zeta(3) and Hurwitz zeta(3, a) with digit-certified
decimal output.
"""

from .exact import (
    ROUND_HALF_EVEN,
    ROUND_TRUNCATE,
    DecimalRendering,
    Enclosure,
    Rational,
    arith,
    format_rational,
    normalize,
    parse_decimal,
    parse_rational,
    to_decimal,
)
from .hgterm import (
    BHGSpec,
    HGSpec,
    TermError,
    TermSequence,
    bhg_term,
    hg_term,
    q_limit_check,
    q_pochhammer,
    rising_factorial,
    term_sequence,
)
from . import catalog, markov

__version__ = "0.1.0"

__all__ = [
    "BHGSpec", "DecimalRendering", "Enclosure", "HGSpec", "Rational",
    "ROUND_HALF_EVEN", "ROUND_TRUNCATE", "TermError", "TermSequence",
    "arith", "bhg_term", "catalog", "format_rational", "hg_term", "markov",
    "normalize", "parse_decimal", "parse_rational", "q_limit_check",
    "q_pochhammer", "rising_factorial", "term_sequence", "to_decimal",
]
