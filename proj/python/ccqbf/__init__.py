"""QBF evaluation with clause-covering backdoors.

Thin wrapper over the C++ core. Formulas are parsed from QDIMACS text
(``x`` lines carry XOR constraints) and solved by the backdoor solver with
the smallest parameter, falling back to brute force.
"""

from ._core import (
    Error,
    Formula,
    ParseError,
    classify,
    detect,
    dualize,
    eval_bruteforce,
    generate,
    has_mis,
    horn_to_3horn,
    kernelize,
    mis_to_horn,
    mis_to_ihsb_minus,
    parse_qdimacs,
    solve,
    strategy,
    verify_strategy,
)

__all__ = [
    "Error",
    "Formula",
    "ParseError",
    "classify",
    "detect",
    "dualize",
    "eval_bruteforce",
    "generate",
    "has_mis",
    "horn_to_3horn",
    "kernelize",
    "mis_to_horn",
    "mis_to_ihsb_minus",
    "parse_qdimacs",
    "solve",
    "strategy",
    "verify_strategy",
]
