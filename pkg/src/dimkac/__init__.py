"""Exact arithmetic for the level-N free-field algebra A(N).

Modules: ``scalar`` (coefficient field and modular testing), ``partition``
(combinatorics), ``fock`` (Fock module and generator action), ``macdonald``
(ordinary and generalized Macdonald functions), ``kac`` (Gram determinants),
``singular`` (singular vectors and projection), ``cli``.
"""

from .kac import kac_lhs, kac_rhs, verify_kac
from .macdonald import gen_macdonald, gen_macdonald_at_point, macdonald_P
from .partition import RSData, theta_rs
from .singular import projection_check, rank1_check, singular_check

__version__ = "0.1.0"

__all__ = [
    "RSData",
    "gen_macdonald",
    "gen_macdonald_at_point",
    "kac_lhs",
    "kac_rhs",
    "macdonald_P",
    "projection_check",
    "rank1_check",
    "singular_check",
    "theta_rs",
    "verify_kac",
]
