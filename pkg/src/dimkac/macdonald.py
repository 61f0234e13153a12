"""Macdonald polynomials and generalized Macdonald functions.

Symmetric functions are dicts {partition: coefficient} in the power-sum basis.
Ordinary P_lambda come from Gram-Schmidt on monomial symmetric functions under
<p_l, p_m> = delta z_l prod (1 - q^l_k)/(1 - t^l_k).  Generalized functions are
eigenvectors of X^(1)_0 in the product basis prod_c P_{l^(c)}(a^(c)_{-n})|u>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from . import linalg
from .fock import FockModule, FockVector, _multiplicities
from .partition import enum_ntuples, enum_partitions, eps_eigenvalue, format_ntuple, format_partition, less_star
from .scalar import ModField, SymbolicField, divide


class DegenerateEigenvalue(ArithmeticError):
    """The requested eigenvalue is not simple on its level subspace."""

    def __init__(self, message, kernel_dim=None):
        super().__init__(message)
        self.kernel_dim = kernel_dim


def z_lambda(lam) -> int:
    out = 1
    for i, m in _multiplicities(lam).items():
        out *= i**m * factorial(m)
    return out


def inner_pp(lam, mu, field=None):
    """<p_lam, p_mu>_{q,t}."""
    fld = field or SymbolicField()
    if tuple(lam) != tuple(mu):
        return fld.zero
    out = fld(z_lambda(lam))
    for k in lam:
        out = out * divide(1 - fld.q**k, 1 - fld.t**k)
    return out


def inner(f: dict, g: dict, field=None):
    fld = field or SymbolicField()
    acc = fld.zero
    for lam, c in f.items():
        if lam in g:
            acc = acc + c * g[lam] * inner_pp(lam, lam, fld)
    return acc


# power sums <-> monomial symmetric functions (rational, field independent) ----


def p_in_m(mu, lam) -> int:
    """Coefficient of m_lam in p_mu: ways to distribute the parts of mu into
    the rows of lam with matching row sums."""
    rows = list(lam)

    def place(k, remaining):
        if k == len(mu):
            return 1 if not any(remaining) else 0
        total = 0
        for j in range(len(remaining)):
            if remaining[j] >= mu[k]:
                remaining[j] -= mu[k]
                total += place(k + 1, remaining)
                remaining[j] += mu[k]
        return total

    return place(0, rows)


@lru_cache(maxsize=None)
def m_in_p(n: int) -> dict:
    """{lam: {mu: Fraction}} with m_lam = sum_mu c p_mu."""
    parts = enum_partitions(n)
    # rows: p_mu in m basis
    mat = [[Fraction(p_in_m(mu, lam)) for lam in parts] for mu in parts]
    inv = linalg.inverse(mat, Fraction(1))
    # p = A m  =>  m = A^{-1} p;  m_lam = sum_mu inv[lam][mu] p_mu
    return {lam: {mu: inv[i][j] for j, mu in enumerate(parts) if inv[i][j]} for i, lam in enumerate(parts)}


def to_m_basis(f: dict, field=None) -> dict:
    """Re-express a p-basis symmetric function in the monomial basis."""
    fld = field or SymbolicField()
    out = {}
    for mu, c in f.items():
        for lam in enum_partitions(sum(mu)):
            k = p_in_m(mu, lam)
            if k:
                out[lam] = out.get(lam, fld.zero) + c * k
    return {lam: c for lam, c in out.items() if c != 0}


# ordinary Macdonald polynomials ---------------------------------------------

_MAC_CACHE: dict = {}


def _qt_key(fld):
    if isinstance(fld, ModField):
        return ("mod", fld.prime, int(fld.s), int(fld.t))
    return ("symbolic",)


def _macdonald_degree(n: int, fld) -> dict:
    key = (_qt_key(fld), n)
    if key in _MAC_CACHE:
        return _MAC_CACHE[key]
    mp = m_in_p(n)
    # Lexicographic ascending order is a linear extension of dominance.
    order = list(reversed(enum_partitions(n)))
    result = {}
    norms = {}
    for lam in order:
        vec = {mu: fld(c) for mu, c in mp[lam].items()}
        m_lam = dict(vec)
        for prev in result:
            coef = divide(inner(m_lam, result[prev], fld), norms[prev])
            if coef != 0:
                for mu, c in result[prev].items():
                    vec[mu] = vec.get(mu, fld.zero) - coef * c
        vec = {mu: c for mu, c in vec.items() if c != 0}
        result[lam] = vec
        norms[lam] = inner(vec, vec, fld)
    _MAC_CACHE[key] = result
    return result


def macdonald_P(lam, field=None) -> dict:
    """P_lam(p; q, t) in the power-sum basis."""
    fld = field or SymbolicField()
    return dict(_macdonald_degree(sum(lam), fld)[tuple(lam)])


def _p_in_P(n: int, fld) -> dict:
    """{mu: {lam: c}} with p_mu = sum_lam c P_lam."""
    key = (_qt_key(fld), n, "inv")
    if key in _MAC_CACHE:
        return _MAC_CACHE[key]
    parts = enum_partitions(n)
    polys = _macdonald_degree(n, fld)
    # columns of A hold P_lam in p coordinates
    A = [[polys[lam].get(mu, fld.zero) for lam in parts] for mu in parts]
    inv = linalg.inverse(A, fld.one)
    out = {mu: {lam: inv[j][i] for j, lam in enumerate(parts) if inv[j][i] != 0} for i, mu in enumerate(parts)}
    _MAC_CACHE[key] = out
    return out


# product basis of the Fock module ---------------------------------------------


def product_basis(vl, field=None) -> FockVector:
    """prod_c P_{l^(c)}(p_n -> a^(c)_{-n}) |u>."""
    fld = field or SymbolicField()
    factors = [macdonald_P(lam, fld).items() for lam in vl]
    terms = {}
    for choice in product(*factors):
        coeff = fld.one
        for _, c in choice:
            coeff = coeff * c
        mono = tuple(mu for mu, _ in choice)
        terms[mono] = terms[mono] + coeff if mono in terms else coeff
    return FockVector(terms)


def product_coordinates(v: FockVector, field=None) -> dict:
    """Coordinates {N-tuple: coeff} of v in the product Macdonald basis."""
    fld = field or SymbolicField()
    out = {}
    for mono, coeff in v.terms.items():
        per_color = [_p_in_P(sum(mu), fld)[mu].items() for mu in mono]
        for choice in product(*per_color):
            c = coeff
            for _, x in choice:
                c = c * x
            vl = tuple(lam for lam, _ in choice)
            out[vl] = out[vl] + c if vl in out else c
    return {vl: c for vl, c in out.items() if c != 0}


def basis_order(N: int, level: int) -> list:
    """Level basis, lowest first, so X^(1)_0 is upper triangular."""
    return list(reversed(enum_ntuples(N, level)))


def x0_matrix(N: int, level: int, module: FockModule | None = None, order=None):
    """Matrix of X^(1)_0 on the level subspace in the product basis.

    Returns (order, M) with M[row][col] the coefficient of basis vector
    order[row] in X^(1)_0 applied to order[col].  ``order`` may replace the
    default total order by any other refinement of the star ordering.
    """
    module = module or FockModule(N)
    fld = module.field
    order = basis_order(N, level) if order is None else list(order)
    index = {vl: k for k, vl in enumerate(order)}
    M = [[fld.zero] * len(order) for _ in order]
    for col, vl in enumerate(order):
        image = module.apply_mode(1, 0, product_basis(vl, fld))
        for target, c in product_coordinates(image, fld).items():
            M[index[target]][col] = c
    return order, M


@dataclass
class GenMacExpansion:
    tuple: tuple
    coefficients: dict
    eigenvalue: object
    kernel_dim: int | None = None

    def vector(self, field=None) -> FockVector:
        fld = field or SymbolicField()
        out = FockVector()
        for vl, c in self.coefficients.items():
            out = out + product_basis(vl, fld) * c
        return out

    def to_json(self) -> dict:
        coeffs = sorted(self.coefficients.items(), key=lambda kv: format_ntuple(kv[0]))
        return {
            "tuple": format_ntuple(self.tuple),
            "eigenvalue": str(self.eigenvalue),
            "coefficients": {format_ntuple(vl): str(c) for vl, c in coeffs},
        }


def gen_macdonald(vl, module: FockModule | None = None, matrix=None) -> GenMacExpansion:
    """Triangular eigenvector of X^(1)_0 with unit coefficient at ``vl``."""
    vl = tuple(tuple(p) for p in vl)
    N = len(vl)
    module = module or FockModule(N)
    fld = module.field
    level = sum(sum(p) for p in vl)
    order, M = matrix if matrix is not None else x0_matrix(N, level, module)
    eps = eps_eigenvalue(vl, module.u, fld)
    j = order.index(vl)
    c = [fld.zero] * len(order)
    c[j] = fld.one
    for i in range(j - 1, -1, -1):
        rhs = fld.zero
        for k in range(i + 1, j + 1):
            if M[i][k] != 0 and c[k] != 0:
                rhs = rhs + M[i][k] * c[k]
        if rhs == 0:
            continue
        gap = eps - M[i][i]
        if gap == 0:
            raise DegenerateEigenvalue(f"eigenvalue of {order[i]} collides with that of {vl}")
        c[i] = divide(rhs, gap)
    coeffs = {order[k]: c[k] for k in range(len(order)) if c[k] != 0}
    return GenMacExpansion(vl, coeffs, eps)


def gen_macdonald_at_point(vl, module: FockModule, matrix=None) -> GenMacExpansion:
    """Eigenvector through the kernel of (M - eps), for specialised u.

    Normalised to coefficient 1 at the greatest support tuple in the basis
    order (which refines the star ordering).
    """
    vl = tuple(tuple(p) for p in vl)
    N = len(vl)
    fld = module.field
    level = sum(sum(p) for p in vl)
    order, M = matrix if matrix is not None else x0_matrix(N, level, module)
    eps = eps_eigenvalue(vl, module.u, fld)
    shifted = [[(M[i][k] - eps) if i == k else M[i][k] for k in range(len(order))] for i in range(len(order))]
    ker = linalg.kernel(shifted, fld.one)
    if len(ker) != 1:
        raise DegenerateEigenvalue(f"kernel dimension {len(ker)} at this specialization", len(ker))
    vec = ker[0]
    lead = max(k for k in range(len(order)) if vec[k] != 0)
    scale = divide(1, vec[lead])
    coeffs = {order[k]: vec[k] * scale for k in range(len(order)) if vec[k] != 0}
    return GenMacExpansion(vl, coeffs, eps, kernel_dim=1)


def is_star_triangular(order, M) -> bool:
    """Every nonzero off-diagonal M[row][col] has order[col] > order[row]."""
    for i, row_t in enumerate(order):
        for k, col_t in enumerate(order):
            if i != k and M[i][k] != 0 and not less_star(row_t, col_t):
                return False
    return True


def symfunc_to_json(f: dict) -> dict:
    return {format_partition(lam): str(c) for lam, c in sorted(f.items())}
