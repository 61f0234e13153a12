"""PBW vectors, Gram matrices and the factorized Kac determinant."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from . import linalg
from .fock import FockModule, FockVector, vacuum
from .partition import count_PN, enum_ntuples
from .scalar import ModField, ModPoint, SymbolicField, sz_equal

SYMBOLIC_MAX_DIM = 10


def pbw_word(vl) -> list:
    """[(i, -part), ...] in the order the ket operator product is written."""
    return [(i, -part) for i, lam in enumerate(vl, start=1) for part in lam]


def bra_word(vl) -> list:
    """Positive modes of the bra, in written order (ket-adjacent factor last)."""
    return [(i, -n) for i, n in reversed(pbw_word(vl))]


def pbw_vector(vl, module: FockModule) -> FockVector:
    return module.apply_word(pbw_word(vl), module.vacuum())


def gram_entry(vl, vm, module: FockModule, ket: FockVector | None = None):
    """<X_vl | X_vm>: apply the bra's modes to the ket and read off |u>."""
    if sum(map(sum, vl)) != sum(map(sum, vm)):
        return module.zero
    if ket is None:
        ket = pbw_vector(vm, module)
    out = module.apply_word(bra_word(vl), ket)
    return out.coefficient(vacuum(module.N), module.zero)


def gram_matrix(N: int, level: int, module: FockModule | None = None):
    module = module or FockModule(N)
    basis = enum_ntuples(N, level)
    kets = [pbw_vector(vm, module) for vm in basis]
    return [[gram_entry(vl, vm, module, ket) for vm, ket in zip(basis, kets)] for vl in basis]


def gram_factors(N: int, level: int, module: FockModule | None = None):
    """(C, A) with Gram = C A.

    A[nu][mu] is the coefficient of the Heisenberg monomial nu in X_mu|u>;
    C[lam][nu] is <X_lam| applied to that monomial.  Both factors are far
    sparser than the Gram matrix itself.
    """
    module = module or FockModule(N)
    basis = enum_ntuples(N, level)
    kets = [pbw_vector(vm, module) for vm in basis]
    A = [[k.coefficient(nu, module.zero) for k in kets] for nu in basis]
    vac = vacuum(N)
    C = [
        [
            module.apply_word(bra_word(vl), FockVector.basis(nu, module.one)).coefficient(vac, module.zero)
            for nu in basis
        ]
        for vl in basis
    ]
    return C, A


def kac_lhs(N: int, level: int, field=None, factorized: bool = True):
    """det of the level Gram matrix.

    Over the symbolic field the determinant is taken fraction-free, by
    default as det(C) det(A) from :func:`gram_factors`.
    """
    fld = field or SymbolicField(N)
    module = FockModule(N, fld)
    if isinstance(fld, SymbolicField):
        if count_PN(N, level) > SYMBOLIC_MAX_DIM:
            raise ValueError(f"symbolic determinant capped at dimension {SYMBOLIC_MAX_DIM}")
        if factorized:
            C, A = gram_factors(N, level, module)
            return linalg.det_bareiss(C) * linalg.det_bareiss(A)
        return linalg.det_bareiss(gram_matrix(N, level, module))
    return linalg.det(gram_matrix(N, level, module), fld.one)


def _b_factor(lam, x, fld, sign):
    """prod_i prod_{k<=m_i} (1 - x^k), or (-1 + x^k) when sign < 0."""
    out = fld.one
    counts = {}
    for part in lam:
        counts[part] = counts.get(part, 0) + 1
    for m in counts.values():
        for k in range(1, m + 1):
            out = out * ((1 - x**k) if sign > 0 else (x**k - 1))
    return out


def kac_rhs(N: int, level: int, field=None, u=None, drop_factor: bool = False):
    """Closed product for the level-n Kac determinant.

    ``drop_factor`` omits one (u_1 - q t^-1 u_2) factor; used as a mutation
    control for the verifier.
    """
    fld = field or SymbolicField(N)
    u = tuple(u) if u is not None else fld.u
    q, t = fld.q, fld.t
    tinv = 1 / t
    out = fld.one
    for vl in enum_ntuples(N, level):
        for lam in vl:
            out = out * _b_factor(lam, q, fld, +1) * _b_factor(lam, tinv, fld, -1)
    uprod = fld.one
    for x in u:
        uprod = uprod * x
    for r in range(1, level + 1):
        for s in range(1, level // r + 1):
            base = uprod * uprod
            for i in range(N):
                for j in range(i + 1, N):
                    base = base * (u[i] - q**s * t ** (-r) * u[j]) * (u[i] - q ** (-r) * t**s * u[j])
            out = out * base ** count_PN(N, level - r * s)
    if drop_factor:
        if N < 2:
            out = out / u[0]
        else:
            out = out / (u[0] - q / t * u[1])
    return out


@dataclass
class GramReport:
    N: int
    level: int
    backend: str
    verdict: str = "PASS"
    dimension: int = 0
    symbolic_equal: bool | None = None
    modular: dict | None = None
    timings: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self, reproducible: bool = False) -> dict:
        out = {
            "N": self.N,
            "level": self.level,
            "backend": self.backend,
            "dimension": self.dimension,
            "symbolic_equal": self.symbolic_equal,
            "points": (self.modular or {}).get("points", []),
            "primes": (self.modular or {}).get("primes", []),
            "resamples": (self.modular or {}).get("resamples", 0),
            "first_mismatch": (self.modular or {}).get("first_mismatch"),
            "verdict": self.verdict,
        }
        if not reproducible:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


def verify_kac(
    N: int,
    level: int,
    trials: int = 20,
    seed: int = 0,
    symbolic: bool = False,
    modular: bool = True,
    corrupt_rhs: bool = False,
) -> GramReport:
    """Check det(Gram) against the closed product.

    Symbolic exact equality when requested (dimension <= 10), and a modular
    identity test over at least two primes when ``modular`` is set.
    """
    dim = count_PN(N, level)
    backends = [name for name, on in (("symbolic", symbolic), ("modular", modular)) if on]
    if not backends:
        raise ValueError("select at least one backend")
    report = GramReport(N, level, "+".join(backends), dimension=dim)
    if symbolic:
        if dim > SYMBOLIC_MAX_DIM:
            raise ValueError(f"dimension {dim} exceeds the symbolic cap {SYMBOLIC_MAX_DIM}")
        t0 = time.perf_counter()
        lhs = kac_lhs(N, level)
        rhs = kac_rhs(N, level, drop_factor=corrupt_rhs)
        report.symbolic_equal = lhs == rhs
        report.timings["symbolic"] = time.perf_counter() - t0
        if not report.symbolic_equal:
            report.verdict = "FAIL"
    if modular:
        t0 = time.perf_counter()
        res = sz_equal(
            lambda fld: kac_lhs(N, level, fld),
            lambda fld: kac_rhs(N, level, fld, drop_factor=corrupt_rhs),
            trials=trials,
            seed=seed,
            rank=N,
        )
        report.modular = res.to_dict()
        report.timings["modular"] = time.perf_counter() - t0
        if not res.passed:
            report.verdict = "FAIL"
    return report


def gram_rank_at(N: int, level: int, point: ModPoint, u=None) -> int:
    fld = ModField(point) if u is None else ModField(point, u)
    return linalg.rank(gram_matrix(N, level, FockModule(N, fld)))


def scalar_lhs_value(N: int, level: int, point: ModPoint, u=None):
    """Gram determinant at a modular point with optional specialised u."""
    fld = ModField(point) if u is None else ModField(point, u)
    return linalg.det(gram_matrix(N, level, FockModule(N, fld)), fld.one)


__all__ = [
    "GramReport",
    "bra_word",
    "gram_entry",
    "gram_factors",
    "gram_matrix",
    "gram_rank_at",
    "kac_lhs",
    "kac_rhs",
    "pbw_vector",
    "pbw_word",
    "scalar_lhs_value",
    "verify_kac",
]
