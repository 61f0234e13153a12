"""Singular vectors and the projection to ordinary Macdonald functions.

Singular vectors are realised as eigenvectors of X^(1)_0 at specialised
highest weights: the kernel of (X^(1)_0 - eps_Theta) on the level of Theta is
computed at a prime-field point and then tested for annihilation by every
positive mode X^(i)_n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .fock import FockModule, h_table, project_symfunc
from .macdonald import DegenerateEigenvalue, gen_macdonald_at_point, macdonald_P, x0_matrix
from .partition import (
    InapplicableError,
    RSData,
    eps_eigenvalue,
    format_ntuple,
    format_partition,
    lambda_rs_closed,
    specialize_u,
    theta_rs,
    tuple_size,
)
from .scalar import PRIMES, BadPoint, DegenerateInput, ModField, ModPoint, SymbolicField, divide, u_var

RESAMPLE_BUDGET = 20


@dataclass
class SingularReport:
    tuple: tuple
    specialization: dict
    depth: int
    data: RSData | None = None
    kernel_dim: int | None = None
    annihilation: list = dc_field(default_factory=list)
    verdict: str = "PASS"
    offending: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        return {
            "r": list(self.data.r) if self.data else None,
            "s": list(self.data.s) if self.data else None,
            "theta": format_ntuple(self.tuple),
            "specialization": self.specialization,
            "depth": self.depth,
            "depth_rationale": "X^(i)_n with n > |Theta| maps the level of Theta to negative degree",
            "kernel_dim": self.kernel_dim,
            "annihilation": self.annihilation,
            "offending": list(self.offending) if self.offending else None,
            "verdict": self.verdict,
        }


def _sample(rng: random.Random, N: int, prime: int, build_u):
    """Draw points until the specialised u are nonzero; returns (point, field, u)."""
    for _ in range(RESAMPLE_BUDGET):
        pt = ModPoint.random(rng, N, prime)
        fld = ModField(pt)
        u = build_u(fld)
        if all(x != 0 for x in u):
            return pt, ModField(pt, u), u
    raise DegenerateInput("could not draw a usable specialization")


def _specialization_dict(pt: ModPoint, u) -> dict:
    out = {"prime": pt.prime, "s": pt.s, "t": pt.t}
    out.update({f"u{k}": int(x) for k, x in enumerate(u, start=1)})
    return out


def _annihilation_suite(vl, fld, u, pt, depth: int, data=None) -> SingularReport:
    N = len(vl)
    report = SingularReport(vl, _specialization_dict(pt, u), depth, data)
    module = FockModule(N, fld, u)
    try:
        vec = gen_macdonald_at_point(vl, module).vector(fld)
        report.kernel_dim = 1
    except DegenerateEigenvalue as exc:
        report.kernel_dim = exc.kernel_dim
        report.verdict = "DEGENERATE"
        return report
    for i in range(1, N + 1):
        for n in range(1, depth + 1):
            zero = module.apply_mode(i, n, vec).is_zero()
            report.annihilation.append({"i": i, "n": n, "zero": zero})
            if not zero and report.verdict == "PASS":
                report.verdict = "FAIL"
                report.offending = (i, n)
    return report


def singular_check(data: RSData, depth: int | None = None, u_pp=None, seed: int = 0, prime: int = PRIMES[0]):
    """Kernel and annihilation test for the eigenvector labelled by Theta_{r,s}.

    ``u_pp`` fixes u_N (an integer mod ``prime``); otherwise it is drawn from
    ``seed`` along with s and t.
    """
    vl = theta_rs(data)
    depth = tuple_size(vl) if depth is None else depth
    rng = random.Random(seed)

    def build_u(fld):
        base = fld(u_pp) if u_pp is not None else fld.u[-1]
        return specialize_u(data, base, fld)

    for _ in range(RESAMPLE_BUDGET):
        pt, fld, u = _sample(rng, data.N, prime, build_u)
        try:
            return _annihilation_suite(vl, fld, u, pt, depth, data)
        except BadPoint:
            continue
    raise DegenerateInput("resample budget exhausted")


def rank1_check(i: int, r: int, s: int, N: int, u_pp=None, seed: int = 0, prime: int = PRIMES[0]):
    """u_i = q^s t^-r u_{i+1}, other u generic; tuple (s^r) in slot i+1."""
    if not 1 <= i <= N - 1:
        raise InapplicableError(f"need 1 <= i <= N-1, got i={i}, N={N}")
    if r < 1 or s < 1:
        raise InapplicableError("r and s must be positive")
    vl = tuple((s,) * r if k == i + 1 else () for k in range(1, N + 1))
    rng = random.Random(seed)

    def build_u(fld):
        u = list(fld.u)
        if u_pp is not None:
            u[i] = fld(u_pp)
        u[i - 1] = fld.q**s * fld.t ** (-r) * u[i]
        return tuple(u)

    for _ in range(RESAMPLE_BUDGET):
        pt, fld, u = _sample(rng, N, prime, build_u)
        try:
            return _annihilation_suite(vl, fld, u, pt, tuple_size(vl))
        except BadPoint:
            continue
    raise DegenerateInput("resample budget exhausted")


@dataclass
class ProjectionReport:
    data: RSData
    theta: tuple
    target: tuple
    specialization: dict
    ratio: int | None = None
    projection: dict = dc_field(default_factory=dict)
    verdict: str = "PASS"
    first_mismatch: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        return {
            "r": list(self.data.r),
            "s": list(self.data.s),
            "theta": format_ntuple(self.theta),
            "target": format_partition(self.target),
            "specialization": self.specialization,
            "projection": self.projection,
            "ratio": self.ratio,
            "first_mismatch": self.first_mismatch,
            "verdict": self.verdict,
        }


def _compare_proportional(f: dict, g: dict):
    """(ratio f/g, first mismatching key); ratio None when not proportional."""
    keys = sorted(set(f) | set(g))
    ratio = None
    for lam in keys:
        a, b = f.get(lam), g.get(lam)
        if a is None or b is None:
            return None, lam
        x = divide(a, b)
        if ratio is None:
            ratio = x
        elif x != ratio:
            return None, lam
    return ratio, None


def projection_check(data: RSData, u_pp=None, seed: int = 0, prime: int = PRIMES[0]) -> ProjectionReport:
    """Project the Theta eigenvector with the h-boson functional and compare to P_{lambda_rs}."""
    target = lambda_rs_closed(data)
    vl = theta_rs(data)
    N = data.N
    level = tuple_size(vl)
    rng = random.Random(seed)

    def build_u(fld):
        base = fld(u_pp) if u_pp is not None else fld.u[-1]
        return specialize_u(data, base, fld)

    for _ in range(RESAMPLE_BUDGET):
        pt, fld, u = _sample(rng, N, prime, build_u)
        report = ProjectionReport(data, vl, target, _specialization_dict(pt, u))
        try:
            module = FockModule(N, fld, u)
            vec = gen_macdonald_at_point(vl, module, x0_matrix(N, level, module)).vector(fld)
            proj = project_symfunc(vec, h_table(N, max(level, 1), fld))
            ref = macdonald_P(target, fld)
        except BadPoint:
            continue
        except DegenerateEigenvalue:
            report.verdict = "DEGENERATE"
            return report
        report.projection = {format_partition(k): int(v) for k, v in sorted(proj.items())}
        if not proj:
            report.verdict = "FAIL"
            report.first_mismatch = "zero projection"
            return report
        ratio, bad = _compare_proportional(proj, ref)
        if ratio is None or ratio == 0:
            report.verdict = "FAIL"
            report.first_mismatch = format_partition(bad) if bad is not None else "zero ratio"
        else:
            report.ratio = int(ratio)
        return report
    raise DegenerateInput("resample budget exhausted")


def eigenvalue_identity(data: RSData, field=None) -> bool:
    """eps_Theta(specialised u) / u_N == sum_i t^-r_{i-1} q^{s_i + ... + s_{N-1}}, symbolically."""
    fld = field or SymbolicField(data.N)
    N = data.N
    u_n = u_var(N) if isinstance(fld, SymbolicField) else fld.u[-1]
    u = specialize_u(data, u_n, fld)
    lhs = divide(eps_eigenvalue(theta_rs(data), u, fld), u_n)
    r = (0,) + data.r
    rhs = fld.zero
    for i in range(1, N + 1):
        rhs = rhs + fld.t ** (-r[i - 1]) * fld.q ** sum(data.s[i - 1 :])
    return lhs == rhs
