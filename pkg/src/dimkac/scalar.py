"""Exact coefficients in Q(s, t, u_1, ..., u_N) and their prime-field images.

The deformation parameters are stored through ``s = p**(1/2)`` and ``t`` only:
``q = s**2 * t`` and ``p = q / t = s**2``.  Half-integer powers of ``p`` are
therefore ordinary powers of ``s`` and every coefficient lives in a plain
rational function field.

Two interchangeable coefficient fields are exposed with the same surface
(``one``, ``zero``, ``s``, ``t``, ``q``, ``p``, ``u``, ``__call__``):

* :class:`SymbolicField` produces :class:`Scalar` values (exact, reduced
  fractions of sparse integer polynomials, backed by FLINT).
* :class:`ModField` produces ``flint.nmod`` values at a :class:`ModPoint`.

Everything downstream is written against that surface, so the same code runs
symbolically at small sizes and at random prime-field points otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import flint

MAX_RANK = 8
VARIABLES = ("s", "t") + tuple(f"u{i}" for i in range(1, MAX_RANK + 1))
_CTX = flint.fmpz_mpoly_ctx.get(VARIABLES, "lex")

# Largest primes below 2**62.
PRIMES = (4611686018427387847, 4611686018427387817, 4611686018427387787)


class ScalarDivisionError(ZeroDivisionError):
    """Raised when dividing an exact :class:`Scalar` by zero."""


class BadPoint(ArithmeticError):
    """A modular evaluation hit a vanishing denominator; resample the point."""


class DegenerateInput(RuntimeError):
    """The resample budget of an identity test was exhausted."""


def _poly(value) -> flint.fmpz_mpoly:
    if isinstance(value, flint.fmpz_mpoly):
        return value
    return _CTX.constant(int(value))


class Scalar:
    """An element of Q(s, t, u_1..u_N) kept in lowest terms.

    The denominator has a positive leading coefficient in lex order, so two
    equal rational functions always have identical components.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, Scalar):
            n, d = num.num, num.den * _poly(den)
        elif isinstance(num, Fraction):
            n, d = _poly(num.numerator), _poly(num.denominator) * _poly(den)
        else:
            n, d = _poly(num), _poly(den)
        if d.is_zero():
            raise ScalarDivisionError("zero denominator")
        self.num, self.den = _reduce(n, d)

    @classmethod
    def _raw(cls, num, den) -> "Scalar":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction, flint.fmpz_mpoly)):
            return Scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar._raw(*_reduce(self.num + o.num, self.den))
        return Scalar._raw(*_reduce(self.num * o.den + o.num * self.den, self.den * o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        # Cross-cancel first; keeps intermediate polynomials small.
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n = (self.num / g1) * (o.num / g2)
        d = (self.den / g2) * (o.den / g1)
        return Scalar._raw(*_normalize_sign(n, d))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ScalarDivisionError("division by zero Scalar")
        return Scalar._raw(*_normalize_sign(self.den, self.num))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar._raw(self.num**k, self.den**k)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # presentation -------------------------------------------------------

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"Scalar({self})"

    def evaluate(self, values: Sequence[int], prime: int) -> int:
        """Image in GF(prime) with ``values`` assigned to (s, t, u1, ...)."""
        d = _eval_poly(self.den, values, prime)
        if d == 0:
            raise BadPoint("denominator vanishes at point")
        return _eval_poly(self.num, values, prime) * pow(d, -1, prime) % prime


def _normalize_sign(n, d):
    if d.leading_coefficient() < 0:
        return -n, -d
    return n, d


def _reduce(n, d):
    if n.is_zero():
        return _CTX.constant(0), _CTX.constant(1)
    # FLINT's gcd includes the integer content.
    g = n.gcd(d)
    if not g.is_one():
        n, d = n / g, d / g
    return _normalize_sign(n, d)


def _eval_poly(poly, values: Sequence[int], prime: int) -> int:
    total = 0
    nvals = len(values)
    for exps, coeff in zip(poly.monoms(), poly.coeffs()):
        term = int(coeff) % prime
        for idx, e in enumerate(exps):
            if e:
                if idx >= nvals:
                    raise ValueError(f"no value supplied for variable {VARIABLES[idx]}")
                term = term * pow(values[idx], e, prime) % prime
        total += term
    return total % prime


ZERO = Scalar(0)
ONE = Scalar(1)
S = Scalar(_CTX.gens()[0])
T = Scalar(_CTX.gens()[1])
Q = S * S * T
P = S * S


def u_var(i: int) -> Scalar:
    """The highest-weight parameter u_i (1-based)."""
    if not 1 <= i <= MAX_RANK:
        raise ValueError(f"u index {i} outside 1..{MAX_RANK}")
    return Scalar(_CTX.gens()[1 + i])


# Coefficient fields ----------------------------------------------------------


class SymbolicField:
    """Exact coefficient field Q(s, t, u_1..u_N)."""

    name = "symbolic"

    def __init__(self, rank: int = 0, u: Sequence | None = None):
        if rank > MAX_RANK:
            raise ValueError(f"rank {rank} exceeds MAX_RANK={MAX_RANK}")
        self.rank = rank
        self.one, self.zero = ONE, ZERO
        self.s, self.t, self.q, self.p = S, T, Q, P
        self.u = tuple(u) if u is not None else tuple(u_var(i) for i in range(1, rank + 1))

    def __call__(self, value) -> Scalar:
        return Scalar(value)

    def with_u(self, u: Sequence) -> "SymbolicField":
        return SymbolicField(self.rank, u)


@dataclass(frozen=True)
class ModPoint:
    """A point of GF(prime) at which (s, t, u_1..u_N) are specialised."""

    prime: int
    s: int
    t: int
    u: tuple = ()

    def __post_init__(self):
        if any(v % self.prime == 0 for v in (self.s, self.t, *self.u)):
            raise BadPoint("ModPoint coordinates must be nonzero")

    @property
    def values(self) -> tuple:
        return (self.s, self.t, *self.u)

    @classmethod
    def random(cls, rng: random.Random, rank: int, prime: int = PRIMES[0]) -> "ModPoint":
        draw = lambda: rng.randrange(2, prime - 1)  # noqa: E731
        return cls(prime, draw(), draw(), tuple(draw() for _ in range(rank)))

    def assignment(self) -> dict:
        names = ("s", "t") + tuple(f"u{i}" for i in range(1, len(self.u) + 1))
        return {"prime": self.prime, **dict(zip(names, self.values))}


class ModField:
    """Prime-field image of the coefficient field at a :class:`ModPoint`."""

    name = "modular"

    def __init__(self, point: ModPoint, u: Sequence | None = None):
        self.point = point
        self.prime = point.prime
        self.rank = len(point.u)
        self.one = flint.nmod(1, self.prime)
        self.zero = flint.nmod(0, self.prime)
        self.s = flint.nmod(point.s, self.prime)
        self.t = flint.nmod(point.t, self.prime)
        self.p = self.s * self.s
        self.q = self.p * self.t
        if u is None:
            self.u = tuple(flint.nmod(v, self.prime) for v in point.u)
        else:
            self.u = tuple(self(v) for v in u)

    def __call__(self, value):
        if isinstance(value, flint.nmod):
            return value
        if isinstance(value, Fraction):
            den = value.denominator % self.prime
            if den == 0:
                raise BadPoint("rational constant not invertible mod prime")
            return flint.nmod(value.numerator, self.prime) / flint.nmod(den, self.prime)
        if isinstance(value, Scalar):
            return flint.nmod(eval_mod(value, self.point), self.prime)
        return flint.nmod(int(value), self.prime)

    def with_u(self, u: Sequence) -> "ModField":
        return ModField(self.point, u)


def divide(a, b):
    """Field division that maps a vanishing modular denominator to BadPoint."""
    if b == 0:
        if isinstance(b, Scalar):
            raise ScalarDivisionError("division by zero Scalar")
        raise BadPoint("division by zero at modular point")
    return a / b


def eval_mod(a: Scalar, pt: ModPoint) -> int:
    """Ring homomorphism Q(s,t,u)_(pt) -> GF(pt.prime)."""
    return Scalar(a).evaluate(pt.values, pt.prime)


# Schwartz-Zippel identity testing --------------------------------------------


@dataclass
class VerifyReport:
    verdict: str
    trials: int
    agreed: int = 0
    resamples: int = 0
    primes: list = field(default_factory=list)
    points: list = field(default_factory=list)
    first_mismatch: dict | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "trials": self.trials,
            "agreed": self.agreed,
            "resamples": self.resamples,
            "primes": list(self.primes),
            "points": list(self.points),
            "first_mismatch": self.first_mismatch,
        }


def _as_evaluator(side) -> Callable[[ModField], object]:
    if callable(side) and not isinstance(side, (Scalar, int, Fraction)):
        return side
    const = Scalar(side)
    return lambda fld: fld(const)


def sz_equal(
    lhs,
    rhs,
    trials: int = 20,
    seed: int = 0,
    rank: int = 0,
    primes: Sequence[int] = PRIMES[:2],
    budget: int | None = None,
    sampler: Callable[[random.Random, int], ModPoint] | None = None,
) -> VerifyReport:
    """Compare two point-evaluable quantities at random prime-field points.

    ``lhs``/``rhs`` are Scalars or callables taking a :class:`ModField`.
    Points cycle through ``primes``; a point raising :class:`BadPoint` or
    ``ZeroDivisionError`` is discarded and resampled.  The run stops at the
    first disagreement.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if len(set(primes)) < 2:
        raise ValueError("at least two distinct primes are required")
    budget = 10 * trials if budget is None else budget
    left, right = _as_evaluator(lhs), _as_evaluator(rhs)
    rng = random.Random(seed)
    report = VerifyReport(verdict="PASS", trials=trials)
    used = set()
    k = 0
    while report.agreed < trials:
        prime = primes[k % len(primes)]
        k += 1
        pt = sampler(rng, prime) if sampler else ModPoint.random(rng, rank, prime)
        try:
            fld = ModField(pt)
            a, b = int(left(fld)), int(right(fld))
        except (BadPoint, ZeroDivisionError):
            report.resamples += 1
            if report.resamples > budget:
                raise DegenerateInput(f"resample budget {budget} exhausted")
            continue
        used.add(prime)
        entry = {**pt.assignment(), "lhs": a, "rhs": b, "ok": a == b}
        report.points.append(entry)
        if a != b:
            report.verdict = "FAIL"
            report.first_mismatch = entry
            break
        report.agreed += 1
    report.primes = sorted(used)
    if report.verdict == "PASS" and len(used) < 2:
        report.verdict = "FAIL"
    return report
