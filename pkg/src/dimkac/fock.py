"""Colored-boson Fock module and the action of the generators X^(i)_n.

States are polynomials in the creation operators a^(c)_{-n} applied to the
highest weight vector |u>.  A boson monomial is stored as an N-tuple of
partitions: component c lists the modes n of the a^(c)_{-n} factors, so
``((2, 1), (), (1,))`` is a^(1)_{-2} a^(1)_{-1} a^(3)_{-1} |u>.  The vacuum is
the tuple of empty partitions.

Annihilators act as derivations, a^(c)_n = kappa_n d/d(a^(c)_{-n}) with
kappa_n = n (1 - q^n) / (1 - t^n).  Hence the annihilation half of a
normal-ordered vertex operator, exp(sum_n B_{c,n} z^-n a^(c)_n), is the shift
a^(c)_{-n} -> a^(c)_{-n} + kappa_n B_{c,n} z^-n.  That turns mode extraction
into finite bookkeeping: no series object is ever built.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from math import comb, factorial

from .partition import InapplicableError, enum_ntuples
from .scalar import SymbolicField, divide


class TableTooSmall(ValueError):
    """A projection needed an h-boson mode beyond the table's range."""


def vacuum(N: int) -> tuple:
    return ((),) * N


def monomial_degree(mono) -> int:
    return sum(sum(p) for p in mono)


def multiply_monomials(a, b):
    return tuple(tuple(sorted(x + y, reverse=True)) if y else x for x, y in zip(a, b))


def _multiplicities(part):
    counts = {}
    for k in part:
        counts[k] = counts.get(k, 0) + 1
    return counts


def format_monomial(mono) -> str:
    """Canonical "c:n^m,..." string, colors then modes ascending."""
    items = []
    for c, part in enumerate(mono, start=1):
        for n, m in sorted(_multiplicities(part).items()):
            items.append(f"{c}:{n}^{m}")
    return ",".join(items)


def parse_monomial(text: str, N: int):
    modes = [[] for _ in range(N)]
    if text.strip():
        for item in text.split(","):
            c, rest = item.split(":")
            n, m = rest.split("^")
            modes[int(c) - 1].extend([int(n)] * int(m))
    return tuple(tuple(sorted(p, reverse=True)) for p in modes)


class FockVector:
    """Finite linear combination of boson monomials applied to |u>."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def basis(cls, mono, one) -> "FockVector":
        return cls({mono: one})

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return FockVector(out)

    def __neg__(self):
        return FockVector({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, FockVector):
            return NotImplemented
        return FockVector({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self - other).is_zero()

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coefficient(self, mono, zero=0):
        return self.terms.get(mono, zero)

    def degrees(self) -> set:
        return {monomial_degree(m) for m in self.terms}

    def to_json(self) -> dict:
        return {format_monomial(m): str(c) for m, c in sorted(self.terms.items(), key=lambda kv: format_monomial(kv[0]))}

    def __repr__(self):
        return f"FockVector({self.to_json()})"


def pairing(bra, ket, field=None):
    """<u| prod a_n^m  prod a_{-n}^m |u> for two boson monomials."""
    fld = field or SymbolicField()
    if tuple(bra) != tuple(ket):
        return fld.zero
    out = fld.one
    for part in ket:
        for n, m in _multiplicities(part).items():
            out = out * factorial(m) * _kappa(fld, n) ** m
    return out


def _kappa(fld, n):
    return divide(n * (1 - fld.q**n), 1 - fld.t**n)


# vertex terms --------------------------------------------------------------


@dataclass(frozen=True)
class VertexTerm:
    """One normal-ordered summand :Lambda_{j1}(z) ... Lambda_{ji}(p^{i-1} z):.

    ``creation[c]`` lists (s_exponent, kind) pairs; each contributes
    w_kind(n) * (1 - t^-n)/n * s^(n*s_exponent) to the coefficient of
    z^n a^(c)_{-n}, where w_eta = 1 and w_phi = 1 - p^-n.
    ``annihilation[c]`` lists s-exponents e; each contributes
    -(1 - t^n)/n * s^(-n*e) to the coefficient of z^-n a^(c)_n.
    """

    subset: tuple
    creation: dict = dc_field(hash=False)
    annihilation: dict = dc_field(hash=False)

    def u_factor(self, u):
        out = u[self.subset[0] - 1]
        for j in self.subset[1:]:
            out = out * u[j - 1]
        return out

    def creation_coeff(self, c: int, n: int, fld):
        acc = fld.zero
        base = divide(1 - fld.t ** (-n), fld(n))
        for exp, kind in self.creation.get(c, ()):
            w = fld.s ** (n * exp)
            if kind == "phi":
                w = w * (1 - fld.p ** (-n))
            acc = acc + w
        return base * acc

    def annihilation_coeff(self, c: int, n: int, fld):
        acc = fld.zero
        for exp in self.annihilation.get(c, ()):
            acc = acc + fld.s ** (-n * exp)
        return -divide(1 - fld.t**n, fld(n)) * acc


def build_X_terms(i: int, N: int) -> list[VertexTerm]:
    """The C(N, i) normal-ordered summands of X^(i)(z)."""
    if not 1 <= i <= N:
        raise ValueError(f"generator index {i} outside 1..{N}")
    terms = []
    for subset in combinations(range(1, N + 1), i):
        creation = defaultdict(list)
        annihilation = defaultdict(list)
        for m, j in enumerate(subset, start=1):
            # Lambda_j(p^{m-1} z): argument of the color-k factor is
            # p^{m-1} p^{-(k-1)/2} z = s^{2m-1-k} z.
            for k in range(1, j):
                creation[k].append((2 * m - 1 - k, "phi"))
            creation[j].append((2 * m - 1 - j, "eta"))
            annihilation[j].append(2 * m - 1 - j)
        terms.append(VertexTerm(subset, dict(creation), dict(annihilation)))
    return terms


class FockModule:
    """The Fock module F_u over a coefficient field.

    ``field`` is a SymbolicField or ModField; ``u`` defaults to ``field.u``.
    Coefficient tables are cached per instance.
    """

    def __init__(self, N: int, field=None, u=None):
        self.N = N
        self.field = field or SymbolicField(N)
        self.u = tuple(u) if u is not None else tuple(self.field.u)
        if len(self.u) != N:
            raise ValueError(f"need {N} highest-weight parameters, got {len(self.u)}")
        self.one, self.zero = self.field.one, self.field.zero
        self._terms = {i: build_X_terms(i, N) for i in range(1, N + 1)}
        self._kappa = {}
        self._ann = {}
        self._cre = {}
        self._cre_series = {}
        self._shift = {}

    def vacuum(self) -> FockVector:
        return FockVector.basis(vacuum(self.N), self.one)

    def kappa(self, n: int):
        if n not in self._kappa:
            self._kappa[n] = _kappa(self.field, n)
        return self._kappa[n]

    def terms(self, i: int) -> list[VertexTerm]:
        return self._terms[i]

    def _ann_coeff(self, term, c, n):
        key = (term.subset, c, n)
        if key not in self._ann:
            self._ann[key] = self.kappa(n) * term.annihilation_coeff(c, n, self.field)
        return self._ann[key]

    def _cre_coeff(self, term, c, n):
        key = (term.subset, c, n)
        if key not in self._cre:
            self._cre[key] = term.creation_coeff(c, n, self.field)
        return self._cre[key]

    def creation_series(self, term: VertexTerm, d: int) -> list:
        """[(monomial, coeff)] for the z^d part of the creation exponential."""
        key = (term.subset, d)
        if key in self._cre_series:
            return self._cre_series[key]
        out = []
        for mono in enum_ntuples(self.N, d):
            coeff = self.one
            for c, part in enumerate(mono, start=1):
                for n, m in _multiplicities(part).items():
                    coeff = coeff * self._cre_coeff(term, c, n) ** m
                    if m > 1:
                        coeff = divide(coeff, self.field(factorial(m)))
                if coeff == 0:
                    break
            if coeff != 0:
                out.append((mono, coeff))
        self._cre_series[key] = out
        return out

    def shift_expansion(self, term: VertexTerm, mono) -> list:
        """[(remaining monomial, annihilated degree, coeff)] of the shift."""
        key = (term.subset, mono)
        if key in self._shift:
            return self._shift[key]
        per_factor = []
        for c, part in enumerate(mono, start=1):
            for n, m in _multiplicities(part).items():
                if c in term.annihilation:
                    b = self._ann_coeff(term, c, n)
                    opts = [(j, comb(m, j) * b**j) for j in range(m + 1)]
                else:
                    opts = [(0, self.one)]
                per_factor.append((c, n, m, opts))
        out = []
        for choice in product(*(f[3] for f in per_factor)):
            coeff = self.one
            kept = [[] for _ in range(self.N)]
            d_a = 0
            for (c, n, m, _), (j, w) in zip(per_factor, choice):
                coeff = coeff * w
                kept[c - 1].extend([n] * (m - j))
                d_a += n * j
            if coeff != 0:
                rest = tuple(tuple(sorted(p, reverse=True)) for p in kept)
                out.append((rest, d_a, coeff))
        self._shift[key] = out
        return out

    def apply_mode(self, i: int, n: int, v: FockVector) -> FockVector:
        """X^(i)_n v, exactly."""
        acc = {}
        for term in self._terms[i]:
            uf = term.u_factor(self.u)
            for mono, coeff in v.terms.items():
                for rest, d_a, w in self.shift_expansion(term, mono):
                    d_c = d_a - n
                    if d_c < 0:
                        continue
                    base = uf * coeff * w
                    for cmono, cc in self.creation_series(term, d_c):
                        out_mono = multiply_monomials(rest, cmono)
                        val = base * cc
                        acc[out_mono] = acc[out_mono] + val if out_mono in acc else val
        return FockVector(acc)

    def apply_word(self, word, v: FockVector) -> FockVector:
        """Apply [(i, n), ...] right to left, as the operator product is written."""
        for i, n in reversed(list(word)):
            v = self.apply_mode(i, n, v)
            if v.is_zero():
                break
        return v

    def pair(self, bra_vec: FockVector, ket_vec: FockVector):
        """Bilinear pairing extended from monomials."""
        acc = self.zero
        for m, c in ket_vec.terms.items():
            if m in bra_vec.terms:
                acc = acc + bra_vec.terms[m] * c * pairing(m, m, self.field)
        return acc


# structure constants and the W-algebra boson ------------------------------


def f_coeffs(which: int, l_max: int, field=None) -> list:
    """Taylor coefficients f_0..f_{l_max} of the structure function f^(which)."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    fld = field or SymbolicField()
    q, t, p = fld.q, fld.t, fld.p
    g = [fld.zero]
    for n in range(1, l_max + 1):
        val = divide((1 - q**n) * (1 - t ** (-n)), fld(n))
        if which == 2:
            val = val * (1 + p**n)
        g.append(val)
    # F = exp(G):  l f_l = sum_k k g_k f_{l-k}
    f = [fld.one]
    for l in range(1, l_max + 1):
        acc = fld.zero
        for k in range(1, l + 1):
            acc = acc + k * g[k] * f[l - k]
        f.append(divide(acc, fld(l)))
    return f


def b_prime_coeffs(N: int, n: int, field, negative: bool = False) -> list:
    """Color coefficients of the U(1) boson b'_{+n} (or b'_{-n})."""
    fld = field
    s, t, p = fld.s, fld.t, fld.p
    if negative:
        pref = divide((1 - t ** (-n)) * (1 - p**n), fld(n) * (1 - p ** (N * n)))
    else:
        pref = -divide((1 - t**n) * (1 - p**n), fld(n) * (1 - p ** (N * n)))
    pref = pref * p ** ((N - 1) * n)
    return [pref * s ** ((1 - k) * n) for k in range(1, N + 1)]


def b_coeffs(i: int, N: int, n: int, field, negative: bool = False) -> list:
    """Color coefficients of b^(i)_{+n} (or b^(i)_{-n})."""
    fld = field
    s, t = fld.s, fld.t
    bp = b_prime_coeffs(N, n, fld, negative)
    shift = s ** ((1 - i) * n)
    out = [(-shift if negative else shift) * x for x in bp]
    own = divide(1 - t ** (-n) if negative else 1 - t**n, fld(n))
    out[i - 1] = out[i - 1] + own
    return out


def h_coeffs(i: int, N: int, n: int, field, negative: bool = False) -> list:
    """Color coefficients of h^(i)_{+n} (or h^(i)_{-n}), n > 0."""
    fld = field
    s, p = fld.s, fld.p
    if not negative:
        return [-(s ** ((i - 1) * n)) * x for x in b_coeffs(i, N, n, fld)]
    out = [fld.zero] * N
    for k in range(1, i + 1):
        w = s ** ((1 - k) * n)
        if k < i:
            w = w * (1 - p ** (-n))
        for c, x in enumerate(b_coeffs(k, N, n, fld, negative=True)):
            out[c] = out[c] + w * x
    return out


def boson_bracket(pos: list, neg: list, n: int, field):
    """[sum_k c_k a^(k)_n, sum_k d_k a^(k)_{-n}] = kappa_n sum_k c_k d_k."""
    acc = field.zero
    for a, b in zip(pos, neg):
        acc = acc + a * b
    return _kappa(field, n) * acc


@dataclass
class HBosonTable:
    """h^(N)_n = sum_k coeffs[(k, n)] a^(k)_n for 1 <= n <= n_max."""

    N: int
    n_max: int
    coeffs: dict
    field: object


def h_table(N: int, n_max: int, field=None) -> HBosonTable:
    if N < 2:
        raise InapplicableError("the h-boson table needs N >= 2")
    fld = field or SymbolicField(N)
    coeffs = {}
    for n in range(1, n_max + 1):
        for k, c in enumerate(h_coeffs(N, N, n, fld), start=1):
            coeffs[(k, n)] = c
    return HBosonTable(N, n_max, coeffs, fld)


def project_symfunc(v: FockVector, table: HBosonTable) -> dict:
    """<u| exp(-sum_n p_n h^(N)_n / (1 - q^n)) v, in the power-sum basis.

    Returns {partition: coefficient}; each a^(k)_{-n} becomes
    -c_{k,n} / (1 - q^n) * kappa_n * p_n.
    """
    fld = table.field
    images = {}
    out = {}
    for mono, coeff in v.terms.items():
        val = coeff
        modes = []
        for k, part in enumerate(mono, start=1):
            for n in part:
                if n > table.n_max:
                    raise TableTooSmall(f"mode {n} exceeds table range {table.n_max}")
                if (k, n) not in images:
                    images[(k, n)] = -divide(table.coeffs[(k, n)], 1 - fld.q**n) * _kappa(fld, n)
                val = val * images[(k, n)]
                modes.append(n)
        lam = tuple(sorted(modes, reverse=True))
        out[lam] = out[lam] + val if lam in out else val
    return {lam: c for lam, c in out.items() if c != 0}


