"""Partitions, N-tuples of partitions and the eigenvalue combinatorics.

A partition is a weakly decreasing tuple of positive ints, ``()`` being the
empty partition.  An N-tuple is a tuple of N partitions.  Coordinates of
boxes are (row, column), both 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .scalar import SymbolicField

Partition = tuple
NTuple = tuple


class InapplicableError(ValueError):
    """An identity or construction was requested outside its hypotheses."""


class NotAPartition(ValueError):
    pass


def as_partition(parts) -> Partition:
    parts = tuple(int(x) for x in parts)
    if any(x <= 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise NotAPartition(f"{parts!r} is not a partition")
    return parts


def tuple_size(vl: NTuple) -> int:
    return sum(sum(p) for p in vl)


def weights(vl: NTuple) -> tuple:
    return tuple(sum(p) for p in vl)


# enumeration -----------------------------------------------------------------


@lru_cache(maxsize=None)
def enum_partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n in reverse lexicographic order."""
    if n == 0:
        return ((),)
    if max_part is None:
        max_part = n
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in enum_partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enum_ntuples(N: int, n: int) -> tuple:
    """All N-tuples of total size n.

    Ordered by the reversed weight vector (|l^(N)|, ..., |l^(1)|) descending,
    then component by component in reverse lexicographic order.  This total
    order refines the star ordering: greater tuples come first.
    """
    if N < 1:
        raise ValueError("N must be positive")
    comps = sorted(_compositions(n, N), key=lambda w: w[::-1], reverse=True)
    out = []
    for w in comps:
        out.extend(itertools.product(*(enum_partitions(k) for k in w)))
    return tuple(out)


def count_PN(N: int, n: int) -> int:
    """Coefficient of x**n in prod_k (1 - x**k)**(-N), by series arithmetic."""
    series = [1] + [0] * n
    for k in range(1, n + 1):
        for _ in range(N):
            # multiply by 1/(1 - x^k)
            for i in range(k, n + 1):
                series[i] += series[i - k]
    return series[n]


# ordering ----------------------------------------------------------------------


def less_star(mu: NTuple, lam: NTuple) -> bool:
    """True iff lam is strictly greater than mu in the star ordering."""
    if len(mu) != len(lam):
        raise ValueError("tuples of different length")
    wl, wm = weights(lam), weights(mu)
    if sum(wl) != sum(wm) or wl == wm:
        return False
    tail_l = tail_m = 0
    for a, b in zip(reversed(wl), reversed(wm)):
        tail_l += a
        tail_m += b
        if tail_l < tail_m:
            return False
    return True


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


# Young diagram edges and eigenvalues -------------------------------------------


def edge_sets(lam: Partition) -> tuple[frozenset, frozenset]:
    """(addable boxes, removable boxes) as sets of (row, column)."""
    lam = tuple(lam)
    padded = lam + (0,)
    addable = set()
    removable = set()
    for i, part in enumerate(padded, start=1):
        if i == 1 or padded[i - 2] > part:
            addable.add((i, part + 1))
    for i, part in enumerate(lam, start=1):
        if part > padded[i]:
            removable.add((i, part))
    return frozenset(addable), frozenset(removable)


def e_lambda(lam: Partition, field=None):
    """Eigenvalue scalar 1 + (t - 1) * sum_{i>=1} (q**lam_i - 1) t**(-i)."""
    fld = field or SymbolicField()
    t, q = fld.t, fld.q
    acc = fld.zero
    for i, part in enumerate(lam, start=1):
        acc = acc + (q**part - 1) * t ** (-i)
    return fld.one + (t - 1) * acc


def e_lambda_edges(lam: Partition, field=None):
    """Same scalar from addable/removable boxes."""
    fld = field or SymbolicField()
    t, q = fld.t, fld.q
    addable, removable = edge_sets(lam)
    acc = fld.zero
    for i, j in addable:
        acc = acc + q ** (j - 1) * t ** (1 - i)
    for i, j in removable:
        acc = acc - q**j * t ** (-i)
    return acc


def eps_eigenvalue(vl: NTuple, u, field=None):
    """sum_k u_k e_{lambda^(k)}."""
    if len(u) != len(vl):
        raise ValueError("need one u per component")
    fld = field or SymbolicField()
    acc = fld.zero
    for uk, lam in zip(u, vl):
        acc = acc + uk * e_lambda(lam, fld)
    return acc


# T / R / J and Theta --------------------------------------------------------------


def trj(lam: Partition, n: int) -> tuple[Partition, Partition]:
    """(first n parts, remaining parts)."""
    if n < 0:
        raise InapplicableError("n must be non-negative")
    return tuple(lam[:n]), tuple(lam[n:])


def join(lam: Partition, mu: Partition) -> Partition:
    if lam and mu and lam[-1] < mu[0]:
        raise NotAPartition(f"cannot join {lam} and {mu}: {lam[-1]} < {mu[0]}")
    return tuple(lam) + tuple(mu)


def add_rectangle(lam: Partition, s: int, r: int) -> Partition:
    """lam + (s^r) with lam padded by zeros; needs len(lam) <= r."""
    if len(lam) > r:
        raise InapplicableError(f"length of {lam} exceeds {r}")
    return tuple(a + s for a in tuple(lam) + (0,) * (r - len(lam)))


def lemma_e_identities(lam: Partition, r: int, s: int, n: int, field=None) -> tuple[bool, bool, bool]:
    """Check the three eigenvalue identities.

    1. e_{lam+(s^r)} = q^s e_lam - q^s t^-r + t^-r          (len(lam) <= r)
    2. e_lam = e_T + t^-n e_R - t^-n,  (T, R) = trj(lam, n)
    3. e_{J(T,R)} = e_T + t^-len(T) e_R - t^-len(T)
    """
    if len(lam) > r:
        raise InapplicableError(f"len({lam}) > r={r}")
    if n < 0:
        raise InapplicableError("n must be non-negative")
    fld = field or SymbolicField()
    q, t = fld.q, fld.t
    e = lambda mu: e_lambda(mu, fld)  # noqa: E731
    first = e(add_rectangle(lam, s, r)) == q**s * e(lam) - q**s * t ** (-r) + t ** (-r)
    top, rest = trj(lam, n)
    second = e(lam) == e(top) + t ** (-n) * e(rest) - t ** (-n)
    ell = len(top)
    third = e(join(top, rest)) == e(top) + t ** (-ell) * e(rest) - t ** (-ell)
    return first, second, third


@dataclass(frozen=True)
class RSData:
    r: tuple
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if len(self.r) != len(self.s) or not self.r:
            raise ValueError("r and s must be non-empty and of equal length")
        if any(x < 0 for x in self.r) or any(x < 1 for x in self.s):
            raise ValueError("need r_k >= 0 and s_k >= 1")

    @property
    def N(self) -> int:
        return len(self.r) + 1

    def truncated(self) -> "RSData":
        return RSData(self.r[:-1], self.s[:-1])


def theta_rs(data: RSData) -> NTuple:
    """The N-tuple labelling the (r, s) singular vector."""
    r, s = data.r[-1], data.s[-1]
    if data.N == 2:
        return ((), (s,) * r)
    prev = theta_rs(data.truncated())
    top, rest = trj(prev[-1], r)
    return prev[:-1] + (rest, add_rectangle(top, s, r))


def lambda_rs_closed(data: RSData) -> Partition:
    """Stacked rectangles for weakly increasing r."""
    r = data.r
    if any(b < a for a, b in zip(r, r[1:])):
        raise InapplicableError(f"r={r} is not weakly increasing")
    parts = []
    prev = 0
    for k in range(len(r)):
        width = sum(data.s[k:])
        parts.extend([width] * (r[k] - prev))
        prev = r[k]
    return tuple(parts)


def specialize_u(data: RSData, u_pp, field=None) -> tuple:
    """(u_1..u_N) with u_N = u_pp and u_i / u_{i+1} = q^{s_i} t^{r_{i+1} - r_i}."""
    fld = field or SymbolicField()
    r = data.r + (0,)
    u = [u_pp]
    for i in range(data.N - 2, -1, -1):
        u.append(u[-1] * fld.q ** data.s[i] * fld.t ** (r[i + 1] - r[i]))
    return tuple(reversed(u))


# text formats ----------------------------------------------------------------------


def format_partition(lam: Partition) -> str:
    return ",".join(str(x) for x in lam)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise NotAPartition(f"malformed partition {text!r}") from exc
    return as_partition(parts)


def format_ntuple(vl: NTuple) -> str:
    return "|".join(format_partition(p) for p in vl)


def parse_ntuple(text: str, N: int | None = None) -> NTuple:
    vl = tuple(parse_partition(chunk) for chunk in text.split("|"))
    if N is not None and len(vl) != N:
        raise NotAPartition(f"{text!r} has {len(vl)} components, expected {N}")
    return vl
