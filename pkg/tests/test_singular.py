import itertools
import random

import pytest

from dimkac.partition import InapplicableError, RSData
from dimkac.scalar import PRIMES, ModField, ModPoint, SymbolicField
from dimkac.singular import (
    _annihilation_suite,
    _compare_proportional,
    eigenvalue_identity,
    projection_check,
    rank1_check,
    singular_check,
)

E = ()


@pytest.mark.parametrize(
    "r,s,theta",
    [((1,), (1,), (E, (1,))), ((2,), (1,), (E, (1, 1))), ((1,), (2,), (E, (2,))), ((2, 1), (1, 1), (E, (1,), (2,)))],
)
def test_singular_examples(r, s, theta):
    rep = singular_check(RSData(r, s))
    assert rep.tuple == theta
    assert rep.verdict == "PASS" and rep.kernel_dim == 1
    assert len(rep.annihilation) == len(theta) * rep.depth
    assert all(a["zero"] for a in rep.annihilation)


def test_singular_n2_specialization_ratio():
    rep = singular_check(RSData((1,), (1,)), u_pp=5, seed=3)
    chosen = rep.specialization
    fld = ModField(ModPoint(chosen["prime"], chosen["s"], chosen["t"], (chosen["u1"], chosen["u2"])))
    assert chosen["u2"] == 5
    assert fld.u[0] == fld.q / fld.t * fld.u[1]


def test_singular_seeds_and_deeper_depth():
    for seed in range(3):
        assert singular_check(RSData((1, 2), (1, 1)), depth=5, seed=seed).passed


@pytest.mark.parametrize("args", [(1, 1, 2, 2), (2, 1, 1, 3), (1, 1, 1, 3), (1, 2, 1, 2)])
def test_rank1(args):
    rep = rank1_check(*args)
    assert rep.verdict == "PASS" and rep.kernel_dim == 1


def test_rank1_inapplicable():
    with pytest.raises(InapplicableError):
        rank1_check(2, 1, 1, 2)


def test_generic_u_is_not_singular():
    rng = random.Random(1)
    for vl in [(E, (1,)), (E, (1, 1)), (E, (1,), (2,))]:
        pt = ModPoint.random(rng, len(vl), PRIMES[0])
        fld = ModField(pt)
        rep = _annihilation_suite(vl, fld, fld.u, pt, 3)
        assert rep.verdict == "FAIL" and rep.offending is not None


def test_degenerate_verdict():
    # s = 1 and equal u make the level-1 eigenvalues collide
    pt = ModPoint(PRIMES[0], 1, 3, (5, 5))
    rep = _annihilation_suite((E, (1,)), ModField(pt), ModField(pt).u, pt, 1)
    assert rep.verdict == "DEGENERATE" and rep.kernel_dim == 2


@pytest.mark.parametrize("r,s,target", [((1,), (1,), (1,)), ((1,), (2,), (2,)), ((2,), (1,), (1, 1))])
def test_projection_n2(r, s, target):
    rep = projection_check(RSData(r, s))
    assert rep.target == target
    assert rep.verdict == "PASS" and rep.ratio not in (None, 0)


def test_projection_n3_and_seeds():
    for seed in range(3):
        assert projection_check(RSData((1, 2), (1, 1)), seed=seed).passed


def test_projection_needs_monotone_r():
    with pytest.raises(InapplicableError):
        projection_check(RSData((2, 1), (1, 1)))


def test_proportionality_helper():
    fld = ModField(ModPoint(101, 2, 3, ()))
    f = {(2,): fld(4), (1, 1): fld(6)}
    assert _compare_proportional(f, {(2,): fld(2), (1, 1): fld(3)}) == (fld(2), None)
    assert _compare_proportional(f, {(2,): fld(2), (1, 1): fld(4)})[0] is None
    assert _compare_proportional(f, {(2,): fld(2)}) == (None, (1, 1))


def test_eigenvalue_identity_sweep():
    count = 0
    for N in range(2, 5):
        for r in itertools.product(range(0, 4), repeat=N - 1):
            for s in itertools.product(range(1, 4), repeat=N - 1):
                assert eigenvalue_identity(RSData(r, s), SymbolicField(N))
                count += 1
    assert count == 3 * 4 + 9 * 16 + 27 * 64


def test_report_json():
    js = singular_check(RSData((1,), (1,))).to_dict()
    assert js["theta"] == "|1" and js["verdict"] == "PASS" and js["kernel_dim"] == 1
    js = projection_check(RSData((1,), (2,))).to_dict()
    assert js["target"] == "2" and set(js["projection"]) == {"2", "1,1"}
