import itertools
import random

import pytest
from hypothesis import given, strategies as st

from dimkac.partition import (
    InapplicableError,
    NotAPartition,
    RSData,
    add_rectangle,
    count_PN,
    dominates,
    e_lambda,
    e_lambda_edges,
    edge_sets,
    enum_ntuples,
    enum_partitions,
    eps_eigenvalue,
    format_ntuple,
    join,
    lambda_rs_closed,
    lemma_e_identities,
    less_star,
    parse_ntuple,
    parse_partition,
    specialize_u,
    theta_rs,
    trj,
)
from dimkac.scalar import ONE, Q, T, SymbolicField, u_var
from oracles import count_oracle, e_lambda_oracle, same, to_sympy

E = ()


def partitions_up_to(n):
    return [lam for k in range(n + 1) for lam in enum_partitions(k)]


def test_enum_partitions_examples():
    assert enum_partitions(0) == ((),)
    assert enum_partitions(3) == ((3,), (2, 1), (1, 1, 1))
    assert len(enum_partitions(5)) == 7


def test_count_examples():
    assert count_PN(1, 4) == 5
    assert count_PN(3, 0) == 1
    assert set(enum_ntuples(2, 2)) == {((2,), E), ((1, 1), E), ((1,), (1,)), (E, (2,)), (E, (1, 1))}


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_count_three_ways(N):
    for n in range(9):
        tuples = enum_ntuples(N, n)
        assert len(set(tuples)) == len(tuples) == count_PN(N, n) == count_oracle(N, n)


def test_count_rank3_level4_is_51():
    assert count_PN(3, 4) == 51 == count_oracle(3, 4)


def test_less_star_examples():
    assert less_star(((1,), E), (E, (1,)))
    assert not less_star(((1,), (1,)), ((1,), (1,)))
    assert not less_star((E, (1,)), ((2,), E))


@pytest.mark.parametrize("N,level", [(N, n) for N in (1, 2, 3) for n in range(5)])
def test_less_star_is_strict_partial_order(N, level):
    tuples = enum_ntuples(N, level)
    rel = {(a, b): less_star(a, b) for a in tuples for b in tuples}
    for a in tuples:
        assert not rel[(a, a)]
    for a, b in itertools.product(tuples, repeat=2):
        assert not (rel[(a, b)] and rel[(b, a)])
    for a, b, c in itertools.product(tuples, repeat=3):
        if rel[(a, b)] and rel[(b, c)]:
            assert rel[(a, c)]


@pytest.mark.parametrize("N,level", [(2, 3), (3, 3), (3, 4)])
def test_enumeration_order_refines_star(N, level):
    tuples = enum_ntuples(N, level)
    for i, a in enumerate(tuples):
        for b in tuples[i + 1 :]:
            assert not less_star(a, b), (a, b)


def test_dominance():
    assert dominates((2, 1), (1, 1, 1)) and not dominates((1, 1, 1), (2, 1))


def test_edge_sets_examples():
    assert edge_sets(E) == ({(1, 1)}, set())
    assert edge_sets((2, 1)) == ({(1, 3), (2, 2), (3, 1)}, {(1, 2), (2, 1)})
    assert edge_sets((1,)) == ({(1, 2), (2, 1)}, {(1, 1)})


def test_e_lambda_examples():
    assert e_lambda(E) == ONE
    assert e_lambda((1,)) == 1 + (T - 1) * (Q - 1) / T


def test_e_lambda_two_forms_all_partitions_to_12():
    for lam in partitions_up_to(12):
        assert e_lambda(lam) == e_lambda_edges(lam)


@pytest.mark.parametrize("lam", partitions_up_to(5))
def test_e_lambda_against_sympy(lam):
    assert same(to_sympy(e_lambda(lam)), e_lambda_oracle(lam))


def test_eps_examples():
    u = (u_var(1), u_var(2), u_var(3))
    assert eps_eigenvalue((E, E, E), u) == u[0] + u[1] + u[2]
    assert eps_eigenvalue(((1,),), u[:1]) == u[0] * (1 + (T - 1) * (Q - 1) / T)


def test_eps_distinct_at_n2_level2():
    u = (u_var(1), u_var(2))
    vals = [eps_eigenvalue(vl, u) for vl in enum_ntuples(2, 2)]
    for a, b in itertools.combinations(vals, 2):
        assert a - b != 0


def test_lemma_examples():
    assert e_lambda((3, 3)) == Q**3 - Q**3 * T ** (-2) + T ** (-2)
    assert lemma_e_identities(E, 2, 3, 0) == (True, True, True)
    assert lemma_e_identities((2, 1), 2, 1, 0)[1]


def test_lemma_inapplicable():
    with pytest.raises(InapplicableError):
        lemma_e_identities((1, 1, 1), 2, 1, 0)
    with pytest.raises(InapplicableError):
        lemma_e_identities((1,), 2, 1, -1)


def test_lemma_100_random_instances():
    rng = random.Random(0)
    for _ in range(100):
        r, s = rng.randint(1, 6), rng.randint(1, 6)
        lam = rng.choice([mu for mu in partitions_up_to(8) if len(mu) <= r])
        n = rng.randint(0, 6)
        assert lemma_e_identities(lam, r, s, n) == (True, True, True)


def test_trj_and_join():
    assert trj((3, 2, 1), 1) == ((3,), (2, 1))
    assert trj((1,), 5) == ((1,), E)
    assert join((3, 2), (2, 1)) == (3, 2, 2, 1)
    with pytest.raises(NotAPartition):
        join((1,), (2,))
    assert add_rectangle((1,), 2, 2) == (3, 2)


def test_theta_examples():
    assert theta_rs(RSData((1,), (1,))) == (E, (1,))
    assert theta_rs(RSData((1, 1), (1, 1))) == (E, E, (2,))
    assert theta_rs(RSData((2, 1), (1, 1))) == (E, (1,), (2,))


def test_lambda_closed_examples():
    assert lambda_rs_closed(RSData((2,), (3,))) == (3, 3)
    assert lambda_rs_closed(RSData((1, 2), (1, 1))) == (2, 1)
    assert lambda_rs_closed(RSData((1, 1), (1, 1))) == (2,)
    assert theta_rs(RSData((1, 2), (1, 1))) == (E, E, (2, 1))
    with pytest.raises(InapplicableError):
        lambda_rs_closed(RSData((2, 1), (1, 1)))


def all_rsdata(max_entry=3, max_N=4, monotone=False):
    for N in range(2, max_N + 1):
        for r in itertools.product(range(0, max_entry + 1), repeat=N - 1):
            if monotone and any(b < a for a, b in zip(r, r[1:])):
                continue
            for s in itertools.product(range(1, max_entry + 1), repeat=N - 1):
                yield RSData(r, s)


def test_theta_matches_closed_form_when_monotone():
    count = 0
    for d in all_rsdata(monotone=True):
        assert theta_rs(d) == (E,) * (d.N - 1) + (lambda_rs_closed(d),)
        count += 1
    assert count > 100


def test_specialize_examples():
    fld = SymbolicField(3)
    assert specialize_u(RSData((1,), (1,)), ONE, fld) == (Q / T, ONE)
    assert specialize_u(RSData((1, 1), (1, 1)), ONE, fld) == (Q**2 / T, Q / T, ONE)


def test_specialize_ratio_sweep():
    rng = random.Random(2)
    for _ in range(20):
        N = rng.randint(2, 4)
        d = RSData([rng.randint(0, 3) for _ in range(N - 1)], [rng.randint(1, 3) for _ in range(N - 1)])
        u = specialize_u(d, u_var(N))
        r = d.r + (0,)
        for i in range(N - 1):
            assert u[i] / u[i + 1] == Q ** d.s[i] * T ** (r[i + 1] - r[i])


def test_text_formats_round_trip():
    assert parse_partition("") == E
    assert parse_ntuple("2,1||3") == ((2, 1), E, (3,))
    assert format_ntuple(((2, 1), E, (3,))) == "2,1||3"
    for bad in ["1,1,", "1,2", "a", "0"]:
        with pytest.raises(NotAPartition):
            parse_partition(bad)
    with pytest.raises(NotAPartition):
        parse_ntuple("1|1", 3)


@given(st.lists(st.integers(1, 6), max_size=6).map(lambda xs: tuple(sorted(xs, reverse=True))))
def test_partition_format_round_trip(lam):
    from dimkac.partition import format_partition

    assert parse_partition(format_partition(lam)) == lam


@given(
    st.lists(st.integers(1, 5), max_size=4).map(lambda xs: tuple(sorted(xs, reverse=True))),
    st.integers(4, 6),
    st.integers(1, 5),
    st.integers(0, 6),
)
def test_lemma_property(lam, r, s, n):
    assert lemma_e_identities(lam, r, s, n) == (True, True, True)
