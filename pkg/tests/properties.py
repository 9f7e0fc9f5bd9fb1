"""Randomised invariant checks, run by the acceptance suite.

Each ``test_*`` callable draws at least 1000 cases through hypothesis.
"""

import tempfile
from pathlib import Path

import numpy as np
from hypothesis import HealthCheck, event, given, settings
from hypothesis import strategies as st

import oracles
from bmatrix import (
    GeometryKind,
    MemorySet,
    Strategy,
    UpdateOrder,
    build_proximity,
    cost_classical,
    grow_fragment,
    identify_sites,
    permute_matrix,
    retrieve,
    sgn,
    single_site_order,
    train_hebbian,
)
from bmatrix.cli import main

CASES = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
VARIANTS = ("classical", "arbitrary", "averaged", "independent")


@st.composite
def memory_sets(draw, max_n=10, max_m=6):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(1, min(max_m, 2**n)))
    rows = draw(
        st.lists(st.tuples(*[st.sampled_from((-1, 1))] * n), min_size=m, max_size=m, unique=True)
    )
    return MemorySet(np.array(rows))


@st.composite
def retrieval_cases(draw):
    ms = draw(memory_sets())
    n = ms.n
    variant = draw(st.sampled_from(VARIANTS))
    k = 1 if variant == "classical" else draw(st.integers(1, n))
    sites = draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))
    values = draw(st.lists(st.sampled_from((-1, 1)), min_size=k, max_size=k))
    geometry = GeometryKind(draw(st.sampled_from(("line", "grid2d", "uniform2d", "uniform3d"))),
                            draw(st.integers(0, 2**32)))
    seed = draw(st.integers(0, 2**64 - 1))
    return ms, sites, values, Strategy(variant, seed), build_proximity(n, geometry)


@CASES
@given(memory_sets())
def test_weight_matrix_invariants(ms):
    t = train_hebbian(ms).t
    b = np.tril(t, -1)
    assert np.array_equal(t, t.T)
    assert not np.any(np.diag(t))
    assert np.array_equal(b + b.T, t)
    assert np.abs(t).max() <= ms.m
    assert t.tolist() == oracles.hebb(ms.patterns.tolist())


@CASES
@given(memory_sets(), st.randoms(use_true_random=False))
def test_training_permutation_equivariant(ms, rnd):
    perm = list(range(ms.n))
    rnd.shuffle(perm)
    permuted = MemorySet(ms.patterns[:, perm])
    assert train_hebbian(permuted) == permute_matrix(train_hebbian(ms), perm)
    off = ~np.eye(ms.n, dtype=bool)
    a = np.sort(train_hebbian(ms).t[off])
    assert np.array_equal(a, np.sort(train_hebbian(permuted).t[off]))


@CASES
@given(retrieval_cases())
def test_clamp_preservation_and_order_validity(case):
    ms, sites, values, strategy, prox = case
    t = train_hebbian(ms)
    res = retrieve(t, prox, sites, values, strategy, ms)
    for s, v in zip(sites, values):
        assert res.output[s] == v
    head = sorted(sites)
    for o in res.orders:
        assert sorted(o.order) == list(range(ms.n))
        if strategy.variant == "independent":
            assert o.clamp_count == 1 and o.order[0] in head
        else:
            assert list(o.clamped) == head
    assert (res.matched is not None) == any(np.array_equal(res.output, x) for x in ms)
    if res.matched is not None:
        assert np.array_equal(ms[res.matched], res.output)


def _has_zero_potential(t, prox, sites, values, strategy):
    """True if any recursion step (or independent total) lands exactly on 0."""
    pos = prox.positions.tolist()
    pairs = sorted(zip(sites, values))
    head = [s for s, _ in pairs]
    vals = [v for _, v in pairs]
    if strategy.variant in ("classical", "independent"):
        total = [0] * len(t)
        for s, v in pairs:
            _, pot = oracles.recurse(t, oracles.proximity_order(pos, s), [v])
            if any(p == 0 for j, p in enumerate(pot) if j != s):
                return True
            total = [a + b for a, b in zip(total, pot)]
        return any(total[j] == 0 for j in range(len(t)) if j not in head)
    if strategy.variant == "averaged":
        order = oracles.averaged_order(pos, head)
    else:
        from bmatrix import order_arbitrary
        order = list(order_arbitrary(len(t), head, strategy.seed).order)
    _, pot = oracles.recurse(t, order, vals)
    return any(p == 0 for j, p in enumerate(pot) if j not in head)


# roughly 40% of drawn cases are tie-free; 3000 draws keep >1000 asserted
@settings(max_examples=3000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(retrieval_cases())
def test_sign_symmetry(case):
    # T is even in the memories and the recursion is odd in f except where
    # sgn(0) = +1 fires, so negation is exact on tie-free runs only
    ms, sites, values, strategy, prox = case
    t = train_hebbian(ms)
    neg = MemorySet(-ms.patterns)
    assert train_hebbian(neg) == t
    a = retrieve(t, prox, sites, values, strategy)
    b = retrieve(train_hebbian(neg), prox, sites, [-v for v in values], strategy)
    tie_free = not _has_zero_potential(t.t.tolist(), prox, sites, values, strategy)
    event(f"tie_free={tie_free}")
    if tie_free:
        assert np.array_equal(a.output, -b.output)


@CASES
@given(retrieval_cases())
def test_retrieval_deterministic(case):
    ms, sites, values, strategy, prox = case
    t = train_hebbian(ms)
    assert retrieve(t, prox, sites, values, strategy, ms) == retrieve(t, prox, sites, values, strategy, ms)


@CASES
@given(memory_sets(max_n=12, max_m=8), st.integers(1, 12))
def test_strict_sites_verified_by_enumeration(ms, r):
    sm = identify_sites(ms, r)
    p = ms.patterns
    for i, e in enumerate(sm):
        assert 1 <= len(e.sites) <= min(r, ms.n)
        assert len(set(e.sites)) == len(e.sites)
        for j, score, strict in zip(e.sites, e.scores, e.strict):
            others = [k for k in range(ms.m) if k != i]
            assert score == sum(p[k][j] != p[i][j] for k in others)
            if strict and ms.m > 1:
                assert all(p[k][j] != p[i][j] for k in others)
            if ms.m > 1:
                assert 1 <= score <= ms.m - 1
    assert len({e.level for e in sm}) == sm.m
    if ms.m == 2:
        assert sorted(sm[0].sites) == sorted(sm[1].sites)


@CASES
@given(st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_sgn_idempotent_under_positive_scaling(x, k):
    assert sgn(x) in (-1, 1)
    assert sgn(sgn(x) * k) == sgn(x)


@CASES
@given(st.integers(2, 30), st.data())
def test_single_site_order_is_permutation(n, data):
    prox = build_proximity(n, GeometryKind(data.draw(st.sampled_from(("line", "grid2d", "uniform2d"))),
                                           data.draw(st.integers(0, 1000))))
    site = data.draw(st.integers(0, n - 1))
    o = single_site_order(prox, site)
    assert o.order[0] == site and sorted(o.order) == list(range(n))
    assert o.order == tuple(oracles.proximity_order(prox.positions.tolist(), site))


@CASES
@given(memory_sets(max_n=7, max_m=3), st.data())
def test_grow_fragment_matches_naive_reference(ms, data):
    n = ms.n
    perm = data.draw(st.permutations(range(n)))
    k = data.draw(st.integers(1, n))
    clamp = data.draw(st.lists(st.sampled_from((-1, 1)), min_size=k, max_size=k))
    t = train_hebbian(ms)
    got = grow_fragment(t, UpdateOrder(tuple(perm), k), clamp)
    want, _ = oracles.recurse(t.t.tolist(), list(perm), clamp)
    assert got.tolist() == want


@CASES
@given(st.integers(1, 40), st.integers(1, 10))
def test_cost_monotone(n, r):
    if r < n:
        assert cost_classical(n + 1, r) > cost_classical(n, r)
        assert cost_classical(n, r + 1) > cost_classical(n, r)


@CASES
@given(
    st.lists(st.integers(4, 9), min_size=1, max_size=2, unique=True),
    st.integers(2, 4),
    st.integers(1, 3),
    st.sampled_from(("arbitrary", "averaged", "independent", "classical")),
    st.integers(0, 2**64 - 1),
)
def test_experiment_command_byte_identical(n_list, m, r, strategy, seed):
    with tempfile.TemporaryDirectory() as d:
        paths = [Path(d) / "a.csv", Path(d) / "b.csv"]
        for p in paths:
            code = main([
                "experiment", "--n-list", ",".join(map(str, n_list)), "--m", str(m),
                "--r", str(r), "--trials", "2", "--strategies", strategy,
                "--seed", str(seed), "--out", str(p),
            ])
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
