import math
import random
from collections import Counter
from fractions import Fraction

import pytest

import smallgraphs
from oracles import labeled_copy_census
from autorbit.canon import canonical_form
from autorbit.errors import EdgeCountRangeError, EmptyEdgeSetError, ParameterRangeError
from autorbit.ermodel import (
    count_labeled_copies,
    er_prob_isomorphic,
    estimate_prob_isomorphic,
    falling_factorial,
    sample_er,
    verify_binomial_cancellation,
    verify_proof_chain,
)
from autorbit.graphs import from_edge_mask
from autorbit.perms import brute_force_aut


def test_wedge_probability_is_one():
    assert er_prob_isomorphic(smallgraphs.wedge()) == Fraction(1)


def test_triangle_plus_isolated_probability():
    assert er_prob_isomorphic(smallgraphs.triangle_plus_isolated()) == Fraction(1, 5)


def test_path4_probability():
    assert er_prob_isomorphic(smallgraphs.path(4)) == Fraction(3, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_complete_graph_probability_is_one(n):
    assert er_prob_isomorphic(smallgraphs.complete(n)) == Fraction(1)


def test_labeled_copies(twin_hubs):
    assert count_labeled_copies(smallgraphs.wedge()) == 3
    assert count_labeled_copies(smallgraphs.triangle()) == 1
    assert count_labeled_copies(twin_hubs) == math.factorial(7) // 8 == 630


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_labeled_copies_match_brute_census(n):
    # oracle first: group all edge masks by brute-force isomorphism and
    # compare class sizes with n!/|Aut|
    census = labeled_copy_census(n)
    for rep_mask, members in census.items():
        rep = from_edge_mask(n, rep_mask)
        assert count_labeled_copies(rep) == len(members)
        assert count_labeled_copies(rep, brute_force_aut(rep).order) == len(members)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_class_probabilities_sum_to_one_for_each_edge_count(n):
    census = labeled_copy_census(n)
    by_m: dict[int, Fraction] = {}
    for rep_mask in census:
        rep = from_edge_mask(n, rep_mask)
        by_m[rep.m] = by_m.get(rep.m, Fraction(0)) + er_prob_isomorphic(rep)
    for m in range(math.comb(n, 2) + 1):
        assert by_m[m] == Fraction(1)


def test_sample_er_extremes():
    assert sample_er(4, 0, seed=1).m == 0
    full = sample_er(4, 6, seed=1)
    assert full == smallgraphs.complete(4)


def test_sample_er_is_seed_deterministic():
    a = sample_er(6, 7, seed=42)
    b = sample_er(6, 7, seed=42)
    assert a == b
    assert a.m == 7


def test_sample_er_range_checks():
    with pytest.raises(EdgeCountRangeError):
        sample_er(3, 4, seed=0)
    with pytest.raises(EdgeCountRangeError):
        sample_er(3, -1, seed=0)
    with pytest.raises(EdgeCountRangeError):
        sample_er(0, 0, seed=0)


def test_sampler_uniformity_over_labeled_wedges():
    # three labeled two-edge graphs on 3 vertices, each expected 1/3
    rng = random.Random(2026)
    counts = Counter(sample_er(3, 2, rng).mask for _ in range(30000))
    assert len(counts) == 3
    for mask, count in counts.items():
        assert abs(count / 30000 - 1 / 3) < 0.02


def test_sampler_uniformity_over_all_subsets():
    # m=2 of C(4,2)=6 pairs: 15 equally likely edge sets
    rng = random.Random(7)
    trials = 45000
    counts = Counter(sample_er(4, 2, rng).mask for _ in range(trials))
    assert len(counts) == 15
    for count in counts.values():
        assert abs(count / trials - 1 / 15) < 0.01


def test_estimate_wedge_is_exactly_one():
    est = estimate_prob_isomorphic(smallgraphs.wedge(), trials=2000, seed=5)
    assert est.hits == est.trials
    assert est.estimate == 1.0
    assert est.ci95_halfwidth == 0.0


def test_estimate_matches_exact_value_within_noise():
    target = smallgraphs.triangle_plus_isolated()
    est = estimate_prob_isomorphic(target, trials=20000, seed=11)
    exact = float(er_prob_isomorphic(target))
    sigma = est.ci95_halfwidth / 1.96
    assert abs(est.estimate - exact) < 6 * sigma
    assert 0.0 <= est.estimate <= 1.0
    assert est.hits <= est.trials


def test_estimate_needs_positive_trials():
    with pytest.raises(ParameterRangeError):
        estimate_prob_isomorphic(smallgraphs.wedge(), trials=0, seed=1)


def test_falling_factorial():
    assert falling_factorial(10, 0) == 1
    assert falling_factorial(10, 3) == 720
    assert falling_factorial(5, 5) == 120
    with pytest.raises(ParameterRangeError):
        falling_factorial(5, -1)


def test_cancellation_smallest_case_by_hand():
    # n=3: N=3, m=2, k=1: C(3,2)*C(2,1) = 6 and C(3,1)*C(2,1) = 6
    assert math.comb(3, 2) * math.comb(2, 1) == 6
    assert math.comb(3, 1) * math.comb(2, 1) == 6
    assert verify_binomial_cancellation(3, 2, 1)


def test_cancellation_k_equals_m():
    assert verify_binomial_cancellation(4, 3, 3)
    assert verify_binomial_cancellation(5, 10, 10)


def test_cancellation_exhaustive_small():
    for n in range(2, 9):
        big_n = math.comb(n, 2)
        for m in range(1, big_n + 1):
            for k in range(1, m + 1):
                assert verify_binomial_cancellation(n, m, k)


def test_cancellation_range_errors():
    with pytest.raises(ParameterRangeError):
        verify_binomial_cancellation(3, 4, 1)  # m > C(3,2)
    with pytest.raises(ParameterRangeError):
        verify_binomial_cancellation(4, 2, 3)  # k > m
    with pytest.raises(ParameterRangeError):
        verify_binomial_cancellation(4, 2, 0)  # k < 1


def test_proof_chain_triangle_single_edge():
    report = verify_proof_chain(smallgraphs.triangle(), {(0, 1)})
    assert not report.trivial_case
    assert (report.n, report.m, report.k) == (3, 3, 1)
    assert report.all_hold
    # frozen by hand: P(class of K3) = (1/C(3,3)) * (3!/6) = 1, so the split
    # equation is (1/C(3,1)) * 1 = (1/3) * (1/C(2,1)) * P(class of wedge),
    # and P(class of wedge) = (1/C(3,2)) * (3!/2) = 1; both sides are 1/3
    split = report.checks[0]
    assert split.lhs == Fraction(1, 3)
    assert split.rhs == Fraction(1, 3)


def test_proof_chain_sides_rebuilt_independently(twin_hubs):
    from oracles import brute_aut_order
    from autorbit.orbits import enumerated_orbit

    dset = frozenset({(0, 4), (4, 5)})
    report = verify_proof_chain(twin_hubs, dset)
    assert report.all_hold

    n, m, k = 7, 6, 2
    big_n = math.comb(n, 2)
    aut_g = brute_aut_order(twin_hubs)
    reduced = twin_hubs.delete_edges(dset)
    aut_r = brute_aut_order(reduced)
    ao_g = enumerated_orbit(brute_force_aut(twin_hubs), dset).size
    ao_r = enumerated_orbit(brute_force_aut(reduced), dset).size
    prob_g = Fraction(1, math.comb(big_n, m)) * Fraction(math.factorial(n), aut_g)
    prob_r = Fraction(1, math.comb(big_n, m - k)) * Fraction(math.factorial(n), aut_r)
    lhs = Fraction(1, math.comb(m, k)) * prob_g
    rhs = Fraction(1, ao_g) * Fraction(ao_r, math.comb(big_n - (m - k), k)) * prob_r
    assert report.checks[0].lhs == lhs
    assert report.checks[0].rhs == rhs
    assert lhs == rhs


def test_proof_chain_trivial_case_when_everything_is_deleted():
    g = smallgraphs.wedge()
    report = verify_proof_chain(g, g.edges)
    assert report.trivial_case
    assert report.all_hold
    names = [c.name for c in report.checks]
    assert len(names) == 3


def test_proof_chain_validation(twin_hubs):
    with pytest.raises(EmptyEdgeSetError):
        verify_proof_chain(twin_hubs, frozenset())
    from autorbit.errors import NotASubsetError

    with pytest.raises(NotASubsetError):
        verify_proof_chain(twin_hubs, {(0, 1)})


def test_proof_chain_mini_sweep():
    for n in (2, 3, 4):
        for mask in range(1 << math.comb(n, 2)):
            g = from_edge_mask(n, mask)
            if g.m == 0:
                continue
            for sub in range(1, 1 << g.m):
                edges = sorted(g.edges)
                dset = frozenset(e for i, e in enumerate(edges) if (sub >> i) & 1)
                assert verify_proof_chain(g, dset).all_hold
