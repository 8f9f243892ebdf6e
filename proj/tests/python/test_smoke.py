"""Smoke tests for the hyperlp python module."""

import math

import pytest

import hyperlp


def test_version_and_params():
    assert hyperlp.__version__
    params = hyperlp.HsbmParams(100, 3, 0.4, 0.1)
    assert params.n == 100 and params.d == 3
    assert not params.degenerate()
    assert hyperlp.HsbmParams(100, 3, 0.3, 0.3).degenerate()
    with pytest.raises(ValueError):
        hyperlp.HsbmParams(101, 3, 0.4, 0.1)


def test_sampling_is_deterministic():
    params = hyperlp.HsbmParams(40, 3, 0.5, 0.2)
    a = hyperlp.sample_hsbm(params, 7)
    b = hyperlp.sample_hsbm(params, 7)
    assert a.edge_count() == b.edge_count()
    assert a.to_text() == b.to_text()
    assert a.to_text().startswith("40 3\n")

    full = hyperlp.sample_hsbm(hyperlp.HsbmParams(10, 3, 1.0, 1.0), 0)
    assert full.edge_count() == hyperlp.count_sorted_multisets(10, 3)


def test_walk_profiles_are_probability_rows():
    params = hyperlp.HsbmParams(30, 3, 0.6, 0.2)
    h = hyperlp.sample_hsbm(params, 3)
    graph = hyperlp.clique_expand(h)
    profile = hyperlp.ce_landing_profile(graph, hyperlp.SeedSpec.explicit_seed([0]), 5)
    for k in range(profile.K + 1):
        assert math.isclose(sum(profile.row(k)), 1.0, abs_tol=1e-12)

    tprofile = hyperlp.tensor_landing_profile(
        h, hyperlp.SeedSpec.explicit_seed([0, 1]), 4)
    for k in range(tprofile.K + 1):
        assert math.isclose(sum(tprofile.row(k)), 1.0, abs_tol=1e-12)


def test_single_edge_hand_oracles():
    text_edges = hyperlp.sample_hsbm(hyperlp.HsbmParams(4, 3, 0.0, 0.0), 0)
    assert text_edges.edge_count() == 0

    params = hyperlp.HsbmParams(100, 3, 0.4, 0.1)
    traj = hyperlp.ce_trajectory(params, 3)
    assert math.isclose(traj.a[1], 0.02 * 5 / 7, rel_tol=1e-12)
    assert math.isclose(
        hyperlp.ce_gap_closed_form(params, 1), 0.02 * 3 / 7, rel_tol=1e-12)

    reduced = hyperlp.reduced_recurrence(params, 1)
    assert math.isclose(reduced.w[1], 0.012, rel_tol=1e-12)
    assert math.isclose(reduced.beta(1, 0), 0.006, rel_tol=1e-12)

    full = hyperlp.fullstate_recurrence(params, 1)
    assert math.isclose(full.value(1, 0), 0.008, rel_tol=1e-12)
    gaps = hyperlp.gap_from_fullstate(full)
    assert math.isclose(gaps[1], 0.012, rel_tol=1e-12)


def test_closed_form_matches_recurrence():
    params = hyperlp.HsbmParams(100, 3, 0.4, 0.1)
    reduced = hyperlp.reduced_recurrence(params, 30)
    for k in (0, 5, 17, 30):
        beta, zeta = hyperlp.d3_closed_form(params, k)
        assert math.isclose(beta, reduced.beta(k, 0), rel_tol=1e-9)
        assert math.isclose(zeta, reduced.zeta(k, 0), rel_tol=1e-9)


def test_roots_and_phase_constants():
    params = hyperlp.HsbmParams(100, 3, 0.4, 0.1)
    roots = hyperlp.characteristic_roots(params, hyperlp.RootFamily.beta)
    values = sorted(r.real for r in roots)
    assert math.isclose(values[1], (3 + math.sqrt(21)) / 2, rel_tol=1e-12)

    constants = hyperlp.phase_constants(params)
    assert math.isclose(constants.C1 + constants.C2, 1.0, rel_tol=1e-12)

    report = hyperlp.decay_bound_check(params, 40)
    assert report.min_step_margin >= -1e-12
    assert report.min_telescoped_margin >= -1e-12


def test_classification_pipeline():
    params = hyperlp.HsbmParams(60, 3, 0.9, 0.1)
    h = hyperlp.sample_hsbm(params, 1)
    profile = hyperlp.tensor_landing_profile(h, hyperlp.SeedSpec.uniform_block0(), 4)
    gaps = hyperlp.reduced_recurrence(params, 4).w
    weights = hyperlp.geometric_weights(gaps, 1, 4)
    truth = hyperlp.BlockLabels.canonical(60)
    result = hyperlp.score_and_classify(profile, weights, truth)
    assert result.accuracy >= 0.9

    cov = hyperlp.estimate_covariance(profile, truth, 1, 4, 1e-8)
    fisher = hyperlp.fisher_weights(weights, cov)
    fisher_result = hyperlp.score_and_classify(profile, fisher, truth)
    assert fisher_result.accuracy >= 0.9

    ppr = hyperlp.schedule_weights(hyperlp.WeightKind.ppr, 0.5, 0, 3)
    assert math.isclose(ppr.gamma[0], 0.5)

    summary = hyperlp.accuracy_summary([0.6, 0.8])
    assert math.isclose(summary.mean, 0.7)
    assert math.isclose(summary.stderr_of_mean, 0.1)


def test_cluster_benchmark_runs():
    config = hyperlp.ClusterConfig(
        hyperlp.HsbmParams(40, 3, 0.8, 0.2),
        steps=3,
        trials=3,
        master_seed=2,
        method=hyperlp.Method.tensor,
        init=hyperlp.InitMode.uniform,
    )
    result = hyperlp.run_cluster_benchmark(config)
    assert len(result.trials) == 3
    assert result.failed_trials == 0
    assert 0.5 <= result.summary.mean <= 1.0
