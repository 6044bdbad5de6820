from __future__ import annotations

import random
from itertools import chain, combinations

import numpy as np
import pytest

from chaingraph import (
    NumericalFailureError,
    OverlapError,
    TooLargeError,
    build_graph,
    certify,
    conditional_covariance,
    enumerate_chain_graphs,
    gaussian_ci,
    joint_covariance,
    sample_sem,
)
from chaingraph.gaussian import ComponentBlock, GaussianSem, Matrix


def ladder_sem(rho, lam, b31=1.0, b42=1.0):
    """Hand-built model on the ladder graph with unit error variances.

    Closed form (by expanding X3 = b31*X1 + e3, X4 = b42*X2 + e4):
    s13 = b31, s14 = b42*rho, s23 = b31*rho, s24 = b42,
    s33 = b31^2 + 1, s34 = b31*b42*rho + lam, s44 = b42^2 + 1.
    """
    first = ComponentBlock(
        ("1", "2"), (), np.zeros((2, 0)), np.array([[1.0, rho], [rho, 1.0]])
    )
    second = ComponentBlock(
        ("3", "4"),
        ("1", "2"),
        np.array([[b31, 0.0], [0.0, b42]]),
        np.array([[1.0, lam], [lam, 1.0]]),
    )
    return GaussianSem("amp", (first, second))


# ---------------------------------------------------------------------------
# sampling invariants


def test_amp_beta_zero_pattern(ladder):
    for seed in range(3):
        sem = sample_sem(ladder, "amp", seed=seed)
        block = sem.blocks[1]
        assert block.members == ("3", "4") and block.predecessors == ("1", "2")
        assert block.beta[0, 1] == 0.0  # 2 is not a parent of 3
        assert block.beta[1, 0] == 0.0  # 1 is not a parent of 4
        assert abs(block.beta[0, 0]) >= 0.5
        assert abs(block.beta[1, 1]) >= 0.5


def test_lwf_gamma_zero_pattern(ladder):
    for seed in range(3):
        sem = sample_sem(ladder, "lwf", seed=seed)
        block = sem.blocks[1]
        gamma = np.linalg.inv(block.noise_cov) @ block.beta
        assert abs(gamma[0, 1]) < 1e-12
        assert abs(gamma[1, 0]) < 1e-12
        # the induced regression matrix is generically dense
        assert abs(block.beta[0, 1]) > 1e-6


def test_precision_zero_pattern_on_component_lines():
    g = build_graph("abcd", [("d", "a")], [("a", "b"), ("b", "c")])
    sem = sample_sem(g, "amp", seed=1)
    block = next(b for b in sem.blocks if b.members == ("a", "b", "c"))
    precision = np.linalg.inv(block.noise_cov)
    assert abs(precision[0, 2]) < 1e-9  # a, c not joined by a line
    assert abs(precision[0, 1]) >= 0.1 - 1e-12


def test_edgeless_graph_sem_is_trivial():
    g = build_graph("ab")
    sem = sample_sem(g, "amp", seed=0)
    assert all(b.beta.size == 0 and b.noise_cov.shape == (1, 1) for b in sem.blocks)


def test_sampling_is_deterministic(ladder):
    a = joint_covariance(sample_sem(ladder, "amp", seed=7))
    b = joint_covariance(sample_sem(ladder, "amp", seed=7))
    assert a.labels == b.labels
    assert np.array_equal(a.values, b.values)


# ---------------------------------------------------------------------------
# covariance assembly


def test_single_vertex_covariance():
    sem = sample_sem(build_graph("a"), "amp", seed=0)
    sigma = joint_covariance(sem)
    assert sigma.labels == ("a",)
    assert sigma.values[0, 0] == pytest.approx(1.0)


def test_ladder_closed_form_covariance():
    rho, lam = 0.5, 0.25
    sigma = joint_covariance(ladder_sem(rho, lam))
    assert sigma.entry("1", "3") == pytest.approx(1.0)
    assert sigma.entry("1", "4") == pytest.approx(rho)
    assert sigma.entry("2", "3") == pytest.approx(rho)
    assert sigma.entry("3", "3") == pytest.approx(2.0)
    assert sigma.entry("3", "4") == pytest.approx(rho + lam)


def test_covariance_is_symmetric_positive_definite(ladder):
    sigma = joint_covariance(sample_sem(ladder, "lwf", seed=3))
    assert sigma.is_symmetric(1e-12)
    assert np.all(np.linalg.eigvalsh(sigma.values) > 0)


def test_regression_identity_recovers_beta(ladder):
    # beta = sigma[tau, pa] @ inv(sigma[pa, pa]) when parents cover all
    # earlier influences, as they do on the ladder.
    sem = sample_sem(ladder, "amp", seed=11)
    sigma = joint_covariance(sem)
    block = sem.blocks[1]
    rows = sigma.indices(block.members)
    cols = sigma.indices(block.predecessors)
    recovered = sigma.values[np.ix_(rows, cols)] @ np.linalg.inv(
        sigma.values[np.ix_(cols, cols)]
    )
    assert np.max(np.abs(recovered - block.beta)) < 1e-10


# ---------------------------------------------------------------------------
# conditional independence testing


def test_identity_covariance_everything_independent():
    sigma = Matrix(("a", "b", "c"), np.eye(3))
    assert gaussian_ci(sigma, "a", "b")
    assert gaussian_ci(sigma, "a", "b", "c")


def test_ladder_numeric_contrast():
    sigma = joint_covariance(ladder_sem(0.5, 0.5))
    assert gaussian_ci(sigma, "1", "4", "2")
    assert gaussian_ci(sigma, "2", "3", "1")
    assert not gaussian_ci(sigma, "1", "4", "23")
    assert not gaussian_ci(sigma, "2", "3", "14")

    uncorrelated = joint_covariance(ladder_sem(0.0, 0.0))
    assert gaussian_ci(uncorrelated, "1", "4", "23")
    assert gaussian_ci(uncorrelated, "2", "3", "14")


def test_second_block_correlation_drives_the_contrast():
    # Only the correlation of the dependent block's errors decides the
    # moralization-criterion statements: conditional cov(1,4 | 2,3) equals
    # -lam (1 - rho^2) / (2 - rho^2) in the unit-coefficient model.
    assert gaussian_ci(joint_covariance(ladder_sem(0.5, 0.0)), "1", "4", "23")
    assert not gaussian_ci(joint_covariance(ladder_sem(0.0, 0.5)), "1", "4", "23")
    sigma = joint_covariance(ladder_sem(0.5, 0.5))
    observed = conditional_covariance(sigma, ("2", "3")).entry("1", "4")
    assert observed == pytest.approx(-0.5 * 0.75 / 1.75)


def test_gaussian_ci_validation():
    sigma = Matrix(("a", "b"), np.eye(2))
    with pytest.raises(OverlapError):
        gaussian_ci(sigma, "a", "a")
    assert gaussian_ci(sigma, "", "a")


def test_singular_conditioning_block_fails():
    values = np.eye(4)
    values[0, 1] = values[1, 0] = 1.0  # the (a, b) block is singular
    sigma = Matrix(("a", "b", "c", "d"), values)
    with pytest.raises(NumericalFailureError):
        gaussian_ci(sigma, "c", "d", "ab")


def test_dawid_decomposition_on_sampled_models(ladder, mixed_star):
    def sets(universe):
        return list(
            chain.from_iterable(combinations(universe, r) for r in range(len(universe) + 1))
        )

    for g in (ladder, mixed_star):
        sigma = joint_covariance(sample_sem(g, "amp", seed=5))
        labels = list(sigma.labels)
        for a in labels:
            others = [v for v in labels if v != a]
            for b in others:
                for c in others:
                    if b >= c:
                        continue
                    rest = [v for v in others if v not in (b, c)]
                    for d in sets(rest):
                        if gaussian_ci(sigma, (a,), (b, c), d):
                            assert gaussian_ci(sigma, (a,), (b,), (c,) + tuple(d), tol=1e-8)
                            assert gaussian_ci(sigma, (a,), (c,), d, tol=1e-8)


# ---------------------------------------------------------------------------
# certification


def test_sampled_variants_realize_opposite_statements(ladder):
    # Each variant's sampled models satisfy their own criterion's ladder
    # statements and, with correlated block errors, violate the other's.
    for seed in range(3):
        amp_sigma = joint_covariance(sample_sem(ladder, "amp", seed=seed))
        assert gaussian_ci(amp_sigma, "1", "4", "2")
        assert gaussian_ci(amp_sigma, "2", "3", "1")
        assert not gaussian_ci(amp_sigma, "1", "4", "23")
        lwf_sigma = joint_covariance(sample_sem(ladder, "lwf", seed=seed))
        assert gaussian_ci(lwf_sigma, "1", "4", "23")
        assert gaussian_ci(lwf_sigma, "2", "3", "14")
        assert not gaussian_ci(lwf_sigma, "1", "4", "2")


def test_certify_ladder_both_criteria(ladder):
    for criterion in ("amp", "lwf"):
        report = certify(ladder, criterion, seeds=5)
        assert report.ok
        assert report.separated_count == 2
        assert not report.soundness_violations
        assert not report.completeness_failures
        assert report.worst_sound < 1e-9
        assert report.weakest_dependence > 1e-4


def test_certify_flag_path(flag_path):
    report = certify(flag_path, "amp", seeds=5)
    assert report.ok
    assert report.dependent_count == 5  # of the 6 pairwise triples only a _||_ b holds
    # conditioning on the center makes the ends dependent in some seed
    sigma = joint_covariance(sample_sem(flag_path, "amp", seed=0))
    assert not gaussian_ci(sigma, "a", "b", "c", tol=1e-4)


def test_certify_edgeless_graph():
    g = build_graph("abc")
    for criterion in ("amp", "lwf"):
        report = certify(g, criterion, seeds=2)
        assert report.ok
        assert report.dependent_count == 0
        assert report.weakest_dependence is None


def test_certify_empty_graph():
    report = certify(build_graph([]), "amp", seeds=2)
    assert report.ok
    assert report.separated_count == 0
    assert report.vertex_count == 0


def test_certify_guard():
    g = build_graph("abcdefg")
    with pytest.raises(TooLargeError):
        certify(g, "amp")


def test_certify_report_dict_round_trips(ladder):
    import json

    report = certify(ladder, "amp", seeds=2)
    payload = report.to_dict()
    assert json.loads(json.dumps(payload)) == payload
    assert payload["ok"] is True
    assert payload["separated_full"] == 2


def test_certify_five_and_six_vertex_graphs(three_blocks):
    six = build_graph(
        "123456",
        [("1", "3"), ("2", "4"), ("4", "6")],
        [("1", "2"), ("3", "4"), ("5", "6")],
    )
    for g in (three_blocks, six):
        for criterion in ("amp", "lwf"):
            report = certify(g, criterion, seeds=5)
            assert report.ok, (criterion, report.soundness_violations,
                               report.completeness_failures)


def test_certify_lwf_exhaustive_small_and_sampled():
    small = [g for n in range(1, 4) for g in enumerate_chain_graphs(n)]
    rng = random.Random(20240814)
    four = list(enumerate_chain_graphs(4))
    for g in small + rng.sample(four, 150):
        report = certify(g, "lwf", seeds=5)
        assert report.ok, (g, report.soundness_violations, report.completeness_failures)
