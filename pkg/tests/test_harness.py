import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from channel_metrics import (
    Channel,
    Distribution,
    LocalData,
    SolverConfig,
    TangentChannel,
    TangentDistribution,
    binary_flip_gmax_profile,
    brute_force_gmax,
    check_axiom,
    embed_distribution,
    g_max,
    g_min,
    probe_bilinearity,
    random_channel,
    random_instance,
    random_tangent,
    run_axiom_trials,
)
from channel_metrics.harness import _judge

seeds = st.integers(min_value=0, max_value=10**6)

UNIFORM = Channel([[0.5, 0.5], [0.5, 0.5]])
FLIP_TANGENT = TangentChannel([[-1.0, 1.0], [1.0, -1.0]])


# --- check_axiom on worked instances ------------------------------------------------


def test_m2_gmin_worked_instance():
    data = LocalData(UNIFORM, FLIP_TANGENT)
    aux = Channel([[0.9, 0.2], [0.1, 0.8]])
    check = check_axiom("M2", data, aux=aux, metric="gmin")
    assert check.verdict == "pass"
    assert check.left == pytest.approx(4.0, abs=1e-12)
    # post-processing shrinks the per-input Fisher information to 196/99
    assert check.right == pytest.approx(196.0 / 99.0, rel=1e-12)


def test_m1_gmin_worked_instance():
    data = LocalData(UNIFORM, FLIP_TANGENT)
    aux = Channel([[0.9, 0.2], [0.1, 0.8]])
    check = check_axiom("M1", data, aux=aux, metric="gmin")
    assert check.verdict == "pass"
    assert check.left >= check.right - 1e-10


def test_n_axiom_worked_instance():
    p = Distribution([0.3, 0.7])
    d = TangentDistribution([1.0, -1.0])
    data = LocalData(embed_distribution(p, 2), embed_distribution(d, 2))
    for metric in ("gmin", "gmax"):
        check = check_axiom("N", data, metric=metric)
        assert check.verdict == "pass"
        assert check.right == pytest.approx(100.0 / 21.0, rel=1e-14)
        assert check.left == pytest.approx(100.0 / 21.0, rel=1e-6)


def test_e_axiom_scalar_identity_is_exact():
    data = random_instance(1, 2, 2)
    check = check_axiom("E", data, aux=Channel(np.eye(1)), metric="gmin")
    assert check.verdict == "pass"
    assert check.left == check.right


def test_e_axiom_rejects_non_identity_aux():
    data = random_instance(2, 2, 2)
    with pytest.raises(ValueError, match="identity"):
        check_axiom("E", data, aux=UNIFORM)


def test_gmaxgeq_axiom():
    check = check_axiom("GMAXGEQ", random_instance(3, 2, 2))
    assert check.verdict == "pass"
    assert check.left >= check.right - 1e-8


def test_check_axiom_rejects_unknown_tag():
    with pytest.raises(ValueError, match="unknown axiom tag"):
        check_axiom("M3", random_instance(0, 2, 2))


def test_m1_requires_matching_aux():
    with pytest.raises(ValueError, match="M1 aux"):
        check_axiom("M1", random_instance(0, 2, 2), aux=random_channel(0, 2, 3))


def test_n_requires_constant_columns():
    with pytest.raises(ValueError, match="constant"):
        check_axiom("N", random_instance(0, 2, 2))


def test_judge_handles_infinities():
    assert _judge("M1", "gmax", math.inf, math.inf, 1e-3) == "pass"
    assert _judge("M1", "gmax", math.inf, 2.0, 1e-3) == "pass"
    assert _judge("M1", "gmax", 2.0, math.inf, 1e-3) == "vacuous"
    assert _judge("N", "gmax", 2.0, math.inf, 1e-6) == "fail"
    assert _judge("N", "gmax", math.inf, math.inf, 1e-6) == "pass"
    assert _judge("GMAXGEQ", "gmax", 4.0, 4.0 + 1e-9, 1e-8) == "pass"
    assert _judge("GMAXGEQ", "gmax", 4.0, 4.1, 1e-8) == "fail"


# --- randomized suites -----------------------------------------------------------------


@pytest.mark.parametrize("tag", ["M1", "M2"])
def test_monotonicity_gmin_trials(tag):
    records = run_axiom_trials(tag, trials=120, seed=0, metric="gmin")
    assert all(r["verdict"] == "pass" for r in records)


@pytest.mark.parametrize("tag", ["M1", "M2"])
def test_monotonicity_gmax_trials(tag):
    records = run_axiom_trials(tag, trials=25, seed=0, metric="gmax")
    assert all(r["verdict"] == "pass" for r in records)


def test_normalization_trials_three_letters():
    records = run_axiom_trials("N", trials=25, seed=0, k=2, l=3, metric="gmax",
                               config=SolverConfig(max_iter=800))
    assert all(r["verdict"] == "pass" for r in records)


def test_order_trials_rectangular():
    for (k, l) in [(2, 3), (3, 2)]:
        records = run_axiom_trials(
            "GMAXGEQ", trials=10, seed=0, k=k, l=l, config=SolverConfig(max_iter=60)
        )
        assert all(r["verdict"] == "pass" for r in records)


def test_trial_records_are_json_ready():
    (record,) = run_axiom_trials("GMAXGEQ", trials=1, seed=5)
    assert set(record) == {"tag", "seed", "left", "right", "slack", "verdict"}


# --- random instances ---------------------------------------------------------------------


def test_random_instance_is_deterministic():
    a = random_instance(1, 2, 2, 0.1)
    b = random_instance(1, 2, 2, 0.1)
    assert np.array_equal(a.channel.matrix, b.channel.matrix)
    assert np.array_equal(a.tangent.matrix, b.tangent.matrix)


def test_random_instance_varies_with_seed():
    a = random_instance(1, 2, 2, 0.1)
    b = random_instance(2, 2, 2, 0.1)
    assert not np.array_equal(a.channel.matrix, b.channel.matrix)


@given(seed=seeds, k=st.integers(1, 3), l=st.integers(2, 3))
def test_random_instance_respects_margin_and_norm(seed, k, l):
    inst = random_instance(seed, k, l, 0.05)
    assert inst.channel.matrix.min() >= 0.05 - 1e-12
    assert np.max(np.abs(inst.tangent.matrix)) == pytest.approx(1.0, abs=1e-12)


def test_random_channel_rejects_bad_margin():
    with pytest.raises(ValueError, match="margin"):
        random_channel(0, 2, 2, 0.6)


# --- bilinearity probe -----------------------------------------------------------------------


def test_probe_worked_point():
    probe = probe_bilinearity(0.25, 0.4, samples=9)
    assert probe.radius == pytest.approx(8.0 / 15.0, abs=1e-14)
    assert probe.c0 == pytest.approx(16.0 / 3.0, abs=1e-6)
    assert abs(probe.c1) <= 1e-3
    assert abs(probe.c2) <= 1e-3
    assert probe.c2_if_bilinear == pytest.approx(25.0 / 6.0, rel=1e-14)
    assert np.max(np.abs(np.asarray(probe.gmin_values) - 16.0 / 3.0)) < 1e-9


def test_probe_symmetric_point():
    probe = probe_bilinearity(0.5, 0.5, samples=9)
    assert probe.radius == pytest.approx(1.0, abs=1e-14)
    assert probe.c0 == pytest.approx(4.0, abs=1e-6)
    assert probe.c2_if_bilinear == 4.0


def test_probe_center_sample_is_exact():
    probe = probe_bilinearity(0.25, 0.4, samples=9)
    center = int(np.argmin(np.abs(probe.coefficients)))
    assert probe.coefficients[center] == 0.0
    assert probe.gmax_values[center] == pytest.approx(16.0 / 3.0, abs=1e-10)


def test_probe_rejects_boundary_base_point():
    with pytest.raises(ValueError, match="interior"):
        probe_bilinearity(0.0, 0.5)
    with pytest.raises(ValueError, match="5 sample"):
        probe_bilinearity(0.25, 0.4, samples=3)


# --- brute force ------------------------------------------------------------------------------


def test_brute_force_on_closed_form_instance():
    data = LocalData(Channel([[0.5, 0.25], [0.5, 0.75]]), FLIP_TANGENT)
    assert brute_force_gmax(data, 10001) == pytest.approx(6.0, abs=1e-4)


def test_brute_force_uniform():
    data = LocalData(UNIFORM, FLIP_TANGENT)
    assert brute_force_gmax(data, 2001) == pytest.approx(4.0, abs=1e-4)


def test_brute_force_zero_tangent():
    data = LocalData(UNIFORM, TangentChannel(np.zeros((2, 2))))
    assert brute_force_gmax(data, 101) == 0.0


def test_brute_force_rejects_big_fibers():
    with pytest.raises(ValueError, match="dimension"):
        brute_force_gmax(random_instance(0, 2, 3), 101)


@given(seed=seeds)
@settings(max_examples=20)
def test_solver_matches_brute_force(seed):
    inst = random_instance(seed, 2, 2, 0.1)
    res = g_max(inst)
    ref = brute_force_gmax(inst, 2001)
    assert abs(res.value - ref) <= 1e-4


def test_profile_cross_checks_brute_force():
    a, c = 0.4, 0.35
    data = LocalData(Channel([[a, c], [1 - a, 1 - c]]), FLIP_TANGENT)
    grid = brute_force_gmax(data, 4001)
    curve = min(binary_flip_gmax_profile(a, c, t) for t in np.linspace(0, min(a, c), 4001))
    assert grid == pytest.approx(curve, rel=1e-9)


# --- a larger-alphabet smoke check ------------------------------------------------------------


def test_three_by_three_smoke():
    # single-column tangents have a known value on any alphabet: the column
    # Fisher information, reached by re-mixing that column alone
    ch = random_channel(11, 3, 3, 0.1)
    col = random_tangent(12, 1, 3)
    mat = np.zeros((3, 3))
    mat[:, 1] = col.matrix[:, 0]
    data = LocalData(ch, TangentChannel(mat))
    expected, witness = g_min(data)
    assert witness == 1
    res = g_max(data, SolverConfig(max_iter=2500))
    assert res.value == pytest.approx(expected, rel=1e-3)
    assert res.value >= expected - 1e-8
