import math
from collections import Counter
from random import Random

import pytest
from hypothesis import given, strategies as st

from repeatersim.pauli import I, X, Y, Z, PAULIS, PauliFrame, canonical_one_sided
from repeatersim.noise import (
    apply_gate_noise, apply_link_depolarizing, flip_measurement,
    link_success_prob, memory_decay_prob, sample_uniform_pauli,
)

N = 100_000


def test_sample_uniform_pauli_edge_cases():
    rng = Random(7)
    assert all(sample_uniform_pauli(0.0, rng) == I for _ in range(1000))
    counts = Counter(sample_uniform_pauli(1.0, rng) for _ in range(N))
    assert counts[I] == 0
    for p in (X, Y, Z):
        assert abs(counts[p] / N - 1 / 3) < 0.01


def test_sample_uniform_pauli_rejects_bad_probability():
    with pytest.raises(ValueError):
        sample_uniform_pauli(1.5, Random(0))
    with pytest.raises(ValueError):
        sample_uniform_pauli(-0.1, Random(0))


def _class_i_rate(p_depo, n=N, seed=11):
    rng = Random(seed)
    hits = 0
    for _ in range(n):
        frame = PauliFrame()
        apply_link_depolarizing(frame, "l", "r", p_depo, rng)
        if canonical_one_sided(frame.pauli("l"), frame.pauli("r")) == I:
            hits += 1
    return hits / n


def test_link_depolarizing_calibration():
    # Fresh-pair fidelity identity: (1-p)^2 + p^2/3.
    assert _class_i_rate(0.0) == 1.0
    assert abs(_class_i_rate(0.0736) - 0.8600) < 0.004
    assert abs(_class_i_rate(0.025) - 0.95083) < 0.004


def test_channel_composition_matches_transition_matrix():
    # Two applications with p1, p2 act like one with p1 + p2 - (4/3) p1 p2.
    p1, p2 = 0.1, 0.2
    p_eff = p1 + p2 - 4.0 / 3.0 * p1 * p2
    expected = [1.0 - p_eff, p_eff / 3, p_eff / 3, p_eff / 3]
    rng = Random(3)
    counts = Counter()
    for _ in range(N):
        p = sample_uniform_pauli(p1, rng) ^ sample_uniform_pauli(p2, rng)
        counts[p] += 1
    tv = 0.5 * sum(abs(counts[c] / N - expected[c]) for c in PAULIS)
    assert tv < 0.01


def test_memory_decay_prob_values():
    assert memory_decay_prob(0.0, 0.010) == 0.0
    assert memory_decay_prob(1e9, 0.010) == pytest.approx(1.0)
    assert memory_decay_prob(0.010, 0.010) == pytest.approx(1 - math.exp(-1), abs=1e-12)
    assert memory_decay_prob(1.0, math.inf) == 0.0


@given(st.floats(0, 10), st.floats(0, 10), st.floats(0.001, 100), st.floats(0.001, 100))
def test_memory_decay_monotone(t1, t2, tau1, tau2):
    lo_t, hi_t = sorted((t1, t2))
    assert memory_decay_prob(lo_t, tau1) <= memory_decay_prob(hi_t, tau1)
    lo_tau, hi_tau = sorted((tau1, tau2))
    assert memory_decay_prob(t1, hi_tau) <= memory_decay_prob(t1, lo_tau)


def test_gate_noise_rates():
    rng = Random(5)
    frame = PauliFrame()
    apply_gate_noise(frame, ["a", "b"], 0.0, rng)
    assert frame == {}

    # lambda = 1 on one slot: uniform over the error classes
    counts = Counter()
    for _ in range(N):
        f = PauliFrame()
        apply_gate_noise(f, ["a"], 1.0, rng)
        counts[f.pauli("a")] += 1
    assert counts[I] == 0
    for p in (X, Y, Z):
        assert abs(counts[p] / N - 1 / 3) < 0.01

    # two-slot gate: P(any injected error) = 1 - (1 - lambda)^2
    lam = 0.002
    n = 1_000_000
    hits = 0
    for _ in range(n):
        f = PauliFrame()
        apply_gate_noise(f, ["a", "b"], lam, rng)
        if f:
            hits += 1
    assert abs(hits / n - (1 - (1 - lam) ** 2)) < 0.0005


def test_flip_measurement():
    rng = Random(9)
    assert flip_measurement(0, 0.0, rng) == 0
    assert flip_measurement(1, 1.0, rng) == 0
    flips = sum(flip_measurement(0, 0.01, rng) for _ in range(N))
    assert abs(flips / N - 0.01) < 0.002


def test_link_success_prob():
    assert link_success_prob(0.0, 0.30) == 1.0
    assert link_success_prob(50.0, 0.30) == pytest.approx(10 ** -1.5)
    assert link_success_prob(12.5, 0.30) == pytest.approx(10 ** -0.375)
    assert link_success_prob(50.0, 0.30) == pytest.approx(0.03162, abs=1e-5)
    assert link_success_prob(12.5, 0.30) == pytest.approx(0.4217, abs=1e-4)


def test_samplers_are_deterministic():
    def stream(seed):
        rng = Random(seed)
        return [sample_uniform_pauli(0.3, rng) for _ in range(500)]

    assert stream(42) == stream(42)
    assert stream(42) != stream(43)
