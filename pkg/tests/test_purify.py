import math
from collections import Counter
from random import Random

import pytest

from repeatersim.engine import ProtocolError, Sim, Topology
from repeatersim.oracle import ss_dp_oracle, total_variation, werner
from repeatersim.pauli import I, X, Y, Z, PAULIS
from repeatersim.params import SimParams
from repeatersim.purify import PurifyOutcome, ss_dp, x_purify, z_purify


def _sim(params=None):
    params = params or SimParams(hops=1, total_distance=50.0).noiseless()
    topo = Topology(params, (3, 0), (3, 0))
    return Sim(params, Random(7), topo)


def _fresh_pairs(sim, n, classes=None):
    pairs = [sim.request_link_pair(0, 0.0) for _ in range(n)]
    # force deterministic age order so pairs[0] is the kept pair
    for k, p in enumerate(pairs):
        p.created_at = float(k) * 1e-6
        p.left.init_time = p.created_at
        p.right.init_time = p.created_at
    if classes:
        for p, c in zip(pairs, classes):
            sim.frame.mul(p.left, c)
    return pairs


def _release_outcome(sim, outcome):
    if outcome.success:
        sim.release(outcome.kept.left)
        sim.release(outcome.kept.right)


def test_x_purify_perfect_pairs_succeed():
    sim = _sim()
    kept, sac = _fresh_pairs(sim, 2)
    out = x_purify(sim, kept, sac, at=0.0)
    assert out.success and out.kept is kept
    assert sim.residual_class_physical(kept) == I
    _release_outcome(sim, out)
    assert sim.topology.all_free()


def test_x_purify_detects_x_passes_z():
    sim = _sim()
    kept, sac = _fresh_pairs(sim, 2, classes=[X, I])
    assert not x_purify(sim, kept, sac, at=0.0).success
    assert sim.topology.all_free()

    sim = _sim()
    kept, sac = _fresh_pairs(sim, 2, classes=[Z, I])
    out = x_purify(sim, kept, sac, at=0.0)
    assert out.success
    assert sim.residual_class_physical(kept) == Z
    _release_outcome(sim, out)


def test_z_purify_detects_z_passes_x():
    sim = _sim()
    kept, sac = _fresh_pairs(sim, 2, classes=[Z, I])
    assert not z_purify(sim, kept, sac, at=0.0).success

    sim = _sim()
    kept, sac = _fresh_pairs(sim, 2, classes=[X, I])
    out = z_purify(sim, kept, sac, at=0.0)
    assert out.success
    assert sim.residual_class_physical(kept) == X
    _release_outcome(sim, out)


def test_ss_dp_perfect_pairs():
    sim = _sim()
    pairs = _fresh_pairs(sim, 3)
    out = ss_dp(sim, pairs, at=0.0)
    assert out.success
    assert sim.residual_class_physical(out.kept) == I
    assert out.decided_at == pytest.approx(50.0 / 300000.0)
    _release_outcome(sim, out)


def test_ss_dp_kept_y_fails():
    sim = _sim()
    pairs = _fresh_pairs(sim, 3, classes=[Y, I, I])
    out = ss_dp(sim, pairs, at=0.0)
    assert not out.success
    assert len(out.consumed) == 3
    assert sim.topology.all_free()


def test_ss_dp_pair_count_and_span_checks():
    sim = _sim()
    pairs = _fresh_pairs(sim, 2)
    with pytest.raises(ProtocolError):
        ss_dp(sim, pairs, at=0.0)


def test_ss_dp_slot_audit_over_many_outcomes():
    # failure or success, no slot may leak
    params = SimParams(hops=1, total_distance=50.0, p_depo=0.2,
                       tau_memory=math.inf)
    for seed in range(50):
        topo = Topology(params, (3, 0), (3, 0))
        sim = Sim(params, Random(seed), topo)
        pairs = [sim.request_link_pair(0, 0.0) for _ in range(3)]
        out = ss_dp(sim, pairs, max(p.created_at for p in pairs))
        _release_outcome(sim, out)
        assert topo.all_free()
        assert not sim.frame


def _mc_ss_dp(fidelity, n, seed=3):
    """Monte Carlo Ss-Dp with forced i.i.d. one-sided input classes."""
    params = SimParams(hops=1, total_distance=50.0).noiseless()
    dist = werner(fidelity)
    successes = 0
    out_counts = Counter()
    rng_cls = Random(seed * 7919)
    for trial in range(n):
        topo = Topology(params, (3, 0), (3, 0))
        sim = Sim(params, Random(f"{seed}:{trial}"), topo)
        pairs = _fresh_pairs(sim, 3)
        for p in pairs:
            c = rng_cls.choices(PAULIS, weights=dist)[0]
            sim.frame.mul(p.left, c)
        out = ss_dp(sim, pairs, at=0.0)
        if out.success:
            successes += 1
            out_counts[sim.residual_class_physical(out.kept)] += 1
            _release_outcome(sim, out)
    dist_out = [out_counts[c] / successes for c in (0, 1, 2, 3)]
    return successes / n, dist_out


@pytest.mark.parametrize("fidelity", [0.7, 0.9508])
def test_ss_dp_matches_enumeration_oracle(fidelity):
    # quick version; the acceptance suite reruns this at 10^5 trials
    n = 30_000
    p_mc, dist_mc = _mc_ss_dp(fidelity, n)
    p_oracle, dist_oracle = ss_dp_oracle(*([werner(fidelity)] * 3))
    assert abs(p_mc - p_oracle) < 0.01
    assert total_variation(dist_mc, dist_oracle) < 0.015


def test_purify_outcome_shape():
    out = PurifyOutcome(False, None, [1, 2, 3], 0.5)
    assert not out.success and out.kept is None and out.decided_at == 0.5
