import math
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from repeatersim.metrics import (
    CSV_HEADER, FidelityEstimate, SweepRecord, estimate_fidelity,
    estimate_throughput, records_to_csv, run_sweep, sweep_point,
    wilson_interval,
)
from repeatersim.params import SimParams


@given(st.integers(0, 500), st.integers(1, 500))
def test_wilson_interval_bounds(successes, n):
    if successes > n:
        successes = n
    point, lo, hi = wilson_interval(successes, n)
    assert 0.0 <= lo <= point <= hi <= 1.0


def test_wilson_interval_known_values():
    point, lo, hi = wilson_interval(50, 100)
    assert point == 0.5
    assert lo == pytest.approx(0.404, abs=0.002)
    assert hi == pytest.approx(0.596, abs=0.002)
    # near-certain outcomes keep a one-sided margin
    _, lo1, hi1 = wilson_interval(100, 100)
    assert hi1 == 1.0 and lo1 < 1.0


def test_wilson_interval_shrinks_like_root_n():
    widths = []
    for n in (1000, 2000, 4000, 8000):
        _, lo, hi = wilson_interval(int(0.9 * n), n)
        widths.append(hi - lo)
    for a, b in zip(widths, widths[1:]):
        assert 0.65 <= b / a <= 0.75


def test_wilson_rejects_empty():
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_estimate_fidelity_noise_off():
    params = SimParams(hops=2).noiseless()
    est = estimate_fidelity("0g", params, n_trials=300)
    assert est.point == 1.0
    assert est.ci_high == 1.0
    assert est.ci_low > 1 - 3.9 / 300


def test_estimate_fidelity_reproducible():
    params = SimParams(hops=2, seed=42)
    a = estimate_fidelity("0g", params, n_trials=400)
    b = estimate_fidelity("0g", params, n_trials=400)
    assert a == b
    c = estimate_fidelity("0g", replace(params, seed=43), n_trials=400)
    assert c != a


def test_throughput_zero_when_horizon_too_short():
    params = SimParams(hops=2)
    assert estimate_throughput("0g", params, t_sim=1e-9) == 0.0


def test_sweep_cardinality_and_order_independence():
    params = SimParams(n_trials=20, t_sim=0.01, seed=5)
    records = run_sweep(params, strategies=("0g",), hops_grid=(2,),
                        lambda_grid=(0.0, 0.002), p_meas_grid=(0.0, 0.01))
    assert len(records) == 4
    # parallel execution returns identical records in identical order
    records_par = run_sweep(params, strategies=("0g",), hops_grid=(2,),
                            lambda_grid=(0.0, 0.002), p_meas_grid=(0.0, 0.01),
                            jobs=2)
    assert records == records_par

    empty = run_sweep(params, strategies=(), hops_grid=(2,))
    assert empty == []

    single = run_sweep(params, strategies=("0g",), hops_grid=(2,),
                       lambda_grid=(0.0,), p_meas_grid=(0.0,))
    assert len(single) == 1


def test_full_grid_cardinality_without_running():
    # 6 strategies x 3 hops x 5 lambda x 5 p_meas = 450
    from repeatersim.params import HOPS_GRID, LAMBDA_GATE_GRID, P_MEAS_GRID
    from repeatersim.strategies import STRATEGIES
    assert (len(STRATEGIES) * len(HOPS_GRID) * len(LAMBDA_GATE_GRID)
            * len(P_MEAS_GRID)) == 450


def test_csv_format():
    params = SimParams(n_trials=10, t_sim=0.01, seed=2)
    rec = sweep_point("0g", replace(params, hops=2))
    text = records_to_csv([rec])
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    fields = lines[1].split(",")
    assert len(fields) == len(CSV_HEADER.split(","))
    assert fields[0] == "0g"
    assert fields[1] == "2"
    float(fields[5])
