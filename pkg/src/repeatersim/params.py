"""Simulation parameters and the hardware sweep grids.

Fixed hardware values: 100 km end-to-end distance split into equal links,
light speed 300000 km/s in fiber, link depolarizing probability 0.025,
memory lifetime 10 ms, fiber loss 0.30 dB/km, QKD target fidelity 0.83.
The swept knobs are the gate error rate, the measurement flip rate and
the hop count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

LAMBDA_GATE_GRID = (0.0, 0.0005, 0.0010, 0.0015, 0.0020)
P_MEAS_GRID = (0.0, 0.0025, 0.0050, 0.0075, 0.0100)
HOPS_GRID = (2, 4, 8)

_PROBABILITIES = ("p_depo", "lambda_gate", "p_meas")


@dataclass
class SimParams:
    """All knobs of one simulation run; defaults are the fixed hardware values."""

    p_depo: float = 0.025
    lambda_gate: float = 0.0
    p_meas: float = 0.0
    tau_memory: float = 0.010          # seconds; math.inf disables decay
    total_distance: float = 100.0      # km
    hops: int = 2
    attenuation: float = 0.30          # dB/km
    light_speed: float = 300000.0      # km/s
    f_threshold: float = 0.83
    n_trials: int = 10_000
    seed: int = 1
    t_sim: float = 1.0                 # seconds of simulated time for throughput
    # Encoded blocks are held under (idealized) error-correction cycles while
    # stored, so memory decay does not accrue on their qubits; see README.
    qec_storage: bool = True

    def __post_init__(self) -> None:
        for name in _PROBABILITIES:
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        if not self.tau_memory > 0:
            raise ValueError(f"tau_memory must be positive, got {self.tau_memory}")
        if not (isinstance(self.hops, int) and self.hops >= 1):
            raise ValueError(f"hops must be an integer >= 1, got {self.hops}")
        if not self.total_distance > 0:
            raise ValueError(f"total_distance must be positive, got {self.total_distance}")
        if not self.attenuation >= 0:
            raise ValueError(f"attenuation must be nonnegative, got {self.attenuation}")
        if not self.light_speed > 0:
            raise ValueError(f"light_speed must be positive, got {self.light_speed}")
        if not 0.0 <= self.f_threshold <= 1.0:
            raise ValueError(f"f_threshold must be in [0, 1], got {self.f_threshold}")
        if not (isinstance(self.n_trials, int) and self.n_trials >= 1):
            raise ValueError(f"n_trials must be a positive integer, got {self.n_trials}")
        if not self.t_sim > 0:
            raise ValueError(f"t_sim must be positive, got {self.t_sim}")

    @property
    def link_length(self) -> float:
        """Length of one link in km; links are all equal."""
        return self.total_distance / self.hops

    @property
    def attempt_period(self) -> float:
        """One entanglement attempt: photon flight plus heralding, 2L/c seconds."""
        return 2.0 * self.link_length / self.light_speed

    def classical_delay(self, distance_km: float) -> float:
        """One-way classical signalling delay over the given distance."""
        return distance_km / self.light_speed

    def noiseless(self) -> "SimParams":
        """Copy with every stochastic error channel switched off."""
        return replace(self, p_depo=0.0, lambda_gate=0.0, p_meas=0.0,
                       tau_memory=math.inf)

