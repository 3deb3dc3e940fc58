"""Stochastic error channels.

Depolarizing convention used throughout: with probability p the qubit
suffers a uniformly random non-identity Pauli, otherwise nothing.  Under
this convention a fresh pair depolarized independently on both ends has

    P(Bell class I) = (1 - p)^2 + p^2 / 3,

which evaluates to 0.8600 at p = 0.0736 and 0.95083 at the default
p = 0.025; these identities anchor the calibration tests.  Memory decay
uses the same channel with strength 1 - exp(-t / tau), applied immediately
before a qubit is measured, with t the time since the qubit was
initialized.  All samplers draw from an explicit ``random.Random`` so a
trial is reproducible bit for bit from its seed.
"""

from __future__ import annotations

import math
from random import Random

from .pauli import I, X, Y, Z, PauliFrame

_NON_IDENTITY = (X, Y, Z)


def sample_uniform_pauli(p: float, rng: Random) -> int:
    """I with probability 1-p, else X, Y or Z each with probability p/3."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {p}")
    if rng.random() >= p:
        return I
    return _NON_IDENTITY[rng.randrange(3)]


def apply_link_depolarizing(frame: PauliFrame, left_slot, right_slot,
                            p_depo: float, rng: Random) -> None:
    """Depolarize both ends of a freshly created pair, independently."""
    frame.mul(left_slot, sample_uniform_pauli(p_depo, rng))
    frame.mul(right_slot, sample_uniform_pauli(p_depo, rng))


def memory_decay_prob(elapsed: float, tau: float) -> float:
    """Depolarizing strength of storage for ``elapsed`` seconds: 1 - e^(-t/tau)."""
    if elapsed < 0:
        raise ValueError(f"elapsed must be nonnegative, got {elapsed}")
    if elapsed == 0.0 or math.isinf(tau):
        return 0.0
    return -math.expm1(-elapsed / tau)


def apply_memory_decay(frame: PauliFrame, slot, elapsed: float, tau: float,
                       rng: Random) -> None:
    frame.mul(slot, sample_uniform_pauli(memory_decay_prob(elapsed, tau), rng))


def apply_gate_noise(frame: PauliFrame, slots, lambda_gate: float,
                     rng: Random) -> None:
    """After a gate, hit each participating qubit with an independent draw."""
    if lambda_gate == 0.0:
        return
    for slot in slots:
        frame.mul(slot, sample_uniform_pauli(lambda_gate, rng))


def flip_measurement(bit: int, p_meas: float, rng: Random) -> int:
    """Classical readout error: flip the bit with probability p_meas."""
    if p_meas and rng.random() < p_meas:
        return bit ^ 1
    return bit


def link_success_prob(link_length: float, attenuation: float) -> float:
    """Photon survival over one link: eta = 10^(-attenuation * L / 10)."""
    return 10.0 ** (-attenuation * link_length / 10.0)
