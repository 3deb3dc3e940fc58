"""Exact Bell-class enumeration oracles.

These compute, by exhaustive enumeration over one-sided Bell classes, the
noiseless-operation behaviour of entanglement swapping and of the
three-pair purification round.  They are independent of the Monte Carlo
engine and serve as its ground truth in the test suite: the engine's
sampled statistics must converge to these tables.

A distribution is a 4-tuple indexed by the Pauli class ints (I, X, Z, Y
encoded as 0, 1, 2, 3), summing to 1.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence, Tuple

from .pauli import I, PAULIS, pauli_mul, x_bit, z_bit, from_bits

Dist = Tuple[float, float, float, float]


def werner(fidelity: float) -> Dist:
    """Bell-diagonal state with the three error classes equally weighted."""
    if not 0.0 <= fidelity <= 1.0:
        raise ValueError(f"fidelity must be in [0, 1], got {fidelity}")
    e = (1.0 - fidelity) / 3.0
    return (fidelity, e, e, e)


def fidelity_of(dist: Dist) -> float:
    return dist[I]


def swap_oracle(left: Dist, right: Dist) -> Dist:
    """Output class distribution of a noiseless entanglement swap.

    The spliced pair's class is the product of the two input classes: the
    measured qubits' errors are teleported onto the spectator ends and the
    outcome-dependent correction consumes the ideal randomness.
    """
    out = [0.0, 0.0, 0.0, 0.0]
    for a in PAULIS:
        for b in PAULIS:
            out[pauli_mul(a, b)] += left[a] * right[b]
    return tuple(out)


def chain_oracle(dists: Sequence[Dist]) -> Dist:
    """Class distribution after swapping a whole chain of pairs together."""
    out: Dist = (1.0, 0.0, 0.0, 0.0)
    for d in dists:
        out = swap_oracle(out, d)
    return out


def ss_dp_oracle(kept: Dist, x_sac: Dist, z_sac: Dist) -> tuple[float, Dist]:
    """Success probability and output distribution of one Ss-Dp round.

    Pair 1 is kept; pair 2 feeds the X parity check, pair 3 the Z parity
    check, all four sacrifice measurements in a single round.  With classes
    c_i = (x_i, z_i) the checks pass iff

        x1 + x2 = 0   and   z1 + z2 + z3 = 0   (mod 2),

    the second parity including pair 2's Z component because the X-check
    CNOTs push sacrifice-Z errors onto the kept pair before the Z check
    runs.  Conditioned on success the kept pair carries

        x_out = x1 + x3,   z_out = z1 + z2.
    """
    out = [0.0, 0.0, 0.0, 0.0]
    p_success = 0.0
    for c1, c2, c3 in product(PAULIS, repeat=3):
        w = kept[c1] * x_sac[c2] * z_sac[c3]
        if w == 0.0:
            continue
        if (x_bit(c1) ^ x_bit(c2)) or (z_bit(c1) ^ z_bit(c2) ^ z_bit(c3)):
            continue
        p_success += w
        out[from_bits(x_bit(c1) ^ x_bit(c3), z_bit(c1) ^ z_bit(c2))] += w
    if p_success > 0.0:
        out = [v / p_success for v in out]
    return p_success, tuple(out)


def ss_dp_werner(fidelity: float) -> tuple[float, Dist]:
    """Ss-Dp on three i.i.d. Werner pairs of the given fidelity."""
    d = werner(fidelity)
    return ss_dp_oracle(d, d, d)


def total_variation(a: Sequence[float], b: Sequence[float]) -> float:
    return 0.5 * sum(abs(x - y) for x, y in zip(a, b))
