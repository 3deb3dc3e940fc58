"""Entanglement purification: the two-pair X and Z checks and the
three-pair single-selection double-purification round.

All circuits run bilaterally (the same local gates at both ends of the
pairs) and succeed when the two nodes' sacrifice readouts agree; the
parity messages cross the pair's span before the outcome is known, so a
decision arrives one classical delay after the measurements.  Consumed
pairs are released whatever the outcome, and a failed round releases the
kept pair too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .engine import BellPair, ProtocolError, Sim


@dataclass
class PurifyOutcome:
    success: bool
    kept: Optional[BellPair]
    consumed: list = field(default_factory=list)
    decided_at: float = 0.0


def _check_same_span(pairs) -> tuple[int, int]:
    span = pairs[0].span
    for p in pairs[1:]:
        if p.span != span:
            raise ProtocolError(f"pairs span {p.span} vs {span}")
    return span


def _decision_time(sim: Sim, span: tuple[int, int], at: float) -> float:
    ev_time = at + sim.params.classical_delay(sim.node_distance(*span))
    sim.schedule(ev_time, "classical-msg", span[0], "purify parity")
    sim.schedule(ev_time, "classical-msg", span[1], "purify parity")
    return ev_time


def x_purify(sim: Sim, kept: BellPair, sacrifice: BellPair, at: float) -> PurifyOutcome:
    """Bilateral CNOT kept -> sacrifice, sacrifice read out in Z.

    Detects X-type errors on the kept pair (given a clean sacrifice), is
    blind to Z; the sacrifice's Z errors back-propagate onto the kept pair.
    """
    span = _check_same_span((kept, sacrifice))
    sim.gate_cnot(kept.left, sacrifice.left)
    sim.gate_cnot(kept.right, sacrifice.right)
    sim.schedule(at, "local-op", span[0], "x-purify measurements")
    a_l = sim.measure_slot(sacrifice.left, "Z", at)
    a_r = sim.measure_slot(sacrifice.right, "Z", at)
    decided = _decision_time(sim, span, at)
    if a_l ^ a_r:
        sim.release(kept.left)
        sim.release(kept.right)
        return PurifyOutcome(False, None, [sacrifice, kept], decided)
    return PurifyOutcome(True, kept, [sacrifice], decided)


def z_purify(sim: Sim, kept: BellPair, sacrifice: BellPair, at: float) -> PurifyOutcome:
    """Bilateral CNOT sacrifice -> kept, sacrifice read out in X.

    Detects Z-type errors on the kept pair, passes X; the sacrifice's X
    errors back-propagate onto the kept pair.
    """
    span = _check_same_span((kept, sacrifice))
    sim.gate_cnot(sacrifice.left, kept.left)
    sim.gate_cnot(sacrifice.right, kept.right)
    sim.schedule(at, "local-op", span[0], "z-purify measurements")
    b_l = sim.measure_slot(sacrifice.left, "X", at)
    b_r = sim.measure_slot(sacrifice.right, "X", at)
    decided = _decision_time(sim, span, at)
    if b_l ^ b_r:
        sim.release(kept.left)
        sim.release(kept.right)
        return PurifyOutcome(False, None, [sacrifice, kept], decided)
    return PurifyOutcome(True, kept, [sacrifice], decided)


def ss_dp(sim: Sim, pairs, at: float) -> PurifyOutcome:
    """One single-selection double-purification round on three pairs.

    The oldest pair is kept; the second feeds the X check, the third the
    Z check.  Both bilateral circuits run before any readout and all four
    sacrifice measurements happen in a single round, so the Z check also
    screens the Z back-action the X-check sacrifice left on the kept pair.
    Success requires both parities to agree across the span.
    """
    if len(pairs) != 3:
        raise ProtocolError(f"ss_dp needs exactly 3 pairs, got {len(pairs)}")
    span = _check_same_span(pairs)
    kept, x_sac, z_sac = sorted(pairs, key=lambda p: p.created_at)
    sim.gate_cnot(kept.left, x_sac.left)
    sim.gate_cnot(kept.right, x_sac.right)
    sim.gate_cnot(z_sac.left, kept.left)
    sim.gate_cnot(z_sac.right, kept.right)
    sim.schedule(at, "local-op", span[0], "ss-dp measurements")
    a_l = sim.measure_slot(x_sac.left, "Z", at)
    a_r = sim.measure_slot(x_sac.right, "Z", at)
    b_l = sim.measure_slot(z_sac.left, "X", at)
    b_r = sim.measure_slot(z_sac.right, "X", at)
    decided = _decision_time(sim, span, at)
    if (a_l ^ a_r) or (b_l ^ b_r):
        sim.release(kept.left)
        sim.release(kept.right)
        return PurifyOutcome(False, None, [x_sac, z_sac, kept], decided)
    return PurifyOutcome(True, kept, [x_sac, z_sac], decided)
