"""The six end-to-end distribution strategies.

Every strategy composes the same primitives: parallel link-level pair
generation, ordered left-to-right swapping with classical confirmations,
the three-pair purification round, and code blocks for the logical
strategies.  Per-QNIC slot budgets (external + internal) are enforced by
construction; a strategy that tried to hold more qubits than its budget
would fail loudly.

    0g          generate one pair per link, swap.
    1g          purify each link (3 pairs, retry on failure), swap.
    e2e-1g      three sequential 0g deliveries, purify at the end nodes.
    2g          logical blocks per link joined by teleported transversal
                CNOTs (one fresh pair per code qubit), logical swapping.
    hg-pe       purify each link, encode both halves into blocks, logical
                swapping.
    e2e-hg-pe   three 0g deliveries, purify at the end nodes, encode the
                survivor at the end nodes.

Purification failures release everything involved and retry with fresh
pairs; the clock keeps running, which is how waiting turns into memory
decay at the next measurements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Callable, Optional

from .engine import BellPair, LogicalPair, Sim, Topology
from .params import SimParams
from .pauli import I as PAULI_I, X, Z
from .purify import ss_dp

STRATEGIES = ("0g", "1g", "e2e-1g", "2g", "hg-pe", "e2e-hg-pe")

# Per-QNIC slot budgets (external, internal) for end and intermediate nodes.
BUDGETS = {
    "0g": ((1, 0), (1, 0)),
    "1g": ((3, 0), (3, 0)),
    "e2e-1g": ((3, 0), (1, 0)),
    "2g": ((7, 7), (7, 7)),
    "hg-pe": ((3, 6), (3, 6)),
    "e2e-hg-pe": ((3, 6), (1, 0)),
}


@dataclass
class DeliveryResult:
    strategy: str
    residual: int                  # one-sided Pauli class at delivery
    delivered_at: float
    kind: str                      # physical | logical
    pairs_per_link: dict = field(default_factory=dict)
    e2e_rounds: int = 1
    last_gen_time: float = 0.0
    swap_delay_sum: float = 0.0
    blocks_created: int = 0
    peaks: dict = field(default_factory=dict)

    @property
    def pairs_consumed(self) -> int:
        return sum(self.pairs_per_link.values())


def _zero_g_pair(sim: Sim, start: float) -> tuple[BellPair, float]:
    """One 0g-style end-to-end physical pair, starting at ``start``."""
    pairs = [sim.request_link_pair(link, start) for link in range(sim.params.hops)]
    ready = [p.created_at for p in pairs]
    if len(pairs) == 1:
        return pairs[0], ready[0]
    return sim.ordered_swap_chain(pairs, ready, sim.entanglement_swap)


def _purified_link_pair(sim: Sim, link: int, start: float) -> tuple[BellPair, float]:
    """Generate three pairs on one link and purify; retry until success."""
    t = start
    while True:
        three = [sim.request_link_pair(link, t) for _ in range(3)]
        outcome = ss_dp(sim, three, max(p.created_at for p in three))
        t = outcome.decided_at
        if outcome.success:
            return outcome.kept, t


def _purified_e2e_pair(sim: Sim, start: float) -> tuple[BellPair, float, int]:
    """Three sequential 0g deliveries purified at the end nodes, with retry."""
    t = start
    rounds = 0
    while True:
        rounds += 1
        e2e = []
        for _ in range(3):
            pair, t = _zero_g_pair(sim, t)
            e2e.append(pair)
        outcome = ss_dp(sim, e2e, t)
        t = outcome.decided_at
        if outcome.success:
            return outcome.kept, t, rounds


def _teleported_transversal_cnot(sim: Sim, block_l, block_r, pairs, at: float) -> None:
    """Transversal logical CNOT across a link, one fresh pair per qubit.

    Per code qubit: local CNOTs into the pair halves, a Z readout on the
    control side and an X readout on the target side, then the conditional
    Pauli fixups on each block qubit once the outcome bits have crossed.
    """
    for j, pr in enumerate(pairs):
        a_j, b_j = block_l.slots[j], block_r.slots[j]
        sim.gate_cnot(a_j, pr.left)
        d1 = sim.measure_slot(pr.left, "Z", at)
        sim.gate_cnot(pr.right, b_j)
        d2 = sim.measure_slot(pr.right, "X", at)
        m1 = sim.rng.getrandbits(1) ^ d1
        m2 = sim.rng.getrandbits(1) ^ d2
        sim.pauli_frame_correction(b_j, X if d1 else PAULI_I, m1 == 1)
        sim.pauli_frame_correction(a_j, Z if d2 else PAULI_I, m2 == 1)


def run_0g(sim: Sim):
    pair, t = _zero_g_pair(sim, 0.0)
    residual = sim.residual_class_physical(pair)
    sim.release(pair.left)
    sim.release(pair.right)
    return residual, t, "physical", 1


def run_1g(sim: Sim):
    purified, ready = [], []
    for link in range(sim.params.hops):
        pair, t = _purified_link_pair(sim, link, 0.0)
        purified.append(pair)
        ready.append(t)
    if len(purified) == 1:
        pair, t = purified[0], ready[0]
    else:
        pair, t = sim.ordered_swap_chain(purified, ready, sim.entanglement_swap)
    residual = sim.residual_class_physical(pair)
    sim.release(pair.left)
    sim.release(pair.right)
    return residual, t, "physical", 1


def run_e2e_1g(sim: Sim):
    kept, t, rounds = _purified_e2e_pair(sim, 0.0)
    residual = sim.residual_class_physical(kept)
    sim.release(kept.left)
    sim.release(kept.right)
    return residual, t, "physical", rounds


def run_2g(sim: Sim):
    link_pairs, ready = [], []
    for link in range(sim.params.hops):
        qnic_l = sim.topology.qnic(link, link)
        qnic_r = sim.topology.qnic(link + 1, link)
        block_l = sim.prepare_block("plus", qnic_l, 0.0)
        block_r = sim.prepare_block("zero", qnic_r, 0.0)
        pairs = [sim.request_link_pair(link, 0.0) for _ in range(7)]
        t_all = max(p.created_at for p in pairs)
        _teleported_transversal_cnot(sim, block_l, block_r, pairs, t_all)
        done = t_all + sim.params.classical_delay(sim.params.link_length)
        sim.schedule(done, "classical-msg", link, f"ncx fixups for link {link}")
        link_pairs.append(LogicalPair(block_l, block_r, link, link + 1, done))
        ready.append(done)
    return _finish_logical(sim, link_pairs, ready)


def run_hg_pe(sim: Sim):
    link_pairs, ready = [], []
    for link in range(sim.params.hops):
        kept, t = _purified_link_pair(sim, link, 0.0)
        block_l = sim.encode_pair_half(kept.left, sim.topology.qnic(link, link), t)
        block_r = sim.encode_pair_half(kept.right, sim.topology.qnic(link + 1, link), t)
        link_pairs.append(LogicalPair(block_l, block_r, link, link + 1, t))
        ready.append(t)
    return _finish_logical(sim, link_pairs, ready)


def run_e2e_hg_pe(sim: Sim):
    kept, t, rounds = _purified_e2e_pair(sim, 0.0)
    hops = sim.params.hops
    block_l = sim.encode_pair_half(kept.left, sim.topology.qnic(0, 0), t)
    block_r = sim.encode_pair_half(kept.right, sim.topology.qnic(hops, hops - 1), t)
    pair = LogicalPair(block_l, block_r, 0, hops, t)
    residual = sim.residual_class_logical(pair)
    sim.release_block(block_l)
    sim.release_block(block_r)
    return residual, t, "logical", rounds


def _finish_logical(sim: Sim, link_pairs, ready):
    if len(link_pairs) == 1:
        pair, t = link_pairs[0], ready[0]
    else:
        pair, t = sim.ordered_swap_chain(link_pairs, ready, sim.logical_swap)
    residual = sim.residual_class_logical(pair)
    sim.release_block(pair.left_block)
    sim.release_block(pair.right_block)
    return residual, t, "logical", 1


_RUNNERS: dict[str, Callable] = {
    "0g": run_0g,
    "1g": run_1g,
    "e2e-1g": run_e2e_1g,
    "2g": run_2g,
    "hg-pe": run_hg_pe,
    "e2e-hg-pe": run_e2e_hg_pe,
}


def normalize_strategy(name: str) -> str:
    key = name.strip().lower().replace("_", "-")
    if key not in _RUNNERS:
        raise ValueError(f"unknown strategy {name!r}; choose from {', '.join(STRATEGIES)}")
    return key


def run_trial(strategy: str, params: SimParams, rng: Random,
              trace: Optional[Callable[[str], None]] = None) -> DeliveryResult:
    """One full delivery of the given strategy; returns its residual class,
    timing and resource accounting.  Deterministic in (params, rng state)."""
    key = normalize_strategy(strategy)
    end_budget, mid_budget = BUDGETS[key]
    topology = Topology(params, end_budget, mid_budget)
    sim = Sim(params, rng, topology, trace)
    residual, delivered_at, kind, rounds = _RUNNERS[key](sim)
    sim.schedule(delivered_at, "deliver", 0, f"end-to-end {kind} pair, class {residual}")
    sim.drain()
    if not topology.all_free():
        raise RuntimeError("slot leak: some slots still in use at trial end")
    if sim.frame:
        raise RuntimeError("frame leak: errors recorded on released slots")
    return DeliveryResult(
        strategy=key, residual=residual, delivered_at=delivered_at, kind=kind,
        pairs_per_link=dict(sim.pairs_per_link), e2e_rounds=rounds,
        last_gen_time=sim.last_gen_time, swap_delay_sum=sim.swap_delay_sum,
        blocks_created=sim.blocks_created, peaks=topology.peaks())
