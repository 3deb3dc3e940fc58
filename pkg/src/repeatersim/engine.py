"""Discrete-event simulation core for one entanglement-distribution trial.

A trial owns a virtual clock, an event queue (min-heap on time with
insertion-order tie-breaking), a linear-chain topology of nodes and QNICs
with budgeted qubit slots, and the shared Pauli error frame.  Only two
things take time: entanglement generation attempts (one attempt every
2L/c, geometric number of attempts with the photon survival probability)
and classical messages (distance over the speed of light in fiber).
Local gates and measurements are instantaneous but noisy.

Measurement is where memory decay materializes: immediately before a
qubit is read out it suffers a depolarizing hit of strength
1 - exp(-elapsed / tau) with elapsed counted from the qubit's
initialization.  Qubits inside encoded blocks are exempt while
``params.qec_storage`` is on, which models storage under continuous
error-correction cycles.

Everything stochastic draws from the trial's single ``random.Random``, so
a trial replays bit for bit from its seed.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from random import Random
from typing import Callable, Optional, Sequence

from .pauli import (X, Z, PauliFrame, canonical_one_sided, from_bits,
                    x_bit, z_bit)
from .noise import (apply_gate_noise, apply_link_depolarizing,
                    apply_memory_decay, flip_measurement, link_success_prob)
from .params import SimParams
from . import steane


class ProtocolError(Exception):
    """An operation was asked of pairs or slots it cannot apply to."""


class ResourceError(Exception):
    """A QNIC ran out of budgeted qubit slots."""


# ---------------------------------------------------------------------------
# events


@dataclass(frozen=True)
class Event:
    time: float
    seq: int
    kind: str        # attempt-link | herald | classical-msg | local-op | deliver
    node: int
    detail: str = ""

    def trace_line(self) -> str:
        return f"{self.time:.9f} {self.kind} {self.node} {self.detail}"


class EventQueue:
    """Min-heap of events; pops in nondecreasing time, ties by insertion."""

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, Event]] = []
        self._seq = 0

    def __len__(self) -> int:
        return len(self._heap)

    def push(self, time: float, kind: str, node: int, detail: str = "") -> Event:
        ev = Event(time, self._seq, kind, node, detail)
        heapq.heappush(self._heap, (time, self._seq, ev))
        self._seq += 1
        return ev

    def pop(self) -> Event:
        return heapq.heappop(self._heap)[2]


# ---------------------------------------------------------------------------
# topology


class Slot:
    """One physical qubit slot on a QNIC."""

    __slots__ = ("id", "node", "qnic", "kind", "init_time", "protected")

    def __init__(self, slot_id: int, node: int, qnic: "Qnic", kind: str):
        self.id = slot_id
        self.node = node
        self.qnic = qnic
        self.kind = kind            # external | internal
        self.init_time = 0.0
        self.protected = False      # inside an encoded block under QEC storage

    def __repr__(self) -> str:
        return f"Slot({self.id}@n{self.node}/{self.kind})"


class Qnic:
    """Per-link interface of one node: budgeted external and internal slots."""

    def __init__(self, node: int, link: int, n_external: int, n_internal: int,
                 ids):
        self.node = node
        self.link = link
        self._free = {"external": [Slot(next(ids), node, self, "external")
                                   for _ in range(n_external)],
                      "internal": [Slot(next(ids), node, self, "internal")
                                   for _ in range(n_internal)]}
        self._budget = {"external": n_external, "internal": n_internal}
        self._in_use = {"external": 0, "internal": 0}
        self.peak = {"external": 0, "internal": 0}

    def acquire(self, kind: str, at: float) -> Slot:
        free = self._free[kind]
        if not free:
            raise ResourceError(
                f"node {self.node} link {self.link}: no free {kind} slot "
                f"(budget {self._budget[kind]})")
        slot = free.pop()
        slot.init_time = at
        slot.protected = False
        self._in_use[kind] += 1
        if self._in_use[kind] > self.peak[kind]:
            self.peak[kind] = self._in_use[kind]
        return slot

    def release(self, slot: Slot) -> None:
        self._in_use[slot.kind] -= 1
        self._free[slot.kind].append(slot)

    def all_free(self) -> bool:
        return self._in_use["external"] == 0 and self._in_use["internal"] == 0


class Topology:
    """Linear chain: nodes 0..hops, link i between nodes i and i+1.

    End nodes carry one QNIC, intermediate nodes two; slot budgets are
    per QNIC and differ between end and intermediate nodes.
    """

    def __init__(self, params: SimParams, end_budget: tuple[int, int],
                 mid_budget: tuple[int, int]):
        self.hops = params.hops
        ids = iter(range(10 ** 9))
        self.qnics: dict[tuple[int, int], Qnic] = {}
        for link in range(self.hops):
            for node in (link, link + 1):
                ext, internal = end_budget if node in (0, self.hops) else mid_budget
                self.qnics[(node, link)] = Qnic(node, link, ext, internal, ids)

    def qnic(self, node: int, link: int) -> Qnic:
        return self.qnics[(node, link)]

    def all_free(self) -> bool:
        return all(q.all_free() for q in self.qnics.values())

    def peaks(self) -> dict:
        return {key: (q.peak["external"], q.peak["internal"])
                for key, q in self.qnics.items()}


# ---------------------------------------------------------------------------
# live resources


@dataclass
class BellPair:
    """A physical Bell pair between two slots on distinct nodes."""
    left: Slot
    right: Slot
    created_at: float
    link: Optional[int] = None

    @property
    def left_node(self) -> int:
        return self.left.node

    @property
    def right_node(self) -> int:
        return self.right.node

    @property
    def span(self) -> tuple[int, int]:
        return (self.left.node, self.right.node)


@dataclass
class LogicalPair:
    """A logical Bell pair: one code block at each end node."""
    left_block: steane.LogicalQubit
    right_block: steane.LogicalQubit
    left_node: int
    right_node: int
    created_at: float


def geometric_attempts(rng: Random, p: float) -> int:
    """Number of Bernoulli(p) attempts up to and including the first success."""
    if p >= 1.0:
        return 1
    if p <= 0.0:
        raise ProtocolError("link success probability is zero")
    u = rng.random()
    return max(1, math.ceil(math.log(1.0 - u) / math.log(1.0 - p)))


class Sim:
    """Mutable state of one trial plus the noisy primitive operations."""

    def __init__(self, params: SimParams, rng: Random,
                 topology: Topology, trace: Optional[Callable[[str], None]] = None):
        self.params = params
        self.rng = rng
        self.topology = topology
        self.frame = PauliFrame()
        self.queue = EventQueue()
        self.now = 0.0
        self.trace = trace
        self.pairs_per_link: dict[int, int] = {}
        self.blocks_created = 0
        self.last_gen_time = 0.0
        self.swap_delay_sum = 0.0
        self._eta = link_success_prob(params.link_length, params.attenuation)

    # -- event bookkeeping --------------------------------------------------

    def schedule(self, at: float, kind: str, node: int, detail: str = "") -> Event:
        if at < self.now - 1e-15:
            raise ProtocolError(f"event scheduled in the processed past: {at} < {self.now}")
        return self.queue.push(at, kind, node, detail)

    def drain(self) -> None:
        """Process (log and clock past) every outstanding event in time order."""
        while len(self.queue):
            ev = self.queue.pop()
            if ev.time < self.now - 1e-15:
                raise ProtocolError("event queue yielded a past event")
            self.now = max(self.now, ev.time)
            if self.trace is not None:
                self.trace(ev.trace_line())

    # -- primitive noisy operations -----------------------------------------

    def request_link_pair(self, link: int, at: float) -> BellPair:
        """Start link-level generation; returns the pair with its herald time.

        Draws the geometric number of attempts at the link's photon survival
        probability; each attempt takes one 2L/c period.  The fresh pair is
        depolarized on both ends and both slots are initialized at the
        herald time.
        """
        p = self.params
        left = self.topology.qnic(link, link).acquire("external", at)
        right = self.topology.qnic(link + 1, link).acquire("external", at)
        self.schedule(at, "attempt-link", link, f"link {link} generation requested")
        attempts = geometric_attempts(self.rng, self._eta)
        done = at + attempts * p.attempt_period
        left.init_time = done
        right.init_time = done
        apply_link_depolarizing(self.frame, left, right, p.p_depo, self.rng)
        self.schedule(done, "herald", link, f"link {link} pair after {attempts} attempts")
        self.pairs_per_link[link] = self.pairs_per_link.get(link, 0) + 1
        if done > self.last_gen_time:
            self.last_gen_time = done
        return BellPair(left, right, done, link)

    def gate_cnot(self, control: Slot, target: Slot) -> None:
        self.frame.cnot(control, target)
        apply_gate_noise(self.frame, (control, target), self.params.lambda_gate, self.rng)

    def gate_h(self, slot: Slot) -> None:
        self.frame.h(slot)
        apply_gate_noise(self.frame, (slot,), self.params.lambda_gate, self.rng)

    def measure_slot(self, slot: Slot, basis: str, at: float) -> int:
        """Destructively read one qubit; returns the deviation bit.

        Memory decay is applied immediately before readout unless the slot
        is under code-storage protection.  X errors flip a Z readout, Z
        errors an X readout; the classical bit then takes a p_meas flip.
        """
        if not slot.protected:
            apply_memory_decay(self.frame, slot, max(0.0, at - slot.init_time),
                               self.params.tau_memory, self.rng)
        p = self.frame.pop_pauli(slot)
        bit = x_bit(p) if basis == "Z" else z_bit(p)
        bit = flip_measurement(bit, self.params.p_meas, self.rng)
        self.release(slot)
        return bit

    def pauli_frame_correction(self, slot: Slot, dev: int, applied: bool) -> None:
        """Outcome-conditioned Pauli: deviation lands in the frame, and the
        physically applied gate (decided by the sampled total outcome) costs
        one gate-noise draw."""
        self.frame.mul(slot, dev)
        if applied:
            apply_gate_noise(self.frame, (slot,), self.params.lambda_gate, self.rng)

    def release(self, slot: Slot) -> None:
        self.frame.pop(slot, None)
        slot.protected = False
        slot.qnic.release(slot)

    def node_distance(self, a: int, b: int) -> float:
        return abs(a - b) * self.params.link_length

    # -- entanglement swapping ----------------------------------------------

    def entanglement_swap(self, left_pair: BellPair, right_pair: BellPair,
                          at_node: int, at: float) -> tuple[BellPair, float]:
        """Bell-state measurement at ``at_node`` splicing two physical pairs.

        The outcome bits travel to both end nodes of the new pair; the
        farther distance sets the completion time, and the right end node
        applies the (noisy) conditional Pauli correction.
        """
        if left_pair.right_node != at_node or right_pair.left_node != at_node:
            raise ProtocolError(f"pairs do not meet at node {at_node}")
        q1, q2 = left_pair.right, right_pair.left
        self.gate_cnot(q1, q2)
        self.gate_h(q1)
        self.schedule(at, "local-op", at_node, "bell measurement")
        d1 = self.measure_slot(q1, "Z", at)
        d2 = self.measure_slot(q2, "Z", at)
        m1 = self.rng.getrandbits(1) ^ d1
        m2 = self.rng.getrandbits(1) ^ d2
        end_l, end_r = left_pair.left_node, right_pair.right_node
        delay = self.params.classical_delay(
            max(self.node_distance(at_node, end_l), self.node_distance(at_node, end_r)))
        done = at + delay
        self.swap_delay_sum += delay
        self.schedule(done, "classical-msg", end_r, f"swap outcome from node {at_node}")
        self.pauli_frame_correction(right_pair.right, from_bits(d2, d1), (m1 | m2) == 1)
        return BellPair(left_pair.left, right_pair.right, done), done

    def logical_swap(self, left_pair: LogicalPair, right_pair: LogicalPair,
                     at_node: int, at: float) -> tuple[LogicalPair, float]:
        """Logical Bell measurement between the two resident blocks.

        Transversal CNOT, then one block is read out transversally in X and
        the other in Z; each 7-bit word goes through classical correction
        and its corrected parity is the logical outcome bit.  The logical
        correction on the right end block is transversal.
        """
        if left_pair.right_node != at_node or right_pair.left_node != at_node:
            raise ProtocolError(f"logical pairs do not meet at node {at_node}")
        b1, b2 = left_pair.right_block, right_pair.left_block
        for s1, s2 in zip(b1.slots, b2.slots):
            self.gate_cnot(s1, s2)
        self.schedule(at, "local-op", at_node, "logical bell measurement")
        u = [self.measure_slot(s, "X", at) for s in b1.slots]
        v = [self.measure_slot(s, "Z", at) for s in b2.slots]
        d1 = steane.corrected_parity(u)
        d2 = steane.corrected_parity(v)
        m1 = self.rng.getrandbits(1) ^ d1
        m2 = self.rng.getrandbits(1) ^ d2
        end_l, end_r = left_pair.left_node, right_pair.right_node
        delay = self.params.classical_delay(
            max(self.node_distance(at_node, end_l), self.node_distance(at_node, end_r)))
        done = at + delay
        self.swap_delay_sum += delay
        self.schedule(done, "classical-msg", end_r, f"logical swap outcome from node {at_node}")
        target = right_pair.right_block
        if d1:
            for s in target.slots:
                self.frame.mul(s, Z)
        if m1:
            apply_gate_noise(self.frame, target.slots, self.params.lambda_gate, self.rng)
        if d2:
            for s in target.slots:
                self.frame.mul(s, X)
        if m2:
            apply_gate_noise(self.frame, target.slots, self.params.lambda_gate, self.rng)
        return LogicalPair(left_pair.left_block, target,
                           left_pair.left_node, end_r, done), done

    def ordered_swap_chain(self, pairs: Sequence, ready: Sequence[float],
                           swap) -> tuple[object, float]:
        """Swap strictly left to right once every link pair is up.

        Each swap starts only after the previous swap's outcome has been
        confirmed at the end nodes, so the chain adds exactly the sum of
        the per-swap classical delays on top of the slowest link.
        """
        current = pairs[0]
        t = max(ready)
        for k in range(1, len(pairs)):
            current, t = swap(current, pairs[k], k, t)
        return current, t

    # -- block helpers -------------------------------------------------------

    def _protect(self, block: steane.LogicalQubit) -> None:
        # Slots keep their own init times: fresh ancillas start at encode
        # time, a wrapped data qubit keeps its link-generation age.
        self.blocks_created += 1
        if self.params.qec_storage:
            for s in block.slots:
                s.protected = True

    def prepare_block(self, state: str, qnic: Qnic, at: float) -> steane.LogicalQubit:
        """Encode |0>_L or |+>_L on seven fresh internal slots of a QNIC."""
        slots = [qnic.acquire("internal", at) for _ in range(7)]
        enc = steane.encode_zero if state == "zero" else steane.encode_plus
        block = enc(slots, self.frame, self.params, self.rng)
        self.schedule(at, "local-op", qnic.node, f"encode {state} block")
        self._protect(block)
        return block

    def encode_pair_half(self, data_slot: Slot, qnic: Qnic, at: float) -> steane.LogicalQubit:
        """Purified-encoding step: wrap one pair half into a code block."""
        ancillas = [qnic.acquire("internal", at) for _ in range(6)]
        block = steane.encode_from_physical(data_slot, ancillas, self.frame,
                                            self.params, self.rng)
        self.schedule(at, "local-op", qnic.node, "encode data block")
        self._protect(block)
        return block

    def release_block(self, block: steane.LogicalQubit) -> None:
        for s in block.slots:
            self.release(s)

    # -- delivered-pair evaluation -------------------------------------------

    def residual_class_physical(self, pair: BellPair) -> int:
        return canonical_one_sided(self.frame.pauli(pair.left),
                                   self.frame.pauli(pair.right))

    def residual_class_logical(self, pair: LogicalPair) -> int:
        return steane.residual_logical_class(pair.left_block, pair.right_block,
                                             self.frame)
