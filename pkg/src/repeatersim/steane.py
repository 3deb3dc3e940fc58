"""The [[7,1,3]] code: check matrix, encoding circuits, classical
correction of transversal readout, and logical-class evaluation.

The code is CSS and self-dual: X- and Z-type stabilizers both come from
the [7,4] Hamming check matrix whose column j is the binary expansion of
j+1, so a weight-1 error at position j has syndrome value j+1.  Logical
X and Z act transversally (all seven qubits); a corrected 7-bit pattern
is a codeword, and it carries a logical flip exactly when its parity is
odd (nonzero codewords of even weight are stabilizers).

Encoding circuits are fixed so gate-noise accumulation is reproducible.
Qubit positions 0..6; "cx" is (control, target):

|0>_L   (21 noisy qubit touches):
    H 0, H 1, H 3;
    cx 0-2, 0-4, 0-6;  cx 1-2, 1-5, 1-6;  cx 3-4, 3-5, 3-6
|+>_L   (22 touches):
    H 0, H 1, H 2, H 3;
    cx 0-5, 0-6;  cx 1-4, 1-6;  cx 2-4, 2-5;  cx 3-4, 3-5, 3-6
arbitrary state, data at position 0   (25 touches):
    cx 0-1, 0-2;
    H 3, H 4, H 5;
    cx 3-0, 3-1, 3-6;  cx 4-0, 4-2, 4-6;  cx 5-1, 5-2, 5-6

The arbitrary-state encoder spreads the data qubit along the weight-3
logical-X representative {0,1,2} and then prepares the stabilizer
superposition from sources {3,4,5}; a pre-existing X (Z) on the data
qubit conjugates to a logical X (Z) of the block, as encode-time errors
on the input must.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Sequence

from .pauli import PauliFrame, from_bits, x_bit, z_bit
from .noise import apply_gate_noise, apply_memory_decay, flip_measurement

# Rows of the Hamming check matrix; column j is binary(j + 1), MSB first.
H_CHECK = (
    (0, 0, 0, 1, 1, 1, 1),
    (0, 1, 1, 0, 0, 1, 1),
    (1, 0, 1, 0, 1, 0, 1),
)

ENCODE_ZERO_OPS = (
    ("h", 0), ("h", 1), ("h", 3),
    ("cx", 0, 2), ("cx", 0, 4), ("cx", 0, 6),
    ("cx", 1, 2), ("cx", 1, 5), ("cx", 1, 6),
    ("cx", 3, 4), ("cx", 3, 5), ("cx", 3, 6),
)
ENCODE_PLUS_OPS = (
    ("h", 0), ("h", 1), ("h", 2), ("h", 3),
    ("cx", 0, 5), ("cx", 0, 6),
    ("cx", 1, 4), ("cx", 1, 6),
    ("cx", 2, 4), ("cx", 2, 5),
    ("cx", 3, 4), ("cx", 3, 5), ("cx", 3, 6),
)
ENCODE_DATA_OPS = (
    ("cx", 0, 1), ("cx", 0, 2),
    ("h", 3), ("h", 4), ("h", 5),
    ("cx", 3, 0), ("cx", 3, 1), ("cx", 3, 6),
    ("cx", 4, 0), ("cx", 4, 2), ("cx", 4, 6),
    ("cx", 5, 1), ("cx", 5, 2), ("cx", 5, 6),
)


def _touches(ops) -> int:
    return sum(1 if op[0] == "h" else 2 for op in ops)


ENCODE_ZERO_TOUCHES = _touches(ENCODE_ZERO_OPS)    # 21
ENCODE_PLUS_TOUCHES = _touches(ENCODE_PLUS_OPS)    # 22
ENCODE_DATA_TOUCHES = _touches(ENCODE_DATA_OPS)    # 25


@dataclass(frozen=True)
class LogicalQubit:
    """Seven physical slots forming one code block; slots[i] is position i."""

    slots: tuple

    def __post_init__(self):
        if len(self.slots) != 7 or len(set(self.slots)) != 7:
            raise ValueError("a code block needs 7 distinct slots")


def syndrome_bits(bits: Sequence[int]) -> int:
    """Hamming syndrome of a 7-bit word, as an integer in 0..7."""
    s = 0
    for row in H_CHECK:
        s = (s << 1) | (sum(r * b for r, b in zip(row, bits)) & 1)
    return s


def classical_correct(bits: Sequence[int]) -> tuple[tuple, int]:
    """Correct a transversal 7-bit readout to the nearest codeword.

    Returns (corrected word, syndrome).  A nonzero syndrome s points at
    position s-1; the corrected word always has zero syndrome.
    """
    word = tuple(b & 1 for b in bits)
    if len(word) != 7:
        raise ValueError("expected a 7-bit word")
    s = syndrome_bits(word)
    if s == 0:
        return word, 0
    flipped = list(word)
    flipped[s - 1] ^= 1
    return tuple(flipped), s


def word_parity(bits: Sequence[int]) -> int:
    p = 0
    for b in bits:
        p ^= b & 1
    return p


def corrected_parity(bits: Sequence[int]) -> int:
    """Logical bit carried by a 7-bit readout after Hamming correction."""
    corrected, _ = classical_correct(bits)
    return word_parity(corrected)


def apply_encoding_ops(ops, slots: Sequence, frame: PauliFrame,
                       lambda_gate: float, rng: Random) -> None:
    """Run a fixed encoding circuit on the frame, gate noise after each gate."""
    for op in ops:
        if op[0] == "h":
            s = slots[op[1]]
            frame.h(s)
            apply_gate_noise(frame, (s,), lambda_gate, rng)
        else:
            c, t = slots[op[1]], slots[op[2]]
            frame.cnot(c, t)
            apply_gate_noise(frame, (c, t), lambda_gate, rng)


def encode_zero(ancilla_slots: Sequence, frame: PauliFrame, params,
                rng: Random) -> LogicalQubit:
    """Prepare |0>_L on seven fresh slots."""
    if len(ancilla_slots) < 7:
        raise ValueError("encode_zero needs 7 slots")
    slots = tuple(ancilla_slots[:7])
    apply_encoding_ops(ENCODE_ZERO_OPS, slots, frame, params.lambda_gate, rng)
    return LogicalQubit(slots)


def encode_plus(ancilla_slots: Sequence, frame: PauliFrame, params,
                rng: Random) -> LogicalQubit:
    """Prepare |+>_L on seven fresh slots."""
    if len(ancilla_slots) < 7:
        raise ValueError("encode_plus needs 7 slots")
    slots = tuple(ancilla_slots[:7])
    apply_encoding_ops(ENCODE_PLUS_OPS, slots, frame, params.lambda_gate, rng)
    return LogicalQubit(slots)


def encode_from_physical(data_slot, ancilla_slots: Sequence, frame: PauliFrame,
                         params, rng: Random) -> LogicalQubit:
    """Encode an existing physical qubit plus six fresh ancillas into a block.

    The data qubit becomes block position 0; whatever Pauli error it holds
    is conjugated into (a logical error of) the block.
    """
    if len(ancilla_slots) < 6:
        raise ValueError("encode_from_physical needs 6 ancilla slots")
    slots = (data_slot,) + tuple(ancilla_slots[:6])
    apply_encoding_ops(ENCODE_DATA_OPS, slots, frame, params.lambda_gate, rng)
    return LogicalQubit(slots)


def measure_logical(block: LogicalQubit, basis: str, frame: PauliFrame,
                    params, rng: Random, elapsed: Sequence[float]) -> int:
    """Noisy transversal readout of a block; returns the logical bit deviation.

    Each qubit suffers memory decay for its elapsed storage time, is read
    out (X errors flip a Z readout, Z errors an X readout), and the seven
    flip-noisy bits go through classical correction; the logical bit is
    the corrected parity.  Measurement removes the qubits from the frame.
    """
    if basis not in ("Z", "X"):
        raise ValueError(f"basis must be 'Z' or 'X', got {basis!r}")
    bits = []
    for slot, dt in zip(block.slots, elapsed):
        apply_memory_decay(frame, slot, dt, params.tau_memory, rng)
        p = frame.pop_pauli(slot)
        bit = x_bit(p) if basis == "Z" else z_bit(p)
        bits.append(flip_measurement(bit, params.p_meas, rng))
    return corrected_parity(bits)


def block_logical_class(block: LogicalQubit, frame: PauliFrame) -> int:
    """Logical residual of one block under ideal decoding.

    Reads the block's X and Z error patterns from the frame, corrects each
    against the check matrix, and reports the parity class that remains.
    """
    xs = tuple(x_bit(frame.pauli(s)) for s in block.slots)
    zs = tuple(z_bit(frame.pauli(s)) for s in block.slots)
    return from_bits(corrected_parity(xs), corrected_parity(zs))


def residual_logical_class(block_a: LogicalQubit, block_b: LogicalQubit,
                           frame: PauliFrame) -> int:
    """Residual class of a delivered logical pair under ideal decoding.

    Each block is decoded independently (syndrome extraction and correction
    are noiseless at delivery); the surviving logical errors reduce to one
    side because matching logical Paulis stabilize the logical pair.
    """
    return block_logical_class(block_a, frame) ^ block_logical_class(block_b, frame)
