"""Phase-free Pauli algebra and error-frame propagation.

All noise in this simulator is stochastic Pauli noise, so the joint state
stays a mixture of Pauli-frame-displaced stabilizer states.  We therefore
never track amplitudes: each qubit carries an accumulated Pauli error
relative to the ideal protocol state, and Clifford gates act on those
errors by conjugation.  Global phases are dropped everywhere; Y is the
formal product XZ with no imaginary unit.

Paulis are encoded as two-bit integers (x, z):

    I = 0b00    X = 0b01    Z = 0b10    Y = 0b11

which makes the phase-free group product a plain XOR.
"""

from __future__ import annotations

from typing import Iterable

I, X, Z, Y = 0, 1, 2, 3

PAULIS = (I, X, Y, Z)
PAULI_NAMES = {I: "I", X: "X", Y: "Y", Z: "Z"}
PAULI_BY_NAME = {v: k for k, v in PAULI_NAMES.items()}

# Bell basis label of (P x I)|phi+> for each one-sided Pauli class P.
BELL_LABELS = {I: "phi+", X: "psi+", Z: "phi-", Y: "psi-"}


def pauli_mul(a: int, b: int) -> int:
    """Group product up to phase: XOR of the (x, z) bit pairs."""
    return a ^ b


def x_bit(p: int) -> int:
    return p & 1


def z_bit(p: int) -> int:
    return (p >> 1) & 1


def from_bits(x: int, z: int) -> int:
    return (x & 1) | ((z & 1) << 1)


class InvalidCircuitError(ValueError):
    """A gate was applied to an impossible slot combination."""


class PauliFrame(dict):
    """Sparse map slot-id -> Pauli; a missing entry means identity.

    Mutating methods are the hot path of the simulator; the module-level
    ``propagate_*`` functions are pure copies of the same rules.
    """

    def pauli(self, slot) -> int:
        return self.get(slot, I)

    def mul(self, slot, p: int) -> None:
        """Multiply slot's error by p, dropping identity entries."""
        if p == I:
            return
        new = self.get(slot, I) ^ p
        if new:
            self[slot] = new
        else:
            self.pop(slot, None)

    def cnot(self, control, target) -> None:
        """Conjugate the frame through CNOT(control -> target).

        X on control copies onto target, Z on target copies onto control;
        the other two components are unchanged.  Y follows both rules.
        """
        if control == target:
            raise InvalidCircuitError("cnot control and target must differ")
        pc = self.get(control, I)
        pt = self.get(target, I)
        self.mul(target, (pc & 1))            # x of control -> x of target
        self.mul(control, (pt & 2))           # z of target  -> z of control

    def h(self, slot) -> None:
        """Conjugate through Hadamard: swap the X and Z components."""
        p = self.get(slot, I)
        if p == X or p == Z:
            self[slot] = p ^ 3

    def pop_pauli(self, slot) -> int:
        """Remove and return the slot's error (used when a qubit is measured)."""
        return self.pop(slot, I)


def propagate_cnot(frame: PauliFrame, control, target) -> PauliFrame:
    out = PauliFrame(frame)
    out.cnot(control, target)
    return out


def propagate_h(frame: PauliFrame, slot) -> PauliFrame:
    out = PauliFrame(frame)
    out.h(slot)
    return out


def canonical_one_sided(left: int, right: int) -> int:
    """Reduce a two-sided pair error to its one-sided Bell class.

    P (x) P stabilizes |phi+> up to phase, so (P_l, P_r) is equivalent to
    (P_l * P_r, I); the identity class means the pair is exactly |phi+>.
    """
    return left ^ right


def bell_class(p: int) -> str:
    """Bell-basis label of a one-sided error class."""
    return BELL_LABELS[p]


def compose_paulis(ps: Iterable[int]) -> int:
    out = I
    for p in ps:
        out ^= p
    return out
