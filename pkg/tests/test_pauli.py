import itertools

import pytest
from hypothesis import given, strategies as st

from repeatersim.pauli import (
    I, X, Y, Z, PAULIS, PauliFrame, InvalidCircuitError,
    bell_class, canonical_one_sided, pauli_mul, propagate_cnot, propagate_h,
)

paulis = st.sampled_from(PAULIS)


def test_mul_table():
    assert pauli_mul(X, X) == I
    assert pauli_mul(X, Z) == Y
    assert pauli_mul(I, Y) == Y
    for p in PAULIS:
        assert pauli_mul(p, p) == I
        assert pauli_mul(p, I) == p


@given(paulis, paulis, paulis)
def test_mul_group_laws(a, b, c):
    assert pauli_mul(a, b) == pauli_mul(b, a)
    assert pauli_mul(pauli_mul(a, b), c) == pauli_mul(a, pauli_mul(b, c))


def test_cnot_rules():
    f = PauliFrame({0: X})
    f.cnot(0, 1)
    assert f.pauli(0) == X and f.pauli(1) == X

    f = PauliFrame({1: Z})
    f.cnot(0, 1)
    assert f.pauli(0) == Z and f.pauli(1) == Z

    # Z on control and X on target are untouched
    f = PauliFrame({0: Z, 1: X})
    f.cnot(0, 1)
    assert f.pauli(0) == Z and f.pauli(1) == X

    # Y on control decomposes as X.Z and follows both rules
    f = PauliFrame({0: Y})
    f.cnot(0, 1)
    assert f.pauli(0) == Y and f.pauli(1) == X


def test_cnot_same_slot_rejected():
    with pytest.raises(InvalidCircuitError):
        PauliFrame().cnot(2, 2)


def test_h_rules():
    for before, after in ((X, Z), (Z, X), (Y, Y), (I, I)):
        f = PauliFrame({0: before})
        f.h(0)
        assert f.pauli(0) == after


def test_propagation_is_pure():
    f = PauliFrame({0: X})
    g = propagate_cnot(f, 0, 1)
    assert f == PauliFrame({0: X})
    assert g.pauli(1) == X
    h = propagate_h(f, 0)
    assert f.pauli(0) == X and h.pauli(0) == Z


def _random_circuit_gates():
    gate = st.one_of(
        st.tuples(st.just("h"), st.integers(0, 2)),
        st.tuples(st.just("cx"), st.integers(0, 2), st.integers(0, 2)).filter(
            lambda g: g[1] != g[2]),
    )
    return st.lists(gate, max_size=8)


def _run(frame, gates):
    for g in gates:
        if g[0] == "h":
            frame.h(g[1])
        else:
            frame.cnot(g[1], g[2])
    return frame


@given(_random_circuit_gates())
def test_conjugation_is_linear(gates):
    # Propagating f1 then f2 through a circuit equals propagating f1*f2,
    # exhaustively over all frames on three slots.
    for p0, p1, p2 in itertools.product(PAULIS, repeat=3):
        f1 = PauliFrame({0: p0, 1: p1, 2: p2})
        for q0, q1 in ((X, Z), (Y, I)):
            f2 = PauliFrame({0: q0, 1: q1})
            prod = PauliFrame()
            for s in (0, 1, 2):
                prod.mul(s, f1.pauli(s) ^ f2.pauli(s))
            a = _run(PauliFrame(f1), list(gates))
            b = _run(PauliFrame(f2), list(gates))
            combined = PauliFrame()
            for s in (0, 1, 2):
                combined.mul(s, a.pauli(s) ^ b.pauli(s))
            assert combined == _run(prod, list(gates))


def test_canonical_one_sided():
    assert canonical_one_sided(X, X) == I
    assert canonical_one_sided(X, I) == X
    assert canonical_one_sided(X, Z) == Y
    assert canonical_one_sided(I, I) == I


@given(paulis, paulis, paulis)
def test_canonical_invariant_under_joint_multiplication(left, right, q):
    assert canonical_one_sided(left ^ q, right ^ q) == canonical_one_sided(left, right)


def test_bell_class_partitions_pair_errors():
    buckets = {}
    for left, right in itertools.product(PAULIS, repeat=2):
        buckets.setdefault(bell_class(canonical_one_sided(left, right)), []).append(
            (left, right))
    assert sorted(buckets) == ["phi+", "phi-", "psi+", "psi-"]
    assert all(len(v) == 4 for v in buckets.values())
    assert bell_class(I) == "phi+"
    assert bell_class(X) == "psi+"
    assert bell_class(Y) == "psi-"
    assert bell_class(Z) == "phi-"
