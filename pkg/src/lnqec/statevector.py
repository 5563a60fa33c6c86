"""Dense statevector oracle for the encoder/decoder circuits.

Qubit ``i`` is tensor axis ``i`` of the ``(2,) * n`` reshaped amplitude
array, so qubit 0 is the most significant bit of a basis index.  Ancillas
occupy qubits ``0 .. n_anc-1`` and data qubits follow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .gf4 import F2Vector
from .scheme import PauliErrorVector, Scheme, SyndromeTable, decode, propagate_closed_form

DEFAULT_QUBIT_CAP = 14
PRODUCT_TOL = 1e-10
_SQRT1_2 = 1 / np.sqrt(2)


class QubitCapError(ValueError):
    """The simulation would exceed the configured qubit cap."""


class NonProductStateError(RuntimeError):
    """Ancilla measurement is not deterministic where it must be."""


class Gate(NamedTuple):
    kind: str  # "CX" or "CZ"
    control: int
    target: int


@dataclass(frozen=True)
class StateVector:
    amps: np.ndarray
    n_qubits: int

    def __post_init__(self) -> None:
        if self.amps.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude array does not match qubit count")

    @classmethod
    def from_amplitudes(cls, amps) -> StateVector:
        amps = np.asarray(amps, dtype=np.complex128)
        n = int(amps.size).bit_length() - 1
        if amps.size != 1 << n:
            raise ValueError("amplitude count is not a power of two")
        return cls(amps.copy(), n)

    @classmethod
    def basis(cls, n: int, index: int) -> StateVector:
        a = np.zeros(1 << n, dtype=np.complex128)
        a[index] = 1
        return cls(a, n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def overlap(self, other: StateVector) -> float:
        """``|<self|other>|``, insensitive to global phase."""
        return float(abs(np.vdot(self.amps, other.amps)))

    def kron(self, other: StateVector) -> StateVector:
        return StateVector(np.kron(self.amps, other.amps), self.n_qubits + other.n_qubits)

    def _view(self) -> np.ndarray:
        return self.amps.reshape((2,) * self.n_qubits)


def _index(n: int, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * n
    for q, v in fixed.items():
        idx[q] = v
    return tuple(idx)


def _apply(sv: StateVector, fn) -> StateVector:
    view = sv._view().copy()
    fn(view, sv.n_qubits)
    return StateVector(view.reshape(-1), sv.n_qubits)


def _x(view: np.ndarray, n: int, q: int) -> None:
    a, b = _index(n, {q: 0}), _index(n, {q: 1})
    view[a], view[b] = view[b].copy(), view[a].copy()


def _z(view: np.ndarray, n: int, q: int) -> None:
    view[_index(n, {q: 1})] *= -1


def _h(view: np.ndarray, n: int, q: int) -> None:
    a, b = _index(n, {q: 0}), _index(n, {q: 1})
    v0, v1 = view[a].copy(), view[b].copy()
    view[a] = (v0 + v1) * _SQRT1_2
    view[b] = (v0 - v1) * _SQRT1_2


def _cx(view: np.ndarray, n: int, c: int, t: int) -> None:
    a = _index(n, {c: 1, t: 0})
    b = _index(n, {c: 1, t: 1})
    view[a], view[b] = view[b].copy(), view[a].copy()


def _cz(view: np.ndarray, n: int, c: int, t: int) -> None:
    view[_index(n, {c: 1, t: 1})] *= -1


def apply_hadamards(sv: StateVector, qubits) -> StateVector:
    def fn(view, n):
        for q in qubits:
            _h(view, n, q)

    return _apply(sv, fn)


def apply_gates(sv: StateVector, gates) -> StateVector:
    """Apply gates in list (time) order."""

    def fn(view, n):
        for g in gates:
            (_cx if g.kind == "CX" else _cz)(view, n, g.control, g.target)

    return _apply(sv, fn)


def apply_pauli(sv: StateVector, e_X: F2Vector, e_Z: F2Vector) -> StateVector:
    """Apply ``X^e_X Z^e_Z`` (the Z factors act first)."""
    if e_X.length != sv.n_qubits or e_Z.length != sv.n_qubits:
        raise ValueError("Pauli vector length does not match qubit count")

    def fn(view, n):
        for q in e_Z.support():
            _z(view, n, q)
        for q in e_X.support():
            _x(view, n, q)

    return _apply(sv, fn)


def _check_cap(scheme: Scheme, cap: int) -> None:
    if scheme.n_phys > cap:
        raise QubitCapError(f"{scheme.n_phys} qubits exceeds cap {cap}")


def gates_for_Q(scheme: Scheme, cap: int = DEFAULT_QUBIT_CAP) -> tuple[Gate, ...]:
    """Controlled-Pauli circuit for ``Q`` in time order.

    ``Q`` multiplies data by ``X^(mu H_Xp) Z^(mu H_Zp)``, so the CZ layer
    (row-major over ``H_Zp``) runs before the CX layer (row-major over
    ``H_Xp``).  Every gate is self-inverse; ``Q^dagger`` is the reversed list.
    """
    _check_cap(scheme, cap)
    n_anc = scheme.n_anc
    gates = []
    for kind, m in (("CZ", scheme.H_Zp), ("CX", scheme.H_Xp)):
        for i in range(m.nrows):
            for j in range(m.ncols):
                if m[i, j]:
                    gates.append(Gate(kind, i, n_anc + j))
    return tuple(gates)


def apply_q_reference(scheme: Scheme, sv: StateVector) -> StateVector:
    """``Q`` straight from its outer-product definition, block by block."""
    n_anc, k = scheme.n_anc, scheme.k
    blocks = sv.amps.reshape(1 << n_anc, 1 << k).copy()
    for mu_index in range(1 << n_anc):
        mu = F2Vector(_index_to_bits(mu_index, n_anc), n_anc)
        data = StateVector(blocks[mu_index].copy(), k)
        data = apply_pauli(data, scheme.H_Xp.left_mul(mu), scheme.H_Zp.left_mul(mu))
        blocks[mu_index] = data.amps
    return StateVector(blocks.reshape(-1), sv.n_qubits)


def _index_to_bits(index: int, width: int) -> int:
    """Basis index (qubit 0 most significant) to packed bits (qubit i = bit i)."""
    return sum(((index >> (width - 1 - i)) & 1) << i for i in range(width))


def _bits_to_index(bits: int, width: int) -> int:
    return sum(((bits >> i) & 1) << (width - 1 - i) for i in range(width))


def ancilla_state(scheme: Scheme, outcome: F2Vector) -> StateVector:
    """``|outcome>`` in the scheme's ancilla basis."""
    sv = StateVector.basis(scheme.n_anc, _bits_to_index(outcome.bits, scheme.n_anc))
    if scheme.ancilla_basis == "X":
        sv = apply_hadamards(sv, range(scheme.n_anc))
    return sv


def prepare(scheme: Scheme, psi: StateVector) -> StateVector:
    if psi.n_qubits != scheme.k:
        raise ValueError(f"logical state has {psi.n_qubits} qubits, scheme encodes {scheme.k}")
    return ancilla_state(scheme, F2Vector.zeros(scheme.n_anc)).kron(psi)


def encode(scheme: Scheme, sv: StateVector, gates=None) -> StateVector:
    gates = gates_for_Q(scheme) if gates is None else gates
    anc = range(scheme.n_anc)
    if scheme.is_dual:
        sv = apply_hadamards(sv, anc)
    sv = apply_gates(sv, gates)
    if scheme.is_dual:
        sv = apply_hadamards(sv, anc)
    return sv


def unencode(scheme: Scheme, sv: StateVector, gates=None) -> StateVector:
    gates = gates_for_Q(scheme) if gates is None else gates
    return encode(scheme, sv, tuple(reversed(gates)))


def measure_ancillas(scheme: Scheme, sv: StateVector, tol: float = PRODUCT_TOL) -> tuple[F2Vector, StateVector]:
    """Measure ancillas in the scheme's basis; the outcome must be deterministic.

    Returns the outcome bits and the normalized data-register state.
    """
    n_anc, k = scheme.n_anc, scheme.k
    if scheme.ancilla_basis == "X":
        sv = apply_hadamards(sv, range(n_anc))
    blocks = sv.amps.reshape(1 << n_anc, 1 << k)
    probs = np.einsum("ij,ij->i", blocks.conj(), blocks).real
    best = int(np.argmax(probs))
    if probs[best] < 1 - tol:
        raise NonProductStateError(
            f"no ancilla outcome is deterministic (max probability {probs[best]:.12f})"
        )
    data = blocks[best] / np.sqrt(probs[best])
    return F2Vector(_index_to_bits(best, n_anc), n_anc), StateVector(data.copy(), k)


def measure_ancilla_x(sv: StateVector, scheme: Scheme, tol: float = PRODUCT_TOL):
    return measure_ancillas(scheme, sv, tol)


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    a = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return StateVector(a / np.linalg.norm(a), n_qubits)


def simulate_channel(scheme: Scheme, err: PauliErrorVector, psi: StateVector, gates=None) -> StateVector:
    """``Q^dagger E Q`` applied to the prepared input, by gate simulation."""
    _check_cap(scheme, DEFAULT_QUBIT_CAP)
    gates = gates_for_Q(scheme) if gates is None else gates
    sv = encode(scheme, prepare(scheme, psi), gates)
    sv = apply_pauli(sv, err.e_X, err.e_Z)
    return unencode(scheme, sv, gates)


def predicted_state(scheme: Scheme, err: PauliErrorVector, psi: StateVector) -> StateVector:
    """Post-decoder state built from the closed form, up to global phase."""
    prop = propagate_closed_form(scheme, err)
    data = apply_pauli(psi, prop.data_X, prop.data_Z)
    return ancilla_state(scheme, prop.anc_outcome).kron(data)


def propagation_fidelity(scheme: Scheme, err: PauliErrorVector, psi: StateVector, cap: int = DEFAULT_QUBIT_CAP) -> float:
    _check_cap(scheme, cap)
    return simulate_channel(scheme, err, psi).overlap(predicted_state(scheme, err, psi))


def verify_propagation(scheme: Scheme, err: PauliErrorVector, psi: StateVector, tol: float = PRODUCT_TOL) -> bool:
    return propagation_fidelity(scheme, err, psi) >= 1 - tol


@dataclass(frozen=True)
class EndToEnd:
    fidelity: float
    outcome: F2Vector
    decoded: bool
    data_out: StateVector


def run_end_to_end(scheme: Scheme, table: SyndromeTable, err: PauliErrorVector, psi: StateVector) -> EndToEnd:
    """Encode, corrupt, decode, measure and correct entirely by simulation."""
    sv = simulate_channel(scheme, err, psi)
    outcome, data = measure_ancillas(scheme, sv)
    corr = decode(table, outcome)
    if corr is not None:
        data = apply_pauli(data, corr.data_X, corr.data_Z)
    return EndToEnd(psi.overlap(data), outcome, corr is not None, data)


def end_to_end(scheme: Scheme, table: SyndromeTable, err: PauliErrorVector, psi: StateVector) -> float:
    return run_end_to_end(scheme, table, err, psi).fidelity
