"""Dense statevector simulator used as ground truth for the tableau code.

Basis index convention: qubit 1 is the most significant bit, so the ket
``|b_1 b_2 ... b_n>`` sits at index ``int("b_1...b_n", 2)``. This matches the
Pauli strings, whose leftmost letter is qubit 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graph import Graph
from .pauli import GeneratorSet, PauliOperator

MAX_QUBITS = 12
ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 0 <= self.n <= MAX_QUBITS:
            raise ValidationError(f"statevector supports 0..{MAX_QUBITS} qubits, got {self.n}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape != (2**self.n,):
            raise ValidationError(f"expected {2**self.n} amplitudes, got {amps.shape[0]}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > 1e-10:
            raise ValidationError(f"state is not normalized (norm {norm:.12g})")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)

    def overlap(self, other: StateVector) -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def equal_up_to_phase(self, other: StateVector, atol: float = ATOL) -> bool:
        return self.n == other.n and abs(abs(self.overlap(other)) - 1) < atol

    def to_json(self) -> list[list[float]]:
        return [[float(a.real), float(a.imag)] for a in self.amplitudes]

    @classmethod
    def from_json(cls, pairs, n: int | None = None) -> StateVector:
        amps = np.array([complex(re, im) for re, im in pairs])
        if n is None:
            n = int(round(np.log2(len(amps))))
        return cls(n, amps)


def basis_state(bits: str) -> StateVector:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2) if bits else 0] = 1
    return StateVector(len(bits), v)


def prepare_cluster(g: Graph, message: tuple[int, complex, complex] | None = None) -> StateVector:
    """|+> on every vertex (or ``alpha|0> + beta|1>`` on the message), then CZ per edge."""
    n = g.n
    if n > MAX_QUBITS:
        raise ValidationError(f"statevector supports up to {MAX_QUBITS} qubits, got {n}")
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    singles = [plus] * n
    if message is not None:
        idx, alpha, beta = message
        if not 1 <= idx <= n:
            raise ValidationError(f"message qubit {idx} outside 1..{n}")
        if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1) > 1e-10:
            raise ValidationError("message amplitudes are not normalized")
        singles = list(singles)
        singles[idx - 1] = np.array([alpha, beta], dtype=complex)
    psi = np.ones(1, dtype=complex)
    for s in singles:
        psi = np.kron(psi, s)
    # CZ phases: (-1)^(sum over edges b_i b_j) on each basis state
    idx = np.arange(2**n)
    bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
    parity = np.zeros(2**n, dtype=np.int64)
    for i, j in g.edges():
        parity ^= bits[i - 1] & bits[j - 1]
    psi = psi * (1 - 2 * parity)
    return StateVector(n, psi)


_LOCAL = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _apply_local(t: np.ndarray, q: int, m: np.ndarray) -> np.ndarray:
    t = np.tensordot(m, t, axes=([1], [q]))
    return np.moveaxis(t, 0, q)


def apply_pauli(sv: StateVector, p: PauliOperator) -> StateVector:
    if p.n != sv.n:
        raise ValidationError(f"Pauli on {p.n} qubits applied to a {sv.n}-qubit state")
    t = sv.tensor()
    for q in range(sv.n):
        letter = p.letter(q + 1)
        if letter != "I":
            t = _apply_local(t, q, _LOCAL[letter])
    return StateVector(sv.n, (1j**p.phase) * t.reshape(-1))


def is_stabilized(sv: StateVector, p: PauliOperator, atol: float = ATOL) -> bool:
    return bool(np.linalg.norm(apply_pauli(sv, p).amplitudes - sv.amplitudes) < atol)


def measure_pauli(
    sv: StateVector,
    basis: str,
    qubit: int,
    forced: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[StateVector, int, float]:
    """Project onto the (-1)^s eigenspace of ``basis`` on ``qubit``.

    Returns the renormalized state, ``s`` and its Born probability.
    """
    if not 1 <= qubit <= sv.n:
        raise ValidationError(f"qubit {qubit} out of range 1..{sv.n}")
    p = PauliOperator.single(sv.n, qubit, basis)
    moved = apply_pauli(sv, p).amplitudes
    branches = [(sv.amplitudes + moved) / 2, (sv.amplitudes - moved) / 2]
    probs = [float(np.vdot(b, b).real) for b in branches]
    if forced is None:
        if rng is None:
            rng = np.random.default_rng()
        s = int(rng.random() >= probs[0])
    else:
        s = int(forced)
    if probs[s] < 1e-12:
        raise ValidationError(f"outcome s={s} has zero probability")
    return StateVector(sv.n, branches[s] / np.sqrt(probs[s])), s, probs[s]


def outcome_probabilities(sv: StateVector, basis: str, qubit: int) -> tuple[float, float]:
    p = PauliOperator.single(sv.n, qubit, basis)
    expval = float(np.vdot(sv.amplitudes, apply_pauli(sv, p).amplitudes).real)
    return (1 + expval) / 2, (1 - expval) / 2


def equivalence_check(s: GeneratorSet, sv: StateVector) -> bool:
    """True iff ``sv`` is a +1 eigenstate of every generator of a full set.

    With ``len(s) == n`` the verdict pins the state up to global phase; smaller
    sets describe a code space and are rejected.
    """
    if s.n != sv.n:
        raise ValidationError(f"generator set on {s.n} qubits vs state on {sv.n}")
    if len(s) != s.n:
        raise ValidationError(f"need {s.n} generators for a pure-state verdict, got {len(s)}")
    return all(is_stabilized(sv, g) for g in s)


def stabilized_by_all(s: GeneratorSet, sv: StateVector) -> bool:
    """Like :func:`equivalence_check` but allows partial (code-space) sets."""
    return all(is_stabilized(sv, g) for g in s)


_EIGEN = {
    "Z": (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)),
    "X": (np.array([1, 1], dtype=complex) / np.sqrt(2), np.array([1, -1], dtype=complex) / np.sqrt(2)),
    "Y": (np.array([1, 1j], dtype=complex) / np.sqrt(2), np.array([1, -1j], dtype=complex) / np.sqrt(2)),
}


def drop_measured(sv: StateVector, qubit: int, basis: str, s: int) -> StateVector:
    """Remove a qubit known to sit in the (-1)^s eigenstate of ``basis``."""
    t = np.moveaxis(sv.tensor(), qubit - 1, 0)
    rest = np.tensordot(_EIGEN[basis][s].conj(), t, axes=([0], [0])).reshape(-1)
    norm = np.linalg.norm(rest)
    if abs(norm - 1) > 1e-9:
        raise ValidationError(f"qubit {qubit} is not in the s={s} eigenstate of {basis}")
    return StateVector(sv.n - 1, rest)
