"""Cluster synthesis for [[n,1]] stabilizer codes.

Given the n-1 generators of a one-logical-qubit code, build an (n+1)-vertex
cluster whose extra "message" vertex, once measured in X, leaves the other n
qubits in the code space.

Why the adjacency is found by solving ``Hx A = Hz``: the message vertex is
joined to every check vertex, so each check generator ``X_k Z_{N(k)}`` also
carries ``Z`` on the message. Measuring the message in X multiplies the pivot
generator into all others, and what survives on the check qubits is the group
``{(v | v A) : v of even weight}``. That equals the target exactly when every
row of ``Hx`` has even weight, the rows of ``Hx`` are independent, and
``Hx A = Hz``. A symmetric zero-diagonal solution is unique when it exists.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .errors import SynthesisInfeasible, SynthesisMismatch, ValidationError
from .graph import ClusterCode, Graph, cluster_stabilizers
from .measurement import (
    MeasurementRecord,
    MeasurementSpec,
    conjugate,
    correction_frame,
    discard_qubit,
    measure,
)
from .pauli import (
    GeneratorSet,
    PauliOperator,
    canonical_form,
    commutes,
    decompose,
    format_pauli,
    group_equal,
    unsigned_group_equal,
    weight,
)


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    hx: np.ndarray
    hz: np.ndarray
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        hx = np.atleast_2d(np.array(self.hx, dtype=np.uint8))
        hz = np.atleast_2d(np.array(self.hz, dtype=np.uint8))
        if hx.shape != hz.shape:
            raise ValidationError(f"Hx {hx.shape} and Hz {hz.shape} differ in shape")
        object.__setattr__(self, "hx", hx)
        object.__setattr__(self, "hz", hz)
        if not self.signs:
            object.__setattr__(self, "signs", (1,) * hx.shape[0])

    @property
    def rows(self) -> int:
        return self.hx.shape[0]

    @property
    def cols(self) -> int:
        return self.hx.shape[1]

    @property
    def full(self) -> np.ndarray:
        """``[Hx | Hz]`` as one r x 2n array."""
        return np.hstack([self.hx, self.hz])

    def to_generators(self) -> GeneratorSet:
        ops = [
            PauliOperator.from_bits(hx, hz, 0 if sign > 0 else 2)
            for hx, hz, sign in zip(self.hx, self.hz, self.signs)
        ]
        return GeneratorSet(self.cols, tuple(ops))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ParityCheckMatrix)
            and np.array_equal(self.hx, other.hx)
            and np.array_equal(self.hz, other.hz)
        )


def parity_check_from_stabilizers(s: GeneratorSet) -> ParityCheckMatrix:
    """Row i is generator i; a Y sets both its Hx and Hz column."""
    hx = np.array([g.x_bits for g in s], dtype=np.uint8).reshape(len(s), s.n)
    hz = np.array([g.z_bits for g in s], dtype=np.uint8).reshape(len(s), s.n)
    return ParityCheckMatrix(hx, hz, tuple(g.sign for g in s))


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: k for k, pair in enumerate(itertools.combinations(range(n), 2))}


def _solve_adjacency(hx: np.ndarray, hz: np.ndarray, n: int) -> np.ndarray:
    """Symmetric zero-diagonal A with ``hx @ A = hz (mod 2)``."""
    for i, row in enumerate(hx):
        if int(row.sum()) % 2:
            raise SynthesisInfeasible(
                f"check {i + 1} has odd X-weight; a fully connected message vertex "
                "only produces even-weight X parts"
            )
    if gf2.rank(gf2.matrix_rows(hx)) != hx.shape[0]:
        raise SynthesisInfeasible("the X parts of the checks are linearly dependent")
    pairs = _pair_index(n)
    eqs, rhs = [], []
    for i in range(hx.shape[0]):
        for c in range(n):
            v = 0
            for k in np.flatnonzero(hx[i]):
                k = int(k)
                if k != c:
                    v ^= 1 << pairs[(min(k, c), max(k, c))]
            eqs.append(v)
            rhs.append(int(hz[i, c]))
    solved = gf2.solve(eqs, rhs, len(pairs))
    if solved is None:
        raise SynthesisInfeasible("no symmetric zero-diagonal A satisfies Hx A = Hz")
    particular, _ = solved
    a = np.zeros((n, n), dtype=np.uint8)
    for (i, j), k in pairs.items():
        if (particular >> k) & 1:
            a[i, j] = a[j, i] = 1
    return a


def _rowspace_search(hz: np.ndarray, n: int) -> np.ndarray:
    """Backtracking search for a symmetric zero-diagonal A with row space = row space of hz.

    Row vectors are read with column 1 as the most significant bit and tried
    in increasing integer order.
    """

    def as_int(row) -> int:
        return int("".join(str(int(b)) for b in row), 2) if n else 0

    def bit(v: int, j: int) -> int:
        return (v >> (n - 1 - j)) & 1

    source = [as_int(r) for r in hz]
    target = gf2.fully_reduced(gf2.reduce_rows(source))
    candidates = gf2.span_elements(source)
    chosen: list[int] = []

    def extend(i: int) -> bool:
        if i == n:
            return gf2.fully_reduced(gf2.reduce_rows(chosen)) == target
        for c in candidates:
            if bit(c, i) or any(bit(c, j) != bit(chosen[j], i) for j in range(i)):
                continue
            chosen.append(c)
            if extend(i + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        raise SynthesisInfeasible("no symmetric zero-diagonal matrix has the row space of Hz")
    return np.array([[bit(v, j) for j in range(n)] for v in chosen], dtype=np.uint8)


def adjacency_from_hz(hz: np.ndarray, n: int, hx: np.ndarray | None = None) -> Graph:
    """Adjacency matrix of the check vertices.

    With ``hx`` the adjacency is the unique solution of ``Hx A = Hz`` (see the
    module docstring); this is what :func:`synthesize` uses. Without it, the
    row-space search is used: it only guarantees that A and the zero-padded Hz
    share a row space, which does not by itself reproduce the code.
    """
    hz = np.asarray(hz, dtype=np.uint8).reshape(-1, n)
    if hx is None:
        return Graph(_rowspace_search(hz, n))
    hx = np.asarray(hx, dtype=np.uint8).reshape(-1, n)
    if hx.shape != hz.shape:
        raise ValidationError(f"Hx {hx.shape} and Hz {hz.shape} differ in shape")
    return Graph(_solve_adjacency(hx, hz, n))


def extend_with_message(a: Graph) -> ClusterCode:
    """Append a message vertex adjacent to every existing vertex."""
    n = a.n
    big = np.zeros((n + 1, n + 1), dtype=np.uint8)
    big[:n, :n] = a.adjacency
    big[n, :n] = 1
    big[:n, n] = 1
    return ClusterCode(Graph(big), n + 1)


def encoder_generators(cluster: ClusterCode) -> GeneratorSet:
    """Cluster generators of every vertex except the message.

    The message vertex holds an arbitrary state rather than |+>, so its own
    cluster generator is not a stabilizer of the encoder.
    """
    full = cluster_stabilizers(cluster.graph)
    keep = [g for j, g in enumerate(full, 1) if j != cluster.message_index]
    return GeneratorSet(full.n, tuple(keep))


@dataclass(frozen=True)
class SynthesisResult:
    target: GeneratorSet
    parity_check: ParityCheckMatrix
    adjacency: Graph
    cluster: ClusterCode
    records: tuple[MeasurementRecord, ...]
    correction: PauliOperator
    achieved: GeneratorSet
    corrected: GeneratorSet = field(repr=False)

    @property
    def verified(self) -> bool:
        return group_equal(self.corrected, self.target)

    def to_json(self) -> dict:
        return {
            "n": self.target.n,
            "target": self.target.to_strings(),
            "adjacency": self.adjacency.adjacency.astype(int).tolist(),
            "cluster_adjacency": self.cluster.graph.adjacency.astype(int).tolist(),
            "message_index": self.cluster.message_index,
            "measurements": [
                {"qubit": r.qubit, "basis": r.basis, "outcome_s": r.outcome_s, "deterministic": r.deterministic}
                for r in self.records
            ],
            "correction": format_pauli(self.correction),
            "achieved": self.achieved.to_strings(),
            "corrected": self.corrected.to_strings(),
            "verified": self.verified,
        }


def run_cluster_measurement(
    cluster: ClusterCode,
    forced_outcome: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[GeneratorSet, MeasurementRecord]:
    """Measure the message in X and discard it; returns the code generators on the rest."""
    gens = encoder_generators(cluster)
    after, record = measure(gens, MeasurementSpec(cluster.message_index, "X", forced_outcome), rng)
    reduced, _ = discard_qubit(after, cluster.message_index)
    return reduced, record


def synthesize(
    target: GeneratorSet,
    forced_outcome: int | None = None,
    rng: np.random.Generator | None = None,
) -> SynthesisResult:
    n = target.n
    if len(target) != n - 1:
        raise ValidationError(f"expected {n - 1} generators for an [[{n},1]] code, got {len(target)}")
    h = parity_check_from_stabilizers(target)
    a = adjacency_from_hz(h.hz, n, hx=h.hx)
    cluster = extend_with_message(a)
    achieved, record = run_cluster_measurement(cluster, forced_outcome, rng)
    if not unsigned_group_equal(achieved, target):
        raise SynthesisMismatch(
            "measured cluster does not reproduce the target group",
            [format_pauli(g) for g in canonical_form(achieved.generators, n)],
            [format_pauli(g) for g in canonical_form(target.generators, n)],
        )
    correction = correction_frame(achieved, target)
    corrected = conjugate(achieved, correction)
    result = SynthesisResult(target, h, a, cluster, (record,), correction, achieved, corrected)
    if not result.verified:
        raise SynthesisMismatch(
            "correction frame failed to fix the signs",
            corrected.to_strings(),
            target.to_strings(),
        )
    return result


def _centralizer_basis(s: GeneratorSet) -> list[int]:
    """Basis (packed x | z << n) of Paulis commuting with every generator."""
    n = s.n
    rows = [g.z | (g.x << n) for g in s]
    particular, null = gf2.solve(rows, [0] * len(rows), 2 * n)
    return null


def _from_vector(v: int, n: int) -> PauliOperator:
    return PauliOperator(n, v & ((1 << n) - 1), v >> n)


def logical_candidates(s: GeneratorSet) -> list[PauliOperator]:
    """Every Pauli commuting with ``s`` but outside its group (phase +1)."""
    n = s.n
    basis = _centralizer_basis(s)
    out = []
    for bits in itertools.product((0, 1), repeat=len(basis)):
        v = 0
        for take, b in zip(bits, basis):
            if take:
                v ^= b
        op = _from_vector(v, n)
        if decompose(op, s.generators) is None:
            out.append(op)
    return out


def is_logical_pair(s: GeneratorSet, xbar: PauliOperator, zbar: PauliOperator) -> bool:
    """Both commute with the group, neither is in it, and they anticommute."""
    for op in (xbar, zbar):
        if not all(commutes(op, g) for g in s):
            return False
        if decompose(op, s.generators) is not None:
            return False
    return not commutes(xbar, zbar)


def logical_operators(target: GeneratorSet) -> tuple[PauliOperator, PauliOperator]:
    """Minimum-weight logical pair, ties broken by Pauli string.

    X-bar is the lightest logical operator overall; Z-bar the lightest one
    anticommuting with it. Among equal weights, fewer Y letters wins, so the
    trivial one-qubit code gets (X, Z) rather than (X, Y).
    """
    n = target.n
    if len(target) != n - 1:
        raise ValidationError(f"expected {n - 1} generators for an [[{n},1]] code, got {len(target)}")
    cands = logical_candidates(target)
    key = lambda p: (weight(p), bin(p.x & p.z).count("1"), format_pauli(p))
    xbar = min(cands, key=key)
    zbar = min((c for c in cands if not commutes(c, xbar)), key=key)
    return xbar, zbar
