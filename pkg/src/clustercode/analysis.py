"""Code-quality analysis: distances, the quantum Hamming bound, syndromes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import gf2
from .errors import ValidationError
from .pauli import GeneratorSet, PauliOperator, decompose
from .synthesis import ParityCheckMatrix, parity_check_from_stabilizers

MAX_COLUMN_SEARCH_QUBITS = 14
MAX_BRUTE_FORCE_QUBITS = 12


def _min_dependent_columns(m: np.ndarray) -> int | None:
    """Size of the smallest set of columns summing to zero, or None."""
    cols = [gf2.pack(c) for c in np.asarray(m).T]
    for size in range(1, len(cols) + 1):
        for subset in itertools.combinations(cols, size):
            acc = 0
            for c in subset:
                acc ^= c
            if acc == 0:
                return size
    return None


def distance_by_columns(h: ParityCheckMatrix) -> tuple[int | None, int | None, int | None]:
    """Distances from the smallest linearly dependent column subsets.

    ``d`` comes from the 2n columns of ``[Hx | Hz]``, ``dx`` from the columns
    of ``Hz`` (Z checks see X errors) and ``dz`` from those of ``Hx``.
    ``None`` means no dependent subset exists.
    """
    if h.cols > MAX_COLUMN_SEARCH_QUBITS:
        raise ValidationError(
            f"exhaustive column search is limited to {MAX_COLUMN_SEARCH_QUBITS} qubits, got {h.cols}"
        )
    return (
        _min_dependent_columns(h.full),
        _min_dependent_columns(h.hz),
        _min_dependent_columns(h.hx),
    )


def _iter_weight(n: int, w: int):
    for support in itertools.combinations(range(n), w):
        for letters in itertools.product((1, 2, 3), repeat=w):
            x = z = 0
            for q, l in zip(support, letters):
                if l & 1:
                    x |= 1 << q
                if l & 2:
                    z |= 1 << q
            yield x, z


def distance_brute_force(s: GeneratorSet) -> int | None:
    """Minimum weight of a Pauli that commutes with every generator but is
    not in the group, by exhaustive enumeration in increasing weight."""
    n = s.n
    if n > MAX_BRUTE_FORCE_QUBITS:
        raise ValidationError(f"brute-force distance is limited to {MAX_BRUTE_FORCE_QUBITS} qubits")
    gens = [(g.x, g.z) for g in s]
    for w in range(1, n + 1):
        for x, z in _iter_weight(n, w):
            if any(bin((x & gz) ^ (z & gx)).count("1") & 1 for gx, gz in gens):
                continue
            if decompose(PauliOperator(n, x, z), s.generators) is None:
                return w
    return None


def hamming_bound(n: int, k: int, t: int) -> bool:
    """Non-degenerate quantum Hamming bound: sum_j C(n,j) 3^j 2^k <= 2^n."""
    if not (n >= k >= 0 and t >= 0):
        raise ValidationError(f"need n >= k >= 0 and t >= 0, got n={n}, k={k}, t={t}")
    return hamming_volume(n, k, t) <= 2**n


def hamming_volume(n: int, k: int, t: int) -> int:
    return sum(comb(n, j) * 3**j for j in range(t + 1)) * 2**k


def syndrome(error: PauliOperator, s: GeneratorSet) -> tuple[int, ...]:
    """Bit i is 1 when ``error`` anticommutes with generator i."""
    return tuple(bin((error.x & g.z) ^ (error.z & g.x)).count("1") & 1 for g in s)


@dataclass(frozen=True)
class CorrectabilityReport:
    n: int
    syndromes: dict[str, list[tuple[int, ...]]]
    correctable: dict[str, bool]
    detectable: dict[str, bool]
    collisions: list[dict] = field(default_factory=list)
    all_single_qubit: bool = False

    def to_json(self) -> dict:
        return {
            "correctable": dict(self.correctable),
            "detectable": dict(self.detectable),
            "all_single_qubit_correctable": self.all_single_qubit,
            "collisions": list(self.collisions),
        }


def single_error_report(s: GeneratorSet) -> CorrectabilityReport:
    """Syndromes of every single-qubit X, Y and Z error.

    A class is correctable when its n syndromes are nonzero and pairwise
    distinct (non-degenerate decoding), detectable when they are nonzero.
    Collisions are reported per class as 1-based qubit pairs.
    """
    n = s.n
    table: dict[str, list[tuple[int, ...]]] = {}
    correctable, detectable = {}, {}
    collisions = []
    for letter in "XYZ":
        syns = [syndrome(PauliOperator.single(n, q, letter), s) for q in range(1, n + 1)]
        table[letter] = syns
        nonzero = all(any(v) for v in syns)
        distinct = len(set(syns)) == len(syns)
        detectable[letter] = nonzero
        correctable[letter] = nonzero and distinct
        for a, b in itertools.combinations(range(n), 2):
            if syns[a] == syns[b]:
                collisions.append({"type": letter, "qubits": [a + 1, b + 1], "syndrome": list(syns[a])})
    every = [v for letter in "XYZ" for v in table[letter]]
    all_single = all(any(v) for v in every) and len(set(every)) == len(every)
    return CorrectabilityReport(n, table, correctable, detectable, collisions, all_single)


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: int | None
    dx: int | None
    dz: int | None
    d_bruteforce: int | None
    hamming_t1: bool
    saturates_hamming: bool


@dataclass(frozen=True)
class CodeReport:
    params: CodeParameters
    correctability: CorrectabilityReport
    parity_check: ParityCheckMatrix

    def to_json(self) -> dict:
        p = self.params
        c = self.correctability
        return {
            "n": p.n,
            "k": p.k,
            "d": p.d,
            "dx": p.dx,
            "dz": p.dz,
            "d_bruteforce": p.d_bruteforce,
            "hamming_t1": p.hamming_t1,
            "saturates_hamming": p.saturates_hamming,
            "correctable": dict(c.correctable),
            "detectable": dict(c.detectable),
            "all_single_qubit_correctable": c.all_single_qubit,
            "collisions": list(c.collisions),
        }

    def to_text(self) -> str:
        p = self.params
        c = self.correctability
        h = self.parity_check
        lines = [
            f"[[{p.n},{p.k}]] code",
            "Parity check matrix [Hx | Hz]:",
        ]
        for rx, rz in zip(h.hx, h.hz):
            lines.append("  " + " ".join(map(str, rx)) + " | " + " ".join(map(str, rz)))
        lines += [
            f"{'distance (column dependence, [Hx|Hz])':<44}{_fmt(p.d)}",
            f"{'dx (columns of Hz, X errors)':<44}{_fmt(p.dx)}",
            f"{'dz (columns of Hx, Z errors)':<44}{_fmt(p.dz)}",
            f"{'distance (exhaustive logical search)':<44}{_fmt(p.d_bruteforce)}",
            f"{'Hamming bound at t=1':<44}{'satisfied' if p.hamming_t1 else 'violated'}",
            f"{'saturates Hamming bound':<44}{'yes' if p.saturates_hamming else 'no'}",
        ]
        if p.d is not None and p.d_bruteforce is not None and p.d != p.d_bruteforce:
            lines.append("note: column-dependence distance differs from the exhaustive search")
        for letter in "XYZ":
            verdict = "correctable" if c.correctable[letter] else (
                "detectable only" if c.detectable[letter] else "not detectable"
            )
            lines.append(f"single-qubit {letter} errors: {verdict}")
        for col in c.collisions:
            a, b = col["qubits"]
            lines.append(f"  collision: {col['type']} on qubits {a} and {b} share syndrome {col['syndrome']}")
        if c.all_single_qubit:
            lines.append("all single-qubit Pauli errors have distinct syndromes")
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    return "-" if v is None else str(v)


def analyze(s: GeneratorSet) -> CodeReport:
    h = parity_check_from_stabilizers(s)
    d, dx, dz = distance_by_columns(h)
    d_bf = distance_brute_force(s)
    k = s.n - len(s)
    t = (d_bf - 1) // 2 if d_bf else 0
    params = CodeParameters(
        n=s.n,
        k=k,
        d=d,
        dx=dx,
        dz=dz,
        d_bruteforce=d_bf,
        hamming_t1=hamming_bound(s.n, k, 1),
        saturates_hamming=hamming_volume(s.n, k, t) == 2**s.n,
    )
    return CodeReport(params, single_error_report(s), h)
