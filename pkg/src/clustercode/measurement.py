"""Single-qubit Pauli measurements on stabilizer generator sets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf2
from .errors import ContradictionError, CorrectionError, StateError, ValidationError
from .pauli import (
    GeneratorSet,
    PauliOperator,
    commutes,
    decompose,
    format_pauli,
    multiply,
    product,
    signed_member,
    unsigned_group_equal,
    weight,
)

BASES = ("X", "Y", "Z")


@dataclass(frozen=True)
class MeasurementSpec:
    qubit: int
    basis: str
    forced_outcome: int | None = None

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValidationError(f"basis must be one of {BASES}, got {self.basis!r}")
        if self.forced_outcome not in (None, 0, 1):
            raise ValidationError(f"forced outcome must be 0 or 1, got {self.forced_outcome!r}")


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of one measurement; ``outcome_s`` is 0 for eigenvalue +1.

    ``anticommuting`` lists the 0-based generator indices that anticommuted
    with the observable and ``pivot`` the one that was replaced by it.
    """

    qubit: int
    basis: str
    outcome_s: int
    deterministic: bool
    anticommuting: tuple[int, ...] = ()
    pivot: int | None = None
    products: tuple[PauliOperator, ...] = field(default=(), repr=False)


def _observable(n: int, spec: MeasurementSpec) -> PauliOperator:
    if not 1 <= spec.qubit <= n:
        raise ValidationError(f"qubit {spec.qubit} out of range 1..{n}")
    return PauliOperator.single(n, spec.qubit, spec.basis)


def _draw(rng: np.random.Generator | None) -> int:
    if rng is None:
        rng = np.random.default_rng()
    return int(rng.integers(2))


def measure(
    s: GeneratorSet,
    spec: MeasurementSpec,
    rng: np.random.Generator | None = None,
    pivot: int | None = None,
) -> tuple[GeneratorSet, MeasurementRecord]:
    """Measure ``spec.basis`` on ``spec.qubit`` and update the generators.

    Random outcome: the pivot (lowest anticommuting index unless ``pivot`` is
    given) is multiplied into every other anticommuting generator and then
    replaced by the signed observable.

    Deterministic outcome: the observable is, up to sign, a product of
    generators and that sign is the outcome; the set is returned unchanged.

    When the set has fewer than ``n`` generators the observable may commute
    with everything without belonging to the group; the outcome is then
    random and the signed observable is appended.
    """
    m = _observable(s.n, spec)
    gens = list(s.generators)
    anti = [i for i, g in enumerate(gens) if not commutes(g, m)]

    if anti:
        if pivot is None:
            pivot = anti[0]
        elif pivot not in anti:
            raise ValidationError(f"pivot {pivot} does not anticommute with the observable")
        outcome = spec.forced_outcome if spec.forced_outcome is not None else _draw(rng)
        products = []
        for i in anti:
            if i != pivot:
                gens[i] = multiply(gens[i], gens[pivot])
                products.append(gens[i])
        gens[pivot] = m.with_sign(-1 if outcome else 1)
        record = MeasurementRecord(
            spec.qubit, spec.basis, outcome, False, tuple(anti), pivot, tuple(products)
        )
        return GeneratorSet(s.n, tuple(gens)), record

    element = signed_member(m, gens, s.n)
    if element is None:
        outcome = spec.forced_outcome if spec.forced_outcome is not None else _draw(rng)
        gens.append(m.with_sign(-1 if outcome else 1))
        return GeneratorSet(s.n, tuple(gens)), MeasurementRecord(spec.qubit, spec.basis, outcome, False)

    outcome = 0 if element.phase == 0 else 1
    if spec.forced_outcome is not None and spec.forced_outcome != outcome:
        raise ContradictionError(
            f"{spec.basis} on qubit {spec.qubit} is determined to give s={outcome}, "
            f"cannot force s={spec.forced_outcome}"
        )
    return s, MeasurementRecord(spec.qubit, spec.basis, outcome, True)


def evolve_sequence(
    s: GeneratorSet,
    specs: Sequence[MeasurementSpec],
    rng: np.random.Generator | None = None,
) -> tuple[GeneratorSet, list[MeasurementRecord]]:
    qubits = [sp.qubit for sp in specs]
    if len(set(qubits)) != len(qubits):
        raise ValidationError(f"measurement script repeats a qubit: {qubits}")
    records = []
    for sp in specs:
        s, rec = measure(s, sp, rng)
        records.append(rec)
    return s, records


def _delete_bit(mask: int, q: int) -> int:
    low = mask & ((1 << q) - 1)
    return low | ((mask >> (q + 1)) << q)


def discard_qubit(s: GeneratorSet, qubit: int) -> tuple[GeneratorSet, dict[int, int]]:
    """Remove a measured, disentangled qubit and compact the labels.

    The group must contain a single-qubit Pauli on ``qubit``; it is multiplied
    into every generator that carries the same letter there, then dropped.
    Any generator still acting on ``qubit`` means it is entangled.

    Returns the new set and the map old label -> new label.
    """
    n = s.n
    if not 1 <= qubit <= n:
        raise ValidationError(f"qubit {qubit} out of range 1..{n}")
    gens = list(s.generators)
    local = None
    for letter in BASES:
        op = PauliOperator.single(n, qubit, letter)
        idx = decompose(op, gens)
        if idx is not None:
            local = (product((gens[i] for i in idx), n), idx[-1])
            break
    if local is None:
        raise StateError(f"qubit {qubit} is not in a definite single-qubit Pauli eigenstate")
    h, drop = local
    del gens[drop]
    bit = 1 << (qubit - 1)
    out = []
    for g in gens:
        if g.support & bit:
            if ((g.x ^ h.x) | (g.z ^ h.z)) & bit:
                raise StateError(f"qubit {qubit} is still entangled through {format_pauli(g)}")
            g = multiply(g, h)
        out.append(g)
    q = qubit - 1
    reduced = tuple(PauliOperator(n - 1, _delete_bit(g.x, q), _delete_bit(g.z, q), g.phase) for g in out)
    relabel = {v: (v if v < qubit else v - 1) for v in range(1, n + 1) if v != qubit}
    return GeneratorSet(n - 1, reduced), relabel


def conjugate(s: GeneratorSet, p: PauliOperator) -> GeneratorSet:
    """``p s p^dagger``: flips the sign of every generator anticommuting with ``p``."""
    return GeneratorSet(s.n, tuple(g if commutes(g, p) else g.negate() for g in s))


def _pauli_from_vector(v: int, n: int) -> PauliOperator:
    full = (1 << n) - 1
    return PauliOperator(n, v & full, v >> n)


def lowest_weight(candidates) -> PauliOperator:
    return min(candidates, key=lambda p: (weight(p), format_pauli(p)))


def correction_frame(s: GeneratorSet, target: GeneratorSet, max_search_dim: int = 16) -> PauliOperator:
    """Pauli P with ``P s P^dagger`` equal to ``target`` including signs.

    The minimum-weight solution is returned (ties by Pauli string) when the
    solution space is small enough to enumerate.
    """
    if s.n != target.n:
        raise ValidationError(f"qubit count mismatch: {s.n} vs {target.n}")
    if not unsigned_group_equal(s, target):
        raise CorrectionError("the groups differ beyond signs; no Pauli correction exists")
    n = s.n
    flips = []
    for t in target:
        el = signed_member(t, s.generators, n)
        flips.append(int(el.phase != t.phase))
    if not any(flips):
        return PauliOperator.identity(n)
    # <P, t> = popcount(P.x & t.z ^ P.z & t.x); P packed as x | z << n
    rows = [t.z | (t.x << n) for t in target]
    solved = gf2.solve(rows, flips, 2 * n)
    if solved is None:
        raise CorrectionError("no Pauli fixes the generator signs")
    particular, null = solved
    if len(null) > max_search_dim:
        return _pauli_from_vector(particular, n)
    candidates = []
    for bits in itertools.product((0, 1), repeat=len(null)):
        v = particular
        for b, nv in zip(bits, null):
            if b:
                v ^= nv
        candidates.append(_pauli_from_vector(v, n))
    return lowest_weight(candidates)
