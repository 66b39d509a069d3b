"""Signed Pauli operators in the binary symplectic representation.

An n-qubit Pauli is stored as two integer bit masks ``x`` and ``z`` (bit ``q``
belongs to qubit ``q + 1``) plus a phase exponent. The phase is taken relative
to the *letter* form::

    P = i**phase * sigma(x_1, z_1) (x) ... (x) sigma(x_n, z_n)

with sigma(0,0)=I, sigma(1,0)=X, sigma(0,1)=Z and sigma(1,1)=Y. Hermitian
operators therefore always have phase 0 or 2, which is what printed strings
such as ``-YZIZY`` show.

Masks make every row operation a single XOR, regardless of n.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import gf2
from .errors import PauliParseError, ValidationError

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}
_SIGN_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"qubit count must be non-negative, got {self.n}")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full:
            raise ValidationError("bit masks exceed the qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, sign: int = 1) -> PauliOperator:
        """Single-qubit ``letter`` on 1-based ``qubit``, times ``sign`` (+1 or -1)."""
        if not 1 <= qubit <= n:
            raise ValidationError(f"qubit {qubit} out of range 1..{n}")
        xb, zb = _BITS[letter.upper()]
        bit = 1 << (qubit - 1)
        return cls(n, bit * xb, bit * zb, 0 if sign > 0 else 2)

    @classmethod
    def from_bits(cls, xs: Sequence[int], zs: Sequence[int], phase: int = 0) -> PauliOperator:
        if len(xs) != len(zs):
            raise ValidationError("x and z parts differ in length")
        x = sum(1 << q for q, b in enumerate(xs) if b & 1)
        z = sum(1 << q for q, b in enumerate(zs) if b & 1)
        return cls(len(xs), x, z, phase)

    @property
    def x_bits(self) -> list[int]:
        return [(self.x >> q) & 1 for q in range(self.n)]

    @property
    def z_bits(self) -> list[int]:
        return [(self.z >> q) & 1 for q in range(self.n)]

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators; raises for imaginary phases."""
        if self.phase & 1:
            raise ValidationError(f"{self} has an imaginary phase")
        return 1 if self.phase == 0 else -1

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def support(self) -> int:
        return self.x | self.z

    def letter(self, qubit: int) -> str:
        """Letter acting on 1-based ``qubit``."""
        q = qubit - 1
        return _LETTERS[((self.x >> q) & 1, (self.z >> q) & 1)]

    def symplectic(self) -> int:
        """The 2n-bit vector ``x | z << n`` with phase dropped."""
        return self.x | (self.z << self.n)

    def unsigned(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, 0)

    def negate(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def with_sign(self, sign: int) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, 0 if sign > 0 else 2)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"PauliOperator({format_pauli(self)!r})"


def format_pauli(p: PauliOperator) -> str:
    """Render as ``[sign][IXYZ]*`` with qubit 1 leftmost."""
    return _SIGN_TEXT[p.phase] + "".join(p.letter(q) for q in range(1, p.n + 1))


def parse_pauli(text: str, n: int | None = None) -> PauliOperator:
    """Parse ``[+|-|+i|-i]?[IXYZ]{n}``; the leftmost letter is qubit 1.

    >>> parse_pauli("-YZIZY")
    PauliOperator('-YZIZY')
    """
    s = text.strip()
    phase = 0
    pos = 0
    if s[:2] in ("+i", "-i"):
        phase = 1 if s[0] == "+" else 3
        pos = 2
    elif s[:1] in ("+", "-"):
        phase = 0 if s[0] == "+" else 2
        pos = 1
    body = s[pos:]
    if body[:1] in ("+", "-", "i"):
        raise PauliParseError(text, pos, "malformed sign prefix")
    x = z = 0
    for q, ch in enumerate(body):
        bits = _BITS.get(ch.upper())
        if bits is None:
            raise PauliParseError(text, pos + q, f"illegal character {ch!r}")
        x |= bits[0] << q
        z |= bits[1] << q
    if n is not None and len(body) != n:
        raise PauliParseError(text, pos + min(len(body), n), f"expected {n} letters, got {len(body)}")
    if not body and n is None:
        raise PauliParseError(text, pos, "empty Pauli string")
    return PauliOperator(len(body), x, z, phase)


def _check_same_n(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise ValidationError(f"qubit count mismatch: {p.n} vs {q.n}")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product ``p * q``.

    In the X^x Z^z ordering, moving q's X part past p's Z part costs a factor
    (-1) per overlapping qubit; each Y carries one extra factor of i when
    converting between letter form and X^x Z^z form.
    """
    _check_same_n(p, q)
    x = p.x ^ q.x
    z = p.z ^ q.z
    phase = (
        p.phase + q.phase
        + _popcount(p.x & p.z) + _popcount(q.x & q.z)
        + 2 * _popcount(p.z & q.x)
        - _popcount(x & z)
    )
    return PauliOperator(p.n, x, z, phase)


def product(ops: Iterable[PauliOperator], n: int) -> PauliOperator:
    out = PauliOperator.identity(n)
    for op in ops:
        out = multiply(out, op)
    return out


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    _check_same_n(p, q)
    return _popcount((p.x & q.z) ^ (p.z & q.x)) % 2 == 0


def weight(p: PauliOperator) -> int:
    return _popcount(p.x | p.z)


def symplectic_rank(ops: Iterable[PauliOperator]) -> int:
    """GF(2) rank of the stacked (x|z) rows, phases ignored."""
    return gf2.rank(op.symplectic() for op in ops)


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered, independent, commuting list of Hermitian Paulis.

    Invariants are checked on construction; fewer than ``n`` generators is
    allowed and describes a code space rather than a single state.
    """

    n: int
    generators: tuple[PauliOperator, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for i, g in enumerate(gens):
            if g.n != self.n:
                raise ValidationError(f"generator {i + 1} acts on {g.n} qubits, expected {self.n}")
            if not g.is_hermitian:
                raise ValidationError(f"generator {i + 1} ({g}) does not have a real sign")
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not commutes(gens[i], gens[j]):
                    raise ValidationError(
                        f"generators {i + 1} ({gens[i]}) and {j + 1} ({gens[j]}) anticommute"
                    )
        if symplectic_rank(gens) != len(gens):
            raise ValidationError("generators are not independent")

    @classmethod
    def from_strings(cls, strings: Iterable[str], n: int | None = None) -> GeneratorSet:
        ops = [parse_pauli(s, n) for s in strings]
        if n is None:
            if not ops:
                raise ValidationError("cannot infer qubit count from an empty list")
            n = ops[0].n
        return cls(n, tuple(ops))

    def __iter__(self) -> Iterator[PauliOperator]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, i: int) -> PauliOperator:
        return self.generators[i]

    def to_strings(self) -> list[str]:
        return [format_pauli(g) for g in self.generators]

    def __str__(self) -> str:
        return "[" + ",".join(self.to_strings()) + "]"


def parse_generator_set(text: str, n: int | None = None) -> GeneratorSet:
    """One Pauli per line; ``#`` starts a comment; blank lines are ignored.

    A ``+I...I`` line adds no generator but fixes the qubit count, which is
    the only way to write a code with no generators.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        if n is None:
            raise ValidationError("empty generator file needs an explicit qubit count")
        return GeneratorSet(n, ())
    ops = [parse_pauli(line, n) for line in lines]
    width = n if n is not None else ops[0].n
    for i, op in enumerate(ops):
        if op.n != width:
            raise ValidationError(f"line {i + 1} has {op.n} letters, expected {width}")
    # "+II..I" only declares the width (lets an empty code be written down)
    ops = [op for op in ops if op.x or op.z or op.phase]
    return GeneratorSet(width, tuple(ops))


def format_generator_set(s: GeneratorSet) -> str:
    return "".join(line + "\n" for line in s.to_strings())


def _pivot_order(n: int) -> list[int]:
    # per qubit: X column then Z column, so canonical rows sort by qubit
    cols = []
    for q in range(n):
        cols.append(q)
        cols.append(n + q)
    return cols


def canonical_form(ops: Sequence[PauliOperator], n: int) -> list[PauliOperator]:
    """Reduced row-echelon form of a commuting set, carrying signs.

    Rows are combined by exact Pauli multiplication, so each canonical row is
    the signed group element with that symplectic vector. Two commuting sets
    generate the same signed group iff their canonical forms are identical.
    """
    rows = list(ops)
    out: list[PauliOperator] = []
    for col in _pivot_order(n):
        piv = next((i for i, r in enumerate(rows) if (r.symplectic() >> col) & 1), None)
        if piv is None:
            continue
        p = rows.pop(piv)
        rows = [multiply(r, p) if (r.symplectic() >> col) & 1 else r for r in rows]
        out = [multiply(r, p) if (r.symplectic() >> col) & 1 else r for r in out]
        out.append(p)
    return out


def group_equal(a: GeneratorSet, b: GeneratorSet) -> bool:
    if a.n != b.n:
        raise ValidationError(f"qubit count mismatch: {a.n} vs {b.n}")
    return canonical_form(a.generators, a.n) == canonical_form(b.generators, b.n)


def unsigned_group_equal(a: GeneratorSet, b: GeneratorSet) -> bool:
    """Same group once all generator signs are dropped."""
    if a.n != b.n:
        raise ValidationError(f"qubit count mismatch: {a.n} vs {b.n}")
    ca = [g.unsigned() for g in canonical_form([g.unsigned() for g in a], a.n)]
    cb = [g.unsigned() for g in canonical_form([g.unsigned() for g in b], b.n)]
    return ca == cb


def decompose(op: PauliOperator, gens: Sequence[PauliOperator]) -> list[int] | None:
    """Indices of generators whose product equals ``op`` up to phase.

    Returns ``None`` when ``op`` lies outside the unsigned span.
    """
    if not gens:
        return [] if op.x == 0 and op.z == 0 else None
    basis: list[tuple[int, int]] = []  # (reduced row, combination mask)
    for i, g in enumerate(gens):
        r, m = g.symplectic(), 1 << i
        for br, bm in basis:
            if r ^ br < r:
                r, m = r ^ br, m ^ bm
        if r:
            basis.append((r, m))
            basis.sort(reverse=True)
    target, mask = op.symplectic(), 0
    for br, bm in basis:
        if target ^ br < target:
            target, mask = target ^ br, mask ^ bm
    if target:
        return None
    return [i for i in range(len(gens)) if (mask >> i) & 1]


def signed_member(op: PauliOperator, gens: Sequence[PauliOperator], n: int) -> PauliOperator | None:
    """The group element sharing ``op``'s symplectic vector, or ``None``."""
    idx = decompose(op, gens)
    if idx is None:
        return None
    return product((gens[i] for i in idx), n)


def in_group(op: PauliOperator, s: GeneratorSet) -> bool:
    """Signed membership: ``op`` itself (with its phase) is a group element."""
    el = signed_member(op, s.generators, s.n)
    return el is not None and el.phase == op.phase
