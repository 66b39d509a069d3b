"""GF(2) linear algebra on rows packed into Python integers."""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np


def reduce_rows(rows: Iterable[int]) -> list[int]:
    """Echelon basis of the span, leading bits distinct and descending."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(reduce_rows(rows))


def in_span(v: int, basis: Sequence[int]) -> bool:
    """``basis`` must come from :func:`reduce_rows`."""
    for b in basis:
        v = min(v, v ^ b)
    return v == 0


def same_span(a: Iterable[int], b: Iterable[int]) -> bool:
    return fully_reduced(reduce_rows(a)) == fully_reduced(reduce_rows(b))


def fully_reduced(basis: Sequence[int]) -> list[int]:
    """Reduced row echelon form (unique per span)."""
    out = list(basis)
    for i in range(len(out)):
        b = out[i]
        top = b.bit_length() - 1
        for j in range(len(out)):
            if j != i and (out[j] >> top) & 1:
                out[j] ^= b
    return sorted(out, reverse=True)


def span_elements(rows: Iterable[int]) -> list[int]:
    """Every vector in the span, ascending."""
    basis = reduce_rows(rows)
    out = set()
    for bits in itertools.product((0, 1), repeat=len(basis)):
        v = 0
        for take, b in zip(bits, basis):
            if take:
                v ^= b
        out.add(v)
    return sorted(out)


def solve(rows: Sequence[int], rhs: Sequence[int], nbits: int) -> tuple[int, list[int]] | None:
    """Solve ``popcount(row_i & v) = rhs_i (mod 2)`` for ``v``.

    Returns a particular solution (free variables zero) and a basis of the
    null space, or ``None`` if the system is inconsistent.
    """
    aug = list(zip(rows, rhs))
    pivots: list[tuple[int, int, int]] = []  # (column, row, rhs)
    for col in range(nbits):
        hit = next((k for k, (r, _) in enumerate(aug) if (r >> col) & 1), None)
        if hit is None:
            continue
        pr, pb = aug.pop(hit)
        aug = [(r ^ pr, b ^ pb) if (r >> col) & 1 else (r, b) for r, b in aug]
        pivots = [(c, r ^ pr, b ^ pb) if (r >> col) & 1 else (c, r, b) for c, r, b in pivots]
        pivots.append((col, pr, pb))
    if any(b for _, b in aug):
        return None
    pivot_cols = {c for c, _, _ in pivots}
    particular = 0
    for c, _, b in pivots:
        if b:
            particular |= 1 << c
    null = []
    for free in range(nbits):
        if free in pivot_cols:
            continue
        v = 1 << free
        for c, r, _ in pivots:
            if (r >> free) & 1:
                v |= 1 << c
        null.append(v)
    return particular, null


def pack(row: Sequence[int]) -> int:
    """Entry ``j`` of ``row`` becomes bit ``j``."""
    return sum(1 << j for j, b in enumerate(row) if int(b) & 1)


def unpack(v: int, width: int) -> np.ndarray:
    return np.array([(v >> j) & 1 for j in range(width)], dtype=np.uint8)


def matrix_rows(m: np.ndarray) -> list[int]:
    return [pack(r) for r in np.asarray(m)]
