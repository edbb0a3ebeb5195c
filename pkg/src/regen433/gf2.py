"""Small GF(2) linear algebra on int bitsets.

A row vector of length ``n`` is an ``int`` whose bit ``k`` holds coordinate
``k``. A matrix is a list of such rows.
"""

from __future__ import annotations

from typing import Sequence


def bits_to_int(bits: Sequence[int]) -> int:
    v = 0
    for k, b in enumerate(bits):
        if b:
            v |= 1 << k
    return v


def int_to_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> k) & 1 for k in range(n))


def dot(row: int, vec: int) -> int:
    return bin(row & vec).count("1") & 1


def matvec(rows: Sequence[int], vec: int) -> int:
    """Multiply a matrix (list of row bitsets) by a column bitset."""
    out = 0
    for i, row in enumerate(rows):
        if dot(row, vec):
            out |= 1 << i
    return out


def rank(rows: Sequence[int]) -> int:
    work = [r for r in rows if r]
    rk = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rk += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rk


class Solver:
    """Precomputed left-solve for ``rows @ m = y`` over GF(2).

    ``rows`` must have full column rank ``n_cols``. Surplus rows are kept as
    parity checks so that an observation outside the column space is detected
    rather than silently decoded.
    """

    def __init__(self, rows: Sequence[int], n_cols: int):
        self.n_rows = len(rows)
        self.n_cols = n_cols
        # augment each row with an identity tag recording which observations it mixes
        aug = [(r, 1 << i) for i, r in enumerate(rows)]
        pivots: list[tuple[int, int, int]] = []  # (col, row, tag)
        rest = []
        for r, tag in aug:
            for col, pr, ptag in pivots:
                if (r >> col) & 1:
                    r ^= pr
                    tag ^= ptag
            if r:
                col = (r & -r).bit_length() - 1
                # keep the pivot set fully reduced
                pivots = [
                    (c, pr ^ r, pt ^ tag) if (pr >> col) & 1 else (c, pr, pt)
                    for c, pr, pt in pivots
                ]
                pivots.append((col, r, tag))
            else:
                rest.append(tag)
        if len(pivots) != n_cols:
            raise ValueError(f"matrix has rank {len(pivots)} < {n_cols}")
        # after full reduction every pivot row is a unit vector e_col
        self._recover = {col: tag for col, _, tag in pivots}
        self._checks = rest

    def solve(self, y: int) -> int | None:
        """Return m with ``rows @ m == y``, or None if y is inconsistent."""
        for tag in self._checks:
            if dot(tag, y):
                return None
        m = 0
        for col, tag in self._recover.items():
            if dot(tag, y):
                m |= 1 << col
        return m
