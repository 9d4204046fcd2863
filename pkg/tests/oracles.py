"""Brute-force reference routines, deliberately independent of ``qbp``.

Everything here works on Python ints (bit ``j`` = column ``j``) or plain
index sets and avoids the package's elimination code.
"""

from __future__ import annotations

import itertools


def to_int(row) -> int:
    v = 0
    for j, bit in enumerate(row):
        if int(bit) & 1:
            v |= 1 << j
    return v


def span(rows: list[int]) -> set[int]:
    """Every GF(2) combination of ``rows`` (exponential; tiny inputs only)."""
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out


def brute_rank(rows: list[int]) -> int:
    return len(span(rows)).bit_length() - 1


def py_rank(rows: list[int]) -> int:
    """Rank by highest-bit elimination (different pivot rule from the package)."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def in_span(v: int, rows: list[int]) -> bool:
    return py_rank(rows + [v]) == py_rank(rows)


def min_logical_weight(check_rows: list[int], stab_rows: list[int], n: int, max_weight: int) -> int | None:
    """Smallest weight of v with v.check = 0 for all checks and v outside the
    span of stabilizers, searching weights 1..max_weight."""
    for weight in range(1, max_weight + 1):
        for support in itertools.combinations(range(n), weight):
            v = 0
            for j in support:
                v |= 1 << j
            if any((v & c).bit_count() % 2 for c in check_rows):
                continue
            if not in_span(v, stab_rows):
                return weight
    return None


def sym_mul(f: set[frozenset], g: set[frozenset]) -> set[frozenset]:
    """Squarefree GF(2) product on sets of index sets."""
    out: set[frozenset] = set()
    for s in f:
        for t in g:
            if s & t:
                continue
            out ^= {s | t}
    return out
