"""Explicit CSS codes from symbolic boundary polynomials.

Chains of degree ``k`` of the tensor product of ``p`` classical codes are
indexed by a direction set ``S`` (the factors contributing bits) and one
local index per factor: a bit index for factors in ``S`` and a check index
for the others. Sectors are ordered lexicographically by ``S``; inside a
sector the local indices run in row-major mixed radix with factor 1 most
significant.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from qbp.gf2 import SparseMatrix, matmul
from qbp.poly import BoundaryPolynomial, elementary_symmetric, monomial_indices, render
from qbp.solver import ForkComplexSpec, solve_fork, x_boundary


class InternalInconsistencyError(RuntimeError):
    """Assembled checks fail to commute. Indicates a bug, never bad input."""


@dataclass(frozen=True)
class ClassicalCode:
    """Parity-check matrix with checks as rows and bits as columns."""

    h: SparseMatrix
    name: str = ""

    @property
    def n_bits(self) -> int:
        return self.h.cols

    @property
    def n_checks(self) -> int:
        return self.h.rows

    @classmethod
    def repetition(cls, length: int) -> ClassicalCode:
        """Cyclic repetition code: check ``i`` couples bits ``i`` and ``i+1 mod L``."""
        if length < 2:
            raise ValueError(f"repetition length must be at least 2, got {length}")
        supports = [[i, (i + 1) % length] for i in range(length)]
        return cls(SparseMatrix.from_row_supports(supports, length), f"rep:{length}")


class TensorBasisIndex(NamedTuple):
    direction_set: tuple[int, ...]
    locals: tuple[int, ...]

    def __str__(self) -> str:
        dirs = ",".join(str(i) for i in self.direction_set)
        return f"S={{{dirs}}}@{self.locals}"


def _radices(codes: Sequence[ClassicalCode], sector: tuple[int, ...]) -> list[int]:
    chosen = set(sector)
    return [c.n_bits if i + 1 in chosen else c.n_checks for i, c in enumerate(codes)]


class _Layout:
    """Offsets of each sector of a fixed degree."""

    def __init__(self, codes: Sequence[ClassicalCode], degree: int) -> None:
        p = len(codes)
        if not 0 <= degree <= p:
            raise ValueError(f"degree {degree} outside 0..{p}")
        self.sectors = list(itertools.combinations(range(1, p + 1), degree))
        self.offset: dict[tuple[int, ...], int] = {}
        self.size: dict[tuple[int, ...], int] = {}
        total = 0
        for s in self.sectors:
            self.offset[s] = total
            self.size[s] = int(np.prod(_radices(codes, s), dtype=np.int64))
            total += self.size[s]
        self.total = total


def basis_size(codes: Sequence[ClassicalCode], degree: int) -> int:
    return _Layout(codes, degree).total


def enumerate_basis(codes: Sequence[ClassicalCode], degree: int) -> list[TensorBasisIndex]:
    layout = _Layout(codes, degree)
    out = []
    for s in layout.sectors:
        ranges = [range(r) for r in _radices(codes, s)]
        out.extend(TensorBasisIndex(s, loc) for loc in itertools.product(*ranges))
    return out


def _monomial_block(
    codes: Sequence[ClassicalCode], mono: tuple[int, ...], sector: tuple[int, ...]
) -> sp.csr_matrix:
    """Action of one monomial on one sector, as a Kronecker product."""
    block = sp.identity(1, dtype=np.int64, format="csr")
    chosen = set(sector)
    acting = set(mono)
    for i, code in enumerate(codes, start=1):
        if i in acting:
            factor = code.h.csr.astype(np.int64)
        elif i in chosen:
            factor = sp.identity(code.n_bits, dtype=np.int64, format="csr")
        else:
            factor = sp.identity(code.n_checks, dtype=np.int64, format="csr")
        block = sp.kron(block, factor, format="csr")
    return block


def _instantiate_sectors(
    f: BoundaryPolynomial,
    codes: Sequence[ClassicalCode],
    from_degree: int,
    sectors: Sequence[tuple[int, ...]],
) -> sp.csr_matrix:
    p = len(codes)
    if not f.is_zero and f.support and max(f.support) > p:
        raise ValueError(f"polynomial uses variables beyond d{p}")
    if not f.degree <= from_degree <= p:
        raise ValueError(
            f"cannot apply a degree-{f.degree} polynomial to degree-{from_degree} chains (p={p})"
        )
    src = _Layout(codes, from_degree)
    dst = _Layout(codes, from_degree - f.degree)
    col_offsets = {}
    n_cols = 0
    for s in sectors:
        col_offsets[s] = n_cols
        n_cols += src.size[s]
    rows, cols = [], []
    for s in sectors:
        for m in f.sorted_terms():
            mono = monomial_indices(m)
            if not set(mono) <= set(s):
                # boundaries of checks vanish
                continue
            target = tuple(i for i in s if i not in mono)
            coo = _monomial_block(codes, mono, s).tocoo()
            keep = coo.data % 2 == 1
            rows.append(coo.row[keep] + dst.offset[target])
            cols.append(coo.col[keep] + col_offsets[s])
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    data = np.ones(r.size, dtype=np.int64)
    return sp.csr_matrix((data, (r, c)), shape=(dst.total, n_cols))


def instantiate(
    f: BoundaryPolynomial, codes: Sequence[ClassicalCode], from_degree: int
) -> SparseMatrix:
    """Matrix of ``f`` from degree-``from_degree`` chains to degree ``from_degree - deg f``.

    Rows index the target basis and columns the source basis, both in
    :func:`enumerate_basis` order.
    """
    layout = _Layout(codes, from_degree)
    return SparseMatrix(_instantiate_sectors(f, codes, from_degree, layout.sectors))


@dataclass(frozen=True)
class ZBlock:
    support: tuple[int, ...]
    generator_index: int
    generator: str
    start: int
    stop: int


@dataclass(frozen=True)
class CssCode:
    """CSS code; ``h_x`` and ``h_z`` both have one column per qubit."""

    h_x: SparseMatrix
    h_z: SparseMatrix
    qubit_labels: tuple = ()
    x_check_labels: tuple = ()
    z_blocks: tuple[ZBlock, ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.h_x.cols != self.h_z.cols:
            raise ValueError(f"h_x has {self.h_x.cols} columns, h_z has {self.h_z.cols}")
        if self.qubit_labels and len(self.qubit_labels) != self.n_qubits:
            raise ValueError("qubit label count does not match qubit count")
        if self.x_check_labels and len(self.x_check_labels) != self.h_x.rows:
            raise ValueError("X-check label count does not match h_x rows")
        if self.z_blocks and self.z_blocks[-1].stop != self.h_z.rows:
            raise ValueError("Z-block ranges do not cover h_z")

    @property
    def n_qubits(self) -> int:
        return self.h_x.cols

    @property
    def z_block_labels(self) -> list[tuple[tuple[int, ...], int]]:
        """``(support, generator index)`` for each row of ``h_z``."""
        out = []
        for block in self.z_blocks:
            out.extend([(block.support, block.generator_index)] * (block.stop - block.start))
        return out

    def commutes(self) -> bool:
        return matmul(self.h_x, self.h_z.T).is_zero()


def build_css(spec: ForkComplexSpec, codes: Sequence[ClassicalCode]) -> CssCode:
    if len(codes) != spec.p:
        raise ValueError(f"expected {spec.p} input codes, got {len(codes)}")
    p, q, w = spec.p, spec.q, spec.w
    h_x = instantiate(x_boundary(p, q, w), codes, q)
    blocks: list[sp.csr_matrix] = []
    z_blocks: list[ZBlock] = []
    start = 0
    for t, subset, gi, g in spec.embedded_generators():
        mat = _instantiate_sectors(g, codes, t, [subset])
        blocks.append(mat.T.tocsr())
        stop = start + mat.shape[1]
        z_blocks.append(ZBlock(subset, gi, render(g), start, stop))
        start = stop
    if blocks:
        h_z = SparseMatrix(sp.vstack(blocks, format="csr"))
    else:
        h_z = SparseMatrix.zeros(0, h_x.cols)
    code = CssCode(
        h_x,
        h_z,
        tuple(enumerate_basis(codes, q)),
        tuple(enumerate_basis(codes, w)),
        tuple(z_blocks),
        {"p": p, "q": q, "w": w},
    )
    if not code.commutes():
        raise InternalInconsistencyError(f"X- and Z-checks of ({p},{q},{w}) do not commute")
    return code


def hgp_reference(codes: Sequence[ClassicalCode], q: int) -> CssCode:
    """Segment ``C_{q+1} -> C_q -> C_{q-1}`` of the tensor-product complex."""
    p = len(codes)
    if not 1 <= q <= p - 1:
        raise ValueError(f"need 1 <= q <= p-1, got q={q}, p={p}")
    boundary = elementary_symmetric(p, 1)
    h_x = instantiate(boundary, codes, q)
    h_z = instantiate(boundary, codes, q + 1).T
    return CssCode(
        h_x,
        h_z,
        tuple(enumerate_basis(codes, q)),
        tuple(enumerate_basis(codes, q - 1)),
        meta={"p": p, "q": q, "w": q - 1, "reference": "hgp"},
    )


@functools.cache
def _solve_cached(p: int, q: int, w: int) -> ForkComplexSpec:
    return solve_fork(p, q, w)


def qbp_code(p: int, q: int, w: int, codes: Sequence[ClassicalCode]) -> CssCode:
    """Solve the triple (memoized) and assemble it on ``codes``."""
    return build_css(_solve_cached(p, q, w), codes)
