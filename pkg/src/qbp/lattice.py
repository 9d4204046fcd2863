"""Direct hypercubic-lattice constructions used as ground truth.

Cells of the periodic ``D``-dimensional lattice of linear size ``L`` are
labeled by their direction set ``A`` and base corner ``x``; the cell spans
``x + sum(s_i e_i for i in A)`` with ``0 <= s_i <= 1``. Directions are
1-based.

Tetra-digit codes ``[d_n, d_s, d_l, D]`` put qubits on ``d_s``-cells, one
X-check on every ``D``-cell and, for every ``d_n``-cell and every
``d_l``-dimensional direction superset of it, one Z-check on the incident
``d_s``-cells lying inside that superset.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from math import comb
from typing import NamedTuple

import numpy as np

from qbp.assembly import CssCode, InternalInconsistencyError, TensorBasisIndex
from qbp.gf2 import SparseMatrix, rowspace_equal

AXIS_NAMES = "xyzw"


class InvalidLabelError(ValueError):
    pass


class TdLabel(NamedTuple):
    d_n: int
    d_s: int
    d_l: int
    D: int

    def __str__(self) -> str:
        return f"[{self.d_n},{self.d_s},{self.d_l},{self.D}]"


def _axis(i: int, dim: int) -> str:
    return AXIS_NAMES[i - 1] if dim <= len(AXIS_NAMES) else f"a{i}"


class CellIndex(NamedTuple):
    directions: tuple[int, ...]
    position: tuple[int, ...]

    def render(self) -> str:
        dim = len(self.position)
        dirs = ",".join(_axis(i, dim) for i in self.directions)
        pos = ",".join(str(v) for v in self.position)
        return f"A={{{dirs}}}@({pos})"

    def __str__(self) -> str:
        return self.render()


class CellLattice:
    """Canonical enumeration of the ``k``-cells of a periodic lattice."""

    def __init__(self, dim: int, size: int) -> None:
        if size < 2:
            raise ValueError(f"lattice size must be at least 2, got {size}")
        self.dim = dim
        self.size = size
        self.volume = size**dim

    def direction_sets(self, k: int) -> list[tuple[int, ...]]:
        return list(itertools.combinations(range(1, self.dim + 1), k))

    def count(self, k: int) -> int:
        return comb(self.dim, k) * self.volume

    def cells(self, k: int) -> list[CellIndex]:
        positions = list(itertools.product(range(self.size), repeat=self.dim))
        return [CellIndex(a, pos) for a in self.direction_sets(k) for pos in positions]

    def index(self, cell: CellIndex) -> int:
        k = len(cell.directions)
        block = self.direction_sets(k).index(tuple(cell.directions))
        flat = int(np.ravel_multi_index(tuple(v % self.size for v in cell.position), (self.size,) * self.dim))
        return block * self.volume + flat

    def _shift(self, pos: Sequence[int], dirs: Sequence[int], signs: Sequence[int]) -> tuple[int, ...]:
        out = list(pos)
        for d, s in zip(dirs, signs):
            out[d - 1] = (out[d - 1] + s) % self.size
        return tuple(out)

    def faces(self, cell: CellIndex, k: int) -> list[CellIndex]:
        """``k``-cells in the boundary closure of ``cell``."""
        out = []
        for sub in itertools.combinations(cell.directions, k):
            dropped = [d for d in cell.directions if d not in sub]
            for signs in itertools.product((0, 1), repeat=len(dropped)):
                out.append(CellIndex(sub, self._shift(cell.position, dropped, signs)))
        return out

    def cofaces(self, cell: CellIndex, k: int, within: Sequence[int] | None = None) -> list[CellIndex]:
        """``k``-cells having ``cell`` in their closure, optionally with
        directions restricted to ``within``."""
        allowed = sorted(within) if within is not None else list(range(1, self.dim + 1))
        extra_pool = [d for d in allowed if d not in cell.directions]
        out = []
        for extra in itertools.combinations(extra_pool, k - len(cell.directions)):
            dirs = tuple(sorted(cell.directions + extra))
            for signs in itertools.product((0, -1), repeat=len(extra)):
                out.append(CellIndex(dirs, self._shift(cell.position, extra, signs)))
        return out


def _check_label(label: TdLabel) -> None:
    d_n, d_s, d_l, dim = label
    if not (0 <= d_n < d_s < d_l <= dim):
        raise InvalidLabelError(f"label {list(label)} violates 0 <= d_n < d_s < d_l <= D")


def td_valid(label: Sequence[int]) -> bool:
    """Commutation condition: C(d_l - d_n, d_s - d_n) is even."""
    label = TdLabel(*label)
    _check_label(label)
    return comb(label.d_l - label.d_n, label.d_s - label.d_n) % 2 == 0


def _rows_from_cells(lattice: CellLattice, groups: list[list[CellIndex]], n: int) -> SparseMatrix:
    return SparseMatrix.from_row_supports([[lattice.index(c) for c in g] for g in groups], n)


def td_build(label: Sequence[int], size: int) -> CssCode:
    label = TdLabel(*label)
    if not td_valid(label):
        raise InvalidLabelError(f"label {label} does not give commuting checks")
    d_n, d_s, d_l, dim = label
    lattice = CellLattice(dim, size)
    qubits = lattice.cells(d_s)
    n = len(qubits)

    x_groups = [lattice.faces(cell, d_s) for cell in lattice.cells(dim)]
    z_groups = []
    z_labels = []
    for cell in lattice.cells(d_n):
        rest = [d for d in range(1, dim + 1) if d not in cell.directions]
        for extra in itertools.combinations(rest, d_l - d_n):
            plane = tuple(sorted(cell.directions + extra))
            z_groups.append(lattice.cofaces(cell, d_s, within=plane))
            z_labels.append((cell, plane))

    code = CssCode(
        _rows_from_cells(lattice, x_groups, n),
        _rows_from_cells(lattice, z_groups, n),
        tuple(qubits),
        tuple(lattice.cells(dim)),
        meta={"label": list(label), "L": size, "z_check_labels": z_labels},
    )
    if not code.commutes():
        raise InternalInconsistencyError(f"TD code {label} does not commute")
    return code


def toric_build(dim: int, k: int, size: int) -> CssCode:
    """Cellular code with qubits on ``k``-cells, X-checks on ``(k-1)``-cells
    and Z-checks on ``(k+1)``-cells."""
    if not 1 <= k <= dim - 1:
        raise ValueError(f"need 1 <= k <= dim-1, got k={k}, dim={dim}")
    lattice = CellLattice(dim, size)
    qubits = lattice.cells(k)
    n = len(qubits)
    x_groups = [lattice.cofaces(cell, k) for cell in lattice.cells(k - 1)]
    z_groups = [lattice.faces(cell, k) for cell in lattice.cells(k + 1)]
    code = CssCode(
        _rows_from_cells(lattice, x_groups, n),
        _rows_from_cells(lattice, z_groups, n),
        tuple(qubits),
        tuple(lattice.cells(k - 1)),
        meta={"toric": [dim, k], "L": size},
    )
    if not code.commutes():
        raise InternalInconsistencyError(f"toric code dim={dim}, k={k} does not commute")
    return code


def dual_map(cell: CellIndex, dim: int) -> CellIndex:
    """Complement the direction set; the position is kept."""
    dirs = tuple(d for d in range(1, dim + 1) if d not in cell.directions)
    return CellIndex(dirs, tuple(cell.position))


def qbp_cell(label: TensorBasisIndex) -> CellIndex:
    """Lattice cell of a tensor-basis element for repetition-code inputs.

    Bit ``b`` of the cyclic repetition code joins checks ``b-1`` and ``b``,
    so the cell extends from ``locals - e_S`` to ``locals``; the returned
    position is ``locals`` itself (the dual-lattice convention).
    """
    return CellIndex(tuple(label.direction_set), tuple(label.locals))


def dual_bijection(qbp: CssCode, td: CssCode, size: int) -> list[int]:
    """Qubit map from a QBP code on repetition codes to a TD code on the dual lattice."""
    dim = len(qbp.qubit_labels[0].locals)
    lattice = CellLattice(dim, size)
    return [lattice.index(dual_map(qbp_cell(lbl), dim)) for lbl in qbp.qubit_labels]


def direct_bijection(qbp: CssCode, lattice_code: CssCode, size: int) -> list[int]:
    """Qubit map from a QBP code on repetition codes to the same-lattice cell code."""
    dim = len(qbp.qubit_labels[0].locals)
    lattice = CellLattice(dim, size)
    out = []
    for lbl in qbp.qubit_labels:
        corner = list(lbl.locals)
        for d in lbl.direction_set:
            corner[d - 1] -= 1
        out.append(lattice.index(CellIndex(tuple(lbl.direction_set), tuple(corner))))
    return out


def codes_equivalent(a: CssCode, b: CssCode, qubit_bijection: Sequence[int] | None = None) -> bool:
    """Stabilizer groups coincide after mapping qubit ``i`` of ``a`` to
    ``qubit_bijection[i]`` of ``b``. Codes of different length are never
    equivalent."""
    if a.n_qubits != b.n_qubits:
        return False
    perm = list(range(a.n_qubits)) if qubit_bijection is None else list(qubit_bijection)
    if len(perm) != a.n_qubits or sorted(perm) != list(range(a.n_qubits)):
        raise ValueError("qubit bijection is not a permutation of the qubit indices")
    # column perm[j] of b becomes column j
    inverse = np.argsort(perm)
    bx = b.h_x.permute_cols(inverse)
    bz = b.h_z.permute_cols(inverse)
    return rowspace_equal(a.h_x, bx) and rowspace_equal(a.h_z, bz)
