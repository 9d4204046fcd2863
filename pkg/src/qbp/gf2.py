"""Exact linear algebra over GF(2).

Two matrix types live here. :class:`BitMatrix` stores rows as packed 64-bit
words and is used for elimination. :class:`SparseMatrix` keeps a canonical
CSR pattern (all stored entries equal one) and is what assembled check
matrices are held in.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
import scipy.sparse as sp

WORD = 64

# Switch to sparse elimination for wide, thin matrices.
SPARSE_DENSITY = 0.01
SPARSE_MIN_COLS = 4096


class DimensionError(ValueError):
    """Raised when matrix/vector shapes are incompatible."""


def _n_words(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def _pack(bits: npt.NDArray[np.uint8]) -> npt.NDArray[np.uint64]:
    """Pack a 2D 0/1 array into little-endian uint64 words per row."""
    rows, cols = bits.shape
    n_words = _n_words(cols)
    packed = np.packbits(bits.astype(np.uint8, copy=False), axis=1, bitorder="little")
    out = np.zeros((rows, n_words * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view(np.uint64).reshape(rows, n_words)


def _unpack(words: npt.NDArray[np.uint64], cols: int) -> npt.NDArray[np.uint8]:
    rows = words.shape[0]
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, count=cols, bitorder="little")


class BitMatrix:
    """Dense GF(2) matrix with bit-packed rows.

    Instances are immutable; every operation returns a new matrix.
    """

    __slots__ = ("_words", "_rows", "_cols")

    def __init__(self, words: npt.NDArray[np.uint64], cols: int) -> None:
        words = np.asarray(words, dtype=np.uint64)
        if words.ndim != 2 or words.shape[1] != _n_words(cols):
            raise DimensionError(f"word array of shape {words.shape} does not fit {cols} columns")
        tail = cols % WORD
        if tail and words.shape[0] and np.any(words[:, -1] >> np.uint64(tail)):
            raise DimensionError("bits set beyond the last column")
        words = words.copy()
        words.flags.writeable = False
        self._words = words
        self._rows = words.shape[0]
        self._cols = cols

    # construction -------------------------------------------------------

    @classmethod
    def from_dense(cls, array: npt.ArrayLike) -> BitMatrix:
        arr = np.asarray(array)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise DimensionError("expected a 2D array")
        return cls(_pack((arr & 1).astype(np.uint8)), arr.shape[1])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(np.zeros((rows, _n_words(cols)), dtype=np.uint64), cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_row_supports(cls, supports: Sequence[Iterable[int]], cols: int) -> BitMatrix:
        dense = np.zeros((len(supports), cols), dtype=np.uint8)
        for i, support in enumerate(supports):
            for j in support:
                if not 0 <= j < cols:
                    raise DimensionError(f"column {j} out of range for {cols} columns")
                dense[i, j] ^= 1
        return cls.from_dense(dense)

    # accessors ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def words(self) -> npt.NDArray[np.uint64]:
        return self._words

    def to_dense(self) -> npt.NDArray[np.uint8]:
        if self._rows == 0:
            return np.zeros((0, self._cols), dtype=np.uint8)
        return _unpack(self._words, self._cols)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(index)
        return int((self._words[i, j // WORD] >> np.uint64(j % WORD)) & np.uint64(1))

    def row_support(self, i: int) -> list[int]:
        return np.flatnonzero(_unpack(self._words[i : i + 1], self._cols)[0]).tolist()

    def row_weights(self) -> npt.NDArray[np.int64]:
        return np.bitwise_count(self._words).sum(axis=1).astype(np.int64)

    @property
    def T(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if other.cols != self._cols:
            raise DimensionError(f"cannot stack {self.shape} on {other.shape}")
        return BitMatrix(np.vstack([self._words, other._words]), self._cols)

    def is_zero(self) -> bool:
        return not np.any(self._words)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._words, other._words)

    def __hash__(self) -> int:
        return hash((self.shape, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self._rows}x{self._cols})"


class SparseMatrix:
    """GF(2) matrix stored as a canonical CSR pattern with implicit ones."""

    __slots__ = ("_csr",)

    def __init__(self, csr: sp.csr_matrix) -> None:
        csr = sp.csr_matrix(csr, dtype=np.int64, copy=True)
        csr.sum_duplicates()
        csr.data %= 2
        csr.eliminate_zeros()
        csr.sort_indices()
        csr.data = np.ones_like(csr.data, dtype=np.uint8)
        self._csr = csr

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> SparseMatrix:
        """Build from (row, col) positions; duplicates are rejected."""
        entries = list(entries)
        if len(set(entries)) != len(entries):
            raise ValueError("duplicate positions")
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionError(f"position {(r, c)} outside {rows}x{cols}")
        if entries:
            r_idx, c_idx = np.array(entries, dtype=np.int64).T
        else:
            r_idx = c_idx = np.zeros(0, dtype=np.int64)
        data = np.ones(len(entries), dtype=np.int64)
        return cls(sp.csr_matrix((data, (r_idx, c_idx)), shape=(rows, cols)))

    @classmethod
    def from_dense(cls, array: npt.ArrayLike) -> SparseMatrix:
        arr = np.asarray(array, dtype=np.int64) & 1
        return cls(sp.csr_matrix(arr))

    @classmethod
    def from_row_supports(cls, supports: Sequence[Iterable[int]], cols: int) -> SparseMatrix:
        """Rows given as column lists; repeated columns cancel mod 2."""
        indptr = [0]
        indices: list[int] = []
        for support in supports:
            indices.extend(support)
            indptr.append(len(indices))
        data = np.ones(len(indices), dtype=np.int64)
        return cls(sp.csr_matrix((data, indices, indptr), shape=(len(supports), cols)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> SparseMatrix:
        return cls(sp.csr_matrix((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(sp.identity(n, dtype=np.int64, format="csr"))

    @property
    def rows(self) -> int:
        return self._csr.shape[0]

    @property
    def cols(self) -> int:
        return self._csr.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._csr.shape

    @property
    def nnz(self) -> int:
        return self._csr.nnz

    @property
    def csr(self) -> sp.csr_matrix:
        return self._csr.copy()

    @property
    def entries(self) -> set[tuple[int, int]]:
        coo = self._csr.tocoo()
        return set(zip(coo.row.tolist(), coo.col.tolist()))

    def row_support(self, i: int) -> list[int]:
        start, stop = self._csr.indptr[i], self._csr.indptr[i + 1]
        return self._csr.indices[start:stop].tolist()

    def row_supports(self) -> list[list[int]]:
        return [self.row_support(i) for i in range(self.rows)]

    def row_weights(self) -> npt.NDArray[np.int64]:
        return np.diff(self._csr.indptr).astype(np.int64)

    def col_weights(self) -> npt.NDArray[np.int64]:
        return np.bincount(self._csr.indices, minlength=self.cols).astype(np.int64)

    @property
    def density(self) -> float:
        size = self.rows * self.cols
        return self.nnz / size if size else 0.0

    @property
    def T(self) -> SparseMatrix:
        return SparseMatrix(self._csr.T)

    def to_dense(self) -> npt.NDArray[np.uint8]:
        return self._csr.toarray().astype(np.uint8)

    def to_bitmatrix(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense())

    def is_zero(self) -> bool:
        return self.nnz == 0

    def select_rows(self, index: Sequence[int]) -> SparseMatrix:
        return SparseMatrix(self._csr[np.asarray(index, dtype=np.int64)])

    def permute_cols(self, perm: Sequence[int]) -> SparseMatrix:
        """Return the matrix whose column ``perm[j]`` is column ``j`` of self."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.cols)):
            raise ValueError("column map is not a permutation")
        coo = self._csr.tocoo()
        return SparseMatrix(sp.csr_matrix((coo.data, (coo.row, perm[coo.col])), shape=self.shape))

    def vstack(self, other: SparseMatrix) -> SparseMatrix:
        if other.cols != self.cols:
            raise DimensionError(f"cannot stack {self.shape} on {other.shape}")
        return SparseMatrix(sp.vstack([self._csr, other._csr], format="csr"))

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        if other.shape != self.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return SparseMatrix(self._csr.astype(np.int64) + other._csr.astype(np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.shape != other.shape or self.nnz != other.nnz:
            return False
        return (
            np.array_equal(self._csr.indptr, other._csr.indptr)
            and np.array_equal(self._csr.indices, other._csr.indices)
        )

    def __hash__(self) -> int:
        return hash((self.shape, self._csr.indptr.tobytes(), self._csr.indices.tobytes()))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


Matrix = BitMatrix | SparseMatrix


class RrefResult(NamedTuple):
    reduced: BitMatrix
    pivot_cols: list[int]
    rank: int


def _as_bitmatrix(m: Matrix) -> BitMatrix:
    return m.to_bitmatrix() if isinstance(m, SparseMatrix) else m


def _eliminate(words: npt.NDArray[np.uint64], cols: int, full: bool) -> list[int]:
    """Gauss-Jordan elimination in place; returns pivot columns.

    With ``full=False`` only rows below each pivot are cleared (echelon
    form), which is enough for rank and pivot positions.
    """
    n_rows = words.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == n_rows:
            break
        w = c // WORD
        shift = np.uint64(c % WORD)
        hits = np.flatnonzero((words[r:, w] >> shift) & np.uint64(1))
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        if full:
            clear = np.flatnonzero((words[:, w] >> shift) & np.uint64(1))
            clear = clear[clear != r]
        else:
            clear = r + 1 + np.flatnonzero((words[r + 1 :, w] >> shift) & np.uint64(1))
        if clear.size:
            words[clear, w:] ^= words[r, w:]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> RrefResult:
    """Reduced row-echelon form with first-nonzero column pivoting.

    The reduced matrix keeps only the ``rank`` nonzero rows.
    """
    bm = _as_bitmatrix(m)
    words = np.array(bm.words, copy=True)
    pivots = _eliminate(words, bm.cols, full=True)
    reduced = BitMatrix(words[: len(pivots)], bm.cols)
    return RrefResult(reduced, pivots, len(pivots))


def _sparse_pivots(m: SparseMatrix) -> list[int]:
    # Each row becomes a Python int; leading bit = lowest column index.
    # The set of leading positions of any echelon basis equals the rref pivots.
    basis: dict[int, int] = {}
    for support in m.row_supports():
        v = 0
        for c in support:
            v ^= 1 << c
        while v:
            low = (v & -v).bit_length() - 1
            piv = basis.get(low)
            if piv is None:
                basis[low] = v
                break
            v ^= piv
    return sorted(basis)


def pivot_columns(m: Matrix) -> list[int]:
    """Pivot columns of rref(m), picking the cheaper elimination path."""
    if (
        isinstance(m, SparseMatrix)
        and m.cols > SPARSE_MIN_COLS
        and m.density < SPARSE_DENSITY
    ):
        return _sparse_pivots(m)
    bm = _as_bitmatrix(m)
    words = np.array(bm.words, copy=True)
    return _eliminate(words, bm.cols, full=False)


def rank(m: Matrix) -> int:
    return len(pivot_columns(m))


def nullspace_basis(m: Matrix) -> BitMatrix:
    """Basis of {v : m v = 0}, one basis vector per free column."""
    result = rref(m)
    cols = _as_bitmatrix(m).cols
    pivots = result.pivot_cols
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            reduced = result.reduced.to_dense()
            basis[:, pivots] = reduced[:, free].T
    return BitMatrix.from_dense(basis) if free else BitMatrix.zeros(0, cols)


def rowspace_contains(m: Matrix, v: npt.ArrayLike) -> bool:
    bm = _as_bitmatrix(m)
    vec = np.asarray(v).reshape(-1)
    if vec.size != bm.cols:
        raise DimensionError(f"vector of length {vec.size} vs {bm.cols} columns")
    if not np.any(vec & 1):
        return True
    return rank(bm.vstack(BitMatrix.from_dense(vec))) == rank(bm)


def rowspace_equal(a: Matrix, b: Matrix) -> bool:
    if a.cols != b.cols:
        raise DimensionError(f"column mismatch: {a.cols} vs {b.cols}")
    if isinstance(a, SparseMatrix) and isinstance(b, SparseMatrix):
        stacked: Matrix = a.vstack(b)
    else:
        stacked = _as_bitmatrix(a).vstack(_as_bitmatrix(b))
    ra = rank(a)
    return ra == rank(b) and rank(stacked) == ra


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """GF(2) product; sparse if both operands are sparse, dense otherwise."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if isinstance(a, SparseMatrix) and isinstance(b, SparseMatrix):
        return SparseMatrix(a.csr.astype(np.int64) @ b.csr.astype(np.int64))
    # float64 products are exact while inner sums stay below 2**53
    da = _as_bitmatrix(a).to_dense().astype(np.float64)
    db = _as_bitmatrix(b).to_dense().astype(np.float64)
    prod = (da @ db).astype(np.int64) & 1
    return BitMatrix.from_dense(prod.reshape(a.rows, b.cols))
