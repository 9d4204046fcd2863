"""Code parameters: logical count, distances and parameter sweeps."""

from __future__ import annotations

import csv
import io
import logging
import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from qbp.assembly import ClassicalCode, CssCode, qbp_code
from qbp.gf2 import BitMatrix, _eliminate, _pack, _unpack, nullspace_basis, pivot_columns, rank

logger = logging.getLogger(__name__)

Side = Literal["X", "Z"]
INFINITY = math.inf
DEFAULT_MAX_KERNEL_DIM = 28
_TABLE_BITS = 16


class KernelTooLargeError(ValueError):
    """Exact enumeration refused; fall back to :func:`distance_estimate`."""


class NoLogicalsError(ValueError):
    pass


@dataclass(frozen=True)
class Exactness:
    kind: Literal["exact", "upper-bound"]
    trials: int | None = None
    seed: int | None = None

    def __str__(self) -> str:
        if self.kind == "exact":
            return "exact"
        return f"upper-bound(trials={self.trials};seed={self.seed})"


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d_x: float
    d_z: float
    d_x_exactness: Exactness
    d_z_exactness: Exactness

    @property
    def d(self) -> float:
        return min(self.d_x, self.d_z)

    def to_dict(self) -> dict:
        def num(v: float) -> int | str:
            return "inf" if v == INFINITY else int(v)

        return {
            "n": self.n,
            "k": self.k,
            "d": num(self.d),
            "d_x": num(self.d_x),
            "d_z": num(self.d_z),
            "d_x_exactness": str(self.d_x_exactness),
            "d_z_exactness": str(self.d_z_exactness),
        }


def logical_count(code: CssCode) -> int:
    return code.n_qubits - rank(code.h_x) - rank(code.h_z)


class _LogicalSetup:
    """Kernel basis of the commuting-side checks plus a logical syndrome map.

    For side Z the candidates are ``ker(h_x)`` and a vector is trivial iff
    it lies in ``rowspace(h_z)``, i.e. iff it is orthogonal to
    ``ker(h_z)``. ``syndrome[:, j]`` (k bits) is nonzero exactly when basis
    vector ``j`` carries a nontrivial logical component, and the map is
    linear in the combination coefficients.
    """

    def __init__(self, code: CssCode, side: Side) -> None:
        if side not in ("X", "Z"):
            raise ValueError(f"side must be 'X' or 'Z', got {side!r}")
        commute_with, stabilizers = (code.h_x, code.h_z) if side == "Z" else (code.h_z, code.h_x)
        self.n = code.n_qubits
        self.kernel = nullspace_basis(commute_with)
        dual = nullspace_basis(stabilizers).to_dense().astype(np.float64)
        kern = self.kernel.to_dense().astype(np.float64)
        pairing = (dual @ kern.T).astype(np.int64) & 1
        independent = pivot_columns(BitMatrix.from_dense(pairing.T)) if pairing.size else []
        self.syndrome = pairing[independent].astype(np.uint8)
        self.k = len(independent)

    @property
    def dim(self) -> int:
        return self.kernel.rows


def distance_exact(
    code: CssCode, side: Side, max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM
) -> float:
    """Minimum weight of a nontrivial logical of the given Pauli type.

    Enumerates every combination of a kernel basis. Returns ``INFINITY``
    when the code has no logical qubits.
    """
    setup = _LogicalSetup(code, side)
    if setup.k == 0:
        return INFINITY
    if setup.dim > max_kernel_dim:
        raise KernelTooLargeError(
            f"kernel dimension {setup.dim} exceeds exact-enumeration limit {max_kernel_dim}"
        )
    vecs = setup.kernel.words
    syn = _pack(setup.syndrome.T.copy())
    lo = min(setup.dim, _TABLE_BITS)
    # table of all 2**lo combinations of the first lo basis vectors
    table_v = np.zeros((1 << lo, vecs.shape[1]), dtype=np.uint64)
    table_s = np.zeros((1 << lo, syn.shape[1]), dtype=np.uint64)
    for b in range(lo):
        size = 1 << b
        table_v[size : 2 * size] = table_v[:size] ^ vecs[b]
        table_s[size : 2 * size] = table_s[:size] ^ syn[b]
    best = INFINITY
    cur_v = np.zeros(vecs.shape[1], dtype=np.uint64)
    cur_s = np.zeros(syn.shape[1], dtype=np.uint64)
    high = setup.dim - lo
    for step in range(1 << high):
        if step:
            # Gray code: flip the basis vector at the lowest set bit of step
            b = lo + (step & -step).bit_length() - 1
            cur_v ^= vecs[b]
            cur_s ^= syn[b]
        nontrivial = np.any(table_s ^ cur_s, axis=1)
        if not nontrivial.any():
            continue
        weights = np.bitwise_count(table_v[nontrivial] ^ cur_v).sum(axis=1)
        best = min(best, int(weights.min()))
    return best


def distance_estimate(code: CssCode, side: Side, trials: int, seed: int) -> int:
    """Upper bound on the distance from random information sets.

    Each trial permutes the qubits with a generator seeded by
    ``(seed, trial)``, row-reduces the kernel basis and keeps the lightest
    row with a nontrivial logical component. Trials combine by minimum, so
    the result depends only on ``(seed, trials)``.
    """
    setup = _LogicalSetup(code, side)
    if setup.k == 0:
        raise NoLogicalsError("code encodes no logical qubits")
    kern = setup.kernel.to_dense()
    best = setup.n
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        perm = rng.permutation(setup.n)
        aug = np.hstack([kern[:, perm], setup.syndrome.T])
        words = _pack(aug)
        pivots = _eliminate(words, aug.shape[1], full=True)
        reduced = _unpack(words[: len(pivots)], aug.shape[1])
        logical = reduced[:, setup.n :].any(axis=1)
        if logical.any():
            weights = reduced[logical, : setup.n].sum(axis=1)
            best = min(best, int(weights.min()))
    return best


def code_params(
    code: CssCode,
    distance: Literal["auto", "exact", "estimate"] = "auto",
    trials: int = 100,
    seed: int = 0,
    max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM,
) -> CodeParams:
    k = logical_count(code)
    values: dict[str, tuple[float, Exactness]] = {}
    for side in ("X", "Z"):
        if k == 0:
            values[side] = (INFINITY, Exactness("exact"))
            continue
        if distance in ("auto", "exact"):
            try:
                values[side] = (distance_exact(code, side, max_kernel_dim), Exactness("exact"))
                continue
            except KernelTooLargeError:
                if distance == "exact":
                    raise
                logger.info("side %s: kernel too large for enumeration, estimating", side)
        d = distance_estimate(code, side, trials, seed)
        values[side] = (d, Exactness("upper-bound", trials, seed))
    return CodeParams(
        code.n_qubits, k, values["X"][0], values["Z"][0], values["X"][1], values["Z"][1]
    )


# sweeps ---------------------------------------------------------------------

CSV_COLUMNS = [
    "family", "p", "q", "w", "L", "n", "k", "d_x", "d_z",
    "d_x_exactness", "d_z_exactness", "k_over_n", "d_over_n",
]

_NAMED_FAMILIES = {"4dtc": (4, 2, 1), "4d-tc": (4, 2, 1)}


def family_triple(family: str) -> tuple[int, int, int]:
    """QBP triple for a family name.

    Accepts TD labels ``[d_n,d_s,d_l,D]`` with consecutive first three
    entries, which come from ``(D, D - d_s, 0)``, explicit triples
    ``(p,q,w)``, and ``4dtc`` for the 4D toric code ``(4,2,1)``.
    """
    text = family.strip()
    if text.lower() in _NAMED_FAMILIES:
        return _NAMED_FAMILIES[text.lower()]
    nums = [int(v) for v in re.findall(r"-?\d+", text)]
    if text.startswith("[") and len(nums) == 4:
        d_n, d_s, d_l, dim = nums
        if not (d_s - d_n == 1 and d_l - d_s == 1 and d_l <= dim):
            raise ValueError(f"TD label {text} is not reachable as a (p,q,0) product")
        return dim, dim - d_s, 0
    if text.startswith("(") and len(nums) == 3:
        return nums[0], nums[1], nums[2]
    raise ValueError(f"unrecognised family {family!r}")


def split_families(text: str) -> list[str]:
    """Split a comma list whose items may themselves be bracketed tuples."""
    return [m.strip() for m in re.findall(r"\[[^\]]*\]|\([^)]*\)|[^,\s][^,]*", text) if m.strip()]


def _fmt(v: float) -> str:
    return "inf" if v == INFINITY else str(int(v))


def sweep_table(
    families: Iterable[str],
    size: int,
    trials: int = 20,
    seed: int = 0,
    max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM,
) -> list[dict]:
    """One row per family on repetition codes of length ``size``.

    A failing family yields a row with empty numeric fields and the error
    text in the exactness columns; the sweep carries on.
    """
    rows = []
    for family in families:
        row: dict = dict.fromkeys(CSV_COLUMNS, "")
        row["family"] = family
        row["L"] = size
        try:
            p, q, w = family_triple(family)
            row.update(p=p, q=q, w=w)
            code = qbp_code(p, q, w, [ClassicalCode.repetition(size)] * p)
            params = code_params(code, "auto", trials, seed, max_kernel_dim)
        except Exception as exc:  # recorded per row
            logger.warning("family %s failed: %s", family, exc)
            row["d_x_exactness"] = row["d_z_exactness"] = f"error: {exc}"
            rows.append(row)
            continue
        row.update(
            n=params.n,
            k=params.k,
            d_x=_fmt(params.d_x),
            d_z=_fmt(params.d_z),
            d_x_exactness=str(params.d_x_exactness),
            d_z_exactness=str(params.d_z_exactness),
            k_over_n=params.k / params.n,
            d_over_n="inf" if params.d == INFINITY else params.d / params.n,
        )
        rows.append(row)
    return rows


def table_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
