"""File formats: alist and Matrix Market for check matrices, JSON build
metadata, and textual classical-code specs."""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from qbp.assembly import ClassicalCode, CssCode, ZBlock
from qbp.gf2 import SparseMatrix


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, source: str = "") -> None:
        where = f" at position {position}" if position is not None else ""
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{message}{where}")
        self.position = position


class CodeFileError(ParseError):
    """A code spec points at a file that cannot be read."""


# alist ------------------------------------------------------------------------


def export_alist(h: SparseMatrix) -> str:
    """MacKay alist text; index lists are 1-based and zero-padded."""
    n, m = h.cols, h.rows
    csc = h.csr.tocsc()
    csc.sort_indices()
    col_lists = [csc.indices[csc.indptr[j] : csc.indptr[j + 1]].tolist() for j in range(n)]
    row_lists = h.row_supports()
    max_col = max((len(c) for c in col_lists), default=0)
    max_row = max((len(r) for r in row_lists), default=0)

    def line(values) -> str:
        return " ".join(str(v) for v in values)

    def padded(entries, width) -> str:
        return line([e + 1 for e in entries] + [0] * (width - len(entries)))

    lines = [
        f"{n} {m}",
        f"{max_col} {max_row}",
        line(len(c) for c in col_lists),
        line(len(r) for r in row_lists),
    ]
    lines.extend(padded(c, max_col) for c in col_lists)
    lines.extend(padded(r, max_row) for r in row_lists)
    return "\n".join(lines) + "\n"


def import_alist(text: str, source: str = "") -> SparseMatrix:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def ints(i: int) -> list[int]:
        if i >= len(lines):
            raise ParseError("unexpected end of alist", i + 1, source)
        try:
            return [int(tok) for tok in lines[i].split()]
        except ValueError as exc:
            raise ParseError(f"non-integer token ({exc})", i + 1, source) from None

    header = ints(0)
    if len(header) != 2:
        raise ParseError("header must be 'n m'", 1, source)
    n, m = header
    if len(ints(1)) != 2:
        raise ParseError("second line must hold two maximum weights", 2, source)
    col_w = ints(2)
    row_w = ints(3)
    if len(col_w) != n or len(row_w) != m:
        raise ParseError("weight line lengths do not match the header", 3, source)
    entries = set()
    for j in range(n):
        idx = [v for v in ints(4 + j) if v != 0]
        if len(idx) != col_w[j]:
            raise ParseError(f"column {j + 1} weight mismatch", 5 + j, source)
        for r in idx:
            if not 1 <= r <= m:
                raise ParseError(f"row index {r} out of range", 5 + j, source)
            entries.add((r - 1, j))
    row_entries = set()
    for i in range(m):
        idx = [v for v in ints(4 + n + i) if v != 0]
        if len(idx) != row_w[i]:
            raise ParseError(f"row {i + 1} weight mismatch", 5 + n + i, source)
        row_entries.update((i, c - 1) for c in idx)
    if row_entries != entries:
        raise ParseError("row and column lists disagree", None, source)
    return SparseMatrix.from_entries(m, n, sorted(entries))


# Matrix Market ----------------------------------------------------------------


def export_mtx(h: SparseMatrix) -> str:
    coo = h.csr.tocoo()
    order = np.lexsort((coo.col, coo.row))
    lines = ["%%MatrixMarket matrix coordinate pattern general", f"{h.rows} {h.cols} {h.nnz}"]
    lines.extend(f"{coo.row[i] + 1} {coo.col[i] + 1}" for i in order)
    return "\n".join(lines) + "\n"


def import_mtx(text: str, source: str = "") -> SparseMatrix:
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("%")]
    if not body:
        raise ParseError("missing size line", None, source)
    try:
        rows, cols, nnz = (int(v) for v in body[0].split())
        entries = [tuple(int(v) - 1 for v in ln.split()[:2]) for ln in body[1:]]
    except ValueError as exc:
        raise ParseError(f"malformed Matrix Market data ({exc})", None, source) from None
    if len(entries) != nnz:
        raise ParseError(f"expected {nnz} entries, found {len(entries)}", None, source)
    return SparseMatrix.from_entries(rows, cols, entries)


_EXPORTERS = {"alist": export_alist, "mtx": export_mtx}
_IMPORTERS = {"alist": import_alist, "mtx": import_mtx}


def write_matrix(h: SparseMatrix, path: Path, fmt: str = "alist") -> None:
    Path(path).write_text(_EXPORTERS[fmt](h))


def read_matrix(path: Path, fmt: str | None = None) -> SparseMatrix:
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".")
    if fmt not in _IMPORTERS:
        raise ParseError(f"unknown matrix format {fmt!r}", None, str(path))
    return _IMPORTERS[fmt](path.read_text(), str(path))


# classical code specs ---------------------------------------------------------

_REP = re.compile(r"rep:(\d+)")
_RANDOM = re.compile(r"random:(\d+)x(\d+):(-?\d+)")


def random_code(n_bits: int, n_checks: int, seed: int) -> ClassicalCode:
    rng = np.random.default_rng(seed)
    h = rng.integers(0, 2, size=(n_checks, n_bits))
    return ClassicalCode(SparseMatrix.from_dense(h), f"random:{n_bits}x{n_checks}:{seed}")


def parse_code_spec(spec: str) -> ClassicalCode:
    """``rep:<L>``, ``alist:<path>`` or ``random:<bits>x<checks>:<seed>``."""
    text = spec.strip()
    if text.startswith("rep:"):
        match = _REP.fullmatch(text)
        if not match:
            raise ParseError("expected rep:<L>", 4, spec)
        length = int(match.group(1))
        if length < 2:
            raise ParseError("repetition length must be at least 2 (rep:1 has a zero check)", 4, spec)
        return ClassicalCode.repetition(length)
    if text.startswith("alist:"):
        path = Path(text[len("alist:") :])
        try:
            content = path.read_text()
        except OSError as exc:
            raise CodeFileError(f"cannot read {path}: {exc.strerror}", 6, spec) from None
        return ClassicalCode(import_alist(content, str(path)), text)
    if text.startswith("random:"):
        match = _RANDOM.fullmatch(text)
        if not match:
            raise ParseError("expected random:<bits>x<checks>:<seed>", 7, spec)
        n_bits, n_checks, seed = (int(g) for g in match.groups())
        if n_bits < 1 or n_checks < 1:
            raise ParseError("random code needs at least one bit and one check", 7, spec)
        return random_code(n_bits, n_checks, seed)
    raise ParseError("unknown code spec kind (use rep:, alist: or random:)", 0, spec)


def split_code_specs(text: str, count: int | None = None) -> list[str]:
    """Comma list of specs; a single spec is repeated ``count`` times."""
    specs = [s.strip() for s in text.split(",") if s.strip()]
    if count is not None and len(specs) == 1:
        specs = specs * count
    return specs


# build artifacts --------------------------------------------------------------


def code_metadata(code: CssCode, codes: list[str] | None = None) -> dict:
    meta = {
        "p": code.meta.get("p"),
        "q": code.meta.get("q"),
        "w": code.meta.get("w"),
        "n": code.n_qubits,
        "x_checks": code.h_x.rows,
        "z_checks": code.h_z.rows,
        "z_blocks": [
            {
                "support": list(b.support),
                "generator": b.generator,
                "generator_index": b.generator_index,
                "rows": [b.start, b.stop],
            }
            for b in code.z_blocks
        ],
    }
    if codes is not None:
        meta["codes"] = list(codes)
    return meta


def save_build(code: CssCode, base: Path, codes: list[str] | None = None, fmt: str = "alist") -> list[Path]:
    """Write ``<base>.hx.<fmt>``, ``<base>.hz.<fmt>`` and ``<base>.json``."""
    base = Path(base)
    hx = base.with_name(f"{base.name}.hx.{fmt}")
    hz = base.with_name(f"{base.name}.hz.{fmt}")
    meta_path = base.with_name(f"{base.name}.json")
    write_matrix(code.h_x, hx, fmt)
    write_matrix(code.h_z, hz, fmt)
    meta = code_metadata(code, codes)
    meta["format"] = fmt
    meta["files"] = {"h_x": hx.name, "h_z": hz.name}
    meta_path.write_text(json.dumps(meta, indent=2) + "\n")
    return [hx, hz, meta_path]


def load_build(base: Path) -> CssCode:
    base = Path(base)
    meta_path = base if base.suffix == ".json" else base.with_name(f"{base.name}.json")
    meta = json.loads(meta_path.read_text())
    fmt = meta.get("format", "alist")
    h_x = read_matrix(meta_path.with_name(meta["files"]["h_x"]), fmt)
    h_z = read_matrix(meta_path.with_name(meta["files"]["h_z"]), fmt)
    blocks = tuple(
        ZBlock(tuple(b["support"]), b.get("generator_index", 0), b["generator"], *b["rows"])
        for b in meta.get("z_blocks", [])
    )
    return CssCode(
        h_x,
        h_z,
        z_blocks=blocks,
        meta={k: meta[k] for k in ("p", "q", "w") if k in meta},
    )
