"""Named equivalence checks between QBP codes and independent constructions."""

from __future__ import annotations

from dataclasses import dataclass, field

from qbp.assembly import ClassicalCode, hgp_reference, qbp_code
from qbp.gf2 import rowspace_equal
from qbp.lattice import (
    codes_equivalent,
    direct_bijection,
    dual_bijection,
    td_build,
    toric_build,
)
from qbp.metrics import logical_count


@dataclass
class Report:
    target: str
    passed: bool = True
    lines: list[str] = field(default_factory=list)

    def check(self, name: str, ok: bool) -> None:
        self.lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
        self.passed = self.passed and ok


def _reps(p: int, size: int) -> list[ClassicalCode]:
    return [ClassicalCode.repetition(size)] * p


def verify_td(p: int, q: int, size: int, report: Report | None = None) -> Report:
    """(p,q,0) on repetition codes against the dual-lattice TD code."""
    report = report or Report(f"td({p},{q})")
    code = qbp_code(p, q, 0, _reps(p, size))
    label = [p - q - 1, p - q, p - q + 1, p]
    td = td_build(label, size)
    ok = codes_equivalent(code, td, dual_bijection(code, td, size))
    report.check(f"({p},{q},0) L={size} == dual TD {label}", ok)
    return report


def verify_xcube(size: int) -> Report:
    return verify_td(3, 2, size, Report("xcube"))


def verify_4d_toric(size: int) -> Report:
    report = Report("4dtoric")
    codes = _reps(4, size)
    code = qbp_code(4, 2, 1, codes)
    report.check(f"n = 6 L^4 = {6 * size**4}", code.n_qubits == 6 * size**4)
    lattice = toric_build(4, 2, size)
    report.check(
        f"(4,2,1) L={size} == plaquette 4D toric code",
        codes_equivalent(code, lattice, direct_bijection(code, lattice, size)),
    )
    report.check("k = 6", logical_count(code) == 6)
    return report


def verify_hgp(size: int, max_p: int = 4) -> Report:
    """Every (p,q,q-1) with p <= max_p against the tensor-product segment."""
    report = Report("hgp")
    for p in range(2, max_p + 1):
        codes = _reps(p, size)
        for q in range(1, p):
            code = qbp_code(p, q, q - 1, codes)
            ref = hgp_reference(codes, q)
            ok = rowspace_equal(code.h_x, ref.h_x) and rowspace_equal(code.h_z, ref.h_z)
            report.check(f"({p},{q},{q - 1}) L={size} == HGP segment", ok)
    return report


TARGETS = {"xcube": verify_xcube, "4dtoric": verify_4d_toric, "hgp": verify_hgp}
