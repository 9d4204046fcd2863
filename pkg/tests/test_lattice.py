import itertools
from math import comb

import pytest

from qbp.assembly import ClassicalCode, CssCode, qbp_code
from qbp.gf2 import matmul
from qbp.lattice import (
    CellIndex,
    CellLattice,
    InvalidLabelError,
    codes_equivalent,
    direct_bijection,
    dual_bijection,
    dual_map,
    td_build,
    td_valid,
    toric_build,
)
from qbp.metrics import code_params, logical_count

rep = ClassicalCode.repetition

ALL_LABELS = [(*head, dim) for dim in range(2, 5) for head in itertools.combinations(range(dim + 1), 3)]
VALID_LABELS = [lbl for lbl in ALL_LABELS if td_valid(lbl)]


def test_td_valid_examples():
    assert td_valid([0, 1, 2, 3])
    assert td_valid([1, 2, 3, 4])
    assert not td_valid([0, 1, 3, 3])
    for bad in ([1, 1, 2, 3], [0, 2, 1, 3], [0, 1, 4, 3], [-1, 0, 1, 2]):
        with pytest.raises(InvalidLabelError):
            td_valid(bad)


def test_td_build_rejects_invalid():
    with pytest.raises(InvalidLabelError):
        td_build([0, 1, 3, 3], 3)
    with pytest.raises(ValueError):
        td_build([0, 1, 2, 3], 1)


def test_xcube_counts():
    code = td_build([0, 1, 2, 3], 3)
    assert code.n_qubits == 81
    assert code.h_x.rows == 27 and set(code.h_x.row_weights()) == {12}
    assert code.h_z.rows == 81 and set(code.h_z.row_weights()) == {4}
    per_vertex = {}
    for cell, _ in code.meta["z_check_labels"]:
        per_vertex[cell.position] = per_vertex.get(cell.position, 0) + 1
    assert set(per_vertex.values()) == {3}


def test_3d_toric_label():
    code = td_build([1, 2, 3, 3], 3)
    lattice = toric_build(3, 2, 3)
    assert code.n_qubits == 81
    # the label puts X-checks on cubes and Z-checks on links: the plaquette
    # code with its two check types exchanged
    swapped = CssCode(lattice.h_z, lattice.h_x)
    assert codes_equivalent(code, swapped)
    assert not codes_equivalent(code, lattice)
    assert logical_count(code) == 3


def test_2d_toric_label():
    params = code_params(td_build([0, 1, 2, 2], 3))
    assert (params.n, params.k, params.d_x, params.d_z) == (18, 2, 3, 3)


def test_dual_map():
    cell = CellIndex((1,), (0, 1, 2))
    assert dual_map(cell, 3) == CellIndex((2, 3), (0, 1, 2))
    assert dual_map(CellIndex((), (1, 1, 1)), 3).directions == (1, 2, 3)
    for k in range(4):
        for c in CellLattice(3, 2).cells(k):
            assert dual_map(dual_map(c, 3), 3) == c


def test_cell_render():
    assert CellIndex((1, 3), (0, 2, 1)).render() == "A={x,z}@(0,2,1)"
    assert str(CellIndex((), (0, 0))) == "A={}@(0,0)"


def test_codes_equivalent_examples():
    xcube = td_build([0, 1, 2, 3], 3)
    toric = td_build([0, 1, 2, 2], 3)
    assert codes_equivalent(xcube, xcube)
    assert not codes_equivalent(toric, xcube)
    with pytest.raises(ValueError):
        codes_equivalent(xcube, xcube, [0] * xcube.n_qubits)


@pytest.mark.parametrize("label", VALID_LABELS, ids=str)
@pytest.mark.parametrize("size", [2, 3])
def test_td_codes_commute(label, size):
    code = td_build(label, size)
    assert matmul(code.h_x, code.h_z.T).is_zero()
    assert code.n_qubits == comb(label[3], label[1]) * size ** label[3]


@pytest.mark.parametrize("dim,k,size", [(2, 1, 3), (3, 2, 2), (4, 3, 2)])
def test_cell_counts(dim, k, size):
    lattice = CellLattice(dim, size)
    cells = lattice.cells(k)
    assert len(cells) == len(set(cells)) == lattice.count(k) == comb(dim, k) * size**dim
    assert sorted(lattice.index(c) for c in cells) == list(range(len(cells)))


@pytest.mark.parametrize("p,q", [(3, 2), (4, 3), (4, 2)])
def test_qbp_matches_dual_td(p, q):
    code = qbp_code(p, q, 0, [rep(3)] * p)
    td = td_build([p - q - 1, p - q, p - q + 1, p], 3)
    assert codes_equivalent(code, td, dual_bijection(code, td, 3))


def test_dual_bijection_is_not_identity():
    code = qbp_code(3, 2, 0, [rep(3)] * 3)
    td = td_build([0, 1, 2, 3], 3)
    assert not codes_equivalent(code, td)


def test_toric_family_against_lattice():
    code = qbp_code(3, 2, 1, [rep(3)] * 3)
    lattice = toric_build(3, 2, 3)
    assert codes_equivalent(code, lattice, direct_bijection(code, lattice, 3))
