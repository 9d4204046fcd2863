import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_rank, sym_mul, to_int
from qbp.poly import (
    BoundaryPolynomial,
    elementary_symmetric,
    monomial,
    monomial_indices,
    monomial_product,
    multiplication_matrix,
    parse,
    poly_product,
    relabel,
    render,
    restrict,
)


def P(text: str) -> BoundaryPolynomial:
    return parse(text)


def as_sets(f: BoundaryPolynomial) -> set[frozenset]:
    return {frozenset(monomial_indices(m)) for m in f.terms}


@st.composite
def homogeneous(draw, p=8, max_degree=4):
    degree = draw(st.integers(0, max_degree))
    monos = list(itertools.combinations(range(1, p + 1), degree))
    chosen = draw(st.lists(st.sampled_from(monos), max_size=6, unique=True))
    return BoundaryPolynomial(degree, frozenset(monomial(*c) for c in chosen))


def test_monomial_product():
    assert monomial_product(monomial(1), monomial(2)) == monomial(1, 2)
    assert monomial_product(monomial(1), monomial(1)) is None
    assert monomial_product(monomial(1, 2), monomial(2, 3)) is None


def test_poly_product_examples():
    assert poly_product(P("d1 + d2"), P("d1 + d2")).is_zero
    assert render(poly_product(P("d1 + d2"), P("d3"))) == "d1*d3 + d2*d3"
    assert poly_product(P("d1*d2 + d1*d3 + d2*d3"), P("d1 + d2")).is_zero


def test_elementary_symmetric():
    assert render(elementary_symmetric(3, 1)) == "d1 + d2 + d3"
    assert render(elementary_symmetric(3, 2)) == "d1*d2 + d1*d3 + d2*d3"
    assert elementary_symmetric(3, 0) == BoundaryPolynomial.unit()
    for t in range(7):
        for k in range(t + 1):
            assert elementary_symmetric(t, k).weight == len(list(itertools.combinations(range(t), k)))
    with pytest.raises(ValueError):
        elementary_symmetric(2, 3)


def test_restrict():
    assert render(restrict(elementary_symmetric(4, 1), {1, 2, 3})) == "d1 + d2 + d3"
    assert restrict(elementary_symmetric(4, 2), {1, 2, 3}) == elementary_symmetric(3, 2)
    assert restrict(P("d1*d2"), {3, 4}).is_zero


def test_multiplication_matrix_examples():
    m, in_b, out_b = multiplication_matrix(elementary_symmetric(3, 1), 1, [1, 2, 3])
    assert [render(BoundaryPolynomial(1, frozenset({x}))) for x in in_b] == ["d1", "d2", "d3"]
    assert m.to_dense().T.tolist() == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    assert brute_rank([to_int(r) for r in m.to_dense()]) == 2

    m, _, out_b = multiplication_matrix(elementary_symmetric(3, 2), 1, [1, 2, 3])
    assert m.to_dense().tolist() == [[1, 1, 1]]
    assert out_b == [monomial(1, 2, 3)]

    m, in_b, _ = multiplication_matrix(elementary_symmetric(4, 2), 2, [1, 2, 3, 4])
    assert len(in_b) == 6
    assert m.to_dense().tolist() == [[1] * 6]


def test_multiplication_matrix_degree_overflow():
    m, in_b, out_b = multiplication_matrix(elementary_symmetric(3, 2), 2, [1, 2, 3])
    assert out_b == [] and m.rows == 0 and m.cols == len(in_b) == 3


def test_relabel():
    assert render(relabel(P("d1 + d2"), {1: 3, 2: 4})) == "d3 + d4"
    f = P("d1*d2 + d2*d3")
    assert relabel(f, {1: 1, 2: 2, 3: 3}) == f
    fwd = {1: 5, 2: 2, 3: 7}
    back = {v: k for k, v in fwd.items()}
    assert relabel(relabel(f, fwd), back) == f
    with pytest.raises(ValueError):
        relabel(f, {1: 4, 2: 4, 3: 5})


def test_render_parse_round_trip():
    f = P("d2*d3 + d1*d2")
    assert render(f) == "d1*d2 + d2*d3"
    assert parse(render(f)) == f
    assert render(BoundaryPolynomial.zero(2)) == "0"


def test_homogeneity_enforced():
    with pytest.raises(ValueError):
        BoundaryPolynomial(1, frozenset({monomial(1, 2)}))
    with pytest.raises(ValueError):
        P("d1") + P("d1*d2")
    # zero is compatible with any degree
    assert P("d1") + BoundaryPolynomial.zero(3) == P("d1")


@settings(max_examples=100, deadline=None)
@given(homogeneous(), homogeneous(), homogeneous())
def test_product_commutative_associative(f, g, h):
    assert poly_product(f, g) == poly_product(g, f)
    assert poly_product(poly_product(f, g), h) == poly_product(f, poly_product(g, h))
    assert as_sets(poly_product(f, g)) == sym_mul(as_sets(f), as_sets(g))


@settings(max_examples=100, deadline=None)
@given(homogeneous(max_degree=1))
def test_linear_polynomials_square_to_zero(f):
    if f.degree == 1:
        assert poly_product(f, f).is_zero


@settings(max_examples=50, deadline=None)
@given(homogeneous(), st.sets(st.integers(1, 8)))
def test_restrict_properties(f, support):
    assert restrict(f, range(1, 9)) == f
    once = restrict(f, support)
    assert restrict(once, support) == once


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.data())
def test_multiplication_matrix_columns_decode(t, data):
    k = data.draw(st.integers(0, t))
    d_sol = data.draw(st.integers(0, t))
    tau = elementary_symmetric(t, k)
    m, in_b, out_b = multiplication_matrix(tau, d_sol, range(1, t + 1))
    dense = m.to_dense()
    for j, mono in enumerate(in_b):
        expected = poly_product(tau, BoundaryPolynomial(d_sol, frozenset({mono})))
        got = BoundaryPolynomial.from_vector(dense[:, j], out_b, d_sol + k) if out_b else BoundaryPolynomial.zero()
        assert got.terms == expected.terms


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.data())
def test_elementary_symmetric_permutation_invariant(t, data):
    k = data.draw(st.integers(0, t))
    perm = data.draw(st.permutations(list(range(1, t + 1))))
    e = elementary_symmetric(t, k)
    assert relabel(e, dict(zip(range(1, t + 1), perm))) == e
