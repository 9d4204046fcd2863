"""Squarefree GF(2) polynomials in the boundary variables d1..dp.

A monomial is a set of variable indices, stored as a bitmask (index ``i``
is bit ``i - 1``). Products with a repeated index vanish, because each
extended boundary operator squares to zero.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from qbp.gf2 import BitMatrix

Monomial = int


def monomial(*indices: int) -> Monomial:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"variable indices start at 1, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated index {i} in monomial")
        mask |= bit
    return mask


def monomial_indices(m: Monomial) -> tuple[int, ...]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def monomial_degree(m: Monomial) -> int:
    return m.bit_count()


def monomial_product(s: Monomial, t: Monomial) -> Monomial | None:
    """Union of disjoint index sets; ``None`` stands for the zero element."""
    if s & t:
        return None
    return s | t


def _sort_key(m: Monomial) -> tuple[int, ...]:
    return monomial_indices(m)


def monomial_basis(support: Iterable[int], degree: int) -> list[Monomial]:
    """All degree-``degree`` monomials on ``support`` in lexicographic order."""
    return [monomial(*combo) for combo in itertools.combinations(sorted(support), degree)]


@dataclass(frozen=True)
class BoundaryPolynomial:
    """Homogeneous polynomial; an empty term set is the zero polynomial."""

    degree: int
    terms: frozenset[Monomial] = frozenset()

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        for m in self.terms:
            if m.bit_count() != self.degree:
                raise ValueError(
                    f"term {render_monomial(m)} has degree {m.bit_count()}, expected {self.degree}"
                )

    @classmethod
    def from_terms(cls, degree: int, terms: Iterable[Monomial]) -> BoundaryPolynomial:
        """Collect terms mod 2, so repeated monomials cancel in pairs."""
        acc: set[Monomial] = set()
        for m in terms:
            acc ^= {m}
        return cls(degree, frozenset(acc))

    @classmethod
    def zero(cls, degree: int = 0) -> BoundaryPolynomial:
        return cls(degree)

    @classmethod
    def unit(cls) -> BoundaryPolynomial:
        return cls(0, frozenset({0}))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def weight(self) -> int:
        """Number of monomial terms."""
        return len(self.terms)

    @property
    def support(self) -> frozenset[int]:
        mask = 0
        for m in self.terms:
            mask |= m
        return frozenset(monomial_indices(mask))

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=_sort_key)

    def __add__(self, other: BoundaryPolynomial) -> BoundaryPolynomial:
        if not (self.is_zero or other.is_zero) and self.degree != other.degree:
            raise ValueError(f"cannot add degree {self.degree} and degree {other.degree}")
        degree = other.degree if self.is_zero else self.degree
        return BoundaryPolynomial(degree, self.terms ^ other.terms)

    def __mul__(self, other: BoundaryPolynomial) -> BoundaryPolynomial:
        return poly_product(self, other)

    def to_vector(self, basis: Sequence[Monomial]) -> np.ndarray:
        index = {m: j for j, m in enumerate(basis)}
        vec = np.zeros(len(basis), dtype=np.uint8)
        for m in self.terms:
            if m not in index:
                raise ValueError(f"term {render_monomial(m)} not in basis")
            vec[index[m]] = 1
        return vec

    @classmethod
    def from_vector(
        cls, vec: Sequence[int] | np.ndarray, basis: Sequence[Monomial], degree: int
    ) -> BoundaryPolynomial:
        return cls(degree, frozenset(m for m, bit in zip(basis, vec) if int(bit) & 1))

    def __str__(self) -> str:
        return render(self)


def poly_product(f: BoundaryPolynomial, g: BoundaryPolynomial) -> BoundaryPolynomial:
    products = (monomial_product(s, t) for s in f.terms for t in g.terms)
    return BoundaryPolynomial.from_terms(
        f.degree + g.degree, (m for m in products if m is not None)
    )


def elementary_symmetric(t: int, k: int, support: Iterable[int] | None = None) -> BoundaryPolynomial:
    """Sum of all size-``k`` monomials on ``support`` (default ``1..t``)."""
    indices = sorted(support) if support is not None else list(range(1, t + 1))
    if len(indices) != t:
        raise ValueError(f"support has {len(indices)} indices, expected {t}")
    if not 0 <= k <= t:
        raise ValueError(f"invalid degree k={k} for {t} variables")
    return BoundaryPolynomial(k, frozenset(monomial_basis(indices, k)))


def restrict(f: BoundaryPolynomial, support: Iterable[int]) -> BoundaryPolynomial:
    mask = monomial(*sorted(set(support)))
    return BoundaryPolynomial(f.degree, frozenset(m for m in f.terms if m & ~mask == 0))


def multiplication_matrix(
    tau: BoundaryPolynomial, d_sol: int, support: Iterable[int]
) -> tuple[BitMatrix, list[Monomial], list[Monomial]]:
    """Matrix of ``xi -> tau * xi`` from degree ``d_sol`` to ``d_sol + deg(tau)``.

    Column ``j`` holds the product of ``tau`` with ``in_basis[j]`` expanded
    in ``out_basis``. If the output degree exceeds the support size the
    output basis is empty and the matrix has no rows.
    """
    indices = sorted(set(support))
    if not tau.support <= set(indices):
        raise ValueError("tau is not supported inside the given support")
    in_basis = monomial_basis(indices, d_sol)
    out_degree = d_sol + tau.degree
    out_basis = monomial_basis(indices, out_degree) if out_degree <= len(indices) else []
    out_index = {m: i for i, m in enumerate(out_basis)}
    dense = np.zeros((len(out_basis), len(in_basis)), dtype=np.uint8)
    for j, m in enumerate(in_basis):
        for s in tau.terms:
            prod = monomial_product(s, m)
            if prod is not None:
                dense[out_index[prod], j] ^= 1
    if not out_basis:
        return BitMatrix.zeros(0, len(in_basis)), in_basis, out_basis
    return BitMatrix.from_dense(dense), in_basis, out_basis


def relabel_monomial(m: Monomial, mapping: Mapping[int, int]) -> Monomial:
    return monomial(*(mapping[i] for i in monomial_indices(m)))


def relabel(f: BoundaryPolynomial, mapping: Mapping[int, int]) -> BoundaryPolynomial:
    """Rename variable indices; the map must be injective on ``f``'s support."""
    used = f.support
    missing = used - set(mapping)
    if missing:
        raise ValueError(f"relabeling map does not cover indices {sorted(missing)}")
    images = [mapping[i] for i in used]
    if len(set(images)) != len(images):
        raise ValueError("relabeling map is not injective on the polynomial's support")
    return BoundaryPolynomial(f.degree, frozenset(relabel_monomial(m, mapping) for m in f.terms))


def render_monomial(m: Monomial) -> str:
    indices = monomial_indices(m)
    if not indices:
        return "1"
    return "*".join(f"d{i}" for i in indices)


def render(f: BoundaryPolynomial) -> str:
    """Text form such as ``d1*d2 + d1*d3``; the zero polynomial renders as ``0``."""
    if f.is_zero:
        return "0"
    return " + ".join(render_monomial(m) for m in f.sorted_terms())


_TERM = re.compile(r"^(?:1|d\d+(?:\*d\d+)*)$")


def parse(text: str, degree: int | None = None) -> BoundaryPolynomial:
    """Inverse of :func:`render`. ``degree`` is required for ``"0"``."""
    text = text.strip()
    if text == "0":
        return BoundaryPolynomial.zero(degree or 0)
    terms = []
    for raw in text.split("+"):
        token = raw.strip()
        if not _TERM.match(token):
            raise ValueError(f"cannot parse term {token!r}")
        if token == "1":
            terms.append(0)
        else:
            terms.append(monomial(*(int(part[1:]) for part in token.split("*"))))
    deg = terms[0].bit_count()
    if degree is not None and degree != deg:
        raise ValueError(f"expected degree {degree}, got {deg}")
    return BoundaryPolynomial.from_terms(deg, terms)
