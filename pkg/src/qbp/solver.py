"""Symbolic solution of the bootstrap equation.

For a triple ``(p, q, w)`` the X-side boundary is the elementary symmetric
polynomial ``e_{q-w}`` on ``p`` variables. For every support size ``t`` in
``q+1..p`` the Z-side components are the degree ``t-q`` polynomials on
``t`` variables annihilated by the restriction of that boundary. Only
generators that are not products of smaller-support solutions with a
monomial are kept.

Restriction of ``e_{q-w}`` to any size-``t`` subset is ``e_{q-w}`` on that
subset, so each level is solved once on ``{1..t}`` and relabeled onto the
other subsets when the code is assembled.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from qbp.gf2 import BitMatrix, nullspace_basis, rank
from qbp.poly import (
    BoundaryPolynomial,
    elementary_symmetric,
    monomial,
    monomial_basis,
    multiplication_matrix,
    parse,
    poly_product,
    relabel,
    render,
    restrict,
)


class InvalidTripleError(ValueError):
    """The triple violates p > q > w >= 0."""


class InvalidLevelError(ValueError):
    """Support size outside q < t <= p."""


def check_triple(p: int, q: int, w: int) -> None:
    if not (p > q > w >= 0):
        raise InvalidTripleError(f"invalid triple (p={p}, q={q}, w={w}): need p > q > w >= 0")


def x_boundary(p: int, q: int, w: int) -> BoundaryPolynomial:
    """Boundary from qubits (degree q) to X-checks (degree w)."""
    check_triple(p, q, w)
    return elementary_symmetric(p, q - w)


@dataclass(frozen=True)
class LevelSolution:
    t: int
    canonical_generators: tuple[BoundaryPolynomial, ...] = ()


@dataclass(frozen=True)
class ForkComplexSpec:
    p: int
    q: int
    w: int
    levels: tuple[LevelSolution, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        check_triple(self.p, self.q, self.w)

    def level(self, t: int) -> LevelSolution:
        for lvl in self.levels:
            if lvl.t == t:
                return lvl
        raise KeyError(t)

    def generator_count(self) -> int:
        return sum(len(lvl.canonical_generators) for lvl in self.levels)

    def embedded_generators(self):
        """Yield ``(t, subset, generator_index, polynomial)`` over all subsets.

        Subsets come in lexicographic order; the canonical generator on
        ``{1..t}`` is mapped onto ``subset`` index by index in sorted order.
        """
        for lvl in self.levels:
            for subset in itertools.combinations(range(1, self.p + 1), lvl.t):
                mapping = dict(zip(range(1, lvl.t + 1), subset))
                for gi, g in enumerate(lvl.canonical_generators):
                    yield lvl.t, subset, gi, relabel(g, mapping)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "w": self.w,
            "levels": [
                {"t": lvl.t, "generators": [render(g) for g in lvl.canonical_generators]}
                for lvl in self.levels
            ],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> ForkComplexSpec:
        q = int(data["q"])
        levels = tuple(
            LevelSolution(
                int(lvl["t"]),
                tuple(parse(g, int(lvl["t"]) - q) for g in lvl["generators"]),
            )
            for lvl in data["levels"]
        )
        return cls(int(data["p"]), q, int(data["w"]), levels)


def _check_level(p: int, q: int, w: int, t: int) -> None:
    check_triple(p, q, w)
    if not q < t <= p:
        raise InvalidLevelError(f"support size t={t} outside {q} < t <= {p}")


def solve_level(p: int, q: int, w: int, t: int) -> list[BoundaryPolynomial]:
    """Basis of all degree ``t-q`` solutions on ``{1..t}``."""
    _check_level(p, q, w, t)
    support = range(1, t + 1)
    tau = restrict(x_boundary(p, q, w), support)
    d_sol = t - q
    m, in_basis, _ = multiplication_matrix(tau, d_sol, support)
    kernel = nullspace_basis(m).to_dense()
    solutions = [BoundaryPolynomial.from_vector(row, in_basis, d_sol) for row in kernel]
    for f in solutions:
        if not poly_product(tau, f).is_zero:
            raise AssertionError(f"nullspace vector {render(f)} fails the bootstrap check")
    return solutions


def embedded_products(
    lower: Sequence[LevelSolution], t: int, q: int
) -> list[BoundaryPolynomial]:
    """Lower-level generators placed on every subset of ``{1..t}`` times the
    monomial on the remaining indices."""
    out = []
    full = set(range(1, t + 1))
    for lvl in lower:
        if lvl.t >= t:
            continue
        for subset in itertools.combinations(range(1, t + 1), lvl.t):
            mapping = dict(zip(range(1, lvl.t + 1), subset))
            rest = sorted(full - set(subset))
            cofactor = BoundaryPolynomial(len(rest), frozenset({monomial(*rest)}))
            for g in lvl.canonical_generators:
                prod = poly_product(relabel(g, mapping), cofactor)
                if prod.degree != t - q:
                    raise AssertionError("embedded product has the wrong degree")
                out.append(prod)
    return out


def filter_primitive(
    v_sol: Sequence[BoundaryPolynomial],
    lower: Sequence[LevelSolution],
    t: int,
    q: int,
) -> list[BoundaryPolynomial]:
    """Solutions independent of the span of embedded lower-level generators.

    Redundant products come first; a solution vector is kept when it raises
    the rank of everything accepted so far.
    """
    d_sol = t - q
    basis = monomial_basis(range(1, t + 1), d_sol)
    red = [f.to_vector(basis) for f in embedded_products(lower, t, q)]
    rows = list(red)
    current = rank(BitMatrix.from_dense(np.array(rows))) if rows else 0
    primitive = []
    for f in v_sol:
        candidate = rows + [f.to_vector(basis)]
        r = rank(BitMatrix.from_dense(np.array(candidate)))
        if r > current:
            rows = candidate
            current = r
            primitive.append(f)
    return primitive


def greedy_reduce(basis: Sequence[BoundaryPolynomial]) -> list[BoundaryPolynomial]:
    """Replace ``g_i`` by ``g_i + g_j`` while that strictly lowers its weight."""
    gens = list(basis)
    changed = True
    while changed:
        changed = False
        for i in range(len(gens)):
            for j in range(len(gens)):
                if i == j:
                    continue
                candidate = gens[i] + gens[j]
                if candidate.weight < gens[i].weight:
                    gens[i] = candidate
                    changed = True
    return gens


def solve_fork(p: int, q: int, w: int) -> ForkComplexSpec:
    check_triple(p, q, w)
    levels: list[LevelSolution] = []
    for t in range(q + 1, p + 1):
        v_sol = solve_level(p, q, w, t)
        prim = filter_primitive(v_sol, levels, t, q)
        levels.append(LevelSolution(t, tuple(greedy_reduce(prim))))
    return ForkComplexSpec(p, q, w, tuple(levels))
