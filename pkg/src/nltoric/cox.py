"""Graded pieces of the Cox ring, Jacobian ideals and multiplication maps."""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice
from .cohomology import DivisorPolytope, lattice_points
from .divisors import ClassGroup, DivisorClass
from .fan import Fan

Exps = Tuple[int, ...]


@dataclass(frozen=True)
class GradedBasis:
    degree: DivisorClass
    exponents: Tuple[Exps, ...]

    def __len__(self):
        return len(self.exponents)

    def index(self) -> Dict[Exps, int]:
        return {e: i for i, e in enumerate(self.exponents)}


@lru_cache(maxsize=4096)
def _basis(fan: Fan, coeffs: Tuple[int, ...]) -> Tuple[Exps, ...]:
    D = DivisorPolytope(tuple((u, -a) for u, a in zip(fan.rays, coeffs)), fan.dim)
    out = []
    for m in lattice_points(D):
        out.append(tuple(sum(x * y for x, y in zip(m, u)) + a for u, a in zip(fan.rays, coeffs)))
    return tuple(sorted(out, reverse=True))


def graded_basis(gamma: DivisorClass) -> GradedBasis:
    """All monomials of degree ``gamma``, in descending lexicographic order."""
    return GradedBasis(gamma, _basis(gamma.fan, gamma.coeffs))


def monomial_degree(G: ClassGroup, exps: Sequence[int]) -> DivisorClass:
    return G.divisor(exps)


@dataclass(frozen=True)
class CoxPolynomial:
    """A homogeneous element of the Cox ring with exact rational coefficients."""

    terms: Tuple[Tuple[Exps, Fraction], ...]
    degree: DivisorClass

    @classmethod
    def from_terms(cls, G: ClassGroup, terms: Dict[Sequence[int], object]) -> "CoxPolynomial":
        items = sorted(
            ((tuple(int(x) for x in e), Fraction(c)) for e, c in terms.items() if Fraction(c) != 0),
            reverse=True,
        )
        if not items:
            raise ValueError("the zero polynomial has no degree")
        degree = G.divisor(items[0][0])
        for e, _ in items[1:]:
            if G.divisor(e) != degree:
                raise ValueError(f"monomial {list(e)} has a different degree; polynomial not homogeneous")
        return cls(tuple(items), degree)

    def derivative(self, i: int) -> Optional["CoxPolynomial"]:
        terms = {}
        for e, c in self.terms:
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]
        if not terms:
            return None
        return CoxPolynomial.from_terms(self.degree.group, terms)

    def to_dict(self) -> dict:
        return {
            "degree": list(self.degree.coeffs),
            "terms": [{"exps": list(e), "num": c.numerator, "den": c.denominator} for e, c in self.terms],
        }

    @classmethod
    def from_dict(cls, G: ClassGroup, data: dict) -> "CoxPolynomial":
        terms = {tuple(t["exps"]): Fraction(t["num"], t.get("den", 1)) for t in data["terms"]}
        poly = cls.from_terms(G, terms)
        if "degree" in data and G.divisor(data["degree"]) != poly.degree:
            raise ValueError("declared degree does not match the monomials")
        return poly


def fermat(G: ClassGroup, degree: DivisorClass) -> CoxPolynomial:
    """Sum of pure powers ``x_rho^{k_rho}`` landing in ``degree``.

    Every variable must have a power in ``degree``.
    """
    terms = {}
    n = G.fan.n_rays
    for i in range(n):
        e = next((e for e in _basis(G.fan, degree.coeffs)
                  if e[i] and all(e[j] == 0 for j in range(n) if j != i)), None)
        if e is None:
            raise ValueError(f"no pure power of x_{i} has the requested degree")
        terms[e] = 1
    return CoxPolynomial.from_terms(G, terms)


def random_section(beta: DivisorClass, seed: int) -> CoxPolynomial:
    """Coefficients drawn from ``[-9, 9] \\ {0}`` by a seeded generator.

    Quasi-smoothness is not checked; the section is only a generic candidate.
    """
    basis = graded_basis(beta)
    if not len(basis):
        raise ValueError("degree has no sections")
    rng = random.Random(seed)
    choices = [c for c in range(-9, 10) if c]
    return CoxPolynomial.from_terms(beta.group, {e: rng.choice(choices) for e in basis.exponents})


# -- Jacobian ideal ----------------------------------------------------------


def jacobian_slice(f: CoxPolynomial, gamma: DivisorClass) -> List[Dict[int, Fraction]]:
    """Sparse rows spanning ``J(f)_gamma`` in the coordinates of ``S_gamma``."""
    target = graded_basis(gamma).index()
    G = gamma.group
    rows = []
    for i in range(G.fan.n_rays):
        g = f.derivative(i)
        if g is None:
            continue
        for mono in graded_basis(gamma - g.degree).exponents:
            row = {}
            for e, c in g.terms:
                row[target[tuple(x + y for x, y in zip(e, mono))]] = c
            rows.append(row)
    return rows


def _sparse_rank(rows: List[Dict[int, Fraction]], columns: Sequence[int]) -> int:
    cols = {c: k for k, c in enumerate(columns)}
    restricted = [{cols[c]: x for c, x in row.items() if c in cols} for row in rows]
    return lattice.sparse_rank(restricted, len(cols))


def jacobian_ring_dimension(f: CoxPolynomial, gamma: DivisorClass) -> int:
    """``dim S_gamma - dim J(f)_gamma`` by exact rank."""
    n = len(graded_basis(gamma))
    if n == 0:
        return 0
    return n - _sparse_rank(jacobian_slice(f, gamma), range(n))


def generic_jacobian_ring_dimension(beta: DivisorClass, gamma: DivisorClass,
                                    seed: int = 0, attempts: int = 5) -> int:
    """``dim R(f)_gamma`` for a general section ``f`` of degree ``beta``.

    Two seeded sections must agree; a disagreement flags a degenerate
    sample and we reseed, keeping the minimum (the generic value).
    """
    values = []
    for k in range(attempts):
        values.append(jacobian_ring_dimension(random_section(beta, seed + k), gamma))
        if len(values) >= 2 and values[-1] == values[-2]:
            break
    return min(values)


@dataclass(frozen=True)
class MultiplicationVerdict:
    surjective: bool
    cokernel_dim: int
    target_dim: int


def mult_map_surjective(g1: DivisorClass, g2: DivisorClass,
                        f: Optional[CoxPolynomial] = None) -> MultiplicationVerdict:
    """Surjectivity of ``S_{g1} (x) S_{g2} -> S_{g1+g2}``, modulo ``J(f)`` if given.

    Products of basis monomials are monomials, so the image is spanned by
    the target monomials that factor; only the remaining coordinates need
    a rank computation against the Jacobian slice.
    """
    target = graded_basis(g1 + g2)
    b1, b2 = graded_basis(g1).exponents, graded_basis(g2).exponents
    hit = {tuple(x + y for x, y in zip(e1, e2)) for e1 in b1 for e2 in b2}
    missed = [k for k, e in enumerate(target.exponents) if e not in hit]
    coker = len(missed)
    if f is not None and missed:
        coker -= _sparse_rank(jacobian_slice(f, g1 + g2), missed)
    return MultiplicationVerdict(coker == 0, coker, len(target))
