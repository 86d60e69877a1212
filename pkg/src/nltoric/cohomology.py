"""Divisor polytopes, lattice points and cohomology of torus-invariant divisors.

Cohomology is computed character by character: for ``m`` in ``M`` let
``V(m)`` be the set of rays with ``<m, u_rho> < -a_rho``; then the
``m``-graded piece of ``H^q(O(D))`` has the dimension of the reduced
``(q-1)``-cohomology of the complex of faces of the fan spanned by rays in
``V(m)``. Characters with the same ``V(m)`` form a chamber, and each
chamber contributes ``rank * (lattice points in the chamber)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import ceil, floor
from typing import FrozenSet, List, Optional, Sequence, Tuple

from . import lattice
from .divisors import DivisorClass, is_nef, require_cartier, canonical_data
from .fan import Fan

Halfspace = Tuple[Tuple[int, ...], int]


class UnboundedPolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class DivisorPolytope:
    """``{m : <m, u_rho> >= -a_rho}`` for every ray."""

    halfspaces: Tuple[Halfspace, ...]
    dim: int

    @classmethod
    def of(cls, D: DivisorClass) -> "DivisorPolytope":
        fan = D.fan
        return cls(tuple((u, -a) for u, a in zip(fan.rays, D.coeffs)), fan.dim)


def _vertices(halfspaces: Sequence[Halfspace], dim: int) -> List[List[Fraction]]:
    out = []
    for subset in combinations(halfspaces, dim):
        x = lattice.solve([list(a) for a, _ in subset], [c for _, c in subset])
        if x is None:
            continue
        if all(sum(ai * xi for ai, xi in zip(a, x)) >= c for a, c in halfspaces):
            out.append(x)
    return out


def polyhedron_points(halfspaces: Sequence[Halfspace], dim: int) -> List[Tuple[int, ...]]:
    """Lattice points of a bounded rational polyhedron, in lexicographic order."""
    verdict = lattice.lp_classify(halfspaces, dim)
    if verdict.status == lattice.EMPTY:
        return []
    if verdict.status == lattice.UNBOUNDED:
        raise UnboundedPolytopeError(f"polyhedron is unbounded along {list(verdict.witness)}")
    verts = _vertices(halfspaces, dim)
    lo = [ceil(min(v[i] for v in verts)) for i in range(dim)]
    hi = [floor(max(v[i] for v in verts)) for i in range(dim)]
    # integer halfspaces: clear denominators once
    cons = []
    for a, c in halfspaces:
        c = Fraction(c)
        cons.append(([int(x) * c.denominator for x in a], c.numerator))
    points = []
    for p in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if all(sum(x * y for x, y in zip(a, p)) >= c for a, c in cons):
            points.append(p)
    return points


def lattice_points(P: DivisorPolytope) -> List[Tuple[int, ...]]:
    return polyhedron_points(P.halfspaces, P.dim)


def h0(D: DivisorClass) -> int:
    return len(lattice_points(DivisorPolytope.of(D)))


# -- reduced cohomology of the "violated" subcomplexes -------------------------


@lru_cache(maxsize=None)
def reduced_cohomology(fan: Fan, vertices: FrozenSet[int]) -> Tuple[int, ...]:
    """Ranks of ``H~^{q-1}`` for ``q = 0..r`` of the subcomplex on ``vertices``.

    The complex has a face for every subset of ``vertices`` lying in some
    cone of the fan, the empty face included. Computed over Q.
    """
    r = fan.dim
    faces = [[()]]
    for s in range(1, r + 1):
        faces.append([f for f in combinations(sorted(vertices), s) if fan.is_face(f)])
    ranks = [0] * (r + 2)  # ranks[s]: boundary from size s to size s-1
    for s in range(1, r + 1):
        if not faces[s] or not faces[s - 1]:
            continue
        index = {f: i for i, f in enumerate(faces[s - 1])}
        rows = []
        for f in faces[s]:
            row = [0] * len(faces[s - 1])
            for k in range(s):
                row[index[f[:k] + f[k + 1:]]] = (-1) ** k
            rows.append(row)
        ranks[s] = lattice.rank(rows)
    return tuple(len(faces[q]) - ranks[q] - ranks[q + 1] for q in range(r + 1))


@dataclass(frozen=True)
class SignChamber:
    violated: Tuple[int, ...]
    lattice_count: int
    contribution: Tuple[int, ...]


@dataclass(frozen=True)
class CohomologyTable:
    h: Tuple[int, ...]
    chambers: Tuple[SignChamber, ...] = field(default=(), compare=False)

    def __getitem__(self, q):
        return self.h[q]

    def to_dict(self) -> dict:
        return {
            "h": list(self.h),
            "chambers": [
                {"violated": list(c.violated), "lattice_points": c.lattice_count,
                 "contribution": list(c.contribution)}
                for c in self.chambers
            ],
        }


class ChamberError(ValueError):
    pass


def _cohomology(fan: Fan, coeffs: Tuple[int, ...]) -> CohomologyTable:
    r = fan.dim
    n = fan.n_rays
    h = [0] * (r + 1)
    chambers = []
    for size in range(n + 1):
        for violated in combinations(range(n), size):
            ranks = reduced_cohomology(fan, frozenset(violated))
            if not any(ranks):
                continue
            halfspaces = []
            for i, (u, a) in enumerate(zip(fan.rays, coeffs)):
                if i in violated:  # <m,u> <= -a-1
                    halfspaces.append((tuple(-x for x in u), a + 1))
                else:
                    halfspaces.append((u, -a))
            try:
                pts = polyhedron_points(halfspaces, r)
            except UnboundedPolytopeError as exc:
                raise ChamberError(
                    f"chamber with violated rays {list(violated)} is unbounded; fan is not complete"
                ) from exc
            if not pts:
                continue
            contrib = tuple(k * len(pts) for k in ranks)
            h = [x + y for x, y in zip(h, contrib)]
            chambers.append(SignChamber(violated, len(pts), contrib))
    return CohomologyTable(tuple(h), tuple(chambers))


_cached_cohomology = lru_cache(maxsize=65536)(_cohomology)


def graded_cohomology(D: DivisorClass) -> CohomologyTable:
    """``(h^0, ..., h^r)`` of ``O(D)`` with a per-chamber audit trail."""
    return _cached_cohomology(D.fan, D.coeffs)


def hq(D: DivisorClass, q: int) -> int:
    return graded_cohomology(D).h[q]


def serre_duality_check(D: DivisorClass) -> Tuple[bool, Optional[int]]:
    """Compare ``h^q(D)`` with ``h^{r-q}(-D - beta_0)``; return first mismatch."""
    require_cartier(D)
    r = D.fan.dim
    left = graded_cohomology(D).h
    right = graded_cohomology(-D - canonical_data(D.fan)).h
    for q in range(r + 1):
        if left[q] != right[r - q]:
            return False, q
    return True, None


# -- Minkowski sums --------------------------------------------------------------


class NotNefError(ValueError):
    pass


def minkowski_decomposition_check(a1: DivisorClass, a2: DivisorClass) -> Optional[Tuple[int, ...]]:
    """Return ``None`` if every lattice point of ``P_{a1+a2}`` is a sum of
    lattice points of ``P_{a1}`` and ``P_{a2}``; otherwise a missing point.
    """
    for D in (a1, a2):
        if not is_nef(D):
            raise NotNefError(f"class with representative {list(D.coeffs)} is not nef")
    p1 = lattice_points(DivisorPolytope.of(a1))
    p2 = lattice_points(DivisorPolytope.of(a2))
    sums = {tuple(x + y for x, y in zip(u, v)) for u in p1 for v in p2}
    for p in lattice_points(DivisorPolytope.of(a1 + a2)):
        if p not in sums:
            return p
    return None
