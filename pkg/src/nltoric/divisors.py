"""Class groups, Cartier data, intersection numbers and nef/Mori cones."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice
from .fan import Fan, Wall, walls


class DivisorError(ValueError):
    pass


class NotCartierError(DivisorError):
    def __init__(self, cone, m):
        super().__init__(f"divisor is not Cartier on cone {list(cone)} (m = {[str(x) for x in m]})")
        self.cone = cone


@dataclass(frozen=True)
class ClassGroup:
    """``Cl = Z^{rays} / M`` computed from the Smith form of the ray matrix.

    ``transform`` is the left unimodular factor ``U``; for a ray-coefficient
    vector ``x`` the first ``rank`` entries of ``U x`` are torsion
    coordinates (reduced modulo the invariant factors) and the remaining
    ``free_rank`` entries are the free coordinates.
    """

    fan: Fan
    transform: Tuple[Tuple[int, ...], ...]
    inverse: Tuple[Tuple[int, ...], ...]
    factors: Tuple[int, ...]

    @property
    def free_rank(self) -> int:
        return self.fan.n_rays - len(self.factors)

    @property
    def torsion_factors(self) -> List[int]:
        return [d for d in self.factors if d > 1]

    def project(self, coeffs: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        y = [sum(u * int(x) for u, x in zip(row, coeffs)) for row in self.transform]
        k = len(self.factors)
        torsion = tuple(y[i] % d for i, d in enumerate(self.factors) if d > 1)
        return torsion, tuple(y[k:])

    def divisor(self, coeffs: Sequence[int]) -> "DivisorClass":
        coeffs = tuple(int(x) for x in coeffs)
        if len(coeffs) != self.fan.n_rays:
            raise DivisorError(f"expected {self.fan.n_rays} ray coefficients, got {len(coeffs)}")
        return DivisorClass(coeffs, self)

    def from_free(self, free: Sequence[int]) -> "DivisorClass":
        """A representative of the class with the given free coordinates."""
        y = [0] * len(self.factors) + [int(x) for x in free]
        return self.divisor([sum(u * v for u, v in zip(row, y)) for row in self.inverse])

    def ray_class(self, i: int) -> "DivisorClass":
        return self.divisor([int(j == i) for j in range(self.fan.n_rays)])

    def zero(self) -> "DivisorClass":
        return self.divisor([0] * self.fan.n_rays)


@dataclass(frozen=True, eq=False)
class DivisorClass:
    """A class in Cl, carried by a representative Weil divisor."""

    coeffs: Tuple[int, ...]
    group: ClassGroup = field(repr=False)

    @property
    def class_coords(self):
        return self.group.project(self.coeffs)

    @property
    def free(self) -> Tuple[int, ...]:
        return self.class_coords[1]

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.group.fan == other.group.fan and self.class_coords == other.class_coords

    def __hash__(self):
        return hash(self.class_coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return self.group.divisor([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self.group.divisor([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "DivisorClass":
        return self.group.divisor([-a for a in self.coeffs])

    def __mul__(self, k: int) -> "DivisorClass":
        return self.group.divisor([k * a for a in self.coeffs])

    __rmul__ = __mul__

    @property
    def fan(self) -> Fan:
        return self.group.fan


@lru_cache(maxsize=None)
def class_group(fan: Fan) -> ClassGroup:
    """Cokernel of ``m -> (<m, u_rho>)_rho``."""
    snf = lattice.smith_normal_form([list(r) for r in fan.rays])
    U = [list(r) for r in snf.U]
    # U is unimodular, so its inverse is integral.
    inv = [[int(x) for x in row] for row in _inverse(U)]
    factors = tuple(d for d in snf.diagonal if d != 0)
    return ClassGroup(fan, snf.U, tuple(tuple(r) for r in inv), factors)


def _inverse(a):
    n = len(a)
    cols = [lattice.solve(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return lattice.transpose(cols)


def canonical_data(fan: Fan) -> DivisorClass:
    """The anticanonical class: every ray divisor with coefficient one."""
    return class_group(fan).divisor([1] * fan.n_rays)


# -- Cartier data --------------------------------------------------------------


@dataclass(frozen=True)
class CartierData:
    """Per max cone the character ``m`` with ``<m, u_rho> = -a_rho`` on its rays."""

    m: Tuple[Tuple[Fraction, ...], ...]

    @property
    def is_cartier(self) -> bool:
        return all(x.denominator == 1 for ms in self.m for x in ms)


def cartier_data(D: DivisorClass) -> CartierData:
    fan = D.fan
    out = []
    for k, cone in enumerate(fan.max_cones):
        inv = fan.cone_inverses[k]
        b = [-D.coeffs[i] for i in cone]
        out.append(tuple(sum(inv[j][i] * b[i] for i in range(fan.dim)) for j in range(fan.dim)))
    return CartierData(tuple(out))


def is_cartier(D: DivisorClass) -> bool:
    return cartier_data(D).is_cartier


def require_cartier(D: DivisorClass) -> CartierData:
    data = cartier_data(D)
    for cone, m in zip(D.fan.max_cones, data.m):
        if any(x.denominator != 1 for x in m):
            raise NotCartierError(cone, m)
    return data


# -- intersection numbers ----------------------------------------------------


@lru_cache(maxsize=None)
def _wall_weights(fan: Fan, wall: Wall) -> Fraction:
    tau = lattice.lattice_index([fan.rays[i] for i in wall.ray_indices])
    sigma_b = lattice.lattice_index([fan.rays[i] for i in fan.max_cones[wall.cone_b]])
    return Fraction(tau, sigma_b)


def intersection_number(D: DivisorClass, wall: Wall) -> Fraction:
    """``D . C_w`` for the torus-invariant curve of ``wall``.

    Uses the jump of the Cartier data across the wall, scaled by
    ``mult(wall) / mult(cone_b)``; rational on singular fans.
    """
    fan = D.fan
    data = cartier_data(D)
    ma, mb = data.m[wall.cone_a], data.m[wall.cone_b]
    ub = fan.rays[wall.ray_b]
    jump = sum((x - y) * u for x, y, u in zip(ma, mb, ub))
    return jump * _wall_weights(fan, wall)


@lru_cache(maxsize=None)
def fan_walls(fan: Fan) -> Tuple[Wall, ...]:
    return tuple(walls(fan))


NOT_NEF, NEF, AMPLE = "not-nef", "nef-not-ample", "ample"


def nef_ample_test(D: DivisorClass) -> str:
    """Toric Kleiman test on the wall curves; ``D`` must be Cartier."""
    require_cartier(D)
    values = [intersection_number(D, w) for w in fan_walls(D.fan)]
    if any(v < 0 for v in values):
        return NOT_NEF
    if all(v > 0 for v in values):
        return AMPLE
    return NEF


def is_nef(D: DivisorClass) -> bool:
    """Nefness of a Q-Cartier class (no Cartier requirement)."""
    return all(intersection_number(D, w) >= 0 for w in fan_walls(D.fan))


def is_ample(D: DivisorClass) -> bool:
    return all(intersection_number(D, w) > 0 for w in fan_walls(D.fan))


# -- cones ---------------------------------------------------------------------


@dataclass(frozen=True)
class CurveClass:
    """A numerical curve class: intersection numbers with the free basis of Cl.

    ``walls`` lists the invariant curves lying on this class.
    """

    functional: Tuple[Fraction, ...]
    walls: Tuple[Wall, ...]

    def dot(self, D: DivisorClass) -> Fraction:
        return sum(f * x for f, x in zip(self.functional, D.free))


@lru_cache(maxsize=None)
def wall_functionals(fan: Fan) -> Dict[Wall, Tuple[Fraction, ...]]:
    """``D . C_w`` as a linear form in the free coordinates of ``D``."""
    G = class_group(fan)
    basis = [G.from_free([int(i == j) for j in range(G.free_rank)]) for i in range(G.free_rank)]
    return {w: tuple(intersection_number(b, w) for b in basis) for w in fan_walls(fan)}


def _extremal_rays(constraints: List[Tuple[Fraction, ...]], dim: int) -> List[List[int]]:
    """Primitive extremal rays of the pointed cone ``{x : c.x >= 0}``."""
    cons = sorted({tuple(lattice.primitive(c)) for c in constraints if any(c)})
    rays = set()
    if dim == 1:
        for s in (1, -1):
            if all(c[0] * s >= 0 for c in cons):
                rays.add((s,))
        return sorted(rays)
    for subset in combinations(cons, dim - 1):
        ker = lattice.nullspace([list(c) for c in subset])
        if len(ker) != 1:
            continue
        d = lattice.primitive(ker[0])
        for s in (1, -1):
            v = [s * x for x in d]
            if all(sum(a * b for a, b in zip(c, v)) >= 0 for c in cons):
                rays.add(tuple(v))
    return sorted(rays)


@lru_cache(maxsize=None)
def nef_cone_generators(fan: Fan) -> Tuple[DivisorClass, ...]:
    """Primitive generators of the nef cone, as classes in Cl.

    Restricted to torsion-free class groups of rank at most 3.
    """
    G = class_group(fan)
    if G.torsion_factors or G.free_rank > 3:
        raise DivisorError("nef cone routine needs a torsion-free class group of rank <= 3")
    forms = list(wall_functionals(fan).values())
    rays = _extremal_rays(forms, G.free_rank)
    return tuple(G.from_free(r) for r in rays)


@lru_cache(maxsize=None)
def mori_generators(fan: Fan) -> Tuple[CurveClass, ...]:
    """Extremal rays of the cone of curves, each with the invariant curves on it.

    Each generator is represented by its smallest wall curve on the ray.
    """
    G = class_group(fan)
    nef = [list(g.free) for g in nef_cone_generators(fan)]
    forms = wall_functionals(fan)
    rays = _extremal_rays([tuple(Fraction(x) for x in g) for g in nef], G.free_rank)
    out = []
    for ray in rays:
        on_ray = []
        for w, f in forms.items():
            if any(f) and lattice.primitive(f) == list(ray):
                scale = next(a / b for a, b in zip(f, ray) if b)
                on_ray.append((scale, w))
        if not on_ray:
            continue
        smallest = min(s for s, _ in on_ray)
        chosen = tuple(w for s, w in on_ray if s == smallest)
        out.append(CurveClass(forms[chosen[0]], chosen))
    return tuple(out)


def nef_coordinates(D: DivisorClass, basis: Optional[Sequence[DivisorClass]] = None) -> Tuple[Fraction, ...]:
    """Coordinates of ``D`` in a basis of Cl tensor Q (default: nef generators)."""
    if basis is None:
        basis = nef_cone_generators(D.fan)
    cols = lattice.transpose([list(b.free) for b in basis])
    if len(basis) != len(D.free):
        raise DivisorError("basis size does not match the class group rank")
    x = lattice.solve(cols, list(D.free))
    if x is None:
        raise DivisorError("nef generators are not a basis")
    return tuple(x)


def from_coordinates(basis: Sequence[DivisorClass], coords: Sequence[int]) -> DivisorClass:
    G = basis[0].group
    out = G.zero()
    for b, c in zip(basis, coords):
        out = out + int(c) * b
    return out


def cartier_index(D: DivisorClass) -> int:
    """Smallest ``k >= 1`` with ``k * D`` Cartier."""
    den = 1
    for m in cartier_data(D).m:
        for x in m:
            den = den * x.denominator // gcd(den, x.denominator)
    return den


def cartier_nef_basis(fan: Fan) -> Tuple[DivisorClass, ...]:
    """Nef generators each scaled to their smallest Cartier multiple."""
    return tuple(cartier_index(g) * g for g in nef_cone_generators(fan))


def is_primitive_cartier(D: DivisorClass) -> bool:
    """True unless ``D = k * E`` with ``k >= 2`` and ``E`` Cartier."""
    c = lattice.content(D.free)
    if D.group.torsion_factors:
        raise DivisorError("primitivity is only decided on torsion-free class groups")
    for k in range(2, c + 1):
        if c % k == 0:
            E = D.group.from_free([x // k for x in D.free])
            if is_cartier(E):
                return False
    return True
