"""The five worked threefolds, with the facts they are known to satisfy.

Each entry carries a fan, a nef basis in the conventional order of the
literature, a designated ample class ``eta`` and an expectation sheet.
Loading re-validates the fan and asserts the structural facts (rank of
the class group, anticanonical class, nef generators), so a wrong ray
encoding fails loudly instead of producing plausible numbers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple

from .divisors import (DivisorClass, canonical_data, class_group, nef_ample_test,
                       nef_cone_generators, nef_coordinates, from_coordinates, AMPLE)
from .fan import Fan, require_valid, star_subdivision

NAMES = ("p3", "wp1122", "blowup-p3-line", "p1xp2", "quadric-cone-resolution")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Expectation:
    key: str
    expected: object
    source: str


@dataclass
class CatalogEntry:
    name: str
    fan: Fan
    basis_names: Tuple[str, ...]
    basis: Tuple[DivisorClass, ...]
    eta_coords: Tuple[int, ...]
    description: str
    line_names: Dict[Tuple[int, ...], str]
    hilb_dim: Optional[int] = None
    expectations: List[Expectation] = field(default_factory=list)

    @property
    def eta(self) -> DivisorClass:
        return from_coordinates(self.basis, self.eta_coords)

    def cls(self, *coords: int) -> DivisorClass:
        return from_coordinates(self.basis, coords)

    def coordinates(self, D: DivisorClass) -> Tuple[Fraction, ...]:
        return nef_coordinates(D, self.basis)

    def expected(self, key: str):
        for e in self.expectations:
            if e.key == key:
                return e.expected
        raise KeyError(key)


def _fan(name, rays, cones) -> Fan:
    return Fan(3, tuple(tuple(r) for r in rays), tuple(tuple(sorted(c)) for c in cones), name)


def _p3_fan(name="p3") -> Fan:
    return _fan(name, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)], combinations(range(4), 3))


def _ray_class(fan: Fan, i: int) -> DivisorClass:
    return class_group(fan).ray_class(i)


def _p3() -> CatalogEntry:
    fan = _p3_fan()
    e = CatalogEntry("p3", fan, ("H",), (_ray_class(fan, 3),), (1,),
                     "projective 3-space", {(1,): "line"})
    src = "classical: projective 3-space"
    e.expectations += [
        Expectation("picard_rank", 1, src),
        Expectation("beta0", (4,), src),
        Expectation("zero_regular", [(1,)], src),
        Expectation("minus_one_regular", [(1,)], "only projective space carries a (-1)-regular ample class"),
        Expectation("line_classes", [(1,)], src),
        Expectation("h0_eta", 4, src),
    ]
    return e


def _wp1122() -> CatalogEntry:
    # weights (1,1,2,2): u0 + u1 + 2 u2 + 2 u3 = 0
    fan = _fan("wp1122", [(-1, -2, -2), (1, 0, 0), (0, 1, 0), (0, 0, 1)], combinations(range(4), 3))
    eta = _ray_class(fan, 2)
    e = CatalogEntry("wp1122", fan, ("eta",), (eta,), (1,), "weighted projective space P[1,1,2,2]",
                     {(1,): "line"}, hilb_dim=3)
    src = "worked example: weighted projective space P[1,1,2,2]"
    e.expectations += [
        Expectation("picard_rank", 1, src),
        Expectation("beta0", (3,), src + " (beta_0 = 6 eta_0 = 3 eta)"),
        Expectation("beta0_in_eta0", 6, src + " (beta_0 = 6 eta_0)"),
        Expectation("eta_is_twice_eta0", True, src + " (eta = 2 eta_0)"),
        Expectation("zero_regular", [(1,)], src + " (eta is 0-regular)"),
        Expectation("minus_one_regular", [], src + " (eta is not (-1)-regular)"),
        Expectation("singular_curve", True, src + " (singular along a toric curve of A_1 type)"),
        Expectation("oda", True, src + " (Oda variety)"),
        Expectation("line_classes", [(1,)], src + " (lines have class eta . eta_0)"),
        Expectation("hilb_dim", 3, src + " (dim Hilb = beta_0 . L = 3)"),
    ]
    return e


def _blowup() -> CatalogEntry:
    # rays e1, e2, e3, e0 of P^3, then E = star at e1 + e2
    fan = star_subdivision(_p3_fan(), (1, 1, 0), name="blowup-p3-line")
    G = class_group(fan)
    eta1 = G.ray_class(2)
    eta2 = G.ray_class(0)
    e = CatalogEntry("blowup-p3-line", fan, ("eta_1", "eta_2"), (eta1, eta2), (1, 1),
                     "projective 3-space blown up along a line",
                     {(0, 1): "l_1", (1, 0): "l_2"})
    src = "worked example: P^3 blown up along a line"
    e.expectations += [
        Expectation("picard_rank", 2, src),
        Expectation("beta0", (3, 1), src + " (beta_0 = 3 eta_1 + eta_2)"),
        Expectation("eta2_is_eta1_minus_E", True, src + " (eta_2 = eta_1 - E)"),
        Expectation("zero_regular_family", [(1, 1), (1, 2), (1, 3)], src + " (eta_1 + s eta_2 is 0-regular)"),
        Expectation("oda", True, src + " (Oda variety)"),
        Expectation("intersection_table", {"l_1": (0, 1), "l_2": (1, 0)},
                    "lines on the blow-up: l_i . eta_j = 0 iff i = j"),
        Expectation("line_classes", [(0, 1), (1, 0)], "lines on the blow-up: two classes l_1, l_2"),
    ]
    return e


def _p1xp2() -> CatalogEntry:
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)]
    cones = [p + (w,) for w in (3, 4) for p in combinations(range(3), 2)]
    fan = _fan("p1xp2", rays, cones)
    h1, h2 = _ray_class(fan, 0), _ray_class(fan, 3)
    e = CatalogEntry("p1xp2", fan, ("H_1", "H_2"), (h1, h2), (1, 1), "P^1 x P^2",
                     {(0, 1): "l_1", (1, 0): "l_2"})
    src = "worked example: P^1 x P^2"
    e.expectations += [
        Expectation("picard_rank", 2, src),
        Expectation("beta0", (3, 2), "anticanonical class of a product"),
        Expectation("zero_regular_family", [(1, 1), (1, 2), (1, 3)], src + " (H_1 + s H_2 is 0-regular)"),
        Expectation("oda", True, src + " (Oda variety)"),
        Expectation("intersection_table", {"l_1": (0, 1), "l_2": (1, 0)},
                    "lines on P^1 x P^2: l_1 = H_1 . H_2, l_2 = H_1 . H_1"),
        Expectation("line_classes", [(0, 1), (1, 0)], "lines on P^1 x P^2 for eta = H_1 + H_2"),
    ]
    return e


def _quadric() -> CatalogEntry:
    # P(O + O(1) + O(1)) over P^1: fibre rays 0,1,2 and base rays 3,4
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (1, 1, -1)]
    cones = [p + (w,) for w in (3, 4) for p in combinations(range(3), 2)]
    fan = _fan("quadric-cone-resolution", rays, cones)
    eta1, eta2 = _ray_class(fan, 2), _ray_class(fan, 4)
    e = CatalogEntry("quadric-cone-resolution", fan, ("eta_1", "eta_2"), (eta1, eta2), (1, 1),
                     "small resolution of the cone over a quadric surface",
                     {(1, 0): "l_1", (0, 1): "l_2"})
    src = "worked example: small resolution of the quadric cone"
    e.expectations += [
        Expectation("picard_rank", 2, src),
        Expectation("beta0", (3, 0), src + " (beta_0 = 3 eta_1)"),
        Expectation("smooth", True, src + " (smooth simplicial threefold)"),
        Expectation("zero_regular_family", [(1, 1)], src + " (eta_1 + eta_2 is 0-regular)"),
        Expectation("oda", True, src + " (Oda variety)"),
        Expectation("line_classes", [(0, 1), (1, 0)], "lines on the small resolution: l_1 and l_2"),
        Expectation("exceptional_normal_bundle", (-1, -1), "flopping curve of a small resolution"),
    ]
    return e


_BUILDERS: Dict[str, Callable[[], CatalogEntry]] = {
    "p3": _p3, "wp1122": _wp1122, "blowup-p3-line": _blowup,
    "p1xp2": _p1xp2, "quadric-cone-resolution": _quadric,
}


def _structural_check(e: CatalogEntry):
    require_valid(e.fan)
    G = class_group(e.fan)
    if G.free_rank != e.expected("picard_rank") or G.torsion_factors:
        raise CatalogError(f"{e.name}: class group {G.free_rank} + {G.torsion_factors}")
    beta0 = tuple(e.coordinates(canonical_data(e.fan)))
    if beta0 != tuple(Fraction(x) for x in e.expected("beta0")):
        raise CatalogError(f"{e.name}: beta_0 has coordinates {beta0}")
    gens = nef_cone_generators(e.fan)
    rays_match = len(gens) == len(e.basis) and all(
        sum(1 for x in e.coordinates(g) if x) == 1 and all(x >= 0 for x in e.coordinates(g)) for g in gens)
    if not rays_match:
        raise CatalogError(f"{e.name}: designated basis does not span the nef cone")
    if nef_ample_test(e.eta) != AMPLE:
        raise CatalogError(f"{e.name}: designated eta is not ample")


@lru_cache(maxsize=None)
def load_catalog(name: str) -> CatalogEntry:
    """Build, validate and structurally check a catalog entry."""
    if name not in _BUILDERS:
        raise CatalogError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")
    entry = _BUILDERS[name]()
    _structural_check(entry)
    return entry


def all_entries() -> List[CatalogEntry]:
    return [load_catalog(n) for n in NAMES]
