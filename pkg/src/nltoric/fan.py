"""Simplicial complete fans: validation, walls and star subdivision."""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from . import lattice


class FanError(ValueError):
    """Raised for structurally invalid fans."""


@dataclass(frozen=True)
class Fan:
    """A fan given by primitive rays and maximal cones (index tuples).

    Maximal cones are stored as sorted tuples of ray indices. The object is
    immutable and hashable so derived data can be cached per fan.
    """

    dim: int
    rays: Tuple[Tuple[int, ...], ...]
    max_cones: Tuple[Tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        )

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def cone_inverses(self) -> Tuple[Tuple[Tuple[Fraction, ...], ...], ...]:
        """Per max cone, the rational inverse of its ray matrix (rays as rows).

        ``coords = x * inv`` expresses a point in the cone's ray basis.
        """
        out = []
        for cone in self.max_cones:
            mat = [list(self.rays[i]) for i in cone]
            inv = []
            for j in range(self.dim):
                e = [int(k == j) for k in range(self.dim)]
                col = lattice.solve(lattice.transpose(mat), e)
                if col is None:
                    raise FanError(f"cone {cone} is not simplicial")
                inv.append(tuple(col))
            out.append(tuple(inv))
        return tuple(out)

    def cone_coordinates(self, k: int, point: Sequence) -> List[Fraction]:
        """Coefficients of ``point`` in the ray basis of max cone ``k``."""
        inv = self.cone_inverses[k]
        return [sum(Fraction(p) * inv[j][i] for j, p in enumerate(point)) for i in range(self.dim)]

    def cones_of_dim(self, d: int) -> List[Tuple[int, ...]]:
        faces = set()
        for cone in self.max_cones:
            faces.update(combinations(cone, d))
        return sorted(faces)

    def is_face(self, subset) -> bool:
        s = set(subset)
        return any(s <= set(c) for c in self.max_cones)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        out = {"dim": self.dim, "rays": [list(r) for r in self.rays],
               "max_cones": [list(c) for c in self.max_cones]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Fan":
        for key in ("dim", "rays", "max_cones"):
            if key not in data:
                raise FanError(f"fan JSON is missing {key!r}")
        ints = [data["dim"]] + [x for r in data["rays"] for x in r] + [
            x for c in data["max_cones"] for x in c]
        if any(not isinstance(x, int) or isinstance(x, bool) for x in ints):
            raise FanError("fan JSON must contain only integers")
        return cls(data["dim"], data["rays"], data["max_cones"], data.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> "Fan":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# -- validation ----------------------------------------------------------------


@dataclass
class ValidationReport:
    valid: bool
    errors: List[str]
    singular_cones: List[Tuple[Tuple[int, ...], int]]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "errors": self.errors,
            "singular_cones": [{"cone": list(c), "multiplicity": m} for c, m in self.singular_cones],
        }


def _facets(fan: Fan) -> Dict[Tuple[int, ...], List[int]]:
    out: Dict[Tuple[int, ...], List[int]] = {}
    for k, cone in enumerate(fan.max_cones):
        for face in combinations(cone, fan.dim - 1):
            out.setdefault(face, []).append(k)
    return out


def validate_fan(fan: Fan, samples: int = 1000, seed: int = 0) -> ValidationReport:
    """Check that ``fan`` is a simplicial complete fan.

    Completeness uses the pseudo-manifold test (every facet shared by
    exactly two cones, connected adjacency graph) plus a seeded random
    sample of lattice points, each of which must land in some cone and never
    in the interiors of two cones.
    """
    r = fan.dim
    errors = []
    if r < 2:
        errors.append("dimension must be at least 2")
    for i, ray in enumerate(fan.rays):
        if len(ray) != r:
            errors.append(f"ray {i} has length {len(ray)}, expected {r}")
        elif lattice.content(ray) != 1:
            errors.append(f"ray {i} {list(ray)} is not primitive")
    seen = {}
    for i, ray in enumerate(fan.rays):
        if ray in seen:
            errors.append(f"duplicate ray {list(ray)} at indices {seen[ray]} and {i}")
        seen.setdefault(ray, i)
    if errors:
        return ValidationReport(False, errors, [])

    for cone in fan.max_cones:
        if len(cone) != r or len(set(cone)) != r:
            errors.append(f"cone {list(cone)} does not have {r} distinct rays")
        elif any(i < 0 or i >= fan.n_rays for i in cone):
            errors.append(f"cone {list(cone)} references a missing ray")
        elif lattice.det([fan.rays[i] for i in cone]) == 0:
            errors.append(f"cone {list(cone)} is not simplicial")
    if len(set(fan.max_cones)) != len(fan.max_cones):
        errors.append("repeated maximal cone")
    if errors:
        return ValidationReport(False, errors, [])

    facets = _facets(fan)
    for face, owners in sorted(facets.items()):
        if len(owners) == 1:
            errors.append(f"dangling wall {list(face)} (only in cone {list(fan.max_cones[owners[0]])})")
        elif len(owners) > 2:
            errors.append(f"face {list(face)} shared by {len(owners)} cones")

    adj = {k: set() for k in range(len(fan.max_cones))}
    for owners in facets.values():
        for a, b in combinations(owners, 2):
            adj[a].add(b)
            adj[b].add(a)
    stack, reached = [0], {0}
    while stack:
        for b in adj[stack.pop()]:
            if b not in reached:
                reached.add(b)
                stack.append(b)
    if len(reached) != len(fan.max_cones):
        errors.append("adjacency graph of maximal cones is disconnected")

    rng = random.Random(seed)
    bound = 10 * max(1, max(abs(x) for ray in fan.rays for x in ray))
    for _ in range(samples):
        p = [0] * r
        while not any(p):
            p = [rng.randint(-bound, bound) for _ in range(r)]
        inside, interior = [], []
        for k in range(len(fan.max_cones)):
            coords = fan.cone_coordinates(k, p)
            if all(c >= 0 for c in coords):
                inside.append(k)
                if all(c > 0 for c in coords):
                    interior.append(k)
        if not inside:
            errors.append(f"sample point {p} lies in no cone (fan not complete)")
            break
        if len(interior) > 1 or (interior and len(inside) > 1):
            cones = [list(fan.max_cones[k]) for k in inside]
            errors.append(f"sample point {p} lies in overlapping cones {cones}")
            break

    singular = [(c, m) for c, m in singular_locus_summary(fan).items() if m > 1] if not errors else []
    return ValidationReport(not errors, errors, singular)


def require_valid(fan: Fan) -> Fan:
    report = validate_fan(fan)
    if not report.valid:
        raise FanError("; ".join(report.errors))
    return fan


def singular_locus_summary(fan: Fan) -> Dict[Tuple[int, ...], int]:
    """Multiplicity (lattice index) of every nonzero cone of the fan."""
    out = {}
    for d in range(1, fan.dim + 1):
        for cone in fan.cones_of_dim(d):
            out[cone] = lattice.lattice_index([fan.rays[i] for i in cone])
    return out


# -- walls -------------------------------------------------------------------


@dataclass(frozen=True)
class Wall:
    """A codimension-one cone shared by two maximal cones.

    ``relation`` lists integer coefficients ``(lam_a, lam_b, mu_1, ...)``
    with ``lam_a*u_a + lam_b*u_b + sum(mu_i*u_i) == 0`` where ``u_a``,
    ``u_b`` are the rays of ``cone_a``, ``cone_b`` off the wall and ``u_i``
    runs over ``ray_indices`` in order.
    """

    ray_indices: Tuple[int, ...]
    cone_a: int
    cone_b: int
    ray_a: int
    ray_b: int
    relation: Tuple[int, ...]

    @property
    def mu(self) -> Dict[int, int]:
        return dict(zip(self.ray_indices, self.relation[2:]))


def walls(fan: Fan) -> List[Wall]:
    out = []
    for face, owners in sorted(_facets(fan).items()):
        if len(owners) != 2:
            raise FanError(f"face {list(face)} is not a wall")
        ka, kb = sorted(owners)
        ua = next(i for i in fan.max_cones[ka] if i not in face)
        ub = next(i for i in fan.max_cones[kb] if i not in face)
        idx = [ua, ub, *face]
        cols = lattice.transpose([fan.rays[i] for i in idx])
        kernel = lattice.nullspace(cols)
        if len(kernel) != 1:
            raise FanError(f"wall {list(face)} has a degenerate relation")
        rel = lattice.primitive(kernel[0])
        if rel[0] < 0:
            rel = [-x for x in rel]
        if rel[0] <= 0 or rel[1] <= 0:
            raise FanError(f"cones around wall {list(face)} overlap")
        out.append(Wall(face, ka, kb, ua, ub, tuple(rel)))
    return out


# -- star subdivision --------------------------------------------------------


def star_subdivision(fan: Fan, new_ray: Sequence[int], name: str = "") -> Fan:
    """Insert ``new_ray`` and subdivide every maximal cone containing it."""
    v = tuple(int(x) for x in new_ray)
    if len(v) != fan.dim or lattice.content(v) != 1:
        raise FanError(f"new ray {list(v)} must be a primitive vector of length {fan.dim}")
    if v in fan.rays:
        raise FanError(f"new ray {list(v)} is already a ray of the fan")
    new_index = fan.n_rays
    cones = []
    hit = False
    for k, cone in enumerate(fan.max_cones):
        coords = fan.cone_coordinates(k, v)
        if all(c >= 0 for c in coords):
            hit = True
            for i, c in zip(cone, coords):
                if c > 0:
                    cones.append(tuple(j for j in cone if j != i) + (new_index,))
        else:
            cones.append(cone)
    if not hit:
        raise FanError(f"new ray {list(v)} is outside the support of the fan")
    out = Fan(fan.dim, fan.rays + (v,), tuple(cones), name or fan.name)
    return require_valid(out)
