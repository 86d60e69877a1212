"""Noether-Lefschetz codimension bounds and loci of surfaces containing a line.

Everything here assumes a simplicial complete threefold. Lower bounds are
only emitted when every hypothesis of the route that produces them has
been checked; hypotheses that quantify over infinitely many classes are
checked on a finite window and reported as such.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import lattice
from .cohomology import graded_cohomology, h0
from .cox import graded_basis, mult_map_surjective
from .divisors import (AMPLE, NEF, DivisorClass, DivisorError, canonical_data,
                       fan_walls, intersection_number, is_cartier,
                       is_primitive_cartier, nef_ample_test)
from .fan import Fan, Wall
from .regularity import is_m_regular, oda_window_check, quick_criteria, vanishing_triple

PASS, FAIL, WINDOW = "pass", "fail", "verified-on-window"


class HypothesisError(ValueError):
    """The computation is fine but the requested statement does not apply."""


def _require_threefold(fan: Fan):
    if fan.dim != 3:
        raise DivisorError("the Noether-Lefschetz calculator needs a threefold (dim 3)")


@lru_cache(maxsize=None)
def _oda_window(fan: Fan, bound: int):
    return oda_window_check(fan, bound)


# -- bounds ----------------------------------------------------------------------


@dataclass
class BoundReport:
    fan: str
    eta: Tuple[int, ...]
    n: int
    beta: Tuple[int, ...]
    hypotheses: Dict[str, str]
    routes: Dict[str, bool]
    lower_bound: Optional[int]
    lower_route: Optional[str]
    upper_bound: int
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "fan": self.fan,
            "eta": list(self.eta),
            "n": self.n,
            "beta": list(self.beta),
            "hypotheses": dict(self.hypotheses),
            "routes": dict(self.routes),
            "lower_bound": self.lower_bound,
            "lower_bound_route": self.lower_route,
            "upper_bound": self.upper_bound,
            "upper_bound_source": "h^0(O(n eta)) = h^{2,0} of a quasi-smooth surface",
            "notes": list(self.notes),
        }


def _flag(ok: bool) -> str:
    return PASS if ok else FAIL


def nl_bounds(eta: DivisorClass, n: int, oda_bound: int = 3, mult_window: int = 3) -> BoundReport:
    """Lower and upper bounds for the codimension of the Noether-Lefschetz locus.

    Four routes can produce a lower bound, each demanding a 0-regular
    primitive ample ``eta`` and ``beta = beta_0 + n eta`` ample Cartier:

    * ``regularity``: ``beta`` is 0-regular with respect to ``eta``;
    * ``fano``: ``beta_0`` ample and ``n >= 3``;
    * ``oda``: the Oda property (window-checked) and ``beta - 2 eta`` nef;
    * ``multiplication``: ``S_beta (x) S_{k eta} -> S_{beta + k eta}``
      surjective for ``k = 0..mult_window`` plus the three auxiliary
      vanishings.

    The bound is ``n + 1`` when ``eta`` is also (-1)-regular and ``n``
    otherwise. The upper bound is always ``h^0(n eta)``.
    """
    fan = eta.fan
    _require_threefold(fan)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if nef_ample_test(eta) != AMPLE:
        raise HypothesisError("eta must be ample")
    beta0 = canonical_data(fan)
    if not is_cartier(beta0):
        raise HypothesisError("beta_0 is not Cartier: the variety is not Gorenstein")
    beta = beta0 + n * eta
    if nef_ample_test(beta) != AMPLE:
        raise HypothesisError(f"beta = beta_0 + {n} eta is not ample")

    qc = quick_criteria(eta)
    hyp = {
        "beta ample": PASS,
        "beta Cartier": PASS,
        "eta primitive": _flag(is_primitive_cartier(eta)),
        "eta 0-regular": _flag(qc.zero_regular),
        "eta (-1)-regular": _flag(qc.minus_one_regular),
        "beta 0-regular wrt eta": _flag(is_m_regular(beta, eta, 0).passed),
        "beta_0 ample (Fano)": _flag(nef_ample_test(beta0) == AMPLE),
        "n >= 3": _flag(n >= 3),
        "beta - 2eta nef": _flag(nef_ample_test(beta - 2 * eta) in (NEF, AMPLE)),
        "vanishing triple": _flag(vanishing_triple(beta, eta).holds),
    }
    hyp["Oda window"] = WINDOW if _oda_window(fan, oda_bound).passed else FAIL
    mult_ok = all(mult_map_surjective(beta, k * eta).surjective for k in range(mult_window + 1))
    hyp["multiplication window"] = WINDOW if mult_ok else FAIL

    ok = lambda *keys: all(hyp[k] in (PASS, WINDOW) for k in keys)
    base = ("eta primitive", "eta 0-regular")
    routes = {
        "regularity": ok(*base, "beta 0-regular wrt eta"),
        "fano": ok(*base, "beta_0 ample (Fano)", "n >= 3"),
        "oda": ok(*base, "Oda window", "beta - 2eta nef"),
        "multiplication": ok(*base, "multiplication window", "vanishing triple"),
    }
    lower = route = None
    fired = [name for name, passed in routes.items() if passed]
    if fired:
        route = fired[0]
        lower = n + 1 if hyp["eta (-1)-regular"] == PASS else n
    upper = h0(n * eta)
    notes = []
    if route in ("oda", "multiplication"):
        notes.append(f"{route} route relies on a hypothesis verified on a finite window only")
    if lower is not None and lower > upper:
        raise AssertionError(f"lower bound {lower} exceeds upper bound {upper}")
    return BoundReport(fan.name, eta.coeffs, n, beta.coeffs, hyp, routes, lower, route, upper, notes)


# -- the syzygy bundle -------------------------------------------------------------


@dataclass(frozen=True)
class SyzygyEntry:
    q: int
    k: int
    value: Optional[int]
    cokernel: Optional[int]
    kernel: Optional[int]

    @property
    def in_range(self) -> bool:
        return self.q >= 1 and self.k + self.q >= 1

    def to_dict(self) -> dict:
        return {"q": self.q, "k": self.k, "h^q(M0(k eta))": self.value,
                "cokernel_part": self.cokernel, "kernel_part": self.kernel,
                "in_vanishing_range": self.in_range}


@dataclass
class SyzygyReport:
    hypotheses: Dict[str, str]
    entries: List[SyzygyEntry]

    @property
    def hypotheses_hold(self) -> bool:
        return all(v in (PASS, WINDOW) for v in self.hypotheses.values())

    @property
    def passed(self) -> bool:
        return all(e.value == 0 for e in self.entries if e.in_range)

    def to_dict(self) -> dict:
        return {"hypotheses": dict(self.hypotheses), "passed": self.passed,
                "entries": [e.to_dict() for e in self.entries]}


def _syzygy_entry(beta: DivisorClass, eta: DivisorClass, q: int, k: int) -> SyzygyEntry:
    """``h^q(M_0(k eta))`` from the twisted sequence ``0 -> M_0 -> S_beta (x) O -> O(beta) -> 0``.

    ``h^q = dim coker(S_beta (x) H^{q-1}(k eta) -> H^{q-1}(beta + k eta))
    + dim ker(S_beta (x) H^q(k eta) -> H^q(beta + k eta))``. The ``q = 1``
    cokernel is an explicit multiplication rank; every other term is only
    determined when one side of its map vanishes.
    """
    s_beta = len(graded_basis(beta))
    twist = graded_cohomology(k * eta).h
    target = graded_cohomology(beta + k * eta).h
    if q == 1:
        if twist[0]:
            coker = mult_map_surjective(beta, k * eta).cokernel_dim
        else:
            coker = target[0]
    elif target[q - 1] == 0:
        coker = 0
    elif twist[q - 1] == 0:
        coker = target[q - 1]
    else:
        coker = None
    if twist[q] == 0:
        ker = 0
    elif target[q] == 0:
        ker = s_beta * twist[q]
    else:
        ker = None
    value = None if coker is None or ker is None else coker + ker
    return SyzygyEntry(q, k, value, coker, ker)


def syzygy_vanishing_check(beta: DivisorClass, eta: DivisorClass,
                           k_range: Sequence[int] = range(-2, 4),
                           q_range: Sequence[int] = (1, 2, 3)) -> SyzygyReport:
    """Evaluate ``h^q(M_0(k eta))`` on a grid and check it vanishes for ``k + q >= 1``."""
    _require_threefold(beta.fan)
    hyp = {
        "beta nef Cartier": _flag(is_cartier(beta) and nef_ample_test(beta) in (NEF, AMPLE)),
        "eta ample": _flag(is_cartier(eta) and nef_ample_test(eta) == AMPLE),
    }
    hyp["eta 0-regular"] = _flag(hyp["eta ample"] == PASS and quick_criteria(eta).zero_regular)
    kmax = max(max(k_range), 0)
    hyp["multiplication window"] = WINDOW if all(
        mult_map_surjective(beta, k * eta).surjective for k in range(kmax + 1)) else FAIL
    hyp["vanishing triple"] = _flag(vanishing_triple(beta, eta).holds)
    entries = [_syzygy_entry(beta, eta, q, k) for q in q_range for k in k_range]
    return SyzygyReport(hyp, entries)


# -- lines ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantCurve:
    """The torus-invariant curve of a wall, measured against ``eta``."""

    wall: Wall
    eta_degree: Fraction
    beta0_degree: Fraction
    in_smooth_locus: bool

    @property
    def is_line(self) -> bool:
        return self.eta_degree == 1

    def pairing(self, basis: Sequence[DivisorClass]) -> Tuple[Fraction, ...]:
        return tuple(intersection_number(b, self.wall) for b in basis)

    def to_dict(self, basis: Optional[Sequence[DivisorClass]] = None) -> dict:
        out = {
            "wall": list(self.wall.ray_indices),
            "eta_degree": _q(self.eta_degree),
            "beta0_degree": _q(self.beta0_degree),
            "in_smooth_locus": self.in_smooth_locus,
        }
        if basis is not None:
            out["pairing"] = [_q(x) for x in self.pairing(basis)]
        return out


def _q(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else {"num": x.numerator, "den": x.denominator}


def invariant_curve(eta: DivisorClass, wall: Wall) -> InvariantCurve:
    fan = eta.fan
    mult = lambda k: lattice.lattice_index([fan.rays[i] for i in fan.max_cones[k]])
    smooth = mult(wall.cone_a) == 1 and mult(wall.cone_b) == 1
    return InvariantCurve(wall, intersection_number(eta, wall),
                          intersection_number(canonical_data(fan), wall), smooth)


def enumerate_lines(eta: DivisorClass) -> List[InvariantCurve]:
    """Torus-invariant curves ``C`` with ``eta . C == 1``."""
    _require_threefold(eta.fan)
    if nef_ample_test(eta) != AMPLE:
        raise HypothesisError("lines are defined with respect to an ample class")
    curves = [invariant_curve(eta, w) for w in fan_walls(eta.fan)]
    return [c for c in curves if c.is_line]


def line_classes(curves: Sequence[InvariantCurve], basis: Sequence[DivisorClass]):
    """Group curves by numerical class (their pairing with ``basis``)."""
    out: Dict[Tuple[Fraction, ...], List[InvariantCurve]] = {}
    for c in curves:
        out.setdefault(c.pairing(basis), []).append(c)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class LineLocusCodim:
    codim: int
    hilb_dim: int
    assumptions: Tuple[str, ...]


def line_locus_codim(curve: InvariantCurve, n: int,
                     hilb_dim: Union[int, str] = "auto") -> LineLocusCodim:
    """Codimension of the surfaces of class ``beta_0 + n eta`` containing a deformation of ``curve``.

    Counts ``h^0(O_L(beta)) - dim Hilb = (beta . L + 1) - dim Hilb`` with
    ``beta . L = beta_0 . L + n (eta . L)``. With ``hilb_dim="auto"`` the
    Hilbert scheme dimension is ``beta_0 . L``, which needs ``L`` in the
    smooth locus.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    assumptions = ["H^1(I_L(beta)) = 0 (Severi-type vanishing, not recomputed)"]
    if hilb_dim == "auto":
        if not curve.in_smooth_locus:
            raise HypothesisError("curve meets the singular locus; pass hilb_dim explicitly")
        if curve.beta0_degree.denominator != 1:
            raise HypothesisError("beta_0 . L is not an integer")
        hilb_dim = int(curve.beta0_degree)
        assumptions.append("h^1(N_L) = 0, so dim Hilb = h^0(N_L) = beta_0 . L")
    else:
        hilb_dim = int(hilb_dim)
        assumptions.append("dim Hilb supplied by caller")
    value = n * curve.eta_degree + 1 + curve.beta0_degree - hilb_dim
    if value < 0 or Fraction(value).denominator != 1:
        raise ValueError(f"inconsistent Hilbert scheme dimension {hilb_dim}: codimension {value}")
    return LineLocusCodim(int(value), hilb_dim, tuple(assumptions))


def normal_bundle_degrees(fan: Fan, wall: Wall) -> Tuple[int, int]:
    """Splitting degrees ``(a, b)`` of the normal bundle ``O(a) + O(b)`` of a wall curve.

    With both adjacent cones smooth the wall relation reads
    ``u_a + u_b + a u_1 + b u_2 = 0``.
    """
    _require_threefold(fan)
    for k in (wall.cone_a, wall.cone_b):
        if lattice.lattice_index([fan.rays[i] for i in fan.max_cones[k]]) != 1:
            raise HypothesisError(f"cone {list(fan.max_cones[k])} is singular")
    lam_a, lam_b, a, b = wall.relation
    assert lam_a == lam_b == 1
    beta0 = intersection_number(canonical_data(fan), wall)
    if a + b != beta0 - 2:
        raise AssertionError(f"degree identity fails on wall {list(wall.ray_indices)}")
    return a, b


def restriction_codim(wall: Wall, beta: DivisorClass) -> int:
    """Rank of ``S_beta -> H^0(O_L(beta))`` for the invariant curve ``L`` of ``wall``.

    A monomial vanishes on ``L`` iff it involves a variable of a wall ray;
    the others restrict to distinct torus characters on ``L``.
    """
    return sum(1 for e in graded_basis(beta).exponents
               if all(e[i] == 0 for i in wall.ray_indices))
