"""Castelnuovo-Mumford regularity of line bundles and Oda window checks."""

from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .cohomology import graded_cohomology, h0, minkowski_decomposition_check
from .divisors import (AMPLE, NEF, DivisorClass, DivisorError, canonical_data,
                       cartier_nef_basis, class_group, from_coordinates, is_cartier,
                       is_primitive_cartier, nef_ample_test, nef_coordinates,
                       require_cartier)
from .fan import Fan
from .parallel import pmap


class NotAmpleError(DivisorError):
    pass


@dataclass(frozen=True)
class RegularityVerdict:
    subject: Tuple[int, ...]
    reference: Tuple[int, ...]
    m: int
    passed: bool
    failing_twist: Optional[Tuple[int, Tuple[int, ...]]] = None


def _require_ample(L: DivisorClass):
    if nef_ample_test(L) != AMPLE:
        raise NotAmpleError(f"reference class {list(L.coeffs)} is not ample")


def is_m_regular(F: DivisorClass, L: DivisorClass, m: int) -> RegularityVerdict:
    """``h^q(F + (m - q) L) == 0`` for ``q = 1..r``."""
    _require_ample(L)
    require_cartier(F)
    for q in range(1, F.fan.dim + 1):
        twist = F + (m - q) * L
        if graded_cohomology(twist).h[q]:
            return RegularityVerdict(F.coeffs, L.coeffs, m, False, (q, twist.coeffs))
    return RegularityVerdict(F.coeffs, L.coeffs, m, True)


@dataclass(frozen=True)
class QuickCriteria:
    zero_regular: bool
    minus_one_regular: bool


def quick_criteria(eta: DivisorClass) -> QuickCriteria:
    """Regularity of an ample class from a single ``h^0``.

    ``eta`` is 0-regular iff ``h^0((r-1) eta - beta_0) == 0`` and
    (-1)-regular iff ``h^0(r eta - beta_0) == 0``.
    """
    _require_ample(eta)
    r = eta.fan.dim
    beta0 = canonical_data(eta.fan)
    return QuickCriteria(h0((r - 1) * eta - beta0) == 0, h0(r * eta - beta0) == 0)


# -- catalog-wide scans --------------------------------------------------------


def ample_window(fan: Fan, bound: int, primitive_only: bool = True) -> List[DivisorClass]:
    """Ample Cartier classes with coordinates ``1..bound`` in the Cartier nef basis."""
    basis = cartier_nef_basis(fan)
    out = []
    for coords in product(range(1, bound + 1), repeat=len(basis)):
        D = from_coordinates(basis, coords)
        if nef_ample_test(D) != AMPLE:
            continue
        if primitive_only and not is_primitive_cartier(D):
            continue
        out.append(D)
    return out


@dataclass
class ClassificationRow:
    name: str
    picard_rank: int
    gorenstein: bool
    zero_regular: List[Tuple[int, ...]]
    minus_one_regular: List[Tuple[int, ...]]
    bound: int

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "picard_rank": self.picard_rank,
            "gorenstein": self.gorenstein,
            "zero_regular_ample": [list(c) for c in self.zero_regular],
            "minus_one_regular_ample": [list(c) for c in self.minus_one_regular],
            "window_bound": self.bound,
            "status": "verified on window",
        }


def catalog_classification(fans: Sequence[Fan], bound: int = 4) -> List[ClassificationRow]:
    """Which fans carry a 0-regular / (-1)-regular primitive ample class in the window."""
    rows = []
    for fan in fans:
        basis = cartier_nef_basis(fan)
        zero, minus = [], []
        for eta in ample_window(fan, bound):
            qc = quick_criteria(eta)
            coords = tuple(int(x) for x in nef_coordinates(eta, basis))
            if qc.zero_regular:
                zero.append(coords)
            if qc.minus_one_regular:
                minus.append(coords)
        rows.append(ClassificationRow(
            fan.name, class_group(fan).free_rank, is_cartier(canonical_data(fan)), zero, minus, bound))
    return rows


# -- Oda windows ---------------------------------------------------------------


@dataclass
class OdaWindowReport:
    bound: int
    pairs_checked: int
    failures: List[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "pairs_checked": self.pairs_checked,
            "failures": [{"alpha1": list(a), "alpha2": list(b), "missing_point": list(p)}
                         for a, b, p in self.failures],
            "status": "verified on window" if self.passed else "failed",
        }


def _oda_pair(args):
    a1, a2 = args
    return minkowski_decomposition_check(a1, a2)


def oda_window_check(fan: Fan, bound: int = 3) -> OdaWindowReport:
    """Minkowski decomposition for every (ample, nef) pair in the window.

    Classes are taken with coordinates ``0..bound`` in the Cartier nef basis.
    """
    basis = cartier_nef_basis(fan)
    ample, nef = [], []
    for coords in product(range(bound + 1), repeat=len(basis)):
        D = from_coordinates(basis, coords)
        kind = nef_ample_test(D)
        if kind == AMPLE:
            ample.append((coords, D))
        if kind in (AMPLE, NEF):
            nef.append((coords, D))
    pairs = [(c1, D1, c2, D2) for c1, D1 in ample for c2, D2 in nef if any(c2)]
    results = pmap(_oda_pair, [(D1, D2) for _, D1, _, D2 in pairs])
    report = OdaWindowReport(bound, len(pairs))
    for (c1, _, c2, _), missing in zip(pairs, results):
        if missing is not None:
            report.failures.append((c1, c2, missing))
    return report


# -- the auxiliary vanishings ----------------------------------------------------


@dataclass(frozen=True)
class VanishingTriple:
    h1_beta_minus_eta: int
    h2_beta_minus_eta: int
    h2_beta_minus_2eta: int
    beta_minus_2eta_nef: bool
    beta_zero_regular: bool

    @property
    def holds(self) -> bool:
        return not (self.h1_beta_minus_eta or self.h2_beta_minus_eta or self.h2_beta_minus_2eta)

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "h1(beta-eta)": self.h1_beta_minus_eta,
            "h2(beta-eta)": self.h2_beta_minus_eta,
            "h2(beta-2eta)": self.h2_beta_minus_2eta,
            "beta-2eta nef": self.beta_minus_2eta_nef,
            "beta 0-regular wrt eta": self.beta_zero_regular,
        }


def vanishing_triple(beta: DivisorClass, eta: DivisorClass) -> VanishingTriple:
    """``h^1(beta-eta) = h^2(beta-eta) = h^2(beta-2eta) = 0`` and its two sufficient conditions."""
    require_cartier(beta)
    require_cartier(eta)
    c1 = graded_cohomology(beta - eta).h
    c2 = graded_cohomology(beta - 2 * eta).h
    nef = nef_ample_test(beta - 2 * eta) in (NEF, AMPLE)
    try:
        reg = is_m_regular(beta, eta, 0).passed
    except NotAmpleError:
        reg = False
    return VanishingTriple(c1[1], c1[2], c2[2], nef, reg)
