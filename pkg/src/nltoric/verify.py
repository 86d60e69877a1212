"""Evaluate every catalog expectation against the engine."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .catalog import CatalogEntry, Expectation, all_entries, load_catalog
from .cohomology import h0
from .divisors import class_group, canonical_data, fan_walls, intersection_number
from .fan import singular_locus_summary
from .nl import enumerate_lines, line_classes, normal_bundle_degrees
from .regularity import oda_window_check, quick_criteria


@dataclass(frozen=True)
class CheckResult:
    entry: str
    key: str
    expected: object
    actual: object
    source: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict:
        return {"entry": self.entry, "key": self.key, "passed": self.passed,
                "expected": _jsonable(self.expected), "actual": _jsonable(self.actual),
                "source": self.source}


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else {"num": x.numerator, "den": x.denominator}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _ints(xs) -> tuple:
    return tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in xs)


def _lines(e: CatalogEntry):
    return line_classes(enumerate_lines(e.eta), e.basis)


def _zero_regular(e: CatalogEntry, coords_list):
    return [c for c in coords_list if quick_criteria(e.cls(*c)).zero_regular]


_EVALUATORS: Dict[str, Callable[[CatalogEntry, object], object]] = {
    "picard_rank": lambda e, _: class_group(e.fan).free_rank,
    "beta0": lambda e, _: _ints(e.coordinates(canonical_data(e.fan))),
    "beta0_in_eta0": lambda e, _: canonical_data(e.fan).free[0] // class_group(e.fan).ray_class(0).free[0],
    "eta_is_twice_eta0": lambda e, _: e.eta == 2 * class_group(e.fan).ray_class(0),
    "eta2_is_eta1_minus_E": lambda e, _: e.basis[1] == e.basis[0] - class_group(e.fan).ray_class(4),
    "zero_regular": lambda e, exp: [c for c in [(1,)] if quick_criteria(e.cls(*c)).zero_regular],
    "minus_one_regular": lambda e, exp: [c for c in [(1,)] if quick_criteria(e.cls(*c)).minus_one_regular],
    "zero_regular_family": lambda e, exp: _zero_regular(e, exp),
    "singular_curve": lambda e, _: any(
        m > 1 and len(c) == 2 for c, m in singular_locus_summary(e.fan).items()),
    "smooth": lambda e, _: all(m == 1 for m in singular_locus_summary(e.fan).values()),
    "oda": lambda e, _: oda_window_check(e.fan, 2).passed,
    "intersection_table": lambda e, exp: {
        e.line_names[k]: _ints(k) for k in _lines(e) if e.line_names.get(k) in exp},
    "line_classes": lambda e, _: [_ints(k) for k in _lines(e)],
    "hilb_dim": lambda e, _: next(int(c.beta0_degree) for c in enumerate_lines(e.eta)),
    "h0_eta": lambda e, _: h0(e.eta),
    "exceptional_normal_bundle": lambda e, _: next(
        normal_bundle_degrees(e.fan, w) for w in fan_walls(e.fan)
        if intersection_number(canonical_data(e.fan), w) == 0),
}


def check(entry: CatalogEntry, exp: Expectation) -> CheckResult:
    actual = _EVALUATORS[exp.key](entry, exp.expected)
    return CheckResult(entry.name, exp.key, exp.expected, actual, exp.source)


def verify_catalog(names: Optional[Sequence[str]] = None) -> List[CheckResult]:
    entries = [load_catalog(n) for n in names] if names else all_entries()
    return [check(e, x) for e in entries for x in e.expectations]
