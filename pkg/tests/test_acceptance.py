"""Acceptance criteria 1-10, one test each, all comparisons exact.

Each test prints a single ``criterion N: PASS|FAIL`` line; run this file
directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nltoric.catalog import NAMES, load_catalog
from nltoric.cohomology import graded_cohomology, h0, serre_duality_check
from nltoric.cox import fermat, mult_map_surjective
from nltoric.divisors import (AMPLE, NEF, canonical_data, cartier_nef_basis, class_group,
                              fan_walls, from_coordinates, intersection_number, is_cartier,
                              nef_ample_test)
from nltoric.nl import (enumerate_lines, invariant_curve, line_classes, line_locus_codim,
                        nl_bounds, normal_bundle_degrees, restriction_codim, syzygy_vanishing_check)
from nltoric.regularity import catalog_classification, is_m_regular, oda_window_check, quick_criteria

from test_cohomology import kunneth

RESULTS = {}


def report(number, title, checks):
    """Record and print one criterion; ``checks`` is a list of (label, bool)."""
    failed = [label for label, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {number}: {status} - {title} ({len(checks) - len(failed)}/{len(checks)} checks)"
    if failed:
        line += "; failing: " + ", ".join(failed[:5])
    RESULTS[number] = status
    print(line, file=sys.__stdout__, flush=True)
    assert not failed, line


def criterion_1():
    ranks = tuple(class_group(load_catalog(n).fan).free_rank for n in NAMES)
    checks = [("ranks", ranks == (1, 1, 2, 2, 2))]
    beta0 = lambda n: load_catalog(n).coordinates(canonical_data(load_catalog(n).fan))
    checks.append(("blowup beta_0 = 3eta_1 + eta_2", beta0("blowup-p3-line") == (3, 1)))
    checks.append(("quadric beta_0 = 3eta_1", beta0("quadric-cone-resolution") == (3, 0)))
    wp = load_catalog("wp1122")
    eta0 = class_group(wp.fan).ray_class(0)
    b0 = canonical_data(wp.fan)
    checks.append(("wp beta_0 = 6eta_0", b0 == 6 * eta0))
    checks.append(("wp beta_0 = 3eta", b0 == 3 * wp.eta))
    checks.append(("wp eta = 2eta_0", wp.eta == 2 * eta0))
    report(1, "catalog structure", checks)


def criterion_2():
    e = load_catalog("blowup-p3-line")
    classes = line_classes(enumerate_lines(e.eta), e.basis)
    named = {e.line_names[tuple(int(x) for x in k)]: k for k in classes}
    checks = []
    for i in (1, 2):
        for j in (1, 2):
            value = named[f"l_{i}"][j - 1]
            checks.append((f"l_{i}.eta_{j}", value == (0 if i == j else 1)))
    report(2, "intersection table on the blow-up", checks)


def _random_cartier(fan, rng, count):
    G = class_group(fan)
    out = []
    while len(out) < count:
        D = G.divisor([rng.randint(-4, 4) for _ in range(fan.n_rays)])
        if is_cartier(D):
            out.append(D)
    return out


def criterion_3():
    checks = []
    rng = random.Random(2024)
    for name in NAMES:
        fan = load_catalog(name).fan
        basis = cartier_nef_basis(fan)
        for k in range(50):
            D = from_coordinates(basis, [rng.randint(0, 6) for _ in basis])
            h = graded_cohomology(D).h
            checks.append((f"demazure {name} #{k}", nef_ample_test(D) in (NEF, AMPLE) and h[1:] == (0, 0, 0)))
        for k, D in enumerate(_random_cartier(fan, rng, 50)):
            checks.append((f"serre {name} #{k}", serre_duality_check(D) == (True, None)))
    e = load_catalog("p1xp2")
    for k in range(20):
        a, b = rng.randint(-5, 4), rng.randint(-5, 4)
        h = graded_cohomology(from_coordinates(e.basis, (b, a))).h
        checks.append((f"kunneth ({a},{b})", list(h) == kunneth(a, b)))
    report(3, "cohomology engine: Demazure, Serre duality, Kunneth", checks)


def criterion_4():
    p3 = load_catalog("p3")
    wp = load_catalog("wp1122")
    bl = load_catalog("blowup-p3-line")
    checks = [
        ("O_P3(1) (-1)-regular", is_m_regular(p3.eta, p3.eta, -1).passed),
        ("wp eta 0-regular", is_m_regular(wp.eta, wp.eta, 0).passed),
        ("wp eta not (-1)-regular", not is_m_regular(wp.eta, wp.eta, -1).passed),
    ]
    for s in (1, 2, 3):
        eta = bl.cls(1, s)
        checks.append((f"blowup eta_1+{s}eta_2 0-regular",
                       is_m_regular(eta, eta, 0).passed and quick_criteria(eta).zero_regular))
    rows = catalog_classification([load_catalog(n).fan for n in NAMES], bound=4)
    checks.append(("only p3 carries a (-1)-regular ample class",
                   [r.name for r in rows if r.minus_one_regular] == ["p3"]))
    report(4, "regularity", checks)


def criterion_5():
    checks = []
    for name in ("p1xp2", "blowup-p3-line", "wp1122", "quadric-cone-resolution"):
        r = oda_window_check(load_catalog(name).fan, bound=3)
        checks.append((f"oda {name}", r.passed and r.pairs_checked > 0))
    report(5, "Oda windows with bound 3", checks)


def criterion_6():
    p3 = load_catalog("p3")
    beta = 5 * p3.eta
    f = fermat(class_group(p3.fan), beta)
    # R(f)_beta (x) R(f)_{beta - beta_0} -> R(f)_{2beta - beta_0}, with beta - beta_0 = H
    checks = [("fermat quintic", mult_map_surjective(beta, beta - canonical_data(p3.fan), f).surjective)]
    for name in NAMES:
        e = load_catalog(name)
        for n in (0, 1, 2):
            b = canonical_data(e.fan) + n * e.eta
            if not is_m_regular(b, e.eta, 0).passed:
                continue
            for k in (1, 2):
                checks.append((f"{name} n={n} k={k}", mult_map_surjective(b, k * e.eta).surjective))
    report(6, "multiplication maps", checks)


def criterion_7():
    checks = []
    H = load_catalog("p3").eta
    checks.append(("h0(O_P3(1)) = 4", h0(H) == 4))
    reports = []
    for d in range(4, 9):
        r = nl_bounds(H, d - 4)
        reports.append(r)
        checks.append((f"p3 d={d} lower", r.lower_bound == d - 3))
        checks.append((f"p3 d={d} upper", r.upper_bound == h0((d - 4) * H)))
    for name in ("wp1122", "quadric-cone-resolution"):
        e = load_catalog(name)
        for n in (2, 3, 4):
            r = nl_bounds(e.eta, n)
            reports.append(r)
            checks.append((f"{name} n={n}", r.routes["regularity"] and r.lower_bound == n))
            checks.append((f"{name} n={n} upper", r.upper_bound == h0(n * e.eta)))
    checks.append(("lower <= upper", all(r.lower_bound <= r.upper_bound for r in reports)))
    report(7, "Noether-Lefschetz bounds", checks)


def criterion_8():
    checks = []
    cases = [("p3", d * load_catalog("p3").eta) for d in (4, 5)]
    e = load_catalog("p1xp2")
    cases.append(("p1xp2", canonical_data(e.fan) + 2 * e.eta))
    for name, beta in cases:
        eta = load_catalog(name).eta
        rep = syzygy_vanishing_check(beta, eta, range(-2, 4), (1, 2, 3))
        for x in rep.entries:
            if x.in_range:
                checks.append((f"{name} {list(beta.coeffs)} q={x.q} k={x.k}", x.value == 0))
    report(8, "syzygy bundle vanishing", checks)


def criterion_9():
    checks = []
    for name in ("blowup-p3-line", "p1xp2"):
        e = load_catalog(name)
        classes = line_classes(enumerate_lines(e.eta), e.basis)
        names = sorted(e.line_names.get(tuple(int(x) for x in k), "?") for k in classes)
        checks.append((f"{name} classes", names == ["l_1", "l_2"]))
    for name in NAMES:
        e = load_catalog(name)
        for c in enumerate_lines(e.eta):
            hilb = "auto" if c.in_smooth_locus else e.hilb_dim
            for n in (0, 1, 2):
                checks.append((f"{name} {c.wall.ray_indices} n={n}",
                               line_locus_codim(c, n, hilb).codim == n + 1))
            if c.in_smooth_locus:
                for n in (0, 1, 2):
                    beta = canonical_data(e.fan) + n * e.eta
                    checks.append((f"{name} restriction n={n}",
                                   restriction_codim(c.wall, beta) == c.beta0_degree + n + 1))
    e = load_catalog("p1xp2")
    for s in (2, 3):
        eta = e.cls(1, s)
        l1 = [invariant_curve(eta, w) for w in fan_walls(e.fan)]
        l1 = [c for c in l1 if c.pairing(e.basis) == (0, 1)]
        for n in (0, 1, 2):
            checks.append((f"p1xp2 s={s} n={n}",
                           bool(l1) and all(line_locus_codim(c, n).codim == n * s + 1 for c in l1)))
    report(9, "lines and line loci", checks)


def criterion_10():
    checks = []
    for name in ("p3", "p1xp2", "blowup-p3-line", "quadric-cone-resolution"):
        fan = load_catalog(name).fan
        beta0 = canonical_data(fan)
        for w in fan_walls(fan):
            a, b = normal_bundle_degrees(fan, w)
            checks.append((f"{name} {w.ray_indices}", a + b == intersection_number(beta0, w) - 2))
    fan = load_catalog("quadric-cone-resolution").fan
    flop = [w for w in fan_walls(fan) if intersection_number(canonical_data(fan), w) == 0]
    checks.append(("exceptional curve (-1,-1)",
                   len(flop) == 1 and normal_bundle_degrees(fan, flop[0]) == (-1, -1)))
    report(10, "normal bundles", checks)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(criterion):
    criterion()


if __name__ == "__main__":
    failures = 0
    for c in CRITERIA:
        try:
            c()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
