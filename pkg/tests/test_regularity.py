import pytest
from hypothesis import given, strategies as st

from nltoric.catalog import NAMES, all_entries, load_catalog
from nltoric.divisors import AMPLE, canonical_data, nef_ample_test
from nltoric.regularity import (NotAmpleError, ample_window, catalog_classification,
                                is_m_regular, oda_window_check, quick_criteria, vanishing_triple)

from test_cohomology import kunneth


@given(st.integers(-6, 6), st.integers(-4, 4))
def test_regularity_on_p3_matches_bott(a, m):
    H = load_catalog("p3").eta
    # only h^3(O(a + m - 3)) can be nonzero, and it vanishes iff a + m >= 0
    assert is_m_regular(a * H, H, m).passed == (a + m >= 0)


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-2, 2))
def test_regularity_on_product_matches_kunneth(a, b, m):
    e = load_catalog("p1xp2")
    F, L = e.cls(b, a), e.cls(1, 1)
    expected = all(kunneth(a + m - q, b + m - q)[q] == 0 for q in (1, 2, 3))
    assert is_m_regular(F, L, m).passed == expected


@pytest.mark.parametrize("name", NAMES)
def test_quick_criteria_agree_with_definition(name):
    for eta in ample_window(load_catalog(name).fan, 3):
        qc = quick_criteria(eta)
        assert qc.zero_regular == is_m_regular(eta, eta, 0).passed
        assert qc.minus_one_regular == is_m_regular(eta, eta, -1).passed


def test_reference_class_must_be_ample():
    e = load_catalog("p1xp2")
    with pytest.raises(NotAmpleError):
        is_m_regular(e.cls(1, 1), e.cls(1, 0), 0)


def test_failing_twist_is_reported():
    H = load_catalog("p3").eta
    v = is_m_regular(-2 * H, H, 0)
    assert not v.passed and v.failing_twist == (3, (-5 * H).coeffs)


def test_classification_on_catalog():
    rows = {r.name: r for r in catalog_classification([e.fan for e in all_entries()], bound=4)}
    assert [n for n, r in rows.items() if r.minus_one_regular] == ["p3"]
    assert all(r.zero_regular for r in rows.values())
    assert all(r.gorenstein for r in rows.values())


def test_picard_rank_one_zero_regular_classes():
    # with beta_0 = l eta, eta is 0-regular iff l >= 3
    for name, index in [("p3", 4), ("wp1122", 3)]:
        e = load_catalog(name)
        assert canonical_data(e.fan) == index * e.eta
        assert quick_criteria(e.eta).zero_regular
        assert not quick_criteria(2 * e.eta).zero_regular


@pytest.mark.parametrize("name", ["p1xp2", "wp1122"])
def test_oda_window_passes(name):
    report = oda_window_check(load_catalog(name).fan, bound=2)
    assert report.passed and report.pairs_checked > 0


@pytest.mark.parametrize("name", ["blowup-p3-line", "p1xp2", "quadric-cone-resolution"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_vanishing_triple_sufficient_conditions(name, n):
    e = load_catalog(name)
    beta = canonical_data(e.fan) + n * e.eta
    t = vanishing_triple(beta, e.eta)
    if t.beta_minus_2eta_nef or t.beta_zero_regular:
        assert t.holds


@pytest.mark.parametrize("name", ["p3", "wp1122", "blowup-p3-line"])
@pytest.mark.parametrize("n", [3, 4])
def test_fano_beta_is_zero_regular(name, n):
    e = load_catalog(name)
    beta0 = canonical_data(e.fan)
    assert nef_ample_test(beta0) == AMPLE
    assert is_m_regular(beta0 + n * e.eta, e.eta, 0).passed
