from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from regen433 import region
from regen433.codes import CodeId, code_parameters

EXACT_V = [(F(1, 3), F(1, 3)), (F(3, 8), F(1, 4)), (F(1, 2), F(1, 6))]
CUT_V = [(F(1, 3), F(1, 3)), (F(2, 5), F(1, 5)), (F(1, 2), F(1, 6))]

rat = st.fractions(min_value=0, max_value=2, max_denominator=60)


def test_vertices():
    assert region.vertices(region.exact_region()) == EXACT_V
    assert region.vertices(region.cutset_region()) == CUT_V


def test_exact_inside_cutset():
    cut = region.cutset_region()
    assert all(region.contains(cut, v) for v in EXACT_V)


def test_cutset_vertex_outside_exact():
    ex = region.exact_region()
    p = (F(2, 5), F(1, 5))
    assert not region.contains(ex, p)
    (h,) = [h for h in ex.halfspaces if not h.contains(p)]
    assert (h.a, h.b, h.c) == (4, 6, 3)
    assert -h.slack(p) == F(1, 5)


def test_max_gap():
    g = region.max_gap(region.cutset_region(), region.exact_region())
    assert g.point == (F(2, 5), F(1, 5))
    assert g.raw == F(1, 5)
    assert g.normalized == F(1, 50)
    # no gap the other way round
    assert region.max_gap(region.exact_region(), region.cutset_region()).normalized == 0


@pytest.mark.parametrize("code", list(CodeId))
def test_code_points_on_exact_boundary(code):
    p = code_parameters(code).point
    assert region.contains(region.exact_region(), p)
    assert len(region.tight(region.exact_region(), p)) >= 1


@given(rat, rat)
def test_cutset_value_matches_halfspaces(a, b):
    assert (region.cutset_bound_value((a, b)) >= 1) == region.contains(region.cutset_region(), (a, b))


def test_cutset_value_dense_grid():
    n = 24
    for i in range(2 * n + 1):
        for j in range(2 * n + 1):
            p = (F(i, n), F(j, n))
            assert (region.cutset_bound_value(p) >= 1) == region.contains(region.cutset_region(), p)


def test_cutset_value_rejects_negative():
    with pytest.raises(ValueError):
        region.cutset_bound_value((F(-1), F(1)))


@pytest.mark.parametrize("make", [region.cutset_region, region.exact_region])
def test_export_roundtrip(make):
    reg = make()
    hs, vs = region.export_region(reg)
    assert region.parse_halfspaces(hs) == reg
    assert region.parse_vertices(vs) == region.vertices(reg)


def test_export_matches_golden(golden):
    for which, make in (("cutset", region.cutset_region), ("exact", region.exact_region)):
        hs, vs = region.export_region(make())
        assert hs == (golden / f"region_{which}_halfspaces.csv").read_text()
        assert vs == (golden / f"region_{which}_vertices.csv").read_text()


def test_degenerate_inputs():
    with pytest.raises(region.DegenerateRegionError):
        region.vertices(region.Region2D((region.HalfSpace(1, 0, 1),)))
    with pytest.raises(ValueError):
        region.export_region(region.Region2D(()))
    with pytest.raises(ValueError):
        region.HalfSpace(0, 0, 1)


def test_floats_refused():
    with pytest.raises(TypeError):
        region.contains(region.exact_region(), (0.4, 0.2))


def test_strings_parse():
    assert region.contains(region.exact_region(), ("3/8", "1/4"))
