from fractions import Fraction as F

import pytest

from regen433 import region
from regen433.entropy import lp as lpmod


@pytest.mark.parametrize(
    "a,b,expected",
    [(4, 6, 3), (2, 1, 1), (3, 0, 1), (0, 6, 1), (1, 3, 1), (1, 1, F(5, 8)), (5, 2, F(7, 3))],
)
def test_min_objective(lp, a, b, expected):
    assert lp.min_objective(a, b) == expected


def test_shape(lp):
    assert len(lp.coords) == 177
    assert lp.n_cols == 179
    assert len(lp.rows) == 5084 + 3


def test_primal_dual_agreement(lp):
    sol = lp.solve(4, 6)
    assert 4 * sol.entropy["alpha"] + 6 * sol.entropy["beta"] == sol.objective == 3
    dual_value = -sum(w * lp.rows[k].B for k, w in sol.weights.items())
    assert dual_value == 3
    assert min(lp.primal_slack(sol.entropy)) >= 0


def test_rejects_bad_objectives(lp):
    with pytest.raises(ValueError):
        lp.min_objective(-1, 2)
    with pytest.raises(ValueError):
        lp.min_objective(0, 0)
    with pytest.raises(TypeError):
        lp.min_objective(0.5, 1)


POINTS = [(F(1), F(1)), (F(2), F(1)), (F(1, 2), F(3, 2)), (F(4), F(6)), (F(3), F(1, 3))]


def test_monotone(lp):
    for a, b in POINTS:
        base = lp.min_objective(a, b)
        assert lp.min_objective(a + 1, b) >= base
        assert lp.min_objective(a, b + F(1, 2)) >= base


def test_concave(lp):
    for p, q in zip(POINTS, POINTS[1:]):
        mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        assert lp.min_objective(*mid) >= (lp.min_objective(*p) + lp.min_objective(*q)) / 2


def test_check_point_examples(lp):
    assert lp.check_point((F(3, 8), F(1, 4)))
    assert lp.check_point((F(1), F(1)))
    res = lp.check_point((F(2, 5), F(1, 5)))
    assert not res
    a, b = res.witness
    assert (a, b) == (4, 6) and res.bound == 3
    assert lp.min_objective(a, b) > a * F(2, 5) + b * F(1, 5)


def test_check_point_matches_exact_region(lp):
    verts = region.vertices(region.exact_region()) + region.vertices(region.cutset_region())
    for p in set(verts):
        assert bool(lp.check_point(p)) == region.contains(region.exact_region(), p)


def test_check_point_rejects_negative(lp):
    with pytest.raises(ValueError):
        lp.check_point((F(-1), F(1)))


def test_module_helpers():
    assert lpmod.min_objective(2, 1) == 1
    assert lpmod.check_point((F(1, 2), F(1, 6)))


@pytest.mark.slow
def test_cold_exact_solve_agrees(lp):
    # reference path: no floating-point hint at all
    assert lp.min_objective(4, 6, presolve=False) == 3
