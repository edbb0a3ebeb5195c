from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from regen433.entropy import simplex


def dense_to_cols(a):
    return [{i: a[i][j] for i in range(len(a)) if a[i][j]} for j in range(len(a[0]))]


def test_small_exact_optimum():
    # min -x - y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6
    cols = dense_to_cols([[1, 2, 1, 0], [3, 1, 0, 1]])
    res = simplex.solve(cols, [4, 6], [-1, -1, 0, 0])
    assert res.status == simplex.OPTIMAL
    assert res.objective == F(-14, 5)
    assert res.x == {0: F(8, 5), 1: F(6, 5)}
    # duals certify optimality: y.b equals the objective and y.A <= c
    assert sum(y * b for y, b in zip(res.duals, [4, 6])) == res.objective


def test_beale_cycling_example():
    cols = dense_to_cols(
        [
            [1, 0, 0, F(1, 4), -8, -1, 9],
            [0, 1, 0, F(1, 2), -12, F(-1, 2), 3],
            [0, 0, 1, 0, 0, 1, 0],
        ]
    )
    c = [0, 0, 0, F(-3, 4), 20, F(-1, 2), 6]
    res = simplex.solve(cols, [0, 0, 1], c)
    assert res.status == simplex.OPTIMAL
    assert res.objective == F(-5, 4)


def test_infeasible():
    cols = dense_to_cols([[1, 1], [1, 1]])
    assert simplex.solve(cols, [1, 2], [0, 0]).status == simplex.INFEASIBLE


def test_unbounded_with_ray():
    cols = dense_to_cols([[1, -1]])
    res = simplex.solve(cols, [1], [0, -1])
    assert res.status == simplex.UNBOUNDED
    assert res.ray


def test_negative_rhs_rows_are_flipped():
    cols = dense_to_cols([[-1, -1]])
    res = simplex.solve(cols, [-3], [1, 2])
    assert res.status == simplex.OPTIMAL and res.objective == 3


def test_bad_hint_falls_back():
    cols = dense_to_cols([[1, 2, 1, 0], [3, 1, 0, 1]])
    res = simplex.solve(cols, [4, 6], [-1, -1, 0, 0], basis_hint=[0, 0, 99])
    assert res.objective == F(-14, 5)


def test_warm_start_from_float_hint():
    cols = dense_to_cols([[1, 2, 1, 0], [3, 1, 0, 1]])
    res = simplex.solve(cols, [4, 6], [-1, -1, 0, 0], presolve=True)
    assert res.objective == F(-14, 5)


small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.data())
def test_matches_highs_on_random_bounded_lps(m, n, data):
    a = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    x0 = [data.draw(st.integers(0, 2)) for _ in range(n)]
    b = [sum(a[i][j] * x0[j] for j in range(n)) for i in range(m)]  # feasible by construction
    c = [data.draw(st.integers(0, 4)) for _ in range(n)]  # c >= 0 keeps it bounded
    res = simplex.solve(dense_to_cols(a), b, c)
    ref = linprog(c, A_eq=np.array(a, dtype=float), b_eq=b, bounds=(0, None), method="highs")
    assert res.status == simplex.OPTIMAL
    assert float(res.objective) == pytest.approx(ref.fun, abs=1e-7)
    # exact primal feasibility
    for i in range(m):
        assert sum(a[i][j] * res.x.get(j, 0) for j in range(n)) == b[i]
