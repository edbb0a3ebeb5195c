"""Shannon outer-bound LP for (4,3,3) exact repair, solved exactly.

Primal, with B normalized to 1::

    minimize   a*alpha + b*beta
    subject to every row r:  A_r . h + alpha_r*alpha + beta_r*beta + B_r >= 0

where ``h`` ranges over the quotient coordinates. The exact solver works on
the dual in standard form (one nonnegative weight per row, one equality per
primal column), so an optimal basis directly yields the proof weights and,
through its simplex multipliers, an optimal entropy vector.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from regen433.entropy import ground, simplex
from regen433.entropy.inequalities import (
    B_POS,
    Row,
    elemental_rows,
    explicit_dependency_rows,
    label,
    problem_rows,
)

log = logging.getLogger(__name__)


class LPAssemblyError(RuntimeError):
    """The LP came out infeasible or unbounded; constraints are wrong."""


@dataclass
class Solution:
    objective: Fraction
    weights: dict[int, Fraction]  # row index -> dual weight (nonzero only)
    entropy: dict[str, Fraction]  # coordinate label / alpha / beta -> primal value
    iterations: int = 0


@dataclass
class PointCheck:
    feasible: bool
    witness: tuple[Fraction, Fraction] | None = None
    bound: Fraction | None = None  # min a*alpha + b*beta >= bound for the witness
    weights: dict[int, Fraction] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.feasible


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point objective coefficients are not accepted")
    return Fraction(x)


class EntropyLP:
    """The quotient LP. Building it enumerates coordinates and rows once."""

    def __init__(self, closure: bool = True, explicit_dependencies: bool = False, workers: int | None = None):
        self.closure = closure
        self.q = ground.quotient(closure)
        rows = elemental_rows(self.q, workers=workers) + problem_rows(self.q)
        if explicit_dependencies:
            extra = list(explicit_dependency_rows(self.q))
            self.n_explicit = len(extra)
            rows += extra
        else:
            self.n_explicit = 0
        self.rows: list[Row] = rows
        self.by_name = {r.name: k for k, r in enumerate(rows)}
        coords = sorted({c for r in rows for c, _ in r.coef})
        self.col_of = {c: k for k, c in enumerate(coords)}
        self.coords = coords
        self.alpha_col = len(coords)
        self.beta_col = len(coords) + 1
        self.n_cols = len(coords) + 2
        self._columns = [self._column(r) for r in rows]

    def _column(self, r: Row) -> dict[int, int]:
        col = {self.col_of[c]: v for c, v in r.coef}
        if r.alpha:
            col[self.alpha_col] = r.alpha
        if r.beta:
            col[self.beta_col] = r.beta
        return col

    def __repr__(self) -> str:
        return f"EntropyLP(closure={self.closure}, rows={len(self.rows)}, columns={self.n_cols})"

    # -- exact solve -------------------------------------------------------

    def solve(self, a, b, presolve: bool = True) -> Solution:
        a, b = _frac(a), _frac(b)
        if a < 0 or b < 0 or (a == 0 and b == 0):
            raise ValueError("objective weights must be nonnegative and not both zero")
        obj = [Fraction(0)] * self.n_cols
        obj[self.alpha_col], obj[self.beta_col] = a, b
        cost = [r.B for r in self.rows]
        res = simplex.solve(self._columns, obj, cost, presolve=presolve)
        if res.status != simplex.OPTIMAL:
            raise LPAssemblyError(f"dual LP is {res.status}; the primal is not a bounded feasible LP")
        entropy = {label(self.q, c): -res.duals[self.col_of[c]] for c in self.coords}
        entropy["alpha"] = -res.duals[self.alpha_col]
        entropy["beta"] = -res.duals[self.beta_col]
        sol = Solution(-res.objective, dict(res.x), entropy, res.iterations)
        self._check_primal(sol, a, b)
        return sol

    def primal_slack(self, values: dict[str, Fraction]) -> list[Fraction]:
        out = []
        for r in self.rows:
            s = Fraction(r.B)
            s += r.alpha * values["alpha"] + r.beta * values["beta"]
            for c, v in r.coef:
                s += v * values[label(self.q, c)]
            out.append(s)
        return out

    def _check_primal(self, sol: Solution, a: Fraction, b: Fraction) -> None:
        # the multipliers must give a feasible point attaining the dual value
        if min(self.primal_slack(sol.entropy)) < 0:
            raise LPAssemblyError("recovered entropy vector violates a row")
        if a * sol.entropy["alpha"] + b * sol.entropy["beta"] != sol.objective:
            raise LPAssemblyError("primal and dual objective values differ")

    def min_objective(self, a, b, presolve: bool = True) -> Fraction:
        return self.solve(a, b, presolve=presolve).objective

    def check_point(self, point, presolve: bool = True) -> PointCheck:
        """Is (alpha_bar, beta_bar) consistent with every row, with B = 1?

        Solves  max sum_r y_r * rhs_r  over  y >= 0, sum_r y_r <= 1,
        sum_r y_r A_r = 0 on the entropy coordinates, where rhs_r is what the
        row demands of A_r . h once alpha and beta are fixed. A positive
        optimum is a certificate of infeasibility.
        """
        x, y = (_frac(v) for v in point)
        if x < 0 or y < 0:
            raise ValueError("point must be nonnegative")
        n_coord = len(self.coords)
        columns = []
        cost = []
        for r, col in zip(self.rows, self._columns):
            c = {j: v for j, v in col.items() if j < n_coord}
            c[n_coord] = 1
            columns.append(c)
            rhs = -(r.B + r.alpha * x + r.beta * y)
            cost.append(-rhs)
        columns.append({n_coord: 1})  # slack of sum y <= 1
        cost.append(0)
        rhs_vec = [0] * n_coord + [1]
        res = simplex.solve(columns, rhs_vec, cost, presolve=presolve)
        if res.status != simplex.OPTIMAL:
            raise LPAssemblyError(f"feasibility LP is {res.status}")
        value = -res.objective
        if value <= 0:
            return PointCheck(True)
        weights = {k: v for k, v in res.x.items() if k < len(self.rows)}
        wa = sum((v * self.rows[k].alpha for k, v in weights.items()), Fraction(0))
        wb = sum((v * self.rows[k].beta for k, v in weights.items()), Fraction(0))
        wc = sum((-v * self.rows[k].B for k, v in weights.items()), Fraction(0))
        scale = _primitive_scale(wa, wb, wc)
        return PointCheck(False, (wa * scale, wb * scale), wc * scale, weights)


def _primitive_scale(*xs: Fraction) -> Fraction:
    """Positive factor turning xs into coprime integers."""
    den = math.lcm(*(x.denominator for x in xs))
    ints = [int(x * den) for x in xs]
    g = math.gcd(*ints) or 1
    return Fraction(den, g)


@lru_cache(maxsize=None)
def default_lp(closure: bool = True) -> EntropyLP:
    return EntropyLP(closure=closure)


def min_objective(a, b, presolve: bool = True) -> Fraction:
    return default_lp().min_objective(a, b, presolve=presolve)


def check_point(point, presolve: bool = True) -> PointCheck:
    return default_lp().check_point(point, presolve=presolve)


B_POS_ROW = B_POS
