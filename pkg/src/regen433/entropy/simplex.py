"""Exact rational revised simplex for standard-form LPs.

    minimize  c.x   subject to  A x = b,  x >= 0

``A`` is given column-wise as sparse ``{row: value}`` dicts. Arithmetic is
done in ``gmpy2.mpq``; results are returned as ``fractions.Fraction``. The
basis inverse is kept explicitly, which is fine for the ~200-row problems
this package produces.

Pricing is Dantzig (most negative reduced cost) with a lexicographic ratio
test; a long run of degenerate pivots switches pricing to Bland's rule.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from gmpy2 import mpq
from scipy.sparse import csr_matrix

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _f(x: mpq) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class LPResult:
    status: str
    objective: Fraction | None = None
    x: dict[int, Fraction] = field(default_factory=dict)  # nonzero entries only
    duals: list[Fraction] = field(default_factory=list)  # y with y.A <= c, y.b = objective
    basis: list[int] = field(default_factory=list)
    ray: dict[int, Fraction] = field(default_factory=dict)  # set when unbounded
    iterations: int = 0


class SimplexError(RuntimeError):
    pass


def _invert(cols: list[dict[int, mpq]], m: int) -> list[list[mpq]] | None:
    """Gauss-Jordan inverse of the m x m matrix whose columns are ``cols``."""
    a = [[_ZERO] * m for _ in range(m)]
    for k, col in enumerate(cols):
        for i, v in col.items():
            a[i][k] = v
    inv = [[_ONE if i == k else _ZERO for k in range(m)] for i in range(m)]
    for k in range(m):
        piv = next((i for i in range(k, m) if a[i][k] != 0), None)
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        inv[k], inv[piv] = inv[piv], inv[k]
        p = a[k][k]
        if p != 1:
            a[k] = [v / p for v in a[k]]
            inv[k] = [v / p for v in inv[k]]
        ak, ik = a[k], inv[k]
        nz_a = [(t, v) for t, v in enumerate(ak) if v != 0]
        nz_i = [(t, v) for t, v in enumerate(ik) if v != 0]
        for i in range(m):
            f = a[i][k]
            if i == k or f == 0:
                continue
            ai, ii = a[i], inv[i]
            for t, v in nz_a:
                ai[t] -= f * v
            for t, v in nz_i:
                ii[t] -= f * v
    # rows were permuted along with the identity, so inv is the true inverse
    return inv


def float_basis_hint(columns, b, c) -> list[int] | None:
    """Columns of a floating-point optimal basis (HiGHS), for warm starting.

    Positive columns come first, then columns with zero reduced cost. The
    list is only a suggestion; the exact solver re-derives everything.
    """
    from scipy.optimize import linprog

    m, n = len(b), len(columns)
    ri, ci, vals = [], [], []
    for j, col in enumerate(columns):
        for i, v in col.items():
            ri.append(i)
            ci.append(j)
            vals.append(float(v))
    a_eq = csr_matrix((vals, (ri, ci)), shape=(m, n))
    res = linprog(
        [float(v) for v in c], A_eq=a_eq, b_eq=[float(v) for v in b], bounds=(0, None), method="highs"
    )
    if res.status != 0:
        log.debug("float presolve failed: %s", res.message)
        return None
    x = np.asarray(res.x)
    red = np.asarray(res.lower.marginals)
    positive = [int(j) for j in np.argsort(-x, kind="stable") if x[j] > 1e-9]
    zero_rc = [int(j) for j in np.argsort(np.abs(red), kind="stable") if x[j] <= 1e-9 and abs(red[j]) < 1e-9]
    return positive + zero_rc


def solve(
    columns: Sequence[dict[int, object]],
    b: Sequence[object],
    c: Sequence[object],
    basis_hint: Sequence[int] | None = None,
    presolve: bool = False,
    max_iter: int = 200000,
    bland_after: int | None = 5000,
) -> LPResult:
    """Minimize c.x subject to A x = b, x >= 0, exactly.

    ``basis_hint`` (or ``presolve=True``, which asks HiGHS for one) only
    chooses the starting basis; a bad hint falls back to a cold phase I.

    Pricing is Dantzig with a lexicographic ratio test, which cannot cycle
    from the lexicographically positive cold start. Warm or post-phase-I
    bases need not be lexicographically positive, so after ``bland_after``
    consecutive degenerate pivots pricing falls back to Bland's rule.
    """
    if presolve and basis_hint is None:
        basis_hint = float_basis_hint(columns, b, c)
    m = len(b)
    n = len(columns)
    cols = [{i: _q(v) for i, v in col.items() if v != 0} for col in columns]
    bq = [_q(v) for v in b]
    cq = [_q(v) for v in c]
    # flip rows so that b >= 0; artificial k sits in column n + k
    sign = [(-1 if v < 0 else 1) for v in bq]
    cols = [{i: v * sign[i] for i, v in col.items()} for col in cols]
    bq = [v * s for v, s in zip(bq, sign)]
    art = [{i: _ONE} for i in range(m)]
    all_cols = cols + art

    state = _State(all_cols, bq, m, n)
    if basis_hint and state.warm_start(list(basis_hint)):
        log.debug("warm start accepted with %d hinted columns", len(basis_hint))
    else:
        state.cold_start()

    # phase I
    phase1_cost = [_ZERO] * n + [_ONE] * m
    status = state.run(phase1_cost, allowed=n + m, max_iter=max_iter, bland_after=bland_after)
    if status != OPTIMAL:
        raise SimplexError("phase I cannot be unbounded")
    infeas = sum((state.xB[r] for r in range(m) if state.basis[r] >= n), _ZERO)
    if infeas > 0:
        return LPResult(INFEASIBLE, iterations=state.iterations)
    state.drive_out_artificials()

    cost = cq + [_ZERO] * m
    status = state.run(cost, allowed=n, max_iter=max_iter, bland_after=bland_after)
    res = LPResult(status, iterations=state.iterations, basis=[j for j in state.basis])
    if status == UNBOUNDED:
        res.ray = {j: _f(v) for j, v in state.ray.items()}
        return res
    res.x = {state.basis[r]: _f(state.xB[r]) for r in range(m) if state.basis[r] < n and state.xB[r] != 0}
    res.objective = sum((cq[j] * _q(v) for j, v in res.x.items()), _ZERO)
    res.objective = _f(res.objective)
    pi = state.multipliers(cost)
    res.duals = [_f(p * s) for p, s in zip(pi, sign)]
    return res


class _State:
    def __init__(self, cols, b, m, n):
        self.cols = cols
        self.b = b
        self.m = m
        self.n = n
        self.iterations = 0
        self.ray: dict[int, mpq] = {}
        self.dead_rows: set[int] = set()

    def cold_start(self):
        m, n = self.m, self.n
        self.basis = [n + i for i in range(m)]
        self.inv = [[_ONE if i == k else _ZERO for k in range(m)] for i in range(m)]
        self.xB = list(self.b)

    def warm_start(self, hint: list[int]) -> bool:
        m, n = self.m, self.n
        hint = list(dict.fromkeys(j for j in hint if 0 <= j < n))  # hints are untrusted
        chosen = _independent_columns([self.cols[j] for j in hint], m)
        basis = [hint[k] for k in chosen]
        covered = _cover_rows([self.cols[j] for j in basis], m)
        basis += [n + i for i in covered]
        if len(basis) != m:
            return False
        inv = _invert([self.cols[j] for j in basis], m)
        if inv is None:
            return False
        xB = [sum((row[i] * self.b[i] for i in range(m) if self.b[i] != 0), _ZERO) for row in inv]
        if any(v < 0 for v in xB):
            return False
        self.basis, self.inv, self.xB = basis, inv, xB
        return True

    def multipliers(self, cost) -> list[mpq]:
        m = self.m
        pi = [_ZERO] * m
        for r in range(m):
            cb = cost[self.basis[r]]
            if cb != 0:
                row = self.inv[r]
                for i in range(m):
                    if row[i] != 0:
                        pi[i] += cb * row[i]
        return pi

    def ftran(self, j) -> list[mpq]:
        col = self.cols[j]
        return [sum((row[i] * v for i, v in col.items() if row[i] != 0), _ZERO) for row in self.inv]

    def pivot(self, r: int, j: int, u: list[mpq]):
        m = self.m
        inv = self.inv
        p = u[r]
        prow = [v / p for v in inv[r]]
        nz = [(t, v) for t, v in enumerate(prow) if v != 0]
        inv[r] = prow
        theta = self.xB[r] / p
        for i in range(m):
            if i == r:
                continue
            f = u[i]
            if f == 0:
                continue
            row = inv[i]
            for t, v in nz:
                row[t] -= f * v
            self.xB[i] -= f * theta
        self.xB[r] = theta
        self.basis[r] = j

    def _float_matrix(self, allowed: int):
        if getattr(self, "_at", None) is None or self._at.shape[0] != allowed:
            ri, ci, vals = [], [], []
            for j in range(allowed):
                for i, v in self.cols[j].items():
                    ri.append(j)
                    ci.append(i)
                    vals.append(float(v))
            self._at = csr_matrix((vals, (ri, ci)), shape=(allowed, self.m))
        return self._at

    def run(self, cost, allowed: int, max_iter: int, bland_after: int | None) -> str:
        degenerate = 0
        in_basis = set(self.basis)
        at = self._float_matrix(allowed)
        cost_f = np.array([float(v) for v in cost[:allowed]])
        while True:
            if self.iterations >= max_iter:
                raise SimplexError(f"iteration limit {max_iter} reached")
            pi = self.multipliers(cost)
            # float reduced costs only shortlist columns; every shortlisted
            # column is priced exactly, so optimality is decided exactly
            pi_f = np.array([float(v) for v in pi])
            d_f = cost_f - at @ pi_f
            tol = 1e-7 * (1.0 + float(np.abs(pi_f).max(initial=0.0)))
            cand = np.nonzero(d_f < tol)[0]
            use_bland = bland_after is not None and degenerate >= bland_after
            enter = None
            best = _ZERO
            for j in cand.tolist():
                if j in in_basis:
                    continue
                col = self.cols[j]
                d = cost[j] - sum((pi[i] * v for i, v in col.items() if pi[i] != 0), _ZERO)
                if d < 0:
                    if use_bland:
                        enter = j
                        break
                    if d < best:
                        best, enter = d, j
            if enter is None:
                return OPTIMAL
            u = self.ftran(enter)
            leave = self.ratio_test(u)
            if leave is None:
                ray = {enter: _ONE}
                for r in range(self.m):
                    if u[r] != 0:
                        ray[self.basis[r]] = -u[r]
                self.ray = ray
                return UNBOUNDED
            degenerate = degenerate + 1 if self.xB[leave] == 0 else 0
            in_basis.discard(self.basis[leave])
            in_basis.add(enter)
            self.pivot(leave, enter, u)
            self.iterations += 1

    def ratio_test(self, u) -> int | None:
        """Lexicographic minimum ratio; rules out cycling under any pricing."""
        ratio = None
        tied: list[int] = []
        for r in range(self.m):
            if u[r] > 0:
                t = self.xB[r] / u[r]
                if ratio is None or t < ratio:
                    ratio, tied = t, [r]
                elif t == ratio:
                    tied.append(r)
        if len(tied) <= 1:
            return tied[0] if tied else None
        # break ties on rows of the inverse scaled by the pivot column
        for k in range(self.m):
            vals = [self.inv[r][k] / u[r] for r in tied]
            low = min(vals)
            tied = [r for r, v in zip(tied, vals) if v == low]
            if len(tied) == 1:
                break
        return tied[0]

    def drive_out_artificials(self):
        """Pivot zero-level artificials out of the basis where possible."""
        n = self.n
        for r in range(self.m):
            if self.basis[r] < n:
                continue
            in_basis = set(self.basis)
            row = self.inv[r]
            nzr = [(i, v) for i, v in enumerate(row) if v != 0]
            for j in range(n):
                if j in in_basis:
                    continue
                val = sum((row[i] * v for i, v in self.cols[j].items() if row[i] != 0), _ZERO)
                if val != 0:
                    self.pivot(r, j, self.ftran(j))
                    break
            else:
                # redundant equality: the artificial stays basic at zero forever
                self.dead_rows.add(r)
            del nzr


def _independent_columns(cols: list[dict[int, mpq]], m: int) -> list[int]:
    """Indices of a maximal linearly independent subset, greedy in order."""
    reduced: list[tuple[int, dict[int, mpq]]] = []  # (pivot row, vector with pivot normalized)
    keep = []
    for k, col in enumerate(cols):
        v = dict(col)
        for prow, pv in reduced:
            f = v.get(prow)
            if f:
                for i, x in pv.items():
                    nv = v.get(i, _ZERO) - f * x
                    if nv:
                        v[i] = nv
                    else:
                        v.pop(i, None)
        if v:
            prow = min(v)
            p = v[prow]
            reduced.append((prow, {i: x / p for i, x in v.items()}))
            keep.append(k)
    return keep


def _cover_rows(cols: list[dict[int, mpq]], m: int) -> list[int]:
    """Unit-vector rows that complete ``cols`` (assumed independent) to a basis."""
    reduced: list[tuple[int, dict[int, mpq]]] = []
    for col in cols:
        v = dict(col)
        for prow, pv in reduced:
            f = v.get(prow)
            if f:
                for i, x in pv.items():
                    nv = v.get(i, _ZERO) - f * x
                    if nv:
                        v[i] = nv
                    else:
                        v.pop(i, None)
        prow = min(v)
        p = v[prow]
        reduced.append((prow, {i: x / p for i, x in v.items()}))
    # rows that are pivots of an echelon form of cols can be skipped; the
    # rest, taken as unit vectors, keep the matrix nonsingular
    used = {prow for prow, _ in reduced}
    return [i for i in range(m) if i not in used]
