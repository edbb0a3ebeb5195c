"""Self-test: the dependency closure absorbs the code's functional dependencies.

Two LPs are compared for the same objective:

* the closure LP, whose coordinates already merge every subset with its
  dependency closure, and
* the symmetry-only LP, which keeps every subset orbit as its own coordinate
  and states the reconstruction, repair-encoding and repair-decoding
  dependencies as explicit equality rows.

Adding the explicit rows to the closure LP changes nothing syntactically
(each collapses to ``0 >= 0``), so the informative comparison is against the
symmetry-only LP. Its optimum is pinned exactly from both sides: the closure
optimum lifted to all subsets is a feasible point (upper bound), and an exact
dual certificate is recovered from a floating-point optimal support
(lower bound).
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from regen433.entropy import ground
from regen433.entropy.certificate import CertificateLine, ProofCertificate, verify_certificate
from regen433.entropy.inequalities import explicit_dependency_rows, label
from regen433.entropy.lp import EntropyLP, default_lp

log = logging.getLogger(__name__)


@dataclass
class AbsorptionReport:
    objective: tuple[Fraction, Fraction]
    closure_optimum: Fraction
    closure_with_rows: Fraction
    explicit_rows: int  # dependency rows over symmetry-only coordinates
    surviving_rows: int  # of those, rows that are not 0 >= 0 over closure coordinates
    plain_coordinates: int
    plain_rows: int
    upper: Fraction  # lifted closure optimum, checked feasible exactly
    lower: Fraction | None  # value of an exactly verified certificate
    certificate_lines: int = 0
    without_rows_upper: Fraction | None = None  # feasible value once the rows are removed
    notes: list[str] = field(default_factory=list)

    @property
    def unchanged(self) -> bool:
        return (
            self.surviving_rows == 0
            and self.closure_with_rows == self.closure_optimum
            and self.lower is not None
            and self.lower == self.upper == self.closure_optimum
        )


def lift_entropy(closure_entropy: dict[str, Fraction], plain: EntropyLP) -> dict[str, Fraction]:
    """Assign every symmetry-only coordinate the value of its closure class."""
    qc = ground.quotient(True)
    out = {"alpha": closure_entropy["alpha"], "beta": closure_entropy["beta"]}
    for c in plain.coords:
        rep = plain.q.classes[c].representative
        out[label(plain.q, c)] = closure_entropy[label(qc, qc.class_id(rep))]
    return out


def independent_s_point(plain: EntropyLP) -> dict[str, Fraction]:
    """Twelve independent S variables of entropy 1/12 each and constant W's.

    This is an entropic vector, so it meets every Shannon row, and it meets
    the caps and normalization with alpha = 0, beta = 1/12. It ignores every
    dependency row.
    """
    s_mask = ground.FULL & ~ground.W_MASK
    out = {"alpha": Fraction(0), "beta": Fraction(1, 12)}
    for c in plain.coords:
        rep = plain.q.classes[c].representative
        out[label(plain.q, c)] = Fraction(bin(rep & s_mask).count("1"), 12)
    return out


def float_dual_support(lp: EntropyLP, a, b, tol: float = 1e-9) -> list[int]:
    """Rows carrying positive weight in a HiGHS optimal dual vertex."""
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix

    ri, ci, vals = [], [], []
    for j, col in enumerate(lp._columns):
        for i, v in col.items():
            ri.append(i)
            ci.append(j)
            vals.append(float(v))
    a_eq = csr_matrix((vals, (ri, ci)), shape=(lp.n_cols, len(lp.rows)))
    rhs = np.zeros(lp.n_cols)
    rhs[lp.alpha_col], rhs[lp.beta_col] = float(a), float(b)
    cost = np.array([float(r.B) for r in lp.rows])
    res = linprog(cost, A_eq=a_eq, b_eq=rhs, bounds=(0, None), method="highs-ipm")
    if res.status != 0:
        raise RuntimeError(f"float dual solve failed: {res.message}")
    return [int(k) for k in np.nonzero(res.x > tol)[0]]


def exact_support_weights(lp: EntropyLP, support: list[int], a, b) -> dict[int, Fraction] | None:
    """Solve sum_r y_r * row_r = a*alpha + b*beta over the support exactly.

    Returns None when the system is inconsistent or underdetermined; the
    caller then has no certificate. Uses FLINT's exact row reduction.
    """
    import flint

    eqs = sorted({i for k in support for i in lp._columns[k]} | {lp.alpha_col, lp.beta_col})
    pos = {e: r for r, e in enumerate(eqs)}
    n = len(support)
    m = flint.fmpq_mat(len(eqs), n + 1)
    for c, k in enumerate(support):
        for i, v in lp._columns[k].items():
            m[pos[i], c] = v
    m[pos[lp.alpha_col], n] = flint.fmpq(Fraction(a).numerator, Fraction(a).denominator)
    m[pos[lp.beta_col], n] = flint.fmpq(Fraction(b).numerator, Fraction(b).denominator)
    r, rank = m.rref()
    if rank != n:
        return None  # either dependent columns or an inconsistent right-hand side
    weights = {}
    for row in range(n):
        pivot = next(c for c in range(n + 1) if r[row, c] != 0)
        if pivot == n:
            return None
        v = r[row, n]
        weights[support[pivot]] = Fraction(int(v.p), int(v.q))
    return weights


def certificate_from_weights(lp: EntropyLP, a, b, weights: dict[int, Fraction]) -> ProofCertificate:
    c = -sum((w * lp.rows[k].B for k, w in weights.items()), Fraction(0))
    cert = ProofCertificate(Fraction(a), Fraction(b), c, closure=lp.closure)
    for k in sorted(weights):
        if weights[k]:
            cert.lines.append(CertificateLine(weights[k], lp.rows[k].inequality(lp.q)))
    return cert


def absorption_check(a=4, b=6, workers: int | None = None) -> AbsorptionReport:
    a, b = Fraction(a), Fraction(b)
    t0 = time.monotonic()
    closed = default_lp()
    sol = closed.solve(a, b)
    with_rows = EntropyLP(closure=True, explicit_dependencies=True, workers=workers)
    closure_with_rows = with_rows.min_objective(a, b)
    surviving = with_rows.n_explicit
    n_rows_plain = sum(1 for _ in explicit_dependency_rows(ground.quotient(False)))

    plain = EntropyLP(closure=False, explicit_dependencies=True, workers=workers)
    notes = [f"built symmetry-only LP in {time.monotonic() - t0:.1f}s"]

    lifted = lift_entropy(sol.entropy, plain)
    if min(plain.primal_slack(lifted)) < 0:
        raise AssertionError("lifted closure optimum violates a symmetry-only row")
    upper = a * lifted["alpha"] + b * lifted["beta"]

    point = independent_s_point(plain)
    slack = plain.primal_slack(point)
    if min(s for s, r in zip(slack, plain.rows) if not r.name.startswith("dep:")) < 0:
        raise AssertionError("independent-S point violates a Shannon or problem row")
    without = a * point["alpha"] + b * point["beta"]

    lower, lines = None, 0
    support = float_dual_support(plain, a, b)
    weights = exact_support_weights(plain, support, a, b)
    if weights is None:
        notes.append(f"float support of {len(support)} rows gave no exact solution")
    elif min(weights.values()) < 0:
        notes.append("exact support solution has a negative weight")
    else:
        cert = certificate_from_weights(plain, a, b, weights)
        verdict = verify_certificate(cert)
        if verdict:
            lower, lines = cert.c, cert.support
        else:
            notes.append(f"certificate rejected: {verdict.diagnostic}")
    notes.append(f"total {time.monotonic() - t0:.1f}s")
    return AbsorptionReport(
        objective=(a, b),
        closure_optimum=sol.objective,
        closure_with_rows=closure_with_rows,
        surviving_rows=surviving,
        explicit_rows=n_rows_plain,
        plain_coordinates=len(plain.coords),
        plain_rows=len(plain.rows),
        upper=upper,
        lower=lower,
        certificate_lines=lines,
        without_rows_upper=without,
        notes=notes,
    )
