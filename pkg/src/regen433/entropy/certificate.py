"""Dual proof certificates: extraction, text format, independent checking, sparsification.

A certificate for ``a*alpha + b*beta - c*B >= 0`` is a list of nonnegative
weights on named inequalities whose weighted sum equals the target term by
term. The checker never looks at the LP: it rebuilds every inequality from
its name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from regen433.entropy import ground, simplex
from regen433.entropy.inequalities import (
    ALPHA,
    B,
    BETA,
    LinearInequality,
    parse_elemental,
    problem_rows,
    render_terms,
    terms_of_masks,
)
from regen433.entropy.lp import EntropyLP, default_lp


class CertificateRefused(ValueError):
    def __init__(self, requested: Fraction, optimum: Fraction):
        super().__init__(f"requested bound {fmt(requested)} exceeds the LP optimum {fmt(optimum)}")
        self.requested = requested
        self.optimum = optimum


class CertificateFormatError(ValueError):
    pass


def fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class CertificateLine:
    weight: Fraction
    inequality: LinearInequality

    @property
    def name(self) -> str:
        return self.inequality.name


@dataclass
class ProofCertificate:
    a: Fraction
    b: Fraction
    c: Fraction
    lines: list[CertificateLine] = field(default_factory=list)
    closure: bool = True

    @property
    def target(self) -> LinearInequality:
        return LinearInequality.build("target", {ALPHA: self.a, BETA: self.b, B: -self.c})

    @property
    def support(self) -> int:
        return len(self.lines)

    def header(self) -> str:
        return f"target: {fmt(self.a)} alpha + {fmt(self.b)} beta - {fmt(self.c)} B >= 0"

    def to_text(self) -> str:
        out = [self.header()]
        for ln in self.lines:
            out.append(f"{fmt(ln.weight)}\t{ln.name}\t{ln.inequality.render()}")
        return "\n".join(out) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())


_NUM = r"(-?\d+/\d+)"
_WEIGHT = re.compile(r"^-?\d+/\d+$")
_HEADER = re.compile(rf"^target: {_NUM} alpha \+ {_NUM} beta - {_NUM} B >= 0$")
_TERM = re.compile(r"^(?:(\d+(?:/\d+)?) )?(h\([^)]*\)|alpha|beta|B)$")


def parse_terms(text: str) -> dict[str, Fraction]:
    """Inverse of ``render_terms(...) + ' >= 0'``."""
    if not text.endswith(" >= 0"):
        raise CertificateFormatError(f"inequality {text!r} does not end with '>= 0'")
    body = text[: -len(" >= 0")].strip()
    if body == "0":
        return {}
    tokens = body.split(" ")
    terms: dict[str, Fraction] = {}
    sign = 1
    if tokens and tokens[0].startswith("-"):
        sign = -1
        tokens[0] = tokens[0][1:]
    # re-join 'coef h(..)' pairs separated by single spaces
    chunks, cur = [], []
    for tok in tokens:
        if tok in ("+", "-"):
            chunks.append((sign, " ".join(cur)))
            sign = 1 if tok == "+" else -1
            cur = []
        else:
            cur.append(tok)
    chunks.append((sign, " ".join(cur)))
    for s, chunk in chunks:
        m = _TERM.match(chunk)
        if not m:
            raise CertificateFormatError(f"cannot parse term {chunk!r}")
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        key = m.group(2)
        if key in terms:
            raise CertificateFormatError(f"term {key} repeated")
        terms[key] = s * coef
    return terms


def parse_certificate(text: str) -> ProofCertificate:
    lines = text.splitlines()
    if not lines:
        raise CertificateFormatError("empty certificate file")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise CertificateFormatError(f"bad header {lines[0]!r}")
    a, b, c = (Fraction(g) for g in m.groups())
    cert = ProofCertificate(a, b, c)
    for n, raw in enumerate(lines[1:], 2):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) != 3:
            raise CertificateFormatError(f"line {n}: expected weight<TAB>name<TAB>inequality")
        if not _WEIGHT.match(parts[0]):
            raise CertificateFormatError(f"line {n}: bad weight {parts[0]!r}; expected p/q")
        try:
            weight = Fraction(parts[0])
        except ZeroDivisionError:
            raise CertificateFormatError(f"line {n}: bad weight {parts[0]!r}") from None
        terms = parse_terms(parts[2])
        cert.lines.append(CertificateLine(weight, LinearInequality.build(parts[1], terms)))
    if not text.endswith("\n"):
        raise CertificateFormatError("certificate is truncated (no trailing newline)")
    return cert


def load_certificate(path: str | Path) -> ProofCertificate:
    return parse_certificate(Path(path).read_text())


# ---------------------------------------------------------------------------
# Independent re-derivation


def derive(name: str, closure: bool = True) -> dict[str, Fraction]:
    """Rebuild the named inequality from first principles."""
    q = ground.quotient(closure)
    if name.startswith("elem:"):
        return terms_of_masks(q, parse_elemental(name))
    if name == "prob:B-pos":
        return {B: Fraction(1)}
    if name.startswith("prob:"):
        for r in problem_rows(q):
            if r.name == name:
                return r.inequality(q).as_dict()
    if name.startswith("dep:") and name.endswith((":ge", ":le")):
        return _derive_dependency(name, q)
    raise ValueError(f"unknown inequality name {name!r}")


def _derive_dependency(name: str, q) -> dict[str, Fraction]:
    from regen433.entropy.inequalities import explicit_dependency_rows

    for r in explicit_dependency_rows(q):
        if r.name == name:
            return r.inequality(q).as_dict()
    raise ValueError(f"unknown dependency row {name!r}")


@dataclass
class Verdict:
    ok: bool
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: ProofCertificate) -> Verdict:
    """Exact check that the weighted lines sum to the target."""
    total: dict[str, Fraction] = {}
    for n, ln in enumerate(cert.lines, 1):
        if ln.weight < 0:
            return Verdict(False, f"line {n} ({ln.name}): negative weight {fmt(ln.weight)}")
        try:
            terms = derive(ln.name, cert.closure)
        except ValueError as exc:
            return Verdict(False, f"line {n}: {exc}")
        if terms != ln.inequality.as_dict():
            return Verdict(
                False,
                f"line {n} ({ln.name}): stated inequality differs from the re-derived "
                f"{render_terms(terms)} >= 0",
            )
        for k, v in terms.items():
            total[k] = total.get(k, Fraction(0)) + ln.weight * v
    total = {k: v for k, v in total.items() if v != 0}
    target = cert.target.as_dict()
    if total != target:
        diff = {k: total.get(k, Fraction(0)) - target.get(k, Fraction(0)) for k in set(total) | set(target)}
        diff = {k: v for k, v in diff.items() if v != 0}
        return Verdict(False, f"residual {render_terms(diff)} is not zero")
    return Verdict(True, f"{len(cert.lines)} lines sum exactly to {cert.target.render()}")


# ---------------------------------------------------------------------------
# Extraction and sparsification


def extract_certificate(a, b, c, lp: EntropyLP | None = None) -> ProofCertificate:
    """Certificate for a*alpha + b*beta >= c*B from an optimal dual solution."""
    lp = lp or default_lp()
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    sol = lp.solve(a, b)
    if c > sol.objective:
        raise CertificateRefused(c, sol.objective)
    cert = ProofCertificate(a, b, c, closure=lp.closure)
    for k in sorted(sol.weights):
        row = lp.rows[k]
        cert.lines.append(CertificateLine(sol.weights[k], row.inequality(lp.q)))
    if c < sol.objective:
        cert.lines.append(
            CertificateLine(sol.objective - c, LinearInequality.build("prob:B-pos", {B: 1}))
        )
    return cert


def sparsify_certificate(cert: ProofCertificate) -> ProofCertificate:
    """Re-weight the same lines to minimize total weight, then drop zero lines.

    The secondary LP only uses lines already present, so the support cannot
    grow. A basic optimum has linearly independent support, which makes a
    second pass a no-op on the support size.
    """
    keys = sorted(
        {k for ln in cert.lines for k, _ in ln.inequality.terms} | set(cert.target.as_dict())
    )
    idx = {k: i for i, k in enumerate(keys)}
    columns = [{idx[k]: v for k, v in ln.inequality.terms} for ln in cert.lines]
    target = cert.target.as_dict()
    rhs = [target.get(k, Fraction(0)) for k in keys]
    res = simplex.solve(columns, rhs, [1] * len(columns))
    if res.status != simplex.OPTIMAL:
        raise ValueError(f"input is not a valid certificate (secondary LP {res.status})")
    out = ProofCertificate(cert.a, cert.b, cert.c, closure=cert.closure)
    for k, ln in enumerate(cert.lines):
        w = res.x.get(k, Fraction(0))
        if w:
            out.lines.append(CertificateLine(w, ln.inequality))
    verdict = verify_certificate(out)
    if not verdict:
        raise AssertionError(f"sparsified certificate failed verification: {verdict.diagnostic}")
    return out
