"""Elemental Shannon inequalities and the code constraints, over quotient coordinates."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from regen433.entropy import ground
from regen433.entropy.ground import FULL, N_GROUND, GROUND, Quotient

ALPHA = "alpha"
BETA = "beta"
B = "B"
SCALARS = (ALPHA, BETA, B)


@dataclass(frozen=True)
class LinearInequality:
    """sum(coef * term) >= 0, terms keyed by 'h(<rep>)', 'alpha', 'beta' or 'B'."""

    name: str
    terms: tuple[tuple[str, Fraction], ...]

    @classmethod
    def build(cls, name: str, terms: dict[str, object]) -> LinearInequality:
        clean = {k: Fraction(v) for k, v in terms.items() if v != 0}
        return cls(name, tuple(sorted(clean.items(), key=lambda kv: term_order(kv[0]))))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.terms)

    def render(self) -> str:
        return render_terms(self.as_dict()) + " >= 0"


def term_order(key: str):
    if key in SCALARS:
        return (1, SCALARS.index(key), b"")
    rep = ground.mask_of(key[2:-1])
    return (0, 0, ground.sort_key(rep))


def render_terms(terms: dict[str, Fraction]) -> str:
    parts = []
    for k in sorted(terms, key=term_order):
        v = Fraction(terms[k])
        if v == 0:
            continue
        mag = abs(v)
        coef = "" if mag == 1 else (f"{mag.numerator}" if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}") + " "
        sign = "-" if v < 0 else "+"
        parts.append((sign, f"{coef}{k}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def label(q: Quotient, class_id: int) -> str:
    return q.classes[class_id].label


def terms_of_masks(q: Quotient, signed_masks) -> dict[str, Fraction]:
    """Sum of coef * h(mask), rewritten over canonical coordinates."""
    acc: dict[int, int] = {}
    for mask, coef in signed_masks:
        if mask == 0:
            continue
        cid = q.class_id(mask)
        acc[cid] = acc.get(cid, 0) + coef
    return {label(q, k): Fraction(v) for k, v in acc.items() if v != 0}


# ---------------------------------------------------------------------------
# Names


def elemental_name_H(i: int) -> str:
    return f"elem:H({GROUND[i].name}|rest)"


def elemental_name_I(i: int, j: int, kmask: int) -> str:
    cond = ground.render(kmask)
    return f"elem:I({GROUND[i].name};{GROUND[j].name}|{cond})"


def parse_elemental(name: str) -> list[tuple[int, int]]:
    """Signed masks of an elemental inequality name; raises ValueError if malformed."""
    if name.startswith("elem:H(") and name.endswith("|rest)"):
        i = ground.mask_of(name[len("elem:H("):-len("|rest)")])
        if bin(i).count("1") != 1:
            raise ValueError(f"bad variable in {name!r}")
        return [(FULL, 1), (FULL ^ i, -1)]
    if name.startswith("elem:I(") and name.endswith(")"):
        body = name[len("elem:I("):-1]
        pair, sep, cond = body.partition("|")
        if not sep:
            raise ValueError(f"missing '|' in {name!r}")
        xs = pair.split(";")
        if len(xs) != 2:
            raise ValueError(f"bad pair in {name!r}")
        i, j = ground.mask_of(xs[0]), ground.mask_of(xs[1])
        k = ground.mask_of(cond)
        if bin(i).count("1") != 1 or bin(j).count("1") != 1 or i == j or (i | j) & k:
            raise ValueError(f"not an elemental inequality: {name!r}")
        return [(i | k, 1), (j | k, 1), (i | j | k, -1), (k, -1)]
    raise ValueError(f"unknown inequality name {name!r}")


# ---------------------------------------------------------------------------
# Elemental rows


def _pair_rows(args) -> list[tuple[int, int, int, tuple[tuple[int, int], ...]]]:
    """Distinct canonical rows for I(X_i; X_j | K), K ranging over the rest."""
    closure, i, j = args
    q = ground.quotient(closure)
    rest = [k for k in range(N_GROUND) if k not in (i, j)]
    sub = np.arange(1 << len(rest), dtype=np.int64)
    ks = np.zeros_like(sub)
    for bi, k in enumerate(rest):
        ks |= ((sub >> bi) & 1) << k
    lut = q.lookup
    empty = q.empty
    ids = np.stack([lut[ks | (1 << i)], lut[ks | (1 << j)], lut[ks | (1 << i) | (1 << j)], lut[ks]], axis=1)
    uniq, first = np.unique(ids, axis=0, return_index=True)
    out = []
    for (a, b_, ab, k), f in zip(uniq.tolist(), first.tolist()):
        acc: dict[int, int] = {}
        for cid, s in ((a, 1), (b_, 1), (ab, -1), (k, -1)):
            if cid != empty:
                acc[cid] = acc.get(cid, 0) + s
        row = tuple(sorted((c, v) for c, v in acc.items() if v))
        if row:
            out.append((f, i, j, row, int(ks[f])))
    out.sort()
    return [(i, j, kmask, row) for _, i, j, row, kmask in out]


def default_workers() -> int:
    env = os.environ.get("REGEN_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Row:
    """Internal sparse row: sum coef[c] * h_c + alpha*a + beta*b + B*bconst >= 0."""

    name: str
    coef: tuple[tuple[int, int], ...]
    alpha: int = 0
    beta: int = 0
    B: int = 0

    def inequality(self, q: Quotient) -> LinearInequality:
        terms: dict[str, object] = {label(q, c): v for c, v in self.coef}
        terms.update({ALPHA: self.alpha, BETA: self.beta, B: self.B})
        return LinearInequality.build(self.name, terms)


def elemental_rows(q: Quotient, workers: int | None = None) -> list[Row]:
    """All elemental inequalities, canonicalized, deduplicated, tautologies dropped.

    Each surviving row is named after the first elemental inequality (pair
    order, then conditioning-set order) that produced it. The result does not
    depend on ``workers``.
    """
    rows: list[Row] = []
    seen: set = set()

    def add(name, coef):
        if coef and coef not in seen:
            seen.add(coef)
            rows.append(Row(name, coef))

    for i in range(N_GROUND):
        acc: dict[int, int] = {}
        for cid, s in ((q.lookup[FULL], 1), (q.lookup[FULL ^ (1 << i)], -1)):
            if cid != q.empty:
                acc[int(cid)] = acc.get(int(cid), 0) + s
        add(elemental_name_H(i), tuple(sorted((c, v) for c, v in acc.items() if v)))

    pairs = [(q.closure, i, j) for i, j in itertools.combinations(range(N_GROUND), 2)]
    workers = default_workers() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_pair_rows, pairs, chunksize=4))
    else:
        chunks = [_pair_rows(p) for p in pairs]
    for chunk in chunks:
        for i, j, kmask, coef in chunk:
            add(elemental_name_I(i, j, kmask), coef)
    return rows


def elemental_count() -> int:
    """Raw number of elemental inequalities over 16 variables."""
    n = N_GROUND
    return n + n * (n - 1) // 2 * 2 ** (n - 2)


# ---------------------------------------------------------------------------
# Problem constraints

W1 = ground.mask_of("W1")
S12 = ground.mask_of("S12")


def problem_rows(q: Quotient) -> list[Row]:
    """Storage cap, repair-bandwidth cap and normalization H(all) = B.

    Normalization enters as H(all) - B >= 0; for objectives with nonnegative
    weights on alpha and beta the minimum is attained with equality, because
    the remaining constraints are homogeneous.
    """
    full = q.class_id(FULL)
    return [
        Row("prob:alpha-cap", ((q.class_id(W1), -1),), alpha=1),
        Row("prob:beta-cap", ((q.class_id(S12), -1),), beta=1),
        Row("prob:B-norm", ((full, 1),), B=-1),
    ]


B_POS = Row("prob:B-pos", (), B=1)


def _equal(name: str, q: Quotient, big: int, small: int) -> list[Row]:
    """H(big) - H(small) = 0 as two opposite rows; dropped if trivial."""
    acc: dict[int, int] = {}
    for mask, s in ((big, 1), (small, -1)):
        if mask:
            cid = q.class_id(mask)
            acc[cid] = acc.get(cid, 0) + s
    coef = tuple(sorted((c, v) for c, v in acc.items() if v))
    if not coef:
        return []
    neg = tuple((c, -v) for c, v in coef)
    return [Row(name + ":ge", coef), Row(name + ":le", neg)]


def explicit_dependency_rows(q: Quotient) -> Iterator[Row]:
    """Reconstruction, repair-encoding and repair-decoding equalities as explicit rows."""
    ws = [ground.mask_of(f"W{i}") for i in ground.NODES]
    for trio in itertools.combinations(range(4), 3):
        a = ws[trio[0]] | ws[trio[1]] | ws[trio[2]]
        yield from _equal(f"dep:recon({ground.render(a)})", q, FULL, a)
    for i in ground.NODES:
        for j in ground.NODES:
            if i != j:
                s = ground.mask_of(f"S{i}{j}")
                w = ws[i - 1]
                yield from _equal(f"dep:S{i}{j}|W{i}", q, w | s, w)
    for j in ground.NODES:
        into = ground.mask_of(f"S{i}{j}" for i in ground.NODES if i != j)
        yield from _equal(f"dep:W{j}|S*{j}", q, into | ws[j - 1], into)
