"""Exact rational geometry of the normalized (alpha_bar, beta_bar) tradeoff regions."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction

Point = tuple[Fraction, Fraction]


class DegenerateRegionError(ValueError):
    pass


def frac(x) -> Fraction:
    """Parse ``p/q`` strings, ints and Fractions. Floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating-point values are not accepted; use 'p/q'")
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class HalfSpace:
    """a * alpha_bar + b * beta_bar >= c."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, frac(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise ValueError("half-space needs (a, b) != (0, 0)")

    def slack(self, p: Point) -> Fraction:
        return self.a * p[0] + self.b * p[1] - self.c

    def contains(self, p: Point) -> bool:
        return self.slack(p) >= 0

    def __str__(self) -> str:
        return f"{fmt(self.a)} alpha + {fmt(self.b)} beta >= {fmt(self.c)}"


@dataclass(frozen=True)
class Region2D:
    halfspaces: tuple[HalfSpace, ...]

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))

    def __contains__(self, p) -> bool:
        return contains(self, p)


def _hs(*rows) -> Region2D:
    return Region2D(tuple(HalfSpace(a, b, c) for a, b, c in rows))


def cutset_region() -> Region2D:
    return _hs((3, 0, 1), (2, 1, 1), (1, 3, 1), (0, 6, 1))


def exact_region() -> Region2D:
    return _hs((3, 0, 1), (2, 1, 1), (4, 6, 3), (0, 6, 1))


def _point(p) -> Point:
    return (frac(p[0]), frac(p[1]))


def contains(region: Region2D, p) -> bool:
    p = _point(p)
    return all(h.contains(p) for h in region.halfspaces)


def tight(region: Region2D, p) -> list[HalfSpace]:
    p = _point(p)
    return [h for h in region.halfspaces if h.slack(p) == 0]


def cutset_bound_value(p) -> Fraction:
    """sum_{i=0}^{2} min(alpha_bar, (3 - i) beta_bar); the cut-set bound is value >= 1."""
    a, b = _point(p)
    if a < 0 or b < 0:
        raise ValueError("cut-set value is defined for nonnegative points")
    return sum((min(a, (3 - i) * b) for i in range(3)), Fraction(0))


def _intersect(h1: HalfSpace, h2: HalfSpace) -> Point | None:
    det = h1.a * h2.b - h2.a * h1.b
    if det == 0:
        return None
    x = (h1.c * h2.b - h2.c * h1.b) / det
    y = (h1.a * h2.c - h2.a * h1.c) / det
    return (x, y)


def vertices(region: Region2D) -> list[Point]:
    """All feasible pairwise boundary intersections, sorted by alpha_bar."""
    hs = region.halfspaces
    if len(hs) < 2:
        raise DegenerateRegionError("need at least two half-spaces to have a vertex")
    pts = set()
    for h1, h2 in itertools.combinations(hs, 2):
        p = _intersect(h1, h2)
        if p is not None and contains(region, p):
            pts.add(p)
    if not pts:
        raise DegenerateRegionError("region has no vertices (unbounded strip or empty)")
    return sorted(pts)


@dataclass(frozen=True)
class Gap:
    point: Point
    normalized: Fraction
    raw: Fraction
    witness: HalfSpace | None


def max_gap(outer: Region2D, inner: Region2D) -> Gap:
    """Vertex of ``outer`` that most violates ``inner``.

    Violation of a half-space at p is (c - a*x - b*y), normalized by (a + b).
    """
    best = None
    for p in vertices(outer):
        for h in inner.halfspaces:
            raw = -h.slack(p)
            norm = raw / (h.a + h.b)
            if best is None or norm > best.normalized:
                best = Gap(p, norm, raw, h)
    if best is None or best.normalized <= 0:
        return Gap(vertices(outer)[0], Fraction(0), Fraction(0), None)
    return best


def export_region(region: Region2D) -> tuple[str, str]:
    """(halfspaces.csv, vertices.csv) with every number written as 'p/q'."""
    if not region.halfspaces:
        raise ValueError("cannot export an empty constraint list")
    hbuf, vbuf = io.StringIO(), io.StringIO()
    hw = csv.writer(hbuf, lineterminator="\n")
    hw.writerow(["a", "b", "c"])
    for h in region.halfspaces:
        hw.writerow([fmt(h.a), fmt(h.b), fmt(h.c)])
    vw = csv.writer(vbuf, lineterminator="\n")
    vw.writerow(["alpha_bar", "beta_bar"])
    for x, y in vertices(region):
        vw.writerow([fmt(x), fmt(y)])
    return hbuf.getvalue(), vbuf.getvalue()


def parse_halfspaces(text: str) -> Region2D:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ValueError("no half-space rows")
    return Region2D(tuple(HalfSpace(r["a"], r["b"], r["c"]) for r in rows))


def parse_vertices(text: str) -> list[Point]:
    return [(frac(r["alpha_bar"]), frac(r["beta_bar"])) for r in csv.DictReader(io.StringIO(text))]
