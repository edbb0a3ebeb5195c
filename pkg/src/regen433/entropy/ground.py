"""Ground variables W_i, S_ij, the node-permutation group and the coordinate quotient.

A subset of the 16 ground variables is an ``int`` mask. Bit order follows the
tie-breaking order W1 < W2 < W3 < W4 < S12 < S13 < S14 < S21 < ... < S43.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

import numpy as np

NODES = (1, 2, 3, 4)


class GroundVariable(NamedTuple):
    kind: str  # "W" or "S"
    i: int
    j: int = 0

    @property
    def name(self) -> str:
        return f"W{self.i}" if self.kind == "W" else f"S{self.i}{self.j}"

    def __str__(self) -> str:
        return self.name


GROUND: tuple[GroundVariable, ...] = tuple(
    [GroundVariable("W", i) for i in NODES]
    + [GroundVariable("S", i, j) for i in NODES for j in NODES if i != j]
)
N_GROUND = len(GROUND)
FULL = (1 << N_GROUND) - 1
W_MASK = 0b1111
INDEX = {v: k for k, v in enumerate(GROUND)}
BY_NAME = {v.name: k for k, v in enumerate(GROUND)}


def bit(v: GroundVariable | str) -> int:
    k = BY_NAME[v] if isinstance(v, str) else INDEX[v]
    return 1 << k


def mask_of(members: Iterable[GroundVariable | str] | str) -> int:
    """Mask of a subset given as variables, names, or a comma separated string."""
    if isinstance(members, str):
        members = [m.strip() for m in members.split(",") if m.strip()]
    m = 0
    for v in members:
        try:
            m |= bit(v)
        except KeyError:
            raise ValueError(f"unknown ground variable {v!r}") from None
    return m


def members(mask: int) -> list[GroundVariable]:
    return [GROUND[k] for k in range(N_GROUND) if (mask >> k) & 1]


def render(mask: int) -> str:
    return ",".join(v.name for v in members(mask))


def sort_key(mask: int) -> bytes:
    # bytes compare exactly like sorted member lists (shorter prefix first)
    return bytes(k for k in range(N_GROUND) if (mask >> k) & 1)


# ---------------------------------------------------------------------------
# Symmetry


@dataclass(frozen=True)
class NodePermutation:
    images: tuple[int, int, int, int]  # images[i - 1] = pi(i)

    def __post_init__(self):
        if sorted(self.images) != list(NODES):
            raise ValueError(f"{self.images} is not a permutation of 1..4")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: NodePermutation) -> NodePermutation:
        """(self o other)(i) = self(other(i))."""
        return NodePermutation(tuple(self(other(i)) for i in NODES))

    def apply_var(self, v: GroundVariable) -> GroundVariable:
        if v.kind == "W":
            return GroundVariable("W", self(v.i))
        return GroundVariable("S", self(v.i), self(v.j))

    @cached_property
    def bit_map(self) -> tuple[int, ...]:
        return tuple(INDEX[self.apply_var(v)] for v in GROUND)

    def apply(self, mask: int) -> int:
        out = 0
        for k, t in enumerate(self.bit_map):
            if (mask >> k) & 1:
                out |= 1 << t
        return out


@lru_cache(maxsize=None)
def symmetry_group() -> tuple[NodePermutation, ...]:
    return tuple(NodePermutation(p) for p in itertools.permutations(NODES))


@lru_cache(maxsize=None)
def _perm_table() -> np.ndarray:
    """(24, 2**16) array: image of every mask under every permutation."""
    masks = np.arange(1 << N_GROUND, dtype=np.int64)
    out = np.zeros((24, 1 << N_GROUND), dtype=np.int64)
    for g, pi in enumerate(symmetry_group()):
        for k, t in enumerate(pi.bit_map):
            out[g] |= ((masks >> k) & 1) << t
    return out


# ---------------------------------------------------------------------------
# Functional dependencies

_S_FROM = {i: mask_of(f"S{i}{j}" for j in NODES if j != i) for i in NODES}
_S_INTO = {j: mask_of(f"S{i}{j}" for i in NODES if i != j) for j in NODES}


def is_full_rank(mask: int) -> bool:
    """At least three W's: the subset determines the message."""
    return bin(mask & W_MASK).count("1") >= 3


def dependency_closure(mask: int) -> int:
    """Least superset closed under the code's functional dependencies.

    W_i determines S_ij for every j; the three S_ij into node j determine W_j;
    three W's determine everything.
    """
    while True:
        new = mask
        for i in NODES:
            if new & (1 << (i - 1)):
                new |= _S_FROM[i]
        for j in NODES:
            if new & _S_INTO[j] == _S_INTO[j]:
                new |= 1 << (j - 1)
        if is_full_rank(new):
            new = FULL
        if new == mask:
            return mask
        mask = new


@lru_cache(maxsize=None)
def _closure_table() -> np.ndarray:
    return np.array([dependency_closure(m) for m in range(1 << N_GROUND)], dtype=np.int64)


# ---------------------------------------------------------------------------
# Quotient


@dataclass(frozen=True)
class CanonicalSet:
    representative: int
    orbit_size: int
    is_full_rank_B: bool

    def __str__(self) -> str:
        return render(self.representative)

    @property
    def label(self) -> str:
        return f"h({render(self.representative)})"


class Quotient:
    """Maps every subset mask to an LP coordinate.

    With ``closure=True`` a subset is first replaced by its dependency
    closure and then by the lexicographically smallest image of that closure
    under the 24 node permutations. With ``closure=False`` only the symmetry
    is quotiented out.
    """

    def __init__(self, closure: bool = True):
        self.closure = closure
        perms = _perm_table()
        base = _closure_table() if closure else np.arange(1 << N_GROUND, dtype=np.int64)
        rep_of: dict[int, int] = {}
        orbit: dict[int, int] = {}
        for m in np.unique(base).tolist():
            if m in rep_of:
                continue
            images = set(perms[:, m].tolist())
            rep = min(images, key=sort_key)
            for x in images:
                rep_of[x] = rep
            orbit[rep] = len(images)
        reps = sorted(set(rep_of.values()), key=sort_key)
        self.classes: list[CanonicalSet] = [
            CanonicalSet(r, orbit[r], r == FULL or (closure and is_full_rank(r))) for r in reps
        ]
        self.index = {c.representative: k for k, c in enumerate(self.classes)}
        keys = np.array(sorted(rep_of), dtype=np.int64)
        vals = np.array([self.index[rep_of[m]] for m in keys.tolist()], dtype=np.int64)
        self.lookup = vals[np.searchsorted(keys, base)]
        self.empty = int(self.lookup[0])
        self.full = int(self.lookup[FULL])

    def __len__(self) -> int:
        return len(self.classes)

    def class_id(self, mask: int) -> int:
        return int(self.lookup[mask])

    def canonicalize(self, mask: int) -> CanonicalSet:
        if mask == 0:
            raise ValueError("cannot canonicalize the empty set")
        if mask & ~FULL:
            raise ValueError("mask has bits outside the ground set")
        return self.classes[self.class_id(mask)]


@lru_cache(maxsize=None)
def quotient(closure: bool = True) -> Quotient:
    return Quotient(closure)


def canonicalize(s: int | Iterable[GroundVariable | str] | str) -> CanonicalSet:
    mask = s if isinstance(s, int) else mask_of(s)
    return quotient(True).canonicalize(mask)


@dataclass(frozen=True)
class CoordinateReport:
    raw_subsets: int
    coordinates: list[CanonicalSet]

    def csv(self) -> str:
        lines = ["representative,orbit_size,full_rank"]
        for c in self.coordinates:
            lines.append(f'"{render(c.representative)}",{c.orbit_size},{int(c.is_full_rank_B)}')
        return "\n".join(lines) + "\n"


def enumerate_coordinates(closure: bool = True) -> CoordinateReport:
    """Canonical classes of all 2**16 - 1 nonempty subsets, in canonical order."""
    q = quotient(closure)
    used = sorted(set(q.lookup[1:].tolist()))
    return CoordinateReport((1 << N_GROUND) - 1, [q.classes[k] for k in used])
