"""Bit-exact (4,3,3) regenerating codes at the three corner points.

* ``MSR``: systematic single-parity code, B=3, alpha=1, beta=1.
* ``MBR``: repair-by-transfer, i.e. each message bit replicated on one pair of
  nodes, B=6, alpha=3, beta=1.
* ``INTERIOR``: the binary B=8, alpha=3, beta=2 code with circularly symmetric
  parities.

All three codes are linear over GF(2). Node ids are 1-based throughout.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from regen433 import gf2

NODES = (1, 2, 3, 4)


class CodeId(enum.Enum):
    MSR = "msr"
    MBR = "mbr"
    INTERIOR = "interior"

    @classmethod
    def parse(cls, name: str | CodeId) -> CodeId:
        if isinstance(name, CodeId):
            return name
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown code id {name!r}; expected one of msr, mbr, interior") from None


class DecodeError(ValueError):
    """Shares or packets are not consistent with any codeword."""


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: int
    B: int
    alpha: int
    beta: int

    @property
    def alpha_bar(self) -> Fraction:
        return Fraction(self.alpha, self.B)

    @property
    def beta_bar(self) -> Fraction:
        return Fraction(self.beta, self.B)

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return (self.alpha_bar, self.beta_bar)


_PARAMS = {
    CodeId.MSR: CodeParameters(4, 3, 3, B=3, alpha=1, beta=1),
    CodeId.MBR: CodeParameters(4, 3, 3, B=6, alpha=3, beta=1),
    CodeId.INTERIOR: CodeParameters(4, 3, 3, B=8, alpha=3, beta=2),
}


def code_parameters(code: CodeId | str) -> CodeParameters:
    return _PARAMS[CodeId.parse(code)]


Bits = tuple[int, ...]


def _as_bits(bits: Iterable[int], length: int, what: str) -> Bits:
    out = tuple(int(b) for b in bits)
    if len(out) != length:
        raise ValueError(f"{what} has {len(out)} bits, expected {length}")
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"{what} contains non-binary values")
    return out


@dataclass(frozen=True)
class NodeShare:
    node_id: int
    bits: Bits

    def __post_init__(self):
        if self.node_id not in NODES:
            raise ValueError(f"node id {self.node_id} out of range 1..4")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))


@dataclass(frozen=True)
class RepairPacket:
    helper_id: int
    failed_id: int
    bits: Bits

    def __post_init__(self):
        if self.helper_id not in NODES or self.failed_id not in NODES:
            raise ValueError("helper/failed ids must be in 1..4")
        if self.helper_id == self.failed_id:
            raise ValueError("a node cannot help repair itself")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))


# ---------------------------------------------------------------------------
# INTERIOR code tables. Message bit order: x1 x2 y1 y2 z1 z2 t1 t2.

LETTERS = "xyzt"


def _sym(name: str) -> int:
    return LETTERS.index(name[0]) * 2 + int(name[1]) - 1


def _row(expr: str) -> int:
    """'y1+z2+t1' -> bitset over the 8 message bits."""
    v = 0
    for term in expr.split("+"):
        v ^= 1 << _sym(term.strip())
    return v


INTERIOR_STORAGE = {
    1: ("x1", "x2", "y1+z2+t1+t2"),
    2: ("y1", "y2", "z1+t2+x1+x2"),
    3: ("z1", "z2", "t1+x2+y1+y2"),
    4: ("t1", "t2", "x1+y2+z1+z2"),
}

# helper -> two packet bits, for failed node 1
INTERIOR_REPAIR_NODE1 = {
    2: ("y1", "z1+t2+x1+x2+y1+y2"),
    3: ("z2", "t1+x2+y1+y2+z1+z2"),
    4: ("t1+t2", "x1+y2+z1+z2+t2"),
}


def rotate_row(row: int, shift: int) -> int:
    """Apply the symbol map x->y->z->t->x ``shift`` times to a bitset row."""
    out = 0
    for s in range(8):
        if (row >> s) & 1:
            letter, sub = divmod(s, 2)
            out |= 1 << (((letter + shift) % 4) * 2 + sub)
    return out


def rotate_node(node: int, shift: int) -> int:
    return (node - 1 + shift) % 4 + 1


# ---------------------------------------------------------------------------
# Generator matrices: node -> tuple of alpha row bitsets over B message bits.

MBR_PAIRS = tuple(itertools.combinations(NODES, 2))


@lru_cache(maxsize=None)
def generator(code: CodeId) -> dict[int, tuple[int, ...]]:
    if code is CodeId.MSR:
        return {1: (0b001,), 2: (0b010,), 3: (0b100,), 4: (0b111,)}
    if code is CodeId.MBR:
        return {
            i: tuple(1 << p for p, pair in enumerate(MBR_PAIRS) if i in pair) for i in NODES
        }
    return {i: tuple(_row(e) for e in INTERIOR_STORAGE[i]) for i in NODES}


@lru_cache(maxsize=None)
def repair_rows(code: CodeId, helper: int, failed: int) -> tuple[int, ...]:
    """Packet bits sent by ``helper`` for ``failed``, as rows over the message."""
    if code is CodeId.MSR:
        return generator(code)[helper]
    if code is CodeId.MBR:
        pair = tuple(sorted((helper, failed)))
        return (1 << MBR_PAIRS.index(pair),)
    shift = failed - 1
    role = rotate_node(helper, -shift)
    return tuple(rotate_row(_row(e), shift) for e in INTERIOR_REPAIR_NODE1[role])


@lru_cache(maxsize=None)
def _repair_matrix(code: CodeId, helper: int, failed: int) -> tuple[int, ...]:
    """beta x alpha matrix taking the helper's stored bits to its packet bits.

    Raises if some packet bit is not a function of the helper's own storage.
    """
    params = _PARAMS[code]
    stored = generator(code)[helper]
    # transpose: one row per message bit, columns index stored bits
    cols = [
        sum(((stored[k] >> b) & 1) << k for k in range(params.alpha)) for b in range(params.B)
    ]
    solver = gf2.Solver(cols, params.alpha)
    out = []
    for row in repair_rows(code, helper, failed):
        coeffs = solver.solve(row)
        if coeffs is None:
            raise AssertionError(
                f"{code.name}: packet {helper}->{failed} is not computable from node {helper}"
            )
        out.append(coeffs)
    return tuple(out)


@lru_cache(maxsize=None)
def _decoder(code: CodeId, nodes: tuple[int, ...]) -> gf2.Solver:
    params = _PARAMS[code]
    rows = [r for i in nodes for r in generator(code)[i]]
    return gf2.Solver(rows, params.B)


# ---------------------------------------------------------------------------


def encode(code: CodeId | str, message: Sequence[int]) -> list[NodeShare]:
    code = CodeId.parse(code)
    params = _PARAMS[code]
    m = gf2.bits_to_int(_as_bits(message, params.B, "message"))
    return [
        NodeShare(i, tuple(gf2.dot(r, m) for r in generator(code)[i])) for i in NODES
    ]


def decode(code: CodeId | str, shares: Sequence[NodeShare]) -> Bits:
    """Recover the message from any 3 shares with distinct node ids."""
    code = CodeId.parse(code)
    params = _PARAMS[code]
    if len(shares) != 3:
        raise ValueError(f"decode needs exactly 3 shares, got {len(shares)}")
    ordered = sorted(shares, key=lambda s: s.node_id)
    nodes = tuple(s.node_id for s in ordered)
    if len(set(nodes)) != 3:
        raise ValueError(f"duplicate node ids in {nodes}")
    y = []
    for s in ordered:
        y.extend(_as_bits(s.bits, params.alpha, f"share of node {s.node_id}"))
    m = _decoder(code, nodes).solve(gf2.bits_to_int(y))
    if m is None:
        raise DecodeError(f"shares from nodes {nodes} are not a codeword of {code.name}")
    return gf2.int_to_bits(m, params.B)


def repair_encode(code: CodeId | str, helper: NodeShare, failed_id: int) -> RepairPacket:
    code = CodeId.parse(code)
    params = _PARAMS[code]
    if failed_id not in NODES:
        raise ValueError(f"failed node id {failed_id} out of range 1..4")
    if helper.node_id == failed_id:
        raise ValueError("helper equals failed node")
    s = gf2.bits_to_int(_as_bits(helper.bits, params.alpha, "helper share"))
    mat = _repair_matrix(code, helper.node_id, failed_id)
    return RepairPacket(helper.node_id, failed_id, tuple(gf2.dot(r, s) for r in mat))


def _helpers_in_role_order(failed_id: int) -> tuple[int, int, int]:
    return tuple(rotate_node(failed_id, r) for r in (1, 2, 3))  # type: ignore[return-value]


def repair_decode(code: CodeId | str, failed_id: int, packets: Sequence[RepairPacket]) -> NodeShare:
    """Rebuild the share of ``failed_id`` from one packet per surviving node."""
    code = CodeId.parse(code)
    params = _PARAMS[code]
    if failed_id not in NODES:
        raise ValueError(f"failed node id {failed_id} out of range 1..4")
    by_helper = {}
    for p in packets:
        if p.failed_id != failed_id:
            raise ValueError(f"packet from {p.helper_id} is addressed to node {p.failed_id}")
        by_helper[p.helper_id] = _as_bits(p.bits, params.beta, f"packet from {p.helper_id}")
    expected = set(NODES) - {failed_id}
    if len(packets) != 3 or set(by_helper) != expected:
        raise ValueError(f"need packets from exactly nodes {sorted(expected)}")

    if code is CodeId.MSR:
        return NodeShare(failed_id, (sum(by_helper[h][0] for h in expected) & 1,))
    if code is CodeId.MBR:
        bits = []
        for pair in MBR_PAIRS:
            if failed_id in pair:
                other = pair[0] if pair[1] == failed_id else pair[1]
                bits.append(by_helper[other][0])
        return NodeShare(failed_id, tuple(bits))

    # INTERIOR: helpers f+1, f+2, f+3 play the roles of nodes 2, 3, 4 for node 1
    p, q, r = (by_helper[h] for h in _helpers_in_role_order(failed_id))
    c1 = p[1] ^ q[0]
    c2 = q[1] ^ r[0]
    c3 = r[1] ^ p[0]
    return NodeShare(failed_id, (c1 ^ c2, c1 ^ c3, p[0] ^ q[0] ^ r[0]))


def repair(code: CodeId | str, shares: Sequence[NodeShare], failed_id: int) -> tuple[NodeShare, list[RepairPacket]]:
    """Run a full single-node repair given the surviving shares."""
    packets = [repair_encode(code, s, failed_id) for s in shares if s.node_id != failed_id]
    return repair_decode(code, failed_id, packets), packets


# ---------------------------------------------------------------------------


def all_messages(code: CodeId | str) -> Iterable[Bits]:
    """Every message, in increasing order of its hex rendering."""
    B = code_parameters(code).B
    for v in range(1 << B):
        yield tuple((v >> (B - 1 - k)) & 1 for k in range(B))


def storage_is_cyclic() -> bool:
    """Check that rotating nodes by one and symbols x->y->z->t->x fixes the interior storage layout."""
    rows = {i: tuple(_row(e) for e in INTERIOR_STORAGE[i]) for i in NODES}
    return all(
        tuple(rotate_row(r, 1) for r in rows[i]) == rows[rotate_node(i, 1)] for i in NODES
    )


@dataclass
class RoundtripReport:
    code: CodeId
    messages: int = 0
    decode_pass: int = 0
    decode_fail: int = 0
    repair_pass: int = 0
    repair_fail: int = 0
    repair_bits: int = 0

    @property
    def ok(self) -> bool:
        return self.decode_fail == 0 and self.repair_fail == 0


def sample_messages(code: CodeId | str, count: int = 16, seed: int = 0) -> list[Bits]:
    """All messages if there are at most ``count``, else zeros, ones and a seeded sample."""
    msgs = list(all_messages(code))
    if len(msgs) <= count:
        return msgs
    rng = random.Random(seed)
    rest = rng.sample(msgs[1:-1], count - 2)
    return [msgs[0]] + sorted(rest) + [msgs[-1]]


def exhaustive_check(code: CodeId | str) -> RoundtripReport:
    """Every message through every 3-subset decode and every single-node repair."""
    return roundtrip_check(code, all_messages(code))


def roundtrip_check(code: CodeId | str, messages: Iterable[Sequence[int]]) -> RoundtripReport:
    code = CodeId.parse(code)
    params = _PARAMS[code]
    rep = RoundtripReport(code)
    subsets = list(itertools.combinations(NODES, 3))
    for m in messages:
        m = tuple(m)
        rep.messages += 1
        shares = encode(code, m)
        for sub in subsets:
            try:
                ok = decode(code, [shares[i - 1] for i in sub]) == m
            except DecodeError:
                ok = False
            if ok:
                rep.decode_pass += 1
            else:
                rep.decode_fail += 1
        for f in NODES:
            rebuilt, packets = repair(code, shares, f)
            bits = sum(len(p.bits) for p in packets)
            if rebuilt == shares[f - 1] and bits == params.d * params.beta:
                rep.repair_pass += 1
            else:
                rep.repair_fail += 1
            rep.repair_bits += bits
    return rep


def _self_test() -> None:
    # the tables only exhibit failed node 1; brute-force every failure here
    for code in CodeId:
        for f in NODES:
            for h in set(NODES) - {f}:
                _repair_matrix(code, h, f)
    rep = exhaustive_check(CodeId.INTERIOR)
    if not rep.ok:
        raise AssertionError(f"INTERIOR code self-test failed: {rep}")


_self_test()


# ---------------------------------------------------------------------------
# Byte-payload striping


def payload_bits(payload: bytes) -> list[int]:
    return [(byte >> (7 - k)) & 1 for byte in payload for k in range(8)]


def stripe(code: CodeId | str, payload: bytes) -> tuple[int, list[Bits]]:
    """Split a payload into B-bit message blocks, zero padded.

    Returns (length header, blocks). An empty payload still occupies one
    all-zero block so that every object owns at least one stripe.
    """
    B = code_parameters(code).B
    bits = payload_bits(payload)
    n_blocks = max(1, -(-len(bits) // B))
    bits += [0] * (n_blocks * B - len(bits))
    return len(payload), [tuple(bits[i * B:(i + 1) * B]) for i in range(n_blocks)]


def unstripe(length: int, blocks: Sequence[Sequence[int]]) -> bytes:
    bits = [b for blk in blocks for b in blk]
    if len(bits) < 8 * length:
        raise ValueError(f"{len(bits)} bits cannot hold a {length}-byte payload")
    out = bytearray()
    for i in range(length):
        byte = 0
        for b in bits[8 * i:8 * i + 8]:
            byte = (byte << 1) | b
        out.append(byte)
    return bytes(out)


def bits_hex(bits: Sequence[int]) -> str:
    """MSB-first hex rendering of a bit vector, zero-filled to whole nibbles."""
    v = 0
    for b in bits:
        v = (v << 1) | b
    width = max(1, -(-len(bits) // 4))
    return format(v, f"0{width}x")


def hex_bits(text: str, length: int) -> Bits:
    """Inverse of ``bits_hex``."""
    v = int(text, 16)
    if v >> length:
        raise ValueError(f"{text!r} does not fit in {length} bits")
    return tuple((v >> (length - 1 - k)) & 1 for k in range(length))


def vector_dump(code: CodeId | str, messages: Iterable[Sequence[int]] | None = None) -> str:
    """Hex dump, one block per line: message, then the four node shares."""
    code = CodeId.parse(code)
    lines = [f"# {code.value}: message node1 node2 node3 node4"]
    for m in all_messages(code) if messages is None else messages:
        shares = encode(code, m)
        lines.append(" ".join([bits_hex(m)] + [bits_hex(s.bits) for s in shares]))
    return "\n".join(lines) + "\n"


def check_vector_dump(code: CodeId | str, text: str) -> list[int]:
    """Line numbers whose shares disagree with a fresh encoding."""
    code = CodeId.parse(code)
    p = code_parameters(code)
    bad = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split()
        m = hex_bits(fields[0], p.B)
        expect = [bits_hex(s.bits) for s in encode(code, m)]
        if fields[1:] != expect:
            bad.append(n)
    return bad
