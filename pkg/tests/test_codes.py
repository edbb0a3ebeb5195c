import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from regen433 import codes
from regen433.codes import CodeId, NodeShare, RepairPacket


def bits(s: str):
    return tuple(int(c) for c in s)


INTERIOR_FIELDS = ["x1", "x2", "y1", "y2", "z1", "z2", "t1", "t2"]


def msg(**ones):
    return tuple(1 if name in ones else 0 for name in INTERIOR_FIELDS)


@pytest.mark.parametrize(
    "code,point",
    [("msr", (Fraction(1, 3), Fraction(1, 3))), ("interior", (Fraction(3, 8), Fraction(1, 4))),
     ("mbr", (Fraction(1, 2), Fraction(1, 6)))],
)
def test_code_parameters(code, point):
    p = codes.code_parameters(code)
    assert p.point == point
    assert (p.n, p.k, p.d) == (4, 3, 3)


def test_code_id_parse():
    assert CodeId.parse(" Interior ") is CodeId.INTERIOR
    with pytest.raises(ValueError):
        CodeId.parse("rs")


def test_interior_single_bit_examples():
    shares = codes.encode("interior", msg(x1=1))
    assert shares[0].bits == (1, 0, 0)
    shares = codes.encode("interior", msg(y1=1))
    assert shares[0].bits == (0, 0, 1)


def test_zero_message_encodes_to_zero():
    for code in CodeId:
        assert all(not any(s.bits) for s in codes.encode(code, [0] * codes.code_parameters(code).B))


def test_encode_rejects_wrong_length():
    with pytest.raises(ValueError):
        codes.encode("interior", [0] * 7)
    with pytest.raises(ValueError):
        codes.encode("msr", [0, 1, 2])


def test_mbr_pair_replication():
    m = (1, 0, 0, 0, 0, 0)  # first pair is {1,2}
    shares = codes.encode("mbr", m)
    assert shares[0].bits[0] == 1 and shares[1].bits[0] == 1
    assert not any(shares[2].bits) and not any(shares[3].bits)


@pytest.mark.parametrize("code", list(CodeId))
def test_exhaustive_roundtrip(code):
    rep = codes.exhaustive_check(code)
    p = codes.code_parameters(code)
    assert rep.ok
    assert rep.messages == 2**p.B
    assert rep.decode_pass == rep.repair_pass == 4 * 2**p.B
    assert rep.repair_bits == rep.repair_pass * 3 * p.beta


def test_decode_needs_three_distinct_nodes():
    shares = codes.encode("msr", (1, 0, 1))
    with pytest.raises(ValueError):
        codes.decode("msr", shares[:2])
    with pytest.raises(ValueError):
        codes.decode("msr", [shares[0], shares[0], shares[1]])


@pytest.mark.parametrize("code", [CodeId.INTERIOR, CodeId.MBR])
def test_decode_detects_some_corruptions(code):
    # 3 interior shares carry 9 bits for 8 unknowns, so one parity check exists
    m = next(iter(codes.sample_messages(code, 3)))
    shares = codes.encode(code, m)[1:]
    caught = 0
    for node in range(3):
        for k in range(len(shares[node].bits)):
            bad = list(shares)
            flipped = tuple(b ^ (i == k) for i, b in enumerate(bad[node].bits))
            bad[node] = NodeShare(bad[node].node_id, flipped)
            try:
                assert codes.decode(code, bad) != m
            except codes.DecodeError:
                caught += 1
    assert caught > 0


def test_repair_packet_from_failed_node_rejected():
    shares = codes.encode("interior", msg(x1=1))
    with pytest.raises(ValueError):
        codes.repair_encode("interior", shares[0], 1)


def test_repair_decode_wrong_helpers_rejected():
    shares = codes.encode("interior", msg(x1=1))
    packets = [codes.repair_encode("interior", shares[h - 1], 1) for h in (2, 3, 4)]
    with pytest.raises(ValueError):
        codes.repair_decode("interior", 1, packets[:2])
    assert isinstance(packets[0], RepairPacket) and len(packets[0].bits) == 2


def test_repair_packets_determine_message():
    # the six packet bits plus the stored bits of nodes 2-4 recover the message
    for m in codes.all_messages("interior"):
        shares = codes.encode("interior", m)
        assert codes.decode("interior", shares[1:]) == m


def test_interior_storage_cyclic():
    assert codes.storage_is_cyclic()


@given(st.lists(st.integers(0, 1), min_size=8, max_size=8), st.lists(st.integers(0, 1), min_size=8, max_size=8))
def test_interior_linearity(m1, m2):
    s1, s2 = codes.encode("interior", m1), codes.encode("interior", m2)
    s12 = codes.encode("interior", [a ^ b for a, b in zip(m1, m2)])
    for a, b, c in zip(s1, s2, s12):
        assert tuple(x ^ y for x, y in zip(a.bits, b.bits)) == c.bits


@given(st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_msr_linearity(m):
    s = codes.encode("msr", m)
    z = codes.encode("msr", [0, 0, 0])
    assert all(a.bits == tuple(x ^ y for x, y in zip(a.bits, b.bits)) for a, b in zip(s, z))


@given(st.binary(max_size=64), st.sampled_from(list(CodeId)))
def test_stripe_roundtrip(payload, code):
    length, blocks = codes.stripe(code, payload)
    assert length == len(payload)
    assert len(blocks) >= 1
    assert codes.unstripe(length, blocks) == payload


def test_vector_dump_matches_golden(golden):
    for code in CodeId:
        path = golden / f"vectors_{code.value}.txt"
        text = path.read_text()
        assert codes.check_vector_dump(code, text) == []
    assert codes.vector_dump("interior") == (golden / "vectors_interior.txt").read_text()


def test_vector_dump_flags_bad_line():
    text = codes.vector_dump("msr").replace("7 1 1 1 1", "7 1 1 1 0")
    assert codes.check_vector_dump("msr", text) == [9]


@given(st.integers(0, 255))
def test_hex_bits_inverse(v):
    b = codes.hex_bits(format(v, "x"), 8)
    assert codes.bits_hex(b) == format(v, "02x")


def test_every_decode_subset_is_full_rank():
    for code in CodeId:
        for sub in itertools.combinations(range(1, 5), 3):
            codes._decoder(code, sub)
