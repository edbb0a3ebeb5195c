from hypothesis import given, strategies as st

from regen433 import gf2

rows8 = st.lists(st.integers(0, 255), min_size=1, max_size=12)


@given(st.integers(0, 2**16 - 1))
def test_bits_roundtrip(v):
    assert gf2.bits_to_int(gf2.int_to_bits(v, 16)) == v


@given(rows8, st.integers(0, 255), st.integers(0, 255))
def test_matvec_is_linear(rows, u, v):
    assert gf2.matvec(rows, u ^ v) == gf2.matvec(rows, u) ^ gf2.matvec(rows, v)


@given(rows8)
def test_rank_bounds(rows):
    assert 0 <= gf2.rank(rows) <= min(len(rows), 8)


@given(rows8, st.integers(0, 255))
def test_solver_inverts_full_rank_systems(rows, m):
    if gf2.rank(rows) < 8:
        return
    s = gf2.Solver(rows, 8)
    y = gf2.matvec(rows, m)
    assert s.solve(y) == m
    # flipping one observation is caught whenever there are surplus rows
    if len(rows) > 8:
        bad = [s.solve(y ^ (1 << i)) for i in range(len(rows))]
        assert any(b is None for b in bad)


def test_solver_rejects_rank_deficient():
    import pytest

    with pytest.raises(ValueError):
        gf2.Solver([0b01, 0b01], 2)
