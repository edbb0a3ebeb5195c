import pytest
from hypothesis import given, settings, strategies as st

from regen433.entropy import ground as g

# frozen by an exhaustive canonicalization run; see the decisions ledger
CLOSURE_COORDINATES = 177
SYMMETRY_COORDINATES = 3043

masks = st.integers(1, g.FULL)
perms = st.sampled_from(g.symmetry_group())


def test_ground_set():
    assert g.N_GROUND == 16
    assert [v.name for v in g.GROUND[:5]] == ["W1", "W2", "W3", "W4", "S12"]
    assert g.GROUND[-1].name == "S43"


def test_symmetry_group():
    grp = g.symmetry_group()
    assert len(grp) == 24
    assert g.NodePermutation((1, 2, 3, 4)) in grp
    s = set(grp)
    assert all(p.compose(q) in s for p in grp for q in grp)


def test_bad_permutation():
    with pytest.raises(ValueError):
        g.NodePermutation((1, 1, 3, 4))


def test_permutation_action_on_variables():
    pi = g.NodePermutation((2, 3, 4, 1))
    assert pi.apply(g.mask_of("W1,S12")) == g.mask_of("W2,S23")


def test_closure_examples():
    assert g.dependency_closure(g.mask_of("W1")) == g.mask_of("W1,S12,S13,S14")
    c = g.dependency_closure(g.mask_of("S21,S31,S41"))
    assert c == g.mask_of("W1,S12,S13,S14,S21,S31,S41")
    assert g.dependency_closure(g.mask_of("W1,W2,W3")) == g.FULL
    assert g.canonicalize("W1,W2,W4").is_full_rank_B


def test_canonicalize_examples():
    assert g.canonicalize("W2") == g.canonicalize("W3")
    assert g.canonicalize("S12") == g.canonicalize("S34")
    assert g.canonicalize("W1,W2,W4").representative == g.FULL
    with pytest.raises(ValueError):
        g.canonicalize(0)
    with pytest.raises(ValueError):
        g.mask_of("W5")


@settings(max_examples=1000)
@given(masks, perms)
def test_quotient_soundness(s, pi):
    q = g.quotient(True)
    assert q.canonicalize(s) == q.canonicalize(pi.apply(s))
    assert q.class_id(s) == q.class_id(g.dependency_closure(s))


@given(masks)
def test_closure_is_idempotent_and_extensive(s):
    c = g.dependency_closure(s)
    assert c & s == s
    assert g.dependency_closure(c) == c


@given(masks, perms)
def test_closure_commutes_with_symmetry(s, pi):
    assert pi.apply(g.dependency_closure(s)) == g.dependency_closure(pi.apply(s))


@given(masks)
def test_representative_is_orbit_minimum(s):
    q = g.quotient(False)
    rep = q.canonicalize(s).representative
    assert rep == min((pi.apply(s) for pi in g.symmetry_group()), key=g.sort_key)


def test_sort_key_orders_member_lists():
    a, b = g.mask_of("W1,S12"), g.mask_of("W2")
    assert g.sort_key(a) < g.sort_key(b)  # [W1, S12] < [W2]
    assert g.sort_key(g.mask_of("W1")) < g.sort_key(a)  # prefix first


def test_coordinate_counts():
    rep = g.enumerate_coordinates()
    assert rep.raw_subsets == 65535
    assert len(rep.coordinates) == CLOSURE_COORDINATES
    plain = g.enumerate_coordinates(closure=False)
    assert 65535 / 24 <= len(plain.coordinates) <= 65535
    assert len(plain.coordinates) == SYMMETRY_COORDINATES
    assert sum(c.orbit_size for c in plain.coordinates) == 65535


def test_coordinate_enumeration_deterministic():
    assert g.Quotient(True).classes == g.quotient(True).classes
    assert g.enumerate_coordinates().csv() == g.enumerate_coordinates().csv()


def test_full_rank_flag():
    for c in g.enumerate_coordinates().coordinates:
        assert c.is_full_rank_B == (c.representative == g.FULL)
