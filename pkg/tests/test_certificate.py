from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from regen433.entropy import certificate as C
from regen433.entropy.inequalities import LinearInequality


@pytest.fixture(scope="module")
def cert463(lp):
    return C.sparsify_certificate(C.extract_certificate(4, 6, 3, lp=lp))


def test_extract_verifies(lp):
    raw = C.extract_certificate(4, 6, 3, lp=lp)
    assert C.verify_certificate(raw)
    assert all(ln.weight > 0 for ln in raw.lines)
    assert all(ln.name.startswith(("elem:", "prob:")) for ln in raw.lines)


def test_sparsify_contract(lp, cert463):
    raw = C.extract_certificate(4, 6, 3, lp=lp)
    assert C.verify_certificate(cert463)
    assert cert463.support <= raw.support
    assert C.sparsify_certificate(cert463).support == cert463.support


def test_dual_bound_equals_primal(lp, cert463):
    assert cert463.c == lp.min_objective(4, 6)


def test_other_targets(lp):
    assert C.verify_certificate(C.extract_certificate(2, 1, 1, lp=lp))
    weaker = C.extract_certificate(4, 6, 2, lp=lp)
    assert C.verify_certificate(weaker)
    assert weaker.lines[-1].name == "prob:B-pos"


def test_refusal_reports_optimum(lp):
    with pytest.raises(C.CertificateRefused) as ei:
        C.extract_certificate(4, 6, 4, lp=lp)
    assert ei.value.optimum == 3 and ei.value.requested == 4


def test_every_single_weight_perturbation_rejected(cert463):
    for k in range(cert463.support):
        for delta in (F(1, 1000), F(-1, 1000)):
            lines = list(cert463.lines)
            lines[k] = C.CertificateLine(lines[k].weight + delta, lines[k].inequality)
            bad = C.ProofCertificate(cert463.a, cert463.b, cert463.c, lines)
            assert not C.verify_certificate(bad)


def test_empty_certificate_rejected():
    v = C.verify_certificate(C.ProofCertificate(F(4), F(6), F(3)))
    assert not v and "residual" in v.diagnostic


def test_negative_weight_rejected(cert463):
    lines = list(cert463.lines)
    lines[0] = C.CertificateLine(-lines[0].weight, lines[0].inequality)
    v = C.verify_certificate(C.ProofCertificate(cert463.a, cert463.b, cert463.c, lines))
    assert not v and "negative" in v.diagnostic


def test_unknown_name_rejected(cert463):
    ln = cert463.lines[0]
    fake = LinearInequality("elem:made-up", ln.inequality.terms)
    lines = [C.CertificateLine(ln.weight, fake)] + list(cert463.lines[1:])
    assert not C.verify_certificate(C.ProofCertificate(cert463.a, cert463.b, cert463.c, lines))


def test_stated_terms_must_match_name(cert463):
    # swap the stated inequalities of two lines, keeping names and weights
    l0, l1 = cert463.lines[0], cert463.lines[1]
    swapped = [
        C.CertificateLine(l0.weight, LinearInequality(l0.name, l1.inequality.terms)),
        C.CertificateLine(l1.weight, LinearInequality(l1.name, l0.inequality.terms)),
    ] + list(cert463.lines[2:])
    v = C.verify_certificate(C.ProofCertificate(cert463.a, cert463.b, cert463.c, swapped))
    assert not v and "re-derived" in v.diagnostic


def test_text_roundtrip(cert463, tmp_path):
    path = tmp_path / "c.txt"
    cert463.write(path)
    back = C.load_certificate(path)
    assert back.to_text() == cert463.to_text()
    assert C.verify_certificate(back)


def test_matches_golden(cert463, golden):
    assert cert463.to_text() == (golden / "certificate_4_6_3.txt").read_text()


def test_header_format(cert463):
    assert cert463.to_text().splitlines()[0] == "target: 4/1 alpha + 6/1 beta - 3/1 B >= 0"


@pytest.mark.parametrize(
    "text,msg",
    [
        ("", "empty"),
        ("target: 4 alpha + 6 beta - 3 B >= 0\n", "bad header"),
        ("target: 4/1 alpha + 6/1 beta - 3/1 B >= 0\n1/2\tprob:B-pos\n", "expected"),
        ("target: 4/1 alpha + 6/1 beta - 3/1 B >= 0\nx\tprob:B-pos\tB >= 0\n", "bad weight"),
        ("target: 4/1 alpha + 6/1 beta - 3/1 B >= 0\n1/1\tprob:B-pos\tB >= 0", "truncated"),
        ("target: 4/1 alpha + 6/1 beta - 3/1 B >= 0\n1/1\tprob:B-pos\tB >=", "does not end"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(C.CertificateFormatError, match=msg):
        C.parse_certificate(text)


def test_truncated_golden_rejected(golden):
    text = (golden / "certificate_4_6_3.txt").read_text()
    for cut in (len(text) // 3, len(text) - 1):
        with pytest.raises(C.CertificateFormatError):
            C.parse_certificate(text[:cut])


def test_dependency_names_derive_without_closure():
    t = C.derive("dep:S12|W1:ge", closure=False)
    assert t == {"h(W1,S12)": 1, "h(W1)": -1}
    with pytest.raises(ValueError):
        C.derive("dep:nonsense:ge", closure=False)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 16), st.fractions(min_value=F(-1, 2), max_value=F(1, 2), max_denominator=97))
def test_scaled_weights_rejected(cert463, k, delta):
    k = k % cert463.support
    if delta == 0:
        return
    lines = list(cert463.lines)
    lines[k] = C.CertificateLine(lines[k].weight * (1 + delta), lines[k].inequality)
    assert not C.verify_certificate(C.ProofCertificate(cert463.a, cert463.b, cert463.c, lines))
