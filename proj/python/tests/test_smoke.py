import pytest

import resconj


def test_example4():
    d = resconj.compute_D(4)
    assert str(d[0]) == "-a0*a3^2 - a1^2*a4 + a1*a2*a3"
    assert d[2] == resconj.Poly(4, "a1 + a2 + a3")
    assert d[0].homogeneous_degree() == 3


def test_poly_arithmetic():
    a = resconj.Poly(4, "a1 + a2")
    b = resconj.Poly(4, "a1 - a2")
    assert a * b == resconj.Poly(4, "a1^2 - a2^2")
    assert resconj.exact_div(a * b, b) == a
    assert (a ** 2).degree() == 2
    assert resconj.Poly(4, "a0").substitute({"a0": resconj.Poly(4, "a4")}) == resconj.Poly(4, "a4")


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        resconj.Poly(4, "a1 + * a2")
    with pytest.raises(ArithmeticError):
        resconj.exact_div(resconj.Poly(4, "a1^2 + a2"), resconj.Poly(4, "a1"))
    with pytest.raises(ValueError):
        resconj.kappa(12, 1, use_cache=False)


def test_membership_engines_agree():
    d = resconj.compute_D(4)
    h12 = resconj.compute_H(4)[(1, 2)]
    g = resconj.is_member(h12, d[:2], kappa=2)
    assert g["verdict"] == "member" and g["verified"]
    lhs = sum((c * gen for c, gen in zip(g["cofactors"], d[:2])), resconj.Poly(4, "0"))
    assert lhs == h12 ** 2
    m = resconj.homogeneous_member(h12, d[:2], kappa=2)
    assert m["verdict"] == "member" and (m["rows"], m["columns"]) == (210, 105)
    assert resconj.is_member(h12, d[:2])["verdict"] == "not-member"
    assert resconj.is_radical_member(h12, d[:2]) is True


def test_kappa_reports(tmp_path):
    reports = resconj.kappa(4, 1, certificate=str(tmp_path), use_cache=False)
    assert [r["kappa"] for r in reports] == [1, 2, 2, 1]
    assert all(r["schema"] == 1 for r in reports)
    for r in reports:
        assert all(ok for _, ok, _ in resconj.verify_certificate(r["certificate"]))


def test_table():
    t = resconj.table(4, use_cache=False)
    assert [(c["m"], c["i"], c["kappa"]) for c in t["table"]] == [(4, 1, 2), (4, 2, 1)]


def test_result12_remarks():
    checks = {name: ok for name, ok, _ in resconj.verify_result12()}
    assert checks["(b) C2 does not contain a3"]
    assert checks["(c) C1 with a3 -> 0 has 4 terms"]


def test_dump():
    assert resconj.dump(2)["M"] == [["a1"]]
