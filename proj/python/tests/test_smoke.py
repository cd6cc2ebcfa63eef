import pytest

import padyn


def test_run_returns_exit_code_and_streams():
    code, out, err = padyn.run(["periodic", "--poly", "x^2-1", "--f", "2"])
    assert code == 0
    assert "periodic points: 4" in out
    assert err == ""


def test_periodic_x2_minus_1_over_unramified_quadratic():
    r = padyn.periodic("x^2-1", p=2, f=2)
    assert r["passed"]
    assert r["count"] == 4
    assert r["periods"] == [1, 1, 2, 2]
    assert all(a["passed"] for a in r["assertions"])


def test_dynatomic_symbolic():
    r = padyn.dynatomic("x^2+c", n=2, symbolic_c=True, verify_mobius=4)
    assert r["phi_n"] == "X^2 + X + (c + 1)"
    assert [m["holds"] for m in r["mobius"]] == [True] * 4
    assert padyn.dynatomic_degree(2, 6) == 54
    assert [padyn.mobius(n) for n in range(1, 7)] == [1, -1, -1, 0, -1, 1]


def test_classify_counts():
    assert padyn.classify(5, "-1")["count"] == 4
    assert padyn.classify(-1, "2*i")["count"] == 0
    r = padyn.classify(-1, "0", portrait=True)
    assert r["passed"]


def test_classify_rejects_non_integral_c():
    with pytest.raises(padyn.PadynError) as info:
        padyn.classify(33, "-71/48")
    assert info.value.kind == "NotIntegralAt2"
    assert info.value.code == 2


def test_oracle_levels_are_stable():
    r = padyn.oracle("x^2-1", f=2, levels=3)
    assert r["passed"]


def test_verify_bounds_nonexample():
    r = padyn.verify_bounds(suite="nonexample")
    assert r["passed"]


def test_usage_error():
    with pytest.raises(padyn.PadynError):
        padyn.command("no-such-command")
