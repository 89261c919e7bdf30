import math
from fractions import Fraction

import pytest

import ramsmooth as rs


def test_csum_paths_agree():
    for q in range(1, 40):
        for a in range(-20, 21):
            v = rs.csum(q, a)
            assert v == rs.csum_definition(q, a) == rs.csum_holder(q, a) == rs.csum_kluyver(q, a)
    assert rs.csum(6, 4) == -1
    assert rs.csum_holder(9, 3) == -3
    with pytest.raises(ValueError):
        rs.csum(0, 1)


def test_arithmetic():
    assert rs.mobius(12) == 0
    assert rs.totient(12) == 4
    assert rs.kernel(8) == 2
    assert rs.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert rs.enumerate_smooth(3, 12) == [1, 2, 3, 4, 6, 8, 9, 12]
    assert rs.rvl_moduli(1, 3) == [1, 2, 3, 6]
    assert rs.csum_nonvanishing(4, 2) and not rs.csum_nonvanishing(8, 2)


def test_functions():
    assert "sigma_over_id" in rs.builtin_names()
    omega = rs.builtin("omega")
    assert omega(60) == 3 and omega.is_ipp
    assert omega.transform(7) == 1
    F = rs.from_table({1: 1, 4: -2})
    assert F(4) == -1 and F(8) == -1
    assert F(4) == Fraction(-1)
    G = rs.from_table({1: Fraction(1, 2), 3: "2/3"}, bound=5, as_transform=False)
    assert G(3) == Fraction(2, 3)
    with pytest.raises(ValueError):
        rs.builtin("nope")
    with pytest.raises(IndexError):
        G(6)


def test_coefficients():
    w = rs.p_wintner(rs.builtin("omega"), 5, 1, 1000)
    assert w["value"] == Fraction(31, 30) and w["exact"] and w["complete"]
    s = rs.wintner(rs.builtin("sigma_over_id"), 1, 100000)
    assert not s["complete"]
    assert math.isclose(float(s["value"]), math.pi ** 2 / 6, rel_tol=1e-4)
    assert s["trace_cutoffs"][-1] == 100000
    assert rs.carmichael(rs.builtin("one"), 2, 10)["value"] == 0


def test_expansions_and_decomposition():
    assert rs.local_expansion_flat(rs.builtin("id"), 3, 8) == 2
    assert rs.local_expansion_smooth(rs.builtin("omega"), 3, 60, 1000) == 2
    signed, absolute = rs.null_expansion(1, 3)
    assert signed == 0 and absolute > 0
    row = rs.wod(rs.builtin("one"), 3, 6, 100)
    assert row["residual"] == 0 and row["smooth"] == 1
    with pytest.raises(rs.ScopeError):
        rs.wod(rs.builtin("one"), 3, 5, 100)
    assert issubclass(rs.ScopeError, ValueError)
    assert rs.irregular_series(rs.builtin("one"), 2, 1, 100)["value"] == 0
