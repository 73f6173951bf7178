from fractions import Fraction

import pytest

from cobinv.algebra_core import GradedPoly
from cobinv.equivariant import catalog, x_alphabet, xn
from cobinv.verdicts import (
    BoundReport, bound_suite, curve_sweep, curve_table, deg_fdeg_bound, fdeg_of_class, isolated_points_check,
    isolated_points_count, judge, solve_s, theta_expected,
)
from cobinv.equivariant import theta


def prod(*terms):
    return catalog("product", *[[["Xn", j], k] for j, k in terms if k])


def status(reports, theorem, **inputs):
    out = [r.status for r in reports if r.theorem == theorem
           and all(r.inputs.get(k) == v for k, v in inputs.items())]
    assert out, theorem
    return out


def test_judge():
    assert judge(False, 100, 1) == "satisfied"
    assert judge(True, 3, Fraction(7, 2)) == "satisfied"
    assert judge(True, 4, 4) == "sharp"
    assert judge(True, 5, 4) == "violated"


def test_report_json():
    r = BoundReport("x", {}, Fraction(5, 2), 2, True)
    assert r.to_json_obj()["bound"] == "5/2"


def test_curve_table_rows():
    assert curve_table(0, 0, 0, 3)
    assert curve_table(1, 0, 5, 2) and not curve_table(1, 0, 0, 1)
    assert curve_table(2, 2, 1, 0) and not curve_table(2, 1, 0, 0)
    assert curve_table(3, 2, 1, 4)
    assert not curve_table(3, 1, 0, 3)


def test_curve_sweep_small(cfg):
    bad, count = curve_sweep(3, 3, cfg)
    assert bad == []
    assert count > 0


def test_deg_fdeg():
    X = x_alphabet(9)
    x3, x5 = GradedPoly.var(X, "x3"), GradedPoly.var(X, "x5")
    r = deg_fdeg_bound(x3 ** 3, 1, "x2")
    assert (r.bound, r.observed, r.status) == (9, 9, "sharp")
    r = deg_fdeg_bound(x5 ** 2, 2, "p")
    assert r.bound == 10 and r.status == "sharp"
    # X3 X1^2 with s = 1: two small odd factors plus 3 * fdeg
    r = deg_fdeg_bound([(3, 1, 1)], 1)
    assert (r.bound, r.status) == (5, "sharp")
    r = deg_fdeg_bound([(4,)], 1)
    assert (r.bound, r.status) == (6, "satisfied")


def test_fdeg_of_class(cfg10):
    assert fdeg_of_class(xn(5).ambient_class(cfg10), cfg10) == 2
    assert fdeg_of_class(xn(3).ambient_class(cfg10), cfg10) == 1


def test_isolated_points():
    r = isolated_points_check(prod((1, 4)))
    assert (r.points, r.c, r.a, r.ok) == (16, 4, 1, True)
    assert not isolated_points_count(6, 2).ok
    with pytest.raises(ValueError):
        isolated_points_check(xn(3))


def test_theta_table_pab_hij():
    for a in range(1, 5):
        for b in range(0, a):
            if a + b <= 5:
                assert theta(catalog("Pab", a, b)) == theta_expected("Pab", a, b)
    for i in range(1, 4):
        for j in range(i, 6 - i):
            assert theta(catalog("Hij", i, j)) == theta_expected("Hij", i, j)


def test_theta_xn():
    for n in range(2, 8, 2):
        assert theta(xn(n)) == theta_expected("Xn", n)
    for n in (3, 5, 7):
        assert solve_s(n, theta(xn(n))) is not None


def test_sharp_euler_fix(cfg10):
    for q, d in ((1, 1), (2, 2), (1, 3)):
        R = bound_suite(prod((1, q), (2 * d, 1)), cfg10)
        assert status(R, "euler_fixed") == ["sharp"]


def test_sharp_psi_fix_x9(cfg10):
    R = bound_suite(xn(9), cfg10)
    assert status(R, "psi_fixed") == ["sharp"]
    assert all(r.status != "violated" for r in R)


def test_top_indec(cfg10):
    for n in (3, 5, 7):
        R = bound_suite(xn(n), cfg10)
        assert status(R, "top_indecomposable") == ["satisfied"]


def test_curve_examples_through_lattice(cfg):
    from cobinv.equivariant import is_normal_bundle_class
    from cobinv.verdicts import curve_class
    for n, a, b, c, want in ((2, 1, 1, 1, True), (1, 0, 0, 1, False), (3, 2, 1, 4, True)):
        assert curve_table(n, a, b, c) == want
        assert is_normal_bundle_class(curve_class(n, a, b, c, cfg), cfg).realizable == want


def test_isolated_part_of_x1_x5(cfg10):
    from cobinv.verdicts import fixed_parts
    for q in (1, 2, 3):
        f = prod((1, q), (5, 1))
        assert fixed_parts(f, cfg10)[0].constant() == 2 ** q
        assert all(c.normal.rank == f.n for c in f.components if c.dim == 0)


def test_swap_bounds_never_violated(cfg):
    R = bound_suite(catalog("swap"), cfg)
    assert R and all(r.status != "violated" for r in R)


def test_fdeg_examples(cfg):
    from cobinv.chow import make_projective_space
    from cobinv.lazard import class_of
    assert fdeg_of_class(class_of(make_projective_space(1), cfg), cfg) == 0
    for d in (1, 2, 3):
        assert fdeg_of_class(prod((2, d)).ambient_class(cfg), cfg) == d
