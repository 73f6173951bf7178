from cobinv.algebra_core import GradedPoly
from cobinv.config import Config
from cobinv.fgl import context


def test_low_order_coefficients():
    ctx = context(Config())
    b1 = ctx.b(1)
    # F = x + y + a11 xy + ..., a11 = 2 b1 = -[[P1]]
    assert ctx.fgl_coeff(1, 0) == ctx.b(0)
    assert ctx.fgl_coeff(1, 1) == b1 * 2
    assert ctx.fgl_coeff(2, 1) == ctx.fgl_coeff(1, 2)


def test_two_series_start():
    ctx = context(Config())
    u = ctx.n_series(2).coeffs
    assert u[1] == GradedPoly.const(ctx.alphabet, 2)
    assert u[2] == ctx.b(1) * 2


def test_formal_inverse():
    ctx = context(Config())
    inv = ctx.formal_inverse()
    assert inv[1] == GradedPoly.const(ctx.alphabet, -1)
    assert inv[2] == ctx.fgl_coeff(1, 1)


def test_inverse_coeffs_leading():
    ctx = context(Config())
    v = ctx.inverse_coeffs()
    assert v[0].valuation() == -1
    assert v[1].valuation() == -2


def test_n_series_additivity():
    from cobinv.algebra_core import Alphabet, Symbol, Truncation
    ctx = context(Config())
    F = ctx.fgl_sum()
    X = Alphabet((Symbol("x", 1),) + ctx.alphabet.entries)
    tr = Truncation(X, {"x": 1}, ctx.T - 1)
    x = GradedPoly.var(X, "x")

    def as_poly(n):
        out = GradedPoly(X)
        for i, c in enumerate(ctx.n_series(n).coeffs):
            if c:
                out = out + c.embed(X) * x ** i
        return GradedPoly(X, tr.reduce(out.terms))

    for m in range(-2, 4):
        for n in range(-2, 4):
            lhs = F.substitute({"x": as_poly(m), "y": as_poly(n)}, X, tr)
            assert lhs == as_poly(m + n), (m, n)


def test_u_homogeneous():
    ctx = context(Config())
    for i, u in enumerate(ctx.n_series(2).coeffs):
        if u:
            assert u.is_homogeneous(1 - i)


def test_h_first_terms():
    ctx = context(Config())
    h = ctx.h_series()
    assert h[0] == GradedPoly.const(ctx.alphabet, 2)
    assert h[1] == ctx.b(1) * 2
