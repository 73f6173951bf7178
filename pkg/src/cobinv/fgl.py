"""The universal formal group law over Z[b1, b2, ...].

The exponential is b(x) = sum_i b_i x^(i+1) with b_0 = 1: it is the first
Chern class of a line bundle in Chow theory twisted by P(L) = sum c1(L)^i b_i,
since c1(L) * P(L) = b(c1(L)).  The law is F(x, y) = b(l(x) + l(y)) where l is
the compositional inverse of b.
"""
from __future__ import annotations

from functools import lru_cache

from .algebra_core import (
    Alphabet, GradedPoly, LaurentSeries, Symbol, Truncation, TruncSeries,
    series_comp_inverse, series_compose,
)
from .config import Config


@lru_cache(maxsize=None)
def b_alphabet(K: int) -> Alphabet:
    return Alphabet(Symbol("b%d" % i, -i) for i in range(1, K + 1))


class NSeries:
    def __init__(self, n: int, coeffs: list):
        # coeffs[i] = u_i for i >= 0 (u_0 = 0)
        self.n = n
        self.coeffs = coeffs

    def u(self, i: int):
        if i < 0 or i >= len(self.coeffs):
            if i <= 0:
                return GradedPoly(self.coeffs[0].alphabet)
            raise IndexError("u_%d beyond truncation" % i)
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)


class FglContext:
    """exp/log series and derived series, computed once per configuration."""

    def __init__(self, config: Config | None = None):
        self.config = config or Config()
        T = self.config.T
        self.T = T
        self.alphabet = b_alphabet(T)
        A = self.alphabet
        self.exp_series = TruncSeries("x", T, [0, 1] + [GradedPoly.var(A, "b%d" % i) for i in range(1, T - 1)], A)
        self.log_series = series_comp_inverse(self.exp_series)
        self._nseries = {}
        self._sum = None
        self._inv = None
        self._ycoef = {}

    def b(self, i: int) -> GradedPoly:
        if i == 0:
            return GradedPoly.const(self.alphabet, 1)
        return GradedPoly.var(self.alphabet, "b%d" % i)

    # F(x, y) as a polynomial in x, y, b truncated at total (x, y)-degree < T
    @property
    def xy_alphabet(self) -> Alphabet:
        return Alphabet((Symbol("x", 1), Symbol("y", 1)) + self.alphabet.entries)

    def fgl_sum(self) -> GradedPoly:
        if self._sum is None:
            XY = self.xy_alphabet
            trunc = Truncation(XY, {"x": 1, "y": 1}, self.T - 1)
            x, y = GradedPoly.var(XY, "x"), GradedPoly.var(XY, "y")
            emb = lambda c: c.embed(XY)
            s = GradedPoly(XY)
            for j, c in enumerate(self.log_series.coeffs):
                if c:
                    s = s + emb(c) * ((x ** j) + (y ** j))
            s = GradedPoly(XY, trunc.reduce(s.terms))
            # Horner on the exponential
            acc = GradedPoly(XY)
            for c in reversed(self.exp_series.coeffs):
                acc = acc.mul_trunc(s, trunc) + emb(c)
            self._sum = acc
        return self._sum

    def fgl_coeff(self, i: int, j: int) -> GradedPoly:
        """Coefficient of x^i y^j in F."""
        F = self.fgl_sum()
        XY = F.alphabet
        out = {}
        dec = XY.decode
        for k, c in F.terms.items():
            e = dec(k)
            if e[0] == i and e[1] == j:
                out[self.alphabet.key(e[2:])] = c
        return GradedPoly(self.alphabet, out)

    def fgl_coeff_series(self, j: int) -> dict:
        """{i: coefficient of x^i y^j in F}."""
        if j not in self._ycoef:
            F = self.fgl_sum()
            dec = F.alphabet.decode
            out = {}
            for k, c in F.terms.items():
                e = dec(k)
                if e[1] == j:
                    d = out.setdefault(e[0], {})
                    d[self.alphabet.key(e[2:])] = c
            self._ycoef[j] = {i: GradedPoly(self.alphabet, t) for i, t in out.items()}
        return self._ycoef[j]

    def n_series(self, n: int) -> NSeries:
        if n not in self._nseries:
            s = series_compose(self.exp_series, self.log_series.scale(n))
            self._nseries[n] = NSeries(n, list(s.coeffs))
        return self._nseries[n]

    def n_series_trunc(self, n: int) -> TruncSeries:
        return TruncSeries("x", self.T, self.n_series(n).coeffs, self.alphabet)

    def h_series(self) -> TruncSeries:
        u = self.n_series(2).coeffs
        return TruncSeries("t", self.T - 1, u[1:], self.alphabet)

    def inverse_coeffs(self, count: int | None = None) -> list:
        """v_i(x) with 1 = F(x, y) * sum_i v_i(x) y^i, as Laurent series in x."""
        if count is None:
            count = self.T - 1
        if self._inv is not None and len(self._inv) >= count:
            return self._inv[:count]
        A = self.alphabet
        T = self.T
        # F = x + sum_{i>=1} y^i w_{i-1}(x)
        w = []
        for i in range(1, T):
            w.append(LaurentSeries("x", {a: self.fgl_coeff(a, i) for a in range(T - i)}, T - i, A))
        xinv = LaurentSeries.monomial("x", -1, 1 << 40, A)
        v = [xinv]
        for n in range(1, count):
            s = None
            for i in range(1, n + 1):
                term = w[i - 1].mul(v[n - i])
                s = term if s is None else s + term
            v.append(-(s.mul(xinv)))
        self._inv = v
        return v

    def formal_inverse(self) -> TruncSeries:
        """i(x) with F(x, i(x)) = 0, i.e. [-1](x)."""
        return self.n_series_trunc(-1)


def fgl_sum(ctx: FglContext) -> GradedPoly:
    return ctx.fgl_sum()


def n_series(n: int, ctx: FglContext) -> NSeries:
    return ctx.n_series(n)


def inverse_coeffs(ctx: FglContext, count: int | None = None) -> list:
    return ctx.inverse_coeffs(count)


def h_series(ctx: FglContext) -> TruncSeries:
    return ctx.h_series()


_CTX = {}


def context(config: Config | None = None) -> FglContext:
    config = config or Config()
    key = (config.D, config.T)
    if key not in _CTX:
        _CTX[key] = FglContext(config)
    return _CTX[key]
