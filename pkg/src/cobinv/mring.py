"""Classes of vector bundles: the ring M = L[v][a1, a2, ...] and its operators.

v has degree -1 and a_i, b_i degree -i, so the class of a rank-r bundle over a
d-dimensional base sits in degree -(d + r).  Classes are computed in twisted
Chow theory: [[u]] = deg(P(-T_S) u) and the Conner-Floyd classes of E are the
a-coefficients of prod over lines of (sum_i a_i b(c1)^i).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import flint

from .algebra_core import AlgebraError, Alphabet, GradedPoly, LaurentSeries, Symbol, partitions
from .chow import (
    KClass, VarietyDescriptor, cf_class, cf_class_a, make_projective_space, projective_bundle,
)
from .config import Config, WindowOverflow
from .fgl import context
from .lazard import laz_alphabet, y_monomial


class TruncationExhausted(WindowOverflow):
    pass


@lru_cache(maxsize=None)
def m_alphabet(K: int) -> Alphabet:
    return Alphabet([Symbol("b%d" % i, -i) for i in range(1, K + 1)]
                    + [Symbol("a%d" % i, -i) for i in range(1, K + 1)]
                    + [Symbol("v", -1, True)])


def m_alph(config: Config | None = None) -> Alphabet:
    return m_alphabet((config or Config()).T)


def v_power(r: int, config: Config | None = None) -> GradedPoly:
    A = m_alph(config)
    return GradedPoly.monomial(A, {"v": r})


def bundle_class(S: VarietyDescriptor, E: KClass, config: Config | None = None) -> GradedPoly:
    """v^r sum_alpha [[c_alpha(E)]] a_alpha."""
    config = config or Config()
    K = config.T
    r = E.rank
    if r < 0:
        raise AlgebraError("negative rank %d" % r)
    if S.dim > K:
        raise WindowOverflow("base dimension %d exceeds the series window" % S.dim)
    P = S.chow
    A = P.ext_alphabet(K, with_a=True)
    integrand = cf_class(-S.tangent, K).embed(A).mul_trunc(cf_class_a(E, K), P.ext_trunc(A))
    deg = P.integrate(integrand)
    M = m_alphabet(K)
    if isinstance(deg, int):
        return GradedPoly.monomial(M, {"v": r}, deg)
    return deg.embed(M) * GradedPoly.monomial(M, {"v": r})


def p_class(i: int, config: Config | None = None) -> GradedPoly:
    return _p_class(i, config or Config())


@lru_cache(maxsize=None)
def _p_class(i: int, config: Config) -> GradedPoly:
    if i > config.T:
        raise TruncationExhausted("p_%d needs more than the series window" % i)
    S = make_projective_space(i)
    h = S.chow.gen("h") if i else S.chow.zero()
    return bundle_class(S, KClass.line(S.chow, h), config)


def laz_to_m(x: GradedPoly, config: Config | None = None) -> GradedPoly:
    return x.embed(m_alph(config))


def va(j: int, config: Config | None = None) -> GradedPoly:
    A = m_alph(config)
    if j == 0:
        return GradedPoly.var(A, "v")
    return GradedPoly.monomial(A, {"v": 1, "a%d" % j: 1})


# ---- gradings


def gradings(x: GradedPoly) -> tuple:
    """(dim, fdim): minus the lowest degree, with v of degree -1 and 0 respectively."""
    if not x:
        return (float("-inf"), float("-inf"))
    A = x.alphabet
    vi = A.index("v") if "v" in A else None
    dim = fdim = None
    for exps, _ in x.exps_items():
        d = -sum(e * s.degree for e, s in zip(exps, A.entries))
        f = d - (exps[vi] if vi is not None else 0)
        dim = d if dim is None else max(dim, d)
        fdim = f if fdim is None else max(fdim, f)
    return (dim, fdim)


def split_monomial(x: GradedPoly):
    """Yield (v exponent, a-partition, b-exponent dict, coefficient) per term."""
    A = x.alphabet
    for exps, c in x.exps_items():
        r = 0
        alpha = []
        bpart = {}
        for e, s in zip(exps, A.entries):
            if not e:
                continue
            if s.name == "v":
                r = e
            elif s.name[0] == "a":
                alpha += [int(s.name[1:])] * e
            else:
                bpart[s.name] = e
        yield r, tuple(sorted(alpha, reverse=True)), bpart, c


def check_m_shape(x: GradedPoly):
    """Each v^r a_alpha term needs length(alpha) <= r."""
    for r, alpha, _, _ in split_monomial(x):
        if len(alpha) > r:
            raise AlgebraError("term v^%d a_%s has too many a-factors for M" % (r, alpha))


# ---- delta on P


def is_p_elem(x: GradedPoly) -> bool:
    return all(r == 1 and len(alpha) <= 1 for r, alpha, _, _ in split_monomial(x))


def delta(x: GradedPoly, config: Config | None = None) -> GradedPoly:
    config = config or Config()
    if not is_p_elem(x):
        raise AlgebraError("delta is defined on the span of v*a_i only")
    A = x.alphabet
    u = context(config).n_series(2).coeffs
    out = GradedPoly(A)
    for r, alpha, bpart, c in split_monomial(x):
        m = alpha[0] if alpha else 0
        coef = GradedPoly.monomial(A, bpart, c)
        for i in range(1, m + 1):
            if i >= len(u):
                raise TruncationExhausted("u_%d beyond the series window" % i)
            if u[i]:
                out = out + coef * u[i].embed(A) * va(m - i, config).embed(A)
    return out


# ---- gamma and Gamma


def _twisted_c1(c1: GradedPoly, alph: Alphabet, trunc, K: int) -> GradedPoly:
    """b(c1) = sum_i b_i c1^(i+1) in the extended alphabet."""
    ell = c1.embed(alph)
    out = GradedPoly(alph)
    p = ell
    i = 0
    while p and i <= K:
        out = out + (p if i == 0 else p * GradedPoly.var(alph, "b%d" % i))
        p = p.mul_trunc(ell, trunc)
        i += 1
    return GradedPoly(alph, trunc.reduce(out.terms))


def gamma_series(E: KClass, config: Config | None = None) -> LaurentSeries:
    """gamma(E)(x) with coefficients over the chow generators and b's."""
    config = config or Config()
    ctx = context(config)
    K = config.T
    P = E.base
    alph = P.ext_alphabet(K)
    trunc = P.ext_trunc(alph)
    T = ctx.T
    one = LaurentSeries.monomial("x", 0, 1 << 40, alph)
    res = one
    for coef, c1 in E.lines:
        ct = _twisted_c1(c1, alph, trunc, K)
        if coef > 0:
            # F(x, y) = sum_j y^j F_j(x); y^j vanishes for j > dim
            series = {}
            powers = [GradedPoly.const(alph, 1)]
            for j in range(1, P.dim + 1):
                powers.append(powers[-1].mul_trunc(ct, trunc))
            for j in range(min(P.dim, T - 1) + 1):
                if not powers[j]:
                    continue
                Fj = ctx.fgl_coeff_series(j)
                for a, cf in Fj.items():
                    term = cf.embed(alph).mul_trunc(powers[j], trunc)
                    if term:
                        series[a] = series[a] + term if a in series else term
            fac = LaurentSeries("x", series, T - P.dim, alph)
            for _ in range(coef):
                res = res.mul(fac, trunc)
        else:
            inv = ctx.inverse_coeffs()
            series = None
            p = GradedPoly.const(alph, 1)
            for i in range(min(P.dim, len(inv) - 1) + 1):
                if not p:
                    break
                term = inv[i].map_coeffs(lambda c: c.embed(alph).mul_trunc(p, trunc), alph)
                series = term if series is None else series + term
                p = p.mul_trunc(ct, trunc)
            for _ in range(-coef):
                res = res.mul(series, trunc)
    return res


def gamma_bundle(S: VarietyDescriptor, E: KClass, config: Config | None = None) -> LaurentSeries:
    """Gamma([[E -> S]]) = sum_i [[gamma_i(-E)]] x^i, over L."""
    config = config or Config()
    K = config.T
    g = gamma_series(-E, config)
    P = S.chow
    alph = P.ext_alphabet(K)
    todd = cf_class(-S.tangent, K)
    trunc = P.ext_trunc(alph)
    L = laz_alphabet(config)
    out = {}
    for k, c in g.coeffs.items():
        d = P.integrate(todd.mul_trunc(c, trunc))
        d = GradedPoly.const(L, d) if isinstance(d, int) else d.embed(L)
        if d:
            out[k] = d
    return LaurentSeries("x", out, g.prec, L)


@lru_cache(maxsize=None)
def _gamma_va(j: int, config: Config) -> LaurentSeries:
    L = laz_alphabet(config)
    if j == 0:
        return LaurentSeries.monomial("x", -1, 1 << 40, L)
    S = make_projective_space(j)
    h = S.chow.gen("h")
    res = gamma_bundle(S, KClass.line(S.chow, h), config)
    from .lazard import class_of
    for i in range(j):
        Pij = class_of(make_projective_space(j - i), config.widened(j - i))
        res = res - _gamma_va(i, config).mul(Pij)
    return res


def gamma_va(j: int, config: Config | None = None) -> LaurentSeries:
    return _gamma_va(j, config or Config())


def Gamma(x: GradedPoly, config: Config | None = None, upto: int = 0) -> LaurentSeries:
    """Gamma on M as the ring morphism v -> x^-1, a_i -> x Gamma(v a_i); coefficients below x^upto."""
    config = config or Config()
    L = laz_alphabet(config)
    out = {}
    cache = {}
    for r, alpha, bpart, c in split_monomial(x):
        key = (r, alpha)
        if key not in cache:
            s = LaurentSeries.monomial("x", -r, 1 << 40, L)
            for i in alpha:
                s = s.mul(_gamma_va(i, config)).mul(LaurentSeries.monomial("x", 1, 1 << 40, L))
            cache[key] = s
        s = cache[key]
        if s.prec < upto:
            raise TruncationExhausted("Gamma needs coefficients up to x^%d, series known below x^%d" % (upto - 1, s.prec))
        coef = GradedPoly.monomial(L, bpart, c)
        for k, cf in s.coeffs.items():
            if k < upto:
                t = cf * coef
                out[k] = out[k] + t if k in out else t
    return LaurentSeries("x", out, upto, L)


def partial(x: GradedPoly, config: Config | None = None) -> GradedPoly:
    """A(Gamma(x)) with A: x^j -> p_(-1-j) for j < 0."""
    config = config or Config()
    M = m_alph(config)
    g = Gamma(x, config, 0)
    out = GradedPoly(M)
    for k, c in g.coeffs.items():
        if k < 0 and c:
            out = out + c.embed(M) * p_class(-1 - k, config)
    return out


def partial_direct(S: VarietyDescriptor, E: KClass, config: Config | None = None) -> GradedPoly:
    """[[O(1) -> P(E)]] from the Chow ring of the projective bundle."""
    PE = projective_bundle(S, E)
    xi = PE.chow.gens[-1].name
    return bundle_class(PE, KClass.line(PE.chow, PE.chow.gen(xi)), config)


# ---- rho and Quillen


def rho_series(S: VarietyDescriptor, E: KClass, config: Config | None = None, j: int | None = None,
               imin: int | None = None, imax: int = 0) -> dict:
    """{i: rho_i(E)} for imin <= i <= imax, over chow gens of S and b's.

    rho_i(E) = q_*(xi^(j-i)) with q: P(E + 1 + j) -> S, in twisted Chow theory.
    """
    config = config or Config()
    K = config.T
    r = E.rank
    if imin is None:
        imin = -(S.dim + r)
    if j is None:
        j = max(0, imax)
    F = E + KClass.trivial(E.base, 1 + j)
    PE = projective_bundle(S, F, "zeta")
    P = PE.chow
    alph = P.ext_alphabet(K)
    trunc = P.ext_trunc(alph)
    zname = P.gens[-1].name
    z = GradedPoly.var(P.alphabet, zname)
    bz = _twisted_c1(z, alph, trunc, K)
    Trel = F.pullback(P).twist(z) - KClass.trivial(P, 1)
    todd = cf_class(-Trel, K)
    salph = S.chow.ext_alphabet(K)
    out = {}
    for i in range(imin, imax + 1):
        if j - i < 0:
            raise AlgebraError("rho_i needs j >= i")
        integrand = todd
        for _ in range(j - i):
            integrand = integrand.mul_trunc(bz, trunc)
        pushed = P.pushforward_xi(integrand, len(P.gens) - 1)
        out[i] = _drop_last_gen(pushed, salph)
    return out


def _drop_last_gen(p: GradedPoly, target: Alphabet) -> GradedPoly:
    names = p.alphabet.names
    out = {}
    for k, c in p.terms.items():
        out[target.key_of({n: e for n, e in zip(names, p.alphabet.decode(k)) if e})] = c
    return GradedPoly(target, out)


def rho_via_gamma(S: VarietyDescriptor, E: KClass, config: Config | None = None,
                  imin: int | None = None, imax: int = 0) -> dict:
    """Coefficients of gamma(-E) * sum [[P^i]] x^i."""
    config = config or Config()
    from .lazard import class_of
    K = config.T
    g = gamma_series(-E, config)
    alph = S.chow.ext_alphabet(K)
    trunc = S.chow.ext_trunc(alph)
    if imin is None:
        imin = -(S.dim + E.rank)
    out = {}
    for i in range(imin, imax + 1):
        s = GradedPoly(alph)
        for k in range(0, i - g.valuation() + 1):
            if i - k >= g.prec:
                raise TruncationExhausted("gamma coefficient x^%d beyond the window" % (i - k))
            c = g.coeffs.get(i - k)
            if c:
                s = s + c.mul_trunc(class_of(make_projective_space(k), config.widened(k)).embed(alph), trunc)
        out[i] = s
    return out


def quillen_sides(S: VarietyDescriptor, E: KClass, m: int, config: Config | None = None):
    """(p_*(c1(O(1))^m), sum_i [[P^i]] gamma_(-1-m-i)(-E)) over chow gens of S and b's."""
    config = config or Config()
    from .lazard import class_of
    K = config.T
    PE = projective_bundle(S, E, "zeta")
    P = PE.chow
    alph = P.ext_alphabet(K)
    trunc = P.ext_trunc(alph)
    z = GradedPoly.var(P.alphabet, P.gens[-1].name)
    bz = _twisted_c1(z, alph, trunc, K)
    Trel = E.pullback(P).twist(z) - KClass.trivial(P, 1)
    integrand = cf_class(-Trel, K)
    for _ in range(m):
        integrand = integrand.mul_trunc(bz, trunc)
    salph = S.chow.ext_alphabet(K)
    lhs = _drop_last_gen(P.pushforward_xi(integrand, len(P.gens) - 1), salph)
    g = gamma_series(-E, config)
    strunc = S.chow.ext_trunc(salph)
    rhs = GradedPoly(salph)
    i = 0
    while -1 - m - i >= g.valuation():
        k = -1 - m - i
        if k >= g.prec:
            raise TruncationExhausted("gamma coefficient x^%d beyond the window" % k)
        c = g.coeffs.get(k)
        if c:
            rhs = rhs + c.mul_trunc(class_of(make_projective_space(i), config.widened(i)).embed(salph), strunc)
        i += 1
    return lhs, rhs


# ---- the image of delta


def p_generators(deg: int, config: Config) -> list:
    """Z-generators y_beta * v a_j of P in degree -deg (|beta| + 1 + j = deg)."""
    out = []
    for j in range(0, deg):
        for beta in partitions(deg - 1 - j):
            out.append(((beta, j), y_monomial(beta, config).embed(m_alph(config)) * va(j, config)))
    return out


@dataclass
class DeltaLattice:
    deg: int            # degree -deg of the target piece
    labels: list        # (beta, j) for each generator in the source
    monomials: list     # column keys
    rows: list          # rows of [H | U], [G | I] in Hermite normal form
    pivots: list
    ncols: int

    def decide(self, target: GradedPoly):
        """(True, coefficients) or (False, residual) for target in the span."""
        col = {k: i for i, k in enumerate(self.monomials)}
        vec = [0] * self.ncols
        for k, c in target.terms.items():
            if k not in col:
                return False, {"outside_support": list(target.alphabet.decode(k))}
            vec[col[k]] = c
        ng = len(self.labels)
        coeffs = [0] * ng
        for row, piv in zip(self.rows, self.pivots):
            if piv >= self.ncols:
                break
            q = vec[piv] // row[piv]
            if q:
                for j in range(piv, self.ncols):
                    vec[j] -= q * row[j]
                for g in range(ng):
                    coeffs[g] += q * row[self.ncols + g]
        if any(vec):
            return False, {"residual": vec}
        return True, {lab: c for lab, c in zip(self.labels, coeffs) if c}


@lru_cache(maxsize=None)
def delta_lattice(n: int, config: Config) -> DeltaLattice:
    """delta(P^{-n-1}) inside P^{-n}."""
    gens = p_generators(n + 1, config)
    images = [(lab, delta(g, config)) for lab, g in gens]
    keys = sorted({k for _, im in images for k in im.terms})
    ncols = len(keys)
    col = {k: i for i, k in enumerate(keys)}
    ng = len(images)
    rows = []
    for idx, (_, im) in enumerate(images):
        r = [0] * (ncols + ng)
        for k, c in im.terms.items():
            r[col[k]] = c
        r[ncols + idx] = 1
        rows.append(r)
    H = flint.fmpz_mat(rows).hnf() if rows else flint.fmpz_mat(0, ncols + ng)
    hrows = [[int(H[i, j]) for j in range(H.ncols())] for i in range(H.nrows())]
    pivots = [next((j for j in range(ncols) if r[j]), ncols) for r in hrows]
    return DeltaLattice(n, [lab for lab, _ in images], keys, hrows, pivots, ncols)


def homogeneous_parts_m(x: GradedPoly) -> dict:
    """Split by degree (v of degree -1); keys are n with the part in degree -n."""
    out = {}
    A = x.alphabet
    for k, c in x.terms.items():
        out.setdefault(-A.degree_of(k), {})[k] = c
    return {n: GradedPoly(A, t) for n, t in out.items()}


def in_delta_image(y: GradedPoly, n: int, config: Config | None = None):
    config = config or Config()
    if not y:
        return True, {}
    return delta_lattice(n, config).decide(y.embed(m_alph(config)))
