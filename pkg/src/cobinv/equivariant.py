"""Varieties with an involution, given by their fixed locus and its normal bundle.

A Fixture is a formal integer combination of fixed components (variety plus
normal K-class) together with the ambient class.  nu sends it to the class of
its normal bundle in M; the x_n are the images of the catalog generators.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import flint

from .algebra_core import AlgebraError, Alphabet, DivisibilityError, GradedPoly, Symbol
from .chow import (
    KClass, VarietyDescriptor, cf_class, chern_number, from_descriptor, kclass_from_json,
    make_projective_space, milnor_hypersurface, product,
)
from .config import Config
from .lazard import class_of, omega, sequential_ext_gcd
from .mring import (
    bundle_class, check_m_shape, gradings, homogeneous_parts_m, in_delta_image, m_alph, partial,
)


@dataclass
class Component:
    variety: VarietyDescriptor
    normal: KClass
    mult: int = 1

    @property
    def dim(self):
        return self.variety.dim


@dataclass
class Fixture:
    name: str
    n: int
    components: list
    ambient: list = field(default_factory=list)   # [(mult, descriptor dict)]
    factors: tuple = ()                           # set for products
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for c in self.components:
            if c.dim + c.normal.rank != self.n:
                raise AlgebraError("%s: component of dim %d with normal rank %d in dimension %d"
                                   % (self.name, c.dim, c.normal.rank, self.n))

    @property
    def d(self) -> int:
        return max((c.dim for c in self.components if c.mult), default=-1)

    def ambient_class(self, config: Config | None = None) -> GradedPoly:
        config = config or Config()
        if self.factors:
            out = None
            for f in self.factors:
                c = f.ambient_class(config)
                out = c if out is None else out * c
            return out
        return _ambient_class(json.dumps(self.ambient, sort_keys=True), config)

    def fixed_class(self, config: Config | None = None) -> GradedPoly:
        config = config or Config()
        out = None
        for c in self.components:
            x = class_of(c.variety, config.widened(c.dim)).scale(c.mult)
            x = x.embed(_laz(config, c.dim))
            out = x if out is None else out + x
        return out if out is not None else GradedPoly(_laz(config, 0))


def _laz(config, dim):
    from .lazard import laz_alphabet
    return laz_alphabet(config.widened(dim))


@lru_cache(maxsize=None)
def _ambient_class(key: str, config: Config) -> GradedPoly:
    terms = json.loads(key)
    out = None
    for mult, desc in terms:
        X = from_descriptor(desc)
        c = class_of(X, config).scale(mult)
        out = c if out is None else out + c
    from .lazard import laz_alphabet
    return out if out is not None else GradedPoly(laz_alphabet(config))


# ---- catalog


def _lin(P, names, coeffs):
    """Linear form sum coeffs[i] * gen names[i]; a missing name stands for 0."""
    out = P.zero()
    for n, c in zip(names, coeffs):
        if n is not None and c:
            out = out + P.gen(n) * c
    return out


def _proj(n):
    return make_projective_space(n)


def _hgen(X):
    return X.chow.gens[0].name if X.chow.gens else None


def pab(a: int, b: int) -> Fixture:
    if a < 0 or b < 0:
        raise AlgebraError("P(a,b) needs a, b >= 0")
    comps = []
    for k, other in ((a, b), (b, a)):
        X = _proj(k)
        h = _lin(X.chow, [_hgen(X)], [1])
        comps.append(Component(X, KClass.line(X.chow, h, other + 1)))
    return Fixture("P(%d,%d)" % (a, b), a + b + 1, comps, [(1, {"type": "Pn", "n": a + b + 1})],
                   extra={"kind": "Pab", "a": a, "b": b})


def _prod_gens(A, B, X):
    """Names in X of the hyperplane generators of the factors A and B (or None)."""
    na = len(A.chow.gens)
    p = X.chow.gens[0].name if na else None
    q = X.chow.gens[na].name if len(B.chow.gens) else None
    return p, q


def hij(i: int, j: int) -> Fixture:
    if i < 1 or j < i:
        raise AlgebraError("H(i,j) needs 1 <= i <= j")
    n = 2 * (i + j) - 1
    comps = []
    # H_{i,j} with normal j O{1} + i pi^*O(1)
    H = milnor_hypersurface(i, j)
    comps.append(Component(H, KClass(H.chow, [(j, H.chow.gen("xi")), (i, H.chow.gen("h"))])))
    # P^i x P^(j-1): (j+1) q - pq + i p
    A, B = _proj(i), _proj(j - 1)
    X = product(A, B)
    p, q = _prod_gens(A, B, X)
    P = X.chow
    comps.append(Component(X, KClass(P, [(j + 1, _lin(P, [q], [1])), (-1, _lin(P, [p, q], [1, 1])),
                                         (i, _lin(P, [p], [1]))])))
    # P^(i-1) x P^j: j q - pq + (i+1) p
    A, B = _proj(i - 1), _proj(j)
    X = product(A, B)
    p, q = _prod_gens(A, B, X)
    P = X.chow
    comps.append(Component(X, KClass(P, [(j, _lin(P, [q], [1])), (-1, _lin(P, [p, q], [1, 1])),
                                         (i + 1, _lin(P, [p], [1]))])))
    # H_{i-1,j-1} (empty when j = 1): (j+1) O{1} + (i+1) pi^*O(1)
    if j >= 2:
        H = milnor_hypersurface(i - 1, j - 1)
        hh = _lin(H.chow, [_hgen(H) if i > 1 else None], [1])
        comps.append(Component(H, KClass(H.chow, [(j + 1, H.chow.gen("xi")), (i + 1, hh)])))
    return Fixture("H(%d,%d)" % (i, j), n, comps, [(1, {"type": "H", "m": 2 * i, "n": 2 * j})],
                   extra={"kind": "Hij", "i": i, "j": j})


def combination(terms: list, name: str, extra=None) -> Fixture:
    """sum mult * fixture, all of the same dimension."""
    comps, amb = [], []
    n = None
    for mult, f in terms:
        if not mult:
            continue
        if n is not None and f.n != n:
            raise AlgebraError("combination of fixtures of different dimensions")
        n = f.n
        comps += [Component(c.variety, c.normal, c.mult * mult) for c in f.components]
        amb += [(m * mult, d) for m, d in f.ambient]
    return Fixture(name, n, comps, amb, extra=extra or {})


def xn_coefficients(d: int) -> list:
    values = [comb(d + 1, i) for i in range(1, (d + 1) // 2 + 1)]
    g, e = sequential_ext_gcd(values)
    if g != omega(d):
        raise AlgebraError("cannot reach omega_%d" % d)
    return e


def xn(n: int) -> Fixture:
    return _xn(n)


@lru_cache(maxsize=None)
def _xn(n: int) -> Fixture:
    if n < 1:
        raise AlgebraError("X_n needs n >= 1")
    if n == 1:
        f = pab(0, 0)
    elif n % 2 == 0:
        f = pab(n // 2, n // 2 - 1)
    else:
        d = (n - 1) // 2
        e = xn_coefficients(d)
        f = combination([(ei, hij(i, d + 1 - i)) for i, ei in enumerate(e, start=1)], "X%d" % n,
                        {"kind": "Xn", "n": n, "e": e})
    f = Fixture("X%d" % n, f.n, f.components, f.ambient, extra=dict(f.extra, kind="Xn", n=n))
    return f


def fixture_product(f: Fixture, g: Fixture) -> Fixture:
    comps = []
    for a in f.components:
        for b in g.components:
            X = product(a.variety, b.variety)
            na = len(a.variety.chow.gens)
            ren = {gg.name: hh.name for gg, hh in zip(b.variety.chow.gens, X.chow.gens[na:])}
            N = a.normal.pullback(X.chow) + b.normal.pullback(X.chow, ren)
            comps.append(Component(X, N, a.mult * b.mult))
    amb = [(m1 * m2, {"type": "product", "factors": [d1, d2]}) for m1, d1 in f.ambient for m2, d2 in g.ambient]
    factors = (f.factors or (f,)) + (g.factors or (g,))
    return Fixture("%s*%s" % (f.name, g.name), f.n + g.n, comps, amb, factors)


def fixture_power(f: Fixture, k: int) -> Fixture:
    if k < 1:
        raise AlgebraError("power needs k >= 1")
    out = f
    for _ in range(k - 1):
        out = fixture_product(out, f)
    return out


def p1xp1_swap() -> Fixture:
    X = _proj(1)
    h = X.chow.gen("h")
    return Fixture("P1xP1-swap", 2, [Component(X, KClass.line(X.chow, h * 2))],
                   [(1, {"type": "product", "factors": [{"type": "Pn", "n": 1}, {"type": "Pn", "n": 1}]})],
                   extra={"kind": "swap"})


def catalog(kind: str, *params) -> Fixture:
    if kind == "Pab":
        return pab(*params)
    if kind == "Hij":
        return hij(*params)
    if kind == "Xn":
        return xn(*params)
    if kind == "swap":
        return p1xp1_swap()
    if kind == "product":
        # params: [[kind, *params], power], ...
        out = None
        for spec, k in params:
            f = fixture_power(catalog(*spec), int(k))
            out = f if out is None else fixture_product(out, f)
        if out is None:
            raise AlgebraError("empty product")
        return out
    raise AlgebraError("unknown catalog kind %r" % kind)


# ---- JSON


def kclass_to_json(E: KClass):
    out = []
    names = E.base.alphabet.names
    for c, l in E.lines:
        lin = {}
        for exps, k in l.exps_items():
            if sum(exps) != 1:
                raise AlgebraError("first Chern class is not linear")
            lin[names[exps.index(1)]] = k
        out.append([c, lin])
    return out


def fixture_to_json(f: Fixture) -> dict:
    return {
        "name": f.name,
        "n": f.n,
        "components": [{"variety": c.variety.descriptor, "normal": kclass_to_json(c.normal), "mult": c.mult}
                       for c in f.components],
        "ambient": [[m, d] for m, d in f.ambient],
        "extra": f.extra,
    }


def fixture_from_json(obj: dict) -> Fixture:
    try:
        if "catalog" in obj:
            spec = obj["catalog"]
            return catalog(spec[0], *spec[1:])
        comps = []
        for c in obj["components"]:
            X = from_descriptor(c["variety"])
            comps.append(Component(X, kclass_from_json(X.chow, c["normal"]), int(c.get("mult", 1))))
        amb = [(int(m), d) for m, d in obj.get("ambient", [])]
        return Fixture(obj.get("name", ""), int(obj["n"]), comps, amb, extra=obj.get("extra", {}))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError("malformed fixture JSON: %s" % exc) from None


# ---- nu, theta, phi


def nu(f: Fixture, config: Config | None = None) -> GradedPoly:
    config = config or Config()
    if f.factors:
        out = None
        for g in f.factors:
            x = nu(g, config)
            out = x if out is None else out * x
        return out
    out = GradedPoly(m_alph(config))
    for c in f.components:
        if c.mult:
            out = out + bundle_class(c.variety, c.normal, config).scale(c.mult)
    return out


def nu_direct(f: Fixture, config: Config | None = None) -> GradedPoly:
    """nu summed over the explicit components, ignoring any product structure."""
    config = config or Config()
    out = GradedPoly(m_alph(config))
    for c in f.components:
        if c.mult:
            out = out + bundle_class(c.variety, c.normal, config).scale(c.mult)
    return out


def x_gen(j: int, config: Config | None = None) -> GradedPoly:
    return _x_gen(j, config or Config())


@lru_cache(maxsize=None)
def _x_gen(j: int, config: Config) -> GradedPoly:
    return nu(xn(j), config)


def theta(f: Fixture, d: int | None = None) -> tuple:
    if d is None:
        d = f.d
    first = second = 0
    for c in f.components:
        if c.dim != d or not c.mult:
            continue
        first += c.mult * chern_number(c.variety, (d,))
        cf = cf_class(c.normal, max(d, 1))
        if d == 0:
            deg = c.variety.chow.integrate(cf)
            val = 0
        else:
            deg = c.variety.chow.integrate(cf)
            val = deg.coeff({"b%d" % d: 1}) if not isinstance(deg, int) else 0
        second += c.mult * val
    return first, second


def phi_m(m: GradedPoly, config: Config | None = None) -> GradedPoly:
    """v -> 1, a_i -> 0."""
    from .lazard import laz_alphabet
    config = config or Config()
    L = laz_alphabet(config)
    A = m.alphabet
    names = A.names
    out = {}
    for k, c in m.terms.items():
        exps = A.decode(k)
        if any(e and n[0] == "a" for n, e in zip(names, exps)):
            continue
        key = L.key_of({n: e for n, e in zip(names, exps) if e and n[0] == "b"})
        out[key] = out.get(key, 0) + c
    return GradedPoly(L, out)


# ---- expressing in the x_n


def fdeg_part(j: int) -> int:
    return j // 2


def fdeg_alpha(alpha) -> int:
    return sum(fdeg_part(j) for j in alpha)


def x_partitions(fdim: int, min_part: int = 2) -> list:
    """Partitions with parts >= min_part and fdeg <= fdim."""
    out = []

    def rec(prefix, maxpart, budget):
        out.append(tuple(prefix))
        for j in range(maxpart, min_part - 1, -1):
            f = fdeg_part(j)
            if f <= budget:
                prefix.append(j)
                rec(prefix, j, budget - f)
                prefix.pop()

    rec([], 2 * fdim + 1, fdim)
    return out


@lru_cache(maxsize=None)
def xv_alphabet(J: int) -> Alphabet:
    return Alphabet([Symbol("v", -1, True)] + [Symbol("x%d" % j, -j) for j in range(2, J + 1)])


def _x_max(config: Config) -> int:
    return 2 * config.D + 1


def _v_one(m: GradedPoly) -> dict:
    A = m.alphabet
    vi = A.index("v")
    out = {}
    for exps, c in m.exps_items():
        e = list(exps)
        e[vi] = 0
        k = A.key(e)
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


class ExpressError(AlgebraError):
    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


@lru_cache(maxsize=None)
def _x_monomial_v1(alpha: tuple, config: Config) -> GradedPoly:
    A = m_alph(config)
    if not alpha:
        return GradedPoly.const(A, 1)
    head = GradedPoly(A, _v_one(x_gen(alpha[0], config)))
    return _x_monomial_v1(alpha[1:], config) * head


def express_in_x(m: GradedPoly, config: Config | None = None) -> GradedPoly:
    """Write m as a polynomial in v, 1/v and x_2, x_3, ... (exact, unique)."""
    config = config or Config()
    J = _x_max(config)
    X = xv_alphabet(J)
    out = GradedPoly(X)
    for n, part in sorted(homogeneous_parts_m(m).items()):
        out = out + _express_homogeneous(part, n, config, X)
    return out


def _express_homogeneous(m: GradedPoly, n: int, config: Config, X: Alphabet) -> GradedPoly:
    _, fdim = gradings(m)
    alphas = x_partitions(fdim)
    if any(max(a, default=0) > len(X) for a in alphas):
        raise ExpressError("x-generators beyond x%d needed" % len(X))
    cols = [_x_monomial_v1(a, config).terms for a in alphas]
    target = _v_one(m)
    keys = sorted(set(target).union(*[set(c) for c in cols]))
    idx = {k: i for i, k in enumerate(keys)}
    A = flint.fmpz_mat(len(keys), len(alphas))
    for jcol, c in enumerate(cols):
        for k, val in c.items():
            A[idx[k], jcol] = val
    b = flint.fmpz_mat(len(keys), 1)
    for k, val in target.items():
        b[idx[k], 0] = val
    At = A.transpose()
    G = flint.fmpq_mat(At * A)
    try:
        sol = G.solve(flint.fmpq_mat(At * b))
    except ZeroDivisionError:
        raise ExpressError("x-monomials are linearly dependent in this window") from None
    if flint.fmpq_mat(A) * sol != flint.fmpq_mat(b):
        raise ExpressError("element of degree -%d is not in the span of the x-monomials" % n)
    out = {}
    for jcol, alpha in enumerate(alphas):
        q = sol[jcol, 0]
        if q == 0:
            continue
        if q.q != 1:
            raise ExpressError("non-integral coordinate %s at x_%s" % (q, alpha))
        mono = {"v": n - sum(alpha)}
        for j in alpha:
            mono["x%d" % j] = mono.get("x%d" % j, 0) + 1
        out[X.key_of({k: e for k, e in mono.items() if e})] = int(q.p)
    return GradedPoly(X, out)


def x_monomial_in_m(alpha: tuple, k: int, config: Config) -> GradedPoly:
    out = GradedPoly.monomial(m_alph(config), {"v": k} if k else {})
    for j in alpha:
        out = out * x_gen(j, config)
    return out


# ---- the t/x normal form


@lru_cache(maxsize=None)
def inv_alphabet(J: int) -> Alphabet:
    return Alphabet([Symbol("t", 1)] + [Symbol("x%d" % j, -j) for j in range(1, J + 1)])


@lru_cache(maxsize=None)
def x_alphabet(J: int) -> Alphabet:
    return Alphabet([Symbol("x%d" % j, -j) for j in range(1, J + 1)])


class InvClass:
    """sum_i A_i(x) t^i with t x1 = 2, stored with A_i x1-free for i >= 1."""

    def __init__(self, poly: GradedPoly, n: int | None = None):
        self.poly = _normalize(poly)
        self.n = n

    @property
    def alphabet(self):
        return self.poly.alphabet

    @property
    def J(self):
        return len(self.alphabet) - 1

    def A(self, i: int) -> GradedPoly:
        XA = x_alphabet(self.J)
        out = {}
        for exps, c in self.poly.exps_items():
            if exps[0] == i:
                out[XA.key(exps[1:])] = c
        return GradedPoly(XA, out)

    def t_degrees(self):
        return sorted({e[0] for e, _ in self.poly.exps_items()})

    def components(self) -> dict:
        return {i: self.A(i) for i in self.t_degrees()}

    def __add__(self, other):
        return InvClass(self.poly + other.poly, self.n if self.n == other.n else None)

    def __sub__(self, other):
        return InvClass(self.poly - other.poly, self.n if self.n == other.n else None)

    def __mul__(self, other):
        if isinstance(other, int):
            return InvClass(self.poly * other, self.n)
        n = None if self.n is None or other.n is None else self.n + other.n
        return InvClass(self.poly * other.poly, n)

    def __eq__(self, other):
        return isinstance(other, InvClass) and self.poly == other.poly

    def to_json_obj(self):
        comps = self.components()
        return {
            "n": self.n,
            "A0": comps.get(0, GradedPoly(x_alphabet(self.J))).to_json_obj(),
            "A": {str(i): p.to_json_obj() for i, p in comps.items() if i >= 1},
        }

    def pretty(self):
        comps = self.components()
        parts = []
        for i, p in sorted(comps.items()):
            s = p.pretty()
            if i == 0:
                parts.append(s)
            else:
                tt = "t" if i == 1 else "t^%d" % i
                parts.append("%s*(%s)" % (tt, s) if len(p) > 1 else
                             ("%s*%s" % (tt, s) if not s.startswith("-") else "-%s*%s" % (tt, s[1:])))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return "InvClass(%s)" % self.pretty()

    @classmethod
    def x(cls, j: int, config: Config | None = None):
        J = _x_max(config or Config())
        return cls(GradedPoly.var(inv_alphabet(J), "x%d" % j), j)

    @classmethod
    def one(cls, config: Config | None = None):
        J = _x_max(config or Config())
        return cls(GradedPoly.const(inv_alphabet(J), 1), 0)


def _normalize(p: GradedPoly) -> GradedPoly:
    """Rewrite t x1 -> 2."""
    A = p.alphabet
    out = {}
    for exps, c in p.exps_items():
        m = min(exps[0], exps[1])
        if m:
            e = list(exps)
            e[0] -= m
            e[1] -= m
            c <<= m
            k = A.key(e)
        else:
            k = A.key(exps)
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return GradedPoly(A, out)


def decompose_m(m: GradedPoly, n: int, config: Config | None = None) -> InvClass:
    config = config or Config()
    xv = express_in_x(m, config)
    J = _x_max(config)
    I = inv_alphabet(J)
    out = {}
    for exps, c in xv.exps_items():
        k = exps[0]
        mono = {"x%d" % j: e for j, e in zip(range(2, J + 1), exps[1:]) if e}
        if k >= 0:
            if c % (1 << k):
                raise DivisibilityError("coefficient %d of v^%d is not divisible by 2^%d" % (c, k, k),
                                        term=(k, mono))
            c >>= k
            if k:
                mono["x1"] = k
        else:
            mono["t"] = -k
        key = I.key_of(mono)
        out[key] = out.get(key, 0) + c
    return InvClass(GradedPoly(I, out), n)


def decompose(f: Fixture, config: Config | None = None) -> InvClass:
    if f.factors:
        out = None
        for g in f.factors:
            c = decompose(g, config)
            out = c if out is None else out * c
        return out
    return decompose_m(nu(f, config), f.n, config)


def inv_to_m(c: InvClass, config: Config | None = None) -> GradedPoly:
    """x_j -> nu(X_j), t -> 1/v."""
    config = config or Config()
    M = m_alph(config)
    images = {"t": GradedPoly.monomial(M, {"v": -1})}
    for j in range(1, c.J + 1):
        # unused variables only ever appear to the power 0
        images["x%d" % j] = x_gen(j, config) if c.poly.uses("x%d" % j) else 1
    return c.poly.substitute(images, M)


def x_fdeg(exps_x: tuple) -> int:
    """fdeg of an x-monomial given exponents of x1, x2, ..."""
    return sum(e * fdeg_part(j) for j, e in enumerate(exps_x, start=1))


def canonical_form_checks(c: InvClass, d: int) -> dict:
    """Structural postconditions of the canonical form; each value is a bool."""
    n = c.n
    res = {"homogeneous": True, "fdeg_bound": True, "vanishing": True, "x1_free": True}
    for exps, _ in c.poly.exps_items():
        i, xs = exps[0], exps[1:]
        weight = sum(j * e for j, e in enumerate(xs, start=1))
        if weight != n + i:
            res["homogeneous"] = False
        if x_fdeg(xs) > d:
            res["fdeg_bound"] = False
        if i > max(0, 3 * d - n):
            res["vanishing"] = False
        if i >= 1 and xs[0]:
            res["x1_free"] = False
    return res


def eps(c: InvClass, config: Config | None = None) -> GradedPoly:
    """A0 with x_j -> [[X_j]]; agrees with the ambient class modulo 2."""
    config = config or Config()
    from .lazard import laz_alphabet
    A0 = c.A(0)
    L = laz_alphabet(config)
    images = {}
    for j in range(1, c.J + 1):
        images["x%d" % j] = xn(j).ambient_class(config) if A0.uses("x%d" % j) else 1
    return A0.substitute(images, L) if A0 else GradedPoly(L)


def mod2_lazard(x: GradedPoly, n: int, config: Config | None = None) -> list:
    """Generator monomials with odd coordinate, i.e. x in L/2 (x homogeneous of degree -n)."""
    from .lazard import lattice_coords
    if not x:
        return []
    return sorted(b for b, k in lattice_coords(x, n, config).items() if k % 2)


def eps_mod2(c: InvClass, config: Config | None = None) -> list:
    return mod2_lazard(eps(c, config), c.n, config)


def phi_fixed(c, config: Config | None = None) -> GradedPoly:
    """Class of the fixed locus: v -> 1, a -> 0 (t -> 1 on the x/t form)."""
    config = config or Config()
    if isinstance(c, InvClass):
        from .lazard import laz_alphabet
        L = laz_alphabet(config)
        images = {"t": 1}
        for j in range(1, c.J + 1):
            images["x%d" % j] = phi_m(x_gen(j, config), config) if c.poly.uses("x%d" % j) else 1
        return c.poly.substitute(images, L)
    if isinstance(c, Fixture):
        return phi_m(nu(c, config), config)
    return phi_m(c, config)


# ---- realizability


@dataclass
class Verdict:
    realizable: bool
    certificate: dict

    def to_json_obj(self):
        return {"verdict": "yes" if self.realizable else "no", "certificate": self.certificate}


def is_normal_bundle_class(m: GradedPoly, config: Config | None = None) -> Verdict:
    """m is nu of a virtual involution iff partial(m) lies in delta(P) in each degree."""
    config = config or Config()
    m = m.embed(m_alph(config)) if m.alphabet != m_alph(config) else m
    check_m_shape(m)
    cert = {}
    ok = True
    for n, part in sorted(homogeneous_parts_m(m).items()):
        config.require(n, "class dimension")
        y = partial(part, config)
        good, info = in_delta_image(y, n, config)
        entry = {"partial": y.to_json_obj()}
        if good:
            entry["preimage"] = [[list(b), j, c] for (b, j), c in sorted(info.items())]
        else:
            entry.update(info)
            ok = False
        cert[str(n)] = entry
    return Verdict(ok, cert)
