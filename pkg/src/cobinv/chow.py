"""Chow rings of split projective-bundle towers over products of projective spaces.

Generators all have degree 1.  A generator is either nilpotent (h^(m+1) = 0,
coming from a factor P^m) or the tautological class xi = c1(O(1)) of a bundle
of lines P(E), subject to xi^r + c1(E) xi^(r-1) + ... + c_r(E) = 0.  Degrees
are computed either from the normal form or by pushing forward one xi at a
time with xi^(r-1+k) -> s_k(E), s(E) = c(E)^(-1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra_core import (
    AlgebraError, Alphabet, GradedPoly, Symbol, Truncation, TruncSeries, series_reciprocal,
)
from .fgl import b_alphabet


@dataclass
class Gen:
    name: str
    kind: str                 # "h" or "xi"
    cap: int = 0              # h^(cap+1) = 0
    rank: int = 0             # xi: rank of E
    chern: list = field(default_factory=list)   # xi: c_1..c_r of E (chow alphabet)
    segre: list = field(default_factory=list)   # xi: s_0..s_dimbase


class ChowPresentation:
    def __init__(self, gens: list, dim: int, fundamental: tuple):
        self.gens = gens
        self.dim = dim
        self.alphabet = Alphabet(Symbol(g.name, 1) for g in gens)
        self.fundamental = tuple(fundamental)
        self.trunc = self._truncation(self.alphabet)
        self._nf_cache = {}

    def __repr__(self):
        return "ChowPresentation(%s; dim=%d)" % (", ".join(g.name for g in self.gens), self.dim)

    def _truncation(self, alphabet):
        weights = {g.name: 1 for g in self.gens}
        caps = {g.name: g.cap for g in self.gens if g.kind == "h"}
        return Truncation(alphabet, weights, self.dim, caps)

    # coefficient-extended alphabets: chow generators first, then b's and a's
    def ext_alphabet(self, K: int, with_a: bool = False) -> Alphabet:
        syms = [Symbol(g.name, 1) for g in self.gens] + list(b_alphabet(K).entries)
        if with_a:
            syms += [Symbol("a%d" % i, -i) for i in range(1, K + 1)]
        return Alphabet(syms)

    def ext_trunc(self, alphabet):
        return self._truncation(alphabet)

    def gen(self, name, alphabet=None):
        return GradedPoly.var(alphabet or self.alphabet, name)

    def zero(self, alphabet=None):
        return GradedPoly(alphabet or self.alphabet)

    def one(self, alphabet=None):
        return GradedPoly.const(alphabet or self.alphabet, 1)

    # ---- normal form by rewriting
    def _reduce_mono(self, exps: tuple) -> dict:
        hit = self._nf_cache.get(exps)
        if hit is not None:
            return hit
        if sum(exps) > self.dim or any(g.kind == "h" and e > g.cap for g, e in zip(self.gens, exps)):
            res = {}
        else:
            res = None
            for idx in range(len(self.gens) - 1, -1, -1):
                g = self.gens[idx]
                if g.kind == "xi" and exps[idx] >= g.rank:
                    # xi^r = -sum_j c_j xi^(r-j): latest generator first
                    res = {}
                    base = list(exps)
                    base[idx] -= g.rank
                    for j, c in enumerate(g.chern, start=1):
                        if not c:
                            continue
                        for ck, cc in c.terms.items():
                            ce = self.alphabet.decode(ck)
                            new = [a + b for a, b in zip(base, ce)]
                            new[idx] += g.rank - j
                            for kk, vv in self._reduce_mono(tuple(new)).items():
                                s = res.get(kk, 0) - cc * vv
                                if s:
                                    res[kk] = s
                                else:
                                    res.pop(kk, None)
                    break
            if res is None:
                res = {exps: 1}
        self._nf_cache[exps] = res
        return res

    def normal_form(self, poly: GradedPoly) -> GradedPoly:
        alph = poly.alphabet
        k = len(self.gens)
        if [s.name for s in alph.entries[:k]] != [g.name for g in self.gens]:
            raise AlgebraError("polynomial alphabet does not start with the chow generators")
        out = {}
        for exps, c in poly.exps_items():
            head, tail = exps[:k], exps[k:]
            for he, hc in self._reduce_mono(head).items():
                key = alph.key(he + tail)
                s = out.get(key, 0) + c * hc
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return GradedPoly(alph, out)

    def degree(self, poly: GradedPoly):
        """Coefficient of the fundamental monomial in normal form (over the coefficient symbols)."""
        nf = self.normal_form(poly)
        return self._extract(nf, self.fundamental)

    def _extract(self, poly, head_exps):
        k = len(self.gens)
        alph = poly.alphabet
        rest = Alphabet(alph.entries[k:])
        out = {}
        for exps, c in poly.exps_items():
            if exps[:k] == tuple(head_exps):
                out[rest.key(exps[k:])] = c
        res = GradedPoly(rest, out)
        return res.constant() if len(rest) == 0 else res

    # ---- degree by successive pushforward
    def pushforward_xi(self, poly: GradedPoly, idx: int) -> GradedPoly:
        g = self.gens[idx]
        if g.kind != "xi":
            raise AlgebraError("can only push forward along a projective-bundle generator")
        alph = poly.alphabet
        seg = [s.embed(alph) if len(alph) != len(self.alphabet) else s for s in g.segre]
        out = GradedPoly(alph)
        groups = {}
        for exps, c in poly.exps_items():
            e = exps[idx]
            kk = e - g.rank + 1
            if kk < 0 or kk >= len(seg) or not seg[kk]:
                continue
            new = list(exps)
            new[idx] = 0
            groups.setdefault(kk, {})[alph.key(new)] = c
        for kk, terms in groups.items():
            out = out + GradedPoly(alph, terms) * seg[kk]
        return GradedPoly(alph, self.ext_trunc(alph).reduce(out.terms))

    def integrate(self, poly: GradedPoly):
        """Degree via pushforward of each xi, latest first, then the h-monomial."""
        p = poly
        for idx in range(len(self.gens) - 1, -1, -1):
            if self.gens[idx].kind == "xi":
                p = self.pushforward_xi(p, idx)
        top = tuple(g.cap if g.kind == "h" else 0 for g in self.gens)
        return self._extract(p, top)

    def embed_segre(self):
        return self


@dataclass
class KClass:
    """Formal integer combination of line bundles, each given by its first Chern class."""

    base: ChowPresentation
    lines: list  # [(coef, c1 GradedPoly over base.alphabet)]

    def __post_init__(self):
        merged = {}
        order = []
        for coef, c1 in self.lines:
            key = frozenset(c1.terms.items())
            if key not in merged:
                merged[key] = [0, c1]
                order.append(key)
            merged[key][0] += coef
        self.lines = [(merged[k][0], merged[k][1]) for k in order if merged[k][0]]

    @property
    def rank(self) -> int:
        return sum(c for c, _ in self.lines)

    @classmethod
    def trivial(cls, base, r):
        return cls(base, [(r, base.zero())])

    @classmethod
    def line(cls, base, c1, coef=1):
        return cls(base, [(coef, c1)])

    def __add__(self, other):
        if other.base is not self.base:
            raise AlgebraError("K-classes over different presentations")
        return KClass(self.base, self.lines + other.lines)

    def __neg__(self):
        return KClass(self.base, [(-c, l) for c, l in self.lines])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return KClass(self.base, [(k * c, l) for c, l in self.lines])

    def twist(self, c1):
        """E tensor L with c1(L) = c1."""
        return KClass(self.base, [(c, l + c1) for c, l in self.lines])

    def dual(self):
        return KClass(self.base, [(c, -l) for c, l in self.lines])

    def pullback(self, target: ChowPresentation, rename=None):
        return KClass(target, [(c, l.embed(target.alphabet, rename)) for c, l in self.lines])

    def total_chern(self) -> GradedPoly:
        P = self.base
        res = P.one()
        for coef, c1 in self.lines:
            f = P.one() + c1
            if coef < 0:
                inv = P.one()
                term = P.one()
                for _ in range(P.dim):
                    term = term.mul_trunc(-c1, P.trunc)
                    inv = inv + term
                f, coef = inv, -coef
            for _ in range(coef):
                res = res.mul_trunc(f, P.trunc)
        return res

    def to_json_obj(self):
        return [[c, l.to_json_obj()] for c, l in self.lines]


@dataclass
class VarietyDescriptor:
    chow: ChowPresentation
    tangent: KClass
    dim: int
    name: str = ""
    descriptor: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tangent.rank != self.dim:
            raise AlgebraError("tangent rank %d does not match dimension %d" % (self.tangent.rank, self.dim))


def make_projective_space(n: int, name: str = "h") -> VarietyDescriptor:
    if n < 0:
        raise AlgebraError("projective space of negative dimension")
    if n == 0:
        P = ChowPresentation([], 0, ())
        return VarietyDescriptor(P, KClass(P, []), 0, "P0", {"type": "Pn", "n": 0})
    P = ChowPresentation([Gen(name, "h", cap=n)], n, (n,))
    T = KClass(P, [(n + 1, P.gen(name)), (-1, P.zero())])
    return VarietyDescriptor(P, T, n, "P%d" % n, {"type": "Pn", "n": n})


def point() -> VarietyDescriptor:
    return make_projective_space(0)


def _fresh(name, taken):
    if name not in taken:
        return name
    i = 2
    while "%s%d" % (name, i) in taken:
        i += 1
    return "%s%d" % (name, i)


def product(a: VarietyDescriptor, b: VarietyDescriptor) -> VarietyDescriptor:
    taken = {g.name for g in a.chow.gens}
    rename_b = {}
    for g in b.chow.gens:
        new = _fresh(g.name, taken)
        taken.add(new)
        rename_b[g.name] = new
    gens_tmp = [Gen(g.name, g.kind, g.cap, g.rank) for g in a.chow.gens] + \
               [Gen(rename_b[g.name], g.kind, g.cap, g.rank) for g in b.chow.gens]
    P = ChowPresentation(gens_tmp, a.dim + b.dim, a.chow.fundamental + b.chow.fundamental)
    for g_new, g_old in zip(P.gens, a.chow.gens):
        g_new.chern = [c.embed(P.alphabet) for c in g_old.chern]
        g_new.segre = [s.embed(P.alphabet) for s in g_old.segre]
    for g_new, g_old in zip(P.gens[len(a.chow.gens):], b.chow.gens):
        g_new.chern = [c.embed(P.alphabet, rename_b) for c in g_old.chern]
        g_new.segre = [s.embed(P.alphabet, rename_b) for s in g_old.segre]
    T = a.tangent.pullback(P) + b.tangent.pullback(P, rename_b)
    desc = {"type": "product", "factors": [a.descriptor, b.descriptor]}
    name = "%s x %s" % (a.name, b.name) if a.name and b.name else ""
    return VarietyDescriptor(P, T, a.dim + b.dim, name, desc)


def product_pullbacks(a: VarietyDescriptor, b: VarietyDescriptor, X: VarietyDescriptor):
    """Maps to pull K-classes from the factors of X = product(a, b)."""
    rename_b = {g.name: h.name for g, h in zip(b.chow.gens, X.chow.gens[len(a.chow.gens):])}
    return (lambda E: E.pullback(X.chow)), (lambda E: E.pullback(X.chow, rename_b))


def projective_bundle(base: VarietyDescriptor, E: KClass, name: str = "xi", descriptor=None) -> VarietyDescriptor:
    """P(E) of lines in a split (possibly virtual) E of rank r >= 1."""
    r = E.rank
    if r < 1:
        raise AlgebraError("projective bundle of a rank %d class" % r)
    B = base.chow
    name = _fresh(name, {g.name for g in B.gens})
    c = E.total_chern()
    chern = [c.homogeneous_part(j) for j in range(1, r + 1)]
    # Segre classes s = c^(-1)
    cs = TruncSeries("z", B.dim + 1, [c.homogeneous_part(j) for j in range(B.dim + 1)], B.alphabet)
    seg = series_reciprocal(cs).coeffs if B.dim >= 0 else []
    gens = [Gen(g.name, g.kind, g.cap, g.rank) for g in B.gens] + [Gen(name, "xi", rank=r)]
    P = ChowPresentation(gens, B.dim + r - 1, B.fundamental + (r - 1,))
    for g_new, g_old in zip(P.gens, B.gens):
        g_new.chern = [x.embed(P.alphabet) for x in g_old.chern]
        g_new.segre = [x.embed(P.alphabet) for x in g_old.segre]
    P.gens[-1].chern = [x.embed(P.alphabet) for x in chern]
    P.gens[-1].segre = [x.embed(P.alphabet) for x in seg]
    xi = P.gen(name)
    T = base.tangent.pullback(P) + E.pullback(P).twist(xi) - KClass.trivial(P, 1)
    desc = descriptor or {"type": "pbundle", "base": base.descriptor, "lines": E.to_json_obj()}
    return VarietyDescriptor(P, T, P.dim, "P(E)", desc)


def milnor_hypersurface(m: int, n: int) -> VarietyDescriptor:
    """H_{m,n} = P(U_m + (n-m)) over P^m with U_m = (m+1) - O(1); needs n >= 1."""
    if m < 0 or n < 1 or m > n:
        raise AlgebraError("H_{%d,%d} is not supported" % (m, n))
    base = make_projective_space(m)
    h = base.chow.gen("h") if m > 0 else base.chow.zero()
    E = KClass(base.chow, [(n + 1, base.chow.zero()), (-1, h)])
    X = projective_bundle(base, E, "xi", {"type": "H", "m": m, "n": n})
    X.name = "H_%d,%d" % (m, n)
    return X


# ---- Conner-Floyd classes


@lru_cache(maxsize=None)
def _b_power_series(K: int, order: int, k: int) -> TruncSeries:
    """(sum_i b_i z^i)^k over Z[b]."""
    A = b_alphabet(K)
    base = TruncSeries("z", order, [1] + [GradedPoly.var(A, "b%d" % i) for i in range(1, min(K, order - 1) + 1)], A)
    return base ** k


@lru_cache(maxsize=None)
def _a_alphabet(K: int) -> Alphabet:
    return Alphabet(list(b_alphabet(K).entries) + [Symbol("a%d" % i, -i) for i in range(1, K + 1)])


@lru_cache(maxsize=None)
def _a_power_series(K: int, order: int, k: int) -> TruncSeries:
    """(sum_i a_i b(z)^i)^k over Z[b, a], with b(z) = z + b_1 z^2 + ..."""
    A = _a_alphabet(K)
    bz = TruncSeries("z", order, [0, 1] + [GradedPoly.var(A, "b%d" % i) for i in range(1, min(K, order - 2) + 1)], A)
    acc = TruncSeries("z", order, [1], A)
    power = TruncSeries("z", order, [1], A)
    for i in range(1, min(K, order - 1) + 1):
        power = power * bz
        acc = acc + power * GradedPoly.var(A, "a%d" % i)
    return acc ** k


def _eval_series_at(series: TruncSeries, ell: GradedPoly, alph: Alphabet, trunc) -> GradedPoly:
    out = GradedPoly(alph)
    p = GradedPoly.const(alph, 1)
    for j, c in enumerate(series.coeffs):
        if j:
            p = p.mul_trunc(ell, trunc)
            if not p:
                break
        if c:
            out = out + p.mul_trunc(c.embed(alph), trunc)
    return out


def _class_product(E: KClass, alph: Alphabet, K: int, which: str) -> GradedPoly:
    P = E.base
    trunc = P.ext_trunc(alph)
    order = P.dim + 1
    res = GradedPoly.const(alph, 1)
    for coef, c1 in E.lines:
        if which == "b":
            s = _b_power_series(K, order, coef)
        else:
            s = _a_power_series(K, order, coef)
        ell = c1.embed(alph)
        if not ell:
            # trivial line: P = b_0^coef = 1, and sum a_i b(0)^i = 1
            continue
        res = res.mul_trunc(_eval_series_at(s, ell, alph, trunc), trunc)
    return res


def cf_class(E: KClass, K: int) -> GradedPoly:
    """P(E) = prod over lines of (sum_i c1^i b_i)^(+-coef), over chow gens + b's."""
    alph = E.base.ext_alphabet(K)
    return _class_product(E, alph, K, "b")


def cf_class_a(E: KClass, K: int) -> GradedPoly:
    """Generating class sum_alpha c_alpha(E) a_alpha for the twisted first Chern class b(c1)."""
    alph = E.base.ext_alphabet(K, with_a=True)
    return _class_product(E, alph, K, "a")


def todd_like(X: VarietyDescriptor, K: int, with_a=False) -> GradedPoly:
    """P(-T_X) in the extended alphabet."""
    P = cf_class(-X.tangent, K)
    if with_a:
        P = P.embed(X.chow.ext_alphabet(K, with_a=True))
    return P


def b_partition_key(alpha: tuple, K: int) -> dict:
    m = {}
    for p in alpha:
        m["b%d" % p] = m.get("b%d" % p, 0) + 1
    return m


def class_poly(X: VarietyDescriptor, K: int) -> GradedPoly:
    """sum_alpha c_alpha(X) b_alpha as a polynomial over b_1..b_K."""
    if X.dim > K:
        raise AlgebraError("variety dimension %d exceeds b-alphabet size %d" % (X.dim, K))
    res = X.chow.integrate(cf_class(-X.tangent, K))
    if isinstance(res, int):
        return GradedPoly.const(b_alphabet(K), res)
    return res


def chern_number(X: VarietyDescriptor, alpha: tuple, K: int | None = None) -> int:
    alpha = tuple(sorted(alpha, reverse=True))
    if sum(alpha) != X.dim:
        return 0
    K = max(K or 0, X.dim, 1)
    return class_poly(X, K).coeff(b_partition_key(alpha, K))


def chern_numbers(X: VarietyDescriptor, K: int | None = None) -> dict:
    from .algebra_core import partitions
    K = max(K or 0, X.dim, 1)
    cp = class_poly(X, K)
    return {alpha: cp.coeff(b_partition_key(alpha, K)) for alpha in partitions(X.dim)}


def ordinary_cf_number(X: VarietyDescriptor, E: KClass, alpha: tuple) -> int:
    """deg c_alpha(E) in Chow theory (untwisted); needs |alpha| = dim X."""
    if sum(alpha) != X.dim:
        return 0
    K = max(max(alpha, default=1), 1)
    return X.chow.integrate(cf_class(E, K)).coeff(b_partition_key(alpha, K)) if X.dim else (
        cf_class(E, K).constant() if not alpha else 0)


def segre_pushforward(X: VarietyDescriptor, idx: int, poly: GradedPoly) -> GradedPoly:
    return X.chow.pushforward_xi(poly, idx)


# ---- JSON descriptors


def from_descriptor(d: dict) -> VarietyDescriptor:
    t = d.get("type")
    if t == "Pn":
        return make_projective_space(int(d["n"]))
    if t == "point":
        return point()
    if t == "H":
        return milnor_hypersurface(int(d["m"]), int(d["n"]))
    if t == "product":
        fs = d["factors"]
        if not fs:
            return point()
        X = from_descriptor(fs[0])
        for f in fs[1:]:
            X = product(X, from_descriptor(f))
        X.descriptor = d
        return X
    if t == "pbundle":
        base = from_descriptor(d["base"])
        E = kclass_from_json(base.chow, d["lines"])
        return projective_bundle(base, E, d.get("name", "xi"), d)
    raise AlgebraError("unknown variety descriptor type %r" % t)


def kclass_from_json(P: ChowPresentation, lines) -> KClass:
    """Lines as [coef, {gen: multiplicity, ...}] (linear form) or [coef, GradedPoly-JSON]."""
    out = []
    for coef, form in lines:
        if isinstance(form, dict) and "vars" in form:
            c1 = GradedPoly.from_json_obj(form)
            c1 = c1.embed(P.alphabet)
        else:
            c1 = P.zero()
            for g, m in (form or {}).items():
                c1 = c1 + P.gen(g) * int(m)
        out.append((int(coef), c1))
    return KClass(P, out)
