"""Checks of the dimension bounds for fixed loci, plus small closed-form classifications.

Every bound has the shape "premise => n <= bound".  A report is "satisfied"
when the premise fails or n < bound, "sharp" when n == bound, and "violated"
otherwise.  Premise parameters (q and friends) are taken as small as the data
allows, which gives the strongest bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint

from .algebra_core import GradedPoly, partitions, v2
from .config import Config
from .equivariant import (
    Component, Fixture, InvClass, decompose, fdeg_part, fixture_power, fixture_product,
    inv_to_m, p1xp1_swap, xn,
)
from .lazard import class_of, genus, lattice_basis, lattice_coords, laz_alphabet, c_alpha
from .mring import m_alph

INF = 1 << 30


@dataclass
class BoundReport:
    theorem: str
    inputs: dict
    bound: object
    observed: object
    premise: bool
    status: str = ""
    note: str = ""

    def __post_init__(self):
        if not self.status:
            self.status = judge(self.premise, self.observed, self.bound)

    def to_json_obj(self):
        b = self.bound
        if isinstance(b, Fraction):
            b = str(b) if b.denominator != 1 else int(b)
        out = {"theorem": self.theorem, "inputs": self.inputs, "bound": b, "observed": self.observed,
               "premise": self.premise, "status": self.status}
        if self.note:
            out["note"] = self.note
        return out


def judge(premise, observed, bound) -> str:
    if not premise or bound is None:
        return "satisfied"
    if observed < bound:
        return "satisfied"
    if observed == bound:
        return "sharp"
    return "violated"


# ---- polynomial combinatorics in the X variables


def x_deg(alpha) -> int:
    return sum(alpha)


def x_fdeg(alpha) -> int:
    return sum(fdeg_part(j) for j in alpha)


def _monomials(P):
    """Accept a GradedPoly over x-variables or a list of partitions."""
    if isinstance(P, GradedPoly):
        names = P.alphabet.names
        out = []
        for exps, c in P.exps_items():
            alpha = []
            for nme, e in zip(names, exps):
                if e and nme.startswith("x"):
                    alpha += [int(nme[1:])] * e
            out.append(tuple(sorted(alpha, reverse=True)))
        return out
    return [tuple(sorted(a, reverse=True)) for a in P]


def deg_fdeg_bound(P, s: int, which: str = "general") -> BoundReport:
    """deg P against the degree/fdeg bounds for a polynomial in the X variables.

    which: "general" (per-monomial bound with the (s - i)/s terms), "p" (the
    p + (2 + 1/s) fdeg form) or "x2" (deg <= 3 fdeg on Z[X2, ...]).
    """
    mons = _monomials(P)
    if not mons:
        return BoundReport("deg_fdeg", {"s": s}, None, None, False)
    degs = {x_deg(a) for a in mons}
    deg = max(degs)
    fdeg = max(x_fdeg(a) for a in mons)
    if which == "x2":
        prem = all(1 not in a for a in mons)
        return BoundReport("deg_fdeg_even", {"deg": deg, "fdeg": fdeg}, 3 * fdeg, deg, prem)
    best = None
    best_p = None
    for a in mons:
        small_odd = [j for j in a if j % 2 == 1 and j < 2 * s + 1]
        p = len(small_odd)
        if which == "p":
            b = p + (2 + Fraction(1, s)) * fdeg
        else:
            b = sum(Fraction(s - (j - 1) // 2, s) for j in small_odd) + (2 + Fraction(1, s)) * fdeg
        if best is None or b < best:
            best, best_p = b, p
    name = "deg_fdeg_p" if which == "p" else "deg_fdeg"
    return BoundReport(name, {"s": s, "deg": deg, "fdeg": fdeg, "p": best_p}, best, deg, len(degs) == 1)


def fdeg_of_class(x: GradedPoly, config: Config | None = None) -> int:
    """fdeg of the mod-2 coordinate polynomial of a homogeneous class."""
    config = config or Config()
    if not x:
        return -INF
    d = -next(iter(x.degrees()))
    coords = lattice_coords(x, d, config)
    odd = [b for b, c in coords.items() if c % 2]
    return max((x_fdeg(b) for b in odd), default=-INF)


# ---- fixed-locus data


def fixed_parts(f: Fixture, config: Config) -> dict:
    """{i: class of the union of the i-dimensional fixed components}."""
    if f.factors:
        out = None
        for g in f.factors:
            parts = fixed_parts(g, config)
            if out is None:
                out = parts
                continue
            new = {}
            for i, a in out.items():
                for j, b in parts.items():
                    p = a * b
                    new[i + j] = new[i + j] + p if i + j in new else p
            out = new
        return {i: p for i, p in out.items() if p}
    L = laz_alphabet(config)
    out = {}
    for c in f.components:
        if not c.mult:
            continue
        x = class_of(c.variety, config).scale(c.mult).embed(L)
        out[c.dim] = out[c.dim] + x if c.dim in out else x
    return {i: p for i, p in out.items() if p}


def fixed_dim(f: Fixture, config: Config) -> int:
    parts = fixed_parts(f, config)
    return max(parts, default=-1)


def _order_in(coords: dict, in_ideal, weight2: bool) -> int:
    """min over monomials of (#generator factors [+ v2 of the coefficient])."""
    best = INF
    for beta, c in coords.items():
        if weight2:
            val = v2(c) + sum(1 for p in beta if in_ideal(p))
        else:
            if c % 2 == 0:
                continue
            val = sum(1 for p in beta if in_ideal(p))
        best = min(best, val)
    return best


def _c_alpha_gcd(alpha: tuple, config: Config) -> int:
    return _c_alpha_gcd_cached(alpha, config)


@lru_cache(maxsize=None)
def _c_alpha_gcd_cached(alpha, config):
    B = lattice_basis(sum(alpha), config)
    g = 0
    for row in B.rows:
        g = gcd(g, c_alpha(row, alpha))
    return g


def _lat_coords(x, d, config):
    return lattice_coords(x, d, config) if d > 0 else {(): x.constant()}


# ---- the suite


def bound_suite(f: Fixture, config: Config | None = None, s_max: int | None = None) -> list:
    config = config or Config()
    n = f.n
    parts = fixed_parts(f, config)
    d = max(parts, default=-1)
    reports = []
    if d < 0:
        return reports
    X = f.ambient_class(config)
    Xcoords = _lat_coords(X, n, config) if X else {}
    fixed_total = None
    for p in parts.values():
        fixed_total = p if fixed_total is None else fixed_total + p

    # Boardman: an odd Chern number of X
    odd = any(c % 2 for c in X.terms.values())
    reports.append(BoundReport("odd_chern_number", {"n": n, "d": d}, Fraction(5 * d, 2), n, odd))

    # fdeg of the mod-2 coordinates of [X]
    fd = max((x_fdeg(b) for b, c in Xcoords.items() if c % 2), default=-INF)
    reports.append(BoundReport("fdeg_bound", {"n": n, "d": d}, d, fd, fd > -INF,
                               status=("satisfied" if fd < d else "sharp" if fd == d else "violated")
                               if fd > -INF else "satisfied"))

    # J(s) = (y1, y3, ..., y_{2s-1}) mod 2
    smax = s_max or d + 1
    for s in range(1, smax + 1):
        q = _order_in(Xcoords, lambda p, s=s: p % 2 == 1 and p <= 2 * s - 1, False)
        prem = q < INF
        bound = (2 + Fraction(1, s)) * d + q if prem else None
        reports.append(BoundReport("ideal_power", {"n": n, "d": d, "s": s, "q": q if prem else None},
                                   bound, n, prem))

    # alpha-primitive classes
    best = None
    for alpha in partitions(n):
        ca = c_alpha(X, alpha)
        g = _c_alpha_gcd(alpha, config)
        if g and ca and (ca // g) % 2:
            c = sum(1 for p in alpha if p % 2)
            if best is None or 2 * d + c < best[0]:
                best = (2 * d + c, alpha)
    if best is None:
        reports.append(BoundReport("alpha_primitive", {"n": n, "d": d}, None, n, False))
    else:
        reports.append(BoundReport("alpha_primitive", {"n": n, "d": d, "alpha": list(best[1])},
                                   best[0], n, True))

    # fixed locus in 2^k L: L(1) = (2) and L(2) = (2, y1)
    fcoords = {i: _lat_coords(p, i, config) for i, p in parts.items()}
    v_all = min((v2(c) for co in fcoords.values() for c in co.values()), default=INF)
    prem = n >= 3 * d
    reports.append(BoundReport("fixed_divisibility", {"n": n, "d": d, "two_adic": v_all},
                               3 * d + v_all if v_all < INF else None, n, prem and v_all < INF))
    for s in (1, 2):
        q = min((_order_in(co, lambda p, s=s: p < s, True) for co in fcoords.values()), default=INF)
        prem = q < INF
        reports.append(BoundReport("fixed_ideal_power", {"n": n, "d": d, "s": s, "q": q if prem else None},
                                   (2 + Fraction(1, s)) * d + q if prem else None, n, prem,
                                   note="L(s) handled for s <= 2 only"))

    # a Chern number of the fixed locus not divisible by 2^(q+1)
    q = min((v2(c) for p in parts.values() for c in p.terms.values()), default=INF)
    reports.append(BoundReport("fixed_chern_number", {"n": n, "d": d, "q": q if q < INF else None},
                               q + Fraction(5 * d, 2) if q < INF else None, n, q < INF))

    # fixed-dimensional components
    for j in range(0, d + 1):
        co = fcoords.get(d - j)
        for s in range(1, smax + 1):
            if not co:
                reports.append(BoundReport("component_ideal_power", {"n": n, "d": d, "s": s, "j": j}, None, n, False))
                continue
            q = _order_in(co, lambda p, s=s: p < s, True)
            bound = (2 + Fraction(1, s)) * d + q + (j // 2) * (1 - Fraction(2, s))
            reports.append(BoundReport("component_ideal_power", {"n": n, "d": d, "s": s, "j": j, "q": q},
                                       bound, n, True))
        Fpart = parts.get(d - j)
        best = None
        if Fpart:
            for alpha in partitions(d - j):
                ca = c_alpha(Fpart, alpha)
                g = _c_alpha_gcd(alpha, config) if alpha else 1
                if not ca or not g:
                    continue
                qa = v2(ca // g) if ca % g == 0 else 0
                b = 2 * d + qa + len(alpha) + Fraction(j, 2)
                if best is None or b < best[0]:
                    best = (b, alpha, qa)
        if best is None:
            reports.append(BoundReport("component_chern_number", {"n": n, "d": d, "j": j}, None, n, False))
        else:
            reports.append(BoundReport("component_chern_number",
                                       {"n": n, "d": d, "j": j, "alpha": list(best[1]), "q": best[2]},
                                       best[0], n, True))

    # genera
    chi = genus(X, "euler")
    reports.append(BoundReport("euler_odd", {"n": n, "d": d, "chi": chi}, 2 * d, n, chi % 2 == 1))
    reports.append(BoundReport("euler_odd_dimension", {"n": n, "d": d, "chi": chi}, 2 * d + 1, n,
                               n % 2 == 1 and chi % 4 != 0))
    chif = genus(fixed_total, "euler")
    q = v2(chif)
    reports.append(BoundReport("euler_fixed", {"n": n, "d": d, "chi_fixed": chif, "q": q if chif else None},
                               2 * d + q if chif else None, n, chif != 0))
    psi = genus(X, "psi")
    reports.append(BoundReport("psi_odd", {"n": n, "d": d, "psi": psi}, 2 * d, n, psi % 2 == 1))
    psif = genus(fixed_total, "psi")
    q = v2(psif)
    reports.append(BoundReport("psi_fixed", {"n": n, "d": d, "psi_fixed": psif, "q": q if psif else None},
                               Fraction(9 * d, 4) + q if psif else None, n, psif != 0))

    # top indecomposability, n = 2d + 1
    if n == 2 * d + 1 and d > 0:
        top = Xcoords.get((n,), 0) % 2 == 1
        Fd = fcoords.get(d, {})
        fix = Fd.get((d,), 0) % 2 == 1
        reports.append(BoundReport("top_indecomposable", {"n": n, "d": d, "X_indecomposable": top,
                                                      "F_d_indecomposable": fix},
                                   None, None, True, status="satisfied" if top == fix else "violated"))
    return reports


def worst_status(reports) -> str:
    order = {"satisfied": 0, "sharp": 1, "violated": 2}
    return max((r.status for r in reports), key=lambda s: order[s], default="satisfied")


# ---- curves and small bases


def curve_table(n: int, a: int, b: int, c: int) -> bool:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return True
    if n == 1:
        return c % 2 == 0
    if n == 2:
        return (a + 2 * b + c) % 4 == 0
    return a % (1 << (n - 2)) == 0 and b % (1 << (n - 3)) == 0 and (3 * a - 2 * b - c) % (1 << n) == 0


def curve_class(n: int, a: int, b: int, c: int, config: Config | None = None) -> GradedPoly:
    """a a1 v^(n-1) + b [[P1]] v^(n-1) + c v^n."""
    config = config or Config()
    M = m_alph(config)
    if n == 0 and (a or b):
        raise ValueError("n = 0 admits no curve component")
    if n == 1 and a:
        raise ValueError("n = 1 forces a rank-0 bundle on the curve part, so a = 0")
    out = GradedPoly.monomial(M, {"v": n}, c)
    if b:
        out = out + GradedPoly.monomial(M, {"b1": 1, "v": n - 1}, -2 * b)
    if a:
        out = out + GradedPoly.monomial(M, {"a1": 1, "v": n - 1}, a)
    return out


def trivial_p1() -> Fixture:
    from .chow import KClass, make_projective_space
    X = make_projective_space(1)
    return Fixture("P1-trivial", 1, [Component(X, KClass(X.chow, []))], [(1, {"type": "Pn", "n": 1})])


def basis_I_n_1(n: int, config: Config | None = None) -> list:
    config = config or Config()
    x = lambda j: InvClass.x(j, config)
    one = InvClass.one(config)

    def pw(c, k):
        out = one
        for _ in range(k):
            out = out * c
        return out

    if n == 0:
        return [one]
    if n == 1:
        return [decompose(trivial_p1(), config), x(1)]
    if n == 2:
        return [decompose(p1xp1_swap(), config), x(2), pw(x(1), 2)]
    return [pw(x(1), n - 3) * x(3), pw(x(1), n - 2) * x(2), pw(x(1), n)]


def _inv_matrix(classes):
    keys = sorted({k for c in classes for k in c.poly.terms})
    idx = {k: i for i, k in enumerate(keys)}
    M = flint.fmpz_mat(len(keys), len(classes))
    for j, c in enumerate(classes):
        for k, v in c.poly.terms.items():
            M[idx[k], j] = v
    return M, idx


def rank_in_m(classes, config: Config | None = None) -> int:
    """Rank of the classes after mapping into M[1/v]."""
    config = config or Config()
    polys = [inv_to_m(c, config) for c in classes]
    keys = sorted({k for p in polys for k in p.terms})
    idx = {k: i for i, k in enumerate(keys)}
    M = flint.fmpz_mat(len(keys), len(polys))
    for j, p in enumerate(polys):
        for k, v in p.terms.items():
            M[idx[k], j] = v
    return M.rank()


def coordinates_in(basis, c: InvClass):
    """Integer coordinates of c in the given InvClass family, or None."""
    M, idx = _inv_matrix(list(basis) + [c])
    k = len(basis)
    A = flint.fmpq_mat(M.nrows(), k)
    b = flint.fmpq_mat(M.nrows(), 1)
    for i in range(M.nrows()):
        for j in range(k):
            A[i, j] = M[i, j]
        b[i, 0] = M[i, k]
    At = A.transpose()
    try:
        sol = (At * A).solve(At * b)
    except ZeroDivisionError:
        return None
    if A * sol != b:
        return None
    out = []
    for j in range(k):
        q = sol[j, 0]
        if q.q != 1:
            return None
        out.append(int(q.p))
    return out


def sample_I_n_1(n: int) -> list:
    """Fixtures of dimension n with fixed locus of dimension <= 1."""
    X1 = xn(1)
    pieces = [(X1, 1), (xn(2), 2), (xn(3), 3), (p1xp1_swap(), 2), (trivial_p1(), 1)]
    out = []
    if n == 0:
        return out
    out.append(fixture_power(X1, n))
    for f, k in pieces[1:]:
        if k == n:
            out.append(f)
        elif k < n:
            out.append(fixture_product(fixture_power(X1, n - k), f))
    if n == 3:
        from .equivariant import pab
        out.append(pab(1, 1))
    return out


@dataclass
class IsolatedReport:
    points: int
    c: int
    a: object
    ok: bool

    def to_json_obj(self):
        return {"points": self.points, "rank": self.c, "a": self.a, "verdict": "yes" if self.ok else "no"}


def isolated_points_check(f: Fixture) -> IsolatedReport:
    q = 0
    ranks = set()
    for comp in f.components:
        if comp.dim != 0:
            raise ValueError("fixture has a positive-dimensional fixed component")
        if any(l for _, l in comp.normal.lines):
            raise ValueError("normal bundle is not trivial")
        ranks.add(comp.normal.rank)
        q += comp.mult
    if len(ranks) > 1:
        raise ValueError("normal rank is not constant")
    c = ranks.pop() if ranks else f.n
    if q % (1 << c):
        return IsolatedReport(q, c, None, False)
    return IsolatedReport(q, c, q >> c, True)


def isolated_points_count(points: int, n: int) -> IsolatedReport:
    ok = points % (1 << n) == 0
    return IsolatedReport(points, n, points >> n if ok else None, ok)


# ---- theta table helpers


def theta_expected(kind: str, *params):
    """Closed forms for theta_d of the catalog (None when no closed form applies)."""
    from math import comb
    if kind == "Pab":
        a, b = params
        return (-a - 1, b + 1) if a > b else None
    if kind == "Hij":
        i, j = params
        d = i + j - 1
        if i == 1 and d == 1:
            return (-6, 2)
        if i == 1:
            return (-d - 1, d - 1)
        return (comb(d + 1, i), -comb(d + 1, i))
    if kind == "Xn":
        (n,) = params
        if n % 2 == 0:
            d = n // 2
            return (-d - 1, d)
        return "odd"
    return None


def solve_s(n: int, theta_value) -> int | None:
    """s with theta = (omega_d - 2(d+1)s, -omega_d + 2ds) for odd n = 2d + 1, or None."""
    from .lazard import omega
    d = (n - 1) // 2
    if d == 0:
        return None
    w = omega(d)
    first, second = theta_value
    num = w - first
    if num % (2 * (d + 1)):
        return None
    s = num // (2 * (d + 1))
    return s if second == -w + 2 * d * s else None


def curve_sweep(n_max: int = 4, bound: int = 8, config: Config | None = None) -> list:
    """Compare curve_table with the lattice test on a box of (n, a, b, c).

    partial is linear, so it is computed once per basis class and combined.
    Returns the list of disagreements (empty when everything matches) and the count.
    """
    from .mring import delta_lattice, partial
    config = config or Config()
    rng = range(-bound, bound + 1)
    bad, count = [], 0
    for n in range(0, n_max + 1):
        config.require(n, "class dimension")
        basis = {}
        for name, abc in (("a", (1, 0, 0)), ("b", (0, 1, 0)), ("c", (0, 0, 1))):
            try:
                basis[name] = partial(curve_class(n, *abc, config=config), config)
            except ValueError:
                pass
        lat = delta_lattice(n, config)
        zero = GradedPoly(m_alph(config))
        for a in (rng if "a" in basis else [0]):
            for b in (rng if "b" in basis else [0]):
                for c in rng:
                    y = zero
                    for name, k in (("a", a), ("b", b), ("c", c)):
                        if k:
                            y = y + basis[name].scale(k)
                    lattice = lat.decide(y)[0] if y else True
                    count += 1
                    if lattice != curve_table(n, a, b, c):
                        bad.append((n, a, b, c, lattice))
    return bad, count


def x_monomial_rank(max_weight: int, config: Config | None = None) -> tuple:
    """(rank, count) of the monomials x_alpha, |alpha| <= max_weight, inside M."""
    from .equivariant import x_gen
    config = config or Config()
    polys = []
    for k in range(max_weight + 1):
        for alpha in partitions(k):
            p = GradedPoly.const(m_alph(config), 1)
            for j in alpha:
                p = p * x_gen(j, config)
            polys.append(p)
    keys = sorted({k for p in polys for k in p.terms})
    idx = {k: i for i, k in enumerate(keys)}
    M = flint.fmpz_mat(len(keys), len(polys))
    for j, p in enumerate(polys):
        for k, v in p.terms.items():
            M[idx[k], j] = v
    return M.rank(), len(polys)
