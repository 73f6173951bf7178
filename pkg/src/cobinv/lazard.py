"""The Lazard ring inside Z[b1, b2, ...], spanned by classes of varieties."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd

import flint

from .algebra_core import AlgebraError, GradedPoly, partitions, v2
from .chow import VarietyDescriptor, class_poly, make_projective_space, milnor_hypersurface
from .config import Config
from .fgl import b_alphabet


class LatticeError(AlgebraError):
    """Element outside the lattice; carries the degree and residual vector."""

    def __init__(self, msg, degree=None, residual=None):
        super().__init__(msg)
        self.degree = degree
        self.residual = residual


def laz_alphabet(config: Config | None = None):
    config = config or Config()
    return b_alphabet(config.T)


def class_of(X: VarietyDescriptor, config: Config | None = None) -> GradedPoly:
    config = config or Config()
    config.require(X.dim, "variety dimension")
    return class_poly(X, config.T)


def b_monomial(alpha: tuple) -> dict:
    m = {}
    for p in alpha:
        m["b%d" % p] = m.get("b%d" % p, 0) + 1
    return m


def c_alpha(x: GradedPoly, alpha: tuple) -> int:
    alpha = tuple(p for p in alpha if p)
    if any("b%d" % p not in x.alphabet for p in alpha):
        return 0
    return x.coeff(b_monomial(alpha))


def omega_prime_power(m: int) -> int:
    n = m + 1
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else 1
    return 1


def omega_gcd(m: int) -> int:
    g = 0
    for i in range(1, (m + 1) // 2 + 1):
        g = gcd(g, comb(m + 1, i))
    return g


def omega(m: int) -> int:
    if m < 1:
        raise AlgebraError("omega needs m >= 1")
    a, b = omega_prime_power(m), omega_gcd(m)
    if a != b:
        raise AlgebraError("omega mismatch at m=%d: %d vs %d" % (m, a, b))
    return a


def sequential_ext_gcd(values: list) -> tuple:
    """(g, coefficients) with sum c_i v_i = g >= 0, folding left to right."""
    g, coeffs = 0, [0] * len(values)
    for k, val in enumerate(values):
        if val == 0 or (g and val % g == 0):
            continue
        if g == 0:
            g, coeffs[k] = abs(val), (1 if val > 0 else -1)
            continue
        # extended Euclid on (g, val)
        r0, r1, s0, s1, t0, t1 = g, val, 1, 0, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0 < 0:
            r0, s0, t0 = -r0, -s0, -t0
        coeffs = [c * s0 for c in coeffs]
        coeffs[k] = t0
        g = r0
    return g, coeffs


@dataclass
class Generator:
    d: int
    poly: GradedPoly
    sources: list      # names of the varieties combined
    coeffs: list       # integer coefficients used


@lru_cache(maxsize=None)
def _generators(config: Config) -> dict:
    return {}


def generator(d: int, config: Config | None = None) -> Generator:
    """y_d with c_(d)(y_d) = omega_d, from P^d and H_{i,d+1-i}."""
    config = config or Config()
    cache = _generators(config)
    if d in cache:
        return cache[d]
    if d < 1 or d > config.T:
        raise AlgebraError("generator degree %d outside 1..%d" % (d, config.T))
    vars_ = [("P%d" % d, make_projective_space(d))]
    for i in range(1, (d + 1) // 2 + 1):
        vars_.append(("H_%d,%d" % (i, d + 1 - i), milnor_hypersurface(i, d + 1 - i)))
    classes = [class_poly(X, config.T) for _, X in vars_]
    values = [c_alpha(c, (d,)) for c in classes]
    g, coeffs = sequential_ext_gcd(values)
    if g != omega(d):
        raise AlgebraError("gcd %d of top Chern numbers differs from omega_%d" % (g, d))
    y = GradedPoly(classes[0].alphabet)
    for c, cl in zip(coeffs, classes):
        if c:
            y = y + cl * c
    gen = Generator(d, y, [n for n, _ in vars_], coeffs)
    cache[d] = gen
    return gen


def synthesize_generators(d_max: int, config: Config | None = None) -> list:
    config = config or Config()
    config.require(d_max, "generator degree")
    return [generator(d, config) for d in range(1, d_max + 1)]


def y_monomial(beta: tuple, config: Config) -> GradedPoly:
    return _y_monomial(tuple(sorted(beta, reverse=True)), config)


@lru_cache(maxsize=None)
def _y_monomial(beta: tuple, config: Config) -> GradedPoly:
    if not beta:
        return GradedPoly.const(laz_alphabet(config), 1)
    return _y_monomial(beta[1:], config) * generator(beta[0], config).poly


def b_monomials(d: int) -> list:
    return list(partitions(d))


def coeff_vector(x: GradedPoly, d: int) -> list:
    return [c_alpha(x, a) for a in b_monomials(d)]


@dataclass
class LatticeBasis:
    d: int
    rows: list          # GradedPoly rows of the Hermite normal form
    monomials: list     # b-partitions indexing columns
    matrix: object      # flint fmpz_mat of the rows
    y_matrix: object    # flint fmpz_mat of the y_beta vectors (rows)
    betas: list

    def rank(self):
        return len(self.rows)


@lru_cache(maxsize=None)
def _lattice_basis(d: int, config: Config) -> LatticeBasis:
    mons = b_monomials(d)
    betas = list(partitions(d))
    ys = [coeff_vector(y_monomial(b, config), d) for b in betas]
    Y = flint.fmpz_mat(ys) if ys else flint.fmpz_mat(0, len(mons))
    H = Y.hnf()
    rows = []
    mat_rows = []
    A = laz_alphabet(config)
    for i in range(H.nrows()):
        r = [int(H[i, j]) for j in range(H.ncols())]
        if any(r):
            mat_rows.append(r)
            p = GradedPoly(A)
            for c, a in zip(r, mons):
                if c:
                    p = p + GradedPoly.monomial(A, b_monomial(a), c)
            rows.append(p)
    M = flint.fmpz_mat(mat_rows) if mat_rows else flint.fmpz_mat(0, len(mons))
    return LatticeBasis(d, rows, mons, M, Y, betas)


def lattice_basis(d: int, config: Config | None = None) -> LatticeBasis:
    config = config or Config()
    config.require(d, "lattice degree")
    return _lattice_basis(d, config)


def lattice_coords(x: GradedPoly, d: int, config: Config | None = None) -> dict:
    """Integer coordinates of x in the basis y_beta, |beta| = d."""
    config = config or Config()
    if d == 0:
        return {(): x.constant()}
    B = lattice_basis(d, config)
    vec = coeff_vector(x, d)
    extra = GradedPoly(x.alphabet, {k: c for k, c in x.terms.items() if -x.alphabet.degree_of(k) != d})
    if extra:
        raise LatticeError("element is not homogeneous of degree -%d" % d, d)
    n = len(B.betas)
    # y-vectors are independent: solve Y^T c = vec over Q, then check integrality
    Yq = flint.fmpq_mat(B.y_matrix.transpose())
    rhs = flint.fmpq_mat([[v] for v in vec])
    try:
        sol = Yq.solve(rhs)
    except (ZeroDivisionError, ValueError):
        sol = None
    if sol is None or Yq * sol != rhs:
        raise LatticeError("degree %d: not in the span of the generator monomials" % d, d, vec)
    out = {}
    for beta, i in zip(B.betas, range(n)):
        q = sol[i, 0]
        if q.q != 1:
            raise LatticeError("degree %d: coordinates not integral (not in the Lazard lattice)" % d, d, vec)
        if q.p:
            out[beta] = int(q.p)
    return out


def in_lattice(x: GradedPoly, d: int, config: Config | None = None) -> bool:
    try:
        lattice_coords(x, d, config)
        return True
    except LatticeError:
        return False


def genus(x: GradedPoly, which: str) -> int:
    vals = {}
    for s in x.alphabet.entries:
        i = int(s.name[1:])
        if which == "euler":
            vals[s.name] = (-1) ** i
        elif which == "psi":
            vals[s.name] = 0 if i % 2 else (-1) ** (i // 2)
        else:
            raise AlgebraError("unknown genus %r" % which)
    return x.evaluate_int(vals)


def homogeneous_dim(x: GradedPoly) -> int:
    degs = x.degrees()
    if len(degs) != 1:
        raise AlgebraError("element is not homogeneous")
    return -next(iter(degs))


def is_decomposable_mod2(x: GradedPoly, config: Config | None = None) -> bool:
    d = homogeneous_dim(x)
    if d < 1:
        raise AlgebraError("decomposability needs positive dimension")
    coords = lattice_coords(x, d, config)
    return coords.get((d,), 0) % 2 == 0


def mod2_coords(x: GradedPoly, d: int, config: Config | None = None) -> dict:
    return {b: 1 for b, c in lattice_coords(x, d, config).items() if c % 2}


def two_adic_content(x: GradedPoly, d: int, config: Config | None = None) -> int:
    """Largest s with x in 2^s L (infinite for 0)."""
    coords = lattice_coords(x, d, config)
    return min((v2(c) for c in coords.values()), default=1 << 30)
