"""Sparse graded polynomials and truncated power series over the integers.

Exponent vectors are packed into a single Python integer (one balanced
base-2**20 digit per symbol), so multiplying monomials is one integer
addition.  Only Laurent symbols may carry negative digits.
"""
from __future__ import annotations

import json
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple

_BITS = 20
_BASE = 1 << _BITS
_HALF = _BASE >> 1


class AlgebraError(ValueError):
    pass


class AlphabetMismatch(AlgebraError):
    pass


class DivisibilityError(AlgebraError):
    def __init__(self, msg, term=None):
        super().__init__(msg)
        self.term = term


class Symbol(NamedTuple):
    name: str
    degree: int
    laurent: bool = False


class Alphabet:
    """Ordered list of symbols with integer degrees."""

    __slots__ = ("entries", "_index", "_decode_cache", "_hash")

    def __init__(self, entries: Iterable):
        ents = tuple(e if isinstance(e, Symbol) else Symbol(*e) for e in entries)
        names = [e.name for e in ents]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate symbol names in alphabet")
        self.entries = ents
        self._index = {e.name: i for i, e in enumerate(ents)}
        self._decode_cache = {}
        self._hash = hash(ents)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Alphabet(%s)" % ", ".join(e.name for e in self.entries)

    @property
    def names(self):
        return [e.name for e in self.entries]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError("unknown symbol %r" % name) from None

    def __contains__(self, name):
        return name in self._index

    def extend(self, more: Iterable) -> "Alphabet":
        return Alphabet(self.entries + tuple(Symbol(*e) for e in more if e[0] not in self._index))

    def key(self, exps) -> int:
        k = 0
        for i, e in enumerate(exps):
            if e:
                if e < 0 and not self.entries[i].laurent:
                    raise AlgebraError("negative exponent for non-Laurent symbol %s" % self.entries[i].name)
                k += e << (_BITS * i) if e > 0 else -((-e) << (_BITS * i))
        return k

    def key_of(self, mapping: dict) -> int:
        exps = [0] * len(self.entries)
        for name, e in mapping.items():
            exps[self.index(name)] = e
        return self.key(exps)

    def decode(self, key: int) -> tuple:
        hit = self._decode_cache.get(key)
        if hit is not None:
            return hit
        out = []
        k = key
        for _ in range(len(self.entries)):
            e = k & (_BASE - 1)
            if e >= _HALF:
                e -= _BASE
            out.append(e)
            k = (k - e) >> _BITS
        if k:
            raise AlgebraError("exponent overflow")
        res = tuple(out)
        if len(self._decode_cache) < 1_000_000:
            self._decode_cache[key] = res
        return res

    def degree_of(self, key: int) -> int:
        return sum(e * s.degree for e, s in zip(self.decode(key), self.entries))

    def slot(self, key: int, i: int) -> int:
        return self.decode(key)[i]


class GradedPoly:
    """Polynomial with integer coefficients over an Alphabet.

    Treated as immutable once built.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms=None, *, _trusted=False):
        self.alphabet = alphabet
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            self.terms = {k: int(c) for k, c in terms.items() if c}

    # construction helpers
    @classmethod
    def const(cls, alphabet, c: int):
        return cls(alphabet, {0: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, alphabet, name: str, power: int = 1):
        i = alphabet.index(name)
        exps = [0] * len(alphabet)
        exps[i] = power
        return cls(alphabet, {alphabet.key(exps): 1}, _trusted=True)

    @classmethod
    def monomial(cls, alphabet, mapping: dict, coeff: int = 1):
        if not coeff:
            return cls(alphabet)
        return cls(alphabet, {alphabet.key_of(mapping): coeff}, _trusted=True)

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def _check(self, other):
        if isinstance(other, int):
            return GradedPoly.const(self.alphabet, other)
        if not isinstance(other, GradedPoly):
            raise TypeError("cannot combine GradedPoly with %r" % type(other))
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("alphabet mismatch: %r vs %r" % (self.alphabet, other.alphabet))
        return other

    def __add__(self, other):
        other = self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GradedPoly(self.alphabet, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.alphabet, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int):
        if not c:
            return GradedPoly(self.alphabet)
        return GradedPoly(self.alphabet, {k: v * c for k, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        return GradedPoly(self.alphabet, _mul_terms(self.terms, other.terms), _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise AlgebraError("negative power of a non-monomial")
            (k, c), = self.terms.items()
            if c not in (1, -1):
                raise AlgebraError("negative power of a non-unit monomial")
            exps = self.alphabet.decode(k)
            return GradedPoly(self.alphabet, {self.alphabet.key([-x * -e for x in exps]): c ** -e}, _trusted=True)
        result = GradedPoly.const(self.alphabet, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_trunc(self, other, trunc: "Truncation"):
        other = self._check(other)
        return GradedPoly(self.alphabet, trunc.mul(self.terms, other.terms), _trusted=True)

    # queries
    def items(self):
        return self.terms.items()

    def exps_items(self):
        dec = self.alphabet.decode
        return [(dec(k), c) for k, c in self.terms.items()]

    def coeff(self, mapping=None) -> int:
        k = self.alphabet.key_of(mapping or {})
        return self.terms.get(k, 0)

    def constant(self) -> int:
        return self.terms.get(0, 0)

    def degrees(self):
        deg = self.alphabet.degree_of
        return {deg(k) for k in self.terms}

    def is_homogeneous(self, degree=None):
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return degree is None or ds == {degree}

    def homogeneous_part(self, degree: int):
        deg = self.alphabet.degree_of
        return GradedPoly(self.alphabet, {k: c for k, c in self.terms.items() if deg(k) == degree}, _trusted=True)

    def homogeneous_parts(self):
        deg = self.alphabet.degree_of
        parts = {}
        for k, c in self.terms.items():
            parts.setdefault(deg(k), {})[k] = c
        return {d: GradedPoly(self.alphabet, t, _trusted=True) for d, t in parts.items()}

    def filter(self, pred: Callable[[tuple], bool]):
        dec = self.alphabet.decode
        return GradedPoly(self.alphabet, {k: c for k, c in self.terms.items() if pred(dec(k))}, _trusted=True)

    def uses(self, name: str) -> bool:
        i = self.alphabet.index(name)
        dec = self.alphabet.decode
        return any(dec(k)[i] for k in self.terms)

    def max_exponent(self, name: str) -> int:
        i = self.alphabet.index(name)
        dec = self.alphabet.decode
        return max((dec(k)[i] for k in self.terms), default=0)

    def content(self) -> int:
        from math import gcd
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def exact_div(self, den: int):
        return exact_div(self, den)

    # change of ring
    def embed(self, target: Alphabet, rename=None):
        """Re-express in a larger alphabet (symbols matched by name)."""
        rename = rename or {}
        src = self.alphabet
        idx = [target.index(rename.get(s.name, s.name)) for s in src.entries]
        dec = src.decode
        out = {}
        for k, c in self.terms.items():
            exps = [0] * len(target)
            for i, e in zip(idx, dec(k)):
                exps[i] += e
            out[target.key(exps)] = c
        return GradedPoly(target, out, _trusted=True)

    def substitute(self, images: dict, target: Alphabet, trunc=None):
        """Ring morphism: each symbol name maps to a GradedPoly over target (or int).

        Symbols missing from ``images`` are kept (must exist in target).
        """
        src = self.alphabet
        gens = []
        for s in src.entries:
            img = images.get(s.name)
            if img is None:
                img = GradedPoly.var(target, s.name)
            elif isinstance(img, int):
                img = GradedPoly.const(target, img)
            elif img.alphabet != target:
                raise AlphabetMismatch("substitution image for %s has wrong alphabet" % s.name)
            gens.append(img)
        cache = [dict() for _ in gens]

        def power(i, e):
            hit = cache[i].get(e)
            if hit is None:
                if e < 0:
                    hit = gens[i] ** e
                elif e == 0:
                    hit = GradedPoly.const(target, 1)
                else:
                    prev = power(i, e - 1)
                    hit = prev.mul_trunc(gens[i], trunc) if trunc else prev * gens[i]
                cache[i][e] = hit
            return hit

        acc = {}
        dec = src.decode
        for k, c in self.terms.items():
            term = GradedPoly.const(target, c)
            for i, e in enumerate(dec(k)):
                if e:
                    p = power(i, e)
                    term = term.mul_trunc(p, trunc) if trunc else term * p
                    if not term:
                        break
            for kk, cc in term.terms.items():
                s = acc.get(kk, 0) + cc
                if s:
                    acc[kk] = s
                else:
                    acc.pop(kk, None)
        return GradedPoly(target, acc, _trusted=True)

    def evaluate_int(self, values: dict) -> int:
        """Evaluate at integers; Laurent symbols must map to +-1."""
        total = 0
        dec = self.alphabet.decode
        names = self.alphabet.names
        for k, c in self.terms.items():
            t = c
            for name, e in zip(names, dec(k)):
                if e:
                    x = values[name]
                    if e < 0:
                        if x not in (1, -1):
                            raise AlgebraError("cannot invert %r" % x)
                        t *= x ** (-e)
                    else:
                        t *= x ** e
            total += t
        return total

    # serialization
    def sorted_terms(self):
        items = self.exps_items()
        items.sort(key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        return items

    def to_json_obj(self):
        return {
            "vars": [[s.name, s.degree, s.laurent] for s in self.alphabet.entries],
            "terms": [[list(e), str(c)] for e, c in self.sorted_terms()],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        try:
            alph = Alphabet(Symbol(str(n), int(d), bool(l)) for n, d, l in obj["vars"])
            terms = {}
            for exps, c in obj["terms"]:
                if len(exps) != len(alph):
                    raise AlgebraError("exponent vector length does not match vars")
                k = alph.key([int(e) for e in exps])
                terms[k] = terms.get(k, 0) + int(c)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, AlgebraError):
                raise
            raise AlgebraError("malformed GradedPoly JSON: %s" % exc) from None
        return cls(alph, terms)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        return "GradedPoly(%s)" % self.pretty()

    def pretty(self):
        if not self.terms:
            return "0"
        names = self.alphabet.names
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else "%s^%d" % (n, e) for n, e in zip(names, exps) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%d*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


class Truncation:
    """Quotient by a monomial ideal: a weighted-degree cap plus per-symbol caps.

    Used for Chow rings of products of projective spaces (h^(m+1) = 0) and
    for dropping everything above the top Chow degree.
    """

    def __init__(self, alphabet: Alphabet, weights: dict, bound: int, caps: dict | None = None):
        self.alphabet = alphabet
        names = set(weights) | set(caps or {})
        self.slots = sorted(alphabet.index(n) for n in names)
        self.w = tuple(weights.get(alphabet.entries[i].name, 0) for i in self.slots)
        big = 1 << 30
        self.cap = tuple((caps or {}).get(alphabet.entries[i].name, big) for i in self.slots)
        self.bound = bound

    def signature(self, key):
        exps = self.alphabet.decode(key)
        return tuple(exps[i] for i in self.slots)

    def ok(self, sig) -> bool:
        return sum(a * b for a, b in zip(sig, self.w)) <= self.bound and all(e <= c for e, c in zip(sig, self.cap))

    def _group(self, terms):
        groups = {}
        sig = self.signature
        for k, c in terms.items():
            groups.setdefault(sig(k), []).append((k, c))
        return groups

    def reduce(self, terms: dict) -> dict:
        return {k: c for k, c in terms.items() if self.ok(self.signature(k))}

    def mul(self, a: dict, b: dict) -> dict:
        ga, gb = self._group(a), self._group(b)
        out = {}
        get = out.get
        for sa, la in ga.items():
            wa = sum(x * y for x, y in zip(sa, self.w))
            if wa > self.bound:
                continue
            for sb, lb in gb.items():
                if wa + sum(x * y for x, y in zip(sb, self.w)) > self.bound:
                    continue
                if any(x + y > c for x, y, c in zip(sa, sb, self.cap)):
                    continue
                for ka, ca in la:
                    for kb, cb in lb:
                        k = ka + kb
                        out[k] = get(k, 0) + ca * cb
        return {k: c for k, c in out.items() if c}


def exact_div(num: GradedPoly, den: int) -> GradedPoly:
    if den == 0:
        raise ZeroDivisionError("division by zero")
    out = {}
    for k, c in num.terms.items():
        q, r = divmod(c, den)
        if r:
            exps = num.alphabet.decode(k)
            mono = {n: e for n, e in zip(num.alphabet.names, exps) if e}
            raise DivisibilityError("coefficient %d of %r not divisible by %d" % (c, mono, den), term=(mono, c))
        out[k] = q
    return GradedPoly(num.alphabet, out, _trusted=True)


def poly_arith(op: str, lhs: GradedPoly, rhs):
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "pow":
        if not isinstance(rhs, int):
            raise AlgebraError("pow needs an integer exponent")
        return lhs ** rhs
    raise AlgebraError("unknown op %r" % op)


# ----------------------------------------------------------------------------
# truncated power series in one variable


class TruncSeries:
    """sum_{j < order} coeffs[j] * var**j, coefficients GradedPoly over a common alphabet."""

    __slots__ = ("var", "order", "coeffs", "alphabet")

    def __init__(self, var: str, order: int, coeffs, alphabet: Alphabet):
        if order < 1:
            raise AlgebraError("truncation order must be >= 1")
        cs = list(coeffs)[:order]
        zero = GradedPoly(alphabet)
        cs = [GradedPoly.const(alphabet, c) if isinstance(c, int) else c for c in cs]
        for c in cs:
            if c.alphabet != alphabet:
                raise AlphabetMismatch("series coefficient alphabet mismatch")
            if var in alphabet and c.uses(var):
                raise AlgebraError("series coefficient contains the series variable")
        cs += [zero] * (order - len(cs))
        self.var, self.order, self.coeffs, self.alphabet = var, order, cs, alphabet

    @classmethod
    def from_ints(cls, var, order, ints, alphabet):
        return cls(var, order, [GradedPoly.const(alphabet, c) for c in ints], alphabet)

    @classmethod
    def identity(cls, var, order, alphabet):
        return cls(var, order, [0, 1], alphabet)

    def __getitem__(self, j):
        return self.coeffs[j] if 0 <= j < self.order else GradedPoly(self.alphabet)

    def __eq__(self, other):
        return (isinstance(other, TruncSeries) and self.order == other.order
                and self.alphabet == other.alphabet and self.coeffs == other.coeffs)

    def __repr__(self):
        return "TruncSeries(%s; %s)" % (self.var, ", ".join(c.pretty() for c in self.coeffs))

    def _like(self, coeffs):
        return TruncSeries(self.var, self.order, coeffs, self.alphabet)

    def _same(self, other):
        if self.order != other.order or self.alphabet != other.alphabet:
            raise AlgebraError("series with different orders or alphabets")

    def __add__(self, other):
        self._same(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return self._like([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def scale(self, c):
        return self._like([a * c for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, GradedPoly)):
            return self._like([a * other for a in self.coeffs])
        self._same(other)
        T = self.order
        out = [GradedPoly(self.alphabet) for _ in range(T)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(T - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return series_reciprocal(self) ** (-e)
        result = self._like([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int):
        """Multiply by var**k (k >= 0), truncating."""
        return self._like([GradedPoly(self.alphabet)] * k + self.coeffs[: self.order - k])

    def valuation(self):
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return self.order

    def map_coeffs(self, f):
        return self._like([f(c) for c in self.coeffs])


def series_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """f(g(x)) through order T-1 (Horner)."""
    f._same(g)
    if g.coeffs[0]:
        raise AlgebraError("inner series has a nonzero constant term")
    acc = f._like([])
    for c in reversed(f.coeffs):
        acc = acc * g
        acc = acc._like([acc.coeffs[0] + c] + acc.coeffs[1:])
    return acc


def series_reciprocal(f: TruncSeries) -> TruncSeries:
    c0 = f.coeffs[0]
    if not (c0 == 1 or c0 == -1):
        raise AlgebraError("constant term of series is not a unit in Z")
    u = c0.constant()
    T = f.order
    out = [GradedPoly.const(f.alphabet, u)]
    for n in range(1, T):
        s = GradedPoly(f.alphabet)
        for j in range(1, n + 1):
            a = f.coeffs[j]
            if a:
                s = s + a * out[n - j]
        out.append(s.scale(-u))
    return f._like(out)


def series_comp_inverse(f: TruncSeries) -> TruncSeries:
    """Compositional inverse of x + O(x^2), solved order by order."""
    if f.coeffs[0] or not f.coeffs[1] == 1:
        raise AlgebraError("series must be x + higher order terms")
    T = f.order
    g = f._like([0, 1])
    for n in range(2, T):
        # coefficient n of f(g) with current g; g_n enters linearly with factor 1
        err = series_compose(f, g).coeffs[n]
        coeffs = list(g.coeffs)
        coeffs[n] = coeffs[n] - err
        g = f._like(coeffs)
    return g


# ----------------------------------------------------------------------------
# combinatorics


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None, min_part: int = 1) -> tuple:
    """Partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions(n - first, first, min_part):
            out.append((first,) + rest)
    return tuple(out)


def partitions_upto(n: int, min_part: int = 1) -> list:
    out = []
    for k in range(n + 1):
        out.extend(partitions(k, None, min_part))
    return out


def parse_partition(text: str) -> tuple:
    text = text.strip()
    if not text or text in ("()", "empty"):
        return ()
    parts = tuple(sorted((int(p) for p in text.replace("(", "").replace(")", "").split(",") if p.strip()), reverse=True))
    if any(p <= 0 for p in parts):
        raise AlgebraError("partition parts must be positive")
    return parts


def v2(n: int) -> int:
    """2-adic valuation; v2(0) is infinite (returned as a large number)."""
    if n == 0:
        return 1 << 30
    n = abs(n)
    return (n & -n).bit_length() - 1


class LaurentSeries:
    """sum_k coeffs[k] * var**k, exact for every exponent k < prec."""

    __slots__ = ("var", "coeffs", "prec", "alphabet")

    def __init__(self, var: str, coeffs: dict, prec: int, alphabet: Alphabet):
        self.var, self.prec, self.alphabet = var, prec, alphabet
        self.coeffs = {k: c for k, c in coeffs.items() if k < prec and c}

    @classmethod
    def monomial(cls, var, k, prec, alphabet, coeff=None):
        c = GradedPoly.const(alphabet, 1) if coeff is None else coeff
        return cls(var, {k: c}, prec, alphabet)

    @classmethod
    def from_trunc(cls, s: TruncSeries, shift: int = 0):
        return cls(s.var, {j + shift: c for j, c in enumerate(s.coeffs)}, s.order + shift, s.alphabet)

    def __getitem__(self, k):
        if k >= self.prec:
            raise AlgebraError("coefficient %d beyond series precision %d" % (k, self.prec))
        return self.coeffs.get(k, GradedPoly(self.alphabet))

    def valuation(self):
        return min(self.coeffs, default=self.prec)

    def __repr__(self):
        return "LaurentSeries(%s; %s; +O(%s^%d))" % (
            self.var, ", ".join("%d: %s" % (k, self.coeffs[k].pretty()) for k in sorted(self.coeffs)), self.var, self.prec)

    def _same(self, other):
        if self.alphabet != other.alphabet or self.var != other.var:
            raise AlgebraError("Laurent series over different rings")

    def __add__(self, other):
        self._same(other)
        prec = min(self.prec, other.prec)
        out = {k: c for k, c in self.coeffs.items() if k < prec}
        for k, c in other.coeffs.items():
            if k < prec:
                out[k] = out[k] + c if k in out else c
        return LaurentSeries(self.var, out, prec, self.alphabet)

    def __neg__(self):
        return LaurentSeries(self.var, {k: -c for k, c in self.coeffs.items()}, self.prec, self.alphabet)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LaurentSeries(self.var, {k: v * c for k, v in self.coeffs.items()}, self.prec, self.alphabet)

    def mul(self, other, trunc=None):
        if isinstance(other, (int, GradedPoly)):
            if trunc is not None and isinstance(other, GradedPoly):
                return LaurentSeries(self.var, {k: v.mul_trunc(other, trunc) for k, v in self.coeffs.items()},
                                     self.prec, self.alphabet)
            return LaurentSeries(self.var, {k: v * other for k, v in self.coeffs.items()}, self.prec, self.alphabet)
        self._same(other)
        prec = min(self.prec + other.valuation(), other.prec + self.valuation())
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j >= prec:
                    continue
                p = a.mul_trunc(b, trunc) if trunc is not None else a * b
                if p:
                    out[i + j] = out[i + j] + p if i + j in out else p
        return LaurentSeries(self.var, out, prec, self.alphabet)

    __mul__ = mul

    def pow(self, e: int, trunc=None):
        if e < 0:
            return self.inverse(trunc).pow(-e, trunc)
        result = LaurentSeries.monomial(self.var, 0, 1 << 40, self.alphabet)
        base = self
        while e:
            if e & 1:
                result = result.mul(base, trunc)
            e >>= 1
            if e:
                base = base.mul(base, trunc)
        return result

    def inverse(self, trunc=None):
        """Inverse when the lowest coefficient is +-1."""
        val = self.valuation()
        lead = self.coeffs.get(val)
        if lead is None or not (lead == 1 or lead == -1):
            raise AlgebraError("leading coefficient is not a unit")
        u = lead.constant()
        n = self.prec - val
        rest = {k - val: c for k, c in self.coeffs.items()}
        out = {0: GradedPoly.const(self.alphabet, u)}
        for m in range(1, n):
            s = GradedPoly(self.alphabet)
            for j in range(1, m + 1):
                a = rest.get(j)
                b = out.get(m - j)
                if a is not None and b is not None:
                    s = s + (a.mul_trunc(b, trunc) if trunc is not None else a * b)
            if s:
                out[m] = s.scale(-u)
        return LaurentSeries(self.var, {k - val: c for k, c in out.items()}, n - val, self.alphabet)

    def truncate(self, prec):
        return LaurentSeries(self.var, self.coeffs, min(prec, self.prec), self.alphabet)

    def map_coeffs(self, f, alphabet=None):
        alph = alphabet or self.alphabet
        return LaurentSeries(self.var, {k: f(c) for k, c in self.coeffs.items()}, self.prec, alph)

    def equal_upto(self, other, prec):
        for k in set(self.coeffs) | set(other.coeffs):
            if k < prec and self[k] != other[k]:
                return False
        return True
