"""Exact arithmetic over Q and over cyclotomic fields Q(zeta_N).

Every scalar in this package is a `Cyc`: a residue modulo the N-th
cyclotomic polynomial, stored in the power basis 1, z, ..., z^(phi(N)-1)
with one shared integer denominator.  Equality is decided symbolically
(promote both operands to the lcm conductor, compare coefficient
vectors); no floating point is ever consulted for a decision.

Conductors are never reduced: an element constructed at conductor 12
stays at conductor 12 even if it happens to lie in Q.  Promotion to a
common conductor is cheap and makes equality decidable, which is all
the rest of the package needs.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

# Rational scalars are plain stdlib fractions; they already carry the
# canonical-form invariants (reduced, positive denominator).
Rational = Fraction


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials known to divide exactly (monic divisor)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return q


def cyclotomic_poly(n: int) -> list[int]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_exact(poly, cyclotomic_poly_cached(d))
    return poly


_CYCLO_CACHE: dict[int, list[int]] = {}


def cyclotomic_poly_cached(n: int) -> list[int]:
    poly = _CYCLO_CACHE.get(n)
    if poly is None:
        poly = cyclotomic_poly(n)
        _CYCLO_CACHE[n] = poly
    return poly


class _Field:
    """Per-conductor tables: reduction rows and powers of zeta."""

    __slots__ = ("n", "phi", "modulus", "red_rows", "zeta_pows")

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        self.modulus = cyclotomic_poly_cached(n)
        # red_rows[j] = x^(phi + j) mod Phi_n as an integer vector
        deg = self.phi
        rows: list[tuple[int, ...]] = []
        cur = [-c for c in self.modulus[:deg]]  # x^phi
        rows.append(tuple(cur))
        for _ in range(deg - 2 if deg >= 2 else 0):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for k in range(deg):
                    nxt[k] -= top * self.modulus[k]
            cur = nxt
            rows.append(tuple(cur))
        self.red_rows = rows
        # zeta_pows[k] = x^k mod Phi_n for 0 <= k < n
        pows: list[tuple[int, ...]] = []
        for k in range(n):
            if k < deg:
                vec = [0] * deg
                vec[k] = 1
            else:
                vec = list(rows[k - deg]) if k - deg < len(rows) else None
                if vec is None:
                    prev = list(pows[k - 1])
                    vec = [0] + prev[:-1]
                    top = prev[-1]
                    if top:
                        for t in range(deg):
                            vec[t] -= top * self.modulus[t]
            pows.append(tuple(vec))
        self.zeta_pows = pows

    def reduce(self, vec: list[int]) -> list[int]:
        """Reduce an integer vector of length <= 2*phi-1 modulo Phi_n."""
        deg = self.phi
        out = list(vec[:deg]) + [0] * (deg - min(deg, len(vec)))
        for j in range(deg, len(vec)):
            c = vec[j]
            if c:
                row = self.red_rows[j - deg]
                for k in range(deg):
                    out[k] += c * row[k]
        return out


_FIELDS: dict[int, _Field] = {}


def _field(n: int) -> _Field:
    f = _FIELDS.get(n)
    if f is None:
        f = _Field(n)
        _FIELDS[n] = f
    return f


class Cyc:
    """Element of Q(zeta_N) in canonical power-basis form.

    Stored as integer numerator vector plus a single positive integer
    denominator with gcd(content, den) = 1.  Instances are immutable and
    deliberately unhashable: two equal elements may live at different
    conductors, so dictionary keys must go through :meth:`key`.
    """

    __slots__ = ("conductor", "num", "den")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, conductor: int, num: tuple[int, ...], den: int, _raw: bool = False):
        if _raw:
            self.conductor = conductor
            self.num = num
            self.den = den
            return
        f = _field(conductor)
        if len(num) != f.phi:
            raise ValueError(f"coefficient vector must have length {f.phi} for conductor {conductor}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.conductor = conductor
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q: Fraction | int, conductor: int = 1) -> "Cyc":
        q = Fraction(q)
        f = _field(conductor)
        vec = [0] * f.phi
        vec[0] = q.numerator
        return Cyc(conductor, tuple(vec), q.denominator)

    @staticmethod
    def zero(conductor: int = 1) -> "Cyc":
        return Cyc(conductor, tuple([0] * _field(conductor).phi), 1, _raw=True)

    @staticmethod
    def one(conductor: int = 1) -> "Cyc":
        return Cyc.from_rational(1, conductor)

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.num)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return Fraction(self.num[0], self.den)

    def lift(self, target: int) -> "Cyc":
        """Promote to a conductor that is a multiple of the current one."""
        n = self.conductor
        if target == n:
            return self
        if target % n != 0:
            raise ValueError(f"cannot promote conductor {n} to non-multiple {target}")
        f = _field(target)
        step = target // n
        vec = [0] * f.phi
        for k, c in enumerate(self.num):
            if c:
                row = f.zeta_pows[(k * step) % target]
                for t in range(f.phi):
                    vec[t] += c * row[t]
        return Cyc(target, tuple(vec), self.den)

    def key(self, target: int | None = None) -> tuple:
        """Hashable canonical fingerprint at the given conductor."""
        if target is None:
            target = self.conductor
        a = self.lift(target)
        return (target, a.num, a.den)

    # -- arithmetic ---------------------------------------------------

    def _common(self, other: "Cyc") -> tuple["Cyc", "Cyc"]:
        if self.conductor == other.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = _coerce(other, self.conductor)
        a, b = self._common(other)
        da, db = a.den, b.den
        if da == db:
            vec = tuple(x + y for x, y in zip(a.num, b.num))
            return Cyc(a.conductor, vec, da)
        vec = tuple(x * db + y * da for x, y in zip(a.num, b.num))
        return Cyc(a.conductor, vec, da * db)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = _coerce(other, self.conductor)
        a, b = self._common(other)
        da, db = a.den, b.den
        if da == db:
            vec = tuple(x - y for x, y in zip(a.num, b.num))
            return Cyc(a.conductor, vec, da)
        vec = tuple(x * db - y * da for x, y in zip(a.num, b.num))
        return Cyc(a.conductor, vec, da * db)

    def __rsub__(self, other):
        return _coerce(other, self.conductor).__sub__(self)

    def __neg__(self):
        return Cyc(self.conductor, tuple(-c for c in self.num), self.den, _raw=True)

    def __mul__(self, other):
        other = _coerce(other, self.conductor)
        a, b = self._common(other)
        f = _field(a.conductor)
        deg = f.phi
        an, bn = a.num, b.num
        if deg == 1:
            return Cyc(a.conductor, (an[0] * bn[0],), a.den * b.den)
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        vec = f.reduce(conv)
        return Cyc(a.conductor, tuple(vec), a.den * b.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "Cyc":
        """Multiplicative inverse via extended gcd with the cyclotomic modulus."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        f = _field(self.conductor)
        if f.phi == 1:
            q = Fraction(self.den, self.num[0])
            return Cyc.from_rational(q, self.conductor)
        a = [Fraction(c, self.den) for c in self.num]
        b = [Fraction(c) for c in f.modulus]
        # extended Euclid: find u with u*a = gcd (a unit) mod Phi
        r0, r1 = b, a
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg_of(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i] != 0:
                    return i
            return -1

        def sub_scaled(p, q, c, shift):
            out = list(p) + [Fraction(0)] * max(0, deg_of(q) + shift + 1 - len(p))
            for i in range(deg_of(q) + 1):
                out[i + shift] -= c * q[i]
            return out

        while deg_of(r1) > 0:
            while deg_of(r0) >= deg_of(r1):
                d0, d1 = deg_of(r0), deg_of(r1)
                c = r0[d0] / r1[d1]
                r0 = sub_scaled(r0, r1, c, d0 - d1)
                s0 = sub_scaled(s0, s1, c, d0 - d1)
            r0, r1 = r1, r0
            s0, s1 = s1, s0
        const = r1[0]
        if const == 0:
            raise ZeroDivisionError("element is a zero divisor (should not happen in a field)")
        inv = [c / const for c in s1]
        inv = inv[: f.phi] + [Fraction(0)] * max(0, f.phi - len(inv))
        # fold back into integer vector + denominator
        den = 1
        for c in inv:
            den = lcm(den, c.denominator)
        vec = tuple(int(c * den) for c in inv)
        out = Cyc(self.conductor, vec, den)
        return out

    def __truediv__(self, other):
        other = _coerce(other, self.conductor)
        return self * other.inverse()

    def galois(self, t: int) -> "Cyc":
        """Field automorphism zeta_N -> zeta_N^t for t coprime to N."""
        n = self.conductor
        if n == 1:
            return self
        if gcd(t, n) != 1:
            raise ValueError(f"galois exponent {t} not coprime to conductor {n}")
        f = _field(n)
        vec = [0] * f.phi
        for k, c in enumerate(self.num):
            if c:
                row = f.zeta_pows[(k * t) % n]
                for j in range(f.phi):
                    vec[j] += c * row[j]
        return Cyc(n, tuple(vec), self.den)

    def conjugate(self) -> "Cyc":
        n = self.conductor
        if n == 1:
            return self
        return self.galois(n - 1)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.conductor)
        acc = 0j
        for k, c in enumerate(self.num):
            if c:
                acc += c * z**k
        return acc / self.den

    # -- comparison & display ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._common(other)
        return a.num == b.num and a.den == b.den

    def __repr__(self):
        if self.is_rational():
            q = self.rational_value()
            return f"Cyc({q})"
        terms = []
        for k, c in enumerate(self.num):
            if c:
                terms.append(f"{c}*z{self.conductor}^{k}" if k else str(c))
        body = " + ".join(terms)
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"Cyc[{self.conductor}]({body})"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        coeffs = []
        for c in self.num:
            q = Fraction(c, self.den)
            coeffs.append([str(q.numerator), str(q.denominator)])
        return {"conductor": self.conductor, "coeffs": coeffs}

    @staticmethod
    def from_json(obj: dict) -> "Cyc":
        n = int(obj["conductor"])
        fracs = [Fraction(int(p[0]), int(p[1])) for p in obj["coeffs"]]
        den = 1
        for q in fracs:
            den = lcm(den, q.denominator)
        vec = tuple(int(q * den) for q in fracs)
        return Cyc(n, vec, den)


def _coerce(x, conductor_hint: int = 1) -> Cyc:
    if isinstance(x, Cyc):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyc.from_rational(x, 1)
    raise TypeError(f"cannot coerce {type(x).__name__} to Cyc")


# -- module-level operation surface -------------------------------------


def cyc_root_of_unity(n: int, k: int) -> Cyc:
    """Canonical representation of zeta_n^k."""
    if n < 1:
        raise ValueError("conductor must be positive")
    f = _field(n)
    return Cyc(n, f.zeta_pows[k % n], 1)


def cyc_arith(a: Cyc, b: Cyc, op: str) -> Cyc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def cyc_inverse(a: Cyc) -> Cyc:
    return a.inverse()


def cyc_galois(a: Cyc, t: int) -> Cyc:
    return a.galois(t)


def cyc_conjugate(a: Cyc) -> Cyc:
    return a.conjugate()


def cyc_to_float(a: Cyc) -> complex:
    return a.to_complex()


def sqrt5() -> Cyc:
    """The Gauss sum z5 - z5^2 - z5^3 + z5^4, an exact square root of 5."""
    z = cyc_root_of_unity(5, 1)
    return z - z * z - z * z * z + z * z * z * z


def golden_ratio() -> Cyc:
    """(1 + sqrt5)/2 as an exact element of Q(zeta_5)."""
    return (Cyc.one(5) + sqrt5()) / Cyc.from_rational(2, 5)


def cyc_sum(values: Iterable[Cyc]) -> Cyc:
    acc = None
    for v in values:
        acc = v if acc is None else acc + v
    return Cyc.zero() if acc is None else acc
