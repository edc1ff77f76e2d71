"""
Exact scalars: elements of cyclotomic fields Q(zeta_n) and Laurent
polynomials Z[q, q^-1].

A ``CycloScalar`` stores its conductor ``n`` and a rational polynomial in
``z = zeta_n`` reduced modulo the n-th cyclotomic polynomial, so the
coefficient vector in the power basis {z^k : 0 <= k < phi(n)} is a canonical
normal form.  Arithmetic between different conductors embeds both operands in
the lcm conductor.

>>> z = CycloScalar.zeta(3)
>>> z + z**2
CycloScalar('Q(zeta_3): -1')
>>> CycloScalar.zeta(4).conj()
CycloScalar('Q(zeta_4): -z')
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint

from peterweyl.errors import ConductorOverflowError

__all__ = [
    "CycloScalar",
    "LaurentScalar",
    "as_cyclo",
    "cyclo_arith",
    "cyclo_conj",
    "laurent_arith",
    "parse_cyclo",
    "parse_laurent",
    "set_max_conductor",
    "get_max_conductor",
]

_MAX_CONDUCTOR = 120


def set_max_conductor(n: int) -> None:
    global _MAX_CONDUCTOR
    _MAX_CONDUCTOR = int(n)


def get_max_conductor() -> int:
    return _MAX_CONDUCTOR


def _lcm(a, b):
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _phi_poly(n):
    return flint.fmpq_poly(flint.fmpz_poly.cyclotomic(n))


@lru_cache(maxsize=None)
def _totient(n):
    return _phi_poly(n).degree()


@lru_cache(maxsize=None)
def _units(n):
    return tuple(a for a in range(1, n + 1) if gcd(a, n) == 1) if n > 1 else (1,)


@lru_cache(maxsize=None)
def _trace_table(n):
    # normalized trace of z^k, 0 <= k < phi(n): invariant under embedding
    out = []
    units = _units(n)
    for k in range(_totient(n)):
        # sum over units a of zeta^(a k) is the Ramanujan sum c_n(k); exact integer
        s = _ramanujan_sum(n, k)
        out.append(Fraction(s, len(units)))
    return tuple(out)


def _mobius(m):
    res, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def _ramanujan_sum(n, k):
    g = gcd(n, k) if k else n
    return sum(_mobius(n // d) * d for d in range(1, g + 1) if g % d == 0)


def _check_conductor(n):
    if n > _MAX_CONDUCTOR:
        raise ConductorOverflowError(f"conductor {n} exceeds the configured bound {_MAX_CONDUCTOR}")


def _reduce(poly, n):
    if poly.degree() >= _totient(n):
        poly = poly % _phi_poly(n)
    return poly


def _to_fmpq(c):
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, flint.fmpq):
        return c
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _fmpq_to_fraction(c):
    return Fraction(int(c.p), int(c.q))


class CycloScalar:
    """Immutable element of Q(zeta_n) in power-basis normal form."""

    __slots__ = ("_n", "_p", "_hash")

    def __init__(self, n: int = 1, coeffs=None, *, _poly=None):
        n = int(n)
        if n < 1:
            raise ValueError("conductor must be positive")
        _check_conductor(n)
        self._n = n
        self._hash = None
        if _poly is not None:
            self._p = _poly
            return
        if coeffs is None:
            self._p = flint.fmpq_poly()
            return
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        dense = [flint.fmpq(0)] * n
        for k, c in items:
            dense[int(k) % n] += _to_fmpq(c)
        self._p = _reduce(flint.fmpq_poly(dense), n)

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, n, poly):
        obj = cls.__new__(cls)
        obj._n = n
        obj._p = poly
        obj._hash = None
        return obj

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloScalar":
        return cls(n, {k % n: 1})

    @classmethod
    def rational(cls, r) -> "CycloScalar":
        return cls._raw(1, flint.fmpq_poly([_to_fmpq(r)]) if r else flint.fmpq_poly())

    # -- basic accessors ----------------------------------------------
    @property
    def conductor(self) -> int:
        return self._n

    @property
    def degree(self) -> int:
        """phi(conductor): the dimension of the power basis."""
        return _totient(self._n)

    def coefficients(self) -> list:
        """Power-basis coefficients c_0..c_{phi(n)-1} as Fractions."""
        cs = [_fmpq_to_fraction(c) for c in self._p.coeffs()]
        return cs + [Fraction(0)] * (_totient(self._n) - len(cs))

    def poly(self):
        return self._p

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self):
        return not self._p.is_zero()

    def is_rational(self) -> bool:
        return self._p.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return _fmpq_to_fraction(self._p[0]) if self._p.degree() == 0 else Fraction(0)

    def embed(self, m: int) -> "CycloScalar":
        """The same field element written with conductor m (a multiple of n)."""
        if m == self._n:
            return self
        if m % self._n:
            raise ValueError(f"cannot embed conductor {self._n} into {m}")
        _check_conductor(m)
        if self._p.degree() <= 0:
            return CycloScalar._raw(m, self._p)
        step = m // self._n
        dense = [flint.fmpq(0)] * (step * self._p.degree() + 1)
        for k, c in enumerate(self._p.coeffs()):
            dense[k * step] = c
        return CycloScalar._raw(m, _reduce(flint.fmpq_poly(dense), m))

    # -- coercion -----------------------------------------------------
    def _coerce_pair(self, other):
        if not isinstance(other, CycloScalar):
            other = CycloScalar.rational(other)
        if other._n == self._n:
            return self._n, self._p, other._p
        if other._p.degree() <= 0:
            return self._n, self._p, other._p
        if self._p.degree() <= 0:
            return other._n, self._p, other._p
        m = _lcm(self._n, other._n)
        return m, self.embed(m)._p, other.embed(m)._p

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (CycloScalar, int, Fraction)):
            return NotImplemented
        n, a, b = self._coerce_pair(other)
        return CycloScalar._raw(n, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (CycloScalar, int, Fraction)):
            return NotImplemented
        n, a, b = self._coerce_pair(other)
        return CycloScalar._raw(n, a - b)

    def __rsub__(self, other):
        if not isinstance(other, (CycloScalar, int, Fraction)):
            return NotImplemented
        n, a, b = self._coerce_pair(other)
        return CycloScalar._raw(n, b - a)

    def __neg__(self):
        return CycloScalar._raw(self._n, -self._p)

    def __mul__(self, other):
        if not isinstance(other, (CycloScalar, int, Fraction)):
            return NotImplemented
        n, a, b = self._coerce_pair(other)
        return CycloScalar._raw(n, _reduce(a * b, n))

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if self._p.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self._n)
        if self._p.degree() == 0:
            return CycloScalar._raw(self._n, flint.fmpq_poly([1 / self._p[0]]))
        g, s, _ = self._p.xgcd(_phi_poly(self._n))
        # g is a nonzero constant since Phi_n is irreducible
        return CycloScalar._raw(self._n, _reduce(s / g[0], self._n))

    def __truediv__(self, other):
        if not isinstance(other, (CycloScalar, int, Fraction)):
            return NotImplemented
        if not isinstance(other, CycloScalar):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycloScalar._raw(self._n, self._p / _to_fmpq(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycloScalar.rational(other) * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloScalar._raw(self._n, flint.fmpq_poly([1]))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- automorphisms ------------------------------------------------
    def galois(self, a: int) -> "CycloScalar":
        """Image under the automorphism zeta -> zeta^a (gcd(a, n) = 1)."""
        n = self._n
        if self._p.degree() <= 0:
            return self
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        dense = [flint.fmpq(0)] * n
        for k, c in enumerate(self._p.coeffs()):
            dense[(a * k) % n] += c
        return CycloScalar._raw(n, _reduce(flint.fmpq_poly(dense), n))

    def conj(self) -> "CycloScalar":
        return self.galois(-1 % self._n) if self._n > 2 else self

    def is_real(self) -> bool:
        return self.conj() == self

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._p.degree() <= 0 and self.to_fraction() == other
        if not isinstance(other, CycloScalar):
            return NotImplemented
        _, a, b = self._coerce_pair(other)
        return a == b

    def __hash__(self):
        if self._hash is None:
            if self._p.degree() <= 0:
                self._hash = hash(self.to_fraction())
            else:
                table = _trace_table(self._n)
                self._hash = hash(sum(c * t for c, t in zip(self.coefficients(), table)))
        return self._hash

    # -- numerics -----------------------------------------------------
    def _real_part_ball(self, a, prec):
        old = flint.ctx.prec
        flint.ctx.prec = prec
        try:
            total = flint.arb(0)
            for k, c in enumerate(self._p.coeffs()):
                if c == 0:
                    continue
                if k == 0:
                    total += flint.arb(c)
                else:
                    total += flint.arb(c) * flint.arb.cos_pi_fmpq(flint.fmpq(2 * a * k, self._n))
            return total
        finally:
            flint.ctx.prec = old

    def sign(self, embedding: int = 1) -> int:
        """Certified sign of a real element under zeta -> exp(2 pi i a / n).

        The element is exactly nonzero or zero; ball arithmetic at growing
        precision decides the sign of a nonzero value rigorously.
        """
        if not self.galois(embedding % self._n if self._n > 1 else 1).is_real():
            raise ValueError(f"{self} is not real under embedding {embedding}")
        if self.is_zero():
            return 0
        prec = 64
        while True:
            ball = self._real_part_ball(embedding, prec)
            if ball > 0:
                return 1
            if ball < 0:
                return -1
            prec *= 2
            if prec > 1 << 16:
                raise ArithmeticError("sign undecided")  # pragma: no cover

    def is_positive(self) -> bool:
        return self.sign() > 0

    def is_totally_positive(self) -> bool:
        return all(self.sign(a) > 0 for a in _units(self._n))

    def __complex__(self):
        import cmath

        return sum(
            (float(_fmpq_to_fraction(c)) * cmath.exp(2j * cmath.pi * k / self._n) for k, c in enumerate(self._p.coeffs())),
            0j,
        )

    # -- text ---------------------------------------------------------
    def body_str(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients()):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = f"{abs(c)}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return f"Q(zeta_{self._n}): {self.body_str()}"

    def __repr__(self):
        return f"CycloScalar('{self}')"


_CYCLO_RE = re.compile(r"^\s*Q\(zeta_(\d+)\)\s*:\s*(.*)$")
_TERM_RE = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(z(?:\^(\d+))?)?")


def parse_cyclo(text: str) -> CycloScalar:
    """Inverse of ``str(CycloScalar)``."""
    m = _CYCLO_RE.match(text)
    if not m:
        raise ValueError(f"not a cyclotomic scalar: {text!r}")
    n = int(m.group(1))
    body = m.group(2).replace(" ", "")
    coeffs: dict = {}
    if body != "0":
        pos = 0
        while pos < len(body):
            t = _TERM_RE.match(body, pos)
            if not t or t.end() == pos:
                raise ValueError(f"cannot parse {body[pos:]!r}")
            sign, num, mono, exp = t.groups()
            c = Fraction(num) if num else Fraction(1)
            if sign == "-":
                c = -c
            k = 0 if not mono else (int(exp) if exp else 1)
            coeffs[k] = coeffs.get(k, 0) + c
            pos = t.end()
    return CycloScalar(n, coeffs)


def as_cyclo(x) -> CycloScalar:
    if isinstance(x, CycloScalar):
        return x
    return CycloScalar.rational(Fraction(x))


def cyclo_arith(a, b, op: str) -> CycloScalar:
    a, b = as_cyclo(a), as_cyclo(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cyclo_conj(a) -> CycloScalar:
    return as_cyclo(a).conj()


class LaurentScalar:
    """Immutable element of Z[q, q^-1] stored as {exponent: coefficient}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self._c = {int(k): int(v) for k, v in dict(coeffs).items() if v}

    @classmethod
    def q(cls, k: int = 1) -> "LaurentScalar":
        return cls({k: 1})

    @classmethod
    def _wrap(cls, other):
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, int):
            return cls(other)
        return None

    def items(self):
        return sorted(self._c.items())

    def coefficient(self, k: int) -> int:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def degree(self):
        return max(self._c) if self._c else None

    def low_degree(self):
        return min(self._c) if self._c else None

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible in Z[q, q^-1]")
            (k, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("only unit monomials are invertible in Z[q, q^-1]")
            return LaurentScalar({-k * -e: v ** -e})
        out = LaurentScalar(1)
        for _ in range(e):
            out = out * self
        return out

    def exact_div(self, other: "LaurentScalar") -> "LaurentScalar":
        """Quotient when ``other`` divides ``self`` exactly (else ValueError)."""
        other = self._wrap(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Z[q, q^-1]")
        rem = LaurentScalar(self._c)
        quo: dict = {}
        lo, lead = other.low_degree(), other._c[other.low_degree()]
        while rem:
            k = rem.low_degree()
            c, r = divmod(rem._c[k], lead)
            if r:
                raise ValueError(f"{other} does not divide {self}")
            quo[k - lo] = c
            rem = rem - LaurentScalar({k - lo: c}) * other
            if rem and rem.degree() < k:  # pragma: no cover
                raise ValueError(f"{other} does not divide {self}")
            if len(quo) > 4 * (len(self._c) + len(other._c)) + 64:
                raise ValueError(f"{other} does not divide {self}")
        return LaurentScalar(quo)

    def evaluate(self, q) -> Fraction:
        q = Fraction(q)
        return sum((Fraction(v) * q**k for k, v in self._c.items()), Fraction(0))

    def __eq__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            term = f"{abs(v)}*q^{k}"
            if not parts:
                parts.append(("-" if v < 0 else "") + term)
            else:
                parts.append((" - " if v < 0 else " + ") + term)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentScalar('{self}')"


_LTERM_RE = re.compile(r"([+-]?)(\d+)\*q\^(-?\d+)")


def parse_laurent(text: str) -> LaurentScalar:
    """Inverse of ``str(LaurentScalar)``."""
    body = text.replace(" ", "")
    if body == "0":
        return LaurentScalar()
    coeffs: dict = {}
    pos = 0
    while pos < len(body):
        m = _LTERM_RE.match(body, pos)
        if not m:
            raise ValueError(f"cannot parse Laurent term at {body[pos:]!r}")
        sign, c, k = m.groups()
        v = int(c) * (-1 if sign == "-" else 1)
        coeffs[int(k)] = coeffs.get(int(k), 0) + v
        pos = m.end()
    return LaurentScalar(coeffs)


def laurent_arith(a, b, op: str) -> LaurentScalar:
    a, b = LaurentScalar._wrap(a), LaurentScalar._wrap(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
