"""
The affine Iwahori-Hecke algebra of type A1 over Z[q, q^-1].

The affine Weyl group is the infinite dihedral group on s0, s1; s1 is the
finite simple reflection.  The lattice X = Z is the coroot lattice: the
translation t_x is (s0 s1)^x for x >= 0 and (s1 s0)^|x| for x < 0, so
l(t_x) = 2|x| and s1 acts by x -> -x.  With that identification the root
pairs with the coroot to give the value 2 and the Bernstein denominator is
1 - Theta_{-1}.

    T_w T_s = T_{ws}                     if l(ws) > l(w)
            = (q - 1) T_w + q T_{ws}     otherwise
    Theta_x = q^{-x} T_{t_x}  (x >= 0),  Theta_x = Theta_{-x}^{-1}  (x < 0)
    T_w^star = T_{w^-1},   (Theta_x T_w)^bullet = T_{w^-1} Theta_x
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from peterweyl.errors import BasisConversionError, InexactDivisionError
from peterweyl.scalars import LaurentScalar

Q = LaurentScalar.q()
ONE = LaurentScalar(1)
DENOMINATOR_SHIFT = 1  # Theta_{-alpha} = Theta_{-DENOMINATOR_SHIFT}


@dataclass(frozen=True, order=True)
class AffineWeylElement:
    """Reduced word s_first s_{1-first} ... of the given length."""

    length: int
    first: int = 0

    def __post_init__(self):
        if self.length == 0 and self.first != 0:
            object.__setattr__(self, "first", 0)

    @classmethod
    def identity(cls):
        return cls(0, 0)

    @classmethod
    def from_word(cls, word) -> "AffineWeylElement":
        w = cls.identity()
        for s in word:
            w = w.times_generator(s)
        return w

    @property
    def last(self) -> int:
        return self.first if self.length % 2 else 1 - self.first

    def word(self) -> tuple:
        return tuple((self.first + k) % 2 for k in range(self.length))

    def times_generator(self, s: int) -> "AffineWeylElement":
        if self.length == 0:
            return AffineWeylElement(1, s)
        if self.last == s:
            return AffineWeylElement(self.length - 1, self.first)
        return AffineWeylElement(self.length + 1, self.first)

    def generator_times(self, s: int) -> "AffineWeylElement":
        if self.length == 0:
            return AffineWeylElement(1, s)
        if self.first == s:
            return AffineWeylElement(self.length - 1, 1 - self.first)
        return AffineWeylElement(self.length + 1, s)

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        w = self
        for s in other.word():
            w = w.times_generator(s)
        return w

    def inverse(self) -> "AffineWeylElement":
        return AffineWeylElement(self.length, self.last)

    def __str__(self):
        return "e" if self.length == 0 else "".join(f"s{s}" for s in self.word())


E = AffineWeylElement.identity()
S0 = AffineWeylElement(1, 0)
S1 = AffineWeylElement(1, 1)


def translation(x: int) -> AffineWeylElement:
    if x >= 0:
        return AffineWeylElement(2 * x, 0)
    return AffineWeylElement(-2 * x, 1)


def decompose_translation(w: AffineWeylElement):
    """(x, v) with w = t_x v and v in {e, s1}."""
    for v in (E, S1):
        u = w * v.inverse()
        if u.length % 2 == 0:
            x = u.length // 2 if u.first == 0 or u.length == 0 else -(u.length // 2)
            if translation(x) == u:
                return x, v
    raise ValueError(f"{w} does not factor as t_x v")  # pragma: no cover


class AffineHeckeElement:
    """Finite Z[q, q^-1]-combination of Iwahori-Matsumoto basis elements T_w."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            c = c if isinstance(c, LaurentScalar) else LaurentScalar(c)
            if c:
                self.terms[w] = c

    @classmethod
    def T(cls, w) -> "AffineHeckeElement":
        if not isinstance(w, AffineWeylElement):
            w = AffineWeylElement.from_word(w)
        return cls({w: ONE})

    @classmethod
    def scalar(cls, c) -> "AffineHeckeElement":
        return cls({E: c})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentScalar()) + c
        return AffineHeckeElement(out)

    __radd__ = __add__

    def __neg__(self):
        return AffineHeckeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return AffineHeckeElement({w: c * other for w, c in self.terms.items()})
        return hecke_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            other = AffineHeckeElement.scalar(other)
        return isinstance(other, AffineHeckeElement) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def max_length(self) -> int:
        return max((w.length for w in self.terms), default=-1)

    def coefficient(self, w) -> LaurentScalar:
        return self.terms.get(w, LaurentScalar())

    def specialize(self, q) -> dict:
        return {w: c.evaluate(q) for w, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*T[{w}]" for w, c in sorted(self.terms.items()))

    def __repr__(self):
        return f"AffineHeckeElement({self})"

    def bernstein_str(self) -> str:
        coords = to_bernstein(self)
        if not coords:
            return "0"
        return " + ".join(f"({c})*Th[{x}]T[{v}]" for (x, v), c in sorted(coords.items()))


def _coerce(x) -> AffineHeckeElement:
    if isinstance(x, AffineHeckeElement):
        return x
    return AffineHeckeElement.scalar(x)


def _times_generator(a: dict, s: int) -> dict:
    out: dict = {}

    def put(w, c):
        v = out.get(w)
        v = c if v is None else v + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    for w, c in a.items():
        ws = w.times_generator(s)
        if ws.length > w.length:
            put(ws, c)
        else:
            put(w, c * (Q - 1))
            put(ws, c * Q)
    return out


def hecke_multiply(a: AffineHeckeElement, b: AffineHeckeElement) -> AffineHeckeElement:
    a, b = _coerce(a), _coerce(b)
    out: dict = {}
    for w, c in b.terms.items():
        part = dict(a.terms)
        for s in w.word():
            part = _times_generator(part, s)
        for v, d in part.items():
            out[v] = out.get(v, LaurentScalar()) + d * c
    return AffineHeckeElement(out)


def hecke_invert_generator(s: int) -> AffineHeckeElement:
    """T_s^-1 = q^-1 T_s - (1 - q^-1) T_e."""
    qi = LaurentScalar.q(-1)
    return AffineHeckeElement({AffineWeylElement(1, s): qi, E: qi - 1})


def hecke_inverse_of_T(w: AffineWeylElement) -> AffineHeckeElement:
    out = AffineHeckeElement.scalar(1)
    for s in reversed(w.word()):
        out = out * hecke_invert_generator(s)
    return out


@lru_cache(maxsize=None)
def _theta_terms(x: int):
    if x >= 0:
        el = AffineHeckeElement({translation(x): LaurentScalar.q(-x)})
    else:
        el = hecke_inverse_of_T(translation(-x)) * LaurentScalar.q(-x)
    return tuple(el.terms.items())


def theta(x: int) -> AffineHeckeElement:
    return AffineHeckeElement(dict(_theta_terms(int(x))))


def theta_from_dominant_pair(x1: int, x2: int) -> AffineHeckeElement:
    """Theta_{x1 - x2} = Theta_{x1} Theta_{x2}^-1 for dominant x1, x2."""
    if x1 < 0 or x2 < 0:
        raise ValueError("both lattice elements must be dominant")
    inv = hecke_inverse_of_T(translation(x2)) * LaurentScalar.q(x2)
    return theta(x1) * inv


def star_affine(a: AffineHeckeElement) -> AffineHeckeElement:
    return AffineHeckeElement({w.inverse(): c for w, c in _coerce(a).terms.items()})


# ---------------------------------------------------------------------------
# Bernstein basis


@lru_cache(maxsize=None)
def _basis_product(x: int, v: AffineWeylElement):
    el = theta(x) * AffineHeckeElement.T(v)
    return tuple(el.terms.items())


def bernstein_element(coords: dict) -> AffineHeckeElement:
    """sum c_{x,v} Theta_x T_v."""
    out = AffineHeckeElement()
    for (x, v), c in coords.items():
        out = out + AffineHeckeElement(dict(_basis_product(x, v))) * c
    return out


def _leading_combination(w: AffineWeylElement) -> dict:
    """Bernstein coordinates of an element whose longest term is a unit multiple of T_w.

    Theta_x T_v works except for w = t_x s1 with x > 0, where l(w) < l(t_x);
    there Theta_x T_s1 - (q - 1) Theta_x = q^{1-x} T_w.
    """
    x, v = decompose_translation(w)
    if x > 0 and v == S1:
        return {(x, S1): ONE, (x, E): ONE - Q}
    return {(x, v): ONE}


def to_bernstein(a: AffineHeckeElement, max_steps: int = 10_000) -> dict:
    """Coordinates {(x, v): c} of a in the basis Theta_x T_v, v in {e, s1},
    by triangular elimination on the longest Iwahori-Matsumoto term."""
    rem = dict(_coerce(a).terms)
    coords: dict = {}
    for _ in range(max_steps):
        if not rem:
            return {k: c for k, c in coords.items() if c}
        w = max(rem, key=lambda u: (u.length, u.first))
        combo = _leading_combination(w)
        prod = bernstein_element(combo).terms
        lead = prod[w]
        try:
            c = rem[w].exact_div(lead)
        except ValueError as exc:
            raise BasisConversionError(f"leading coefficient {lead} does not divide at {w}") from exc
        for key, d in combo.items():
            coords[key] = coords.get(key, LaurentScalar()) + d * c
        for u, d in prod.items():
            nv = rem.get(u, LaurentScalar()) - d * c
            if nv:
                rem[u] = nv
            else:
                rem.pop(u, None)
        if w in rem or any(u.length > w.length for u in rem):
            raise BasisConversionError(f"elimination did not remove {w}")  # pragma: no cover
    raise BasisConversionError(f"conversion did not finish within {max_steps} steps")


def bullet(a: AffineHeckeElement) -> AffineHeckeElement:
    """(Theta_x T_v)^bullet = T_{v^-1} Theta_x, extended linearly."""
    out = AffineHeckeElement()
    for (x, v), c in to_bernstein(a).items():
        out = out + (AffineHeckeElement.T(v.inverse()) * theta(x)) * c
    return out


def twist_affine(a: AffineHeckeElement) -> AffineHeckeElement:
    """The involution fixing every Theta_x and T_s1; the identity for A1."""
    return _coerce(a)


def verify_bullet_star_relation(a: AffineHeckeElement, length_bound: int = 8) -> bool:
    """a^bullet = T_{s1}^-1 twist(a^star) T_{s1}."""
    a = _coerce(a)
    if a.max_length() > length_bound:
        raise ValueError(f"support exceeds the length bound {length_bound}")
    rhs = hecke_invert_generator(1) * twist_affine(star_affine(a)) * AffineHeckeElement.T(S1)
    return bullet(a) == rhs


# ---------------------------------------------------------------------------
# Bernstein relation


def _laurent_to_theta(p: LaurentScalar) -> AffineHeckeElement:
    out = AffineHeckeElement()
    for k, c in p.items():
        out = out + theta(k) * c
    return out


def bernstein_quotient(x: int, shift: int = DENOMINATOR_SHIFT) -> AffineHeckeElement:
    """(Theta_x - Theta_{-x}) / (1 - Theta_{-shift}) by exact division in the
    commutative lattice subalgebra (a Laurent polynomial ring in Theta_1)."""
    num = LaurentScalar({x: 1}) - LaurentScalar({-x: 1})
    den = LaurentScalar(1) - LaurentScalar({-shift: 1})
    try:
        quo = num.exact_div(den)
    except ValueError as exc:
        raise InexactDivisionError(f"1 - Theta_-{shift} does not divide Theta_{x} - Theta_{-x}") from exc
    if quo * den != num:
        raise InexactDivisionError("division check failed")  # pragma: no cover
    return _laurent_to_theta(quo)


def verify_bernstein_relation(x: int, s: int = 1, shift: int = DENOMINATOR_SHIFT) -> bool:
    """Theta_x T_s = T_s Theta_{s(x)} + (q - 1)(Theta_x - Theta_{s(x)}) / (1 - Theta_{-alpha})."""
    if s != 1:
        raise ValueError("the relation is stated for the finite simple reflection s1")
    Ts = AffineHeckeElement.T(S1)
    lhs = theta(x) * Ts - Ts * theta(-x)
    quotient = bernstein_quotient(x, shift)
    direct = lhs == quotient * (Q - 1)
    cleared = lhs * (1 - theta(-shift)) == (theta(x) - theta(-x)) * (Q - 1)
    return direct and cleared


# ---------------------------------------------------------------------------
# elements by length


def elements_up_to(length: int):
    yield E
    for n in range(1, length + 1):
        yield AffineWeylElement(n, 0)
        yield AffineWeylElement(n, 1)


# ---------------------------------------------------------------------------
# expression parser

_TOKEN = re.compile(r"\s*(?:(Th\[\s*-?\d+\s*\])|(T\[[^\]]*\])|(q)|(\d+)|(\^)|(-)|(\+)|(\*)|(\()|(\)))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected input at {text[pos:]!r}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


def _parse_T(tok):
    body = tok[2:-1].replace(" ", "")
    if body in ("", "e", "1"):
        return AffineHeckeElement.T(E)
    letters = re.fullmatch(r"(s[01])+", body)
    if not letters:
        raise ValueError(f"bad Weyl word {body!r}")
    word = [int(c) for c in re.findall(r"s([01])", body)]
    return AffineHeckeElement.T(AffineWeylElement.from_word(word))


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() == "*":
            self.take()
            val = _mul(val, self.factor())
        return val

    def factor(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.factor()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if tok == "q":
            self.take()
            if self.peek() == "^":
                self.take()
                sign = -1 if self.peek() == "-" else 1
                if sign < 0:
                    self.take()
                return LaurentScalar.q(sign * int(self.take()))
            return Q
        if tok is not None and tok.isdigit():
            self.take()
            return LaurentScalar(int(tok))
        if tok is not None and tok.startswith("Th["):
            self.take()
            return theta(int(tok[3:-1]))
        if tok is not None and tok.startswith("T["):
            self.take()
            return _parse_T(tok)
        raise ValueError(f"unexpected token {tok!r}")


def _mul(a, b):
    if isinstance(a, LaurentScalar) and isinstance(b, LaurentScalar):
        return a * b
    if isinstance(a, LaurentScalar):
        return _coerce(b) * a
    return a * b


def parse_expression(text: str) -> AffineHeckeElement:
    """Parse e.g. ``(q-1)*T[s1] + q^-1*Th[2]*T[s0s1]``."""
    p = _Parser(_tokenize(text))
    val = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input {p.peek()!r}")
    return _coerce(val)
