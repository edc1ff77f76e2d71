"""
The group algebra CG with counting measure.

    (f * g)(x) = sum_y f(y) g(y^-1 x),     f^star(g) = conj(f(g^-1)),
    e_J = (1/|J|) 1_J.

Elements are sparse maps from group indices to cyclotomic scalars.  ``*``
between two elements is convolution; ``*`` with a scalar scales.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from peterweyl.errors import GroupMismatchError, IncompleteRepresentationListError
from peterweyl.linalg import ZERO, is_zero_matrix, mat_add, mat_scale, zeros
from peterweyl.scalars import CycloScalar, _reduce, as_cyclo

_SCALARS = (int, Fraction, CycloScalar)


class GroupAlgebraElement:
    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs=None):
        self.group = group
        self.coeffs = {}
        if coeffs:
            for g, c in coeffs.items():
                c = as_cyclo(c)
                if c:
                    self.coeffs[int(g)] = c

    @classmethod
    def _wrap(cls, group, coeffs):
        obj = cls.__new__(cls)
        obj.group = group
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, group) -> "GroupAlgebraElement":
        return cls._wrap(group, {})

    @classmethod
    def delta(cls, group, g: int, c=1) -> "GroupAlgebraElement":
        return cls(group, {g: c})

    @classmethod
    def indicator(cls, group, S, c=1) -> "GroupAlgebraElement":
        c = as_cyclo(c)
        return cls._wrap(group, {g: c for g in S} if c else {})

    @classmethod
    def identity(cls, group) -> "GroupAlgebraElement":
        return cls.delta(group, group.identity)

    @classmethod
    def random(cls, group, rng: random.Random, support: int | None = None, conductor: int = 1, bound: int = 3):
        """Random element with small integer cyclotomic coefficients."""
        k = group.order if support is None else min(support, group.order)
        out = {}
        for g in rng.sample(range(group.order), k):
            c = CycloScalar(conductor, [rng.randint(-bound, bound) for _ in range(max(1, CycloScalar.zeta(conductor).degree))])
            if c:
                out[g] = c
        return cls._wrap(group, out)

    # -- access -------------------------------------------------------
    def __call__(self, g: int) -> CycloScalar:
        return self.coeffs.get(g, ZERO)

    @property
    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def conductor(self) -> int:
        n = 1
        for c in self.coeffs.values():
            n = n * c.conductor // gcd(n, c.conductor)
        return n

    # -- linear structure ---------------------------------------------
    def _check(self, other):
        if other.group is not self.group:
            raise GroupMismatchError("elements live in different group algebras")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            v = out.get(g)
            v = c if v is None else v + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return GroupAlgebraElement._wrap(self.group, out)

    def __neg__(self):
        return GroupAlgebraElement._wrap(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GroupAlgebraElement":
        c = as_cyclo(c)
        if not c:
            return GroupAlgebraElement.zero(self.group)
        return GroupAlgebraElement._wrap(self.group, {g: c * v for g, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return convolve(self, other)
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(as_cyclo(c).inverse())

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    __hash__ = None

    def star(self) -> "GroupAlgebraElement":
        inv = self.group.inverse
        return GroupAlgebraElement._wrap(self.group, {inv[g]: c.conj() for g, c in self.coeffs.items()})

    def translate_left(self, h: int) -> "GroupAlgebraElement":
        """delta_h * f, i.e. x -> f(h^-1 x)."""
        G = self.group
        return GroupAlgebraElement._wrap(G, {G.mul(h, g): c for g, c in self.coeffs.items()})

    def translate_right(self, h: int) -> "GroupAlgebraElement":
        """f * delta_h, i.e. x -> f(x h^-1)."""
        G = self.group
        return GroupAlgebraElement._wrap(G, {G.mul(g, h): c for g, c in self.coeffs.items()})

    def commutes_with(self, other) -> bool:
        return self * other == other * self

    def is_central(self) -> bool:
        G = self.group
        return all(self.translate_left(s) == self.translate_right(s) for s in G.generators)

    def is_idempotent(self) -> bool:
        return self * self == self

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        G = self.group
        return "\n".join(f"({c}) * {G.format(g)}" for g, c in sorted(self.coeffs.items()))

    def __repr__(self):
        return f"GroupAlgebraElement({self.group.name}, support={len(self.coeffs)})"


def convolve(f: GroupAlgebraElement, g: GroupAlgebraElement) -> GroupAlgebraElement:
    """(f * g)(x) = sum_y f(y) g(y^-1 x)."""
    if f.group is not g.group:
        raise GroupMismatchError("cannot convolve elements of different group algebras")
    G = f.group
    if not f.coeffs or not g.coeffs:
        return GroupAlgebraElement.zero(G)
    n = f.conductor() * g.conductor() // gcd(f.conductor(), g.conductor())
    fp = [(y, c.embed(n).poly() if c.conductor != n else c.poly()) for y, c in f.coeffs.items()]
    gp = [(z, c.embed(n).poly() if c.conductor != n else c.poly()) for z, c in g.coeffs.items()]
    acc: dict = {}
    if len(fp) <= len(gp):
        for y, a in fp:
            row = G.row(y)
            for z, b in gp:
                x = row[z]
                v = acc.get(x)
                acc[x] = a * b if v is None else v + a * b
    else:
        mul = G.mul
        for z, b in gp:
            for y, a in fp:
                x = mul(y, z)
                v = acc.get(x)
                acc[x] = a * b if v is None else v + a * b
    out = {}
    for x, p in acc.items():
        p = _reduce(p, n)
        if not p.is_zero():
            out[x] = CycloScalar._raw(n, p)
    return GroupAlgebraElement._wrap(G, out)


def star(f: GroupAlgebraElement) -> GroupAlgebraElement:
    return f.star()


def subgroup_idempotent(G, J) -> GroupAlgebraElement:
    """e_J = (1/|J|) 1_J."""
    J = frozenset(J)
    return GroupAlgebraElement.indicator(G, J, Fraction(1, len(J)))


def represent(f: GroupAlgebraElement, model):
    """pi(f) = sum_x f(x) pi(x)."""
    d = model.degree
    out = zeros(d, d)
    for g, c in f.coeffs.items():
        out = mat_add(out, mat_scale(c, model.matrix(g)))
    return out


def operator_fourier_separation(f: GroupAlgebraElement, g: GroupAlgebraElement, reps) -> bool:
    """Decide f == g from the operators pi(f), pi(g) over a complete list of
    irreducible representations (finite Fourier inversion)."""
    G = f.group
    if sum(r.degree**2 for r in reps) != G.order:
        raise IncompleteRepresentationListError(
            f"sum of squared degrees {sum(r.degree ** 2 for r in reps)} differs from |G| = {G.order}"
        )
    diff = f - g
    return all(is_zero_matrix(represent(diff, r)) for r in reps)


def character_idempotent(G, H, values) -> GroupAlgebraElement:
    """(1/|H|) sum_h conj(psi(h)) delta_h for a linear character psi of H.

    ``values`` maps each h in H to psi(h).  The result projects every
    representation onto its psi-isotypic vectors for H.
    """
    H = frozenset(H)
    w = Fraction(1, len(H))
    return GroupAlgebraElement(G, {h: as_cyclo(values[h]).conj() * w for h in H})
