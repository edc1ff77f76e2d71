"""
Corner algebras e * CG * f with explicit bases, coordinates and, for e = f,
centers and (central) primitive idempotents found by exact spectral splitting.
"""

from __future__ import annotations

import random
from functools import cached_property

from peterweyl.algebra import GroupAlgebraElement
from peterweyl.errors import SplittingError
from peterweyl.linalg import ONE, ZERO, Echelon, minimal_polynomial, nullspace, spectral_polynomials


def _gae(x):
    return getattr(x, "element", x)


class CornerAlgebra:
    """The subspace left * CG * right with a basis of group-algebra elements.

    The basis comes from greedy row reduction of {left * delta_g * right}.
    When left == right the algebra is unital with identity ``left`` and the
    identity is always the first basis vector.
    """

    def __init__(self, left, right=None, basis=None, name: str = ""):
        left = _gae(left)
        right = left if right is None else _gae(right)
        self.group = left.group
        self.left = left
        self.right = right
        self.name = name
        self.unital = left == right
        if basis is None:
            basis = self._spanning_family()
        self._ech = Echelon(track=True)
        self.basis: list = []
        for b in basis:
            if self._ech.reduce(b.coeffs):
                self._ech.add(b.coeffs, label=len(self.basis))
                self.basis.append(b)

    def _spanning_family(self):
        G = self.group
        if self.unital:
            yield self.left
        lr = self.left
        for g in range(G.order):
            yield lr.translate_right(g) * self.right

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    @property
    def one(self) -> GroupAlgebraElement:
        if not self.unital:
            raise ValueError("a corner with different idempotents has no identity")
        return self.left

    def contains(self, x) -> bool:
        x = _gae(x)
        return self.left * x == x and x * self.right == x and self._ech.contains(x.coeffs)

    def coordinates(self, x) -> list:
        combo = self._ech.coordinates(_gae(x).coeffs)
        if combo is None:
            raise ValueError("element is not in the corner algebra")
        return [combo.get(i, ZERO) for i in range(self.dim)]

    def element(self, coords) -> GroupAlgebraElement:
        out = GroupAlgebraElement.zero(self.group)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def project(self, x) -> GroupAlgebraElement:
        """left * x * right"""
        return self.left * _gae(x) * self.right

    @cached_property
    def structure_constants(self):
        """c[i][j] = coordinates of basis[i] * basis[j]."""
        return [[self.coordinates(a * b) for b in self.basis] for a in self.basis]

    def left_matrix(self, x) -> list:
        """Matrix of y -> x * y in the basis (columns are images)."""
        cols = [self.coordinates(_gae(x) * b) for b in self.basis]
        return [list(r) for r in zip(*cols)]

    # -- center -------------------------------------------------------
    @cached_property
    def center(self) -> list:
        """Basis of the center, as group-algebra elements."""
        sc = self.structure_constants
        n = self.dim
        rows = []
        for i in range(n):
            # coefficient matrix of x -> b_i x - x b_i in terms of x's coordinates
            for k in range(n):
                rows.append([sc[i][j][k] - sc[j][i][k] for j in range(n)])
        return [self.element(v) for v in nullspace(rows, n)]

    def is_central(self, z) -> bool:
        z = _gae(z)
        return all(z * b == b * z for b in self.basis)

    # -- spectral splitting -------------------------------------------
    def _poly_at(self, poly, x, one):
        acc = GroupAlgebraElement.zero(self.group)
        for c in reversed(poly):
            acc = acc * x + one.scale(c)
        return acc

    def _split_by(self, x, one, dim_bound):
        """Orthogonal idempotents u_k(x) from the factors of x's minimal polynomial."""
        minpoly = minimal_polynomial(lambda v: (x * GroupAlgebraElement._wrap(self.group, v)).coeffs, one.coeffs, dim_bound)
        conductor = self.group.conductor
        try:
            spec = spectral_polynomials(minpoly, conductor)
        except SplittingError:
            return None
        return [self._poly_at(u, x, one) for _, u in spec]

    @cached_property
    def central_idempotents(self) -> list:
        """Central primitive idempotents, sorted by the support order of the first nonzero coordinate."""
        if not self.unital:
            raise ValueError("central idempotents need a unital corner")
        Z = self.center
        if len(Z) == 1:
            return [self.one]
        rng = random.Random(1)
        for attempt in range(40):
            bound = 2 + attempt
            x = GroupAlgebraElement.zero(self.group)
            for z in Z:
                x = x + z.scale(rng.randint(-bound, bound))
            idems = self._split_by(x, self.one, len(Z))
            if idems is not None and len(idems) == len(Z):
                return _canonical_order(idems)
        raise SplittingError(f"could not separate the {len(Z)}-dimensional center over Q(zeta_{self.group.conductor})")

    def primitive_idempotents(self, central) -> list:
        """Split a central idempotent into orthogonal primitive idempotents."""
        return _split_primitive(self, _gae(central))


def _canonical_order(idems):
    return sorted(idems, key=lambda e: sorted(e.coeffs)[:1] + [len(e.coeffs)])


def _corner_dim(p, family) -> int:
    ech = Echelon()
    for b in family:
        ech.add((p * b * p).coeffs)
    return ech.rank


def _split_primitive(A: CornerAlgebra, p) -> list:
    """Recursively split idempotent p of A until each piece has dim pAp = 1."""
    family = A.basis
    sub = [p * b * p for b in family]
    sub = [s for s in sub if s]
    ech = Echelon()
    basis = [s for s in sub if ech.add(s.coeffs)]
    if len(basis) <= 1:
        return [p]
    # p A p is simple of dim m^2; an element with a separable reducible minimal polynomial splits p
    candidates = list(basis)
    rng = random.Random(2)
    for _ in range(20):
        x = GroupAlgebraElement.zero(A.group)
        for b in basis:
            x = x + b.scale(rng.randint(-3, 3))
        candidates.append(x)
    for x in candidates:
        pieces = A._split_by(x, p, len(basis))
        if pieces and len(pieces) > 1:
            out = []
            for piece in pieces:
                out.extend(_split_primitive(A, piece))
            return out
    raise SplittingError("no element splits the idempotent over the working field")
