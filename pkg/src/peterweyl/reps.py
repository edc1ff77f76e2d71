"""
Explicit irreducible representations, matrix coefficients and the block
decomposition of corner algebras.

A model lives inside a minimal left ideal CG * eta of the group algebra, for
a primitive idempotent eta.  The invariant form is the restriction of the
standard form <f, h> = sum_x f(x) conj(h(x)), which is linear in the first
slot.  Conventions used throughout:

    m_{u,v}(g) = <u, rho(g) v>
    m_{x1,x2} * m_{y1,y2} = (|G|/d) conj<x2, y1> m_{x1,y2}
    chi(g) = trace rho(g),  eps(g) = (d/|G|) conj(chi(g))  (central idempotent)

Normalized vectors (<v, v> = d/|G|) may need square roots outside the field.
A normalized vector is therefore carried as ``NormalizedVector(v, s)``,
standing for sqrt(s) * v with s = d / (|G| <v, v>), and every identity is
written in terms of the exact products of these scales.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

from peterweyl.algebra import GroupAlgebraElement, character_idempotent, represent, subgroup_idempotent
from peterweyl.corner import CornerAlgebra, _split_primitive
from peterweyl.errors import NormalizationError, SplittingError
from peterweyl.linalg import ONE, ZERO, Echelon, mat_mul, mat_vec, minimal_polynomial, rank, spectral_polynomials, zeros
from peterweyl.scalars import CycloScalar, as_cyclo


class IrreducibleModel:
    """rho: G -> GL_d(Q(zeta_n)) realised on a minimal left ideal."""

    def __init__(self, group, eta: GroupAlgebraElement, label: str = ""):
        self.group = group
        self.eta = eta
        self.label = label
        ech = Echelon(track=True)
        basis = []
        for g in range(group.order):
            w = eta.translate_left(g)
            if ech.reduce(w.coeffs):
                ech.add(w.coeffs, label=len(basis))
                basis.append(w)
        self._ech = ech
        self.basis = basis
        self.degree = len(basis)
        self._matrices: dict = {}

    # -- matrices -----------------------------------------------------
    def coordinates(self, w: GroupAlgebraElement) -> list:
        combo = self._ech.coordinates(w.coeffs)
        if combo is None:
            raise ValueError("element is not in the model's left ideal")
        return [combo.get(i, ZERO) for i in range(self.degree)]

    def vector_to_element(self, v) -> GroupAlgebraElement:
        out = GroupAlgebraElement.zero(self.group)
        for c, w in zip(v, self.basis):
            if c:
                out = out + w.scale(c)
        return out

    def matrix(self, g: int) -> list:
        m = self._matrices.get(g)
        if m is None:
            cols = [self.coordinates(w.translate_left(g)) for w in self.basis]
            m = self._matrices[g] = [list(r) for r in zip(*cols)]
        return m

    def rep(self, f: GroupAlgebraElement) -> list:
        """rho(f) = sum_g f(g) rho(g)."""
        return represent(f, self)

    def act(self, f: GroupAlgebraElement, v) -> list:
        return mat_vec(self.rep(f), v)

    @cached_property
    def gram(self) -> list:
        return [[sum((a * b.conj() for x, a in wi.coeffs.items() if (b := wj(x))), ZERO) for wj in self.basis] for wi in self.basis]

    def inner(self, u, v) -> CycloScalar:
        """<u, v>, linear in u and conjugate-linear in v."""
        G = self.gram
        total = ZERO
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b and G[i][j]:
                        total = total + a * G[i][j] * b.conj()
        return total

    # -- characters ---------------------------------------------------
    @cached_property
    def character(self) -> list:
        """Character value on each conjugacy class (class order of the group)."""
        return [sum((self.matrix(c[0])[i][i] for i in range(self.degree)), ZERO) for c in self.group.classes]

    def character_value(self, g: int) -> CycloScalar:
        return self.character[self.group.class_of[g]]

    @cached_property
    def central_idempotent(self) -> GroupAlgebraElement:
        G = self.group
        w = Fraction(self.degree, G.order)
        return GroupAlgebraElement(G, {g: self.character_value(g).conj() * w for g in range(G.order)})

    def equivalent(self, other: "IrreducibleModel") -> bool:
        return self.group is other.group and self.character == other.character

    def fixed_dimension(self, e: GroupAlgebraElement) -> int:
        """rank rho(e) for an idempotent e."""
        return rank(self.rep(e))

    def fixed_vectors(self, e: GroupAlgebraElement) -> list:
        """A basis of the image of rho(e), taken from its columns."""
        R = self.rep(e)
        cols = [list(c) for c in zip(*R)]
        ech = Echelon()
        return [c for c in cols if ech.add(dict(enumerate(c)))]

    def orthogonal_basis(self, start=()) -> list:
        """Gram-Schmidt orthogonal basis beginning with the given vectors."""
        candidates = [list(v) for v in start] + [[ONE if i == j else ZERO for i in range(self.degree)] for j in range(self.degree)]
        out: list = []
        for v in candidates:
            w = list(v)
            for u in out:
                c = self.inner(w, u) / self.inner(u, u)
                w = [a - c * b for a, b in zip(w, u)]
            if any(w):
                out.append(w)
            if len(out) == self.degree:
                break
        return out

    def normalize(self, v) -> "NormalizedVector":
        return NormalizedVector.of(self, v)

    def normalized_basis(self, start=()) -> list:
        return [self.normalize(v) for v in self.orthogonal_basis(start)]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "degree": self.degree,
            "character": [str(c) for c in self.character],
        }

    def __repr__(self):
        return f"IrreducibleModel({self.label or '?'}, degree={self.degree})"


def _rational_sqrt(x):
    if not isinstance(x, CycloScalar) or not x.is_rational():
        return None
    f = x.to_fraction()
    if f <= 0:
        return None
    a, b = isqrt(f.numerator), isqrt(f.denominator)
    if a * a == f.numerator and b * b == f.denominator:
        return Fraction(a, b)
    return None


@dataclass(frozen=True)
class NormalizedVector:
    """sqrt(scale) * vector, with <., .> = d/|G| for the scaled vector."""

    vector: tuple
    scale: CycloScalar

    @classmethod
    def of(cls, model: IrreducibleModel, v) -> "NormalizedVector":
        norm = model.inner(v, v)
        if not norm:
            raise NormalizationError("cannot normalize the zero vector")
        s = CycloScalar.rational(Fraction(model.degree, model.group.order)) / norm
        r = _rational_sqrt(s)
        if r is not None:
            return cls(tuple(as_cyclo(r) * a for a in v), CycloScalar.rational(1))
        return cls(tuple(v), s)

    def check(self, model: IrreducibleModel) -> bool:
        return self.scale * model.inner(self.vector, self.vector) == Fraction(model.degree, model.group.order)


# ---------------------------------------------------------------------------
# matrix coefficients


class MatrixCoefficient:
    """g -> <u, rho(g) v> as a group-algebra element."""

    def __init__(self, model: IrreducibleModel, u, v):
        self.model = model
        self.u = tuple(u)
        self.v = tuple(v)

    @cached_property
    def element(self) -> GroupAlgebraElement:
        M = self.model
        G = M.group
        # <u, rho(g) v> = sum_j <u, w_j> conj((rho(g) v)_j)
        uw = [M.inner(self.u, e) for e in _unit_vectors(M.degree)]
        out = {}
        for g in range(G.order):
            rv = mat_vec(M.matrix(g), self.v)
            val = sum((a * b.conj() for a, b in zip(uw, rv) if a and b), ZERO)
            if val:
                out[g] = val
        return GroupAlgebraElement._wrap(G, out)

    def star(self) -> "MatrixCoefficient":
        return MatrixCoefficient(self.model, self.v, self.u)

    def __repr__(self):
        return f"MatrixCoefficient({self.model.label})"


def _unit_vectors(d):
    return [[ONE if i == j else ZERO for i in range(d)] for j in range(d)]


def matrix_coefficient(model: IrreducibleModel, u, v) -> MatrixCoefficient:
    return MatrixCoefficient(model, u, v)


def normalized_coefficient(model, nu: NormalizedVector, nv: NormalizedVector) -> GroupAlgebraElement:
    """m_{u^, v^} when the scales multiply to a rational square, else an error.

    For u = v this is always scale * m_{u,u}."""
    if nu == nv:
        return matrix_coefficient(model, nu.vector, nu.vector).element.scale(nu.scale)
    prod = nu.scale * nv.scale
    r = _rational_sqrt(prod) if prod.is_rational() else None
    if r is None:
        raise NormalizationError("product of scales has no square root in the field")
    return matrix_coefficient(model, nu.vector, nv.vector).element.scale(r)


def schur_convolve(m1: MatrixCoefficient, m2: MatrixCoefficient) -> GroupAlgebraElement:
    """The Schur prediction for m1 * m2."""
    A, B = m1.model, m2.model
    G = A.group
    if A is not B:
        if A.equivalent(B):
            raise ValueError("equivalent models must be identified before applying the Schur relation")
        return GroupAlgebraElement.zero(G)
    c = CycloScalar.rational(Fraction(G.order, A.degree)) * A.inner(m1.v, m2.u).conj()
    return MatrixCoefficient(A, m1.u, m2.v).element.scale(c)


# ---------------------------------------------------------------------------
# block decomposition


def _check_basis(model, basis):
    for i, a in enumerate(basis):
        if not a.check(model):
            raise NormalizationError(f"basis vector {i} of {model.label} is not normalized")
        for b in basis[:i]:
            if model.inner(a.vector, b.vector):
                raise NormalizationError(f"basis of {model.label} is not orthogonal")


def block_projectors(Xi, bases) -> list:
    """[(model index, i, normalized diagonal coefficient m_{v_i, v_i})]."""
    out = []
    for k, (model, basis) in enumerate(zip(Xi, bases)):
        _check_basis(model, basis)
        for i, nv in enumerate(basis):
            out.append((k, i, normalized_coefficient(model, nv, nv)))
    return out


def block_decompose(f: GroupAlgebraElement, Xi, bases) -> dict:
    """{(sigma, i, tau, j): m_{v_i,v_i} * f * m_{w_j,w_j}} over the given bases."""
    P = block_projectors(Xi, bases)
    left = [(k, i, p * f) for k, i, p in P]
    out = {}
    for k, i, pf in left:
        for l, j, p in P:
            out[(k, i, l, j)] = pf * p
    return out


# ---------------------------------------------------------------------------
# constituents of induced representations


def sigma_idempotent(chain, chi) -> GroupAlgebraElement:
    """(1/|MU|) sum_{m,u} conj(chi(m)) delta_{mu}."""
    G = chain.G
    return character_idempotent(G, chain.M, chi.values) * subgroup_idempotent(G, chain.U)


def hecke_sigma(chain, chi) -> CornerAlgebra:
    cache = chain.extra.setdefault("hecke_sigma", {})
    key = chi.exponents
    if key not in cache:
        cache[key] = CornerAlgebra(sigma_idempotent(chain, chi), name=f"H_sigma{key}")
    return cache[key]


def decompose_induced(chain, chi) -> list:
    """The irreducible constituents of Ind_P^G(chi) as explicit models.

    The commutant e_sigma CG e_sigma is split into central primitive
    idempotents; one primitive idempotent per block generates each model.
    """
    cache = chain.extra.setdefault("Xi", {})
    if chi.exponents in cache:
        return cache[chi.exponents]
    H = hecke_sigma(chain, chi)
    e_sigma = H.one
    models = []
    for z in H.central_idempotents:
        eta = _split_primitive(H, z)[0]
        model = IrreducibleModel(chain.G, eta)
        model.fixed_dim = model.fixed_dimension(e_sigma)
        model.borel_fixed_dim = model.fixed_dimension(subgroup_idempotent(chain.G, chain.B))
        models.append(model)
    models.sort(key=lambda m: (m.degree, [str(c) for c in m.character]))
    for k, m in enumerate(models):
        m.label = f"{chain.G.name}:{chi.label()}:{k}(deg {m.degree})"
    cache[chi.exponents] = models
    return models


# ---------------------------------------------------------------------------
# the complete list of irreducible representations


def class_sum(G, cls) -> GroupAlgebraElement:
    return GroupAlgebraElement.indicator(G, cls)


def central_primitive_idempotents(G) -> list:
    """Central primitive idempotents of CG, from the class-sum algebra."""
    sums = [class_sum(G, c) for c in G.classes]
    one = GroupAlgebraElement.identity(G)
    rng = random.Random(3)
    k = len(sums)
    for attempt in range(40):
        z = GroupAlgebraElement.zero(G)
        for s in sums:
            z = z + s.scale(rng.randint(-3 - attempt, 3 + attempt))
        mp = minimal_polynomial(lambda v: (z * GroupAlgebraElement._wrap(G, v)).coeffs, one.coeffs, k)
        if len(mp) - 1 < k:
            continue
        spec = spectral_polynomials(mp, G.conductor)
        if len(spec) != k:
            raise SplittingError("class-sum algebra does not split over the working field")
        out = []
        for _, u in spec:
            acc = GroupAlgebraElement.zero(G)
            for c in reversed(u):
                acc = acc * z + one.scale(c)
            out.append(acc)
        return out
    raise SplittingError("no separating central element found")  # pragma: no cover


def _degree_of(G, eps) -> int:
    d2 = eps(G.identity).to_fraction() * G.order
    d = isqrt(int(d2))
    if d * d != d2:
        raise SplittingError("central idempotent has non-square trace")  # pragma: no cover
    return d


def _cyclic_projectors(G):
    seen = set()
    for cls in G.classes:
        g = cls[0]
        H = G.closure([g])
        if H in seen:
            continue
        seen.add(H)
        k = len(H)
        powers = {}
        x = G.identity
        for i in range(k):
            powers[x] = i
            x = G.mul(x, g)
        for j in range(k):
            vals = {h: CycloScalar.zeta(k, i * j) if k > 1 else CycloScalar.rational(1) for h, i in powers.items()}
            yield character_idempotent(G, H, vals)


def rank_one_idempotent(G, eps: GroupAlgebraElement) -> GroupAlgebraElement:
    """A primitive idempotent of CG lying under the central idempotent eps."""
    d = _degree_of(G, eps)
    if d == 1:
        return eps
    best, best_rank = None, None
    for e in _cyclic_projectors(G):
        p = eps * e
        if not p:
            continue
        r = p(G.identity).to_fraction() * G.order / d
        if best is None or r < best_rank:
            best, best_rank = p, r
            if r == 1:
                return p
    return _split_primitive(CornerAlgebra(best), best)[0]


def irreducible_models(G) -> list:
    """A complete list of pairwise inequivalent irreducible models of G."""
    cached = getattr(G, "_irreducible_models", None)
    if cached is not None:
        return cached
    models = []
    for eps in central_primitive_idempotents(G):
        models.append(IrreducibleModel(G, rank_one_idempotent(G, eps)))
    models.sort(key=lambda m: (m.degree, [str(c) for c in m.character]))
    for k, m in enumerate(models):
        m.label = f"{G.name}:irr{k}(deg {m.degree})"
    G._irreducible_models = models
    return models


def character_table(models) -> dict:
    return {m.label: [str(c) for c in m.character] for m in models}
