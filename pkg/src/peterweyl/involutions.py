"""
Anti-involutions of corner algebras, their extension from a small corner to
the Peter-Weyl corner, algebra-valued forms on bimodules, positivity
witnesses and the transport of Hermitian forms across the Morita
equivalence.

An anti-involution is conjugate-linear: it is stored by its values on the
basis and applied to x = sum c_i b_i as sum conj(c_i) iota(b_i).
"""

from __future__ import annotations

from fractions import Fraction

from peterweyl.algebra import GroupAlgebraElement
from peterweyl.corner import CornerAlgebra
from peterweyl.errors import CertificateError, FormError, InvolutionHypothesisError, NotStarFixedError
from peterweyl.linalg import ZERO, Echelon, det, inverse, is_positive_definite, mat_mul, solve
from peterweyl.morita import FiniteModule, natural_roundtrip_map, tensor_module
from peterweyl.reps import NormalizedVector, matrix_coefficient
from peterweyl.scalars import CycloScalar


def _gae(x):
    return getattr(x, "element", x)


class AntiInvolution:
    def __init__(self, algebra: CornerAlgebra, images: list, name: str = ""):
        self.algebra = algebra
        self.images = images
        self.name = name

    @classmethod
    def from_function(cls, algebra, fn, name=""):
        return cls(algebra, [fn(b) for b in algebra.basis], name)

    def __call__(self, x) -> GroupAlgebraElement:
        coords = self.algebra.coordinates(_gae(x))
        out = GroupAlgebraElement.zero(self.algebra.group)
        for c, img in zip(coords, self.images):
            if c:
                out = out + img.scale(c.conj())
        return out

    def matrix(self) -> list:
        """Coordinates of the images of the basis (columns)."""
        cols = [self.algebra.coordinates(img) for img in self.images]
        return [list(r) for r in zip(*cols)]

    def check(self) -> dict:
        A = self.algebra
        closed = all(A.contains(img) for img in self.images)
        involutive = closed and all(self(img) == b for img, b in zip(self.images, A.basis))
        anti = closed and all(
            self(x * y) == self.images[j] * self.images[i]
            for i, x in enumerate(A.basis)
            for j, y in enumerate(A.basis)
        )
        return {"closed": closed, "involutive": involutive, "anti-multiplicative": anti}

    def to_dict(self) -> dict:
        return {"name": self.name, "dim": self.algebra.dim, "matrix": [[str(c) for c in row] for row in self.matrix()]}


def restrict_star(H: CornerAlgebra) -> AntiInvolution:
    if H.left.star() != H.right or H.right.star() != H.left:
        raise NotStarFixedError("corner idempotents are not fixed by star")
    return AntiInvolution.from_function(H, lambda b: b.star(), "star")


# ---------------------------------------------------------------------------
# finite Hecke algebra of B


def hecke_basis(chain, H_B: CornerAlgebra):
    """T_w = (1/|B|) 1_{BwB} for the Weyl representatives, keyed by representative."""
    G = chain.G
    B = chain.B
    out = {}
    for w in chain.weyl_representatives:
        cell = frozenset(G.mul(G.mul(b1, w), b2) for b1 in B for b2 in B)
        out[w] = GroupAlgebraElement.indicator(G, cell, Fraction(1, len(B)))
    return out


def invert_in(H: CornerAlgebra, x) -> GroupAlgebraElement:
    L = H.left_matrix(_gae(x))
    sol = solve(L, H.coordinates(H.one))
    if sol is None:
        raise ZeroDivisionError("element is not invertible in the corner algebra")
    return H.element(sol)


def twist_element(chain, f: GroupAlgebraElement) -> GroupAlgebraElement:
    """Push f forward along g -> n0 (g^-1)^T n0^-1."""
    return GroupAlgebraElement._wrap(f.group, {chain.twist(g): c for g, c in f.coeffs.items()})


def bullet_on_finite_hecke(H_B: CornerAlgebra, chain) -> AntiInvolution:
    """y -> T_{n0}^-1 a(y^star) T_{n0}."""
    T = hecke_basis(chain, H_B)[chain.longest]
    Tinv = invert_in(H_B, T)
    return AntiInvolution.from_function(H_B, lambda y: Tinv * twist_element(chain, y.star()) * T, "bullet")


# ---------------------------------------------------------------------------
# extension to the Peter-Weyl corner


def check_circ_hypothesis(circ_small: AntiInvolution, finite_part=None) -> None:
    """circ_small must agree with star on ``finite_part`` (default: all of H_small)."""
    elems = circ_small.algebra.basis if finite_part is None else finite_part
    for k, x in enumerate(elems):
        if circ_small(x) != x.star():
            raise InvolutionHypothesisError(f"involution differs from star on basis element {k}")


def _extension_terms(H_big, circ_small, Xi, vector_choice):
    small = circ_small.algebra.one
    terms = []
    for model in Xi:
        fixed = model.fixed_vectors(small)
        v = fixed[0] if vector_choice == 0 else (
            [x + y for x, y in zip(fixed[0], fixed[1])] if len(fixed) > 1 else [3 * a for a in fixed[0]]
        )
        nu = NormalizedVector.of(model, v)
        for nb in model.normalized_basis():
            left = matrix_coefficient(model, nu.vector, nb.vector).element  # m_{u, v_i}
            right = left.star()  # m_{v_i, u}
            terms.append((left, right, nu.scale * nb.scale))
    return terms


def extend_involution(circ_small: AntiInvolution, H_big: CornerAlgebra, Xi, vector_choice: int = 0, finite_part=None) -> AntiInvolution:
    """f -> sum m^tau_{v_j,u} * (m^sigma_{u,v_i} * f * m^tau_{v_j,u})^circ * m^sigma_{u,v_i}.

    Indices run over the models of Xi and orthogonal bases v_i; each
    normalized factor is the stored coefficient times a scale, and the four
    scales of a term multiply to the exact product recorded here.
    """
    check_circ_hypothesis(circ_small, finite_part)
    terms = _extension_terms(H_big, circ_small, Xi, vector_choice)

    def ext(f):
        out = GroupAlgebraElement.zero(f.group)
        for left_s, right_s, s_s in terms:
            lf = left_s * f
            if not lf:
                continue
            for left_t, right_t, s_t in terms:
                inner = lf * right_t
                if not inner:
                    continue
                out = out + (right_t * circ_small(inner) * left_s).scale(s_s * s_t)
        return out

    return AntiInvolution.from_function(H_big, ext, f"extension of {circ_small.name}")


def interchanges_bimodules(iota: AntiInvolution, biml: CornerAlgebra, bimr: CornerAlgebra) -> bool:
    imgs = [iota(x) for x in biml.basis]
    if not all(bimr.contains(y) for y in imgs):
        return False
    ech = Echelon()
    for y in imgs:
        ech.add(y.coeffs)
    return ech.rank == bimr.dim


# ---------------------------------------------------------------------------
# forms


def form_left(iota: AntiInvolution, a, b) -> GroupAlgebraElement:
    """(a, b) = a^circ * b on H(Xi, small), valued in H_small."""
    return iota(a) * _gae(b)


def form_right(iota: AntiInvolution, x, y) -> GroupAlgebraElement:
    """(x, y) = x * y^circ on H(small, Xi), valued in H_small."""
    return _gae(x) * iota(y)


def positivity_certificate(a, cert, iota: AntiInvolution) -> list:
    """Witnesses (w_k, s_k) with (a, a) = sum s_k w_k^circ * w_k and s_k totally positive."""
    a = _gae(a)
    if not cert.self_adjoint:
        raise CertificateError("certificate has no self-adjoint form")
    if not a:
        return []
    out = []
    for c, s in cert.self_adjoint:
        w = c.star() * a
        if w:
            out.append((w, s))
    return out


def verify_positivity(a, witnesses, iota) -> bool:
    a = _gae(a)
    lhs = form_left(iota, a, a)
    rhs = GroupAlgebraElement.zero(a.group)
    for w, s in witnesses:
        rhs = rhs + (iota(w) * w).scale(s)
    return lhs == rhs and all(s.is_totally_positive() for _, s in witnesses)


# ---------------------------------------------------------------------------
# Hermitian forms on modules


def _sesq(u, M, v):
    """u^T M conj(v)"""
    total = ZERO
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b and M[i][j]:
                    total = total + a * M[i][j] * b.conj()
    return total


def _col(M, j):
    return [row[j] for row in M]


def check_hermitian_form(X: FiniteModule, gram, iota: AntiInvolution) -> None:
    n = X.dim
    if any(gram[i][j] != gram[j][i].conj() for i in range(n) for j in range(n)):
        raise FormError("form is not Hermitian")
    if n and not det(gram):
        raise FormError("form is degenerate")
    if not is_invariant(X, gram, iota):
        raise FormError("form is not invariant for the involution")


def is_invariant(X: FiniteModule, gram, iota: AntiInvolution) -> bool:
    """<h x, y> = <x, h^circ y> on basis vectors."""
    n = X.dim
    A = X.algebra
    for h, img in zip(A.basis, iota.images):
        Mh, Mc = X.act(h), X.act(img)
        for i in range(n):
            for j in range(n):
                if _sesq(_col(Mh, i), gram, _unit(n, j)) != _sesq(_unit(n, i), gram, _col(Mc, j)):
                    return False
    return True


def _unit(n, i):
    return [CycloScalar.rational(1) if k == i else ZERO for k in range(n)]


def transport_hermitian_form(X: FiniteModule, gram, bimodule: CornerAlgebra, target: CornerAlgebra, iota: AntiInvolution, iota_target: AntiInvolution | None = None):
    """Transport (X, gram) to bimodule (x) X with <a x, b y> = <pi(b^circ a) x, y>.

    ``iota`` is the involution on the algebra containing the bimodule (used
    to form b^circ a); the source form must be invariant for the involution
    restricted to X's algebra, and the output is checked for invariance
    under ``iota_target`` when given.
    """
    src_iota = AntiInvolution.from_function(X.algebra, iota, "restricted")
    check_hermitian_form(X, gram, src_iota)
    Y = tensor_module(bimodule, target, X)
    m = X.dim
    free = Y.tensor_free
    n = len(free)
    G = [[ZERO] * n for _ in range(n)]
    pairs = [divmod(t, m) for t in free]
    for r, (i, j) in enumerate(pairs):
        for c, (k, l) in enumerate(pairs):
            h = iota(bimodule.basis[k]) * bimodule.basis[i]
            Mh = X.act(h)
            G[r][c] = _sesq(_col(Mh, j), gram, _unit(m, l))
    if iota_target is not None and not is_invariant(Y, G, iota_target):
        raise FormError("transported form is not invariant")
    return Y, G


def form_report(X, gram, biml, bimr, H_big, H_small, iota_big) -> dict:
    """Transport a form to H_big-modules and back; compare positivity and congruence."""
    Y, GY = transport_hermitian_form(X, gram, biml, H_big, iota_big, iota_big)
    Z, GZ = transport_hermitian_form(Y, GY, bimr, H_small, iota_big)
    N = natural_roundtrip_map(X, Y, Z)
    # Gram of the pulled-back form: entries <N e_r, N e_c>
    congruent = all(
        GZ[r][c] == _sesq(_col(N, r), gram, _col(N, c)) for r in range(Z.dim) for c in range(Z.dim)
    )
    return {
        "input positive definite": is_positive_definite(gram),
        "transported dim": Y.dim,
        "transported positive definite": is_positive_definite(GY),
        "roundtrip positive definite": is_positive_definite(GZ),
        "roundtrip congruent": congruent and bool(det(N)),
    }
