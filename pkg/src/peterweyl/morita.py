"""
Full-idempotent certificates, bimodules, Morita functors and the transfer of
centers between the corner algebras H_Xi = e_Xi CG e_Xi and
H_small = e_small CG e_small.

Bimodules: ``biml`` = e_Xi CG e_small (left H_Xi, right H_small) and
``bimr`` = e_small CG e_Xi.  Modules are finite-dimensional left modules
given by action matrices on the algebra basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from peterweyl.algebra import GroupAlgebraElement
from peterweyl.corner import CornerAlgebra, _split_primitive
from peterweyl.errors import CertificateError, ModuleAxiomError, NotCentralError
from peterweyl.linalg import (
    ONE,
    ZERO,
    Echelon,
    det,
    identity,
    mat_add,
    mat_equal,
    mat_mul,
    mat_scale,
    nullspace,
    rank,
    solve,
    zeros,
)
from peterweyl.reps import NormalizedVector, matrix_coefficient
from peterweyl.scalars import CycloScalar

__all__ = [
    "CornerAlgebra",
    "FiniteModule",
    "FullIdempotentCertificate",
    "bimodule_factorization_check",
    "center_transfer",
    "center_transfer_report",
    "certify_by_linear_solve",
    "certify_full_idempotent",
    "corner_algebra",
    "cyclic_and_fg_module_checks",
    "find_intertwiner",
    "full_idempotent_span_check",
    "is_intertwiner",
    "morita_functors",
    "natural_roundtrip_map",
    "roundtrip",
    "center_tables",
    "tensor_module",
    "corner_module",
]


def _gae(x):
    return getattr(x, "element", x)


def corner_algebra(e, f=None) -> CornerAlgebra:
    return CornerAlgebra(_gae(e), None if f is None else _gae(f))


# ---------------------------------------------------------------------------
# certificates


@dataclass
class FullIdempotentCertificate:
    """sum_i a_i * b_i = e_Xi and, optionally, sum_j s_j c_j * c_j^star = e_Xi."""

    a: list
    b: list
    target: GroupAlgebraElement
    self_adjoint: list = field(default_factory=list)  # [(c_j, s_j)]
    method: str = "matrix-coefficients"

    def sum_ab(self) -> GroupAlgebraElement:
        out = GroupAlgebraElement.zero(self.target.group)
        for x, y in zip(self.a, self.b):
            out = out + x * y
        return out

    def sum_self_adjoint(self) -> GroupAlgebraElement:
        out = GroupAlgebraElement.zero(self.target.group)
        for c, s in self.self_adjoint:
            out = out + (c * c.star()).scale(s)
        return out

    def verify(self, biml=None, bimr=None) -> dict:
        report = {"sum a*b = e_Xi": self.sum_ab() == self.target}
        if biml is not None:
            report["a in H(Xi,small)"] = all(biml.contains(x) for x in self.a)
        if bimr is not None:
            report["b in H(small,Xi)"] = all(bimr.contains(y) for y in self.b)
        if self.self_adjoint:
            report["sum s c c* = e_Xi"] = self.sum_self_adjoint() == self.target
            report["scales totally positive"] = all(s.is_totally_positive() for _, s in self.self_adjoint)
        return report

    def to_dict(self) -> dict:
        G = self.target.group
        return {
            "method": self.method,
            "terms": len(self.a),
            "witness_supports": [[len(x.support), len(y.support)] for x, y in zip(self.a, self.b)],
            "self_adjoint_scales": [str(s) for _, s in self.self_adjoint],
            "group": G.name,
        }


def certify_full_idempotent(H_big: CornerAlgebra, small, Xi=None, vector_choice: int = 0) -> FullIdempotentCertificate:
    """Witnesses a_k = s m_{u_k, v}, b_k = m_{v, u_k} with v fixed by small.

    For each model in Xi, v spans a line in the image of rho(small) and
    {u_k} is an orthogonal basis; the scale s is the product of the two
    normalization scales so that a_k * b_k is the normalized diagonal
    coefficient m_{u_k^, u_k^}.
    """
    e_xi = H_big.one
    small_e = _gae(small)
    if small_e == e_xi:
        return FullIdempotentCertificate([e_xi], [e_xi], e_xi, [(e_xi, CycloScalar.rational(1))], "trivial")
    if Xi is None:
        raise CertificateError("models are required to build matrix-coefficient witnesses")
    a, b, sa = [], [], []
    for model in Xi:
        fixed = model.fixed_vectors(small_e)
        if not fixed:
            raise CertificateError(f"{model.label} has no vector fixed by the small idempotent")
        v = _choose_vector(fixed, vector_choice)
        nv = NormalizedVector.of(model, v)
        for nu in model.normalized_basis():
            base = matrix_coefficient(model, nu.vector, nv.vector).element
            s = nu.scale * nv.scale
            a.append(base.scale(s))
            b.append(base.star())
            sa.append((base, s))
    cert = FullIdempotentCertificate(a, b, e_xi, sa)
    if cert.sum_ab() != e_xi:
        raise CertificateError("matrix-coefficient witnesses do not sum to e_Xi")
    return cert


def _choose_vector(fixed, choice):
    if choice == 0:
        return fixed[0]
    if len(fixed) > 1:
        return [x + y for x, y in zip(fixed[0], fixed[1])]
    return [a * 3 for a in fixed[0]]


def certify_by_linear_solve(H_big: CornerAlgebra, biml: CornerAlgebra, bimr: CornerAlgebra) -> FullIdempotentCertificate:
    """Independent witnesses: solve sum c_ij x_i * y_j = e_Xi over bimodule bases."""
    products = [(i, j, x * y) for i, x in enumerate(biml.basis) for j, y in enumerate(bimr.basis)]
    cols = [H_big.coordinates(p) for _, _, p in products]
    A = [[col[r] for col in cols] for r in range(H_big.dim)]
    target = H_big.coordinates(H_big.one)
    sol = solve(A, target)
    if sol is None:
        raise CertificateError("e_Xi is not in the span of bimodule products: not a full idempotent")
    a, b = [], []
    for (i, j, _), c in zip(products, sol):
        if c:
            a.append(biml.basis[i].scale(c))
            b.append(bimr.basis[j])
    return FullIdempotentCertificate(a, b, H_big.one, [], "linear-solve")


# ---------------------------------------------------------------------------
# bimodule checks


def _span_equals(target: CornerAlgebra, elements) -> bool:
    ech = Echelon()
    for x in elements:
        if not target.contains(x):
            return False
        ech.add(x.coeffs)
    return ech.rank == target.dim


def bimodule_factorization_check(H_big, H_small, biml, bimr) -> dict:
    big = _span_equals(H_big, [x * y for x in biml.basis for y in bimr.basis])
    small = _span_equals(H_small, [y * x for y in bimr.basis for x in biml.basis])
    return {"H_big = biml * bimr": big, "H_small = bimr * biml": small}


def full_idempotent_span_check(H_big, small) -> bool:
    """H_big * small * H_big = H_big."""
    s = _gae(small)
    return _span_equals(H_big, [x * s * y for x in H_big.basis for y in H_big.basis])


def _greedy_generators(module_basis, algebra_basis, target_dim, act):
    ech = Echelon()
    gens = []
    for y in module_basis:
        if ech.contains(y.coeffs):
            continue
        gens.append(y)
        for h in algebra_basis:
            ech.add(act(h, y).coeffs)
        if ech.rank == target_dim:
            break
    return gens, ech.rank


def cyclic_and_fg_module_checks(H_big, H_small, biml, bimr) -> dict:
    small = H_small.one
    cyclic = _span_equals(biml, [h * small for h in H_big.basis])
    gens, r = _greedy_generators(bimr.basis, H_small.basis, bimr.dim, lambda h, y: h * y)
    return {
        "biml cyclic with generator e_small": cyclic,
        "bimr generators over H_small": len(gens),
        "bimr generated": r == bimr.dim,
        "bimr dim": bimr.dim,
    }


# ---------------------------------------------------------------------------
# modules


class FiniteModule:
    """Left module over a unital corner algebra: one action matrix per basis element."""

    def __init__(self, algebra: CornerAlgebra, actions: list, name: str = "", check: bool = True):
        self.algebra = algebra
        self.actions = actions
        self.dim = len(actions[0]) if actions and actions[0] else 0
        self.name = name
        if check:
            self.check_axioms()

    def act(self, x) -> list:
        """Action matrix of an arbitrary algebra element."""
        coords = self.algebra.coordinates(_gae(x))
        out = zeros(self.dim, self.dim)
        for c, M in zip(coords, self.actions):
            if c:
                out = mat_add(out, mat_scale(c, M))
        return out

    def check_axioms(self) -> None:
        A = self.algebra
        if self.dim == 0:
            return
        if not mat_equal(self.act(A.one), identity(self.dim)):
            raise ModuleAxiomError("the identity of the algebra does not act as the identity")
        sc = A.structure_constants
        for i, Mi in enumerate(self.actions):
            for j, Mj in enumerate(self.actions):
                lhs = mat_mul(Mi, Mj)
                rhs = zeros(self.dim, self.dim)
                for k, c in enumerate(sc[i][j]):
                    if c:
                        rhs = mat_add(rhs, mat_scale(c, self.actions[k]))
                if not mat_equal(lhs, rhs):
                    raise ModuleAxiomError(f"action does not respect the product of basis elements {i}, {j}")

    @classmethod
    def zero(cls, algebra) -> "FiniteModule":
        return cls(algebra, [[] for _ in algebra.basis], "0", check=False)

    @classmethod
    def regular(cls, algebra) -> "FiniteModule":
        mod = cls(algebra, [algebra.left_matrix(b) for b in algebra.basis], "regular")
        mod.elements = list(algebra.basis)
        return mod

    @classmethod
    def left_ideal(cls, algebra, p, name="") -> "FiniteModule":
        """The left ideal algebra * p with left multiplication."""
        p = _gae(p)
        ech = Echelon(track=True)
        basis = []
        for b in algebra.basis:
            y = b * p
            if ech.reduce(y.coeffs):
                ech.add(y.coeffs, label=len(basis))
                basis.append(y)
        actions = []
        for h in algebra.basis:
            cols = []
            for y in basis:
                combo = ech.coordinates((h * y).coeffs)
                cols.append([combo.get(i, ZERO) for i in range(len(basis))])
            actions.append([list(r) for r in zip(*cols)])
        mod = cls(algebra, actions, name)
        mod.elements = basis
        return mod

    @classmethod
    def simples(cls, algebra) -> list:
        """One simple module per block of a semisimple corner algebra."""
        out = []
        for k, z in enumerate(algebra.central_idempotents):
            p = _split_primitive(algebra, z)[0]
            out.append(cls.left_ideal(algebra, p, f"simple{k}"))
        return out

    def l2_gram(self) -> list:
        """Gram matrix of sum_x f(x) conj(h(x)) on a left-ideal module."""
        els = self.elements
        return [[sum((a * y(x).conj() for x, a in u.coeffs.items()), ZERO) for y in els] for u in els]


def _pure_tensor_index(i, j, xdim):
    return i * xdim + j


def tensor_module(bimodule: CornerAlgebra, target: CornerAlgebra, X: FiniteModule) -> FiniteModule:
    """bimodule (x)_{X.algebra} X as a module over ``target``.

    The tensor product is the quotient of bimodule (x) X by the relations
    (a h) (x) x - a (x) (h x); a reduced echelon of the relations makes the
    non-pivot pure tensors a basis of the quotient.
    """
    A = X.algebra
    n, m = bimodule.dim, X.dim
    if m == 0:
        return FiniteModule.zero(target)
    rel = Echelon()
    for i, a in enumerate(bimodule.basis):
        for k, h in enumerate(A.basis):
            ah = bimodule.coordinates(a * h)
            Xh = X.actions[k]
            for j in range(m):
                v: dict = {}
                for i2, c in enumerate(ah):
                    if c:
                        v[_pure_tensor_index(i2, j, m)] = v.get(_pure_tensor_index(i2, j, m), ZERO) + c
                for j2 in range(m):
                    c = Xh[j2][j]
                    if c:
                        key = _pure_tensor_index(i, j2, m)
                        v[key] = v.get(key, ZERO) - c
                rel.add(v)
    free = [t for t in range(n * m) if t not in rel._where]
    pos = {t: r for r, t in enumerate(free)}
    actions = []
    for h in target.basis:
        cols = []
        for t in free:
            i, j = divmod(t, m)
            ha = bimodule.coordinates(h * bimodule.basis[i])
            v = {_pure_tensor_index(i2, j, m): c for i2, c in enumerate(ha) if c}
            r = rel.reduce(v)
            col = [ZERO] * len(free)
            for key, c in r.items():
                col[pos[key]] = c
            cols.append(col)
        actions.append([list(r) for r in zip(*cols)])
    mod = FiniteModule(target, actions, f"{bimodule.name}(x){X.name}")
    mod.tensor_free = free
    mod.tensor_factor_dim = m
    mod.tensor_bimodule = bimodule
    mod.tensor_relations = rel
    return mod


def corner_module(Y: FiniteModule, small: CornerAlgebra) -> FiniteModule:
    """e_small Y as a module over small = e_small H e_small (H = Y.algebra)."""
    if Y.dim == 0:
        return FiniteModule.zero(small)
    P = Y.act(small.one)
    cols = [list(c) for c in zip(*P)]
    ech = Echelon(track=True)
    basis = []
    for c in cols:
        v = dict(enumerate(c))
        if ech.reduce(v):
            ech.add(v, label=len(basis))
            basis.append(c)
    actions = []
    for h in small.basis:
        M = Y.act(h)
        cols2 = []
        for c in basis:
            img = [sum((M[r][k] * c[k] for k in range(Y.dim) if c[k]), ZERO) for r in range(Y.dim)]
            combo = ech.coordinates(dict(enumerate(img)))
            cols2.append([combo.get(i, ZERO) for i in range(len(basis))])
        actions.append([list(r) for r in zip(*cols2)])
    return FiniteModule(small, actions, f"e{Y.name}")


def morita_functors(H_big, H_small, biml, bimr, X: FiniteModule) -> FiniteModule:
    """Transport X across the equivalence (tensor definition)."""
    if X.algebra is H_small:
        return tensor_module(biml, H_big, X)
    if X.algebra is H_big:
        return tensor_module(bimr, H_small, X)
    raise ModuleAxiomError("module is over neither corner algebra")


def find_intertwiner(X: FiniteModule, Y: FiniteModule, rng=None):
    """An invertible T with T X(h) = Y(h) T for all basis h, or None."""
    if X.dim != Y.dim:
        return None
    n = X.dim
    if n == 0:
        return []
    rows = []
    for MX, MY in zip(X.actions, Y.actions):
        # (T MX - MY T)[r][c] = sum_k T[r][k] MX[k][c] - MY[r][k] T[k][c]
        for r in range(n):
            for c in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    if MX[k][c]:
                        row[r * n + k] = row[r * n + k] + MX[k][c]
                    if MY[r][k]:
                        row[k * n + c] = row[k * n + c] - MY[r][k]
                if any(row):
                    rows.append(row)
    basis = nullspace(rows, n * n)
    if not basis:
        return None
    rng = rng or random.Random(5)
    for attempt in range(30):
        coeffs = [1] + [rng.randint(-3, 3) for _ in basis[1:]] if attempt == 0 else [rng.randint(-5, 5) for _ in basis]
        flat = [sum((c * v[t] for c, v in zip(coeffs, basis) if c), ZERO) for t in range(n * n)]
        T = [flat[r * n:(r + 1) * n] for r in range(n)]
        if det(T):
            return T
    return None


def is_intertwiner(T, X: FiniteModule, Y: FiniteModule) -> bool:
    return all(mat_equal(mat_mul(T, MX), mat_mul(MY, T)) for MX, MY in zip(X.actions, Y.actions)) and bool(det(T))


def natural_roundtrip_map(X: FiniteModule, FX: FiniteModule, GFX: FiniteModule) -> list:
    """Matrix of y (x) a (x) x -> (y a) x from G(F(X)) to X."""
    m = X.dim
    fm = FX.tensor_factor_dim
    biml = FX.tensor_bimodule
    bimr = GFX.tensor_bimodule
    fdim = FX.dim
    cols = []
    for t in GFX.tensor_free:
        i, j = divmod(t, fdim)
        ai, xj = divmod(FX.tensor_free[j], fm)
        ya = bimr.basis[i] * biml.basis[ai]
        cols.append([r[xj] for r in X.act(ya)])
    return [list(r) for r in zip(*cols)]


def roundtrip(H_big, H_small, biml, bimr, X: FiniteModule) -> dict:
    FX = morita_functors(H_big, H_small, biml, bimr, X)
    GFX = morita_functors(H_big, H_small, biml, bimr, FX)
    if X.dim == 0:
        return {"dim": 0, "transported_dim": FX.dim, "roundtrip_dim": GFX.dim, "intertwiner": GFX.dim == 0, "natural": True}
    T = find_intertwiner(GFX, X)
    N = natural_roundtrip_map(X, FX, GFX)
    corner = corner_module(FX, H_small)
    Tc = find_intertwiner(corner, X)
    return {
        "dim": X.dim,
        "transported_dim": FX.dim,
        "roundtrip_dim": GFX.dim,
        "intertwiner": T is not None and is_intertwiner(T, GFX, X),
        "natural": len(N) == X.dim and len(N[0]) == GFX.dim and is_intertwiner(N, GFX, X),
        "corner_form_agrees": Tc is not None and is_intertwiner(Tc, corner, X),
    }


# ---------------------------------------------------------------------------
# centers


def center_transfer(H_big, H_small, cert: FullIdempotentCertificate, z) -> GroupAlgebraElement:
    """z -> sum_i a_i * z * b_i."""
    z = _gae(z)
    if not H_small.contains(z) or not H_small.is_central(z):
        raise NotCentralError("input is not central in the small algebra")
    out = GroupAlgebraElement.zero(H_big.group)
    for a, b in zip(cert.a, cert.b):
        out = out + a * z * b
    return out


def center_transfer_report(H_big, H_small, cert, other_cert=None) -> dict:
    Zs = H_small.center
    Zb = H_big.center
    images = [center_transfer(H_big, H_small, cert, z) for z in Zs]
    central = all(H_big.contains(w) and H_big.is_central(w) for w in images)
    ech = Echelon()
    for w in images:
        ech.add(w.coeffs)
    bijective = ech.rank == len(Zs) == len(Zb)
    unital = center_transfer(H_big, H_small, cert, H_small.one) == H_big.one
    mult = all(
        center_transfer(H_big, H_small, cert, x * y) == images[i] * images[j]
        for i, x in enumerate(Zs)
        for j, y in enumerate(Zs)
    )
    report = {
        "dim Z(small)": len(Zs),
        "dim Z(big)": len(Zb),
        "central": central,
        "bijective": bijective,
        "unital": unital,
        "multiplicative": mult,
    }
    if other_cert is not None:
        report["certificate independent"] = all(
            center_transfer(H_big, H_small, other_cert, z) == w for z, w in zip(Zs, images)
        )
    return report


def center_tables(H_big, H_small, cert) -> dict:
    """Multiplication tables of the small center basis and of its image."""
    Zs = H_small.center
    images = [center_transfer(H_big, H_small, cert, z) for z in Zs]

    def table(basis, alg):
        sub = Echelon(track=True)
        for k, z in enumerate(basis):
            sub.add(z.coeffs, label=k)
        out = []
        for x in basis:
            row = []
            for y in basis:
                c = sub.coordinates((x * y).coeffs)
                row.append([str(c.get(k, ZERO)) for k in range(len(basis))])
            out.append(row)
        return out

    return {"small": table(Zs, H_small), "big": table(images, H_big)}
