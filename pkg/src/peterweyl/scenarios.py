"""
End-to-end scenario runs used by the CLI, the demos and the acceptance suite.

A scenario is a group descriptor plus a torus character.  Each runner
returns a JSON-ready dict whose boolean leaves are the verified identities.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from peterweyl import affine
from peterweyl.algebra import GroupAlgebraElement, operator_fourier_separation, subgroup_idempotent
from peterweyl.groups import build_group, double_cosets, weyl_orbit
from peterweyl.idempotents import build_e_delta, build_e_sigma, build_e_xi, idem_formula_sum, verify_compatibility
from peterweyl.involutions import (
    bullet_on_finite_hecke,
    hecke_basis,
    extend_involution,
    form_report,
    interchanges_bimodules,
    positivity_certificate,
    restrict_star,
    verify_positivity,
)
from peterweyl.linalg import ONE, ZERO, Echelon
from peterweyl.morita import (
    FiniteModule,
    bimodule_factorization_check,
    center_tables,
    center_transfer_report,
    certify_by_linear_solve,
    certify_full_idempotent,
    corner_algebra,
    cyclic_and_fg_module_checks,
    roundtrip,
)
from peterweyl.reps import block_decompose, decompose_induced, irreducible_models, matrix_coefficient, schur_convolve


@dataclass(frozen=True)
class Scenario:
    family: str
    q: int
    character: tuple = ()
    parabolic: tuple | None = None
    seed: int = 0
    name: str = ""

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        return cls(
            family=d["family"],
            q=int(d["q"]),
            character=tuple(d.get("character", ())),
            parabolic=tuple(d["parabolic"]) if d.get("parabolic") else None,
            seed=int(d.get("seed", 0)),
            name=d.get("name", ""),
        )

    def label(self) -> str:
        return self.name or f"{self.family}({self.q}) chi={list(self.character)}"


@dataclass
class Context:
    """Everything a scenario builds once and the runners share."""

    scenario: Scenario
    chain: object
    chi: object
    Xi: list
    e_sigma: object
    e_delta: object
    e_xi: object
    H_big: object
    H_small: object
    biml: object
    bimr: object
    cache: dict = field(default_factory=dict)

    @property
    def cert(self):
        if "cert" not in self.cache:
            self.cache["cert"] = certify_full_idempotent(self.H_big, self.e_sigma, self.Xi)
        return self.cache["cert"]

    @property
    def cert_solve(self):
        if "cert_solve" not in self.cache:
            self.cache["cert_solve"] = certify_by_linear_solve(self.H_big, self.biml, self.bimr)
        return self.cache["cert_solve"]


def build_context(sc: Scenario) -> Context:
    chain = build_group(sc.family, sc.q, sc.parabolic)
    chi = chain.character(sc.character or (0,) * len(chain.trivial_character().exponents))
    Xi = decompose_induced(chain, chi)
    e_sigma = build_e_sigma(chain, chi)
    e_delta = build_e_delta(chain, weyl_orbit(chi))
    e_xi = build_e_xi(chain.G, Xi, chain)
    return Context(
        scenario=sc,
        chain=chain,
        chi=chi,
        Xi=Xi,
        e_sigma=e_sigma,
        e_delta=e_delta,
        e_xi=e_xi,
        H_big=corner_algebra(e_xi),
        H_small=corner_algebra(e_sigma),
        biml=corner_algebra(e_xi, e_sigma),
        bimr=corner_algebra(e_sigma, e_xi),
    )


def _timed(fn):
    def run(ctx, *args, **kwargs):
        start = time.perf_counter()
        out = fn(ctx, *args, **kwargs)
        out["seconds"] = round(time.perf_counter() - start, 3)
        return out

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def idempotent_report(ctx: Context) -> dict:
    return {
        "group": ctx.chain.describe(),
        "character": ctx.chi.label(),
        "orbit": [c.label() for c in weyl_orbit(ctx.chi)],
        "Xi": [m.to_dict() for m in ctx.Xi],
        "sigma": ctx.e_sigma.summary(),
        "delta": ctx.e_delta.summary(),
        "xi": ctx.e_xi.summary(),
        "compatibility": verify_compatibility(ctx.e_xi, ctx.e_sigma, ctx.e_delta),
    }


@_timed
def dimension_report(ctx: Context) -> dict:
    chain = ctx.chain
    G = chain.G
    H_B = corner_algebra(subgroup_idempotent(G, chain.B))
    return {
        "dim H_B": H_B.dim,
        "#B\\G/B": len(double_cosets(G, chain.B, chain.B)),
        "dim H_Xi": ctx.H_big.dim,
        "sum deg^2": sum(m.degree ** 2 for m in ctx.Xi),
        "dim Z(H_Xi)": len(ctx.H_big.center),
        "dim Z(H_sigma)": len(ctx.H_small.center),
        "|Xi|": len(ctx.Xi),
        "dim H_sigma": ctx.H_small.dim,
        "dim H_Delta": corner_algebra(ctx.e_delta).dim,
    }


@_timed
def certificate_report(ctx: Context) -> dict:
    return {
        "formula": {**ctx.cert.verify(ctx.biml, ctx.bimr), "summary": ctx.cert.to_dict()},
        "linear_solve": {**ctx.cert_solve.verify(), "summary": ctx.cert_solve.to_dict()},
    }


@_timed
def morita_report(ctx: Context, tables: bool = False) -> dict:
    H_big, H_small, biml, bimr = ctx.H_big, ctx.H_small, ctx.biml, ctx.bimr
    modules = [FiniteModule.regular(H_small)] + FiniteModule.simples(H_small)
    out = {
        "dims": {"H_Xi": H_big.dim, "H_sigma": H_small.dim, "H(Xi,sigma)": biml.dim, "H(sigma,Xi)": bimr.dim},
        "factorization": bimodule_factorization_check(H_big, H_small, biml, bimr),
        "generation": cyclic_and_fg_module_checks(H_big, H_small, biml, bimr),
        "roundtrips": {X.name or f"module {k}": roundtrip(H_big, H_small, biml, bimr, X) for k, X in enumerate(modules)},
        "center": center_transfer_report(H_big, H_small, ctx.cert, ctx.cert_solve),
    }
    if tables:
        out["center_tables"] = center_tables(H_big, H_small, ctx.cert)
    return out


def _units(d):
    return [[ONE if i == j else ZERO for i in range(d)] for j in range(d)]


def _blocks_annihilate(blocks: dict) -> bool:
    # block (k,i,l,j) times block (k',i',l',j') vanishes unless (l,j) == (k',i')
    return all(not (blocks[a] * blocks[b]) for a in blocks for b in blocks if a[2:] != b[:2])


@_timed
def matrix_coefficient_report(ctx: Context) -> dict:
    G = ctx.chain.G
    schur = constant = True
    for model in ctx.Xi:
        units = _units(model.degree)
        for x2 in units:
            for y1 in units:
                m1 = matrix_coefficient(model, units[0], x2)
                m2 = matrix_coefficient(model, y1, units[-1])
                product = m1.element * m2.element
                schur = schur and product == schur_convolve(m1, m2)
                c = model.inner(x2, y1).conj() * Fraction(G.order, model.degree)
                constant = constant and product == matrix_coefficient(model, units[0], units[-1]).element.scale(c)
    cross = all(
        not (matrix_coefficient(a, _units(a.degree)[0], _units(a.degree)[0]).element
             * matrix_coefficient(b, _units(b.degree)[0], _units(b.degree)[0]).element)
        for a in ctx.Xi for b in ctx.Xi if a is not b
    )
    bases = [m.normalized_basis() for m in ctx.Xi]
    rng = random.Random(ctx.scenario.seed)
    f = GroupAlgebraElement.random(G, rng, support=min(G.order, 12))
    blocks = block_decompose(f, ctx.Xi, bases)
    total = GroupAlgebraElement.zero(G)
    for piece in blocks.values():
        total = total + piece
    x = ctx.e_xi.element
    return {
        "schur relation": schur,
        "schur constant |K|/deg": constant,
        "inequivalent models orthogonal": cross,
        "idempotent re-summation": idem_formula_sum(ctx.Xi, bases) == x,
        "block re-summation": total == x * f * x,
        "blocks mutually annihilating": _blocks_annihilate(blocks),
        "blocks": len(blocks),
    }


def small_involution(ctx: Context):
    """bullet on H_B for trivial chi (where it equals star), star otherwise."""
    if ctx.chi.is_trivial() and ctx.chain.P == ctx.chain.B:
        return bullet_on_finite_hecke(ctx.H_small, ctx.chain)
    return restrict_star(ctx.H_small)


@_timed
def involution_report(ctx: Context, show_action: bool = False) -> dict:
    H_big, H_small, biml, bimr = ctx.H_big, ctx.H_small, ctx.biml, ctx.bimr
    circ = small_involution(ctx)
    ext = extend_involution(circ, H_big, ctx.Xi, 0)
    other = extend_involution(circ, H_big, ctx.Xi, 1)
    rng = random.Random(ctx.scenario.seed)
    a = biml.element([rng.randint(-2, 2) for _ in range(biml.dim)])
    witnesses = positivity_certificate(a, ctx.cert, ext)
    modules = [FiniteModule.regular(H_small)] + FiniteModule.simples(H_small)
    out = {
        "small involution": circ.name,
        "small involution checks": circ.check(),
        "small involution equals star": all(circ(b) == b.star() for b in H_small.basis),
        "extension checks": ext.check(),
        "restricts to small": all(ext(b) == circ(b) for b in H_small.basis),
        "independent of fixed vector": all(x == y for x, y in zip(ext.images, other.images)),
        "equals star": all(x == b.star() for x, b in zip(ext.images, H_big.basis)),
        "interchanges bimodules": interchanges_bimodules(ext, biml, bimr) and interchanges_bimodules(ext, bimr, biml),
        "positivity witness": verify_positivity(a, witnesses, ext),
        "forms": {X.name or f"module {k}": form_report(X, X.l2_gram(), biml, bimr, H_big, H_small, ext) for k, X in enumerate(modules)},
    }
    if show_action:
        out["action"] = ext.to_dict()
    return out


@_timed
def fourier_report(ctx: Context, pairs: int = 100) -> dict:
    G = ctx.chain.G
    reps = irreducible_models(G)
    rng = random.Random(ctx.scenario.seed)
    agree = equal_pairs = 0
    for k in range(pairs):
        f = GroupAlgebraElement.random(G, rng, support=rng.randint(0, 6))
        # every third pair is equal, every other one differs in one coefficient
        g = f if k % 3 == 0 else f + GroupAlgebraElement.delta(G, rng.randrange(G.order)).scale(rng.choice([-1, 1]))
        equal_pairs += f == g
        agree += operator_fourier_separation(f, g, reps) == (f == g)
    return {"pairs": pairs, "agree": agree, "equal pairs": equal_pairs, "degrees": [m.degree for m in reps]}


def finite_hecke_constants(q: int) -> dict:
    """Structure constants of H_B for SL2(q) in the basis T_e, T_s."""
    chain = build_group("SL2", q)
    H_B = corner_algebra(subgroup_idempotent(chain.G, chain.B))
    T = hecke_basis(chain, H_B)
    names = {w: ("s" if w == chain.longest else "e") for w in T}
    basis = {names[w]: x for w, x in T.items()}
    out = {}
    for a, x in basis.items():
        for b, y in basis.items():
            out[(a, b)] = solve_in_span([basis["e"], basis["s"]], x * y)
    return out


def solve_in_span(vectors, target) -> list:
    ech = Echelon(track=True)
    for k, v in enumerate(vectors):
        ech.add(v.coeffs, label=k)
    c = ech.coordinates(target.coeffs)
    return [c.get(k, ZERO) for k in range(len(vectors))]


def affine_report(length: int = 8, theta_range: int = 6, bernstein_range: int = 3, relation_length: int = 6) -> dict:
    start = time.perf_counter()
    A = affine
    H = A.AffineHeckeElement
    els = list(A.elements_up_to(length))
    Ts = {s: H.T(A.AffineWeylElement(1, s)) for s in (0, 1)}
    quadratic = all(Ts[s] * Ts[s] == Ts[s] * (A.Q - 1) + A.Q for s in (0, 1))
    # T_u T_v = T_{uv} whenever lengths add; otherwise the product is not a single term
    braid = all(
        (H.T(u) * H.T(v) == H.T(u * v)) == ((u * v).length == u.length + v.length)
        for u in els for v in els if u.length + v.length <= length
    )
    xs = range(-theta_range, theta_range + 1)
    thetas = {x: A.theta(x) for x in xs}
    commute = all(thetas[x] * thetas[y] == thetas[y] * thetas[x] for x in xs for y in xs)
    additive = all(thetas[x] * thetas[y] == thetas[x + y] for x in xs for y in xs if abs(x + y) <= theta_range)
    bernstein = {x: A.verify_bernstein_relation(x) for x in range(-bernstein_range, bernstein_range + 1)}
    basis = [H.T(w) for w in els]
    pairs = [(a, b) for a in els for b in els if a.length + b.length <= length]

    def anti_involutive(op):
        involutive = all(op(op(x)) == x for x in basis)
        anti = all(op(H.T(a) * H.T(b)) == op(H.T(b)) * op(H.T(a)) for a, b in pairs)
        return involutive and anti

    relation = all(A.verify_bullet_star_relation(H.T(w), relation_length) for w in A.elements_up_to(relation_length))
    specialization = {}
    for q in (2, 3):
        finite = finite_hecke_constants(q)
        ok = True
        for s in (0, 1):
            gens = {"e": H.T(A.E), "s": Ts[s]}
            for (a, b), coords in finite.items():
                prod = (gens[a] * gens[b]).specialize(q)
                want = {A.E: coords[0], A.AffineWeylElement(1, s): coords[1]}
                ok = ok and all(prod.get(w, 0) == want.get(w, 0) for w in set(prod) | set(want))
        specialization[q] = ok
    return {
        "quadratic relation": quadratic,
        "length-additive products": braid,
        "theta commutative": commute,
        "theta additive": additive,
        "bernstein relation": bernstein,
        "bullet anti-involutive": anti_involutive(A.bullet),
        "star anti-involutive": anti_involutive(A.star_affine),
        "bullet/star relation": relation,
        "specialization": specialization,
        "seconds": round(time.perf_counter() - start, 3),
    }


SECTIONS = {
    "idempotents": idempotent_report,
    "dimensions": dimension_report,
    "certificates": certificate_report,
    "morita": morita_report,
    "matrix_coefficients": matrix_coefficient_report,
    "involutions": involution_report,
    "fourier": fourier_report,
}


def run_scenario(sc: Scenario, sections=None) -> dict:
    ctx = build_context(sc)
    names = list(SECTIONS) if not sections else list(sections)
    return {"scenario": sc.label(), **{name: SECTIONS[name](ctx) for name in names}}


def all_true(report) -> bool:
    """True when every boolean leaf of a nested report is True."""
    if isinstance(report, bool):
        return report
    if isinstance(report, dict):
        return all(all_true(v) for v in report.values())
    if isinstance(report, list):
        return all(all_true(v) for v in report)
    return True


DEFAULT_SCENARIOS = [
    Scenario("SL2", 2, (0,)),
    Scenario("SL2", 3, (0,)),
    Scenario("SL2", 3, (1,)),
    Scenario("GL2", 3, (0, 0)),
    Scenario("GL2", 3, (0, 1)),
]
