"""
Exact linear algebra and polynomial factorization over Q(zeta_n).

Vectors are sparse ``dict`` objects (key -> CycloScalar) or dense lists;
matrices are lists of rows.  Everything is exact.  The factorization routine
is Trager's norm method: the norm of a shifted polynomial is computed as the
characteristic polynomial of a rational multiplication matrix and factored
over Q by FLINT.
"""

from __future__ import annotations

from itertools import count

import flint

from peterweyl.errors import SplittingError
from peterweyl.scalars import CycloScalar, as_cyclo

ZERO = CycloScalar.rational(0)
ONE = CycloScalar.rational(1)


# ---------------------------------------------------------------------------
# sparse incremental echelon form


class Echelon:
    """Incremental row echelon form of sparse vectors.

    Each stored row has a pivot key whose coefficient is 1 and which is absent
    from every other stored row (fully reduced).  With ``track=True`` every
    stored row remembers how it was built from the inserted vectors, so span
    membership also yields coordinates.
    """

    def __init__(self, track: bool = False):
        self.rows: list[dict] = []
        self.pivots: list = []
        self.combos: list[dict] = []
        self._where: dict = {}
        self.track = track
        self.labels: list = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict):
        v = {k: c for k, c in vec.items() if c}
        combo: dict = {}
        for key in [k for k in v if k in self._where]:
            c = v.get(key)
            if not c:
                continue
            r = self._where[key]
            for k, a in self.rows[r].items():
                nv = v.get(k, ZERO) - c * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            if self.track:
                for lab, a in self.combos[r].items():
                    nc = combo.get(lab, ZERO) + c * a
                    if nc:
                        combo[lab] = nc
                    else:
                        combo.pop(lab, None)
        return v, combo

    def reduce(self, vec: dict) -> dict:
        return self._reduce(vec)[0]

    def contains(self, vec: dict) -> bool:
        return not self._reduce(vec)[0]

    def add(self, vec: dict, label=None) -> bool:
        """Insert ``vec``; return True when it enlarges the span."""
        if label is None:
            label = len(self.labels)
        self.labels.append(label)
        v, combo = self._reduce(vec)
        if not v:
            return False
        pivot = min(v, key=_sort_key)
        inv = v[pivot].inverse()
        v = {k: c * inv for k, c in v.items()}
        if self.track:
            combo = {lab: -a * inv for lab, a in combo.items()}
            combo[label] = combo.get(label, ZERO) + inv
        # keep full reduction: clear the new pivot from older rows
        for r, row in enumerate(self.rows):
            c = row.get(pivot)
            if c:
                for k, a in v.items():
                    nv = row.get(k, ZERO) - c * a
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                if self.track:
                    cr = self.combos[r]
                    for lab, a in combo.items():
                        nc = cr.get(lab, ZERO) - c * a
                        if nc:
                            cr[lab] = nc
                        else:
                            cr.pop(lab, None)
        self._where[pivot] = len(self.rows)
        self.rows.append(v)
        self.pivots.append(pivot)
        self.combos.append(combo)
        return True

    def coordinates(self, vec: dict):
        """Coefficients {label: c} with vec = sum c * inserted[label], or None."""
        if not self.track:
            raise ValueError("coordinates require track=True")
        v, combo = self._reduce(vec)
        return None if v else combo

    def dependency(self, vec: dict):
        """For vec in the span: combination of inserted vectors equal to vec."""
        return self.coordinates(vec)


def _sort_key(k):
    return (0, k) if isinstance(k, int) else (1, repr(k))


def span_rank(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def greedy_basis(vectors):
    """Indices of a greedy maximal independent subfamily, in order."""
    ech = Echelon()
    return [i for i, v in enumerate(vectors) if ech.add(v)]


# ---------------------------------------------------------------------------
# dense matrices


def zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A:
        return []
    inner, cols = len(B), len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * cols
        for k in range(inner):
            a = row[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(cols):
                b = Bk[j]
                if b:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def mat_vec(A, v):
    return [sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def conj_transpose(A):
    return [[a.conj() for a in col] for col in zip(*A)]


def mat_equal(A, B) -> bool:
    return len(A) == len(B) and all(len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def is_zero_matrix(A) -> bool:
    return all(not a for row in A for a in row)


def rref(A):
    """Reduced row echelon form and pivot columns."""
    M = [[as_cyclo(a) for a in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A) -> int:
    return len(rref(A)[1]) if A else 0


def nullspace(A, ncols=None):
    """Basis of {x : A x = 0} as a list of dense vectors."""
    if not A:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    M, pivots = rref(A)
    n = len(M[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -M[r][f]
        basis.append(x)
    return basis


def solve(A, b):
    """One solution x of A x = b, or None when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    M, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = M[r][n]
    return x


def det(A):
    M = [[as_cyclo(a) for a in row] for row in A]
    n = len(M)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        inv = M[c][c].inverse()
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def inverse(A):
    n = len(A)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A)]
    M, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in M]


def leading_minors(A):
    return [det([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def is_positive_definite(G) -> bool:
    """Hermitian G is positive definite iff every leading principal minor is > 0."""
    for m in leading_minors(G):
        if not m.is_real() or m.sign() <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# univariate polynomials over Q(zeta_n): lists of coefficients, low degree first


def ptrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def padd(a, b):
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)])


def psub(a, b):
    return padd(a, [-c for c in b])


def pmul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pdivmod(a, b):
    a, b = ptrim(a), ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = b[-1].inverse()
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        c = r[-1] * inv
        s = len(r) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            r[s + i] = r[s + i] - c * y
        r = ptrim(r[:-1]) if not r[-1] else ptrim(r)
    return ptrim(q), r


def pmonic(p):
    p = ptrim(p)
    inv = p[-1].inverse()
    return [c * inv for c in p]


def pgcd(a, b):
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a) if a else []


def pxgcd(a, b):
    """(g, s, t) with s a + t b = g monic."""
    r0, r1 = ptrim(a), ptrim(b)
    s0, s1, t0, t1 = [ONE], [], [], [ONE]
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    inv = r0[-1].inverse()
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


def pcompose_linear(p, shift):
    """p(x + shift)."""
    out: list = []
    for c in reversed(p):
        out = padd(pmul(out, [shift, ONE]), [c])
    return out


def pderiv(p):
    return ptrim([c * i for i, c in enumerate(p)][1:])


def peval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _norm_matrix(P, conductor, shift):
    """Rational matrix of multiplication by x + shift*zeta on K[x]/(P)."""
    d = len(P) - 1
    phi = CycloScalar.zeta(conductor).degree
    z = CycloScalar.zeta(conductor)
    P = pmonic(P)

    def times_x(elem):
        # elem: list of d coefficients in K
        top = elem[-1]
        out = [ZERO] + elem[:-1]
        if top:
            out = [o - top * p for o, p in zip(out, P[:d])]
        return out

    cols = []
    for j in range(d):
        for i in range(phi):
            elem = [ZERO] * d
            elem[j] = CycloScalar.zeta(conductor, i) if conductor > 1 else ONE
            img = times_x(elem)
            if shift:
                img = [a + shift * z * b for a, b in zip(img, elem)]
            col = []
            for c in img:
                col.extend(c.embed(conductor).coefficients() if conductor > 1 else [c.to_fraction()])
            cols.append(col)
    N = len(cols)
    M = flint.fmpq_mat(N, N)
    for c, col in enumerate(cols):
        for r, v in enumerate(col):
            if v:
                M[r, c] = flint.fmpq(v.numerator, v.denominator)
    return M


def factor_over_cyclotomic(P, conductor: int):
    """Monic irreducible factors of a squarefree P in Q(zeta_n)[x]."""
    P = pmonic([as_cyclo(c) for c in P])
    if len(P) <= 2:
        return [P]
    if conductor <= 2:
        if any(not c.is_rational() for c in P):
            raise ValueError("coefficients do not lie in the given field")
        f = flint.fmpq_poly([flint.fmpq(c.to_fraction().numerator, c.to_fraction().denominator) for c in P])
        _, facs = f.factor()
        return [pmonic([CycloScalar.rational(_frac(c)) for c in g.coeffs()]) for g, _ in facs]
    if all(c.is_rational() for c in P):
        # split over Q first so the norm computations only see small factors
        rational = factor_over_cyclotomic(P, 1)
        if len(rational) > 1:
            return [h for g in rational for h in factor_over_cyclotomic(g, conductor)]
    z = CycloScalar.zeta(conductor)
    for s in _shifts():
        M = _norm_matrix(P, conductor, s)
        N = M.charpoly()
        Nq = flint.fmpq_poly(N.coeffs()) if not isinstance(N, flint.fmpq_poly) else N
        if Nq.gcd(Nq.derivative()).degree() > 0:
            continue
        Ps = pcompose_linear(P, -s * z) if s else P
        _, facs = Nq.factor()
        out = []
        for g, _ in facs:
            gk = [CycloScalar.rational(_frac(c)) for c in g.coeffs()]
            h = pgcd(Ps, gk)
            if len(h) > 1:
                out.append(pmonic(pcompose_linear(h, s * z) if s else h))
        if sum(len(h) - 1 for h in out) != len(P) - 1:
            raise SplittingError("norm factorization did not account for every root")  # pragma: no cover
        return out
    raise SplittingError("no squarefree shift found")  # pragma: no cover


def _frac(c):
    from fractions import Fraction

    return Fraction(int(c.p), int(c.q))


def _shifts():
    yield 0
    for k in count(1):
        yield k
        yield -k


def roots_in_field(P, conductor: int):
    return [-f[0] for f in factor_over_cyclotomic(P, conductor) if len(f) == 2]


# ---------------------------------------------------------------------------
# Krylov minimal polynomial and spectral idempotents


def minimal_polynomial(mul, start: dict, max_degree: int):
    """Monic minimal polynomial of an operator ``mul`` acting on ``start``.

    ``mul`` maps a sparse vector to a sparse vector; the Krylov sequence
    start, mul(start), ... is reduced until the first linear dependency.
    """
    ech = Echelon(track=True)
    vecs = [start]
    for k in range(max_degree + 1):
        combo = ech.coordinates(vecs[-1]) if ech.rank else None
        if combo is not None or not any(vecs[-1].values()):
            combo = combo or {}
            poly = [-combo.get(i, ZERO) for i in range(k)] + [ONE]
            return poly
        ech.add(vecs[-1], label=k)
        vecs.append(mul(vecs[-1]))
    raise SplittingError("Krylov sequence did not terminate")  # pragma: no cover


def spectral_polynomials(minpoly, conductor: int):
    """Split the squarefree ``minpoly`` into irreducible factors over the
    field and return, for each factor f_k, the polynomial u_k with
    u_k = 1 mod f_k and u_k = 0 mod f_j (j != k).  Evaluated at the
    operator, the u_k are complete orthogonal idempotents."""
    if len(pgcd(minpoly, pderiv(minpoly))) > 1:
        raise SplittingError("minimal polynomial is not squarefree: element is not semisimple")
    factors = factor_over_cyclotomic(minpoly, conductor)
    out = []
    for f in factors:
        cof = pdivmod(minpoly, f)[0]
        g, s, _ = pxgcd(cof, f)
        u = pdivmod(pmul(s, cof), minpoly)[1]
        out.append((f, u))
    return out
