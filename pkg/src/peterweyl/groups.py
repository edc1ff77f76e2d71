"""
Finite groups of Lie type at desk scale.

Elements are interned to indices 0..N-1.  Small groups carry a full
multiplication table; larger ones multiply representatives on demand and cache
the result.  ``build_group`` constructs SL2, GL2 (q <= 7) and GL3 (q = 2)
over a finite field together with the Borel subgroup, the diagonal torus, the
unipotent radical and the standard parabolics.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import gcd

from peterweyl.errors import IncompleteOrbitError, UnsupportedGroupError
from peterweyl.scalars import CycloScalar

TABLE_LIMIT = 600
MAX_GROUP_ORDER = 2500
FAMILIES = ("SL2", "GL2", "GL3")


# ---------------------------------------------------------------------------
# finite fields


class FiniteField:
    """GF(q) for q in {2, 3, 4, 5, 7}; elements are the integers 0..q-1.

    For q = 4 the element a + 2b stands for a + b*w with w^2 = w + 1.
    """

    SUPPORTED = (2, 3, 4, 5, 7)

    def __init__(self, q: int):
        if q not in self.SUPPORTED:
            raise UnsupportedGroupError(f"GF({q}) is not supported; choose q in {self.SUPPORTED}")
        self.q = q
        self.p = 2 if q == 4 else q
        if q == 4:
            self.add_table = [[a ^ b for b in range(4)] for a in range(4)]
            self.mul_table = [[self._gf4_mul(a, b) for b in range(4)] for a in range(4)]
        else:
            self.add_table = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul_table = [[(a * b) % q for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add_table[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul_table[a][b] == 1) for a in range(1, q)]
        self.generator = next(g for g in range(1, q) if len(self._powers(g)) == q - 1)
        self.log = {x: k for k, x in enumerate(self._powers(self.generator))}

    @staticmethod
    def _gf4_mul(a, b):
        a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
        # (a0 + a1 w)(b0 + b1 w), w^2 = w + 1
        c0 = (a0 * b0 + a1 * b1) % 2
        c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2
        return c0 + 2 * c1

    def _powers(self, g):
        out, x = [1], g
        while x != 1:
            out.append(x)
            x = self.mul_table[x][g]
        return out

    def power(self, k: int) -> int:
        """generator**k"""
        k %= self.q - 1
        x = 1
        for _ in range(k):
            x = self.mul_table[x][self.generator]
        return x

    def name(self, a: int) -> str:
        if self.q != 4:
            return str(a)
        return ("0", "1", "w", "w+1")[a]


def _mat_mul(F, A, B):
    n = len(A)
    add, mul = F.add_table, F.mul_table
    return tuple(
        tuple(reduce(lambda s, k: add[s][mul[A[i][k]][B[k][j]]], range(n), 0) for j in range(n))
        for i in range(n)
    )


def _det(F, A):
    add, mul, neg = F.add_table, F.mul_table, F.neg
    if len(A) == 2:
        return add[mul[A[0][0]][A[1][1]]][neg[mul[A[0][1]][A[1][0]]]]
    total = 0
    for j in range(3):
        minor = tuple(tuple(A[r][c] for c in range(3) if c != j) for r in (1, 2))
        term = mul[A[0][j]][_det(F, minor)]
        total = add[total][term if j % 2 == 0 else neg[term]]
    return total


def _transpose(A):
    return tuple(zip(*A))


# ---------------------------------------------------------------------------
# groups


class FiniteGroup:
    """A finite group with elements interned to dense indices."""

    def __init__(self, elements, mul, identity, *, name: str = "G", formatter=None, check: bool = True):
        self.name = name
        self.elements = list(elements)
        self.order = len(self.elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != self.order:
            raise ValueError("duplicate group elements")
        self._mul_rep = mul
        self.identity = self.index[identity]
        self._formatter = formatter or repr
        if self.order <= TABLE_LIMIT:
            self._table = [[self.index[mul(a, b)] for b in self.elements] for a in self.elements]
        else:
            self._table = None
            self._cache: dict = {}
        self.inverse = [0] * self.order
        e = self.identity
        for i in range(self.order):
            if self.inverse[i] and self.mul(i, self.inverse[i]) == e:
                continue
            self.inverse[i] = self._find_inverse(i)
        if check:
            self._check()

    def _find_inverse(self, i):
        # powers of i cycle back to the identity
        x, prev = i, self.identity
        while x != self.identity:
            prev, x = x, self.mul(x, i)
        return prev

    def _check(self, trials: int = 50):
        rng = random.Random(0)
        n = self.order
        for _ in range(trials):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError("multiplication is not associative")
        for g in range(n):
            if self.mul(g, self.inverse[g]) != self.identity:
                raise ValueError("inverse table is inconsistent")

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        key = (a, b)
        r = self._cache.get(key)
        if r is None:
            r = self._cache[key] = self.index[self._mul_rep(self.elements[a], self.elements[b])]
        return r

    def row(self, a: int):
        """The map b -> a*b as a list (left translation by a)."""
        if self._table is not None:
            return self._table[a]
        return [self.mul(a, b) for b in range(self.order)]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inverse[g])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (self.element_order(g) for g in range(self.order)), 1)

    @property
    def conductor(self) -> int:
        """Cyclotomic conductor containing every character value."""
        return self.exponent

    @cached_property
    def generators(self) -> list:
        """A small generating set, found greedily."""
        gens: list = []
        span = {self.identity}
        for g in sorted(range(self.order), key=lambda g: -self.element_order(g)):
            if g not in span:
                gens.append(g)
                span = self.closure(gens)
            if len(span) == self.order:
                break
        return gens

    def closure(self, gens) -> frozenset:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, H) -> bool:
        H = set(H)
        return self.identity in H and all(self.inverse[h] in H for h in H) and all(
            self.mul(a, b) in H for a in H for b in H
        )

    @cached_property
    def classes(self) -> list:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> list:
        out = [0] * self.order
        for c, cls in enumerate(self.classes):
            for g in cls:
                out[g] = c
        return out

    def format(self, g: int) -> str:
        return self._formatter(self.elements[g])

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([()], lambda a, b: (), (), name="1")

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        from itertools import permutations

        return cls(
            list(permutations(range(n))),
            lambda a, b: tuple(a[b[i]] for i in range(n)),
            tuple(range(n)),
            name=f"S{n}",
        )

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(list(range(n)), lambda a, b: (a + b) % n, 0, name=f"C{n}")


def conjugacy_classes(G: FiniteGroup) -> list:
    """Conjugacy classes as sorted tuples, the identity class first."""
    seen = [False] * G.order
    out = []
    gens = G.generators
    for g in range(G.order):
        if seen[g]:
            continue
        orbit = {g}
        queue = deque([g])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = G.conjugate(s, x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        for x in orbit:
            seen[x] = True
        out.append(tuple(sorted(orbit)))
    out.sort(key=lambda c: (c[0] != G.identity, c[0]))
    return out


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    H: frozenset
    K: frozenset
    representatives: tuple
    cosets: tuple
    sizes: tuple

    def __len__(self):
        return len(self.representatives)

    def coset_of(self, g: int) -> int:
        for i, c in enumerate(self.cosets):
            if g in c:
                return i
        raise KeyError(g)


def double_cosets(G: FiniteGroup, H, K) -> DoubleCosetDecomposition:
    H, K = frozenset(H), frozenset(K)
    assigned = [False] * G.order
    reps, cosets = [], []
    for g in range(G.order):
        if assigned[g]:
            continue
        hg = {G.mul(h, g) for h in H}
        coset = frozenset(G.mul(x, k) for x in hg for k in K)
        for x in coset:
            assigned[x] = True
        reps.append(g)
        cosets.append(coset)
    return DoubleCosetDecomposition(H, K, tuple(reps), tuple(cosets), tuple(len(c) for c in cosets))


def left_coset_representatives(G: FiniteGroup, H) -> list:
    """Representatives g of the cosets gH, smallest index first."""
    seen = [False] * G.order
    reps = []
    for g in range(G.order):
        if not seen[g]:
            reps.append(g)
            for h in H:
                seen[G.mul(g, h)] = True
    return reps


# ---------------------------------------------------------------------------
# subgroup chains and torus characters


@dataclass
class SubgroupChain:
    """G with Borel B, torus T, a standard parabolic P = M U and Weyl data."""

    G: FiniteGroup
    family: str
    q: int
    field: FiniteField
    B: frozenset
    T: frozenset
    P: frozenset
    M: frozenset
    U: frozenset
    parabolic: tuple
    weyl_representatives: tuple
    weyl_lengths: tuple
    longest: int
    extra: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return {"SL2": 1, "GL2": 1, "GL3": 2}[self.family]

    @cached_property
    def M_is_abelian(self) -> bool:
        G = self.G
        return all(G.mul(a, b) == G.mul(b, a) for a in self.M for b in self.M)

    def levi_factorization(self, p: int):
        """The unique (m, u) with p = m u."""
        G = self.G
        for m in self.M:
            u = G.mul(G.inverse[m], p)
            if u in self.U:
                return m, u
        raise ValueError(f"{p} is not in the parabolic")

    def twist(self, g: int) -> int:
        """g -> n0 (g^-1)^T n0^-1, an automorphism preserving B and T."""
        G = self.G
        A = G.elements[G.inverse[g]]
        n0 = G.elements[self.longest]
        n0inv = G.elements[G.inverse[self.longest]]
        F = self.field
        return G.index[_mat_mul(F, _mat_mul(F, n0, _transpose(A)), n0inv)]

    def characters(self) -> list:
        """All linear characters of the (abelian) Levi factor M."""
        if not self.M_is_abelian:
            raise UnsupportedGroupError("characters are only built for abelian Levi factors")
        n = self.q - 1
        arity = 1 if self.family == "SL2" else (2 if self.family == "GL2" else 3)
        return [TorusCharacter(self, ks) for ks in product(range(n), repeat=arity)]

    def trivial_character(self) -> "TorusCharacter":
        arity = 1 if self.family == "SL2" else (2 if self.family == "GL2" else 3)
        return TorusCharacter(self, (0,) * arity)

    def character(self, exponents) -> "TorusCharacter":
        return TorusCharacter(self, tuple(int(k) % max(self.q - 1, 1) for k in exponents))

    def describe(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "order": self.G.order,
            "borel": len(self.B),
            "torus": len(self.T),
            "unipotent": len(self.U),
            "parabolic": list(self.parabolic),
            "levi": len(self.M),
            "index_G_B": self.G.order // len(self.B),
        }


class TorusCharacter:
    """Linear character of the diagonal torus, given by exponents.

    With g the chosen generator of GF(q)^x, the element diag(g^j1, ..., g^jr)
    maps to zeta_{q-1}^(k1 j1 + ... + kr jr).  For SL2 the torus is
    {diag(a, a^-1)} and a single exponent is used.
    """

    def __init__(self, chain: SubgroupChain, exponents: tuple):
        if set(chain.M) != set(chain.T):
            raise UnsupportedGroupError("torus characters need M equal to the diagonal torus")
        self.chain = chain
        self.exponents = tuple(exponents)

    @cached_property
    def values(self) -> dict:
        ch = self.chain
        G, F = ch.G, ch.field
        n = ch.q - 1
        out = {}
        for t in ch.T:
            A = G.elements[t]
            diag = [A[i][i] for i in range(len(A))]
            if ch.family == "SL2":
                diag = diag[:1]
            k = sum(e * F.log[a] for e, a in zip(self.exponents, diag))
            out[t] = CycloScalar.zeta(n, k) if n > 1 else CycloScalar.rational(1)
        return out

    def __call__(self, t: int) -> CycloScalar:
        return self.values[t]

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())

    def conjugate_by(self, n: int) -> "TorusCharacter":
        """(Ad(n) chi)(t) = chi(n^-1 t n)."""
        G = self.chain.G
        target = {t: self.values[G.conjugate(G.inverse[n], t)] for t in self.chain.T}
        for chi in self.chain.characters():
            if chi.values == target:
                return chi
        raise ValueError("conjugate is not a torus character")  # pragma: no cover

    def __eq__(self, other):
        return isinstance(other, TorusCharacter) and other.chain is self.chain and other.values == self.values

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"TorusCharacter{self.exponents}"

    def label(self) -> str:
        return "chi(" + ",".join(map(str, self.exponents)) + ")"


def normalizer(G: FiniteGroup, H) -> frozenset:
    H = frozenset(H)
    return frozenset(g for g in range(G.order) if all(G.conjugate(g, h) in H for h in H))


def weyl_orbit(chi: TorusCharacter) -> list:
    """The N_G(M)-orbit of chi, sorted by exponent tuple."""
    chain = chi.chain
    if not chain.M_is_abelian:
        raise UnsupportedGroupError("Weyl orbits are computed for abelian Levi factors only")
    N = normalizer(chain.G, chain.M)
    orbit = {chi.conjugate_by(n) for n in N}
    return sorted(orbit, key=lambda c: c.exponents)


def check_orbit(delta) -> None:
    delta = list(delta)
    if not delta:
        raise IncompleteOrbitError("empty orbit")
    full = set(weyl_orbit(delta[0]))
    if full != set(delta):
        raise IncompleteOrbitError(f"{delta} is not a complete Weyl orbit (expected {sorted(full, key=repr)})")


# ---------------------------------------------------------------------------
# construction


def _matrix_formatter(F):
    def fmt(A):
        return "[" + ",".join("[" + ",".join(F.name(a) for a in row) + "]" for row in A) + "]"

    return fmt


def _perm_matrix(perm):
    n = len(perm)
    return tuple(tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n))


def build_group(family: str, q: int, parabolic=None) -> SubgroupChain:
    """Build SL2/GL2/GL3 over GF(q) with its standard subgroup chain.

    ``parabolic`` selects a standard parabolic by its block sizes; the
    default is the Borel subgroup.
    """
    family = family.upper()
    if family not in FAMILIES:
        raise UnsupportedGroupError(f"unsupported family {family!r}; choose one of {FAMILIES}")
    F = FiniteField(q)
    n = 3 if family == "GL3" else 2
    if family == "GL3" and q > 2:
        raise UnsupportedGroupError("GL3 is supported for q = 2 only (larger orders exceed the bounds)")
    mats = []
    for entries in product(range(q), repeat=n * n):
        A = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        d = _det(F, A)
        if (family == "SL2" and d == 1) or (family != "SL2" and d != 0):
            mats.append(A)
    if len(mats) > MAX_GROUP_ORDER:
        raise UnsupportedGroupError(f"{family}({q}) has order {len(mats)} above the bound {MAX_GROUP_ORDER}")
    one = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    G = FiniteGroup(mats, lambda a, b: _mat_mul(F, a, b), one, name=f"{family}({q})", formatter=_matrix_formatter(F))

    B = frozenset(i for i, A in enumerate(mats) if all(A[r][c] == 0 for r in range(n) for c in range(r)))
    T = frozenset(i for i in B if all(mats[i][r][c] == 0 for r in range(n) for c in range(n) if r != c))
    U = frozenset(i for i in B if all(mats[i][r][r] == 1 for r in range(n)))

    blocks = tuple(parabolic) if parabolic else (1,) * n
    if sum(blocks) != n or any(b < 1 for b in blocks):
        raise UnsupportedGroupError(f"parabolic blocks {blocks} do not partition {n}")
    starts = [sum(blocks[:i]) for i in range(len(blocks))]
    block_of = [next(b for b, s in enumerate(starts) if s <= r < s + blocks[b]) for r in range(n)]
    P = frozenset(i for i, A in enumerate(mats) if all(A[r][c] == 0 for r in range(n) for c in range(n) if block_of[r] > block_of[c]))
    M = frozenset(i for i in P if all(mats[i][r][c] == 0 for r in range(n) for c in range(n) if block_of[r] != block_of[c]))
    UP = frozenset(
        i
        for i in P
        if all(
            mats[i][r][c] == (1 if r == c else 0)
            for r in range(n)
            for c in range(n)
            if block_of[r] == block_of[c]
        )
    )

    from itertools import permutations

    reps, lengths = [], []
    for perm in permutations(range(n)):
        Pm = _perm_matrix(perm)
        if family == "SL2" and perm != tuple(range(n)):
            Pm = ((0, 1), (F.neg[1], 0))
        reps.append(G.index[Pm])
        lengths.append(sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]))
    longest = reps[lengths.index(max(lengths))]

    return SubgroupChain(
        G=G,
        family=family,
        q=q,
        field=F,
        B=B,
        T=T,
        P=P,
        M=M,
        U=UP,
        parabolic=blocks,
        weyl_representatives=tuple(reps),
        weyl_lengths=tuple(lengths),
        longest=longest,
        extra={"U_borel": U},
    )
