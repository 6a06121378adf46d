"""Root systems and Chevalley bases with exact structure constants.

Basis layout for the algebra of type X_n with N positive roots:

    index 0 .. n-1        Cartan vectors h_i, the Killing duals of the
                          simple roots (alpha(H) = kappa(h_alpha, H)),
    index n .. n+N-1      root vectors x_gamma, positive roots ordered
                          by height then lexicographically,
    index n+N .. n+2N-1   x_{-gamma}, mirroring the positive ones.

Root vectors are normalized so that kappa(x_gamma, x_{-gamma}) = 1.  The
rescaling from the integer Chevalley generators uses a rational square
root when one exists and otherwise moves the whole factor onto the
negative vector, keeping every coordinate inside Q(i).

Simple roots carry the Bourbaki numbering; vertex numbering is 0-based
in code and 1-based in displayed names.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import (
    GaussianRational,
    ONE,
    StructureTable,
    Tensor2,
    ZERO,
    rational_sqrt,
)
from . import linalg

_RANK_BOUNDS = {"A": 1, "B": 2, "C": 3, "D": 4, "F": 4, "G": 2}

Root = tuple  # integer coordinates in the simple-root basis


@dataclass(frozen=True)
class SimpleType:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        if s in _RANK_BOUNDS:
            lo = _RANK_BOUNDS[s]
            ok = n >= lo if s in "ABCD" else n == lo
        elif s == "E":
            ok = n in (6, 7, 8)
        else:
            ok = False
        if not ok:
            raise ValueError(f"rank {n} out of bounds for series {s!r}")

    def __str__(self):
        return f"{self.series}{self.rank}"

    @staticmethod
    def parse(text: str) -> "SimpleType":
        return SimpleType(text[0].upper(), int(text[1:]))


def cartan_matrix(typ: SimpleType) -> list[list[int]]:
    """Cartan matrix a[i][j] = 2(alpha_i|alpha_j)/(alpha_j|alpha_j)."""
    s, n = typ.series, typ.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if s in ("A", "B", "C"):
        for i in range(n - 1):
            join(i, i + 1)
        if s == "B" and n >= 2:
            join(n - 2, n - 1, -2, -1)  # alpha_n short
        if s == "C":
            join(n - 2, n - 1, -1, -2)  # alpha_n long
    elif s == "D":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif s == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for i, j in zip(chain, chain[1:]):
            join(i, j)
        join(1, 3)
    elif s == "F":
        join(0, 1)
        join(1, 2, -2, -1)  # alpha_1, alpha_2 long
        join(2, 3)
    elif s == "G":
        join(0, 1, -1, -3)  # alpha_1 short, alpha_2 long
    return a


def _generate_positive_roots(cartan: list[list[int]]) -> list[Root]:
    """Close the simple roots under root strings; height-then-lex order."""
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                if beta == simple[i]:
                    continue  # twice a root is never a root
                pairing = sum(beta[k] * cartan[k][i] for k in range(n) if beta[k])
                down = 0
                cur = beta
                while True:
                    cur = tuple(
                        c - 1 if k == i else c for k, c in enumerate(cur)
                    )
                    if cur in roots:
                        down += 1
                    else:
                        break
                if down - pairing > 0:
                    up = tuple(
                        c + 1 if k == i else c for k, c in enumerate(beta)
                    )
                    if up not in roots:
                        roots.add(up)
                        new.append(up)
        frontier = new
    return sorted(roots, key=lambda r: (sum(r), r))


class RootSystem:
    """A simple complex Lie algebra in a fixed Chevalley-type basis."""

    def __init__(self, typ: SimpleType):
        self.type = typ
        self.rank = typ.rank
        self.cartan_matrix = cartan_matrix(typ)
        self.positive_roots: list[Root] = _generate_positive_roots(self.cartan_matrix)
        # diagram-node order, not the height-lex order of positive_roots
        self.simple_roots: list[Root] = [
            tuple(1 if k == i else 0 for k in range(self.rank))
            for i in range(self.rank)
        ]
        self.roots: list[Root] = self.positive_roots + [
            tuple(-x for x in r) for r in self.positive_roots
        ]
        self._root_set = set(self.roots)
        self.npos = len(self.positive_roots)
        self.dim = self.rank + 2 * self.npos

        self._pos_index = {r: k for k, r in enumerate(self.positive_roots)}
        # Gram matrix of the Killing form on the Cartan coordinates:
        # kappa(h_i, h_j) = (alpha_i | alpha_j), the inverse of
        # C = sum over roots of gamma gamma^T.
        n = self.rank
        C = [[0] * n for _ in range(n)]
        for g in self.roots:
            for i in range(n):
                if g[i]:
                    for j in range(n):
                        C[i][j] += g[i] * g[j]
        self.cartan_dual_gram: list[list[int]] = C
        gmat = linalg.inverse(
            [[GaussianRational(x) for x in row] for row in C]
        )
        self.killing_h: list[list[Fraction]] = [[x.re for x in row] for row in gmat]

        self._nmemo: dict[tuple[Root, Root], Fraction] = {}
        self._scale: dict[Root, Fraction] = {}
        for g in self.positive_roots:
            q = rational_sqrt(self.root_norm(g) / 2)
            if q is not None:
                self._scale[g] = q
                self._scale[tuple(-x for x in g)] = q
            else:
                self._scale[g] = Fraction(1)
                self._scale[tuple(-x for x in g)] = self.root_norm(g) / 2

        self.structure = self._build_structure_table()
        self.casimir = self._build_casimir()
        self.casimir_h = self._build_casimir_h()

    # ---- root bookkeeping -------------------------------------------------

    def is_root(self, r: Root) -> bool:
        return r in self._root_set

    def root_index(self, r: Root) -> int:
        """Basis index of the root vector x_r."""
        if all(x >= 0 for x in r):
            return self.rank + self._pos_index[r]
        return self.rank + self.npos + self._pos_index[tuple(-x for x in r)]

    def index_root(self, idx: int) -> Root:
        k = idx - self.rank
        if k < self.npos:
            return self.positive_roots[k]
        return tuple(-x for x in self.positive_roots[k - self.npos])

    def height(self, r: Root) -> int:
        return sum(r)

    def root_pairing(self, alpha: Root, beta: Root) -> Fraction:
        """(alpha | beta) under the Killing normalization."""
        g = self.killing_h
        return sum(
            Fraction(alpha[i]) * g[i][j] * beta[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if alpha[i] and beta[j]
        )

    def root_norm(self, alpha: Root) -> Fraction:
        return self.root_pairing(alpha, alpha)

    def coroot_vector(self, alpha: Root) -> list[GaussianRational]:
        """h_alpha in Cartan coordinates: linear in alpha."""
        return [GaussianRational(x) for x in alpha] + [ZERO] * (2 * self.npos)

    # ---- structure constants ---------------------------------------------

    def _string_down(self, mu: Root, nu: Root) -> int:
        """Largest k with nu - k*mu a root."""
        k = 0
        cur = nu
        while True:
            cur = tuple(a - b for a, b in zip(cur, mu))
            if cur in self._root_set:
                k += 1
            else:
                return k

    @lru_cache(maxsize=None)
    def _extraspecial(self, gamma: Root) -> tuple[Root, Root]:
        """Minimal-first special pair summing to a composite positive root."""
        for xi in self.positive_roots:
            rest = tuple(a - b for a, b in zip(gamma, xi))
            if rest in self._root_set and all(x >= 0 for x in rest):
                return xi, rest
        raise AssertionError("composite positive root with no special pair")

    def chevalley_n(self, mu: Root, nu: Root) -> Fraction:
        """Integer structure constant N(mu, nu) of the Chevalley basis."""
        key = (mu, nu)
        memo = self._nmemo
        if key in memo:
            return memo[key]
        total = tuple(a + b for a, b in zip(mu, nu))
        if total not in self._root_set:
            memo[key] = Fraction(0)
            return memo[key]
        mu_pos = all(x >= 0 for x in mu)
        nu_pos = all(x >= 0 for x in nu)
        if mu_pos and nu_pos:
            val = self._n_positive(mu, nu)
        elif not mu_pos and not nu_pos:
            val = -self.chevalley_n(tuple(-x for x in mu), tuple(-x for x in nu))
        elif mu_pos:
            val = self._n_mixed(mu, tuple(-x for x in nu))
        else:
            val = -self._n_mixed(nu, tuple(-x for x in mu))
        memo[key] = val
        return val

    def _n_positive(self, mu: Root, nu: Root) -> Fraction:
        if self._pos_index[mu] > self._pos_index[nu]:
            return -self._n_positive(nu, mu)
        gamma = tuple(a + b for a, b in zip(mu, nu))
        alpha, beta = self._extraspecial(gamma)
        p1 = Fraction(self._string_down(mu, nu) + 1)
        if (alpha, beta) == (mu, nu):
            return p1
        # Jacobi-type four-root identity on (alpha, beta, -mu, -nu),
        # solving for N(mu, nu) in terms of pairs with smaller height sum.
        acc = Fraction(0)
        bm = tuple(a - b for a, b in zip(beta, mu))
        if bm in self._root_set:
            acc += (
                self.chevalley_n(beta, tuple(-x for x in mu))
                * self.chevalley_n(alpha, tuple(-x for x in nu))
                / self.root_norm(bm)
            )
        am = tuple(a - b for a, b in zip(alpha, mu))
        if am in self._root_set:
            acc += (
                self.chevalley_n(tuple(-x for x in mu), alpha)
                * self.chevalley_n(beta, tuple(-x for x in nu))
                / self.root_norm(am)
            )
        val = acc * self.root_norm(gamma) / self.chevalley_n(alpha, beta)
        assert abs(val) == p1, "structure constant recursion lost integrality"
        return val

    def _n_mixed(self, mu: Root, nu: Root) -> Fraction:
        """N(mu, -nu) for positive roots mu != nu with mu - nu a root."""
        delta = tuple(a - b for a, b in zip(mu, nu))
        if all(x >= 0 for x in delta):
            return -self.root_norm(delta) / self.root_norm(mu) * self.chevalley_n(
                nu, delta
            )
        dprime = tuple(-x for x in delta)
        return self.root_norm(dprime) / self.root_norm(nu) * self.chevalley_n(
            dprime, mu
        )

    def normalized_n(self, mu: Root, nu: Root) -> GaussianRational:
        """Structure constant in the kappa-normalized basis."""
        total = tuple(a + b for a, b in zip(mu, nu))
        if total not in self._root_set:
            return ZERO
        val = (
            self.chevalley_n(mu, nu)
            * self._scale[mu]
            * self._scale[nu]
            / self._scale[total]
        )
        return GaussianRational(val)

    def _build_structure_table(self) -> StructureTable:
        n, npos = self.rank, self.npos
        table: dict[tuple[int, int], tuple] = {}

        def put(i, j, terms):
            terms = tuple((k, c) for k, c in terms if c)
            if terms:
                table[(i, j)] = terms

        g = self.killing_h
        for i in range(n):
            for r in self.roots:
                ri = self.root_index(r)
                val = GaussianRational(
                    sum(g[i][j] * r[j] for j in range(n) if r[j])
                )
                put(i, ri, [(ri, val)])
                put(ri, i, [(ri, -val)])
        for a in self.roots:
            ia = self.root_index(a)
            for b in self.roots:
                ib = self.root_index(b)
                total = tuple(x + y for x, y in zip(a, b))
                if total in self._root_set:
                    put(ia, ib, [(self.root_index(total), self.normalized_n(a, b))])
                elif all(x == 0 for x in total) and all(x >= 0 for x in a):
                    # [x_a, x_{-a}] = h_a, the Killing dual of a
                    terms = [(i, GaussianRational(a[i])) for i in range(n)]
                    put(ia, ib, terms)
                    put(ib, ia, [(i, -c) for i, c in terms])
        return StructureTable(self.dim, table)

    # ---- invariant tensors and the Killing form ---------------------------

    def _build_casimir(self) -> Tensor2:
        items = []
        n = self.rank
        for i in range(n):
            for j in range(n):
                c = self.cartan_dual_gram[i][j]
                if c:
                    items.append(((i, j), GaussianRational(c)))
        for r in self.positive_roots:
            ip = self.root_index(r)
            im = self.root_index(tuple(-x for x in r))
            items.append(((ip, im), ONE))
            items.append(((im, ip), ONE))
        return Tensor2.from_items(self.dim, items)

    def _build_casimir_h(self) -> Tensor2:
        items = []
        for i in range(self.rank):
            for j in range(self.rank):
                c = self.cartan_dual_gram[i][j]
                if c:
                    items.append(((i, j), GaussianRational(c)))
        return Tensor2.from_items(self.dim, items)

    def killing_gram(self) -> list[list[GaussianRational]]:
        """Gram matrix of the Killing form in the ambient basis."""
        k = linalg.zeros(self.dim, self.dim)
        for i in range(self.rank):
            for j in range(self.rank):
                k[i][j] = GaussianRational(self.killing_h[i][j])
        for r in self.positive_roots:
            ip = self.root_index(r)
            im = self.root_index(tuple(-x for x in r))
            k[ip][im] = ONE
            k[im][ip] = ONE
        return k

    def killing_form(self, x, y) -> GaussianRational:
        """kappa(x, y) for coordinate vectors, via the block Gram matrix."""
        acc = ZERO
        g = self.killing_h
        for i in range(self.rank):
            if x[i]:
                for j in range(self.rank):
                    if y[j]:
                        acc = acc + x[i] * y[j] * GaussianRational(g[i][j])
        for r in self.positive_roots:
            ip = self.root_index(r)
            im = self.root_index(tuple(-x for x in r))
            acc = acc + x[ip] * y[im] + x[im] * y[ip]
        return acc

    def killing_form_adjoint(self, x, y) -> GaussianRational:
        """kappa via trace of adjoint maps; the independent oracle path."""
        ax = self.structure.ad(x)
        ay = self.structure.ad(y)
        acc = ZERO
        for i in range(self.dim):
            for k in range(self.dim):
                if ax[i][k] and ay[k][i]:
                    acc = acc + ax[i][k] * ay[k][i]
        return acc

    def basis_vector(self, idx: int) -> list[GaussianRational]:
        v = [ZERO] * self.dim
        v[idx] = ONE
        return v

    def to_json(self) -> dict:
        triples = []
        for a in self.roots:
            for b in self.roots:
                c = self.normalized_n(a, b)
                if c:
                    triples.append([list(a), list(b), *c.to_json()])
        return {
            "type": str(self.type),
            "cartan_matrix": self.cartan_matrix,
            "roots": [list(r) for r in self.roots],
            "positive_roots": [list(r) for r in self.positive_roots],
            "structure_constants": triples,
        }


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int) -> RootSystem:
    """Construct (and cache) the root system of the given simple type."""
    return RootSystem(SimpleType(series, rank))
