"""Drinfeld doubles as Manin triples, in both classified branches.

Factorizable branch (t real): the double of the real form l is l + l
with the split pairing (x|y) - (u|v), diagonal copy against the image
of mu -> (r_plus mu, r_minus mu).

Imaginary branch (t imaginary): the double is the realification of the
complex algebra with the bilinear form 2 Re( | ); the real form pairs
against r_plus of the real dual.  The inner product ( | ) is throughout
the one induced by r + r^{21}, i.e. kappa / t.

The realification carries an explicit multiplication-by-i operator; all
identities relating it to the direct sum live in psi_phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import GaussianRational, I, ONE, StructureTable, Tensor2, ZERO
from .involution import (
    Involution,
    RealFormBasis,
    fixed_point_basis,
    real_structure_constants,
)
from .rmatrix import BialgebraDatum
from .rootsystem import RootSystem


# ---- factorization maps ------------------------------------------------------


def factorization_maps(rs: RootSystem, r: Tensor2):
    """(r_plus, r_minus, i_map) as matrices from dual coordinates to g.

    r_plus(mu) = (mu (x) id) r, r_minus(mu) = -(id (x) mu) r, and the
    factorization map is their difference; for r + r21 = t Omega it is t
    times the Killing duality and in particular invertible.
    """
    n = rs.dim
    rmat = [[r.get(i, j) for j in range(n)] for i in range(n)]
    r_plus = linalg.transpose(rmat)
    r_minus = [[-x for x in row] for row in rmat]
    i_map = [
        [r_plus[i][j] - r_minus[i][j] for j in range(n)] for i in range(n)
    ]
    return r_plus, r_minus, i_map


def induced_form(rs: RootSystem, t: GaussianRational):
    """Gram matrix of the inner product induced by r + r21 = t Omega:
    kappa / t on the ambient basis."""
    k = rs.killing_gram()
    inv_t = ONE / t
    return [[inv_t * x for x in row] for row in k]


# ---- the triple container ----------------------------------------------------


@dataclass
class ManinTriple:
    double_dim: int
    pairing: list  # Gram matrix over the double's basis
    structure: StructureTable  # bracket of the double
    sub1_basis: list
    sub2_basis: list
    case: str  # "factorizable" | "imaginary_factorizable"

    def verify(self) -> dict:
        """All defining properties, as named exact checks."""
        p = self.pairing
        n = self.double_dim

        def pair(u, v):
            acc = ZERO
            for i, a in enumerate(u):
                if not a:
                    continue
                for j, b in enumerate(v):
                    if b and p[i][j]:
                        acc = acc + a * p[i][j] * b
            return acc

        def isotropic(vectors):
            return all(
                not pair(u, v) for u in vectors for v in vectors
            )

        def rank_of(vectors):
            return linalg.rank([list(v) for v in vectors])

        stacked = [list(v) for v in self.sub1_basis] + [
            list(v) for v in self.sub2_basis
        ]
        checks = {
            "pairing_nondegenerate": bool(linalg.det(p)),
            "pairing_invariant": self._pairing_invariant(pair),
            "sub1_isotropic": isotropic(self.sub1_basis),
            "sub2_isotropic": isotropic(self.sub2_basis),
            "half_dimension": rank_of(self.sub1_basis) == n // 2
            and rank_of(self.sub2_basis) == n // 2,
            "transversal": linalg.rank(stacked) == n,
            "sub1_closed": self._closed(self.sub1_basis),
            "sub2_closed": self._closed(self.sub2_basis),
        }
        return checks

    def _pairing_invariant(self, pair) -> bool:
        n = self.double_dim
        basis = linalg.identity(n)
        for a in range(n):
            ea = basis[a]
            for b in range(n):
                ab = self.structure.bracket(ea, basis[b])
                for c in range(n):
                    ac = self.structure.bracket(ea, basis[c])
                    if pair(ab, basis[c]) + pair(basis[b], ac):
                        return False
        return True

    def _closed(self, vectors) -> bool:
        mat = [list(v) for v in vectors]
        base_rank = linalg.rank(mat)
        for i, u in enumerate(vectors):
            for v in vectors[i:]:
                br = self.structure.bracket(u, v)
                if linalg.rank(mat + [br]) != base_rank:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "double_dim": self.double_dim,
            "pairing": [[x.to_json() for x in row] for row in self.pairing],
            "sub1_basis": [[x.to_json() for x in v] for v in self.sub1_basis],
            "sub2_basis": [[x.to_json() for x in v] for v in self.sub2_basis],
            "verification": self.verify(),
        }


# ---- real-basis plumbing -----------------------------------------------------


def _basis_matrix(basis: RealFormBasis):
    n = len(basis.vectors[0])
    return [[basis.vectors[j][i] for j in range(len(basis.vectors))] for i in range(n)]


def real_tensor_coordinates(rs: RootSystem, basis: RealFormBasis, x: Tensor2):
    """Coordinates of an order-2 tensor over the real-form basis."""
    n = rs.dim
    w = _basis_matrix(basis)
    winv = linalg.inverse(w)
    xmat = [[x.get(i, j) for j in range(n)] for i in range(n)]
    return linalg.mat_mul(winv, linalg.mat_mul(xmat, linalg.transpose(winv)))


def real_killing_gram(rs: RootSystem, basis: RealFormBasis):
    out = []
    for u in basis.vectors:
        row = []
        for v in basis.vectors:
            val = rs.killing_form(u, v)
            assert val.is_real(), "Killing form must be real on a real form"
            row.append(val)
        out.append(row)
    return out


# ---- factorizable branch -----------------------------------------------------


def double_factorizable(rs: RootSystem, datum: BialgebraDatum) -> ManinTriple:
    """(l + l, diag l, l^r) for a real quasitriangular datum."""
    if not datum.t.is_real():
        raise ValueError("factorizable double requires t real")
    if datum.sigma.kind != "varsigma":
        raise ValueError("factorizable double requires a varsigma-type involution")
    basis = fixed_point_basis(rs, datum.sigma)
    n = basis.count

    rho = real_tensor_coordinates(rs, basis, datum.r)
    assert all(x.is_real() for row in rho for x in row)
    k0 = real_killing_gram(rs, basis)
    inv_t = ONE / datum.t
    form = [[inv_t * x for x in row] for row in k0]

    # double pairing <(x,u)|(y,v)> = (x|y) - (u|v)
    pairing = linalg.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            pairing[i][j] = form[i][j]
            pairing[n + i][n + j] = -form[i][j]

    table = {}
    for (i, j), terms in real_structure_constants(rs, basis).items():
        table[(i, j)] = terms
        table[(n + i, n + j)] = tuple((n + k, c) for k, c in terms)
    structure = StructureTable(2 * n, table)

    sub1 = []
    for a in range(n):
        v = [ZERO] * (2 * n)
        v[a] = ONE
        v[n + a] = ONE
        sub1.append(v)

    r_plus = linalg.transpose(rho)
    sub2 = []
    for k in range(n):
        v = [ZERO] * (2 * n)
        for b in range(n):
            v[b] = r_plus[b][k]
            v[n + b] = -rho[b][k]
        sub2.append(v)

    return ManinTriple(2 * n, pairing, structure, sub1, sub2, "factorizable")


# ---- imaginary branch --------------------------------------------------------


def realification_structure(rs: RootSystem) -> StructureTable:
    """The complex algebra as a real algebra of twice the dimension.

    Index j is the original basis vector, index n+j its product with i.
    """
    n = rs.dim
    table = {}
    for (a, b), terms in rs.structure.table.items():
        plain, primed = [], []
        for k, c in terms:
            if c.re:
                plain.append((k, GaussianRational(c.re)))
                primed.append((n + k, GaussianRational(c.re)))
            if c.im:
                plain.append((n + k, GaussianRational(c.im)))
                primed.append((k, GaussianRational(-c.im)))
        if plain:
            table[(a, b)] = tuple(plain)
            table[(n + a, n + b)] = tuple((k, -c) for k, c in plain)
        if primed:
            table[(a, n + b)] = tuple(primed)
            table[(n + a, b)] = tuple(primed)
    return StructureTable(2 * n, table)


def realify_vector(v) -> list:
    """Coordinates over {b_j, i b_j} of a complex coordinate vector."""
    n = len(v)
    out = [ZERO] * (2 * n)
    for j, x in enumerate(v):
        if x.re:
            out[j] = GaussianRational(x.re)
        if x.im:
            out[n + j] = GaussianRational(x.im)
    return out


def multiplication_by_i(n: int):
    """The operator x -> x' on realified coordinates."""
    m = linalg.zeros(2 * n, 2 * n)
    for j in range(n):
        m[n + j][j] = ONE
        m[j][n + j] = -ONE
    return m


def real_part_pairing(rs: RootSystem, t: GaussianRational):
    """Gram matrix of 2 Re(kappa / t) on the realified basis."""
    n = rs.dim
    k = rs.killing_gram()
    inv_t = ONE / t
    two = GaussianRational(2)

    def re_of(x):
        return GaussianRational(x.re)

    p = linalg.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            base = inv_t * k[i][j]
            if not base:
                continue
            p[i][j] = two * re_of(base)
            p[i][n + j] = two * re_of(I * base)
            p[n + i][j] = two * re_of(I * base)
            p[n + i][n + j] = -two * re_of(base)
    return p


def real_dual_basis(rs: RootSystem, basis: RealFormBasis):
    """Functionals on l, real on the real form: rows of the inverse of
    the basis matrix."""
    return linalg.inverse(_basis_matrix(basis))


def double_imaginary(rs: RootSystem, datum: BialgebraDatum) -> ManinTriple:
    """(l realified, l0, r_plus(l0*)) for an imaginary-factorizable datum."""
    if not datum.t.is_imaginary():
        raise ValueError("imaginary double requires t imaginary")
    if datum.sigma.kind != "omega":
        raise ValueError("imaginary double requires an omega-type involution")
    n = rs.dim
    basis = fixed_point_basis(rs, datum.sigma)

    structure = realification_structure(rs)
    pairing = real_part_pairing(rs, datum.t)

    sub1 = [realify_vector(v) for v in basis.vectors]

    rmat = [[datum.r.get(i, j) for j in range(n)] for i in range(n)]
    r_plus = linalg.transpose(rmat)
    duals = real_dual_basis(rs, basis)
    sub2 = [realify_vector(linalg.mat_vec(r_plus, phi)) for phi in duals]

    return ManinTriple(2 * n, pairing, structure, sub1, sub2, "imaginary_factorizable")


# ---- the complexified realification and the comparison maps ------------------


def psi_phi(rs: RootSystem, sigma: Involution):
    """Mutually inverse maps between l + l and the complexified
    realification, as exact matrices."""
    n = rs.dim
    jmat = multiplication_by_i(n)
    half = GaussianRational(Fraction(1, 2))
    half_i = half * I

    def rho_column(v):
        return realify_vector(v)

    psi = linalg.zeros(2 * n, 2 * n)
    for a in range(n):
        e = [ZERO] * n
        e[a] = ONE
        col_x = rho_column(e)
        jx = linalg.mat_vec(jmat, col_x)
        for i in range(2 * n):
            psi[i][a] = half * col_x[i] - half_i * jx[i]
        se = [sigma.matrix[i][a] for i in range(n)]
        col_y = rho_column(se)
        jy = linalg.mat_vec(jmat, col_y)
        for i in range(2 * n):
            psi[i][n + a] = half * col_y[i] + half_i * jy[i]

    upsilon = linalg.zeros(n, 2 * n)
    for j in range(n):
        upsilon[j][j] = ONE
        upsilon[j][n + j] = I
    lower = linalg.mat_mul(sigma.matrix, linalg.conjugate(upsilon))
    phi = [upsilon[i][:] for i in range(n)] + [lower[i][:] for i in range(n)]
    return psi, phi


def direct_sum_structure(rs: RootSystem) -> StructureTable:
    """l + l as a complex algebra (for checking psi is a morphism)."""
    n = rs.dim
    table = {}
    for (a, b), terms in rs.structure.table.items():
        table[(a, b)] = terms
        table[(n + a, n + b)] = tuple((n + k, c) for k, c in terms)
    return StructureTable(2 * n, table)


def complexified_realification_structure(rs: RootSystem) -> StructureTable:
    """The realification bracket with complex scalars allowed."""
    return realification_structure(rs)


def cobracket_from_triple(mt: ManinTriple) -> list:
    """delta on sub1 via the pairing with sub2: for each basis vector of
    sub1 a matrix D with delta(w_c) = sum D[a][b] w_a (x) w_b."""
    p = mt.pairing

    def pair(u, v):
        acc = ZERO
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b and p[i][j]:
                    acc = acc + a * p[i][j] * b
        return acc

    n1 = len(mt.sub1_basis)
    q = [
        [pair(w, z) for z in mt.sub2_basis] for w in mt.sub1_basis
    ]
    qinv = linalg.inverse(q)
    out = []
    for w in mt.sub1_basis:
        m = [
            [
                pair(w, mt.structure.bracket(mt.sub2_basis[k], mt.sub2_basis[l]))
                for l in range(n1)
            ]
            for k in range(n1)
        ]
        out.append(
            linalg.mat_mul(qinv, linalg.mat_mul(m, linalg.transpose(qinv)))
        )
    return out


def cobracket_from_r0(rs: RootSystem, datum: BialgebraDatum) -> list:
    """delta = ad_x(r0) on the real form, in real-basis coordinates."""
    basis = fixed_point_basis(rs, datum.sigma)
    n = rs.dim
    w = _basis_matrix(basis)
    winv = linalg.inverse(w)
    out = []
    for vec in basis.vectors:
        acc: dict[tuple, GaussianRational] = {}
        # (ad_x (x) 1 + 1 (x) ad_x) applied to r0
        admat = rs.structure.ad(vec)
        for (a, b), v in datum.r0.items():
            for i in range(n):
                if admat[i][a]:
                    acc[(i, b)] = acc.get((i, b), ZERO) + admat[i][a] * v
                if admat[i][b]:
                    acc[(a, i)] = acc.get((a, i), ZERO) + admat[i][b] * v
        tensor = Tensor2.from_items(n, acc.items())
        coords = linalg.mat_mul(
            winv,
            linalg.mat_mul(
                [[tensor.get(i, j) for j in range(n)] for i in range(n)],
                linalg.transpose(winv),
            ),
        )
        out.append(coords)
    return out


def _unit(n, a):
    v = [ZERO] * n
    v[a] = ONE
    return v
