"""Identification of the real form fixed by a canonical involution.

The Cartan involution of g^sigma complexifies to theta = sigma o omega,
a linear map.  Its eigenspaces on the real basis give the compact and
noncompact dimensions; together with the painted set P (mu-fixed simple
roots not in J) they name the form.  Names for painted exceptional
diagrams follow the extreme-vertex-of-a-branch description; painted
vertices not covered by the naming table are reported as "unnormalized"
with all numeric invariants still filled in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import GaussianRational, ZERO
from .involution import (
    Involution,
    RealFormBasis,
    canonical_involution,
    fixed_point_basis,
)
from .rootsystem import RootSystem


@dataclass
class RealFormReport:
    name: str
    theta: Involution
    dim_k: int
    dim_p: int
    character: int
    dc: int
    dnc: int
    vogan_painted: tuple
    maximally_compact: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim_k": self.dim_k,
            "dim_p": self.dim_p,
            "character": self.character,
            "dc": self.dc,
            "dnc": self.dnc,
            "vogan_painted": list(self.vogan_painted),
            "maximally_compact": self.maximally_compact,
        }


def cartan_involution(rs: RootSystem, sigma: Involution) -> Involution:
    """theta = sigma o omega; linear since both factors are semilinear."""
    omega = canonical_involution(rs, "omega", None, tuple(range(rs.rank)))
    return Involution(sigma.compose_linear(omega), "general")


def theta_action_on_real_basis(rs: RootSystem, theta: Involution, basis: RealFormBasis):
    """Matrix of theta restricted to the real form, in its real basis."""
    cols = []
    for v in basis.vectors:
        image = linalg.mat_vec(theta.matrix, v)
        coords = basis.coordinates(image)
        if coords is None:
            raise AssertionError("theta does not preserve the real form")
        cols.append(coords)
    n = len(cols)
    return [[GaussianRational(cols[j][i]) for j in range(n)] for i in range(n)]


def _eigen_dims(mat) -> tuple[int, int]:
    n = len(mat)
    ident = linalg.identity(n)
    minus = [[mat[i][j] - ident[i][j] for j in range(n)] for i in range(n)]
    plus = [[mat[i][j] + ident[i][j] for j in range(n)] for i in range(n)]
    dim_k = len(linalg.nullspace(minus))
    dim_p = len(linalg.nullspace(plus))
    return dim_k, dim_p


def theta_twisted_gram(rs: RootSystem, theta: Involution, basis: RealFormBasis):
    """Gram matrix of B(x, y) = -kappa(x, theta y) on the real basis."""
    images = [linalg.mat_vec(theta.matrix, v) for v in basis.vectors]
    n = basis.count
    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            val = -rs.killing_form(basis.vectors[i], images[j])
            assert val.is_real()
            row.append(val.re)
        gram.append(row)
    return gram


# ---- the naming table -------------------------------------------------------

_EXCEPTIONAL_PAINTED = {
    # series, rank -> {1-based painted vertex: name}
    ("E", 6): {2: "EII", 1: "EIII", 6: "EIII"},
    ("E", 7): {2: "EV", 1: "EVI", 7: "EVII"},
    ("E", 8): {1: "EVIII", 8: "EIX"},
    ("F", 4): {1: "FI", 4: "FII"},
    ("G", 2): {1: "G", 2: "G"},
}

_SPLIT_NAMES = {
    "A": lambda n: f"sl({n + 1},R)",
    "B": lambda n: f"so({n},{n + 1})",
    "C": lambda n: f"sp({n},R)",
    "D": lambda n: f"so({n},{n})",
    "E": lambda n: {6: "EI", 7: "EV", 8: "EVIII"}[n],
    "F": lambda n: "FI",
    "G": lambda n: "G",
}

_COMPACT_NAMES = {
    "A": lambda n: f"su({n + 1})",
    "B": lambda n: f"so({2 * n + 1})",
    "C": lambda n: f"sp({n})",
    "D": lambda n: f"so({2 * n})",
    "E": lambda n: f"e{n}(c)",
    "F": lambda n: "f4(c)",
    "G": lambda n: "g2(c)",
}


def _signature(fmt: str, p: int, q: int) -> str:
    lo, hi = min(p, q), max(p, q)
    return f"{fmt}({lo},{hi})"


def _name_varsigma_mu(series: str, n: int) -> str | None:
    if series == "A":
        if n % 2 == 0:
            m = n // 2
            return f"su({m},{m + 1})"
        m = (n - 1) // 2
        return f"su({m + 1},{m + 1})"
    if series == "D":
        return _signature("so", n - 1, n + 1)
    if series == "E" and n == 6:
        return "EII"
    return None


def _name_omega_j(series: str, n: int, j: int) -> str | None:
    """Painted vertex j (1-based) with mu = id."""
    if series == "A":
        return _signature("su", j, n + 1 - j)
    if series == "B":
        return _signature("so", 2 * j, 2 * n + 1 - 2 * j)
    if series == "C":
        return _signature("sp", j, n - j)
    if series == "D":
        if j <= n - 2:
            return _signature("so", 2 * j, 2 * n - 2 * j)
        return f"so*({2 * n})"
    return _EXCEPTIONAL_PAINTED.get((series, n), {}).get(j)


def _name_omega_mu_j(series: str, n: int, painted: tuple, rs=None, mu=None) -> str | None:
    if series == "A":
        if n % 2 == 0:
            return f"sl({n + 1},R)"
        if not painted:
            return f"sl({(n + 1) // 2},H)"
        return f"sl({n + 1},R)"
    if series == "D":
        if not painted:
            return _signature("so", 1, 2 * n - 1)
        j = _standardize_d_vertex(rs, mu, painted[0]) + 1
        return _signature("so", 2 * j + 1, 2 * (n - j) - 1)
    if series == "E" and n == 6:
        return "EIV" if not painted else "EI"
    return None


def _standardize_d_vertex(rs, mu, vertex: int) -> int:
    """Relabel a mu-fixed vertex through a diagram symmetry conjugating
    mu to the standard spinor swap.

    Conjugate involutions have isomorphic fixed forms, so names may be
    read off after relabeling; for D4 this uses the order-3 symmetries,
    which stay out of classification but are fine for naming.
    """
    from .bdtriple import diagram_permutations

    n = rs.rank
    standard = tuple(list(range(n - 2)) + [n - 1, n - 2])
    if mu.permutation == standard:
        return vertex
    for p in diagram_permutations(rs):
        conj = tuple(p[mu(_perm_inv(p, k))] for k in range(n))
        if conj == standard:
            return p[vertex]
    raise AssertionError("no diagram symmetry conjugates mu to the spinor swap")


def _perm_inv(p, k):
    return p.index(k)


def identify(rs: RootSystem, sigma: Involution) -> RealFormReport:
    """Full report on g^sigma: name, Cartan decomposition, Vogan data."""
    if sigma.kind not in ("varsigma", "omega"):
        raise ValueError("identify requires a canonical involution")
    series, n = rs.type.series, rs.rank
    mu = sigma.mu
    theta = cartan_involution(rs, sigma)
    basis = fixed_point_basis(rs, sigma)
    theta_mat = theta_action_on_real_basis(rs, theta, basis)
    dim_k, dim_p = _eigen_dims(theta_mat)
    h_mat = [
        [theta_mat[i][j] for j in range(basis.h_vectors)]
        for i in range(basis.h_vectors)
    ]
    dc, dnc = _eigen_dims(h_mat)

    if sigma.kind == "omega":
        painted = tuple(i for i in mu.fixed_points() if i not in sigma.J)
        maximally_compact = True
    else:
        painted = ()
        maximally_compact = False

    name = "unnormalized"
    if sigma.kind == "varsigma":
        if mu.is_identity():
            name = _SPLIT_NAMES[series](n)
        else:
            name = _name_varsigma_mu(series, n) or "unnormalized"
    else:
        if len(painted) == 0:
            if mu.is_identity():
                name = _COMPACT_NAMES[series](n)
            else:
                name = _name_omega_mu_j(series, n, painted, rs, mu) or "unnormalized"
        elif len(painted) == 1:
            if mu.is_identity():
                name = _name_omega_j(series, n, painted[0] + 1) or "unnormalized"
            else:
                name = _name_omega_mu_j(series, n, painted, rs, mu) or "unnormalized"

    report = RealFormReport(
        name=name,
        theta=theta,
        dim_k=dim_k,
        dim_p=dim_p,
        character=dim_p - dim_k,
        dc=dc,
        dnc=dnc,
        vogan_painted=painted,
        maximally_compact=maximally_compact,
    )
    _check_invariants(rs, sigma, report)
    return report


def expected_character(name: str, dim_g: int, rank: int) -> int | None:
    """Independent character values for the names we emit; a guard against
    transcription errors in the naming table."""
    import re

    if name.startswith("su(") and "," in name:
        p, q = map(int, re.findall(r"\d+", name))
        return 2 * p * q - (p * p + q * q) + 1
    if name.startswith("su("):
        return -dim_g
    if name.startswith("sl(") and name.endswith(",R)"):
        m = int(re.findall(r"\d+", name)[0])
        return rank  # split form of A_{m-1}
    if name.startswith("sl(") and name.endswith(",H)"):
        m = int(re.findall(r"\d+", name)[0])
        return -(2 * m + 1)  # k = sp(m) inside sl(m, H)
    if name.startswith("so*("):
        m = int(re.findall(r"\d+", name)[0]) // 2
        return (m * m - m) - m * m  # dim p - dim k with k = u(m)
    if name.startswith("so("):
        if "," not in name:
            return -dim_g  # compact orthogonal form
        p, q = map(int, re.findall(r"\d+", name))
        return p * q - (p * (p - 1) + q * (q - 1)) // 2
    if name.startswith("sp(") and name.endswith(",R)"):
        return rank
    if name.startswith("sp(") and "," in name:
        p, q = map(int, re.findall(r"\d+", name))
        return 4 * p * q - (p * (2 * p + 1) + q * (2 * q + 1))
    if name.startswith("sp("):
        return -dim_g
    table = {
        "EI": 6, "EII": 2, "EIII": -14, "EIV": -26,
        "EV": 7, "EVI": -5, "EVII": -25, "EVIII": 8, "EIX": -24,
        "FI": 4, "FII": -20, "G": 2,
        "e6(c)": -78, "e7(c)": -133, "e8(c)": -248, "f4(c)": -52, "g2(c)": -14,
    }
    return table.get(name)


def _check_invariants(rs: RootSystem, sigma: Involution, report: RealFormReport):
    assert report.dim_k + report.dim_p == rs.dim
    assert report.dc + report.dnc == rs.rank
    mu = sigma.mu
    n_moved = rs.rank - len(mu.fixed_points())
    if sigma.kind == "varsigma":
        assert report.dc == n_moved // 2
    else:
        assert report.dnc == n_moved // 2
    if report.name not in ("unnormalized",):
        expect = expected_character(report.name, rs.dim, rs.rank)
        if expect is not None:
            assert report.character == expect, (
                f"{report.name}: character {report.character} != expected {expect}"
            )


def imaginary_roots(rs: RootSystem, sigma: Involution) -> list:
    """Roots vanishing on the noncompact part of h_0."""
    return _roots_vanishing_on(rs, sigma, want_sign=-1)


def real_roots(rs: RootSystem, sigma: Involution) -> list:
    """Roots vanishing on the compact part of h_0."""
    return _roots_vanishing_on(rs, sigma, want_sign=1)


def _roots_vanishing_on(rs: RootSystem, sigma: Involution, want_sign: int):
    theta = cartan_involution(rs, sigma)
    basis = fixed_point_basis(rs, sigma)
    theta_mat = theta_action_on_real_basis(rs, theta, basis)
    h = basis.h_vectors
    h_mat = [[theta_mat[i][j] for j in range(h)] for i in range(h)]
    ident = linalg.identity(h)
    shifted = [
        [h_mat[i][j] - want_sign * ident[i][j] for j in range(h)] for i in range(h)
    ]
    space = linalg.nullspace(shifted)  # coordinates in the h_0 basis vectors
    part = []
    for coeffs in space:
        v = [ZERO] * rs.dim
        for k, c in enumerate(coeffs):
            for idx, x in enumerate(basis.vectors[k]):
                v[idx] = v[idx] + c * x
        part.append(v)
    out = []
    g = rs.killing_h
    for gamma in rs.roots:
        vanishes = True
        for v in part:
            val = ZERO
            for i in range(rs.rank):
                if v[i]:
                    val = val + v[i] * GaussianRational(
                        sum(Fraction(g[i][j]) * gamma[j] for j in range(rs.rank))
                    )
            if val:
                vanishes = False
                break
        if vanishes:
            out.append(gamma)
    return out
