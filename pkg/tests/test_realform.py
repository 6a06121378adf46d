import pytest

from liebialg import linalg
from liebialg.bdtriple import DiagramAutomorphism
from liebialg.core import GaussianRational
from liebialg.involution import canonical_involution, fixed_point_basis
from liebialg.realform import (
    cartan_involution,
    identify,
    imaginary_roots,
    real_roots,
    theta_twisted_gram,
)
from liebialg.rootsystem import build_root_system


def test_theta_of_compact_is_identity():
    rs = build_root_system("A", 2)
    om = canonical_involution(rs, "omega", None, (0, 1))
    theta = cartan_involution(rs, om)
    assert linalg.mat_eq(theta.matrix, linalg.identity(rs.dim))
    report = identify(rs, om)
    assert report.dim_p == 0 and report.dim_k == rs.dim
    assert report.character == -rs.dim


def test_theta_squares_to_identity_and_commutes():
    rs = build_root_system("A", 2)
    flip = DiagramAutomorphism((1, 0))
    for sigma in [
        canonical_involution(rs, "varsigma"),
        canonical_involution(rs, "varsigma", flip),
        canonical_involution(rs, "omega", None, (0,)),
        canonical_involution(rs, "omega", flip, ()),
    ]:
        theta = cartan_involution(rs, sigma)
        assert linalg.mat_eq(
            linalg.mat_mul(theta.matrix, theta.matrix), linalg.identity(rs.dim)
        )
        # theta sigma = sigma theta as semilinear maps:
        # matrices: T * M == M * conj(T)
        lhs = linalg.mat_mul(theta.matrix, sigma.matrix)
        rhs = linalg.mat_mul(sigma.matrix, linalg.conjugate(theta.matrix))
        assert linalg.mat_eq(lhs, rhs)


def test_split_a1_dimensions():
    rs = build_root_system("A", 1)
    vs = canonical_involution(rs, "varsigma")
    report = identify(rs, vs)
    assert report.name == "sl(2,R)"
    assert (report.dim_k, report.dim_p) == (1, 2)
    assert (report.dc, report.dnc) == (0, 1)
    assert not report.maximally_compact


def test_su12_report():
    rs = build_root_system("A", 2)
    report = identify(rs, canonical_involution(rs, "varsigma", DiagramAutomorphism((1, 0))))
    assert report.name == "su(1,2)"
    assert (report.dim_k, report.dim_p) == (4, 4)
    assert report.character == 0
    assert (report.dc, report.dnc) == (1, 1)


def test_sl3r_report():
    rs = build_root_system("A", 2)
    report = identify(rs, canonical_involution(rs, "omega", DiagramAutomorphism((1, 0)), ()))
    assert report.name == "sl(3,R)"
    assert report.character == 2
    assert report.vogan_painted == ()
    assert report.maximally_compact


def test_compact_su2():
    rs = build_root_system("A", 1)
    report = identify(rs, canonical_involution(rs, "omega", None, (0,)))
    assert report.name == "su(2)"
    assert report.character == -3


@pytest.mark.parametrize(
    "series,rank,J,expected",
    [
        ("A", 2, (1,), "su(1,2)"),
        ("A", 2, (0,), "su(1,2)"),
        ("A", 3, (1, 2), "su(1,3)"),
        ("A", 3, (0, 2), "su(2,2)"),
        ("B", 2, (1,), "so(2,3)"),
        ("B", 2, (0,), "so(1,4)"),
        ("G", 2, (0,), "G"),
        ("G", 2, (1,), "G"),
    ],
)
def test_omega_j_names(series, rank, J, expected):
    rs = build_root_system(series, rank)
    report = identify(rs, canonical_involution(rs, "omega", None, J))
    assert report.name == expected


def test_d4_star_form():
    rs = build_root_system("D", 4)
    # painted at a spinor node (j > n - 2) gives the star form
    J = (0, 1, 2)  # painted = {3}
    report = identify(rs, canonical_involution(rs, "omega", None, J))
    assert report.name == "so*(8)"
    J = (1, 2, 3)  # painted = {0}: so(2, 6)
    report = identify(rs, canonical_involution(rs, "omega", None, J))
    assert report.name == "so(2,6)"


def test_omega_mu_names_a3():
    rs = build_root_system("A", 3)
    flip = DiagramAutomorphism((2, 1, 0))
    assert identify(rs, canonical_involution(rs, "omega", flip, (1,))).name == "sl(2,H)"
    assert identify(rs, canonical_involution(rs, "omega", flip, ())).name == "sl(4,R)"
    assert identify(rs, canonical_involution(rs, "varsigma", flip)).name == "su(2,2)"


def test_varsigma_split_names():
    cases = [
        ("A", 3, "sl(4,R)"),
        ("B", 2, "so(2,3)"),
        ("C", 3, "sp(3,R)"),
        ("D", 4, "so(4,4)"),
        ("G", 2, "G"),
    ]
    for series, rank, name in cases:
        rs = build_root_system(series, rank)
        report = identify(rs, canonical_involution(rs, "varsigma"))
        assert report.name == name
        assert report.dc == 0 and report.dnc == rank
        assert report.character == rank


def test_unnormalized_when_overpainted():
    rs = build_root_system("A", 3)
    report = identify(rs, canonical_involution(rs, "omega", None, (1,)))
    # painted = {0, 2}: two vertices, no table name
    assert report.name == "unnormalized"
    assert report.dim_k + report.dim_p == rs.dim


def test_theta_twisted_form_positive_definite():
    for series, rank, kind, perm, J in [
        ("A", 2, "varsigma", None, ()),
        ("A", 2, "omega", None, (0,)),
        ("B", 2, "omega", None, ()),
        ("A", 3, "omega", (2, 1, 0), (1,)),
        ("G", 2, "varsigma", None, ()),
    ]:
        rs = build_root_system(series, rank)
        mu = DiagramAutomorphism(perm) if perm else None
        sigma = canonical_involution(rs, kind, mu, J)
        theta = cartan_involution(rs, sigma)
        basis = fixed_point_basis(rs, sigma)
        gram = theta_twisted_gram(rs, theta, basis)
        assert linalg.is_positive_definite(gram)


def test_no_imaginary_roots_for_varsigma_mu():
    rs = build_root_system("A", 3)
    flip = DiagramAutomorphism((2, 1, 0))
    assert imaginary_roots(rs, canonical_involution(rs, "varsigma", flip)) == []


def test_no_real_roots_for_omega_mu():
    rs = build_root_system("A", 3)
    flip = DiagramAutomorphism((2, 1, 0))
    assert real_roots(rs, canonical_involution(rs, "omega", flip, (1,))) == []


def test_compact_roots_are_those_in_j():
    # theta acts as +1 on the root space of a simple root iff it is in J
    rs = build_root_system("B", 2)
    J = (0,)
    sigma = canonical_involution(rs, "omega", None, J)
    theta = cartan_involution(rs, sigma)
    for i, alpha in enumerate(rs.simple_roots):
        idx = rs.root_index(alpha)
        col = [theta.matrix[k][idx] for k in range(rs.dim)]
        expect = [GaussianRational(0)] * rs.dim
        expect[idx] = GaussianRational(1 if i in J else -1)
        assert col == expect


def test_exceptional_painted_names():
    rs = build_root_system("F", 4)
    # long-end vertex 1 -> split FI; short-end vertex 4 -> FII
    rep = identify(rs, canonical_involution(rs, "omega", None, (1, 2, 3)))
    assert rep.name == "FI" and rep.character == 4
    rep = identify(rs, canonical_involution(rs, "omega", None, (0, 1, 2)))
    assert rep.name == "FII" and rep.character == -20


def test_e6_painted_names():
    rs = build_root_system("E", 6)
    fixed = tuple(range(6))
    # short-branch extreme (Bourbaki vertex 2) -> EII
    j = tuple(sorted(set(fixed) - {1}))
    rep = identify(rs, canonical_involution(rs, "omega", None, j))
    assert rep.name == "EII" and rep.character == 2
    # long-branch extreme (vertex 1) -> EIII
    j = tuple(sorted(set(fixed) - {0}))
    rep = identify(rs, canonical_involution(rs, "omega", None, j))
    assert rep.name == "EIII" and rep.character == -14
