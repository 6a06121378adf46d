from fractions import Fraction

import pytest

from liebialg import linalg
from liebialg.bdtriple import DiagramAutomorphism
from liebialg.core import GaussianRational, I, ONE, ZERO
from liebialg.involution import (
    Involution,
    NormalizationObstruction,
    canonical_involution,
    conjugate_involution,
    fixed_point_basis,
    normalize_involution,
    real_structure_constants,
    rescaling_automorphism,
    sigma_root_action,
)
from liebialg.rootsystem import build_root_system


def is_algebra_map(rs, sigma):
    st = rs.structure
    for i in range(rs.dim):
        for j in range(rs.dim):
            vi, vj = rs.basis_vector(i), rs.basis_vector(j)
            if sigma(st.bracket(vi, vj)) != st.bracket(sigma(vi), sigma(vj)):
                return False
    return True


@pytest.mark.parametrize(
    "series,rank,kind,perm,J",
    [
        ("A", 1, "varsigma", None, ()),
        ("A", 1, "omega", None, (0,)),
        ("A", 1, "omega", None, ()),
        ("A", 2, "varsigma", (1, 0), ()),
        ("A", 2, "omega", (1, 0), ()),
        ("B", 2, "omega", None, (1,)),
        ("G", 2, "omega", None, (0, 1)),
        ("A", 3, "omega", (2, 1, 0), (1,)),
    ],
)
def test_canonical_involutions_are_involutive_algebra_maps(series, rank, kind, perm, J):
    rs = build_root_system(series, rank)
    mu = DiagramAutomorphism(perm) if perm else None
    sigma = canonical_involution(rs, kind, mu, J)
    assert sigma.is_involution()
    assert is_algebra_map(rs, sigma)


def test_omega_action_on_generators():
    rs = build_root_system("A", 1)
    om = canonical_involution(rs, "omega", None, (0,))
    alpha = rs.simple_roots[0]
    xp = rs.basis_vector(rs.root_index(alpha))
    xm = rs.basis_vector(rs.root_index((-1,)))
    h = rs.basis_vector(0)
    assert om(xp) == [-x for x in xm]
    assert om(xm) == [-x for x in xp]
    assert om(h) == [-x for x in h]


def test_omega_mu_j_negates_cartan():
    rs = build_root_system("A", 3)
    flip = DiagramAutomorphism((2, 1, 0))
    om = canonical_involution(rs, "omega", flip, (1,))
    for i in range(3):
        image = om(rs.basis_vector(i))
        expect = [ZERO] * rs.dim
        expect[flip(i)] = -ONE
        assert image == expect


def test_varsigma_fixed_points_are_chevalley_real_span():
    rs = build_root_system("A", 2)
    vs = canonical_involution(rs, "varsigma")
    assert linalg.mat_eq(vs.matrix, linalg.identity(rs.dim))
    basis = fixed_point_basis(rs, vs)
    for v in basis.vectors:
        assert all(x.is_real() for x in v)


def test_compact_fixed_points_a1():
    rs = build_root_system("A", 1)
    om = canonical_involution(rs, "omega", None, (0,))
    basis = fixed_point_basis(rs, om)
    ip = rs.root_index((1,))
    im = rs.root_index((-1,))
    expected = []
    for spec in [{0: I}, {ip: ONE, im: -ONE}, {ip: I, im: I}]:
        v = [ZERO] * rs.dim
        for k, c in spec.items():
            v[k] = c
        expected.append(v)
    assert basis.vectors == expected
    assert basis.h_vectors == 1


def test_fixed_basis_h0_patterns():
    rs = build_root_system("A", 2)
    flip = DiagramAutomorphism((1, 0))
    # split: R h_1 + R h_2
    vs = canonical_involution(rs, "varsigma")
    b = fixed_point_basis(rs, vs)
    assert b.vectors[0][0] == ONE and b.vectors[1][1] == ONE
    # compact: i R h
    om = canonical_involution(rs, "omega", None, (0, 1))
    b = fixed_point_basis(rs, om)
    assert b.vectors[0][0] == I and b.vectors[1][1] == I
    # omega with flip: i(h_1 + h_2) and h_1 - h_2
    omf = canonical_involution(rs, "omega", flip, ())
    b = fixed_point_basis(rs, omf)
    assert b.vectors[0][:2] == [I, I]
    assert b.vectors[1][:2] == [ONE, -ONE]
    # varsigma with flip: h_1 + h_2 and i(h_1 - h_2)
    vsf = canonical_involution(rs, "varsigma", flip)
    b = fixed_point_basis(rs, vsf)
    assert b.vectors[0][:2] == [ONE, ONE]
    assert b.vectors[1][:2] == [I, -I]


def test_fixed_basis_counts_and_fixedness():
    for series, rank, kind, perm, J in [
        ("A", 2, "omega", (1, 0), ()),
        ("B", 2, "omega", None, (0,)),
        ("A", 3, "varsigma", (2, 1, 0), ()),
    ]:
        rs = build_root_system(series, rank)
        mu = DiagramAutomorphism(perm) if perm else None
        sigma = canonical_involution(rs, kind, mu, J)
        basis = fixed_point_basis(rs, sigma)
        assert basis.count == rs.dim
        mat = []
        for v in basis.vectors:
            mat.append([GaussianRational(x.re) for x in v])
            mat[-1] += [GaussianRational(x.im) for x in v]
        assert linalg.rank(mat) == rs.dim  # really a basis over R


def test_real_structure_constants_close_and_jacobi():
    rs = build_root_system("A", 1)
    om = canonical_involution(rs, "omega", None, (0,))
    basis = fixed_point_basis(rs, om)
    table = real_structure_constants(rs, basis)
    n = basis.count
    for (i, j), terms in table.items():
        assert all(c.is_real() for _, c in terms)
    # Jacobi in the real coordinates
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, cf in table.get((b, c), ()):
                        for q, cf2 in table.get((a, m), ()):
                            acc[q] = acc.get(q, ZERO) + cf * cf2
                assert not any(acc.values())


def test_killing_conjugation_symmetry():
    # kappa(sigma x, sigma y) = conj(kappa(x, y))
    rs = build_root_system("A", 2)
    for sigma in [
        canonical_involution(rs, "omega", None, (0, 1)),
        canonical_involution(rs, "varsigma", DiagramAutomorphism((1, 0))),
    ]:
        for i in range(rs.dim):
            for j in range(rs.dim):
                x = rs.basis_vector(i)
                y = [ZERO] * rs.dim
                y[j] = GaussianRational(1, 1)  # complex input exercises conj
                lhs = rs.killing_form(sigma(x), sigma(y))
                assert lhs == rs.killing_form(x, y).conj()


def test_normalize_identity_on_canonical_omega():
    rs = build_root_system("A", 2)
    om = canonical_involution(rs, "omega", None, (0, 1))
    d, kind, mu, J = normalize_involution(rs, om)
    assert kind == "omega" and mu.is_identity() and J == (0, 1)
    assert all(v == ONE for v in d.values())


def _twist(rs, sigma, scalars):
    tw = rescaling_automorphism(rs, scalars)
    m = linalg.mat_mul(
        tw, linalg.mat_mul(sigma.matrix, linalg.inverse(linalg.conjugate(tw)))
    )
    out = Involution(m, "general")
    assert out.is_involution()
    return out


def test_normalize_negative_real_scalar():
    # c_alpha = -4 requires |d|^2 = 1/4, solved by d = 1/2
    rs = build_root_system("A", 2)
    om = canonical_involution(rs, "omega", None, (0, 1))
    twisted = _twist(rs, om, {0: GaussianRational(Fraction(1, 2)), 1: ONE})
    action = sigma_root_action(rs, twisted)
    assert action[rs.simple_roots[0]][1] == GaussianRational(-4)
    d, kind, mu, J = normalize_involution(rs, twisted)
    assert kind == "omega" and J == (0, 1)
    assert d[0] == GaussianRational(Fraction(1, 2))
    r = rescaling_automorphism(rs, d)
    back = conjugate_involution(rs, twisted, r)
    assert linalg.mat_eq(back.matrix, om.matrix)


def test_normalize_imaginary_unit_scalar():
    # c_alpha = i is repaired by d = 1 + i
    rs = build_root_system("A", 2)
    vs = canonical_involution(rs, "varsigma")
    twisted = _twist(rs, vs, {0: ONE + I, 1: ONE})
    action = sigma_root_action(rs, twisted)
    assert action[rs.simple_roots[0]][1] == I
    d, kind, mu, J = normalize_involution(rs, twisted)
    assert kind == "varsigma" and mu.is_identity()
    assert d[0] == ONE + I
    r = rescaling_automorphism(rs, d)
    back = conjugate_involution(rs, twisted, r)
    assert linalg.mat_eq(back.matrix, vs.matrix)


def test_normalize_roundtrip_with_flip():
    rs = build_root_system("A", 3)
    flip = DiagramAutomorphism((2, 1, 0))
    target = canonical_involution(rs, "omega", flip, (1,))
    twisted = _twist(
        rs, target, {0: GaussianRational(3), 1: ONE - I, 2: GaussianRational(Fraction(2, 5))}
    )
    d, kind, mu, J = normalize_involution(rs, twisted)
    assert (kind, mu.permutation, J) == ("omega", (2, 1, 0), (1,))
    r = rescaling_automorphism(rs, d)
    back = conjugate_involution(rs, twisted, r)
    assert linalg.mat_eq(back.matrix, target.matrix)


def test_normalize_obstruction_certificate():
    # c_alpha = -3: 1/3 is not a sum of two rational squares
    rs = build_root_system("A", 2)
    om = canonical_involution(rs, "omega", None, (0, 1))
    tw = rescaling_automorphism(rs, {0: ONE, 1: ONE})
    m = [row[:] for row in om.matrix]
    a1 = rs.simple_roots[0]
    ip, im = rs.root_index(a1), rs.root_index((-1, 0))
    m[im][ip] = m[im][ip] * GaussianRational(3)
    m[ip][im] = m[ip][im] / GaussianRational(3)
    bad = Involution(m, "general")
    assert bad.is_involution()
    with pytest.raises(NormalizationObstruction) as exc:
        normalize_involution(rs, bad)
    assert exc.value.certificate == Fraction(1, 3)


def test_rescaling_is_automorphism():
    rs = build_root_system("A", 2)
    r = rescaling_automorphism(rs, {0: ONE + I, 1: GaussianRational(Fraction(2, 3))})
    st = rs.structure
    for i in range(rs.dim):
        for j in range(rs.dim):
            vi, vj = rs.basis_vector(i), rs.basis_vector(j)
            lhs = linalg.mat_vec(r, st.bracket(vi, vj))
            rhs = st.bracket(linalg.mat_vec(r, vi), linalg.mat_vec(r, vj))
            assert lhs == rhs


def test_j_must_be_mu_fixed():
    rs = build_root_system("A", 2)
    flip = DiagramAutomorphism((1, 0))
    with pytest.raises(ValueError):
        canonical_involution(rs, "omega", flip, (0,))
