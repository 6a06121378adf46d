"""Construction and analysis of the classified r-matrices.

build_r materializes

    r = t * (lam + sum over positive gamma of x_{-gamma} (x) x_gamma
               + sum over alpha < beta of x_{-alpha} wedge x_beta)

and build_r0 its antisymmetric companion.  The root-vector family used
in the precedence terms is produced by extend_T: target vectors along
tau-chains are rescaled so that the chain transport maps x_beta exactly
to x_{T beta}, propagating through brackets for composite roots.  When a
canonical involution is supplied, a further sign adjustment on the
simple chain vectors makes the family sigma-compatible, which is what
makes (sigma (x) sigma)(r0) = r0 hold in the stable/antistable cases.

extract_data inverts the construction: from an antisymmetric solution it
recovers the regular element H, the sign-normalized scalar t, the
positive system, the triple and the continuous parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bdtriple import (
    BDTriple,
    DiagramAutomorphism,
    precedence_pairs,
    span_subset_roots,
    tau_chains,
)
from .core import (
    GaussianRational,
    ONE,
    Tensor2,
    ZERO,
    cybe,
    cybe_is_zero,
)
from .involution import Involution, fixed_point_basis
from .parameter import (
    ContinuousParameter,
    NoBialgebraDatum,
    lambda_reality_ok,
    reality_kind_for,
    satisfies_constraints,
    stability_ok,
    t_reality_ok,
)
from .rootsystem import RootSystem


class ExtractionError(ValueError):
    """The tensor is outside the branch this library classifies."""


# ---- the root-vector family -------------------------------------------------


def _chain_of(chains, root):
    for c in chains:
        if c[0] == root:
            return c
    raise KeyError(root)


def _sigma_chain_scalars(rs, bd, sigma):
    """Simple-root rescalings making the family sigma-compatible.

    Only the omega kinds with a nonempty antistable triple need work:
    there the generator scalars (-1)^{chi_J} must come out constant
    along every tau-chain, which a per-vertex rescaling always achieves
    inside Q(i)."""
    s: dict[tuple, GaussianRational] = {}
    if sigma is None or sigma.kind == "varsigma" or bd.is_empty():
        return s
    mu = sigma.mu
    jset = set(sigma.J)

    def c_of(root):
        # simple root index
        idx = root.index(1)
        return -ONE if idx in jset else ONE

    simple_chains = [
        c for c in tau_chains(rs, bd) if sum(c[0]) == 1
    ]
    starts = {c[0] for c in simple_chains}
    done = set()
    for chain in simple_chains:
        if chain[0] in done:
            continue
        m = len(chain) - 1
        mirror_start = mu.apply_root(chain[m])
        if mirror_start == chain[0]:
            # self-paired chain: mu reverses it.  The generator scalars
            # cannot be scaled past c * |s|^2 > 0 at a mu-fixed middle
            # vertex, so normalize the chain constant to the middle value
            # rather than to 1; only constancy along the chain matters.
            eps = c_of(chain[m // 2]) if m % 2 == 0 else ONE
            for k in range(m + 1):
                j = m - k
                if k < j:
                    s.setdefault(chain[k], ONE)
                    s[chain[j]] = eps / c_of(chain[k])
                elif k == j:
                    s[chain[k]] = ONE
            done.add(chain[0])
        else:
            if mirror_start not in starts:
                raise ValueError("triple is not sigma-compatible")
            mirror = _chain_of(simple_chains, mirror_start)
            for k in range(m + 1):
                s.setdefault(chain[k], ONE)
                s[mirror[k]] = ONE / c_of(chain[m - k])
            done.add(chain[0])
            done.add(mirror_start)
    return s


def extend_T(rs: RootSystem, bd: BDTriple, sigma: Involution | None = None) -> dict:
    """Scale map s of the root-vector family adapted to the triple.

    The family is x'_gamma = s_gamma x_gamma, x'_{-gamma} = x_{-gamma} /
    s_gamma over positive gamma; chain transport satisfies
    T(x'_beta) = x'_{T beta} for every beta in the Gamma1 span.
    """
    s = {g: ONE for g in rs.positive_roots}
    s.update(_sigma_chain_scalars(rs, bd, sigma))
    hat1 = set(span_subset_roots(rs, bd.gamma1))
    gamma1_roots = {rs.simple_roots[i] for i in bd.gamma1}

    composite_chains = [c for c in tau_chains(rs, bd) if sum(c[0]) > 1]
    composite_chains.sort(key=lambda c: sum(c[0]))
    for chain in composite_chains:
        for beta, tbeta in zip(chain, chain[1:]):
            # decompose beta inside the Gamma1 subsystem
            gamma = next(
                g
                for g in gamma1_roots
                if tuple(a - b for a, b in zip(beta, g)) in hat1
            )
            delta = tuple(a - b for a, b in zip(beta, gamma))
            tg = _tau_root(rs, bd, gamma)
            td = _tau_root(rs, bd, delta)
            s[tbeta] = (
                s[beta]
                * s[tg]
                * s[td]
                * rs.normalized_n(tg, td)
                / (rs.normalized_n(gamma, delta) * s[gamma] * s[delta])
            )
    return s


def _tau_root(rs, bd, root):
    out = [0] * rs.rank
    for i, c in enumerate(root):
        if c:
            out[bd.mapping[i]] = c
    return tuple(out)


def transported_images(rs: RootSystem, bd: BDTriple, family: dict) -> dict:
    """Chain transport x'_beta -> x'_{T beta} as index/scalar assignments
    over the original basis (for inspection and tests)."""
    out = {}
    hat1 = span_subset_roots(rs, bd.gamma1)
    for beta in hat1:
        tbeta = _tau_root(rs, bd, beta)
        out[beta] = (tbeta, family[tbeta] / family[beta])
    return out


# ---- tensors ---------------------------------------------------------------


def _family_scale(family, root):
    if all(x >= 0 for x in root):
        return family[root]
    return ONE / family[tuple(-x for x in root)]


def build_r(
    rs: RootSystem,
    bd: BDTriple,
    lam: ContinuousParameter,
    t: GaussianRational,
    family: dict | None = None,
) -> Tensor2:
    """The quasitriangular tensor for the given data."""
    if not t:
        raise ValueError("t must be nonzero")
    if not satisfies_constraints(rs, bd, lam):
        raise ValueError("continuous parameter fails its defining constraints")
    if family is None:
        family = extend_T(rs, bd)
    items = list(lam.embed(rs).items())
    for g in rs.positive_roots:
        items.append(((rs.root_index(tuple(-x for x in g)), rs.root_index(g)), ONE))
    for alpha, beta in sorted(precedence_pairs(rs, bd)):
        coeff = family[beta] / family[alpha]
        ia = rs.root_index(tuple(-x for x in alpha))
        ib = rs.root_index(beta)
        items.append(((ia, ib), coeff))
        items.append(((ib, ia), -coeff))
    return Tensor2.from_items(rs.dim, [(k, t * v) for k, v in items])


def build_r0(
    rs: RootSystem,
    bd: BDTriple,
    lam: ContinuousParameter,
    t: GaussianRational,
    family: dict | None = None,
) -> Tensor2:
    """The antisymmetric tensor: the wedge-half of build_r."""
    if not t:
        raise ValueError("t must be nonzero")
    if not satisfies_constraints(rs, bd, lam):
        raise ValueError("continuous parameter fails its defining constraints")
    if family is None:
        family = extend_T(rs, bd)
    half = GaussianRational(Fraction(1, 2))
    items = []
    anti = lam.antisymmetric_part()
    for i in range(rs.rank):
        for j in range(rs.rank):
            if anti[i][j]:
                items.append(((i, j), anti[i][j]))
    for g in rs.positive_roots:
        im, ip = rs.root_index(tuple(-x for x in g)), rs.root_index(g)
        items.append(((im, ip), half))
        items.append(((ip, im), -half))
    for alpha, beta in sorted(precedence_pairs(rs, bd)):
        coeff = family[beta] / family[alpha]
        ia = rs.root_index(tuple(-x for x in alpha))
        ib = rs.root_index(beta)
        items.append(((ia, ib), coeff))
        items.append(((ib, ia), -coeff))
    return Tensor2.from_items(rs.dim, [(k, t * v) for k, v in items])


# ---- the classification datum ----------------------------------------------


@dataclass
class BialgebraDatum:
    rs: RootSystem
    sigma: Involution
    sigma_label: str
    bd: BDTriple
    lam: ContinuousParameter
    t: GaussianRational
    r0: Tensor2
    r: Tensor2

    @property
    def t_class(self) -> str:
        return "real_positive" if self.t.is_real() else "imaginary_positive"

    def to_json(self) -> dict:
        return {
            "type": str(self.rs.type),
            "sigma": self.sigma.to_json(),
            "sigma_label": self.sigma_label,
            "bd": self.bd.to_json(),
            "lambda": self.lam.to_json(),
            "t": self.t.to_json(),
            "t_class": self.t_class,
            "r0": self.r0.to_json(),
            "r": self.r.to_json(),
        }


def _positive(t: GaussianRational) -> bool:
    return t.re > 0 or (not t.re and t.im > 0)


def make_datum(
    rs: RootSystem,
    sigma: Involution,
    bd: BDTriple,
    lam: ContinuousParameter,
    t: GaussianRational,
) -> BialgebraDatum:
    """Assemble and check one classification datum.

    Raises NoBialgebraDatum when the combination violates one of the
    reality conditions (wrong stability, lambda coefficients or t-line).
    """
    label = sigma.describe()
    kind = reality_kind_for(label)
    if not stability_ok(bd, kind, sigma.mu):
        raise NoBialgebraDatum(f"triple incompatible with {label}")
    if not t_reality_ok(t, kind):
        raise NoBialgebraDatum(f"t = {t} not allowed for {label}")
    if not lambda_reality_ok(lam, kind, sigma.mu):
        raise NoBialgebraDatum(f"lambda coefficients not allowed for {label}")
    if not _positive(t):
        raise ValueError("t must lie on the positive real or imaginary ray")
    family = extend_T(rs, bd, sigma)
    r = build_r(rs, bd, lam, t, family)
    r0 = build_r0(rs, bd, lam, t, family)
    datum = BialgebraDatum(rs, sigma, label, bd, lam, t, r0, r)
    assert sigma_fixes(datum), "constructed tensor escaped the real form"
    return datum


def sigma_fixes(datum: BialgebraDatum) -> bool:
    from .core import apply_semilinear_pair

    return apply_semilinear_pair(datum.sigma, datum.r0) == datum.r0


def verify_datum(datum: BialgebraDatum, check_cybe: bool = True) -> dict:
    """Every defining identity, each as a named exact check."""
    rs = datum.rs
    t = datum.t
    omega = rs.casimir
    r_sym = datum.r + datum.r.transpose()
    checks = {
        "r_plus_r21_equals_t_omega": r_sym == omega.scale(t),
        "r0_antisymmetric": datum.r0.is_antisymmetric(),
        "r0_equals_r_minus_half_t_omega": datum.r0
        == datum.r - omega.scale(t * GaussianRational(Fraction(1, 2))),
        "parameter_constraints": satisfies_constraints(rs, datum.bd, datum.lam),
        "sigma_fixes_r0": sigma_fixes(datum),
        "t_reality": t_reality_ok(t, reality_kind_for(datum.sigma_label)),
        "lambda_reality": lambda_reality_ok(
            datum.lam, reality_kind_for(datum.sigma_label), datum.sigma.mu
        ),
        "stability": stability_ok(
            datum.bd, reality_kind_for(datum.sigma_label), datum.sigma.mu
        ),
    }
    if check_cybe:
        checks["cybe"] = cybe_is_zero(datum.r, rs.structure)
    return checks


def r0_real_form_coordinates(datum: BialgebraDatum):
    """Coordinates of r0 over the real-form basis; all real iff fixed."""
    basis = fixed_point_basis(datum.rs, datum.sigma)
    n = datum.rs.dim
    w = [[basis.vectors[j][i] for j in range(n)] for i in range(n)]
    winv = linalg.inverse(w)
    inner = linalg.mat_mul(
        winv,
        linalg.mat_mul(
            [[datum.r0.get(i, j) for j in range(n)] for i in range(n)],
            linalg.transpose(winv),
        ),
    )
    return inner


# ---- recovery ---------------------------------------------------------------


@dataclass
class ExtractedData:
    H: list
    t: GaussianRational
    cartan_indices: tuple
    positive_roots: list
    delta: list
    bd: BDTriple
    lam: ContinuousParameter
    precedence: set


def extract_data(rs: RootSystem, sigma: Involution | None, r0: Tensor2) -> ExtractedData:
    """Recover the classification data from an antisymmetric solution.

    Requires the recovered Cartan subalgebra to be the standard one (all
    tensors produced by this library, and their images under diagram
    symmetries, satisfy this).
    """
    if r0.dim != rs.dim:
        raise ValueError("dimension mismatch")
    if not r0.is_antisymmetric():
        raise ExtractionError("tensor is not antisymmetric")
    if r0.is_zero():
        raise ExtractionError("zero tensor is triangular, not almost factorizable")
    if sigma is not None:
        from .core import apply_semilinear_pair

        if apply_semilinear_pair(sigma, r0) != r0:
            raise ExtractionError("tensor is not fixed by the involution pair")

    # modified Yang-Baxter constant: CYB(r0) = c^2 [Omega13, Omega23]
    cyb = cybe(r0, rs.structure)
    ref = _omega_13_23(rs)
    ratio = None
    for (key, val) in ref.items():
        got = cyb.get(*key)
        if ratio is None and val:
            ratio = got / val
    if ratio is None or not ratio:
        raise ExtractionError("tensor is triangular (vanishing modified YBE constant)")
    for (key, val) in ref.items():
        if cyb.get(*key) != ratio * val:
            raise ExtractionError("CYB(r0) is not proportional to [Omega13, Omega23]")
    for key, val in cyb.items():
        if ref.get(key, ZERO) == ZERO and val:
            raise ExtractionError("CYB(r0) is not proportional to [Omega13, Omega23]")
    if not ratio.is_real():
        raise ExtractionError("modified YBE constant squared must be real")

    # H = image of r0 under the bracket; must be regular in the Cartan
    h_vec = [ZERO] * rs.dim
    for (a, b), v in r0.items():
        for k, c in rs.structure.bracket_basis(a, b):
            h_vec[k] = h_vec[k] + v * c
    if any(h_vec[rs.rank:]):
        raise ExtractionError("bracket image does not lie in the standard Cartan")
    ad_h = rs.structure.ad(h_vec)
    if len(linalg.nullspace(ad_h)) != rs.rank:
        raise ExtractionError("bracket image is not regular")

    # t from the paired root slots, sign-normalized to the positive rays
    sample = None
    for g in rs.positive_roots:
        v = r0.get(rs.root_index(tuple(-x for x in g)), rs.root_index(g))
        if v:
            sample = v
            break
    if sample is None:
        raise ExtractionError("no paired root-vector entries found")
    t = sample + sample  # 2v = +-t
    if not _positive(t):
        t = -t
    if not (t.is_real() or t.is_imaginary()):
        raise ExtractionError("recovered t is neither real nor imaginary")
    if t * t + GaussianRational(4) * ratio:
        raise ExtractionError("entry-level t disagrees with the modified YBE constant")

    half_t = t * GaussianRational(Fraction(1, 2))
    new_pos = []
    for g in rs.positive_roots:
        v = r0.get(rs.root_index(tuple(-x for x in g)), rs.root_index(g))
        if v == half_t:
            new_pos.append(g)
        elif v == -half_t:
            new_pos.append(tuple(-x for x in g))
        else:
            raise ExtractionError("paired root slots are not +-t/2")
    # consistency: H = -t * sum of h_alpha over the recovered positives
    expect = [ZERO] * rs.dim
    for g in new_pos:
        for i, c in enumerate(g):
            expect[i] = expect[i] + GaussianRational(c)
    if [x * (-t) for x in expect] != h_vec:
        raise ExtractionError("bracket image inconsistent with recovered positives")

    pos_set = set(new_pos)
    delta = [
        g
        for g in new_pos
        if not any(
            tuple(a - b for a, b in zip(g, h)) in pos_set for h in new_pos if h != g
        )
    ]
    delta.sort(key=lambda r: (next(i for i, c in enumerate(r) if c), r))

    pairs = set()
    for a in new_pos:
        ia = rs.root_index(tuple(-x for x in a))
        for b in new_pos:
            if a != b and r0.get(ia, rs.root_index(b)):
                pairs.add((a, b))

    # triple: covering relations among the simple pairs
    lefts = {a for a, _ in pairs}
    g1_pos = [i for i, d in enumerate(delta) if d in lefts]

    def chain_len(a):
        return len([1 for (x, _) in pairs if x == a])

    mapping = {}
    for i in g1_pos:
        a = delta[i]
        succ = [b for (x, b) in pairs if x == a]
        target = chain_len(a) - 1
        nxt = [b for b in succ if chain_len(b) == target]
        if len(nxt) != 1 or nxt[0] not in delta:
            raise ExtractionError("precedence pairs do not form tau-chains")
        mapping[i] = delta.index(nxt[0])
    bd = BDTriple.make(tuple(g1_pos), tuple(sorted(mapping.values())), mapping)

    # lambda in the recovered Cartan frame
    b_rows = [[GaussianRational(x) for x in d] for d in delta]
    binv = linalg.inverse(b_rows)
    hh = [[r0.get(i, j) for j in range(rs.rank)] for i in range(rs.rank)]
    anti_new = linalg.mat_mul(
        linalg.transpose(binv), linalg.mat_mul(hh, binv)
    )
    lam_matrix = [
        [x / t for x in row] for row in anti_new
    ]
    # symmetric part: Omega_0 over the recovered base
    omega0_new = linalg.mat_mul(
        linalg.transpose(binv),
        linalg.mat_mul(
            [[GaussianRational(x) for x in row] for row in rs.cartan_dual_gram],
            binv,
        ),
    )
    half = GaussianRational(Fraction(1, 2))
    for i in range(rs.rank):
        for j in range(rs.rank):
            lam_matrix[i][j] = lam_matrix[i][j] + half * omega0_new[i][j]
    lam = ContinuousParameter(lam_matrix)

    return ExtractedData(
        H=h_vec,
        t=t,
        cartan_indices=tuple(range(rs.rank)),
        positive_roots=new_pos,
        delta=delta,
        bd=bd,
        lam=lam,
        precedence=pairs,
    )


def _omega_13_23(rs: RootSystem) -> dict:
    """Sparse [Omega13, Omega23]."""
    out: dict[tuple, GaussianRational] = {}
    items = list(rs.casimir.items())
    for (a, b), va in items:
        for (c, d), vc in items:
            v = va * vc
            for k, coef in rs.structure.bracket_basis(b, d):
                key = (a, c, k)
                out[key] = out.get(key, ZERO) + v * coef
    return {k: v for k, v in out.items() if v}


# ---- dedup ------------------------------------------------------------------


def conjugate_datum_key(datum: BialgebraDatum, psi: DiagramAutomorphism):
    """Canonical comparison key of the datum conjugated by psi."""
    perm = psi.permutation
    mu = datum.sigma.mu
    mu2 = tuple(perm[mu(_inv(perm, k))] for k in range(len(perm)))
    j2 = tuple(sorted(perm[j] for j in datum.sigma.J))
    g1 = tuple(sorted(perm[i] for i in datum.bd.gamma1))
    g2 = tuple(sorted(perm[i] for i in datum.bd.gamma2))
    tau2 = tuple(sorted((perm[i], perm[j]) for i, j in datum.bd.tau))
    n = len(perm)
    lam = datum.lam.matrix
    lam2 = tuple(
        tuple(str(lam[_inv(perm, i)][_inv(perm, j)]) for j in range(n))
        for i in range(n)
    )
    return (datum.sigma_label, mu2, j2, g1, g2, tau2, lam2, str(datum.t))


def _inv(perm, k):
    return perm.index(k)


def datum_class_key(datum: BialgebraDatum, autos) -> tuple:
    return min(conjugate_datum_key(datum, psi) for psi in autos)


def classify(data: list[BialgebraDatum]) -> list[BialgebraDatum]:
    """One representative per isomorphism class: same table row with the
    remaining data conjugate under an order-2 diagram symmetry."""
    from .bdtriple import diagram_automorphisms

    if not data:
        return []
    rs = data[0].rs
    autos = diagram_automorphisms(rs)
    ident = autos[0]
    assert ident.is_identity()
    seen: dict[tuple, BialgebraDatum] = {}
    for datum in data:
        key = datum_class_key(datum, autos)
        cur = seen.get(key)
        if cur is None or conjugate_datum_key(datum, ident) < conjugate_datum_key(
            cur, ident
        ):
            seen[key] = datum
    return sorted(seen.values(), key=lambda d: conjugate_datum_key(d, ident))
