"""Batch front-end: enumeration, construction, verification and
identification with machine-readable output.

Vertex numbering on the command line is 1-based (Bourbaki); everything
internal is 0-based.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bdtriple import (
    BDTriple,
    DiagramAutomorphism,
    diagram_automorphisms,
    enumerate_bd_triples,
    identity_automorphism,
)
from .core import GaussianRational, Tensor2
from .involution import Involution, canonical_involution
from .manin import double_factorizable, double_imaginary
from .parameter import (
    ContinuousParameter,
    NoBialgebraDatum,
    apply_reality,
    reality_kind_for,
    solve_parameters,
)
from .realform import identify
from .rmatrix import BialgebraDatum, classify, make_datum, verify_datum
from .rootsystem import RootSystem, SimpleType, build_root_system

SIGMA_CHOICES = ("varsigma", "varsigma-mu", "omega", "omega-J", "omega-mu-J", "all")

ROW_LABELS = {
    "varsigma": "split (all triples, real parameters)",
    "varsigma_mu": "quasi-split (mu-stable triples)",
    "omega": "compact (empty triple, imaginary parameters)",
    "omega_J": "inner (empty triple, imaginary parameters)",
    "omega_mu_J": "outer (mu-antistable triples)",
}


def _fail(msg: str) -> "SystemExit":
    print(f"error: {msg}", file=sys.stderr)
    return SystemExit(2)


def _root_system(args) -> RootSystem:
    try:
        return build_root_system(args.type.upper(), args.rank)
    except ValueError as exc:
        raise _fail(str(exc))


def _parse_mu(rs: RootSystem, text: str | None, want_nontrivial: bool):
    autos = diagram_automorphisms(rs)
    if text is None:
        if not want_nontrivial:
            return identity_automorphism(rs.rank)
        for mu in autos:
            if not mu.is_identity():
                return mu
        raise _fail(f"{rs.type} has no nontrivial diagram automorphism")
    perm = tuple(int(x) - 1 for x in text.split(","))
    mu = DiagramAutomorphism(perm)
    if mu not in autos:
        raise _fail(f"{text} is not an order-2 diagram automorphism of {rs.type}")
    if want_nontrivial != (not mu.is_identity()):
        raise _fail("--mu does not match the requested sigma kind")
    return mu


def _parse_indices(text: str | None, rank: int):
    if not text:
        return ()
    try:
        idx = tuple(sorted(int(x) - 1 for x in text.split(",")))
    except ValueError:
        raise _fail(f"bad index list {text!r}")
    if any(i < 0 or i >= rank for i in idx):
        raise _fail(f"index out of range in {text!r}")
    return idx


def _sigma_from_args(rs: RootSystem, args) -> Involution:
    kind = args.sigma
    if kind in (None, "all"):
        raise _fail("this command needs a concrete --sigma")
    if kind == "varsigma":
        return canonical_involution(rs, "varsigma", _parse_mu(rs, args.mu, False))
    if kind == "varsigma-mu":
        return canonical_involution(rs, "varsigma", _parse_mu(rs, args.mu, True))
    mu = _parse_mu(rs, args.mu, kind == "omega-mu-J")
    fixed = mu.fixed_points()
    if kind == "omega":
        return canonical_involution(rs, "omega", mu, fixed)
    if args.painted is not None:
        painted = _parse_indices(args.painted, rs.rank)
        if not set(painted) <= set(fixed):
            raise _fail("painted vertices must be mu-fixed")
        j = tuple(sorted(set(fixed) - set(painted)))
    else:
        j = _parse_indices(args.J, rs.rank)
        if not set(j) <= set(fixed):
            raise _fail("J must consist of mu-fixed vertices")
    return canonical_involution(rs, "omega", mu, j)


def _sigma_variants(rs: RootSystem, which: str):
    """All canonical involutions of the requested table rows."""
    out = []
    autos = diagram_automorphisms(rs)
    nontrivial = [m for m in autos if not m.is_identity()]
    ident = identity_automorphism(rs.rank)
    from itertools import combinations

    if which in ("varsigma", "all"):
        out.append(canonical_involution(rs, "varsigma", ident))
    if which in ("varsigma-mu", "all"):
        for mu in nontrivial:
            out.append(canonical_involution(rs, "varsigma", mu))
    if which in ("omega", "all"):
        out.append(canonical_involution(rs, "omega", ident, tuple(range(rs.rank))))
    if which in ("omega-J", "all"):
        for k in range(rs.rank):
            for j in combinations(range(rs.rank), k):
                out.append(canonical_involution(rs, "omega", ident, j))
    if which in ("omega-mu-J", "all"):
        for mu in nontrivial:
            for k in range(len(mu.fixed_points()) + 1):
                for j in combinations(mu.fixed_points(), k):
                    out.append(canonical_involution(rs, "omega", mu, j))
    return out


def _default_t(label: str) -> GaussianRational:
    if reality_kind_for(label) in ("real", "conjugate-mu"):
        return GaussianRational(1)
    return GaussianRational(0, 1)


def _enumerate_bialgebras(rs: RootSystem, which: str, materialize: bool = False):
    rows = []
    for sigma in _sigma_variants(rs, which):
        label = sigma.describe()
        report = identify(rs, sigma)
        for bd in enumerate_bd_triples(rs):
            try:
                space = apply_reality(
                    solve_parameters(rs, bd), label, sigma.mu, bd
                )
            except NoBialgebraDatum:
                continue
            datum = make_datum(rs, sigma, bd, space.base_point, _default_t(label))
            row = {
                "row": ROW_LABELS[label],
                "sigma": sigma.to_json(),
                "sigma_label": label,
                "real_form": report.name,
                "bd": bd.to_json(),
                "parameter_dimension": space.dimension,
                "parameter_space": space.to_json(),
                "t_class": datum.t_class,
            }
            if materialize:
                row["datum"] = datum.to_json()
            rows.append(row)
    return rows


def cmd_enumerate(args) -> int:
    rs = _root_system(args)
    what = args.what
    if what == "bd-triples":
        rows = [bd.to_json() for bd in enumerate_bd_triples(rs)]
    elif what == "involutions":
        rows = [
            dict(s.to_json(), label=s.describe())
            for s in _sigma_variants(rs, args.sigma or "all")
        ]
    elif what == "bialgebras":
        rows = _enumerate_bialgebras(rs, args.sigma or "all", args.materialize)
    elif what == "root-system":
        _emit(args, rs.to_json())
        return 0
    else:
        raise _fail(f"unknown --what {what!r}")
    _emit(args, {"type": str(rs.type), "what": what, "rows": rows})
    return 0


def cmd_build(args) -> int:
    rs = _root_system(args)
    sigma = _sigma_from_args(rs, args)
    label = sigma.describe()
    bd = BDTriple.from_json(json.loads(args.bd)) if args.bd else BDTriple.empty()
    try:
        space = apply_reality(solve_parameters(rs, bd), label, sigma.mu, bd)
    except NoBialgebraDatum as exc:
        raise _fail(str(exc))
    coeffs = json.loads(args.coefficients) if args.coefficients else []
    if len(coeffs) > space.dimension:
        raise _fail(f"at most {space.dimension} direction coefficients allowed")
    coeffs = [GaussianRational.parse(str(c)) for c in coeffs]
    coeffs += [GaussianRational(0)] * (space.dimension - len(coeffs))
    lam = space.point(coeffs)
    if args.t in (None, "real", "imaginary"):
        t = GaussianRational(1) if args.t == "real" else (
            GaussianRational(0, 1) if args.t == "imaginary" else _default_t(label)
        )
    else:
        t = GaussianRational.parse(args.t)
    try:
        datum = make_datum(rs, sigma, bd, lam, t)
    except (NoBialgebraDatum, ValueError) as exc:
        raise _fail(str(exc))
    _emit(args, datum.to_json())
    return 0


def datum_from_json(doc: dict) -> BialgebraDatum:
    typ = SimpleType.parse(doc["type"])
    rs = build_root_system(typ.series, typ.rank)
    sig = doc["sigma"]
    mu = DiagramAutomorphism(tuple(sig.get("mu", list(range(rs.rank)))))
    sigma = canonical_involution(rs, sig["kind"], mu, tuple(sig.get("J", ())))
    bd = BDTriple.from_json(doc["bd"])
    lam = ContinuousParameter(
        [[GaussianRational.from_json(x) for x in row] for row in doc["lambda"]]
    )
    t = GaussianRational.from_json(doc["t"])
    r0 = Tensor2.from_json(doc["r0"])
    r = Tensor2.from_json(doc["r"])
    return BialgebraDatum(rs, sigma, doc["sigma_label"], bd, lam, t, r0, r)


def cmd_verify(args) -> int:
    with open(args.input) as fh:
        doc = json.load(fh)
    try:
        datum = datum_from_json(doc)
    except (KeyError, ValueError) as exc:
        raise _fail(f"malformed datum: {exc}")
    checks = verify_datum(datum, check_cybe=not args.skip_cybe)
    if args.manin:
        try:
            triple = (
                double_factorizable(datum.rs, datum)
                if datum.t.is_real()
                else double_imaginary(datum.rs, datum)
            )
            for key, val in triple.verify().items():
                checks[f"manin_{key}"] = val
        except ValueError as exc:
            checks["manin_constructible"] = False
    _emit(args, {"checks": checks, "pass": all(checks.values())})
    return 0 if all(checks.values()) else 1


def cmd_identify(args) -> int:
    rs = _root_system(args)
    sigma = _sigma_from_args(rs, args)
    report = identify(rs, sigma)
    _emit(args, report.to_json())
    return 0


def cmd_classify(args) -> int:
    rs = _root_system(args)
    data = []
    for sigma in _sigma_variants(rs, args.sigma or "all"):
        label = sigma.describe()
        for bd in enumerate_bd_triples(rs):
            try:
                space = apply_reality(
                    solve_parameters(rs, bd), label, sigma.mu, bd
                )
            except NoBialgebraDatum:
                continue
            data.append(
                make_datum(rs, sigma, bd, space.base_point, _default_t(label))
            )
    kept = classify(data)
    rows = [
        {
            "sigma_label": d.sigma_label,
            "sigma": d.sigma.to_json(),
            "bd": d.bd.to_json(),
            "t_class": d.t_class,
        }
        for d in kept
    ]
    _emit(
        args,
        {
            "type": str(rs.type),
            "total_data": len(data),
            "classes": len(kept),
            "representatives": rows,
        },
    )
    return 0


# ---- output -----------------------------------------------------------------


def _flatten(row: dict) -> dict:
    flat = {}
    for key, val in row.items():
        if isinstance(val, (dict, list)):
            flat[key] = json.dumps(val, sort_keys=True)
        else:
            flat[key] = val
    return flat


def _emit(args, payload: dict):
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    elif fmt == "csv":
        rows = payload.get("rows") or payload.get("representatives") or [payload]
        rows = [_flatten(r) for r in rows]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=sorted({k for r in rows for k in r}))
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue().rstrip("\n")
    elif fmt == "pretty":
        text = _pretty(payload)
    else:
        raise _fail(f"unknown format {fmt!r}")
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _pretty(payload, indent=0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for key in sorted(payload):
            val = payload[key]
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_pretty(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_pretty(v, indent) for v in payload) or f"{pad}(none)"
    return f"{pad}{payload}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liebialg",
        description="Exact classification data for almost-factorizable "
        "real simple Lie bialgebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sigma=True):
        p.add_argument("--type", required=True, help="series letter A..G")
        p.add_argument("--rank", required=True, type=int)
        if sigma:
            p.add_argument("--sigma", choices=SIGMA_CHOICES)
            p.add_argument("--mu", help="1-based permutation, e.g. 3,2,1")
            p.add_argument("--J", help="1-based mu-fixed vertices, e.g. 1,3")
            p.add_argument(
                "--painted", help="1-based painted vertices (complement of J)"
            )
        p.add_argument(
            "--format", choices=("json", "csv", "pretty"), default="json"
        )
        p.add_argument("--out", help="write output to a file")

    p = sub.add_parser("enumerate", help="list triples, involutions or data")
    common(p)
    p.add_argument(
        "--what",
        choices=("bd-triples", "involutions", "bialgebras", "root-system"),
        default="bialgebras",
    )
    p.add_argument(
        "--materialize",
        action="store_true",
        help="include the full datum (with tensors) in each row",
    )
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("build", help="materialize one datum with tensors")
    common(p)
    p.add_argument("--bd", help="triple as JSON {gamma1, gamma2, tau}")
    p.add_argument(
        "--t", help="scalar (1, 2, i, 3i) or the line keywords real/imaginary"
    )
    p.add_argument(
        "--coefficients", help="JSON list of direction coefficients"
    )
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check all identities of a datum file")
    p.add_argument("input", help="datum JSON file")
    p.add_argument("--skip-cybe", action="store_true")
    p.add_argument("--manin", action="store_true", help="also verify the double")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identify", help="name the real form of an involution")
    common(p)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("classify", help="deduplicate enumerated data")
    common(p)
    p.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        raise
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
