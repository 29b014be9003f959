"""Command-line entry point: ``posetpoly <command> [options]``.

Exit status 0 on success, 1 on a domain error (one JSON line on stderr naming
the reason), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import geometry, grassmann, polytope, rep, verify
from .errors import BadParams, MalformedInput, PosetPolyError
from .poset import Poset, max_antichain, min_chain_cover, poset_from_json, width


@dataclass(frozen=True)
class RunConfig:
    method: str = "flow"
    brute_cap: int = polytope.DEFAULT_BRUTE_CAP
    seed: int = 0
    format: str = "json"

    def __post_init__(self):
        if self.brute_cap < 1:
            raise BadParams("brute cap must be at least 1")


# ---------------------------------------------------------------- input


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg})") from None


def _load_poset(args) -> Poset:
    if args.grassmann:
        d, n = args.grassmann
        return grassmann.root_poset(d, n).poset
    if args.poset:
        return poset_from_json(_read_json(args.poset))
    raise MalformedInput("give --poset FILE or --grassmann D N")


def _parse_number(x):
    if isinstance(x, bool):
        raise MalformedInput(f"bad coordinate {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            q = Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise MalformedInput(f"bad coordinate {x!r}") from None
        return int(q) if q.denominator == 1 else q
    raise MalformedInput(f"bad coordinate {x!r}")


def _load_vector(P: Poset, path: str) -> list:
    data = _read_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("z"), dict):
        raise MalformedInput('vector file must look like {"z": {"label": value}}')
    z = [0] * P.size
    for label, value in data["z"].items():
        z[P.index(label)] = _parse_number(value)
    return z


def _need_grassmann(args) -> tuple[int, int]:
    if not args.grassmann:
        raise MalformedInput("this command needs --grassmann D N")
    return tuple(args.grassmann)


def _labels(P: Poset, elems) -> list[str]:
    return [P.labels[a] for a in elems]


def _json_number(x):
    return x if isinstance(x, int) else str(x)


# ---------------------------------------------------------------- commands


def cmd_poset(args, cfg):
    return _load_poset(args).to_dict()


def cmd_width(args, cfg):
    P = _load_poset(args)
    subset = [P.index(x) for x in args.subset] if args.subset else None
    return {
        "width": width(P, subset),
        "antichain": _labels(P, max_antichain(P, subset)),
        "chains": [_labels(P, c) for c in min_chain_cover(P, subset)],
    }


def cmd_excess(args, cfg):
    P = _load_poset(args)
    z = _load_vector(P, args.z)
    value = polytope.violation_excess(P, z, args.m, cfg.method, cfg.brute_cap)
    return {"excess": _json_number(value), "m": args.m, "method": cfg.method}


def cmd_member(args, cfg):
    P = _load_poset(args)
    z = _load_vector(P, args.z)
    return {
        "member": polytope.membership(P, z, args.m, args.M, cfg.method, cfg.brute_cap),
        "m": args.m,
        "M": args.M,
    }


def cmd_enumerate(args, cfg):
    P = _load_poset(args)
    pts = polytope.enumerate_points(P, args.m, args.M)
    return {"labels": list(P.labels), "m": args.m, "M": args.M, "count": len(pts), "points": [list(p) for p in pts]}


def cmd_decompose(args, cfg):
    P = _load_poset(args)
    z = _load_vector(P, args.z)
    cert = polytope.decompose(P, z, args.m, args.M)
    return cert.to_dict(P)


def cmd_partition(args, cfg):
    P = _load_poset(args)
    cert = polytope.partition_poset(P, args.m, args.M)
    out = cert.to_dict(P)
    out["B"] = [P.labels[a] for a, v in enumerate(cert.remainder) if v]
    return out


def cmd_fflv(args, cfg):
    d, n = _need_grassmann(args)
    pts = grassmann.fflv_points(d, n, args.m)
    rp = grassmann.root_poset(d, n)
    return {
        "labels": list(rp.poset.labels),
        "count": len(pts),
        "weyl_dim": grassmann.weyl_dim(d, n, args.m),
        "points": [list(p) for p in pts],
    }


def cmd_dims(args, cfg):
    d, n = _need_grassmann(args)
    P = grassmann.root_poset(d, n).poset
    out = {
        "d": d, "n": n, "m": args.m, "M": args.M,
        "lattice_points": len(polytope.enumerate_points(P, args.m, args.M)),
        "cyclic_span_dim": rep.cyclic_span_dim(d, n, args.m, args.M),
    }
    if args.M == 0:
        out["weyl_dim"] = grassmann.weyl_dim(d, n, args.m)
    return out


def cmd_basis_check(args, cfg):
    d, n = _need_grassmann(args)
    return rep.basis_check(d, n, args.m, args.M)


def cmd_relation_check(args, cfg):
    d, n = _need_grassmann(args)
    return rep.relation_check(d, n, args.m, args.M, samples=args.samples, seed=cfg.seed)


def _poly(p: geometry.QPolynomial) -> dict:
    return {"coefficients": list(p.coeffs), "text": str(p)}


def cmd_poincare(args, cfg):
    d, n = _need_grassmann(args)
    return {"d": d, "n": n, "graph_closure": _poly(geometry.graph_poincare(d, n)),
            "grassmannian": _poly(geometry.gaussian_binomial(n, d))}


def cmd_strata(args, cfg):
    d, n = _need_grassmann(args)
    return {
        "d": d, "n": n,
        "strata": [dict(k=k, **_poly(p)) for k, p in enumerate(geometry.strata_poincare(d, n))],
        "preimage_dims": geometry.preimage_dim_table(d, n),
    }


def _load_subspace(path: str) -> geometry.Subspace:
    data = _read_json(path)
    rows = data.get("rows") if isinstance(data, dict) else data
    if not isinstance(rows, list):
        raise MalformedInput('subspace file must be a matrix or {"rows": matrix}')
    return geometry.Subspace.from_rows([[_parse_number(x) for x in row] for row in rows])


def cmd_stratum(args, cfg):
    U = _load_subspace(args.subspace)
    return {"k": geometry.stratum_of(U), "rref": U.to_json()}


def cmd_fiber(args, cfg):
    return geometry.fiber_of(_load_subspace(args.subspace)).to_json()


def cmd_verify(args, cfg):
    results = verify.run_all(seed=cfg.seed, include_properties=not args.acceptance_only)
    report = {
        "seed": cfg.seed,
        "passed": all(r.ok for r in results),
        "checks": [{"name": r.name, "passed": r.ok, "detail": r.detail} for r in results],
    }
    if cfg.format == "text":
        report["lines"] = [r.line() for r in results]
    return report


COMMANDS = {
    "poset": cmd_poset,
    "width": cmd_width,
    "excess": cmd_excess,
    "member": cmd_member,
    "enumerate": cmd_enumerate,
    "decompose": cmd_decompose,
    "partition": cmd_partition,
    "fflv": cmd_fflv,
    "dims": cmd_dims,
    "basis-check": cmd_basis_check,
    "relation-check": cmd_relation_check,
    "poincare": cmd_poincare,
    "strata": cmd_strata,
    "stratum": cmd_stratum,
    "fiber": cmd_fiber,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poset", metavar="FILE")
    common.add_argument("--grassmann", nargs=2, type=int, metavar=("D", "N"))
    common.add_argument("--m", type=int, default=0)
    common.add_argument("--M", type=int, default=0)
    common.add_argument("--z", metavar="FILE")
    common.add_argument("--subspace", metavar="FILE")
    common.add_argument("--subset", nargs="*", metavar="LABEL")
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--method", choices=["brute", "flow"], default="flow")
    common.add_argument("--brute-cap", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--acceptance-only", action="store_true")

    parser = argparse.ArgumentParser(prog="posetpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _emit(report, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
        return
    if "lines" in report:
        print("\n".join(report["lines"]))
        return
    for key, value in report.items():
        print(f"{key}: {value}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    needs = {"excess": "z", "member": "z", "decompose": "z", "stratum": "subspace", "fiber": "subspace"}
    try:
        if args.command in needs and getattr(args, needs[args.command]) is None:
            raise MalformedInput(f"{args.command} needs --{needs[args.command]} FILE")
        cap = args.brute_cap if args.brute_cap is not None else polytope.default_brute_cap()
        cfg = RunConfig(args.method, cap, args.seed, args.format)
        report = COMMANDS[args.command](args, cfg)
    except MalformedInput as exc:
        print(json.dumps({"error": exc.reason, "message": str(exc)}), file=sys.stderr)
        return 2
    except PosetPolyError as exc:
        print(json.dumps({"error": exc.reason, "message": str(exc)}), file=sys.stderr)
        return 1
    _emit(report, args.format)
    if args.command == "verify" and not report["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
