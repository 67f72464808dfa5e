"""Command line front end.

    rootmonoid roots --input cone.json --bound 2
    rootmonoid validate --input bundle.json
    rootmonoid build | verify | aut --input bundle.json
    rootmonoid reductive-aut --input reductive.json

Exit codes: 0 success, 1 malformed input, 2 validation or verification
failure, 3 incomplete enumeration.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automorphisms import InactiveError, aut_report
from .cones import Cone, ConeError, Face, SearchBoxExceeded
from .demazure import enumerate_demazure_roots
from .lattice import LatticeError
from .monoid import MonoidError, build, unit_group, verify_bialgebra
from .reductive import RootDatum, RootDatumError, VinbergCone, reductive_aut_report, validate_vinberg_cone

OK, MALFORMED, INVALID, INCOMPLETE = 0, 1, 2, 3


class Malformed(Exception):
    pass


def _cone(data) -> Cone:
    try:
        return Cone.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise Malformed(f"bad cone: {exc}") from None


def _bundle(data):
    if "cone" not in data or "collection" not in data:
        raise Malformed("a monoid bundle needs 'cone' and 'collection'")
    sigma = _cone(data["cone"])
    if not sigma.is_strongly_convex():
        raise MonoidError("strongly_convex", "sigma contains a line")
    coll = data["collection"]
    try:
        face = coll["face"]
        if "ray_indices" in face:
            tau = Face(sigma, tuple(face["ray_indices"]), None)
        else:
            tau = Face.from_rays(sigma, face["rays"])
        pairs = list(zip(coll["e1"], coll["e2"]))
    except (KeyError, TypeError) as exc:
        raise Malformed(f"bad collection: {exc}") from None
    return sigma, tau, pairs


def _build(data, degree_bound):
    sigma, tau, pairs = _bundle(data)
    return build(sigma, tau, pairs, degree_bound)


def _reductive(data):
    try:
        rd = RootDatum.from_json(data["root_datum"])
        cone = VinbergCone(tuple(data["cone"]["rays"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise Malformed(f"bad reductive input: {exc}") from None
    if any(len(g) != rd.rank for g in cone.generators):
        raise Malformed("cone generators do not match the datum rank")
    return rd, cone


def _failure(condition, message):
    return {"valid": False, "failed": condition, "message": message}


def cmd_roots(data, args):
    enum = enumerate_demazure_roots(_cone(data.get("cone", data)), args.bound)
    return enum.to_json(), OK


def cmd_validate(data, args):
    if "root_datum" in data:
        rd, cone = _reductive(data)
        probs = rd.problems()
        if probs:
            return {"valid": False, "failed": "root_datum", "problems": probs}, INVALID
        report = validate_vinberg_cone(rd, cone, args.bound)
        return report.to_json(rd), OK if report.valid else INVALID
    X = _build(data, args.degree_bound)
    return {"valid": True, "n": X.n, "k": X.k}, OK


def cmd_build(data, args):
    X = _build(data, args.degree_bound)
    out = X.to_json()
    out["adapted_basis"] = {"primal": [list(r) for r in X.basis.primal], "dual": [list(r) for r in X.basis.dual]}
    out["hilbert_basis"] = [list(h) for h in X.hilbert]
    out["dual_rays"] = [list(r) for r in X.dual_sigma.generators]
    out["unit_group"] = unit_group(X).to_json()
    return out, OK


def cmd_verify(data, args):
    X = _build(data, args.degree_bound)
    report = verify_bialgebra(X)
    return report, OK if report["passed"] else INVALID


def cmd_aut(data, args):
    X = _build(data, args.degree_bound)
    report = aut_report(X, args.bound)
    code = OK
    if not all(report.verified):
        code = INVALID
    elif not report.complete:
        code = INCOMPLETE
    return report.to_json(), code


def cmd_reductive_aut(data, args):
    rd, cone = _reductive(data)
    report = reductive_aut_report(rd, cone, args.bound)
    return report.to_json(), OK if report.complete else INCOMPLETE


COMMANDS = {"roots": cmd_roots, "validate": cmd_validate, "build": cmd_build,
            "verify": cmd_verify, "aut": cmd_aut, "reductive-aut": cmd_reductive_aut}


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.extend(_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, dict) for x in val)


def _scalar(val) -> str:
    if isinstance(val, bool):
        return "yes" if val else "no"
    if val is None:
        return "-"
    if isinstance(val, (list, dict)):
        return json.dumps(val, separators=(",", ":"))
    return str(val)


def render(obj, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(obj)) + "\n"
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def parser():
    p = argparse.ArgumentParser(prog="rootmonoid", description="Root monoids and reductive monoids, exactly.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", required=True, help="JSON problem file ('-' for stdin)")
    p.add_argument("--bound", type=_positive, default=None,
                   help="box bound for roots/weights, entry bound for bounded automorphism search")
    p.add_argument("--degree-bound", type=_positive, default=None, help="search box limit for Hilbert bases")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    return p


def run(argv=None) -> int:
    args = parser().parse_args(argv)
    if args.bound is None and args.command in ("roots", "validate"):
        args.bound = 2
    try:
        if args.input == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                data = json.load(fh)
        if not isinstance(data, dict):
            raise Malformed("top-level JSON must be an object")
        report, code = COMMANDS[args.command](data, args)
    except (OSError, json.JSONDecodeError, Malformed, LatticeError, KeyError, TypeError) as exc:
        report, code = {"error": "malformed input", "message": str(exc)}, MALFORMED
    except SearchBoxExceeded as exc:
        report, code = {"error": "search box exceeded", "message": str(exc)}, INCOMPLETE
    except MonoidError as exc:
        report, code = _failure(exc.condition, str(exc)), INVALID
    except (ConeError, RootDatumError, InactiveError) as exc:
        report, code = _failure(type(exc).__name__, str(exc)), INVALID
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
