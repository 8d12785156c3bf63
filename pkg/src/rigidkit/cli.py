"""Command-line front end: scenarios and raw operations with text or JSON output."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .algebra import format_polynomial, smith_normal_form
from .deformations import (
    PRESETS,
    ComplexFailure,
    NoStabilization,
    load_presentation,
    preset,
    presentation_t1,
)
from .quotient import CyclicActionSpec, canonicalize
from .scenarios import (
    MATCH,
    scenario_m0n_rigidity,
    scenario_m12_atlas,
    scenario_m12_kuranishi,
    scenario_m12_toric,
    scenario_sym3_resolutions,
)
from .toric import cohomology_with_certificate, load_fan, parse_fan_text

BUILTIN_FANS = ("P2", "P1xP1", "P123", "M12")


class UsageError(Exception):
    """Bad input files or arguments: exit code 2."""


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_fixture(path) -> dict | None:
    if not path:
        return None
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read fixture {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("fixture must be a JSON object")
    return data


def _scenario(args, report) -> int:
    _emit(args, report.as_dict(), report.to_text())
    return 0 if report.verdict == MATCH else 1


def cmd_m12_toric(args) -> int:
    return _scenario(args, scenario_m12_toric(_load_fixture(args.fixture)))


def cmd_m12_kuranishi(args) -> int:
    return _scenario(args, scenario_m12_kuranishi(_load_fixture(args.fixture)))


def cmd_m12_atlas(args) -> int:
    return _scenario(args, scenario_m12_atlas(_load_fixture(args.fixture)))


def cmd_m0n(args) -> int:
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    return _scenario(args, scenario_m0n_rigidity(args.n, _load_fixture(args.fixture)))


def cmd_sym3(args) -> int:
    return _scenario(args, scenario_sym3_resolutions(_load_fixture(args.fixture)))


def _read_fan(spec: str):
    path = Path(spec)
    try:
        if path.exists():
            return load_fan(path)
        if spec in BUILTIN_FANS:
            text = resources.files("rigidkit.data").joinpath("fans", f"{spec}.fan").read_text()
            return parse_fan_text(text)
    except ValueError as exc:
        raise UsageError(f"{spec}: {exc}") from None
    raise UsageError(f"no fan file {spec!r} (built-in fans: {', '.join(BUILTIN_FANS)})")


def cmd_toric_cohomology(args) -> int:
    fan, divisors = _read_fan(args.fan)
    if args.divisor not in divisors:
        raise UsageError(f"fan has no divisor {args.divisor!r}; available: {', '.join(divisors) or 'none'}")
    D = divisors[args.divisor]
    vec, cert = cohomology_with_certificate(fan, D)
    ok = cert.ok and vec.h2 == cert.serre_dual_h0
    payload = {
        "fan": fan.name,
        "rays": [list(r) for r in fan.rays],
        "divisor": args.divisor,
        "coefficients": list(D),
        "h": list(vec),
        "certificate": {
            "bound": cert.bound,
            "shell_contributions": cert.shell_contributions,
            "serre_dual_h0": cert.serre_dual_h0,
            "ok": ok,
        },
    }
    text = (
        f"fan {fan.name or '(unnamed)'}  divisor {args.divisor} = {list(D)}\n"
        f"h^0 = {vec.h0}  h^1 = {vec.h1}  h^2 = {vec.h2}\n"
        f"certificate: box {cert.bound}, shell {cert.shell_contributions}, "
        f"h^0(K-D) = {cert.serre_dual_h0}, {'ok' if ok else 'FAILED'}"
    )
    _emit(args, payload, text)
    return 0 if ok else 1


def cmd_t1(args) -> int:
    try:
        pres = preset(args.preset) if args.preset else load_presentation(args.presentation)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    try:
        rep = presentation_t1(pres, args.degree_bound, method=args.method)
    except (NoStabilization, ComplexFailure) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"presentation": pres.label, **rep.as_dict(), "ext2": rep.ext2}
    per = ", ".join(f"{d}: {c}" for d, c in rep.per_degree().items())
    total = rep.total if rep.finite else "INFINITE"
    text = (
        f"presentation {pres.label}\n"
        f"generators: {', '.join(format_polynomial(f) for f in pres.generators)}\n"
        f"method: {rep.method}\n"
        f"T1 = {total}\n"
        f"per degree: {per or '-'}\n"
        f"Ext2 = {rep.ext2 if rep.ext2 is not None else 'not available'}"
    )
    _emit(args, payload, text)
    return 0 if rep.finite else 1


def _read_matrix(path) -> list:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for raw in lines:
        line = raw.split("#", 1)[0].replace(",", " ").strip()
        if line:
            try:
                rows.append([int(t) for t in line.split()])
            except ValueError:
                raise UsageError(f"{path}: non-integer entry in {line!r}") from None
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise UsageError(f"{path}: matrix must be non-empty and rectangular")
    return rows


def cmd_snf(args) -> int:
    A = _read_matrix(args.matrix)
    snf = smith_normal_form(A)
    payload = {
        "diagonal": list(snf.diagonal),
        "invariant_factors": list(snf.invariant_factors),
        "U": [list(r) for r in snf.U],
        "S": [list(r) for r in snf.S],
        "V": [list(r) for r in snf.V],
    }
    fmt = lambda M: "\n".join("  " + " ".join(f"{x:>4}" for x in r) for r in M)  # noqa: E731
    text = (
        f"diagonal: {list(snf.diagonal)}\n"
        f"S =\n{fmt(snf.S)}\nU =\n{fmt(snf.U)}\nV =\n{fmt(snf.V)}"
    )
    _emit(args, payload, text)
    return 0


def cmd_quotient_type(args) -> int:
    try:
        weights = tuple(int(t) for t in args.weights.split(","))
    except ValueError:
        raise UsageError("--weights takes comma-separated integers, e.g. 2,3") from None
    if len(weights) != 2 or args.order < 1:
        raise UsageError("need --order >= 1 and exactly two weights")
    t = canonicalize(CyclicActionSpec(args.order, weights))
    _emit(args, {"order": args.order, "weights": list(weights), "type": str(t)}, str(t))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, fixture=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if fixture:
            p.add_argument("--fixture", metavar="FILE", help="JSON overriding fixture keys")
        p.set_defaults(func=func)
        return p

    add("m12-toric", cmd_m12_toric, "toric cohomology of the M12 surface", True)
    add("m12-kuranishi", cmd_m12_kuranishi, "local and global deformation count", True)
    add("m12-atlas", cmd_m12_atlas, "quotient singularities of M12", True)
    p = add("m0n-rigidity", cmd_m0n, "cohomology vanishing for genus-zero moduli", True)
    p.add_argument("--n", type=int, required=True)
    add("sym3-verify", cmd_sym3, "check the Sym^3 cone complexes", True)
    p = add("toric-cohomology", cmd_toric_cohomology, "h^i(O(D)) on a fan file")
    p.add_argument("--fan", required=True, metavar="FILE")
    p.add_argument("--divisor", required=True, metavar="NAME")
    p = add("t1", cmd_t1, "T^1 of a presentation")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", choices=PRESETS)
    g.add_argument("--presentation", metavar="FILE")
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--method", choices=("hypersurface", "graded-subquotient"), default=None)
    p = add("snf", cmd_snf, "Smith normal form of an integer matrix file")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p = add("quotient-type", cmd_quotient_type, "canonical type of a cyclic quotient")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--weights", required=True, metavar="A,B")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
