"""Command-line front end: every report is a JSON document on stdout.

Exit codes: 0 success, 1 error (bad input or failed verification), 2 when
the computation is fine but the requested statement does not apply.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .catalog import CatalogError, NAMES, load_catalog
from .cohomology import graded_cohomology
from .cox import fermat, mult_map_surjective, random_section
from .divisors import (DivisorClass, DivisorError, canonical_data, cartier_data,
                       cartier_nef_basis, class_group, from_coordinates, mori_generators,
                       nef_cone_generators, nef_coordinates, NotCartierError)
from .fan import Fan, FanError, validate_fan
from .nl import (HypothesisError, enumerate_lines, line_classes, line_locus_codim,
                 nl_bounds, syzygy_vanishing_check)
from .regularity import NotAmpleError, is_m_regular, oda_window_check, quick_criteria
from .verify import verify_catalog


class UsageError(ValueError):
    pass


def jsonable(x):
    """Exact JSON: integers stay integers, rationals become ``{num, den}``."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else {"num": x.numerator, "den": x.denominator}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"refusing to serialize {type(x).__name__}")


# -- input parsing ---------------------------------------------------------------


class Context:
    def __init__(self, source: str):
        self.entry = None
        if source.startswith("catalog:"):
            self.entry = load_catalog(source.split(":", 1)[1])
            self.fan = self.entry.fan
        else:
            try:
                self.fan = Fan.from_json(Path(source).read_text())
            except (OSError, ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"cannot read fan {source!r}: {exc}") from exc
            report = validate_fan(self.fan)
            if not report.valid:
                raise UsageError(f"invalid fan: {'; '.join(report.errors)}")

    @property
    def basis(self) -> Sequence[DivisorClass]:
        if self.entry is not None:
            return self.entry.basis
        return cartier_nef_basis(self.fan)

    def divisor(self, text: str) -> DivisorClass:
        """Ray coefficients, or coordinates in the nef basis when the length matches it."""
        try:
            values = [int(t) for t in text.replace(" ", "").split(",") if t]
        except ValueError as exc:
            raise UsageError(f"non-integer class {text!r}") from exc
        G = class_group(self.fan)
        if len(values) == self.fan.n_rays:
            return G.divisor(values)
        if len(values) == G.free_rank:
            return from_coordinates(self.basis, values)
        raise UsageError(f"class {text!r} needs {self.fan.n_rays} ray coefficients "
                         f"or {G.free_rank} nef-basis coordinates")

    def describe(self, D: DivisorClass) -> dict:
        out = {"ray_coefficients": list(D.coeffs)}
        try:
            out["nef_coordinates"] = list(nef_coordinates(D, self.basis))
        except (DivisorError, ValueError):
            pass
        return out


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.command}")


# -- subcommands -------------------------------------------------------------------


def cmd_validate(ctx, args):
    return validate_fan(ctx.fan, seed=args.seed).to_dict()


def cmd_classgroup(ctx, args):
    G = class_group(ctx.fan)
    beta0 = canonical_data(ctx.fan)
    return {"free_rank": G.free_rank, "torsion": G.torsion_factors,
            "ray_classes": [list(G.ray_class(i).class_coords) for i in range(ctx.fan.n_rays)],
            "beta0": ctx.describe(beta0), "beta0_cartier": cartier_data(beta0).is_cartier,
            "basis": [ctx.describe(b) for b in ctx.basis]}


def cmd_cones(ctx, args):
    return {"nef_generators": [ctx.describe(g) for g in nef_cone_generators(ctx.fan)],
            "mori_generators": [{"functional": list(c.functional),
                                 "walls": [list(w.ray_indices) for w in c.walls]}
                                for c in mori_generators(ctx.fan)]}


def cmd_cohomology(ctx, args):
    _need(args, "divisor")
    D = ctx.divisor(args.divisor)
    return {"divisor": ctx.describe(D), **graded_cohomology(D).to_dict()}


def cmd_regularity(ctx, args):
    _need(args, "eta")
    eta = ctx.divisor(args.eta)
    qc = quick_criteria(eta)
    out = {"eta": ctx.describe(eta), "zero_regular": qc.zero_regular,
           "minus_one_regular": qc.minus_one_regular}
    if args.divisor is not None:
        v = is_m_regular(ctx.divisor(args.divisor), eta, args.m)
        out["m_regular"] = {"m": v.m, "passed": v.passed,
                            "failing_twist": None if v.failing_twist is None else
                            {"q": v.failing_twist[0], "class": list(v.failing_twist[1])}}
    return out


def cmd_oda(ctx, args):
    return oda_window_check(ctx.fan, args.bound).to_dict()


def cmd_multmap(ctx, args):
    _need(args, "divisor", "other")
    g1, g2 = ctx.divisor(args.divisor), ctx.divisor(args.other)
    f = None
    if args.jacobian != "none":
        degree = ctx.divisor(args.beta) if args.beta else g1
        f = fermat(degree.group, degree) if args.jacobian == "fermat" else random_section(degree, args.seed)
    v = mult_map_surjective(g1, g2, f)
    out = {"surjective": v.surjective, "cokernel_dim": v.cokernel_dim, "target_dim": v.target_dim}
    if f is not None:
        out["section"] = f.to_dict()
        if args.jacobian == "random":
            out["quasi_smoothness"] = "assumed (generic)"
    return out


def cmd_nl_bounds(ctx, args):
    _need(args, "eta", "n")
    return nl_bounds(ctx.divisor(args.eta), args.n, oda_bound=args.bound).to_dict()


def cmd_lines(ctx, args):
    _need(args, "eta")
    eta = ctx.divisor(args.eta)
    curves = enumerate_lines(eta)
    classes = line_classes(curves, ctx.basis)
    names = ctx.entry.line_names if ctx.entry else {}
    return {"classes": [{"pairing": list(k), "name": names.get(tuple(int(x) for x in k)),
                         "curves": [c.to_dict() for c in v]} for k, v in classes.items()]}


def cmd_line_locus(ctx, args):
    _need(args, "eta", "n")
    eta = ctx.divisor(args.eta)
    hilb = args.hilb_dim
    if hilb is None:
        hilb = ctx.entry.hilb_dim if ctx.entry and ctx.entry.hilb_dim is not None else "auto"
    rows = []
    for c in enumerate_lines(eta):
        r = line_locus_codim(c, args.n, hilb)
        rows.append({**c.to_dict(ctx.basis), "codim": r.codim, "hilb_dim": r.hilb_dim,
                     "assumptions": list(r.assumptions)})
    return {"n": args.n, "lines": rows}


def cmd_syzygy(ctx, args):
    _need(args, "divisor", "eta")
    report = syzygy_vanishing_check(ctx.divisor(args.divisor), ctx.divisor(args.eta),
                                    range(args.kmin, args.kmax + 1))
    return report.to_dict()


def cmd_verify_catalog(_ctx, args):
    results = verify_catalog(args.entries or None)
    return {"passed": all(r.passed for r in results), "checks": [r.to_dict() for r in results]}


COMMANDS = {
    "validate": cmd_validate, "classgroup": cmd_classgroup, "cones": cmd_cones,
    "cohomology": cmd_cohomology, "regularity": cmd_regularity, "oda": cmd_oda,
    "multmap": cmd_multmap, "nl-bounds": cmd_nl_bounds, "lines": cmd_lines,
    "line-locus": cmd_line_locus, "syzygy-check": cmd_syzygy, "verify-catalog": cmd_verify_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fan", default=None, help="fan JSON file or catalog:<name>")
    common.add_argument("--eta", help="ample class: ray coefficients or nef-basis coordinates")
    common.add_argument("--divisor", help="divisor class: ray coefficients or nef-basis coordinates")
    common.add_argument("--n", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--pretty", action="store_true", help="indented, human-readable JSON")

    parser = argparse.ArgumentParser(prog="nltoric", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "regularity":
            p.add_argument("--m", type=int, default=0)
        if name in ("oda", "nl-bounds"):
            p.add_argument("--bound", type=int, default=3)
        if name == "multmap":
            p.add_argument("--other", help="second degree of the multiplication map")
            p.add_argument("--jacobian", choices=("none", "fermat", "random"), default="none")
            p.add_argument("--beta", help="degree of the section (default: --divisor)")
        if name == "line-locus":
            p.add_argument("--hilb-dim", type=int, default=None)
        if name == "syzygy-check":
            p.add_argument("--kmin", type=int, default=-2)
            p.add_argument("--kmax", type=int, default=3)
        if name == "verify-catalog":
            p.add_argument("entries", nargs="*", default=[], help=f"subset of: {', '.join(NAMES)}")
    return parser


def _inputs(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("pretty", "command")}


def run(argv: Optional[List[str]] = None, out=sys.stdout) -> int:
    args = build_parser().parse_args(argv)
    report = {"command": args.command, "inputs": _inputs(args), "version": __version__, "seed": args.seed}
    code = 0
    try:
        if args.command != "verify-catalog" and args.fan is None:
            raise UsageError("--fan is required")
        ctx = Context(args.fan) if args.fan else None
        report["results"] = COMMANDS[args.command](ctx, args)
        if args.command == "verify-catalog" and not report["results"]["passed"]:
            report["failures"] = [
                f"{c['entry']}/{c['key']}: expected {c['expected']}, got {c['actual']} ({c['source']})"
                for c in report["results"]["checks"] if not c["passed"]]
            code = 1
    except (HypothesisError, NotAmpleError, NotCartierError) as exc:
        report["hypothesis_failure"] = str(exc)
        code = 2
    except (UsageError, CatalogError, FanError, DivisorError, ValueError) as exc:
        report["error"] = str(exc)
        code = 1
    text = json.dumps(jsonable(report), indent=2 if args.pretty else None, sort_keys=True)
    print(text, file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
