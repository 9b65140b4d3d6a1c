"""Command-line driver: ``quadmod <subcommand> ...``.

Exit status is 0 when every verdict passed, 1 when any failed, 2 on a
parse or usage error. ``--format=machine`` prints the same report as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .bundle import BundleError, make_bundle, read_bundle, serialize_bundle, write_bundle
from .exactalg import QQ, AlgebraError, InvalidStructure, QuotientSpace, Subspace, parse_field, validate_algebra
from .fixtures import CATALOG, TRUNCPOLY_VARIANTS, build
from .functors import FUNCTORS, OMEGA_FORMS, ConeLiftingError, certify_homotopy_preservation
from .pairings import boundary_decomposition_check, gen_P, gen_S, ideal_In
from .simplicial import HomotopyEntry, HomotopyTable, TruncationError, homotopy_simplicial, validate_simplicial
from .structures import (
    QM3_FORMS,
    PreCrossedModule,
    homotopy_quadratic,
    homotopy_square,
    homotopy_two_crossed,
    validate_crossed,
    validate_crossed_square,
    validate_precrossed,
    validate_quadratic,
    validate_two_crossed,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# which functor takes which bundle kind
FUNCTOR_INPUT = {
    "lambda": "two_crossed",
    "delta": "simplicial",
    "psi": "crossed_square",
    "m2": "simplicial",
    "cone": "crossed_square",
    "simp2": "simplicial",
}


class UsageError(Exception):
    """Bad arguments or an input of the wrong kind; exit status 2."""


@dataclass
class RunReport:
    """What one invocation found. Text and machine output render the same dict."""

    command: list
    timestamp: str | None = None
    sections: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    error: str | None = None
    exit_status: int = EXIT_OK
    fmt: str = "text"
    args: argparse.Namespace | None = None

    def verdict(self, name: str, ok) -> None:
        self.verdicts[name] = bool(ok)

    def witness_report(self, rep) -> None:
        self.verdict(rep.subject, rep.ok)
        self.witnesses += [str(v) for v in rep.violations]

    def finish(self) -> "RunReport":
        if self.exit_status != EXIT_USAGE:
            self.exit_status = EXIT_OK if all(self.verdicts.values()) and self.error is None else EXIT_FAIL
        return self

    def to_dict(self) -> dict:
        out = {"command": " ".join(self.command), **self.sections,
               "verdicts": dict(self.verdicts), "witnesses": list(self.witnesses),
               "exit_status": self.exit_status}
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        if self.error is not None:
            out["error"] = self.error
        return out

    def render(self, fmt: str) -> str:
        doc = self.to_dict()
        if fmt == "machine":
            return json.dumps(doc, sort_keys=True, indent=1) + "\n"
        lines = [f"command: {doc.pop('command')}"]
        if "timestamp" in doc:
            lines.append(f"timestamp: {doc.pop('timestamp')}")
        verdicts = doc.pop("verdicts")
        witnesses = doc.pop("witnesses")
        status = doc.pop("exit_status")
        error = doc.pop("error", None)
        for key, value in doc.items():
            _render_value(lines, key, value, 0)
        if verdicts:
            lines.append("verdicts:")
            lines += [f"  {'PASS' if ok else 'FAIL'}  {name}" for name, ok in verdicts.items()]
        if witnesses:
            lines.append("witnesses:")
            lines += [f"  {w}" for w in witnesses]
        if error:
            lines.append(f"error: {error}")
        lines.append(f"exit status: {status}")
        return "\n".join(lines) + "\n"


def _render_value(lines, key, value, depth):
    pad = "  " * depth
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _render_value(lines, k, v, depth + 1)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        lines.append(f"{pad}{key}:")
        for i, v in enumerate(value):
            _render_value(lines, str(i), v, depth + 1)
    else:
        if isinstance(value, list):
            value = ", ".join(map(str, value)) if value else "-"
        lines.append(f"{pad}{key}: {value}")


# -- helpers -----------------------------------------------------------------


def _load(path, args, kinds=None):
    F = parse_field(args.field) if args.field else None
    bundle = read_bundle(path, F)
    if kinds is not None and bundle.kind not in kinds:
        raise UsageError(f"{path}: expected a {' or '.join(kinds)} bundle, got {bundle.kind}")
    return bundle


def _crossed_homotopy(cm) -> HomotopyTable:
    F = cm.field
    d = cm.boundary.map
    pi1 = QuotientSpace(Subspace.full(F, cm.R.dim), d.image())
    pi2 = QuotientSpace(d.kernel(), Subspace.zero(F, cm.C.dim))
    return HomotopyTable("structure", (
        HomotopyEntry(0, 0, None, "zero by definition"),
        HomotopyEntry(1, pi1.dim, pi1, "R/d(C)"),
        HomotopyEntry(2, pi2.dim, pi2, "ker d"),
        HomotopyEntry(3, 0, None, "zero above degree 2"),
    ))


def homotopy_of(bundle) -> HomotopyTable:
    """Structure-indexed homotopy table of any bundle kind except ``algebra``."""
    obj = bundle.structure
    return {
        "simplicial": lambda: homotopy_simplicial(obj).as_structure(),
        "crossed_module": lambda: _crossed_homotopy(obj),
        "two_crossed": lambda: homotopy_two_crossed(obj),
        "crossed_square": lambda: homotopy_square(obj),
        "quadratic": lambda: homotopy_quadratic(obj),
    }[bundle.kind]()


def _is_pre(bundle) -> bool:
    return bundle.meta.get("structure") == "pre-crossed"


def validate_bundle(bundle, qm3: str = "signed"):
    obj = bundle.structure
    return {
        "algebra": lambda: validate_algebra(obj),
        "simplicial": lambda: validate_simplicial(obj),
        "crossed_module": lambda: (validate_precrossed(obj, bundle.name) if _is_pre(bundle)
                                   else validate_crossed(obj, bundle.name)),
        "two_crossed": lambda: validate_two_crossed(obj),
        "crossed_square": lambda: validate_crossed_square(obj),
        "quadratic": lambda: validate_quadratic(obj, qm3),
    }[bundle.kind]()


def _emit_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# -- subcommands -------------------------------------------------------------


def cmd_validate(args, report: RunReport) -> None:
    bundle = _load(args.file, args)
    report.sections["structure"] = {"kind": bundle.kind, "name": bundle.name, "field": bundle.field.spec()}
    report.witness_report(validate_bundle(bundle, args.qm3))


def cmd_moore(args, report: RunReport) -> None:
    E = _load(args.file, args, ["simplicial"]).structure
    mc = E.moore
    ranks = {str(n): mc.boundaries[n].rank for n in range(1, E.N + 1)}
    report.sections["moore"] = {"truncation": E.N, "NE dims": mc.dims(), "boundary ranks": ranks,
                                "length": mc.length}
    zero = all((mc.boundaries[n - 1] @ mc.boundaries[n]).is_zero() for n in range(2, E.N + 1))
    report.verdict("boundary squares to zero", zero)


def cmd_homotopy(args, report: RunReport) -> None:
    bundle = _load(args.file, args)
    if bundle.kind == "algebra":
        raise UsageError("an algebra bundle has no homotopy; use a simplicial or crossed bundle")
    if bundle.kind == "simplicial":
        report.sections["moore homotopy"] = homotopy_simplicial(bundle.structure).to_dict()
    report.sections["homotopy"] = homotopy_of(bundle).to_dict()


def cmd_pairings(args, report: RunReport) -> None:
    E = _load(args.file, args, ["simplicial"]).structure
    n = args.n
    if n < 0:
        raise UsageError("--n must be nonnegative")
    S, P = gen_S(n), gen_P(n)
    sec = {"n": n, "|S(n)|": len(S), "S(n)": [str(a) for a in S], "|P(n)|": len(P),
           "P(n)": [str(p) for p in P]}
    if 2 <= n <= E.N:
        sec["dim I_n"] = ideal_In(E, n).dim
        dec = boundary_decomposition_check(E, n)
        sec["decomposition"] = {k: v for k, v in dec.to_dict().items() if k not in ("verdicts", "memberships")}
        for name, v in dec.verdicts.items():
            if v is None:
                sec.setdefault("not applicable", []).append(name)
            elif name.endswith("(observed)"):
                sec.setdefault("observed", {})[name] = v
            else:
                report.verdict(name, v)
        for name, v in dec.memberships.items():
            report.verdict(f"d3 {name} membership", v)
    elif n > E.N:
        sec["note"] = f"level {n} is beyond truncation {E.N}; only the index sets are listed"
    report.sections["pairings"] = sec


def _cert_path(out: str) -> Path:
    p = Path(out)
    return p.with_name(p.stem + ".cert.json") if p.suffix == ".json" else p.with_name(p.name + ".cert.json")


def cmd_functor(args, report: RunReport) -> None:
    bundle = _load(args.input, args, [FUNCTOR_INPUT[args.name]])
    fn = FUNCTORS[args.name]
    kwargs = {"omega_form": args.omega_form} if args.name == "psi" else {}
    report.sections["functor"] = {"name": args.name, "input": bundle.name or str(args.input)}
    try:
        out, cert = fn(bundle.structure, **kwargs)
    except InvalidStructure as exc:
        report.sections["functor"]["input verdict"] = "invalid"
        report.witness_report(exc.report)
        return
    except ConeLiftingError as exc:
        report.sections["functor"]["cone candidates"] = exc.diagnostics
        report.error = str(exc)
        return
    except (TruncationError, AlgebraError) as exc:
        report.error = str(exc)
        return
    d = cert.to_dict()
    report.sections["certificate"] = {
        "input digest": d["input_digest"], "output digest": d["output_digest"],
        "degrees": d["degrees"], "checks": d["checks"], "observations": d["observations"],
        "witnesses": {k: {"shape": w["shape"], "mutually inverse": w["mutually_inverse"]}
                      for k, w in d["witnesses"].items()},
    }
    if cert.verdict is not None:
        report.witness_report(cert.verdict)
    for deg, ok in cert.degrees.items():
        if ok is not None:
            report.verdict(f"pi_{deg} preserved", ok)
    for deg, w in cert.witnesses.items():
        report.verdict(f"witness {deg} invertible", w.mutually_inverse)
    for name, ok in cert.checks.items():
        if ok is not None:
            report.verdict(name, ok)
    for pname, part in cert.parts.items():
        report.verdict(f"cross-check {pname}", part.ok)
    if args.out:
        write_bundle(make_bundle(out, provenance=f"{args.name} of {bundle.name or args.input}"), args.out)
        cpath = Path(args.cert) if args.cert else _cert_path(args.out)
        cpath.write_text(json.dumps(d, sort_keys=True, indent=1) + "\n", encoding="utf-8")
        report.sections["functor"]["output"] = str(args.out)
        report.sections["functor"]["certificate"] = str(cpath)


def _fixture_params(args) -> dict:
    params = {"degree": args.degree, "nvars": args.nvars, "generators": args.generators,
              "ell": args.ell, "ranks": args.ranks, "left": args.left, "right": args.right,
              "variant": args.variant}
    if args.diffs is not None:
        try:
            params["diffs"] = json.loads(args.diffs)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--diffs is not valid JSON: {exc.msg}") from None
    return params


def fixture(name: str, F=QQ, truncation: int | None = None, **params):
    """Catalog fixture as a bundle."""
    obj = build(name, F, truncation, **params)
    pre = isinstance(obj, PreCrossedModule) and params.get("variant") == "precrossed"
    return make_bundle(obj, provenance=f"fixture {name.upper()}", structure="pre-crossed" if pre else None)


def cmd_fixtures(args, report: RunReport) -> None:
    if args.name is None:
        report.sections["catalog"] = list(CATALOG)
        return
    F = parse_field(args.field) if args.field else QQ
    try:
        bundle = fixture(args.name, F, args.truncation, **_fixture_params(args))
    except TruncationError as exc:
        raise UsageError(str(exc)) from None
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    report.sections["fixture"] = {"name": bundle.name, "kind": bundle.kind, "field": F.spec()}
    report.witness_report(validate_bundle(bundle))
    text = serialize_bundle(bundle)
    if args.out:
        _emit_text(args.out, text)
        report.sections["fixture"]["output"] = str(args.out)
    else:
        report.sections["fixture"]["bundle"] = json.loads(text)


def cmd_certify(args, report: RunReport) -> None:
    before, after = _load(args.before, args), _load(args.after, args)
    for b in (before, after):
        if b.kind == "algebra":
            raise UsageError("certify compares homotopy tables; an algebra bundle has none")
    if before.field != after.field:
        raise UsageError("certify needs both bundles over the same field")
    cert = certify_homotopy_preservation(homotopy_of(before), homotopy_of(after))
    report.sections["homotopy"] = {"before": cert.before.to_dict()["dims"], "after": cert.after.to_dict()["dims"]}
    for deg, ok in cert.degrees.items():
        if ok is None:
            report.sections.setdefault("not compared", []).append(deg)
        else:
            report.verdict(f"pi_{deg} dimensions equal", ok)


COMMANDS = {
    "validate": cmd_validate,
    "moore": cmd_moore,
    "homotopy": cmd_homotopy,
    "pairings": cmd_pairings,
    "functor": cmd_functor,
    "fixtures": cmd_fixtures,
    "certify": cmd_certify,
}


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    # SUPPRESS so options given before the subcommand are not reset by it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", default=argparse.SUPPRESS, help="output file")
    p.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    p.add_argument("--field", default=argparse.SUPPRESS, help="Q or Fp:<p>; overrides the bundle's field")
    p.add_argument("--truncation", type=int, default=argparse.SUPPRESS, help="simplicial truncation N")
    p.add_argument("--no-timestamps", action="store_true", default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="quadmod", parents=[common],
                     description="Exact models of homotopy 3-types of commutative algebras.")
    parser.add_argument("--version", action="version", version=f"quadmod {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="run the validator for the bundle's kind")
    p.add_argument("file")
    p.add_argument("--qm3", choices=QM3_FORMS, default="signed", help="form of the QM3 action identity")

    p = sub.add_parser("moore", parents=[common], help="Moore complex dimensions and boundary ranks")
    p.add_argument("file")

    p = sub.add_parser("homotopy", parents=[common], help="homotopy table")
    p.add_argument("file")

    p = sub.add_parser("pairings", parents=[common], help="index sets, I_n and boundary decomposition")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("functor", parents=[common], help="apply a construction and certify it")
    p.add_argument("name", choices=sorted(FUNCTORS))
    p.add_argument("input")
    p.add_argument("--cert", help="certificate path (default: <out>.cert.json)")
    p.add_argument("--omega-form", choices=OMEGA_FORMS, default="cone", help="psi only")

    p = sub.add_parser("fixtures", parents=[common], help="write a catalog fixture (no name: list them)")
    p.add_argument("name", nargs="?", type=str.upper, choices=CATALOG)
    p.add_argument("--degree", type=int)
    p.add_argument("--nvars", type=int)
    p.add_argument("--generators", help="comma-separated monomials, e.g. x,y^2")
    p.add_argument("--ell", type=int, help="DK: prime of the chain complex")
    p.add_argument("--ranks", help="DK: comma-separated ranks, e.g. 0,1,1")
    p.add_argument("--diffs", help='DK: JSON object {"k": matrix} of differentials')
    p.add_argument("--left", help="IDEALSQ: generators of I")
    p.add_argument("--right", help="IDEALSQ: generators of J")
    p.add_argument("--variant", choices=TRUNCPOLY_VARIANTS)

    p = sub.add_parser("certify", parents=[common], help="compare the homotopy of two bundles")
    p.add_argument("before")
    p.add_argument("after")
    return parser


def _defaults(args) -> None:
    for key, value in (("out", None), ("format", "text"), ("field", None), ("truncation", None),
                       ("no_timestamps", False)):
        if not hasattr(args, key):
            setattr(args, key, value)


def run(argv=None) -> RunReport:
    """Execute one command line and return its report (nothing is printed)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    report = RunReport(["quadmod", *argv])
    try:
        args = build_parser().parse_args(argv)
        _defaults(args)
        report.fmt = args.format
        if not args.no_timestamps:
            report.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        if args.field:
            parse_field(args.field)
        if args.truncation is not None and args.command != "fixtures":
            raise UsageError("--truncation applies to the fixtures command")
        report.args = args
        COMMANDS[args.command](args, report)
    except (UsageError, BundleError, OSError) as exc:
        report.error = str(exc)
        report.exit_status = EXIT_USAGE
    except AlgebraError as exc:
        report.error = str(exc)
    except ValueError as exc:
        # field specs and similar argument values
        report.error = str(exc)
        report.exit_status = EXIT_USAGE
    return report.finish()


def main(argv=None) -> int:
    report = run(argv)
    text = report.render(report.fmt)
    args = report.args
    writes_bundle = args is not None and args.command in ("functor", "fixtures")
    if args is not None and args.out and not writes_bundle:
        _emit_text(args.out, text)
    else:
        sys.stdout.write(text)
    if report.exit_status == EXIT_USAGE and report.error:
        sys.stderr.write(f"quadmod: error: {report.error}\n")
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
