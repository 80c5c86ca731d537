"""Command line entry point.

    torsorlab validate FILE
    torsorlab check-pretorsor FILE [NAME]
    torsorlab derive-comonads FILE [NAME]
    torsorlab check-galois FILE [NAME]
    torsorlab check-equivalence FILE [NAME]
    torsorlab examples list
    torsorlab examples emit NAME [-o OUT]

Common flags: ``--max-dim N`` (default 4), ``--probes FILE`` (a session file
whose modules are added to the probe sets), ``--format text|structured``.
Exit status is 0 when every check passes, 1 when a check fails and 2 for
input errors.  The session grammar is documented in ``torsorlab.session``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from .errors import (FactorizationFailure, InversionFailure, NotCoRegular, NotGalois,
                     NotRegular, ParseError, TorsorLabError, UnknownExample)
from .report import ValidationReport

__all__ = ["main", "CommandReport", "run"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class CommandReport:
    command: str
    sections: list = dc_field(default_factory=list)
    data: dict = dc_field(default_factory=dict)
    elapsed: float | None = None

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)

    def section(self, title: str) -> ValidationReport:
        rep = ValidationReport(title)
        self.sections.append(rep)
        return rep

    def to_dict(self) -> dict:
        out = {"command": self.command, "status": "PASS" if self.ok else "FAIL"}
        if self.data:
            out["data"] = self.data
        out["sections"] = [s.to_dict() for s in self.sections]
        if self.elapsed is not None:
            out["seconds"] = round(self.elapsed, 3)
        return out

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        for k, v in self.data.items():
            lines.append(f"  {k}: {v}")
        for s in self.sections:
            lines.extend("  " + ln for ln in s.lines())
        if self.elapsed is not None:
            lines.append(f"  time: {self.elapsed:.3f} s")
        return "\n".join(lines)


def _select(table: dict, name: str | None, kind: str) -> list:
    if name is None:
        if not table:
            raise ParseError(f"the session declares no {kind}")
        return list(table)
    if name not in table:
        raise ParseError(f"no {kind} named {name!r}; declared: {', '.join(table) or 'none'}")
    return [name]


def _load(args):
    from .session import load_session
    s = load_session(args.file)
    if args.probes:
        extra = load_session(args.probes, base=s)
        s.add_probes(extra.modules.values())
    return s


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> CommandReport:
    from .algebra import (validate_algebra, validate_algebra_morphism, validate_hopf,
                          validate_module)
    from .comonads import validate_coring
    from .entwining import validate_entwining, validate_galois_datum
    from .herd import check_pretorsor_axioms, validate_setting
    s = _load(args)
    out = CommandReport(f"validate {args.file}")
    for name, a in s.algebras.items():
        out.sections.append(_titled(validate_algebra(a), f"algebra {name}"))
    for name, h in s.hopf.items():
        out.sections.append(_titled(validate_hopf(h), f"hopf {name}"))
    for name, m in s.morphisms.items():
        out.sections.append(_titled(validate_algebra_morphism(m), f"morphism {name}"))
    for name, m in {**s.modules, **s.bimodules}.items():
        out.sections.append(_titled(validate_module(m), f"module {name}"))
    for name, c in s.corings.items():
        out.sections.append(_titled(validate_coring(c), f"coring {name}"))
    for name, e in s.entwinings.items():
        out.sections.append(_titled(validate_entwining(e), f"entwining {name}"))
    for name in s.torsor_specs:
        pt = s.torsor(name)
        rep = ValidationReport(f"torsor {name}")
        rep.extend(validate_setting(pt.setting))
        rep.extend(check_pretorsor_axioms(pt))
        out.sections.append(rep)
    for name in s.galois_specs:
        out.sections.append(_titled(validate_galois_datum(s.galois_datum(name)),
                                    f"galois {name}"))
    out.data["declarations"] = sum(len(t) for t in (
        s.algebras, s.hopf, s.morphisms, s.modules, s.bimodules, s.corings, s.entwinings,
        s.torsor_specs, s.galois_specs))
    return out


def _titled(rep: ValidationReport, title: str) -> ValidationReport:
    rep.title = title
    return rep


def cmd_check_pretorsor(args) -> CommandReport:
    from .herd import check_pretorsor_axioms, check_regularity, validate_setting
    s = _load(args)
    out = CommandReport(f"check-pretorsor {args.file}")
    for name in _select(s.torsor_specs, args.name, "torsors"):
        pt = s.torsor(name)
        out.sections.append(_titled(validate_setting(pt.setting), f"{name}: setting"))
        out.sections.append(_titled(check_pretorsor_axioms(pt), f"{name}: axioms"))
        out.sections.append(_titled(check_regularity(pt), f"{name}: regularity"))
    return out


def _gamma_or_fail(out: CommandReport, pt, label: str):
    from .pretorsor import gamma
    try:
        return gamma(pt)
    except (FactorizationFailure, InversionFailure) as exc:
        rep = out.section(f"{label}: comonads")
        step = getattr(exc, "step", None)
        rep.add("construction", False, detail=f"step {step}: {exc}" if step else str(exc))
        return None


def cmd_derive_comonads(args) -> CommandReport:
    from .comonads import enumerate_comodules, extract_coring
    from .pretorsor import arrow_from_gamma, phi_identities_check, roundtrip_check
    s = _load(args)
    out = CommandReport(f"derive-comonads {args.file}")
    out.data["max-dim"] = args.max_dim
    for name in _select(s.torsor_specs, args.name, "torsors"):
        pt = s.torsor(name)
        st = pt.setting
        g = _gamma_or_fail(out, pt, name)
        if g is None:
            continue
        out.sections.append(_titled(g.report, f"{name}: comonads"))
        out.data[f"{name}: dim C(A)"] = g.C(st.regular_A).dim
        out.data[f"{name}: dim D(B)"] = g.D(st.regular_B).dim
        for label, comonad, probes, ground in (("C", g.C, st.probes_A, st.regular_A),
                                               ("D", g.D, st.probes_B, st.regular_B)):
            ext = extract_coring(comonad, probes)
            rep = out.section(f"{name}: coring extracted from {label}")
            rep.extend(ext.verdict)
            if ext.coring is None:
                continue
            out.data[f"{name}: {label} coring carrier dim"] = ext.coring.carrier.dim
            if ground.dim == 1 and comonad(ground).dim <= args.max_dim:
                classes, exhaustive = enumerate_comodules(comonad, ext.coring, ground,
                                                          args.max_dim)
                out.data[f"{name}: {label}-comodule classes of dim <= {args.max_dim}"] = (
                    f"{len(classes)}{'' if exhaustive else ' (search not exhaustive)'}")
        try:
            out.sections.append(_titled(roundtrip_check(pt, arrow=arrow_from_gamma(g),
                                                        gamma_out=g), f"{name}: round trip"))
            out.sections.append(_titled(phi_identities_check(arrow_from_gamma(g)),
                                        f"{name}: Phi identities"))
        except (NotRegular, NotCoRegular, FactorizationFailure) as exc:
            out.section(f"{name}: round trip").add("inversion", False, detail=str(exc))
    return out


def cmd_check_galois(args) -> CommandReport:
    from .entwining import (assemble_rarr_object, canonical_map_check, check_comonad_arrow,
                            is_galois, rarr_as_arrow, validate_galois_datum)
    from .herd import check_pretorsor_axioms
    from .pretorsor import omega_from_arrow
    s = _load(args)
    out = CommandReport(f"check-galois {args.file}")
    for name in _select(s.galois_specs, args.name, "Galois data"):
        g = s.galois_datum(name)
        out.sections.append(_titled(validate_galois_datum(g), f"{name}: datum"))
        out.sections.append(_titled(canonical_map_check(g), f"{name}: canonical map"))
        verdict = is_galois(g)
        out.sections.append(_titled(verdict.report, f"{name}: Galois"))
        out.data[f"{name}: Galois"] = verdict.galois
        if not verdict.galois:
            continue
        try:
            obj = assemble_rarr_object(g)
        except NotGalois as exc:
            out.section(f"{name}: arrow").add("assembled", False, detail=str(exc))
            continue
        st = g.setting()
        av = check_comonad_arrow(rarr_as_arrow(obj), st.probes_T, st.probes_A)
        out.sections.append(_titled(av.report, f"{name}: comonad arrow"))
        out.data[f"{name}: regular"] = av.regular
        out.data[f"{name}: co-regular"] = av.co_regular
        try:
            pt = omega_from_arrow(obj)
        except NotRegular as exc:
            out.section(f"{name}: associated pre-torsor").add("assembled", False, detail=str(exc))
            continue
        out.sections.append(_titled(check_pretorsor_axioms(pt), f"{name}: associated pre-torsor"))
        for tname, (alpha, sigma, _, _) in s.torsor_specs.items():
            if alpha is st.alpha and sigma is st.sigma:
                rep = out.section(f"{name}: compared with torsor {tname}")
                rep.add("associated tau equals the declared tau", pt.tau == s.torsor(tname).tau)
    return out


def cmd_check_equivalence(args) -> CommandReport:
    from .equivalence import build_barQ, equivalence_witness
    s = _load(args)
    out = CommandReport(f"check-equivalence {args.file}")
    out.data["max-dim"] = args.max_dim
    for name in _select(s.torsor_specs, args.name, "torsors"):
        pt = s.torsor(name)
        g = _gamma_or_fail(out, pt, name)
        if g is None:
            continue
        try:
            bq = build_barQ(g)
        except (FactorizationFailure, InversionFailure) as exc:
            step = getattr(exc, "step", None)
            out.section(f"{name}: equivalence").add(
                "bicomodule functor", False, detail=f"step {step}: {exc}" if step else str(exc))
            continue
        w = equivalence_witness(g, bq, max_dim=args.max_dim)
        out.sections.append(_titled(w.report, f"{name}: equivalence"))
        out.data[f"{name}: D-comodules checked"] = len(w.d_side)
        out.data[f"{name}: C-comodules checked"] = len(w.c_side)
    return out


def cmd_examples(args) -> tuple:
    from .examples import BUILTIN
    from .session import builtin_session, dump_session
    if args.action == "list":
        if args.format == "structured":
            text = json.dumps([{"name": n, "description": d} for n, (d, _) in BUILTIN.items()],
                              indent=2)
        else:
            text = "\n".join(f"{n:8s} {d}" for n, (d, _) in BUILTIN.items())
        return text, EXIT_OK
    if not args.name:
        raise ParseError("examples emit needs an example name")
    text = dump_session(builtin_session(args.name))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return f"wrote {args.output}", EXIT_OK
    return text.rstrip("\n"), EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "check-pretorsor": cmd_check_pretorsor,
    "derive-comonads": cmd_derive_comonads,
    "check-galois": cmd_check_galois,
    "check-equivalence": cmd_check_equivalence,
}


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    # subcommand copies must not overwrite flags given before the subcommand
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=d(4), metavar="N",
                        help="dimension bound for comodule enumeration (default 4)")
    common.add_argument("--probes", metavar="FILE", default=d(None),
                        help="session file of extra probe modules")
    common.add_argument("--format", choices=("text", "structured"), default=d("text"))
    common.add_argument("--timing", action="store_true", default=d(False),
                        help="append wall-clock time (makes output run-dependent)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(False)
    parser = argparse.ArgumentParser(prog="torsorlab", parents=[_common_flags(True)],
                                     description="Exact checks for pre-torsors, comonads "
                                                 "and Galois data over finite-dimensional "
                                                 "algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "run every validator on every declaration",
        "check-pretorsor": "axioms and regularity of a pre-torsor",
        "derive-comonads": "build the two comonads and their corings",
        "check-galois": "canonical map, Galois verdict and comonad arrow",
        "check-equivalence": "equivalence witnesses between the comodule categories",
    }
    for cmd, text in helps.items():
        p = sub.add_parser(cmd, parents=[common], help=text)
        p.add_argument("file")
        if cmd != "validate":
            p.add_argument("name", nargs="?")
    p = sub.add_parser("examples", parents=[common], help="list or emit builtin examples")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output", metavar="FILE")
    return parser


def run(argv=None) -> tuple:
    """Return ``(text, exit_code)`` without touching the process streams."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return "", EXIT_INPUT if exc.code else EXIT_OK
    if args.max_dim < 0:
        return "error: --max-dim must be non-negative", EXIT_INPUT
    try:
        if args.command == "examples":
            return cmd_examples(args)
        start = time.perf_counter()
        rep = COMMANDS[args.command](args)
        if args.timing:
            rep.elapsed = time.perf_counter() - start
        return rep.render(args.format), EXIT_OK if rep.ok else EXIT_FAIL
    except (ParseError, UnknownExample) as exc:
        return f"error: {exc}", EXIT_INPUT
    except TorsorLabError as exc:
        return f"error: {type(exc).__name__}: {exc}", EXIT_FAIL


def main(argv=None) -> int:
    text, code = run(argv)
    if text:
        stream = sys.stdout if code != EXIT_INPUT else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
