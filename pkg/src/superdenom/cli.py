"""Command-line front end.

Subcommands: build (dump root data), pairs (BFS over admissible pairs
with their diagrams), diagram (equivalence classes), verify (denominator
identity), qn (the q(n) alternating-sum identity), orbits (regular-orbit
scan).  Output is text or canonical JSON: keys sorted, rationals as
strings, no floats, so parse-and-redump is byte identical.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import diagrams, identity, simple
from .errors import (DomainError, ResourceLimitError, StructuralError,
                     ValidationError)
from .roots import RootSystem, SuperType, build, system_json
from .weights import Weight

SCHEMA = "superdenom/1"

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_VARIANTS = ("step2", "step3", "step3_prime", "second_class")


@dataclass
class RunConfig:
    command: str
    family: str = "GL"
    m: int = 1
    n: int = 0
    sharp: Optional[str] = None
    height: int = 8
    variant: Optional[str] = None
    output: str = "text"
    group_cap: int = 10 ** 6
    workers: Optional[int] = None

    def stype(self) -> SuperType:
        if self.family in ("C", "Q"):
            return SuperType(self.family, n=self.n)
        return SuperType(self.family, self.m, self.n,
                         sharp_choice=self.sharp)


def canonical_json(payload) -> str:
    return json.dumps(_json_safe(payload), sort_keys=True,
                      separators=(",", ":"))


def _json_safe(value):
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (Weight, SuperType)):
        return str(value)
    if isinstance(value, str):
        return value
    return str(value)


def _pair_variants(rs: RootSystem, variant: Optional[str]) -> list:
    """(name, pair) choices for verify; default runs every one defined."""
    if variant is not None:
        if variant == "second_class":
            return [(variant, simple.second_class_pair(rs))]
        if variant not in _VARIANTS:
            raise ValidationError("unknown variant %r" % (variant,))
        return [(variant, simple.standard_pair(rs, variant))]
    out = [("step2", simple.standard_pair(rs, "step2"))]
    if rs.family in ("B_EPS", "B_DELTA", "D_EPS", "D_DELTA"):
        out.append(("step3", simple.standard_pair(rs, "step3")))
    if rs.family == "D_EPS":
        out.append(("step3_prime", simple.standard_pair(rs, "step3_prime")))
        out.append(("second_class", simple.second_class_pair(rs)))
    return out


def run(config: RunConfig) -> tuple:
    """Execute one command.  Returns (exit_code, payload, text_lines)."""
    command = config.command
    payload = {"schema": SCHEMA, "command": command}
    lines = []

    if command == "qn":
        report, a = identity.qn_identity(config.n, H=config.height)
        payload["result"] = report.to_json()
        payload["a"] = a
        lines.append("q(%d): |a(S)| = %d, identity %s" % (
            config.n, abs(a),
            "verified" if report.equal else "FAILED"))
        return (EXIT_OK if report.equal else EXIT_VERIFICATION,
                payload, lines)

    rs = build(config.stype())
    payload["system"] = rs.stype.label()

    if command == "build":
        payload["result"] = system_json(rs)
        lines.append("%s: %d positive even roots, %d odd roots, defect %d"
                     % (rs.stype.label(), len(rs.positive_even),
                        len(rs.odd), rs.defect))
        return EXIT_OK, payload, lines

    if command == "pairs":
        pairs = simple.enumerate_admissible_pairs(rs, config.group_cap)
        entries = []
        for pair in sorted(pairs, key=lambda p: p.key()):
            entry = pair.to_json()
            try:
                entry["diagram"] = diagrams.from_pair(pair).to_json()
            except (DomainError, ValidationError):
                entry["diagram"] = None
            entries.append(entry)
        payload["result"] = {"count": len(entries), "pairs": entries}
        lines.append("%s: %d admissible pairs"
                     % (rs.stype.label(), len(entries)))
        return EXIT_OK, payload, lines

    if command == "diagram":
        classes = diagrams.equivalence_classes(rs, config.group_cap)
        payload["result"] = {
            "count": len(classes),
            "classes": [d.to_json() for d in classes],
        }
        lines.append("%s: %d equivalence class%s"
                     % (rs.stype.label(), len(classes),
                        "" if len(classes) == 1 else "es"))
        lines += ["  %s" % d.render() for d in classes]
        return EXIT_OK, payload, lines

    if command == "verify":
        reports = []
        ok = True
        for name, pair in _pair_variants(rs, config.variant):
            report = identity.verify(pair, H=config.height,
                                     workers=config.workers)
            entry = report.to_json()
            entry["variant"] = name
            reports.append(entry)
            ok = ok and report.equal
            lines.append("%s [%s] H=%d: %s (lhs %d terms, rhs %d terms)"
                         % (rs.stype.label(), name, config.height,
                            "equal" if report.equal else "NOT EQUAL",
                            report.lhs_terms, report.rhs_terms))
        payload["result"] = {"reports": reports, "equal": ok}
        return (EXIT_OK if ok else EXIT_VERIFICATION, payload, lines)

    if command == "orbits":
        reps = identity.regular_orbit_scan(rs, H=config.height)
        payload["result"] = {"representatives": [str(w) for w in reps]}
        lines.append("%s: %d regular orbit%s in the height-%d region"
                     % (rs.stype.label(), len(reps),
                        "" if len(reps) == 1 else "s", config.height))
        lines += ["  %s" % w for w in reps]
        return EXIT_OK, payload, lines

    raise ValidationError("unknown command %r" % (command,))


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superdenom",
        description="Exact checks of the super Weyl denominator identity")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, system=True):
        if system:
            p.add_argument("--family", required=True,
                           choices=["GL", "B", "C", "D", "Q"])
            p.add_argument("--m", type=int, default=1)
            p.add_argument("--n", type=int, default=0)
            p.add_argument("--sharp", choices=["B_side", "C_side"])
        p.add_argument("--output", choices=["text", "json"], default="text")

    common(sub.add_parser("build", help="dump the normalized root data"))
    p = sub.add_parser("pairs", help="enumerate admissible pairs")
    common(p)
    p.add_argument("--cap", type=int, default=10 ** 6)
    p = sub.add_parser("diagram", help="canonicalize bow diagrams")
    common(p)
    p.add_argument("--cap", type=int, default=10 ** 6)
    p = sub.add_parser("verify", help="verify the denominator identity")
    common(p)
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--variant", choices=list(_VARIANTS))
    p.add_argument("--workers", type=int)
    p = sub.add_parser("qn", help="check the q(n) alternating-sum identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--output", choices=["text", "json"], default="text")
    p = sub.add_parser("orbits", help="scan for regular orbits in the cone")
    common(p)
    p.add_argument("--height", type=int, default=10)
    return parser


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        family=getattr(args, "family", "Q" if args.command == "qn" else "GL"),
        m=getattr(args, "m", 1),
        n=getattr(args, "n", 0),
        sharp=getattr(args, "sharp", None),
        height=getattr(args, "height", 8),
        variant=getattr(args, "variant", None),
        output=args.output,
        group_cap=getattr(args, "cap", 10 ** 6),
        workers=getattr(args, "workers", None),
    )


def main(argv: Optional[list] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        code, payload, lines = run(config)
    except (ValidationError, DomainError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except StructuralError as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return EXIT_VERIFICATION
    if config.output == "json":
        print(canonical_json(payload))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
