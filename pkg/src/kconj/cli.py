"""Batch command-line front end.

Commands: present, beta, diff, char, verify, tor.  Text output is the
default and deterministic; --json switches to the documented schemas.
Exit codes: 0 success, 1 usage or parse errors, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import characters, complexes, differentials, groups, ktheory, reporting, rings, verify
from .exprparse import ParseError
from .groups import InvalidDescriptor


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kconj",
        description=(
            "Exact presentation of the equivariant K-theory of the conjugation "
            "action for products of SU/Sp/U factors and tori."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, window=False):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        if window:
            p.add_argument("--window", type=int, default=3, metavar="N",
                           help="uniform exponent bound for windowed checks")
            p.add_argument("--padding", type=int, default=1, metavar="N",
                           help="window padding for the boundary search")

    p = sub.add_parser("present", help="print the K-theory presentation and ranks")
    p.add_argument("group")
    add_common(p)

    p = sub.add_parser("beta", help="degree-1 class of an element and its forgetful image")
    p.add_argument("group")
    p.add_argument("element")
    add_common(p)

    p = sub.add_parser("diff", help="universal derivative of an element and its K-class image")
    p.add_argument("group")
    p.add_argument("element")
    add_common(p)

    p = sub.add_parser("char", help="convert between generator and character form")
    p.add_argument("direction", choices=["to-gen", "from-gen"])
    p.add_argument("group")
    p.add_argument("expression")
    add_common(p)

    p = sub.add_parser("verify", help="run every registered invariant check")
    p.add_argument("group")
    add_common(p, window=True)
    p.add_argument("--degree", type=int, default=None, metavar="K",
                   help="restrict printed window reports to one degree")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    p.add_argument("--samples", type=int, default=25,
                   help="sample count per randomized invariant")
    p.add_argument("--report-dir", default=None, metavar="DIR",
                   help="write CSV tables and figures into DIR")

    p = sub.add_parser("tor", help="graded Tor rank tables")
    p.add_argument("group")
    add_common(p)
    p.add_argument("--report-dir", default=None, metavar="DIR",
                   help="write CSV tables and figures into DIR")

    return parser


def _group(text: str) -> groups.GroupModel:
    return groups.build_group(groups.parse_descriptor(text))


def _cmd_present(args) -> int:
    g = _group(args.group)
    pres = ktheory.presentation(g)
    if args.json:
        print(json.dumps(pres, indent=2))
        return 0
    print(f"group: {pres['group']}")
    print(f"R(G) = {pres['ring']}")
    lam = ", ".join(pres["generators"])
    print(f"K_G(G^Ad) = R(G) ⊗ Λ[{lam}]")
    print(f"K^0 = " + " ⊕ ".join(f"R(G)·{b}" if b != "1" else "R(G)" for b in pres["k0_basis"]))
    if pres["k1_basis"]:
        print(f"K^1 = " + " ⊕ ".join(f"R(G)·{b}" for b in pres["k1_basis"]))
    else:
        print("K^1 = 0")
    print(f"ranks over R(G): K^0 = {pres['ranks']['K0']}, K^1 = {pres['ranks']['K1']}")
    return 0


def _cmd_beta(args) -> int:
    g = _group(args.group)
    rho = rings.parse_element(args.element, g.ring)
    cls = ktheory.beta_ad(g, rho)
    image = ktheory.forgetful(cls)
    if args.json:
        print(json.dumps({
            "group": str(g.descriptor),
            "element": rings.element_to_json(rho),
            "beta_ad": cls.to_json(),
            "forgetful": image.to_text(),
        }, indent=2))
        return 0
    print(f"beta^Ad = {cls.to_text()}")
    print(f"forgetful = {image.to_text()}")
    return 0


def _cmd_diff(args) -> int:
    g = _group(args.group)
    rho = rings.parse_element(args.element, g.ring)
    form = differentials.d(g, rho)
    image = differentials.phi(form)
    if args.json:
        print(json.dumps({
            "group": str(g.descriptor),
            "element": rings.element_to_json(rho),
            "d": form.to_json(),
            "phi": image.to_json(),
        }, indent=2))
        return 0
    print(f"d = {form.to_text()}")
    print(f"phi(d) = {image.to_text()}")
    return 0


def _cmd_char(args) -> int:
    g = _group(args.group)
    if args.direction == "from-gen":
        elem = rings.parse_element(args.expression, g.ring)
        out = characters.to_character(g, elem)
        payload = {"group": str(g.descriptor), "character": characters.character_to_json(out)}
        text = out.to_text()
    else:
        s = characters.parse_character(args.expression, g)
        elem = characters.from_character(g, s)
        payload = {"group": str(g.descriptor), "element": rings.element_to_json(elem)}
        text = elem.to_text()
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return 0


def _cmd_verify(args) -> int:
    g = _group(args.group)
    report = verify.run_verification(
        g,
        window=args.window,
        padding=args.padding,
        seed=args.seed,
        samples=args.samples,
    )
    if args.report_dir:
        reporting.write_verify_report(args.report_dir, report)
    if args.json:
        payload = report.to_json()
        if args.degree is not None:
            for label in payload["windows"]:
                payload["windows"][label] = [
                    rep for rep in payload["windows"][label] if rep["degree"] == args.degree
                ]
        print(json.dumps(payload, indent=2))
    else:
        for c in report.checks:
            mark = "ok  " if c.ok else "FAIL"
            line = f"{mark} {c.name}"
            if c.detail:
                line += f"  ({c.detail})"
            print(line)
        for label, reps in sorted(report.window_reports.items()):
            for rep in reps:
                if args.degree is not None and rep.degree != args.degree:
                    continue
                print(
                    f"window {label} degree {rep.degree}: cycles {rep.rank_cycles}, "
                    f"boundaries {rep.rank_boundaries}, deficit {rep.deficit}"
                )
        print(f"verify {report.group}: {'ok' if report.ok else 'FAILED'}")
    if not report.ok:
        failed = ", ".join(c.name for c in report.checks if not c.ok)
        print(f"failed invariants: {failed}", file=sys.stderr)
        return 2
    return 0


def _cmd_tor(args) -> int:
    g = _group(args.group)
    table = complexes.tor_ranks(g)
    if args.report_dir:
        reporting.write_tor_report(args.report_dir, str(g.descriptor), table)
    if args.json:
        print(json.dumps({"group": str(g.descriptor), **table.to_json()}, indent=2))
        return 0
    print(f"Tor ranks for {g.descriptor} (over R(G)⊗R(G): free R(G)-modules; over R(G): free Z-modules):")
    for k, rank in enumerate(table.ranks):
        parity = "odd" if k % 2 else "even"
        print(f"degree {-k:>3}: rank {rank}  ({parity})")
    return 0


_HANDLERS = {
    "present": _cmd_present,
    "beta": _cmd_beta,
    "diff": _cmd_diff,
    "char": _cmd_char,
    "verify": _cmd_verify,
    "tor": _cmd_tor,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except InvalidDescriptor as exc:
        print(f"invalid group descriptor: {exc}", file=sys.stderr)
        return 1
    except (rings.RingMismatch, characters.NotWeylInvariant, ktheory.DuplicateGenerator,
            complexes.WindowTooSmall, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
