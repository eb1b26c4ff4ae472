"""Command-line front end.

Three subcommands: ``compute`` runs the full open-book pipeline, ``verdict``
prints just the certified conclusion, and ``oracle`` exposes the braid-side
calculator.  Exit codes: 0 success, 2 parse error, 3 torsion encountered,
4 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .braidkh import (
    cross_check,
    link_determinant,
    plamenevskaya,
    reduced_kh,
    self_linking,
    turner_s,
)
from .cube import build_e1, dump as dump_cube
from .curves import humphries_system, load_system
from .errors import (
    CrossCheckMismatch,
    MalformedToken,
    NotAKnot,
    NotBraidLike,
    OpenKhError,
    TorsionEncountered,
    UnknownCurve,
)
from .homology import psi_survives, verdict
from .surgery import h1_order
from .words import Surface, parse_braid_word, parse_twist_word

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_TORSION = 3
EXIT_CROSSCHECK = 4


def _parse_surface(text: str) -> Surface:
    try:
        k, r = (int(x) for x in text.split(","))
        return Surface(k, r)
    except (ValueError, TypeError) as exc:
        raise MalformedToken(f"bad surface {text!r} (expected k,r)") from exc


def _surface_system(args):
    surface = _parse_surface(args.surface)
    path = args.curves or os.environ.get("OPENKH_CURVES")
    if path:
        system = load_system(path)
        if system.surface != surface:
            raise MalformedToken(
                f"curve system in {path} is for {system.surface}, not {surface}"
            )
        return surface, system
    return surface, humphries_system(surface)


def _check_length(word, limit: int) -> None:
    if len(word) > limit:
        raise MalformedToken(
            f"word has {len(word)} letters; raise --limit-letters (now {limit}) "
            "if you really want this"
        )


def cmd_compute(args) -> dict:
    surface, system = _surface_system(args)
    word = parse_twist_word(args.word, surface)
    _check_length(word, args.limit_letters)
    doc: dict = {
        "word": str(word),
        "surface": [surface.genus, surface.boundary],
        "n": len(word),
        "n_neg": word.n_neg,
    }
    timing: dict = {}
    t0 = time.time()
    complex_ = build_e1(word, system)
    timing["build"] = round(time.time() - t0, 3)
    if args.psi_only:
        t0 = time.time()
        psi = psi_survives(complex_)
        timing["psi"] = round(time.time() - t0, 3)
        doc.update(psi_is_cycle=psi.is_cycle, psi_survives=psi.survives)
    else:
        t0 = time.time()
        result = verdict(word, system, complex_)
        timing["homology"] = round(time.time() - t0, 3)
        doc.update(
            ranks_by_grading=[[d, r] for d, r in sorted(result.ranks.nonzero().items())],
            total_rank=result.total_rank,
            psi_is_cycle=result.psi.is_cycle,
            psi_survives=result.psi.survives,
            h1_order="infinite" if result.h1_order is None else result.h1_order,
            verdict=result.kind,
            evidence=result.evidence,
        )
    if args.dump_cube:
        doc["cube"] = dump_cube(complex_)
    doc["timing"] = timing
    return doc


def cmd_verdict(args) -> dict:
    doc = cmd_compute(args)
    keep = (
        "word",
        "surface",
        "total_rank",
        "h1_order",
        "psi_survives",
        "verdict",
        "evidence",
        "timing",
    )
    return {k: doc[k] for k in keep if k in doc}


def cmd_oracle(args) -> dict:
    braid = parse_braid_word(args.braid, args.strands)
    _check_length(braid, args.limit_letters)
    doc: dict = {
        "braid": str(braid),
        "strands": braid.strands,
        "crossings": len(braid),
        "writhe": braid.writhe,
        "components": braid.components(),
        "sl": self_linking(braid),
    }
    wanted = [args.kh, args.psi, args.s, args.det, args.crosscheck]
    if not any(wanted):
        args.kh = args.psi = args.det = True
    timing: dict = {}
    if args.kh:
        t0 = time.time()
        ranks = reduced_kh(braid)
        timing["kh"] = round(time.time() - t0, 3)
        doc["kh_polynomial"] = ranks.polynomial()
        doc["bigraded_ranks"] = [
            [i, q, r] for (i, q), r in sorted(ranks.ranks.items())
        ]
        doc["total_rank"] = ranks.total
    if args.psi:
        t0 = time.time()
        report = plamenevskaya(braid)
        timing["psi"] = round(time.time() - t0, 3)
        doc["plamenevskaya"] = {
            "bigrading": list(report.bigrading),
            "is_cycle": report.is_cycle,
            "survives": report.survives,
        }
    if args.s:
        t0 = time.time()
        report = turner_s(braid)
        timing["turner"] = round(time.time() - t0, 3)
        if report.s is None:
            raise NotAKnot(
                f"s-invariant needs a knot; this closure has "
                f"{report.components} components"
            )
        doc["turner"] = {
            "rank": report.rank,
            "filtration_level": report.filtration_level,
            "s": report.s,
        }
    if args.det:
        t0 = time.time()
        doc["determinant"] = link_determinant(braid)
        timing["det"] = round(time.time() - t0, 3)
    if args.crosscheck:
        from .words import braid_to_openbook

        t0 = time.time()
        report = cross_check(braid_to_openbook(braid))
        timing["crosscheck"] = round(time.time() - t0, 3)
        doc["crosscheck"] = {
            "agree": report.agree,
            "engine_ranks": sorted(report.engine_ranks.items()),
            "oracle_ranks": sorted(report.oracle_ranks.items()),
            "engine_psi": report.engine_psi,
            "oracle_psi": report.oracle_psi,
        }
    doc["timing"] = timing
    return doc


def _print_human(doc: dict) -> None:
    for key, value in doc.items():
        if key.startswith("_"):
            continue
        if key == "cube":
            print(value)
            continue
        print(f"{key}: {value}")


def _print_compute_human(doc: dict) -> None:
    print(f"word: {doc['word']}  on S_{{{doc['surface'][0]},{doc['surface'][1]}}}")
    print(f"letters: {doc['n']}  left-handed: {doc['n_neg']}")
    if "ranks_by_grading" in doc:
        from .homology import GradedRanks

        ranks = GradedRanks({d: r for d, r in doc["ranks_by_grading"]})
        print(f"poincare polynomial: {ranks.polynomial()}")
        print(f"total rank: {doc['total_rank']}")
        print(f"|H1|: {doc['h1_order']}")
    if "psi_survives" in doc:
        print(
            f"distinguished class: cycle={doc.get('psi_is_cycle')} "
            f"survives={doc['psi_survives']}"
        )
    if "verdict" in doc:
        print(f"verdict: {doc['verdict']}")
        for line in doc.get("evidence", []):
            print(f"  - {line}")
    if "cube" in doc:
        print(doc["cube"])
    print(f"timing: {doc.get('timing')}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="openkh",
        description=(
            "Reduced Khovanov homology of open books, distinguished class "
            "survival, and certified contact-structure verdicts."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument(
            "--limit-letters",
            type=int,
            default=20,
            help="refuse words longer than this (default 20)",
        )
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker cap for grading-parallel ranks (currently advisory)",
        )

    for name in ("compute", "verdict"):
        p = sub.add_parser(name, help=f"{name} for an open book")
        p.add_argument("--surface", required=True, help="genus,boundary e.g. 2,1")
        p.add_argument("--word", required=True, help='twist word, e.g. "a2 a1^-1"')
        p.add_argument("--curves", help="curve-system config file")
        p.add_argument("--psi-only", action="store_true", dest="psi_only")
        p.add_argument("--dump-cube", action="store_true", dest="dump_cube")
        common(p)

    p = sub.add_parser("oracle", help="braid-closure Khovanov/Turner oracle")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--braid", required=True, help='braid word, e.g. "s1^-5 s2"')
    p.add_argument("--kh", action="store_true", help="bigraded reduced ranks")
    p.add_argument("--psi", action="store_true", help="transverse class survival")
    p.add_argument("--s", action="store_true", help="Turner s-invariant")
    p.add_argument("--det", action="store_true", help="link determinant")
    p.add_argument("--crosscheck", action="store_true", help="compare with engine")
    common(p)

    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            doc = cmd_compute(args)
        elif args.command == "verdict":
            doc = cmd_verdict(args)
        else:
            doc = cmd_oracle(args)
    except (MalformedToken, UnknownCurve, NotBraidLike, NotAKnot) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TorsionEncountered as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TORSION
    except CrossCheckMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except OpenKhError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=False))
    elif args.command in ("compute", "verdict"):
        _print_compute_human(dict(doc))
    else:
        _print_human(doc)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
