"""Command-line front end.

Exit codes: 0 success / verdict true, 1 verdict false or failed checks,
2 usage errors (malformed arguments, unknown tokens or check ids),
3 domain errors (partition not in the lattice, missing table entries),
4 resource limits (degree or enumeration size exceeded).
Diagnostics go to stderr; results go to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chi import ChiMap
from .cumulants import CumulantTable
from .distributions import (
    DegreeExceededError,
    ForeignLetterError,
    MissingMomentError,
    load_model,
)
from .harness import CHECKS, run_suite
from .partitions import (
    NotInBncError,
    SetPartition,
    SizeLimitError,
    bnc_partitions,
    is_bnc,
    kreweras_bnc,
    mobius_bnc,
)
from .product import bifree_product, check_bifree

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_LIMIT = 4


class _UsageError(ValueError):
    pass


def _parse_chi(text: str) -> ChiMap:
    if not text or any(c not in "lr" for c in text):
        raise _UsageError(f"malformed side map {text!r}; expected ^[lr]+$")
    if len(text) > 12:
        raise SizeLimitError(f"side map of length {len(text)} exceeds the limit 12")
    return ChiMap(text)


def _parse_partition(text: str, chi: ChiMap) -> SetPartition:
    try:
        part = SetPartition.from_text(text, n=chi.n)
    except ValueError as exc:
        raise _UsageError(str(exc))
    if not is_bnc(chi, part):
        raise NotInBncError(
            f"{part.to_text()} is not bi-non-crossing for {chi}")
    return part


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(human)


def _cmd_enumerate(args) -> int:
    chi = _parse_chi(args.chi)
    parts = bnc_partitions(chi)
    if args.json:
        print(json.dumps({"chi": str(chi), "count": len(parts),
                          "partitions": [p.to_json() for p in parts]},
                         sort_keys=True, indent=2))
    else:
        for p in parts:
            print(p.to_text())
    return EXIT_OK


def _cmd_mobius(args) -> int:
    chi = _parse_chi(args.chi)
    tau = _parse_partition(args.tau, chi)
    lam = _parse_partition(args.lam, chi)
    value = mobius_bnc(chi, tau, lam, recursive=args.paranoid)
    _emit(args, {"chi": str(chi), "tau": tau.to_text(), "lambda": lam.to_text(),
                 "value": str(value)}, str(value))
    return EXIT_OK


def _cmd_kreweras(args) -> int:
    chi = _parse_chi(args.chi)
    tau = _parse_partition(args.tau, chi)
    comp = kreweras_bnc(chi, tau)
    _emit(args, {"chi": str(chi), "tau": tau.to_text(),
                 "complement": comp.to_text()}, comp.to_text())
    return EXIT_OK


def _cmd_cumulant(args) -> int:
    model = load_model(args.model)
    try:
        word = model.parse_word(args.word)
    except ForeignLetterError as exc:
        raise _UsageError(str(exc))
    if not word:
        raise _UsageError("empty word")
    table = CumulantTable(model, paranoid=args.paranoid, max_degree=8)
    part = None
    if args.partition is not None:
        from .words import chi_of

        part = _parse_partition(args.partition, chi_of(word))
    value = table.kappa(word, part)
    _emit(args, {"model": args.model, "word": model.format_word(word),
                 "partition": part.to_text() if part else None,
                 "value": str(value)}, str(value))
    return EXIT_OK


_CHECKS_BY_KIND = {}


def _classifier(kind: str):
    from . import classifiers

    return {
        "birdiagonal": classifiers.check_bi_r_diagonal,
        "bieven": classifiers.check_star_bi_even,
        "bihaar": classifiers.check_bi_haar,
        "rcyclic2": classifiers.check_r_cyclic_2x2,
    }[kind]


def _effective_degree(args, fallback: int = 6) -> int:
    return fallback if args.max_degree is None else args.max_degree


def _cmd_check(args) -> int:
    fn = _classifier(args.kind)
    degree = _effective_degree(args)
    all_true = True
    reports = []
    for path in args.models:
        model = load_model(path)
        report = fn(model, degree)
        reports.append((path, report))
        all_true = all_true and report.verdict
    if args.json:
        print(json.dumps({"kind": args.kind,
                          "reports": [{"model": p, **r.to_json()}
                                      for p, r in reports]},
                         sort_keys=True, indent=2))
    else:
        for path, report in reports:
            print(f"{'PASS' if report.verdict else 'FAIL'} {args.kind} {path} "
                  f"(degree {report.max_degree})")
            for w in report.witnesses:
                print(f"  witness: {w}")
    return EXIT_OK if all_true else EXIT_FALSE


def _cmd_product(args) -> int:
    models = [load_model(path, pair=k) for k, path in enumerate(args.models, start=1)]
    joint = bifree_product(*models)
    code = EXIT_OK
    payload: dict = {"pairs": len(models),
                     "degree_bound": joint.degree_bound}
    lines = [f"joint distribution of {len(models)} pairs "
             f"(degree bound {joint.degree_bound})"]
    if args.moment is not None:
        word = joint.parse_word(args.moment)
        value = joint.moment(word)
        payload["moment"] = {"word": joint.format_word(word), "value": str(value)}
        lines.append(f"moment {joint.format_word(word)} = {value}")
    if args.cumulant is not None:
        word = joint.parse_word(args.cumulant)
        table = CumulantTable(joint, paranoid=args.paranoid)
        value = table.kappa(word)
        payload["cumulant"] = {"word": joint.format_word(word), "value": str(value)}
        lines.append(f"cumulant {joint.format_word(word)} = {value}")
    if args.check_bifree:
        degree = _effective_degree(args)
        report = check_bifree(joint, degree)
        payload["bifree"] = report.to_json()
        lines.append(f"bifree check at degree {degree}: "
                     f"{'PASS' if report.verdict else 'FAIL'}")
        if not report.verdict:
            code = EXIT_FALSE
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return code


def _cmd_verify(args) -> int:
    if args.suite != "paper":
        raise _UsageError(f"unknown suite {args.suite!r}")
    only = None
    if args.only:
        only = [s for chunk in args.only for s in chunk.split(",") if s]
        unknown = [cid for cid in only if cid not in CHECKS]
        if unknown:
            raise _UsageError(f"unknown check ids: {', '.join(unknown)}")
    report = run_suite(only=only, max_degree=args.max_degree, seed=args.seed,
                       paranoid=args.paranoid)
    if args.json:
        print(json.dumps(report.to_json(include_timing=True),
                         sort_keys=True, indent=2))
    else:
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.check_id} (degree {r.degree}, {r.time_ms:.0f} ms)")
            if not r.passed:
                print(f"  details: {r.details}")
                for w in r.witnesses:
                    print(f"  witness: {w}")
        print(f"{'ALL PASSED' if report.all_passed else 'FAILURES PRESENT'}")
    return EXIT_OK if report.all_passed else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifree",
        description="exact combinatorics of bi-free probability")
    parser.add_argument("--json", action="store_true",
                        help="emit JSON instead of plain text")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized verification inputs")
    parser.add_argument("--max-degree", type=int, default=None,
                        help="degree bound (default 6 for check/product; "
                             "verify uses per-check defaults)")
    parser.add_argument("--paranoid", action="store_true",
                        help="use the literal Moebius sums as a cross-check")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the bi-non-crossing partitions")
    p.add_argument("chi")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("mobius", help="Moebius value between two partitions")
    p.add_argument("chi")
    p.add_argument("tau")
    p.add_argument("lam", metavar="lambda")
    p.set_defaults(fn=_cmd_mobius)

    p = sub.add_parser("kreweras", help="Kreweras complement of a partition")
    p.add_argument("chi")
    p.add_argument("tau")
    p.set_defaults(fn=_cmd_kreweras)

    p = sub.add_parser("cumulant", help="evaluate a cumulant on a model")
    p.add_argument("model")
    p.add_argument("word")
    p.add_argument("partition", nargs="?", default=None)
    p.set_defaults(fn=_cmd_cumulant)

    p = sub.add_parser("check", help="run a classifier on model files")
    p.add_argument("kind", choices=["birdiagonal", "bieven", "bihaar", "rcyclic2"])
    p.add_argument("models", nargs="+")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("product", help="bi-free product of model files")
    p.add_argument("models", nargs="+")
    p.add_argument("--moment", default=None,
                   help="evaluate a joint moment (tokens may carry @k suffixes)")
    p.add_argument("--cumulant", default=None,
                   help="evaluate a joint cumulant")
    p.add_argument("--check-bifree", action="store_true",
                   help="scan mixed cumulants of the joint model")
    p.set_defaults(fn=_cmd_product)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", default="paper")
    p.add_argument("--only", action="append", default=[],
                   help="comma-separated check ids (repeatable)")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "product" and len(args.models) < 2:
        parser.error("product needs at least two model files")
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ForeignLetterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotInBncError, MissingMomentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DegreeExceededError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
