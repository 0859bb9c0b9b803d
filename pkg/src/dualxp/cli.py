"""Command-line surface: predict / axp / cxp / enum / verify / stats.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 parse or
validation error, 4 budget exceeded.  The XDUAL_BUDGET environment variable
overrides both the ensemble completion cap and the hitting-set node budget.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .dual import BudgetExceeded, enumerate_all, enumerate_cxps, verify_duality
from .explain import cxp_witness, extract_axp, extract_cxp, make_problem, targeted_cxp
from .hitting import DEFAULT_NODE_BUDGET
from .model import Classifier, FeatureSpace, Instance, ModelError, PartialAssignment
from .modelio import ParseError, parse_instances, parse_model
from .oracle import DEFAULT_COMPLETION_CAP, Oracle, SearchSpaceExceeded
from .reporting import collect_stats

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4


def _budget() -> Optional[int]:
    raw = os.environ.get("XDUAL_BUDGET")
    if raw is None:
        return None
    try:
        value = int(raw)
        if value < 1:
            raise ValueError
        return value
    except ValueError:
        raise ParseError(f"XDUAL_BUDGET must be a positive integer, got {raw!r}")


def _load(args) -> tuple[Classifier, list[Instance]]:
    try:
        model_text = Path(args.model).read_text()
    except OSError as e:
        raise ParseError(f"cannot read model file: {e}")
    classifier = parse_model(model_text)
    try:
        csv_text = Path(args.instances).read_text()
    except OSError as e:
        raise ParseError(f"cannot read instance file: {e}")
    instances = parse_instances(csv_text, classifier.space)
    return classifier, instances


def _parse_order(spec: Optional[str], space: FeatureSpace) -> Optional[list[int]]:
    if spec is None:
        return None
    names = [s.strip() for s in spec.split(",")]
    if sorted(names) != sorted(space.names):
        raise ParseError(
            f"--order must be a permutation of the feature names {list(space.names)}"
        )
    return [space.feature_index(n) for n in names]


def _parse_targets(spec: Optional[str], classifier: Classifier) -> Optional[frozenset[int]]:
    if spec is None:
        return None
    out = set()
    for name in (s.strip() for s in spec.split(",")):
        if name not in classifier.classes:
            raise ParseError(f"unknown class '{name}' in --target")
        out.add(classifier.classes.index(name))
    return frozenset(out)


def _format_assignment(assignment: PartialAssignment, space: FeatureSpace) -> str:
    parts = [
        f"{space.names[l.feature]}={space.domains[l.feature][l.value]}"
        for l in sorted(assignment.literals)
    ]
    return "{" + ", ".join(parts) + "}"


def _literals_json(features: frozenset[int], instance: Instance,
                   space: FeatureSpace) -> dict[str, str]:
    return {
        space.names[f]: space.domains[f][instance.values[f]]
        for f in range(space.n_features) if f in features
    }


def _oracle(classifier: Classifier) -> Oracle:
    cap = _budget()
    return Oracle(classifier, completion_cap=cap or DEFAULT_COMPLETION_CAP)


def cmd_predict(args) -> int:
    classifier, instances = _load(args)
    oracle = _oracle(classifier)
    for instance in instances:
        print(classifier.classes[oracle.predict(instance)])
    return EXIT_OK


def cmd_axp(args) -> int:
    classifier, instances = _load(args)
    order = _parse_order(args.order, classifier.space)
    for instance in instances:
        oracle = _oracle(classifier)
        problem = make_problem(oracle, instance)
        axp = extract_axp(problem, order=order)
        print(f"{classifier.classes[problem.predicted]}: "
              f"{_format_assignment(axp.assignment(instance), classifier.space)}")
    return EXIT_OK


def cmd_cxp(args) -> int:
    classifier, instances = _load(args)
    order = _parse_order(args.order, classifier.space)
    targets = _parse_targets(args.target, classifier)
    for instance in instances:
        oracle = _oracle(classifier)
        problem = make_problem(oracle, instance, targets=targets)
        if targets is None:
            cxp = extract_cxp(problem, order=order)
        else:
            cxp = targeted_cxp(problem, order=order)
        if cxp is None:
            print(f"{classifier.classes[problem.predicted]}: none")
            continue
        witness = cxp_witness(problem, cxp)
        print(f"{classifier.classes[problem.predicted]}: "
              f"{_format_assignment(cxp.assignment(instance), classifier.space)}"
              f" -> {_format_assignment(witness.replacement, classifier.space)}"
              f" ({classifier.classes[witness.witness_class]})")
    return EXIT_OK


def cmd_enum(args) -> int:
    classifier, instances = _load(args)
    order = _parse_order(args.order, classifier.space)
    space = classifier.space
    budget = _budget()
    for row, instance in enumerate(instances):
        oracle = _oracle(classifier)
        problem = make_problem(oracle, instance)
        records = []
        if args.mode == "cxp":
            for cxp in enumerate_cxps(problem, order=order):
                records.append(("cxp", cxp.features))
                if args.limit and len(records) >= args.limit:
                    break
        else:
            axps, cxps = enumerate_all(
                problem, order=order, smallest=args.smallest,
                mhs_budget=budget or DEFAULT_NODE_BUDGET,
            )
            records = [("axp", a.features) for a in axps]
            records += [("cxp", c.features) for c in cxps]
            if args.limit:
                records = records[:args.limit]
        if args.sort_size:
            records.sort(key=lambda r: (len(r[1]), r[0], sorted(r[1])))
        for kind, features in records:
            print(json.dumps({
                "row": row,
                "kind": kind,
                "class": classifier.classes[problem.predicted],
                "literals": _literals_json(features, instance, space),
            }))
    return EXIT_OK


def cmd_verify(args) -> int:
    classifier, instances = _load(args)
    order = _parse_order(args.order, classifier.space)
    failed = False
    for row, instance in enumerate(instances):
        oracle = _oracle(classifier)
        problem = make_problem(oracle, instance)
        axps, cxps = enumerate_all(problem, order=order)
        report = verify_duality(
            [a.features for a in axps], [c.features for c in cxps]
        )
        if report.ok:
            print(f"row {row}: ok ({len(axps)} axps, {len(cxps)} cxps)")
        else:
            failed = True
            for v in report.violations:
                print(f"row {row}: {v}")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_stats(args) -> int:
    classifier, instances = _load(args)
    order = _parse_order(args.order, classifier.space)
    budget = _budget()
    report = collect_stats(
        classifier, instances, order=order,
        completion_cap=budget, mhs_budget=budget,
    )
    csv_text = report.to_csv(timing=args.timing)
    Path(args.output).write_text(csv_text)
    print(f"instances: {len(report.rows)}")
    print(f"total axps: {report.total_axps}")
    print(f"total cxps: {report.total_cxps}")
    print(f"avg axp size: {report.avg_axp_size:.4f}")
    print(f"avg cxp size: {report.avg_cxp_size:.4f}")
    print(f"oracle calls: {report.total_oracle_calls}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualxp",
        description="Formally rigorous abductive and contrastive explanations "
                    "for tree-based classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-m", "--model", required=True, help="model JSON file")
        p.add_argument("-i", "--instances", required=True, help="instance CSV file")
        p.add_argument("--order", help="comma-separated feature permutation "
                                       "used as the literal processing order")

    p = sub.add_parser("predict", help="print the predicted class per row")
    common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("axp", help="one abductive explanation per row")
    common(p)
    p.set_defaults(func=cmd_axp)

    p = sub.add_parser("cxp", help="one (targeted) contrastive explanation "
                                   "plus witness per row")
    common(p)
    p.add_argument("--target", help="comma-separated target class names")
    p.set_defaults(func=cmd_cxp)

    p = sub.add_parser("enum", help="stream explanations as JSON lines")
    common(p)
    p.add_argument("--mode", choices=["cxp", "all"], default="all")
    p.add_argument("--limit", type=int, default=0,
                   help="stop after N explanations per row (0 = no limit)")
    p.add_argument("--sort-size", action="store_true",
                   help="sort each row's output by explanation size")
    p.add_argument("--smallest", action="store_true",
                   help="use minimum-cardinality hitting sets in the joint "
                        "enumerator")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("verify", help="enumerate everything and check the "
                                      "hitting-set duality")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="write a per-instance statistics CSV")
    common(p)
    p.add_argument("-o", "--output", required=True, help="output CSV path")
    p.add_argument("--timing", action="store_true",
                   help="include a wall-clock column (not byte-stable)")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, SearchSpaceExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ModelError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
