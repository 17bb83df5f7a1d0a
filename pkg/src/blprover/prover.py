"""Provability decisions, certificate checking and the command line interface."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .axiom_check import check_axiom, verify_branch_countermodel
from .calculus import rhbl_premises, rwbl_premises
from .formula import Formula, ParseError, complexity, parse, render
from .hypersequent import RelationalHypersequent, is_irreducible
from .reduction import (
    Certificate,
    ReductionDepthError,
    build_rwbl_tree,
    follow_certificate,
    render_tree_dot,
    render_tree_lines,
    root_label,
    tree_stats,
    tree_to_json,
)
from .semantics import Valuation, eval_formula, render_value


@dataclass(frozen=True)
class ProveResult:
    """Verdict of check_tautology.

    Unprovable formulas carry a countermodel, the refuted branch from root to
    leaf, and (in rewriting mode) a replayable certificate.
    """

    provable: bool
    certificate: Certificate | None = None
    countermodel: Valuation | None = None
    branch: tuple[RelationalHypersequent, ...] | None = None


@dataclass(frozen=True)
class VerifyOutcome:
    accepted: bool
    reason: str
    countermodel: Valuation | None = None


def _default_rhbl_depth(formula: Formula) -> int:
    # Single-occurrence steps shrink the total connective weight of a label by
    # at least one, and label weights stay within the cubic branch envelope,
    # so a generous linear-in-complexity allowance never triggers spuriously.
    return 50 * (complexity(formula) + 1)


def _search(label, expand, depth_left, moves, labels, proven):
    # A label fully determines its subtree, and a countermodel found at any
    # leaf refutes every label below it by rule invertibility, so subtrees
    # known to be all-axiom can be skipped wholesale on repeat labels without
    # disturbing which refutation is found first.
    if label in proven:
        return None
    if is_irreducible(label):
        verdict = check_axiom(label)
        if verdict.is_axiom:
            proven.add(label)
            return None
        return verdict, tuple(moves), tuple(labels)
    if depth_left == 0:
        raise ReductionDepthError("reducible node at the depth limit")
    for premise in expand(label):
        hit = _search(
            premise.label,
            expand,
            depth_left - 1,
            moves + [premise.index],
            labels + [premise.label],
            proven,
        )
        if hit is not None:
            return hit
    proven.add(label)
    return None


def check_tautology(
    formula: Formula, mode: str = "rwbl", depth_limit: int | None = None
) -> ProveResult:
    """Decide provability by exhaustive reduction and leaf classification.

    Premises are explored in ascending index, so the reported refutation is
    the first invalid leaf in that deterministic order.  The certificate is
    the list of premise indices along its branch, padded with zeros to the
    connective count; single-occurrence mode has no certificate format.
    """
    if mode == "rwbl":
        expand = rwbl_premises
        limit = complexity(formula) if depth_limit is None else depth_limit
    elif mode == "rhbl":
        expand = rhbl_premises
        limit = _default_rhbl_depth(formula) if depth_limit is None else depth_limit
    else:
        raise ValueError(f"unknown mode {mode!r}")
    root = root_label(formula)
    hit = _search(root, expand, limit, [], [root], set())
    if hit is None:
        return ProveResult(True)
    verdict, moves, branch = hit
    certificate = None
    if mode == "rwbl":
        certificate = Certificate(moves + (0,) * (complexity(formula) - len(moves)))
    assert verdict.countermodel is not None
    if not verify_branch_countermodel(verdict.countermodel, branch, formula):
        raise AssertionError("countermodel failed to refute the full branch")
    return ProveResult(False, certificate, verdict.countermodel, branch)


def check_no_tautology(formula: Formula, certificate: Certificate) -> VerifyOutcome:
    """Accept exactly when the certificate replays to a non-axiom leaf.

    Only the certified branch is rebuilt and only its leaf is classified, so
    acceptance takes time polynomial in the formula size, with no search.
    """
    followed = follow_certificate(formula, certificate)
    if not followed.accepted:
        return VerifyOutcome(False, followed.error or "certificate replay failed")
    assert followed.branch is not None
    leaf = followed.branch[-1]
    verdict = check_axiom(leaf)
    if verdict.is_axiom:
        return VerifyOutcome(False, "certified leaf is an axiom")
    assert verdict.countermodel is not None
    if not verify_branch_countermodel(verdict.countermodel, followed.branch, formula):
        raise AssertionError("countermodel failed to refute the certified branch")
    return VerifyOutcome(True, "leaf refuted", verdict.countermodel)


def _build_cli() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blprover",
        description="Decision procedure for provability in basic fuzzy logic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prove = sub.add_parser("prove", help="decide whether a formula is provable")
    prove.add_argument("formula", help="formula text, e.g. '(p1 * p2) -> p1'")
    prove.add_argument(
        "--countermodel", action="store_true", help="print a countermodel when unprovable"
    )
    prove.add_argument(
        "--certificate",
        action="store_true",
        help="print a replayable certificate when unprovable",
    )
    prove.add_argument("--mode", choices=("rwbl", "rhbl"), default="rwbl")
    prove.add_argument(
        "--json", action="store_true", dest="as_json", help="machine-readable output"
    )

    verify = sub.add_parser("verify", help="replay a certificate of unprovability")
    verify.add_argument("formula")
    verify.add_argument("--cert", required=True, help="path to a certificate JSON file")

    tree = sub.add_parser("tree", help="dump the reduction tree of a formula")
    tree.add_argument("formula")
    tree.add_argument("--emit", choices=("dot", "json"), help="output format")
    tree.add_argument("--stats", action="store_true", help="print tree statistics")

    evaluate = sub.add_parser("eval", help="evaluate a formula under a valuation")
    evaluate.add_argument("formula")
    evaluate.add_argument(
        "--valuation", required=True, help="path to a countermodel JSON file"
    )
    return parser


def _cmd_prove(args, formula: Formula) -> int:
    if args.mode == "rhbl" and args.certificate:
        print("certificates exist only in rwbl mode", file=sys.stderr)
        return 2
    result = check_tautology(formula, mode=args.mode)
    if args.as_json:
        payload: dict = {"formula": render(formula), "provable": result.provable}
        if args.countermodel and result.countermodel is not None:
            payload["countermodel"] = result.countermodel.to_json()
        if args.certificate and result.certificate is not None:
            payload["certificate"] = json.loads(result.certificate.to_json(formula))
        print(json.dumps(payload))
    else:
        print("provable" if result.provable else "not provable")
        if args.countermodel and result.countermodel is not None:
            print(json.dumps(result.countermodel.to_json()))
        if args.certificate and result.certificate is not None:
            print(result.certificate.to_json(formula))
    return 0 if result.provable else 1


def _cmd_verify(args, formula: Formula) -> int:
    try:
        text = Path(args.cert).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"cannot read certificate file: {exc}", file=sys.stderr)
        return 2
    try:
        data = json.loads(text)
        if isinstance(data, dict) and isinstance(data.get("certificate"), dict):
            data = data["certificate"]
        cert_formula, certificate = Certificate.from_json(json.dumps(data))
    except (ValueError, KeyError, TypeError) as exc:
        print(f"malformed certificate file: {exc}", file=sys.stderr)
        return 2
    if cert_formula != formula:
        print("rejected: certificate was issued for a different formula")
        return 1
    outcome = check_no_tautology(formula, certificate)
    if outcome.accepted:
        print("accepted")
        return 0
    print(f"rejected: {outcome.reason}")
    return 1


def _cmd_tree(args, formula: Formula) -> int:
    tree = build_rwbl_tree(formula)
    if args.emit == "dot":
        print(render_tree_dot(tree))
    elif args.emit == "json":
        print(tree_to_json(tree))
    elif not args.stats:
        print(render_tree_lines(tree))
    if args.stats:
        stats = tree_stats(tree)
        print(
            f"height={stats.height} nodes={stats.node_count} "
            f"leaves={stats.leaf_count} max_branch_weight={stats.max_branch_weight}"
        )
    return 0


def _cmd_eval(args, formula: Formula) -> int:
    try:
        text = Path(args.valuation).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"cannot read valuation file: {exc}", file=sys.stderr)
        return 2
    try:
        valuation = Valuation.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        print(f"malformed valuation file: {exc}", file=sys.stderr)
        return 2
    try:
        value = eval_formula(valuation, formula)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    print(render_value(value))
    return 0


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_cli()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        formula = parse(args.formula)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    if args.command == "prove":
        return _cmd_prove(args, formula)
    if args.command == "verify":
        return _cmd_verify(args, formula)
    if args.command == "tree":
        return _cmd_tree(args, formula)
    assert args.command == "eval"
    return _cmd_eval(args, formula)


if __name__ == "__main__":
    sys.exit(cli_main())
