"""Reduction trees, branch certificates and size statistics.

A reduction tree starts from the goal hypersequent ``top <= A`` and expands
every node with the premises of the selected calculus until all leaves are
irreducible.  For the whole-hypersequent rewriting calculus the height never
exceeds the connective count of A, because each step removes the pivot from
the set of compound formulas of the label and introduces only proper
subformulas; the builders enforce this with a depth guard that doubles as a
bug detector.

A certificate compresses one branch into the sequence of premise indices
taken at each level, padded with zeros once a leaf is reached; its length is
exactly the connective count of the root formula.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterator

from .calculus import Premise, rhbl_premises, rwbl_premises
from .formula import (
    Conj,
    Formula,
    TOP,
    complexity,
    is_atomic,
    parse,
    render,
)
from .hypersequent import (
    RelationalHypersequent,
    check_generated_shape,
    hseq,
    is_irreducible,
    most_complex,
    preceq,
    seq,
)


class ReductionDepthError(RuntimeError):
    """A branch exceeded the depth guard; this signals an implementation bug."""


@dataclass(frozen=True)
class ReductionNode:
    """A tree node: its label, how it was reached and its expansions.

    premise_index and premise_tag describe the edge from the parent (None at
    the root).  Leaves have no children.
    """

    label: RelationalHypersequent
    premise_index: int | None
    premise_tag: str | None
    children: tuple[ReductionNode, ...]

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class ReductionTree:
    formula: Formula
    mode: str
    root: ReductionNode


@dataclass(frozen=True)
class TreeStats:
    height: int
    node_count: int
    leaf_count: int
    max_branch_weight: int


def root_label(formula: Formula) -> RelationalHypersequent:
    """The goal hypersequent asserting the formula is designated."""
    return hseq(seq((TOP,), preceq(), (formula,)))


def _premise_fn(mode: str) -> Callable[[RelationalHypersequent], tuple[Premise, ...]]:
    if mode == "rwbl":
        return rwbl_premises
    if mode == "rhbl":
        return lambda g: rhbl_premises(g)
    raise ValueError(f"unknown mode {mode!r}")


def _build(
    label: RelationalHypersequent,
    premise_index: int | None,
    premise_tag: str | None,
    depth_left: int,
    expand: Callable[[RelationalHypersequent], tuple[Premise, ...]],
) -> ReductionNode:
    check_generated_shape(label)
    if is_irreducible(label):
        return ReductionNode(label, premise_index, premise_tag, ())
    if depth_left == 0:
        raise ReductionDepthError("reducible node at the depth limit")
    children = tuple(
        _build(p.label, p.index, p.tag, depth_left - 1, expand)
        for p in expand(label)
    )
    return ReductionNode(label, premise_index, premise_tag, children)


def build_rwbl_tree(formula: Formula, depth_limit: int | None = None) -> ReductionTree:
    """Full reduction tree in the whole-hypersequent rewriting calculus.

    The depth limit defaults to the connective count of the formula, which is
    a proven bound on the height; exceeding it raises ReductionDepthError.
    """
    limit = complexity(formula) if depth_limit is None else depth_limit
    root = _build(root_label(formula), None, None, limit, rwbl_premises)
    return ReductionTree(formula, "rwbl", root)


def build_rhbl_tree(formula: Formula, depth_limit: int) -> ReductionTree:
    """Full reduction tree in the one-occurrence-at-a-time calculus.

    Branches may be longer than the connective count here (each pivot
    occurrence costs a step), so the caller must supply an explicit depth
    limit.
    """
    root = _build(root_label(formula), None, None, depth_limit, _premise_fn("rhbl"))
    return ReductionTree(formula, "rhbl", root)


def label_weight(g: RelationalHypersequent) -> int:
    """Size of a canonical label: connectives plus atoms plus relations.

    A bare top element counts as a single atom; compound elements count
    their connectives and their literal leaves.
    """
    total = 0
    for s in g:
        total += 1
        for f in s.formulas():
            if f == TOP:
                total += 1
            else:
                total += 2 * complexity(f) + 1
    return total


def tree_stats(tree: ReductionTree) -> TreeStats:
    """Height, node and leaf counts, and the heaviest branch weight."""
    height = 0
    nodes = 0
    leaves = 0
    max_weight = 0
    stack: list[tuple[ReductionNode, int, int]] = [(tree.root, 0, 0)]
    while stack:
        node, depth, weight_above = stack.pop()
        nodes += 1
        weight = weight_above + label_weight(node.label)
        if node.is_leaf:
            leaves += 1
            height = max(height, depth)
            max_weight = max(max_weight, weight)
        else:
            for child in node.children:
                stack.append((child, depth + 1, weight))
    return TreeStats(height, nodes, leaves, max_weight)


def stream_rwbl_stats(formula: Formula) -> TreeStats:
    """Same statistics as tree_stats, computed without materializing the tree."""
    limit = complexity(formula)
    height = 0
    nodes = 0
    leaves = 0
    max_weight = 0
    stack: list[tuple[RelationalHypersequent, int, int]] = [(root_label(formula), 0, 0)]
    while stack:
        label, depth, weight_above = stack.pop()
        check_generated_shape(label)
        nodes += 1
        weight = weight_above + label_weight(label)
        if is_irreducible(label):
            leaves += 1
            height = max(height, depth)
            max_weight = max(max_weight, weight)
        else:
            if depth >= limit:
                raise ReductionDepthError("reducible node at the depth limit")
            for p in rwbl_premises(label):
                stack.append((p.label, depth + 1, weight))
    return TreeStats(height, nodes, leaves, max_weight)


def summarize_rwbl_stats(formula: Formula) -> TreeStats:
    """Same statistics as stream_rwbl_stats, but sharing repeated subtrees.

    Identical labels expand to identical subtrees, so each distinct label is
    expanded once and its summary is reused wherever the label recurs.  The
    reported counts still describe the full tree, not the shared graph, which
    keeps large trees (tens of thousands of branches) affordable to measure.
    """
    limit = complexity(formula)
    memo: dict[RelationalHypersequent, tuple[int, int, int, int]] = {}

    def visit(label: RelationalHypersequent, depth: int) -> tuple[int, int, int, int]:
        cached = memo.get(label)
        if cached is not None:
            return cached
        check_generated_shape(label)
        own = label_weight(label)
        if is_irreducible(label):
            summary = (0, 1, 1, own)
        else:
            if depth >= limit:
                raise ReductionDepthError("reducible node at the depth limit")
            height = nodes = leaves = heaviest = 0
            for p in rwbl_premises(label):
                sub_height, sub_nodes, sub_leaves, sub_weight = visit(p.label, depth + 1)
                height = max(height, sub_height + 1)
                nodes += sub_nodes
                leaves += sub_leaves
                heaviest = max(heaviest, sub_weight)
            summary = (height, nodes + 1, leaves, own + heaviest)
        memo[label] = summary
        return summary

    height, nodes, leaves, max_weight = visit(root_label(formula), 0)
    return TreeStats(height, nodes, leaves, max_weight)


def iter_rwbl_leaves(formula: Formula) -> Iterator[RelationalHypersequent]:
    """All leaf labels of the rewriting tree, depth first, without materializing."""
    limit = complexity(formula)
    stack: list[tuple[RelationalHypersequent, int]] = [(root_label(formula), 0)]
    while stack:
        label, depth = stack.pop()
        if is_irreducible(label):
            yield label
            continue
        if depth >= limit:
            raise ReductionDepthError("reducible node at the depth limit")
        for p in reversed(rwbl_premises(label)):
            stack.append((p.label, depth + 1))


def branch_estimate(formula: Formula) -> int:
    """Upper bound on the number of branches of the rewriting tree.

    Each distinct compound subformula is pivoted at most once per branch and
    contributes its premise fan-out as a factor.
    """
    from .formula import compound_subformulas

    estimate = 1
    for f in compound_subformulas(formula):
        if f == TOP:
            continue
        estimate *= 5 if isinstance(f, Conj) else 3
    return estimate


def weight_bound(n: int) -> int:
    """Cubic envelope for branch weights at connective count n."""
    return 24 * n**3 + 61 * n**2 + 50 * n + 13


@dataclass(frozen=True)
class Certificate:
    """Premise choices along one branch, zero padded to the connective count."""

    moves: tuple[int, ...]

    def to_json(self, formula: Formula) -> str:
        return json.dumps({"formula": render(formula), "moves": list(self.moves)})

    @classmethod
    def from_json(cls, text: str) -> tuple[Formula, Certificate]:
        data = json.loads(text)
        moves = data["moves"]
        if not isinstance(moves, list) or not all(isinstance(m, int) for m in moves):
            raise ValueError("certificate moves must be a list of integers")
        return parse(data["formula"]), cls(tuple(moves))


@dataclass(frozen=True)
class FollowResult:
    """Outcome of replaying a certificate: a root-to-leaf branch or a reason."""

    accepted: bool
    branch: tuple[RelationalHypersequent, ...] | None = None
    error: str | None = None


def follow_certificate(formula: Formula, certificate: Certificate) -> FollowResult:
    """Replay certificate moves against the rewriting calculus.

    Rejects on length mismatch, out-of-range indices, nonzero moves after the
    leaf has been reached, or a zero move on a still-reducible node.
    """
    n = complexity(formula)
    if len(certificate.moves) != n:
        return FollowResult(
            False, error=f"certificate length {len(certificate.moves)}, expected {n}"
        )
    label = root_label(formula)
    branch = [label]
    for position, move in enumerate(certificate.moves):
        if is_irreducible(label):
            if move != 0:
                return FollowResult(
                    False,
                    error=f"nonzero move {move} at position {position} after the leaf",
                )
            continue
        fanout = 5 if isinstance(most_complex(label), Conj) else 3
        if not 1 <= move <= fanout:
            return FollowResult(
                False,
                error=f"move {move} at position {position} outside 1..{fanout}",
            )
        label = rwbl_premises(label)[move - 1].label
        branch.append(label)
    if not is_irreducible(label):
        return FollowResult(False, error="certificate ends before a leaf")
    return FollowResult(True, branch=tuple(branch))


def render_tree_lines(tree: ReductionTree) -> str:
    """Text dump, one node per line: id, depth, premise tag, label, child ids."""
    lines: list[str] = []
    counter = [0]

    def walk(node: ReductionNode, depth: int) -> int:
        node_id = counter[0]
        counter[0] += 1
        slot = len(lines)
        lines.append("")
        child_ids = [walk(child, depth + 1) for child in node.children]
        tag = node.premise_tag if node.premise_tag is not None else "root"
        children = ",".join(str(c) for c in child_ids) if child_ids else "-"
        lines[slot] = f"{node_id}\t{depth}\t{tag}\t{node.label.render()}\tchildren={children}"
        return node_id

    walk(tree.root, 0)
    return "\n".join(lines)


def render_tree_dot(tree: ReductionTree) -> str:
    """Graphviz rendering with premise tags on the edges."""
    lines = ["digraph reduction {", "  node [shape=box];"]
    counter = [0]

    def escape(text: str) -> str:
        return text.replace("\\", "\\\\").replace('"', '\\"')

    def walk(node: ReductionNode) -> int:
        node_id = counter[0]
        counter[0] += 1
        lines.append(f'  n{node_id} [label="{escape(node.label.render())}"];')
        for child in node.children:
            child_id = walk(child)
            lines.append(f'  n{node_id} -> n{child_id} [label="{child.premise_tag}"];')
        return node_id

    walk(tree.root)
    lines.append("}")
    return "\n".join(lines)


def tree_to_json(tree: ReductionTree) -> str:
    """Structured JSON with nested children and premise provenance per node."""

    def node_obj(node: ReductionNode) -> dict:
        obj: dict = {"label": node.label.render()}
        if node.premise_tag is not None:
            obj["premise"] = {"tag": node.premise_tag, "index": node.premise_index}
        obj["children"] = [node_obj(child) for child in node.children]
        return obj

    return json.dumps(
        {"formula": render(tree.formula), "mode": tree.mode, "root": node_obj(tree.root)}
    )
