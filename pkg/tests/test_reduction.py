"""Reduction trees, their statistics, certificates and renderers."""

import json
import random

import pytest

from blprover import (
    Certificate,
    TOP,
    Var,
    build_rhbl_tree,
    build_rwbl_tree,
    check_tautology,
    hseq,
    parse,
    preceq,
    seq,
    tree_stats,
)
from blprover.formula import complexity
from blprover.hypersequent import is_irreducible
from blprover.oracle import random_formula
from blprover.reduction import (
    ReductionDepthError,
    branch_estimate,
    follow_certificate,
    iter_rwbl_leaves,
    label_weight,
    render_tree_dot,
    render_tree_lines,
    root_label,
    stream_rwbl_stats,
    summarize_rwbl_stats,
    tree_to_json,
    weight_bound,
)

P1 = Var(1)


def test_root_label():
    assert root_label(P1) == hseq(seq((TOP,), preceq(), (P1,)))


def test_atomic_formula_tree_is_a_single_leaf():
    tree = build_rwbl_tree(P1)
    assert tree.mode == "rwbl"
    assert tree.root.is_leaf
    assert tree.root.premise_index is None
    assert tree_stats(tree) == summarize_rwbl_stats(P1)
    assert tree_stats(tree).node_count == 1
    assert tree_stats(tree).max_branch_weight == 3


def test_identity_implication_tree_shape():
    tree = build_rwbl_tree(parse("p1 -> p1"))
    root = tree.root
    assert not root.is_leaf
    assert [child.premise_tag for child in root.children] == ["impl1", "impl2", "impl3"]
    assert [child.premise_index for child in root.children] == [1, 2, 3]
    assert all(child.is_leaf for child in root.children)
    stats = tree_stats(tree)
    assert stats.height == 1
    assert stats.node_count == 4
    assert stats.leaf_count == 3
    assert stats.max_branch_weight == 15


def test_label_weight():
    assert label_weight(root_label(P1)) == 3
    assert label_weight(root_label(parse("p1 * p2"))) == 5
    assert label_weight(hseq(seq((TOP,), preceq(), (TOP,)))) == 3


def test_stats_variants_agree():
    rng = random.Random(23)
    for _ in range(25):
        formula = random_formula(rng, rng.randint(1, 4), 3)
        from_tree = tree_stats(build_rwbl_tree(formula))
        assert stream_rwbl_stats(formula) == from_tree
        assert summarize_rwbl_stats(formula) == from_tree


def test_height_never_exceeds_connective_count():
    rng = random.Random(24)
    for _ in range(25):
        formula = random_formula(rng, rng.randint(1, 5), 3)
        assert summarize_rwbl_stats(formula).height <= complexity(formula)


def test_iter_leaves_matches_stats():
    formula = parse("(p1 * p2) -> p1")
    leaves = list(iter_rwbl_leaves(formula))
    assert len(leaves) == stream_rwbl_stats(formula).leaf_count
    assert all(is_irreducible(leaf) for leaf in leaves)


def test_branch_estimate():
    assert branch_estimate(P1) == 1
    assert branch_estimate(parse("p1 -> p2")) == 3
    assert branch_estimate(parse("p1 * p2")) == 5
    assert branch_estimate(parse("(p1 * p2) -> p1")) == 15
    # a repeated subformula is counted once
    assert branch_estimate(parse("(p1 * p2) -> (p1 * p2)")) == 15
    # the truth constant is never pivoted
    assert branch_estimate(parse("top -> p1")) == 3


def test_branch_estimate_bounds_leaf_count():
    rng = random.Random(25)
    for _ in range(20):
        formula = random_formula(rng, rng.randint(1, 4), 2)
        assert stream_rwbl_stats(formula).leaf_count <= branch_estimate(formula)


def test_weight_bound_values():
    assert weight_bound(1) == 148
    assert weight_bound(2) == 549
    assert weight_bound(10) == 30613


def test_rhbl_tree_and_depth_limit():
    tree = build_rhbl_tree(parse("p1 -> p1"), depth_limit=60)
    assert tree.mode == "rhbl"
    assert all(
        node.is_leaf or node.children for node in [tree.root, *tree.root.children]
    )
    with pytest.raises(ReductionDepthError):
        build_rhbl_tree(parse("p1 * p2"), depth_limit=0)
    with pytest.raises(ReductionDepthError):
        build_rwbl_tree(parse("p1 * p2"), depth_limit=0)


def test_certificate_round_trip():
    formula = parse("p1 -> p1 * p1")
    cert = Certificate((2, 1))
    text = cert.to_json(formula)
    loaded_formula, loaded_cert = Certificate.from_json(text)
    assert loaded_formula == formula
    assert loaded_cert == cert
    with pytest.raises(ValueError):
        Certificate.from_json(json.dumps({"formula": "p1", "moves": ["x"]}))


def test_follow_certificate_accepts_real_branches():
    result = check_tautology(parse("p1 -> p1 * p1"))
    assert not result.provable
    followed = follow_certificate(parse("p1 -> p1 * p1"), result.certificate)
    assert followed.accepted
    assert followed.branch[0] == root_label(parse("p1 -> p1 * p1"))
    assert is_irreducible(followed.branch[-1])


def test_follow_certificate_rejections():
    formula = parse("p1 -> p1 * p1")  # complexity 2
    wrong_length = follow_certificate(formula, Certificate((1,)))
    assert not wrong_length.accepted
    assert "length" in wrong_length.error
    out_of_range = follow_certificate(formula, Certificate((9, 1)))
    assert not out_of_range.accepted
    # moves must be zero once the branch has bottomed out
    atom = parse("p1 -> p1")  # reaches a leaf after one move
    late_move = follow_certificate(atom, Certificate((3,)))
    assert late_move.accepted
    # a zero move cannot stall on a still-reducible node
    stalled = follow_certificate(formula, Certificate((0, 0)))
    assert not stalled.accepted


def test_renderers():
    tree = build_rwbl_tree(parse("p1 -> p1"))
    lines = render_tree_lines(tree).splitlines()
    assert len(lines) == 4
    first = lines[0].split("\t")
    assert first[0] == "0"
    assert first[1] == "0"
    assert first[2] == "root"
    assert first[4] == "children=1,2,3"
    assert all(line.split("\t")[4] == "children=-" for line in lines[1:])

    dot = render_tree_dot(tree)
    assert dot.startswith("digraph")
    # formula labels can contain "->" themselves, so count edge arrows only
    assert dot.count(" -> n") == 3
    assert 'label="impl2"' in dot

    payload = json.loads(tree_to_json(tree))
    assert payload["mode"] == "rwbl"
    assert len(payload["root"]["children"]) == 3
