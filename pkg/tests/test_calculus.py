"""Premise construction for both rule families, pinned against hand-built labels."""

import random

import pytest

from blprover import Conj, Impl, LL, TOP, Var, hseq, prec, preceq, rhbl_premises, rwbl_premises, satisfies, seq
from blprover.calculus import Occurrence, choose_occurrence, smaller_child
from blprover.hypersequent import expand_abbreviation, is_irreducible, variables
from blprover.oracle import random_formula, random_valuation
from blprover.reduction import root_label

A, B, C = Var(1), Var(2), Var(3)


def test_smaller_child_is_the_canonical_minimum():
    assert smaller_child(A, B) == A
    assert smaller_child(B, A) == A
    assert smaller_child(Conj(A, B), A) == A
    assert smaller_child(Conj(A, B), Impl(A, B)) == Conj(A, B)
    assert smaller_child(Impl(A, B), Conj(A, B)) == Conj(A, B)


def test_premise_counts_and_tags():
    conj_premises = rwbl_premises(root_label(Conj(A, B)))
    assert [p.tag for p in conj_premises] == ["conj1", "conj2", "conj3", "conj4", "conj5"]
    assert [p.index for p in conj_premises] == [1, 2, 3, 4, 5]
    impl_premises = rwbl_premises(root_label(Impl(A, B)))
    assert [p.tag for p in impl_premises] == ["impl1", "impl2", "impl3"]
    assert [p.index for p in impl_premises] == [1, 2, 3]


def test_implication_premises_from_goal():
    """The three rewriting premises of the root goal for p1 -> p2, in full."""
    p1, p2, p3 = rwbl_premises(root_label(Impl(A, B)))
    assert p1.label == hseq(
        seq((B,), preceq(), (A,)),
        seq((A,), preceq(), (B,)),
        seq((A,), LL, (B,)),
        seq((TOP,), preceq(), (B,)),
    )
    assert p2.label == hseq(
        seq((B,), LL, (A,)),
        seq((A,), preceq(), (B,)),
        seq((A,), LL, (B,)),
        seq((TOP, A), preceq(), (B,)),
    )
    assert p3.label == hseq(
        seq((B,), prec(), (A,)),
        seq((B,), LL, (A,)),
        seq((TOP,), preceq(), (TOP,)),
    )


def test_conjunction_premises_from_goal():
    """First two conjunction premises literally; the rest via the abbreviations."""
    goal = root_label(Conj(A, B))
    p1, p2, p3, p4, p5 = rwbl_premises(goal)
    assert p1.label == expand_abbreviation("neg_ll", A, B) | hseq(seq((TOP,), preceq(), (A,)))
    assert p2.label == expand_abbreviation("neg_ll", B, A) | hseq(seq((TOP,), preceq(), (B,)))
    assert p3.label == expand_abbreviation("neg_preceq1_pair", A, B) | hseq(
        seq((TOP,), preceq(), (A, B))
    )
    assert p4.label == expand_abbreviation("neg_pair_prec_minus1", A, B) | hseq(
        seq((TOP, A, B), preceq(-1), (A, B))
    )
    assert p5.label == (
        expand_abbreviation("neg_preceq", TOP, A)
        | expand_abbreviation("neg_preceq", TOP, B)
        | hseq(seq((TOP,), preceq(), (TOP,)))
    )


def test_pivot_vanishes_from_every_premise():
    for pivot in (Conj(A, Impl(B, C)), Impl(Conj(A, B), C)):
        for premise in rwbl_premises(root_label(pivot)):
            assert all(pivot not in s.formulas() for s in premise.label)


def test_ll_context_uses_smaller_child():
    # a << context sequent cannot host a two-formula side, so the middle
    # premises push the complexity-order minimum of the children into it
    pivot = Conj(Conj(A, B), C)
    g = hseq(seq((C,), LL, (pivot,)), seq((TOP,), preceq(), (pivot,)))
    premises = rwbl_premises(g)
    for index in (2, 3):  # pair and balanced premises
        label = premises[index].label
        assert seq((C,), LL, (C,)) in label
        assert all(pivot not in s.formulas() for s in label)


def test_choose_occurrence_prefers_left_of_first_sequent():
    pivot = Conj(A, B)
    g = hseq(seq((pivot,), preceq(), (C,)), seq((C,), preceq(), (pivot,)))
    occ = choose_occurrence(g)
    assert occ.side == "left"
    assert pivot in occ.sequent.left
    with pytest.raises(ValueError):
        choose_occurrence(hseq(seq((A,), preceq(), (B,))), pivot)


def test_rhbl_rewrites_single_occurrence():
    pivot = Conj(A, B)
    g = hseq(seq((pivot,), preceq(), (C,)), seq((C,), preceq(), (pivot,)))
    premises = rhbl_premises(g)
    # the untouched occurrence survives in every premise
    for premise in premises:
        assert seq((C,), preceq(), (pivot,)) in premise.label


def test_rhbl_ll_occurrence_keeps_residual_top():
    pivot = Conj(A, B)
    g = hseq(seq((C,), LL, (pivot,)))
    premises = rhbl_premises(g)
    assert len(premises) == 5
    assert premises[4].label == (
        expand_abbreviation("neg_preceq", TOP, A)
        | expand_abbreviation("neg_preceq", TOP, B)
        | hseq(seq((C,), LL, (TOP,)))
    )


def test_rhbl_explicit_occurrence():
    pivot = Impl(A, B)
    host = seq((pivot,), preceq(), (pivot,))
    g = hseq(host)
    left = rhbl_premises(g, Occurrence(host, "left"))
    right = rhbl_premises(g, Occurrence(host, "right"))
    assert len(left) == len(right) == 3
    assert left != right
    with pytest.raises(ValueError):
        rhbl_premises(g, Occurrence(seq((C,), preceq(), (C,)), "left"))


def test_rules_preserve_satisfaction_pointwise():
    """Random spot check: a valuation satisfies the conclusion exactly when it
    satisfies every premise, in both rule families."""
    rng = random.Random(14)
    checked = 0
    while checked < 120:
        formula = random_formula(rng, rng.randint(1, 5), 3)
        label = root_label(formula)
        for _ in range(rng.randrange(3)):
            if is_irreducible(label):
                break
            step = rng.choice(rwbl_premises(label)).label
            if is_irreducible(step):
                break
            label = step
        if is_irreducible(label):
            continue
        v = random_valuation(rng, variables(label), 3, 8)
        for expand in (rwbl_premises, rhbl_premises):
            premises = expand(label)
            assert satisfies(v, label) == all(satisfies(v, p.label) for p in premises)
        checked += 1
