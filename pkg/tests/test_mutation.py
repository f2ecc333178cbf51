import pytest

from icequiver import (IceQuiver, Potential, PreconditionError,
                       check_involution, cyclic_word, fz_agreement, mutate,
                       nondegeneracy_search, premutate)


def test_premutate_triangle(triangle):
    q, w = triangle
    q2, w2 = premutate(q, w, 2)
    arrows = {(a.id, a.tail, a.head, a.frozen) for a in q2.arrows}
    assert arrows == {
        ("a1*", 2, 1, False),
        ("a2*", 3, 2, False),
        ("[a2,a1]", 1, 3, False),
        ("a3", 3, 1, True),
    }
    expected = Potential.of_words(
        q2, (("[a2,a1]", "a1*", "a2*"), 1), (("[a2,a1]", "a3"), 1))
    assert w2 == expected


def test_premutate_isolated_vertex():
    q = IceQuiver.build([(1, False), (2, True), (3, True)],
                        [("f", 2, 3, True)])
    w = Potential.zero()
    q2, w2 = premutate(q, w, 1)
    assert q2 == q and w2 == w


def test_premutate_double(triangle):
    q, w = triangle
    first = mutate(q, w, 2, 8)
    q2, w2 = premutate(first.quiver, first.potential, 2)
    arrows = {(a.id, a.tail, a.head, a.frozen) for a in q2.arrows}
    assert arrows == {
        ("a1", 1, 2, False),
        ("a2", 2, 3, False),
        ("[a2,a1]", 1, 3, True),
        ("[a1*,a2*]", 3, 1, False),
    }
    expected = Potential.of_words(
        q2, (("[a2,a1]", "[a1*,a2*]"), 1), (("[a1*,a2*]", "a2", "a1"), 1))
    assert w2 == expected


def test_mutate_triangle(triangle):
    q, w = triangle
    step = mutate(q, w, 2, 8)
    arrows = {(a.id, a.tail, a.head, a.frozen) for a in step.quiver.arrows}
    assert arrows == {
        ("a1*", 2, 1, False),
        ("a2*", 3, 2, False),
        ("[a2,a1]", 1, 3, True),
    }
    assert step.potential == Potential.single(
        step.quiver, ("[a2,a1]", "a1*", "a2*"))
    assert step.reduction.newly_frozen == ["[a2,a1]"]
    assert [b for b, _ in step.reduction.frozen_deleted] == ["a3"]
    assert step.star_map == {"a1*": "a1", "a2*": "a2"}


def test_mutate_twice_recovers_triangle(triangle):
    q, w = triangle
    step1 = mutate(q, w, 2, 8)
    step2 = mutate(step1.quiver, step1.potential, 2, 8)
    arrows = {(a.id, a.tail, a.head, a.frozen) for a in step2.quiver.arrows}
    assert arrows == {
        ("a1", 1, 2, False),
        ("a2", 2, 3, False),
        ("[a1*,a2*]", 3, 1, True),
    }
    assert step2.potential == Potential.single(
        step2.quiver, ("[a1*,a2*]", "a2", "a1"))
    # relabelling [a1*,a2*] -> a3 recovers the original exactly
    relabelled = Potential({
        cyclic_word(q, tuple("a3" if x == "[a1*,a2*]" else x for x in word.arrows)): c
        for word, c in step2.potential.terms.items()
    })
    assert relabelled == w
    assert {(("a3" if a.id == "[a1*,a2*]" else a.id), a.tail, a.head, a.frozen)
            for a in step2.quiver.arrows} == \
        {(a.id, a.tail, a.head, a.frozen) for a in q.arrows}


def test_mutate_isolated_vertex_unchanged():
    q = IceQuiver.build([(1, False), (2, True)], [])
    step = mutate(q, Potential.zero(), 1, 6)
    assert step.quiver == q
    assert step.potential.is_zero()


def test_check_involution_triangle(triangle):
    q, w = triangle
    report = check_involution(q, w, 2, 8)
    assert report.quiver_match
    assert report.potential_match
    assert report.dims_match


def test_check_involution_requires_reduced(reduction_example):
    q, w = reduction_example
    with pytest.raises(PreconditionError):
        check_involution(q, w, 2, 8)


def test_check_involution_isolated():
    q = IceQuiver.build([(1, False), (2, True)], [])
    report = check_involution(q, Potential.zero(), 1, 6)
    assert report.quiver_match and report.potential_match and report.dims_match


def test_fz_agreement_triangle(triangle):
    q, w = triangle
    assert fz_agreement(q, w, 2, 8)


def test_fz_agreement_isolated():
    q = IceQuiver.build([(1, False), (2, True)], [])
    assert fz_agreement(q, Potential.zero(), 1, 6)


def test_nondegeneracy_triangle(triangle):
    q, w = triangle
    report = nondegeneracy_search(q, w, 2, 8)
    assert report.ok_to_depth
    assert report.failing_sequence is None


def test_nondegeneracy_depth_zero_detects_two_cycle():
    q = IceQuiver.build([(1, False), (2, False)], [("a", 1, 2), ("b", 2, 1)])
    report = nondegeneracy_search(q, Potential.zero(), 0, 6)
    assert not report.ok_to_depth
    assert report.failing_sequence == []


def test_nondegeneracy_no_admissible_sequence():
    # both vertices blocked by the 2-cycle: the search cannot mutate anywhere,
    # and the offending 2-cycle is reported at the root
    q = IceQuiver.build([(1, False), (2, False)], [("a", 1, 2), ("b", 2, 1)])
    report = nondegeneracy_search(q, Potential.zero(), 3, 6)
    assert not report.ok_to_depth
    assert report.failing_sequence == []


def test_mutation_never_creates_two_cycles_at_vertex(triangle):
    q, w = triangle
    step = mutate(q, w, 2, 8)
    assert not step.quiver.loops_at(2)
    assert not step.quiver.two_cycles_at(2)


def test_rigidity_propagation_random():
    # rigid + reduced propagates through one mutation step, and the mutated
    # quiver has no unfrozen-containing 2-cycles
    import random
    from icequiver import rigidity
    from icequiver.samples import random_reduced_iqp

    rng = random.Random(991)
    n = 5
    mutations = 0
    for _ in range(60):
        q, w = random_reduced_iqp(rng, truncation=n)
        if not rigidity(q, w, n).rigid:
            continue
        for k in q.mutable_vertices():
            if not q.mutability_check(k):
                continue
            step = mutate(q, w, k, n)
            assert not step.quiver.unfrozen_two_cycles()
            assert rigidity(step.quiver, step.potential, n).rigid
            mutations += 1
    assert mutations > 30


def test_premutated_and_reduced_dims_agree(triangle):
    # steps (i)-(iii) and the full mutation define isomorphic truncated
    # Jacobian quotients
    from icequiver import hom_dims, truncated_algebra
    q, w = triangle
    n = 8
    step = mutate(q, w, 2, n)
    for m in range(0, n - 2 + 1):
        pre = hom_dims(truncated_algebra(step.premutated_quiver,
                                         step.premutated_potential, m))
        red = hom_dims(truncated_algebra(step.quiver, step.potential, m))
        assert pre == red, f"premutated/reduced dims differ at truncation {m}"
