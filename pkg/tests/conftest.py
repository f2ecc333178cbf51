import pytest

from icequiver import IceQuiver, Potential


@pytest.fixture
def triangle():
    """The boxed-1-3 triangle: a1: 1->2, a2: 2->3, a3: 3->1 frozen; W = a3 a2 a1."""
    q = IceQuiver.build(
        [(1, True), (2, False), (3, True)],
        [("a1", 1, 2), ("a2", 2, 3), ("a3", 3, 1, True)],
    )
    w = Potential.single(q, ("a3", "a2", "a1"))
    return q, w


@pytest.fixture
def reduction_example():
    """Four-arrow example: g1: 2->1, g2: 3->2, g3: 1->3, g4: 3->1 frozen;
    W = g1 g2 g3 + g3 g4."""
    q = IceQuiver.build(
        [(1, True), (2, False), (3, True)],
        [("g1", 2, 1), ("g2", 3, 2), ("g3", 1, 3), ("g4", 3, 1, True)],
    )
    w = Potential.of_words(q, (("g1", "g2", "g3"), 1), (("g3", "g4"), 1))
    return q, w


@pytest.fixture
def baba():
    """Two mutable vertices with a: 1->2, b: 2->1 and W = baba."""
    q = IceQuiver.build([(1, False), (2, False)], [("a", 1, 2), ("b", 2, 1)])
    w = Potential.single(q, ("b", "a", "b", "a"))
    return q, w
