"""Shared fixtures.

The witness pair here is built from raw pair lists on purpose, independently
of the package's own builder, so tests exercising that builder have something
to disagree with.
"""

import pytest

from kripkit.frames import IntFrame, MS4Frame, Relation
from kripkit.morphisms import FrameMap


@pytest.fixture
def three_point_frame() -> IntFrame:
    """Fence-shaped 3-point frame: a and c both sit below b in the order,
    and the quasi-order additionally pulls a down under b and c."""
    r = Relation.from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (2, 1)])
    q = Relation.from_pairs(
        3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (2, 1), (2, 0)]
    )
    return IntFrame(("a", "b", "c"), r, q)


@pytest.fixture
def two_point_frame() -> IntFrame:
    """2-chain whose quasi-order is total."""
    r = Relation.from_pairs(2, [(0, 0), (1, 1), (0, 1)])
    q = Relation.total(2)
    return IntFrame(("u", "v"), r, q)


@pytest.fixture
def witness_map(three_point_frame, two_point_frame) -> FrameMap:
    """a to u, b and c to v: an int morphism whose expansion is not a modal
    morphism."""
    return FrameMap(three_point_frame, two_point_frame, (0, 1, 1))


@pytest.fixture
def cluster_frame() -> MS4Frame:
    """2-point r-cluster with identity e."""
    return MS4Frame(("x", "y"), Relation.total(2), Relation.identity(2))
