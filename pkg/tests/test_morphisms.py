"""Tests for frame maps, morphism predicates, and reduction lifting.

The morphism conditions are re-derived here with plain set arithmetic so the
bitmask implementations have an independent oracle to answer to.
"""

from itertools import product

import pytest

from kripkit.enumeration import EnumerationConfig, enumerate_frames
from kripkit.frames import (
    BoundExceeded,
    IntFrame,
    MS4Frame,
    Relation,
    has_clean_clusters,
)
from kripkit.functors import sigma, skeleton, skeleton_map
from kripkit.morphisms import (
    FrameMap,
    condition4_eform,
    enumerate_reductions,
    is_mipc_morphism,
    is_ms4_morphism,
    is_p_morphism,
    is_reduction,
    lift_reduction,
)


def int_frames(bound: int) -> list[IntFrame]:
    return enumerate_frames(EnumerationConfig(kind="int", max_points=bound))


def ms4_frames(bound: int) -> list[MS4Frame]:
    return enumerate_frames(EnumerationConfig(kind="ms4", max_points=bound))


def all_maps(source, target):
    for image in product(range(target.n), repeat=source.n):
        yield FrameMap(source, target, image)


def identity_map(frame) -> FrameMap:
    return FrameMap(frame, frame, tuple(range(frame.n)))


# Set-based oracles, kept deliberately free of Relation's mask operations.


def p_morphism_oracle(f: FrameMap, which: str) -> bool:
    src = getattr(f.source, which)
    tgt = getattr(f.target, which)
    for x in range(f.source.n):
        forward = {f(y) for y in range(f.source.n) if src.has(x, y)}
        expected = {z for z in range(f.target.n) if tgt.has(f(x), z)}
        if forward != expected:
            return False
    return True


def converse_oracle(f: FrameMap) -> bool:
    """Coarse predecessors of the image equal order predecessors of the image
    of the coarse predecessors."""
    src, tgt = f.source, f.target
    for x in range(src.n):
        lhs = {w for w in range(tgt.n) if tgt.q.has(w, f(x))}
        mid = {f(y) for y in range(src.n) if src.q.has(y, x)}
        rhs = {w for w in range(tgt.n) if any(tgt.r.has(w, m) for m in mid)}
        if lhs != rhs:
            return False
    return True


def int_morphism_oracle(f: FrameMap) -> bool:
    return (
        p_morphism_oracle(f, "r")
        and p_morphism_oracle(f, "q")
        and converse_oracle(f)
    )


def chain_frame(n: int) -> IntFrame:
    r = Relation.from_pairs(
        n, [(i, i + 1) for i in range(n - 1)]
    ).reflexive_transitive_closure()
    return IntFrame(tuple(f"x{i}" for i in range(n)), r, r)


def test_map_application_and_description(witness_map):
    assert [witness_map(i) for i in range(3)] == [0, 1, 1]
    assert witness_map.describe() == "{a -> u, b -> v, c -> v}"


def test_apply_mask(witness_map):
    assert witness_map.apply_mask(0b000) == 0b00
    assert witness_map.apply_mask(0b001) == 0b01
    assert witness_map.apply_mask(0b110) == 0b10
    assert witness_map.apply_mask(0b111) == 0b11


def test_is_onto(three_point_frame, two_point_frame):
    assert FrameMap(three_point_frame, two_point_frame, (0, 1, 1)).is_onto()
    assert not FrameMap(three_point_frame, two_point_frame, (1, 1, 1)).is_onto()


def test_map_construction_rejects_bad_input(three_point_frame, two_point_frame, cluster_frame):
    with pytest.raises(ValueError, match="same kind"):
        FrameMap(three_point_frame, cluster_frame, (0, 0, 0))
    with pytest.raises(ValueError, match="cover every source point"):
        FrameMap(three_point_frame, two_point_frame, (0, 1))
    with pytest.raises(ValueError, match="out of range"):
        FrameMap(three_point_frame, two_point_frame, (0, 1, 2))


def test_p_morphism_matches_set_oracle():
    frames = int_frames(2)
    for source in frames:
        for target in frames:
            for f in all_maps(source, target):
                for which in ("r", "q"):
                    assert is_p_morphism(f, which) == p_morphism_oracle(f, which)
    modal = ms4_frames(2)
    for source in modal:
        for target in modal:
            for f in all_maps(source, target):
                for which in ("r", "e"):
                    assert is_p_morphism(f, which) == p_morphism_oracle(f, which)


def test_identity_maps_are_morphisms_and_reductions():
    for frame in int_frames(3):
        ident = identity_map(frame)
        assert is_mipc_morphism(ident)
        assert is_reduction(ident)
    for frame in ms4_frames(3):
        ident = identity_map(frame)
        assert is_ms4_morphism(ident)
        assert is_reduction(ident)


def test_witness_map_is_an_int_reduction(witness_map):
    assert is_mipc_morphism(witness_map)
    assert is_reduction(witness_map)
    assert int_morphism_oracle(witness_map)


def test_collapse_to_top_fails_on_the_coarse_relation(three_point_frame, two_point_frame):
    # The constant map onto the top point keeps the order condition but
    # breaks back-and-forth for q: the target cluster reaches u, the image
    # of the source cluster does not.
    collapse = FrameMap(three_point_frame, two_point_frame, (1, 1, 1))
    assert is_p_morphism(collapse, "r")
    assert not is_p_morphism(collapse, "q")
    assert not is_mipc_morphism(collapse)


def test_expansion_of_witness_map_is_not_modal(witness_map):
    source = sigma(witness_map.source)
    target = sigma(witness_map.target)
    expanded = FrameMap(source, target, witness_map.image)
    assert is_p_morphism(expanded, "r")
    assert not is_p_morphism(expanded, "e")
    assert not is_ms4_morphism(expanded)


def test_morphism_predicates_demand_matching_kind(witness_map, cluster_frame):
    modal_ident = identity_map(cluster_frame)
    with pytest.raises(ValueError, match="intuitionistic"):
        is_mipc_morphism(modal_ident)
    with pytest.raises(ValueError, match="modal"):
        is_ms4_morphism(witness_map)
    with pytest.raises(ValueError, match="intuitionistic"):
        condition4_eform(modal_ident)


def test_condition4_eform_holds_for_identities():
    for frame in int_frames(3):
        assert condition4_eform(identity_map(frame))


def test_condition4_eform_on_named_maps(witness_map, three_point_frame, two_point_frame):
    assert condition4_eform(witness_map)
    collapse = FrameMap(three_point_frame, two_point_frame, (1, 1, 1))
    # Both formulations agree on this map even though it is not a full
    # frame morphism.
    assert condition4_eform(collapse)
    assert converse_oracle(collapse)


def test_condition4_eform_matches_converse_condition_on_order_morphisms():
    frames = int_frames(3)
    checked = 0
    for source in frames:
        for target in frames:
            for f in all_maps(source, target):
                if is_p_morphism(f, "r"):
                    checked += 1
                    assert condition4_eform(f) == converse_oracle(f)
    assert checked > 2000


def test_condition4_eform_can_differ_without_the_order_condition():
    # Source: reflexive 2-chain with the top point below in both relations.
    # Target: discrete 2-point frame.  The inclusion-of-indices map is not a
    # p-morphism for r, and there the cluster form and the predecessor form
    # part ways.
    chain = Relation.from_pairs(2, [(0, 0), (1, 1), (1, 0)])
    source = IntFrame(("x0", "x1"), chain, chain)
    discrete = Relation.identity(2)
    target = IntFrame(("x0", "x1"), discrete, discrete)
    f = FrameMap(source, target, (0, 1))
    assert not is_p_morphism(f, "r")
    assert condition4_eform(f)
    assert not converse_oracle(f)


def test_enumerate_reductions_matches_brute_force(three_point_frame, two_point_frame):
    found = enumerate_reductions(three_point_frame, two_point_frame)
    assert [f.image for f in found] == [(0, 1, 1)]
    expected = [
        f
        for f in all_maps(three_point_frame, two_point_frame)
        if f.is_onto() and int_morphism_oracle(f)
    ]
    assert found == expected


def test_enumerate_self_reductions_contain_identity():
    for frame in int_frames(2) + ms4_frames(2):
        images = [f.image for f in enumerate_reductions(frame, frame)]
        assert tuple(range(frame.n)) in images


def test_enumerate_reductions_guards(three_point_frame, cluster_frame):
    with pytest.raises(ValueError, match="same kind"):
        enumerate_reductions(three_point_frame, cluster_frame)
    wide = chain_frame(7)
    with pytest.raises(BoundExceeded):
        enumerate_reductions(wide, chain_frame(2))


def test_lift_reduction_agrees_with_composition():
    targets = [f for f in int_frames(2) if has_clean_clusters(f)]
    checked = 0
    for modal in ms4_frames(3):
        quotient, projection = skeleton(modal)
        for target in targets:
            for f in enumerate_reductions(quotient, target):
                lifted = lift_reduction(modal, target, f)
                checked += 1
                assert lifted.source == modal
                assert lifted.target == sigma(target)
                assert is_reduction(lifted)
                assert lifted.image == tuple(
                    f.image[projection.class_index[x]] for x in range(modal.n)
                )
                # Taking the quotient of the lift gives back the original map.
                assert skeleton_map(lifted) == f
    assert checked > 50


def test_lift_reduction_requires_clean_target(three_point_frame):
    modal = sigma(three_point_frame)
    quotient, _ = skeleton(modal)
    ident = identity_map(quotient)
    assert not has_clean_clusters(three_point_frame)
    with pytest.raises(ValueError, match="clean clusters"):
        lift_reduction(modal, three_point_frame, ident)


def test_lift_reduction_checks_map_endpoints():
    target = chain_frame(2)
    modal = sigma(target)
    quotient, _ = skeleton(modal)
    other = chain_frame(1)
    with pytest.raises(ValueError, match="not the quotient"):
        lift_reduction(modal, target, FrameMap(other, target, (0,)))
    antichain = IntFrame(("x0", "x1"), Relation.identity(2), Relation.identity(2))
    with pytest.raises(ValueError, match="target mismatch"):
        lift_reduction(modal, antichain, FrameMap(quotient, target, (0, 1)))
    with pytest.raises(ValueError, match="not a reduction"):
        lift_reduction(modal, target, FrameMap(quotient, target, (0, 0)))
