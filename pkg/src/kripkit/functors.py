"""Constructions between the two frame kinds.

`skeleton` collapses the r-clusters of a modal frame into an intuitionistic
frame whose coarse relation records an r-step followed by an e-step.
`sigma` goes the other way, expanding an intuitionistic frame into a modal
one by taking the q-cluster equivalence.  On frames without proper clusters
the two constructions invert each other up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .frames import IntFrame, MS4Frame, Relation, bits, er, qe
from .morphisms import FrameMap, is_ms4_morphism


@dataclass(frozen=True)
class QuotientMap:
    """Projection of a modal frame onto its cluster quotient."""

    source: MS4Frame
    target: IntFrame
    class_index: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "classes": [
                [self.source.points[i] for i in members] for members in self.classes
            ],
        }


def skeleton(frame: MS4Frame) -> tuple[IntFrame, QuotientMap]:
    """Quotient a modal frame by its r-clusters.

    Classes are ordered by their smallest member and named by joining member
    names with "+".  The quotient order holds between classes when their
    representatives are r-related; the coarse relation holds when an r-step
    followed by an e-step connects them.
    """
    cluster = er(frame.r)
    class_index = [-1] * frame.n
    reps: list[int] = []
    for x in range(frame.n):
        if class_index[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for y in bits(cluster.rows[x]):
            class_index[y] = k
    classes = tuple(tuple(bits(cluster.rows[rep])) for rep in reps)
    m = len(reps)
    coarse = qe(frame.r, frame.e)
    r_rows = []
    q_rows = []
    for a in range(m):
        r_row = 0
        q_row = 0
        for b in range(m):
            if frame.r.has(reps[a], reps[b]):
                r_row |= 1 << b
            if coarse.has(reps[a], reps[b]):
                q_row |= 1 << b
        r_rows.append(r_row)
        q_rows.append(q_row)
    names = tuple(
        "+".join(frame.points[i] for i in members) for members in classes
    )
    quotient = IntFrame(names, Relation(m, tuple(r_rows)), Relation(m, tuple(q_rows)))
    return quotient, QuotientMap(frame, quotient, tuple(class_index), classes)


def skeleton_map(f: FrameMap) -> FrameMap:
    """Image of a modal morphism under the quotient construction."""
    if not isinstance(f.source, MS4Frame):
        raise ValueError("expected a map of modal frames")
    if not is_ms4_morphism(f):
        raise ValueError("map is not a modal frame morphism")
    quotient_s, pi_s = skeleton(f.source)
    quotient_t, pi_t = skeleton(f.target)
    image = []
    for members in pi_s.classes:
        targets = {pi_t.class_index[f.image[x]] for x in members}
        # A modal morphism keeps mutually r-related points mutually related.
        assert len(targets) == 1, "morphism split an r-cluster"
        image.append(targets.pop())
    return FrameMap(quotient_s, quotient_t, tuple(image))


def sigma(frame: IntFrame) -> MS4Frame:
    """Expand an intuitionistic frame: keep r, take the q-cluster
    equivalence as e."""
    return MS4Frame(frame.points, frame.r, frame.e_q())


def _relations(frame) -> tuple[Relation, Relation]:
    if isinstance(frame, IntFrame):
        return frame.r, frame.q
    return frame.r, frame.e


def find_isomorphism(a, b) -> tuple[int, ...] | None:
    """First bijection (in lexicographic order of the image tuple) matching
    both relations in both directions, or None."""
    if type(a) is not type(b):
        raise ValueError("frames must be of the same kind")
    if a.n != b.n:
        return None
    rels_a = _relations(a)
    rels_b = _relations(b)

    def signature(rels, x):
        return tuple(
            (rel.rows[x].bit_count(), rel.preimage(1 << x).bit_count()) for rel in rels
        )

    inv_a = [signature(rels_a, x) for x in range(a.n)]
    inv_b = [signature(rels_b, x) for x in range(b.n)]
    if sorted(inv_a) != sorted(inv_b):
        return None
    n = a.n
    image = [-1] * n
    used = [False] * n

    def extend(x: int) -> bool:
        if x == n:
            return True
        for y in range(n):
            if used[y] or inv_a[x] != inv_b[y]:
                continue
            ok = all(
                ra.has(x, x) == rb.has(y, y)
                and all(
                    ra.has(x, z) == rb.has(y, image[z])
                    and ra.has(z, x) == rb.has(image[z], y)
                    for z in range(x)
                )
                for ra, rb in zip(rels_a, rels_b)
            )
            if ok:
                image[x] = y
                used[y] = True
                if extend(x + 1):
                    return True
                image[x] = -1
                used[y] = False
        return False

    if extend(0):
        return tuple(image)
    return None
