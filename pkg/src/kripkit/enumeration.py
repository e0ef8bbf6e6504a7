"""Frame generation up to isomorphism.

Labeled orders are produced by a one-point-extension recursion: a quasi-order
on m points extends one on m-1 points either by adding the new point to an
existing cluster or by inserting it as a fresh singleton between a downset
and an upset.  Every labeled order arises exactly once.  Equivalences come
from restricted growth strings.  Frames are then deduplicated by a canonical
form: the minimum, over all point permutations, of the relabeled relation
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from . import semantics, syntax
from .frames import BoundExceeded, IntFrame, MS4Frame, Relation, bits, qe

MAX_ENUM_POINTS = 5
CANONICAL_MAX = 7

FILTERS = ("m_plus", "mgrz", "m_plus_grz")
_INT_FILTERS = frozenset(("m_plus",))
_MS4_FILTERS = frozenset(("mgrz", "m_plus_grz"))


@dataclass(frozen=True)
class EnumerationConfig:
    """What to enumerate: frame kind, size ceiling, optional logic filters."""

    kind: str
    max_points: int
    filters: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.kind not in ("int", "ms4"):
            raise ValueError(f"unknown frame kind {self.kind!r}")
        if not 1 <= self.max_points <= MAX_ENUM_POINTS:
            raise BoundExceeded(
                f"enumeration size {self.max_points} outside 1..{MAX_ENUM_POINTS}"
            )
        allowed = _INT_FILTERS if self.kind == "int" else _MS4_FILTERS
        for name in self.filters:
            if name not in FILTERS:
                raise ValueError(f"unknown filter {name!r}")
            if name not in allowed:
                raise ValueError(f"filter {name!r} does not apply to {self.kind} frames")


def _extend_with_cluster_point(rel: Relation, member: int) -> Relation:
    """New point joins the cluster of `member`: same row plus the mutual
    pair, same column entries as `member`."""
    m = rel.n
    new_bit = 1 << m
    rows = [
        row | (new_bit if row >> member & 1 else 0) for row in rel.rows
    ]
    rows.append(rel.rows[member] | new_bit)
    return Relation(m + 1, tuple(rows))


def _extend_with_singleton(rel: Relation, down: int, up: int) -> Relation:
    """New point above `down`, below `up`, in a cluster of its own."""
    m = rel.n
    new_bit = 1 << m
    rows = [row | (new_bit if down >> i & 1 else 0) for i, row in enumerate(rel.rows)]
    rows.append(up | new_bit)
    return Relation(m + 1, tuple(rows))


def _downsets(rel: Relation) -> list[int]:
    return [m for m in range(1 << rel.n) if rel.preimage(m) & ~m == 0]


def _upsets(rel: Relation) -> list[int]:
    return [m for m in range(1 << rel.n) if rel.image(m) & ~m == 0]


def _orders(n: int, with_clusters: bool) -> list[Relation]:
    if n == 0:
        return [Relation(0, ())]
    out = []
    for rel in _orders(n - 1, with_clusters):
        if with_clusters:
            # One extension per existing cluster, keyed by its least member.
            seen = 0
            for x in range(rel.n):
                if seen >> x & 1:
                    continue
                cluster = rel.rows[x] & rel.preimage(1 << x)
                seen |= cluster
                out.append(_extend_with_cluster_point(rel, x))
        downsets = _downsets(rel)
        upsets = _upsets(rel)
        for down in downsets:
            for up in upsets:
                if down & up:
                    continue
                # Transitivity through the new point: down x up must be
                # already related.
                if any(up & ~rel.rows[x] for x in bits(down)):
                    continue
                out.append(_extend_with_singleton(rel, down, up))
    return out


def partial_orders(n: int) -> list[Relation]:
    """All labeled partial orders on n points, each exactly once."""
    return _orders(n, with_clusters=False)


def quasi_orders(n: int) -> list[Relation]:
    """All labeled quasi-orders (reflexive transitive relations) on n points."""
    return _orders(n, with_clusters=True)


def equivalences(n: int) -> list[Relation]:
    """All labeled equivalence relations on n points, via restricted growth
    strings."""
    out = []

    def grow(prefix: list[int], used: int) -> None:
        if len(prefix) == n:
            classes: dict[int, int] = {}
            for i, c in enumerate(prefix):
                classes[c] = classes.get(c, 0) | 1 << i
            rows = [classes[c] for c in prefix]
            out.append(Relation(n, tuple(rows)))
            return
        for c in range(used + 1):
            prefix.append(c)
            grow(prefix, max(used, c + 1))
            prefix.pop()

    grow([], 0)
    return out


def commuting(r: Relation, e: Relation) -> bool:
    """An e-step then an r-step can always be matched by an r-step then an
    e-step."""
    return all(
        r.image(e.rows[x]) & ~e.image(r.rows[x]) == 0 for x in range(r.n)
    )


def _labeled_frames(kind: str, n: int):
    names = tuple(f"x{i}" for i in range(n))
    eqs = equivalences(n)
    if kind == "ms4":
        for r in quasi_orders(n):
            for e in eqs:
                if commuting(r, e):
                    yield MS4Frame(names, r, e)
    else:
        # With r a partial order, pairing r with a commuting equivalence e
        # and coarsening to q = r-then-e yields each valid (r, q) exactly
        # once: e is recovered from q as its cluster equivalence.
        for r in partial_orders(n):
            for e in eqs:
                if commuting(r, e):
                    yield IntFrame(names, r, qe(r, e))


def _relation_list(frame) -> tuple[Relation, Relation]:
    if isinstance(frame, IntFrame):
        return frame.r, frame.q
    return frame.r, frame.e


def canonical_form(frame) -> bytes:
    """Isomorphism-invariant key: kind, size, and the minimum over all point
    relabelings of the packed relation rows."""
    perm, encoding = _canonical(frame)
    kind = b"I" if isinstance(frame, IntFrame) else b"M"
    return kind + bytes([frame.n]) + encoding


def _canonical(frame) -> tuple[tuple[int, ...], bytes]:
    n = frame.n
    if n > CANONICAL_MAX:
        raise BoundExceeded(f"canonical form capped at {CANONICAL_MAX} points")
    rels = _relation_list(frame)
    best_perm = None
    best = None
    for perm in permutations(range(n)):
        # perm[a] is the original index shown at position a.
        encoding = bytes(
            sum(1 << b for b in range(n) if rel.has(perm[a], perm[b]))
            for rel in rels
            for a in range(n)
        )
        if best is None or encoding < best:
            best = encoding
            best_perm = perm
    return best_perm, best


def _relabel(frame) -> "IntFrame | MS4Frame":
    """Canonical representative: relabel points along the minimizing
    permutation and rename them x0, x1, ..."""
    perm, _ = _canonical(frame)
    n = frame.n
    names = tuple(f"x{i}" for i in range(n))
    rels = _relation_list(frame)
    new_rels = [
        Relation(
            n,
            tuple(
                sum(1 << b for b in range(n) if rel.has(perm[a], perm[b]))
                for a in range(n)
            ),
        )
        for rel in rels
    ]
    if isinstance(frame, IntFrame):
        return IntFrame(names, new_rels[0], new_rels[1])
    return MS4Frame(names, new_rels[0], new_rels[1])


def _casari_image_valid(frame: MS4Frame) -> bool:
    translated = syntax.corpus("casari_translated")[0]
    return semantics.frame_validates(frame, translated, point_cap=frame.n)


def _passes_filters(frame, filters: frozenset[str]) -> bool:
    from .frames import has_clean_clusters, is_finite_mgrz

    for name in sorted(filters):
        if name == "m_plus" and not has_clean_clusters(frame):
            return False
        if name == "mgrz" and not is_finite_mgrz(frame):
            return False
        if name == "m_plus_grz" and not _casari_image_valid(frame):
            return False
    return True


def enumerate_frames(config: EnumerationConfig) -> list:
    """Frames of the requested kind with 1..max_points points, one per
    isomorphism class, filtered and deterministically ordered by size then
    canonical form."""
    out = []
    for n in range(1, config.max_points + 1):
        reps: dict[bytes, object] = {}
        for frame in _labeled_frames(config.kind, n):
            key = canonical_form(frame)
            if key not in reps:
                reps[key] = _relabel(frame)
        for key in sorted(reps):
            frame = reps[key]
            if _passes_filters(frame, config.filters):
                out.append(frame)
    return out
