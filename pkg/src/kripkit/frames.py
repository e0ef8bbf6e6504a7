"""Finite birelational frames.

Two kinds of frame, both over a finite point set carried as a name list:

- `IntFrame` (X, R, Q): R a partial order, Q a quasi-order containing R,
  with every Q-step decomposable into an R-step followed by a step inside a
  Q-cluster.
- `MS4Frame` (Y, R, E): R a quasi-order, E an equivalence, commuting in the
  sense that an E-step followed by an R-step can be replaced by an R-step
  followed by an E-step.

Relations are stored as bitmask rows: bit j of `rows[i]` is set iff i is
related to j.  Everything here is exhaustive search over points, so sizes are
capped at MAX_POINTS.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_POINTS = 12


class BoundExceeded(ValueError):
    """A size cap was hit; raise instead of attempting a huge search."""


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class Relation:
    """Binary relation on {0, ..., n-1} as a tuple of row bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_POINTS:
            raise BoundExceeded(f"relation size {self.n} exceeds cap {MAX_POINTS}")
        if len(self.rows) != self.n:
            raise ValueError("row count must equal n")
        full = (1 << self.n) - 1
        for row in self.rows:
            if row & ~full:
                raise ValueError("row has bits outside the point range")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * n
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i}, {j}) out of range for n={n}")
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def total(cls, n: int) -> "Relation":
        full = (1 << n) - 1
        return cls(n, (full,) * n)

    def has(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.rows[i])]

    def image(self, mask: int) -> int:
        """All points reachable in one step from `mask`."""
        out = 0
        for i in bits(mask):
            out |= self.rows[i]
        return out

    def preimage(self, mask: int) -> int:
        """All points that reach `mask` in one step."""
        out = 0
        for i in range(self.n):
            if self.rows[i] & mask:
                out |= 1 << i
        return out

    def converse(self) -> "Relation":
        return Relation(self.n, tuple(self.preimage(1 << j) for j in range(self.n)))

    def compose(self, other: "Relation") -> "Relation":
        """x (self;other) z iff x self y and y other z for some y."""
        return Relation(self.n, tuple(other.image(row) for row in self.rows))

    def union(self, other: "Relation") -> "Relation":
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def meet(self, other: "Relation") -> "Relation":
        return Relation(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def contains(self, other: "Relation") -> bool:
        return all(o & ~s == 0 for s, o in zip(self.rows, other.rows))

    def is_reflexive(self) -> bool:
        return all(row >> i & 1 for i, row in enumerate(self.rows))

    def is_symmetric(self) -> bool:
        return self == self.converse()

    def is_antisymmetric(self) -> bool:
        return all(
            not (self.has(i, j) and self.has(j, i))
            for i, j in combinations(range(self.n), 2)
        )

    def is_transitive(self) -> bool:
        return all(self.image(row) & ~row == 0 for row in self.rows)

    def is_quasi_order(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_partial_order(self) -> bool:
        return self.is_quasi_order() and self.is_antisymmetric()

    def is_equivalence(self) -> bool:
        return self.is_quasi_order() and self.is_symmetric()

    def reflexive_transitive_closure(self) -> "Relation":
        rows = [row | 1 << i for i, row in enumerate(self.rows)]
        changed = True
        while changed:
            changed = False
            for i in range(self.n):
                grown = rows[i]
                for j in bits(rows[i]):
                    grown |= rows[j]
                if grown != rows[i]:
                    rows[i] = grown
                    changed = True
        return Relation(self.n, tuple(rows))


def er(rel: Relation) -> Relation:
    """Cluster equivalence of a quasi-order: both-ways reachability."""
    if not rel.is_quasi_order():
        raise ValueError("cluster equivalence needs a quasi-order")
    return rel.meet(rel.converse())


def qe(r: Relation, e: Relation) -> Relation:
    """Composite step: first r, then e.  Used to recover the coarse
    quasi-order of an intuitionistic frame from a modal one."""
    return r.compose(e)


@dataclass(frozen=True)
class Violation:
    """One failed frame condition with a concrete witness tuple."""

    condition: str
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def require_ok(self) -> None:
        if self.violations:
            raise InvalidFrameError(self)

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"condition": v.condition, "witness": list(v.witness), "detail": v.detail}
                for v in self.violations
            ],
        }


class InvalidFrameError(ValueError):
    def __init__(self, report: ValidationReport):
        lines = ", ".join(
            f"{v.condition}{v.witness}" for v in report.violations
        )
        super().__init__(f"invalid frame: {lines}")
        self.report = report


def _check_names(points: tuple[str, ...]) -> None:
    if not points:
        raise ValueError("a frame needs at least one point")
    if len(points) > MAX_POINTS:
        raise BoundExceeded(f"{len(points)} points exceeds cap {MAX_POINTS}")
    if len(set(points)) != len(points):
        raise ValueError("point names must be distinct")


@dataclass(frozen=True)
class IntFrame:
    """Intuitionistic frame: partial order `r` inside quasi-order `q`."""

    points: tuple[str, ...]
    r: Relation
    q: Relation

    def __post_init__(self) -> None:
        _check_names(self.points)
        if self.r.n != len(self.points) or self.q.n != len(self.points):
            raise ValueError("relation size must match the point count")

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, name: str) -> int:
        return self.points.index(name)

    def e_q(self) -> Relation:
        """Equivalence of mutual Q-reachability (Q-cluster relation)."""
        return self.q.meet(self.q.converse())


@dataclass(frozen=True)
class MS4Frame:
    """Modal frame: quasi-order `r` plus commuting equivalence `e`."""

    points: tuple[str, ...]
    r: Relation
    e: Relation

    def __post_init__(self) -> None:
        _check_names(self.points)
        if self.r.n != len(self.points) or self.e.n != len(self.points):
            raise ValueError("relation size must match the point count")

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, name: str) -> int:
        return self.points.index(name)


def _reflexive_witness(rel: Relation) -> tuple[int, ...] | None:
    for i in range(rel.n):
        if not rel.has(i, i):
            return (i,)
    return None


def _transitive_witness(rel: Relation) -> tuple[int, ...] | None:
    for i in range(rel.n):
        for j in bits(rel.rows[i]):
            missing = rel.rows[j] & ~rel.rows[i]
            if missing:
                return (i, j, next(bits(missing)))
    return None


def _antisymmetric_witness(rel: Relation) -> tuple[int, ...] | None:
    for i, j in combinations(range(rel.n), 2):
        if rel.has(i, j) and rel.has(j, i):
            return (i, j)
    return None


def _symmetric_witness(rel: Relation) -> tuple[int, ...] | None:
    for i in range(rel.n):
        for j in bits(rel.rows[i]):
            if not rel.has(j, i):
                return (i, j)
    return None


def _subset_witness(sub: Relation, sup: Relation) -> tuple[int, ...] | None:
    for i in range(sub.n):
        extra = sub.rows[i] & ~sup.rows[i]
        if extra:
            return (i, next(bits(extra)))
    return None


def validate_int_frame(frame: IntFrame) -> ValidationReport:
    """Check the intuitionistic frame conditions, reporting each failure with
    a witness: r partial order, q quasi-order, r within q, and every q-step
    an r-step followed by a hop inside a q-cluster."""
    out: list[Violation] = []

    def add(condition: str, witness: tuple[int, ...] | None, detail: str) -> None:
        if witness is not None:
            out.append(Violation(condition, witness, detail))

    r, q = frame.r, frame.q
    add("r-reflexive", _reflexive_witness(r), "point not r-related to itself")
    add("r-transitive", _transitive_witness(r), "r misses a composite step")
    add("r-antisymmetric", _antisymmetric_witness(r), "r has a two-point cycle")
    add("q-reflexive", _reflexive_witness(q), "point not q-related to itself")
    add("q-transitive", _transitive_witness(q), "q misses a composite step")
    add("r-subset-q", _subset_witness(r, q), "r-step missing from q")
    if not out:
        # Every q-successor must be reachable as an r-step into its q-cluster.
        eq = frame.e_q()
        for x in range(frame.n):
            reachable = eq.image(r.rows[x])
            missing = q.rows[x] & ~reachable
            if missing:
                add(
                    "q-witness",
                    (x, next(bits(missing))),
                    "q-step with no r-then-cluster decomposition",
                )
                break
    return ValidationReport(tuple(out))


def validate_ms4_frame(frame: MS4Frame) -> ValidationReport:
    """Check the modal frame conditions with witnesses: r quasi-order, e an
    equivalence, and e-then-r coverable by r-then-e."""
    out: list[Violation] = []

    def add(condition: str, witness: tuple[int, ...] | None, detail: str) -> None:
        if witness is not None:
            out.append(Violation(condition, witness, detail))

    r, e = frame.r, frame.e
    add("r-reflexive", _reflexive_witness(r), "point not r-related to itself")
    add("r-transitive", _transitive_witness(r), "r misses a composite step")
    add("e-reflexive", _reflexive_witness(e), "point not e-related to itself")
    add("e-symmetric", _symmetric_witness(e), "e-step with no reverse")
    add("e-transitive", _transitive_witness(e), "e misses a composite step")
    if not out:
        for x in range(frame.n):
            # e-step then r-step from x, versus r-step then e-step.
            around = e.image(r.image(1 << x))
            for y in bits(e.rows[x]):
                missing = r.rows[y] & ~around
                if missing:
                    add(
                        "commute",
                        (x, y, next(bits(missing))),
                        "e-then-r step that r-then-e cannot match",
                    )
                    break
            else:
                continue
            break
    return ValidationReport(tuple(out))


def has_clean_clusters(frame: IntFrame) -> bool:
    """True when a strict r-step never stays inside a q-cluster."""
    eq = frame.e_q()
    return all(
        frame.r.rows[x] & eq.rows[x] == 1 << x for x in range(frame.n)
    )


def max_points(rel: Relation, subset: Iterable[int]) -> list[int]:
    """Maximal elements of `subset` under `rel`: points whose only successor
    inside the subset is themselves.  Inside a proper cluster this is empty,
    which is what makes `grz_max_check` detect clusters."""
    mask = mask_of(subset)
    return [x for x in bits(mask) if rel.rows[x] & mask & ~(1 << x) == 0]


def grz_max_check(rel: Relation) -> bool:
    """Every nonempty subset lies below its own maximal points.

    For a finite quasi-order this holds exactly when `rel` is antisymmetric,
    i.e. when there are no proper clusters.
    """
    if not rel.is_quasi_order():
        raise ValueError("check needs a quasi-order")
    for subset in range(1, 1 << rel.n):
        upper = rel.preimage(mask_of(max_points(rel, bits(subset))))
        if subset & ~upper:
            return False
    return True


def is_finite_mgrz(frame: MS4Frame) -> bool:
    """True when the frame's r has no proper clusters (r antisymmetric)."""
    return frame.r.is_antisymmetric()


# --- JSON form ---------------------------------------------------------------
#
# {"kind": "int"|"ms4", "points": [names], "R": [[i,j],...], "Q"/"E": [...]}
# with index pairs.  Key names are part of the external interface.


def frame_to_json_dict(frame: IntFrame | MS4Frame) -> dict:
    if isinstance(frame, IntFrame):
        return {
            "kind": "int",
            "points": list(frame.points),
            "R": [list(p) for p in frame.r.pairs()],
            "Q": [list(p) for p in frame.q.pairs()],
        }
    return {
        "kind": "ms4",
        "points": list(frame.points),
        "R": [list(p) for p in frame.r.pairs()],
        "E": [list(p) for p in frame.e.pairs()],
    }


def _relation_from_json(n: int, pairs, label: str) -> Relation:
    if not isinstance(pairs, list):
        raise ValueError(f"{label} must be a list of index pairs")
    cleaned = []
    for entry in pairs:
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise ValueError(f"{label} entries must be [i, j] index pairs")
        cleaned.append((entry[0], entry[1]))
    return Relation.from_pairs(n, cleaned)


def frame_from_json_dict(data: dict, validate: bool = True) -> IntFrame | MS4Frame:
    """Rebuild a frame from its JSON form.

    With `validate` (the default) the frame conditions are checked and an
    InvalidFrameError carrying the first witnesses is raised on failure.
    """
    if not isinstance(data, dict):
        raise ValueError("frame JSON must be an object")
    kind = data.get("kind")
    if kind not in ("int", "ms4"):
        raise ValueError("frame JSON needs \"kind\": \"int\" or \"ms4\"")
    points = data.get("points")
    if (
        not isinstance(points, list)
        or not points
        or not all(isinstance(p, str) for p in points)
    ):
        raise ValueError("frame JSON needs a nonempty list of point names")
    n = len(points)
    second_key = "Q" if kind == "int" else "E"
    if "R" not in data or second_key not in data:
        raise ValueError(f"frame JSON needs \"R\" and \"{second_key}\"")
    r = _relation_from_json(n, data["R"], "R")
    second = _relation_from_json(n, data[second_key], second_key)
    if kind == "int":
        frame: IntFrame | MS4Frame = IntFrame(tuple(points), r, second)
        report = validate_int_frame(frame) if validate else None
    else:
        frame = MS4Frame(tuple(points), r, second)
        report = validate_ms4_frame(frame) if validate else None
    if report is not None:
        report.require_ok()
    return frame
