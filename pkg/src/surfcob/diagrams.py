"""Double point diagram calculus.

An immersed collection of surface components is recorded combinatorially:
components sit in columns (two or three), each transverse double point is an
arc joining two component slots, and a total sign table assigns every
(point, component) pair a unit.  Component C must end up with signed count
sum_i P^C_i * eps^C_i equal to its target.

Three moves transform a table without changing any component sum: a finger
move creates a +1/-1 pair of points between two columns, swap_signs exchanges
two opposite entries of equal multiplicity on one component, and flip_zero
negates an entry of multiplicity zero.  normalize drives any feasible diagram
to a state where all components agree at every point, recording a replayable
move trace; oracle_assign brute-forces uniform sign vectors directly and is
the independent ground truth at small sizes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from ._kernels import mask_to_signs, search_uniform_mask
from .errors import (
    InputError,
    InternalLogicError,
    MoveError,
    ParityError,
    SizeLimitError,
)

MODE_TWO = "two_column"
MODE_THREE = "three_column"

ORACLE_MAX_POINTS = 24

TYPE_I = "I"
TYPE_II = "II"
TYPE_III = "III"
TYPE_IV = "IV"


@dataclass(frozen=True)
class Component:
    """One surface component: a column slot and a signed-count target."""

    id: str
    column: int
    target: int


@dataclass(frozen=True)
class DoublePoint:
    """One transverse double point; ends name the two component slots it
    joins (equal entries make a self point of multiplicity two)."""

    id: str
    ends: tuple[str, str]

    def __post_init__(self):
        ends = tuple(self.ends)
        if len(ends) != 2:
            raise InputError(f"double point {self.id!r} needs exactly 2 ends")
        object.__setattr__(self, "ends", tuple(sorted(ends)))


@dataclass(frozen=True)
class DoublePointDiagram:
    mode: str
    components: tuple[Component, ...]
    double_points: tuple[DoublePoint, ...] = ()

    _comp_by_id: dict = field(init=False, repr=False, compare=False, default=None)
    _point_by_id: dict = field(init=False, repr=False, compare=False, default=None)
    _mult: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "double_points", tuple(self.double_points))
        if self.mode not in (MODE_TWO, MODE_THREE):
            raise InputError(f"unknown diagram mode {self.mode!r}")
        n_columns = 2 if self.mode == MODE_TWO else 3
        comp_by_id = {}
        for comp in self.components:
            if comp.id in comp_by_id:
                raise InputError(f"duplicate component id {comp.id!r}")
            if not 0 <= comp.column < n_columns:
                raise InputError(
                    f"component {comp.id!r}: column {comp.column} out of range "
                    f"for {self.mode}"
                )
            comp_by_id[comp.id] = comp
        point_by_id = {}
        mult = {}
        for pt in self.double_points:
            if pt.id in point_by_id:
                raise InputError(f"duplicate double point id {pt.id!r}")
            for end in pt.ends:
                if end not in comp_by_id:
                    raise InputError(
                        f"double point {pt.id!r} references unknown component "
                        f"{end!r}"
                    )
                key = (pt.id, end)
                mult[key] = mult.get(key, 0) + 1
            point_by_id[pt.id] = pt
        columns_used = {c.column for c in self.components}
        degenerate = self.mode == MODE_THREE and len(self.components) == 1
        if self.components and not degenerate:
            if len(columns_used) < n_columns:
                raise InputError(
                    f"{self.mode} needs every column populated "
                    f"(a lone component in {MODE_THREE} is the only exception)"
                )
        object.__setattr__(self, "_comp_by_id", comp_by_id)
        object.__setattr__(self, "_point_by_id", point_by_id)
        object.__setattr__(self, "_mult", mult)

    def is_degenerate(self) -> bool:
        """Single-component three-column diagram; the one shape where a
        component fingers through itself."""
        return self.mode == MODE_THREE and len(self.components) == 1

    def component(self, cid: str) -> Component:
        try:
            return self._comp_by_id[cid]
        except KeyError:
            raise InputError(f"unknown component {cid!r}") from None

    def point(self, pid: str) -> DoublePoint:
        try:
            return self._point_by_id[pid]
        except KeyError:
            raise InputError(f"unknown double point {pid!r}") from None

    def multiplicity(self, pid: str, cid: str) -> int:
        self.point(pid)
        self.component(cid)
        return self._mult.get((pid, cid), 0)

    def component_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def point_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.double_points)

    def point_column(self, pid: str) -> Optional[int]:
        """The common column of a within-column point, None for a cross
        point."""
        pt = self.point(pid)
        col0 = self.component(pt.ends[0]).column
        col1 = self.component(pt.ends[1]).column
        return col0 if col0 == col1 else None


def p_count(d: DoublePointDiagram, cid: str) -> int:
    """Total multiplicity of a component over all double points."""
    d.component(cid)
    return sum(d._mult.get((pt.id, cid), 0) for pt in d.double_points)


class SignTable:
    """Total sign assignment: one unit for every (double point, component)
    pair, incident or not."""

    __slots__ = ("_entries",)

    def __init__(self, diagram: DoublePointDiagram, entries):
        if hasattr(entries, "items"):
            items = entries.items()
        else:
            items = {(pid, cid): s for pid, cid, s in entries}.items()
        table = {}
        for key, sign in items:
            pid, cid = key
            if sign not in (1, -1):
                raise InputError(f"sign table entry {key} must be +1 or -1")
            table[(pid, cid)] = sign
        expected = {
            (pt.id, comp.id)
            for pt in diagram.double_points
            for comp in diagram.components
        }
        if set(table) != expected:
            missing = sorted(expected - set(table))[:3]
            extra = sorted(set(table) - expected)[:3]
            raise InputError(
                f"sign table must be total: missing {missing}, stray {extra}"
            )
        self._entries = table

    def sign(self, pid: str, cid: str) -> int:
        try:
            return self._entries[(pid, cid)]
        except KeyError:
            raise InputError(f"no sign entry for {(pid, cid)}") from None

    def as_dict(self) -> dict:
        return dict(self._entries)

    def sorted_items(self) -> tuple[tuple[str, str, int], ...]:
        return tuple(
            (pid, cid, s) for (pid, cid), s in sorted(self._entries.items())
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, SignTable) and self._entries == other._entries

    def __repr__(self) -> str:
        return f"SignTable({len(self._entries)} entries)"


def component_sum(d: DoublePointDiagram, eps: SignTable, cid: str) -> int:
    """Signed count sum_i P^C_i * eps^C_i for one component."""
    d.component(cid)
    return sum(
        d._mult.get((pt.id, cid), 0) * eps.sign(pt.id, cid)
        for pt in d.double_points
    )


def classify_type(d: DoublePointDiagram, eps: SignTable, pid: str) -> str:
    """Sign-disagreement class of one double point.

    I: every component carries the same sign.  II: disagreements exist but
    only between pairs where at least one side has multiplicity zero.  III:
    the incident pair disagrees and sits in two distinct columns.  IV: the
    incident pair disagrees within a single column.
    """
    pt = d.point(pid)
    signs = {comp.id: eps.sign(pid, comp.id) for comp in d.components}
    if len(set(signs.values())) <= 1:
        return TYPE_I
    e0, e1 = pt.ends
    if e0 != e1 and signs[e0] != signs[e1]:
        if d.component(e0).column == d.component(e1).column:
            return TYPE_IV
        return TYPE_III
    return TYPE_II


def parity_valid(d: DoublePointDiagram) -> bool:
    """Necessary condition t_C = P^C mod 2 for every component; no move
    changes either side's parity."""
    return all((p_count(d, c.id) - c.target) % 2 == 0 for c in d.components)


def _total_congruence_holds(d: DoublePointDiagram) -> bool:
    total = sum(c.target for c in d.components)
    return (total - 2 * len(d.double_points)) % 4 == 0


def _within_point_ids(d: DoublePointDiagram) -> list[str]:
    return [p.id for p in d.double_points if d.point_column(p.id) is not None]


def _column_delta(d: DoublePointDiagram) -> int:
    col0 = sum(c.target for c in d.components if c.column == 0)
    col1 = sum(c.target for c in d.components if c.column == 1)
    return col0 - col1


def feasible_three(d: DoublePointDiagram) -> bool:
    """Aggregate congruence: sum of targets = 2n mod 4, n the point count.

    Raises ParityError when the per-component parity condition fails, so a
    False return always means the congruence itself is violated.
    """
    if not parity_valid(d):
        raise ParityError("parity condition t_C = P^C mod 2 fails")
    return _total_congruence_holds(d)


def feasible_two(d: DoublePointDiagram) -> bool:
    """Two-column feasibility: the aggregate congruence plus the column
    difference test.

    With T within-column points and Delta the column-0 target sum minus the
    column-1 target sum, requires Delta = 2T mod 4 and |Delta| <= 2T.
    """
    if d.mode != MODE_TWO:
        raise InputError("feasible_two applies to two_column diagrams only")
    if not parity_valid(d):
        raise ParityError("parity condition t_C = P^C mod 2 fails")
    if not _total_congruence_holds(d):
        return False
    t_within = len(_within_point_ids(d))
    delta = _column_delta(d)
    return (delta - 2 * t_within) % 4 == 0 and abs(delta) <= 2 * t_within


def oracle_assign(d: DoublePointDiagram) -> Optional[tuple[int, ...]]:
    """Exhaustively search uniform sign vectors; first satisfying vector in
    lexicographic order (+1 before -1, first declared point most significant)
    or None.

    The search space is 2**n, capped at n = 24 points.
    """
    n = len(d.double_points)
    if n > ORACLE_MAX_POINTS:
        raise SizeLimitError(
            f"oracle searches at most 2**{ORACLE_MAX_POINTS} vectors, "
            f"got {n} double points"
        )
    comps = d.components
    p = np.zeros((len(comps), n), dtype=np.int64)
    for ci, comp in enumerate(comps):
        for pi, pt in enumerate(d.double_points):
            p[ci, pi] = d._mult.get((pt.id, comp.id), 0)
    targets = np.array([c.target for c in comps], dtype=np.int64)
    if not comps:
        return mask_to_signs(0, n)
    mask = search_uniform_mask(p, targets)
    if mask < 0:
        return None
    return mask_to_signs(mask, n)


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class MoveRecord:
    """One applied move, with enough detail to replay it verbatim."""

    kind: str
    component: str
    other: Optional[str] = None
    point_i: Optional[str] = None
    point_j: Optional[str] = None
    new_plus: Optional[str] = None
    new_minus: Optional[str] = None

    def to_json_dict(self) -> dict:
        out = {"move": self.kind, "component": self.component}
        if self.other is not None:
            out["other"] = self.other
        if self.point_i is not None:
            out["point_i"] = self.point_i
        if self.point_j is not None:
            out["point_j"] = self.point_j
        if self.new_plus is not None:
            out["new_plus"] = self.new_plus
        if self.new_minus is not None:
            out["new_minus"] = self.new_minus
        return out

    @staticmethod
    def from_json_dict(data: dict) -> "MoveRecord":
        return MoveRecord(
            kind=data["move"],
            component=data["component"],
            other=data.get("other"),
            point_i=data.get("point_i"),
            point_j=data.get("point_j"),
            new_plus=data.get("new_plus"),
            new_minus=data.get("new_minus"),
        )


def _fresh_point_ids(used: set, count: int) -> list[str]:
    out = []
    k = 1
    while len(out) < count:
        cand = f"fm{k}"
        if cand not in used:
            out.append(cand)
            used = used | {cand}
        k += 1
    return out


def _check_finger_columns(d: DoublePointDiagram, c: str, other: str) -> None:
    col_c = d.component(c).column
    col_o = d.component(other).column
    if d.is_degenerate():
        return
    if col_c == col_o:
        if d.mode == MODE_TWO:
            raise MoveError(
                f"finger move needs distinct columns, {c!r} and {other!r} "
                f"share column {col_c}"
            )
        raise MoveError(
            f"finger move needs distinct columns, {c!r} and {other!r} share "
            f"column {col_c}; route through a mediating component in another "
            f"column with two moves"
        )


def _apply_move(
    d: DoublePointDiagram, entries: dict, record: MoveRecord
) -> tuple[DoublePointDiagram, dict]:
    """Apply one move to (diagram, partial-or-total table entries).

    Used both by the public move functions and by trace replay, so the two
    can never drift apart.
    """
    if record.kind == "finger_move":
        c, other = record.component, record.other
        _check_finger_columns(d, c, other)
        used = set(d.point_ids())
        for nid in (record.new_plus, record.new_minus):
            if nid is None:
                raise MoveError("finger move record lacks new point ids")
            if nid in used:
                raise MoveError(f"new point id {nid!r} already in use")
            used.add(nid)
        plus = DoublePoint(record.new_plus, (c, other))
        minus = DoublePoint(record.new_minus, (c, other))
        d2 = DoublePointDiagram(
            d.mode, d.components, d.double_points + (plus, minus)
        )
        entries2 = dict(entries)
        for comp in d.components:
            entries2[(plus.id, comp.id)] = 1
            entries2[(minus.id, comp.id)] = -1
        return d2, entries2
    if record.kind == "swap_signs":
        c, i, j = record.component, record.point_i, record.point_j
        if i == j:
            raise MoveError("swap_signs needs two distinct double points")
        mi = d.multiplicity(i, c)
        mj = d.multiplicity(j, c)
        if mi != mj:
            raise MoveError(
                f"swap_signs needs equal multiplicities, got P={mi} at {i!r} "
                f"and P={mj} at {j!r} on {c!r}"
            )
        si = entries.get((i, c))
        sj = entries.get((j, c))
        if si is None or sj is None:
            raise MoveError("swap_signs touched entries outside the table")
        if si != -sj:
            raise MoveError(
                f"swap_signs needs opposite signs, both entries are {si:+d}"
            )
        entries2 = dict(entries)
        entries2[(i, c)] = sj
        entries2[(j, c)] = si
        return d, entries2
    if record.kind == "flip_zero":
        c, i = record.component, record.point_i
        if d.multiplicity(i, c) != 0:
            raise MoveError(
                f"flip_zero needs multiplicity zero, {c!r} is incident to {i!r}"
            )
        si = entries.get((i, c))
        if si is None:
            raise MoveError("flip_zero touched an entry outside the table")
        entries2 = dict(entries)
        entries2[(i, c)] = -si
        return d, entries2
    raise MoveError(f"unknown move kind {record.kind!r}")


def finger_move(
    d: DoublePointDiagram, eps: SignTable, c: str, other: str
) -> tuple[DoublePointDiagram, SignTable]:
    """Create a cancelling pair of double points between c and other.

    The first new point carries +1 for every component and the second -1, so
    every component sum, every target, and every feasibility residue is
    untouched; both new points are of type I.
    """
    new_plus, new_minus = _fresh_point_ids(set(d.point_ids()), 2)
    record = MoveRecord(
        "finger_move", c, other=other, new_plus=new_plus, new_minus=new_minus
    )
    d2, entries2 = _apply_move(d, eps.as_dict(), record)
    return d2, SignTable(d2, entries2)


def swap_signs(
    d: DoublePointDiagram, eps: SignTable, c: str, i: str, j: str
) -> SignTable:
    """Exchange two opposite entries of equal multiplicity on one component."""
    record = MoveRecord("swap_signs", c, point_i=i, point_j=j)
    _, entries2 = _apply_move(d, eps.as_dict(), record)
    return SignTable(d, entries2)


def flip_zero(d: DoublePointDiagram, eps: SignTable, c: str, i: str) -> SignTable:
    """Negate an entry whose multiplicity is zero."""
    record = MoveRecord("flip_zero", c, point_i=i)
    _, entries2 = _apply_move(d, eps.as_dict(), record)
    return SignTable(d, entries2)


# ---------------------------------------------------------------------------
# serialization and hashing


def diagram_to_json_dict(d: DoublePointDiagram) -> dict:
    return {
        "mode": d.mode,
        "components": [
            {"id": c.id, "column": c.column, "target": c.target}
            for c in d.components
        ],
        "double_points": [
            {"id": p.id, "ends": list(p.ends)} for p in d.double_points
        ],
    }


def diagram_from_json_dict(data: dict, path: str = "") -> DoublePointDiagram:
    def fail(msg: str, sub: str = "") -> InputError:
        where = "/".join(x for x in (path, sub) if x)
        return InputError(msg, path=where)

    if not isinstance(data, dict):
        raise fail("diagram must be an object")
    mode = data.get("mode")
    comps = []
    for idx, raw in enumerate(data.get("components", [])):
        try:
            comps.append(
                Component(str(raw["id"]), int(raw["column"]), int(raw["target"]))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise fail(f"bad component: {exc}", f"components/{idx}") from None
    points = []
    for idx, raw in enumerate(data.get("double_points", [])):
        try:
            ends = raw["ends"]
            points.append(DoublePoint(str(raw["id"]), (str(ends[0]), str(ends[1]))))
        except (KeyError, TypeError, IndexError) as exc:
            raise fail(f"bad double point: {exc}", f"double_points/{idx}") from None
    try:
        return DoublePointDiagram(mode, tuple(comps), tuple(points))
    except InputError as exc:
        raise fail(str(exc)) from None


def table_to_json_dict(eps: SignTable) -> dict:
    out: dict = {}
    for pid, cid, s in eps.sorted_items():
        out.setdefault(pid, {})[cid] = s
    return out


def table_from_json_dict(
    d: DoublePointDiagram, data: dict, path: str = ""
) -> SignTable:
    entries = {}
    for pid, row in data.items():
        for cid, s in row.items():
            entries[(str(pid), str(cid))] = int(s)
    try:
        return SignTable(d, entries)
    except InputError as exc:
        raise InputError(str(exc), path=path) from None


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def state_hash(d: DoublePointDiagram, entries: dict) -> str:
    """SHA-256 of the canonical serialization of a diagram plus the table
    entries known so far (partial tables hash their defined part)."""
    payload = {
        "mode": d.mode,
        "components": [[c.id, c.column, c.target] for c in d.components],
        "points": [[p.id, list(p.ends)] for p in d.double_points],
        "table": [[pid, cid, s] for (pid, cid), s in sorted(entries.items())],
    }
    return hashlib.sha256(_canonical_json(payload).encode("ascii")).hexdigest()


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class Infeasible:
    """A diagram no move sequence can normalize, with the violated condition:
    "parity", "mod4", "congruence2", or "range"."""

    reason: str
    detail: str


@dataclass(frozen=True)
class MoveTrace:
    """Replayable certificate: leading boost_len finger moves, then the seed
    table installation, then the sign-repair moves, with a state hash after
    every step."""

    initial_hash: str
    boost_len: int
    seed: tuple[tuple[str, str, int], ...]
    seed_hash: str
    moves: tuple[MoveRecord, ...]
    hashes: tuple[str, ...]
    final_hash: str

    def __post_init__(self):
        object.__setattr__(self, "seed", tuple(map(tuple, self.seed)))
        object.__setattr__(self, "moves", tuple(self.moves))
        object.__setattr__(self, "hashes", tuple(self.hashes))
        if len(self.hashes) != len(self.moves):
            raise InputError("trace needs one hash per move")
        if not 0 <= self.boost_len <= len(self.moves):
            raise InputError("boost_len out of range")

    def to_json_dict(self) -> dict:
        return {
            "initial_hash": self.initial_hash,
            "boost_len": self.boost_len,
            "seed": [[pid, cid, s] for pid, cid, s in self.seed],
            "seed_hash": self.seed_hash,
            "moves": [m.to_json_dict() for m in self.moves],
            "hashes": list(self.hashes),
            "final_hash": self.final_hash,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "MoveTrace":
        return MoveTrace(
            initial_hash=data["initial_hash"],
            boost_len=int(data["boost_len"]),
            seed=tuple((p, c, int(s)) for p, c, s in data["seed"]),
            seed_hash=data["seed_hash"],
            moves=tuple(MoveRecord.from_json_dict(m) for m in data["moves"]),
            hashes=tuple(data["hashes"]),
            final_hash=data["final_hash"],
        )


@dataclass(frozen=True)
class NormalizeResult:
    diagram: DoublePointDiagram
    table: SignTable
    uniform: tuple[int, ...]
    trace: MoveTrace


class _Normalizer:
    """Working state for one normalize run; all mutation is private here."""

    def __init__(self, d: DoublePointDiagram):
        self.initial = d
        self.d = d
        self.entries: dict = {}
        self.moves: list[MoveRecord] = []
        self.hashes: list[str] = []
        self.boost_len = 0
        self.seed_items: tuple = ()
        self.seed_hash = ""

    def finger(self, c: str, other: str) -> tuple[str, str]:
        new_plus, new_minus = _fresh_point_ids(set(self.d.point_ids()), 2)
        record = MoveRecord(
            "finger_move", c, other=other, new_plus=new_plus, new_minus=new_minus
        )
        self.d, self.entries = _apply_move(self.d, self.entries, record)
        self.moves.append(record)
        self.hashes.append(state_hash(self.d, self.entries))
        return new_plus, new_minus

    def swap(self, c: str, i: str, j: str) -> None:
        record = MoveRecord("swap_signs", c, point_i=i, point_j=j)
        self.d, self.entries = _apply_move(self.d, self.entries, record)
        self.moves.append(record)
        self.hashes.append(state_hash(self.d, self.entries))

    def flip(self, c: str, i: str) -> None:
        record = MoveRecord("flip_zero", c, point_i=i)
        self.d, self.entries = _apply_move(self.d, self.entries, record)
        self.moves.append(record)
        self.hashes.append(state_hash(self.d, self.entries))

    def install_seed(self, entries: dict) -> None:
        self.boost_len = len(self.moves)
        self.entries = dict(entries)
        self.seed_items = tuple(
            (pid, cid, s) for (pid, cid), s in sorted(entries.items())
        )
        self.seed_hash = state_hash(self.d, self.entries)

    def lowest_partner(self, cid: str, forbidden_columns: set) -> str:
        """Lexicographically first component in the lowest allowed column."""
        best = None
        for comp in self.d.components:
            if comp.column in forbidden_columns:
                continue
            key = (comp.column, comp.id)
            if best is None or key < (best.column, best.id):
                best = comp
        if best is None:
            raise InternalLogicError(
                f"no partner component outside columns {sorted(forbidden_columns)}"
            )
        return best.id

    def sign(self, pid: str, cid: str) -> int:
        return self.entries[(pid, cid)]

    def result(self) -> NormalizeResult:
        table = SignTable(self.d, self.entries)
        uniform = []
        for pt in self.d.double_points:
            signs = {table.sign(pt.id, c.id) for c in self.d.components}
            if len(signs) != 1:
                raise InternalLogicError(
                    f"normalization left point {pt.id!r} with mixed signs"
                )
            uniform.append(signs.pop())
        for comp in self.d.components:
            total = component_sum(self.d, table, comp.id)
            if total != comp.target:
                raise InternalLogicError(
                    f"component {comp.id!r} sums to {total}, target {comp.target}"
                )
        final_hash = self.hashes[-1] if len(self.moves) > self.boost_len else self.seed_hash
        trace = MoveTrace(
            initial_hash=state_hash(self.initial, {}),
            boost_len=self.boost_len,
            seed=self.seed_items,
            seed_hash=self.seed_hash,
            moves=tuple(self.moves),
            hashes=tuple(self.hashes),
            final_hash=final_hash,
        )
        return NormalizeResult(self.d, table, tuple(uniform), trace)


def _check_feasibility(d: DoublePointDiagram) -> Optional[Infeasible]:
    if not parity_valid(d):
        bad = [
            c.id for c in d.components if (p_count(d, c.id) - c.target) % 2 != 0
        ]
        return Infeasible(
            "parity", f"t_C = P^C mod 2 fails for components {bad}"
        )
    if not _total_congruence_holds(d):
        total = sum(c.target for c in d.components)
        return Infeasible(
            "mod4",
            f"target total {total} is not 2n mod 4 for n={len(d.double_points)}",
        )
    if d.mode == MODE_TWO:
        t_within = len(_within_point_ids(d))
        delta = _column_delta(d)
        if (delta - 2 * t_within) % 4 != 0:
            return Infeasible(
                "congruence2",
                f"column difference {delta} is not 2T mod 4 for T={t_within}",
            )
        if abs(delta) > 2 * t_within:
            return Infeasible(
                "range",
                f"column difference {delta} exceeds the reachable set "
                f"[-2T, 2T] for T={t_within}",
            )
    return None


def _fast_path(d: DoublePointDiagram) -> Optional[NormalizeResult]:
    if len(d.double_points) > ORACLE_MAX_POINTS:
        return None
    vec = oracle_assign(d)
    if vec is None:
        return None
    entries = {}
    for pi, pt in enumerate(d.double_points):
        for comp in d.components:
            entries[(pt.id, comp.id)] = vec[pi]
    state = _Normalizer(d)
    state.install_seed(entries)
    return state.result()


def _subset_signs(
    weighted: list[tuple[str, int]], k: int, cid: str
) -> dict[str, int]:
    """Greedy subset choice: pick entries summing to k (weights 1 and 2,
    heavier first, ascending point id), sign -1 on the chosen set."""
    remaining = k
    chosen = set()
    for pid, weight in sorted(
        weighted, key=lambda e: (-e[1], e[0])
    ):
        if weight <= remaining:
            chosen.add(pid)
            remaining -= weight
    if remaining != 0:
        raise InternalLogicError(
            f"subset selection for {cid!r} missed target by {remaining}"
        )
    return {pid: (-1 if pid in chosen else 1) for pid, _ in weighted}


def _seed_two_column(state: _Normalizer) -> None:
    """Within points get globally chosen final signs driving the column
    difference; cross points satisfy each side independently, disagreements
    landing as cross-column type III."""
    d = state.d
    within = sorted(_within_point_ids(d))
    t_within = len(within)
    delta = _column_delta(d)
    flips = (2 * t_within - delta) // 4
    if flips < 0 or flips > t_within:
        raise InternalLogicError(
            f"within-point flip count {flips} out of range 0..{t_within}"
        )
    w = {}
    for idx, pid in enumerate(within):
        base = 1 if d.point_column(pid) == 0 else -1
        w[pid] = -base if idx < flips else base

    residual = {}
    cross_points = {}
    for comp in d.components:
        cid = comp.id
        t2 = comp.target
        crosses = []
        for pt in d.double_points:
            mult = d._mult.get((pt.id, cid), 0)
            if mult == 0:
                continue
            if pt.id in w:
                t2 -= mult * w[pt.id]
            else:
                crosses.append(pt.id)
        residual[cid] = t2
        cross_points[cid] = sorted(crosses)

    # grow each component's cross incidence until its residual fits
    for comp in d.components:
        cid = comp.id
        partner = state.lowest_partner(cid, {d.component(cid).column})
        while len(cross_points[cid]) < abs(residual[cid]):
            plus, minus = state.finger(cid, partner)
            cross_points[cid].extend([plus, minus])
            cross_points[partner].extend([plus, minus])
    d = state.d

    entries = {}
    for pid, w_i in w.items():
        for comp in d.components:
            entries[(pid, comp.id)] = w_i
    for comp in d.components:
        cid = comp.id
        crosses = sorted(cross_points[cid])
        x = len(crosses)
        t2 = residual[cid]
        if (x - t2) % 2 != 0 or x < abs(t2):
            raise InternalLogicError(
                f"cross residual {t2} unreachable with {x} points on {cid!r}"
            )
        negatives = (x - t2) // 2
        for idx, pid in enumerate(crosses):
            entries[(pid, cid)] = -1 if idx < negatives else 1
    for pt in d.double_points:
        if pt.id in w:
            continue
        e0, e1 = pt.ends
        s0, s1 = entries[(pt.id, e0)], entries[(pt.id, e1)]
        fill = s0 if s0 == s1 else 1
        for comp in d.components:
            entries.setdefault((pt.id, comp.id), fill)
    state.install_seed(entries)


def _seed_three_column(state: _Normalizer) -> None:
    """Independent per-component subset selection; disagreements surface as
    type III or IV points for the later passes."""
    d = state.d
    entries = {}
    for comp in d.components:
        cid = comp.id
        weighted = []
        for pt in d.double_points:
            mult = d._mult.get((pt.id, cid), 0)
            if mult:
                weighted.append((pt.id, mult))
        total = sum(weight for _, weight in weighted)
        k = (total - comp.target) // 2
        if k < 0 or k > total:
            raise InternalLogicError(
                f"selection bound 0 <= {k} <= {total} fails for {cid!r}"
            )
        for pid, sign in _subset_signs(weighted, k, cid).items():
            entries[(pid, cid)] = sign
    for pt in d.double_points:
        e0, e1 = pt.ends
        s0, s1 = entries[(pt.id, e0)], entries[(pt.id, e1)]
        fill = s0 if s0 == s1 else 1
        for comp in d.components:
            entries.setdefault((pt.id, comp.id), fill)
    state.install_seed(entries)


def _stage_grow_counts(state: _Normalizer) -> None:
    """Finger moves until every component has P^C >= |t_C| and
    P^C = t_C mod 4."""
    d = state.d
    for comp in d.components:
        cid = comp.id
        if state.d.is_degenerate():
            partner = cid
            step = 4
        else:
            partner = state.lowest_partner(cid, {d.component(cid).column})
            step = 2
        have = p_count(state.d, cid)
        while have < abs(comp.target):
            state.finger(cid, partner)
            have += step

    deficient = [
        comp.id
        for comp in state.d.components
        if (p_count(state.d, comp.id) - comp.target) % 4 != 0
    ]
    if len(deficient) % 2 != 0:
        raise InternalLogicError(
            f"odd number of mod-4 deficient components: {deficient}"
        )
    if deficient and state.d.is_degenerate():
        raise InternalLogicError(
            "a lone component cannot be mod-4 deficient when the aggregate "
            "congruence holds"
        )
    for idx in range(0, len(deficient), 2):
        c_a, c_b = deficient[idx], deficient[idx + 1]
        col_a = state.d.component(c_a).column
        col_b = state.d.component(c_b).column
        if col_a != col_b:
            state.finger(c_a, c_b)
        else:
            mediator = state.lowest_partner(c_a, {col_a})
            state.finger(c_a, mediator)
            state.finger(c_b, mediator)
    still = [
        comp.id
        for comp in state.d.components
        if (p_count(state.d, comp.id) - comp.target) % 4 != 0
    ]
    if still:
        raise InternalLogicError(f"mod-4 repair left deficiencies: {still}")


def _pass_type_four(state: _Normalizer) -> None:
    """Convert each within-column disagreement into a cross-column one using
    one finger move and one swap."""
    table = SignTable(state.d, state.entries)
    worklist = [
        pt.id
        for pt in state.d.double_points
        if classify_type(state.d, table, pt.id) == TYPE_IV
    ]
    for pid in sorted(worklist):
        pt = state.d.point(pid)
        c = min(pt.ends)
        a = state.sign(pid, c)
        col_c = state.d.component(c).column
        partner = state.lowest_partner(c, {col_c})
        plus, minus = state.finger(c, partner)
        fresh = minus if a == 1 else plus
        state.swap(c, pid, fresh)


def _pass_type_three_two_column(state: _Normalizer) -> None:
    """Pair oppositely aligned cross-column disagreements; each pair costs
    one finger move and two swaps."""
    table = SignTable(state.d, state.entries)
    plus_list = []
    minus_list = []
    for pid in sorted(p.id for p in state.d.double_points):
        if classify_type(state.d, table, pid) != TYPE_III:
            continue
        pt = state.d.point(pid)
        side0 = next(
            e for e in pt.ends if state.d.component(e).column == 0
        )
        if state.sign(pid, side0) == 1:
            plus_list.append(pid)
        else:
            minus_list.append(pid)
    if len(plus_list) != len(minus_list):
        raise InternalLogicError(
            f"unbalanced type III orientations: {len(plus_list)} vs "
            f"{len(minus_list)}"
        )
    for pid_plus, pid_minus in zip(plus_list, minus_list):
        pt_plus = state.d.point(pid_plus)
        pt_minus = state.d.point(pid_minus)
        x1 = next(
            e for e in pt_plus.ends if state.d.component(e).column == 1
        )
        y0 = next(
            e for e in pt_minus.ends if state.d.component(e).column == 0
        )
        plus, _ = state.finger(x1, y0)
        state.swap(x1, pid_plus, plus)
        state.swap(y0, pid_minus, plus)


def _pass_type_three_three_column(state: _Normalizer) -> None:
    """Pair cross-column disagreements arbitrarily; each pair routes through
    a third column with two finger moves and three swaps."""
    table = SignTable(state.d, state.entries)
    worklist = [
        pid
        for pid in sorted(p.id for p in state.d.double_points)
        if classify_type(state.d, table, pid) == TYPE_III
    ]
    if len(worklist) % 2 != 0:
        raise InternalLogicError(
            f"odd number of type III points: {len(worklist)}"
        )
    for idx in range(0, len(worklist), 2):
        pid_i, pid_j = worklist[idx], worklist[idx + 1]
        ends_i = state.d.point(pid_i).ends
        c = min(ends_i)
        a = state.sign(pid_i, c)
        ends_j = state.d.point(pid_j).ends
        dd = ends_j[0] if state.sign(pid_j, ends_j[0]) == -a else ends_j[1]
        if state.sign(pid_j, dd) != -a:
            raise InternalLogicError(
                f"no side of {pid_j!r} carries sign {-a:+d}"
            )
        forbidden = {
            state.d.component(c).column,
            state.d.component(dd).column,
        }
        f = state.lowest_partner(c, forbidden)
        plus_s, minus_s = state.finger(c, f)
        s_pt = minus_s if a == 1 else plus_s
        plus_t, minus_t = state.finger(dd, f)
        t_pt = plus_t if a == 1 else minus_t
        state.swap(c, pid_i, s_pt)
        state.swap(f, s_pt, t_pt)
        state.swap(dd, pid_j, t_pt)


def _pass_type_two(state: _Normalizer) -> None:
    """Flip every zero-multiplicity entry to its point's incident sign."""
    for pid in sorted(p.id for p in state.d.double_points):
        pt = state.d.point(pid)
        end_signs = {state.sign(pid, e) for e in pt.ends}
        if len(end_signs) != 1:
            raise InternalLogicError(
                f"point {pid!r} still has disagreeing incident signs"
            )
        u = end_signs.pop()
        for comp in state.d.components:
            if state.d._mult.get((pid, comp.id), 0) == 0:
                if state.sign(pid, comp.id) != u:
                    state.flip(comp.id, pid)


def normalize(d: DoublePointDiagram) -> Union[NormalizeResult, Infeasible]:
    """Drive a diagram to all-type-I with every component target met, or name
    the violated feasibility condition.

    Stages: feasibility predicates; finger moves establishing P^C >= |t_C|
    and P^C = t_C mod 4; a mode-specific seed table; then type IV, III, and
    II repairs in ascending double-point id.  When the diagram is small
    enough and a uniform vector already satisfies it, the seed is that vector
    and the trace carries no moves.
    """
    verdict = _check_feasibility(d)
    if verdict is not None:
        return verdict
    fast = _fast_path(d)
    if fast is not None:
        return fast
    state = _Normalizer(d)
    _stage_grow_counts(state)
    if d.mode == MODE_TWO:
        _seed_two_column(state)
        _pass_type_four(state)
        _pass_type_three_two_column(state)
    else:
        _seed_three_column(state)
        _pass_type_four(state)
        _pass_type_three_three_column(state)
    _pass_type_two(state)
    return state.result()


def replay(initial: DoublePointDiagram, trace: MoveTrace) -> tuple[DoublePointDiagram, SignTable]:
    """Re-run a trace from the initial diagram, verifying every recorded
    state hash, and return the final diagram and table."""
    if state_hash(initial, {}) != trace.initial_hash:
        raise InputError("trace does not start from this diagram")
    d = initial
    entries: dict = {}

    def install() -> None:
        nonlocal entries
        entries = {(pid, cid): s for pid, cid, s in trace.seed}
        expected = {
            (pt.id, comp.id)
            for pt in d.double_points
            for comp in d.components
        }
        if set(entries) != expected:
            raise InputError("seed table does not cover the boosted diagram")
        if state_hash(d, entries) != trace.seed_hash:
            raise InputError("seed hash mismatch")

    for k, record in enumerate(trace.moves):
        if k == trace.boost_len:
            install()
        d, entries = _apply_move(d, entries, record)
        if state_hash(d, entries) != trace.hashes[k]:
            raise InputError(f"state hash mismatch after move {k}")
    if trace.boost_len == len(trace.moves):
        install()
    final = trace.hashes[-1] if len(trace.moves) > trace.boost_len else trace.seed_hash
    if final != trace.final_hash:
        raise InputError("final hash mismatch")
    return d, SignTable(d, entries)


def verify_normalization(initial: DoublePointDiagram, result: NormalizeResult) -> bool:
    """Independent soundness check of a normalize result.

    Replays the trace, re-classifies every point, recomputes component sums,
    and re-runs the exhaustive oracle when the output is small enough.
    """
    d_replayed, table_replayed = replay(initial, result.trace)
    if d_replayed != result.diagram or table_replayed != result.table:
        return False
    if result.diagram.components != initial.components:
        return False
    prefix = result.diagram.double_points[: len(initial.double_points)]
    if prefix != initial.double_points:
        return False
    if len(result.uniform) != len(result.diagram.double_points):
        return False
    for idx, pt in enumerate(result.diagram.double_points):
        if classify_type(result.diagram, result.table, pt.id) != TYPE_I:
            return False
        signs = {result.table.sign(pt.id, c.id) for c in result.diagram.components}
        if result.diagram.components and signs != {result.uniform[idx]}:
            return False
    for comp in result.diagram.components:
        total = sum(
            result.diagram._mult.get((pt.id, comp.id), 0) * result.uniform[idx]
            for idx, pt in enumerate(result.diagram.double_points)
        )
        if total != comp.target:
            return False
    if len(result.diagram.double_points) <= ORACLE_MAX_POINTS:
        if oracle_assign(result.diagram) is None:
            return False
    return True
