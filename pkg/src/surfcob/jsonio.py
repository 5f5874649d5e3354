"""JSON serialization for the domain types.

Every reader takes the JSON value plus a path prefix and raises InputError
with the offending location filled in.  Homology classes written in JSON name
their group either inline or as one of the ambient's group slots.
"""

from __future__ import annotations

from typing import Optional

from .decide import AmbientSpec, BoundaryCobordismSpec
from .diagrams import (
    MoveTrace,
    NormalizeResult,
    diagram_to_json_dict,
    table_to_json_dict,
)
from .errors import InputError, MissingDataError
from .framing import Framing, Link, RelEulerDatum
from .homology import (
    AbelianGroupPresentation,
    HomologyClass,
    IntMatrix,
    ChainComplexPresentation,
)
from .surfaces import (
    ANSWER_NO,
    ANSWER_NOT_APPLICABLE,
    ComponentSpec,
    SurfaceSpec,
    Verdict,
)

QUESTIONS = (
    "cobordant",
    "cobordant_rel_boundary",
    "extends",
    "oriented_cobordant",
    "oriented_extends",
    "spanning_extends",
    "almost_extendable",
    "concordant",
)


def _fail(msg: str, path: str) -> InputError:
    return InputError(msg, path=path)


def _sub(path: str, key) -> str:
    return f"{path}/{key}" if path else str(key)


def _require_object(data, path: str) -> dict:
    if not isinstance(data, dict):
        raise _fail("expected a JSON object", path)
    return data


def _get_int(data: dict, key: str, path: str, default=None) -> int:
    if key not in data:
        if default is not None:
            return default
        raise _fail(f"missing required key {key!r}", path)
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise _fail(f"{key!r} must be an integer", _sub(path, key))
    return v


def _get_bool(data: dict, key: str, path: str, default: bool) -> bool:
    v = data.get(key, default)
    if not isinstance(v, bool):
        raise _fail(f"{key!r} must be a boolean", _sub(path, key))
    return v


# ---------------------------------------------------------------------------
# groups and classes


def group_to_json_dict(g: AbelianGroupPresentation) -> dict:
    return {
        "free_rank": g.free_rank,
        "invariant_factors": list(g.invariant_factors),
    }


def group_from_json(data, path: str = "") -> AbelianGroupPresentation:
    data = _require_object(data, path)
    factors = data.get("invariant_factors", [])
    if not isinstance(factors, list):
        raise _fail(
            "'invariant_factors' must be a list", _sub(path, "invariant_factors")
        )
    try:
        return AbelianGroupPresentation(
            _get_int(data, "free_rank", path, default=0), tuple(factors)
        )
    except InputError as exc:
        raise _fail(str(exc), path) from None


def class_to_json_dict(cls: HomologyClass, slot: Optional[str] = None) -> dict:
    out: dict = {"coords": list(cls.coords)}
    out["group"] = slot if slot is not None else group_to_json_dict(cls.group)
    return out


def class_from_json(
    data, groups: dict, path: str = ""
) -> Optional[HomologyClass]:
    """A class from {"coords": [...], "group": slot-name | inline-object};
    null stays None (empty surface, zero by convention)."""
    if data is None:
        return None
    data = _require_object(data, path)
    if "group" not in data:
        raise _fail("class needs a 'group' (slot name or inline)", path)
    raw_group = data["group"]
    if isinstance(raw_group, str):
        if raw_group not in groups:
            raise MissingDataError(
                f"ambient declares no group slot {raw_group!r}",
                path=_sub(path, "group"),
            )
        group = groups[raw_group]
    else:
        group = group_from_json(raw_group, _sub(path, "group"))
    coords = data.get("coords")
    if not isinstance(coords, list) or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in coords
    ):
        raise _fail("'coords' must be a list of integers", _sub(path, "coords"))
    try:
        return HomologyClass(group, tuple(coords))
    except InputError as exc:
        raise _fail(str(exc), path) from None


# ---------------------------------------------------------------------------
# links, framings, surfaces


def link_to_json_dict(link: Link) -> dict:
    return {"components": list(link.component_ids), "ambient": link.ambient_tag}


def link_from_json(data, path: str = "") -> Link:
    data = _require_object(data, path)
    comps = data.get("components")
    if not isinstance(comps, list) or not all(isinstance(c, str) for c in comps):
        raise _fail(
            "'components' must be a list of strings", _sub(path, "components")
        )
    try:
        return Link(tuple(comps), data.get("ambient", "generic"))
    except InputError as exc:
        raise _fail(str(exc), path) from None


def _framing_from_json(link: Link, data, path: str) -> Framing:
    data = _require_object(data, path)
    offsets = {}
    for k, v in data.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise _fail("framing offsets must be integers", _sub(path, k))
        offsets[str(k)] = v
    try:
        return Framing(link, offsets)
    except InputError as exc:
        raise _fail(str(exc), path) from None


def _euler_entry_from_json(
    comp: ComponentSpec, index: int, data, path: str
):
    if comp.is_closed():
        if not isinstance(data, int) or isinstance(data, bool):
            raise _fail(
                "closed components take an integer Euler number", path
            )
        return data
    data = _require_object(data, path)
    framing_raw = data.get("base_framing")
    if framing_raw is None:
        raise _fail("bounded components need 'base_framing'", path)
    link = Link(tuple(comp.boundary), data.get("ambient", "generic"))
    framing = _framing_from_json(link, framing_raw, _sub(path, "base_framing"))
    try:
        return RelEulerDatum(
            f"c{index}", framing, _get_int(data, "base_euler", path)
        )
    except InputError as exc:
        raise _fail(str(exc), path) from None


def _euler_entry_to_json(entry):
    if isinstance(entry, int):
        return entry
    return {
        "base_framing": entry.base_framing.as_dict(),
        "base_euler": entry.e_base,
        "ambient": entry.base_framing.link.ambient_tag,
    }


def component_from_json(data, path: str = "") -> ComponentSpec:
    data = _require_object(data, path)
    boundary = data.get("boundary", [])
    if not isinstance(boundary, list) or not all(
        isinstance(b, str) for b in boundary
    ):
        raise _fail(
            "'boundary' must be a list of strings", _sub(path, "boundary")
        )
    try:
        return ComponentSpec(
            _get_bool(data, "orientable", path, default=True),
            _get_int(data, "euler_characteristic", path),
            tuple(boundary),
        )
    except InputError as exc:
        raise _fail(str(exc), path) from None


def component_to_json_dict(comp: ComponentSpec) -> dict:
    return {
        "orientable": comp.orientable,
        "euler_characteristic": comp.euler_characteristic,
        "boundary": list(comp.boundary),
    }


def surface_from_json(data, groups: dict, path: str = "") -> SurfaceSpec:
    data = _require_object(data, path)
    comps_raw = data.get("components", [])
    if not isinstance(comps_raw, list):
        raise _fail("'components' must be a list", _sub(path, "components"))
    comps = tuple(
        component_from_json(raw, _sub(_sub(path, "components"), i))
        for i, raw in enumerate(comps_raw)
    )
    euler_raw = data.get("euler", [])
    if not isinstance(euler_raw, list):
        raise _fail("'euler' must be a list", _sub(path, "euler"))
    if len(euler_raw) != len(comps):
        raise _fail(
            f"need one Euler entry per component: {len(comps)} components, "
            f"{len(euler_raw)} entries",
            _sub(path, "euler"),
        )
    euler = tuple(
        _euler_entry_from_json(comp, i, raw, _sub(_sub(path, "euler"), i))
        for i, (comp, raw) in enumerate(zip(comps, euler_raw))
    )
    try:
        return SurfaceSpec(
            components=comps,
            class_mod2=class_from_json(
                data.get("class_mod2"), groups, _sub(path, "class_mod2")
            ),
            class_int=class_from_json(
                data.get("class_int"), groups, _sub(path, "class_int")
            ),
            orientation_tag=str(data.get("orientation_tag", "as_given")),
            euler=euler,
            embedded=_get_bool(data, "embedded", path, default=True),
            self_count=_get_int(data, "self_count", path, default=0),
        )
    except InputError as exc:
        if exc.path:
            raise
        raise _fail(str(exc), path) from None


def surface_to_json_dict(s: SurfaceSpec) -> dict:
    out: dict = {
        "components": [component_to_json_dict(c) for c in s.components],
        "euler": [_euler_entry_to_json(e) for e in s.euler],
    }
    if s.class_mod2 is not None:
        out["class_mod2"] = class_to_json_dict(s.class_mod2)
    if s.class_int is not None:
        out["class_int"] = class_to_json_dict(s.class_int)
    if s.orientation_tag != "as_given":
        out["orientation_tag"] = s.orientation_tag
    if not s.embedded:
        out["embedded"] = False
    if s.self_count:
        out["self_count"] = s.self_count
    return out


# ---------------------------------------------------------------------------
# ambient and boundary cobordism


def ambient_from_json(data, path: str = "") -> AmbientSpec:
    data = _require_object(data, path)
    groups_raw = data.get("groups", {})
    if not isinstance(groups_raw, dict):
        raise _fail("'groups' must be an object", _sub(path, "groups"))
    groups = {
        str(name): group_from_json(raw, _sub(_sub(path, "groups"), name))
        for name, raw in groups_raw.items()
    }
    try:
        return AmbientSpec(
            orientable=_get_bool(data, "orientable", path, default=True),
            simply_connected=_get_bool(
                data, "simply_connected", path, default=False
            ),
            boundary_nonempty=_get_bool(
                data, "boundary_nonempty", path, default=False
            ),
            connected=_get_bool(data, "connected", path, default=True),
            is_s4=_get_bool(data, "is_s4", path, default=False),
            groups=groups,
        )
    except InputError as exc:
        if exc.path:
            raise
        raise _fail(str(exc), path) from None


def zspec_from_json(data, groups: dict, path: str = "") -> BoundaryCobordismSpec:
    data = _require_object(data, path)
    if "from_link" not in data or "to_link" not in data:
        raise _fail("boundary cobordism needs 'from_link' and 'to_link'", path)
    try:
        return BoundaryCobordismSpec(
            from_link=link_from_json(data["from_link"], _sub(path, "from_link")),
            to_link=link_from_json(data["to_link"], _sub(path, "to_link")),
            e_z=_get_int(data, "e_z", path, default=0),
            class_contribution=class_from_json(
                data.get("class_contribution"),
                groups,
                _sub(path, "class_contribution"),
            ),
            class_contribution_int=class_from_json(
                data.get("class_contribution_int"),
                groups,
                _sub(path, "class_contribution_int"),
            ),
            is_concordance=_get_bool(data, "is_concordance", path, default=False),
        )
    except InputError as exc:
        if exc.path:
            raise
        raise _fail(str(exc), path) from None


# ---------------------------------------------------------------------------
# queries and verdicts


def query_from_json(data, path: str = "") -> dict:
    """Parse a decide query into keyword arguments for the named decider.

    Returns {"question", "x", "a", "b"} plus question-specific extras
    ("z", "sz_euler", "zclass", "e_a", "e_b", "s").
    """
    data = _require_object(data, path)
    question = data.get("question")
    if question not in QUESTIONS:
        raise _fail(
            f"'question' must be one of {', '.join(QUESTIONS)}",
            _sub(path, "question"),
        )
    x = ambient_from_json(data.get("ambient", {}), _sub(path, "ambient"))
    surfaces_raw = data.get("surfaces", [])
    if not isinstance(surfaces_raw, list):
        raise _fail("'surfaces' must be a list", _sub(path, "surfaces"))
    surfaces = [
        surface_from_json(raw, x.groups, _sub(_sub(path, "surfaces"), i))
        for i, raw in enumerate(surfaces_raw)
    ]
    out: dict = {"question": question, "x": x}
    zraw = data.get("z")
    if question == "spanning_extends":
        if len(surfaces) != 1:
            raise _fail(
                "spanning_extends takes exactly one surface",
                _sub(path, "surfaces"),
            )
        out["s"] = surfaces[0]
        zdata = _require_object(zraw if zraw is not None else {}, _sub(path, "z"))
        values = zdata.get("sz_euler", [])
        if not isinstance(values, list):
            raise _fail("'sz_euler' must be a list", _sub(_sub(path, "z"), "sz_euler"))
        out["sz_euler"] = values
        out["zclass"] = class_from_json(
            zdata.get("class"), x.groups, _sub(_sub(path, "z"), "class")
        )
        return out
    if len(surfaces) != 2:
        raise _fail(
            f"{question} takes exactly two surfaces", _sub(path, "surfaces")
        )
    out["a"], out["b"] = surfaces
    if question == "almost_extendable":
        zdata = _require_object(zraw if zraw is not None else {}, _sub(path, "z"))
        out["zclass"] = class_from_json(
            zdata.get("class"), x.groups, _sub(_sub(path, "z"), "class")
        )
        out["e_a"] = _get_int(zdata, "e_a", _sub(path, "z"))
        out["e_b"] = _get_int(zdata, "e_b", _sub(path, "z"))
        return out
    if question in ("extends", "oriented_extends"):
        if zraw is None:
            raise _fail(f"{question} needs 'z'", path)
        out["z"] = zspec_from_json(zraw, x.groups, _sub(path, "z"))
        return out
    if question == "concordant" and zraw is not None:
        out["z"] = zspec_from_json(zraw, x.groups, _sub(path, "z"))
    return out


def trace_to_json_dict(trace: MoveTrace) -> dict:
    return trace.to_json_dict()


def normalize_result_to_json_dict(
    res: NormalizeResult, include_trace: bool
) -> dict:
    out = {
        "diagram": diagram_to_json_dict(res.diagram),
        "table": table_to_json_dict(res.table),
        "uniform": list(res.uniform),
        "moves": len(res.trace.moves),
    }
    if include_trace:
        out["trace"] = trace_to_json_dict(res.trace)
    return out


def verdict_to_json_dict(v: Verdict, include_trace: bool = False) -> dict:
    if v.answer == ANSWER_NOT_APPLICABLE:
        out: dict = {"answer": v.answer}
        if v.obstructions:
            out["reason"] = v.obstructions[0]
        return out
    if v.answer == ANSWER_NO:
        return {"answer": v.answer, "obstructions": list(v.obstructions)}
    out = {"answer": v.answer}
    if isinstance(v.certificate, NormalizeResult):
        out["certificate"] = normalize_result_to_json_dict(
            v.certificate, include_trace
        )
    elif v.certificate is not None:
        out["certificate"] = v.certificate
    return out


# ---------------------------------------------------------------------------
# chain complexes


def _matrix_from_json(data, path: str) -> IntMatrix:
    if isinstance(data, list):
        if not all(isinstance(row, list) for row in data):
            raise _fail("dense matrix must be a list of rows", path)
        try:
            return IntMatrix([[int(v) for v in row] for row in data])
        except (InputError, TypeError, ValueError) as exc:
            raise _fail(f"bad dense matrix: {exc}", path) from None
    data = _require_object(data, path)
    rows = _get_int(data, "rows", path)
    cols = _get_int(data, "cols", path)
    if rows < 0 or cols < 0:
        raise _fail("matrix dimensions must be nonnegative", path)
    dense = [[0] * cols for _ in range(rows)]
    entries = data.get("entries", [])
    if not isinstance(entries, list):
        raise _fail("'entries' must be a list", _sub(path, "entries"))
    for k, triple in enumerate(entries):
        if not (isinstance(triple, list) and len(triple) == 3):
            raise _fail(
                "sparse entries are [row, col, value] triples",
                _sub(_sub(path, "entries"), k),
            )
        i, j, v = triple
        if not (0 <= i < rows and 0 <= j < cols):
            raise _fail(
                f"entry ({i},{j}) outside a {rows}x{cols} matrix",
                _sub(_sub(path, "entries"), k),
            )
        dense[i][j] = int(v)
    return IntMatrix(dense, cols=cols)


def complex_from_json(data, path: str = "") -> tuple:
    """Parse {"ring", "degree", "boundary_maps", "cycle"?} into
    (complex, degree, cycle-or-None)."""
    data = _require_object(data, path)
    ring = data.get("ring", "Z")
    if ring not in ("Z", "F2"):
        raise _fail("'ring' must be 'Z' or 'F2'", _sub(path, "ring"))
    degree = _get_int(data, "degree", path)
    maps_raw = data.get("boundary_maps", {})
    if not isinstance(maps_raw, dict):
        raise _fail(
            "'boundary_maps' must map degree to matrix",
            _sub(path, "boundary_maps"),
        )
    maps = {}
    for key, raw in maps_raw.items():
        try:
            n = int(key)
        except (TypeError, ValueError):
            raise _fail(
                f"boundary map degree {key!r} is not an integer",
                _sub(path, "boundary_maps"),
            ) from None
        maps[n] = _matrix_from_json(
            raw, _sub(_sub(path, "boundary_maps"), key)
        )
    try:
        complex_ = ChainComplexPresentation(ring, maps)
    except InputError as exc:
        raise _fail(str(exc), _sub(path, "boundary_maps")) from None
    cycle = data.get("cycle")
    if cycle is not None and not (
        isinstance(cycle, list)
        and all(isinstance(v, int) and not isinstance(v, bool) for v in cycle)
    ):
        raise _fail("'cycle' must be a list of integers", _sub(path, "cycle"))
    return complex_, degree, cycle
