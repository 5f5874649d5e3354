"""Framings of links in 3-manifold boundaries, and relative Euler numbers.

Framings of a fixed link form a torsor over the integers, one twist parameter
per component: there is no preferred zero in general, but inside the 3-sphere
the Seifert (0-linking) framing is the canonical base, so offsets there are
absolute.  Relative Euler numbers of surfaces are carried as a base framing
plus the value at that framing; twisting a boundary component by n shifts the
value by n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, LinkMismatchError

AMBIENT_S3 = "S3"
AMBIENT_GENERIC = "generic"


@dataclass(frozen=True)
class Link:
    """An unoriented link, named components in a declared order."""

    component_ids: tuple[str, ...]
    ambient_tag: str = AMBIENT_GENERIC

    def __post_init__(self):
        object.__setattr__(self, "component_ids", tuple(self.component_ids))
        if len(set(self.component_ids)) != len(self.component_ids):
            raise InputError("link component ids must be unique")
        if self.ambient_tag not in (AMBIENT_S3, AMBIENT_GENERIC):
            raise InputError(
                f"ambient_tag must be '{AMBIENT_S3}' or '{AMBIENT_GENERIC}'"
            )

    def is_empty(self) -> bool:
        return not self.component_ids


def links_match(a: Link, b: Link) -> bool:
    """Same components (order-insensitively) in the same ambient."""
    return a.ambient_tag == b.ambient_tag and set(a.component_ids) == set(
        b.component_ids
    )


@dataclass(frozen=True)
class Framing:
    """One integer twist offset per link component.

    Offsets are coordinates for the torsor action: in S3 they are absolute
    framing numbers (base = Seifert framing), elsewhere they are relative to an
    unnamed common reference.
    """

    link: Link
    offsets: tuple[tuple[str, int], ...]

    def __init__(self, link: Link, offsets):
        object.__setattr__(self, "link", link)
        if isinstance(offsets, dict):
            items = offsets
        else:
            items = dict(offsets)
        if set(items) != set(link.component_ids):
            raise InputError(
                "framing must assign exactly the link components "
                f"{sorted(link.component_ids)}, got {sorted(items)}"
            )
        for k, v in items.items():
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(f"framing offset for {k!r} must be an integer")
        object.__setattr__(
            self,
            "offsets",
            tuple((k, items[k]) for k in link.component_ids),
        )

    def offset(self, component: str) -> int:
        for k, v in self.offsets:
            if k == component:
                return v
        raise InputError(f"link has no component {component!r}")

    def as_dict(self) -> dict[str, int]:
        return dict(self.offsets)


def zero_framing(link: Link) -> Framing:
    return Framing(link, {k: 0 for k in link.component_ids})


def twist(s: Framing, component: str, n: int) -> Framing:
    """Torsor action: add n positive twists on one component."""
    offs = s.as_dict()
    if component not in offs:
        raise InputError(f"link has no component {component!r}")
    offs[component] += n
    return Framing(s.link, offs)


def twist_all(s: Framing, n: int) -> Framing:
    """Add n twists on every component; convenience for equivariance checks."""
    return Framing(s.link, {k: v + n for k, v in s.offsets})


@dataclass(frozen=True)
class RelEulerDatum:
    """Relative Euler number data for a surface with boundary: the value e_base
    at a declared base framing of its boundary link."""

    surface_id: str
    base_framing: Framing
    e_base: int

    def __post_init__(self):
        if not isinstance(self.e_base, int) or isinstance(self.e_base, bool):
            raise InputError("e_base must be an integer")


def euler_under_framing(datum: RelEulerDatum, s: Framing) -> int:
    """Re-express a relative Euler number at another framing of the same link.

    Each component twisted by n contributes n:
    e(surface, s) = e_base + sum_K (s[K] - base[K]).
    """
    if not links_match(datum.base_framing.link, s.link):
        raise LinkMismatchError(
            "framing is on a different link than the Euler datum's base"
        )
    base = datum.base_framing.as_dict()
    return datum.e_base + sum(v - base[k] for k, v in s.offsets)


def hopf_seifert_framings() -> tuple[Framing, Framing]:
    """The two framings of the Hopf link induced by its annular Seifert
    surfaces: both components +1, or both components -1."""
    link = Link(("K", "K'"), AMBIENT_S3)
    return (
        Framing(link, {"K": 1, "K'": 1}),
        Framing(link, {"K": -1, "K'": -1}),
    )


def boundary_euler_balance(e0: int, e_z: int, e1: int) -> bool:
    """Whether Euler data balances across a boundary cobordism:
    e1 = e0 + e_z."""
    return e1 == e0 + e_z


def mod2_intersection_consistent(int01: int, e0: int, e1: int) -> bool:
    """Whether a mod-2 intersection count between two surfaces matches both
    relative Euler numbers mod 2.  Callers assert the vanishing-union-class
    hypothesis under which this is meaningful."""
    if int01 not in (0, 1):
        raise InputError("mod-2 intersection number must be 0 or 1")
    return (e0 - int01) % 2 == 0 and (e1 - int01) % 2 == 0


def restrict_framing(s: Framing, link: Link) -> Framing:
    """The framing induced on a sublink."""
    offs = s.as_dict()
    missing = [k for k in link.component_ids if k not in offs]
    if missing:
        raise LinkMismatchError(f"framing lacks components {missing}")
    return Framing(link, {k: offs[k] for k in link.component_ids})


def union_framings(framings: list[Framing], ambient_tag: str) -> Framing:
    """Disjoint union, concatenating component lists in the given order."""
    ids: list[str] = []
    offs: dict[str, int] = {}
    for s in framings:
        if s.link.ambient_tag != ambient_tag:
            raise LinkMismatchError("cannot union framings across ambients")
        for k, v in s.offsets:
            if k in offs:
                raise LinkMismatchError(f"duplicate component {k!r} in union")
            ids.append(k)
            offs[k] = v
    return Framing(Link(tuple(ids), ambient_tag), offs)
