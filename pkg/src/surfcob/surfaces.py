"""Compact-surface bookkeeping: canonical forms, Euler-number arithmetic, and
the verdict type shared by every decision procedure.

A compact connected surface is pinned by orientability, Euler characteristic,
and boundary-component count; the canonical form makes the genus or crosscap
count explicit and is what diffeomorphism testing compares.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import InputError
from .framing import (
    Framing,
    Link,
    RelEulerDatum,
    euler_under_framing,
    restrict_framing,
    union_framings,
)
from .homology import HomologyClass

ANSWER_YES = "yes"
ANSWER_NO = "no"
ANSWER_NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CanonicalForm:
    """O(g, b) for orientable, N(k, b) for non-orientable (k crosscaps)."""

    orientable: bool
    count: int
    boundary: int

    def __str__(self) -> str:
        if self.orientable:
            return f"O(g={self.count},b={self.boundary})"
        return f"N(k={self.count},b={self.boundary})"


@dataclass(frozen=True)
class ComponentSpec:
    """One connected component: orientability, Euler characteristic, and named
    boundary circles."""

    orientable: bool
    euler_characteristic: int
    boundary: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        if len(set(self.boundary)) != len(self.boundary):
            raise InputError("boundary circle names must be unique")
        canonical_form(self)  # rejects inconsistent triples

    def is_closed(self) -> bool:
        return not self.boundary


def canonical_form(component: ComponentSpec | tuple) -> CanonicalForm:
    """Genus/crosscap normal form from (orientable, chi, boundary count).

    Rejects triples no compact surface realizes: chi > 2, orientable surfaces
    with chi + b odd or genus below zero, non-orientable ones without a
    crosscap.
    """
    if isinstance(component, ComponentSpec):
        orientable = component.orientable
        chi = component.euler_characteristic
        b = len(component.boundary)
    else:
        orientable, chi, b = component
    if not isinstance(chi, int) or isinstance(chi, bool):
        raise InputError("Euler characteristic must be an integer")
    if b < 0:
        raise InputError("boundary count must be nonnegative")
    if chi > 2:
        raise InputError(f"no compact surface has Euler characteristic {chi}")
    if orientable:
        if (chi + b) % 2 != 0:
            raise InputError(
                f"orientable surface needs chi = boundary count mod 2, "
                f"got chi={chi}, b={b}"
            )
        g = (2 - chi - b) // 2
        if g < 0:
            raise InputError(f"orientable surface with chi={chi}, b={b} has genus {g}")
        return CanonicalForm(True, g, b)
    k = 2 - chi - b
    if k < 1:
        raise InputError(
            f"non-orientable surface needs at least one crosscap, "
            f"chi={chi}, b={b} gives {k}"
        )
    return CanonicalForm(False, k, b)


# per-component Euler data: an absolute integer for closed components, a
# RelEulerDatum for components with boundary
EulerEntry = Union[int, RelEulerDatum]


@dataclass(frozen=True)
class SurfaceSpec:
    """A properly embedded or immersed surface presented by its invariants:
    components, homology classes, Euler data, and a double-point count.

    The empty surface (no components) is legal and carries zero class and zero
    Euler data.
    """

    components: tuple[ComponentSpec, ...] = ()
    class_mod2: Optional[HomologyClass] = None
    class_int: Optional[HomologyClass] = None
    orientation_tag: str = "as_given"
    euler: tuple[EulerEntry, ...] = ()
    embedded: bool = True
    self_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "euler", tuple(self.euler))
        if self.self_count < 0:
            raise InputError("self_count must be nonnegative")
        if self.embedded and self.self_count != 0:
            raise InputError("an embedded surface has self_count 0")
        if len(self.euler) != len(self.components):
            raise InputError(
                f"need one Euler entry per component: "
                f"{len(self.components)} components, {len(self.euler)} entries"
            )
        seen: set[str] = set()
        for comp, entry in zip(self.components, self.euler):
            for bid in comp.boundary:
                if bid in seen:
                    raise InputError(f"boundary circle {bid!r} used twice")
                seen.add(bid)
            if comp.is_closed():
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise InputError(
                        "closed components take an absolute integer Euler number"
                    )
            else:
                if not isinstance(entry, RelEulerDatum):
                    raise InputError(
                        "components with boundary take relative Euler data"
                    )
                datum_ids = set(entry.base_framing.link.component_ids)
                if datum_ids != set(comp.boundary):
                    raise InputError(
                        "Euler datum's link must be the component's boundary: "
                        f"{sorted(datum_ids)} vs {sorted(comp.boundary)}"
                    )

    def is_empty(self) -> bool:
        return not self.components

    def is_closed(self) -> bool:
        return all(c.is_closed() for c in self.components)

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def orientable(self) -> bool:
        """True only if every component is orientable."""
        return all(c.orientable for c in self.components)

    def nonorientable(self) -> bool:
        """True only if every component is non-orientable."""
        return all(not c.orientable for c in self.components) and bool(self.components)

    def boundary_link(self, ambient_tag: str = "generic") -> Link:
        ids: list[str] = []
        tag = None
        for comp, entry in zip(self.components, self.euler):
            ids.extend(comp.boundary)
            if isinstance(entry, RelEulerDatum):
                t = entry.base_framing.link.ambient_tag
                if tag is None:
                    tag = t
                elif tag != t:
                    raise InputError("components declare different boundary ambients")
        return Link(tuple(ids), tag if tag is not None else ambient_tag)

    def base_framing(self) -> Framing:
        """Union of the components' declared base framings over the full
        boundary link."""
        framings = [
            e.base_framing for e in self.euler if isinstance(e, RelEulerDatum)
        ]
        link = self.boundary_link()
        return union_framings(framings, link.ambient_tag)

    def total_base_euler(self) -> int:
        """Total Euler number with bounded components taken at their own base
        framings."""
        total = 0
        for entry in self.euler:
            total += entry if isinstance(entry, int) else entry.e_base
        return total

    def euler_at(self, s: Framing) -> int:
        """Total Euler number with bounded components re-expressed at s."""
        total = 0
        for entry in self.euler:
            if isinstance(entry, int):
                total += entry
            else:
                total += euler_under_framing(
                    entry, restrict_framing(s, entry.base_framing.link)
                )
        return total


def diffeomorphic(a: SurfaceSpec, b: SurfaceSpec) -> bool:
    """Abstract diffeomorphism: equal multisets of component canonical forms
    (boundary counts included in the forms)."""
    return Counter(map(canonical_form, a.components)) == Counter(
        map(canonical_form, b.components)
    )


def puncture_adjust(e: int, fr_k0: int, fr_k1: int) -> int:
    """Euler-number change when an annulus between two framed curves is removed
    from a surface: the punctured surface has e + fr(K0) + fr(K1)."""
    return e + fr_k0 + fr_k1


def homotopy_invariant(e: int, self_count: int) -> int:
    """(e - 2 * self_count) mod 4: unchanged by finger moves and by cusp
    moves, hence a regular-homotopy-into-isotopy obstruction."""
    return (e - 2 * self_count) % 4


def massey_range(chi: int) -> set[int]:
    """Realizable Euler numbers of a closed non-orientable surface of Euler
    characteristic chi embedded in the 4-sphere:
    {2*chi - 4, 2*chi, ..., 4 - 2*chi}, stepping by 4.

    >>> sorted(massey_range(1))
    [-2, 2]
    """
    if chi > 1:
        raise InputError("closed non-orientable surfaces have chi <= 1")
    return set(range(2 * chi - 4, 4 - 2 * chi + 1, 4))


def massey_warnings(surface: SurfaceSpec, ambient_is_s4: bool) -> list[str]:
    """Warning strings for closed non-orientable components whose Euler number
    falls outside the realizable 4-sphere range.  Only consulted when the
    ambient is explicitly declared to be the 4-sphere; never a rejection."""
    if not ambient_is_s4:
        return []
    warnings = []
    for idx, (comp, entry) in enumerate(zip(surface.components, surface.euler)):
        if comp.is_closed() and not comp.orientable and isinstance(entry, int):
            allowed = massey_range(comp.euler_characteristic)
            if entry not in allowed:
                warnings.append(
                    f"component {idx}: Euler number {entry} is outside the "
                    f"4-sphere range {sorted(allowed)} for chi="
                    f"{comp.euler_characteristic}"
                )
    return warnings


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    A "no" always names at least one violated condition; "not_applicable"
    names the unmet hypothesis.  Certificates accompany "yes" only for the
    procedures that construct one.
    """

    answer: str
    obstructions: tuple[str, ...] = ()
    certificate: Optional[object] = None

    def __post_init__(self):
        object.__setattr__(self, "obstructions", tuple(self.obstructions))
        if self.answer not in (ANSWER_YES, ANSWER_NO, ANSWER_NOT_APPLICABLE):
            raise InputError(f"unknown answer {self.answer!r}")
        if self.answer == ANSWER_NO and not self.obstructions:
            raise InputError("a negative verdict must name its obstructions")

    @property
    def yes(self) -> bool:
        return self.answer == ANSWER_YES
