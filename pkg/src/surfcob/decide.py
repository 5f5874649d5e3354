"""Decision procedures for cobordism and concordance questions.

Each decider evaluates one classification statement: it checks the
hypotheses, compares the supplied homology classes and Euler data, and
returns a Verdict naming every violated condition.  Unmet hypotheses yield
not_applicable rather than a negative answer; malformed or missing data
raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .diagrams import (
    MODE_TWO,
    Component,
    DoublePoint,
    DoublePointDiagram,
    Infeasible,
    NormalizeResult,
    normalize,
)
from .errors import (
    ImmersedInputError,
    InputError,
    InternalLogicError,
    LinkMismatchError,
    MissingDataError,
)
from .framing import Link, links_match
from .homology import (
    AbelianGroupPresentation,
    HomologyClass,
    classes_equal,
    zero_class,
)
from .surfaces import (
    ANSWER_NO,
    ANSWER_NOT_APPLICABLE,
    ANSWER_YES,
    SurfaceSpec,
    Verdict,
    diffeomorphic,
)

GROUP_H2_REL_MOD2 = "h2_rel_mod2"
GROUP_H2_ABS_MOD2 = "h2_abs_mod2"
GROUP_H2_REL_INT = "h2_rel_int"
GROUP_H2_ABS_INT = "h2_abs_int"

_GROUP_NAMES = (
    GROUP_H2_REL_MOD2,
    GROUP_H2_ABS_MOD2,
    GROUP_H2_REL_INT,
    GROUP_H2_ABS_INT,
)


@dataclass(frozen=True)
class AmbientSpec:
    """The ambient 4-manifold: hypothesis flags plus the homology groups a
    query needs, each presented explicitly and demanded lazily."""

    orientable: bool = True
    simply_connected: bool = False
    boundary_nonempty: bool = False
    connected: bool = True
    is_s4: bool = False
    groups: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "groups", dict(self.groups))
        for name, group in self.groups.items():
            if name not in _GROUP_NAMES:
                raise InputError(f"unknown group slot {name!r}")
            if not isinstance(group, AbelianGroupPresentation):
                raise InputError(f"group slot {name!r} holds a non-group")
        if self.simply_connected and not self.orientable:
            raise InputError("a simply connected 4-manifold is orientable")
        if self.is_s4:
            if (
                not self.simply_connected
                or not self.connected
                or self.boundary_nonempty
            ):
                raise InputError(
                    "the 4-sphere flag requires a closed connected simply "
                    "connected ambient"
                )

    def group(self, name: str) -> Optional[AbelianGroupPresentation]:
        return self.groups.get(name)


@dataclass(frozen=True)
class BoundaryCobordismSpec:
    """A cobordism of boundary links inside the boundary 3-manifold, with its
    Euler contribution and the mod-2 class of the closed union it completes."""

    from_link: Link
    to_link: Link
    e_z: int
    class_contribution: Optional[HomologyClass] = None
    class_contribution_int: Optional[HomologyClass] = None
    is_concordance: bool = False

    def __post_init__(self):
        if self.is_concordance and not links_match(self.from_link, self.to_link):
            raise LinkMismatchError(
                "a concordance keeps its boundary link; from and to differ"
            )


def _resolve_group(
    x: AmbientSpec, name: str, *classes: Optional[HomologyClass]
) -> AbelianGroupPresentation:
    """The group presentation a comparison happens in, reconciling the
    ambient's named slot with the groups the classes carry."""
    group = x.group(name)
    for cls in classes:
        if cls is None:
            continue
        if group is None:
            group = cls.group
        elif cls.group != group:
            raise InputError(
                f"class lives in a different group than the ambient's "
                f"{name} slot"
            )
    if group is None:
        raise MissingDataError(
            f"no presentation available for group slot {name!r}"
        )
    return group


def _class_or_zero(
    cls: Optional[HomologyClass], group: AbelianGroupPresentation
) -> HomologyClass:
    return cls if cls is not None else zero_class(group)


def _not_applicable(reason: str) -> Verdict:
    return Verdict(ANSWER_NOT_APPLICABLE, obstructions=(reason,))


def _verdict(obstructions: list, certificate=None) -> Verdict:
    if obstructions:
        return Verdict(ANSWER_NO, obstructions=tuple(obstructions))
    return Verdict(ANSWER_YES, certificate=certificate)


def _check_boundary_shape(x: AmbientSpec, *surfaces: SurfaceSpec) -> None:
    if not x.boundary_nonempty:
        for s in surfaces:
            if not s.is_closed():
                raise InputError(
                    "a surface with boundary needs an ambient with nonempty "
                    "boundary"
                )


def decide_cobordant(x: AmbientSpec, a: SurfaceSpec, b: SurfaceSpec) -> Verdict:
    """Cobordant in an orientable connected ambient: equal mod-2 classes rel
    boundary, and equal total Euler numbers unless the ambient has boundary."""
    if not x.orientable:
        return _not_applicable("ambient_not_orientable")
    if not x.connected:
        return _not_applicable("ambient_disconnected")
    if a.is_closed() != b.is_closed():
        return _not_applicable("mixed_boundary")
    _check_boundary_shape(x, a, b)
    group = _resolve_group(x, GROUP_H2_REL_MOD2, a.class_mod2, b.class_mod2)
    cls_a = _class_or_zero(a.class_mod2, group)
    cls_b = _class_or_zero(b.class_mod2, group)
    obstructions = []
    if not classes_equal(cls_a, cls_b):
        obstructions.append(GROUP_H2_REL_MOD2)
    if not x.boundary_nonempty:
        if a.total_base_euler() != b.total_base_euler():
            obstructions.append("euler")
    return _verdict(obstructions)


def decide_cobordant_rel_boundary(
    x: AmbientSpec, a: SurfaceSpec, b: SurfaceSpec
) -> Verdict:
    """Cobordant rel boundary: the closed union must be mod-2 null-homologous
    and the Euler numbers must agree at one (hence every) common framing."""
    if not x.orientable:
        return _not_applicable("ambient_not_orientable")
    link_a = a.boundary_link()
    link_b = b.boundary_link()
    if not links_match(link_a, link_b):
        raise LinkMismatchError(
            f"surfaces bound different links: "
            f"{sorted(link_a.component_ids)} vs {sorted(link_b.component_ids)}"
        )
    _check_boundary_shape(x, a, b)
    group = _resolve_group(x, GROUP_H2_ABS_MOD2, a.class_mod2, b.class_mod2)
    union = _class_or_zero(a.class_mod2, group) + _class_or_zero(
        b.class_mod2, group
    )
    obstructions = []
    if not classes_equal(union, zero_class(group)):
        obstructions.append(GROUP_H2_ABS_MOD2)
    if a.components and not a.is_closed():
        s_common = a.base_framing()
        e_a = a.total_base_euler()
        e_b = b.euler_at(s_common)
    else:
        e_a = a.total_base_euler()
        e_b = b.total_base_euler()
    if e_a != e_b:
        obstructions.append("euler")
    return _verdict(obstructions)


def decide_extends_cobordism(
    x: AmbientSpec,
    a: SurfaceSpec,
    b: SurfaceSpec,
    z: BoundaryCobordismSpec,
) -> Verdict:
    """A boundary cobordism extends to a surface cobordism exactly when the
    closed union is mod-2 null-homologous and the Euler balance
    e(b) = e(a) + e(Z) holds at the base framings."""
    if not x.orientable:
        return _not_applicable("ambient_not_orientable")
    if not x.connected:
        return _not_applicable("ambient_disconnected")
    _check_boundary_shape(x, a, b)
    if not links_match(z.from_link, a.boundary_link()):
        raise LinkMismatchError("Z does not start on the boundary of a")
    if not links_match(z.to_link, b.boundary_link()):
        raise LinkMismatchError("Z does not end on the boundary of b")
    group = _resolve_group(x, GROUP_H2_ABS_MOD2, z.class_contribution)
    union = _class_or_zero(z.class_contribution, group)
    obstructions = []
    if not classes_equal(union, zero_class(group)):
        obstructions.append(GROUP_H2_ABS_MOD2)
    if b.total_base_euler() != a.total_base_euler() + z.e_z:
        obstructions.append("euler_balance")
    return _verdict(obstructions)


def decide_oriented_cobordant(
    x: AmbientSpec, a: SurfaceSpec, b: SurfaceSpec
) -> Verdict:
    """Oriented cobordism: equal integral classes rel boundary, orientations
    as given."""
    if not x.orientable:
        return _not_applicable("ambient_not_orientable")
    if a.class_int is None or b.class_int is None:
        raise MissingDataError(
            "oriented cobordism needs integral classes on both surfaces"
        )
    group = _resolve_group(x, GROUP_H2_REL_INT, a.class_int, b.class_int)
    obstructions = []
    if not classes_equal(
        _class_or_zero(a.class_int, group), _class_or_zero(b.class_int, group)
    ):
        obstructions.append(GROUP_H2_REL_INT)
    return _verdict(obstructions)


def decide_oriented_extends(
    x: AmbientSpec,
    a: SurfaceSpec,
    b: SurfaceSpec,
    z: BoundaryCobordismSpec,
) -> Verdict:
    """Oriented extension: the signed closed union class must vanish over the
    integers."""
    if not x.orientable:
        return _not_applicable("ambient_not_orientable")
    if not links_match(z.from_link, a.boundary_link()):
        raise LinkMismatchError("Z does not start on the boundary of a")
    if not links_match(z.to_link, b.boundary_link()):
        raise LinkMismatchError("Z does not end on the boundary of b")
    if z.class_contribution_int is None:
        raise MissingDataError(
            "oriented extension needs the integral class of the closed union"
        )
    group = _resolve_group(x, GROUP_H2_ABS_INT, z.class_contribution_int)
    obstructions = []
    if not classes_equal(z.class_contribution_int, zero_class(group)):
        obstructions.append("h2_abs_int")
    return _verdict(obstructions)


def decide_spanning_extends(
    x: AmbientSpec,
    s: SurfaceSpec,
    sz_euler: Sequence[int],
    zclass: Optional[HomologyClass],
) -> Verdict:
    """A spanning manifold for the boundary extends over the surface exactly
    when the union class vanishes mod 2 and every component's Euler number
    against the spanning framing is zero."""
    if not x.orientable:
        return _not_applicable("ambient_not_orientable")
    values = tuple(int(v) for v in sz_euler)
    if len(values) != len(s.components):
        raise InputError(
            f"need one Euler value per component: {len(s.components)} "
            f"components, {len(values)} values"
        )
    group = _resolve_group(x, GROUP_H2_ABS_MOD2, zclass)
    obstructions = []
    if not classes_equal(_class_or_zero(zclass, group), zero_class(group)):
        obstructions.append(GROUP_H2_ABS_MOD2)
    if any(v != 0 for v in values):
        obstructions.append("component_euler")
    return _verdict(obstructions)


def _almost_extendable_certificate(
    a: SurfaceSpec, b: SurfaceSpec, e_a: int, e_b: int
) -> NormalizeResult:
    """Two-column witness diagram: one aggregate component per side (an empty
    side is stood in for by a trivial sphere of Euler number zero), one cross
    point when the Euler numbers are odd."""
    if a.is_empty() and b.is_empty():
        diagram = DoublePointDiagram(MODE_TWO, ())
    else:
        comps = (
            Component("S0", 0, e_a),
            Component("S1", 1, e_b),
        )
        points = ()
        if e_a % 2 != 0:
            points = (DoublePoint("q1", ("S0", "S1")),)
        diagram = DoublePointDiagram(MODE_TWO, comps, points)
    result = normalize(diagram)
    if isinstance(result, Infeasible):
        raise InternalLogicError(
            f"certificate diagram unexpectedly infeasible: {result.reason}"
        )
    return result


def decide_almost_extendable(
    x: AmbientSpec,
    a: SurfaceSpec,
    b: SurfaceSpec,
    zclass: Optional[HomologyClass],
    e_a: int,
    e_b: int,
) -> Verdict:
    """Almost-extendability of a boundary spanning surface over two embedded
    surfaces: zero union class mod 2 and equal Euler numbers against the
    spanning framing; a positive answer carries a normalized diagram."""
    if not x.orientable:
        return _not_applicable("ambient_not_orientable")
    if a.self_count or b.self_count:
        raise ImmersedInputError(
            "almost-extendability is decided for embedded surfaces; analyse "
            "immersed data through the diagram feasibility predicates"
        )
    for name, s, e in (("a", a, e_a), ("b", b, e_b)):
        if s.is_empty() and e != 0:
            raise InputError(f"empty surface {name} must have Euler number 0")
    group = _resolve_group(x, GROUP_H2_ABS_MOD2, zclass)
    obstructions = []
    if not classes_equal(_class_or_zero(zclass, group), zero_class(group)):
        obstructions.append(GROUP_H2_ABS_MOD2)
    if e_a != e_b:
        obstructions.append("euler")
    if obstructions:
        return _verdict(obstructions)
    return _verdict([], certificate=_almost_extendable_certificate(a, b, e_a, e_b))


def decide_concordant(
    x: AmbientSpec,
    a: SurfaceSpec,
    b: SurfaceSpec,
    z: Optional[BoundaryCobordismSpec] = None,
) -> Verdict:
    """Concordance of connected surfaces in a simply connected ambient.

    Requires abstractly diffeomorphic surfaces; orientable pairs then compare
    integral classes up to a global sign, non-orientable pairs compare the
    mod-2 union class and Euler numbers.
    """
    if not x.simply_connected:
        return _not_applicable("pi1_nontrivial")
    if not (a.is_connected() and b.is_connected()):
        return _not_applicable("disconnected_surface")
    link_a = a.boundary_link()
    link_b = b.boundary_link()
    if not links_match(link_a, link_b):
        raise LinkMismatchError(
            "concordance needs surfaces sharing one boundary link"
        )
    _check_boundary_shape(x, a, b)
    if z is not None:
        if not z.is_concordance:
            raise InputError("the supplied cobordism is not a concordance")
        if not links_match(z.from_link, link_a):
            raise LinkMismatchError("Z does not start on the shared boundary")
    if not diffeomorphic(a, b):
        return _verdict(["diffeomorphism"])
    obstructions = []
    if a.orientable() and b.orientable():
        if a.class_int is None or b.class_int is None:
            raise MissingDataError(
                "concordance of orientable surfaces needs integral classes"
            )
        group = _resolve_group(x, GROUP_H2_REL_INT, a.class_int, b.class_int)
        cls_a = _class_or_zero(a.class_int, group)
        cls_b = _class_or_zero(b.class_int, group)
        if not (classes_equal(cls_a, cls_b) or classes_equal(cls_a, -cls_b)):
            obstructions.append(GROUP_H2_REL_INT)
    else:
        group = _resolve_group(x, GROUP_H2_ABS_MOD2, a.class_mod2, b.class_mod2)
        union = _class_or_zero(a.class_mod2, group) + _class_or_zero(
            b.class_mod2, group
        )
        if not classes_equal(union, zero_class(group)):
            obstructions.append(GROUP_H2_ABS_MOD2)
        if a.is_closed():
            if a.total_base_euler() != b.total_base_euler():
                obstructions.append("euler")
        else:
            if a.total_base_euler() != b.euler_at(a.base_framing()):
                obstructions.append("euler")
    return _verdict(obstructions)


def product_concordance(a: SurfaceSpec, b: SurfaceSpec) -> BoundaryCobordismSpec:
    """The product cobordism on the shared boundary link.

    Its Euler contribution is the framing defect between the two surfaces'
    base framings, which makes the extension balance test equivalent to
    comparing Euler numbers at one common framing.
    """
    link_a = a.boundary_link()
    link_b = b.boundary_link()
    if not links_match(link_a, link_b):
        raise LinkMismatchError("product cobordism needs a shared boundary link")
    base_a = a.base_framing().as_dict()
    base_b = b.base_framing().as_dict()
    e_z = sum(base_b[k] - base_a[k] for k in base_a)
    contribution = None
    if a.class_mod2 is not None and b.class_mod2 is not None:
        contribution = a.class_mod2 + b.class_mod2
    elif a.class_mod2 is not None or b.class_mod2 is not None:
        given = a.class_mod2 if a.class_mod2 is not None else b.class_mod2
        contribution = given
    return BoundaryCobordismSpec(
        from_link=link_a,
        to_link=link_b,
        e_z=e_z,
        class_contribution=contribution,
        is_concordance=True,
    )


@dataclass(frozen=True)
class AuditReport:
    """Which deciders ran with which answers, plus any implication-lattice
    violations among them."""

    ran: tuple[tuple[str, str], ...]
    violations: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "ran", tuple(map(tuple, self.ran)))
        object.__setattr__(self, "violations", tuple(self.violations))


def consistency_audit(
    x: AmbientSpec,
    a: SurfaceSpec,
    b: SurfaceSpec,
    z: Optional[BoundaryCobordismSpec] = None,
) -> AuditReport:
    """Cross-check the implication lattice on one instance.

    concordant implies cobordant rel boundary implies cobordant, and oriented
    cobordant implies cobordant; a verdict pattern breaking any of these is
    reported as a violation.  Deciders that cannot run on the given data are
    skipped silently.
    """
    answers = {}

    def run(name, fn, *args) -> None:
        try:
            verdict = fn(*args)
        except InputError:
            return
        if verdict.answer != ANSWER_NOT_APPLICABLE:
            answers[name] = verdict.answer
    run("concordant", decide_concordant, x, a, b, z)
    run("cobordant_rel_boundary", decide_cobordant_rel_boundary, x, a, b)
    run("cobordant", decide_cobordant, x, a, b)
    run("oriented_cobordant", decide_oriented_cobordant, x, a, b)
    if z is not None:
        run("extends", decide_extends_cobordism, x, a, b, z)

    violations = []

    def implies(first: str, second: str) -> None:
        if answers.get(first) == ANSWER_YES and answers.get(second) == ANSWER_NO:
            violations.append(f"{first} = yes but {second} = no")

    implies("concordant", "cobordant_rel_boundary")
    implies("cobordant_rel_boundary", "cobordant")
    implies("concordant", "cobordant")
    implies("oriented_cobordant", "cobordant")
    return AuditReport(
        ran=tuple(sorted(answers.items())), violations=tuple(violations)
    )
