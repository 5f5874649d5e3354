"""Seeded random generators for diagrams, tables, moves, and decision
instances.

Shared between the randomized test suites and the CLI's sample emitter so a
seed names the same object everywhere.  All functions draw only from the
passed random.Random.
"""

from __future__ import annotations

import random
from typing import Optional

from .decide import AmbientSpec, product_concordance
from .diagrams import (
    MODE_THREE,
    MODE_TWO,
    Component,
    DoublePoint,
    DoublePointDiagram,
    SignTable,
    finger_move,
    flip_zero,
    swap_signs,
)
from .framing import Framing, Link, RelEulerDatum
from .homology import AbelianGroupPresentation, HomologyClass, f2_group
from .surfaces import ComponentSpec, SurfaceSpec


def random_diagram(
    rng: random.Random,
    mode: Optional[str] = None,
    max_points: int = 10,
    max_components: int = 5,
    max_target: int = 8,
    parity_bias: float = 0.5,
) -> DoublePointDiagram:
    """A random valid diagram within the documented desk-scale bounds.

    parity_bias is the probability of nudging each target onto its
    component's incidence parity, raising the share of feasible instances.
    """
    if mode is None:
        mode = rng.choice((MODE_TWO, MODE_THREE))
    columns = 2 if mode == MODE_TWO else 3
    n_comps = rng.randint(0, max_components)
    if mode == MODE_TWO and n_comps == 1:
        n_comps = 2
    if mode == MODE_THREE and n_comps in (0, 2):
        n_comps = rng.choice((1, 3))
    cols = list(range(columns)) + [
        rng.randrange(columns) for _ in range(n_comps - columns)
    ]
    cols = cols[:n_comps]
    rng.shuffle(cols)
    if mode == MODE_THREE and n_comps == 1:
        cols = [rng.randrange(columns)]
    ids = [f"c{i}" for i in range(n_comps)]
    points = []
    if n_comps:
        for k in range(rng.randint(0, max_points)):
            a = rng.choice(ids)
            b = rng.choice(ids)
            points.append(DoublePoint(f"p{k}", (a, b)))
    mult = {cid: 0 for cid in ids}
    for pt in points:
        for cid in pt.ends:
            mult[cid] += 1
    comps = []
    for cid, col in zip(ids, cols):
        t = rng.randint(-max_target, max_target)
        if t % 2 != mult[cid] % 2 and rng.random() < parity_bias:
            t += rng.choice((-1, 1))
        comps.append(Component(cid, col, t))
    return DoublePointDiagram(mode, tuple(comps), tuple(points))


def random_table(rng: random.Random, d: DoublePointDiagram) -> SignTable:
    """A uniformly random total sign table on a diagram."""
    entries = {
        (pt.id, comp.id): rng.choice((1, -1))
        for pt in d.double_points
        for comp in d.components
    }
    return SignTable(d, entries)


def legal_moves(d: DoublePointDiagram, eps: SignTable) -> list[tuple]:
    """Every applicable move as ("finger", c, other), ("swap", c, i, j), or
    ("flip", c, i)."""
    out: list[tuple] = []
    comps = d.components
    degenerate = d.is_degenerate()
    for a in comps:
        for b in comps:
            if degenerate:
                out.append(("finger", a.id, b.id))
            elif a.column != b.column:
                out.append(("finger", a.id, b.id))
    for comp in comps:
        pts = d.double_points
        for i in range(len(pts)):
            for j in range(len(pts)):
                if i == j:
                    continue
                pi, pj = pts[i], pts[j]
                if d.multiplicity(pi.id, comp.id) != d.multiplicity(
                    pj.id, comp.id
                ):
                    continue
                if eps.sign(pi.id, comp.id) != -eps.sign(pj.id, comp.id):
                    continue
                out.append(("swap", comp.id, pi.id, pj.id))
        for pt in d.double_points:
            if d.multiplicity(pt.id, comp.id) == 0:
                out.append(("flip", comp.id, pt.id))
    return out


def apply_move(
    d: DoublePointDiagram, eps: SignTable, move: tuple
) -> tuple[DoublePointDiagram, SignTable]:
    if move[0] == "finger":
        return finger_move(d, eps, move[1], move[2])
    if move[0] == "swap":
        return d, swap_signs(d, eps, move[1], move[2], move[3])
    if move[0] == "flip":
        return d, flip_zero(d, eps, move[1], move[2])
    raise ValueError(f"unknown move kind {move[0]!r}")


def random_legal_move(
    rng: random.Random, d: DoublePointDiagram, eps: SignTable
) -> Optional[tuple]:
    moves = legal_moves(d, eps)
    if not moves:
        return None
    return rng.choice(moves)


# ---------------------------------------------------------------------------
# decision instances


def random_group(rng: random.Random, max_rank: int = 4) -> AbelianGroupPresentation:
    free = rng.randint(0, max_rank)
    n_torsion = rng.randint(0, max(0, max_rank - free))
    factors = []
    d = 1
    for _ in range(n_torsion):
        d *= rng.choice((2, 2, 3, 4))
        factors.append(d)
    return AbelianGroupPresentation(free, tuple(factors))


def random_class(
    rng: random.Random, group: AbelianGroupPresentation
) -> HomologyClass:
    coords = []
    for i in range(group.coordinate_length):
        coords.append(rng.randint(-5, 5))
    return HomologyClass(group, tuple(coords))


def _euler_form(rng: random.Random, rank: int):
    """A fixed sign-symmetric integer form tying Euler numbers to integral
    classes, so equal-up-to-sign classes always get equal Euler numbers."""
    weights = [2 * rng.randint(-3, 3) for _ in range(rank)]

    def q(cls: HomologyClass) -> int:
        return sum(w * c * c for w, c in zip(weights, cls.coords))

    return q


def _closed_component(rng: random.Random, orientable: bool) -> ComponentSpec:
    if orientable:
        genus = rng.randint(0, 3)
        return ComponentSpec(True, 2 - 2 * genus, ())
    crosscaps = rng.randint(1, 4)
    return ComponentSpec(False, 2 - crosscaps, ())


def _bounded_component(
    rng: random.Random, orientable: bool, names: tuple[str, ...]
) -> ComponentSpec:
    b = len(names)
    if orientable:
        genus = rng.randint(0, 2)
        return ComponentSpec(True, 2 - 2 * genus - b, names)
    crosscaps = rng.randint(1, 3)
    return ComponentSpec(False, 2 - crosscaps - b, names)


def random_audit_instance(rng: random.Random) -> tuple:
    """A geometrically coherent (X, a, b, z-or-None) tuple.

    Mod-2 classes are reductions of integral ones when both exist, and Euler
    numbers of closed orientable surfaces follow a sign-symmetric form of the
    integral class, so the implication lattice holds by construction.
    """
    rank = rng.randint(0, 4)
    g_int = AbelianGroupPresentation(rank, ())
    g_two = f2_group(rank)
    groups = {
        "h2_rel_mod2": g_two,
        "h2_abs_mod2": g_two,
        "h2_rel_int": g_int,
        "h2_abs_int": g_int,
    }
    simply = rng.random() < 0.6
    x = AmbientSpec(
        orientable=True,
        simply_connected=simply,
        boundary_nonempty=rng.random() < 0.5,
        connected=True,
        is_s4=False,
        groups=groups,
    )
    orientable = rng.random() < 0.5
    bounded = x.boundary_nonempty and rng.random() < 0.4
    q = _euler_form(rng, rank)

    def reduce2(cls: HomologyClass) -> HomologyClass:
        return HomologyClass(g_two, tuple(c % 2 for c in cls.coords))

    def build(cls_int: Optional[HomologyClass], partner=None) -> SurfaceSpec:
        if bounded:
            names = ("K1", "K2") if rng.random() < 0.5 else ("K1",)
            if partner is not None:
                names = tuple(
                    partner.components[0].boundary
                )
            comp = _bounded_component(rng, orientable, names)
            link = Link(names, "generic")
            framing = Framing(link, {k: rng.randint(-2, 2) for k in names})
            e_at_zero = (
                q(cls_int) if cls_int is not None else rng.randint(-4, 4)
            )
            # transport from the zero framing so classes equal up to sign
            # always yield the same Euler function of the framing
            e_val = e_at_zero + sum(framing.as_dict().values())
            datum = RelEulerDatum("c0", framing, e_val)
            euler: tuple = (datum,)
        else:
            comp = _closed_component(rng, orientable)
            e_val = q(cls_int) if cls_int is not None else rng.randint(-4, 4)
            euler = (e_val,)
        if cls_int is not None:
            return SurfaceSpec(
                components=(comp,),
                class_int=cls_int,
                class_mod2=reduce2(cls_int),
                euler=euler,
            )
        mod2 = HomologyClass(g_two, tuple(rng.randint(0, 1) for _ in range(rank)))
        return SurfaceSpec(components=(comp,), class_mod2=mod2, euler=euler)

    if orientable:
        cls_a = random_class(rng, g_int)
        roll = rng.random()
        if roll < 0.35:
            cls_b = cls_a
        elif roll < 0.55:
            cls_b = -cls_a
        else:
            cls_b = random_class(rng, g_int)
        a = build(cls_a)
        b = build(cls_b, partner=a)
    else:
        a = build(None)
        b = build(None, partner=a)
    if rng.random() < 0.5 and a.components[0].boundary == b.components[0].boundary:
        same_form = rng.random() < 0.7
        if same_form:
            b = SurfaceSpec(
                components=a.components,
                class_int=b.class_int,
                class_mod2=b.class_mod2,
                euler=b.euler,
            )
    z = None
    if bounded and rng.random() < 0.5:
        try:
            z = product_concordance(a, b)
        except Exception:
            z = None
    return x, a, b, z
