"""Nilpotent-cone assembly kits, glueing, wall-crossing maps and fixed loci.

A kit lists the chamber-stable components over the two admissible splitting
types of the degree parity.  Interior chambers carry a central family of
stable parabolic bundles (a four-punctured sphere compactified by the four
stable orbit points N_I) and one affine tail per partition-set member;
exterior chambers replace the central family by the sphere block of their
boundary wall, with the tails attached at marked-point slots.  Glueing
compactifies every tail to a projective line and must always produce the
D4-configuration: five rational components, the central one meeting each of
the other four in a single point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bundles import Splitting
from .stability import ComponentLabel
from .weights import (
    EMPTY,
    EVEN,
    FULL,
    Chamber,
    MarkSubset,
    OnWalls,
    Wall,
    classify,
    iota_of,
    neighbor_across_wall,
    partition_pairs,
    vertex_of_subset,
    APEX,
)

AFFINE = "affine_line"
PUNCTURED = "punctured_line"
POINT = "point"
SPHERE = "sphere"
SPHERE_MINUS_4 = "sphere_minus_4"


def main_delta(parity: str) -> int:
    return 0 if parity == EVEN else 1


def off_delta(parity: str) -> int:
    return 2 if parity == EVEN else 3


def splitting_for(parity: str, delta: int, m: int = 0) -> Splitting:
    if parity == EVEN:
        if delta == 0:
            return Splitting(m, m)
        if delta == 2:
            return Splitting(m + 1, m - 1)
    else:
        if delta == 1:
            return Splitting(m + 1, m)
        if delta == 3:
            return Splitting(m + 2, m - 1)
    raise ValueError("splitting type not admissible for this parity")


@dataclass(frozen=True)
class TailPart:
    delta: int
    label: ComponentLabel
    iso_type: str

    @property
    def name(self) -> str:
        return f"{self.label}@d{self.delta}"


@dataclass(frozen=True)
class Tail:
    subset: MarkSubset
    parts: tuple
    attach_point: str
    fixed_point: str

    @property
    def name(self) -> str:
        return f"tail{{{self.subset.compact}}}"


@dataclass(frozen=True)
class Central:
    kind: str          # "parabolic" | "bottom"
    delta: int
    label: str
    iso_type: str
    points: tuple      # N-point names (interior) or marked-point slots (exterior)

    @property
    def name(self) -> str:
        return self.label


@dataclass(frozen=True)
class AssemblyKit:
    chamber: Chamber
    m: int
    central: Central
    tails: tuple

    def components_by_splitting(self) -> dict:
        out = {}
        out.setdefault(self.central.delta, []).append((self.central.label, self.central.iso_type))
        for tail in self.tails:
            for part in tail.parts:
                out.setdefault(part.delta, []).append((str(part.label), part.iso_type))
        return {k: sorted(v) for k, v in sorted(out.items())}


def _n_point(subset: MarkSubset, delta: int) -> str:
    return f"N{{{subset.compact}}}@d{delta}"


def _tail_for(parity: str, subset: MarkSubset, attach_point: str) -> Tail:
    """The compactifiable block family labeled by a partition-set member."""
    if parity == EVEN:
        if subset == EMPTY:
            parts = (TailPart(2, ComponentLabel("K", 2, subset=EMPTY, level=-2), AFFINE),)
            fixed = "K+{}"
        elif subset == FULL:
            parts = (
                TailPart(0, ComponentLabel("L", 0, subset=FULL, level=2), PUNCTURED),
                TailPart(2, ComponentLabel("L", 2, subset=FULL, level=2), POINT),
            )
            fixed = "L+{1234}"
        else:
            parts = (TailPart(0, ComponentLabel("L", 0, subset=subset, level=0), AFFINE),)
            fixed = f"L+{{{subset.compact}}}"
    else:
        if subset.card == 1:
            parts = (TailPart(1, ComponentLabel("K", 1, subset=subset, level=-1), AFFINE),)
            fixed = f"K+{{{subset.compact}}}"
        elif subset.card == 3:
            parts = (TailPart(1, ComponentLabel("L", 1, subset=subset, level=1), AFFINE),)
            fixed = f"L+{{{subset.compact}}}"
        else:
            raise ValueError("tail label has the wrong cardinality parity")
    return Tail(subset, parts, attach_point, fixed)


def _bottom_block(parity: str, subset: MarkSubset):
    """The sphere block of the boundary wall labeled by `subset`."""
    if parity == EVEN:
        if subset.card == 1:
            return 2, ComponentLabel("K", 2, subset=subset, level=-2)
        if subset.card == 3:
            return 0, ComponentLabel("L", 0, subset=subset, level=0)
    else:
        if subset == EMPTY:
            return 3, ComponentLabel("K", 3, subset=EMPTY, level=-3)
        if subset.card == 2:
            return 1, ComponentLabel("K", 1, subset=subset, level=-1)
        if subset == FULL:
            return 1, ComponentLabel("L", 1, subset=FULL, level=1)
    raise ValueError("no bottom block for this label")


def assembly_kit(chamber: Chamber, m: int = 0) -> AssemblyKit:
    parity = chamber.parity
    if chamber.kind == "interior":
        points = []
        for s in chamber.sets:
            delta = off_delta(parity) if (parity == EVEN and s == EMPTY) else main_delta(parity)
            points.append(_n_point(s, delta))
        central = Central(
            "parabolic",
            main_delta(parity),
            "N{central}",
            SPHERE_MINUS_4,
            tuple(points),
        )
        tails = tuple(
            _tail_for(parity, s, _n_point(s, off_delta(parity) if (parity == EVEN and s == EMPTY) else main_delta(parity)))
            for s in chamber.sets
        )
        return AssemblyKit(chamber, m, central, tails)

    label_subset = chamber.subset
    delta, block = _bottom_block(parity, label_subset)
    slots = []
    tails = []
    for s in sorted(iota_of(label_subset)):
        slot_index = s.symdiff(label_subset).elements[0]
        slot = f"slot{{z{slot_index}}}"
        slots.append(slot)
        tails.append(_tail_for(parity, s, slot))
    central = Central("bottom", delta, str(block), SPHERE, tuple(sorted(slots)))
    return AssemblyKit(chamber, m, central, tuple(tails))


# ---------------------------------------------------------------------------
# glueing and the D4 census

@dataclass(frozen=True)
class D4Configuration:
    chamber: Chamber
    components: tuple  # (name, iso_type) after compactification
    edges: tuple       # (central name, tail name, attachment point)


def glue(kit: AssemblyKit) -> D4Configuration:
    """Assemble the kit and verify the D4-configuration census."""
    components = [(kit.central.name, SPHERE)]
    edges = []
    for tail in kit.tails:
        components.append((tail.name, SPHERE))
        edges.append((kit.central.name, tail.name, tail.attach_point))
    attach_points = [e[2] for e in edges]
    ok = (
        len(components) == 5
        and len(edges) == 4
        and len(set(attach_points)) == 4
        and len({t.subset for t in kit.tails}) == 4
        and all(iso == SPHERE for _, iso in components)
    )
    if kit.chamber.kind == "interior":
        ok = ok and set(attach_points) == set(kit.central.points)
        ok = ok and len(kit.central.points) == 4
    if not ok:
        raise ValueError("not a D4 configuration")
    return D4Configuration(kit.chamber, tuple(components), tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# wall-crossing maps

@dataclass(frozen=True)
class WallCrossingMap:
    source: Chamber
    target: Chamber
    wall: Wall
    exchanged: tuple   # pairs of component names
    fixed: tuple       # names untouched by the exchange

    def inverse(self) -> "WallCrossingMap":
        return WallCrossingMap(
            self.target,
            self.source,
            self.wall,
            tuple((b, a) for a, b in self.exchanged),
            self.fixed,
        )


def _crossing_wall(c1: Chamber, c2: Chamber) -> Wall:
    if c1.parity != c2.parity or c1 == c2:
        raise ValueError("chambers are not adjacent")
    if c1.kind == "interior" and c2.kind == "interior":
        diff = set(c1.sets) ^ set(c2.sets)
        if len(diff) != 2:
            raise ValueError("chambers are not adjacent")
        a, b = sorted(diff, key=lambda s: s.mask)
        if a.complement != b:
            raise ValueError("chambers are not adjacent")
        return Wall.canonical(a, a.card - 2)
    if {c1.kind, c2.kind} == {"interior", "exterior"}:
        ext = c1 if c1.kind == "exterior" else c2
        other = c2 if c1.kind == "exterior" else c1
        if frozenset(other.sets) != iota_of(ext.subset):
            raise ValueError("chambers are not adjacent")
        return Wall.canonical(ext.subset, ext.subset.card - 3)
    raise ValueError("chambers are not adjacent")


def wall_cross(c1: Chamber, c2: Chamber, m: int = 0) -> WallCrossingMap:
    """The component-exchange map across the wall shared by adjacent chambers."""
    wall = _crossing_wall(c1, c2)
    kit1, kit2 = assembly_kit(c1, m), assembly_kit(c2, m)
    if wall.kind == "interior":
        flipped = next(iter(set(c1.sets) - set(c2.sets)))
        partner = flipped.complement
        t1 = next(t for t in kit1.tails if t.subset == flipped)
        t2 = next(t for t in kit2.tails if t.subset == partner)
        exchanged = ((t1.name, t2.name), (t1.attach_point, t2.attach_point))
        fixed = tuple(sorted(
            [t.name for t in kit1.tails if t.subset != flipped] + [kit1.central.name]
        ))
        return WallCrossingMap(c1, c2, wall, exchanged, fixed)
    exchanged = ((kit1.central.name, kit2.central.name),)
    fixed = tuple(sorted(t.name for t in kit1.tails))
    return WallCrossingMap(c1, c2, wall, exchanged, fixed)


# ---------------------------------------------------------------------------
# Harder-Narasimhan strata

@dataclass(frozen=True)
class HNStratum:
    delta: int
    splitting: Splitting
    nonempty: bool
    dimension: Optional[int]
    nodal_singularities: int


def hn_stratum_nonempty(delta: int, chamber: Chamber) -> bool:
    """Whether the stratum of splitting gap `delta` survives in a chamber."""
    if delta >= 4:
        return False
    if delta == 3:
        return chamber.kind == "exterior" and chamber.subset == EMPTY
    return True


def hn_strata(chamber: Chamber, m: int = 0) -> tuple:
    """Per-splitting descriptors: emptiness, dimension, nodal count."""
    parity = chamber.parity
    out = []
    dmain = main_delta(parity)
    out.append(HNStratum(dmain, splitting_for(parity, dmain, m), True, 2, 0))
    doff = off_delta(parity)
    spl = splitting_for(parity, doff, m)
    if not hn_stratum_nonempty(doff, chamber):
        out.append(HNStratum(doff, spl, False, None, 0))
        return tuple(out)
    if parity == EVEN:
        nodes = (1 if EMPTY in chamber.sides() else 0) + (
            1 if chamber.kind == "exterior" and chamber.subset.card == 1 else 0
        )
    else:
        nodes = 0
    out.append(HNStratum(doff, spl, True, 1, nodes))
    return tuple(out)


# ---------------------------------------------------------------------------
# fixed loci, Hitchin sections, S-equivalence

@dataclass(frozen=True)
class FixedLoci:
    chamber: Chamber
    central: tuple        # (name, dimension)
    points: tuple         # (tail subset, fixed point name)
    branch_limits: tuple  # (partition pair, fixed point reached as the scale degenerates)


def fixed_loci(chamber: Chamber, m: int = 0) -> FixedLoci:
    """The scaling-action fixed locus: one curve plus one point per tail."""
    kit = assembly_kit(chamber, m)
    points = tuple((t.subset, t.fixed_point) for t in kit.tails)
    sides = chamber.sides()
    limits = []
    for a, b in partition_pairs(chamber.parity):
        member = a if a in sides else b
        tail = next(t for t in kit.tails if t.subset == member)
        limits.append(((a, b), tail.fixed_point))
    return FixedLoci(chamber, (kit.central.name, 1), points, tuple(limits))


@dataclass(frozen=True)
class HitchinSection:
    partition: tuple
    branch: str
    value_at_zero: str
    in_open_stratum: bool


def hitchin_sections(chamber: Chamber, m: int = 0) -> tuple:
    """One section per partition pair, ending on the stable block's fixed point."""
    loci = fixed_loci(chamber, m)
    out = []
    for (a, b), fixed_point in loci.branch_limits:
        branch = f"H{{{a.compact}|{b.compact}}}"
        in_open = not (chamber.parity == EVEN and a == EMPTY)
        out.append(HitchinSection((a, b), branch, fixed_point, in_open))
    return tuple(out)


def bulk_cover_coords(qph) -> tuple:
    """Coordinates (orbit invariant, determinant scalar) of the two-sheeted bulk cover.

    Defined away from the nilpotent locus on evenly-split bundles; fibers
    over non-branch values consist of exactly two orbits, one over branch
    values.
    """
    from .bundles import det_scalar, orbit_invariant

    c = det_scalar(qph)
    if c == 0:
        raise ValueError("coordinates are defined away from the nilpotent locus")
    if qph.splitting.delta > 1:
        raise ValueError("coordinates are defined on evenly-split bundles")
    from .stability import component_label

    label = component_label(qph)
    if label.kind == "H":
        from .exact import ProjPoint

        a, b = label.partition
        if qph.splitting.delta == 0:
            branch_values = {
                frozenset({1, 2}): Fraction(0),
                frozenset({1, 3}): Fraction(1),
            }
            key = frozenset(a.elements)
            if key in branch_values:
                return ProjPoint.affine(branch_values[key]), c
            return ProjPoint.infinity(), c
        single = a if a.card == 1 else b
        return qph.marks.point(single.elements[0]), c
    return orbit_invariant(qph.flags, qph.marks, qph.splitting), c


@dataclass(frozen=True)
class SEquivalence:
    wall: Wall
    strictly_semistable: tuple  # component names flagged on the wall
    identifications: tuple      # pairs of names identified pointwise


def s_equivalence(wall: Wall, m: int = 0) -> SEquivalence:
    """The identification of strictly semistable loci for weights on a wall."""
    parity = wall.parity
    if wall.kind == "boundary":
        subset = wall.boundary_subset()
        ext = Chamber.exterior(subset, parity)
        interior = neighbor_across_wall(ext, wall)
        bottom = assembly_kit(ext, m).central.name
        central = assembly_kit(interior, m).central.name
        return SEquivalence(wall, (bottom, central), ((bottom, central),))
    a, b = wall.subset, wall.subset.complement
    a, b = (a, b) if a.mask < b.mask else (b, a)
    ta = _tail_for(parity, a, "")
    tb = _tail_for(parity, b, "")
    names = (
        ta.name,
        tb.name,
        f"N{{{a.compact}}}",
        f"N{{{b.compact}}}",
        f"QX{{{a.compact}|{b.compact}}}",
    )
    idents = ((ta.name, tb.name), (f"N{{{a.compact}}}", f"N{{{b.compact}}}"))
    return SEquivalence(wall, names, idents)


def wall_interior_weight(wall: Wall) -> tuple:
    """A rational weight vector exactly on this wall and on no other.

    Deterministic search over positive rational combinations of the wall's
    vertices (boundary walls: their tetrahedral cell; interior walls: the
    apex and the six cube vertices on the hyperplane), verified by classify.
    """
    if wall.kind == "boundary":
        verts = [vertex_of_subset(s) for s in sorted(iota_of(wall.boundary_subset()))]
    else:
        pair = {wall.subset, wall.subset.complement}
        members = sorted(
            {x for p in partition_pairs(wall.parity) for x in p} - pair
        )
        verts = [APEX] + [vertex_of_subset(s) for s in members]
    n = len(verts)
    for shift in range(1, 60):
        lams = [Fraction(1 + ((shift * (k + 2) ** 2) % 97)) for k in range(n)]
        total = sum(lams)
        beta = tuple(sum(l * v[i] for l, v in zip(lams, verts)) / total for i in range(4))
        if not all(0 < b < 1 for b in beta):
            continue
        outcome = classify(beta, wall.parity)
        if isinstance(outcome, OnWalls) and outcome.walls == (wall,):
            return beta
    raise AssertionError("no interior wall point found")
