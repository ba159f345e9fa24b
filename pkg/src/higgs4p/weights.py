"""Combinatorics of the even and odd parabolic weight polytopes in [0,1]^4.

A weight vector is a 4-tuple of rationals in (0,1).  For a subset
I of the marked points {1,2,3,4},

    beta_I = sum_{i in I} beta_i - sum_{j not in I} beta_j.

Semi-stability walls are the loci beta_I = k with k in
{|I|-1, |I|-2, |I|-3}; walls with k = |I|-2 are interior, the rest are
boundary walls.  Complementary labels describe the same hyperplane
(H_{I,|I|-3} = H_{I^c,|I^c|-1} and H_{I,|I|-2} = H_{I^c,|I^c|-2}); the
canonical representative is the label whose subset has the smaller bitmask.
Chambers of a given parity are the connected components of (0,1)^4 minus
the walls whose level k has that parity: 16 interior chambers indexed by
partition sets plus 8 exterior chambers indexed by boundary walls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .exact import Q, as_q

EVEN = "even"
ODD = "odd"
PARITIES = (EVEN, ODD)


@dataclass(frozen=True, order=True)
class MarkSubset:
    """Subset of the four marked points, stored as a 4-bit mask."""

    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= 15:
            raise ValueError("mask out of range")

    @classmethod
    def of(cls, *elements: int) -> "MarkSubset":
        m = 0
        for e in elements:
            if not 1 <= e <= 4:
                raise ValueError("marked points are 1..4")
            m |= 1 << (e - 1)
        return cls(m)

    @classmethod
    def from_iter(cls, elements) -> "MarkSubset":
        return cls.of(*elements)

    @property
    def elements(self) -> tuple:
        return tuple(i for i in range(1, 5) if self.mask & (1 << (i - 1)))

    @property
    def card(self) -> int:
        return bin(self.mask).count("1")

    @property
    def complement(self) -> "MarkSubset":
        return MarkSubset(self.mask ^ 15)

    def contains(self, i: int) -> bool:
        return bool(self.mask & (1 << (i - 1)))

    def union(self, other: "MarkSubset") -> "MarkSubset":
        return MarkSubset(self.mask | other.mask)

    def intersect(self, other: "MarkSubset") -> "MarkSubset":
        return MarkSubset(self.mask & other.mask)

    def symdiff(self, other: "MarkSubset") -> "MarkSubset":
        return MarkSubset(self.mask ^ other.mask)

    @property
    def card_parity(self) -> str:
        return EVEN if self.card % 2 == 0 else ODD

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.elements) + "}"

    @property
    def compact(self) -> str:
        return "".join(str(i) for i in self.elements)


EMPTY = MarkSubset(0)
FULL = MarkSubset(15)
ALL_SUBSETS = tuple(MarkSubset(m) for m in range(16))


@lru_cache(maxsize=8)
def subsets_of_card_parity(parity: str) -> tuple:
    want = 0 if parity == EVEN else 1
    return tuple(s for s in ALL_SUBSETS if s.card % 2 == want)


@lru_cache(maxsize=8)
def partition_pairs(parity: str) -> tuple:
    """The complementary pairs {I, I^c} of the given cardinality parity."""
    seen = set()
    pairs = []
    for s in subsets_of_card_parity(parity):
        key = frozenset((s.mask, s.complement.mask))
        if key not in seen:
            seen.add(key)
            pairs.append((s, s.complement) if s.mask < s.complement.mask else (s.complement, s))
    return tuple(pairs)


# ---------------------------------------------------------------------------
# weight vectors

def weight_vector(values) -> tuple:
    beta = tuple(as_q(v) for v in values)
    if len(beta) != 4:
        raise ValueError("a weight vector has four components")
    return beta


def check_weights_range(beta, strict: bool = False) -> None:
    for b in beta:
        lo_ok = b > 0 if strict else b >= 0
        if not (lo_ok and b < 1):
            raise ValueError("degenerate weight")


def beta_sum(beta, subset: MarkSubset) -> Fraction:
    beta = weight_vector(beta)
    acc = Fraction(0)
    for i in range(1, 5):
        acc += beta[i - 1] if subset.contains(i) else -beta[i - 1]
    return acc


def vertex_of_subset(subset: MarkSubset) -> tuple:
    """The cube vertex v_I, with coordinate 1 exactly on the complement of I."""
    comp = subset.complement
    return tuple(Fraction(1) if comp.contains(i) else Fraction(0) for i in range(1, 5))


APEX = (Fraction(1, 2),) * 4


# ---------------------------------------------------------------------------
# walls

@dataclass(frozen=True, order=True)
class Wall:
    """Semi-stability wall beta_I = level, stored by its canonical label."""

    subset: MarkSubset
    level: int

    def __post_init__(self):
        if self.level not in (self.subset.card - 1, self.subset.card - 2, self.subset.card - 3):
            raise ValueError("wall level out of range for this subset")

    @property
    def kind(self) -> str:
        return "interior" if self.level == self.subset.card - 2 else "boundary"

    @property
    def parity(self) -> str:
        return EVEN if self.level % 2 == 0 else ODD

    @property
    def partner(self) -> "Wall":
        return Wall(self.subset.complement, -self.level)

    @classmethod
    def canonical(cls, subset: MarkSubset, level: int) -> "Wall":
        w = cls(subset, level)
        p = w.partner
        return w if w.subset.mask <= p.subset.mask else p

    @property
    def is_canonical(self) -> bool:
        return self == Wall.canonical(self.subset, self.level)

    def boundary_subset(self) -> MarkSubset:
        """For a boundary wall, the I with level = |I|-3 (the exterior label)."""
        if self.kind != "boundary":
            raise ValueError("not a boundary wall")
        return self.subset if self.level == self.subset.card - 3 else self.subset.complement

    def hyperplane(self):
        """(normal, offset) with normal_i = +-1, describing beta_I = level."""
        normal = tuple(Fraction(1) if self.subset.contains(i) else Fraction(-1) for i in range(1, 5))
        return normal, Fraction(self.level)

    def contains_weight(self, beta) -> bool:
        return beta_sum(beta, self.subset) == self.level

    def __str__(self) -> str:
        return f"H[{self.subset},{self.level}]"


@lru_cache(maxsize=8)
def wall_list(parity: str) -> tuple:
    """The 12 canonical walls of a parity: 8 boundary and 4 interior."""
    found = set()
    for s in ALL_SUBSETS:
        for level in (s.card - 1, s.card - 2, s.card - 3):
            if level % 2 == (0 if parity == EVEN else 1):
                found.add(Wall.canonical(s, level))
    walls = sorted(found, key=lambda w: (w.kind != "boundary", w.subset.mask, w.level))
    return tuple(walls)


def boundary_wall_of(subset: MarkSubset) -> Wall:
    """Canonical form of H_{I,|I|-3}."""
    return Wall.canonical(subset, subset.card - 3)


def iota_of(subset: MarkSubset) -> frozenset:
    """Subsets whose cube vertex lies on the boundary wall H_{I,|I|-3}.

    These are exactly the subsets at symmetric difference 1 from I, and
    they form the partition set of the type-B neighbor of the exterior
    chamber C_I.
    """
    out = []
    for i in range(1, 5):
        out.append(subset.symdiff(MarkSubset.of(i)))
    return frozenset(out)


# ---------------------------------------------------------------------------
# partition sets and chambers

@dataclass(frozen=True)
class CubeFace:
    """The face of [0,1]^4 where coordinate `index` equals `value`."""

    index: int
    value: int

    def __str__(self) -> str:
        return f"face[beta_{self.index}={self.value}]"


Cell = Union[CubeFace, Wall]


def _partition_set_cell(sets: frozenset):
    """Locate the tetrahedral cell spanned by the vertices of a partition set."""
    vertices = [vertex_of_subset(s) for s in sets]
    for i in range(4):
        vals = {v[i] for v in vertices}
        if len(vals) == 1:
            return CubeFace(i + 1, int(vals.pop()))
    for j in ALL_SUBSETS:
        if all(j.symdiff(s).card == 1 for s in sets):
            return boundary_wall_of(j)
    raise ValueError("not a partition set")


def sort_subsets(sets) -> tuple:
    return tuple(sorted(sets, key=lambda s: (-s.card, s.mask)))


@dataclass(frozen=True)
class PartitionSet:
    """One subset from each complementary pair of a fixed cardinality parity."""

    sets: tuple

    def __post_init__(self):
        sets = sort_subsets(self.sets)
        if len(sets) != 4:
            raise ValueError("a partition set has four members")
        parities = {s.card_parity for s in sets}
        if len(parities) != 1:
            raise ValueError("mixed cardinality parity")
        masks = {s.mask for s in sets}
        for a, b in partition_pairs(next(iter(parities))):
            if len(masks & {a.mask, b.mask}) != 1:
                raise ValueError("must pick exactly one subset per complementary pair")
        object.__setattr__(self, "sets", sets)

    @property
    def parity(self) -> str:
        return self.sets[0].card_parity

    @property
    def cell(self) -> Cell:
        return _partition_set_cell(frozenset(self.sets))

    @property
    def type_tag(self) -> str:
        return "A" if isinstance(self.cell, CubeFace) else "B"

    def flip(self, member: MarkSubset) -> "PartitionSet":
        if member not in self.sets and member.complement not in self.sets:
            raise ValueError("subset does not name a partition pair member")
        old = member if member in self.sets else member.complement
        return PartitionSet(tuple(s.complement if s == old else s for s in self.sets))

    def __str__(self) -> str:
        return "{" + ",".join(s.compact for s in self.sets) + "}"


@lru_cache(maxsize=8)
def partition_set_table(parity: str) -> tuple:
    """All 16 partition sets of a parity, with type tags and cells."""
    pairs = partition_pairs(parity)
    out = []
    for pick in range(16):
        sets = tuple(pair[(pick >> k) & 1] for k, pair in enumerate(pairs))
        out.append(PartitionSet(sets))
    return tuple(sorted(out, key=lambda ps: tuple(s.mask for s in ps.sets)))


@dataclass(frozen=True)
class Chamber:
    """An open chamber of the weight polytope of a given parity."""

    kind: str  # "interior" | "exterior"
    parity: str
    sets: Optional[tuple] = None      # interior: the partition set members
    subset: Optional[MarkSubset] = None  # exterior: the boundary-wall label

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError("parity must be 'even' or 'odd'")
        if self.kind == "interior":
            ps = PartitionSet(self.sets)
            if ps.parity != self.parity:
                raise ValueError("partition set parity mismatch")
            object.__setattr__(self, "sets", ps.sets)
        elif self.kind == "exterior":
            if self.subset is None:
                raise ValueError("exterior chamber needs a subset")
            if self.subset.card_parity == self.parity:
                raise ValueError("exterior label has the wrong cardinality parity")
        else:
            raise ValueError("kind must be 'interior' or 'exterior'")

    @classmethod
    def interior(cls, sets, parity: str) -> "Chamber":
        return cls("interior", parity, sets=tuple(sets))

    @classmethod
    def exterior(cls, subset: MarkSubset, parity: str) -> "Chamber":
        return cls("exterior", parity, subset=subset)

    @property
    def partition_set(self) -> PartitionSet:
        if self.kind != "interior":
            raise ValueError("exterior chambers carry no partition set")
        return PartitionSet(self.sets)

    @property
    def type_tag(self) -> str:
        return self.partition_set.type_tag if self.kind == "interior" else "exterior"

    def sides(self) -> frozenset:
        """Chosen sides of the interior walls: {I : beta_I < |I|-2 throughout}."""
        if self.kind == "interior":
            return frozenset(self.sets)
        return iota_of(self.subset)

    def closure_vertices(self) -> tuple:
        """The five vertices of the chamber closure (a 4-simplex)."""
        if self.kind == "interior":
            return (APEX,) + tuple(vertex_of_subset(s) for s in self.sets)
        cell = tuple(vertex_of_subset(s) for s in sorted(iota_of(self.subset)))
        return (vertex_of_subset(self.subset),) + cell

    def serialize(self) -> str:
        if self.kind == "interior":
            body = ",".join(s.compact for s in self.sets)
            return f"int:{self.parity}:{{{body}}}"
        return f"ext:{self.parity}:{{{self.subset.compact}}}"

    def __str__(self) -> str:
        return self.serialize()


def parse_chamber(text: str) -> Chamber:
    kind, parity, body = text.strip().split(":", 2)
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"bad chamber string: {text!r}")
    inner = body[1:-1]
    parts = [p for p in inner.split(",") if p != ""]
    subs = [MarkSubset.of(*(int(ch) for ch in p)) for p in parts]
    if kind == "int":
        return Chamber.interior(tuple(subs), parity)
    if kind == "ext":
        return Chamber.exterior(subs[0] if subs else EMPTY, parity)
    raise ValueError(f"bad chamber string: {text!r}")


@lru_cache(maxsize=8)
def all_chambers(parity: str) -> tuple:
    interior = tuple(Chamber.interior(ps.sets, parity) for ps in partition_set_table(parity))
    swap = ODD if parity == EVEN else EVEN
    exterior = tuple(
        Chamber.exterior(s, parity) for s in subsets_of_card_parity(swap)
    )
    return interior + exterior


@dataclass(frozen=True)
class OnWalls:
    """Classification outcome for a weight vector lying on walls."""

    walls: tuple


def classify(beta, parity: str) -> Union[Chamber, OnWalls]:
    """Locate a weight vector in the chamber decomposition of its parity.

    Rejects weight vectors on the boundary of the cube.  Wall membership,
    the (at most one) violated boundary inequality, and the interior-wall
    side choices are all decided with integer arithmetic over a common
    denominator, so no wall point can be misclassified.
    """
    beta = weight_vector(beta)
    check_weights_range(beta, strict=True)
    den = math.lcm(*(b.denominator for b in beta))
    nums = [int(b * den) for b in beta]

    def s(mask: int) -> int:
        acc = 0
        for i in range(4):
            acc += nums[i] if mask & (1 << i) else -nums[i]
        return acc

    hits = [w for w in wall_list(parity) if s(w.subset.mask) == w.level * den]
    if hits:
        return OnWalls(tuple(hits))

    swap = ODD if parity == EVEN else EVEN
    for sub in subsets_of_card_parity(swap):
        if s(sub.mask) < (sub.card - 3) * den:
            return Chamber.exterior(sub, parity)

    chosen = []
    for a, b in partition_pairs(parity):
        chosen.append(a if s(a.mask) < (a.card - 2) * den else b)
    return Chamber.interior(tuple(chosen), parity)


def neighbor_across_wall(chamber: Chamber, wall: Wall) -> Chamber:
    """The chamber on the other side of a wall bounding this one."""
    if wall.parity != chamber.parity:
        raise ValueError("wall does not bound chamber")
    if wall.kind == "interior":
        if chamber.kind != "interior":
            raise ValueError("wall does not bound chamber")
        ps = chamber.partition_set.flip(wall.subset)
        return Chamber.interior(ps.sets, chamber.parity)
    label = wall.boundary_subset()
    if chamber.kind == "exterior":
        if chamber.subset != label:
            raise ValueError("wall does not bound chamber")
        return Chamber.interior(tuple(iota_of(label)), chamber.parity)
    if frozenset(chamber.sets) != iota_of(label):
        raise ValueError("wall does not bound chamber")
    return Chamber.exterior(label, chamber.parity)


# ---------------------------------------------------------------------------
# hyperoctahedral symmetries preserving each polytope

@dataclass(frozen=True)
class D4Element:
    """A coordinate permutation composed with an even set of flips b_i -> 1-b_i.

    perm[i-1] is the image of coordinate slot i; flips is the set of
    coordinates reflected after permuting.
    """

    perm: tuple
    flips: MarkSubset

    def __post_init__(self):
        if sorted(self.perm) != [1, 2, 3, 4]:
            raise ValueError("perm must be a permutation of 1..4")
        if self.flips.card % 2 != 0:
            raise ValueError("an odd set of reflections swaps the two parities")

    @classmethod
    def identity(cls) -> "D4Element":
        return cls((1, 2, 3, 4), EMPTY)

    def apply_weights(self, beta) -> tuple:
        beta = weight_vector(beta)
        out = [None] * 4
        for i in range(1, 5):
            out[self.perm[i - 1] - 1] = beta[i - 1]
        return tuple(
            Fraction(1) - v if self.flips.contains(i + 1) else v for i, v in enumerate(out)
        )

    def apply_subset(self, s: MarkSubset) -> MarkSubset:
        img = MarkSubset.of(*(self.perm[i - 1] for i in s.elements)) if s.card else EMPTY
        return img.symdiff(self.flips)

    def apply_chamber(self, c: Chamber) -> Chamber:
        if c.kind == "interior":
            return Chamber.interior(tuple(self.apply_subset(s) for s in c.sets), c.parity)
        return Chamber.exterior(self.apply_subset(c.subset), c.parity)

    def compose(self, other: "D4Element") -> "D4Element":
        """self after other: (self*other)(x) = self(other(x))."""
        perm = tuple(self.perm[other.perm[i - 1] - 1] for i in range(1, 5))
        flips = self.flips.symdiff(
            MarkSubset.of(*(self.perm[i - 1] for i in other.flips.elements))
            if other.flips.card else EMPTY
        )
        return D4Element(perm, flips)

    def inverse(self) -> "D4Element":
        inv = [0] * 4
        for i in range(1, 5):
            inv[self.perm[i - 1] - 1] = i
        pre = MarkSubset.of(*(inv[i - 1] for i in self.flips.elements)) if self.flips.card else EMPTY
        return D4Element(tuple(inv), pre)


def d4_apply(g: D4Element, target):
    """Act on a weight vector or a chamber."""
    if isinstance(target, Chamber):
        return g.apply_chamber(target)
    return g.apply_weights(target)


def d4_elements():
    """All 192 symmetries of a weight polytope."""
    import itertools

    evens = [s for s in ALL_SUBSETS if s.card % 2 == 0]
    for perm in itertools.permutations((1, 2, 3, 4)):
        for fl in evens:
            yield D4Element(perm, fl)


def parity_swap(beta_or_chamber, coordinate: int = 1):
    """Reflect a single coordinate, exchanging the even and odd polytopes."""
    flip = MarkSubset.of(coordinate)
    if isinstance(beta_or_chamber, Chamber):
        c = beta_or_chamber
        other = ODD if c.parity == EVEN else EVEN
        if c.kind == "interior":
            return Chamber.interior(tuple(s.symdiff(flip) for s in c.sets), other)
        return Chamber.exterior(c.subset.symdiff(flip), other)
    beta = weight_vector(beta_or_chamber)
    return tuple(
        Fraction(1) - b if i + 1 == coordinate else b for i, b in enumerate(beta)
    )


# ---------------------------------------------------------------------------

def semistable_parabolic_exists(beta, d: int) -> bool:
    """Whether some semi-stable parabolic bundle of degree d admits these weights.

    The criterion checks beta_I <= |I|-1 for every subset whose cardinality
    is congruent to d+1 mod 2.
    """
    beta = weight_vector(beta)
    check_weights_range(beta, strict=False)
    for s in ALL_SUBSETS:
        if (s.card - 1) % 2 == d % 2:
            if beta_sum(beta, s) > s.card - 1:
                return False
    return True


def beta_to_su2(beta) -> tuple:
    """Per-point weight pairs (a_i1, a_i2) with a_i1 = (1-beta_i)/2.

    Satisfies 0 < a_i1 < 1/2 and a_i2 - a_i1 = beta_i; requires every
    beta_i strictly inside (0,1).
    """
    beta = weight_vector(beta)
    check_weights_range(beta, strict=True)
    out = []
    for b in beta:
        a1 = (1 - b) / 2
        out.append((a1, 1 - a1))
    return tuple(out)
