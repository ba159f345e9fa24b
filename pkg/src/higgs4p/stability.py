"""Brute-force stability oracle and combinatorial component labels.

A parabolic Higgs bundle is stable for weights beta when every invariant
line sub-bundle L satisfies beta_{I_L} < d - 2 deg L.  Fields with nonzero
determinant admit no invariant line; nonzero nilpotent fields have a unique
one; for the zero field every sub-bundle is invariant and the oracle scans
all (subset, degree) interpolation problems with d - 2j <= 4 exactly.  A
feasible interpolation system whose solutions all carry common factors still
yields a valid lower bound on the destabilization, and the maximizing
saturated sub-bundle is scanned at its own (subset, degree) pair, so the
maximum score over the scan is the exact stability margin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .bundles import (
    E1_FLAG,
    QuasiParabolicHiggs,
    det_scalar,
    flags_subset,
    honest_line_exists,
    interpolation_basis,
    kernel_line,
    qp_locus,
    require_membership,
)
from .weights import (
    ALL_SUBSETS,
    EMPTY,
    FULL,
    Chamber,
    MarkSubset,
    beta_sum,
    check_weights_range,
    weight_vector,
)


@dataclass(frozen=True)
class Verdict:
    kind: str  # "stable" | "strict" | "unstable"
    witnesses: tuple = ()

    @property
    def is_stable(self) -> bool:
        return self.kind == "stable"

    def __str__(self) -> str:
        ws = ", ".join(f"({s},{j})" for s, j in self.witnesses)
        return self.kind if not ws else f"{self.kind} [{ws}]"


STABLE = Verdict("stable")


def _scan_degrees(splitting):
    lo = -((4 - splitting.d) // 2)  # smallest j with d - 2j <= 4
    degrees = list(range(lo, splitting.m2 + 1))
    if splitting.m1 > splitting.m2:
        degrees.append(splitting.m1)
    return degrees


@lru_cache(maxsize=4096)
def feasible_pairs(qph: QuasiParabolicHiggs) -> tuple:
    """All (subset, degree) interpolation problems solvable for these flags."""
    out = []
    for j in _scan_degrees(qph.splitting):
        for subset in ALL_SUBSETS:
            basis, _, _ = interpolation_basis(
                qph.flags, qph.marks, subset, j, qph.splitting
            )
            if basis:
                out.append((subset, j))
    return tuple(out)


def destabilizing_search(qph: QuasiParabolicHiggs, beta) -> Verdict:
    """Exact stability verdict for a model point at the given weights."""
    beta = weight_vector(beta)
    check_weights_range(beta, strict=False)
    require_membership(qph)
    d = qph.splitting.d

    if det_scalar(qph) != 0:
        return STABLE

    if not qph.phi.is_zero:
        line = kernel_line(qph.phi, qph.splitting)
        subset = flags_subset(line, qph)
        score = beta_sum(beta, subset) - (d - 2 * line.j)
        if score < 0:
            return STABLE
        kind = "strict" if score == 0 else "unstable"
        return Verdict(kind, ((subset, line.j),))

    best = None
    scored = []
    for subset, j in feasible_pairs(qph):
        score = beta_sum(beta, subset) - (d - 2 * j)
        scored.append((score, subset, j))
        if best is None or score > best:
            best = score
    if best is None or best < 0:
        return STABLE
    if best > 0:
        top = max(scored, key=lambda t: (t[0], -t[1].mask, t[2]))
        return Verdict("unstable", ((top[1], top[2]),))
    ties = tuple((s, j) for sc, s, j in scored if sc == 0)
    return Verdict("strict", ties)


# ---------------------------------------------------------------------------
# conditional stability and labels

def conditionally_stable(qph: QuasiParabolicHiggs) -> bool:
    """Whether some open chamber of the matching parity makes the point stable."""
    require_membership(qph)
    d = qph.splitting.d
    if det_scalar(qph) != 0:
        return True
    if not qph.phi.is_zero:
        line = kernel_line(qph.phi, qph.splitting)
        subset = flags_subset(line, qph)
        return -(4 - subset.card) < d - 2 * line.j
    m1, m2 = qph.splitting.m1, qph.splitting.m2
    for subset in ALL_SUBSETS:
        if honest_line_exists(qph.flags, qph.marks, subset, m1, qph.splitting) and \
                honest_line_exists(qph.flags, qph.marks, subset.complement, m2, qph.splitting):
            return False
    return True


@dataclass(frozen=True)
class StratumLabel:
    kind: str  # "Bulk" | "Q" | "R" | "S"
    j: Optional[int] = None

    def __str__(self) -> str:
        return f"S_{self.j}" if self.kind == "S" else self.kind


def stratum_label(qph: QuasiParabolicHiggs) -> StratumLabel:
    require_membership(qph)
    if det_scalar(qph) != 0:
        return StratumLabel("Bulk")
    if qph.phi.is_zero:
        return StratumLabel("Q")
    line = kernel_line(qph.phi, qph.splitting)
    if qph.splitting.delta > 0 and line.j == qph.splitting.m1:
        return StratumLabel("R")
    return StratumLabel("S", line.j)


@dataclass(frozen=True, order=True)
class ComponentLabel:
    """Label of the orbit family a model point belongs to.

    kind N: an orbit of quasi-parabolic bundles (subset EMPTY on an
    evenly-split bundle means the generic free orbit family); kinds K and L:
    nilpotent building blocks named by the flag-incidence subset of the
    kernel line, with `level` = d - 2j recording the stability threshold;
    kind H: a bulk branch component named by a marked-point partition;
    kind bulk: the generic bulk; kind other: never-stable parabolic points.
    """

    kind: str
    delta: int
    subset: Optional[MarkSubset] = None
    level: Optional[int] = None
    partition: Optional[tuple] = None

    @property
    def parity(self) -> str:
        return "even" if self.delta % 2 == 0 else "odd"

    def __str__(self) -> str:
        if self.kind in ("K", "L"):
            tag = f"{self.kind}{{{self.subset.compact}}}"
            if self.subset == FULL and self.kind == "L":
                tag += f"#{1 - self.delta // 2}"
            return tag
        if self.kind == "N":
            return f"N{{{self.subset.compact}}}"
        if self.kind == "H":
            a, b = self.partition
            return f"H{{{a.compact}|{b.compact}}}"
        return self.kind


def _partition_label(a: MarkSubset, delta: int) -> ComponentLabel:
    pair = tuple(sorted((a, a.complement), key=lambda s: s.mask))
    return ComponentLabel("H", delta, partition=pair)


def component_label(qph: QuasiParabolicHiggs) -> ComponentLabel:
    """Classify a model point into its building-block or orbit label."""
    require_membership(qph)
    delta = qph.splitting.delta
    d = qph.splitting.d

    if det_scalar(qph) != 0:
        if delta == 2:
            return _partition_label(EMPTY, delta)
        if delta == 0:
            classes = {}
            for i, f in enumerate(qph.flags, start=1):
                classes.setdefault(f, []).append(i)
            sizes = sorted((len(v) for v in classes.values()), reverse=True)
            if sizes[0] == 2 and sizes[1] == 2:
                part = min(
                    (MarkSubset.of(*v) for v in classes.values()), key=lambda s: s.mask
                )
                return _partition_label(part, delta)
            return ComponentLabel("bulk", delta)
        e1 = [i for i in range(1, 5) if qph.flags[i - 1] == E1_FLAG]
        if len(e1) == 1:
            return _partition_label(MarkSubset.of(e1[0]), delta)
        return ComponentLabel("bulk", delta)

    if not qph.phi.is_zero:
        line = kernel_line(qph.phi, qph.splitting)
        subset = flags_subset(line, qph)
        level = d - 2 * line.j
        kind = "K" if (delta > 0 and line.j == qph.splitting.m1) else "L"
        return ComponentLabel(kind, delta, subset=subset, level=level)

    if delta >= 3:
        # no parabolic-bundle orbit on such a splitting is ever stable
        return ComponentLabel("other", delta)
    locus = qp_locus(qph.flags, qph.marks, qph.splitting)
    if locus == "U'":
        return ComponentLabel("N", delta, subset=EMPTY)
    if locus == "U-U'":
        return ComponentLabel("N", delta, subset=_special_subset(qph))
    return ComponentLabel("other", delta)


def _special_subset(qph: QuasiParabolicHiggs) -> MarkSubset:
    """The subset naming a non-generic free orbit of quasi-parabolic bundles."""
    delta = qph.splitting.delta
    flags = qph.flags
    if delta == 0:
        for i in range(1, 5):
            for j in range(i + 1, 5):
                if flags[i - 1] == flags[j - 1]:
                    return MarkSubset.of(i, j)
        return FULL  # all flags distinct with normalized cross-ratio
    if delta == 2:
        return EMPTY
    e1 = [i for i in range(1, 5) if flags[i - 1] == E1_FLAG]
    if e1:
        return MarkSubset.of(e1[0])
    for k in range(1, 5):
        triple = MarkSubset(15 ^ (1 << (k - 1)))
        if honest_line_exists(flags, qph.marks, triple, qph.splitting.m2, qph.splitting):
            return triple
    raise AssertionError("free orbit without a defining incidence")


def predicted_stability(label: ComponentLabel, chamber: Chamber) -> bool:
    """Chamber-stability of a component, read off the wall combinatorics.

    Building blocks with threshold d - 2j = |I| - 2 are stable on the side
    region beta_I < |I|-2, i.e. when I belongs to the chamber's side choices;
    blocks with threshold |I| - 3 are stable exactly in the exterior chamber
    of their boundary wall.  Orbits of parabolic bundles need every
    inequality, hence an interior chamber.
    """
    if label.parity != chamber.parity:
        raise ValueError("label parity does not match chamber parity")
    if label.kind in ("bulk", "H"):
        return True
    if label.kind == "other":
        return False
    if label.kind == "N":
        if chamber.kind != "interior":
            return False
        if label.delta <= 1 and label.subset == EMPTY:
            return True
        return label.subset in chamber.sets
    # building blocks
    threshold_gap = label.level - (label.subset.card - 2)
    if threshold_gap == 0:
        return label.subset in chamber.sides()
    if threshold_gap == -1:
        return chamber.kind == "exterior" and chamber.subset == label.subset
    return False
