"""Canonical representatives of orbits, building blocks and Hitchin sections.

Every constructor returns a concrete model point lying in the named orbit or
component, validated against the classifier.  Building-block moduli follow
one convention throughout: forced flags are the kernel values of the reduced
field, free flags are normalized away by the unipotent radical except for a
single modulus slot at the smallest free marked point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exact import BinaryForm, ProjPoint, as_q, bf_product, linear_form
from .bundles import (
    E1_FLAG,
    HiggsField,
    MarkedPoints,
    QuasiParabolicHiggs,
    Splitting,
    quasi_parabolic,
)
from .stability import ComponentLabel, component_label
from .weights import EMPTY, FULL, MarkSubset


ZERO_FLAG = ProjPoint(Fraction(0), Fraction(1))
ONE_FLAG = ProjPoint(Fraction(1), Fraction(1))


def _generic_slope(marks: MarkedPoints, delta: int) -> Fraction:
    """A rational slope keeping seed flags inside the free locus."""
    avoid = {Fraction(0), Fraction(1), marks.z1}
    if delta == 1:
        avoid.add(marks.z1 - 1)
    return next(as_q(x) for x in (2, 3, -1, 5, -2, 7, 11) if as_q(x) not in avoid)


def admissible_splittings(parity: str, m: int = 0) -> tuple:
    """The two splitting types supporting stable points for a degree parity."""
    if parity == "even":
        return (Splitting(m, m), Splitting(m + 1, m - 1))
    return (Splitting(m + 1, m), Splitting(m + 2, m - 1))


class UnrealizableError(ValueError):
    pass


def _check_label(qph: QuasiParabolicHiggs, expect: ComponentLabel) -> QuasiParabolicHiggs:
    got = component_label(qph)
    if got != expect:
        raise AssertionError(f"representative landed in {got}, wanted {expect}")
    return qph


def hitchin_representative(
    splitting: Splitting, marks: MarkedPoints, member: MarkSubset, q
) -> QuasiParabolicHiggs:
    """A bulk point on the branch component of the partition {member, complement}.

    The field is [[0, -v], [w, 0]] with v carrying the marked points of the
    size-(m1-m2+2) member scaled by q, and w the complementary points, so the
    determinant scalar equals q.
    """
    q = as_q(q)
    if q == 0:
        raise UnrealizableError("branch components live over nonzero determinant")
    delta = splitting.delta
    side = member if member.card == delta + 2 else member.complement
    if side.card != delta + 2:
        raise UnrealizableError("partition does not match the splitting type")
    ells = marks.linear_forms()
    v = bf_product([ells[i - 1] for i in side.elements]) if side.card else BinaryForm.constant(1)
    v = v.scale(q) if side.card else BinaryForm.constant(q)
    other = side.complement
    w = bf_product([ells[i - 1] for i in other.elements]) if other.card else BinaryForm.constant(1)
    phi = HiggsField.build(delta, v=v, w=w)
    flags = tuple(
        ZERO_FLAG if side.contains(i) else E1_FLAG for i in range(1, 5)
    )
    expected = ComponentLabel(
        "H", delta, partition=tuple(sorted((side, other), key=lambda s: s.mask))
    )
    return _check_label(quasi_parabolic(splitting, marks, flags, phi), expected)


def generic_bulk_representative(
    splitting: Splitting, marks: MarkedPoints, seed_flags=None
) -> QuasiParabolicHiggs:
    """A bulk point over free-locus flags (evenly-split bundles only).

    Solves the residue-kernel conditions for the Higgs field over the given
    flags; the solution line is one-dimensional there.
    """
    from .exact import nullspace
    from .bundles import _form_eval_row, qp_locus

    if splitting.delta > 1:
        raise UnrealizableError("generic bulk needs an evenly-split bundle")
    if seed_flags is None:
        c = _generic_slope(marks, splitting.delta)
        if splitting.delta == 0:
            seed_flags = (
                ProjPoint.affine(c),
                ZERO_FLAG,
                ONE_FLAG,
                ProjPoint.infinity(),
            )
        else:
            seed_flags = (
                ProjPoint.affine(c),
                ZERO_FLAG,
                ZERO_FLAG,
                ONE_FLAG,
            )
    flags = tuple(seed_flags)
    if qp_locus(flags, marks, splitting) != "U'":
        raise UnrealizableError("seed flags are not in the free locus")
    delta = splitting.delta
    deg_u, deg_v, deg_w = 2, delta + 2, 2 - delta
    rows = []
    for i, p in enumerate(marks.points, start=1):
        a, b = flags[i - 1].a, flags[i - 1].b
        ev_u = _form_eval_row(deg_u, p)
        ev_v = _form_eval_row(deg_v, p)
        ev_w = _form_eval_row(deg_w, p)
        rows.append([a * e for e in ev_u] + [-b * e for e in ev_v] + [Fraction(0)] * (deg_w + 1))
        rows.append([-b * e for e in ev_u] + [Fraction(0)] * (deg_v + 1) + [a * e for e in ev_w])
    basis = nullspace(rows, ncols=deg_u + deg_v + deg_w + 3)
    for vec in basis:
        u = BinaryForm(deg_u, vec[: deg_u + 1])
        v = BinaryForm(deg_v, vec[deg_u + 1 : deg_u + deg_v + 2])
        w = BinaryForm(deg_w, vec[deg_u + deg_v + 2 :])
        qph = quasi_parabolic(splitting, marks, flags, HiggsField(delta, u, v, w))
        from .bundles import det_scalar, membership_violation

        if membership_violation(qph) is None and det_scalar(qph) != 0:
            return qph
    raise UnrealizableError("no bulk field over these flags")


def block_representative(
    kind: str,
    subset: MarkSubset,
    splitting: Splitting,
    marks: MarkedPoints,
    modulus: Union[Fraction, ProjPoint, None] = None,
) -> QuasiParabolicHiggs:
    """A point of the building block K_I or L_I on the given splitting.

    Moduli: one-dimensional affine blocks take a rational modulus (default 0,
    the fixed point of the scaling action); sphere blocks take a projective
    modulus, the free point of the field divisor; the punctured-line block
    takes a nonzero rational scale.
    """
    delta = splitting.delta
    ells = marks.linear_forms()
    if kind == "K":
        if delta == 0 or subset.card + delta not in (2, 3):
            raise UnrealizableError(f"K{subset} is empty on {splitting}")
        comp = subset.complement
        if subset.card + delta == 2:
            f = as_q(modulus) if modulus is not None else Fraction(0)
            v = bf_product([ells[i - 1] for i in comp.elements])
            free = sorted(comp.elements)
            flags = []
            for i in range(1, 5):
                if subset.contains(i):
                    flags.append(E1_FLAG)
                elif i == free[0]:
                    flags.append(ProjPoint(f, Fraction(1)))
                else:
                    flags.append(ZERO_FLAG)
            phi = HiggsField.build(delta, v=v)
        else:
            z = modulus if isinstance(modulus, ProjPoint) else (
                ProjPoint.affine(modulus) if modulus is not None else ProjPoint.affine(-1)
            )
            v = linear_form(z) * bf_product([ells[i - 1] for i in comp.elements])
            flags = [E1_FLAG if subset.contains(i) else ZERO_FLAG for i in range(1, 5)]
            phi = HiggsField.build(delta, v=v)
        expected = ComponentLabel("K", delta, subset=subset, level=-delta)
        return _check_label(quasi_parabolic(splitting, marks, flags, phi), expected)

    if kind != "L":
        raise UnrealizableError("block kind must be 'K' or 'L'")

    if subset == FULL and delta == 0:
        s = as_q(modulus) if modulus is not None else Fraction(1)
        if s == 0:
            raise UnrealizableError("the punctured-line block excludes scale zero")
        z0 = BinaryForm(1, (1, 0))
        z1f = BinaryForm(1, (0, 1))
        phi = HiggsField(
            0, (z0 * z1f).scale(s), (z0 * z0).scale(s), (z1f * z1f).scale(s)
        )
        flags = tuple(ProjPoint(p.a, p.b) for p in marks.points)
        expected = ComponentLabel("L", 0, subset=FULL, level=splitting.d - 2 * (splitting.m2 - 1))
        return _check_label(quasi_parabolic(splitting, marks, flags, phi), expected)

    if subset.card - delta not in (2, 3):
        raise UnrealizableError(f"L{subset} is empty on {splitting}")
    comp = subset.complement
    if delta == 0:
        # kernel is the constant section pair (1, 0) here
        if subset.card == 2:
            f = as_q(modulus) if modulus is not None else Fraction(0)
            sigma = bf_product([ells[i - 1] for i in comp.elements])
            free = sorted(comp.elements)
            flags = []
            for i in range(1, 5):
                if subset.contains(i):
                    flags.append(E1_FLAG)
                elif i == free[0]:
                    flags.append(ProjPoint(f, Fraction(1)))
                else:
                    flags.append(ZERO_FLAG)
        else:
            z = modulus if isinstance(modulus, ProjPoint) else (
                ProjPoint.affine(modulus) if modulus is not None else ProjPoint.affine(-1)
            )
            i0 = comp.elements[0]
            sigma = linear_form(z) * ells[i0 - 1]
            flags = [E1_FLAG if subset.contains(i) else ZERO_FLAG for i in range(1, 5)]
        phi = HiggsField.build(0, v=sigma)
        expected = ComponentLabel("L", 0, subset=subset, level=0)
        return _check_label(quasi_parabolic(splitting, marks, flags, phi), expected)

    # delta >= 1: kernel is the second summand (0, 1)
    if subset.card - delta == 2:
        if subset == FULL:  # delta 2: the single-point block
            sigma = BinaryForm.constant(1)
            flags = [ZERO_FLAG] * 4
        else:
            f = as_q(modulus) if modulus is not None else Fraction(0)
            i0 = comp.elements[0]
            sigma = bf_product([ells[i - 1] for i in comp.elements])
            flags = [
                ProjPoint(Fraction(1), f) if i == i0 else ZERO_FLAG for i in range(1, 5)
            ]
    else:
        z = modulus if isinstance(modulus, ProjPoint) else (
            ProjPoint.affine(modulus) if modulus is not None else ProjPoint.affine(-1)
        )
        sigma = linear_form(z) * bf_product([ells[i - 1] for i in comp.elements])
        flags = [ZERO_FLAG] * 4
    phi = HiggsField.build(delta, w=sigma)
    expected = ComponentLabel("L", delta, subset=subset, level=delta)
    return _check_label(quasi_parabolic(splitting, marks, flags, phi), expected)


def orbit_representative(
    subset: MarkSubset, splitting: Splitting, marks: MarkedPoints
) -> QuasiParabolicHiggs:
    """A zero-field point in the orbit N_I (subset EMPTY: the generic free orbit)."""
    delta = splitting.delta
    if delta > 2:
        raise UnrealizableError("no stable parabolic orbits on this splitting")
    if delta == 2:
        if subset != EMPTY:
            raise UnrealizableError("the jumped splitting carries only N{} points")
        flags = (ONE_FLAG, ZERO_FLAG, ZERO_FLAG, ZERO_FLAG)
    elif delta == 0:
        if subset == EMPTY:
            c = _generic_slope(marks, 0)
            flags = (ProjPoint.affine(c), ZERO_FLAG, ONE_FLAG, ProjPoint.infinity())
        elif subset == FULL:
            flags = tuple(ProjPoint(p.a, p.b) for p in marks.points)
        elif subset.card == 2:
            rest = sorted(subset.complement.elements)
            flags = tuple(
                ZERO_FLAG if subset.contains(i)
                else (ONE_FLAG if i == rest[0] else E1_FLAG)
                for i in range(1, 5)
            )
        else:
            raise UnrealizableError("orbit label must pick a complementary pair member")
    else:
        if subset == EMPTY:
            c = _generic_slope(marks, 1)
            flags = (ProjPoint.affine(c), ZERO_FLAG, ZERO_FLAG, ONE_FLAG)
        elif subset.card == 1:
            rest = sorted(subset.complement.elements)
            flags = tuple(
                E1_FLAG if subset.contains(i)
                else (ONE_FLAG if i == rest[-1] else ZERO_FLAG)
                for i in range(1, 5)
            )
        elif subset.card == 3:
            i0 = subset.complement.elements[0]
            flags = tuple(
                ZERO_FLAG if subset.contains(i) else ONE_FLAG for i in range(1, 5)
            )
        else:
            raise UnrealizableError("orbit label must pick a complementary pair member")
    qph = quasi_parabolic(splitting, marks, flags)
    expected = ComponentLabel("N", delta, subset=subset)
    return _check_label(qph, expected)


@dataclass(frozen=True)
class RepSpec:
    """Structured request for a canonical representative."""

    kind: str  # "hitchin" | "block" | "orbit"
    splitting: Splitting
    subset: MarkSubset
    block: Optional[str] = None        # "K" | "L" for kind "block"
    q: Optional[Fraction] = None       # hitchin scale
    modulus: Optional[object] = None   # block modulus


def canonical_representative(spec: RepSpec, marks: MarkedPoints) -> QuasiParabolicHiggs:
    if spec.kind == "hitchin":
        return hitchin_representative(spec.splitting, marks, spec.subset, spec.q if spec.q is not None else 1)
    if spec.kind == "block":
        return block_representative(spec.block, spec.subset, spec.splitting, marks, spec.modulus)
    if spec.kind == "orbit":
        return orbit_representative(spec.subset, spec.splitting, marks)
    raise UnrealizableError(f"unknown representative kind {spec.kind!r}")
