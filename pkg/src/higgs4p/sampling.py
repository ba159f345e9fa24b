"""Seeded random generators for model points, weights and automorphisms.

All draws use bounded-height rationals from an explicit `random.Random`, so
any failure reproduces from its seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .bundles import (
    AutElement,
    HiggsField,
    MarkedPoints,
    QuasiParabolicHiggs,
    Splitting,
    incidence_violation,
    membership_violation,
    quasi_parabolic,
    residue,
)
from .exact import BinaryForm, ProjPoint
from .weights import Chamber, classify


def rnd_fraction(rng: random.Random, span: int = 6, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rnd_nonzero_fraction(rng: random.Random, span: int = 6, den: int = 5) -> Fraction:
    while True:
        x = rnd_fraction(rng, span, den)
        if x != 0:
            return x


def rnd_point(rng: random.Random, span: int = 6) -> ProjPoint:
    if rng.random() < 0.1:
        return ProjPoint.infinity()
    return ProjPoint.affine(rnd_fraction(rng, span))


def rnd_form(rng: random.Random, degree: int, span: int = 4) -> BinaryForm:
    return BinaryForm(degree, tuple(rnd_fraction(rng, span, 3) for _ in range(degree + 1)))


def rnd_nonzero_form(rng: random.Random, degree: int, span: int = 4) -> BinaryForm:
    while True:
        f = rnd_form(rng, degree, span)
        if not f.is_zero:
            return f


def rnd_weights_in_chamber(rng: random.Random, chamber: Chamber) -> tuple:
    """A random rational weight vector strictly inside a chamber."""
    verts = chamber.closure_vertices()
    while True:
        lams = [Fraction(rng.randint(1, 23)) for _ in verts]
        total = sum(lams)
        beta = tuple(
            sum(l * v[i] for l, v in zip(lams, verts)) / total for i in range(4)
        )
        if all(0 < b < 1 for b in beta) and classify(beta, chamber.parity) == chamber:
            return beta


def rnd_weights(rng: random.Random, den: int = 720) -> tuple:
    return tuple(Fraction(rng.randint(1, den - 1), den) for _ in range(4))


def rnd_automorphism(rng: random.Random, splitting: Splitting) -> AutElement:
    delta = splitting.delta
    if delta == 0:
        while True:
            a, q0, c, d = (rnd_fraction(rng, 4, 3) for _ in range(4))
            if a * d - c * q0 != 0:
                return AutElement.constant(a, q0, c, d)
    return AutElement(
        delta,
        rnd_nonzero_fraction(rng, 4, 3),
        rnd_nonzero_fraction(rng, 4, 3),
        rnd_form(rng, delta),
    )


def rnd_nilpotent_field(rng: random.Random, splitting: Splitting) -> HiggsField:
    """A random nonzero nilpotent Higgs field on the splitting.

    Either upper-triangular (kernel the destabilizing summand) or the
    factored shape u = f*g*h, v = f*g^2, w = f*h^2 that realizes the
    remaining kernel degrees.
    """
    delta = splitting.delta
    if delta >= 3 or rng.random() < 0.3:
        return HiggsField.build(delta, v=rnd_nonzero_form(rng, delta + 2))
    shapes = {
        0: [(2, 0, 0), (0, 1, 1)],
        1: [(1, 1, 0)],
        2: [(0, 2, 0)],
    }[delta]
    a, b, c = shapes[rng.randrange(len(shapes))]
    f = rnd_nonzero_form(rng, a)
    g = rnd_nonzero_form(rng, b)
    hh = rnd_nonzero_form(rng, c)
    u = f * g * hh
    v = f * g * g
    w = f * hh * hh
    sign = rng.choice((1, -1))
    return HiggsField(delta, u.scale(sign), v.scale(sign), w.scale(sign))


def _kernel_flag(mat) -> ProjPoint:
    if mat[0][0] != 0 or mat[0][1] != 0:
        return ProjPoint(mat[0][1], -mat[0][0])
    return ProjPoint(mat[1][1], -mat[1][0])


def rnd_nilpotent_point(
    rng: random.Random, splitting: Splitting, marks: MarkedPoints
) -> QuasiParabolicHiggs:
    """A model point with random nonzero nilpotent field and compatible flags."""
    phi = rnd_nilpotent_field(rng, splitting)
    probe = quasi_parabolic(splitting, marks, (ProjPoint.affine(0),) * 4, phi)
    flags = []
    for i in range(1, 5):
        r = residue(probe, i)
        if any(x != 0 for row in r for x in row):
            flags.append(_kernel_flag(r))
        elif rng.random() < 0.3:
            # occasionally align a free flag with the kernel line
            line_flag = _line_value(phi, splitting, marks, i)
            flags.append(line_flag if line_flag is not None else rnd_point(rng))
        else:
            flags.append(rnd_point(rng))
    qph = quasi_parabolic(splitting, marks, tuple(flags), phi)
    assert membership_violation(qph) is None and incidence_violation(qph) is None
    return qph


def _line_value(phi, splitting, marks, i):
    from .bundles import kernel_line

    try:
        return kernel_line(phi, splitting).eval_at(marks.point(i))
    except ValueError:
        return None


def rnd_parabolic_point(
    rng: random.Random, splitting: Splitting, marks: MarkedPoints
) -> QuasiParabolicHiggs:
    """A zero-field point with random flags (coincidences welcome)."""
    pool = [rnd_point(rng) for _ in range(3)] + [ProjPoint.infinity(), ProjPoint.affine(0)]
    flags = tuple(rng.choice(pool) for _ in range(4))
    return quasi_parabolic(splitting, marks, flags)


def rnd_bulk_point(
    rng: random.Random, splitting: Splitting, marks: MarkedPoints
) -> QuasiParabolicHiggs:
    """A model point with nonzero determinant."""
    from .canonical import generic_bulk_representative, hitchin_representative
    from .weights import MarkSubset, subsets_of_card_parity

    delta = splitting.delta
    if delta == 2 or rng.random() < 0.5:
        card = delta + 2
        options = [s for s in subsets_of_card_parity("even" if card % 2 == 0 else "odd") if s.card == card]
        member = rng.choice(options)
        qph = hitchin_representative(splitting, marks, member, rnd_nonzero_fraction(rng))
    else:
        qph = generic_bulk_representative(splitting, marks)
        if rng.random() < 0.5:
            qph = quasi_parabolic(splitting, marks, qph.flags, qph.phi.scale(rnd_nonzero_fraction(rng)))
    return apply_random_aut(rng, qph)


def apply_random_aut(rng: random.Random, qph: QuasiParabolicHiggs) -> QuasiParabolicHiggs:
    from .bundles import apply_automorphism

    return apply_automorphism(rnd_automorphism(rng, qph.splitting), qph)
