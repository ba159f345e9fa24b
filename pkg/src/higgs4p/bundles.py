"""Symbolic quasi-parabolic Higgs bundles on O(m1) + O(m2) over the projective line.

Conventions.  The marked points are z1 (a rational parameter outside {0,1}),
z2 = [0:1], z3 = [1:1], z4 = [1:0].  A Higgs field is the trace-free matrix

    Phi = [[u, -v], [w, -u]]

of binary forms with deg u = 2, deg v = m1-m2+2, deg w = m2-m1+2 (the w slot
is absent once m1-m2 >= 3).  Membership in the model space requires
u(z_i)^2 = v(z_i) w(z_i) at the four marked points; evaluation at [1:0] reads
leading coefficients, which realizes the second-chart frame.  Flags at
z1, z2, z3 live in the first-chart splitting frame and the flag at z4 in the
second-chart frame, so binary-form evaluation of sections matches flags at
every marked point with no special case at infinity.

Residues are normalized as M(z_i)/P'(z_i) at finite marked points and as
-[[u-bar, -v-bar], [w-bar, -u-bar]] at infinity, where bars take leading
coefficients and P = l1*l2*l3*l4 is the quartic with the marked points as
roots.  Only kernels and nilpotency of residues carry contract weight; the
scale convention is fixed for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exact import (
    BinaryForm,
    ProjPoint,
    Q,
    as_q,
    bf_divexact,
    bf_gcd,
    bf_normalize,
    bf_product,
    cross_ratio,
    linear_form,
    form_root,
    nullspace,
)
from .weights import EMPTY, FULL, MarkSubset


class MembershipError(ValueError):
    """A matrix of forms fails the marked-point nilpotency constraints."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"not a parabolic Higgs field (constraint fails at marked point {index})")


@dataclass(frozen=True, order=True)
class Splitting:
    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 < self.m2:
            raise ValueError("require m1 >= m2")

    @property
    def d(self) -> int:
        return self.m1 + self.m2

    @property
    def delta(self) -> int:
        return self.m1 - self.m2

    @property
    def evenly_split(self) -> bool:
        return self.delta <= 1

    @property
    def parity(self) -> str:
        return "even" if self.d % 2 == 0 else "odd"

    def __str__(self) -> str:
        return f"O({self.m1})+O({self.m2})"


@dataclass(frozen=True)
class MarkedPoints:
    """The divisor z1 + 0 + 1 + infinity, with z1 a rational parameter."""

    z1: Fraction

    def __post_init__(self):
        z1 = as_q(self.z1)
        if z1 in (0, 1):
            raise ValueError("z1 must avoid 0 and 1")
        object.__setattr__(self, "z1", z1)

    @property
    def points(self) -> tuple:
        return (
            ProjPoint.affine(self.z1),
            ProjPoint.affine(0),
            ProjPoint.affine(1),
            ProjPoint.infinity(),
        )

    def point(self, i: int) -> ProjPoint:
        return self.points[i - 1]

    def linear_forms(self) -> tuple:
        return tuple(linear_form(p) for p in self.points)

    @property
    def quartic(self) -> BinaryForm:
        return bf_product(self.linear_forms())

    def dP_at(self, i: int) -> Fraction:
        """Derivative of the affine cubic P(z,1) at a finite marked point."""
        if i == 4:
            raise ValueError("use the infinity branch of the residue instead")
        return self.quartic.affine_derivative_at(self.point(i).a)


Flag = ProjPoint


@dataclass(frozen=True)
class HiggsField:
    """The matrix [[u, -v], [w, -u]]; w is None exactly when m1-m2 >= 3."""

    delta: int
    u: BinaryForm
    v: BinaryForm
    w: Optional[BinaryForm]

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta = m1-m2 must be nonnegative")
        if self.u.degree != 2:
            raise ValueError("u must have degree 2")
        if self.v.degree != self.delta + 2:
            raise ValueError("v must have degree m1-m2+2")
        if self.delta >= 3:
            if self.w is not None:
                raise ValueError("w slot is absent when m1-m2 >= 3")
        else:
            if self.w is None or self.w.degree != 2 - self.delta:
                raise ValueError("w must have degree m2-m1+2")

    @classmethod
    def zero(cls, delta: int) -> "HiggsField":
        w = None if delta >= 3 else BinaryForm.zero(2 - delta)
        return cls(delta, BinaryForm.zero(2), BinaryForm.zero(delta + 2), w)

    @classmethod
    def build(cls, delta: int, u=None, v=None, w=None) -> "HiggsField":
        u = u if u is not None else BinaryForm.zero(2)
        v = v if v is not None else BinaryForm.zero(delta + 2)
        if delta >= 3:
            w = None
        else:
            w = w if w is not None else BinaryForm.zero(2 - delta)
        return cls(delta, u, v, w)

    @property
    def is_zero(self) -> bool:
        return self.u.is_zero and self.v.is_zero and (self.w is None or self.w.is_zero)

    def w_or_zero(self) -> BinaryForm:
        # for delta >= 3 the slot is structurally zero in every formula
        return self.w if self.w is not None else BinaryForm.zero(0)

    def scale(self, t) -> "HiggsField":
        t = as_q(t)
        return HiggsField(
            self.delta,
            self.u.scale(t),
            self.v.scale(t),
            None if self.w is None else self.w.scale(t),
        )


@dataclass(frozen=True)
class QuasiParabolicHiggs:
    splitting: Splitting
    marks: MarkedPoints
    flags: tuple
    phi: HiggsField

    def __post_init__(self):
        if len(self.flags) != 4:
            raise ValueError("need four flags")
        if self.phi.delta != self.splitting.delta:
            raise ValueError("field degrees do not match the splitting")

    @property
    def d(self) -> int:
        return self.splitting.d


def quasi_parabolic(splitting: Splitting, marks: MarkedPoints, flags, phi=None) -> QuasiParabolicHiggs:
    phi = phi if phi is not None else HiggsField.zero(splitting.delta)
    return QuasiParabolicHiggs(splitting, marks, tuple(flags), phi)


# ---------------------------------------------------------------------------
# membership, residues, determinant

def membership_violation(qph: QuasiParabolicHiggs) -> Optional[int]:
    """Index of the first marked point where u^2 = v*w fails, else None."""
    phi = qph.phi
    w = phi.w_or_zero()
    for i, p in enumerate(qph.marks.points, start=1):
        if phi.u.eval(p) ** 2 != phi.v.eval(p) * w.eval(p):
            return i
    return None


def require_membership(qph: QuasiParabolicHiggs) -> None:
    bad = membership_violation(qph)
    if bad is not None:
        raise MembershipError(bad)


def incidence_violation(qph: QuasiParabolicHiggs) -> Optional[int]:
    """First marked point whose flag misses the kernel of a nonzero residue."""
    for i in range(1, 5):
        r = residue(qph, i)
        if all(x == 0 for row in r for x in row):
            continue
        f = qph.flags[i - 1]
        if r[0][0] * f.a + r[0][1] * f.b != 0 or r[1][0] * f.a + r[1][1] * f.b != 0:
            return i
    return None


def residue(qph: QuasiParabolicHiggs, i: int) -> tuple:
    """Residue matrix of the Higgs field at the i-th marked point.

    First-chart frame at the finite points, second-chart frame at infinity.
    """
    phi = qph.phi
    w = phi.w_or_zero()
    if i == 4:
        ub, vb, wb = phi.u.coeffs[0], phi.v.coeffs[0], w.coeffs[0] if w.degree >= 0 else Fraction(0)
        return ((-ub, vb), (-wb, ub))
    p = qph.marks.point(i)
    dp = qph.marks.dP_at(i)
    return (
        (phi.u.eval(p) / dp, -phi.v.eval(p) / dp),
        (w.eval(p) / dp, -phi.u.eval(p) / dp),
    )


def det_scalar(qph: QuasiParabolicHiggs) -> Fraction:
    """The scalar c with v*w - u^2 = c*P; zero exactly for nilpotent fields."""
    require_membership(qph)
    phi = qph.phi
    if phi.w is None:
        return Fraction(0)
    det_form = phi.v * phi.w - phi.u * phi.u
    quotient = bf_divexact(det_form, qph.marks.quartic)
    assert quotient.degree == 0
    return quotient.coeffs[0]


# ---------------------------------------------------------------------------
# line sub-bundles

@dataclass(frozen=True)
class LineSubbundle:
    """A saturated degree-j line sub-bundle, generated by the section pair (s1, s2).

    deg s1 = m1-j and deg s2 = m2-j; the s2 slot is None when m2-j < 0, which
    happens only for the destabilizing summand of an unbalanced splitting.
    """

    j: int
    s1: BinaryForm
    s2: Optional[BinaryForm]

    @property
    def is_first_summand(self) -> bool:
        return self.s2 is None or self.s2.is_zero

    def eval_at(self, p: ProjPoint) -> ProjPoint:
        a = self.s1.eval(p)
        b = self.s2.eval(p) if self.s2 is not None else Fraction(0)
        return ProjPoint(a, b)

    def __str__(self) -> str:
        return f"L(j={self.j}, s1={self.s1}, s2={self.s2})"


def _scale_pair(line: LineSubbundle) -> LineSubbundle:
    lead = None
    for f in (line.s1, line.s2):
        if f is not None and not f.is_zero:
            lead = f.coeffs[f.inf_multiplicity]
            break
    if lead is None or lead == 1:
        return line
    return LineSubbundle(
        line.j,
        line.s1.scale(1 / lead),
        None if line.s2 is None else line.s2.scale(1 / lead),
    )


def _saturate_pair(s1: BinaryForm, s2: Optional[BinaryForm], j: int) -> LineSubbundle:
    if s2 is None or s2.is_zero:
        if s1.is_zero:
            raise ValueError("zero section pair")
        g = bf_normalize(s1)
        t = g.degree
        tail = None
        if s2 is not None and s2.degree - t >= 0:
            tail = BinaryForm.zero(s2.degree - t)
        return _scale_pair(LineSubbundle(j + t, bf_divexact(s1, g), tail))
    if s1.is_zero:
        g = bf_normalize(s2)
        t = g.degree
        new_s1 = BinaryForm.zero(s1.degree - t) if s1.degree - t >= 0 else None
        if new_s1 is None:
            raise ValueError("section degrees out of range")
        return _scale_pair(LineSubbundle(j + t, new_s1, bf_divexact(s2, g)))
    g = bf_gcd(s1, s2)
    t = g.degree
    return _scale_pair(LineSubbundle(j + t, bf_divexact(s1, g), bf_divexact(s2, g)))


def kernel_line(phi: HiggsField, splitting: Splitting) -> LineSubbundle:
    """The unique saturated invariant line of a nonzero nilpotent field."""
    if phi.is_zero:
        raise ValueError("no invariant line")
    if phi.w is None:
        if not phi.u.is_zero:
            raise ValueError("no invariant line")
    elif not (phi.v * phi.w - phi.u * phi.u).is_zero:
        raise ValueError("no invariant line")
    m1, m2, d = splitting.m1, splitting.m2, splitting.d
    if phi.v.is_zero and phi.u.is_zero:
        line = LineSubbundle(m2, BinaryForm.zero(splitting.delta), BinaryForm.constant(1))
    else:
        line = _saturate_pair(phi.v, phi.u, m2 - 2)
    if 2 * (line.j + 1) < d:
        raise AssertionError("invariant line violates the degree bound")
    return line


def higgs_divisor(phi: HiggsField, splitting: Splitting):
    """(sigma, k): the normalized gcd of the entries and its degree.

    For a nonzero nilpotent field, k = 2(deg L + 1) - d.
    """
    line = kernel_line(phi, splitting)  # validates nilpotency and phi != 0
    entries = [f for f in (phi.u, phi.v, phi.w) if f is not None and not f.is_zero]
    g = entries[0]
    for f in entries[1:]:
        g = bf_gcd(g, f)
    sigma = bf_normalize(g)
    k = sigma.degree
    if k != 2 * (line.j + 1) - splitting.d:
        raise AssertionError("divisor degree disagrees with the kernel degree")
    return sigma, k


def flags_subset(line: LineSubbundle, qph: QuasiParabolicHiggs) -> MarkSubset:
    """The marked points where the line sub-bundle passes through the flag."""
    hits = []
    for i, p in enumerate(qph.marks.points, start=1):
        if line.eval_at(p) == qph.flags[i - 1]:
            hits.append(i)
    return MarkSubset.of(*hits) if hits else EMPTY


# ---------------------------------------------------------------------------
# interpolation of flags by line sub-bundles

@dataclass(frozen=True)
class Infeasible:
    subset: MarkSubset
    j: int


def _interp_rows(flags, marks: MarkedPoints, subset: MarkSubset, j: int, splitting: Splitting):
    """Linear conditions b_i*s1(z_i) - a_i*s2(z_i) = 0 on the coefficient space."""
    n1 = splitting.m1 - j
    n2 = splitting.m2 - j
    if n1 < 0:
        return None, 0, 0
    dim2 = n2 + 1 if n2 >= 0 else 0
    rows = []
    for i in subset.elements:
        p = marks.point(i)
        a, b = flags[i - 1].a, flags[i - 1].b
        if p.is_infinity:
            ev1 = [Fraction(1)] + [Fraction(0)] * n1
            ev2 = [Fraction(1)] + [Fraction(0)] * (dim2 - 1) if dim2 else []
        else:
            z = p.a
            ev1 = [z ** (n1 - k) for k in range(n1 + 1)]
            ev2 = [z ** (n2 - k) for k in range(dim2)]
        rows.append([b * e for e in ev1] + [-a * e for e in ev2])
    return rows, n1 + 1, dim2


def interpolation_basis(flags, marks, subset: MarkSubset, j: int, splitting: Splitting):
    """Kernel basis of the interpolation system; [] when only (0,0) solves it."""
    rows, dim1, dim2 = _interp_rows(flags, marks, subset, j, splitting)
    if rows is None or dim1 + dim2 == 0:
        return [], 0, 0
    return nullspace(rows, ncols=dim1 + dim2), dim1, dim2


def interpolate(flags, marks: MarkedPoints, subset: MarkSubset, j: int, splitting: Splitting):
    """A saturated line sub-bundle through the named flags, or Infeasible.

    The solution is the first kernel basis vector of the exact linear system;
    its reported degree may exceed j when every solution carries a common
    factor.
    """
    basis, dim1, dim2 = interpolation_basis(flags, marks, subset, j, splitting)
    if not basis:
        return Infeasible(subset, j)
    vec = basis[0]
    s1 = BinaryForm(splitting.m1 - j, vec[:dim1])
    s2 = BinaryForm(splitting.m2 - j, vec[dim1:]) if dim2 else None
    return _saturate_pair(s1, s2, j)


def honest_line_exists(flags, marks, subset: MarkSubset, j: int, splitting: Splitting) -> bool:
    """Whether a saturated sub-bundle of degree exactly j interpolates the flags.

    For j = m2 < m1 a solution with vanishing s2 part saturates to the
    destabilizing summand instead, so genuine membership needs a solution
    whose s2 part is nonzero.  For j = m1 only the summand itself qualifies.
    For m1 = m2 constant solutions are saturated as they stand.
    """
    basis, dim1, dim2 = interpolation_basis(flags, marks, subset, j, splitting)
    if not basis:
        return False
    if j == splitting.m1:
        return True
    if splitting.m1 == splitting.m2 and j == splitting.m2:
        return True
    if j == splitting.m2:
        return any(any(c != 0 for c in vec[dim1:]) for vec in basis)
    return True


# ---------------------------------------------------------------------------
# strata of quasi-parabolic structures

E1_FLAG = ProjPoint(Fraction(1), Fraction(0))


def _coincidence_classes(flags):
    classes = []
    for i, f in enumerate(flags, start=1):
        for cls in classes:
            if flags[cls[0] - 1] == f:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def qp_locus(flags, marks: MarkedPoints, splitting: Splitting) -> str:
    """Stratum of a quasi-parabolic structure: U', U-U', X, Y or other."""
    delta = splitting.delta
    if delta >= 3:
        raise ValueError("no stable locus stratification defined")
    flags = tuple(flags)

    if delta == 0:
        classes = sorted((len(c) for c in _coincidence_classes(flags)), reverse=True)
        if classes[0] == 4:
            return "other"
        if classes[0] == 3:
            return "Y"
        if classes[0] == 2 and classes[1] == 2:
            return "X"
        if classes[0] == 2:
            return "U-U'"
        return "U-U'" if cross_ratio(*flags) == marks.point(1) else "U'"

    e1 = MarkSubset.of(*(i for i in range(1, 5) if flags[i - 1] == E1_FLAG)) \
        if any(f == E1_FLAG for f in flags) else EMPTY

    if delta == 1:
        on_line = lambda sub: honest_line_exists(flags, marks, sub, splitting.m2, splitting)
        if e1.card == 0:
            if on_line(FULL):
                return "Y"
            triples = [s for s in (MarkSubset(15 ^ (1 << k)) for k in range(4)) if on_line(s)]
            if triples:
                return "U-U'"
            return "U'"
        if e1.card == 1:
            return "X" if on_line(e1.complement) else "U-U'"
        if e1.card == 2:
            return "Y"
        return "other"

    # delta == 2
    if e1.card == 0:
        return "X" if honest_line_exists(flags, marks, FULL, splitting.m2, splitting) else "U-U'"
    if e1.card == 1:
        return "Y" if honest_line_exists(flags, marks, e1.complement, splitting.m2, splitting) else "other"
    return "other"


def orbit_invariant(flags, marks: MarkedPoints, splitting: Splitting) -> ProjPoint:
    """Complete invariant of bundle-automorphism orbits on the free locus.

    For a balanced splitting this is the cross-ratio of the four flags in the
    normalization that sends the marked points themselves to z1.  For
    m1-m2 = 1 it is the root of the lower-left entry of any Higgs field whose
    residue kernels realize the flags; that divisor does not depend on the
    chosen field, is constant on orbits, and takes the boundary values
    z1, 0, 1, infinity on the eight non-free orbit families.
    """
    if splitting.delta > 1:
        raise ValueError("invariant defined for evenly-split bundles only")
    if qp_locus(flags, marks, splitting) not in ("U'", "U-U'"):
        raise ValueError("flags outside the free locus")
    if splitting.delta == 0:
        return cross_ratio(*flags)

    rows = []
    for i, p in enumerate(marks.points, start=1):
        a, b = flags[i - 1].a, flags[i - 1].b
        ev_u = _form_eval_row(2, p)
        ev_v = _form_eval_row(3, p)
        ev_w = _form_eval_row(1, p)
        zero_u, zero_v, zero_w = [Fraction(0)] * 3, [Fraction(0)] * 4, [Fraction(0)] * 2
        # u(p)*a - v(p)*b = 0 and w(p)*a - u(p)*b = 0
        rows.append([a * e for e in ev_u] + [-b * e for e in ev_v] + zero_w)
        rows.append([-b * e for e in ev_u] + zero_v + [a * e for e in ev_w])
    basis = nullspace(rows, ncols=9)
    w_parts = [vec[7:9] for vec in basis if any(c != 0 for c in vec[7:9])]
    if not w_parts:
        raise AssertionError("no compatible Higgs field with nonzero lower-left entry")
    root = form_root(BinaryForm(1, w_parts[0]))
    for other in w_parts[1:]:
        if form_root(BinaryForm(1, other)) != root:
            raise AssertionError("lower-left divisor is not orbit-determined here")
    return root


def _form_eval_row(degree: int, p: ProjPoint):
    if p.is_infinity:
        return [Fraction(1)] + [Fraction(0)] * degree
    z = p.a
    return [z ** (degree - k) for k in range(degree + 1)]


# ---------------------------------------------------------------------------
# bundle automorphisms

@dataclass(frozen=True)
class AutElement:
    """Global bundle automorphism [[a, q], [c, d]] with q a form of degree m1-m2.

    For a balanced splitting this is any invertible constant matrix; for
    m1 > m2 the lower-left entry must vanish and a, d must be nonzero.
    """

    delta: int
    a: Fraction
    d: Fraction
    q: BinaryForm
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_q(self.a))
        object.__setattr__(self, "d", as_q(self.d))
        object.__setattr__(self, "c", as_q(self.c))
        if self.q.degree != self.delta:
            raise ValueError("q must have degree m1-m2")
        if self.delta > 0:
            if self.c != 0:
                raise ValueError("lower-left entry must vanish unless m1 = m2")
            if self.a == 0 or self.d == 0:
                raise ValueError("not invertible")
        else:
            if self.a * self.d - self.c * self.q.coeffs[0] == 0:
                raise ValueError("not invertible")

    @classmethod
    def identity(cls, delta: int) -> "AutElement":
        q = BinaryForm.zero(delta)
        return cls(delta, Fraction(1), Fraction(1), q, Fraction(0))

    @classmethod
    def constant(cls, a, q0, c, d) -> "AutElement":
        return cls(0, as_q(a), as_q(d), BinaryForm.constant(q0), as_q(c))

    def det(self) -> Fraction:
        if self.delta == 0:
            return self.a * self.d - self.c * self.q.coeffs[0]
        return self.a * self.d

    def flag_action(self, p: ProjPoint, flag: ProjPoint) -> ProjPoint:
        qv = self.q.eval(p)
        return ProjPoint(self.a * flag.a + qv * flag.b, self.c * flag.a + self.d * flag.b)


def apply_automorphism(g: AutElement, qph: QuasiParabolicHiggs) -> QuasiParabolicHiggs:
    """Conjugate the Higgs field and move the flags by a bundle automorphism."""
    if g.delta != qph.splitting.delta:
        raise ValueError("automorphism does not match the splitting")
    phi = qph.phi
    u, v, w = phi.u, phi.v, phi.w
    a, c, d, q = g.a, g.c, g.d, g.q
    det = g.det()
    # G M adj(G) with M = [[u, -v], [w, -u]] and adj(G) = [[d, -q], [-c, a]];
    # the c-terms only exist on a balanced splitting, the w-terms only when
    # the slot is present.
    m00 = u.scale(a) + q * w if w is not None else u.scale(a)
    m01 = v.scale(-a) - q * u
    if g.delta == 0:
        m10 = u.scale(c) + w.scale(d)
        m11 = v.scale(-c) - u.scale(d)
        n00 = m00.scale(d) + m01.scale(-c)
        n10 = m10.scale(d) + m11.scale(-c)
        n11 = (m10 * q).scale(-1) + m11.scale(a)
    else:
        m11 = u.scale(-d)
        n00 = m00.scale(d)
        if w is not None:
            m10 = w.scale(d)
            n10 = m10.scale(d)
            n11 = (m10 * q).scale(-1) + m11.scale(a)
        else:
            n10 = None
            n11 = m11.scale(a)
    n01 = (m00 * q).scale(-1) + m01.scale(a)
    assert (n00 + n11).is_zero
    new_phi = HiggsField(
        phi.delta,
        n00.scale(1 / det),
        n01.scale(-1 / det),
        None if n10 is None else n10.scale(1 / det),
    )
    new_flags = tuple(
        g.flag_action(p, f) for p, f in zip(qph.marks.points, qph.flags)
    )
    return QuasiParabolicHiggs(qph.splitting, qph.marks, new_flags, new_phi)


def free_orbit_canonical_form(qph: QuasiParabolicHiggs) -> QuasiParabolicHiggs:
    """Move a model point over free-locus flags to a canonical frame.

    On a balanced splitting the three flags F2, F3, F4 are sent to
    [0:1], [1:1], [1:0]; for m1-m2 = 1 the slopes at z2, z3 are zeroed by the
    unipotent radical and the slope at z4 scaled to 1.  Orbit equality over
    the free locus is equality of canonical forms, since stabilizers there
    are trivial.
    """
    if qp_locus(qph.flags, qph.marks, qph.splitting) != "U'":
        raise ValueError("flags outside the free locus")
    if qph.splitting.delta == 0:
        p2, p3, p4 = qph.flags[1], qph.flags[2], qph.flags[3]
        alpha = p4.b * p3.a - p4.a * p3.b
        beta = p2.b * p3.a - p2.a * p3.b
        g = AutElement.constant(alpha * p2.b, -alpha * p2.a, beta * p4.b, -beta * p4.a)
        return apply_automorphism(g, qph)
    f2 = qph.flags[1].a / qph.flags[1].b
    f3 = qph.flags[2].a / qph.flags[2].b
    f4 = qph.flags[3].a / qph.flags[3].b
    slope = f2 - f3
    offset = -f2
    f4p = f4 + slope
    scale = 1 / f4p
    g = AutElement(1, scale, Fraction(1), BinaryForm(1, (slope * scale, offset * scale)))
    return apply_automorphism(g, qph)


# ---------------------------------------------------------------------------
# residue evaluation model

def ev_blowup(qph: QuasiParabolicHiggs) -> tuple:
    """The four (residue matrix, flag) pairs, with incidence verified."""
    require_membership(qph)
    bad = incidence_violation(qph)
    if bad is not None:
        raise ValueError(f"flag misses the residue kernel at marked point {bad}")
    return tuple((residue(qph, i), qph.flags[i - 1]) for i in range(1, 5))


def nilpotent_from_coords(z0, z1) -> tuple:
    """The nilpotent matrix [[Z0*Z1, -Z0^2], [Z1^2, -Z0*Z1]] of a coordinate pair."""
    z0, z1 = as_q(z0), as_q(z1)
    return ((z0 * z1, -z0 * z0), (z1 * z1, -z0 * z1))


def coords_from_nilpotent(mat) -> tuple:
    """Recover (Z0, Z1) from the quadric parametrization, up to a global sign.

    The returned representative has its first nonzero coordinate positive.
    """
    from .exact import fraction_sqrt

    (a, nb), (c, na) = mat
    if na != -a:
        raise ValueError("matrix is not trace-free")
    b = -nb
    if a * a != b * c:
        raise ValueError("matrix is not nilpotent")
    z0 = fraction_sqrt(b)
    z1 = fraction_sqrt(c)
    if z0 is None or z1 is None:
        raise ValueError("coordinates are not rational")
    if z0 != 0 and z1 != 0 and z0 * z1 != a:
        z1 = -z1
    if z0 < 0 or (z0 == 0 and z1 < 0):
        z0, z1 = -z0, -z1
    return (z0, z1)


def orbit_stratum_of_point(mat, flag: ProjPoint, splitting: Splitting) -> str:
    """Orbit label of a (nilpotent matrix, kernel flag) pair in the blown-up cone.

    For m1 > m2 the four orbits are: O4 the point (0, destabilizing line),
    O3 the rest of the exceptional divisor, O2 nonzero matrices killing the
    destabilizing line, O1 the open orbit.  For m1 = m2 there are two orbits;
    the exceptional divisor reports O3 and its complement O1.
    """
    zero = all(x == 0 for row in mat for x in row)
    if not zero:
        (a, nb), (c, na) = mat
        if na != -a or a * a != (-nb) * c:
            raise ValueError("matrix is not nilpotent")
        if mat[0][0] * flag.a + mat[0][1] * flag.b != 0 or mat[1][0] * flag.a + mat[1][1] * flag.b != 0:
            raise ValueError("flag is not in the kernel")
    if splitting.delta == 0:
        return "O3" if zero else "O1"
    if zero:
        return "O4" if flag == E1_FLAG else "O3"
    kernel_is_e1 = mat[0][0] == 0 and mat[1][0] == 0
    return "O2" if kernel_is_e1 else "O1"
