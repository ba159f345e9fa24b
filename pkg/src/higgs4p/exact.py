"""Exact arithmetic on the projective line: points, binary forms, linear algebra.

Scalars are `fractions.Fraction` throughout; nothing in this package ever
rounds.  A binary form of degree n is the coefficient tuple (c_0, ..., c_n)
of  c_0*Z0^n + c_1*Z0^(n-1)*Z1 + ... + c_n*Z1^n.  The degree is part of the
data even when leading coefficients vanish: a form of degree n with c_0 = 0
has a root at [1:0], and evaluation there returns c_0.  Points are stored in
a canonical representative, [a:1] for affine points and [1:0] for the point
at infinity, so equality of points is structural equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


Q = Fraction


def as_q(x) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def fraction_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class ProjPoint:
    """A point [a:b] of the projective line, stored canonically."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = as_q(self.a), as_q(self.b)
        if b != 0:
            a, b = a / b, Fraction(1)
        elif a != 0:
            a, b = Fraction(1), Fraction(0)
        else:
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def affine(cls, z) -> "ProjPoint":
        return cls(as_q(z), Fraction(1))

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(Fraction(1), Fraction(0))

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return f"[{self.a}:{self.b}]"


def parse_point(s: str) -> ProjPoint:
    s = s.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    a, b = s.split(":")
    return ProjPoint(Fraction(a), Fraction(b))


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form of fixed degree in Z0, Z1 with rational coefficients."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        cs = tuple(as_q(c) for c in self.coeffs)
        if len(cs) != self.degree + 1:
            raise ValueError("need degree+1 coefficients")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def constant(cls, c) -> "BinaryForm":
        return cls(0, (as_q(c),))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # Number of leading zero coefficients = multiplicity of the root [1:0].
    @property
    def inf_multiplicity(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return self.degree + 1

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in form addition")
        return BinaryForm(self.degree, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            n = self.degree + other.degree
            out = [Fraction(0)] * (n + 1)
            for i, ci in enumerate(self.coeffs):
                if ci == 0:
                    continue
                for j, cj in enumerate(other.coeffs):
                    out[i + j] += ci * cj
            return BinaryForm(n, tuple(out))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, t) -> "BinaryForm":
        t = as_q(t)
        return BinaryForm(self.degree, tuple(t * c for c in self.coeffs))

    def eval(self, p: ProjPoint) -> Fraction:
        """Evaluate at the canonical representative of p.

        At [z:1] this is the affine value; at [1:0] it is the leading
        coefficient, which is the second-chart value of the section.
        """
        if p.is_infinity:
            return self.coeffs[0]
        z = p.a
        acc = Fraction(0)
        for c in self.coeffs:
            acc = acc * z + c
        return acc

    def affine_derivative_at(self, z: Fraction) -> Fraction:
        """d/dz of the dehomogenized polynomial f(z, 1), evaluated at z."""
        n = self.degree
        acc = Fraction(0)
        for k, c in enumerate(self.coeffs[:-1]):
            acc = acc * z + c * (n - k)
        return acc

    def __str__(self) -> str:
        return f"BinaryForm(deg={self.degree}, coeffs=[{', '.join(str(c) for c in self.coeffs)}])"


def bf_eval(f: BinaryForm, p: ProjPoint) -> Fraction:
    return f.eval(p)


def linear_form(p: ProjPoint) -> BinaryForm:
    """The degree-1 form b*Z0 - a*Z1 vanishing exactly at p = [a:b]."""
    return BinaryForm(1, (p.b, -p.a))


def form_root(f: BinaryForm) -> ProjPoint:
    """The unique root of a nonzero degree-1 form."""
    if f.degree != 1 or f.is_zero:
        raise ValueError("need a nonzero linear form")
    b, a = f.coeffs[0], -f.coeffs[1]
    return ProjPoint(a, b)


# ---------------------------------------------------------------------------
# univariate polynomial helpers (coefficient lists, leading coefficient first)

def _poly_trim(p: list) -> list:
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _poly_divmod(f: list, g: list):
    g = _poly_trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = _poly_trim(list(f))
    q = []
    while len(r) >= len(g):
        c = r[0] / g[0]
        q.append(c)
        tail = list(g[1:]) + [Fraction(0)] * (len(r) - len(g))
        r = [a - c * b for a, b in zip(r[1:], tail)]
    return q, _poly_trim(r)


def _poly_gcd(f: list, g: list) -> list:
    f, g = _poly_trim(list(f)), _poly_trim(list(g))
    while g:
        _, r = _poly_divmod(f, g)
        f, g = g, r
    if not f:
        return []
    lead = f[0]
    return [c / lead for c in f]


def _bf_split(f: BinaryForm):
    """Split off the [1:0]-root multiplicity: f = Z1^t * (affine part)."""
    t = f.inf_multiplicity
    return t, list(f.coeffs[t:])


def _bf_join(t: int, poly: list) -> BinaryForm:
    degree = t + len(poly) - 1
    return BinaryForm(degree, (Fraction(0),) * t + tuple(poly))


def bf_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Greatest common divisor, with leading nonzero coefficient 1.

    Tracks roots at [1:0] through the degree bookkeeping, which plain
    dehomogenized gcd would lose.
    """
    if f.is_zero and g.is_zero:
        raise ValueError("gcd of zero forms")
    if f.is_zero:
        return bf_normalize(g)
    if g.is_zero:
        return bf_normalize(f)
    tf, pf = _bf_split(f)
    tg, pg = _bf_split(g)
    return _bf_join(min(tf, tg), _poly_gcd(pf, pg) or [Fraction(1)])


def bf_normalize(f: BinaryForm) -> BinaryForm:
    """Scale so the leading nonzero coefficient is 1."""
    if f.is_zero:
        raise ValueError("cannot normalize the zero form")
    lead = f.coeffs[f.inf_multiplicity]
    return f.scale(1 / lead)


def bf_divexact(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Exact division f / g of forms; raises if g does not divide f."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero:
        if f.degree < g.degree:
            raise ValueError("inexact form division")
        return BinaryForm.zero(f.degree - g.degree)
    tf, pf = _bf_split(f)
    tg, pg = _bf_split(g)
    if tf < tg or f.degree < g.degree:
        raise ValueError("inexact form division")
    q, r = _poly_divmod(pf, pg)
    if r:
        raise ValueError("inexact form division")
    target = f.degree - g.degree
    t = target - (len(q) - 1)
    return _bf_join(t, q)


def bf_product(forms: Iterable[BinaryForm]) -> BinaryForm:
    acc = BinaryForm.constant(1)
    for f in forms:
        acc = acc * f
    return acc


# ---------------------------------------------------------------------------
# exact linear algebra over the rationals

def rref(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [[as_q(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> list:
    """Exact kernel basis of the matrix; empty list iff the kernel is trivial."""
    if not rows:
        if ncols is None:
            raise ValueError("need ncols for an empty constraint matrix")
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(tuple(v))
        return basis
    ncols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(tuple(v))
    return basis


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def solve_unique(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """Solve A x = b when A is square and invertible; None otherwise."""
    n = len(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    m, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        return None
    return tuple(m[i][n] for i in range(n))


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    return matrix_rank(diffs) if diffs else 0


# ---------------------------------------------------------------------------

def cross_ratio(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint) -> ProjPoint:
    """Value at p1 of the Moebius map sending p2 -> 0, p3 -> 1, p4 -> infinity.

    With the standard marked points (0, 1, infinity) in slots 2..4 this
    returns p1 itself.  One coincidence among the anchors is tolerated and
    produces the continuous limit value; a doubly degenerate configuration
    raises.
    """

    def d(p, q):
        return p.a * q.b - q.a * p.b

    num = d(p1, p2) * d(p3, p4)
    den = d(p1, p4) * d(p3, p2)
    if num == 0 and den == 0:
        raise ValueError("degenerate normalization")
    return ProjPoint(num, den)
