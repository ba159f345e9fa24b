"""Jumping families of bundles: transition cocycles and their factorizations.

The degenerating family with jumped central fiber is given on the standard
affine cover by

    g01(z) = [[z^(m+1), 0], [t, z^(m-1)]]   (even degree)
    g01(z) = [[z^(m+2), 0], [t, z^(m-1)]]   (odd degree)

For t != 0 the bundle is evenly split, exhibited by a three-factor identity
g01 = A(z) * diag * C(z)^(-1).  The identity as printed holds verbatim only
for m = 0; for general m the product's lower-left entry picks up a factor
z^m.  `jumping_cocycle` checks both symbolically and reports which holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import as_q

# Laurent polynomials in z as {exponent: coefficient} dicts.


def _lp(d: dict) -> dict:
    return {k: as_q(v) for k, v in d.items() if v != 0}


def lp_const(c) -> dict:
    return _lp({0: c})


def lp_z(power: int, coeff=1) -> dict:
    return _lp({power: coeff})


def lp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + v
    return _lp(out)


def lp_mul(a: dict, b: dict) -> dict:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            out[ka + kb] = out.get(ka + kb, Fraction(0)) + va * vb
    return _lp(out)


def lp_neg(a: dict) -> dict:
    return {k: -v for k, v in a.items()}


def mat_mul(a, b):
    return tuple(
        tuple(
            lp_add(lp_mul(a[i][0], b[0][j]), lp_mul(a[i][1], b[1][j]))
            for j in range(2)
        )
        for i in range(2)
    )


def mat_inverse(m):
    """Inverse of a 2x2 Laurent matrix whose determinant is a monomial."""
    det = lp_add(lp_mul(m[0][0], m[1][1]), lp_neg(lp_mul(m[0][1], m[1][0])))
    if len(det) != 1:
        raise ValueError("determinant is not a unit")
    (k, c), = det.items()
    inv_det = {-k: 1 / c}
    adj = ((m[1][1], lp_neg(m[0][1])), (lp_neg(m[1][0]), m[0][0]))
    return tuple(tuple(lp_mul(inv_det, adj[i][j]) for j in range(2)) for i in range(2))


@dataclass(frozen=True)
class CocycleReport:
    parity: str
    m: int
    t: Fraction
    transition: tuple
    product: tuple
    verbatim_identity_holds: bool
    corrected_identity_holds: bool


def jumping_transition(parity: str, m: int, t) -> tuple:
    t = as_q(t)
    top = m + 1 if parity == "even" else m + 2
    return (
        (lp_z(top), lp_const(0)),
        (lp_const(t), lp_z(m - 1)),
    )


def jumping_cocycle(parity: str, m: int, t) -> CocycleReport:
    """Check the three-factor splitting identity for the jumping cocycle.

    The verbatim identity multiplies A(z) * diag * C(z)^(-1) with
    A = [[1, -z], [0, -t]] (even; upper right -z^2 when odd),
    diag = z^m * Id (even; diag(z^(m+1), z^m) when odd),
    C = [[1/z, -1], [-t, 0]].  Requires t != 0 for the inverse.
    """
    t = as_q(t)
    g01 = jumping_transition(parity, m, t)
    if t == 0:
        return CocycleReport(parity, m, t, g01, g01, m == 0, True)
    if parity == "even":
        a = ((lp_const(1), lp_z(1, -1)), (lp_const(0), lp_const(-t)))
        diag = ((lp_z(m), lp_const(0)), (lp_const(0), lp_z(m)))
    else:
        a = ((lp_const(1), lp_z(2, -1)), (lp_const(0), lp_const(-t)))
        diag = ((lp_z(m + 1), lp_const(0)), (lp_const(0), lp_z(m)))
    c = ((lp_z(-1), lp_const(-1)), (lp_const(-t), lp_const(0)))
    product = mat_mul(mat_mul(a, diag), mat_inverse(c))
    corrected = (
        (g01[0][0], g01[0][1]),
        (lp_z(m, t), g01[1][1]),
    )
    return CocycleReport(
        parity,
        m,
        t,
        g01,
        product,
        product == g01,
        product == corrected,
    )
