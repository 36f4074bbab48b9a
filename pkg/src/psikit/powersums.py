"""The antisymmetric bracket [x,y|u,v] and sums-of-like-powers expansions.

    [x, y | u, v] := (xu - yv)(xv - yu) = (x^2 + y^2)uv - xy(u^2 + v^2)

The bracket powers the three-term expansion that relates the power sums of
three variable pairs, including the degenerate n = 2, 3 identities (empty
right-hand side) and the quintic parametric family x^5+y^5+z^5+t^5 = d^2.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .eightlevels import expand_powersum_basis, power_sum_poly
from .multipoly import SparsePoly, degree_cap, get_degree_cap, variables
from .psicore import half

__all__ = [
    "bracket",
    "bracket_pair_form",
    "verify_special_case",
    "bracket_xy_identity_check",
    "quintic_parametric_values",
    "quintic_parametric_check",
    "quintic_parametric_symbolic",
]


def bracket(x, y, u, v):
    """(xu - yv)(xv - yu); works for scalars and polynomials alike."""
    return (x * u - y * v) * (x * v - y * u)


def bracket_pair_form(x, y, u, v):
    """The second defining form (x^2 + y^2)uv - xy(u^2 + v^2)."""
    return (x * x + y * y) * u * v - x * y * (u * u + v * v)


def _derivative_terms(n: int):
    """Formal direction derivatives of the power sum in the basis symbols.

    The power sum in (z, t) is rewritten over fresh symbols s1 = z*t,
    s2 = z^2 + t^2 via the integer basis expansion; the direction operator
    u*v * d/ds1 + (u^2 + v^2) * d/ds2 is then applied repeatedly before the
    symbols are substituted back.
    """
    m = half(n)
    coeffs = expand_powersum_basis(n)
    s1, s2, u, v = variables("s1 s2 u v")
    h = SparsePoly.zero()
    for k, c in enumerate(coeffs):
        h = h + c * s1 ** (m - k) * s2**k
    direction_a = u * v
    direction_b = u * u + v * v
    out = []
    current = h
    for _ in range(1, m):
        current = direction_a * current.diff("s1") + direction_b * current.diff("s2")
        out.append(current)
    return out


def verify_special_case(n: int, cap: int = 10) -> bool:
    """Three-pair power-sum expansion for index n (2 <= n <= cap), fully
    symbolic in (x, y, z, t, u, v):

        [z,t|u,v]^m P(x,y) - [x,y|u,v]^m P(z,t) - [z,t|x,y]^m P(u,v)
          = sum_{r=1}^{m-1} 1/r! [x,y|u,v]^(m-r) [z,t|x,y]^r D^r P(z,t)

    where P is the power sum, m = floor(n/2) and D is the formal direction
    derivative over the basis (zt, z^2 + t^2).
    """
    if n < 2:
        raise ValueError("index must be >= 2")
    if n > cap:
        raise ValueError(f"index {n} above configured cap {cap}")
    m = half(n)
    x, y, z, t, u, v = variables("x y z t u v")
    with degree_cap(max(get_degree_cap(), 4 * m + n + 4)):
        p_xy = power_sum_poly(n, "x", "y")
        p_zt = power_sum_poly(n, "z", "t")
        p_uv = power_sum_poly(n, "u", "v")
        lhs = (
            bracket(z, t, u, v) ** m * p_xy
            - bracket(x, y, u, v) ** m * p_zt
            - bracket(z, t, x, y) ** m * p_uv
        )
        rhs = SparsePoly.zero()
        derivatives = _derivative_terms(n)
        for r in range(1, m):
            shifted = derivatives[r - 1].subst({"s1": z * t, "s2": z * z + t * t})
            rhs = rhs + (
                Fraction(1, factorial(r))
                * bracket(x, y, u, v) ** (m - r)
                * bracket(z, t, x, y) ** r
                * shifted
            )
    return lhs == rhs


def bracket_xy_identity_check() -> bool:
    """[z,t|u,v] xy + [u,v|x,y] zt + [x,y|z,t] uv == 0 symbolically."""
    x, y, z, t, u, v = variables("x y z t u v")
    total = (
        bracket(z, t, u, v) * x * y
        + bracket(u, v, x, y) * z * t
        + bracket(x, y, z, t) * u * v
    )
    return total.is_zero


def quintic_parametric_values(p, q):
    """The parametrised quadruple (x, y, z, t) and the square root d."""
    x = 5 * p * q
    y = 5 * (p * p + p * q + q * q)
    z = -5 * p * (p + q)
    t = -5 * q * (p + q)
    d = 125 * p * q * (p + q) * (p * p + p * q + q * q)
    return x, y, z, t, d


def quintic_parametric_check(p: int, q: int) -> bool:
    """x^5 + y^5 + z^5 + t^5 == d^2 at an integer point."""
    x, y, z, t, d = quintic_parametric_values(p, q)
    return x**5 + y**5 + z**5 + t**5 == d * d


def quintic_parametric_symbolic() -> bool:
    """The same identity as a polynomial identity in (p, q)."""
    p, q = variables("p q")
    x, y, z, t, d = quintic_parametric_values(p, q)
    return (x**5 + y**5 + z**5 + t**5 - d * d).is_zero
