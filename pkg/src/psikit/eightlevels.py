"""Expansion of power sums in pairs of symmetric binary quadratic forms.

The central object is the coefficient family

    coeff(a, b, n | alpha, beta, r) = (-1)**r / r! * (alpha*d/da + beta*d/db)**r psi(a, b, n)

for 0 <= r <= floor(n/2).  These are the unique polynomials satisfying

    (beta*a - alpha*b)**floor(n/2) * (x**n + y**n) / (x + y)**parity(n)
        = sum_r coeff_r * (alpha*x^2 + beta*xy + alpha*y^2)**(floor(n/2) - r)
                        * (a*x^2 + b*xy + a*y^2)**r.

This module computes the family three independent ways (derivative operator,
dual operator, base change into the two forms), verifies the expansion
identity, evaluates the integer specialisation onto the basis
(xy, x^2 + y^2), and checks the theta-sum, scaling, ladder and closed-form
properties of the family.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .multipoly import SparsePoly, as_poly, degree_cap, get_degree_cap, variables
from .psicore import half, parity, psi_recurrence, psi_symbolic

__all__ = [
    "CoeffTable",
    "power_sum_poly",
    "apply_direction",
    "coeff_table_polys",
    "coeff_by_operator",
    "coeff_dual",
    "coeff_via_basechange",
    "coeff_values",
    "coeff_table",
    "verify_expansion",
    "eight_level_coeff",
    "expand_powersum_basis",
    "theta_sum_check",
    "scaling_check",
    "first_fundamental_check",
    "second_fundamental_check",
    "explicit_formula_check",
    "power_sum_representation_check",
    "linear_combination_check",
]


@lru_cache(maxsize=None)
def power_sum_poly(n: int, xv: str = "x", yv: str = "y") -> SparsePoly:
    """(x**n + y**n) / (x + y)**parity(n) as an exact polynomial."""
    if n < 0:
        raise ValueError("index must be >= 0")
    x = SparsePoly.variable(xv)
    y = SparsePoly.variable(yv)
    with degree_cap(max(get_degree_cap(), n + 2)):
        num = x**n + y**n
        if parity(n):
            return num.exact_div(x + y)
    return num


def apply_direction(f: SparsePoly, alpha, beta, avar: str = "a", bvar: str = "b") -> SparsePoly:
    """alpha * df/da + beta * df/db; alpha and beta may be scalars or polys."""
    return as_poly(alpha) * f.diff(avar) + as_poly(beta) * f.diff(bvar)


@lru_cache(maxsize=None)
def coeff_table_polys(n: int) -> tuple[SparsePoly, ...]:
    """All coefficients for index n, canonical polynomials in a, b, alpha, beta.

    Row r is (-1)**r / r! applied to the r-th derivative power; integrality of
    every coefficient after the division is asserted, since a non-integer here
    signals a transcription bug rather than a rounding issue.
    """
    m = half(n)
    alpha = SparsePoly.variable("alpha")
    beta = SparsePoly.variable("beta")
    rows = []
    current = psi_symbolic(n)
    for r in range(m + 1):
        if r:
            current = apply_direction(current, alpha, beta)
        scale = Fraction((-1) ** r, factorial(r))
        row = scale * current
        if any(c.denominator != 1 for c in row.terms.values()):
            raise ArithmeticError(f"non-integer coefficient in row r={r}, n={n}")
        rows.append(row)
    return tuple(rows)


def coeff_by_operator(n: int, r: int) -> SparsePoly:
    """Coefficient r via the derivative-operator route."""
    table = coeff_table_polys(n)
    if not 0 <= r < len(table):
        raise ValueError(f"r={r} out of range for n={n}")
    return table[r]


def coeff_dual(n: int, r: int) -> SparsePoly:
    """Coefficient r via the dual operator acting on psi(alpha, beta, n)."""
    m = half(n)
    if not 0 <= r <= m:
        raise ValueError(f"r={r} out of range for n={n}")
    a = SparsePoly.variable("a")
    b = SparsePoly.variable("b")
    current = psi_symbolic(n, "alpha", "beta")
    for _ in range(m - r):
        current = apply_direction(current, a, b, "alpha", "beta")
    row = Fraction((-1) ** r, factorial(m - r)) * current
    if any(c.denominator != 1 for c in row.terms.values()):
        raise ArithmeticError(f"non-integer dual coefficient at r={r}, n={n}")
    return row


def coeff_via_basechange(n: int) -> tuple[SparsePoly, ...]:
    """Coefficient table by substituting the two quadratic forms directly.

    Starting from the binomial expansion of the power sum over the basis
    (xy, (x+y)^2) and using

        (beta*a - alpha*b) * (x+y)^2 = (2a-b)*q1 + (beta-2*alpha)*q2
        (beta*a - alpha*b) * xy      = a*q1 - alpha*q2

    the whole left side becomes a polynomial in formal symbols q1, q2 whose
    (q1, q2)-coefficients must reproduce the derivative route.  No
    differentiation is involved, so this is an independent oracle.
    """
    m = half(n)
    a, alpha, b, beta, s1, s2 = variables("a alpha b beta q1 q2")
    xy_image = a * s1 - alpha * s2
    sq_image = (2 * a - b) * s1 + (beta - 2 * alpha) * s2
    total = SparsePoly.zero()
    with degree_cap(max(get_degree_cap(), 3 * m + 2)):
        for i in range(m + 1):
            w = Fraction(n, n - i) * comb(n - i, i) if n else Fraction(2)
            if w.denominator != 1:
                raise ArithmeticError("non-integral binomial weight")
            total = total + (-1) ** i * int(w) * xy_image**i * sq_image ** (m - i)
    rows = []
    for r in range(m + 1):
        picked: dict[tuple, Fraction] = {}
        for exps, c in total.terms.items():
            dexp = dict(zip(total.vars, exps))
            if dexp.get("q1", 0) == m - r and dexp.get("q2", 0) == r:
                key = tuple(
                    dexp.get(v, 0) for v in ("a", "alpha", "b", "beta")
                )
                picked[key] = c
        rows.append(SparsePoly(("a", "alpha", "b", "beta"), picked))
    return tuple(rows)


def coeff_values(n: int, a, b, alpha, beta) -> list:
    """Evaluate all coefficients at a point without 4-variable expansion.

    alpha and beta must be exact rationals (the derivative direction); a and b
    may come from any exact ring the polynomial can be evaluated over.
    """
    m = half(n)
    current = psi_symbolic(n)
    out = []
    for r in range(m + 1):
        if r:
            current = apply_direction(current, alpha, beta)
        value = current.eval_scalar({"a": a, "b": b})
        scale = Fraction((-1) ** r, factorial(r))
        value = scale * value if scale != 1 else value
        if isinstance(value, Fraction) and value.denominator == 1:
            value = int(value)
        out.append(value)
    return out


@dataclass(frozen=True)
class CoeffTable:
    """Coefficient family for one index, exposed to the CLI."""

    n: int
    entries: tuple[SparsePoly, ...] = field(repr=False)

    @classmethod
    def build(cls, n: int) -> "CoeffTable":
        return cls(n, coeff_table_polys(n))

    def as_strings(self) -> list[str]:
        return [str(e) for e in self.entries]


def coeff_table(n: int) -> CoeffTable:
    return CoeffTable.build(n)


def verify_expansion(n: int, symbolic_limit: int = 16, points: int = 5, seed: int = 0) -> bool:
    """Check the expansion identity for index n.

    Up to ``symbolic_limit`` the check is a full six-variable polynomial
    identity.  Beyond it, term explosion is avoided by deterministic
    evaluation at ``points`` seeded integer points with beta*a - alpha*b != 0;
    that is a randomized check along sampled lines, not a proof.
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    if n <= symbolic_limit:
        x, y, a, b, alpha, beta = variables("x y a b alpha beta")
        q1 = alpha * x**2 + beta * x * y + alpha * y**2
        q2 = a * x**2 + b * x * y + a * y**2
        rows = coeff_table_polys(n)
        with degree_cap(max(get_degree_cap(), 4 * m + n + 4)):
            lhs = (beta * a - alpha * b) ** m * power_sum_poly(n)
            rhs = SparsePoly.zero()
            for r in range(m + 1):
                rhs = rhs + rows[r] * q1 ** (m - r) * q2**r
        return lhs == rhs
    rng = random.Random(seed)
    for _ in range(points):
        while True:
            xv, yv, av, bv, alv, bev = (rng.randint(-99, 99) for _ in range(6))
            if bev * av - alv * bv != 0 and (x_plus_y := xv + yv) != 0:
                break
        values = coeff_values(n, av, bv, alv, bev)
        num = xv**n + yv**n
        if parity(n):
            ps, rem = divmod(num, x_plus_y)
            if rem:
                return False
        else:
            ps = num
        lhs = (bev * av - alv * bv) ** m * ps
        q1v = alv * xv * xv + bev * xv * yv + alv * yv * yv
        q2v = av * xv * xv + bv * xv * yv + av * yv * yv
        rhs = sum(values[r] * q1v ** (m - r) * q2v**r for r in range(m + 1))
        if lhs != rhs:
            return False
    return True


_K0_TABLE = {0: 2, 1: 1, 7: 1, 2: 0, 6: 0, 3: -1, 5: -1, 4: -2}


def eight_level_coeff(n: int, k: int) -> int:
    """Integer coefficient of (xy)**(floor(n/2)-k) * (x^2+y^2)**k in the
    power-sum expansion, by the residue-class closed forms (n mod 8)."""
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    if not 0 <= k <= m:
        raise ValueError(f"k={k} out of range for n={n}")
    r8 = n % 8
    if k == 0:
        return _K0_TABLE[r8]
    j = k // 2
    den = Fraction(1, 4**k * factorial(k))
    if r8 in (0, 4):
        if k % 2:
            return 0
        prod = 1
        for lam in range(j):
            prod *= n * n - (4 * lam) ** 2
        value = 2 * (-1) ** (j + (1 if r8 == 4 else 0)) * prod * den
    elif r8 in (2, 6):
        if k % 2 == 0:
            return 0
        prod = 1
        for lam in range(1, j + 1):
            prod *= n * n - (4 * lam - 2) ** 2
        value = 2 * (-1) ** (j + (1 if r8 == 6 else 0)) * n * prod * den
    elif r8 in (1, 5):
        prod = 1
        for lam in range(1, j + 1):
            prod *= (n + 1) ** 2 - (4 * lam - 2) ** 2
        value = (-1) ** (j + (1 if r8 == 5 else 0)) * (n + 1 - 2 * k) ** parity(k) * prod * den
    else:  # r8 in (3, 7)
        prod = 1
        for lam in range(1, (k - 1) // 2 + 1):
            prod *= (n + 1) ** 2 - (4 * lam) ** 2
        sign = j + (parity(k - 1) if r8 == 3 else parity(k))
        value = (-1) ** sign * (n + 1) * (n + 1 - 2 * k) ** parity(k - 1) * prod * den
    if value.denominator != 1:
        raise ArithmeticError(f"closed form not integral at n={n}, k={k}: {value}")
    return int(value)


def expand_powersum_basis(n: int) -> list[int]:
    """Coefficients of the power sum over the basis (xy, x^2+y^2).

    Computed by exact symbolic expansion and triangular elimination: the
    basis element for k has leading monomial x**(m+k) * y**(m-k) with unit
    coefficient, so peeling from k = m downward is exact and must leave a
    zero remainder.
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    x, y = variables("x y")
    with degree_cap(max(get_degree_cap(), n + 2)):
        rem = power_sum_poly(n)
        s1 = x * y
        s2 = x * x + y * y
        coeffs = [0] * (m + 1)
        for k in range(m, -1, -1):
            c = rem.coefficient({"x": m + k, "y": m - k})
            if c.denominator != 1:
                raise ArithmeticError("non-integer basis coefficient")
            coeffs[k] = int(c)
            if c:
                rem = rem - c * s1 ** (m - k) * s2**k
    if not rem.is_zero:
        raise ArithmeticError(f"basis expansion left a remainder for n={n}")
    return coeffs


def theta_sum_check(n: int) -> bool:
    """Generating-function identities of the coefficient family.

    Checks, fully symbolically:
      * sum_r coeff_r * theta**r            == psi(a - alpha*theta, b - beta*theta, n)
      * the theta = +/-1 specialisations
      * the homogenised two-parameter form in (xi, eta)
      * the binomial-weighted derivative shifts of both, for every k.
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    rows = coeff_table_polys(n)
    theta, xi, eta = variables("theta xi eta")
    alpha = SparsePoly.variable("alpha")
    beta = SparsePoly.variable("beta")
    a = SparsePoly.variable("a")
    b = SparsePoly.variable("b")
    psi_ab = psi_symbolic(n)
    with degree_cap(max(get_degree_cap(), 4 * m + 4)):
        shift = {"a": a - alpha * theta, "b": b - beta * theta}
        lhs = SparsePoly.zero()
        for r in range(m + 1):
            lhs = lhs + rows[r] * theta**r
        if lhs != psi_ab.subst(shift):
            return False

        if sum(rows, SparsePoly.zero()) != psi_ab.subst({"a": a - alpha, "b": b - beta}):
            return False
        alternating = SparsePoly.zero()
        for r in range(m + 1):
            alternating = alternating + (-1) ** r * rows[r]
        if alternating != psi_ab.subst({"a": a + alpha, "b": b + beta}):
            return False

        homog = {"a": a * xi - alpha * eta, "b": b * xi - beta * eta}
        lhs = SparsePoly.zero()
        for r in range(m + 1):
            lhs = lhs + rows[r] * xi ** (m - r) * eta**r
        if lhs != psi_ab.subst(homog):
            return False

        for k in range(m + 1):
            lhs_k = SparsePoly.zero()
            lhs_h = SparsePoly.zero()
            for r in range(k, m + 1):
                w = comb(r, k)
                lhs_k = lhs_k + w * rows[r] * theta ** (r - k)
                lhs_h = lhs_h + w * rows[r] * xi ** (m - r) * eta ** (r - k)
            if lhs_k != rows[k].subst(shift):
                return False
            if lhs_h != rows[k].subst(homog):
                return False
    return True


def scaling_check(n: int) -> bool:
    """Homogeneity and duality of the coefficient family, with a fresh scale
    variable: degree r in (alpha, beta), degree m - r in (a, b), the role-swap
    duality with sign (-1)**m, and m-homogeneity of the base polynomial."""
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    rows = coeff_table_polys(n)
    lam = SparsePoly.variable("lam")
    a, b, alpha, beta = variables("a b alpha beta")
    with degree_cap(max(get_degree_cap(), 3 * m + 4)):
        for r in range(m + 1):
            row = rows[r]
            if row.subst({"alpha": lam * alpha, "beta": lam * beta}) != lam**r * row:
                return False
            if row.subst({"a": lam * a, "b": lam * b}) != lam ** (m - r) * row:
                return False
            swapped = rows[m - r].subst(
                {"a": alpha, "b": beta, "alpha": a, "beta": b}
            )
            if row != (-1) ** m * swapped:
                return False
        psi_ab = psi_symbolic(n)
        if psi_ab.subst({"a": lam * a, "b": lam * b}) != lam**m * psi_ab:
            return False
    return True


def first_fundamental_check(n: int) -> bool:
    """Both derivative ladders between neighbouring coefficients:

        (alpha*d/da + beta*d/db) coeff_r = -(r+1) * coeff_{r+1}
        (a*d/dalpha + b*d/dbeta) coeff_r = -(m-r+1) * coeff_{r-1}
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    rows = coeff_table_polys(n)
    alpha = SparsePoly.variable("alpha")
    beta = SparsePoly.variable("beta")
    a = SparsePoly.variable("a")
    b = SparsePoly.variable("b")
    for r in range(m + 1):
        up = apply_direction(rows[r], alpha, beta)
        expected_up = SparsePoly.zero() if r == m else -(r + 1) * rows[r + 1]
        if up != expected_up:
            return False
        down = apply_direction(rows[r], a, b, "alpha", "beta")
        expected_down = SparsePoly.zero() if r == 0 else -(m - r + 1) * rows[r - 1]
        if down != expected_down:
            return False
    return True


def second_fundamental_check(n: int) -> bool:
    """The m-th derivative power collapses psi(a,b,n) onto psi(alpha,beta,n);
    additionally the (xy, -(x^2+y^2)) instance must reconstruct the power sum
    through the independent basis expansion."""
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    alpha = SparsePoly.variable("alpha")
    beta = SparsePoly.variable("beta")
    current = psi_symbolic(n)
    for _ in range(m):
        current = apply_direction(current, alpha, beta)
    collapsed = Fraction(1, factorial(m)) * current
    target = psi_symbolic(n, "alpha", "beta")
    if collapsed != target:
        return False
    x, y = variables("x y")
    with degree_cap(max(get_degree_cap(), n + 4)):
        instance = target.subst({"alpha": x * y, "beta": -(x * x + y * y)})
        coeffs = expand_powersum_basis(n)
        rebuilt = SparsePoly.zero()
        s1 = x * y
        s2 = x * x + y * y
        for k, c in enumerate(coeffs):
            rebuilt = rebuilt + c * s1 ** (m - k) * s2**k
    return instance == rebuilt and instance == power_sum_poly(n)


def power_sum_representation_check(n: int) -> bool:
    """psi(xy, -(x^2+y^2), n) == (x**n + y**n) / (x+y)**parity(n)."""
    x, y = variables("x y")
    with degree_cap(max(get_degree_cap(), n + 4)):
        image = psi_symbolic(n).subst({"a": x * y, "b": -(x * x + y * y)})
    return image == power_sum_poly(n)


def explicit_formula_check(n: int) -> bool:
    """Closed forms of the family at two classical specialisations.

    At (a, b, alpha, beta) = (0, 1, 1, 2) the value is
    (-1)**(m-r) * n/(n-r) * C(n-r, r); at (1, -2, 1, 2) it is
    2**parity(n-1) * C(n, 2r), the coefficient read off the expansion of
    4**m times the power sum over ((x+y)^2, (x-y)^2).
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    m = half(n)
    first = coeff_values(n, 0, 1, 1, 2)
    for r in range(m + 1):
        w = Fraction(n, n - r) * comb(n - r, r)
        if w.denominator != 1:
            return False
        if first[r] != (-1) ** (m - r) * int(w):
            return False
    second = coeff_values(n, 1, -2, 1, 2)
    scale = 2 ** parity(n - 1)
    for r in range(m + 1):
        if second[r] != scale * comb(n, 2 * r):
            return False
    if n <= 12:
        x, y = variables("x y")
        with degree_cap(max(get_degree_cap(), 2 * n + 4)):
            plus = (x + y) ** 2
            minus = (x - y) ** 2
            rhs = SparsePoly.zero()
            for r in range(m + 1):
                rhs = rhs + scale * comb(n, 2 * r) * plus ** (m - r) * minus**r
            if 4**m * power_sum_poly(n) != rhs:
                return False
    return True


def linear_combination_check(n: int, seed: int = 0, count: int = 3) -> bool:
    """A weighted sum of m-th direction-derivative powers applied to the base
    polynomial equals m! times the same weighted sum of endpoint values."""
    if n < 1:
        raise ValueError("index must be >= 1")
    rng = random.Random(seed)
    m = half(n)
    base = psi_symbolic(n)
    total = SparsePoly.zero()
    expected = 0
    for _ in range(count):
        while True:
            al, be = rng.randint(-9, 9), rng.randint(-9, 9)
            if (al, be) != (0, 0):
                break
        mu = rng.randint(-9, 9)
        current = base
        for _ in range(m):
            current = apply_direction(current, al, be)
        total = total + mu * current
        expected += mu * psi_recurrence(al, be, n)
    return total == factorial(m) * expected
