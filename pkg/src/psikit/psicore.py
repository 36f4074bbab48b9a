"""The two-parameter sequence psi(a, b, n) in four computation modes.

psi(0) = 2, psi(1) = 1 and

    psi(n + 1) = (2a - b)**parity(n) * psi(n) - a * psi(n - 1).

Modes: direct recurrence (any exact ring), explicit binomial formula,
symbolic polynomial in (a, b), and an O(log n) modular doubling ladder for
astronomically large indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Union

from .errors import CapacityError
from .exactmath import QuadExt
from .multipoly import SparsePoly, degree_cap, get_degree_cap

RingElement = Union[int, Fraction, QuadExt, SparsePoly]

__all__ = [
    "parity",
    "half",
    "PsiParams",
    "PsiLadderState",
    "psi_recurrence",
    "psi_sequence",
    "psi_recurrence_mod",
    "psi_explicit",
    "psi_symbolic",
    "psi_extended",
    "psi_mod_ladder",
    "ladder_start",
    "ladder_step",
    "psi_product_identity_check",
    "SYMBOLIC_INDEX_CAP",
]

SYMBOLIC_INDEX_CAP = 256


def parity(n: int) -> int:
    """n mod 2 (the exponent side of the alternating recurrence)."""
    return n % 2


def half(n: int) -> int:
    """floor(n / 2)."""
    return n // 2


@dataclass(frozen=True)
class PsiParams:
    """Validated (a, b) pair with its ring tag, used by the CLI front end."""

    a: RingElement
    b: RingElement
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None:
            if self.modulus < 2:
                raise ValueError("modulus must be >= 2")
            if not isinstance(self.a, int) or not isinstance(self.b, int):
                raise ValueError("modular evaluation needs integer parameters")
        if isinstance(self.a, QuadExt) and isinstance(self.b, QuadExt):
            if not (self.a.is_rational or self.b.is_rational or self.a.d == self.b.d):
                raise ValueError("parameters live in different quadratic rings")

    @property
    def ring(self) -> str:
        if self.modulus is not None:
            return f"modular({self.modulus})"
        if isinstance(self.a, QuadExt) or isinstance(self.b, QuadExt):
            d = self.a.d if isinstance(self.a, QuadExt) else self.b.d
            return f"quadratic({d})"
        if isinstance(self.a, Fraction) or isinstance(self.b, Fraction):
            return "rational"
        return "integer"


def psi_recurrence(a, b, n: int):
    """psi(a, b, n) by the defining recurrence, O(n) ring operations."""
    if n < 0:
        raise ValueError("index must be >= 0; see psi_extended for signed indices")
    if n == 0:
        return 2
    coeff = 2 * a - b
    lo, hi = 2, 1
    for k in range(1, n):
        if k % 2:
            lo, hi = hi, coeff * hi - a * lo
        else:
            lo, hi = hi, hi - a * lo
    return hi


def psi_sequence(a, b, n_max: int) -> list:
    """[psi(0), ..., psi(n_max)] in one pass."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    values = [2, 1]
    coeff = 2 * a - b
    for k in range(1, n_max):
        step = coeff * values[k] if k % 2 else values[k]
        values.append(step - a * values[k - 1])
    return values[: n_max + 1]


def psi_recurrence_mod(a: int, b: int, n: int, m: int) -> int:
    """psi(a, b, n) mod m by the plain recurrence (reference for the ladder)."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if n < 0:
        raise ValueError("index must be >= 0")
    a %= m
    b %= m
    if n == 0:
        return 2 % m
    coeff = (2 * a - b) % m
    lo, hi = 2 % m, 1 % m
    for k in range(1, n):
        if k % 2:
            lo, hi = hi, (coeff * hi - a * lo) % m
        else:
            lo, hi = hi, (hi - a * lo) % m
    return hi


def psi_explicit(a, b, n: int):
    """psi(a, b, n) by the explicit binomial sum, n >= 1.

    The weight n/(n-i) * C(n-i, i) is an exact integer for every
    0 <= i <= floor(n/2) (at i = n/2 it equals 2); each summand is checked
    for integrality before use.  Index 0 is excluded because the weight is
    undefined there; psi(0) = 2 comes from the recurrence seed.
    """
    if n < 1:
        raise ValueError("explicit formula needs n >= 1 (psi(0) = 2 by definition)")
    m = half(n)
    d = 2 * a - b
    total = 0
    for i in range(m + 1):
        w = Fraction(n, n - i) * comb(n - i, i)
        if w.denominator != 1:
            raise ArithmeticError(f"non-integral weight at i={i}, n={n}")
        total = total + int(w) * (-a) ** i * d ** (m - i)
    return total


@lru_cache(maxsize=None)
def psi_symbolic(n: int, avar: str = "a", bvar: str = "b", cap: int = SYMBOLIC_INDEX_CAP) -> SparsePoly:
    """psi(a, b, n) as a canonical polynomial in two named variables."""
    if n < 0:
        raise ValueError("index must be >= 0")
    if n > cap:
        raise CapacityError(f"symbolic index {n} exceeds cap {cap}")
    a = SparsePoly.variable(avar)
    b = SparsePoly.variable(bvar)
    with degree_cap(max(get_degree_cap(), half(n) + 2)):
        value = psi_recurrence(a, b, n)
    if isinstance(value, int):
        return SparsePoly.constant(value)
    return value


def psi_extended(a, b, n: int):
    """psi at any signed index via psi(a, b, -n) := psi(a, b, n)."""
    return psi_recurrence(a, b, abs(n))


@dataclass(frozen=True)
class PsiLadderState:
    """(psi(k), psi(k+1), a**k) mod m together with the parity of k."""

    lo: int
    hi: int
    apow: int
    parity: int


def ladder_start(m: int) -> PsiLadderState:
    return PsiLadderState(2 % m, 1 % m, 1 % m, 0)


def ladder_step(state: PsiLadderState, bit: int, a: int, b: int, m: int) -> PsiLadderState:
    """Advance the ladder from index k to 2k (bit 0) or 2k + 1 (bit 1).

    Index-doubling rules, with d = 2a - b:

        psi(2k)     = d**parity(k) * psi(k)**2 - 2 * a**k
        psi(2k + 1) = psi(k) * psi(k+1) - a**k
        psi(2k + 2) = d * psi(2k + 1) - a * psi(2k)
    """
    d = (2 * a - b) % m
    lo, hi, apow = state.lo, state.hi, state.apow
    sq = lo * lo
    if state.parity:
        sq = sq * d
    dbl_lo = (sq - 2 * apow) % m
    dbl_hi = (lo * hi - apow) % m
    apow2 = apow * apow % m
    if bit:
        return PsiLadderState(dbl_hi, (d * dbl_hi - a * dbl_lo) % m, apow2 * a % m, 1)
    return PsiLadderState(dbl_lo, dbl_hi, apow2, 0)


def psi_mod_ladder(a: int, b: int, n: int, m: int) -> int:
    """psi(a, b, n) mod m in O(log n) ring operations."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if n < 0:
        raise ValueError("index must be >= 0")
    a %= m
    b %= m
    if n == 0:
        return 2 % m
    state = ladder_start(m)
    for i in range(n.bit_length() - 1, -1, -1):
        state = ladder_step(state, (n >> i) & 1, a, b, m)
    return state.lo


def psi_product_identity_check(a, b, n: int, m: int) -> bool:
    """Check (2a-b)**(parity(n)*parity(m)) * psi(n) * psi(m)
    == psi(n+m) + a**min(n,m) * psi(n-m), using the signed-index extension."""
    if n < 0 or m < 0:
        raise ValueError("indices must be >= 0")
    seq = psi_sequence(a, b, n + m)
    d = 2 * a - b
    lhs = d ** (parity(n) * parity(m)) * seq[n] * seq[m]
    rhs = seq[n + m] + a ** min(n, m) * seq[abs(n - m)]
    return lhs == rhs
