"""Verified specialisations of psi(a, b, n) to classical sequences, plus
period detection for the catalogued parameter pairs over quadratic rings.

Every bridge pairs a psi-side value with an independently computed oracle
(Lucas/Fibonacci/Pell-Lucas/Chebyshev/Dickson recurrences, explicit power
formulas) and an index predicate; several identities hold only on power-of-two
indices and are registered with that restriction rather than asserted
globally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .eightlevels import coeff_values
from .exactmath import GOLDEN_RATIO, QuadExt, SQRT2, SQRT3, SQRT5
from .multipoly import SparsePoly, variables
from .psicore import half, parity, psi_recurrence, psi_sequence

__all__ = [
    "BridgeSpec",
    "PeriodResult",
    "lucas",
    "fibonacci",
    "pell_lucas",
    "pell_lucas_poly",
    "chebyshev_t",
    "dickson_d",
    "default_bridges",
    "bridge_check",
    "detect_period",
    "PERIOD_CATALOGUE",
    "catalogue_entry",
]


# -- independent oracle recurrences -----------------------------------------


@lru_cache(maxsize=None)
def lucas(n: int) -> int:
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def pell_lucas(n: int) -> int:
    a, b = 2, 2
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


def _poly_recurrence(n: int, first, second, step):
    a, b = first, second
    for _ in range(n):
        a, b = b, step(a, b)
    return a


@lru_cache(maxsize=None)
def pell_lucas_poly(n: int) -> SparsePoly:
    (x,) = variables("x")
    return _poly_recurrence(
        n, SparsePoly.constant(2), 2 * x, lambda a, b: 2 * x * b + a
    )


@lru_cache(maxsize=None)
def chebyshev_t(n: int) -> SparsePoly:
    (x,) = variables("x")
    return _poly_recurrence(n, SparsePoly.constant(1), x, lambda a, b: 2 * x * b - a)


@lru_cache(maxsize=None)
def dickson_d(n: int) -> SparsePoly:
    x, al = variables("x alpha")
    return _poly_recurrence(n, SparsePoly.constant(2), x, lambda a, b: x * b - al * a)


# -- bridge registry ----------------------------------------------------------


@dataclass
class BridgeSpec:
    """One registered identity: value(n) must equal oracle(n) on its index set."""

    name: str
    description: str
    value: Callable[[int], object]
    oracle: Callable[[int], object]
    indices: Callable[[int], Iterable[int]]

    def check(self, n_max: int) -> list[int]:
        """Indices up to n_max where the identity fails (empty == pass)."""
        return [n for n in self.indices(n_max) if self.value(n) != self.oracle(n)]

    def describe(self) -> dict:
        return {"name": self.name, "description": self.description}


def _all_indices(n_max: int):
    return range(n_max + 1)


def _indices_from(start: int):
    return lambda n_max: range(start, n_max + 1)


def _psi_value(a, b, transform=None):
    if transform is None:
        return lambda n: psi_recurrence(a, b, n)
    return lambda n: transform(psi_recurrence(a, b, n), n)


def _sqrt5_table(sign: int) -> Callable[[int], QuadExt]:
    def oracle(n: int) -> QuadExt:
        r = n % 4
        if r == 0:
            return QuadExt(5, lucas(n // 2), 0)
        if r == 1:
            return QuadExt(5, lucas((n + 1) // 2), sign * fibonacci((n - 1) // 2))
        if r == 2:
            return QuadExt(5, 0, -sign * fibonacci(n // 2))
        return QuadExt(5, -lucas((n - 1) // 2), -sign * fibonacci((n + 1) // 2))

    return oracle


_POW2_SET = (16, 32, 64)


def default_bridges() -> list[BridgeSpec]:
    """The registry behind ``bridges check`` / ``bridges list``."""
    x, al = variables("x alpha")
    specs = [
        BridgeSpec(
            "lucas",
            "psi(-1, -3, n) equals the Lucas number L(n)",
            _psi_value(-1, -3),
            lucas,
            _all_indices,
        ),
        BridgeSpec(
            "fibonacci-lucas-parity",
            "psi(1, -3, n) equals F(n) for odd n and L(n) for even n",
            _psi_value(1, -3),
            lambda n: fibonacci(n) if n % 2 else lucas(n),
            _all_indices,
        ),
        BridgeSpec(
            "two-power-plus-sign",
            "psi(-2, -5, n) equals 2**n + (-1)**n",
            _psi_value(-2, -5),
            lambda n: 2**n + (-1) ** n,
            _all_indices,
        ),
        BridgeSpec(
            "two-power-thirds",
            "psi(2, -5, n) equals (2**n + 1) / 3**parity(n)",
            _psi_value(2, -5),
            lambda n: Fraction(2**n + 1, 3 ** parity(n)),
            _all_indices,
        ),
        BridgeSpec(
            "mersenne-odd-exponent",
            "psi(-2, -5, p) equals 2**p - 1 for odd p",
            _psi_value(-2, -5),
            lambda n: 2**n - 1,
            lambda n_max: range(1, n_max + 1, 2),
        ),
        BridgeSpec(
            "fermat-power-of-two",
            "psi(-2, -5, n) and psi(2, -5, n) both equal 2**n + 1 at n = 2**l",
            lambda n: (psi_recurrence(-2, -5, n), psi_recurrence(2, -5, n)),
            lambda n: (2**n + 1, 2**n + 1),
            lambda n_max: [k for k in (2, 4, 8, 16, 32) if k <= n_max],
        ),
        BridgeSpec(
            "pell-lucas-numbers",
            "2**parity(n) * psi(-1, -6, n) equals the Pell-Lucas number Q(n)",
            _psi_value(-1, -6, lambda v, n: 2 ** parity(n) * v),
            pell_lucas,
            _all_indices,
        ),
        BridgeSpec(
            "pell-lucas-polynomials",
            "(2x)**parity(n) * psi(-1, -2-4x^2, n) equals the Pell-Lucas polynomial",
            _psi_value(-1, -2 - 4 * x**2, lambda v, n: (2 * x) ** parity(n) * v),
            pell_lucas_poly,
            _all_indices,
        ),
        BridgeSpec(
            "dickson-first-kind",
            "x**parity(n) * psi(alpha, 2*alpha - x^2, n) equals the Dickson polynomial",
            _psi_value(al, 2 * al - x**2, lambda v, n: x ** parity(n) * v),
            dickson_d,
            _all_indices,
        ),
        BridgeSpec(
            "chebyshev-first-kind",
            "x**parity(n)/2**parity(n+1) * psi(1, 2-4x^2, n) equals the Chebyshev polynomial",
            _psi_value(
                1,
                2 - 4 * x**2,
                lambda v, n: Fraction(1, 2 ** parity(n + 1)) * (x ** parity(n) * v),
            ),
            chebyshev_t,
            _all_indices,
        ),
        BridgeSpec(
            "sqrt5-lucas-fibonacci",
            "psi(1, sqrt5, n) follows the four-case Lucas/Fibonacci table",
            _psi_value(1, SQRT5),
            _sqrt5_table(+1),
            _all_indices,
        ),
        BridgeSpec(
            "sqrt5-conjugate",
            "psi(1, -sqrt5, n) follows the mirrored table",
            _psi_value(1, -SQRT5),
            _sqrt5_table(-1),
            _all_indices,
        ),
        BridgeSpec(
            "alternating-closed-form",
            "psi(1, 2, n) equals (-1)**floor(n/2) * 2**parity(n-1) * n**parity(n)",
            _psi_value(1, 2),
            lambda n: (-1) ** half(n) * 2 ** parity(n - 1) * n ** parity(n),
            _all_indices,
        ),
        BridgeSpec(
            "lucas-signed",
            "psi(1, 3, n) equals (-1)**floor(n/2) * L(n) (numerical lemma that "
            "subsumes the power-of-two cases)",
            _psi_value(1, 3),
            lambda n: (-1) ** half(n) * lucas(n),
            _all_indices,
        ),
        BridgeSpec(
            "fermat-signed",
            "psi(2, 5, n) equals (-1)**floor(n/2) * (2**n + (-1)**n) (numerical "
            "lemma that subsumes the power-of-two cases)",
            _psi_value(2, 5),
            lambda n: (-1) ** half(n) * (2**n + (-1) ** n),
            _all_indices,
        ),
        BridgeSpec(
            "pow2-direction-values",
            "at n = 2**l, l > 3: psi(1,0,n)=2, psi(0,1,n)=1, psi(1,1,n)=-1, "
            "psi(1,2,n)=2, psi(1,sqrt2,n)=2, psi(1,3,n)=L(n), psi(2,5,n)=2**n+1",
            lambda n: (
                psi_recurrence(1, 0, n),
                psi_recurrence(0, 1, n),
                psi_recurrence(1, 1, n),
                psi_recurrence(1, 2, n),
                psi_recurrence(1, SQRT2, n),
                psi_recurrence(1, 3, n),
                psi_recurrence(2, 5, n),
            ),
            lambda n: (2, 1, -1, 2, QuadExt(2, 2, 0), lucas(n), 2**n + 1),
            lambda n_max: [k for k in _POW2_SET if k <= n_max],
        ),
        BridgeSpec(
            "golden-ratio-even-power",
            "psi(1, phi - 1, n) equals -phi at n = 2**l with l even, l > 3",
            _psi_value(1, GOLDEN_RATIO - 1),
            lambda n: -GOLDEN_RATIO,
            lambda n_max: [k for k in (16, 64) if k <= n_max],
        ),
        BridgeSpec(
            "fibonacci-derivative",
            "the r = 1 expansion coefficient at (-1, -3 | 1, 2) equals n * F(n-1)",
            lambda n: coeff_values(n, -1, -3, 1, 2)[1] if half(n) >= 1 else None,
            lambda n: n * fibonacci(n - 1) if half(n) >= 1 else None,
            _indices_from(2),
        ),
        BridgeSpec(
            "lucas-direction",
            "the r = 0 expansion coefficient at (-1, -3 | 1, 2) equals L(n)",
            lambda n: coeff_values(n, -1, -3, 1, 2)[0],
            lucas,
            _indices_from(0),
        ),
    ]
    return specs


def bridge_check(spec: BridgeSpec, n_max: int) -> bool:
    return not spec.check(n_max)


# -- periodicity --------------------------------------------------------------


@dataclass
class PeriodResult:
    a: object
    b: object
    period: int
    table: list = field(default_factory=list)


def detect_period(a, b, cap: int = 10_000) -> PeriodResult:
    """Minimal period of the state (psi(n), psi(n+1), n mod 2) from n = 0.

    The parity component matters because the recurrence coefficient
    alternates: the value pair alone can recur at a half period with the
    wrong parity.  Raises if no recurrence is found within ``cap`` steps.
    """
    seq = psi_sequence(a, b, 2)
    coeff = 2 * a - b
    values = list(seq)
    start = (values[0], values[1])
    for n in range(2, cap + 2, 2):
        while len(values) < n + 2:
            k = len(values) - 1
            step = coeff * values[k] if k % 2 else values[k]
            values.append(step - a * values[k - 1])
        if (values[n], values[n + 1]) == start:
            return PeriodResult(a, b, n, values[:n])
    raise ValueError(f"no period found within cap {cap}")


def _q(u, v=0) -> QuadExt:
    return QuadExt(2, u, v)


PHI = GOLDEN_RATIO

PERIOD_CATALOGUE: dict[str, dict] = {
    "b-one": {
        "a": 1,
        "b": 1,
        "period": 6,
        "table": [2, 1, -1, -2, -1, 1],
    },
    "b-zero": {
        "a": 1,
        "b": 0,
        "period": 8,
        "table": [2, 1, 0, -1, -2, -1, 0, 1],
    },
    "b-minus-one": {
        "a": 1,
        "b": -1,
        "period": 12,
        "table": [2, 1, 1, 0, -1, -1, -2, -1, -1, 0, 1, 1],
    },
    "b-sqrt2": {
        "a": 1,
        "b": SQRT2,
        "period": 16,
        "table": [
            2,
            1,
            -SQRT2,
            -1 - SQRT2,
            0,
            1 + SQRT2,
            SQRT2,
            -1,
            -2,
            -1,
            SQRT2,
            1 + SQRT2,
            0,
            -1 - SQRT2,
            -SQRT2,
            1,
        ],
    },
    "b-sqrt3": {
        "a": 1,
        "b": SQRT3,
        "period": 24,
        "table": [
            2,
            1,
            -SQRT3,
            -1 - SQRT3,
            1,
            2 + SQRT3,
            0,
            -2 - SQRT3,
            -1,
            1 + SQRT3,
            SQRT3,
            -1,
            -2,
            -1,
            SQRT3,
            1 + SQRT3,
            -1,
            -2 - SQRT3,
            0,
            2 + SQRT3,
            1,
            -1 - SQRT3,
            -SQRT3,
            1,
        ],
    },
    "b-golden": {
        "a": 1,
        "b": PHI - 1,
        "period": 20,
        "table": [
            2,
            1,
            1 - PHI,
            -PHI,
            -PHI,
            0,
            PHI,
            PHI,
            PHI - 1,
            -1,
            -2,
            -1,
            PHI - 1,
            PHI,
            PHI,
            0,
            -PHI,
            -PHI,
            1 - PHI,
            1,
        ],
    },
}


def catalogue_entry(label: str) -> dict:
    if label not in PERIOD_CATALOGUE:
        raise ValueError(f"unknown catalogue label {label!r}")
    return PERIOD_CATALOGUE[label]
