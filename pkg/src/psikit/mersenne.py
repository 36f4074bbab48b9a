"""Primality and compositeness battery for numbers 2**p - 1.

Every method reports through :class:`TestReport`; residues and ratios are
kept as exact integers and serialised as decimal strings.  Throughout,
n = 2**(p-1) and M = 2n - 1 = 2**p - 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt

from .errors import CapacityError
from .exactmath import NotInvertibleError, mod_inverse
from .psicore import psi_mod_ladder, psi_symbolic

__all__ = [
    "TestReport",
    "MersenneCandidate",
    "is_prime_small",
    "ll_classic",
    "ll_chain",
    "psi_chain",
    "psi_test",
    "mu_pattern_test",
    "mu_expected_residue",
    "enhanced_sum_test",
    "signed_factorial_product_sum",
    "psi14_exact",
    "necessary_condition",
    "composite_criterion",
    "ab_ratio_test",
    "ab_ratios",
    "tau_identity_check",
    "tau_identity_value",
    "tau_polynomial_identity",
    "run_method",
    "METHODS",
    "ENHANCED_SUM_MAX_P",
    "AB_RATIO_MAX_P",
    "NECESSARY_MAX_P",
]

ENHANCED_SUM_MAX_P = 13
AB_RATIO_MAX_P = 13
NECESSARY_MAX_P = 23


def is_prime_small(n: int) -> bool:
    """Deterministic trial-division check, adequate for desk-scale exponents."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


@dataclass
class TestReport:
    """Structured verdict of one check, serialisable deterministically."""

    method: str
    p: int
    verdict: str
    residues: list[int] = field(default_factory=list)
    ratios: tuple[int, int] | None = None
    elapsed_ms: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_dict(self, with_timing: bool = False) -> dict:
        return {
            "method": self.method,
            "p": self.p,
            "verdict": self.verdict,
            "residues": [str(r) for r in self.residues],
            "ratios": [str(r) for r in self.ratios] if self.ratios else None,
            "elapsed_ms": round(self.elapsed_ms, 3) if with_timing else 0,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class MersenneCandidate:
    """Exponent p with n = 2**(p-1) and M = 2**p - 1; p must be prime."""

    p: int

    def __post_init__(self):
        if not is_prime_small(self.p):
            raise ValueError(f"exponent {self.p} is not prime")

    @property
    def n(self) -> int:
        return 1 << (self.p - 1)

    @property
    def modulus(self) -> int:
        return (1 << self.p) - 1


def _candidate(p: int, min_p: int) -> MersenneCandidate:
    cand = MersenneCandidate(p)
    if p < min_p:
        raise ValueError(f"method requires prime p >= {min_p}, got {p}")
    return cand


def ll_chain(p: int) -> list[int]:
    """Iterates s0 = 4, s -> s**2 - 2 (mod 2**p - 1), p - 1 entries."""
    m = (1 << p) - 1
    chain = [4 % m]
    for _ in range(p - 2):
        chain.append((chain[-1] * chain[-1] - 2) % m)
    return chain


def psi_chain(p: int) -> list[int]:
    """psi(1, 4, 2**k) mod 2**p - 1 for k = 1 .. p - 1.

    Starts at psi(1, 4, 2) = -4 and squares down; identical to the classical
    chain from the first squaring onward since (-4)**2 == 4**2.
    """
    m = (1 << p) - 1
    chain = [-4 % m]
    for _ in range(p - 2):
        chain.append((chain[-1] * chain[-1] - 2) % m)
    return chain


def ll_classic(p: int) -> TestReport:
    """Classical s -> s**2 - 2 test: prime iff the (p-2)-th iterate is 0."""
    started = time.perf_counter()
    cand = _candidate(p, 3)
    residue = ll_chain(p)[-1] if p > 2 else 0
    verdict = "prime" if residue == 0 else "composite"
    return TestReport(
        method="ll",
        p=p,
        verdict=verdict,
        residues=[residue],
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )


def psi_test(p: int) -> TestReport:
    """Prime iff 2**p - 1 divides psi(1, 4, 2**(p-1)); evaluated by ladder."""
    started = time.perf_counter()
    cand = _candidate(p, 5)
    residue = psi_mod_ladder(1, 4, cand.n, cand.modulus)
    verdict = "prime" if residue == 0 else "composite"
    return TestReport(
        method="psi",
        p=p,
        verdict=verdict,
        residues=[residue],
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )


def mu_expected_residue(mu: int, modulus: int) -> int:
    """Residue the prime case forces on psi(1, 4, n*mu): +2, 0, -2 by mu mod 4."""
    r = mu % 4
    if r == 0:
        return 2 % modulus
    if r == 2:
        return -2 % modulus
    return 0


def mu_pattern_test(p: int, mu_max: int = 8) -> TestReport:
    """Residues of psi(1, 4, n*mu) mod M for mu = 1..mu_max.

    For prime M the +2/0/-2 pattern must hold for every mu; any mismatch is a
    compositeness certificate.
    """
    started = time.perf_counter()
    cand = _candidate(p, 5)
    if mu_max < 1:
        raise ValueError("mu_max must be >= 1")
    m = cand.modulus
    residues = [psi_mod_ladder(1, 4, cand.n * mu, m) for mu in range(1, mu_max + 1)]
    mismatches = [
        mu
        for mu, res in enumerate(residues, start=1)
        if res != mu_expected_residue(mu, m)
    ]
    verdict = "condition-holds" if not mismatches else "condition-fails"
    notes = []
    if mismatches:
        notes.append(f"pattern broken at mu={mismatches} (compositeness witness)")
    return TestReport(
        method="mu",
        p=p,
        verdict=verdict,
        residues=residues,
        elapsed_ms=(time.perf_counter() - started) * 1000,
        notes=notes,
    )


def signed_factorial_product_sum(big_n: int) -> int:
    """sum_j prod_{l<j} ((4l)**2 - N**2) / (2j)! for j = 0..N/4, exactly.

    Every term is an integer (the running value is asserted to divide
    exactly at each step) and twice the total equals psi(1, 4, N).
    """
    if big_n % 8:
        raise ValueError("index must be divisible by 8")
    total = 0
    term = 1
    nsq = big_n * big_n
    for j in range(big_n // 4 + 1):
        if j:
            term *= 16 * (j - 1) * (j - 1) - nsq
            term, rem = divmod(term, (2 * j) * (2 * j - 1))
            if rem:
                raise ArithmeticError(f"non-integer term at j={j}")
        total += term
    return total


def psi14_exact(n: int, mu: int) -> int:
    """Exact psi(1, 4, n*mu) for n a power of two: squaring chain to
    psi(1, 4, n), then the index-addition recurrence across multiples."""
    if n < 2 or n & (n - 1):
        raise ValueError("n must be a power of two >= 2")
    if mu < 0:
        raise ValueError("mu must be >= 0")
    if mu == 0:
        return 2
    base = -4  # psi(1, 4, 2)
    k = 2
    while k < n:
        base = base * base - 2
        k *= 2
    prev, cur = 2, base  # psi(1,4,0), psi(1,4,n)
    for _ in range(mu - 1):
        prev, cur = cur, base * cur - prev
    return cur


def enhanced_sum_test(p: int, mu: int = 1, max_p: int = ENHANCED_SUM_MAX_P) -> TestReport:
    """Exact-arithmetic variant: the signed factorial-product sum over index
    n*mu reduces mod M to +1/0/-1 by mu mod 4, and twice the sum equals
    psi(1, 4, n*mu) exactly."""
    started = time.perf_counter()
    cand = _candidate(p, 5)
    if mu < 0:
        raise ValueError("mu must be >= 0")
    if p > max_p:
        raise CapacityError(
            f"enhanced sum at p={p} needs {(cand.n * max(mu, 1)) // 4 + 1} exact "
            f"big-integer terms; cap is p <= {max_p}"
        )
    m = cand.modulus
    total = 1 if mu == 0 else signed_factorial_product_sum(cand.n * mu)
    residue = total % m
    expected = 1 if mu % 4 == 0 else (m - 1 if mu % 4 == 2 else 0)
    notes = []
    if 2 * total != psi14_exact(cand.n, mu):
        notes.append("doubled sum failed to match the sequence value exactly")
        verdict = "condition-fails"
    else:
        verdict = "condition-holds" if residue == expected else "condition-fails"
    return TestReport(
        method="sum",
        p=p,
        verdict=verdict,
        residues=[residue, expected],
        elapsed_ms=(time.perf_counter() - started) * 1000,
        notes=notes,
    )


def necessary_condition(p: int, max_p: int = NECESSARY_MAX_P) -> TestReport:
    """sum_k prod_{l<k} ((4l)**2 - 1) / (2k)! == -1 (mod M) when M is prime.

    The factorial denominators are handled with modular inverses, so the terms
    here are residues rather than integers (the exact terms are half-integers);
    the sum is normalised so that each term is the previous one times
    ((4(k-1))**2 - 1) / (2k (2k-1)) mod M.  A failed inverse surfaces its gcd
    witness, which is a nontrivial factor of M.
    """
    started = time.perf_counter()
    cand = _candidate(p, 5)
    if p > max_p:
        raise CapacityError(
            f"necessary condition at p={p} needs {cand.n // 2 + 1} modular terms; "
            f"cap is p <= {max_p}"
        )
    m = cand.modulus
    term = 1
    total = 1
    for k in range(1, cand.n // 2 + 1):
        term = term * ((4 * (k - 1)) ** 2 - 1) % m
        try:
            term = term * mod_inverse((2 * k) * (2 * k - 1) % m, m) % m
        except NotInvertibleError as err:
            factor = err.witness
            return TestReport(
                method="necessary",
                p=p,
                verdict="condition-fails",
                residues=[factor],
                elapsed_ms=(time.perf_counter() - started) * 1000,
                notes=[f"factor found: {factor} divides {m}"],
            )
        total = (total + term) % m
    verdict = "condition-holds" if total == m - 1 else "condition-fails"
    return TestReport(
        method="necessary",
        p=p,
        verdict=verdict,
        residues=[total],
        elapsed_ms=(time.perf_counter() - started) * 1000,
        notes=["denominators read as (2k)!"],
    )


def composite_criterion(p: int) -> TestReport:
    """M | psi(1, 4, n +/- 1) certifies compositeness; otherwise inconclusive."""
    started = time.perf_counter()
    cand = _candidate(p, 3)
    m = cand.modulus
    below = psi_mod_ladder(1, 4, cand.n - 1, m)
    above = psi_mod_ladder(1, 4, cand.n + 1, m)
    verdict = "composite" if below == 0 or above == 0 else "inconclusive"
    return TestReport(
        method="composite",
        p=p,
        verdict=verdict,
        residues=[below, above],
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )


def _layered_ratio(start_count: int, step, denominator: int) -> int:
    """Collapse the double-indexed recurrence by rolling layers.

    ``layer[r]`` holds the values at the current depth; each depth k consumes
    positions r = 0 .. K - k, so only one layer is retained at a time.
    """
    layer = [1] * (start_count + 1)
    for k in range(1, start_count + 1):
        layer = [step(r, k, layer[r], layer[r + 1]) for r in range(start_count - k + 1)]
    quotient, rem = divmod(layer[0], denominator)
    if rem:
        raise ArithmeticError("layered ratio is not an integer")
    return quotient


def ab_ratios(p: int) -> tuple[int, int]:
    """The two normalised layer ratios; both are asserted to be integers."""
    n = 1 << (p - 1)
    kp = p // 2
    den_a = 1
    for i in range(1, kp + 1):
        den_a *= p - i
    a_ratio = _layered_ratio(
        kp, lambda r, k, cur, nxt: (p - r - k) * cur + 4 * (p - 2 * r) * nxt, den_a
    )
    kn = n // 2
    den_b = 1
    for i in range(1, kn + 1):
        den_b *= n - i
    b_ratio = _layered_ratio(
        kn,
        lambda r, k, cur, nxt: -2 * (n - r - k) * cur - 2 * (n - 2 * r - 1) * nxt,
        den_b,
    )
    return a_ratio, b_ratio


def ab_ratio_test(p: int, max_p: int = AB_RATIO_MAX_P) -> TestReport:
    """Prime iff the first layer ratio divides the second."""
    started = time.perf_counter()
    cand = _candidate(p, 5)
    if p > max_p:
        layers = cand.n // 2
        est_mb = layers * layers * p // 8 // (1 << 20)
        raise CapacityError(
            f"second layer table at p={p} has {layers} layers "
            f"(~{est_mb} MiB of big integers); cap is p <= {max_p}"
        )
    a_ratio, b_ratio = ab_ratios(p)
    verdict = "prime" if b_ratio % a_ratio == 0 else "composite"
    return TestReport(
        method="ab",
        p=p,
        verdict=verdict,
        ratios=(a_ratio, b_ratio),
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )


def _tau_terms(tau: int):
    """Running products prod_{l<k} ((4l)**2 - tau**2) for k = 0..tau/4."""
    prod = 1
    for k in range(tau // 4 + 1):
        if k:
            prod *= (4 * (k - 1)) ** 2 - tau * tau
        yield k, prod


def tau_identity_value(l: int, variant: str) -> Fraction:
    """Exact value of one tau = 2**l combinatorial sum."""
    if l < 3:
        raise ValueError("l must be >= 3")
    tau = 1 << l
    total = Fraction(0)
    for k, prod in _tau_terms(tau):
        if variant == "quarter":
            total += Fraction(prod, factorial(2 * k) * 4**k)
        elif variant == "half":
            total += Fraction(prod, factorial(2 * k) * 4 ** (2 * k))
        elif variant == "root2":
            total += Fraction(prod, factorial(2 * k) * 2 ** (3 * k))
        else:
            raise ValueError(f"unknown variant {variant!r}")
    if variant == "half":
        total *= 2
    return total


def tau_identity_check(l: int, variant: str) -> bool:
    """quarter -> 1; half -> -1; root2 -> +1 or -1 by tau mod 16."""
    value = tau_identity_value(l, variant)
    tau = 1 << l
    if variant == "quarter":
        return value == 1
    if variant == "half":
        return value == -1
    return value == (1 if tau % 16 == 0 else -1)


def tau_polynomial_identity(l: int) -> bool:
    """The parent two-variable identity: twice the weighted sum over
    (a, b)-monomials reproduces psi(a, b, tau), at both signs of b."""
    if l < 3:
        raise ValueError("l must be >= 3")
    tau = 1 << l
    from .multipoly import SparsePoly, degree_cap, get_degree_cap

    a = SparsePoly.variable("a")
    b = SparsePoly.variable("b")
    with degree_cap(max(get_degree_cap(), tau // 2 + 2)):
        total = SparsePoly.zero()
        for k, prod in _tau_terms(tau):
            w = Fraction(2 * prod, factorial(2 * k) * 4 ** (2 * k))
            total = total + w * a ** (tau // 2 - 2 * k) * b ** (2 * k)
        target = psi_symbolic(tau)
        flipped = target.subst({"b": -b})
    return total == target and total == flipped


METHODS = {
    "ll": ll_classic,
    "psi": psi_test,
    "mu": mu_pattern_test,
    "sum": enhanced_sum_test,
    "necessary": necessary_condition,
    "composite": composite_criterion,
    "ab": ab_ratio_test,
}


def run_method(p: int, method: str, **kwargs) -> TestReport:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return METHODS[method](p, **kwargs)
