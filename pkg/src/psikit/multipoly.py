"""Sparse multivariate polynomials with exact rational coefficients.

Canonical form: variable names are sorted, variables that no longer occur
are dropped, and zero coefficients are never stored, so structural equality
coincides with mathematical equality.  The printed form orders terms by
graded-lex exponent order, e.g. ``-2*a^2 + b^2``.

A configurable total-degree cap (default 64) makes runaway expansions fail
fast instead of exhausting memory; raise it locally with ``degree_cap``.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .errors import CapacityError

PolyLike = Union[int, Fraction, "SparsePoly"]

__all__ = [
    "SparsePoly",
    "DegreeCapExceeded",
    "ExactDivisionError",
    "as_poly",
    "variables",
    "poly_mul",
    "poly_diff",
    "poly_subst",
    "poly_exact_div",
    "degree_cap",
    "set_degree_cap",
    "get_degree_cap",
]


class DegreeCapExceeded(CapacityError):
    """A product would exceed the configured total-degree cap."""


class ExactDivisionError(ArithmeticError):
    """The divisor does not divide the dividend exactly."""


_degree_cap = 64


def get_degree_cap() -> int:
    return _degree_cap


def set_degree_cap(limit: int) -> None:
    global _degree_cap
    if limit < 1:
        raise ValueError("degree cap must be positive")
    _degree_cap = limit


@contextmanager
def degree_cap(limit: int) -> Iterator[None]:
    """Temporarily raise (or lower) the total-degree cap."""
    global _degree_cap
    old = _degree_cap
    set_degree_cap(limit)
    try:
        yield
    finally:
        _degree_cap = old


def _coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {value!r}")


class SparsePoly:
    """Immutable sparse polynomial over named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms: Mapping | None = None) -> None:
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars!r}")
        cleaned: dict[tuple, Fraction] = {}
        if terms:
            width = len(vars)
            for exps, c in terms.items():
                c = _coeff(c)
                if not c:
                    continue
                exps = tuple(exps)
                if len(exps) != width or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps!r} for {vars!r}")
                cleaned[exps] = c
        # canonical form: keep only used variables, sorted by name
        used = [i for i in range(len(vars)) if any(e[i] for e in cleaned)]
        used.sort(key=lambda i: vars[i])
        object.__setattr__(self, "vars", tuple(vars[i] for i in used))
        object.__setattr__(
            self,
            "terms",
            {tuple(e[i] for i in used): c for e, c in cleaned.items()},
        )

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly instances are immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "SparsePoly":
        return cls()

    @classmethod
    def constant(cls, value) -> "SparsePoly":
        return cls((), {(): _coeff(value)} if value else None)

    @classmethod
    def variable(cls, name: str) -> "SparsePoly":
        return cls((name,), {(1,): Fraction(1)})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        """Coefficient of the monomial given as ``{var: exponent}``."""
        for var in monomial:
            if monomial[var] and var not in self.vars:
                return Fraction(0)
        key = tuple(monomial.get(v, 0) for v in self.vars)
        return self.terms.get(key, Fraction(0))

    # -- alignment over variable universes ---------------------------------

    def _aligned(self, other: "SparsePoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        allvars = tuple(sorted(set(self.vars) | set(other.vars)))

        def remap(poly: "SparsePoly"):
            pos = [allvars.index(v) for v in poly.vars]
            width = len(allvars)
            out = {}
            for e, c in poly.terms.items():
                ne = [0] * width
                for i, p in enumerate(pos):
                    ne[p] = e[i]
                out[tuple(ne)] = c
            return out

        return allvars, remap(self), remap(other)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        vars_, mine, theirs = self._aligned(other)
        merged = dict(mine)
        for e, c in theirs.items():
            s = merged.get(e, Fraction(0)) + c
            if s:
                merged[e] = s
            else:
                merged.pop(e, None)
        return SparsePoly(vars_, merged)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return SparsePoly.zero()
        if self.total_degree() + other.total_degree() > _degree_cap:
            raise DegreeCapExceeded(
                f"product degree {self.total_degree() + other.total_degree()} "
                f"exceeds cap {_degree_cap}"
            )
        vars_, mine, theirs = self._aligned(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in mine.items():
            for e2, c2 in theirs.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key)
                prod = c1 * c2
                if s is None:
                    out[key] = prod
                else:
                    s += prod
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return SparsePoly(vars_, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SparsePoly.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return not self.vars and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if not self.vars:
            return hash(self.constant_value())
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- calculus and substitution -------------------------------------------

    def diff(self, var: str) -> "SparsePoly":
        """Exact partial derivative with respect to ``var``."""
        if var not in self.vars:
            return SparsePoly.zero()
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return SparsePoly(self.vars, out)

    def subst(self, bindings: Mapping[str, PolyLike]) -> "SparsePoly":
        """Substitute polynomials or scalars for variables, exactly."""
        relevant = {v: as_poly(x) for v, x in bindings.items() if v in self.vars}
        if not relevant:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in relevant]
        keepvars = tuple(self.vars[i] for i in keep)
        bound = [(i, relevant[v]) for i, v in enumerate(self.vars) if v in relevant]
        powers: dict[tuple[int, int], SparsePoly] = {}

        def power_of(i: int, e: int) -> "SparsePoly":
            got = powers.get((i, e))
            if got is None:
                got = relevant[self.vars[i]] ** e
                powers[(i, e)] = got
            return got

        total = SparsePoly.zero()
        for e, c in self.terms.items():
            piece = SparsePoly(keepvars, {tuple(e[i] for i in keep): c})
            for i, _ in bound:
                if e[i]:
                    piece = piece * power_of(i, e[i])
            total = total + piece
        return total

    def reduce_square(self, var: str, value) -> "SparsePoly":
        """Rewrite ``var**2 -> value`` (for formal symbols such as i**2 = -1)."""
        if var not in self.vars:
            return self
        i = self.vars.index(var)
        value = _coeff(value)
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            q, r = divmod(e[i], 2)
            key = e[:i] + (r,) + e[i + 1:]
            c = c * value**q
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return SparsePoly(self.vars, out)

    def evaluate(self, values: Mapping[str, Union[int, Fraction]]) -> Fraction:
        """Evaluate at an exact rational point; every variable must be bound."""
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"unbound variables {missing}")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k:
                    term *= Fraction(values[v]) ** k
            total += term
        return total

    def eval_scalar(self, values: Mapping[str, object]):
        """Evaluate with values from any exact commutative ring."""
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"unbound variables {missing}")
        total = 0
        for e, c in self.terms.items():
            term = c if c.denominator != 1 else c.numerator
            for v, k in zip(self.vars, e):
                if k:
                    term = term * values[v] ** k
            total = total + term
        return total

    # -- exact division -------------------------------------------------------

    def exact_div(self, divisor: "SparsePoly") -> "SparsePoly":
        """Exact quotient; raises :class:`ExactDivisionError` otherwise."""
        divisor = as_poly(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return SparsePoly.zero()
        vars_, num, den = self._aligned(divisor)

        def grlex(e):
            return (sum(e), e)

        dlead = max(den, key=grlex)
        dc = den[dlead]
        num = dict(num)
        quotient: dict[tuple, Fraction] = {}
        while num:
            lead = max(num, key=grlex)
            qe = tuple(a - b for a, b in zip(lead, dlead))
            if any(e < 0 for e in qe):
                raise ExactDivisionError("division is not exact")
            qc = num[lead] / dc
            quotient[qe] = quotient.get(qe, Fraction(0)) + qc
            for e, c in den.items():
                key = tuple(a + b for a, b in zip(qe, e))
                s = num.get(key, Fraction(0)) - qc * c
                if s:
                    num[key] = s
                else:
                    num.pop(key, None)
        return SparsePoly(vars_, quotient)

    # -- printing ---------------------------------------------------------------

    def _sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self._sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"SparsePoly({self})"


def _coerce(value):
    if isinstance(value, SparsePoly):
        return value
    if isinstance(value, (int, Fraction)):
        return SparsePoly.constant(value)
    return None


def as_poly(value: PolyLike) -> SparsePoly:
    got = _coerce(value)
    if got is None:
        raise TypeError(f"cannot interpret {value!r} as a polynomial")
    return got


def variables(names: str) -> tuple[SparsePoly, ...]:
    """``x, y = variables("x y")``"""
    return tuple(SparsePoly.variable(n) for n in names.split())


def poly_mul(f: PolyLike, g: PolyLike) -> SparsePoly:
    return as_poly(f) * as_poly(g)


def poly_diff(f: PolyLike, var: str) -> SparsePoly:
    return as_poly(f).diff(var)


def poly_subst(f: PolyLike, bindings: Mapping[str, PolyLike]) -> SparsePoly:
    return as_poly(f).subst(bindings)


def poly_exact_div(f: PolyLike, g: PolyLike) -> SparsePoly:
    return as_poly(f).exact_div(as_poly(g))
