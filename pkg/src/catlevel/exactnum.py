"""Exact numeric kernel: rationals, an infinitesimal-extended order,
combinatorial tables, closed-form counts, truncated EGFs, and polynomial
interpolation.

Everything here is exact.  There is no floating point anywhere: coordinates
and offsets are `fractions.Fraction`, strictness bookkeeping rides on a
symbolic infinitesimal (`EpsRational`), and series/polynomial identities are
compared coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence, Union

# The rational scalar used across the package.  `Fraction` already guarantees
# lowest terms, positive denominator and a total order compatible with the
# reals, which is exactly the contract we need.
Rational = Fraction

RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, "p/q" strings and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):  # bool is an int subclass; reject it
        raise TypeError("boolean is not a rational value")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class RaneyDomainError(ValueError):
    """Raised when the two-parameter Raney formula hits its pole.

    The closed form divides by n*(m+1) + level; when that quantity is zero
    the number is undefined and callers must be told apart from an ordinary
    range error.
    """


# ---------------------------------------------------------------------------
# infinitesimal-extended rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EpsRational:
    """A value r + e * eps for an infinitesimal eps > 0.

    Ordered lexicographically by (real_part, eps_coefficient), which makes it
    a totally ordered abelian group under componentwise addition.  Strict
    inequalities over the plain rationals are encoded as weak inequalities
    against an eps-shifted bound, so feasibility decisions never need a
    numeric tolerance.
    """

    real_part: Fraction
    eps_coefficient: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.real_part, Fraction):
            object.__setattr__(self, "real_part", as_rational(self.real_part))
        if not isinstance(self.eps_coefficient, int):
            raise TypeError("eps coefficient must be an integer")

    @classmethod
    def exact(cls, value: RationalLike) -> "EpsRational":
        return cls(as_rational(value), 0)

    def __add__(self, other: "EpsRational") -> "EpsRational":
        return EpsRational(
            self.real_part + other.real_part,
            self.eps_coefficient + other.eps_coefficient,
        )

    def __neg__(self) -> "EpsRational":
        return EpsRational(-self.real_part, -self.eps_coefficient)

    def __sub__(self, other: "EpsRational") -> "EpsRational":
        return self + (-other)

    def _key(self) -> tuple[Fraction, int]:
        return (self.real_part, self.eps_coefficient)

    def __lt__(self, other: "EpsRational") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "EpsRational") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "EpsRational") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "EpsRational") -> bool:
        return self._key() >= other._key()

    def is_negative(self) -> bool:
        return self._key() < (Fraction(0), 0)

    def substitute(self, eps_value: Fraction) -> Fraction:
        """Collapse to a plain rational by giving eps a concrete value."""
        return self.real_part + self.eps_coefficient * eps_value

    def __str__(self) -> str:
        if self.eps_coefficient == 0:
            return str(self.real_part)
        sign = "+" if self.eps_coefficient >= 0 else "-"
        return f"{self.real_part} {sign} {abs(self.eps_coefficient)}*eps"


EPS_ZERO = EpsRational(Fraction(0), 0)


# ---------------------------------------------------------------------------
# combinatorial numbers
# ---------------------------------------------------------------------------


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient with the usual out-of-range convention.

    Requires n >= 0; returns 0 for k < 0 or k > n.
    """
    if n < 0:
        raise ValueError("binomial requires a nonnegative upper index")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def falling_binomial(top: int, n: int) -> int:
    """binom(top, n) as the falling-factorial polynomial, any integer top.

    For negative tops this is the analytic continuation
    top*(top-1)*...*(top-n+1)/n!, still an integer.
    """
    if n < 0:
        return 0
    num = 1
    for s in range(n):
        num *= top - s
    return num // factorial(n)


@dataclass(frozen=True)
class StirlingTable:
    """Both classic triangles up to a fixed size.

    ``unsigned_first[n][k]`` counts permutations of [n] with k cycles and
    ``second[n][k]`` counts set partitions of [n] into k blocks.  The two
    triangles are mutually inverse in the signed sense, which `verify` leans
    on for the convolution identities.
    """

    n_max: int
    unsigned_first: tuple[tuple[int, ...], ...]
    second: tuple[tuple[int, ...], ...]

    def c(self, n: int, k: int) -> int:
        """Unsigned first-kind number c(n, k); 0 outside the triangle."""
        if n < 0 or k < 0 or k > n:
            return 0
        if n > self.n_max:
            raise ValueError(f"table holds n <= {self.n_max}, got {n}")
        return self.unsigned_first[n][k]

    def s(self, n: int, k: int) -> int:
        """Second-kind number S(n, k); 0 outside the triangle."""
        if n < 0 or k < 0 or k > n:
            return 0
        if n > self.n_max:
            raise ValueError(f"table holds n <= {self.n_max}, got {n}")
        return self.second[n][k]


def stirling(n_max: int) -> StirlingTable:
    """Build both Stirling triangles for 0 <= n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    first: list[list[int]] = [[1]]
    second: list[list[int]] = [[1]]
    for n in range(1, n_max + 1):
        prev_c, prev_s = first[n - 1], second[n - 1]
        row_c = [0] * (n + 1)
        row_s = [0] * (n + 1)
        for k in range(1, n + 1):
            above = prev_c[k] if k <= n - 1 else 0
            left = prev_c[k - 1] if k - 1 <= n - 1 else 0
            row_c[k] = left + (n - 1) * above
            above_s = prev_s[k] if k <= n - 1 else 0
            left_s = prev_s[k - 1] if k - 1 <= n - 1 else 0
            row_s[k] = left_s + k * above_s
        first.append(row_c)
        second.append(row_s)
    return StirlingTable(
        n_max,
        tuple(tuple(r) for r in first),
        tuple(tuple(r) for r in second),
    )


def raney(n: int, m: int, level: int) -> Fraction:
    """Two-parameter Raney number A_n(m, level) as an exact rational.

    A_n(m, l) = (l / (n(m+1)+l)) * binom(n(m+1)+l, n).  The level may be any
    integer (negative levels evaluate the same formula through the
    generalized binomial); the pole n(m+1)+l = 0 raises RaneyDomainError.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m < 1:
        raise ValueError("m must be at least 1")
    top = n * (m + 1) + level
    if top == 0:
        raise RaneyDomainError(f"A_{n}({m}, {level}) divides by zero")
    return Fraction(level, top) * falling_binomial(top, n)


def mcat_level_closed_form(n: int, m: int, level: int) -> int:
    """Closed-form count of fundamental-chamber regions at a given level.

    Evaluates (m*level / ((m+1)n - level)) * binom((m+1)n - level, mn) and
    checks it comes out a nonnegative integer.  level = 0 is the empty count
    for n >= 1; other levels outside [0, n] are rejected.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if n == 0:
        if level != 0:
            raise ValueError("only level 0 exists in dimension 0")
        return 1
    if level < 0 or level > n:
        raise ValueError(f"level must lie in [0, {n}], got {level}")
    if level == 0:
        return 0
    value = mcat_closed_form_extended(n, m, level)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"closed form gave a non-count {value}")
    return int(value)


def mcat_closed_form_extended(n: int, m: int, level: int) -> Fraction:
    """The same closed form without the range guard.

    After cancelling the (m+1)n - level factor the expression is a genuine
    polynomial in the level of degree m*n, so it makes sense for any integer
    argument; the polynomiality probe samples it beyond level = n.
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    top = (m + 1) * n - level
    if top == 0:
        # remove the pole by cancelling against the binomial's first factor
        rest = 1
        for s in range(1, m * n):
            rest *= top - s
        return Fraction(m * level * rest, factorial(m * n))
    return Fraction(m * level, top) * falling_binomial(top, m * n)


def catalan_convolution(n: int, level: int) -> int:
    """Coefficient of t^n in the level-fold convolution of Catalan numbers.

    Closed form (level / (2n - level)) * binom(2n - level, n), defined for
    1 <= level <= n.
    """
    if not 1 <= level <= n:
        raise ValueError(f"level must lie in [1, {n}], got {level}")
    value = Fraction(level, 2 * n - level) * binomial(2 * n - level, n)
    assert value.denominator == 1
    return int(value)


# ---------------------------------------------------------------------------
# truncated exponential generating functions
# ---------------------------------------------------------------------------


def _ordinary_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] += ai * b[j]
    return tuple(out)


@dataclass(frozen=True)
class TruncatedEGF:
    """A power series known through a fixed order, stored EGF-style.

    ``coefficients[n]`` is c_n in sum c_n t^n / n!; all arithmetic is exact
    and truncation-correct through ``order``.  Ordinary generating functions
    ride along via the `from_ordinary` / `ordinary_coefficient` adapters
    (the representation is just a basis choice, products agree either way).
    """

    order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = tuple(as_rational(c) for c in self.coefficients)
        if len(coeffs) != self.order + 1:
            raise ValueError("need exactly order + 1 coefficients")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_counts(cls, counts: Sequence[RationalLike]) -> "TruncatedEGF":
        return cls(len(counts) - 1, tuple(as_rational(c) for c in counts))

    @classmethod
    def from_ordinary(cls, coeffs: Sequence[RationalLike]) -> "TruncatedEGF":
        return cls(
            len(coeffs) - 1,
            tuple(as_rational(c) * factorial(n) for n, c in enumerate(coeffs)),
        )

    @classmethod
    def one(cls, order: int) -> "TruncatedEGF":
        return cls(order, tuple([Fraction(1)] + [Fraction(0)] * order))

    def ordinary_coefficient(self, n: int) -> Fraction:
        return self.coefficients[n] / factorial(n)

    def ordinary(self) -> tuple[Fraction, ...]:
        return tuple(self.ordinary_coefficient(n) for n in range(self.order + 1))

    def __mul__(self, other: "TruncatedEGF") -> "TruncatedEGF":
        if self.order != other.order:
            raise ValueError("order mismatch in series product")
        n_max = self.order
        out = []
        for n in range(n_max + 1):
            acc = Fraction(0)
            for k in range(n + 1):
                acc += comb(n, k) * self.coefficients[k] * other.coefficients[n - k]
            out.append(acc)
        return TruncatedEGF(n_max, tuple(out))


def egf_pow(f: TruncatedEGF, power: int) -> TruncatedEGF:
    """f raised to a nonnegative integer power, truncation-correct."""
    if power < 0:
        raise ValueError("power must be nonnegative")
    result = TruncatedEGF.one(f.order)
    for _ in range(power):
        result = result * f
    return result


def _compose_ordinary(
    outer: Sequence[Fraction], inner: Sequence[Fraction], order: int
) -> tuple[Fraction, ...]:
    if inner[0] != 0:
        raise ValueError("inner series must have zero constant term")
    acc = [Fraction(0)] * (order + 1)
    acc[0] = outer[0]
    power: tuple[Fraction, ...] = tuple(
        [Fraction(1)] + [Fraction(0)] * order
    )  # inner^0
    for n in range(1, len(outer)):
        power = _ordinary_mul(power, inner, order)
        if outer[n] == 0:
            continue
        for idx in range(order + 1):
            acc[idx] += outer[n] * power[idx]
    return tuple(acc)


def _substitute(f: TruncatedEGF, inner_ordinary: Sequence[Fraction]) -> TruncatedEGF:
    composed = _compose_ordinary(f.ordinary(), inner_ordinary, f.order)
    return TruncatedEGF.from_ordinary(composed)


def egf_compose_exp(f: TruncatedEGF) -> TruncatedEGF:
    """Substitute t -> 1 - e^(-t) into f (truncation-correct).

    This carries the region series of the kind with zero hyperplanes onto the
    kind without them; `egf_compose_log` is its inverse substitution.
    """
    inner = [Fraction(0)]
    for n in range(1, f.order + 1):
        inner.append(Fraction((-1) ** (n + 1), factorial(n)))
    return _substitute(f, inner)


def egf_compose_log(f: TruncatedEGF) -> TruncatedEGF:
    """Substitute t -> -log(1 - t) into f (inverse of `egf_compose_exp`)."""
    inner = [Fraction(0)]
    for n in range(1, f.order + 1):
        inner.append(Fraction(1, n))
    return _substitute(f, inner)


# ---------------------------------------------------------------------------
# polynomials and interpolation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """A monic integer polynomial, stored coefficient-low-first.

    The characteristic polynomials produced by the finite-field counter and
    by the census transition are all of this shape; insisting on it in the
    constructor catches interpolation bugs early.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if coeffs[-1] != 1:
            raise ValueError(f"polynomial is not monic: {coeffs}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_fractions(cls, coeffs: Sequence[Fraction]) -> "CharPoly":
        trimmed = list(coeffs)
        while len(trimmed) > 1 and trimmed[-1] == 0:
            trimmed.pop()
        ints = []
        for c in trimmed:
            frac = as_rational(c)
            if frac.denominator != 1:
                raise ValueError(f"non-integer coefficient {frac}")
            ints.append(int(frac))
        return cls(tuple(ints))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, t: RationalLike) -> Fraction:
        x = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            if power == 0:
                body = str(abs(c))
            else:
                var = "t" if power == 1 else f"t^{power}"
                body = var if abs(c) == 1 else f"{abs(c)}{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"


def lagrange_coefficients(
    points: Sequence[tuple[RationalLike, RationalLike]]
) -> tuple[Fraction, ...]:
    """Exact coefficients (low-first) of the minimal interpolating polynomial.

    Plain Lagrange interpolation over the rationals with trailing zero
    coefficients stripped.  Duplicate abscissae are an error.
    """
    xs = [as_rational(x) for x, _ in points]
    ys = [as_rational(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation data")
    if not points:
        raise ValueError("need at least one interpolation point")
    size = len(points)
    coeffs = [Fraction(0)] * size
    for i in range(size):
        numer = [Fraction(1)]
        denom = Fraction(1)
        for j in range(size):
            if j == i:
                continue
            new = [Fraction(0)] * (len(numer) + 1)
            for k, c in enumerate(numer):
                new[k + 1] += c
                new[k] -= xs[j] * c
            numer = new
            denom *= xs[i] - xs[j]
        scale = ys[i] / denom
        for k, c in enumerate(numer):
            coeffs[k] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_interpolate(
    points: Sequence[tuple[RationalLike, RationalLike]]
) -> CharPoly:
    """Interpolate and validate the result as a monic integer polynomial."""
    return CharPoly.from_fractions(lagrange_coefficients(points))


def binomial_poly(level: int) -> tuple[Fraction, ...]:
    """Coefficients (low-first) of binom(t, level) as a polynomial in t."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    coeffs = [Fraction(1)]
    for s in range(level):
        new = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] += c
            new[k] -= s * c
        coeffs = new
    inv = Fraction(1, factorial(level))
    return tuple(c * inv for c in coeffs)
