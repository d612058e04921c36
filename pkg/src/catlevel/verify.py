"""Mechanical checks for the counting identities, with exact arithmetic.

Each check enumerates whatever regions it needs, evaluates the matching
closed form or series, and returns a report that either passes or carries
the smallest failing instance (the specific n, level, offsets, and both
sides).  Comparisons are exact — Fractions and ints only, no tolerances.

Censuses are the expensive part, so one cache is threaded through a run:
a merge-only map keyed by (kind, n, offsets) whose inserts are idempotent,
which makes it safe to share between independently running checks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .arrangement import (
    ArrangementSpec,
    Kind,
    enumerate_regions,
    char_poly_finite_field,
)
from .dyckmodel import level
from .exactnum import (
    RationalLike,
    TruncatedEGF,
    as_rational,
    binomial,
    binomial_poly,
    catalan_convolution,
    egf_compose_exp,
    egf_compose_log,
    egf_pow,
    mcat_closed_form_extended,
    mcat_level_closed_form,
    lagrange_coefficients,
    raney,
    stirling,
)


def _offsets_key(offsets: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_rational(a) for a in offsets)


def _offsets_str(offsets: Sequence[Fraction]) -> str:
    return ",".join(str(a) for a in offsets)


class CensusCache:
    """Level censuses computed once per (kind, n, offsets) and reused.

    The map only grows, and recomputing an entry yields the same value, so
    merging the caches of two concurrent runs is a plain dict update.
    """

    def __init__(self) -> None:
        self._by_level: dict[tuple, dict[int, int]] = {}
        self._chamber: dict[tuple, dict[int, int]] = {}

    def counts(
        self, kind: Kind, n: int, offsets: tuple[Fraction, ...]
    ) -> dict[int, int]:
        """Level -> region count; n = 0 means the empty arrangement."""
        if n == 0:
            return {0: 1}
        key = (kind, n, offsets)
        if key not in self._by_level:
            spec = ArrangementSpec(n, offsets, kind)
            out: dict[int, int] = {}
            for region in enumerate_regions(spec):
                value = level(region)
                out[value] = out.get(value, 0) + 1
            self._by_level[key] = out
        return self._by_level[key]

    def r(
        self, kind: Kind, n: int, offsets: tuple[Fraction, ...], lev: int
    ) -> int:
        return self.counts(kind, n, offsets).get(lev, 0)

    def total(self, kind: Kind, n: int, offsets: tuple[Fraction, ...]) -> int:
        return sum(self.counts(kind, n, offsets).values())

    def chamber_counts(
        self, n: int, offsets: tuple[Fraction, ...]
    ) -> dict[int, int]:
        """Level -> count over regions with strictly decreasing witness."""
        if n == 0:
            return {0: 1}
        key = (n, offsets)
        if key not in self._chamber:
            spec = ArrangementSpec(n, offsets, Kind.CATALAN)
            out: dict[int, int] = {}
            for region in enumerate_regions(spec):
                w = region.witness
                if all(w[i] > w[i + 1] for i in range(n - 1)):
                    value = level(region)
                    out[value] = out.get(value, 0) + 1
            self._chamber[key] = out
        return self._chamber[key]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check.

    A failing report always pins down the smallest instance found, with
    both sides evaluated, so it can be rechecked without rerunning the
    sweep.
    """

    identity: str
    parameters: Mapping[str, object]
    passed: bool
    detail: Mapping[str, object] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "parameters": dict(self.parameters),
            "status": self.status,
            "detail": dict(self.detail),
        }

    def summary_line(self) -> str:
        params = " ".join(
            f"{k}={v}" for k, v in sorted(self.parameters.items())
        )
        line = f"{self.status.upper():4} {self.identity} {params}".rstrip()
        if not self.passed:
            line += f"  counterexample: {dict(self.detail)}"
        return line

    def __str__(self) -> str:
        return self.summary_line()


def reports_jsonl(reports: Sequence[VerificationReport]) -> str:
    return "\n".join(
        json.dumps(r.as_json_dict(), sort_keys=True) for r in reports
    )


def render_reports(reports: Sequence[VerificationReport]) -> str:
    return "\n".join(r.summary_line() for r in reports)


def _fail(
    identity: str, parameters: dict, counterexample: dict
) -> VerificationReport:
    return VerificationReport(identity, parameters, False, counterexample)


def check_stirling_convolution(
    offsets: Sequence[RationalLike],
    n_max: int,
    cache: Optional[CensusCache] = None,
) -> VerificationReport:
    """Region counts of the walled family against cycle-number mixes of the
    wall-free one, level by level, plus the signed Stirling inverse."""
    A = _offsets_key(offsets)
    cache = cache or CensusCache()
    params = {"offsets": _offsets_str(A), "n_max": n_max}
    table = stirling(n_max)
    for n in range(n_max + 1):
        for lev in range(n + 1):
            lhs = cache.r(Kind.CATALAN, n, A, lev)
            rhs = sum(
                table.c(n, k) * cache.r(Kind.SEMIORDER, k, A, lev)
                for k in range(n + 1)
            )
            if lhs != rhs:
                return _fail(
                    "stirling-convolution",
                    params,
                    {
                        "direction": "forward",
                        "n": n,
                        "level": lev,
                        "offsets": _offsets_str(A),
                        "lhs": lhs,
                        "rhs": rhs,
                    },
                )
            lhs_inv = cache.r(Kind.SEMIORDER, n, A, lev)
            rhs_inv = sum(
                (-1) ** (n - k)
                * table.s(n, k)
                * cache.r(Kind.CATALAN, k, A, lev)
                for k in range(n + 1)
            )
            if lhs_inv != rhs_inv:
                return _fail(
                    "stirling-convolution",
                    params,
                    {
                        "direction": "inverse",
                        "n": n,
                        "level": lev,
                        "offsets": _offsets_str(A),
                        "lhs": lhs_inv,
                        "rhs": rhs_inv,
                    },
                )
    return VerificationReport(
        "stirling-convolution", params, True, {"checked_n": n_max}
    )


def check_binomial_identity(
    offsets: Sequence[RationalLike],
    n_max: int,
    cache: Optional[CensusCache] = None,
) -> VerificationReport:
    """r_{l1+l2}(n) = sum_i binom(n,i) r_{l1}(i) r_{l2}(n-i), both kinds."""
    A = _offsets_key(offsets)
    cache = cache or CensusCache()
    params = {"offsets": _offsets_str(A), "n_max": n_max}
    for kind in (Kind.CATALAN, Kind.SEMIORDER):
        for n in range(n_max + 1):
            for l1 in range(n + 1):
                for l2 in range(n - l1 + 1):
                    lhs = cache.r(kind, n, A, l1 + l2)
                    rhs = sum(
                        binomial(n, i)
                        * cache.r(kind, i, A, l1)
                        * cache.r(kind, n - i, A, l2)
                        for i in range(n + 1)
                    )
                    if lhs != rhs:
                        return _fail(
                            "binomial-identity",
                            params,
                            {
                                "kind": str(kind),
                                "n": n,
                                "level_1": l1,
                                "level_2": l2,
                                "offsets": _offsets_str(A),
                                "lhs": lhs,
                                "rhs": rhs,
                            },
                        )
    return VerificationReport(
        "binomial-identity", params, True, {"checked_n": n_max}
    )


def _egf_from_counts(
    cache: CensusCache,
    kind: Kind,
    A: tuple[Fraction, ...],
    lev: int,
    n_max: int,
) -> TruncatedEGF:
    return TruncatedEGF.from_counts(
        [cache.r(kind, n, A, lev) for n in range(n_max + 1)]
    )


def check_egf_power(
    offsets: Sequence[RationalLike],
    n_max: int,
    cache: Optional[CensusCache] = None,
) -> VerificationReport:
    """Level-l series as the l-th power of the level-1 series.

    Three faces of the same statement are compared coefficientwise: the
    exponential series for both kinds, the substitution t -> 1 - e^{-t}
    (and its logarithmic inverse) carrying one kind to the other, and the
    per-chamber ordinary convolution for the walled kind.
    """
    A = _offsets_key(offsets)
    cache = cache or CensusCache()
    params = {"offsets": _offsets_str(A), "n_max": n_max}
    for kind in (Kind.CATALAN, Kind.SEMIORDER):
        base = _egf_from_counts(cache, kind, A, 1, n_max)
        for lev in range(n_max + 1):
            power = egf_pow(base, lev)
            direct = _egf_from_counts(cache, kind, A, lev, n_max)
            if power.coefficients != direct.coefficients:
                return _fail(
                    "egf-power",
                    params,
                    {
                        "form": "power",
                        "kind": str(kind),
                        "level": lev,
                        "offsets": _offsets_str(A),
                        "lhs": [str(c) for c in direct.coefficients],
                        "rhs": [str(c) for c in power.coefficients],
                    },
                )
    for lev in range(1, n_max + 1):
        walled = _egf_from_counts(cache, Kind.CATALAN, A, lev, n_max)
        free = _egf_from_counts(cache, Kind.SEMIORDER, A, lev, n_max)
        if egf_compose_exp(walled).coefficients != free.coefficients:
            return _fail(
                "egf-power",
                params,
                {
                    "form": "substitution",
                    "level": lev,
                    "offsets": _offsets_str(A),
                    "lhs": [str(c) for c in egf_compose_exp(walled).coefficients],
                    "rhs": [str(c) for c in free.coefficients],
                },
            )
        if egf_compose_log(free).coefficients != walled.coefficients:
            return _fail(
                "egf-power",
                params,
                {
                    "form": "substitution-inverse",
                    "level": lev,
                    "offsets": _offsets_str(A),
                    "lhs": [str(c) for c in egf_compose_log(free).coefficients],
                    "rhs": [str(c) for c in walled.coefficients],
                },
            )
    chamber = [
        Fraction(cache.chamber_counts(n, A).get(1, 0))
        for n in range(n_max + 1)
    ]
    base_ogf = TruncatedEGF.from_ordinary(chamber)
    for lev in range(n_max + 1):
        power = egf_pow(base_ogf, lev).ordinary()
        for n in range(n_max + 1):
            direct = Fraction(cache.chamber_counts(n, A).get(lev, 0))
            if power[n] != direct:
                return _fail(
                    "egf-power",
                    params,
                    {
                        "form": "chamber-convolution",
                        "n": n,
                        "level": lev,
                        "offsets": _offsets_str(A),
                        "lhs": str(direct),
                        "rhs": str(power[n]),
                    },
                )
    return VerificationReport("egf-power", params, True, {"checked_n": n_max})


def check_charpoly_transition(
    offsets: Sequence[RationalLike],
    kind: "Kind | str",
    n_max: int,
    cache: Optional[CensusCache] = None,
) -> VerificationReport:
    """Finite-field characteristic polynomial against the signed census sum
    sum_l (-1)^{n-l} r_l binom(t, l), as exact polynomials."""
    A = _offsets_key(offsets)
    kind = Kind(kind) if not isinstance(kind, Kind) else kind
    cache = cache or CensusCache()
    params = {
        "offsets": _offsets_str(A),
        "kind": str(kind),
        "n_max": n_max,
    }
    for n in range(1, n_max + 1):
        spec = ArrangementSpec(n, A, kind)
        chi = char_poly_finite_field(spec).coefficients
        summed = [Fraction(0)] * (n + 1)
        for lev in range(n + 1):
            count = cache.r(kind, n, A, lev)
            if count == 0:
                continue
            sign = (-1) ** (n - lev)
            for power, coeff in enumerate(binomial_poly(lev)):
                summed[power] += sign * count * coeff
        if tuple(summed) != tuple(chi):
            return _fail(
                "charpoly-transition",
                params,
                {
                    "n": n,
                    "kind": str(kind),
                    "offsets": _offsets_str(A),
                    "lhs": [str(c) for c in chi],
                    "rhs": [str(c) for c in summed],
                },
            )
    return VerificationReport(
        "charpoly-transition", params, True, {"checked_n": n_max}
    )


def check_mcat_census(
    n_max: int,
    m: int,
    cache: Optional[CensusCache] = None,
) -> VerificationReport:
    """Fundamental-chamber level counts for offsets m, m-1, ..., 1 against
    the product/binomial closed form."""
    cache = cache or CensusCache()
    A = _offsets_key(range(m, 0, -1))
    params = {"n_max": n_max, "m": m}
    for n in range(1, n_max + 1):
        observed = cache.chamber_counts(n, A)
        for lev in range(1, n + 1):
            expected = mcat_level_closed_form(n, m, lev)
            got = observed.get(lev, 0)
            if got != expected:
                return _fail(
                    "mcat-census",
                    params,
                    {
                        "n": n,
                        "m": m,
                        "level": lev,
                        "lhs": got,
                        "rhs": expected,
                    },
                )
    return VerificationReport(
        "mcat-census", params, True, {"checked_n": n_max}
    )


def check_raney_series(
    m_max: int,
    level_max: int,
    order: int,
) -> VerificationReport:
    """Coefficients of powers of the generalized binomial series against
    the two-parameter closed form, and the shifted Catalan power against
    its convolution form."""
    params = {"m_max": m_max, "level_max": level_max, "order": order}
    for m in range(1, m_max + 1):
        base = TruncatedEGF.from_ordinary(
            [raney(n, m, 1) for n in range(order + 1)]
        )
        for lev in range(1, level_max + 1):
            coeffs = egf_pow(base, lev).ordinary()
            for n in range(order + 1):
                expected = raney(n, m, lev)
                if coeffs[n] != expected:
                    return _fail(
                        "raney-series",
                        params,
                        {
                            "form": "binomial-series-power",
                            "m": m,
                            "level": lev,
                            "n": n,
                            "lhs": str(coeffs[n]),
                            "rhs": str(expected),
                        },
                    )
    shifted = TruncatedEGF.from_ordinary(
        [Fraction(0)]
        + [raney(n, 1, 1) for n in range(order)]
    )
    for lev in range(1, level_max + 1):
        coeffs = egf_pow(shifted, lev).ordinary()
        for n in range(order + 1):
            expected = (
                Fraction(catalan_convolution(n, lev))
                if n >= lev
                else Fraction(0)
            )
            if coeffs[n] != expected:
                return _fail(
                    "raney-series",
                    params,
                    {
                        "form": "catalan-convolution",
                        "level": lev,
                        "n": n,
                        "lhs": str(coeffs[n]),
                        "rhs": str(expected),
                    },
                )
    return VerificationReport("raney-series", params, True, {})


def _extended_count(
    cache: CensusCache,
    kind: Kind,
    A: tuple[Fraction, ...],
    n: int,
    lev: int,
    memo: dict,
) -> int:
    """Census count for lev <= n, else the binomial-recursion extension."""
    if n == 0:
        return 1 if lev == 0 else 0
    if lev <= n:
        return cache.r(kind, n, A, lev)
    key = (n, lev)
    if key not in memo:
        memo[key] = sum(
            binomial(n, i)
            * cache.r(kind, i, A, 1)
            * _extended_count(cache, kind, A, n - i, lev - 1, memo)
            for i in range(1, n + 1)
        )
    return memo[key]


def probe_polynomiality(
    offsets: Sequence[RationalLike],
    kind: "Kind | str",
    n: int,
    level_range: Sequence[int],
    cache: Optional[CensusCache] = None,
) -> VerificationReport:
    """Fit the level-indexed counts with a polynomial and report its shape.

    Counts beyond level n come from the binomial recursion, which lets the
    fit see more points than the geometry alone provides.  The fitted
    polynomial is interpolated through the requested levels and then
    re-evaluated at two further extension points; the differences are
    reported as residuals.  Exploratory: the report always passes, the
    interest is in the degree and residuals it carries.
    """
    A = _offsets_key(offsets)
    kind = Kind(kind) if not isinstance(kind, Kind) else kind
    cache = cache or CensusCache()
    levels = sorted(set(int(v) for v in level_range))
    if len(levels) < 2:
        raise ValueError("need at least two levels to fit")
    memo: dict = {}
    points = {
        lev: Fraction(_extended_count(cache, kind, A, n, lev, memo))
        for lev in levels
    }
    coeffs = lagrange_coefficients(sorted(points.items()))
    degree = len(coeffs) - 1
    residuals = {}
    for extra in (max(levels) + 1, max(levels) + 2):
        value = Fraction(_extended_count(cache, kind, A, n, extra, memo))
        fitted = sum(
            coeffs[p] * Fraction(extra) ** p for p in range(len(coeffs))
        )
        residuals[str(extra)] = str(value - fitted)
    detail = {
        "degree": degree,
        "coefficients": [str(c) for c in coeffs],
        "points": {str(k): str(v) for k, v in sorted(points.items())},
        "residuals": residuals,
    }
    if kind is Kind.CATALAN and A and A == _offsets_key(range(len(A), 0, -1)):
        m = len(A)
        scale = math.factorial(n)
        agree = all(
            points[lev] == scale * mcat_closed_form_extended(n, m, lev)
            for lev in levels
        )
        detail["closed_form_degree"] = m * n
        detail["closed_form_agrees"] = agree
    params = {
        "offsets": _offsets_str(A),
        "kind": str(kind),
        "n": n,
        "levels": ",".join(str(v) for v in levels),
    }
    return VerificationReport("polynomiality-probe", params, True, detail)
