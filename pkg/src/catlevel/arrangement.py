"""Hyperplane arrangements built from coordinate differences.

A spec fixes an ambient dimension n, a strictly decreasing list of positive
rational offsets a_1 > ... > a_m, and one of two families: with the
coincidence hyperplanes x_i = x_j ("catalan" kind) or without them
("semiorder" kind).  This module enumerates the chambers of the complement
exactly, hands each one a rational interior witness, measures the dimension
of its recession cone, and counts points over finite fields to recover
characteristic polynomials.

The central trick is that every chamber is cut out by constraints of the
shape x_i - x_j < c or x_i - x_j > c, so feasibility questions reduce to
shortest paths in a small weighted graph.  Strictness is handled by running
the graph algorithm over `EpsRational` weights instead of shrinking bounds
by an ad-hoc tolerance.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Mapping, Optional, Sequence

from .exactnum import (
    EPS_ZERO,
    CharPoly,
    EpsRational,
    RationalLike,
    as_rational,
    poly_interpolate,
)

# Ceiling on DFS feasibility checks during region enumeration; generous for
# every size this package is meant for (n <= 5 with a handful of offsets).
DEFAULT_NODE_LIMIT = 5_000_000


class Kind(Enum):
    """The two hyperplane families: with or without the x_i = x_j walls."""

    CATALAN = "catalan"
    SEMIORDER = "semiorder"

    def __str__(self) -> str:
        return self.value


def _coerce_kind(kind: "Kind | str") -> Kind:
    if isinstance(kind, Kind):
        return kind
    return Kind(kind)


@dataclass(frozen=True)
class ArrangementSpec:
    """Dimension, offsets and kind of one difference arrangement.

    Offsets must be strictly decreasing and positive.  An empty offset list
    is allowed for the catalan kind only (that degenerate case is the plain
    coordinate-coincidence arrangement, and only the geometric machinery
    applies to it); the semiorder kind needs at least one offset.
    """

    n: int
    offsets: tuple[Fraction, ...]
    kind: Kind

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", _coerce_kind(self.kind))
        offsets = tuple(as_rational(a) for a in self.offsets)
        object.__setattr__(self, "offsets", offsets)
        if self.n < 1:
            raise ValueError("dimension n must be positive")
        if any(a <= 0 for a in offsets):
            raise ValueError("offsets must be positive")
        if any(offsets[k] <= offsets[k + 1] for k in range(len(offsets) - 1)):
            raise ValueError("offsets must be strictly decreasing")
        if self.kind is Kind.SEMIORDER and not offsets:
            raise ValueError("semiorder kind needs at least one offset")

    @classmethod
    def catalan(cls, n: int, offsets: Sequence[RationalLike]) -> "ArrangementSpec":
        return cls(n, tuple(as_rational(a) for a in offsets), Kind.CATALAN)

    @classmethod
    def semiorder(cls, n: int, offsets: Sequence[RationalLike]) -> "ArrangementSpec":
        return cls(n, tuple(as_rational(a) for a in offsets), Kind.SEMIORDER)

    @property
    def m(self) -> int:
        return len(self.offsets)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """All coordinate pairs (i, j) with i < j, lexicographic, 1-based."""
        return tuple(itertools.combinations(range(1, self.n + 1), 2))

    def breakpoints(self) -> tuple[Fraction, ...]:
        """Ascending thresholds partitioning the value of any x_i - x_j."""
        negative = [-a for a in self.offsets]
        positive = [a for a in reversed(self.offsets)]
        if self.kind is Kind.CATALAN:
            return tuple(negative + [Fraction(0)] + positive)
        return tuple(negative + positive)


@dataclass(frozen=True)
class Hyperplane:
    """The locus x_i - x_j = c.

    Offsets are stored nonnegative: the wall x_i - x_j = -a appears as the
    equivalent (j, i, a).  The zero wall is attached to the pair with i < j.
    """

    i: int
    j: int
    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", as_rational(self.c))
        if self.i == self.j:
            raise ValueError("hyperplane needs two distinct coordinates")
        if self.c < 0:
            raise ValueError("store x_i - x_j = -a as (j, i, a)")
        if self.c == 0 and self.i > self.j:
            raise ValueError("zero-offset hyperplane must have i < j")


def build_hyperplanes(spec: ArrangementSpec) -> tuple[Hyperplane, ...]:
    """All walls of the arrangement, deterministically ordered.

    Pairs come lexicographically; within a pair the walls are ordered by
    decreasing value of x_i - x_j on the locus (a_1 down through -a_1).
    """
    out: list[Hyperplane] = []
    for i, j in spec.pairs():
        for a in spec.offsets:
            out.append(Hyperplane(i, j, a))
        if spec.kind is Kind.CATALAN:
            out.append(Hyperplane(i, j, Fraction(0)))
        for a in reversed(spec.offsets):
            out.append(Hyperplane(j, i, a))
    return tuple(out)


class Sense(Enum):
    """Comparison sense of a difference constraint (only "<=" is needed)."""

    LE = "LE"


@dataclass(frozen=True)
class DifferenceConstraint:
    """x_i - x_j <= bound, with strictness carried by the bound's eps part.

    The strict inequality x_i - x_j < c is stored as <= c - eps, and
    x_i - x_j > c as x_j - x_i <= -c - eps; weak bounds have eps part 0.
    """

    i: int
    j: int
    bound: EpsRational
    sense: Sense = Sense.LE

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError("constraint needs two distinct coordinates")
        if self.sense is not Sense.LE:
            raise ValueError("only LE constraints are supported")

    @classmethod
    def less_than(cls, i: int, j: int, c: RationalLike) -> "DifferenceConstraint":
        """Strict x_i - x_j < c."""
        return cls(i, j, EpsRational(as_rational(c), -1))

    @classmethod
    def greater_than(cls, i: int, j: int, c: RationalLike) -> "DifferenceConstraint":
        """Strict x_i - x_j > c."""
        return cls(j, i, EpsRational(-as_rational(c), -1))

    @classmethod
    def at_most(cls, i: int, j: int, c: RationalLike) -> "DifferenceConstraint":
        """Weak x_i - x_j <= c."""
        return cls(i, j, EpsRational(as_rational(c), 0))


class Infeasible(Exception):
    """A difference system with no solution; carries a certifying cycle.

    The cycle is a sequence of constraints whose indices chain up and whose
    bounds sum to a negative EpsRational, which is impossible to satisfy.
    """

    def __init__(self, cycle: tuple[DifferenceConstraint, ...]):
        self.cycle = cycle
        total = EPS_ZERO
        for c in cycle:
            total = total + c.bound
        self.total = total
        super().__init__(
            f"infeasible: {len(cycle)} constraints cycle to total bound {total}"
        )


class OnHyperplane(Exception):
    """A query point lies exactly on the wall x_i - x_j = c."""

    def __init__(self, i: int, j: int, c: Fraction):
        self.i, self.j, self.c = i, j, c
        super().__init__(f"point lies on x_{i} - x_{j} = {c}")


class ResourceLimitExceeded(Exception):
    """Enumeration ran past its node budget; reports partial progress."""

    def __init__(self, nodes: int, regions_found: int):
        self.nodes = nodes
        self.regions_found = regions_found
        super().__init__(
            f"stopped after {nodes} feasibility checks "
            f"({regions_found} regions found so far)"
        )


class OracleMismatch(Exception):
    """The combinatorial level and the geometric level disagree on a region.

    This must never happen; it indicates a bug in one of the two routes.
    """

    def __init__(self, region: "Region", model_level: int, cone_dim: int):
        self.region = region
        self.model_level = model_level
        self.cone_dim = cone_dim
        super().__init__(
            f"model level {model_level} != recession cone dim {cone_dim} "
            f"on region {region.short_label()}"
        )


class ValidationMismatch(Exception):
    """Finite-field point counts contradict the interpolated polynomial."""


def feasible(
    constraints: Sequence[DifferenceConstraint], n: int
) -> tuple[Fraction, ...]:
    """Solve a strict/weak difference system exactly, or raise Infeasible.

    Runs Bellman-Ford over EpsRational edge weights (edge j -> i of weight b
    for each x_i - x_j <= b), starting from the all-zero potential, which is
    equivalent to adding a virtual source.  A relaxation still possible
    after n sweeps certifies a negative-total cycle and the offending
    constraints are extracted by walking predecessors.

    On success the symbolic potentials are turned into plain rationals by
    substituting a concrete value for eps: start at delta/(2(E+1)) where
    delta is the least positive real-part slack and E the largest |eps
    coefficient| in play, then halve until the substituted point satisfies
    every constraint (termination is guaranteed: componentwise the symbolic
    solution satisfies each constraint lexicographically, so a small enough
    eps works).  The witness is translated so its minimum coordinate is 0.
    """
    for c in constraints:
        if not (1 <= c.i <= n and 1 <= c.j <= n):
            raise ValueError(f"constraint index out of range for n={n}: {c}")

    # edge u -> v of weight w means dist[v] <= dist[u] + w
    edges = [(c.j - 1, c.i - 1, c.bound, c) for c in constraints]
    dist: list[EpsRational] = [EPS_ZERO] * n
    pred: list[Optional[int]] = [None] * n

    improved = True
    for _ in range(n + 1):
        improved = False
        for idx, (u, v, w, _c) in enumerate(edges):
            cand = dist[u] + w
            if cand < dist[v]:
                dist[v] = cand
                pred[v] = idx
                improved = True
        if not improved:
            break

    if improved:
        raise Infeasible(_negative_cycle(edges, pred))

    witness = _materialize(dist, constraints)
    low = min(witness)
    return tuple(x - low for x in witness)


def _negative_cycle(edges, pred) -> tuple[DifferenceConstraint, ...]:
    """Extract a constraint cycle from the predecessor graph after failure."""
    for start in range(len(pred)):
        if pred[start] is None:
            continue
        seen: dict[int, int] = {}
        path: list[int] = []
        x = start
        while pred[x] is not None:
            if x in seen:
                cycle_edges = path[seen[x]:]
                return tuple(edges[e][3] for e in reversed(cycle_edges))
            seen[x] = len(path)
            path.append(pred[x])
            x = edges[pred[x]][0]
    raise AssertionError("negative cycle reported but none found")


def _materialize(
    dist: Sequence[EpsRational], constraints: Sequence[DifferenceConstraint]
) -> list[Fraction]:
    """Substitute a concrete eps into symbolic potentials and verify."""
    delta = None
    for c in constraints:
        slack = c.bound - (dist[c.i - 1] - dist[c.j - 1])
        if slack.real_part > 0 and (delta is None or slack.real_part < delta):
            delta = slack.real_part
    if delta is None:
        delta = Fraction(1)
    biggest = max((abs(d.eps_coefficient) for d in dist), default=0)
    eps = delta / (2 * (biggest + 1))
    while True:
        point = [d.substitute(eps) for d in dist]
        ok = True
        for c in constraints:
            if point[c.i - 1] - point[c.j - 1] > c.bound.substitute(eps):
                ok = False
                break
        if ok:
            return point
        eps = eps / 2


Interval = tuple[Optional[Fraction], Optional[Fraction]]


class Region:
    """One chamber of an arrangement's complement.

    A chamber is identified by, for every coordinate pair i < j, the open
    interval between consecutive offset thresholds that contains x_i - x_j.
    Two regions over the same spec are equal exactly when those interval
    assignments agree; the stored witness is an interior rational point and
    deliberately does not take part in equality or hashing.
    """

    __slots__ = ("spec", "interval_assignment", "witness", "_key")

    def __init__(
        self,
        spec: ArrangementSpec,
        interval_assignment: Mapping[tuple[int, int], Interval],
        witness: Sequence[RationalLike],
    ):
        self.spec = spec
        pairs = spec.pairs()
        if set(interval_assignment) != set(pairs):
            raise ValueError("interval assignment must cover each pair i < j")
        ladder: list[Optional[Fraction]] = [None, *spec.breakpoints(), None]
        normalized: dict[tuple[int, int], Interval] = {}
        for pair in pairs:
            lo, hi = interval_assignment[pair]
            lo = None if lo is None else as_rational(lo)
            hi = None if hi is None else as_rational(hi)
            for pos in range(len(ladder) - 1):
                if ladder[pos] == lo and ladder[pos + 1] == hi:
                    break
            else:
                raise ValueError(
                    f"({lo}, {hi}) is not an interval between consecutive "
                    f"thresholds of {spec.breakpoints()}"
                )
            normalized[pair] = (lo, hi)
        self.interval_assignment = normalized
        self.witness = tuple(as_rational(x) for x in witness)
        if len(self.witness) != spec.n:
            raise ValueError("witness has the wrong dimension")
        self._key = (spec, tuple(sorted(normalized.items(), key=lambda kv: kv[0])))

    def interval(self, i: int, j: int) -> Interval:
        return self.interval_assignment[(i, j)]

    def constraints(self) -> tuple[DifferenceConstraint, ...]:
        out = []
        for (i, j), (lo, hi) in sorted(self.interval_assignment.items()):
            if lo is not None:
                out.append(DifferenceConstraint.greater_than(i, j, lo))
            if hi is not None:
                out.append(DifferenceConstraint.less_than(i, j, hi))
        return tuple(out)

    def witness_valid(self) -> bool:
        """Does the stored witness lie strictly inside every interval?"""
        for (i, j), (lo, hi) in self.interval_assignment.items():
            d = self.witness[i - 1] - self.witness[j - 1]
            if lo is not None and not d > lo:
                return False
            if hi is not None and not d < hi:
                return False
        return True

    def with_witness(self, witness: Sequence[RationalLike]) -> "Region":
        return Region(self.spec, self.interval_assignment, witness)

    def short_label(self) -> str:
        bits = []
        for (i, j), (lo, hi) in sorted(self.interval_assignment.items()):
            lo_s = "-inf" if lo is None else str(lo)
            hi_s = "+inf" if hi is None else str(hi)
            bits.append(f"x{i}-x{j} in ({lo_s},{hi_s})")
        return "; ".join(bits)

    def as_json_dict(self) -> dict:
        assignment = []
        for (i, j), (lo, hi) in sorted(self.interval_assignment.items()):
            assignment.append(
                {
                    "pair": [i, j],
                    "interval": [
                        None if lo is None else str(lo),
                        None if hi is None else str(hi),
                    ],
                }
            )
        return {
            "assignment": assignment,
            "witness": [str(x) for x in self.witness],
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Region({self.spec.kind}, n={self.spec.n}, {self.short_label()})"


def enumerate_regions(
    spec: ArrangementSpec, max_nodes: int = DEFAULT_NODE_LIMIT
) -> tuple[Region, ...]:
    """Every chamber of the arrangement, in a deterministic order.

    Depth-first search over the per-pair interval choices: pairs are
    assigned in lexicographic order and intervals tried left to right, with
    a feasibility check pruning each partial assignment.  Every leaf that
    survives is a chamber, and every chamber is reached exactly once, so the
    result is complete.  Raises ResourceLimitExceeded past the node budget.
    """
    pairs = spec.pairs()
    breakpoints = spec.breakpoints()
    ladder: list[Optional[Fraction]] = [None, *breakpoints, None]
    intervals: list[Interval] = [
        (ladder[pos], ladder[pos + 1]) for pos in range(len(ladder) - 1)
    ]

    regions: list[Region] = []
    assignment: dict[tuple[int, int], Interval] = {}
    constraints: list[DifferenceConstraint] = []
    nodes = 0

    def descend(depth: int) -> None:
        nonlocal nodes
        for interval in intervals:
            i, j = pairs[depth]
            lo, hi = interval
            added = 0
            if lo is not None:
                constraints.append(DifferenceConstraint.greater_than(i, j, lo))
                added += 1
            if hi is not None:
                constraints.append(DifferenceConstraint.less_than(i, j, hi))
                added += 1
            assignment[pairs[depth]] = interval
            nodes += 1
            if nodes > max_nodes:
                raise ResourceLimitExceeded(nodes, len(regions))
            try:
                witness = feasible(constraints, spec.n)
            except Infeasible:
                witness = None
            if witness is not None:
                if depth + 1 == len(pairs):
                    region = Region(spec, dict(assignment), witness)
                    assert region.witness_valid()
                    regions.append(region)
                else:
                    descend(depth + 1)
            del assignment[pairs[depth]]
            del constraints[len(constraints) - added:]

    if not pairs:
        return (Region(spec, {}, (Fraction(0),) * spec.n),)
    descend(0)
    return tuple(regions)


def region_of_point(
    spec: ArrangementSpec, point: Sequence[RationalLike]
) -> Region:
    """The chamber containing a point, or OnHyperplane if there is none."""
    coords = tuple(as_rational(x) for x in point)
    if len(coords) != spec.n:
        raise ValueError(f"point has dimension {len(coords)}, spec has {spec.n}")
    breakpoints = spec.breakpoints()
    assignment: dict[tuple[int, int], Interval] = {}
    for i, j in spec.pairs():
        d = coords[i - 1] - coords[j - 1]
        pos = bisect_left(breakpoints, d)
        if pos < len(breakpoints) and breakpoints[pos] == d:
            raise OnHyperplane(i, j, d)
        lo = breakpoints[pos - 1] if pos > 0 else None
        hi = breakpoints[pos] if pos < len(breakpoints) else None
        assignment[(i, j)] = (lo, hi)
    return Region(spec, assignment, coords)


# ---------------------------------------------------------------------------
# recession cones
# ---------------------------------------------------------------------------


def _cone_rows(region: Region) -> list[tuple[int, ...]]:
    """Homogeneous parts of the region's bounded-side constraints.

    Each finite interval endpoint contributes a row of the cone system
    {d : row . d <= 0}; rows are +-1 difference vectors and come deduplicated.
    """
    n = region.spec.n
    rows: set[tuple[int, ...]] = set()
    for (i, j), (lo, hi) in region.interval_assignment.items():
        if hi is not None:  # x_i - x_j < hi caps the direction d_i - d_j
            row = [0] * n
            row[i - 1], row[j - 1] = 1, -1
            rows.add(tuple(row))
        if lo is not None:
            row = [0] * n
            row[i - 1], row[j - 1] = -1, 1
            rows.add(tuple(row))
    return sorted(rows)


def _fm_feasible(rows: list[tuple[tuple[Fraction, ...], Fraction]], n: int) -> bool:
    """Is {d : row . d <= rhs for all rows} nonempty?  Exact Fourier-Motzkin."""

    def normalize(vec: Sequence[Fraction], rhs: Fraction):
        denom = lcm(*(x.denominator for x in (*vec, rhs)))
        ints = [int(x * denom) for x in (*vec, rhs)]
        g = gcd(*ints) if any(ints) else 1
        if g > 1:
            ints = [v // g for v in ints]
        return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])

    system = {normalize(vec, rhs) for vec, rhs in rows}
    for var in range(n):
        positive, negative, neutral = [], [], []
        for vec, rhs in system:
            coeff = vec[var]
            if coeff > 0:
                positive.append((vec, rhs))
            elif coeff < 0:
                negative.append((vec, rhs))
            else:
                neutral.append((vec, rhs))
        next_system = set(neutral)
        for pvec, prhs in positive:
            for nvec, nrhs in negative:
                a, b = pvec[var], -nvec[var]
                vec = tuple(b * p + a * q for p, q in zip(pvec, nvec))
                next_system.add(normalize(vec, b * prhs + a * nrhs))
        system = next_system
    return all(rhs >= 0 for _vec, rhs in system)


def recession_cone_dim(region: Region) -> int:
    """Dimension of the region's recession cone (its geometric level).

    The cone is {d : A d <= 0} for the homogeneous parts A of the region's
    bounded constraints.  A row a is implicit (holds with equality on the
    whole cone) iff {A d <= 0, a . d <= -1} is empty, which Fourier-Motzkin
    decides exactly; the dimension is n minus the rank of the implicit rows.
    """
    n = region.spec.n
    rows = _cone_rows(region)
    base = [
        (tuple(Fraction(v) for v in row), Fraction(0)) for row in rows
    ]
    implicit: list[tuple[int, ...]] = []
    for row in rows:
        probe = base + [
            (tuple(Fraction(v) for v in row), Fraction(-1))
        ]
        if not _fm_feasible(probe, n):
            implicit.append(row)
    return n - _rank(implicit)


def _rank(rows: Sequence[Sequence[int]]) -> int:
    matrix = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(matrix[0]) if matrix else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(matrix)):
            if matrix[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        lead = matrix[rank][col]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col] != 0:
                factor = matrix[r][col] / lead
                matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# characteristic polynomials over finite fields
# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _primes_above(bound: int) -> Iterator[int]:
    p = bound + 1
    while True:
        if _is_prime(p):
            yield p
        p += 1


def _count_complement_points(
    n: int, scaled_offsets: Sequence[int], with_zero: bool, p: int
) -> int:
    """Number of points of F_p^n off every wall of the scaled arrangement.

    Differences are translation-invariant, so the count is p times the count
    over the slice x_n = 0, which is what gets enumerated.
    """
    forbidden = set()
    if with_zero:
        forbidden.add(0)
    for a in scaled_offsets:
        forbidden.add(a % p)
        forbidden.add((-a) % p)
    good = 0
    for rest in itertools.product(range(p), repeat=n - 1):
        coords = (*rest, 0)
        for i in range(n - 1):
            for j in range(i + 1, n):
                if (coords[i] - coords[j]) % p in forbidden:
                    break
            else:
                continue
            break
        else:
            good += 1
    return p * good


def char_poly_finite_field(spec: ArrangementSpec) -> CharPoly:
    """Characteristic polynomial via point counts over n + 2 primes.

    Offsets are first cleared to integers by the common denominator (the
    coordinate scaling x -> λx preserves the intersection lattice).  Counts
    over n + 1 primes above 2·n·a_1 determine the degree-n polynomial by
    interpolation; a further prime cross-validates the result and any
    disagreement raises ValidationMismatch.
    """
    denom = lcm(*(a.denominator for a in spec.offsets)) if spec.offsets else 1
    scaled = [int(a * denom) for a in spec.offsets]
    top = scaled[0] if scaled else 0
    bound = max(2 * spec.n * top + 1, spec.n + 1)
    with_zero = spec.kind is Kind.CATALAN

    primes = _primes_above(bound)
    points = []
    for _ in range(spec.n + 1):
        p = next(primes)
        points.append((p, _count_complement_points(spec.n, scaled, with_zero, p)))
    poly = poly_interpolate(points)
    if poly.degree != spec.n:
        raise ValidationMismatch(
            f"interpolated degree {poly.degree}, expected {spec.n}"
        )
    check = next(primes)
    expected = _count_complement_points(spec.n, scaled, with_zero, check)
    if poly.evaluate(check) != expected:
        raise ValidationMismatch(
            f"χ({check}) = {poly.evaluate(check)} but the count is {expected}"
        )
    return poly


# ---------------------------------------------------------------------------
# level census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelCensus:
    """How many chambers sit at each level, for one spec.

    ``counts`` maps every level 0..n to a count (level 0 is always 0 here:
    the all-ones translation keeps every chamber unbounded).
    """

    spec: ArrangementSpec
    counts: Mapping[int, int]
    total: int

    def count(self, level: int) -> int:
        return self.counts.get(level, 0)

    def as_json_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "kind": str(self.spec.kind),
            "offsets": [str(a) for a in self.spec.offsets],
            "counts": {
                str(level): c
                for level, c in sorted(self.counts.items())
                if c != 0
            },
            "total": self.total,
        }


def level_census(spec: ArrangementSpec, use_oracle: bool = True) -> LevelCensus:
    """Enumerate all chambers and bucket them by level.

    Levels come from the combinatorial path/graph formulas; with use_oracle
    the recession-cone dimension is computed independently per chamber and
    any disagreement is raised as OracleMismatch.  The degenerate m = 0 spec
    has no combinatorial model and always uses the geometric route.
    """
    regions = enumerate_regions(spec)
    counts = {level: 0 for level in range(spec.n + 1)}
    if spec.m >= 1:
        from . import dyckmodel  # deferred: dyckmodel imports this module

        for region in regions:
            level = dyckmodel.level(region)
            if use_oracle:
                cone = recession_cone_dim(region)
                if cone != level:
                    raise OracleMismatch(region, level, cone)
            counts[level] += 1
    else:
        for region in regions:
            counts[recession_cone_dim(region)] += 1
    return LevelCensus(spec, counts, len(regions))
