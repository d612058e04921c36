"""Structure-preserving maps between cycle forms, paths and regions.

Three pictures of the same data meet here: permutations in standard cycle
form, labeled Dyck paths, and arrangement regions.  `fundamental_bijection`
and its inverse translate between cycle forms and words; `omega_extension`
and `q_compression` blow labeled paths up and collapse them back down; `phi`
/ `phi_inverse` carry (cycle form, semiorder region) pairs to Catalan-type
regions and back, preserving the level; `varphi_ell` and `phi_omega` cut a
region of level L into L independent level-1 pieces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import ArrangementSpec, Kind, Region, region_of_point
from .dyckmodel import (
    BraidUnsupported,
    DyckPath,
    LabeledDyckPath,
    PermutationPartition,
    _check_permutation,
    dyck_tuple,
    incomparability,
    induced_partition,
    interval_orders,
    level,
    region_partition,
)
from .exactnum import RationalLike, as_rational


class NotInFundamentalChamber(ValueError):
    """The map needs a region whose witness is strictly decreasing."""


@dataclass(frozen=True)
class CycleForm:
    """A permutation written as cycles in standard form.

    Standard form pins the otherwise free choices of cycle notation: every
    cycle starts with its largest element, and the cycles appear with those
    largest elements increasing.  Erasing the parentheses of a standard form
    is then injective, which is what makes `fundamental_bijection` work.
    """

    cycles: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cycles = tuple(tuple(int(x) for x in c) for c in self.cycles)
        object.__setattr__(self, "cycles", cycles)
        support: list[int] = []
        for cycle in cycles:
            if not cycle:
                raise ValueError("cycles must be nonempty")
            if cycle[0] != max(cycle):
                raise ValueError(
                    f"cycle {cycle} must start with its largest element"
                )
            support.extend(cycle)
        heads = [cycle[0] for cycle in cycles]
        if any(a >= b for a, b in zip(heads, heads[1:])):
            raise ValueError(
                "cycles must be ordered by increasing largest element"
            )
        if sorted(support) != list(range(1, len(support) + 1)):
            raise ValueError("cycles must cover 1..n without repeats")

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @classmethod
    def of_permutation(cls, perm: Sequence[int]) -> "CycleForm":
        """Decompose a one-line permutation into standard cycle form."""
        word = _check_permutation(perm, len(perm))
        n = len(word)
        seen: set[int] = set()
        cycles = []
        for start in range(1, n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = word[start - 1]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = word[nxt - 1]
            pivot = cycle.index(max(cycle))
            cycles.append(tuple(cycle[pivot:] + cycle[:pivot]))
        cycles.sort(key=lambda c: c[0])
        return cls(tuple(cycles))

    def permutation(self) -> tuple[int, ...]:
        """The one-line form: position i holds the image of i."""
        image = [0] * self.n
        for cycle in self.cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                image[a - 1] = b
        return tuple(image)

    def as_json_dict(self) -> dict:
        return {"cycles": [list(c) for c in self.cycles]}

    def __str__(self) -> str:
        return "".join(
            "(" + "".join(str(x) for x in c) + ")" for c in self.cycles
        )


def fundamental_bijection(omega: CycleForm) -> tuple[int, ...]:
    """Erase the parentheses of a standard cycle form."""
    return tuple(itertools.chain.from_iterable(omega.cycles))


def _maxima_segments(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Cut a distinct-element word before each left-to-right maximum."""
    cuts = [pos for pos in range(1, len(word)) if word[pos] > max(word[:pos])]
    segments = []
    start = 0
    for pos in cuts + [len(word)]:
        segments.append(word[start:pos])
        start = pos
    return segments


def inverse_fundamental(word: Sequence[int]) -> CycleForm:
    """Re-cut a word before each left-to-right maximum.

    The segments start at their own maxima with those maxima increasing, so
    they are literally the cycles of the standard form that produced the
    word.
    """
    w = _check_permutation(word, len(word))
    return CycleForm(tuple(_maxima_segments(w)))


@dataclass(frozen=True)
class OrderedSetPartition:
    """Disjoint index blocks covering 1..n, listed in a significant order."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        support = sorted(itertools.chain.from_iterable(blocks))
        if support != list(range(1, len(support) + 1)):
            raise ValueError("blocks must cover 1..n without repeats")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def as_json_dict(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}

    def __str__(self) -> str:
        return "|".join(
            "{" + ",".join(str(x) for x in b) + "}" for b in self.blocks
        )


def omega_extension(base: LabeledDyckPath, omega: CycleForm) -> LabeledDyckPath:
    """Blow up every labeled step pair of `base` into a whole cycle.

    The east step labeled i becomes #C_i east steps labeled by the word of
    C_i, and the south step of the same index becomes #C_i south steps in the
    same column.  The result is a path of length 2n whose label is the
    concatenation of the cycle words in east order.
    """
    k = base.path.n
    if omega.cycle_count != k:
        raise ValueError(
            f"need a cycle per step pair: path has {k}, got {omega.cycle_count}"
        )
    tau = base.label
    sizes = omega.sizes()
    label_out: list[int] = []
    alpha_out: list[int] = []
    east_seen = 0
    expanded_east = 0
    south_seen = 0
    for step in base.path.step_string():
        if step == "E":
            cycle = omega.cycles[tau[east_seen] - 1]
            label_out.extend(cycle)
            expanded_east += len(cycle)
            east_seen += 1
        else:
            size = sizes[tau[south_seen] - 1]
            alpha_out.extend([omega.n - expanded_east] * size)
            south_seen += 1
    path = DyckPath(omega.n, tuple(alpha_out))
    return LabeledDyckPath(path, tuple(label_out))


def q_compression(
    labeled: LabeledDyckPath, q: PermutationPartition
) -> LabeledDyckPath:
    """Collapse each block of q to a single labeled step pair.

    q must refine the path's induced partition, and each block's word must
    read as one cycle (it starts with its largest element).  Blocks become
    the cycles of the compressed label: block j turns into the east/south
    pair labeled by the rank of its cycle among all blocks' cycles ordered by
    largest element, which is exactly what `omega_extension` undoes.
    """
    if q.base != labeled.label:
        raise ValueError("partition must cut the path's own label word")
    if not q.refines(induced_partition(labeled)):
        raise ValueError("partition must refine the path's induced partition")
    for block in q.blocks:
        if block[0] != max(block):
            raise ValueError(f"block {block} is not the word of a single cycle")

    k = len(q.blocks)
    by_largest = sorted(range(k), key=lambda j: q.blocks[j][0])
    rank = {j: r + 1 for r, j in enumerate(by_largest)}
    tau = tuple(rank[j] for j in range(k))

    n = labeled.path.n
    alpha = labeled.path.plus_counts
    prefix = [0]
    for block in q.blocks:
        prefix.append(prefix[-1] + len(block))
    blocks_before = {east: count for count, east in enumerate(prefix)}
    alpha_out = []
    for j in range(k):
        rows = set(alpha[prefix[j]:prefix[j + 1]])
        assert len(rows) == 1, "refinement guarantees one column per block"
        east_before = n - rows.pop()
        assert east_before in blocks_before, "south runs align to block edges"
        alpha_out.append(k - blocks_before[east_before])
    return LabeledDyckPath(DyckPath(k, tuple(alpha_out)), tau)


def _untied_witness(region: Region) -> tuple[Fraction, ...]:
    """The region's witness, nudged so all coordinates are distinct.

    Semiorder witnesses may carry exact ties.  Each coordinate gains
    eta*(n-j)/n with eta below half of every strict slack, so every strict
    inequality of the region survives and ties break in favor of the
    smaller index — the same convention the associated permutation uses.
    """
    x = region.witness
    if len(set(x)) == len(x):
        return x
    slacks = []
    for p in range(len(x)):
        for q in range(p + 1, len(x)):
            d = x[p] - x[q]
            if d:
                slacks.append(abs(d))
            for a in region.spec.offsets:
                for wall in (a, -a):
                    if d != wall:
                        slacks.append(abs(d - wall))
    eta = min(slacks) / 2
    t = len(x)
    return tuple(
        xj + eta * Fraction(t - j, t) for j, xj in enumerate(x, start=1)
    )


def expanded_witness(
    omega: CycleForm,
    region: Region,
    epsilon: Optional[RationalLike] = None,
) -> tuple[Fraction, ...]:
    """The n-point that replaces coordinate j of `region` by cycle C_j.

    Index c sitting s-from-the-end in cycle C_j receives x_j + s*eps, so the
    cycle's last word element keeps the value x_j exactly and the leader
    sits highest.  eps defaults to min(a_m, delta)/(n+1) with delta the least
    strict slack of the witness; a supplied eps is checked against the same
    separation conditions and rejected if any cluster could cross a wall.
    """
    spec = region.spec
    if spec.kind is not Kind.SEMIORDER:
        raise ValueError("the expansion starts from a semiorder-type region")
    if omega.cycle_count != spec.n:
        raise ValueError(
            f"need one cycle per coordinate: {spec.n} coordinates, "
            f"{omega.cycle_count} cycles"
        )
    x = _untied_witness(region)
    n = omega.n
    a_min = spec.offsets[-1]
    if epsilon is None:
        slacks = [
            abs(x[p] - x[q] - wall)
            for p in range(spec.n)
            for q in range(spec.n)
            if p != q
            for wall in [Fraction(0), *spec.offsets, *(-a for a in spec.offsets)]
        ]
        eps = min([a_min, *slacks]) / (n + 1)
    else:
        eps = as_rational(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")

    sizes = omega.sizes()
    walls = [Fraction(0)]
    for a in spec.offsets:
        walls.extend((a, -a))
    if (max(sizes) - 1) * eps >= a_min:
        raise ValueError("epsilon too large: a cluster would span an offset")
    for p in range(spec.n):
        for q in range(spec.n):
            if p == q:
                continue
            d = x[p] - x[q]
            for wall in walls:
                if d > wall and d - (sizes[q] - 1) * eps <= wall:
                    raise ValueError(
                        "epsilon too large: clusters "
                        f"{p + 1} and {q + 1} would touch a wall"
                    )
                if d < wall and d + (sizes[p] - 1) * eps >= wall:
                    raise ValueError(
                        "epsilon too large: clusters "
                        f"{p + 1} and {q + 1} would touch a wall"
                    )

    y = [Fraction(0)] * n
    for j, cycle in enumerate(omega.cycles):
        for s, c in enumerate(cycle, start=1):
            y[c - 1] = x[j] + (len(cycle) - s) * eps
    return tuple(y)


def phi(
    omega: CycleForm,
    region: Region,
    epsilon: Optional[RationalLike] = None,
) -> Region:
    """Carry a (cycle form, semiorder region) pair to a Catalan-type region.

    Coordinate j of the semiorder region fans out into the cluster of
    indices in cycle C_j, spaced eps apart; the Catalan-type region is the
    one containing that expanded point.  The level of the image equals the
    level of the input region, and `phi_inverse` undoes the map exactly.
    """
    y = expanded_witness(omega, region, epsilon)
    out = ArrangementSpec.catalan(omega.n, region.spec.offsets)
    return region_of_point(out, y)


def phi_inverse(delta: Region) -> tuple[CycleForm, Region]:
    """Recover the (cycle form, semiorder region) pair behind a region.

    The meet of the induced partitions groups indices whose coordinates sit
    within every offset of each other; cutting each group before its
    left-to-right maxima yields the cycles, and each cycle's last word
    element donates its coordinate to the compressed point.
    """
    spec = delta.spec
    if spec.kind is not Kind.CATALAN:
        raise ValueError("the compression starts from a Catalan-type region")
    if spec.m == 0:
        raise BraidUnsupported("no offsets to compress against")
    meet = region_partition(delta)
    cycles: list[tuple[int, ...]] = []
    for block in meet.blocks:
        cycles.extend(_maxima_segments(block))
    cycles.sort(key=lambda c: c[0])
    omega = CycleForm(tuple(cycles))
    x = tuple(delta.witness[cycle[-1] - 1] for cycle in omega.cycles)
    sub = ArrangementSpec.semiorder(omega.cycle_count, spec.offsets)
    return omega, region_of_point(sub, x)


def varphi_ell(delta: Region) -> tuple[Region, ...]:
    """Split a fundamental-chamber region into independent level-1 pieces.

    Where the first path returns to the diagonal, the coordinates break into
    contiguous groups too far apart to interact; each group induces its own
    region, and a level-L input yields exactly L pieces, all of level 1.
    """
    spec = delta.spec
    if spec.kind is not Kind.CATALAN:
        raise ValueError("level splitting is defined for Catalan-type regions")
    if spec.m == 0:
        raise BraidUnsupported("level splitting needs at least one offset")
    w = delta.witness
    if any(w[i] <= w[i + 1] for i in range(spec.n - 1)):
        raise NotInFundamentalChamber(
            "witness coordinates must strictly decrease"
        )
    d1 = dyck_tuple(delta).paths[0]
    edges = [0, *d1.touch_points(), spec.n]
    parts = []
    for lo, hi in zip(edges, edges[1:]):
        sub = ArrangementSpec.catalan(hi - lo, spec.offsets)
        parts.append(region_of_point(sub, w[lo:hi]))
    assert all(level(p) == 1 for p in parts), "every piece must be level 1"
    return tuple(parts)


def varphi_ell_inverse(parts: Sequence[Region]) -> Region:
    """Rejoin level-1 fundamental pieces into one region.

    Piece j is shifted upward far enough that its smallest coordinate clears
    the next piece's largest by more than the widest offset, so no new
    interactions appear and the joined region splits back into the same
    pieces.
    """
    parts = tuple(parts)
    if not parts:
        raise ValueError("need at least one piece")
    spec0 = parts[0].spec
    if spec0.kind is not Kind.CATALAN or spec0.m == 0:
        raise ValueError("pieces must be Catalan-type regions with offsets")
    if any(
        p.spec.kind is not Kind.CATALAN or p.spec.offsets != spec0.offsets
        for p in parts
    ):
        raise ValueError("pieces must share one offset set")
    for part in parts:
        w = part.witness
        if any(w[i] <= w[i + 1] for i in range(part.spec.n - 1)):
            raise NotInFundamentalChamber(
                "witness coordinates must strictly decrease"
            )
        if level(part) != 1:
            raise ValueError("every piece must have level 1")
    gap = spec0.offsets[0] + 1
    shifts = [Fraction(0)] * len(parts)
    for j in range(len(parts) - 2, -1, -1):
        below_top = parts[j + 1].witness[0] + shifts[j + 1]
        own_bottom = parts[j].witness[-1]
        shifts[j] = below_top + gap - own_bottom
    joined: list[Fraction] = []
    for part, shift in zip(parts, shifts):
        joined.extend(c + shift for c in part.witness)
    total = sum(p.spec.n for p in parts)
    return region_of_point(ArrangementSpec.catalan(total, spec0.offsets), joined)


def phi_omega(region: Region) -> tuple[OrderedSetPartition, tuple[Region, ...]]:
    """Split a semiorder region along the components of its first graph.

    The components of the incomparability graph at the largest offset are
    totally ordered by coordinate size; listed from the lowest up, they form
    an ordered set partition of the indices, and restricting the witness to
    each block gives a level-1 region over that block.
    """
    spec = region.spec
    if spec.kind is not Kind.SEMIORDER:
        raise ValueError("component splitting is defined for semiorder regions")
    g1 = incomparability(interval_orders(region).posets[0])
    blocks = g1.ordered_components()
    partition = OrderedSetPartition(blocks)
    parts = []
    for block in blocks:
        sub = ArrangementSpec.semiorder(len(block), spec.offsets)
        parts.append(region_of_point(sub, tuple(region.witness[i - 1] for i in block)))
    assert all(level(p) == 1 for p in parts), "every block must be level 1"
    return partition, tuple(parts)
