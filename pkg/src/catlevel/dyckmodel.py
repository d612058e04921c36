"""The combinatorial side of the chamber dictionary.

Every chamber of a difference arrangement is encoded by sign data: for each
offset a_k, the matrix of signs of x_{pi(i)} - x_{pi(j)} - a_k over the
witness sorted into descending order.  Those matrices are staircases, hence
Dyck paths; the chamber's level (recession-cone dimension) is readable from
the first path's prime decomposition, or equivalently from the component
count of an incomparability graph.  This module holds the encodings, the
partition calculus on permutations that controls relabelings, and the
reverse map from a path tuple back to a chamber via the constraint solver.

Permutations are tuples (pi(1), ..., pi(n)) of 1-based values throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .arrangement import (
    ArrangementSpec,
    DifferenceConstraint,
    Kind,
    Region,
    feasible,
    region_of_point,
)


class BraidUnsupported(Exception):
    """The path/graph model needs at least one offset; m = 0 has none."""


def _check_permutation(label: Sequence[int], n: int) -> tuple[int, ...]:
    word = tuple(label)
    if sorted(word) != list(range(1, n + 1)):
        raise ValueError(f"{word} is not a permutation of 1..{n}")
    return word


# ---------------------------------------------------------------------------
# paths and sign matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DyckPath:
    """Staircase path from (0, n) to (n, 0) staying weakly above y = n - x.

    Canonical form is the vector of row plus-counts alpha_1 >= ... >= alpha_n
    with alpha_i <= n - i; the E/S step string and the height vector are
    derived views.  South step i sits at x = n - alpha_i.
    """

    n: int
    plus_counts: tuple[int, ...]

    def __post_init__(self) -> None:
        alpha = tuple(int(a) for a in self.plus_counts)
        object.__setattr__(self, "plus_counts", alpha)
        if len(alpha) != self.n:
            raise ValueError("need one plus-count per row")
        for i, a in enumerate(alpha, start=1):
            if not 0 <= a <= self.n - i:
                raise ValueError(f"plus count {a} out of range at row {i}")
        if any(alpha[i] < alpha[i + 1] for i in range(self.n - 1)):
            raise ValueError("plus counts must be nonincreasing")

    @classmethod
    def from_heights(cls, heights: Sequence[int]) -> "DyckPath":
        """Build from the height vector h_j = #{i : alpha_i > n - j}."""
        h = tuple(int(x) for x in heights)
        n = len(h)
        alpha = tuple(sum(1 for hj in h if hj >= i) for i in range(1, n + 1))
        return cls(n, alpha)

    def heights(self) -> tuple[int, ...]:
        n = self.n
        return tuple(
            sum(1 for a in self.plus_counts if a > n - j) for j in range(1, n + 1)
        )

    def step_string(self) -> str:
        """The E/S word read along the path."""
        by_column: dict[int, int] = {}
        for i, a in enumerate(self.plus_counts, start=1):
            by_column.setdefault(self.n - a, 0)
            by_column[self.n - a] += 1
        out = []
        for j in range(1, self.n + 1):
            out.append("E")
            out.extend("S" * by_column.get(j, 0))
        return "".join(out)

    def touch_points(self) -> tuple[int, ...]:
        """Interior columns where the path returns to the diagonal."""
        return tuple(
            c for c in range(1, self.n) if self.plus_counts[c - 1] == self.n - c
        )

    def is_prime(self) -> bool:
        return not self.touch_points()


def prime_components(path: DyckPath) -> int:
    """Number of prime factors of the path (diagonal touches plus one)."""
    return 1 + len(path.touch_points())


@dataclass(frozen=True)
class LabeledDyckPath:
    """A Dyck path whose E/S step pairs carry the labels pi(1)..pi(n)."""

    path: DyckPath
    label: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "label", _check_permutation(self.label, self.path.n)
        )


@dataclass(frozen=True)
class SignMatrix:
    """Signs of v_i - v_j - a for one offset a and descending values v.

    Entries are booleans (True means "+").  The diagonal is all minus, each
    row flips minus-to-plus once left to right, the row plus-counts weakly
    decrease, and every plus sits strictly above the diagonal — the
    staircase shape that makes the matrix a Dyck path.
    """

    n: int
    entries: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(bool(e) for e in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.n or any(len(r) != self.n for r in entries):
            raise ValueError("entries must be an n x n grid")
        prev = self.n
        for i, row in enumerate(entries):
            if row[i]:
                raise ValueError("diagonal entries must be minus")
            count = sum(row)
            if count and not all(row[self.n - count:]):
                raise ValueError(f"row {i + 1} is not minus-then-plus")
            if count > self.n - (i + 1):
                raise ValueError(f"row {i + 1} has a plus on or below the diagonal")
            if count > prev:
                raise ValueError("row plus-counts must weakly decrease")
            prev = count

    def plus_count(self, i: int) -> int:
        return sum(self.entries[i - 1])

    def row_plus_counts(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.entries)

    def symbol(self, i: int, j: int) -> str:
        return "+" if self.entries[i - 1][j - 1] else "-"

    def __str__(self) -> str:
        return "\n".join(
            " ".join("+" if e else "-" for e in row) for row in self.entries
        )


def matrix_to_dyck(matrix: SignMatrix) -> DyckPath:
    """Row plus-counts of a staircase matrix, as a path."""
    return DyckPath(matrix.n, matrix.row_plus_counts())


@dataclass(frozen=True)
class DyckTuple:
    """One path per offset, sparsest first, under a shared optional label.

    The paths are nested: the offsets decrease along the tuple, so the plus
    set for path k is contained in the plus set for path k+1.
    """

    paths: tuple[DyckPath, ...]
    label: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        paths = tuple(self.paths)
        object.__setattr__(self, "paths", paths)
        if not paths:
            raise ValueError("a tuple needs at least one path")
        n = paths[0].n
        if any(p.n != n for p in paths):
            raise ValueError("all paths must have the same size")
        for k in range(len(paths) - 1):
            a, b = paths[k].plus_counts, paths[k + 1].plus_counts
            if any(x > y for x, y in zip(a, b)):
                raise ValueError(
                    f"paths {k + 1} and {k + 2} are not nested: {a} vs {b}"
                )
        if self.label is not None:
            object.__setattr__(self, "label", _check_permutation(self.label, n))

    @property
    def n(self) -> int:
        return self.paths[0].n

    @property
    def m(self) -> int:
        return len(self.paths)

    def with_label(self, label: Sequence[int]) -> "DyckTuple":
        return DyckTuple(self.paths, tuple(label))

    def labeled_paths(self) -> tuple[LabeledDyckPath, ...]:
        if self.label is None:
            raise ValueError("tuple carries no label")
        return tuple(LabeledDyckPath(p, self.label) for p in self.paths)

    def as_json_dict(self) -> dict:
        return {
            "label": None if self.label is None else list(self.label),
            "alphas": [list(p.plus_counts) for p in self.paths],
        }


# ---------------------------------------------------------------------------
# chamber -> sign data
# ---------------------------------------------------------------------------


def chamber_permutation(
    witness: Sequence, kind: Kind
) -> tuple[int, ...]:
    """Descending sort order of the witness coordinates.

    The catalan kind forbids ties outright (the witness avoids every
    x_i = x_j wall); the semiorder kind breaks ties toward the smaller
    original index.
    """
    n = len(witness)
    order = sorted(range(1, n + 1), key=lambda i: (-witness[i - 1], i))
    if kind is Kind.CATALAN:
        values = sorted((witness[i - 1] for i in range(1, n + 1)), reverse=True)
        if any(values[t] == values[t + 1] for t in range(n - 1)):
            raise ValueError("tied coordinates cannot occur off the x_i = x_j walls")
    return tuple(order)


def sign_matrices(region: Region) -> tuple[tuple[int, ...], tuple[SignMatrix, ...]]:
    """The region's permutation and per-offset sign matrices.

    Entry (i, j) of matrix k is the sign of x_{pi(i)} - x_{pi(j)} - a_k at
    the witness; the result does not depend on which interior point is used.
    """
    spec = region.spec
    if spec.m == 0:
        raise BraidUnsupported("no offsets, so no sign matrices")
    pi = chamber_permutation(region.witness, spec.kind)
    v = [region.witness[p - 1] for p in pi]
    matrices = []
    for a in spec.offsets:
        rows = []
        for i in range(spec.n):
            row = []
            for j in range(spec.n):
                diff = v[i] - v[j]
                if diff == a:
                    raise ValueError("witness lies on a hyperplane")
                row.append(diff > a)
            rows.append(tuple(row))
        matrices.append(SignMatrix(spec.n, tuple(rows)))
    return pi, tuple(matrices)


def dyck_tuple(region: Region) -> DyckTuple:
    """The region's nested labeled path tuple (sparsest path first)."""
    pi, matrices = sign_matrices(region)
    return DyckTuple(tuple(matrix_to_dyck(m) for m in matrices), pi)


# ---------------------------------------------------------------------------
# interval orders and incomparability graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poset:
    """A strict partial order on 1..n, stored as its relation set."""

    n: int
    relation: frozenset

    def __post_init__(self) -> None:
        rel = frozenset((int(a), int(b)) for a, b in self.relation)
        object.__setattr__(self, "relation", rel)
        for a, b in rel:
            if not (1 <= a <= self.n and 1 <= b <= self.n) or a == b:
                raise ValueError(f"bad related pair ({a}, {b})")
            if (b, a) in rel:
                raise ValueError(f"both ({a},{b}) and ({b},{a}) present")

    def less(self, a: int, b: int) -> bool:
        return (a, b) in self.relation

    def down_set(self, b: int) -> frozenset:
        """Everything strictly below b."""
        return frozenset(a for a in range(1, self.n + 1) if self.less(a, b))

    def up_set(self, a: int) -> frozenset:
        """Everything strictly above a."""
        return frozenset(b for b in range(1, self.n + 1) if self.less(a, b))


@dataclass(frozen=True)
class IntervalOrderTuple:
    """One poset per offset: i comes before j when x_j - x_i > a_k."""

    posets: tuple[Poset, ...]

    def __post_init__(self) -> None:
        if not self.posets:
            raise ValueError("need at least one poset")
        if any(p.n != self.posets[0].n for p in self.posets):
            raise ValueError("posets must share a ground set")


@dataclass(frozen=True)
class IncomparabilityGraph:
    """Edges join pairs that are incomparable in the source poset.

    The components of this graph inherit a total order from the poset
    (every element of one component is below every element of a later one),
    which `ordered_components` materializes and asserts.
    """

    poset: Poset

    @property
    def n(self) -> int:
        return self.poset.n

    def edges(self) -> frozenset:
        rel = self.poset.relation
        return frozenset(
            (a, b)
            for a in range(1, self.n + 1)
            for b in range(a + 1, self.n + 1)
            if (a, b) not in rel and (b, a) not in rel
        )

    def components(self) -> tuple[frozenset, ...]:
        """Connected components, listed by smallest element."""
        adjacency = {v: set() for v in range(1, self.n + 1)}
        for a, b in self.edges():
            adjacency[a].add(b)
            adjacency[b].add(a)
        seen: set[int] = set()
        out = []
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                w = stack.pop()
                if w in comp:
                    continue
                comp.add(w)
                stack.extend(adjacency[w] - comp)
            seen |= comp
            out.append(frozenset(comp))
        return tuple(out)

    def ordered_components(self) -> tuple[tuple[int, ...], ...]:
        """Components sorted ascending along the poset's induced total order."""
        comps = self.components()
        rel = self.poset.relation

        def below_count(comp: frozenset) -> int:
            count = 0
            for other in comps:
                if other is comp:
                    continue
                if any((a, b) in rel for a in other for b in comp):
                    count += 1
            return count

        ranked = sorted(comps, key=below_count)
        ranks = [below_count(c) for c in ranked]
        assert ranks == list(range(len(comps))), (
            "components are not totally ordered"
        )
        return tuple(tuple(sorted(c)) for c in ranked)


def interval_orders(region: Region) -> IntervalOrderTuple:
    """The region's per-offset posets on the original coordinate indices."""
    spec = region.spec
    if spec.m == 0:
        raise BraidUnsupported("no offsets, so no interval orders")
    x = region.witness
    posets = []
    for a in spec.offsets:
        rel = frozenset(
            (i, j)
            for i in range(1, spec.n + 1)
            for j in range(1, spec.n + 1)
            if i != j and x[j - 1] - x[i - 1] > a
        )
        posets.append(Poset(spec.n, rel))
    return IntervalOrderTuple(tuple(posets))


def incomparability(poset: Poset) -> IncomparabilityGraph:
    return IncomparabilityGraph(poset)


def omega(graph: IncomparabilityGraph) -> int:
    """Component count of an incomparability graph."""
    return len(graph.components())


def level(region: Region) -> int:
    """The region's level, from the combinatorial model.

    Catalan kind: prime-component count of the sparsest path.  Semiorder
    kind: component count of the sparsest offset's incomparability graph,
    cross-checked against the path formula (the two theorems must agree).
    """
    spec = region.spec
    if spec.m == 0:
        raise BraidUnsupported("level model needs at least one offset")
    tup = dyck_tuple(region)
    by_path = prime_components(tup.paths[0])
    if spec.kind is Kind.CATALAN:
        return by_path
    by_graph = omega(incomparability(interval_orders(region).posets[0]))
    assert by_graph == by_path, (
        f"graph level {by_graph} != path level {by_path} on {region.short_label()}"
    )
    return by_graph


# ---------------------------------------------------------------------------
# partitions of permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermutationPartition:
    """A permutation's word cut into consecutive blocks.

    In the refinement order used here, "finer" means more cuts; the meet of
    two partitions of the same word cuts at the union of their boundaries.
    Two partitions are equivalent when corresponding blocks hold the same
    element sets (the order inside each block being free).
    """

    base: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        base = _check_permutation(self.base, len(self.base))
        object.__setattr__(self, "base", base)
        blocks = tuple(tuple(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if tuple(itertools.chain.from_iterable(blocks)) != base:
            raise ValueError("blocks must concatenate to the base word")
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")

    @classmethod
    def from_boundaries(
        cls, base: Sequence[int], cuts: Sequence[int]
    ) -> "PermutationPartition":
        """Cut the word after each position in `cuts` (1-based positions)."""
        word = tuple(base)
        edges = sorted(set(cuts))
        if any(not 1 <= c <= len(word) - 1 for c in edges):
            raise ValueError("cut positions must be interior")
        blocks = []
        start = 0
        for c in edges:
            blocks.append(word[start:c])
            start = c
        blocks.append(word[start:])
        return cls(word, tuple(blocks))

    def boundaries(self) -> frozenset:
        cuts = []
        pos = 0
        for block in self.blocks[:-1]:
            pos += len(block)
            cuts.append(pos)
        return frozenset(cuts)

    def refines(self, other: "PermutationPartition") -> bool:
        """Is every block of self inside a block of other (same word)?"""
        if self.base != other.base:
            return False
        return other.boundaries() <= self.boundaries()

    def equivalent(self, other: "PermutationPartition") -> bool:
        """Same block sizes and the same element set in each block."""
        if len(self.blocks) != len(other.blocks):
            return False
        return all(
            set(a) == set(b) for a, b in zip(self.blocks, other.blocks)
        )

    def __str__(self) -> str:
        return "|".join("".join(str(x) for x in block) for block in self.blocks)


def induced_partition(labeled: LabeledDyckPath) -> PermutationPartition:
    """Blocks of indices whose E steps share a row and S steps a column.

    Index t and t+1 stay together exactly when no south step separates
    their east steps and their south steps sit at the same x-coordinate.
    """
    path, word = labeled.path, labeled.label
    n = path.n
    alpha = path.plus_counts
    souths_before = [
        sum(1 for a in alpha if a >= n - j + 1) for j in range(1, n + 1)
    ]
    cuts = [
        t
        for t in range(1, n)
        if souths_before[t] != souths_before[t - 1] or alpha[t] != alpha[t - 1]
    ]
    return PermutationPartition.from_boundaries(word, cuts)


def partition_meet(
    p: PermutationPartition, q: PermutationPartition
) -> PermutationPartition:
    """Common refinement: cut at the union of both boundary sets."""
    if p.base != q.base:
        raise ValueError("cannot meet partitions of different words")
    return PermutationPartition.from_boundaries(
        p.base, sorted(p.boundaries() | q.boundaries())
    )


def region_partition(region: Region) -> PermutationPartition:
    """Meet of the partitions induced by all of the region's labeled paths."""
    tup = dyck_tuple(region)
    partitions = [induced_partition(lp) for lp in tup.labeled_paths()]
    out = partitions[0]
    for part in partitions[1:]:
        out = partition_meet(out, part)
    return out


def label_class(region: Region) -> frozenset:
    """All permutations that label the region (semiorder kind).

    Every word obtained by permuting elements inside the blocks of the
    region's partition is a valid label; the class size is the product of
    the block factorials.
    """
    if region.spec.kind is not Kind.SEMIORDER:
        raise ValueError("label classes are a semiorder-kind notion")
    partition = region_partition(region)
    choices = [
        sorted(itertools.permutations(block)) for block in partition.blocks
    ]
    return frozenset(
        tuple(itertools.chain.from_iterable(combo))
        for combo in itertools.product(*choices)
    )


# ---------------------------------------------------------------------------
# tuple -> chamber
# ---------------------------------------------------------------------------


def tuple_feasible(tup: DyckTuple, spec: ArrangementSpec) -> Region:
    """Find the chamber with the given sign data, or raise Infeasible.

    The tuple's sign cells translate to strict difference constraints and
    the label to an ordering chain (strict throughout for the catalan kind;
    for the semiorder kind, weak precisely where consecutive labels ascend,
    since only those ties respect the tie-break rule).  A nested tuple can
    still be contradictory — the solver decides.
    """
    if tup.label is None:
        raise ValueError("tuple must carry a label")
    if tup.m != spec.m or tup.n != spec.n:
        raise ValueError("tuple shape does not match the spec")
    pi = tup.label
    n = spec.n
    constraints: list[DifferenceConstraint] = []
    for t in range(n - 1):
        hi, lo = pi[t], pi[t + 1]
        if spec.kind is Kind.CATALAN or hi > lo:
            constraints.append(DifferenceConstraint.less_than(lo, hi, 0))
        else:
            constraints.append(DifferenceConstraint.at_most(lo, hi, 0))
    for path, a in zip(tup.paths, spec.offsets):
        alpha = path.plus_counts
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if j > n - alpha[i - 1]:
                    constraints.append(
                        DifferenceConstraint.greater_than(pi[i - 1], pi[j - 1], a)
                    )
                else:
                    constraints.append(
                        DifferenceConstraint.less_than(pi[i - 1], pi[j - 1], a)
                    )
    witness = feasible(constraints, n)
    return region_of_point(spec, witness)
