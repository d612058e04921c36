"""m-Dyck paths, tableau insertion, and the map onto m-Catalan regions.

An m-Dyck path's height increments feed a multiset of row numbers into a
growing Young tableau; reading the finished tableau column by column yields
a nested tuple of ordinary Dyck paths, and labeling that tuple with a
permutation pins down one region of the arrangement with offsets 1..m.
Composed with the region census this realizes the counting identity
r = n!/((m+1)n+1) * binom((m+1)n+1, n) one preimage at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .arrangement import ArrangementSpec, Infeasible, Region
from .dyckmodel import DyckPath, DyckTuple, tuple_feasible


class NoFeasibleTableau(Exception):
    """No corner choice completes to a region-feasible tableau.

    Every valid path admits a feasible completion, so seeing this raised
    means a bug, not a bad input.
    """


@dataclass(frozen=True)
class MDyckPath:
    """Lattice path with n east and m*n south steps, by its height sequence.

    heights[i-1] counts the south steps strictly left of the i-th east step,
    so the sequence starts at 0, never decreases, and stays within m*(i-1).
    """

    n: int
    m: int
    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError("need n >= 1 and m >= 1")
        heights = tuple(int(h) for h in self.heights)
        object.__setattr__(self, "heights", heights)
        if len(heights) != self.n:
            raise ValueError("need one height per east step")
        if heights[0] != 0:
            raise ValueError("height sequence must start at 0")
        for i, h in enumerate(heights, start=1):
            if not 0 <= h <= self.m * (i - 1):
                raise ValueError(f"height {h} out of range at position {i}")
        if any(a > b for a, b in zip(heights, heights[1:])):
            raise ValueError("heights must be nondecreasing")

    def increments(self) -> tuple[int, ...]:
        """d_i = heights[i] - heights[i-1] for i = 2..n."""
        return tuple(
            b - a for a, b in zip(self.heights, self.heights[1:])
        )

    def insertion_multiset(self) -> tuple[int, ...]:
        """Row numbers 2..n, each repeated by its increment, nondecreasing."""
        out = []
        for value, d in enumerate(self.increments(), start=2):
            out.extend([value] * d)
        return tuple(out)

    def as_json_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "heights": list(self.heights)}


def enumerate_m_dyck(
    n: int, m: int, max_paths: int = 1_000_000
) -> tuple[MDyckPath, ...]:
    """All height sequences for the given shape, lexicographically.

    Raises ValueError past `max_paths` results; the count grows like the
    order-1 Raney number, so the default bound covers desk-scale inputs.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    out: list[MDyckPath] = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == n:
            if len(out) >= max_paths:
                raise ValueError(f"more than {max_paths} paths")
            out.append(MDyckPath(n, m, tuple(prefix)))
            return
        i = len(prefix) + 1
        for h in range(prefix[-1], m * (i - 1) + 1):
            prefix.append(h)
            extend(prefix)
            prefix.pop()

    extend([0])
    return tuple(out)


@dataclass(frozen=True)
class YoungTableau:
    """Left- and top-justified partial filling of an (n-1) x m grid.

    Rows and columns are nondecreasing and every entry is a row number in
    2..n.  The grid is stored row-major at full size with None in the
    unfilled cells.
    """

    rows: int
    columns: int
    grid: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self) -> None:
        grid = tuple(
            tuple(None if v is None else int(v) for v in row)
            for row in self.grid
        )
        object.__setattr__(self, "grid", grid)
        if len(grid) != self.rows or any(len(r) != self.columns for r in grid):
            raise ValueError("grid must fill the declared shape")
        lengths = []
        for row in grid:
            filled = [v for v in row if v is not None]
            if any(v is not None for v in row[len(filled):]):
                raise ValueError("rows must be left-justified")
            if any(a > b for a, b in zip(filled, filled[1:])):
                raise ValueError("row entries must be nondecreasing")
            if any(not 2 <= v <= self.rows + 1 for v in filled):
                raise ValueError("entries must be row numbers in 2..n")
            lengths.append(len(filled))
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise ValueError("row lengths must not grow downwards")
        for c in range(self.columns):
            col = [row[c] for row in grid if row[c] is not None]
            if any(a > b for a, b in zip(col, col[1:])):
                raise ValueError("column entries must be nondecreasing")

    def row_lengths(self) -> tuple[int, ...]:
        return tuple(
            sum(1 for v in row if v is not None) for row in self.grid
        )

    def entry(self, i: int, j: int) -> Optional[int]:
        """The value at row i, column j (1-based), None when unfilled."""
        return self.grid[i - 1][j - 1]

    def column_entries(self, c: int) -> tuple[int, ...]:
        return tuple(row[c - 1] for row in self.grid if row[c - 1] is not None)

    def entry_multiset(self) -> tuple[int, ...]:
        return tuple(
            sorted(v for row in self.grid for v in row if v is not None)
        )

    def as_json_dict(self) -> dict:
        return {"grid": [list(row) for row in self.grid]}


def _corners(row_fill: Sequence[int], columns: int) -> list[tuple[int, int]]:
    """Free cells whose upper and left neighbors are filled or boundary.

    1-based (row, column) pairs in top-to-bottom scan order; each eligible
    row contributes exactly the cell just past its filled prefix.
    """
    out = []
    for i, fill in enumerate(row_fill):
        if fill >= columns:
            continue
        if i > 0 and row_fill[i - 1] <= fill:
            continue
        out.append((i + 1, fill + 1))
    return out


def _scan_choice(
    corners: list[tuple[int, int]],
    grid: list[list[Optional[int]]],
    columns: int,
) -> tuple[int, int]:
    """The corner the single-pass scan rule prefers.

    Starting from the topmost corner, each later corner (i_p, j_p) either
    leaves the candidate alone — when the candidate row holds the value i_p
    at column j - j_p — or takes its place.  Out-of-grid or empty probe
    cells never match.
    """
    i, j = corners[0]
    for ip, jp in corners[1:]:
        probe = j - jp
        value = grid[i - 1][probe - 1] if 1 <= probe <= columns else None
        if value != ip:
            i, j = ip, jp
    return (i, j)


def tableau_insert(path: MDyckPath) -> YoungTableau:
    """Grow the tableau of a path by inserting its height increments.

    Each row number from the path's insertion multiset lands on an outer
    corner: the scan rule proposes one, and a depth-first search over the
    remaining corners (in scan order) guards the choice, accepting only
    completions whose column-wise path tuple is region-feasible.  The first
    feasible completion is returned, making the result deterministic.
    """
    n, m = path.n, path.m
    values = path.insertion_multiset()
    grid: list[list[Optional[int]]] = [[None] * m for _ in range(n - 1)]
    row_fill = [0] * (n - 1)
    if not values:
        return YoungTableau(n - 1, m, tuple(tuple(row) for row in grid))

    spec = ArrangementSpec.catalan(n, list(range(m, 0, -1)))
    identity = tuple(range(1, n + 1))

    def feasible_completion() -> bool:
        tableau = YoungTableau(n - 1, m, tuple(tuple(row) for row in grid))
        try:
            tup = tableau_to_tuple(tableau, n, m)
            tuple_feasible(tup.with_label(identity), spec)
        except (Infeasible, ValueError):
            return False
        return True

    def place(t: int) -> bool:
        if t == len(values):
            return feasible_completion()
        corners = _corners(row_fill, m)
        preferred = _scan_choice(corners, grid, m)
        ordered = [preferred] + [c for c in corners if c != preferred]
        for i, j in ordered:
            grid[i - 1][j - 1] = values[t]
            row_fill[i - 1] += 1
            if place(t + 1):
                return True
            grid[i - 1][j - 1] = None
            row_fill[i - 1] -= 1
        return False

    if not place(0):
        raise NoFeasibleTableau(
            f"no corner choices complete heights {path.heights}"
        )
    return YoungTableau(n - 1, m, tuple(tuple(row) for row in grid))


def height_rows(tableau: YoungTableau, n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Row k counts, per threshold j, the column-(m-k+1) entries not above j."""
    if tableau.rows != n - 1 or tableau.columns != m:
        raise ValueError("tableau shape must be (n-1) x m")
    rows = []
    for k in range(1, m + 1):
        entries = tableau.column_entries(m - k + 1)
        rows.append(
            tuple(sum(1 for v in entries if v <= j) for j in range(1, n + 1))
        )
    return tuple(rows)


def tableau_to_tuple(tableau: YoungTableau, n: int, m: int) -> DyckTuple:
    """Read the tableau's columns as height vectors of a nested path tuple.

    Column m (the sparsest) feeds the first path, column 1 the last, so the
    plus-counts nest the way a region's sign data does.
    """
    paths = tuple(
        DyckPath.from_heights(row) for row in height_rows(tableau, n, m)
    )
    return DyckTuple(paths)


def m_dyck_to_region(path: MDyckPath, pi: Sequence[int]) -> Region:
    """The region of the 1..m offset arrangement behind (path, label)."""
    tableau = tableau_insert(path)
    tup = tableau_to_tuple(tableau, path.n, path.m)
    spec = ArrangementSpec.catalan(path.n, list(range(path.m, 0, -1)))
    return tuple_feasible(tup.with_label(pi), spec)
