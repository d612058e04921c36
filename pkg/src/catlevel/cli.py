"""Command-line frontend: censuses, regions, polynomials, demos, checks.

Every subcommand prints deterministically — identical argv gives
byte-identical output.  Rationals are written "p/q" (never decimals) both
on the way in and on the way out.  Exit codes: 0 success or all checks
passed, 1 a verification check failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import (
    ArrangementSpec,
    Infeasible,
    Kind,
    OnHyperplane,
    char_poly_finite_field,
    enumerate_regions,
    recession_cone_dim,
    region_of_point,
)
from .bijections import CycleForm, expanded_witness, phi, phi_inverse
from .dyckmodel import DyckPath, DyckTuple, dyck_tuple, level
from .exactnum import RaneyDomainError
from .mcatalan import (
    MDyckPath,
    height_rows,
    tableau_insert,
    tableau_to_tuple,
)
from .verify import (
    CensusCache,
    VerificationReport,
    check_binomial_identity,
    check_charpoly_transition,
    check_egf_power,
    check_mcat_census,
    check_raney_series,
    check_stirling_convolution,
    probe_polynomiality,
    render_reports,
    reports_jsonl,
)


class _UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q'; decimal points are rejected on purpose."""
    text = text.strip()
    if "." in text:
        raise _UsageError(
            f"offset {text!r}: decimals are not accepted, use p/q"
        )
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"not a rational: {text!r}") from exc


def _parse_offsets(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise _UsageError("offsets must be a nonempty comma-separated list")
    values = tuple(_rational(p) for p in parts)
    if any(v <= 0 for v in values):
        raise _UsageError("offsets must be positive")
    if any(a <= b for a, b in zip(values, values[1:])):
        decreasing = ",".join(
            str(v) for v in sorted(set(values), reverse=True)
        )
        raise _UsageError(
            f"offsets must be strictly decreasing (try: {decreasing})"
        )
    return values


def _parse_point(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise _UsageError("point must be a nonempty comma-separated list")
    return tuple(_rational(p) for p in parts)


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise _UsageError(f"{what} must be comma-separated integers") from exc


def _parse_cycles(text: str) -> CycleForm:
    """Cycles separated by '|', elements by ',': e.g. '3|4,1|5|6|7,2'."""
    try:
        cycles = tuple(
            tuple(int(v) for v in block.split(","))
            for block in text.split("|")
        )
    except ValueError as exc:
        raise _UsageError(f"bad cycle list {text!r}") from exc
    try:
        return CycleForm(cycles)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _check_workers_env() -> None:
    """Validate CATLEVEL_WORKERS when set.

    The value is accepted for forward compatibility; the enumerators here
    run sequentially regardless, so any positive count behaves the same.
    """
    raw = os.environ.get("CATLEVEL_WORKERS")
    if raw is None:
        return
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(f"CATLEVEL_WORKERS must be an integer, got {raw!r}")
    if value < 1:
        raise _UsageError(f"CATLEVEL_WORKERS must be positive, got {value}")


def render_path(tup: "DyckTuple | DyckPath") -> str:
    """ASCII picture of a path tuple: labeled steps plus a staircase grid.

    Each path renders as its E/S step sequence (easts numbered left to
    right, souths in path order) above an underscore-and-pipe staircase.
    Inputs wider than 40 columns get a one-line summary per path instead.
    """
    paths = tup.paths if isinstance(tup, DyckTuple) else (tup,)
    blocks = []
    for k, path in enumerate(paths, start=1):
        n = path.n
        header = f"path {k}:" if len(paths) > 1 else "path:"
        if n > 40:
            blocks.append(
                f"{header} n={n} plus_counts={path.plus_counts[:8]}..."
            )
            continue
        columns = [n - a for a in path.plus_counts]
        labels = []
        south = 0
        for j in range(1, n + 1):
            labels.append(f"E{j}")
            while south < n and columns[south] == j:
                south += 1
                labels.append(f"S{south}")
        canvas = [[" "] * (3 * n + 1) for _ in range(n + 1)]
        height = 0
        for j in range(1, n + 1):
            canvas[height][3 * (j - 1) + 1] = "_"
            canvas[height][3 * (j - 1) + 2] = "_"
            while height < n and columns[height] == j:
                height += 1
                canvas[height][3 * j] = "|"
        grid = "\n".join("".join(row).rstrip() for row in canvas if any(
            c != " " for c in row
        ))
        blocks.append(f"{header} {' '.join(labels)}\n{grid}")
    return "\n".join(blocks)


def _spec_from_args(args: argparse.Namespace, n: int) -> ArrangementSpec:
    offsets = _parse_offsets(args.offsets)
    return ArrangementSpec(n, offsets, Kind(args.kind))


def _emit_json(payload: dict, out) -> None:
    print(json.dumps(payload, sort_keys=True), file=out)


def _cmd_census(args: argparse.Namespace, out) -> int:
    spec = _spec_from_args(args, args.n)
    cache = CensusCache()
    if args.per_chamber:
        if spec.kind is not Kind.CATALAN:
            raise _UsageError("--per-chamber applies to the catalan kind only")
        counts = cache.chamber_counts(spec.n, spec.offsets)
    else:
        counts = cache.counts(spec.kind, spec.n, spec.offsets)
    if args.use_oracle:
        for region in enumerate_regions(spec):
            model = level(region)
            cone = recession_cone_dim(region)
            if model != cone:
                print(
                    f"oracle mismatch: {region.short_label()} "
                    f"model={model} cone={cone}",
                    file=sys.stderr,
                )
                return 1
    payload = {
        "n": spec.n,
        "kind": str(spec.kind),
        "offsets": [str(a) for a in spec.offsets],
        "counts": {str(k): v for k, v in sorted(counts.items()) if v},
        "total": sum(counts.values()),
    }
    if args.per_chamber:
        payload["per_chamber"] = True
    if args.format == "json":
        _emit_json(payload, out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["kind", "n", "offsets", "level", "count"])
        offsets_text = ",".join(str(a) for a in spec.offsets)
        for lev, count in sorted(counts.items()):
            if count:
                writer.writerow([str(spec.kind), spec.n, offsets_text, lev, count])
        out.write(buf.getvalue())
    else:
        title = "chambers" if args.per_chamber else "regions"
        print(f"{spec.kind} n={spec.n} offsets={args.offsets} ({title})", file=out)
        for lev, count in sorted(counts.items()):
            if count:
                print(f"  level {lev}: {count}", file=out)
        print(f"  total: {sum(counts.values())}", file=out)
    return 0


def _cmd_regions(args: argparse.Namespace, out) -> int:
    spec = _spec_from_args(args, args.n)
    regions = enumerate_regions(spec)
    rows = []
    for region in regions:
        lev = level(region)
        if args.level is not None and lev != args.level:
            continue
        rows.append((region, lev))
    if args.format == "json":
        payload = {
            "n": spec.n,
            "kind": str(spec.kind),
            "offsets": [str(a) for a in spec.offsets],
            "count": len(rows),
            "regions": [
                dict(region.as_json_dict(), level=lev) for region, lev in rows
            ],
        }
        _emit_json(payload, out)
    else:
        for region, lev in rows:
            witness = ",".join(str(x) for x in region.witness)
            print(f"level {lev}  [{witness}]  {region.short_label()}", file=out)
        print(f"total: {len(rows)}", file=out)
    return 0


def _cmd_charpoly(args: argparse.Namespace, out) -> int:
    spec = _spec_from_args(args, args.n)
    poly = char_poly_finite_field(spec)
    if args.format == "json":
        _emit_json(
            {
                "n": spec.n,
                "kind": str(spec.kind),
                "offsets": [str(a) for a in spec.offsets],
                "coefficients": [str(c) for c in poly.coefficients],
                "text": str(poly),
            },
            out,
        )
    else:
        print(str(poly), file=out)
    return 0


def _verify_reports(args: argparse.Namespace) -> list[VerificationReport]:
    offsets = _parse_offsets(args.offsets)
    cache = CensusCache()
    n_max = args.n_max
    reports: list[VerificationReport] = []
    picked = args.identity

    def is_initial_segment() -> bool:
        m = len(offsets)
        return offsets == tuple(Fraction(v) for v in range(m, 0, -1))

    if picked in ("stirling", "all"):
        reports.append(check_stirling_convolution(offsets, n_max, cache))
    if picked in ("binomial", "all"):
        reports.append(check_binomial_identity(offsets, n_max, cache))
    if picked in ("egf", "all"):
        reports.append(check_egf_power(offsets, n_max, cache))
    if picked in ("charpoly", "all"):
        cap = min(n_max, 3) if picked == "all" else n_max
        for kind in (Kind.CATALAN, Kind.SEMIORDER):
            reports.append(
                check_charpoly_transition(offsets, kind, cap, cache)
            )
    if picked == "mcat" or (picked == "all" and is_initial_segment()):
        reports.append(check_mcat_census(n_max, len(offsets), cache))
    if picked in ("raney", "all"):
        reports.append(
            check_raney_series(args.m_max, args.level_max, args.order)
        )
    if picked == "probe":
        levels = _parse_ints(args.levels, "--levels")
        reports.append(
            probe_polynomiality(
                offsets, Kind(args.kind), args.n, levels, cache
            )
        )
    return reports


def _cmd_verify(args: argparse.Namespace, out) -> int:
    reports = _verify_reports(args)
    if args.format == "json":
        text = reports_jsonl(reports)
    else:
        text = render_reports(reports)
    if text:
        print(text, file=out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_tableau(args: argparse.Namespace, out) -> int:
    heights = _parse_ints(args.heights, "--heights")
    try:
        path = MDyckPath(args.n, args.m, heights)
    except ValueError as exc:
        raise _UsageError(str(exc))
    tableau = tableau_insert(path)
    rows = height_rows(tableau, path.n, path.m)
    tup = tableau_to_tuple(tableau, path.n, path.m)
    region = None
    label: Optional[tuple[int, ...]] = None
    if args.label:
        label = _parse_ints(args.label, "--label")
        from .mcatalan import m_dyck_to_region

        try:
            region = m_dyck_to_region(path, label)
        except ValueError as exc:
            raise _UsageError(str(exc))
    if args.format == "json":
        payload = {
            "path": path.as_json_dict(),
            "tableau": tableau.as_json_dict()["grid"],
            "height_rows": [list(r) for r in rows],
            "plus_counts": [list(p.plus_counts) for p in tup.paths],
        }
        if region is not None:
            payload["label"] = list(label)
            payload["region"] = region.as_json_dict()
        _emit_json(payload, out)
    else:
        print(f"heights: {','.join(str(h) for h in path.heights)}", file=out)
        print("tableau:", file=out)
        for row in tableau.grid:
            filled = [str(v) for v in row if v is not None]
            print("  " + (" ".join(filled) if filled else "-"), file=out)
        print("height rows:", file=out)
        for r in rows:
            print("  " + " ".join(str(v) for v in r), file=out)
        print(render_path(tup), file=out)
        if region is not None:
            witness = ",".join(str(x) for x in region.witness)
            print(f"region witness: [{witness}]", file=out)
            print(f"level: {level(region)}", file=out)
    return 0


def _cmd_phi_demo(args: argparse.Namespace, out) -> int:
    omega = _parse_cycles(args.cycles)
    offsets = _parse_offsets(args.offsets)
    witness = _parse_point(args.witness)
    spec = ArrangementSpec.semiorder(len(witness), offsets)
    if spec.n != omega.cycle_count:
        raise _UsageError(
            f"witness has {spec.n} coordinates but the cycle form has "
            f"{omega.cycle_count} cycles"
        )
    try:
        base = region_of_point(spec, witness)
    except (OnHyperplane, Infeasible) as exc:
        raise _UsageError(str(exc))
    epsilon = _rational(args.epsilon) if args.epsilon else None
    try:
        expanded = expanded_witness(omega, base, epsilon)
        image = phi(omega, base, epsilon)
    except ValueError as exc:
        raise _UsageError(str(exc))
    back_omega, back_region = phi_inverse(image)
    round_trip = back_omega == omega and back_region == base
    if args.format == "json":
        _emit_json(
            {
                "omega": omega.as_json_dict(),
                "offsets": [str(a) for a in offsets],
                "base_region": base.as_json_dict(),
                "base_level": level(base),
                "expanded_point": [str(x) for x in expanded],
                "image_region": image.as_json_dict(),
                "image_level": level(image),
                "round_trip": round_trip,
            },
            out,
        )
    else:
        print(f"omega: {omega}", file=out)
        print(f"base region: {base.short_label()}", file=out)
        print(f"base level: {level(base)}", file=out)
        print(
            "expanded point: "
            + ",".join(str(x) for x in expanded),
            file=out,
        )
        print(f"image region: {image.short_label()}", file=out)
        print(f"image level: {level(image)}", file=out)
        print(f"round trip: {'ok' if round_trip else 'MISMATCH'}", file=out)
    return 0 if round_trip else 1


def _cmd_level(args: argparse.Namespace, out) -> int:
    witness = _parse_point(args.witness)
    spec = ArrangementSpec(len(witness), _parse_offsets(args.offsets), Kind(args.kind))
    try:
        region = region_of_point(spec, witness)
    except (OnHyperplane, Infeasible) as exc:
        raise _UsageError(str(exc))
    model = level(region)
    cone = recession_cone_dim(region)
    tup = dyck_tuple(region)
    if args.format == "json":
        _emit_json(
            {
                "kind": str(spec.kind),
                "offsets": [str(a) for a in spec.offsets],
                "witness": [str(x) for x in region.witness],
                "level": model,
                "cone_dim": cone,
                "plus_counts": [list(p.plus_counts) for p in tup.paths],
            },
            out,
        )
    else:
        print(f"region: {region.short_label()}", file=out)
        print(f"level: {model}", file=out)
        print(f"cone dimension: {cone}", file=out)
        print(render_path(tup), file=out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catlevel",
        description="Exact region counts and level data for difference "
        "arrangements.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, with_n=True):
        if with_n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--kind", choices=["catalan", "semiorder"],
                       default="catalan")
        p.add_argument("--offsets", required=True,
                       help="comma-separated rationals, decreasing: 2,1 or 3/2,1/2")

    p_census = sub.add_parser("census", help="region counts by level")
    common(p_census)
    p_census.add_argument("--format", choices=["json", "csv", "text"],
                          default="json")
    p_census.add_argument("--per-chamber", action="store_true",
                          help="count only fundamental-chamber regions")
    p_census.add_argument("--use-oracle", action="store_true",
                          help="cross-check levels against cone dimensions")

    p_regions = sub.add_parser("regions", help="list every region")
    common(p_regions)
    p_regions.add_argument("--format", choices=["json", "text"],
                           default="json")
    p_regions.add_argument("--level", type=int, default=None,
                           help="only regions at this level")

    p_charpoly = sub.add_parser("charpoly",
                                help="characteristic polynomial")
    common(p_charpoly)
    p_charpoly.add_argument("--format", choices=["json", "text"],
                            default="text")

    p_verify = sub.add_parser("verify", help="run identity checks")
    p_verify.add_argument(
        "identity",
        choices=["stirling", "binomial", "egf", "charpoly", "mcat",
                 "raney", "probe", "all"],
    )
    p_verify.add_argument("--offsets", default="1")
    p_verify.add_argument("--n-max", type=int, default=4, dest="n_max")
    p_verify.add_argument("--kind", choices=["catalan", "semiorder"],
                          default="catalan")
    p_verify.add_argument("--n", type=int, default=3,
                          help="dimension for the polynomiality probe")
    p_verify.add_argument("--levels", default="1,2,3,4",
                          help="levels the probe fits through")
    p_verify.add_argument("--m-max", type=int, default=3, dest="m_max")
    p_verify.add_argument("--level-max", type=int, default=4,
                          dest="level_max")
    p_verify.add_argument("--order", type=int, default=10)
    p_verify.add_argument("--format", choices=["json", "text"],
                          default="text")

    p_tableau = sub.add_parser("tableau", help="insert a path into a tableau")
    p_tableau.add_argument("--n", type=int, required=True)
    p_tableau.add_argument("--m", type=int, required=True)
    p_tableau.add_argument("--heights", required=True,
                           help="comma-separated: 0,2,4,5,6,12")
    p_tableau.add_argument("--label", default=None,
                           help="permutation as comma-separated values")
    p_tableau.add_argument("--format", choices=["json", "text"],
                           default="text")

    p_phi = sub.add_parser("phi-demo",
                           help="expand a wall-free region through a cycle form")
    p_phi.add_argument("--cycles", required=True,
                       help="cycles '|'-separated, elements ',': 3|4,1|5|6|7,2")
    p_phi.add_argument("--offsets", required=True)
    p_phi.add_argument("--witness", required=True,
                       help="base point, one rational per cycle")
    p_phi.add_argument("--epsilon", default=None,
                       help="cluster spacing (rational); default is derived")
    p_phi.add_argument("--format", choices=["json", "text"],
                       default="text")

    p_level = sub.add_parser("level", help="level of the region of a point")
    p_level.add_argument("--kind", choices=["catalan", "semiorder"],
                         default="catalan")
    p_level.add_argument("--offsets", required=True)
    p_level.add_argument("--witness", required=True)
    p_level.add_argument("--format", choices=["json", "text"],
                         default="text")

    return parser


_COMMANDS = {
    "census": _cmd_census,
    "regions": _cmd_regions,
    "charpoly": _cmd_charpoly,
    "verify": _cmd_verify,
    "tableau": _cmd_tableau,
    "phi-demo": _cmd_phi_demo,
    "level": _cmd_level,
}


def run(argv: Sequence[str], out=None) -> int:
    """Parse argv, dispatch, and return the process exit code."""
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        _check_workers_env()
        return _COMMANDS[args.subcommand](args, out)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RaneyDomainError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
