"""Command-line front end: ingestion, depth/median/contour/similarity/hull/audit.

Output is deterministic for a fixed config and seed: JSON payloads carry a
schema version, floats serialize with shortest round-trip repr, and no
timestamps or machine metadata enter the payload. Exit codes: 0 ok,
2 parse, 3 precondition, 4 numeric/solver, 5 no-linear-tail.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import contour, depth, geometry, median, oracle
from .core import Dataset, Point, RngSeed
from .depth import DepthMethod, DepthTag
from .errors import DepthkitError, InputFormatError, PreconditionError

__all__ = ["RunConfig", "ingest_csv", "run", "main", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1

_METHOD_NAMES = {
    "mahalanobis": DepthTag.MAHALANOBIS,
    "projection": DepthTag.PROJECTION,
    "halfspace": DepthTag.HALFSPACE,
    "zonoid": DepthTag.ZONOID,
    "ehd": DepthTag.EXTENDED_HALFSPACE,
    "ezd": DepthTag.EXTENDED_ZONOID,
}


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation, fully determined (with the seed) by its fields."""

    command: str
    data_path: str
    method: DepthMethod
    point: Point | None = None
    taus: tuple[float, ...] | None = None
    rays: int = 360
    tol: float = 1e-9
    seed: RngSeed = RngSeed(0)
    output: str = "json"
    has_header: bool = False
    columns: tuple[str, ...] | None = None
    row_limit: int | None = None
    delimiter: str | None = None
    rel_tol: float = 1e-2
    center: Point | None = None
    cases: int = 25

    def __post_init__(self):
        if self.output not in ("json", "csv"):
            raise InputFormatError(f"output must be json or csv, got {self.output!r}")
        if self.rays < 8:
            raise InputFormatError("rays must be >= 8")
        if self.taus is not None and len(self.taus) > 1:
            diffs = np.diff(np.asarray(self.taus))
            if not np.all(diffs < 0):
                raise InputFormatError("taus must be strictly decreasing")


def parse_tau(text: str) -> float:
    """Parse a depth level; fractions like 0.8/65 are evaluated exactly."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return float(Fraction(num.strip()) / Fraction(den.strip()))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"cannot parse depth level {text!r}: {exc}") from exc


def _parse_point(text: str) -> Point:
    try:
        return Point([float(t) for t in text.split(",")])
    except (ValueError, PreconditionError) as exc:
        raise InputFormatError(f"cannot parse point {text!r}: {exc}") from exc


def ingest_csv(
    path: str,
    has_header: bool = False,
    columns: tuple[str, ...] | None = None,
    row_limit: int | None = None,
    delimiter: str | None = None,
) -> Dataset:
    """Parse a delimited numeric table into a Dataset.

    Columns select by header name (requires ``has_header``) or by 0-based
    index; ``row_limit`` truncates after the header. Parse failures report
    the 1-based line number. General position is validated at construction.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc

    records: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        if delimiter is None:
            cells = text.split(",") if "," in text else text.split()
        else:
            cells = text.split(delimiter)
        records.append((lineno, [c.strip() for c in cells]))
    if not records:
        raise InputFormatError(f"{path}: no data rows")

    names: list[str] | None = None
    if has_header:
        names = [c.lower() for c in records[0][1]]
        records = records[1:]
    if row_limit is not None:
        if row_limit < 1:
            raise InputFormatError("row limit must be >= 1")
        records = records[:row_limit]
    if not records:
        raise InputFormatError(f"{path}: no data rows after header/limit")

    width = len(records[0][1])
    if columns:
        idx = []
        for col in columns:
            col = col.strip()
            if col.lstrip("-").isdigit():
                j = int(col)
                if not 0 <= j < width:
                    raise InputFormatError(f"column index {j} out of range (width {width})")
            else:
                if names is None:
                    raise InputFormatError(
                        f"column {col!r} needs --has-header to resolve names"
                    )
                if col.lower() not in names:
                    raise InputFormatError(f"unknown column {col!r}; header has {names}")
                j = names.index(col.lower())
            idx.append(j)
    else:
        idx = list(range(width))
    if not idx:
        raise InputFormatError("empty column selection")

    rows = []
    for lineno, cells in records:
        if len(cells) != width:
            raise InputFormatError(
                f"{path}:{lineno}: expected {width} cells, found {len(cells)}"
            )
        try:
            rows.append([float(cells[j]) for j in idx])
        except ValueError as exc:
            raise InputFormatError(f"{path}:{lineno}: non-numeric cell ({exc})") from exc
    return Dataset.from_array(np.asarray(rows, dtype=float))


# ---------------------------------------------------------------------------
# command implementations


def _load(config: RunConfig) -> Dataset:
    return ingest_csv(
        config.data_path,
        has_header=config.has_header,
        columns=config.columns,
        row_limit=config.row_limit,
        delimiter=config.delimiter,
    )


def _resolve_center(config: RunConfig, dataset: Dataset) -> Point:
    if config.center is not None:
        return config.center
    return median.center_for_method(config.method, dataset)


def _polygon_payload(poly: contour.ContourPolygon) -> dict:
    verts = poly.vertex_array()
    cen = poly.center.as_array()
    payload = {
        "tau": poly.tau,
        "method": poly.method.tag.value,
        "center": cen.tolist(),
        "vertices": verts.tolist(),
    }
    if verts.shape[1] == 2:
        diff = verts - cen
        payload["ray_angles"] = np.mod(np.arctan2(diff[:, 1], diff[:, 0]), 2 * np.pi).tolist()
    return payload


def _polygon_csv(polys: list[contour.ContourPolygon]) -> str:
    lines = []
    for poly in polys:
        verts = poly.vertex_array()
        cen = poly.center.as_array()
        diff = verts - cen
        ang = np.mod(np.arctan2(diff[:, 1], diff[:, 0]), 2 * np.pi)
        lam = np.linalg.norm(diff, axis=1)
        lines.append(f"# tau={poly.tau:.17g}")
        lines.append("ray_index,angle,lambda,x,y")
        for i in range(verts.shape[0]):
            lines.append(
                f"{i},{ang[i]:.17g},{lam[i]:.17g},{verts[i, 0]:.17g},{verts[i, 1]:.17g}"
            )
    return "\n".join(lines) + "\n"


def _cmd_depth(config: RunConfig, dataset: Dataset) -> dict:
    if config.point is None:
        raise InputFormatError("depth command needs --point")
    center = None
    if config.method.tag is DepthTag.EXTENDED_HALFSPACE:
        center = _resolve_center(config, dataset)
    res = depth.evaluate(config.method, config.point, dataset, center=center)
    return {"value": res.value, "exact": res.exact, "budget_used": res.budget_used}


def _cmd_median(config: RunConfig, dataset: Dataset) -> dict:
    tag = config.method.tag
    if tag is DepthTag.PROJECTION:
        res = median.projection_median(dataset, budget=config.method.budget, seed=config.seed)
    elif tag in (DepthTag.HALFSPACE, DepthTag.EXTENDED_HALFSPACE):
        res = median.halfspace_median(dataset, seed=config.seed)
    else:
        pt = median.sample_mean(dataset)
        res = median.MedianResult(
            pt, attained_depth=depth.evaluate(config.method, pt, dataset, center=pt).value,
            method_tolerance=0.0,
        )
    return {
        "point": list(res.point.coords),
        "attained_depth": res.attained_depth,
        "method_tolerance": res.method_tolerance,
    }


def _cmd_contour(config: RunConfig, dataset: Dataset) -> list[contour.ContourPolygon]:
    if not config.taus:
        raise InputFormatError("contour command needs --taus")
    center = _resolve_center(config, dataset)
    return [
        contour.trace_contour(
            config.method, dataset, tau, center, n_rays=config.rays, tol=config.tol
        )
        for tau in config.taus
    ]


def _cmd_similarity(config: RunConfig, dataset: Dataset) -> dict:
    if not config.taus or len(config.taus) < 3:
        raise InputFormatError("similarity command needs --taus with at least 3 levels")
    center = _resolve_center(config, dataset)
    polys = [
        contour.trace_contour(
            config.method, dataset, tau, center, n_rays=config.rays, tol=config.tol
        )
        for tau in config.taus
    ]
    report = contour.similarity_check(polys, center, rel_tol=config.rel_tol)
    return {
        "tau_star_hat": report.tau_star_hat,
        "pass": report.passed,
        "per_ray": [
            {"direction": list(d.coords), "residual": r} for d, r in report.per_ray
        ],
    }


def _cmd_hull(config: RunConfig, dataset: Dataset) -> dict:
    hull = geometry.convex_hull_2d(dataset)
    return {"vertices": hull.as_array().tolist()}


def _cmd_audit(config: RunConfig, dataset: Dataset) -> dict:
    rng = np.random.default_rng(config.seed.seed)
    arr = dataset.as_array()
    span = arr.max(axis=0) - arr.min(axis=0)
    rows = []
    worst: dict[str, float] = {}
    for case in range(config.cases):
        base = arr[rng.integers(arr.shape[0])]
        q = Point(base + rng.normal(0, 0.3, size=dataset.dim) * span)
        entries = []
        if dataset.dim == 2:
            hd = depth.halfspace_depth(q, dataset).value
            entries.append(("halfspace", hd, oracle.halfspace_bruteforce_2d(q, dataset)))
            o = depth.outlyingness(q, dataset, budget=config.method.budget, seed=config.seed)
            entries.append(("projection_outlyingness", o,
                            oracle.projection_grid_oracle(q, dataset, grid=20_000)))
        if dataset.dim <= 3:
            zd = depth.zonoid_depth(q, dataset).value
            entries.append(("zonoid", zd, oracle.zonoid_bisection_oracle(q, dataset, tol=1e-7)))
        for name, engine, orc in entries:
            diff = abs(engine - orc)
            worst[name] = max(worst.get(name, 0.0), diff)
            rows.append(
                {"case": case, "check": name, "engine": engine, "oracle": orc,
                 "abs_diff": diff}
            )
    return {"rows": rows, "max_abs_diff": worst}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit_code, serialized output)."""
    dataset = _load(config)
    if config.command == "contour":
        polys = _cmd_contour(config, dataset)
        if config.output == "csv":
            return 0, _polygon_csv(polys)
        result = [_polygon_payload(p) for p in polys]
    elif config.command == "depth":
        result = _cmd_depth(config, dataset)
    elif config.command == "median":
        result = _cmd_median(config, dataset)
    elif config.command == "similarity":
        result = _cmd_similarity(config, dataset)
    elif config.command == "hull":
        result = _cmd_hull(config, dataset)
    elif config.command == "audit":
        result = _cmd_audit(config, dataset)
    else:
        raise InputFormatError(f"unknown command {config.command!r}")
    payload = {"schema_version": SCHEMA_VERSION, "command": config.command, "result": result}
    return 0, json.dumps(payload) + "\n"


# ---------------------------------------------------------------------------
# argv plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depthkit",
        description="Multivariate depth functions, depth medians, and contour tools.",
        epilog="DEPTHKIT_THREADS caps the worker count of multi-start searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, need_method: bool = True):
        p.add_argument("--data", required=True, help="path to a CSV/whitespace table")
        p.add_argument("--has-header", action="store_true")
        p.add_argument("--columns", help="comma-separated names or 0-based indices")
        p.add_argument("--row-limit", type=int)
        p.add_argument("--delimiter")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int)
        p.add_argument("--output", choices=["json", "csv"], default="json")
        if need_method:
            p.add_argument(
                "--method", required=True, choices=sorted(_METHOD_NAMES), help="depth method"
            )

    p = sub.add_parser("depth", help="depth of one point")
    add_common(p)
    p.add_argument("--point", required=True, help="comma-separated coordinates")

    p = sub.add_parser("median", help="depth-maximizing center")
    add_common(p)

    p = sub.add_parser("contour", help="trace depth contours")
    add_common(p)
    p.add_argument("--taus", required=True, help="comma-separated levels; fractions allowed")
    p.add_argument("--rays", type=int, default=360)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--center", help="x,y (default: the method's own center)")

    p = sub.add_parser("similarity", help="trace contours and check similarity")
    add_common(p)
    p.add_argument("--taus", required=True)
    p.add_argument("--rays", type=int, default=360)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--rel-tol", type=float, default=1e-2)
    p.add_argument("--center")

    p = sub.add_parser("hull", help="2-D convex hull vertices")
    add_common(p, need_method=False)

    p = sub.add_parser("audit", help="engine-vs-oracle comparison table")
    add_common(p, need_method=False)
    p.add_argument("--cases", type=int, default=25)

    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    method_name = getattr(ns, "method", None) or "halfspace"
    seed = RngSeed(ns.seed)
    method = DepthMethod(_METHOD_NAMES[method_name], budget=ns.budget, seed=seed)
    taus = None
    if getattr(ns, "taus", None):
        taus = tuple(parse_tau(t) for t in ns.taus.split(","))
    columns = tuple(ns.columns.split(",")) if getattr(ns, "columns", None) else None
    point = _parse_point(ns.point) if getattr(ns, "point", None) else None
    center = _parse_point(ns.center) if getattr(ns, "center", None) else None
    return RunConfig(
        command=ns.command,
        data_path=ns.data,
        method=method,
        point=point,
        taus=taus,
        rays=getattr(ns, "rays", 360),
        tol=getattr(ns, "tol", 1e-9),
        seed=seed,
        output=ns.output,
        has_header=ns.has_header,
        columns=columns,
        row_limit=ns.row_limit,
        delimiter=ns.delimiter,
        rel_tol=getattr(ns, "rel_tol", 1e-2),
        center=center,
        cases=getattr(ns, "cases", 25),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        config = config_from_args(ns)
        code, payload = run(config)
    except DepthkitError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return exc.exit_code
    sys.stdout.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
