"""Serialising classification reports: JSON (lossless), per-twist CSV, cumulative counts."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .analysis import ClassificationReport, StatusKind, TwistStatus
from .global_search import RationalPoint


class ReportIOError(OSError):
    pass


def _frac(q: Fraction | None) -> str | None:
    return None if q is None else str(q)


def _unfrac(s: str | None) -> Fraction | None:
    return None if s is None else Fraction(s)


def point_to_dict(p: RationalPoint) -> dict:
    return {
        "x": _frac(p.x),
        "y": _frac(p.y),
        "height": p.height,
        "trivial": p.trivial,
        "branch": _frac(p.branch),
    }


def point_from_dict(d: dict) -> RationalPoint:
    return RationalPoint(_unfrac(d["x"]), _unfrac(d["y"]), d["height"], d["trivial"], _unfrac(d["branch"]))


def twist_to_dict(t: TwistStatus) -> dict:
    out: dict = {"d": t.d, "status": t.status.value, "height_searched": t.height_searched}
    if t.places:
        out["places"] = list(t.places)
    if t.point is not None:
        out["witness"] = point_to_dict(t.point)
    if t.timings:
        out["timings"] = t.timings
    return out


def twist_from_dict(d: dict) -> TwistStatus:
    pt = point_from_dict(d["witness"]) if "witness" in d else None
    return TwistStatus(
        d["d"],
        StatusKind(d["status"]),
        tuple(d.get("places", ())),
        pt,
        d.get("height_searched", 0),
        d.get("timings", {}),
    )


def report_to_dict(r: ClassificationReport) -> dict:
    return {
        "curve": r.curve,
        "X": r.X,
        "H": r.H,
        "count_multiplier": r.count_multiplier,
        "granville": r.granville,
        "twists": [twist_to_dict(t) for t in r.twists],
        "counts": r.counts,
        "densities": r.densities,
        "weakly_intersective": r.weakly_intersective,
        "congruence": r.congruence,
        "interpretation": r.interpretation,
        "cumulative": r.cumulative,
        "stats": r.stats,
    }


def report_from_dict(d: dict) -> ClassificationReport:
    return ClassificationReport(
        curve=d["curve"],
        X=d["X"],
        H=d["H"],
        twists=[twist_from_dict(t) for t in d["twists"]],
        counts=d["counts"],
        densities=d["densities"],
        granville=d["granville"],
        congruence=d["congruence"],
        weakly_intersective=d["weakly_intersective"],
        interpretation=d["interpretation"],
        cumulative=d["cumulative"],
        stats=d.get("stats", {}),
        count_multiplier=d.get("count_multiplier", 1),
    )


def to_json(r: ClassificationReport) -> str:
    return json.dumps(report_to_dict(r), indent=2, sort_keys=False)


def from_json(text: str) -> ClassificationReport:
    return report_from_dict(json.loads(text))


CSV_FIELDS = ["d", "status", "places", "x", "y", "height", "height_searched"]


def to_csv(r: ClassificationReport) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for t in r.twists:
        p = t.point
        w.writerow(
            {
                "d": t.d,
                "status": t.status.value,
                "places": ";".join(t.places),
                "x": "" if p is None else ("inf" if p.at_infinity else str(p.x)),
                "y": "" if p is None or p.y is None else str(p.y),
                "height": "" if p is None else p.height,
                "height_searched": t.height_searched,
            }
        )
    return buf.getvalue()


def cumulative_csv(r: ClassificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["X", "els", "violations"])
    c = r.cumulative
    for row in zip(c["X"], c["els"], c["violations"]):
        w.writerow(row)
    return buf.getvalue()


def emit_report(r: ClassificationReport, fmt: str, destination: str | Path) -> list[Path]:
    """Write the report; returns the paths written.

    json writes the full report; csv writes per-twist rows.  Either way a
    sibling file <stem>.cumulative.csv holds the cumulative counts table.
    """
    dest = Path(destination)
    if fmt == "json":
        body = to_json(r)
    elif fmt == "csv":
        body = to_csv(r)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    cum = dest.with_name(dest.stem + ".cumulative.csv")
    try:
        dest.write_text(body)
        cum.write_text(cumulative_csv(r))
    except OSError as e:
        raise ReportIOError(f"could not write report to {dest}: {e}") from e
    return [dest, cum]


def load_report(path: str | Path) -> ClassificationReport:
    path = Path(path)
    try:
        return from_json(path.read_text())
    except OSError as e:
        raise ReportIOError(f"could not read report {path}: {e}") from e
