"""Bundled reference instance: a 4-point set in the rank-2 free group with
claimed cut-out witnesses for all 16 subsets and pairwise coordinate
distances, used as a golden verification target.

The shipped tables are kept verbatim as published by their source; a few
entries are known not to reproduce under the definitions (the fixture
carries corrected values alongside). ``verify_example`` recomputes every
row and distance and reports entry-by-entry agreement.
"""

from __future__ import annotations

import json
from importlib import resources

from . import freegroup as fg
from .errors import DomainError

FIXTURE_NAME = "data/f2_shatter_example.json"


def load_example() -> dict:
    text = resources.files(__package__).joinpath(FIXTURE_NAME).read_text(encoding="utf-8")
    return json.loads(text)


def _resolve(rank: int, points: dict, name: str) -> fg.FWord:
    if name in points:
        return points[name]
    return fg.parse_word(rank, name)


def _check_rows(rank: int, points: dict, rows: list) -> list[dict]:
    out = []
    for row in rows:
        claimed = sorted(row["subset"])
        spec = fg.FProgressionSpec(tuple(row["bounds"]), _resolve(rank, points, row["translate"]))
        actual = sorted(
            name for name, pt in points.items() if fg.progression_contains(spec, pt)
        )
        out.append(
            {
                "subset": claimed,
                "spec": str(spec),
                "actual": actual,
                "ok": actual == claimed,
            }
        )
    return out


def _check_distances(rank: int, points: dict, entries: list) -> list[dict]:
    ident = fg.identity(rank)
    out = []
    for entry in entries:
        u, v = entry["pair"]
        pu = points[u] if u != "e" else ident
        pv = points[v] if v != "e" else ident
        actual = list(fg.dist_vector(pu, pv))
        out.append(
            {
                "pair": [u, v],
                "claimed": list(entry["d"]),
                "actual": actual,
                "ok": actual == list(entry["d"]),
            }
        )
    return out


def verify_example() -> dict:
    """Recompute every table entry of the fixture and compare.

    The report separates the verbatim tables from the fixture's correction
    block, and also reruns the full shattering decision for the 4-point
    set itself.
    """
    data = load_example()
    rank = data["rank"]
    if rank < 1:
        raise DomainError("fixture rank must be positive")
    points = {name: fg.parse_word(rank, text) for name, text in data["points"].items()}

    rows = _check_rows(rank, points, data["rows"])
    distances = _check_distances(rank, points, data["distances"])
    corr = data.get("corrections", {})
    corr_rows = _check_rows(rank, points, corr.get("rows", []))
    corr_distances = _check_distances(rank, points, corr.get("distances", []))

    shatter = fg.is_shattered_free(points.values())
    report = {
        "schema": data["schema"],
        "points": {name: str(pt) for name, pt in points.items()},
        "rows": rows,
        "rows_ok": sum(r["ok"] for r in rows),
        "rows_total": len(rows),
        "distances": distances,
        "distances_ok": sum(d["ok"] for d in distances),
        "distances_total": len(distances),
        "corrections": {
            "rows": corr_rows,
            "distances": corr_distances,
            "all_ok": all(r["ok"] for r in corr_rows) and all(d["ok"] for d in corr_distances),
        },
        "set_shattered": shatter.shattered,
    }
    report["all_ok"] = (
        report["rows_ok"] == report["rows_total"]
        and report["distances_ok"] == report["distances_total"]
    )
    return report
