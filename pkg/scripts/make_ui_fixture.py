"""Generate the shared viewer fixture consumed by the frontend test suite.

Runs the full pipeline on a deterministic synthetic bundle, then records
the metro-map payload together with set-operation results computed here,
on the analysis side, directly from the hypergraph member sets and the
phase-relationship matrix.  The frontend recomputes the same operations
from the payload alone and must agree station-for-station.

Usage:
    python3 scripts/make_ui_fixture.py [--out PATH]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from irviz.analysis import phase_relationships
from irviz.cli import run_stages
from irviz.synth import SynthSpec, generate_bundle

SEED = 4242

SPEC = SynthSpec(
    n_variants=10,
    nodes_range=(40, 60),
    phases_range=(10, 14),
    buggy_phase="EarlyOptimization",
    n_buggy_variants=4,
    injection="added",
)


def _sorted_ids(ids) -> list[int]:
    return sorted(ids)


def build_fixture() -> dict:
    bundle, truth = generate_bundle(SEED, SPEC)
    result = run_stages(bundle)
    metro = result.metro
    h = result.final_hypergraph

    members = {}
    line_order = []
    for line in metro.lines:
        he = next(
            e for e in h.hyperedges if e.name == line.name and e.id == line.id
        )
        key = f"{line.name}#{line.id}"
        line_order.append(key)
        members[key] = _sorted_ids(he.members)

    all_ids = _sorted_ids(h.nodes)
    universe = set(all_ids)

    expected: dict[str, dict[str, list[int]]] = {
        "complement": {},
        "intersection": {},
        "union": {},
        "subtraction": {},
    }
    n = len(line_order)
    sets = [set(members[k]) for k in line_order]
    for i in range(n):
        expected["complement"][str(i)] = _sorted_ids(universe - sets[i])
    for i in range(n):
        for j in range(i + 1, n):
            pair = f"{i},{j}"
            expected["intersection"][pair] = _sorted_ids(sets[i] & sets[j])
            expected["union"][pair] = _sorted_ids(sets[i] | sets[j])
            expected["subtraction"][pair] = _sorted_ids(sets[i] - sets[j])
            expected["subtraction"][f"{j},{i}"] = _sorted_ids(sets[j] - sets[i])
    for size in (3, 4):
        if n >= size:
            combo = list(range(size))
            key = ",".join(str(i) for i in combo)
            inter = set(all_ids)
            union: set[int] = set()
            for i in combo:
                inter &= sets[i]
                union |= sets[i]
            expected["intersection"][key] = _sorted_ids(inter)
            expected["union"][key] = _sorted_ids(union)
            expected["complement"][key] = _sorted_ids(universe - union)

    matrix = phase_relationships(h)
    relationships = {
        "names": list(matrix.names),
        "ids": list(matrix.ids),
        "counts": [list(row) for row in matrix.counts],
    }

    return {
        "seed": SEED,
        "buggy_phase": truth.buggy_phase,
        "map": metro.to_json_dict(),
        "analysis": {
            "line_order": line_order,
            "members": members,
            "all_station_ids": all_ids,
            "relationships": relationships,
            "expected": expected,
        },
    }


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=str(
            Path(__file__).resolve().parent.parent
            / "frontend"
            / "tests"
            / "fixtures"
            / "ui_fixture.json"
        ),
    )
    args = parser.parse_args(argv)
    fixture = build_fixture()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes((json.dumps(fixture, indent=2) + "\n").encode("utf-8"))
    print(f"fixture: {out} ({len(fixture['map']['stations'])} stations, "
          f"{len(fixture['map']['lines'])} lines)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
