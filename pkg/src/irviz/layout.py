"""Deterministic grid layout of the hypergraph as a metro map payload.

Lines get horizontal home rows ordered by first execution ordinal;
stations get x positions from their global generation-timeline rank.  A
station on several lines sits at the lower median of their home rows.
The result is the JSON contract consumed by the viewer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from irviz.analysis import SuspicionReport
from irviz.ir_model import Hypergraph, IRNode, NodeIdentity


@dataclass(frozen=True)
class Station:
    station_id: int
    x: int
    y: int
    label: str
    attributes: dict
    multiplicity: int
    merged_from: tuple[NodeIdentity, ...] = ()


@dataclass(frozen=True)
class MetroLine:
    name: str
    id: str
    color_index: int
    polyline: tuple[int, ...]


@dataclass(frozen=True)
class MetroMap:
    stations: tuple[Station, ...]
    lines: tuple[MetroLine, ...]
    report: SuspicionReport

    def to_json_dict(self) -> dict:
        return {
            "stations": [
                {
                    "station_id": s.station_id,
                    "x": s.x,
                    "y": s.y,
                    "label": s.label,
                    "attributes": s.attributes,
                    "multiplicity": s.multiplicity,
                    "merged_from": [
                        {
                            "ir_id": ident.ir_id,
                            "node_id": ident.node_id,
                            "address": ident.address,
                        }
                        for ident in s.merged_from
                    ],
                }
                for s in self.stations
            ],
            "lines": [
                {
                    "name": ln.name,
                    "id": ln.id,
                    "color_index": ln.color_index,
                    "polyline": list(ln.polyline),
                }
                for ln in self.lines
            ],
            "report": self.report.to_json_dict(),
        }

    def to_json_bytes(self) -> bytes:
        return (json.dumps(self.to_json_dict(), indent=2) + "\n").encode("utf-8")


def order_stations(members: Iterable[int], nodes: Mapping[int, IRNode]) -> list[int]:
    """Generation-timeline order: (generating exec_ordinal, node_id) ascending."""
    return sorted(members, key=lambda nid: (nodes[nid].generated_in.exec_ordinal, nid))


def _station_attributes(node: IRNode) -> dict:
    return {
        "phase": node.generated_in.name,
        "opcode": node.opcode,
        "address": node.address,
        "graph_id": node.ir_id,
        "phase_id": str(node.generated_in.exec_ordinal),
    }


def layout_map(h: Hypergraph, report: SuspicionReport) -> MetroMap:
    """Place every station on an integer grid and route every line.

    Deterministic: line order is first-ordinal order, station x comes from
    the global generation-timeline rank (doubled, so x is unique per
    station), y is the line's home row or the lower-median row for shared
    stations, with any residual collision pushed down one unit at a time.
    """
    if not h.hyperedges:
        raise ValueError("empty hypergraph")

    lines = sorted(h.hyperedges, key=lambda he: (he.ordinals()[0], he.name))
    home_row = {idx: idx * 2 for idx in range(len(lines))}
    lines_of: dict[int, list[int]] = {nid: [] for nid in h.nodes}
    for idx, he in enumerate(lines):
        for member in he.members:
            lines_of[member].append(idx)

    global_order = order_stations(h.nodes, h.nodes)
    occupied: set[tuple[int, int]] = set()
    stations: list[Station] = []
    for rank, nid in enumerate(global_order):
        node = h.nodes[nid]
        rows = sorted(home_row[idx] for idx in lines_of[nid])
        if not rows:
            raise ValueError(f"station {nid} belongs to no line")
        x = rank * 2
        y = rows[(len(rows) - 1) // 2]
        while (x, y) in occupied:
            y += 1
        occupied.add((x, y))
        stations.append(
            Station(
                station_id=nid,
                x=x,
                y=y,
                label=str(nid),
                attributes=_station_attributes(node),
                multiplicity=node.multiplicity,
                merged_from=node.merged_from,
            )
        )

    metro_lines = tuple(
        MetroLine(
            name=he.name,
            id=he.id,
            color_index=idx,
            polyline=tuple(order_stations(he.members, h.nodes)),
        )
        for idx, he in enumerate(lines)
    )
    return MetroMap(stations=tuple(stations), lines=metro_lines, report=report)
