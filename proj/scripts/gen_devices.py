# Copyright 2026 The agentmap Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes data/devices/*.json with synthetic CX calibrations.

Rates are drawn once from a fixed seed and committed; rerunning reproduces
the shipped files byte for byte.
"""
import json
import pathlib
import random

BELEM = [(0, 1), (1, 2), (1, 3), (3, 4)]
GUADALUPE = [(0, 1), (1, 4), (4, 7), (7, 10), (10, 12), (12, 15), (1, 2), (2, 3), (3, 5),
             (5, 8), (8, 11), (11, 14), (12, 13), (13, 14), (6, 7), (8, 9)]


def tokyo():
    edges = []
    for r in range(4):
        for c in range(4):
            edges.append((5 * r + c, 5 * r + c + 1))
    for i in range(15):
        edges.append((i, i + 5))
    edges += [(1, 7), (2, 6), (3, 9), (4, 8), (5, 11), (6, 10), (7, 13), (8, 12),
              (11, 17), (12, 16), (13, 19), (14, 18)]
    return edges


def calibrate(name, n, edges, seed):
    rng = random.Random(seed)
    cx = []
    for u, v in sorted(tuple(sorted(e)) for e in edges):
        base = rng.uniform(0.005, 0.03)
        skew = rng.uniform(0.85, 1.15)
        cx.append({"control": u, "target": v, "error": round(base * skew, 6)})
        cx.append({"control": v, "target": u, "error": round(base / skew, 6)})
    return {"name": name, "num_qubits": n,
            "edges": [list(e) for e in sorted(tuple(sorted(e)) for e in edges)], "cx_error": cx}


def render(dev):
    lines = ["{", f' "name": {json.dumps(dev["name"])},', f' "num_qubits": {dev["num_qubits"]},']
    lines.append(' "edges": [' + ", ".join(json.dumps(e) for e in dev["edges"]) + "],")
    lines.append(' "cx_error": [')
    rows = ["  " + json.dumps(c) for c in dev["cx_error"]]
    lines.append(",\n".join(rows))
    lines.append(" ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "devices"
    out.mkdir(parents=True, exist_ok=True)
    for name, n, edges, seed in [("belem", 5, BELEM, 5), ("guadalupe", 16, GUADALUPE, 16),
                                 ("tokyo", 20, tokyo(), 20)]:
        (out / f"{name}.json").write_text(render(calibrate(name, n, edges, seed)))


if __name__ == "__main__":
    main()
