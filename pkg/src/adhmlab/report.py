"""JSON and CSV report writers with stable field order."""

from __future__ import annotations

import csv
import io
import json
import sys

from .fixed_points import label_to_json
from .tangent_bb import CellTable, symplectic_pairing_holds


def label_string(label) -> str:
    return "|".join("(" + ",".join(str(p) for p in lam) + ")" for lam in label)


def cell_report(table: CellTable) -> dict:
    rows = [
        {
            "partition_tuple": label_to_json(row.label),
            "weights": list(row.weights),
            "plus_dim": row.plus_dim,
            "minus_dim": row.minus_dim,
            "order_value": row.order_value,
            "filtration_rank": row.filtration_rank,
        }
        for row in table.rows
    ]
    pm, pp = table.poincare_M(), table.poincare_P()
    max_minus = max((row.minus_dim for row in table.rows), default=0)
    return {
        "r": table.r,
        "n": table.n,
        "lambda": list(table.lam.as_tuple()),
        "fixed_points": rows,
        "poincare_M": pm,
        "poincare_P": pp,
        "equal": pm == pp,
        "max_minus_dim": max_minus,
        "stated_central_fiber_dim": table.n * (table.r + 1),
        "symplectic_pairing_observed": all(symplectic_pairing_holds(row.weights, table.lam) for row in table.rows),
    }


def cell_csv(table: CellTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["partition_tuple", "plus_dim", "minus_dim", "order_value"])
    for row in table.rows:
        w.writerow([label_string(row.label), row.plus_dim, row.minus_dim, row.order_value])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def emit_report(obj, output_path: str | None = None, csv_text: str | None = None, csv_path: str | None = None) -> None:
    text = dumps(obj)
    if output_path:
        with open(output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if csv_path and csv_text is not None:
        with open(csv_path, "w") as fh:
            fh.write(csv_text)
