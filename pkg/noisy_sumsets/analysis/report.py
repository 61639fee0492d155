"""
Report assembly for noisy-sumsets.
JSON envelopes, fixed-column CSV tables and per-kind sweep summaries.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..verify.harness import SweepRow

CSV_COLUMNS = [
    "n",
    "k",
    "l",
    "noise",
    "lower",
    "upper",
    "mu",
    "tight",
    "witness",
    "elapsed_ms",
]


@dataclass
class ReportEnvelope:
    """Top-level JSON document emitted by every command."""

    version: str
    command: str
    params: Dict[str, Any]
    results: List[Dict[str, Any]] = field(default_factory=list)
    elapsed_ms: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def rows_to_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    """Rows as a DataFrame with the fixed CSV column order."""
    records = [
        {
            "n": row.n,
            "k": row.k,
            "l": row.ell,
            "noise": row.noise,
            "lower": row.formula_lower,
            "upper": row.formula_upper,
            "mu": row.oracle_mu,
            "tight": "true" if row.tight else "false",
            "witness": row.witness or "",
            "elapsed_ms": row.elapsed_ms,
        }
        for row in rows
    ]
    return pd.DataFrame.from_records(records, columns=CSV_COLUMNS)


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    return rows_to_frame(rows).to_csv(index=False, lineterminator="\n")


def write_rows(
    rows: Sequence[SweepRow],
    path: str,
    fmt: str,
    envelope: Optional[ReportEnvelope] = None,
) -> None:
    """Write rows as CSV or as a JSON envelope."""
    target = Path(path)
    if target.parent != Path("."):
        target.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        target.write_text(rows_to_csv(rows))
    elif fmt == "json":
        envelope = envelope or ReportEnvelope(version="", command="", params={})
        envelope.results = [row.to_dict() for row in rows]
        target.write_text(envelope.to_json() + "\n")
    else:
        raise ValueError(f"Unsupported report format: {fmt}")


def summarize_rows(rows: Sequence[SweepRow]) -> Dict[str, Dict[str, int]]:
    """Per noise kind: rows, exhaustive rows, tight rows, counterexamples and widest gap."""
    if not rows:
        return {}
    frame = pd.DataFrame.from_records(
        [
            {
                "kind": row.noise_kind.value,
                "exhaustive": int(row.exhaustive),
                "tight": int(row.tight and row.exhaustive),
                "counterexample": int(row.counterexample),
                "gap": row.formula_upper - row.formula_lower,
            }
            for row in rows
        ]
    )
    grouped = frame.groupby("kind", sort=True)
    summary = {}
    for kind, group in grouped:
        summary[str(kind)] = {
            "rows": int(len(group)),
            "exhaustive": int(group["exhaustive"].sum()),
            "tight": int(group["tight"].sum()),
            "counterexamples": int(group["counterexample"].sum()),
            "widest_gap": int(group["gap"].max()),
        }
    return summary
