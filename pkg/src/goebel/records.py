"""Serializable run records: one JSON/CSV-renderable object per CLI invocation.

Schema (stable field names):
    command      str            subcommand that produced the record
    parameters   object         the flags it ran with (JSON-typed values)
    results      array<object>  rows; every row has "index" and "value",
                                plus command-specific extras
    certificates array<object>  replayable failure certificates, if any
    wall_time_s  number         elapsed wall time

CSV rows are "index,value" followed by "key=value" cells for any extras, so
the (index, value) content of CSV and JSON renderings is identical.
"""

import csv
import io
import json
from dataclasses import dataclass, field


def _freeze(obj):
    if isinstance(obj, list):
        return tuple(_freeze(x) for x in obj)
    if isinstance(obj, dict):
        return {k: _freeze(v) for k, v in obj.items()}
    return obj


@dataclass(frozen=True)
class RunRecord:
    command: str
    parameters: dict
    results: tuple = ()
    certificates: tuple = ()
    wall_time_s: float = 0.0

    def pairs(self) -> list[tuple]:
        return [(row["index"], row["value"]) for row in self.results]

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "results": [dict(row) for row in self.results],
            "certificates": [dict(c) for c in self.certificates],
            "wall_time_s": self.wall_time_s,
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        payload = json.loads(text)
        return cls(
            command=payload["command"],
            parameters=_freeze(payload["parameters"]),
            results=tuple(_freeze(row) for row in payload["results"]),
            certificates=tuple(_freeze(c) for c in payload["certificates"]),
            wall_time_s=payload["wall_time_s"],
        )

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        for row in self.results:
            extras = [f"{k}={v}" for k, v in row.items() if k not in ("index", "value")]
            writer.writerow([row["index"], row["value"], *extras])
        return out.getvalue()


def make_record(command: str, parameters: dict, results, certificates=(), wall_time_s=0.0):
    return RunRecord(
        command=command,
        parameters=_freeze(parameters),
        results=tuple(_freeze(r) for r in results),
        certificates=tuple(_freeze(c) for c in certificates),
        wall_time_s=wall_time_s,
    )
