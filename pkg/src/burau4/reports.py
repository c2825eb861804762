"""Plain-file report formats: CSV summaries, JSONL arc dumps, JSON families.

Everything round-trips: each writer has a parser, and the writers are
deterministic so reruns and resumed runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from typing import Optional

from .analysis import CertifyRow, FamilyDescriptor, LevelStats
from .weights import WeightTuple

LEVELS_HEADER = ["level", "minnorm", "mult", "arcs_tested"]
MIN2K_HEADER = ["level", "kind", "depth", "value"]
ALL_EXCLUDED_TOKEN = "all_excluded"


def levels_csv(rows: list[LevelStats] | list[CertifyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(LEVELS_HEADER)
    for r in rows:
        w.writerow([r.level, r.minnorm, r.mult, r.arcs_tested])
    return buf.getvalue()


def parse_levels_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [{k: int(v) for k, v in r.items()} for r in rows]


def arcs_jsonl(entries: list[dict]) -> str:
    return "".join(json.dumps(e, sort_keys=True) + "\n" for e in entries)


def parse_arcs_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def families_json(families: list[FamilyDescriptor]) -> str:
    payload = [
        {
            "base": list(f.base),
            "step": list(f.step),
            "kind": f.kind,
            "signature": list(f.signature),
            "verified_depth": f.verified_depth,
        }
        for f in families
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_families_json(text: str) -> list[FamilyDescriptor]:
    return [
        FamilyDescriptor(WeightTuple(*f["base"]), tuple(f["step"]), f["kind"],
                         tuple(f["signature"]), f["verified_depth"])
        for f in json.loads(text)
    ]


def min2k_csv(rows: list[tuple[int, str, int, Optional[int]]]) -> str:
    """Rows are (level, kind, depth, value-or-None)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(MIN2K_HEADER)
    for level, kind, depth, value in rows:
        w.writerow([level, kind, depth, ALL_EXCLUDED_TOKEN if value is None else value])
    return buf.getvalue()


def parse_min2k_csv(text: str) -> list[tuple[int, str, int, Optional[int]]]:
    out = []
    for r in csv.DictReader(io.StringIO(text)):
        v = r["value"]
        out.append((int(r["level"]), r["kind"], int(r["depth"]),
                    None if v == ALL_EXCLUDED_TOKEN else int(v)))
    return out
