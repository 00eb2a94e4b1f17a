"""Verification records and their csv / JSON-lines serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Optional

SCHEMA_VERSION = 1

FIELDS = ("graph6", "n", "m", "alpha1", "tau", "taub", "slack_egt", "slack_bip", "flags")

# canonical flag order in serialised output
FLAG_ORDER = (
    "egt_violation",
    "bip_violation",
    "sharp_egt",
    "sharp_bip",
    "near_sharp_egt",
    "near_sharp_bip",
    "triangular",
    "mindeg_pass",
    "k4minus_free",
    "oracle_confirmed",
)


@dataclass
class VerificationRecord:
    graph6: str
    n: int
    m: int
    alpha1: int
    tau: Optional[int]
    taub: Optional[int]
    flags: frozenset = field(default_factory=frozenset)

    @property
    def slack_egt(self) -> Optional[int]:
        if self.tau is None:
            return None
        return self.n * self.n - 4 * (self.alpha1 + self.tau)

    @property
    def slack_bip(self) -> Optional[int]:
        if self.taub is None:
            return None
        return self.n * self.n - 4 * (self.alpha1 + self.taub)

    @property
    def violation(self) -> bool:
        return "egt_violation" in self.flags or "bip_violation" in self.flags

    def as_row(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "alpha1": self.alpha1,
            "tau": self.tau,
            "taub": self.taub,
            "slack_egt": self.slack_egt,
            "slack_bip": self.slack_bip,
            "flags": [f for f in FLAG_ORDER if f in self.flags],
        }


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, list):
        return ";".join(value)
    return str(value)


def format_csv_header() -> str:
    return ",".join(FIELDS) + "\n"


def format_record(record: VerificationRecord, fmt: str = "csv") -> str:
    row = record.as_row()
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([_csv_cell(row[k]) for k in FIELDS])
        return buf.getvalue()
    if fmt == "text":
        return json.dumps(row) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(records: Iterable[VerificationRecord], fmt: str = "csv", sink: Optional[IO[str]] = None) -> str:
    """Serialise records; returns the text and also writes it to ``sink`` if given."""
    parts = [format_csv_header()] if fmt == "csv" else []
    parts.extend(format_record(r, fmt) for r in records)
    text = "".join(parts)
    if sink is not None:
        sink.write(text)
    return text


def _opt_int(cell) -> Optional[int]:
    if cell is None or cell == "":
        return None
    return int(cell)


def _from_row(row: dict) -> VerificationRecord:
    flags = row["flags"]
    if isinstance(flags, str):
        flags = flags.split(";") if flags else []
    rec = VerificationRecord(
        graph6=row["graph6"],
        n=int(row["n"]),
        m=int(row["m"]),
        alpha1=int(row["alpha1"]),
        tau=_opt_int(row["tau"]),
        taub=_opt_int(row["taub"]),
        flags=frozenset(flags),
    )
    if _opt_int(row["slack_egt"]) != rec.slack_egt or _opt_int(row["slack_bip"]) != rec.slack_bip:
        raise ValueError(f"inconsistent slack columns for {rec.graph6}")
    return rec


def read_report(source: IO[str], fmt: str = "csv") -> Iterator[VerificationRecord]:
    if fmt == "csv":
        reader = csv.DictReader(source)
        if reader.fieldnames is not None and tuple(reader.fieldnames) != FIELDS:
            raise ValueError(f"unexpected csv header {reader.fieldnames}")
        for row in reader:
            yield _from_row(row)
    elif fmt == "text":
        for line in source:
            if line.strip():
                yield _from_row(json.loads(line))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
