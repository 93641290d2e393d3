"""Run traces: one time-stamped record per simulation event, CSV emission.

Every travel leg, measurement, phase change, boundary clamp and battery
saturation appends one record. Records are strictly ordered by time, then by
emission order. Floats are written with shortest-round-trip precision so a
trace file is byte-reproducible and parses back exactly.

Column semantics are uniform except ``p_w``: on ``measure`` rows it is the
measured power in watts; on ``saturation`` rows it carries the energy in
joules clamped away at the full/empty battery during the integration
segment that just ended (the record schema has no dedicated column).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, TextIO

EVENTS = (
    "measure",
    "move_start",
    "move_end",
    "trial_start",
    "trial_end",
    "retrigger",
    "sleep",
    "wake",
    "clamp",
    "saturation",
)

COLUMNS = (
    "t_s",
    "x_m",
    "phase",
    "event",
    "p_w",
    "g_best_w",
    "x_best_m",
    "inertia",
    "dx_m",
    "direction",
    "charge_j",
    "odometer_m",
)


@dataclass(frozen=True)
class TraceRecord:
    t_s: float
    x_m: float
    phase: str
    event: str
    p_w: float
    g_best_w: float
    x_best_m: float
    inertia: float
    dx_m: float
    direction: int
    charge_j: float
    odometer_m: float

    def row(self) -> list[str]:
        return [
            repr(self.t_s),
            repr(self.x_m),
            self.phase,
            self.event,
            repr(self.p_w),
            repr(self.g_best_w),
            repr(self.x_best_m),
            repr(self.inertia),
            repr(self.dx_m),
            str(self.direction),
            repr(self.charge_j),
            repr(self.odometer_m),
        ]


class TraceRecorder:
    """Collects trace records and optionally streams them to a CSV sink.

    The recorder holds the algorithm-side context (phase, best bookkeeping,
    step state) so that plant-level events emitted mid-operation are stamped
    with the state in force at that moment. Streaming flushes per record so
    an aborted run still leaves a valid trace prefix.
    """

    def __init__(self, sink: TextIO | None = None):
        self.records: list[TraceRecord] = []
        self.phase = "Sleep"
        self.g_best_w = 0.0
        self.x_best_m = 0.0
        self.inertia = 1.0
        self.dx_m = 0.0
        self.direction = 1
        self._state = None
        self._sink = sink
        self._writer = None
        if sink is not None:
            self._writer = csv.writer(sink, lineterminator="\n")
            self._writer.writerow(COLUMNS)
            sink.flush()

    def bind(self, state) -> None:
        """Mirror context fields from a live state object on every emit.

        The object must expose phase, g_best_w, x_best_m, inertia, dx_m
        and direction attributes.
        """
        self._state = state

    def emit(self, event: str, t_s: float, x_m: float, p_w: float,
             charge_j: float, odometer_m: float) -> TraceRecord:
        if self._state is not None:
            s = self._state
            self.phase = s.phase
            self.g_best_w = s.g_best_w
            self.x_best_m = s.x_best_m
            self.inertia = s.inertia
            self.dx_m = s.dx_m
            self.direction = s.direction
        rec = TraceRecord(
            t_s=float(t_s),
            x_m=float(x_m),
            phase=self.phase,
            event=event,
            p_w=float(p_w),
            g_best_w=float(self.g_best_w),
            x_best_m=float(self.x_best_m),
            inertia=float(self.inertia),
            dx_m=float(self.dx_m),
            direction=int(self.direction),
            charge_j=float(charge_j),
            odometer_m=float(odometer_m),
        )
        self.records.append(rec)
        if self._writer is not None:
            self._writer.writerow(rec.row())
            self._sink.flush()
        return rec


def emit_csv(records: Iterable[TraceRecord], path) -> None:
    """Write records to a CSV file (UTF-8, LF line endings)."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COLUMNS)
            for rec in records:
                writer.writerow(rec.row())
    except OSError as exc:
        raise OSError(f"cannot write trace to {path}: {exc}") from exc


def render_csv(records: Iterable[TraceRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def parse_csv(path) -> list[TraceRecord]:
    """Read a trace CSV back into records (exact float round-trip)."""
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"unexpected trace header in {path}: {header}")
        for row in reader:
            records.append(
                TraceRecord(
                    t_s=float(row[0]),
                    x_m=float(row[1]),
                    phase=row[2],
                    event=row[3],
                    p_w=float(row[4]),
                    g_best_w=float(row[5]),
                    x_best_m=float(row[6]),
                    inertia=float(row[7]),
                    dx_m=float(row[8]),
                    direction=int(row[9]),
                    charge_j=float(row[10]),
                    odometer_m=float(row[11]),
                )
            )
    return records
