"""Run reports and multi-strategy comparison tables."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class TrialSummary:
    """One search trial: when it ran, what it found, what it cost."""

    index: int
    t_start_s: float
    t_end_s: float
    dx_m: float
    iterations: int
    seed_power_w: float
    g_best_w: float
    x_best_m: float
    search_distance_m: float
    return_distance_m: float
    aborted: str | None = None

    @property
    def duration_s(self) -> float:
        return self.t_end_s - self.t_start_s

    @property
    def distance_m(self) -> float:
        return self.search_distance_m + self.return_distance_m


@dataclass
class RunReport:
    """Whole-run summary emitted next to the trace.

    The energy ledger satisfies
    net_j == harvested_j - consumed_j - overflow_j + deficit_j
    up to accumulated rounding (well under 1e-6 J per simulated day), where
    the clamp terms are the energy lost at a full battery and the draw not
    actually available from an empty one.
    """

    scenario: str
    seed: int
    strategy: str
    duration_s: float
    trials: int
    final_g_best_w: float
    final_x_best_m: float
    harvested_j: float
    consumed_j: float
    overflow_j: float
    deficit_j: float
    net_j: float
    charge_start_j: float
    charge_end_j: float
    distance_m: float
    trial_summaries: list[TrialSummary] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        summaries = [TrialSummary(**t) for t in data.pop("trial_summaries", [])]
        return cls(trial_summaries=summaries, **data)


_COMPARE_FIELDS = (
    "strategy",
    "seed",
    "trials",
    "distance_m",
    "harvested_j",
    "consumed_j",
    "net_j",
    "final_g_best_w",
    "final_x_best_m",
)


def compare(reports: list[RunReport]) -> list[dict]:
    """Tabulate reports of one scenario family ordered as given.

    All reports must share a scenario name; mixing families is an error.
    """
    if len(reports) < 2:
        raise ValueError("compare needs at least 2 reports")
    names = {r.scenario for r in reports}
    if len(names) != 1:
        raise ValueError(
            f"reports span multiple scenario families: {sorted(names)}"
        )
    return [{f: getattr(r, f) for f in _COMPARE_FIELDS} for r in reports]


def render_markdown(rows: list[dict]) -> str:
    head = "| " + " | ".join(_COMPARE_FIELDS) + " |"
    sep = "|" + "|".join(" --- " for _ in _COMPARE_FIELDS) + "|"
    lines = [head, sep]
    for row in rows:
        lines.append("| " + " | ".join(str(row[f]) for f in _COMPARE_FIELDS) + " |")
    return "\n".join(lines) + "\n"


def render_comparison_csv(rows: list[dict]) -> str:
    lines = [",".join(_COMPARE_FIELDS)]
    for row in rows:
        lines.append(",".join(str(row[f]) for f in _COMPARE_FIELDS))
    return "\n".join(lines) + "\n"
