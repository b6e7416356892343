"""Tabular views (pandas) of bounds, size comparisons and simulation results."""
from __future__ import annotations

from typing import Iterable, List

import pandas as pd

from analytics.bus_simulator import SimulationReport
from codes.bounds import ComparisonEntry, bounds


def comparison_frame(entries: Iterable[ComparisonEntry]) -> pd.DataFrame:
    rows = []
    for e in entries:
        rows.append(
            {
                "method": e.method,
                "n": e.n,
                "t": e.t,
                "w": e.w,
                "size": e.size if e.applicable else None,
                "log2_size": round(e.log2_size, 3) if e.log2_size is not None else None,
                "applicable": e.applicable,
                "note": e.reason,
            }
        )
    return pd.DataFrame(rows, columns=["method", "n", "t", "w", "size", "log2_size", "applicable", "note"])


def bounds_frame(n: int, t: int, w: int) -> pd.DataFrame:
    values = bounds(n, t, w)
    return pd.DataFrame({"bound": list(values), "value": [str(v) for v in values.values()]})


def wire_frame(report: SimulationReport) -> pd.DataFrame:
    """Per-wire transition totals and the final thermal proxy."""
    return pd.DataFrame(
        {
            "wire": range(len(report.transition_histogram)),
            "transitions": report.transition_histogram,
            "temp_proxy": report.temp_proxy,
        }
    )


def summary_frame(report: SimulationReport) -> pd.DataFrame:
    keys: List[str] = [
        "steps",
        "policy",
        "max_transitions_per_step",
        "min_transitions_per_step",
        "hot_violations",
        "weight_violations",
        "decode_success_rate",
        "channel_flips",
    ]
    data = report.to_dict()
    return pd.DataFrame({"metric": keys, "value": [str(data[k]) for k in keys]})


def render(frame: pd.DataFrame) -> str:
    return frame.to_string(index=False)


__all__ = ["comparison_frame", "bounds_frame", "wire_frame", "summary_frame", "render"]
