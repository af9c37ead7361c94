"""Trial records and CSV/JSON emission shared by the benchmark runners."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field


@dataclass
class TrialRecord:
    """One experiment run: which model, how big, how seeded, how it scored.

    ``layers`` holds named layer sizes (e.g. L_hyper, L_real_equiv) and
    ``metrics`` the named scores; both become CSV columns in order.  ``split``
    is set when a record covers one evaluation split only.
    """

    algebra: str
    layers: dict = field(default_factory=dict)
    tnp: int = 0
    seed: int = 0
    metrics: dict = field(default_factory=dict)
    train_ms: float = 0.0
    split: str | None = None


def _format_value(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def _columns(records):
    layer_keys, metric_keys = [], []
    for rec in records:
        for k in rec.layers:
            if k not in layer_keys:
                layer_keys.append(k)
        for k in rec.metrics:
            if k not in metric_keys:
                metric_keys.append(k)
    cols = ["algebra"]
    if any(rec.split is not None for rec in records):
        cols.append("split")
    return cols + layer_keys + ["tnp", "seed"] + metric_keys + ["train_ms"]


def _sort_key(rec):
    return (
        rec.algebra,
        tuple(rec.layers.values()),
        rec.seed,
        rec.split or "",
    )


def _row(rec, columns):
    values = {
        "algebra": rec.algebra,
        "split": rec.split,
        "tnp": rec.tnp,
        "seed": rec.seed,
        "train_ms": rec.train_ms,
        **rec.layers,
        **rec.metrics,
    }
    return [_format_value(values.get(col, "")) for col in columns]


def emit_csv(records, path, config=None):
    """Write records as RFC-4180 CSV, sorted by (algebra, layers, seed).

    When ``config`` is given, the full run configuration is written alongside
    as ``<path>.meta.json`` so the artifact can be regenerated.
    """
    records = sorted(records, key=_sort_key)
    columns = _columns(records)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for rec in records:
            writer.writerow(_row(rec, columns))
    if config is not None:
        with open(f"{path}.meta.json", "w") as fh:
            json.dump(config, fh, indent=2, default=str)


def emit_json(records, path, config=None):
    """Write records (and the run configuration) as one JSON document."""
    records = sorted(records, key=_sort_key)
    doc = {
        "config": config,
        "records": [
            {
                "algebra": rec.algebra,
                "split": rec.split,
                **rec.layers,
                "tnp": rec.tnp,
                "seed": rec.seed,
                **{k: _format_value(v) if isinstance(v, float) and math.isinf(v) else v
                   for k, v in rec.metrics.items()},
                "train_ms": rec.train_ms,
            }
            for rec in records
        ],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, default=str)
