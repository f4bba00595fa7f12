#!/usr/bin/env python3
# coding=utf-8

"""
Rows of a light-cone sweep and their tabular form.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass, fields
from enum import StrEnum

import pandas as pd

from vt.quantum.entcone.errors import DomainError

CSV_COLUMNS = ("d", "t", "residual", "leakage", "negativity", "sn_witness", "X-label")
"""
Fixed column order of the emitted sample table.
"""


class SampleField(StrEnum):
    """
    Sample columns an envelope can be fitted to.
    """

    RESIDUAL = "residual"
    LEAKAGE = "leakage"
    SEP_LOWER = "sep_lower"
    NEGATIVITY = "negativity"


@dataclass(frozen=True)
class SweepSample:
    """
    One ``(X, t)`` point of a sweep.

    ``d`` is ``d_XY``; ``d_q`` is ``d_XQ`` (equal to ``d`` when no Q is involved). ``negativity`` and ``sep_lower``
    refer to the localized, sub-normalized state in ``X``. ``row`` is the index of the sample in its table.
    """

    d: float
    t: float
    residual: float
    leakage: float
    negativity: float = 0.0
    sn_witness: int = 1
    x_label: str = ""
    sep_lower: float = 0.0
    d_q: float | None = None
    weight: float = 0.0
    row: int = 0

    def __post_init__(self):
        for name in ("d", "t", "residual", "leakage", "negativity", "sep_lower", "weight"):
            if getattr(self, name) < 0:
                raise DomainError(f"sample field {name} must be nonnegative, got {getattr(self, name)}.")

    @property
    def d_eff(self) -> float:
        """
        ``min(d_XY, d_XQ)``.
        """
        return self.d if self.d_q is None else min(self.d, self.d_q)

    def value(self, field: SampleField | str) -> float:
        return float(getattr(self, str(SampleField(field))))


def samples_frame(samples: Iterable[SweepSample]) -> pd.DataFrame:
    """
    All sample fields as a frame; the first columns follow ``CSV_COLUMNS``.

    >>> samples_frame([]).columns.tolist()[:7]
    ['d', 't', 'residual', 'leakage', 'negativity', 'sn_witness', 'X-label']
    """
    records = [asdict(s) for s in samples]
    frame = pd.DataFrame.from_records(records, columns=[f.name for f in fields(SweepSample)])
    frame = frame.rename(columns={"x_label": "X-label"})
    rest = [c for c in frame.columns if c not in CSV_COLUMNS]
    return frame[list(CSV_COLUMNS) + rest]


def samples_from_frame(frame: pd.DataFrame) -> list[SweepSample]:
    """
    Inverse of ``samples_frame``.
    """
    renamed = frame.rename(columns={"X-label": "x_label"})
    out = []
    for rec in renamed.to_dict(orient="records"):
        d_q = rec.get("d_q")
        out.append(
            SweepSample(
                d=float(rec["d"]),
                t=float(rec["t"]),
                residual=float(rec["residual"]),
                leakage=float(rec["leakage"]),
                negativity=float(rec.get("negativity", 0.0)),
                sn_witness=int(rec.get("sn_witness", 1)),
                x_label=str(rec.get("x_label", "")),
                sep_lower=float(rec.get("sep_lower", 0.0)),
                d_q=None if d_q is None or pd.isna(d_q) else float(d_q),
                weight=float(rec.get("weight", 0.0)),
                row=int(rec.get("row", 0)),
            )
        )
    return out


def distances(samples: Sequence[SweepSample]) -> list[float]:
    return sorted({s.d for s in samples})
