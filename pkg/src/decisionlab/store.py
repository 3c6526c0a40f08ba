"""Registry of industries, index definitions, and dated observations.

Persistence is three CSV files (``industries.csv``, ``indices.csv``,
``observations.csv``) loaded fully into memory at open.  Observations key
on (index, industry, year, period); period 0 is annual data and periods
1..4 are sub-annual (seasonal) slots.  A rule-driven converter turns
spreadsheet exports into observations.

Concurrency: one writer at a time; every mutation runs under the store
lock while readers receive immutable snapshots (tuples and frozen
dataclasses), so an in-flight read never observes a half-applied write.
"""
from __future__ import annotations

import csv
import math
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import (
    BadRuleColumn,
    NonFiniteValue,
    UnknownIndex,
    UnknownIndustry,
    UnparseableTime,
)

INDUSTRY_FIELDS = ("Industry_Id", "Industry_Name", "Industry_Remark", "Industry_Type", "Industry_Enabled")
INDEX_FIELDS = ("Index_Id", "Index_Name", "Index_Remark", "Index_Unit", "Index_Enabled")
OBSERVATION_FIELDS = ("Idata_Id", "Index_Id", "Industry_Id", "Idata_Data", "Idata_Year", "Idata_Period")


@dataclass(frozen=True)
class Industry:
    id: int
    name: str
    remark: str = ""
    type_label: str = ""
    enabled: bool = True

    def __post_init__(self) -> None:
        if self.id <= 0:
            raise ValueError(f"industry id must be positive, got {self.id}")
        if not self.name:
            raise ValueError("industry name must be non-empty")


@dataclass(frozen=True)
class IndexDef:
    id: int
    name: str
    remark: str = ""
    unit_label: str = ""
    enabled: bool = True

    def __post_init__(self) -> None:
        if self.id <= 0:
            raise ValueError(f"index id must be positive, got {self.id}")
        if not self.name:
            raise ValueError("index name must be non-empty")


@dataclass(frozen=True)
class Observation:
    """One dated value of one index for one industry.

    ``record_id`` 0 means "not yet assigned"; the store fills it in.
    ``period`` 0 is annual, 1..4 are sub-annual slots within the year.
    """

    index_id: int
    industry_id: int
    value: float
    year: int
    period: int = 0
    record_id: int = 0

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise NonFiniteValue(f"observation value must be finite, got {self.value!r}")
        if not 0 <= self.period <= 4:
            raise ValueError(f"period must lie in 0..4, got {self.period}")
        if self.record_id < 0:
            raise ValueError("record id must be non-negative")

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.index_id, self.industry_id, self.year, self.period)

    @property
    def time(self) -> float:
        return time_key(self.year, self.period)


def time_key(year: int, period: int = 0) -> float:
    """Numeric time axis: annual data at the integer year, sub-annual
    periods at quarter offsets strictly inside the year."""
    if period == 0:
        return float(year)
    return year + (period - 0.5) / 4.0


@dataclass(frozen=True)
class TimeSeries:
    """Time-sorted (time, value) points for one (industry, index) pair."""

    industry_id: int
    index_id: int
    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        pts = tuple((float(t), float(v)) for t, v in self.points)
        for (t1, _), (t2, _) in zip(pts, pts[1:]):
            if t2 <= t1:
                raise ValueError(f"times must be strictly increasing, got {t1} then {t2}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.points)


@dataclass(frozen=True)
class ConversionRule:
    """Maps one spreadsheet column onto one (industry, index) pair."""

    industry_id: int
    index_id: int
    source_column: int
    time_column: int

    def __post_init__(self) -> None:
        if self.source_column < 0 or self.time_column < 0:
            raise ValueError("column positions must be non-negative")
        if self.source_column == self.time_column:
            raise ValueError("source and time columns must differ")


@dataclass
class ConversionResult:
    written: int
    warnings: list[str] = field(default_factory=list)


def parse_time_cell(cell: str) -> tuple[int, int]:
    """Parse a time cell: ``2004`` (annual) or ``2004:1`` (year, period)."""
    text = cell.strip()
    try:
        if ":" in text:
            year_text, period_text = text.split(":", 1)
            year, period = int(year_text), int(period_text)
            if not 1 <= period <= 4:
                raise ValueError
            return year, period
        return int(text), 0
    except ValueError:
        raise UnparseableTime(f"cannot parse time cell {cell!r}") from None


def parse_rules(text: str) -> list[ConversionRule]:
    """Rule files: one ``industry_id,index_id,source_column,time_column``
    per line, ``#`` comments and blank lines ignored."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 4:
            raise ValueError(f"rule line {lineno}: expected 4 comma-separated fields")
        rules.append(ConversionRule(int(parts[0]), int(parts[1]), int(parts[2]), int(parts[3])))
    return rules


def load_rules(path) -> list[ConversionRule]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rules(fh.read())


class HistoryStore:
    """In-memory store with CSV persistence and a single-writer lock."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._industries: dict[int, Industry] = {}
        self._indices: dict[int, IndexDef] = {}
        self._observations: dict[tuple[int, int, int, int], Observation] = {}
        self._next_record_id = 1

    # --- registries ---------------------------------------------------------

    def upsert_industry(self, industry: Industry) -> None:
        with self._lock:
            self._industries[industry.id] = industry

    def upsert_index(self, index: IndexDef) -> None:
        with self._lock:
            self._indices[index.id] = index

    def industries(self) -> tuple[Industry, ...]:
        with self._lock:
            return tuple(self._industries[k] for k in sorted(self._industries))

    def indices(self) -> tuple[IndexDef, ...]:
        with self._lock:
            return tuple(self._indices[k] for k in sorted(self._indices))

    def get_industry(self, industry_id: int) -> Optional[Industry]:
        with self._lock:
            return self._industries.get(industry_id)

    def get_index(self, index_id: int) -> Optional[IndexDef]:
        with self._lock:
            return self._indices.get(index_id)

    # --- observations ----------------------------------------------------------

    def upsert_observation(self, obs: Observation) -> int:
        """Insert or overwrite by (index, industry, year, period) key.

        Returns the record id.  Overwriting keeps the existing record id so
        series length and identity are stable.
        """
        with self._lock:
            if obs.industry_id not in self._industries:
                raise UnknownIndustry(f"industry {obs.industry_id} is not registered")
            if obs.index_id not in self._indices:
                raise UnknownIndex(f"index {obs.index_id} is not registered")
            existing = self._observations.get(obs.key)
            if existing is not None:
                record_id = existing.record_id
            elif obs.record_id > 0:
                record_id = obs.record_id
                self._next_record_id = max(self._next_record_id, record_id + 1)
            else:
                record_id = self._next_record_id
                self._next_record_id += 1
            stored = Observation(
                obs.index_id, obs.industry_id, obs.value, obs.year, obs.period, record_id
            )
            self._observations[stored.key] = stored
            return record_id

    def observations(self) -> tuple[Observation, ...]:
        with self._lock:
            return tuple(
                sorted(self._observations.values(), key=lambda o: o.record_id)
            )

    def get_series(
        self,
        industry_id: int,
        index_id: int,
        time_range: Optional[tuple[Optional[float], Optional[float]]] = None,
    ) -> TimeSeries:
        """Time-sorted series for a key; unknown keys yield an empty series."""
        with self._lock:
            rows = [
                (o.time, o.value)
                for o in self._observations.values()
                if o.industry_id == industry_id and o.index_id == index_id
            ]
        if time_range is not None:
            lo, hi = time_range
            rows = [
                (t, v)
                for t, v in rows
                if (lo is None or t >= lo) and (hi is None or t <= hi)
            ]
        rows.sort(key=lambda p: p[0])
        return TimeSeries(industry_id, index_id, tuple(rows))

    # --- spreadsheet conversion ---------------------------------------------------

    def convert_spreadsheet(
        self, table: Sequence[Sequence[str]], rules: Iterable[ConversionRule]
    ) -> ConversionResult:
        """Write one observation per (rule, data row) with a numeric cell.

        Blank value cells are skipped silently; non-numeric cells are
        skipped and reported in the warnings list.  Completely blank rows
        are ignored.  A rule whose columns fall outside a row is an error.
        """
        rules = list(rules)
        result = ConversionResult(0)
        rows = [
            (i, row) for i, row in enumerate(table)
            if any(str(c).strip() for c in row)
        ]
        for rule in rules:
            if rule.industry_id not in self._industries:
                raise UnknownIndustry(f"industry {rule.industry_id} is not registered")
            if rule.index_id not in self._indices:
                raise UnknownIndex(f"index {rule.index_id} is not registered")
            for row_no, row in rows:
                needed = max(rule.source_column, rule.time_column)
                if needed >= len(row):
                    raise BadRuleColumn(
                        f"row {row_no}: rule needs column {needed}, row has {len(row)} cells"
                    )
                year, period = parse_time_cell(str(row[rule.time_column]))
                cell = str(row[rule.source_column]).strip()
                if not cell:
                    continue
                try:
                    value = float(cell)
                except ValueError:
                    result.warnings.append(
                        f"row {row_no} column {rule.source_column}: "
                        f"skipped non-numeric cell {cell!r}"
                    )
                    continue
                self.upsert_observation(
                    Observation(rule.index_id, rule.industry_id, value, year, period)
                )
                result.written += 1
        return result

    # --- persistence ---------------------------------------------------------------

    @classmethod
    def open(cls, directory) -> "HistoryStore":
        """Load a store from its directory; missing files mean empty sections."""
        store = cls()
        base = Path(directory)
        for row in _read_csv(base / "industries.csv", INDUSTRY_FIELDS):
            store.upsert_industry(
                Industry(int(row[0]), row[1], row[2], row[3], row[4] not in ("0", ""))
            )
        for row in _read_csv(base / "indices.csv", INDEX_FIELDS):
            store.upsert_index(
                IndexDef(int(row[0]), row[1], row[2], row[3], row[4] not in ("0", ""))
            )
        for row in _read_csv(base / "observations.csv", OBSERVATION_FIELDS):
            store.upsert_observation(
                Observation(
                    index_id=int(row[1]),
                    industry_id=int(row[2]),
                    value=float(row[3]),
                    year=int(row[4]),
                    period=int(row[5]) if len(row) > 5 and row[5] else 0,
                    record_id=int(row[0]),
                )
            )
        return store

    def save(self, directory) -> None:
        """Write the three CSV files, sorted by id for stable diffs."""
        base = Path(directory)
        base.mkdir(parents=True, exist_ok=True)
        with self._lock:
            industries = [self._industries[k] for k in sorted(self._industries)]
            indices = [self._indices[k] for k in sorted(self._indices)]
            observations = sorted(self._observations.values(), key=lambda o: o.record_id)
        _write_csv(
            base / "industries.csv",
            INDUSTRY_FIELDS,
            (
                (i.id, i.name, i.remark, i.type_label, int(i.enabled))
                for i in industries
            ),
        )
        _write_csv(
            base / "indices.csv",
            INDEX_FIELDS,
            ((i.id, i.name, i.remark, i.unit_label, int(i.enabled)) for i in indices),
        )
        _write_csv(
            base / "observations.csv",
            OBSERVATION_FIELDS,
            (
                (o.record_id, o.index_id, o.industry_id, repr(o.value), o.year, o.period)
                for o in observations
            ),
        )


def _read_csv(path: Path, fields: tuple[str, ...]) -> list[list[str]]:
    if not path.exists():
        return []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return []
        if [h.strip() for h in header[: len(fields)]] != list(fields):
            raise ValueError(f"{path.name}: unexpected header {header!r}")
        return [row for row in reader if any(c.strip() for c in row)]


def _write_csv(path: Path, fields: tuple[str, ...], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(fields)
        writer.writerows(rows)
