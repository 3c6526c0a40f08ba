"""Shared fixtures: reference datasets and a populated store."""
import csv
from pathlib import Path

import pytest

from decisionlab.store import HistoryStore, IndexDef, Industry, load_rules

DATA_DIR = Path(__file__).parent / "data"

# Reference series used across the suite (values as printed in the
# original statistical tables; the CSV fixtures carry the same text).
EMPLOYMENT_MANUFACTURING = (42.0, 37.7, 36.1, 35.3, 29.5, 24.0, 24.6)  # 2002-2008
GAMBLING_REVENUE = (
    23496.0, 30315.1, 43510.9, 47133.7, 57521.3, 83846.8, 109826.3, 120383.0,
)  # 2002-2009
EMPLOYMENT_SEASONAL = (20.1, 22.0, 23.0, 26.7, 27.5, 28.7, 33.3, 33.7)  # 2004-2005 by season
TAX_REVENUE_SEASONAL = (3202.0, 3578.4, 4232.7, 4223.5, 3993.3, 4524.9, 4553.4, 4246.9)
GAMBLING_GDP = (
    19225.4, 20368.6, 22771.7, 27340.3, 34093.3, 36224.2, 41427.1, 54552.3, 63965.5,
)  # 2000-2008
MINING_GDP = (2.6, 5.9, 6.1, 9.4, 12.4, 9.9, 8.8, 9.0, 2.5)

# Store keys used by the fixtures. Industries: 1 gambling, 2 mining,
# 6 manufacturing, 10 economy-wide. Indices: 2 tax revenue, 3 employed
# population, 4 gross revenue, 6 GDP.
INDUSTRIES = (
    Industry(1, "gambling", type_label="tertiary"),
    Industry(2, "mining", type_label="secondary"),
    Industry(6, "manufacturing", type_label="secondary"),
    Industry(10, "economy-wide"),
)
INDICES = (
    IndexDef(2, "total tax revenue", unit_label="million MOP"),
    IndexDef(3, "employed population", unit_label="thousand"),
    IndexDef(4, "gross revenue", unit_label="million MOP"),
    IndexDef(6, "GDP", remark="production approach", unit_label="million MOP"),
)

DATASETS = (
    ("employment_manufacturing", 7),
    ("gambling_revenue", 8),
    ("employment_tax_seasonal", 16),
    ("gdp_gambling_mining", 18),
)


def read_table(name: str) -> list[list[str]]:
    with open(DATA_DIR / f"{name}.csv", newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def register_all(st: HistoryStore) -> None:
    for industry in INDUSTRIES:
        st.upsert_industry(industry)
    for index in INDICES:
        st.upsert_index(index)


@pytest.fixture
def seeded_store() -> HistoryStore:
    """Store populated by running the converter over every CSV fixture."""
    st = HistoryStore()
    register_all(st)
    for name, expected in DATASETS:
        result = st.convert_spreadsheet(read_table(name), load_rules(DATA_DIR / f"{name}.rules"))
        assert result.written == expected, f"{name}: wrote {result.written}"
        assert result.warnings == []
    return st


@pytest.fixture
def store_dir(seeded_store, tmp_path) -> Path:
    """The seeded store saved to disk, for CLI and service tests."""
    target = tmp_path / "store"
    seeded_store.save(target)
    return target
