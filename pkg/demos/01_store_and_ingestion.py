#!/usr/bin/env python3
"""Build a history store from spreadsheet exports and query it back.

The store keeps three registries (industries, index definitions, dated
observations) and persists them as plain CSV. Spreadsheet exports are
ingested through rule files: each rule says which column holds one
(industry, index) series and which column holds the time.
"""
from pathlib import Path

from decisionlab import ConversionRule, HistoryStore, IndexDef, Industry

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

store = HistoryStore()

# Register who and what we measure.
store.upsert_industry(Industry(1, "gambling", type_label="tertiary"))
store.upsert_industry(Industry(2, "mining", type_label="secondary"))
store.upsert_index(IndexDef(6, "GDP", unit_label="million MOP"))

# Annual GDP of two industries, exported from a spreadsheet:
# column 0 = year, column 1 = gambling, column 2 = mining.
table = [
    ["2000", "19225.4", "2.6"],
    ["2001", "20368.6", "5.9"],
    ["2002", "22771.7", "6.1"],
    ["2003", "27340.3", "9.4"],
    ["2004", "34093.3", "12.4"],
    ["2005", "36224.2", "9.9"],
    ["2006", "41427.1", "8.8"],
    ["2007", "54552.3", "9"],
    ["2008", "63965.5", "2.5"],
]
rules = [
    ConversionRule(industry_id=1, index_id=6, source_column=1, time_column=0),
    ConversionRule(industry_id=2, index_id=6, source_column=2, time_column=0),
]

result = store.convert_spreadsheet(table, rules)
print(f"converter wrote {result.written} observations "
      f"({len(result.warnings)} warnings)")

# Query a series back, optionally restricted to a time range.
gambling = store.get_series(industry_id=1, index_id=6)
print("gambling GDP 2000-2008:")
for t, v in gambling.points:
    print(f"  {t:.0f}  {v:>10.1f}")

recent = store.get_series(1, 6, time_range=(2005, 2008))
print("restricted to 2005-2008:", recent.values)

# Persist and reload: the CSV files mirror the registry schemas.
store.save(OUT / "store")
reloaded = HistoryStore.open(OUT / "store")
assert reloaded.get_series(1, 6).points == gambling.points
print(f"store saved to {OUT / 'store'} and reloaded identically")
