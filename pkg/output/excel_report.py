"""
Sweep report workbook: one row per cell, ratio columns colour-coded against the
cross-n growth tolerance, and a Config sheet echoing the sweep.
"""
from __future__ import annotations
from pathlib import Path
from typing import Any, Mapping, Sequence

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side

from output.writers import SWEEP_FIELDS

GROWTH_TOLERANCE = 3.0   # ratio at the largest n may be at most 3x the smallest-n value
RATIO_FIELDS = ("D_over_n", "max_load_over_sqrt_n")

WITHIN_FILL = PatternFill("solid", fgColor="C6EFCE")    # Green
OUTSIDE_FILL = PatternFill("solid", fgColor="FFC7CE")   # Red
FAILED_FILL = PatternFill("solid", fgColor="D9D9D9")    # Gray
HEADER_FILL = PatternFill("solid", fgColor="1F4E78")

WITHIN_FONT = Font(color="006100")
OUTSIDE_FONT = Font(color="9C0006")
FAILED_FONT = Font(color="808080", italic=True)
HEADER_FONT = Font(color="FFFFFF", bold=True)

THIN_BORDER = Border(
    left=Side(style="thin"),
    right=Side(style="thin"),
    top=Side(style="thin"),
    bottom=Side(style="thin"),
)


def _baselines(rows: Sequence[Mapping[str, Any]]) -> dict[tuple, dict[str, float]]:
    """Smallest-n value of each ratio per (tree family, c, evolver) group."""
    base: dict[tuple, tuple[int, dict[str, float]]] = {}
    for row in rows:
        if row.get("status") != "ok":
            continue
        key = (str(row["tree"]).split(":")[0], row["c"], row["evolver"])
        n = int(row["n"])
        if key not in base or n < base[key][0]:
            base[key] = (n, {f: row.get(f) for f in RATIO_FIELDS})
    return {k: v[1] for k, v in base.items()}


def within_tolerance(value: float | None, baseline: float | None, tolerance: float = GROWTH_TOLERANCE) -> bool:
    if value is None or baseline is None:
        return False
    return value <= tolerance * baseline


def write_sweep_xlsx(
    rows: Sequence[Mapping[str, Any]],
    path: str | Path,
    config: Mapping[str, Any],
    tolerance: float = GROWTH_TOLERANCE,
) -> dict:
    """Write the report; returns counts of cells within and outside tolerance."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    wb = Workbook()
    ws = wb.active
    ws.title = "Sweep"

    for col, name in enumerate(SWEEP_FIELDS, start=1):
        cell = ws.cell(row=1, column=col, value=name)
        cell.fill = HEADER_FILL
        cell.font = HEADER_FONT
        cell.border = THIN_BORDER
        cell.alignment = Alignment(horizontal="center")

    baselines = _baselines(rows)
    stats = {"within": 0, "outside": 0, "failed": 0}
    for r, row in enumerate(rows, start=2):
        failed = row.get("status") != "ok"
        key = (str(row["tree"]).split(":")[0], row["c"], row["evolver"])
        for col, name in enumerate(SWEEP_FIELDS, start=1):
            cell = ws.cell(row=r, column=col, value=row.get(name))
            cell.border = THIN_BORDER
            if failed:
                cell.fill = FAILED_FILL
                cell.font = FAILED_FONT
            elif name in RATIO_FIELDS:
                ok = within_tolerance(row.get(name), baselines.get(key, {}).get(name), tolerance)
                cell.fill = WITHIN_FILL if ok else OUTSIDE_FILL
                cell.font = WITHIN_FONT if ok else OUTSIDE_FONT
                stats["within" if ok else "outside"] += 1
            elif name == "lemma_violations":
                ok = row.get(name) == 0
                cell.fill = WITHIN_FILL if ok else OUTSIDE_FILL
                cell.font = WITHIN_FONT if ok else OUTSIDE_FONT
        if failed:
            stats["failed"] += 1

    for col in range(1, len(SWEEP_FIELDS) + 1):
        ws.column_dimensions[ws.cell(row=1, column=col).column_letter].width = 18
    ws.column_dimensions["A"].width = 40
    ws.freeze_panes = "A2"

    _add_config_sheet(wb, config, tolerance)
    wb.save(path)
    stats["output_path"] = str(path)
    return stats


def _add_config_sheet(wb: Workbook, config: Mapping[str, Any], tolerance: float) -> None:
    ws = wb.create_sheet("Config")
    ws.cell(row=1, column=1, value="Setting").font = Font(bold=True)
    ws.cell(row=1, column=2, value="Value").font = Font(bold=True)
    row = 2
    for key in sorted(config):
        ws.cell(row=row, column=1, value=key)
        ws.cell(row=row, column=2, value=str(config[key]))
        row += 1
    row += 1
    ws.cell(row=row, column=1, value="Legend").font = Font(bold=True)
    legend = [
        (WITHIN_FILL, f"Within {tolerance:g}x of the smallest-n value"),
        (OUTSIDE_FILL, f"More than {tolerance:g}x the smallest-n value, or lemma violations"),
        (FAILED_FILL, "Cell failed"),
    ]
    for fill, text in legend:
        row += 1
        ws.cell(row=row, column=1).fill = fill
        ws.cell(row=row, column=2, value=text)
    ws.column_dimensions["A"].width = 24
    ws.column_dimensions["B"].width = 70
