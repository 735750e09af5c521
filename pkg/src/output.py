"""Rendering of run results as JSON, CSV or rich text."""
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

import pandas as pd
from rich.console import Console
from rich.table import Table

logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """Everything one CLI invocation produced.

    Attributes:
        command (str): Subcommand.
        config (Dict[str, Any]): The validated RunConfig, as a dict.
        reports (List[Dict[str, Any]]): IdentityReport/ValidationReport dicts, in run order.
        tables (List[Dict[str, Any]]): DimensionTable dicts and other records.
    """
    command: str
    config: Dict[str, Any]
    reports: List[Dict[str, Any]] = field(default_factory=list)
    tables: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        ok = all(r.get("passed", r.get("valid", True)) for r in self.reports)
        return ok and all(t.get("match", True) for t in self.tables)

    def to_dict(self) -> Dict[str, Any]:
        return {"command": self.command, "config": self.config, "reports": self.reports,
                "tables": self.tables, "passed": self.passed}


def render_json(result: RunResult) -> str:
    return json.dumps(result.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def table_frame(table: Dict[str, Any]) -> pd.DataFrame:
    """A dimension table as a DataFrame with columns nu_1, ..., nu_r, dim."""
    rows = table.get("rows", [])
    width = len(rows[0]) - 1 if rows else 0
    columns = [f"nu_{k + 1}" for k in range(width)] + ["dim"]
    return pd.DataFrame(rows, columns=columns)


def summary_frame(result: RunResult) -> pd.DataFrame:
    records = []
    for r in result.reports:
        name = r.get("suite", r.get("subject", ""))
        failures = r.get("failures", r.get("issues", []))
        records.append({"suite": name, "checked": r.get("checked", len(failures)),
                        "failures": len(failures), "passed": r.get("passed", r.get("valid", True))})
    return pd.DataFrame(records, columns=["suite", "checked", "failures", "passed"])


def render_csv(result: RunResult) -> str:
    buffer = io.StringIO()
    summary_frame(result).to_csv(buffer, index=False)
    for table in result.tables:
        if "rows" in table:
            buffer.write(f"\n# {table['name']}\n")
            table_frame(table).to_csv(buffer, index=False)
        else:
            buffer.write("\n")
            pd.DataFrame([table]).to_csv(buffer, index=False)
    return buffer.getvalue()


def render_text(result: RunResult) -> str:
    console = Console(file=io.StringIO(), width=120, force_terminal=False, color_system=None)
    summary = Table(title=f"{result.command}: {'PASSED' if result.passed else 'FAILED'}")
    for column in ("suite", "checked", "failures", "passed"):
        summary.add_column(column)
    for _, row in summary_frame(result).iterrows():
        summary.add_row(str(row["suite"]), str(row["checked"]), str(row["failures"]), str(row["passed"]))
    console.print(summary)
    for table in result.tables:
        if "rows" in table:
            frame = table_frame(table)
            view = Table(title=table["name"])
            for column in frame.columns:
                view.add_column(column)
            for row in frame.itertuples(index=False):
                view.add_row(*(str(x) for x in row))
            console.print(view)
        else:
            console.print(" ".join(f"{k}={_text_value(v)}" for k, v in table.items()))
    for r in result.reports:
        for note in r.get("skipped", []):
            console.print(f"[{r.get('suite', '')}] skipped: {note}")
    return console.file.getvalue()


def _text_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


def write_result(result: RunResult, fmt: str, path: str = None) -> str:
    """Renders and writes to ``path`` (stdout when None); returns the rendered text.

    Raises:
        ValueError: On an unknown format.
    """
    if fmt not in RENDERERS:
        raise ValueError(f"unknown output format {fmt!r}")
    text = RENDERERS[fmt](result)
    if path is None:
        print(text, end="")
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info(f"Wrote {fmt} report to {path}")
    return text
