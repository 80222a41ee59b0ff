"""Output envelope and the JSON / CSV / plain encoders used by the CLI."""
import csv
import io
from dataclasses import dataclass, field
from typing import Any, Sequence

from pydantic import BaseModel, Field
from rich import box
from rich.console import Console
from rich.table import Table as RichTable

SCHEMA_VERSION = "cicriteria/1"
FORMATS = ("json", "csv", "plain")


class OutputEnvelope(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    result: Any = None
    notes: list[str] = Field(default_factory=list)


@dataclass
class Table:
    """Flat view of a result; the column tuple is part of the CSV schema."""

    columns: tuple[str, ...]
    rows: list[Sequence[Any]] = field(default_factory=list)


def csv_schema(command: str) -> str:
    return f"cicriteria/{command}/csv/1"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_json(envelope: OutputEnvelope) -> str:
    return envelope.model_dump_json(indent=2)


def to_csv(envelope: OutputEnvelope, table: Table) -> str:
    out = io.StringIO()
    out.write(f"# schema: {csv_schema(envelope.command)}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(value) for value in row])
    return out.getvalue()


def to_plain(envelope: OutputEnvelope, table: Table) -> str:
    rich_table = RichTable(box=box.SIMPLE_HEAD, show_edge=False)
    for column in table.columns:
        rich_table.add_column(column)
    for row in table.rows:
        rich_table.add_row(*(_cell(value) for value in row))
    console = Console(
        file=io.StringIO(), width=240, color_system=None, record=True, soft_wrap=True
    )
    console.print(rich_table)
    for note in envelope.notes:
        console.print(f"note: {note}", markup=False, highlight=False)
    return console.export_text()


def render(envelope: OutputEnvelope, table: Table, fmt: str) -> str:
    if fmt == "json":
        return to_json(envelope)
    if fmt == "csv":
        return to_csv(envelope, table)
    if fmt == "plain":
        return to_plain(envelope, table)
    raise ValueError(f"unknown output format {fmt!r}")
