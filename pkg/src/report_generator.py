"""Table writer and Markdown summary for experiment results."""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
from jinja2 import Template

from .config import OutputConfig
from .exceptions import PhantomPurityError
from .models.experiment import ExperimentResult, OutputFormat

logger = logging.getLogger(__name__)


def split_complex(frame: pd.DataFrame) -> pd.DataFrame:
    """Replace every complex column `x` by `x_re` and `x_im`, keeping column order."""
    columns = {}
    for name in frame.columns:
        series = frame[name]
        if np.iscomplexobj(series.to_numpy()):
            values = series.to_numpy()
            columns[f"{name}_re"] = values.real
            columns[f"{name}_im"] = values.imag
        else:
            columns[name] = series
    return pd.DataFrame(columns, index=frame.index)


def _metadata_text(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def _csv_text(frame: pd.DataFrame, metadata: dict[str, Any]) -> str:
    header = "".join(f"# {key}: {_metadata_text(value)}\n" for key, value in metadata.items())
    # str() of numpy floats is the shortest round-trip repr
    body = frame.astype(str).to_csv(index=False, lineterminator="\n")
    return header + body


def _json_value(value: Any) -> Any:
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _json_text(frame: pd.DataFrame, metadata: dict[str, Any]) -> str:
    payload = {
        "metadata": {k: _json_value(v) for k, v in metadata.items()},
        "columns": [str(c) for c in frame.columns],
        "data": {str(c): [_json_value(v) for v in frame[c].tolist()] for c in frame.columns},
    }
    return json.dumps(payload, indent=2, ensure_ascii=False)


def _write_atomic(files: dict[Path, str]):
    """Write every file to a temporary sibling, then rename them all into place.

    A failure in either phase leaves the previous set of files as it was.
    """
    staged = []
    try:
        for path, content in files.items():
            handle = tempfile.NamedTemporaryFile(
                "w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}.", suffix=".tmp", delete=False
            )
            with handle:
                handle.write(content)
            staged.append((Path(handle.name), path))
    except OSError:
        for temp, _ in staged:
            temp.unlink(missing_ok=True)
        raise

    committed, backups = [], []
    try:
        for temp, path in staged:
            if path.exists():
                backup = path.with_name(f".{path.name}.bak")
                os.replace(path, backup)
                backups.append((backup, path))
            os.replace(temp, path)
            committed.append(path)
    except OSError:
        logger.warning("rolling back %d of %d files", len(committed), len(staged))
        for path in committed:
            path.unlink(missing_ok=True)
        for backup, path in backups:
            os.replace(backup, path)
        for temp, _ in staged:
            temp.unlink(missing_ok=True)
        raise
    for backup, _ in backups:
        backup.unlink(missing_ok=True)


def load_table(path: Union[str, Path]) -> tuple[dict[str, str], pd.DataFrame]:
    """Read a table written by ReportGenerator back into (metadata, DataFrame).

    CSV metadata values come back as strings; JSON metadata keeps its types.
    """
    path = Path(path)
    if path.suffix == ".json":
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
        frame = pd.DataFrame({c: payload["data"][c] for c in payload["columns"]}, columns=payload["columns"])
        return payload["metadata"], frame

    metadata = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("# "):
                break
            key, _, value = line[2:].rstrip("\n").partition(": ")
            metadata[key] = value
    frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    for column in frame.columns:
        if column.endswith("_exact"):
            frame[column] = frame[column].astype(str)
    return metadata, frame


class ReportGenerator:
    """Writes experiment tables as CSV or JSON plus a Markdown summary."""

    def __init__(self, output_config: Optional[OutputConfig] = None):
        """Initialize the report generator.

        Args:
            output_config: Output configuration
        """
        self.config = output_config or OutputConfig()

    def table_files(self, result: ExperimentResult, fmt: OutputFormat) -> dict[str, str]:
        """Render every table of a result to file name -> content."""
        files = {}
        for name, frame in result.tables.items():
            frame = split_complex(frame)
            metadata = {**result.metadata, "table": name}
            if fmt == OutputFormat.JSON:
                files[f"{result.experiment.value}_{name}.json"] = _json_text(frame, metadata)
            else:
                files[f"{result.experiment.value}_{name}.csv"] = _csv_text(frame, metadata)
        return files

    def generate_summary(self, result: ExperimentResult, files: list[str]) -> str:
        """Markdown overview: parameters, headline numbers and per-table column lists."""
        template = Template(SUMMARY_TEMPLATE)
        headline = {
            k: v for k, v in result.metadata.items()
            if k not in ("spec", "experiment", "version", "spec_hash")
        }
        tables = [
            {
                "name": name,
                "rows": len(frame),
                "columns": ", ".join(f"`{c}`" for c in split_complex(frame).columns),
            }
            for name, frame in result.tables.items()
        ]
        return template.render(
            experiment=result.experiment.value,
            version=result.metadata.get("version", ""),
            spec_hash=result.metadata.get("spec_hash", ""),
            headline=headline,
            tables=tables,
            files=files,
            notes=result.notes,
        )

    def save_result(
        self,
        result: ExperimentResult,
        out_dir: Optional[Union[str, Path]] = None,
        fmt: Optional[Union[str, OutputFormat]] = None,
    ) -> dict[str, Path]:
        """Write all tables (and the summary) of a result.

        Args:
            result: Experiment result
            out_dir: Target directory (defaults to the configured output directory)
            fmt: csv or json (defaults to the configured format)

        Returns:
            Dict mapping table names (and "summary") to file paths
        """
        target = Path(out_dir) if out_dir is not None else self.config.output_dir
        fmt = OutputFormat(fmt or self.config.default_format)
        try:
            target.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise PhantomPurityError(f"cannot create output directory {target}: {exc}") from exc

        rendered = self.table_files(result, fmt)
        paths = {}
        files = {}
        for (name, _), (filename, content) in zip(result.tables.items(), rendered.items()):
            paths[name] = target / filename
            files[target / filename] = content

        if self.config.generate_markdown:
            summary_path = target / f"{result.experiment.value}_summary.md"
            files[summary_path] = self.generate_summary(result, list(rendered))
            paths["summary"] = summary_path

        _write_atomic(files)
        logger.info("wrote %d files to %s", len(files), target)
        return paths


# Report Templates

SUMMARY_TEMPLATE = """# 实验结果摘要: {{ experiment }}

**版本**: {{ version }}
**参数哈希**: `{{ spec_hash }}`

---

## 📊 关键参数与结果

| 指标 | 数值 |
|------|------|
{% for key, value in headline.items() %}
| {{ key }} | {{ value }} |
{% endfor %}

---

## 📋 数据表

| 表名 | 行数 | 列 |
|------|------|----|
{% for table in tables %}
| {{ table.name }} | {{ table.rows }} | {{ table.columns }} |
{% endfor %}

## 📁 输出文件

{% for f in files %}
- `{{ f }}`
{% endfor %}
{% if notes %}

## 📝 备注

{% for note in notes %}
- {{ note }}
{% endfor %}
{% endif %}
"""
