import csv
import json
import math
import os
from datetime import datetime
from pathlib import Path

from boundary_qed import settings

CSV_HEADER = ("variable", "omega_bd", "pair", "mechanism", "part", "channel", "rate")


def format_number(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    if not math.isfinite(value):
        raise ValueError(f"refusing to write non-finite value {value}")
    return format(value, ".17g")


def write_rates_csv(path, rows) -> Path:
    """Write sweep rows (variable, omega, pair, mechanism, part, channel, rate) to path.

    Args:
        path: Output file; parent directories are created
        rows: Iterable of 7-tuples in CSV column order
    """
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for variable, omega, pair, mechanism, part, channel, rate in rows:
            writer.writerow(
                (format_number(variable), format_number(omega), pair, mechanism, part, channel, format_number(rate))
            )
            count += 1

    print(f"📁 {count} rows saved to {path}")
    return path


def save_data_to_json(
    data: list,
    filename_prefix: str = "verification",
    data_dir: str | os.PathLike | None = None,
    file_prefix: str = "",
):
    """Save data to JSON file with timestamp.

    Args:
        data: List of records to save
        filename_prefix: Prefix for the filename
        data_dir: Directory to save the file in (defaults to settings.OUTPUT_DIR)
        file_prefix: Additional prefix for the filename (e.g., "failed_")
    """
    data_dir = Path(data_dir or settings.OUTPUT_DIR)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    filename = data_dir / f"{file_prefix}{filename_prefix}_{len(data)}_{timestamp}.json"

    # Create data directory if it doesn't exist
    data_dir.mkdir(parents=True, exist_ok=True)

    with open(filename, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False)

    print(f"📁 {len(data)} records saved to {filename}")
    return filename
