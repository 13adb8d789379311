import csv
import json
import os
from pathlib import Path
from typing import Any, List, Optional, Sequence

import numpy as np

from qdcss.config.settings import settings


class FileService:
    """Service for file system operations."""

    @staticmethod
    def get_output_path(name: str) -> Path:
        """Resolve ``name`` inside the configured output directory; absolute paths are kept."""
        return settings.OUTPUT_DIR / name

    @staticmethod
    def ensure_directory(path: Path) -> None:
        """Ensure a directory exists."""
        os.makedirs(path, exist_ok=True)

    @staticmethod
    def save_json(path: Path, data: Any) -> None:
        """Save data as JSON to a file."""
        path = Path(path)
        FileService.ensure_directory(path.parent)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, default=str)
            f.write("\n")

    @staticmethod
    def load_json(path: Path) -> Optional[Any]:
        """Load JSON data from a file; None if it does not exist."""
        path = Path(path)
        if not path.exists():
            return None
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)

    @staticmethod
    def save_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
        """Save rows under a header line."""
        path = Path(path)
        FileService.ensure_directory(path.parent)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)

    @staticmethod
    def load_csv(path: Path) -> List[List[str]]:
        """Load all rows of a CSV file, header included."""
        with open(path, "r", encoding="utf-8", newline="") as f:
            return list(csv.reader(f))

    @staticmethod
    def save_matrix_text(path: Path, dense: np.ndarray) -> None:
        """Save a 0/1 matrix, one row per line without separators."""
        path = Path(path)
        FileService.ensure_directory(path.parent)
        lines = ["".join("1" if bit else "0" for bit in row) for row in np.asarray(dense)]
        with open(path, "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")
