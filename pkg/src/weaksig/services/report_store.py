"""CSV reports, JSON run manifests and labelled dataset directories."""

import csv
import json
import logging
import os
from typing import Dict, List, Sequence

from ..exceptions import SignalFormatError, ValidationError
from ..models import REPORT_COLUMNS, EvalReport, LabeledPair, RunManifest
from .signal_io import read_signal, write_signal

logger = logging.getLogger(__name__)


class ReportStore:
    """
    Appends EvalReport rows to a CSV file with the fixed column order.
    """

    def __init__(self, path: str):
        """
        Initialize the ReportStore.

        Args:
            path: Path to the CSV report.
        """
        self.path = path

    def exists(self) -> bool:
        return os.path.exists(self.path)

    def append(self, reports: Sequence[EvalReport]) -> None:
        """
        Append rows, writing the header first when the file is new or empty.

        Args:
            reports: Rows to write, in order.
        """
        new_file = not self.exists() or os.path.getsize(self.path) == 0
        if not new_file:
            self._check_header()
        with open(self.path, "a", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=list(REPORT_COLUMNS))
            if new_file:
                writer.writeheader()
            for report in reports:
                writer.writerow(report.to_row())
        logger.debug(f"appended {len(reports)} row(s) to {self.path}")

    def load(self) -> List[EvalReport]:
        """
        Read every row back.

        Returns:
            Reports in file order.
        """
        self._check_header()
        with open(self.path, "r", encoding="utf-8", newline="") as f:
            return [EvalReport.from_row(row) for row in csv.DictReader(f)]

    def _check_header(self) -> None:
        with open(self.path, "r", encoding="utf-8", newline="") as f:
            header = next(csv.reader(f), [])
        if tuple(header) != REPORT_COLUMNS:
            raise ValidationError(
                f"{self.path} has a different report layout",
                details=f"expected columns {', '.join(REPORT_COLUMNS)}",
            )


class ManifestStore:
    """Saves and loads RunManifest JSON files."""

    def __init__(self, path: str):
        self.path = path

    def save(self, manifest: RunManifest) -> None:
        with open(self.path, "w", encoding="utf-8") as f:
            json.dump(manifest.to_dict(), f, indent=2, sort_keys=True)
        logger.debug(f"manifest written to {self.path}")

    def load(self) -> RunManifest:
        with open(self.path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise SignalFormatError(f"invalid manifest JSON: {e.msg}", self.path, e.pos)
        return RunManifest.from_dict(data)

    def exists(self) -> bool:
        return os.path.exists(self.path)


class DatasetStore:
    """
    A directory of labelled pairs: pairs.csv plus pre/post `.sgnl` files per pair.
    """

    INDEX = "pairs.csv"
    FIELDS = ("index", "pre", "post", "resonant", "carrier_hz")

    def __init__(self, root: str):
        self.root = root

    def save(self, pairs: Sequence[LabeledPair]) -> List[str]:
        """
        Write every pair and the index.

        Returns:
            Paths written, index last.
        """
        os.makedirs(self.root, exist_ok=True)
        written: List[str] = []
        rows: List[Dict[str, str]] = []
        for i, pair in enumerate(pairs):
            names = {"pre": f"pair_{i:05d}_pre.sgnl", "post": f"pair_{i:05d}_post.sgnl"}
            write_signal(os.path.join(self.root, names["pre"]), pair.pre)
            write_signal(os.path.join(self.root, names["post"]), pair.post)
            written.extend(os.path.join(self.root, name) for name in names.values())
            rows.append(
                {
                    "index": str(i),
                    "pre": names["pre"],
                    "post": names["post"],
                    "resonant": "1" if pair.resonant else "0",
                    "carrier_hz": repr(pair.carrier_hz),
                }
            )
        index_path = os.path.join(self.root, self.INDEX)
        with open(index_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=list(self.FIELDS))
            writer.writeheader()
            writer.writerows(rows)
        written.append(index_path)
        logger.info(f"saved {len(rows)} pairs under {self.root}")
        return written

    def load(self) -> List[LabeledPair]:
        with open(os.path.join(self.root, self.INDEX), "r", encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
        return [
            LabeledPair(
                pre=read_signal(os.path.join(self.root, row["pre"])),
                post=read_signal(os.path.join(self.root, row["post"])),
                resonant=row["resonant"] == "1",
                carrier_hz=float(row["carrier_hz"]),
            )
            for row in rows
        ]
