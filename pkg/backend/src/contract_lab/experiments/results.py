"""
CSV output for reports, factorial runs and figure data.

Floats are written with 12 significant digits, '.' as decimal separator and no
thousands separators, so reruns with the same inputs are byte-identical.
"""

import logging
from pathlib import Path
from typing import Optional

import pandas as pd

from .. import get_settings
from ..core.models import OutcomeReport

LOGGER = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


class ResultsWriter:
    """
    Writes every CSV the CLI produces under one output directory.

    Reports are appended to a single file so that repeated scenario runs accumulate;
    tables (factorial rows, summaries, figure data) are rewritten on each call.
    """

    def __init__(self, output_dir: Optional[Path] = None):
        """
        Args:
            output_dir: Directory for CSV files. Defaults to CONTRACTLAB_OUTPUT_DIR.
        """
        if output_dir is None:
            output_dir = get_settings().output_dir
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(exist_ok=True, parents=True)
        self.REPORTS_FILE = self.output_dir / "reports.csv"
        LOGGER.info("writing results to %s", self.output_dir.absolute())

    def resolve(self, name_or_path) -> Path:
        """Bare file names land in output_dir; paths with a directory are used as given."""
        path = Path(name_or_path)
        if path.parent == Path("."):
            return self.output_dir / path
        path.parent.mkdir(exist_ok=True, parents=True)
        return path

    def write_table(self, frame: pd.DataFrame, name_or_path) -> Path:
        path = self.resolve(name_or_path)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        LOGGER.info("wrote %d rows to %s", len(frame), path)
        return path

    def append_report(self, report: OutcomeReport, name_or_path=None, scenario: str = "") -> Path:
        """Append one report as a CSV row; the header is written only for a new file."""
        path = self.resolve(name_or_path) if name_or_path is not None else self.REPORTS_FILE
        row = report_row(report, scenario)
        new_file = not path.exists()
        row.to_csv(path, mode="a", header=new_file, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        LOGGER.info("appended %s report to %s", report.contract, path)
        return path


REPORT_COLUMNS = (
    "scenario", "contract", "wholesale_price", "penalty", "capacity", "supplier_profit", "oem_profit",
    "chain_profit", "first_best_capacity", "first_best_profit", "efficiency", "supplier_npv", "oem_npv",
    "chain_npv", "oem_fraction", "expected_duration",
)


def report_row(report: OutcomeReport, scenario: str = "") -> pd.DataFrame:
    """One-row frame with fixed columns; diagnostics are not part of the report CSV schema."""
    data = report.model_dump(exclude={"notes", "diagnostics"})
    data["scenario"] = scenario
    return pd.DataFrame([[data[c] for c in REPORT_COLUMNS]], columns=list(REPORT_COLUMNS))


def read_table(path) -> pd.DataFrame:
    return pd.read_csv(path)
