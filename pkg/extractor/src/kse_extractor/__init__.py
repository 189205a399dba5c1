"""Export vision-model features and labels as KSE files for analysis."""

__version__ = "0.1.0"

from .jobs import ExtractionJob  # noqa: E402
from .extract import extract  # noqa: E402
from .kse import read_kse, write_kse  # noqa: E402

__all__ = ["__version__", "ExtractionJob", "extract", "read_kse", "write_kse"]
