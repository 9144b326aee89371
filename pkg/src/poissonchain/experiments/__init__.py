from .missrate import MissRateRow, estimate_miss_rate
from .render import render_svg
from .sweep import SWEEP_COLUMNS, read_sweep, sweep
from .verify import Report, verify_lemma_suite

__all__ = [
    "MissRateRow", "estimate_miss_rate", "render_svg",
    "SWEEP_COLUMNS", "read_sweep", "sweep",
    "Report", "verify_lemma_suite",
]
