"""Experiment orchestration: configs, single runs, comparisons, sweeps and reports."""

from .config_parser import load_config, parse_config, read_config, resolve_config, resolve_hyperparams
from .experiment import compare_methods, run_experiment
from .report import REPORT_COLUMNS, format_table, output_dir, report_row, summary_text, write_csv
from .sweep import SWEEP_COLUMNS, SweepManager, SweepPoint, run_sweep, run_sweep_async, sweep_points
