"""
Scenario files, the factorial harness, figure data and CSV output.
"""

from .factorial import render_summary, run_factorial
from .figures import emit_figure_data, figure_ids
from .models import Directive, ExperimentGrid, FactorialResult, Scenario
from .reports import attach_simulation, check_scenario, evaluate_contract, evaluate_scenario, render_report, run_scenario
from .results import ResultsWriter, read_table
from .scenario import load_grid, load_scenario, parse_grid, parse_scenario, render_scenario

__all__ = [
    'render_summary', 'run_factorial', 'emit_figure_data', 'figure_ids',
    'Directive', 'ExperimentGrid', 'FactorialResult', 'Scenario',
    'attach_simulation', 'check_scenario', 'evaluate_contract', 'evaluate_scenario', 'render_report', 'run_scenario',
    'ResultsWriter', 'read_table', 'load_grid', 'load_scenario', 'parse_grid', 'parse_scenario', 'render_scenario',
]
