"""
Univariate solvers shared by every contract module.
"""

from .models import SolveConfig, SolveResult
from .solvers import bisect_root, golden_iterations, golden_section_max, grid_guard, maximize_capacity

__all__ = ['SolveConfig', 'SolveResult', 'bisect_root', 'golden_iterations', 'golden_section_max', 'grid_guard',
           'maximize_capacity']
