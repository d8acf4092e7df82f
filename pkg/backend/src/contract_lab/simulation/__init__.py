"""
Seeded Monte-Carlo oracle for single-generation profits and relationship NPVs.
"""

from .models import SimConfig, SimEstimate
from .oracle import estimate_relationship_npv, estimate_single_gen_profit, sample_demand

__all__ = ['SimConfig', 'SimEstimate', 'estimate_relationship_npv', 'estimate_single_gen_profit', 'sample_demand']
