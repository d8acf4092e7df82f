"""
Special functions behind the closed forms: real Lambert W and integer-shape incomplete gamma.
"""

from .lambert import WBranch, lambert_w, lambert_w0_of_exp, lambert_wm1_of_negexp
from .gamma import reg_lower_gamma_int, reg_upper_gamma_int

__all__ = ['WBranch', 'lambert_w', 'lambert_w0_of_exp', 'lambert_wm1_of_negexp', 'reg_lower_gamma_int', 'reg_upper_gamma_int']
