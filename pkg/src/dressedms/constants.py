"""Physical constants (SI) used across the package."""

import math

HBAR = 1.054571817e-34        # J s
PLANCK_H = 6.62607015e-34     # J s
MU_B = 9.2740100783e-24       # J/T
E_CHARGE = 1.602176634e-19    # C
EPSILON_0 = 8.8541878128e-12  # F/m
AMU = 1.66053906660e-27       # kg

# 171Yb+ ion mass
M_YB171 = 170.936323 * AMU

# First-order Zeeman scaling of the |+-1> levels (g_F = 1): mu_B/h,
# i.e. 1.3996 MHz/G in lab units.
ZEEMAN_HZ_PER_T = MU_B / PLANCK_H
GAUSS_TO_TESLA = 1e-4

TWO_PI = 2.0 * math.pi
