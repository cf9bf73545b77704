"""Feasibility of finite column systems, end to end.

A system is given by columns a_1..a_n; we ask for a direction y with
a_t^T y > 0 for every t.  When no such direction exists the solver
returns nonnegative weights combining the columns to zero, which proves
it.  Both answers are re-verified before they are reported.
"""

import numpy as np

from prfeas import FiniteLp, main_algorithm

# Three columns spread over the right half plane: the all-positive
# direction is easy to find and the first oracle query already passes.
wide_open = FiniteLp(np.array([
    [1.0, 0.8, 0.3],
    [0.1, -0.5, 0.9],
]))
out = main_algorithm(wide_open, epsilon=1e-6)
print("wide open system:", out.status)
print("  direction:", out.y)
print("  smallest margin:", out.verification.residual)

# Antipodal pairs leave no room at all: x = (1/2, 1/2) on either pair
# combines to zero, and that is what the solver discovers.
blocked = FiniteLp(np.array([
    [1.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, -1.0],
]))
out = main_algorithm(blocked, epsilon=1e-6)
print("blocked system:", out.status)
for witness, x in out.weights:
    print(f"  column {witness.i} gets weight {x}")
print("  combination residual:", out.verification.residual)

# A wedge of half width 0.001: feasible, but only just.  Watch the
# solver contract the geometry until the wedge is wide enough to hit.
thin = FiniteLp(np.array([
    [1.0, -1.0],
    [1e-3, 1e-3],
]))
out = main_algorithm(thin, epsilon=1e-6)
print("thin wedge:", out.status)
print("  rescaling rounds used:", out.counters.rescalings,
      "of budget", out.s_star)
print("  inner iterations:", out.counters.bp_iterations)
print("  direction found:", out.y)
