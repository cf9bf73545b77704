"""Strict interior points of products of second order cones.

The direction y must place x = A^T y strictly inside every cone block:
the leading coordinate has to dominate the norm of the rest.  Violated
blocks are separated by the boundary vector (1, -tail/||tail||), whose
margin is exactly lead - ||tail||.
"""

import numpy as np

from prfeas import Socp, main_algorithm

# Two blocks of sizes 3 and 2 over a two dimensional direction space.
A = np.array([
    [1.0, 0.2, -0.1, 0.8, 0.0],
    [0.1, -0.3, 0.2, 0.1, 0.4],
])
inst = Socp(A, blocks=(3, 2))
out = main_algorithm(inst, epsilon=1e-6)
print("two blocks:", out.status)
print("  y =", out.y)
x = A.T @ out.y
for sl, size in zip(inst.block_slices(), inst.blocks):
    lead, tail = x[sl][0], x[sl][1:]
    print(f"  block of size {size}: margin {lead - np.linalg.norm(tail):.6f}")

# Two one dimensional cones pulling the same scalar direction opposite
# ways: no y can satisfy both, and the two boundary vectors combine to
# the zero functional with equal weights.
closed = Socp(np.array([[1.0, -1.0]]), blocks=(1, 1))
out = main_algorithm(closed, epsilon=1e-3)
print("opposed rays:", out.status)
if out.weights is not None:
    for witness, weight in out.weights:
        print("  boundary vector", witness.v, "weight", weight)
else:
    print("  declared width bound:", out.epsilon)
