"""Plugging in a custom separation oracle for an infinite constraint set.

The constraint family is a_t = (cos t, sin t) for t ranging over a half
circle.  No finite list of columns describes it, but the solver only ever
asks one question: "here is a direction y, show me a violated t or say
none exists".  Answering it needs a little trigonometry, nothing more.

The two variants differ only in whether t = pi belongs to the family,
and that single boundary point changes the answer in kind:

* on (0, pi] nothing is feasible, yet no finite subfamily combines to
  zero either; the best possible report is a bound on how thin the
  feasible region of any relaxation is, and the solver uses its whole
  contraction budget to certify one;
* on (0, pi) the ray y = (0, c) is feasible but has empty interior, so
  the solver may legitimately stop with the same thinness declaration.
"""

import math

import numpy as np

from prfeas import CustomOracle, CustomWitness, WitnessedColumn, main_algorithm

TWO_PI = 2.0 * math.pi


def make_semicircle(include_pi):
    def in_domain(t):
        return 0.0 < t <= math.pi if include_pi else 0.0 < t < math.pi

    def fn(y):
        # the margin t -> y1 cos t + y2 sin t is a sinusoid, so checking
        # its minimizer, its zero crossings, and the closed endpoint
        # covers every way the violating arc can meet the domain
        y1, y2 = float(y[0]), float(y[1])
        phi = math.atan2(y2, y1)
        candidates = [
            (phi + math.pi) % TWO_PI,
            (phi + 0.5 * math.pi) % TWO_PI,
            (phi - 0.5 * math.pi) % TWO_PI,
        ]
        if include_pi:
            candidates.append(math.pi)
        tol = 1e-14 * (abs(y1) + abs(y2))  # zero crossings round to noise
        best = None
        for t in candidates:
            if not in_domain(t):
                continue
            val = y1 * math.cos(t) + y2 * math.sin(t)
            if val <= tol and (best is None or val < best[1]):
                best = (t, val)
        if best is None:
            return None
        t = best[0]
        return WitnessedColumn(CustomWitness(t),
                               np.array([math.cos(t), math.sin(t)]))

    return fn


for include_pi, label in [(True, "(0, pi]"), (False, "(0, pi)")]:
    out = main_algorithm(CustomOracle(2, make_semicircle(include_pi)),
                         epsilon=1e-2)
    print(f"half circle {label}: {out.status}")
    print(f"  rescalings: {out.counters.rescalings} of {out.s_star}",
          f" oracle calls: {out.counters.oracle_calls}")
    if out.status == "epsilon_declared":
        print(f"  certified thinness bound: {out.epsilon}")
    elif out.status == "feasible":
        print(f"  direction: {out.y}")
