"""Projection-and-rescaling solver for homogeneous feasibility systems.

The solver decides, for a constraint family presented through a separation
oracle, between three outcomes:

* ``feasible`` -- a direction ``y`` with ``a_t^T y > 0`` for every
  constraint, verified by a final oracle query;
* ``dual_certificate`` -- finitely many positive weights on violated
  constraints whose columns combine to (numerically) zero, verified against
  a relative-residual bound;
* ``epsilon_declared`` -- a certified bound: the set of feasible directions
  inside the unit box is so thin that every m-tuple drawn from it has
  absolute determinant at most epsilon.

The inner loop maintains a convex combination z of rescaled, normalized
constraint columns and drives ||z|| down; each failed inner run supplies a
direction along which the space is contracted by one half, which inflates
the (rescaled) feasible cone until either outcome becomes easy to find or
the budget of contractions certifies the epsilon declaration.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import certify
from .linalg import (
    Singular,
    SingularUpdate,
    inverse_with_factorization,
    smw_inverse_update,
)
from .oracle import ProblemInstance, Witness, WitnessedColumn, query

__all__ = [
    "ConfigError",
    "DegenerateColumn",
    "CoincidentPoints",
    "IterationBoundViolated",
    "RescalingState",
    "ConvexCombination",
    "SolverConfig",
    "SolveCounters",
    "SolveOutcome",
    "BasicProcedureResult",
    "SolveTrace",
    "step_alpha",
    "normalize_column",
    "apply_scaling",
    "rescale_matrix",
    "rescale_budget",
    "basic_procedure",
    "main_algorithm",
]

#: ||z|| at or below this is treated as the exact-zero aggregate.
ZERO_AGGREGATE_TOL = 1e-12

#: Minimum distance between the aggregate and an incoming unit column.
COINCIDENT_TOL = 1e-14

#: Scaled column norms below this cannot be normalized meaningfully.
DEGENERATE_COLUMN_TOL = 1e-300

#: Weights at or below this are clamped to zero and dropped.
WEIGHT_FLOOR = 1e-15

#: Tolerance on ||G B - I||_inf for the maintained basis inverse.
G_RESIDUAL_TOL = 1e-8

#: How many eliminations between basis-inverse residual re-checks.
G_RECHECK_INTERVAL = 64

#: Rank threshold (relative to the leading pivot) for basis selection.
BASIS_RANK_TOL = 1e-12


class ConfigError(ValueError):
    """Invalid solver configuration (epsilon, mu, mode, ...)."""


class DegenerateColumn(RuntimeError):
    """A rescaled constraint column has vanishing norm."""


class CoincidentPoints(RuntimeError):
    """Step target coincides with the aggregate; violates the oracle's promise."""


class IterationBoundViolated(RuntimeError):
    """Inner loop exceeded its proven iteration bound; indicates a solver bug."""


# ---------------------------------------------------------------------------
# rescaling map


class RescalingState:
    """The cumulative rescaling map M = D_1 D_2 ... D_s.

    Each factor is ``D = I - (1/2) a a^T`` for a unit vector ``a``.  The map
    is kept either as the list of factor directions (``factored``, products
    cost O(m s)) or as a dense matrix (``dense``, O(m^2)).  In ``auto`` mode
    it stays factored while ``s <= m`` and is materialized afterwards.
    """

    def __init__(self, m: int, mode: str = "auto",
                 dense_threshold: int | None = None):
        if mode not in ("auto", "dense", "factored"):
            raise ConfigError(f"unknown rescaling mode {mode!r}")
        if m < 1:
            raise ConfigError("dimension m must be at least 1")
        self.m = m
        self.mode = mode
        self.factors: list[np.ndarray] = []
        self.dense_threshold = m if dense_threshold is None else dense_threshold
        self.M: np.ndarray | None = np.eye(m) if mode == "dense" else None

    @property
    def s(self) -> int:
        """Number of contractions applied so far."""
        return len(self.factors)

    def rescale(self, a_scaled: np.ndarray) -> None:
        """Right-multiply by ``I - (1/2) a a^T`` for the unit vector given."""
        a = np.asarray(a_scaled, dtype=float).copy()
        self.factors.append(a)
        if self.M is not None:
            self.M = self.M - 0.5 * np.outer(self.M @ a, a)
        elif self.mode == "auto" and self.s > self.dense_threshold:
            self.materialize()

    def materialize(self) -> None:
        """Multiply the factors out into a dense matrix."""
        M = np.eye(self.m)
        for a in self.factors:
            M = M - 0.5 * np.outer(M @ a, a)
        self.M = M

    def apply(self, z: np.ndarray) -> np.ndarray:
        """Return ``M z``."""
        if self.M is not None:
            return self.M @ z
        v = np.asarray(z, dtype=float).copy()
        for a in reversed(self.factors):
            v -= 0.5 * a * (a @ v)
        return v

    def apply_transpose(self, a_col: np.ndarray) -> np.ndarray:
        """Return ``M^T a``."""
        if self.M is not None:
            return self.M.T @ a_col
        v = np.asarray(a_col, dtype=float).copy()
        for a in self.factors:
            v -= 0.5 * a * (a @ v)
        return v

    def apply_inverse(self, z: np.ndarray) -> np.ndarray:
        """Return ``M^{-1} z`` (each factor inverts to ``I + a a^T``)."""
        if self.M is not None:
            return np.linalg.solve(self.M, z)
        v = np.asarray(z, dtype=float).copy()
        for a in self.factors:
            v += a * (a @ v)
        return v

    def normalize(self, a_col: np.ndarray) -> tuple[np.ndarray, float]:
        """Return ``(M^T a / ||M^T a||, ||M^T a||)``.

        Raises
        ------
        DegenerateColumn
            If ``||M^T a||`` is below ``DEGENERATE_COLUMN_TOL``.
        """
        v = self.apply_transpose(a_col)
        nrm = float(np.linalg.norm(v))
        if nrm < DEGENERATE_COLUMN_TOL:
            raise DegenerateColumn("rescaled column norm underflowed")
        return v / nrm, nrm


def normalize_column(a_col: np.ndarray, state: RescalingState) -> np.ndarray:
    """Unit vector along ``M^T a`` for the current rescaling map."""
    unit, _ = state.normalize(a_col)
    return unit


def apply_scaling(state: RescalingState, z: np.ndarray) -> np.ndarray:
    """Map a point from the rescaled space back: returns ``M z``."""
    return state.apply(z)


def rescale_matrix(a_scaled: np.ndarray) -> np.ndarray:
    """Dense contraction matrix ``I - (1/2) a a^T`` for unit ``a``.

    Its determinant is exactly 1/2 and its inverse is ``I + a a^T``.
    """
    a = np.asarray(a_scaled, dtype=float)
    if abs(np.linalg.norm(a) - 1.0) > 1e-8:
        raise ValueError("rescale direction must be a unit vector")
    return np.eye(a.shape[0]) - 0.5 * np.outer(a, a)


def rescale_budget(epsilon: float, m: int) -> int:
    """Number of contractions after which d* <= epsilon is certified.

    Each failed inner run shrinks the determinant measure by sqrt(e)/2, so
    the budget is ``ceil(ln(1/eps) / ln(2/sqrt(e)))`` (at least 1).  The
    dimension does not enter the count; it is validated only.
    """
    if not (0.0 < epsilon < 1.0):
        raise ConfigError("epsilon must lie strictly between 0 and 1")
    if m < 1:
        raise ConfigError("dimension m must be at least 1")
    return max(1, math.ceil(math.log(1.0 / epsilon) / (math.log(2.0) - 0.5)))


def step_alpha(z: np.ndarray, a: np.ndarray) -> tuple[float, np.ndarray]:
    """Minimum-norm point on the segment from ``a`` to ``z``.

    For a unit column ``a`` with ``a^T z <= 0`` the minimizing coefficient

        alpha = a^T (a - z) / ||a - z||^2

    lies in [0, 1] and the new point ``alpha z + (1 - alpha) a`` satisfies
    ``1/||z_new||^2 >= 1/||z||^2 + 1``.

    Returns
    -------
    (alpha, z_new)

    Raises
    ------
    CoincidentPoints
        If ``||a - z|| < COINCIDENT_TOL``; cannot occur when ``a^T z <= 0``
        and ``||a|| = 1``.
    """
    diff = a - z
    denom = float(diff @ diff)
    if denom < COINCIDENT_TOL**2:
        raise CoincidentPoints("incoming column coincides with the aggregate")
    alpha = float(a @ diff) / denom
    return alpha, alpha * z + (1.0 - alpha) * a


# ---------------------------------------------------------------------------
# trace instrumentation


@dataclass
class EliminationRecord:
    size: int
    min_weight: float
    weight_sum_error: float
    combination_error: float
    g_residual: float | None


@dataclass
class BpTrace:
    iterations: int = 0
    potential_steps: list[tuple[float, float]] = field(default_factory=list)
    eliminations: list[EliminationRecord] = field(default_factory=list)


@dataclass
class RescaleRecord:
    a_scaled: np.ndarray
    factors_before: list[np.ndarray]


@dataclass
class SolveTrace:
    """Optional recorder for per-iteration solver internals."""

    bp: list[BpTrace] = field(default_factory=list)
    rescales: list[RescaleRecord] = field(default_factory=list)


# ---------------------------------------------------------------------------
# convex combination with bounded support


@dataclass(eq=False)
class ActiveTerm:
    witnessed: WitnessedColumn
    a_scaled: np.ndarray
    scale_norm: float
    weight: float


class ConvexCombination:
    """Convex combination of unit columns with support capped at m+1.

    Maintains terms ``(a_t, x_t)`` with ``x_t >= 0`` and ``sum x_t = 1``
    alongside the aggregate ``z = sum x_t a_t``.  Whenever the support would
    exceed ``m + 1`` one term is eliminated: with ``G`` the inverse of the
    basis matrix ``[A; 1^T]``, the coefficients ``gamma = G (a_in; 1)``
    rewrite the incoming column over the basis, and a ratio test
    ``beta* = min(-x_t / gamma_t : gamma_t < 0)`` decides whether the
    incoming term or the blocking basis term leaves.  ``G`` is maintained by
    rank-one updates and rebuilt from scratch when that path degenerates.
    """

    def __init__(self, m: int, g_recheck_interval: int = G_RECHECK_INTERVAL):
        self.m = m
        self.entries: list[ActiveTerm] = []
        self.z = np.zeros(m)
        self.G: np.ndarray | None = None
        self._by_witness: dict[Witness, ActiveTerm] = {}
        self._elim_count = 0
        self._recheck = max(1, g_recheck_interval)

    # -- bookkeeping ------------------------------------------------------

    def weight_sum(self) -> float:
        return float(sum(e.weight for e in self.entries))

    def combination(self) -> np.ndarray:
        out = np.zeros(self.m)
        for e in self.entries:
            out += e.weight * e.a_scaled
        return out

    def combination_error(self) -> float:
        return float(np.linalg.norm(self.combination() - self.z))

    def basis_matrix(self) -> np.ndarray:
        """[A; 1^T] over the first m+1 terms (valid when G is present)."""
        k = self.m + 1
        B = np.ones((k, k))
        for j, e in enumerate(self.entries[:k]):
            B[: self.m, j] = e.a_scaled
        return B

    def g_residual(self) -> float | None:
        if self.G is None:
            return None
        R = self.G @ self.basis_matrix() - np.eye(self.m + 1)
        return float(np.max(np.abs(R)))

    def scale_weights(self, alpha: float) -> None:
        for e in self.entries:
            e.weight *= alpha

    # -- insertion and elimination ----------------------------------------

    def add_term(self, witnessed: WitnessedColumn, a_scaled: np.ndarray,
                 scale_norm: float, add_weight: float,
                 trace: BpTrace | None = None) -> None:
        """Add weight on a witnessed column, eliminating on overflow."""
        existing = self._by_witness.get(witnessed.witness)
        if existing is not None:
            existing.weight += add_weight
            return
        term = ActiveTerm(witnessed, np.asarray(a_scaled, dtype=float).copy(),
                          scale_norm, add_weight)
        self.entries.append(term)
        self._by_witness[witnessed.witness] = term
        self._reduce(trace)

    def _remove_at(self, pos: int) -> None:
        term = self.entries.pop(pos)
        del self._by_witness[term.witnessed.witness]
        if pos <= self.m:
            self.G = None

    def _ensure_basis(self) -> bool:
        """Make G the inverse of [A; 1^T] over the first m+1 terms.

        Falls back to a pivoted-QR column selection (reordering the terms)
        when the current leading block is singular.  Returns False when no
        m+1 terms are affinely independent yet; elimination is postponed.
        """
        if self.G is not None:
            return True
        k = self.m + 1
        try:
            self.G = inverse_with_factorization(self.basis_matrix())
            return True
        except Singular:
            pass
        B = np.ones((k, len(self.entries)))
        for j, e in enumerate(self.entries):
            B[: self.m, j] = e.a_scaled
        _, R, piv = scipy.linalg.qr(B, mode="economic", pivoting=True)
        diag = np.abs(np.diag(R))
        lead = diag[0] if diag.size else 0.0
        rank = int(np.sum(diag > BASIS_RANK_TOL * lead)) if lead > 0.0 else 0
        if rank < k:
            return False
        chosen = [int(j) for j in piv[:k]]
        rest = [j for j in range(len(self.entries)) if j not in set(chosen)]
        self.entries = [self.entries[j] for j in chosen + rest]
        try:
            self.G = inverse_with_factorization(self.basis_matrix())
        except Singular:
            self.G = None
            return False
        return True

    def _rebuild_g(self) -> None:
        try:
            self.G = inverse_with_factorization(self.basis_matrix())
        except Singular:
            self.G = None

    def _eliminate_one(self, trace: BpTrace | None) -> None:
        k = self.m + 1
        incoming = self.entries[k]
        gamma = self.G @ np.append(incoming.a_scaled, 1.0)
        ratios = np.full(k, np.inf)
        neg = gamma < 0.0
        weights = np.array([e.weight for e in self.entries[:k]])
        ratios[neg] = -weights[neg] / gamma[neg]
        t_star = int(np.argmin(ratios))
        beta = float(ratios[t_star])
        x_in = incoming.weight
        if beta >= x_in:
            # the incoming term leaves; its mass is rewritten over the basis
            for t in range(k):
                self.entries[t].weight += x_in * gamma[t]
            self._remove_at(k)
        else:
            # the blocking basis term leaves; the incoming term takes its slot
            for t in range(k):
                if t != t_star:
                    self.entries[t].weight += beta * gamma[t]
            incoming.weight = x_in - beta
            leaving = self.entries[t_star]
            abar = np.append(incoming.a_scaled - leaving.a_scaled, 0.0)
            self.entries[t_star] = incoming
            del self.entries[k]
            del self._by_witness[leaving.witnessed.witness]
            try:
                self.G = smw_inverse_update(self.G, abar, t_star)
            except SingularUpdate:
                self._rebuild_g()
        self._elim_count += 1
        if self.G is not None and self._elim_count % self._recheck == 0:
            res = self.g_residual()
            if res is not None and res > G_RESIDUAL_TOL:
                self._rebuild_g()
        if trace is not None:
            trace.eliminations.append(EliminationRecord(
                size=len(self.entries),
                min_weight=float(min(e.weight for e in self.entries)),
                weight_sum_error=abs(self.weight_sum() - 1.0),
                combination_error=self.combination_error(),
                g_residual=self.g_residual(),
            ))

    def _drop_negligible(self) -> None:
        if all(e.weight > WEIGHT_FLOOR for e in self.entries):
            return
        keep = []
        for e in self.entries:
            if e.weight > WEIGHT_FLOOR:
                keep.append(e)
            else:
                self.z = self.z - e.weight * e.a_scaled
                del self._by_witness[e.witnessed.witness]
        self.entries = keep
        self.G = None
        total = self.weight_sum()
        if total > 0.0:
            for e in self.entries:
                e.weight /= total
            self.z = self.z / total

    def _reduce(self, trace: BpTrace | None) -> None:
        reduced = False
        while len(self.entries) > self.m + 1:
            if not self._ensure_basis():
                return  # postponed until enough independent columns exist
            self._eliminate_one(trace)
            reduced = True
        if reduced:
            self._drop_negligible()


# ---------------------------------------------------------------------------
# inner procedure


@dataclass
class BasicProcedureResult:
    """Outcome of one inner run against a fixed rescaling map.

    ``status`` is ``"feasible"`` (``y_scaled`` passes the oracle after
    mapping through M), ``"dual"`` (the combination's weights certify the
    alternative system), or ``"small_aggregate"`` (||z|| fell below
    mu/(m+1); the heaviest term indicates the contraction direction).
    """

    status: str
    y_scaled: np.ndarray | None
    combination: ConvexCombination | None
    iterations: int
    oracle_calls: int


def _unscaled_weights(cc: ConvexCombination) -> list[tuple[ActiveTerm, float]]:
    """Map weights back through the rescaling: x_t / ||M^T a_t||."""
    return [(e, e.weight / e.scale_norm) for e in cc.entries if e.weight > 0.0]


def _dual_residual(cc: ConvexCombination) -> float:
    """Relative residual of the unscaled positive combination."""
    pairs = _unscaled_weights(cc)
    if not pairs:
        return math.inf
    m = cc.m
    num = np.zeros(m)
    den = 0.0
    for e, u in pairs:
        num += u * e.witnessed.column
        den += u * float(np.linalg.norm(e.witnessed.column))
    if den == 0.0:
        return math.inf
    return float(np.linalg.norm(num)) / den


def basic_procedure(
    instance: ProblemInstance,
    state: RescalingState,
    mu: float,
    initial_direction: np.ndarray | None = None,
    g_recheck_interval: int = G_RECHECK_INTERVAL,
    trace: SolveTrace | None = None,
) -> BasicProcedureResult:
    """Drive the aggregate of rescaled columns toward zero.

    Starting from a first violated column, repeatedly queries the oracle at
    the mapped aggregate ``M z`` and takes the minimum-norm step toward the
    violated column.  Every step increases ``1/||z||^2`` by at least 1, so
    within ``ceil((m+1)^2 / mu^2)`` iterations one of three things happens:
    the oracle accepts a query (feasible), ``z`` hits (numerical) zero with
    a verified positive combination (dual), or ``||z|| <= mu/(m+1)``.

    Raises
    ------
    IterationBoundViolated
        If the loop exceeds its proven bound; indicates an implementation
        defect rather than a property of the instance.
    """
    m = instance.m
    if not (0.0 < mu):
        raise ConfigError("mu must be positive")
    bp_trace = None
    if trace is not None:
        bp_trace = BpTrace()
        trace.bp.append(bp_trace)
    y0 = np.ones(m) if initial_direction is None else \
        np.asarray(initial_direction, dtype=float)
    bound = math.ceil((m + 1) ** 2 / mu**2) + 1
    small_threshold = mu / (m + 1)
    oracle_calls = 1
    w = query(instance, state.apply(y0))
    if w is None:
        return BasicProcedureResult("feasible", y0.copy(), None, 0, oracle_calls)
    cc = ConvexCombination(m, g_recheck_interval)
    a_scaled, nrm = state.normalize(w.column)
    cc.add_term(w, a_scaled, nrm, 1.0, bp_trace)
    cc.z = a_scaled.copy()
    iterations = 0
    while True:
        z_norm = float(np.linalg.norm(cc.z))
        if z_norm <= ZERO_AGGREGATE_TOL and \
                _dual_residual(cc) <= certify.DUAL_RESIDUAL_TOL:
            cc._drop_negligible()
            return BasicProcedureResult("dual", None, cc, iterations,
                                        oracle_calls)
        if z_norm <= small_threshold:
            return BasicProcedureResult("small_aggregate", None, cc,
                                        iterations, oracle_calls)
        oracle_calls += 1
        w = query(instance, state.apply(cc.z))
        if w is None:
            return BasicProcedureResult("feasible", cc.z.copy(), cc,
                                        iterations, oracle_calls)
        iterations += 1
        if bp_trace is not None:
            bp_trace.iterations = iterations
        if iterations > bound:
            raise IterationBoundViolated(
                f"{iterations} iterations exceed the bound {bound}"
            )
        a_scaled, nrm = state.normalize(w.column)
        alpha, z_new = step_alpha(cc.z, a_scaled)
        if bp_trace is not None:
            bp_trace.potential_steps.append(
                (1.0 / z_norm**2, 1.0 / float(z_new @ z_new))
            )
        cc.scale_weights(alpha)
        cc.z = z_new
        cc.add_term(w, a_scaled, nrm, 1.0 - alpha, bp_trace)


# ---------------------------------------------------------------------------
# outer loop


@dataclass
class SolverConfig:
    """Tuning knobs for :func:`main_algorithm`.

    ``mu_override`` replaces the default inner threshold 1/sqrt(3 m);
    ``max_rescalings`` caps the contraction budget (the declared epsilon is
    then the value actually certified); ``mode`` selects the rescaling-map
    representation; ``initial_direction`` seeds each inner run (default:
    all ones).
    """

    mu_override: float | None = None
    max_rescalings: int | None = None
    mode: str = "auto"
    initial_direction: np.ndarray | None = None
    g_recheck_interval: int = G_RECHECK_INTERVAL


@dataclass
class SolveCounters:
    bp_calls: int = 0
    bp_iterations: int = 0
    oracle_calls: int = 0
    rescalings: int = 0


@dataclass
class SolveOutcome:
    """Result of a full solve.

    ``status`` is ``"feasible"`` (with ``y``), ``"dual_certificate"`` (with
    ``weights`` as (witness, x) pairs mapped back to the original columns),
    or ``"epsilon_declared"``.  ``epsilon`` is the declared bound actually
    certified, ``s_star`` the full contraction budget for the requested
    epsilon.  ``verification`` embeds the re-check of the returned artifact.
    """

    status: str
    y: np.ndarray | None
    weights: list[tuple[Witness, float]] | None
    epsilon: float
    s_star: int
    counters: SolveCounters
    verification: "certify.VerificationReport | None"
    wall_ms: float


def main_algorithm(
    instance: ProblemInstance,
    epsilon: float = 1e-6,
    config: SolverConfig | None = None,
    trace: SolveTrace | None = None,
) -> SolveOutcome:
    """Decide feasibility, produce a dual certificate, or declare epsilon.

    Runs the inner procedure against a growing product of rank-one
    contractions.  Every returned artifact is re-verified before it is
    reported; a dual candidate that fails verification never escapes.

    Raises
    ------
    ConfigError
        If ``epsilon`` is outside (0, 1) or the config is inconsistent.
    """
    if config is None:
        config = SolverConfig()
    if not (0.0 < epsilon < 1.0):
        raise ConfigError("epsilon must lie strictly between 0 and 1")
    m = instance.m
    mu = config.mu_override if config.mu_override is not None \
        else 1.0 / math.sqrt(3.0 * m)
    if mu <= 0.0:
        raise ConfigError("mu must be positive")
    budget = rescale_budget(epsilon, m)
    loops = budget if config.max_rescalings is None \
        else min(budget, config.max_rescalings)
    state = RescalingState(m, config.mode)
    counters = SolveCounters()
    start = time.perf_counter()

    def elapsed_ms() -> float:
        return (time.perf_counter() - start) * 1000.0

    for _ in range(loops):
        result = basic_procedure(
            instance, state, mu,
            initial_direction=config.initial_direction,
            g_recheck_interval=config.g_recheck_interval,
            trace=trace,
        )
        counters.bp_calls += 1
        counters.bp_iterations += result.iterations
        counters.oracle_calls += result.oracle_calls
        if result.status == "feasible":
            y = state.apply(result.y_scaled)
            report = certify.verify_d_solution(instance, y)
            counters.oracle_calls += 1
            if not report.accepted:
                raise OracleInconsistency(
                    "final feasibility verification rejected the solution"
                )
            return SolveOutcome("feasible", y, None, epsilon, budget,
                                counters, report, elapsed_ms())
        if result.status == "dual":
            cc = result.combination
            pairs = [(e.witnessed, u) for e, u in _unscaled_weights(cc)]
            report = certify.verify_p_certificate(instance, pairs)
            if not report.accepted:
                raise OracleInconsistency(
                    "dual certificate verification rejected the candidate"
                )
            weights = [(wc.witness, u) for wc, u in pairs]
            return SolveOutcome("dual_certificate", None, weights, epsilon,
                                budget, counters, report, elapsed_ms())
        # small aggregate: contract along the heaviest term's direction
        cc = result.combination
        heaviest = max(range(len(cc.entries)),
                       key=lambda t: (cc.entries[t].weight, -t))
        direction = cc.entries[heaviest].a_scaled
        if trace is not None:
            trace.rescales.append(RescaleRecord(
                a_scaled=direction.copy(),
                factors_before=[f.copy() for f in state.factors],
            ))
        state.rescale(direction)
        counters.rescalings += 1

    certified = epsilon if loops == budget \
        else (math.sqrt(math.e) / 2.0) ** counters.rescalings
    return SolveOutcome("epsilon_declared", None, None, certified, budget,
                        counters, None, elapsed_ms())


class OracleInconsistency(RuntimeError):
    """A verified-at-source artifact failed its final re-verification."""
