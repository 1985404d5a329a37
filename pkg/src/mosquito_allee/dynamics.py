"""Trajectories of the restricted map and long-run fate classification.

The restricted operator admits exactly two proven long-run behaviors.
Around the interior fixed point ``(x*, y*)`` two forward-invariant
regions exist:

* ``Omega1``: the box ``[0, x*] x [0, y*]`` minus the fixed point; every
  trajectory started there converges to the origin (extinction).
* ``Omega2``: the quadrant ``[x*, inf) x [y*, inf)`` minus the fixed
  point; every trajectory started there has ``x -> inf`` while ``y``
  approaches the replacement level ``alpha/mu`` (unbounded growth).

When no interior fixed point exists (``beta <= mu*(1 + gamma*mu/alpha)``)
any trajectory whose adult density ever dips to ``alpha/mu`` or below
goes extinct.  Outside these proven cases classification is empirical:
a trajectory is extinct once it enters a small ball at the origin, and
unboundedly growing once it enters ``Omega2`` or exceeds a divergence
cutoff in ``x``.  Anything else within the iteration budget is reported
``undetermined`` rather than guessed.

Growth is asymptotically linear in the step count (the increment
approaches a positive constant), so enormous ``x`` values are never
reached within practical budgets.  The adult limit is therefore measured
with the stationarity inversion ``y*(1+x)/x``: at the true limit the
adult update balances exactly when ``y = (alpha/mu)*x/(1+x)``, and the
inversion converges to ``alpha/mu`` quadratically in ``1/x``.  The
estimate is accepted once consecutive doubling checkpoints agree to a
tenth of the reporting tolerance.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import ConfigurationError
from .model import Params, State, derived_constants, _w0_xy
from .stability import interior_fixed_point

__all__ = [
    "DEFAULT_BUDGET",
    "TRAJECTORY_WINDOW",
    "FateThresholds",
    "Termination",
    "Verdict",
    "TheoremTag",
    "Region",
    "Trajectory",
    "TrajectoryOutcome",
    "InvarianceReport",
    "MonotonicityReport",
    "BasinGrid",
    "iterate",
    "membership",
    "classify_fate",
    "check_invariance",
    "monotonicity_probe",
    "sum_identity_residual",
    "basin_scan",
]

DEFAULT_BUDGET = 10**6
TRAJECTORY_WINDOW = 1024


@dataclass(frozen=True)
class FateThresholds:
    """Finite-time detection cutoffs for asymptotic statements.

    ``extinction_radius``: sup-norm ball around the origin that counts
    as extinct.  ``divergence_x``: ``x`` beyond this certifies growth.
    ``y_limit_tol``: target accuracy of the adult-limit estimate.
    ``step_tol``: displacement below which a trajectory is numerically
    stationary.
    """

    extinction_radius: float = 1e-9
    divergence_x: float = 1e9
    y_limit_tol: float = 1e-6
    step_tol: float = 1e-14


class Termination(str, enum.Enum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    BUDGET = "budget"


class Verdict(str, enum.Enum):
    EXTINCTION = "extinction"
    UNBOUNDED_GROWTH = "unbounded"
    UNDETERMINED = "undetermined"


class TheoremTag(str, enum.Enum):
    """Which proven statement, if any, certifies a verdict.

    ``THM1_II``: no interior fixed point and some iterate had
    ``y <= alpha/mu``.  ``THM2_OMEGA1``/``THM2_OMEGA2``: the start lay in
    the corresponding invariant region.  ``EMPIRICAL``: verdict from
    finite-time observation only (start outside the proven regions).
    """

    THM1_II = "thm1-ii"
    THM2_OMEGA1 = "thm2-omega1"
    THM2_OMEGA2 = "thm2-omega2"
    EMPIRICAL = "empirical"


class Region(str, enum.Enum):
    OMEGA1 = "omega1"
    OMEGA2 = "omega2"
    OUTSIDE = "outside"
    IS_FIXED_POINT = "is-fixed-point"


@dataclass(frozen=True)
class Trajectory:
    """A recorded orbit. ``points[i]`` is the state after ``indices[i]`` steps.

    Long runs are windowed: the first ``window+1`` and last ``window``
    states are kept, so ``indices`` may jump once in the middle.  Within
    each contiguous run, consecutive points are exact step images.
    """

    params: Params
    points: tuple[State, ...]
    indices: tuple[int, ...]
    terminated: Termination

    @property
    def n_steps(self) -> int:
        return self.indices[-1]

    @property
    def final(self) -> State:
        return self.points[-1]


@dataclass(frozen=True)
class TrajectoryOutcome:
    verdict: Verdict
    iterations_used: int
    final_state: State
    y_limit_estimate: float | None
    theorem_tag: TheoremTag | None


@dataclass(frozen=True)
class InvarianceReport:
    region: Region
    samples: int
    escapes: int
    counterexample: tuple[State, State] | None

    @property
    def passed(self) -> bool:
        return self.escapes == 0


@dataclass(frozen=True)
class MonotonicityReport:
    """Earliest index after which both coordinates are monotone.

    ``n0`` is None when no monotone tail was found within the horizon.
    In ``Omega1`` the tail must be non-increasing, in ``Omega2``
    non-decreasing; a start at the fixed point is constant with
    ``n0 = 0``.
    """

    region: Region
    n0: int | None
    horizon: int

    @property
    def found(self) -> bool:
        return self.n0 is not None


@dataclass(frozen=True)
class BasinGrid:
    """Fate verdicts over a rectangular grid of initial conditions.

    ``cells[ix][iy]`` is the outcome for the initial point
    ``(xs[ix], ys[iy])`` where ``xs``/``ys`` are ``nx``/``ny`` evenly
    spaced values over the closed ranges.
    """

    params: Params
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    nx: int
    ny: int
    cells: tuple[tuple[TrajectoryOutcome, ...], ...]

    def axis_values(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.x_range[0], self.x_range[1], self.nx),
            np.linspace(self.y_range[0], self.y_range[1], self.ny),
        )

    def iter_rows(self):
        """Yield ``(x0, y0, outcome)`` with y as the outer loop."""
        xs, ys = self.axis_values()
        for iy in range(self.ny):
            for ix in range(self.nx):
                yield float(xs[ix]), float(ys[iy]), self.cells[ix][iy]


def iterate(
    params: Params,
    s0: State,
    max_iter: int,
    thresholds: FateThresholds | None = None,
    window: int = TRAJECTORY_WINDOW,
) -> Trajectory:
    """Apply the restricted map repeatedly, recording the orbit.

    Stops early when the step displacement falls below ``step_tol``
    (``Converged``), when ``x`` exceeds ``divergence_x`` or overflows
    (``Diverged``), and otherwise runs ``max_iter`` steps (``Budget``).
    A non-finite image is never stored; the trajectory ends at the last
    finite state.
    """
    params.require_analysis_valid()
    if max_iter < 1:
        raise ConfigurationError(f"max_iter must be >= 1, got {max_iter}")
    if window < 1:
        raise ConfigurationError(f"window must be >= 1, got {window}")
    th = thresholds if thresholds is not None else FateThresholds()
    alpha, beta, gamma, mu = params.alpha, params.beta, params.gamma, params.mu

    head: list[tuple[int, State]] = [(0, s0)]
    tail: deque[tuple[int, State]] = deque(maxlen=window)

    def record(i: int, s: State) -> None:
        if len(head) <= window:
            head.append((i, s))
        else:
            tail.append((i, s))

    x, y = s0.x, s0.y
    terminated = Termination.BUDGET
    for n in range(1, max_iter + 1):
        x1, y1 = _w0_xy(alpha, beta, gamma, mu, x, y)
        if not (math.isfinite(x1) and math.isfinite(y1)):
            terminated = Termination.DIVERGED
            break
        record(n, State(x1, y1))
        displacement = max(abs(x1 - x), abs(y1 - y))
        x, y = x1, y1
        if x1 > th.divergence_x:
            terminated = Termination.DIVERGED
            break
        if displacement < th.step_tol:
            terminated = Termination.CONVERGED
            break

    entries = head + list(tail)
    return Trajectory(
        params=params,
        points=tuple(s for _, s in entries),
        indices=tuple(i for i, _ in entries),
        terminated=terminated,
    )


def _region(x: float, y: float, xs: float, ys: float) -> Region:
    # boundaries belong to the regions; only the fixed point is excluded
    if x == xs and y == ys:
        return Region.IS_FIXED_POINT
    if x <= xs and y <= ys:
        return Region.OMEGA1
    if x >= xs and y >= ys:
        return Region.OMEGA2
    return Region.OUTSIDE


def _require_interior(params: Params) -> State:
    fp = interior_fixed_point(params)
    if fp is None:
        raise ConfigurationError(
            "no interior fixed point at these parameters "
            "(beta <= mu*(1 + gamma*mu/alpha)); invariant regions are undefined"
        )
    return fp


def membership(params: Params, s: State) -> Region:
    """Which invariant region, if any, contains the state.

    Comparisons against ``(x*, y*)`` are exact; points on the shared
    boundaries count as inside, and the fixed point itself is reported
    separately.
    """
    fp = _require_interior(params)
    return _region(s.x, s.y, fp.x, fp.y)


def classify_fate(
    params: Params,
    s0: State,
    budget: int = DEFAULT_BUDGET,
    thresholds: FateThresholds | None = None,
) -> TrajectoryOutcome:
    """Long-run fate of a single initial condition.

    Proven shortcuts are applied first: a start inside ``Omega1`` or
    ``Omega2`` fixes the verdict by invariance, and in the regime without
    an interior fixed point any observed ``y <= alpha/mu`` proves
    extinction.  Iteration then confirms within the budget: extinction
    runs until the origin ball is reached, growth until the adult-limit
    estimate stabilizes.  Starts outside the proven regions are
    classified empirically by the same finite-time events.
    ``undetermined`` is returned when the budget expires without any
    certificate or event, for a start at the fixed point, and for orbits
    that go numerically stationary away from the origin (which only
    happens within rounding distance of the fixed point).
    """
    params.require_analysis_valid()
    if budget < 1:
        raise ConfigurationError(f"budget must be >= 1, got {budget}")
    th = thresholds if thresholds is not None else FateThresholds()
    alpha, beta, gamma, mu = params.alpha, params.beta, params.gamma, params.mu
    y_cap = derived_constants(params).y_limit
    fp = interior_fixed_point(params)

    tag: TheoremTag | None = None
    extinction_proved = False
    growth_proved = False
    if fp is None:
        if s0.y <= y_cap:
            extinction_proved = True
            tag = TheoremTag.THM1_II
    else:
        start_region = _region(s0.x, s0.y, fp.x, fp.y)
        if start_region is Region.IS_FIXED_POINT:
            return TrajectoryOutcome(Verdict.UNDETERMINED, 0, s0, None, None)
        if start_region is Region.OMEGA1:
            extinction_proved = True
            tag = TheoremTag.THM2_OMEGA1
        elif start_region is Region.OMEGA2:
            growth_proved = True
            tag = TheoremTag.THM2_OMEGA2

    x, y = s0.x, s0.y
    n = 0
    ball_hit = max(x, y) <= th.extinction_radius
    stalled = False
    estimate: float | None = None
    est_prev: float | None = None
    est_prev_x = 0.0

    while n < budget and not ball_hit and estimate is None:
        x1, y1 = _w0_xy(alpha, beta, gamma, mu, x, y)
        if not (math.isfinite(x1) and math.isfinite(y1)):
            break  # overflowed; judge from what is already proven
        n += 1
        displacement = max(abs(x1 - x), abs(y1 - y))
        x, y = x1, y1

        if max(x, y) <= th.extinction_radius:
            ball_hit = True
            break
        if fp is None:
            if not extinction_proved and y <= y_cap:
                extinction_proved = True
                tag = TheoremTag.THM1_II
        elif not (extinction_proved or growth_proved):
            region = _region(x, y, fp.x, fp.y)
            if region is Region.OMEGA1:
                extinction_proved = True
            elif region is Region.OMEGA2:
                growth_proved = True
        if not growth_proved and x > th.divergence_x:
            growth_proved = True

        if growth_proved and x >= 100.0 and x >= 2.0 * est_prev_x:
            # estimator error scales as 1/x^2, so checkpoints are spaced
            # by x-doubling; accept once one doubling moves the estimate
            # by less than a tenth of the tolerance
            est = y * (1.0 + x) / x
            if est_prev is not None and abs(est - est_prev) <= 0.1 * th.y_limit_tol:
                estimate = est
                break
            est_prev = est
            est_prev_x = x

        if displacement < th.step_tol:
            stalled = True
            break

    final = State(x, y)
    if ball_hit:
        verdict = Verdict.EXTINCTION
        estimate = None
    elif stalled:
        # pinned at a numerical fixed point away from the origin (the
        # float image of (x*, y*)); no asymptotic claim can be confirmed
        verdict = Verdict.UNDETERMINED
        estimate = None
        tag = None
    elif extinction_proved:
        verdict = Verdict.EXTINCTION
        estimate = None
    elif growth_proved:
        verdict = Verdict.UNBOUNDED_GROWTH
        if estimate is None and x > 0.0:
            estimate = y * (1.0 + x) / x
    else:
        verdict = Verdict.UNDETERMINED
        estimate = None
    if verdict is not Verdict.UNDETERMINED and tag is None:
        tag = TheoremTag.EMPIRICAL
    if verdict is Verdict.UNDETERMINED:
        tag = None
    return TrajectoryOutcome(verdict, n, final, estimate, tag)


def check_invariance(
    params: Params,
    region: Region,
    samples: int,
    seed: int,
    span: float | None = None,
) -> InvarianceReport:
    """Sample a region uniformly and verify one step stays inside.

    ``Omega2`` is unbounded, so it is sampled on the window
    ``[x*, x*+span] x [y*, y*+span]`` (default span ``10*max(x*, y*)``);
    invariance of the map does not depend on the window.  Returns the
    escape count and the first counterexample, if any.
    """
    fp = _require_interior(params)
    if region not in (Region.OMEGA1, Region.OMEGA2):
        raise ConfigurationError(f"invariance is defined for omega1/omega2, got {region}")
    if samples < 1:
        raise ConfigurationError(f"samples must be >= 1, got {samples}")
    xs, ys = fp.x, fp.y
    if span is None:
        span = 10.0 * max(xs, ys)
    if not (math.isfinite(span) and span > 0.0):
        raise ConfigurationError(f"sampling span must be positive and finite, got {span}")

    rng = np.random.default_rng(seed)
    if region is Region.OMEGA1:
        x0 = rng.uniform(0.0, xs, samples)
        y0 = rng.uniform(0.0, ys, samples)
    else:
        x0 = xs + rng.uniform(0.0, span, samples)
        y0 = ys + rng.uniform(0.0, span, samples)
    at_fp = (x0 == xs) & (y0 == ys)
    if at_fp.any():  # measure-zero draw; the fixed point is not in the region
        x0 = np.where(at_fp, 0.5 * x0, x0)

    x1, y1 = _w0_xy(params.alpha, params.beta, params.gamma, params.mu, x0, y0)
    if region is Region.OMEGA1:
        inside = (x1 >= 0.0) & (x1 <= xs) & (y1 >= 0.0) & (y1 <= ys)
    else:
        inside = (x1 >= xs) & (y1 >= ys)
    inside &= ~((x1 == xs) & (y1 == ys))

    escapes = int(np.count_nonzero(~inside))
    counterexample = None
    if escapes:
        i = int(np.argmax(~inside))
        counterexample = (State(float(x0[i]), float(y0[i])), State(float(x1[i]), float(y1[i])))
    return InvarianceReport(region=region, samples=samples, escapes=escapes, counterexample=counterexample)


def monotonicity_probe(params: Params, s0: State, horizon: int) -> MonotonicityReport:
    """Locate the earliest step after which both coordinates are monotone.

    Inside ``Omega1`` trajectories eventually decrease in both
    coordinates, inside ``Omega2`` they eventually increase; this scans
    ``horizon`` steps and reports the first index ``n0`` whose tail is
    monotone through the horizon, or None if the final transition still
    violates monotonicity.
    """
    if horizon < 1:
        raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
    region = membership(params, s0)
    if region is Region.OUTSIDE:
        raise ConfigurationError(
            "monotonicity is only established inside the invariant regions; "
            f"start {s0} is outside both"
        )
    decreasing = region in (Region.OMEGA1, Region.IS_FIXED_POINT)

    alpha, beta, gamma, mu = params.alpha, params.beta, params.gamma, params.mu
    step_tol = FateThresholds().step_tol
    x, y = s0.x, s0.y
    last_violation = -1  # transition index t covers points t -> t+1
    scanned = 0
    for t in range(horizon):
        x1, y1 = _w0_xy(alpha, beta, gamma, mu, x, y)
        if not (math.isfinite(x1) and math.isfinite(y1)):
            break
        if decreasing:
            violated = x1 > x or y1 > y
        else:
            violated = x1 < x or y1 < y
        if violated:
            last_violation = t
        displacement = max(abs(x1 - x), abs(y1 - y))
        x, y = x1, y1
        scanned = t + 1
        if displacement < step_tol:
            break  # stationary; the remaining tail is constant

    if scanned == 0 or last_violation == scanned - 1:
        n0 = None  # no monotone tail observed within the horizon
    else:
        n0 = last_violation + 1
    return MonotonicityReport(region=region, n0=n0, horizon=horizon)


def sum_identity_residual(params: Params, s: State) -> float:
    """Defect of the one-step total-population identity.

    One step of the restricted map changes the total ``x + y`` by
    ``beta*y^2/(gamma+y) - mu*y``, which equals
    ``(beta-mu)*y*(y - y*)/(gamma+y)`` with ``y* = gamma*mu/(beta-mu)``.
    The returned value is the increment minus that closed form (the
    ``x``-dependent transfer terms cancel exactly and are omitted, which
    keeps the defect at rounding level even for large ``x``).  Zero up
    to rounding for every state; requires ``beta > mu`` so ``y*`` is
    defined.
    """
    beta, gamma, mu = params.beta, params.gamma, params.mu
    if not beta > mu:
        raise ConfigurationError(f"identity requires beta > mu, got beta={beta}, mu={mu}")
    y = s.y
    ystar = gamma * mu / (beta - mu)
    gy = gamma + y
    increment = beta * y * y / gy - mu * y
    return increment + (beta - mu) * y * (ystar - y) / gy


def _classify_cell(
    cell: tuple[float, float],
    params: Params,
    budget: int,
    thresholds: FateThresholds | None,
) -> TrajectoryOutcome:
    return classify_fate(params, State(cell[0], cell[1]), budget, thresholds)


def basin_scan(
    params: Params,
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    nx: int,
    ny: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    thresholds: FateThresholds | None = None,
) -> BasinGrid:
    """Classify every grid point's long-run fate.

    Cells are independent; with ``workers > 1`` they are distributed
    over a process pool.  Assembly is by cell index, so the result is
    deterministic for fixed inputs regardless of worker count.
    """
    params.require_analysis_valid()
    if nx < 2 or ny < 2:
        raise ConfigurationError(f"grid resolution must be >= 2 per axis, got {nx}x{ny}")
    x_lo, x_hi = (float(x_range[0]), float(x_range[1]))
    y_lo, y_hi = (float(y_range[0]), float(y_range[1]))
    for name, lo, hi in (("x", x_lo, x_hi), ("y", y_lo, y_hi)):
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ConfigurationError(f"{name}_range must be finite, got [{lo}, {hi}]")
        if lo < 0.0:
            raise ConfigurationError(f"{name}_range must lie in the nonnegative quadrant, got [{lo}, {hi}]")
        if not hi > lo:
            raise ConfigurationError(f"{name}_range must have positive length, got [{lo}, {hi}]")
    if workers < 1:
        raise ConfigurationError(f"workers must be >= 1, got {workers}")

    xs = np.linspace(x_lo, x_hi, nx)
    ys = np.linspace(y_lo, y_hi, ny)
    tasks = [(float(x), float(y)) for y in ys for x in xs]
    classify = partial(_classify_cell, params=params, budget=budget, thresholds=thresholds)
    if workers == 1:
        outcomes = [classify(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(classify, tasks, chunksize=chunk))

    cells = tuple(
        tuple(outcomes[iy * nx + ix] for iy in range(ny)) for ix in range(nx)
    )
    return BasinGrid(
        params=params,
        x_range=(x_lo, x_hi),
        y_range=(y_lo, y_hi),
        nx=nx,
        ny=ny,
        cells=cells,
    )
