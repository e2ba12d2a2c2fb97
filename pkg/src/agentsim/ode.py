"""Explicit ODE integration for hybrid discrete/continuous models.

Two integrators: fixed-step forward Euler and an adaptive embedded
Runge-Kutta 5(4) pair with the Dormand-Prince coefficients (tabulated in
full below).  Step-size control uses the standard order-5 exponent with
safety factor 0.9 and growth clamped to [0.2, 5.0].  States are small
vectors (dimension <= 64); dense output between accepted steps is cubic
Hermite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class NumericalBlowup(RuntimeError):
    """The state or a stage derivative became non-finite."""


class StepBudgetExceeded(RuntimeError):
    """The adaptive stepper hit its max_steps budget."""


# Dormand-Prince 5(4): stage nodes, stage coefficients, 5th-order weights,
# and the 5th-minus-4th-order error weights.
DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
DP_ERR = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_SAFETY = 0.9


@dataclass
class OdeProblem:
    """dy/dt = rhs(t, y, params) over [t0, t1] from y0."""

    rhs: callable
    t0: float
    t1: float
    y0: object
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.t1 < self.t0:
            raise ValueError("t1 must be >= t0")
        self.y0 = np.atleast_1d(np.asarray(self.y0, dtype=float))


@dataclass
class IntegratorConfig:
    method: str = "rk45"  # "euler" | "rk45"
    dt: float = 1.0
    abs_tol: float = 1e-8
    rel_tol: float = 1e-8
    max_steps: int = 100_000

    def __post_init__(self):
        if self.method not in ("euler", "rk45"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.dt <= 0 or self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("dt and tolerances must be positive")


class Trajectory:
    """Accepted (t, y) samples plus derivatives for Hermite interpolation."""

    def __init__(self):
        self.ts: list[float] = []
        self.ys: list[np.ndarray] = []
        self.dys: list[np.ndarray] = []
        self.nfev = 0

    def append(self, t, y, dy):
        self.ts.append(float(t))
        self.ys.append(np.array(y, dtype=float))
        self.dys.append(np.array(dy, dtype=float))

    @property
    def t_final(self) -> float:
        return self.ts[-1]

    @property
    def y_final(self) -> np.ndarray:
        return self.ys[-1]

    def sample(self, t: float) -> np.ndarray:
        """Cubic-Hermite interpolant between the bracketing accepted steps."""
        ts = self.ts
        if not ts[0] <= t <= ts[-1]:
            raise ValueError(f"t={t} outside [{ts[0]}, {ts[-1]}]")
        hi = np.searchsorted(ts, t)
        if hi == 0:
            return self.ys[0].copy()
        lo = hi - 1
        if hi == len(ts) or ts[lo] == t:
            return self.ys[lo].copy()
        h = ts[hi] - ts[lo]
        s = (t - ts[lo]) / h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return (h00 * self.ys[lo] + h * h10 * self.dys[lo]
                + h01 * self.ys[hi] + h * h11 * self.dys[hi])


def _check_finite(y):
    if not np.all(np.isfinite(y)):
        raise NumericalBlowup(f"non-finite state {y}")


def integrate_euler(problem: OdeProblem, dt: float) -> Trajectory:
    """y_{k+1} = y_k + dt * rhs(t_k, y_k); a final partial step lands on t1."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    rhs, params = problem.rhs, problem.params
    t, y = problem.t0, problem.y0.copy()
    traj = Trajectory()
    dy = np.asarray(rhs(t, y, params), dtype=float)
    traj.nfev += 1
    traj.append(t, y, dy)
    while t < problem.t1 - 1e-12:
        h = min(dt, problem.t1 - t)
        y = y + h * dy
        t = t + h
        _check_finite(y)
        dy = np.asarray(rhs(t, y, params), dtype=float)
        traj.nfev += 1
        traj.append(t, y, dy)
    return traj


def _initial_step(rhs, t0, y0, f0, t1, atol, rtol, params):
    """Hairer-style automatic first step guess."""
    scale = atol + rtol * np.abs(y0)
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y0 + h0 * f0
    f1 = np.asarray(rhs(t0 + h0, y1, params), dtype=float)
    d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, t1 - t0), f1


class Integrator:
    """Stateful adaptive (or Euler) stepper driven by step_to targets.

    The hybrid coupling advances the ODE exactly one model-time unit per
    model step while holding ``params`` piecewise-constant; parameters may
    be mutated between step_to calls.
    """

    def __init__(self, rhs, t: float, y, params=None,
                 config: IntegratorConfig | None = None):
        self.rhs = rhs
        self.t = float(t)
        self.y = np.atleast_1d(np.asarray(y, dtype=float))
        self.params = dict(params or {})
        self.config = config or IntegratorConfig()
        self.nfev = 0
        self._h = None  # carried step-size guess (adaptive)
        self._k1 = None  # FSAL stage carried across accepted steps

    def step_to(self, t_target: float) -> np.ndarray:
        if t_target < self.t - 1e-12:
            raise ValueError("step_to target lies in the past")
        if t_target <= self.t:
            return self.y.copy()
        if self.config.method == "euler":
            self._euler_to(t_target)
        else:
            self._rk45_to(t_target)
        self.t = float(t_target)
        return self.y.copy()

    def _euler_to(self, t_target):
        rhs, params, dt = self.rhs, self.params, self.config.dt
        t, y = self.t, self.y
        while t < t_target - 1e-12:
            h = min(dt, t_target - t)
            f = np.asarray(rhs(t, y, params), dtype=float)
            self.nfev += 1
            y = y + h * f
            t += h
            _check_finite(y)
        self.y = y

    def _rk45_to(self, t_target):
        cfg = self.config
        rhs, params = self.rhs, self.params
        atol, rtol = cfg.abs_tol, cfg.rel_tol
        t, y = self.t, self.y
        k1 = self._k1
        if k1 is None:
            k1 = np.asarray(rhs(t, y, params), dtype=float)
            self.nfev += 1
        h = self._h
        if h is None:
            h, _ = _initial_step(rhs, t, y, k1, t_target, atol, rtol, params)
            self.nfev += 1
        steps = 0
        while t < t_target - 1e-12:
            if steps >= cfg.max_steps:
                raise StepBudgetExceeded(f"max_steps={cfg.max_steps} exhausted")
            clipped = min(h, t_target - t)
            k = [k1, None, None, None, None, None, None]
            for i in range(1, 7):
                yi = y + clipped * sum(DP_A[i][j] * k[j] for j in range(i))
                k[i] = np.asarray(rhs(t + DP_C[i] * clipped, yi, params), dtype=float)
                self.nfev += 1
            y_new = y + clipped * sum(b * ki for b, ki in zip(DP_B5, k) if b)
            _check_finite(y_new)
            err_vec = clipped * sum(e * ki for e, ki in zip(DP_ERR, k) if e)
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
            err = np.sqrt(np.mean((err_vec / scale) ** 2))
            steps += 1
            if err <= 1.0:
                t += clipped
                y = y_new
                k1 = k[6]  # FSAL: last stage is next step's first
                factor = _MAX_FACTOR if err == 0 else min(
                    _MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err ** -0.2))
                h = clipped * factor
            else:
                h = clipped * max(_MIN_FACTOR, _SAFETY * err ** -0.2)
        self.y = y
        self._k1 = k1
        self._h = h


def integrate_adaptive(problem: OdeProblem, config: IntegratorConfig | None = None) -> Trajectory:
    """Adaptive DP 5(4) over [t0, t1]; returns the accepted-step trajectory."""
    cfg = config or IntegratorConfig()
    if cfg.method != "rk45":
        raise ValueError("integrate_adaptive requires the rk45 method")
    rhs, params = problem.rhs, problem.params
    atol, rtol = cfg.abs_tol, cfg.rel_tol
    t, y = problem.t0, problem.y0.copy()
    traj = Trajectory()
    k1 = np.asarray(rhs(t, y, params), dtype=float)
    traj.nfev += 1
    traj.append(t, y, k1)
    if problem.t1 == problem.t0:
        return traj
    h, _ = _initial_step(rhs, t, y, k1, problem.t1, atol, rtol, params)
    traj.nfev += 1
    steps = 0
    while t < problem.t1 - 1e-12:
        if steps >= cfg.max_steps:
            raise StepBudgetExceeded(f"max_steps={cfg.max_steps} exhausted")
        clipped = min(h, problem.t1 - t)
        k = [k1, None, None, None, None, None, None]
        for i in range(1, 7):
            yi = y + clipped * sum(DP_A[i][j] * k[j] for j in range(i))
            k[i] = np.asarray(rhs(t + DP_C[i] * clipped, yi, params), dtype=float)
            traj.nfev += 1
        y_new = y + clipped * sum(b * ki for b, ki in zip(DP_B5, k) if b)
        _check_finite(y_new)
        err_vec = clipped * sum(e * ki for e, ki in zip(DP_ERR, k) if e)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = np.sqrt(np.mean((err_vec / scale) ** 2))
        steps += 1
        if err <= 1.0:
            t += clipped
            y = y_new
            k1 = k[6]
            traj.append(t, y, k1)
            factor = _MAX_FACTOR if err == 0 else min(
                _MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err ** -0.2))
            h = clipped * factor
        else:
            h = clipped * max(_MIN_FACTOR, _SAFETY * err ** -0.2)
    return traj
