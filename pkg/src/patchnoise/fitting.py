"""Nonlinear least-squares fits of the two empirical temperature models.

Implemented models:

    temp-scaling:  S(T) = S0 * (1 + (T/T0)^beta)
    arrhenius:     S(T) = S0 + S_T * exp(-T0/T)

Fitting is a damped Gauss-Newton (Levenberg) iteration with analytic
Jacobians.  Parameters are log-transformed internally (fit ln S0, ln T0,
ln beta), which enforces positivity without constraints; the chain rule
back to linear parameters is exact.  The default loss space is log,
because measured plateau values span more than two orders of magnitude
between datasets and a linear loss would be dominated by the largest ones.

Covariance is the residual-variance-scaled inverse of J^T J; residual
bootstrap is available instead via FitOptions.bootstrap_resamples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import NoiseDataset
from .errors import (FitConvergenceError, InputError, NumericalError,
                     RankDeficiencyError)

MODELS = ("temp-scaling", "arrhenius")

# condition numbers of the Jacobian above which we warn / refuse
COND_WARN = 1e6
COND_FAIL = 1e12


@dataclass(frozen=True)
class FitOptions:
    loss_space: str = "log"          # "log" or "linear"
    max_iterations: int = 200
    tolerance: float = 1e-12         # relative step size in log-parameter space
    bootstrap_resamples: int = 0
    bootstrap_seed: int = 0

    def __post_init__(self) -> None:
        if self.loss_space not in ("log", "linear"):
            raise InputError("loss_space must be 'log' or 'linear'")
        if self.tolerance <= 0:
            raise InputError("tolerance must be > 0")
        if self.max_iterations < 1:
            raise InputError("max_iterations must be >= 1")
        if self.bootstrap_resamples < 0:
            raise InputError("bootstrap_resamples must be >= 0")


@dataclass(frozen=True)
class TempScalingFit:
    """Fitted S(T) = s0 (1 + (T/t0)^beta) with covariance in linear parameters."""

    s0: float
    t0: float
    beta: float
    covariance: np.ndarray   # 3x3, order (s0, t0, beta)
    chi2_reduced: float
    n_points: int
    converged: bool
    iterations: int
    warnings: tuple = field(default=())

    @property
    def errors_1sigma(self) -> tuple:
        d = np.sqrt(np.maximum(np.diag(self.covariance), 0.0))
        return (float(d[0]), float(d[1]), float(d[2]))

    def predict(self, temperature) -> np.ndarray:
        t = np.asarray(temperature, dtype=float)
        return self.s0 * (1.0 + (t / self.t0) ** self.beta)

    def to_report_dict(self) -> dict:
        e = self.errors_1sigma
        return {
            "model": "temp-scaling",
            "params": {"s0": self.s0, "t0": self.t0, "beta": self.beta},
            "errors_1sigma": {"s0": e[0], "t0": e[1], "beta": e[2]},
            "covariance": self.covariance.tolist(),
            "chi2_reduced": self.chi2_reduced,
            "n_points": self.n_points,
            "converged": self.converged,
            "iterations": self.iterations,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class ArrheniusFit:
    """Fitted S(T) = s0 + s_t exp(-t0/T) with covariance in linear parameters."""

    s0: float
    s_t: float
    t0: float
    covariance: np.ndarray   # 3x3, order (s0, s_t, t0)
    chi2_reduced: float
    n_points: int
    converged: bool
    iterations: int
    warnings: tuple = field(default=())

    @property
    def errors_1sigma(self) -> tuple:
        d = np.sqrt(np.maximum(np.diag(self.covariance), 0.0))
        return (float(d[0]), float(d[1]), float(d[2]))

    def predict(self, temperature) -> np.ndarray:
        t = np.asarray(temperature, dtype=float)
        return self.s0 + self.s_t * np.exp(-self.t0 / t)

    def to_report_dict(self) -> dict:
        e = self.errors_1sigma
        return {
            "model": "arrhenius",
            "params": {"s0": self.s0, "s_t": self.s_t, "t0": self.t0},
            "errors_1sigma": {"s0": e[0], "s_t": e[1], "t0": e[2]},
            "covariance": self.covariance.tolist(),
            "chi2_reduced": self.chi2_reduced,
            "n_points": self.n_points,
            "converged": self.converged,
            "iterations": self.iterations,
            "warnings": list(self.warnings),
        }


def initial_guess(data: NoiseDataset, model: str) -> tuple:
    """Starting parameters for either model; always defined, never raises
    beyond empty/invalid input.

    temp-scaling: S0 = min S, T0 = temperature where S first crosses 2 S0
    (linear interpolation; median T when never reached), beta = 3.
    arrhenius: S0 = min S, S_T = max S - min S (floored positive), T0 = 40 K.
    """
    if model not in MODELS:
        raise InputError(f"model must be one of {MODELS}")
    if len(data) == 0:
        raise InputError("empty dataset")
    if np.any(data.s_e <= 0):
        raise InputError("initial guess requires positive S values")
    order = np.argsort(data.temperature)
    t = data.temperature[order]
    s = data.s_e[order]
    s0 = float(np.min(s))
    if model == "arrhenius":
        s_t = float(np.max(s) - s0)
        if s_t <= 0:
            s_t = 1e-3 * s0
        return (s0, s_t, 40.0)
    target = 2.0 * s0
    t0 = float(np.median(t))
    for i in range(1, t.size):
        lo, hi = s[i - 1], s[i]
        if (lo - target) * (hi - target) <= 0 and lo != hi:
            t0 = float(t[i - 1] + (target - lo) * (t[i] - t[i - 1]) / (hi - lo))
            break
    if t0 <= 0:
        t0 = float(np.median(t))
    return (s0, t0, 3.0)


def _eval_temp_scaling(theta: np.ndarray, t: np.ndarray):
    """Model value and d(ln m)/d(theta) for theta = (ln s0, ln t0, ln beta)."""
    ln_s0, ln_t0, ln_beta = theta
    beta = math.exp(ln_beta)
    with np.errstate(over="ignore"):
        lt = np.log(t) - ln_t0
        x = np.exp(beta * lt)
        m = np.exp(ln_s0) * (1.0 + x)
        g = x / (1.0 + x)
    jac_log = np.column_stack([np.ones_like(t), -beta * g, beta * g * lt])
    return m, jac_log


def _eval_arrhenius(theta: np.ndarray, t: np.ndarray):
    """Model value and d(ln m)/d(theta) for theta = (ln s0, ln s_t, ln t0)."""
    ln_s0, ln_st, ln_t0 = theta
    s0 = math.exp(ln_s0)
    s_t = math.exp(ln_st)
    t0 = math.exp(ln_t0)
    with np.errstate(over="ignore"):
        u = np.exp(-t0 / t)
        m = s0 + s_t * u
        su = s_t * u
    jac_log = np.column_stack([s0 / m, su / m, -(t0 / t) * su / m])
    return m, jac_log


def _damped_gauss_newton(resid_jac, theta0: np.ndarray, opts: FitOptions,
                         cost_trace: list | None = None):
    """Levenberg-damped Gauss-Newton; the accepted cost never increases.

    ``resid_jac(theta)`` returns (residuals, Jacobian d r / d theta).
    Returns (theta, iterations, converged).  When ``cost_trace`` is a
    list, the cost of every accepted iterate is appended to it.
    """
    theta = np.array(theta0, dtype=float)
    r, jac = resid_jac(theta)
    if not np.all(np.isfinite(r)):
        raise NumericalError("residuals not finite at the initial guess")
    cost = float(r @ r)
    if cost_trace is not None:
        cost_trace.append(cost)
    lam = 1e-3
    iterations = 0
    converged = False
    for iterations in range(1, opts.max_iterations + 1):
        h = jac.T @ jac
        grad = jac.T @ r
        diag = np.diag(h).copy()
        if not np.all(np.isfinite(h)) or np.any(diag <= 0):
            raise RankDeficiencyError(
                "degenerate Jacobian: a parameter has no leverage on the data")
        step = None
        for _ in range(60):
            try:
                delta = np.linalg.solve(h + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                raise RankDeficiencyError("normal equations are singular") from None
            candidate = theta + delta
            r_new, jac_new = resid_jac(candidate)
            with np.errstate(over="ignore", invalid="ignore"):
                cost_new = float(r_new @ r_new) if np.all(np.isfinite(r_new)) else math.inf
            if cost_new <= cost:
                step = (candidate, r_new, jac_new, cost_new, delta)
                break
            lam *= 10.0
            if lam > 1e14:
                break
        if step is None:
            raise FitConvergenceError(
                f"damping stalled after {iterations} iterations (cost={cost:g})",
                best_params=np.exp(theta), iterations=iterations)
        theta, r, jac, cost, delta = step
        if cost_trace is not None:
            cost_trace.append(cost)
        lam = max(lam / 3.0, 1e-14)
        if float(np.max(np.abs(delta))) < opts.tolerance:
            converged = True
            break
    if not converged:
        raise FitConvergenceError(
            f"no convergence within {opts.max_iterations} iterations",
            best_params=np.exp(theta), iterations=iterations)
    return theta, iterations, converged


def _prepare(data: NoiseDataset, opts: FitOptions):
    if len(data) < 5:
        raise InputError(f"need >= 5 points, got {len(data)}")
    t = data.temperature
    s = data.s_e
    if float(np.max(t) / np.min(t)) < 3.0:
        raise InputError("temperatures must span at least a factor 3")
    if np.any(s <= 0) and opts.loss_space == "log":
        raise InputError("log-space fitting requires S > 0")
    if float(np.max(s) - np.min(s)) <= 1e-12 * float(np.max(np.abs(s))):
        raise RankDeficiencyError(
            "flat dataset: (t0, beta) carry no information, refusing to fit")
    err = data.s_e_err
    weighted = bool(np.all(err > 0))
    note = []
    if not weighted and np.any(err > 0):
        note.append("partial error column ignored; fitting unweighted")
    if opts.loss_space == "log":
        sigma = err / s if weighted else np.ones_like(s)
    else:
        sigma = err.copy() if weighted else np.ones_like(s)
    return t, s, sigma, note


def _finish(theta, resid_jac, n: int, notes: list) -> tuple:
    r, jac = resid_jac(theta)
    cost = float(r @ r)
    dof = max(n - 3, 1)
    chi2_reduced = cost / dof
    sv = np.linalg.svd(jac, compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    if cond > COND_FAIL:
        raise RankDeficiencyError(
            f"parameters not identifiable (condition number {cond:.3g}); "
            "the temperature span is likely below the knee")
    if cond > COND_WARN:
        notes.append(f"weak identification: Jacobian condition number {cond:.3g}")
    cov_theta = chi2_reduced * np.linalg.inv(jac.T @ jac)
    p = np.exp(theta)
    cov_linear = cov_theta * np.outer(p, p)
    return p, cov_linear, chi2_reduced


def _residual_builder(t, y, sigma, model_eval, loss_space):
    ln_y = np.log(y) if loss_space == "log" else None

    def resid_jac(theta):
        m, jac_log = model_eval(theta, t)
        if loss_space == "log":
            with np.errstate(divide="ignore", invalid="ignore"):
                r = (np.log(m) - ln_y) / sigma
            jac = jac_log / sigma[:, None]
        else:
            r = (m - y) / sigma
            jac = jac_log * (m / sigma)[:, None]
        return r, jac

    return resid_jac


def _bootstrap_covariance(t, y_fit, resid_nat, sigma, model_eval, opts,
                          theta_hat, loss_space, notes: list) -> np.ndarray:
    """Residual-resampling bootstrap of the linear parameters."""
    n = t.size
    samples = []
    failures = 0
    for k in range(opts.bootstrap_resamples):
        rng = np.random.Generator(
            np.random.Philox(key=np.array([opts.bootstrap_seed, k], dtype=np.uint64)))
        idx = rng.integers(0, n, size=n)
        if loss_space == "log":
            y_star = y_fit * np.exp(resid_nat[idx])
        else:
            y_star = y_fit + resid_nat[idx]
        if np.any(y_star <= 0):
            failures += 1
            continue
        resid_jac = _residual_builder(t, y_star, sigma, model_eval, loss_space)
        try:
            theta, _, _ = _damped_gauss_newton(resid_jac, theta_hat, opts)
        except (NumericalError, FitConvergenceError, RankDeficiencyError):
            failures += 1
            continue
        samples.append(np.exp(theta))
    if len(samples) < max(2, opts.bootstrap_resamples // 2):
        raise NumericalError(
            f"bootstrap failed: only {len(samples)} of "
            f"{opts.bootstrap_resamples} resamples refit")
    if failures:
        notes.append(f"bootstrap: {failures} resamples discarded")
    return np.cov(np.array(samples).T, ddof=1)


def _fit(data: NoiseDataset, opts: FitOptions, model: str):
    t, y, sigma, notes = _prepare(data, opts)
    model_eval = _eval_temp_scaling if model == "temp-scaling" else _eval_arrhenius
    guess = initial_guess(data, model)
    theta0 = np.log(np.asarray(guess, dtype=float))
    resid_jac = _residual_builder(t, y, sigma, model_eval, opts.loss_space)
    theta, iterations, converged = _damped_gauss_newton(resid_jac, theta0, opts)
    p, cov, chi2_reduced = _finish(theta, resid_jac, t.size, notes)
    if opts.bootstrap_resamples > 0:
        m_hat, _ = model_eval(theta, t)
        resid_nat = np.log(y) - np.log(m_hat) if opts.loss_space == "log" else y - m_hat
        cov = _bootstrap_covariance(t, m_hat, resid_nat, sigma, model_eval,
                                    opts, theta, opts.loss_space, notes)
        notes.append(f"covariance from {opts.bootstrap_resamples} residual resamples")
    return p, cov, chi2_reduced, t.size, converged, iterations, tuple(notes)


def fit_temp_scaling(data: NoiseDataset, opts: FitOptions | None = None) -> TempScalingFit:
    """Fit S(T) = S0 (1 + (T/T0)^beta).

    Requires >= 5 points spanning at least a factor 3 in temperature, all
    S > 0 in log space.  Raises RankDeficiencyError for data that does not
    identify (T0, beta) and FitConvergenceError (carrying best-so-far
    parameters) when the iteration budget runs out.
    """
    opts = opts or FitOptions()
    p, cov, chi2, n, converged, iterations, notes = _fit(data, opts, "temp-scaling")
    return TempScalingFit(s0=float(p[0]), t0=float(p[1]), beta=float(p[2]),
                          covariance=cov, chi2_reduced=chi2, n_points=n,
                          converged=converged, iterations=iterations,
                          warnings=notes)


def fit_arrhenius(data: NoiseDataset, opts: FitOptions | None = None) -> ArrheniusFit:
    """Fit S(T) = S0 + S_T exp(-T0/T); contract as fit_temp_scaling."""
    opts = opts or FitOptions()
    p, cov, chi2, n, converged, iterations, notes = _fit(data, opts, "arrhenius")
    return ArrheniusFit(s0=float(p[0]), s_t=float(p[1]), t0=float(p[2]),
                        covariance=cov, chi2_reduced=chi2, n_points=n,
                        converged=converged, iterations=iterations,
                        warnings=notes)


def fit_dataset(data: NoiseDataset, model: str,
                opts: FitOptions | None = None):
    """Dispatch to the model named 'temp-scaling' or 'arrhenius'."""
    if model == "temp-scaling":
        return fit_temp_scaling(data, opts)
    if model == "arrhenius":
        return fit_arrhenius(data, opts)
    raise InputError(f"model must be one of {MODELS}, got {model!r}")
