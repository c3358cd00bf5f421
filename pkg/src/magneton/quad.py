"""Adaptive quadrature of ln|zeta(rho + it)| against the Lorentz measure
dt/(1/4 + t^2).

The integrand is smooth except for integrable logarithmic dips where the
vertical line passes a zeta zero (only possible inside the critical strip).
Two measures keep the recursion finite there without a zero table:

* the raw log is clamped at ``singularity_floor`` before weighting, which
  bounds the integrand; the clamp perturbs the integral by less than
  exp(floor) times the affected width, far below every tolerance in use;
* a panel that still cannot meet its halved tolerance once it is narrower
  than ``_MIN_WIDTH`` is closed out with its Richardson value and its local
  estimate is added to the reported error instead of recursing forever.

Everything is deterministic: panels recurse and sum left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from . import specfun
from .errors import ConvergenceError, DomainError

_MIN_WIDTH = 1e-6


@dataclass(frozen=True)
class QuadratureConfig:
    t_max: float = 50.0
    abs_tol: float = 1e-8
    max_depth: int = 40
    singularity_floor: float = -30.0
    tail_mode: str = "none"  # none | log_bound

    def __post_init__(self):
        if not (self.t_max > 0.0):
            raise DomainError("t_max must be positive")
        if self.t_max > specfun.IM_WINDOW:
            raise DomainError(
                f"t_max {self.t_max:g} beyond the zeta window {specfun.IM_WINDOW:g}"
            )
        if not (self.abs_tol > 0.0):
            raise DomainError("abs_tol must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be >= 1")
        if self.tail_mode not in ("none", "log_bound"):
            raise DomainError(f"unknown tail_mode {self.tail_mode!r}")


class QuadResult(NamedTuple):
    value: float
    error_estimate: float
    n_evals: int
    max_depth_used: int


class PhiNumericResult(NamedTuple):
    value: float
    error_estimate: float
    tail_estimate: float | None
    n_evals: int
    max_depth_used: int


class _Acc:
    __slots__ = ("err", "evals", "depth")

    def __init__(self):
        self.err = 0.0
        self.evals = 0
        self.depth = 0


def _simpson(fa, fm, fb, width):
    return width / 6.0 * (fa + 4.0 * fm + fb)


def _panel(f, a, b, fa, fm, fb, tol, depth, cfg: QuadratureConfig, acc: _Acc) -> float:
    m = 0.5 * (a + b)
    flm = f(0.5 * (a + m))
    frm = f(0.5 * (m + b))
    acc.evals += 2
    whole = _simpson(fa, fm, fb, b - a)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    split = left + right
    err = abs(split - whole) / 15.0
    if err <= tol or (b - a) < _MIN_WIDTH:
        if not math.isfinite(split):
            raise ConvergenceError(
                f"non-finite integrand on panel [{a:.6g}, {b:.6g}]"
            )
        acc.err += err
        return split + (split - whole) / 15.0
    if depth >= cfg.max_depth:
        raise ConvergenceError(
            f"panel [{a:.6g}, {b:.6g}] not converged at depth limit "
            f"{cfg.max_depth}: error {err:.3g} > {tol:.3g}"
        )
    acc.depth = max(acc.depth, depth + 1)
    half = tol / 2.0
    out_l = _panel(f, a, m, fa, flm, fm, half, depth + 1, cfg, acc)
    out_r = _panel(f, m, b, fm, frm, fb, half, depth + 1, cfg, acc)
    return out_l + out_r


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    config: QuadratureConfig | None = None,
) -> QuadResult:
    """Adaptive Simpson integral of f over [a, b] with an embedded error
    pair; raises ConvergenceError if the depth budget runs out first."""
    cfg = config or QuadratureConfig()
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"bad interval [{a!r}, {b!r}]")
    acc = _Acc()
    fa = f(a)
    fm = f(0.5 * (a + b))
    fb = f(b)
    acc.evals += 3
    value = _panel(f, a, b, fa, fm, fb, cfg.abs_tol, 0, cfg, acc)
    return QuadResult(value, acc.err, acc.evals, acc.depth)


def tail_uncertainty(rho: float, t_max: float, c: float = 2.0) -> float:
    """Reported (never added) bound on the discarded tail, from
    ln|zeta| <= c + ln|s| above the truncation height."""
    lorentz_mass = math.pi - 2.0 * math.atan(2.0 * t_max)
    log_part = (math.log(math.hypot(rho, t_max)) + 1.0 + 0.5 * math.log(2.0)) / t_max
    return c * lorentz_mass + log_part


def phi_numeric_detailed(rho: float, config: QuadratureConfig | None = None) -> PhiNumericResult:
    cfg = config or QuadratureConfig()
    rho = float(rho)
    if not math.isfinite(rho):
        raise DomainError(f"rho must be finite, got {rho!r}")
    floor = cfg.singularity_floor

    def integrand(t: float) -> float:
        raw = specfun.log_abs_zeta(complex(rho, t))
        if raw < floor:  # also swallows the -inf underflow signal
            raw = floor
        return raw / (0.25 + t * t)

    a = 0.0
    pole_patch = 0.0
    if rho == 1.0:
        # the line through the zeta pole: ln|zeta(1+it)| = -ln|t| + O(t^2),
        # so start just above 0 and add the sliver integral of -4 ln t
        a = 1e-12
        pole_patch = 4.0 * a * (1.0 - math.log(a))
    res = integrate_adaptive(integrand, a, cfg.t_max, cfg)
    tail = tail_uncertainty(rho, cfg.t_max) if cfg.tail_mode == "log_bound" else None
    return PhiNumericResult(
        res.value + pole_patch, res.error_estimate, tail, res.n_evals, res.max_depth_used
    )


def phi_numeric(rho: float, config: QuadratureConfig | None = None) -> float:
    """(1/2) * integral over [-T, T] of ln|zeta(rho+it)| dt/(1/4+t^2),
    realized as the half-line integral [0, T] by evenness in t."""
    return phi_numeric_detailed(rho, config).value


def lorentz_log_integral(alpha: float, beta: float, mu: float) -> float:
    """Closed form of the integral over [0, inf) of ln(beta^2 + mu t^2)/(alpha + t^2):
    (pi/sqrt(alpha)) * ln(sqrt(mu*alpha) + beta).  Quadrature self-test oracle."""
    if not (alpha > 0.0) or beta < 0.0 or not (mu > 0.0):
        raise DomainError(
            f"need alpha > 0, beta >= 0, mu > 0, got {(alpha, beta, mu)!r}"
        )
    return math.pi / math.sqrt(alpha) * math.log(math.sqrt(mu * alpha) + beta)
