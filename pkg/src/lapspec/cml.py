"""Coupled map lattices on graphs and the spectral synchronization test.

Each vertex carries a copy of an interval map f; neighbors are coupled
diffusively with strength eps through the normalized Laplacian:

    x_i(t+1) = f(x_i(t)) + (eps/d_i) * sum_j w_ij (f(x_j(t)) - f(x_i(t)))

The synchronized state x_i = s(t) is asymptotically stable when eps lies in
the interval ((1-e^{-mu})/lambda_1, (1+e^{-mu})/lambda_max), with mu the
Lyapunov exponent of f on the synchronized orbit.  This module provides the
maps, the exponent estimate, the interval test, the spectral-ratio bracket
behind it, and a direct simulation check.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .graphs import WeightedGraph, require_connected
from .neighborhood import neighborhood_cheeger, neighborhood_dual_cheeger
from .spectral import Spectrum, spectrum

#: Initial conditions are drawn this close to the synchronized orbit.
PERTURBATION_RADIUS = 1e-3

#: Any unit state beyond this magnitude aborts a run as divergent.
DIVERGENCE_GUARD = 1e10

#: |f'| is floored here before taking logs in the Lyapunov average.
_LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class MapSpec:
    """An interval map together with its derivative.

    ``kind`` is "logistic", "tent", or "custom"; both callables accept and
    return numpy arrays (or scalars).
    """

    kind: str
    f: Callable[[np.ndarray], np.ndarray]
    f_prime: Callable[[np.ndarray], np.ndarray]
    params: tuple[float, ...] = ()


def logistic_map(a: float) -> MapSpec:
    """``f(x) = a x (1-x)``; keeps [0,1] invariant for ``0 <= a <= 4``.

    At ``a = 4`` the map is chaotic with Lyapunov exponent exactly ln 2.
    """
    return MapSpec(
        kind="logistic",
        f=lambda x: a * x * (1.0 - x),
        f_prime=lambda x: a * (1.0 - 2.0 * x),
        params=(a,),
    )


def tent_map(s: float) -> MapSpec:
    """``f(x) = s min(x, 1-x)``; for ``s = 2`` the exponent is exactly ln 2.

    The derivative at the kink ``x = 1/2`` is taken from the right.
    """
    return MapSpec(
        kind="tent",
        f=lambda x: s * np.minimum(x, 1.0 - x),
        f_prime=lambda x: np.where(np.asarray(x) < 0.5, s, -s),
        params=(s,),
    )


def custom_map(points: Sequence[tuple[float, float]]) -> MapSpec:
    """Piecewise-linear map through the given (x, y) breakpoints.

    Slopes are constant between breakpoints; at a breakpoint the derivative
    is the slope of the segment to its right.
    """
    pts = sorted((float(x), float(y)) for x, y in points)
    if len(pts) < 2:
        raise ValueError("need at least two breakpoints")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if (np.diff(xs) <= 0).any():
        raise ValueError("breakpoint x-values must be strictly increasing")
    slopes = np.diff(ys) / np.diff(xs)

    def f_prime(x):
        idx = np.clip(np.searchsorted(xs, x, side="right") - 1, 0, len(slopes) - 1)
        return slopes[idx]

    return MapSpec(
        kind="custom",
        f=lambda x: np.interp(x, xs, ys),
        f_prime=f_prime,
        params=tuple(v for p in pts for v in p),
    )


def derivative_mismatch(map_spec: MapSpec, xs: np.ndarray, h: float = 1e-6) -> float:
    """Largest gap between ``f_prime`` and a central difference of ``f``.

    Sample points should stay away from kinks of piecewise maps.
    """
    xs = np.asarray(xs, dtype=float)
    fd = (map_spec.f(xs + h) - map_spec.f(xs - h)) / (2.0 * h)
    return float(np.abs(fd - map_spec.f_prime(xs)).max())


def lyapunov_exponent(
    map_spec: MapSpec, s0: float, t_steps: int, transient: int
) -> float:
    """Time average of ``ln |f'|`` along the orbit of ``s0``.

    The transient is discarded first; ``|f'|`` is floored at a tiny positive
    value so isolated critical points cannot poison the average.
    """
    if t_steps < 1:
        raise ValueError("t_steps must be >= 1")
    if transient < 0:
        raise ValueError("transient must be >= 0")
    s = float(s0)
    for _ in range(transient):
        s = float(map_spec.f(s))
    acc = 0.0
    for _ in range(t_steps):
        acc += math.log(max(abs(float(map_spec.f_prime(s))), _LOG_FLOOR))
        s = float(map_spec.f(s))
    return acc / t_steps


def step_cml(g: WeightedGraph, x: np.ndarray, map_spec: MapSpec, eps: float) -> np.ndarray:
    """One step of the lattice.

    The coupling is computed from the pairwise differences
    ``f(x_j) - f(x_i)``, so an exactly synchronized state produces coupling
    terms that are exactly zero and stays bit-identical across units.
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    fx = np.asarray(map_spec.f(np.asarray(x, dtype=float)), dtype=float)
    diff = fx[None, :] - fx[:, None]
    coupling = (g.weights * diff).sum(axis=1) / g.degrees
    return fx + eps * coupling


@dataclass(frozen=True)
class SyncInterval:
    """The coupling range guaranteeing stability of the synchronized state.

    ``(lo, hi) = ((1-e^-mu)/lambda_1, (1+e^-mu)/lambda_max)``; nonempty
    exactly when the spectral ratio clears ``(e^mu+1)/(e^mu-1)`` (for
    expanding maps, mu > 0; for contracting maps the interval always
    exists).
    """

    mu: float
    lo: float
    hi: float
    ratio: float
    ratio_threshold: float

    @property
    def nonempty(self) -> bool:
        return self.lo < self.hi

    @property
    def ratio_condition(self) -> bool:
        if self.mu > 0:
            return self.ratio < self.ratio_threshold
        if self.mu < 0:
            return self.ratio > self.ratio_threshold
        return True

    def contains(self, eps: float) -> bool:
        return self.lo < eps < self.hi


def sync_interval(mu: float, lambda_1: float, lambda_max: float) -> SyncInterval:
    if lambda_1 <= 0:
        raise ValueError("lambda_1 must be positive (connected graph)")
    if mu == 0.0:
        threshold = math.inf
    else:
        # expm1 keeps the denominator nonzero for tiny mu, where exp(mu)
        # rounds to 1.0 exactly
        threshold = (math.exp(mu) + 1.0) / math.expm1(mu)
    return SyncInterval(
        mu=mu,
        lo=-math.expm1(-mu) / lambda_1,
        hi=(1.0 + math.exp(-mu)) / lambda_max,
        ratio=lambda_max / lambda_1,
        ratio_threshold=threshold,
    )


def transverse_stability_factor(s: Spectrum, eps: float, mu: float) -> float:
    """``max_{k>=1} |1 - eps lambda_k| e^mu``; < 1 means linearly stable."""
    lams = s.eigenvalues[1:]
    return float(np.abs(1.0 - eps * lams).max() * math.exp(mu))


@dataclass(frozen=True)
class RatioBounds:
    """Isoperimetric bracket for the spectral ratio ``lambda_max/lambda_1``.

    ``lower = hbar/h``.  The upper bound divides the best transferred upper
    bound for ``lambda_max`` (even l via the Cheeger constant of the
    neighborhood graph, odd l via its dual) by the best transferred lower
    bound for ``lambda_1``.
    """

    lower: float
    upper: float
    h: float
    hbar: float
    upper_candidates: dict[int, float]
    lower_candidates: dict[int, float]


def ratio_bounds(
    g: WeightedGraph,
    l_list: Sequence[int] = (1, 2, 3),
    *,
    cap_h: int | None = None,
    cap_hbar: int | None = None,
) -> RatioBounds:
    from .partitions import cheeger_exact, dual_cheeger_exact

    h = cheeger_exact(g, cap=cap_h).value
    hbar = dual_cheeger_exact(g, cap=cap_hbar).value
    uppers: dict[int, float] = {}
    lowers: dict[int, float] = {}
    for l in l_list:
        h_l = neighborhood_cheeger(g, l, cap=cap_h).value
        lowers[l] = 1.0 - (1.0 - h_l * h_l) ** (1.0 / (2 * l))
        if l % 2 == 0:
            uppers[l] = 1.0 + (1.0 - h_l * h_l) ** (1.0 / (2 * l))
        else:
            hbar_l = neighborhood_dual_cheeger(g, l, cap=cap_hbar).value
            uppers[l] = 1.0 + (1.0 - (1.0 - hbar_l) ** 2) ** (1.0 / (2 * l))
    best_lower = max(lowers.values())
    if best_lower <= 0:
        raise ValueError("no positive lower bound for lambda_1 at these l")
    return RatioBounds(
        lower=hbar / h,
        upper=min(uppers.values()) / best_lower,
        h=h,
        hbar=hbar,
        upper_candidates=uppers,
        lower_candidates=lowers,
    )


@dataclass(frozen=True)
class SyncReport:
    """Outcome of the interval test plus a direct simulation.

    ``synchronized`` means every trial kept the pairwise spread below the
    tolerance throughout the final tenth of the run; ``spread_trajectory``
    belongs to the worst trial.  ``guaranteed`` reports the analytic side:
    eps strictly inside the interval with a stable linear factor.  Outside
    the interval nothing is guaranteed either way - a failed simulation
    there is evidence, not a contradiction.
    """

    mu: float
    eps: float
    interval: SyncInterval
    stability_factor: float
    synchronized: bool
    diverged: bool
    spread_trajectory: tuple[float, ...]
    final_spreads: tuple[float, ...]

    @property
    def guaranteed(self) -> bool:
        return self.interval.contains(self.eps) and self.stability_factor < 1.0

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "eps": self.eps,
            "interval": {
                "lo": self.interval.lo,
                "hi": self.interval.hi,
                "nonempty": self.interval.nonempty,
                "ratio": self.interval.ratio,
                "ratio_threshold": self.interval.ratio_threshold,
            },
            "stability_factor": self.stability_factor,
            "guaranteed": self.guaranteed,
            "synchronized": self.synchronized,
            "diverged": self.diverged,
            "final_spreads": list(self.final_spreads),
        }


def spread_to_csv(report: SyncReport) -> str:
    lines = ["t,max_spread"]
    for t, v in enumerate(report.spread_trajectory):
        lines.append(f"{t},{v!r}")
    return "\n".join(lines) + "\n"


#: Orbit length used when estimating the exponent inside simulate_sync.
_MU_STEPS = 50_000
_MU_TRANSIENT = 1_000


def simulate_sync(
    g: WeightedGraph,
    map_spec: MapSpec,
    eps: float,
    t_steps: int,
    transient: int,
    tol: float,
    trials: int,
    *,
    base_seed: int = 42,
    mu: float | None = None,
) -> SyncReport:
    """Run perturbed-synchronized initial conditions and test for synchrony.

    Each trial starts from a point of the synchronized orbit perturbed by
    at most ``PERTURBATION_RADIUS`` per unit (the stability statement is
    local, so arbitrary initial data would test something else).  Trials
    are seeded ``base_seed + trial`` for reproducibility.  ``mu`` may be
    passed to skip the internal exponent estimate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if t_steps < 10:
        raise ValueError("t_steps must be >= 10")
    require_connected(g)
    s = spectrum(g)
    if mu is None:
        mu = lyapunov_exponent(map_spec, 0.2357111317, _MU_STEPS, _MU_TRANSIENT)
    interval = sync_interval(mu, s.lambda_1, s.lambda_max)
    factor = transverse_stability_factor(s, eps, mu)

    tail_start = t_steps - max(1, t_steps // 10)
    diverged = False
    all_synced = True
    worst_spread = -1.0
    worst_traj: tuple[float, ...] = ()
    final_spreads = []
    for trial in range(trials):
        rng = np.random.default_rng(base_seed + trial)
        s_sync = float(rng.uniform(0.1, 0.9))
        for _ in range(transient):
            s_sync = float(map_spec.f(s_sync))
        x = s_sync + rng.uniform(-PERTURBATION_RADIUS, PERTURBATION_RADIUS, size=g.n)
        # Perturbed states must still be states: the maps live on [0, 1],
        # and a perturbation past the boundary would not test stability of
        # the synchronized orbit but escape of the map itself.
        x = np.clip(x, 0.0, 1.0)
        traj = []
        for _ in range(t_steps):
            x = step_cml(g, x, map_spec, eps)
            if not np.isfinite(x).all() or np.abs(x).max() > DIVERGENCE_GUARD:
                diverged = True
                break
            traj.append(float(x.max() - x.min()))
        if diverged:
            all_synced = False
            worst_traj = tuple(traj)
            final_spreads.append(math.inf)
            break
        tail = max(traj[tail_start:])
        final_spreads.append(tail)
        if tail >= tol:
            all_synced = False
        if tail > worst_spread:
            worst_spread = tail
            worst_traj = tuple(traj)
    return SyncReport(
        mu=mu,
        eps=eps,
        interval=interval,
        stability_factor=factor,
        synchronized=all_synced and not diverged,
        diverged=diverged,
        spread_trajectory=worst_traj,
        final_spreads=tuple(final_spreads),
    )
