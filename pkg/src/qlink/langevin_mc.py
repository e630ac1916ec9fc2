"""Stochastic check of the closed-form photon transport.

The mode amplitude obeys the linear Langevin equation

    du = -(Gamma/2) u dt + sqrt(Gamma) dxi,   <|dxi|^2> = n_th dt,

simulated as a complex classical amplitude. Because the equation is linear
and the noise is Gaussian, the ensemble mean of |u|^2 reproduces the
normally ordered photon number exactly in distribution; the vacuum
(anti-normally ordered) part is left out on purpose.

Each trajectory draws from its own Philox stream keyed by (seed, trajectory
index, integrator), and the final reduction is a single pairwise sum in
trajectory order, so results do not depend on the number of threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from ._parallel import ordered_map
from .errors import InvalidConfig, StabilityViolation

MAX_STEP_DECAY = 0.1
BLOCK_SIZE = 512
# |mc - analytic| below this fraction of the analytic value counts as agreement
# even when the ensemble has zero spread (pure decay, no noise).
ROUNDING_FLOOR = 1e-9


class Integrator(str, enum.Enum):
    EULER_MARUYAMA = "euler_maruyama"
    EXACT = "exact"


_STREAM_TAG = {Integrator.EULER_MARUYAMA: 1, Integrator.EXACT: 2}


@dataclass(frozen=True)
class McConfig:
    """Parameters of one Monte Carlo ensemble.

    Attributes:
        gamma: Decay rate in 1/s.
        total_time: Integration time in s.
        n_th: Bath occupation.
        initial_amplitude: Complex amplitude u(0); |u(0)|^2 is the input photon number.
        n_trajectories: Ensemble size.
        n_steps: Time steps per trajectory.
        seed: 64-bit master seed.
    """

    gamma: float
    total_time: float
    n_th: float
    initial_amplitude: complex = 0j
    n_trajectories: int = 10_000
    n_steps: int = 100
    seed: int = 42

    def __post_init__(self) -> None:
        if self.n_trajectories < 1:
            raise InvalidConfig(f"n_trajectories must be >= 1, got {self.n_trajectories}")
        if self.n_steps < 1:
            raise InvalidConfig(f"n_steps must be >= 1, got {self.n_steps}")
        if not self.gamma >= 0:
            raise InvalidConfig(f"gamma must be >= 0, got {self.gamma}")
        if not self.total_time >= 0:
            raise InvalidConfig(f"total_time must be >= 0, got {self.total_time}")
        if not self.n_th >= 0:
            raise InvalidConfig(f"n_th must be >= 0, got {self.n_th}")
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.step_decay > MAX_STEP_DECAY:
            raise StabilityViolation(
                f"Gamma*dt = {self.step_decay:.3g} exceeds {MAX_STEP_DECAY}; "
                f"use n_steps >= {min_steps(self.gamma * self.total_time)}"
            )

    @classmethod
    def from_photons(
        cls, gamma_t: float, n_th: float, initial_photons: float, **kwargs
    ) -> McConfig:
        """Config with unit decay rate, total time ``gamma_t`` and a real initial amplitude."""
        kwargs.setdefault("n_steps", min_steps(gamma_t))
        return cls(
            gamma=1.0,
            total_time=gamma_t,
            n_th=n_th,
            initial_amplitude=complex(math.sqrt(initial_photons)),
            **kwargs,
        )

    @property
    def dt(self) -> float:
        return self.total_time / self.n_steps

    @property
    def step_decay(self) -> float:
        return self.gamma * self.dt

    @property
    def initial_photons(self) -> float:
        return abs(self.initial_amplitude) ** 2


@dataclass(frozen=True)
class EnsembleStats:
    mean_photons: float
    variance: float
    std_error: float
    n_effective: int


def min_steps(gamma_t: float, max_step_decay: float = MAX_STEP_DECAY) -> int:
    """Fewest steps keeping Gamma*dt within ``max_step_decay``."""
    return max(1, math.ceil(gamma_t / max_step_decay - 1e-12))


def trajectory_rng(seed: int, index: int, integrator: Integrator) -> np.random.Generator:
    """Independent stream for one trajectory: Philox keyed by (seed, index)."""
    tag = _STREAM_TAG[Integrator(integrator)]
    bit_gen = np.random.Philox(key=seed | (index << 64), counter=tag << 192)
    return np.random.Generator(bit_gen)


def _noise_scale(cfg: McConfig, integrator: Integrator) -> float:
    """Standard deviation of each quadrature of the per-step complex kick."""
    if integrator is Integrator.EULER_MARUYAMA:
        # sqrt(Gamma) * dxi with <|dxi|^2> = n_th dt
        return math.sqrt(cfg.gamma) * math.sqrt(cfg.n_th * cfg.dt / 2)
    return math.sqrt(cfg.n_th * -math.expm1(-cfg.step_decay) / 2)


def _run_block(cfg: McConfig, integrator: Integrator, start: int, stop: int) -> np.ndarray:
    n = stop - start
    # Both schemes propagate the linear drift with its exact factor; they differ
    # in the noise kick (Ito increment vs exact conditional variance).
    decay = math.exp(-cfg.step_decay / 2)
    scale = _noise_scale(cfg, integrator)
    u = np.full(n, complex(cfg.initial_amplitude), dtype=np.complex128)
    if scale == 0:
        for _ in range(cfg.n_steps):
            u *= decay
    else:
        draws = np.empty((n, cfg.n_steps, 2))
        for i in range(n):
            draws[i] = trajectory_rng(cfg.seed, start + i, integrator).standard_normal(
                (cfg.n_steps, 2)
            )
        kicks = np.empty((cfg.n_steps, n), dtype=np.complex128)
        kicks.real = draws[:, :, 0].T
        kicks.imag = draws[:, :, 1].T
        kicks *= scale
        for k in range(cfg.n_steps):
            u *= decay
            u += kicks[k]
    return u.real**2 + u.imag**2


def sample_photons(
    cfg: McConfig,
    integrator: Integrator = Integrator.EULER_MARUYAMA,
    threads: int | None = None,
) -> np.ndarray:
    """Final |u|^2 of every trajectory, in trajectory-index order."""
    integrator = Integrator(integrator)
    bounds = [
        (s, min(s + BLOCK_SIZE, cfg.n_trajectories))
        for s in range(0, cfg.n_trajectories, BLOCK_SIZE)
    ]
    blocks = ordered_map(lambda b: _run_block(cfg, integrator, *b), bounds, threads)
    return np.concatenate(blocks)


def ensemble_stats(samples: np.ndarray) -> EnsembleStats:
    n = samples.size
    mean = float(np.sum(samples) / n)
    variance = float(np.sum((samples - mean) ** 2) / (n - 1)) if n > 1 else 0.0
    return EnsembleStats(
        mean_photons=mean,
        variance=variance,
        std_error=math.sqrt(variance / n),
        n_effective=n,
    )


def simulate_ensemble(
    cfg: McConfig,
    integrator: Integrator = Integrator.EULER_MARUYAMA,
    threads: int | None = None,
) -> EnsembleStats:
    """Ensemble statistics of the photon number |u(t)|^2 at ``cfg.total_time``.

    ``EULER_MARUYAMA`` adds the Ito increment sqrt(Gamma) dxi each step, with the
    drift applied through its exact factor exp(-Gamma dt / 2). ``EXACT`` draws
    the kick from the exact conditional variance n_th (1 - exp(-Gamma dt)), so
    it has no step-size bias at all. Output is bit-identical for a given seed.
    """
    return ensemble_stats(sample_photons(cfg, integrator, threads))


def analytic_reference(cfg: McConfig) -> float:
    """Closed-form mean photon number |u0|^2 e^{-Gt} + n_th (1 - e^{-Gt})."""
    gamma_t = cfg.gamma * cfg.total_time
    return cfg.initial_photons * math.exp(-gamma_t) + cfg.n_th * -math.expm1(-gamma_t)


def z_score(difference: float, std_error: float, scale: float) -> float:
    """|difference| in units of ``std_error``, with a rounding floor for zero spread."""
    if abs(difference) <= ROUNDING_FLOOR * max(1.0, abs(scale)):
        return 0.0
    if std_error == 0:
        return math.inf
    return abs(difference) / std_error


@dataclass(frozen=True)
class ConvergenceRow:
    n_trajectories: int
    mean_photons: float
    analytic: float
    abs_error: float
    std_error: float

    @property
    def z(self) -> float:
        return z_score(self.abs_error, self.std_error, self.analytic)


def convergence_report(
    cfg: McConfig,
    batch_schedule: list[int],
    integrator: Integrator = Integrator.EULER_MARUYAMA,
    threads: int | None = None,
) -> list[ConvergenceRow]:
    """Error against the closed form for growing ensemble sizes.

    Trajectory streams are keyed by index, so the ensemble of size N is the
    first N trajectories of the largest one; one run serves every row.
    """
    schedule = list(batch_schedule)
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
        raise InvalidConfig(f"batch schedule must be strictly increasing and >= 1: {schedule}")
    samples = sample_photons(replace(cfg, n_trajectories=schedule[-1]), integrator, threads)
    analytic = analytic_reference(cfg)
    rows = []
    for n in schedule:
        stats = ensemble_stats(samples[:n])
        rows.append(
            ConvergenceRow(
                n_trajectories=n,
                mean_photons=stats.mean_photons,
                analytic=analytic,
                abs_error=abs(stats.mean_photons - analytic),
                std_error=stats.std_error,
            )
        )
    return rows


DEFAULT_GAMMA_TS = (0.05, 0.5, 2.0, 5.0)
DEFAULT_N_THS = (0.0, 1.0, 610.3)
DEFAULT_INITIAL_PHOTONS = (0.0, 1.0, 1e4)
# Euler-Maruyama step: the thermal mean carries a relative bias of about
# Gamma*dt/2, kept an order of magnitude below the 1% ensemble error.
DEFAULT_EM_STEP_DECAY = 0.002


@dataclass(frozen=True)
class OracleCheck:
    """One grid point of the closed-form vs Monte Carlo comparison."""

    gamma_t: float
    n_th: float
    initial_photons: float
    analytic: float
    euler: EnsembleStats
    exact: EnsembleStats
    euler_steps: int
    exact_steps: int

    @property
    def z_euler(self) -> float:
        return z_score(self.euler.mean_photons - self.analytic, self.euler.std_error, self.analytic)

    @property
    def z_exact(self) -> float:
        return z_score(self.exact.mean_photons - self.analytic, self.exact.std_error, self.analytic)

    @property
    def z_mutual(self) -> float:
        se = math.hypot(self.euler.std_error, self.exact.std_error)
        return z_score(self.euler.mean_photons - self.exact.mean_photons, se, self.analytic)

    @property
    def worst_z(self) -> float:
        return max(self.z_euler, self.z_exact, self.z_mutual)

    def passed(self, threshold: float = 3.0) -> bool:
        return self.worst_z <= threshold


def oracle_grid(
    gamma_ts=DEFAULT_GAMMA_TS,
    n_ths=DEFAULT_N_THS,
    initial_photons=DEFAULT_INITIAL_PHOTONS,
    n_trajectories: int = 10_000,
    seed: int = 42,
    euler_step_decay: float = DEFAULT_EM_STEP_DECAY,
    n_steps: int | None = None,
    threads: int | None = None,
) -> list[OracleCheck]:
    """Compare both integrators against the closed form over a parameter grid.

    ``n_steps`` forces one step count for every point and integrator; by
    default Euler-Maruyama uses steps of Gamma*dt <= ``euler_step_decay`` and
    the exact scheme the coarsest step the stability guard allows.

    Raises:
        StabilityViolation: a forced ``n_steps`` is too coarse for some point.
    """
    checks = []
    for gamma_t in gamma_ts:
        for n_th in n_ths:
            for m0 in initial_photons:
                em_steps = n_steps or min_steps(gamma_t, euler_step_decay)
                ex_steps = n_steps or min_steps(gamma_t)
                em_cfg = McConfig.from_photons(
                    gamma_t, n_th, m0, n_trajectories=n_trajectories, n_steps=em_steps, seed=seed
                )
                ex_cfg = replace(em_cfg, n_steps=ex_steps)
                checks.append(
                    OracleCheck(
                        gamma_t=gamma_t,
                        n_th=n_th,
                        initial_photons=m0,
                        analytic=analytic_reference(em_cfg),
                        euler=simulate_ensemble(em_cfg, Integrator.EULER_MARUYAMA, threads),
                        exact=simulate_ensemble(ex_cfg, Integrator.EXACT, threads),
                        euler_steps=em_steps,
                        exact_steps=ex_steps,
                    )
                )
    return checks
