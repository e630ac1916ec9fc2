"""Parameter sweeps and inverse design over the waveguide -> link -> receiver chain."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ._parallel import ordered_map
from .errors import (
    EtaOutOfRange,
    EvanescentMode,
    Infeasible,
    InvalidConfig,
    NonphysicalAttenuation,
    StrongCouplingWarning,
    UndefinedSnr,
)
from .link import SignalSpec, TransportResult, propagate
from .receiver import AntennaSpec, coupling_eta, detect
from .waveguide import AttenuationModel, WaveguideSpec

BISECTION_ITERATIONS = 64
WIDTH_RTOL = 1e-12
# relative slack on the photon budget, absorbs rounding at an exactly binding design
BUDGET_RTOL = 1e-9


@dataclass(frozen=True)
class Scenario:
    """Everything needed to evaluate one link end to end."""

    waveguide: WaveguideSpec
    signal: SignalSpec
    antenna: Optional[AntennaSpec] = None
    attenuation_model: AttenuationModel = AttenuationModel.TEXTBOOK

    def with_length(self, length: float) -> Scenario:
        return replace(self, waveguide=replace(self.waveguide, length=length))

    def with_temperature(self, temperature: float) -> Scenario:
        return replace(self, waveguide=replace(self.waveguide, temperature=temperature))

    def with_antenna_width(self, width: float, h_ratio: float) -> Scenario:
        ant = self.require_antenna()
        return replace(self, antenna=replace(ant, width=width, height=h_ratio * width))

    def require_antenna(self) -> AntennaSpec:
        if self.antenna is None:
            raise InvalidConfig("this operation needs an [antenna] section")
        return self.antenna


@dataclass(frozen=True)
class LinkBudget:
    """Full chain output for one scenario."""

    transport: TransportResult
    eta: float
    Ns: float
    Nn: float
    inductance: float

    @property
    def Ms(self) -> float:
        return self.transport.Ms

    @property
    def Mn(self) -> float:
        return self.transport.Mn

    @property
    def snr_db(self) -> float:
        return self.transport.snr_db


def evaluate(scenario: Scenario) -> LinkBudget:
    """Run the waveguide, link and receiver stages for ``scenario``."""
    ant = scenario.require_antenna()
    transport = propagate(scenario.signal, scenario.waveguide, scenario.attenuation_model)
    det = detect(transport, ant, scenario.waveguide, scenario.signal.omega)
    return LinkBudget(
        transport=transport, eta=det.eta, Ns=det.Ns, Nn=det.Nn, inductance=det.inductance
    )


class SweepVariable(str, enum.Enum):
    LENGTH = "length"
    FREQUENCY = "frequency"
    ANTENNA_WIDTH = "antenna_width"
    TEMPERATURE = "temperature"


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep of a scenario parameter.

    For ``antenna_width`` the loop height follows as ``h_ratio * width``.
    """

    variable: SweepVariable
    start: float
    stop: float
    n_points: int
    scenario: Scenario
    spacing: str = "linear"
    h_ratio: float = 0.5

    def __post_init__(self) -> None:
        object.__setattr__(self, "variable", SweepVariable(self.variable))
        if not self.start < self.stop:
            raise InvalidConfig(f"sweep.start ({self.start}) must be < sweep.stop ({self.stop})")
        if self.n_points < 2:
            raise InvalidConfig(f"sweep.n_points must be >= 2, got {self.n_points}")
        if self.spacing not in ("linear", "log"):
            raise InvalidConfig(f"sweep.spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and not self.start > 0:
            raise InvalidConfig("log spacing needs sweep.start > 0")
        if not self.h_ratio > 0:
            raise InvalidConfig(f"sweep.h_ratio must be > 0, got {self.h_ratio}")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.n_points)
        return np.linspace(self.start, self.stop, self.n_points)

    def scenario_at(self, value: float) -> Scenario:
        sc = self.scenario
        if self.variable is SweepVariable.LENGTH:
            return sc.with_length(value)
        if self.variable is SweepVariable.TEMPERATURE:
            return sc.with_temperature(value)
        if self.variable is SweepVariable.FREQUENCY:
            return replace(sc, signal=replace(sc.signal, frequency=value))
        return sc.with_antenna_width(value, self.h_ratio)


@dataclass(frozen=True)
class SweepRow:
    """One sweep point; fields a failed stage could not produce are ``None``."""

    var: float
    Ms: Optional[float] = None
    Mn: Optional[float] = None
    snr_db: Optional[float] = None
    eta: Optional[float] = None
    Ns: Optional[float] = None
    Nn: Optional[float] = None
    status: str = "ok"


_STATUS = (
    (EvanescentMode, "evanescent"),
    (NonphysicalAttenuation, "nonphysical_attenuation"),
    (UndefinedSnr, "undefined_snr"),
    (EtaOutOfRange, "eta_out_of_range"),
    (InvalidConfig, "invalid_geometry"),
)


def _status_of(exc: Exception) -> str:
    for cls, code in _STATUS:
        if isinstance(exc, cls):
            return code
    raise exc


def evaluate_row(scenario: Scenario, var: float) -> SweepRow:
    """Evaluate one point, turning model-domain errors into a status code."""
    try:
        transport = propagate(scenario.signal, scenario.waveguide, scenario.attenuation_model)
    except (EvanescentMode, NonphysicalAttenuation, UndefinedSnr, InvalidConfig) as exc:
        return SweepRow(var=var, status=_status_of(exc))
    row = SweepRow(var=var, Ms=transport.Ms, Mn=transport.Mn, snr_db=transport.snr_db)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", StrongCouplingWarning)
            det = detect(transport, scenario.require_antenna(), scenario.waveguide,
                         scenario.signal.omega)
    except (EtaOutOfRange, InvalidConfig) as exc:
        return replace(row, status=_status_of(exc))
    return replace(row, eta=det.eta, Ns=det.Ns, Nn=det.Nn)


def _sweep_point(spec: SweepSpec, value: float) -> SweepRow:
    try:
        scenario = spec.scenario_at(value)
    except InvalidConfig:
        return SweepRow(var=value, status="invalid_geometry")
    return evaluate_row(scenario, value)


def run_sweep(spec: SweepSpec, threads: int | None = None) -> list[SweepRow]:
    """Evaluate the chain at every sweep value; rows come back in sweep order."""
    spec.scenario.require_antenna()
    values = [float(v) for v in spec.values()]
    return ordered_map(lambda v: _sweep_point(spec, v), values, threads)


@dataclass(frozen=True)
class DesignConstraint:
    """Noise budget, signal target and transmitter photon budget (all > 0, may be inf)."""

    max_noise_photons: float
    min_signal_photons: float
    max_input_photons: float

    def __post_init__(self) -> None:
        for name in ("max_noise_photons", "min_signal_photons", "max_input_photons"):
            if not getattr(self, name) > 0:
                raise InvalidConfig(f"constraint.{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class AntennaDesign:
    """Result of :func:`solve_antenna_width`.

    ``Ns`` and ``Nn`` are evaluated at the scenario's own input photon number;
    ``required_input_photons`` is what the transmitter must send to reach
    the signal target with this loop. ``binding`` names the limit that set
    the width: ``noise``, ``eta`` (coupling capped at one) or ``geometry``.
    """

    width: float
    height: float
    eta: float
    Ns: float
    Nn: float
    required_input_photons: float
    Gamma_t: float
    binding: str
    scenario: Scenario = field(repr=False, compare=False)


def required_input_photons(target_Ns: float, eta: float, Gamma_t: float) -> float:
    """Input photons needed for ``target_Ns`` detected signal photons."""
    if not eta > 0:
        raise InvalidConfig(f"eta must be > 0, got {eta}")
    if not target_Ns > 0:
        raise InvalidConfig(f"target must be > 0, got {target_Ns}")
    return target_Ns / (eta * math.exp(-Gamma_t))


def _eta_at(width: float, scenario: Scenario, h_ratio: float) -> float | None:
    """Coupling for a loop of ``width``; ``None`` if it is above one."""
    ant = replace(scenario.require_antenna(), width=width, height=h_ratio * width)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", StrongCouplingWarning)
            return coupling_eta(ant, scenario.waveguide, scenario.signal.omega)
    except EtaOutOfRange:
        return None


def solve_antenna_width(
    constraint: DesignConstraint, scenario: Scenario, h_ratio: float = 0.5
) -> AntennaDesign:
    """Widest loop (height ``h_ratio * width``) whose induced noise fits the budget.

    The coupling grows as width^4, so the feasible widths form an interval
    starting at zero and bisection on its upper end is exact up to
    ``WIDTH_RTOL``. The design is then checked against the signal target at
    the transmitter budget.

    Raises:
        Infeasible: no positive width meets the noise budget, or the signal
            target needs more than ``max_input_photons`` (or a coupling above one).
    """
    if not h_ratio > 0:
        raise InvalidConfig(f"h_ratio must be > 0, got {h_ratio}")
    wg = scenario.waveguide
    transport = propagate(scenario.signal, wg, scenario.attenuation_model)
    w_max = min(wg.width, wg.height / h_ratio)

    def noise_ok(width: float) -> bool:
        eta = _eta_at(width, scenario, h_ratio)
        return eta is not None and eta * transport.Mn <= constraint.max_noise_photons

    if noise_ok(w_max):
        width = w_max
        binding = "geometry"
    else:
        lo, hi = 0.0, w_max
        for _ in range(BISECTION_ITERATIONS):
            mid = 0.5 * (lo + hi)
            if noise_ok(mid):
                lo = mid
            else:
                hi = mid
            if hi - lo <= WIDTH_RTOL * hi:
                break
        width = lo
        eta_hi = _eta_at(hi, scenario, h_ratio)
        noise_binds = eta_hi is not None and eta_hi * transport.Mn > constraint.max_noise_photons
        binding = "noise" if noise_binds else "eta"
    if width <= 0:
        raise Infeasible(
            f"no loop width meets the noise budget of {constraint.max_noise_photons:g} photons"
        )
    eta = _eta_at(width, scenario, h_ratio)
    needed = required_input_photons(constraint.min_signal_photons, eta, transport.Gamma_t)
    if needed > constraint.max_input_photons * (1 + BUDGET_RTOL):
        eta_needed = constraint.min_signal_photons / (
            constraint.max_input_photons * math.exp(-transport.Gamma_t)
        )
        reason = "a coupling above 1" if eta_needed > 1 else f"eta >= {eta_needed:.4g}"
        raise Infeasible(
            f"reaching {constraint.min_signal_photons:g} signal photons needs {needed:.4g} "
            f"input photons (budget {constraint.max_input_photons:g}); the target requires "
            f"{reason} but the noise budget allows eta <= {eta:.4g}"
        )
    ant = replace(scenario.require_antenna(), width=width, height=h_ratio * width)
    return AntennaDesign(
        width=width,
        height=h_ratio * width,
        eta=eta,
        Ns=eta * transport.Ms,
        Nn=eta * transport.Mn,
        required_input_photons=needed,
        Gamma_t=transport.Gamma_t,
        binding=binding,
        scenario=replace(scenario, antenna=ant),
    )


MIN_LENGTH = 1e-6
MAX_LENGTH = 1e7


def max_length_under_cooling(
    scenario: Scenario,
    constraint: DesignConstraint,
    temperature: float,
    h_ratio: float = 0.5,
) -> float:
    """Longest guide at ``temperature`` for which some loop meets ``constraint``.

    Feasibility shrinks monotonically with length (transmission falls, noise
    and the coupling volume grow), so the answer is found by bracketing and
    bisecting on the length.

    Raises:
        Infeasible: even a vanishingly short guide fails, or no finite length
            ever becomes infeasible.
    """
    cooled = scenario.with_temperature(temperature)

    def feasible(length: float) -> bool:
        try:
            solve_antenna_width(constraint, cooled.with_length(length), h_ratio)
        except Infeasible:
            return False
        return True

    if not feasible(MIN_LENGTH):
        raise Infeasible(f"no waveguide length meets the constraint at {temperature:g} K")
    lo, hi = MIN_LENGTH, 1.0
    while feasible(hi):
        lo, hi = hi, 2 * hi
        if hi > MAX_LENGTH:
            raise Infeasible(f"the constraint stays satisfiable beyond {MAX_LENGTH:g} m")
    for _ in range(BISECTION_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= WIDTH_RTOL * hi:
            break
    return lo
