"""TE10 mode physics of a rectangular conducting waveguide.

All functions are pure and take SI units; angular frequencies are in rad/s.
The waveguide is oriented with the broad wall (``width``) along x, so TE10
is the fundamental mode whenever ``height <= width``.

Example::

    from qlink.waveguide import WaveguideSpec, ALUMINIUM, mode_params

    wg = WaveguideSpec(width=0.05, height=0.025, length=5.0, wall=ALUMINIUM)
    p = mode_params(wg, 2 * math.pi * 10e9)
    print(p.alpha, p.v_g, p.Gamma)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from scipy import constants

from .errors import EvanescentMode, InvalidConfig, NonphysicalAttenuation

SPEED_OF_LIGHT = constants.c
MU_0 = constants.mu_0
EPSILON_0 = constants.epsilon_0
# Rounded free-space impedance used for the filling-material impedance Z_F.
FREE_SPACE_IMPEDANCE_ROUNDED = 377.0

ROOM_TEMPERATURE = 293.0  # K, reference for tabulated conductivities


class AttenuationModel(str, enum.Enum):
    """Selects the conductor-loss formula used for the TE10 attenuation."""

    TEXTBOOK = "textbook"
    PAPER_VERBATIM = "paper_verbatim"


@dataclass(frozen=True)
class ConductorModel:
    """Wall conductor with a temperature-dependent conductivity.

    The conductivity equals ``sigma_ref`` at and above ``reference_temperature``
    and saturates at ``sigma_ref * cryo_factor`` at and below
    ``knee_temperature`` (the residual-resistivity plateau). In between the
    ratio is interpolated as a power law in temperature, so it is continuous
    and non-increasing in T.

    Attributes:
        name: Material label, echoed in reports.
        sigma_ref: Conductivity at the reference temperature in S/m. May be
            ``inf`` for a perfect conductor.
        cryo_factor: Conductivity gain at the knee, >= 1.
        knee_temperature: Temperature in K below which the gain is constant.
        reference_temperature: Temperature in K of ``sigma_ref``.
    """

    name: str
    sigma_ref: float
    cryo_factor: float = 5.0
    knee_temperature: float = 78.0
    reference_temperature: float = ROOM_TEMPERATURE

    def __post_init__(self) -> None:
        if not self.sigma_ref > 0:
            raise InvalidConfig(f"wall.conductivity must be > 0, got {self.sigma_ref}")
        if not self.cryo_factor >= 1:
            raise InvalidConfig(f"wall.cryo_factor must be >= 1, got {self.cryo_factor}")
        if not 0 < self.knee_temperature < self.reference_temperature:
            raise InvalidConfig(
                "wall.knee_temperature must lie in (0, reference_temperature), "
                f"got {self.knee_temperature}"
            )

    def conductivity(self, temperature: float) -> float:
        """Conductivity in S/m at ``temperature`` kelvin."""
        if temperature <= 0:
            raise InvalidConfig(f"temperature must be > 0, got {temperature}")
        if temperature >= self.reference_temperature:
            return self.sigma_ref
        if temperature <= self.knee_temperature:
            return self.sigma_ref * self.cryo_factor
        exponent = math.log(self.cryo_factor) / math.log(
            self.reference_temperature / self.knee_temperature
        )
        return self.sigma_ref * (self.reference_temperature / temperature) ** exponent

    def describe(self) -> str:
        return (
            f"{self.name}: sigma={self.sigma_ref:.6g} S/m at {self.reference_temperature:g} K, "
            f"x{self.cryo_factor:g} at <= {self.knee_temperature:g} K (power-law in between)"
        )


ALUMINIUM = ConductorModel(name="aluminium", sigma_ref=3.8e7)
PERFECT_CONDUCTOR = ConductorModel(name="perfect", sigma_ref=math.inf)


@dataclass(frozen=True)
class WaveguideSpec:
    """Geometry, filling and wall of the transmission waveguide.

    Attributes:
        width: Broad-wall width W in m.
        height: Narrow-wall height h in m.
        length: Guide length l in m.
        eps_r: Relative permittivity of the filling.
        mu_r: Relative permeability of the filling.
        wall: Conductor model of the walls.
        temperature: Uniform guide temperature in K.
    """

    width: float
    height: float
    length: float
    wall: ConductorModel = ALUMINIUM
    eps_r: float = 1.0
    mu_r: float = 1.0
    temperature: float = 293.15

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise InvalidConfig(f"waveguide.width must be > 0, got {self.width}")
        if not self.height > 0:
            raise InvalidConfig(f"waveguide.height must be > 0, got {self.height}")
        if not self.length >= 0:
            raise InvalidConfig(f"waveguide.length must be >= 0, got {self.length}")
        if self.height > self.width:
            raise InvalidConfig(
                f"waveguide.height ({self.height}) must not exceed width ({self.width}) "
                "for TE10 to be the fundamental mode"
            )
        if not self.eps_r >= 1:
            raise InvalidConfig(f"waveguide.eps_r must be >= 1, got {self.eps_r}")
        if not self.mu_r > 0:
            raise InvalidConfig(f"waveguide.mu_r must be > 0, got {self.mu_r}")
        if not self.temperature > 0:
            raise InvalidConfig(f"waveguide.temperature must be > 0, got {self.temperature}")

    @property
    def volume(self) -> float:
        return self.width * self.height * self.length


@dataclass(frozen=True)
class ModeParams:
    """TE10 quantities at one operating frequency."""

    omega: float
    omega_c: float
    Omega: float
    Z_F: float
    eps_eff: float
    v_g: float
    alpha: float
    Gamma: float
    R_s: float
    model: AttenuationModel = field(default=AttenuationModel.TEXTBOOK)


def cutoff_angular_frequency(spec: WaveguideSpec) -> float:
    return 2 * math.pi * SPEED_OF_LIGHT / (2 * spec.width * math.sqrt(spec.eps_r))


def _require_propagating(spec: WaveguideSpec, omega: float) -> float:
    omega_c = cutoff_angular_frequency(spec)
    if not omega > omega_c:
        raise EvanescentMode(omega / (2 * math.pi), omega_c / (2 * math.pi))
    return omega_c


def effective_permittivity(spec: WaveguideSpec, omega: float) -> float:
    """Effective permittivity eps_r - (pi c / W omega)^2 of the TE10 mode.

    Raises:
        EvanescentMode: if ``omega`` is at or below cutoff.
    """
    _require_propagating(spec, omega)
    return spec.eps_r - (math.pi * SPEED_OF_LIGHT / (spec.width * omega)) ** 2


def mode_impedance(spec: WaveguideSpec) -> float:
    """Impedance of the filling material, 377 sqrt(mu_r / eps_r) ohm."""
    return FREE_SPACE_IMPEDANCE_ROUNDED * math.sqrt(spec.mu_r / spec.eps_r)


def group_velocity(spec: WaveguideSpec, omega: float) -> float:
    omega_c = _require_propagating(spec, omega)
    return (
        SPEED_OF_LIGHT
        * math.sqrt(1 - (omega_c / omega) ** 2)
        / math.sqrt(spec.eps_r * spec.mu_r)
    )


def surface_resistance(wall: ConductorModel, omega: float, temperature: float) -> float:
    """Normal skin-effect surface resistance sqrt(omega mu_0 / 2 sigma) in ohm."""
    if not omega > 0:
        raise InvalidConfig(f"omega must be > 0, got {omega}")
    sigma = wall.conductivity(temperature)
    return math.sqrt(omega * MU_0 / (2 * sigma))


def attenuation(
    spec: WaveguideSpec,
    omega: float,
    model: AttenuationModel = AttenuationModel.TEXTBOOK,
) -> float:
    """Power attenuation coefficient of the TE10 mode in Np/m.

    ``TEXTBOOK`` is the standard TE10 conductor-loss formula, doubled to turn
    the field coefficient into a power coefficient. ``PAPER_VERBATIM``
    evaluates

        2 R_s / sqrt(mu_0 mu_r / eps_0 eps_r) * ((h/W) r - 1) / sqrt(1 - r)

    with r = (omega_c / omega)^2, exactly as written. Its numerator is
    negative for every propagating frequency when h <= W, so it raises for
    any lossy wall; it exists to make that visible.

    Raises:
        EvanescentMode: if ``omega`` is at or below cutoff.
        NonphysicalAttenuation: if the model yields a negative value.
    """
    omega_c = _require_propagating(spec, omega)
    r_s = surface_resistance(spec.wall, omega, spec.temperature)
    if r_s == 0:
        return 0.0
    ratio = (omega_c / omega) ** 2
    z0 = math.sqrt(MU_0 * spec.mu_r / (EPSILON_0 * spec.eps_r))
    model = AttenuationModel(model)
    if model is AttenuationModel.TEXTBOOK:
        field_alpha = (
            r_s
            / (spec.height * z0 * math.sqrt(1 - ratio))
            * (1 + 2 * (spec.height / spec.width) * ratio)
        )
        return 2 * field_alpha
    alpha = 2 * r_s / z0 * ((spec.height / spec.width) * ratio - 1) / math.sqrt(1 - ratio)
    if alpha < 0:
        raise NonphysicalAttenuation(
            f"paper_verbatim attenuation is negative ({alpha:.4g} Np/m): "
            "(h/W)(omega_c/omega)^2 - 1 < 0; use the textbook model"
        )
    return alpha


def decay_rate(
    spec: WaveguideSpec,
    omega: float,
    model: AttenuationModel = AttenuationModel.TEXTBOOK,
) -> float:
    """Temporal decay rate alpha * v_g in 1/s, so that Gamma * (l / v_g) = alpha * l."""
    return attenuation(spec, omega, model) * group_velocity(spec, omega)


def mode_params(
    spec: WaveguideSpec,
    omega: float,
    model: AttenuationModel = AttenuationModel.TEXTBOOK,
) -> ModeParams:
    omega_c = _require_propagating(spec, omega)
    alpha = attenuation(spec, omega, model)
    v_g = group_velocity(spec, omega)
    return ModeParams(
        omega=omega,
        omega_c=omega_c,
        Omega=omega / omega_c,
        Z_F=mode_impedance(spec),
        eps_eff=effective_permittivity(spec, omega),
        v_g=v_g,
        alpha=alpha,
        Gamma=alpha * v_g,
        R_s=surface_resistance(spec.wall, omega, spec.temperature),
        model=AttenuationModel(model),
    )
