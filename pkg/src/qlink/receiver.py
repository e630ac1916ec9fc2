"""Loop-antenna / LC detection stage at the waveguide output port.

The loop sits at the field maximum of the TE10 mode, so the transverse field
profile is taken as constant across the loop. Two independent routes give
the mode-to-LC photon transfer:

* :func:`coupling_eta` evaluates the closed-form efficiency directly.
* :func:`lc_coupling_coefficient` builds the annihilation-operator map from
  the mode quantization constant and the LC voltage quantization; its
  squared magnitude must equal ``coupling_eta``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import EtaOutOfRange, InvalidConfig, StrongCouplingWarning
from .link import TransportResult
from .waveguide import (
    EPSILON_0,
    MU_0,
    WaveguideSpec,
    cutoff_angular_frequency,
    effective_permittivity,
    mode_impedance,
)

ETA_WARNING_THRESHOLD = 0.1


@dataclass(frozen=True)
class AntennaSpec:
    """Rectangular pickup loop and the LC capacitance it drives.

    Attributes:
        width: Loop width W_r in m, along the waveguide broad wall.
        height: Loop height h_r in m.
        capacitance: LC capacitance in F.
        mu_r: Relative permeability at the port; ``None`` uses the waveguide filling.
    """

    width: float
    height: float
    capacitance: float
    mu_r: float | None = None

    def __post_init__(self) -> None:
        if not self.width >= 0:
            raise InvalidConfig(f"antenna.width must be >= 0, got {self.width}")
        if not self.height >= 0:
            raise InvalidConfig(f"antenna.height must be >= 0, got {self.height}")
        if not self.capacitance > 0:
            raise InvalidConfig(
                f"antenna.capacitance must be > 0, got {self.capacitance}"
            )
        if self.mu_r is not None and not self.mu_r > 0:
            raise InvalidConfig(f"antenna.mu_r must be > 0, got {self.mu_r}")


@dataclass(frozen=True)
class DetectionResult:
    """Photon numbers induced in the LC oscillator."""

    eta: float
    Ns: float
    Nn: float
    inductance: float


def _check_fits(ant: AntennaSpec, wg: WaveguideSpec) -> float:
    if ant.width > wg.width:
        raise InvalidConfig(
            f"antenna.width ({ant.width}) exceeds waveguide width ({wg.width})"
        )
    if ant.height > wg.height:
        raise InvalidConfig(
            f"antenna.height ({ant.height}) exceeds waveguide height ({wg.height})"
        )
    if ant.mu_r is not None and ant.mu_r != wg.mu_r:
        raise InvalidConfig(
            f"antenna.mu_r ({ant.mu_r}) must match the waveguide filling ({wg.mu_r})"
        )
    return wg.mu_r


def _check_eta(eta: float) -> float:
    if not eta <= 1:
        raise EtaOutOfRange(
            f"coupling efficiency {eta:.4g} exceeds 1; shrink the loop, lower the "
            "capacitance or lengthen the guide"
        )
    if eta > ETA_WARNING_THRESHOLD:
        warnings.warn(
            f"coupling efficiency {eta:.3g} is above {ETA_WARNING_THRESHOLD}; "
            "antenna back-action on the mode is neglected",
            StrongCouplingWarning,
            stacklevel=3,
        )
    return eta


def coupling_eta(ant: AntennaSpec, wg: WaveguideSpec, omega: float) -> float:
    """Fraction of mode photons transferred to the LC oscillator.

        eta = C w^2 mu_r^2 mu_0^2 h_r^2 W_r^2
              / (1/2 Omega^2 V (eps_0 eps_eff Z_F^2 + mu_0 mu_r))

    with V = W h l the guide volume. A zero-length guide has no finite
    coupling and raises.

    Raises:
        EvanescentMode: below cutoff.
        InvalidConfig: the loop does not fit in the cross-section.
        EtaOutOfRange: the result exceeds 1.
    """
    mu_r = _check_fits(ant, wg)
    eps_eff = effective_permittivity(wg, omega)
    Omega = omega / cutoff_angular_frequency(wg)
    z_f = mode_impedance(wg)
    numerator = (
        ant.capacitance
        * omega**2
        * mu_r**2
        * MU_0**2
        * ant.height**2
        * ant.width**2
    )
    if numerator == 0:
        return 0.0
    denominator = 0.5 * Omega**2 * wg.volume * (EPSILON_0 * eps_eff * z_f**2 + MU_0 * mu_r)
    if denominator == 0:
        raise EtaOutOfRange("coupling efficiency is unbounded for a zero-length guide")
    return _check_eta(numerator / denominator)


def mode_normalization(wg: WaveguideSpec, omega: float) -> float:
    """Dimensionless factor phi in the TE10 field quantization.

        phi = Omega^2 Z_F^2 / 2 + mu_0 mu_r Omega^2 / (2 eps_0 eps_eff)
    """
    eps_eff = effective_permittivity(wg, omega)
    Omega = omega / cutoff_angular_frequency(wg)
    z_f = mode_impedance(wg)
    return Omega**2 * z_f**2 / 2 + MU_0 * wg.mu_r * Omega**2 / (2 * EPSILON_0 * eps_eff)


def lc_coupling_coefficient(ant: AntennaSpec, wg: WaveguideSpec, omega: float) -> complex:
    """Complex factor k with b = k a between LC and mode annihilation operators.

    Obtained by equating the Faraday voltage of the quantized mode amplitude
    with the quantized LC voltage sqrt(hbar w / C) b; hbar w cancels.
    """
    mu_r = _check_fits(ant, wg)
    if ant.width == 0 or ant.height == 0:
        return 0j
    if wg.volume == 0:
        raise EtaOutOfRange("coupling efficiency is unbounded for a zero-length guide")
    phi = mode_normalization(wg, omega)
    eps_eff = effective_permittivity(wg, omega)
    magnitude = (
        math.sqrt(ant.capacitance)
        / math.sqrt(phi * EPSILON_0 * eps_eff * wg.volume)
        * MU_0
        * mu_r
        * omega
        * ant.height
        * ant.width
    )
    _check_eta(magnitude**2)
    return 1j * magnitude


def induced_voltage_photon_map(
    a_amplitude: complex, ant: AntennaSpec, wg: WaveguideSpec, omega: float
) -> complex:
    """LC amplitude induced by a TE10 mode amplitude ``a_amplitude``."""
    return lc_coupling_coefficient(ant, wg, omega) * a_amplitude


def lc_inductance(omega: float, capacitance: float) -> float:
    """Inductance resonating with ``capacitance`` at ``omega``."""
    return 1.0 / (omega**2 * capacitance)


def detect(
    transport: TransportResult, ant: AntennaSpec, wg: WaveguideSpec, omega: float
) -> DetectionResult:
    eta = coupling_eta(ant, wg, omega)
    return DetectionResult(
        eta=eta,
        Ns=eta * transport.Ms,
        Nn=eta * transport.Mn,
        inductance=lc_inductance(omega, ant.capacitance),
    )
