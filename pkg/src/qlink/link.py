"""Photon-number transport through a thermal waveguide."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants

from .errors import InvalidConfig, UndefinedSnr
from .waveguide import AttenuationModel, WaveguideSpec, mode_params


@dataclass(frozen=True)
class SignalSpec:
    """Carrier frequency (Hz) and mean photon number injected at the input port."""

    frequency: float
    input_photons: float

    def __post_init__(self) -> None:
        if not self.frequency > 0:
            raise InvalidConfig(f"signal.frequency must be > 0, got {self.frequency}")
        if not self.input_photons >= 0:
            raise InvalidConfig(
                f"signal.input_photons must be >= 0, got {self.input_photons}"
            )

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.frequency


@dataclass(frozen=True)
class TransportResult:
    """Mean photon numbers at the waveguide output.

    Attributes:
        Ms: Surviving signal photons.
        Mn: Thermally generated noise photons.
        n_th: Bath occupation at the guide temperature.
        Gamma_t: Total decay exponent, equal to alpha * length.
        propagation_time: Transit time length / v_g in s.
        snr_db: 10 log10(Ms / Mn); ``inf`` when Mn is zero.
        Gamma: Decay rate in 1/s.
        alpha: Power attenuation in Np/m.
        v_g: Group velocity in m/s.
    """

    Ms: float
    Mn: float
    n_th: float
    Gamma_t: float
    propagation_time: float
    snr_db: float
    Gamma: float
    alpha: float
    v_g: float

    @property
    def transmission(self) -> float:
        return math.exp(-self.Gamma_t)


def thermal_occupation(frequency: float, temperature: float) -> float:
    """Bose-Einstein occupation 1 / (exp(h f / k_B T) - 1) of a mode at ``frequency`` Hz."""
    if not frequency > 0:
        raise InvalidConfig(f"frequency must be > 0, got {frequency}")
    if temperature < 0:
        raise InvalidConfig(f"temperature must be >= 0, got {temperature}")
    if temperature == 0:
        return 0.0
    x = constants.h * frequency / (constants.k * temperature)
    if x > 700:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def snr_db(Ms: float, Mn: float) -> float:
    """Signal-to-noise ratio in dB.

    Returns ``inf`` for a noiseless link with signal present.

    Raises:
        UndefinedSnr: if both photon numbers are zero.
    """
    if Ms < 0 or Mn < 0:
        raise InvalidConfig(f"photon numbers must be >= 0, got Ms={Ms}, Mn={Mn}")
    if Mn == 0:
        if Ms == 0:
            raise UndefinedSnr("SNR is undefined when signal and noise are both zero")
        return math.inf
    if Ms == 0:
        return -math.inf
    return 10 * math.log10(Ms / Mn)


def propagate(
    signal: SignalSpec,
    wg: WaveguideSpec,
    model: AttenuationModel = AttenuationModel.TEXTBOOK,
) -> TransportResult:
    """Signal and thermal photon numbers after one pass through ``wg``.

    Raises:
        EvanescentMode: below cutoff.
        NonphysicalAttenuation: propagated from the attenuation model.
        UndefinedSnr: zero input photons on a zero-length guide.
    """
    p = mode_params(wg, signal.omega, model)
    gamma_t = p.alpha * wg.length
    n_th = thermal_occupation(signal.frequency, wg.temperature)
    Ms = signal.input_photons * math.exp(-gamma_t)
    Mn = n_th * -math.expm1(-gamma_t)
    return TransportResult(
        Ms=Ms,
        Mn=Mn,
        n_th=n_th,
        Gamma_t=gamma_t,
        propagation_time=wg.length / p.v_g,
        snr_db=snr_db(Ms, Mn),
        Gamma=p.Gamma,
        alpha=p.alpha,
        v_g=p.v_g,
    )
