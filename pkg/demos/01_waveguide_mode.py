"""TE10 mode of a 5 cm x 2.5 cm aluminium waveguide.

Prints the quantities that set how fast a 10 GHz photon decays in the
guide, then shows how loss blows up as the carrier approaches cutoff and
what the literal attenuation expression does instead.
"""

import math

import numpy as np

from qlink import errors
from qlink.waveguide import (
    ALUMINIUM,
    AttenuationModel,
    WaveguideSpec,
    attenuation,
    mode_params,
    surface_resistance,
)

wg = WaveguideSpec(width=0.05, height=0.025, length=5.0, wall=ALUMINIUM)
omega = 2 * math.pi * 10e9
p = mode_params(wg, omega)

print(f"cutoff frequency     {p.omega_c / (2 * math.pi) / 1e9:.3f} GHz")
print(f"effective eps        {p.eps_eff:.4f}")
print(f"group velocity       {p.v_g:.4e} m/s ({p.v_g / 299792458:.3f} c)")
print(f"surface resistance   {surface_resistance(ALUMINIUM, omega, wg.temperature):.4f} ohm")
print(f"attenuation          {p.alpha:.3e} Np/m = {p.alpha * 10 / math.log(10):.4f} dB/m")
print(f"decay rate           {p.Gamma:.3e} 1/s")
print(f"Gamma t over 5 m     {p.alpha * wg.length:.4f}")

# Loss versus frequency: steep near cutoff, then a shallow minimum.
print("\nf (GHz)   alpha (dB/m)")
for f in np.geomspace(3.05e9, 40e9, 8):
    a = attenuation(wg, 2 * math.pi * f)
    print(f"{f / 1e9:7.2f}   {a * 10 / math.log(10):.4f}")

# The literal expression has a numerator (h/W)(wc/w)^2 - 1 that is negative
# for any propagating mode of this guide, so it is refused.
try:
    attenuation(wg, omega, AttenuationModel.PAPER_VERBATIM)
except errors.NonphysicalAttenuation as exc:
    print(f"\npaper_verbatim: {exc}")

# Below cutoff nothing propagates.
try:
    mode_params(wg, 2 * math.pi * 2e9)
except errors.EvanescentMode as exc:
    print(f"2 GHz: {exc}")
