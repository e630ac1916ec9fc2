"""The 5 m room-temperature link behind "35 signal photons, 6.3e-3 noise photons".

Only the detected photon pair and the number sent (32e4) are known. Two
unknowns reproduce them: the end-to-end transmission and the coupling.
We solve for both, build a scenario that realizes them, and run the chain.
"""

from qlink.design import evaluate
from qlink.link import thermal_occupation
from qlink.scenarios import aluminium_scenario, implied_operating_point, reference_scenario

n_th = thermal_occupation(10e9, 293.15)
point = implied_operating_point()
print(f"bath occupation at 293.15 K  n_th = {n_th:.2f}")
print(f"implied transmission         exp(-Gt) = {point.transmission:.4f}  (Gt = {point.Gamma_t:.4f})")
print(f"implied coupling             eta = {point.eta:.4e}")

sc = reference_scenario()
budget = evaluate(sc)
print(f"\ncalibrated wall: {sc.waveguide.wall.describe()}")
print(f"loop: {sc.antenna.width * 1e3:.3f} mm x {sc.antenna.height * 1e3:.3f} mm, C = 1 pF, "
      f"L = {budget.inductance * 1e9:.4f} nH")
print(f"Ms = {budget.Ms:.4e}   Mn = {budget.Mn:.3f}   SNR = {budget.snr_db:.2f} dB")
print(f"Ns = {budget.Ns:.3f}      Nn = {budget.Nn:.3e}")

# With handbook aluminium (3.8e7 S/m) the loss is about 2.3x smaller than
# the implied one, so the same loop sees fewer noise photons.
al = evaluate(aluminium_scenario(antenna=sc.antenna))
print(f"\nhandbook aluminium: Gt = {al.transport.Gamma_t:.4f}, Ns = {al.Ns:.2f}, Nn = {al.Nn:.3e}")
