"""Choosing the loop for a noise budget, and how far cooling stretches the link.

The solver finds the widest loop whose induced noise stays within budget,
then checks that the transmitter can still deliver the signal target.
Cooling the guide lowers both the bath occupation and the wall loss.
"""

from qlink.design import DesignConstraint, max_length_under_cooling, solve_antenna_width
from qlink.errors import Infeasible
from qlink.scenarios import aluminium_scenario, reference_scenario

sc = reference_scenario()
budget = DesignConstraint(max_noise_photons=6.3e-3, min_signal_photons=35, max_input_photons=32e4)

d = solve_antenna_width(budget, sc)
print(f"loop {d.width * 1e3:.4f} mm x {d.height * 1e3:.4f} mm, eta = {d.eta:.4e} ({d.binding} binds)")
print(f"Ns = {d.Ns:.3f}, Nn = {d.Nn:.3e}, input needed = {d.required_input_photons:.4g}")

# Tighter noise budgets shrink the loop; below some point the signal target
# needs more photons than the transmitter has.
for max_noise in (1e-2, 1e-3, 1e-4):
    tight = DesignConstraint(max_noise, 35, 32e4)
    try:
        t = solve_antenna_width(tight, sc)
        print(f"Nn <= {max_noise:g}: width {t.width * 1e3:.3f} mm, needs {t.required_input_photons:.3g} photons")
    except Infeasible as exc:
        print(f"Nn <= {max_noise:g}: infeasible ({exc})")

print("\nlongest feasible guide for the same budget")
print(sc.waveguide.wall.describe())
for T in (293.15, 200.0, 120.0, 78.0, 4.0):
    print(f"  {T:7.2f} K  {max_length_under_cooling(sc, budget, T):7.2f} m")

al = aluminium_scenario(antenna=sc.antenna)
print(f"\nhandbook aluminium at 78 K: {max_length_under_cooling(al, budget, 78.0):.2f} m")
