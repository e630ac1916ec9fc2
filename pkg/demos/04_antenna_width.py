"""Detected photons against loop width with the height tied to half the width.

Coupling goes as W_r^2 h_r^2, so both detected numbers grow as W_r^4 while
their ratio, the SNR, does not move.
"""

import numpy as np

from qlink.design import SweepSpec, run_sweep
from qlink.scenarios import reference_scenario

rows = run_sweep(SweepSpec("antenna_width", 1e-3, 0.05, 12, reference_scenario(), spacing="log"))

print(" W_r (mm)        eta         Ns         Nn    Ns/Nn")
for r in rows:
    print(f"{r.var * 1e3:8.3f}  {r.eta:9.3e}  {r.Ns:9.3e}  {r.Nn:9.3e}  {r.Ns / r.Nn:7.1f}")

slope = np.polyfit(np.log([r.var for r in rows]), np.log([r.Nn for r in rows]), 1)[0]
print(f"\nlog-log slope of Nn against W_r: {slope:.6f}")
