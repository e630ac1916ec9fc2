"""Checking the closed-form photon numbers with a Langevin Monte Carlo.

Each trajectory integrates du = -(Gamma/2) u dt + sqrt(Gamma) dxi with a
thermal complex Gaussian kick; the ensemble mean of |u|^2 must match
M0 exp(-Gt) + n_th (1 - exp(-Gt)). Two integrators cross-check each other.
"""

from qlink.langevin_mc import Integrator, McConfig, convergence_report, oracle_grid

cfg = McConfig.from_photons(gamma_t=2.0, n_th=610.3, initial_photons=0.0, n_trajectories=4000)
print("thermal filling at Gamma t = 2, n_th = 610.3 (closed form 527.75)")
print("      N      mean   std err      z")
for row in convergence_report(cfg, [100, 400, 1600, 4000], Integrator.EXACT):
    print(f"{row.n_trajectories:7d}  {row.mean_photons:8.2f}  {row.std_error:8.3f}  {row.z:5.2f}")

checks = oracle_grid(gamma_ts=(0.5, 5.0), n_ths=(0.0, 610.3), initial_photons=(0.0, 1e4),
                     n_trajectories=2000)
print("\n  Gt     n_th       M0    analytic   z_EM  z_exact  z_mutual")
for c in checks:
    print(f"{c.gamma_t:4.1f}  {c.n_th:7.1f}  {c.initial_photons:7.0f}  {c.analytic:10.3f}  "
          f"{c.z_euler:5.2f}  {c.z_exact:7.2f}  {c.z_mutual:8.2f}")
print(f"\nworst z = {max(c.worst_z for c in checks):.2f} (threshold 3)")
