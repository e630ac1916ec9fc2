"""Coherent microwave photon transmission over a room-temperature waveguide.

Modules follow the signal chain: :mod:`qlink.waveguide` (TE10 mode and
losses), :mod:`qlink.link` (thermal photon transport), :mod:`qlink.receiver`
(loop antenna and LC detector), :mod:`qlink.design` (sweeps and inverse
design) and :mod:`qlink.langevin_mc` (stochastic cross-check).
"""

from .design import (
    AntennaDesign,
    DesignConstraint,
    LinkBudget,
    Scenario,
    SweepSpec,
    evaluate,
    max_length_under_cooling,
    required_input_photons,
    run_sweep,
    solve_antenna_width,
)
from .errors import (
    EtaOutOfRange,
    EvanescentMode,
    Infeasible,
    InvalidConfig,
    NonphysicalAttenuation,
    QlinkError,
    StabilityViolation,
    UndefinedSnr,
)
from .langevin_mc import McConfig, analytic_reference, simulate_ensemble
from .link import SignalSpec, propagate, snr_db, thermal_occupation
from .receiver import AntennaSpec, coupling_eta, detect
from .waveguide import ALUMINIUM, AttenuationModel, ConductorModel, WaveguideSpec

__version__ = "0.1.0"
