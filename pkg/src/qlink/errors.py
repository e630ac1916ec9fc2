"""Exception hierarchy.

Every error carries the process exit code the command-line front end uses
when the error escapes a subcommand.
"""

from __future__ import annotations


class QlinkError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InvalidConfig(QlinkError, ValueError):
    """A parameter violates a type invariant or a config file is malformed."""

    exit_code = 2


class PhysicsError(QlinkError):
    """A physically valid-looking input lands outside the model's domain."""

    exit_code = 3


class EvanescentMode(PhysicsError):
    """The operating frequency is at or below the TE10 cutoff."""

    def __init__(self, frequency: float, cutoff: float):
        self.frequency = frequency
        self.cutoff = cutoff
        super().__init__(
            f"frequency {frequency / 1e9:.4g} GHz is below cutoff "
            f"{cutoff / 1e9:.4g} GHz; raise the frequency or widen the waveguide"
        )


class NonphysicalAttenuation(PhysicsError):
    """The selected attenuation model produced a negative coefficient."""


class UndefinedSnr(PhysicsError):
    """Signal and noise are both zero, so their ratio has no value."""


class EtaOutOfRange(PhysicsError):
    """The antenna coupling exceeds one, outside the weak-coupling model."""


class StabilityViolation(PhysicsError):
    """The stochastic integrator step is too coarse for the decay rate."""


class Infeasible(QlinkError):
    """No design satisfies the requested constraints."""

    exit_code = 4


class VerificationFailure(QlinkError):
    """A statistical check of the Monte Carlo oracle did not pass."""

    exit_code = 5


class StrongCouplingWarning(UserWarning):
    """Coupling is large enough that back-action on the mode may matter."""
