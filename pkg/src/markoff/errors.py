"""Exception types shared across the package.

The CLI maps these onto its documented exit codes; library callers can catch
them individually.
"""


class DomainError(ValueError):
    """Bad input: composite modulus, point off the surface, malformed literal."""


class ConstructionError(RuntimeError):
    """A constructive step failed (no seed, no bridge, dead orbit scan,
    spectral iteration did not converge) and no fallback was available."""


class CapExceeded(RuntimeError):
    """A resource cap (enumeration size, spectral size, digit budget) says no."""


class DisconnectedGraph(RuntimeError):
    """The mod-p graph was found to be disconnected."""
