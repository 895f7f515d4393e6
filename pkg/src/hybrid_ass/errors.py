"""Exception types raised by the simulator."""

import numpy as np


class DegenerateChannelError(np.linalg.LinAlgError):
    """Channel matrix is (numerically) rank deficient; redraw it."""


class SingularSystemError(np.linalg.LinAlgError):
    """Non-positive pivot while factorizing a Hermitian system."""


class SearchTooLargeError(ValueError):
    """Exhaustive search requested beyond the tractability cap."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""
