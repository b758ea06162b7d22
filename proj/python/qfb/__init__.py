"""Two-qubit amplitude damping with optimal local feedback control."""

from qfb._core import *  # noqa: F401,F403
from qfb._core import __version__  # noqa: F401
