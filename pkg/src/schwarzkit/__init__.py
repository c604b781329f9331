"""Numerical verification of boundary Schwarz lemmas on the disc and the ball."""

__version__ = "0.1.0"

from .disc import MoebiusTransform, pseudohyperbolic_distance  # noqa: E402,F401
from .errors import SchwarzKitError  # noqa: E402,F401
from .kernels import BACKEND  # noqa: E402,F401
