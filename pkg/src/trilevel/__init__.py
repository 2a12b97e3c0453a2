"""Three-level atoms (lambda, vee, cascade): SU(3) Bloch dynamics, qutrit states
and dressed-state solutions of the quantized atom-field model."""
from .configuration import MINUS, PLUS, ZERO, Configuration, Level
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "Configuration", "Level", "MINUS", "PLUS", "ZERO", "__version__"]
