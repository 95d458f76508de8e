from .aim import (AimProblem, AimTrace, RootReport, run_iterations, quantization_roots, root_stability,
                  collapsed_roots)
from .models import ModelParams, QuantumNumbers, self_consistent_spectrum, spectrum
from .polyfield import Poly, ParamPoly, RatFunc, EXACT, FLOAT

__version__ = '0.1.0'
