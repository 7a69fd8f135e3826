"""Exact symbolic engine for the braided geometry of the quantum hyperboloid.

Everything is computed over the exact field Q(q) (or over Q with q
specialized to a rational): the function algebra and its rewriting, the
U_q(sl(2)) action, the braided Lie bracket, the braided tangent modules
with their vector-field action and projectivity projectors, the braided
metric and partial connection, and the left/right identification. The
`verify` CLI command re-derives and mechanically checks every identity.
"""

from .qrat import Params, QField, QRatError, ParamsError, RatFunc, evaluate_at, q_integer
from .algebra import ENVELOPING, FUNCTION, AlgebraElement, basis_enumerate
from .uqsl2 import TensorElement, act_generator, casimir_apply, spin_decompose

__version__ = "1.0.0"

__all__ = [
    "Params", "QField", "QRatError", "ParamsError", "RatFunc",
    "evaluate_at", "q_integer",
    "ENVELOPING", "FUNCTION", "AlgebraElement", "basis_enumerate",
    "TensorElement", "act_generator", "casimir_apply", "spin_decompose",
    "__version__",
]
