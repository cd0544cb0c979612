"""Quantum decision trees over 2x2 gate algebra, a simulated Schrödinger's-cat
measurement environment, and a genetic-programming optimizer.

Everything lives in the compiled core; this package just re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401
from ._core import __version__  # noqa: F401
