"""Compression-wave collapse and generalized fan subsolutions for the 2D
isentropic Euler system with p(rho) = rho**2.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
