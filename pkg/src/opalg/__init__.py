"""Numerical laboratory for two commutative radical operator algebras, each
generated by one operator: the weighted-shift algebra and the Volterra
convolution algebra, realized as finite-dimensional truncations with
verifiable norm and ideal structure."""

from . import gauge, numkit, report, shift, volterra

__all__ = ["numkit", "gauge", "shift", "volterra", "report"]
__version__ = "0.1.0"
