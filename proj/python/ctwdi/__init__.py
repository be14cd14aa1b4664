"""Directed information rate estimation for finite-alphabet time series.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its surface and adds small conveniences.
"""

from ctwdi._core import *  # noqa: F401,F403
from ctwdi._core import CausalPair, SymbolSequence, __version__  # noqa: F401


def make_pair(x, y, x_alphabet_size=None, y_alphabet_size=None):
    """Build a CausalPair from two symbol lists (cause first)."""
    mx = x_alphabet_size or max(2, max(x) + 1)
    my = y_alphabet_size or max(2, max(y) + 1)
    return CausalPair(SymbolSequence(mx, list(x)), SymbolSequence(my, list(y)))
