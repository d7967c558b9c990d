"""Numerical tools for the Nyman-Beurling criterion (C++ core)."""

import os as _os

_here = _os.path.dirname(__file__)
# an installed wheel carries its own copy of the zero table
if _os.path.isfile(_os.path.join(_here, "data", "zeros_10k.txt")):
    _os.environ.setdefault("NBBD_DATA_DIR", _os.path.join(_here, "data"))

from ._core import *  # noqa: E402,F401,F403
from ._core import __version__  # noqa: E402,F401
