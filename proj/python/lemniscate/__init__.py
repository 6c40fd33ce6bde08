"""Critical points and level-set topology of logarithmic potentials f(x) = sum log|x - w_k|^2."""

from ._lemniscate import *  # noqa: F401,F403
from ._lemniscate import __version__  # noqa: F401
