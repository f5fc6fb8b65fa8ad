"""Sharp anisotropic Trudinger-Moser constants, Green functions and concentration sequences."""

from ._anisotm import *  # noqa: F401,F403
from ._anisotm import __doc__  # noqa: F401

__version__ = "0.1.0"
