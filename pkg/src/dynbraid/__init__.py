"""Finite dynamical groups, braidings and the structures that produce them."""

from .core import *  # noqa: F401,F403
from .ybe import *  # noqa: F401,F403
from .matched import *  # noqa: F401,F403
from .rota import *  # noqa: F401,F403
from .postbrace import *  # noqa: F401,F403
from .groupoid import *  # noqa: F401,F403
from .document import *  # noqa: F401,F403
from .rational import RationalSampler, run_rational_suite  # noqa: F401
from . import fixtures, search  # noqa: F401

__version__ = "0.1.0"
