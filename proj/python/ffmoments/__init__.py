"""Moments and ratios of quadratic Dirichlet L-functions over F_q[x]."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
