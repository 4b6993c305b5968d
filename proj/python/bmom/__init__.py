"""Moment-based Bayesian inference for mean and regression models.

The heavy lifting lives in the compiled extension; this package re-exports
its public names.
"""

from ._bmom import *  # noqa: F401,F403
from ._bmom import __version__  # noqa: F401
