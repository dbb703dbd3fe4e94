"""Lorenz-96 generalization toolkit: advection-map algebra, spectral and
bifurcation analysis, integration, and experiment drivers."""

from l96x._core import *  # noqa: F401,F403
