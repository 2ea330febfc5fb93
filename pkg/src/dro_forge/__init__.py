"""Practicable divergences and dual robust counterparts for two-stage
stochastic programs, with an embedded desk-scale solver and independent
worst-case verification oracles."""

__version__ = "0.1.0"
