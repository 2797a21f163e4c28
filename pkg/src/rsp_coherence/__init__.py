"""Simulation and verification of remote state preparation through
coherence witnesses."""

__version__ = "0.1.0"
