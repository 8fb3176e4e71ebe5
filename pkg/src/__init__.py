"""
Phantom Purity

Purity dynamics of staircase and brick-wall random qudit circuits: Monte Carlo
simulation, exact transfer-matrix propagation and spectral analysis of the
reduced Toeplitz operator.
"""

__version__ = "0.1.0"
