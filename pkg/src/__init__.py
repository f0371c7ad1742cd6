"""
energycov: steady-state energy covariance of dissipative stochastic systems
"""

__version__ = "1.0.0"
