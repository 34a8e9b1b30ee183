"""setlerkit - forced Setler dynamics, chaos diagnostics and entropy functionals."""

__version__ = "0.1.0"
