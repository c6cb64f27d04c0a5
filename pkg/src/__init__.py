"""phasespace-lab - Wigner functions, Weyl symbols and CHSH analyses for continuous variables."""

__version__ = "0.1.0"
