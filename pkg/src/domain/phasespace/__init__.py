"""Continuous-variable phase-space domain: states, transforms and CHSH analyses."""
