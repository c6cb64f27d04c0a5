"""Generic numerical substrate shared by the phase-space domain."""
