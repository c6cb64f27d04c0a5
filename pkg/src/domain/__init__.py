"""Phase-space domain.

Entities, schemas and services of the continuous-variable toolkit. Depends on
core/ and configs/ but is independent of apps/.
"""

__all__ = []
