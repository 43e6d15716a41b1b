"""Orthogonal polynomial systems from moment functionals (float backend).

The compiled extension provides:
  - System: monic orthogonal polynomial system for a moment functional
  - Uvarov: point-mass modification with invertibility certificates
  - Christoffel: degree-2 multiplier modification with connection data
  - mass_limit_table / interior_table: kernel asymptotics on the ball
"""

from _momentops import (  # noqa: F401
    Christoffel,
    InadmissibleParametersError,
    NotQuasiDefiniteError,
    SingularGramError,
    SingularMomentMatrixError,
    System,
    Uvarov,
    interior_table,
    mass_limit_table,
)

__all__ = [
    "System",
    "Uvarov",
    "Christoffel",
    "mass_limit_table",
    "interior_table",
    "NotQuasiDefiniteError",
    "SingularGramError",
    "SingularMomentMatrixError",
    "InadmissibleParametersError",
]
