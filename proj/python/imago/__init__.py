"""Selection-function conditionals, imaged belief functions, and exact
lambda-imaging probability updates over finite Boolean algebras.

Events are plain integers: bit i set means atom i belongs to the event.
All probabilities cross the boundary as `fractions.Fraction`; pass rationals
in as strings like "1/4", integers, or Fractions.
"""

from imago._core import *  # noqa: F401,F403
from imago._core import (  # noqa: F401
    Algebra,
    DistributionFunction,
    ProbabilityDist,
    SelectionFunction,
    WorkedExample,
)

__version__ = "0.1.0"
