"""Exact construction of Z-graded Lie superalgebras from Cartan data.

The package builds the same family of graded superalgebras three ways --
from a contragredient presentation, from a generators-and-relations
presentation attached to a dominant integral weight, and by cartanification
of an explicitly given local Lie superalgebra -- and provides the machinery
to compare the results degree by degree with exact rational arithmetic.
"""

__version__ = "0.1.0"
