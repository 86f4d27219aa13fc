"""posetalg: exact computation with systems of multigraded algebras on
finite posets.

The building blocks are finite posets (`posets`), simplicial complexes with
exact cohomology (`simplicial`), monomial ideals and their decomposition
posets (`monomials`), and the degreewise engine for algebra systems on
posets (`sheaves`): limits over open sets, flasqueness, presentations,
initial degenerations, local cohomology and rank selection.  `hibi` and
`toric` build the two structured families; `cli` is the command line
front end.
"""

from . import exactlin, gradings, posets, simplicial

__all__ = ["exactlin", "gradings", "posets", "simplicial"]
__version__ = "0.1.0"
