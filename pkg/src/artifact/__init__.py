"""Diagrammatic algebras, ladders and colored link invariants for gl_n.

Submodules
----------
qring              Laurent polynomials in q, quantum integers and binomials
stendhal_core      Stendhal diagrams, the algebras T~ and their cyclotomic quotients
tableaux_cellular  rectangular tableaux and the cellular basis of T^a
subset_algebra     the algebra A_c, its Koszul resolution and deformations
ladder_bimodules   ladder bimodules, bigon decompositions, K_0 classes
skewhowe           quantum exterior powers and the commuting gl_l x gl_n actions
complexes          graded complexes, homotopies, nilHecke and Rickard complexes
knots              framed colored tangles and their sl_n invariants
cli                command-line front end
"""

__version__ = "0.1.0"

from .qring import LaurentScalar, qbinom, qfact, qint

__all__ = ["LaurentScalar", "qbinom", "qfact", "qint", "__version__"]
