"""rackcover: exact invariants of braided rack spaces and their coverings.

From a finite rack with a root-of-unity 2-cocycle the toolkit computes,
all in exact cyclotomic arithmetic: braiding orbits and their census,
quadratic-relation counts, graded dimensions of the braided algebra,
enveloping-group presentations with verified finite quotients, covering
lattices of group surjections, and bosonized Hopf-algebra slices with
machine-checked axioms.
"""

__version__ = "0.1.0"
