"""Exact-arithmetic engine for a categorical cycle calculus.

The layers, bottom up:

* :mod:`cyclecalc.linalg` — dense rational linear algebra, polynomials,
  Pfaffians, partition combinatorics.
* :mod:`cyclecalc.diagrams` — the free rigid symmetric tensor category on
  dualisable generators, presented by oriented matching diagrams.
* :mod:`cyclecalc.karoubi` — idempotent completion, symmetric/alternating
  powers, the trace radical, Schur-Weyl quotients, the graded bialgebra of
  symmetric powers, and block-matrix eigen-splitting.
* :mod:`cyclecalc.exterior` — the symplectic exterior-algebra realization
  and invariant theory backing the concrete models.
* :mod:`cyclecalc.chow` — cycle theories on powers of an abelian variety:
  a numerical instance and a square-zero deformation, with pullback,
  pushforward, products and correspondences.
* :mod:`cyclecalc.symdist` — symmetrically distinguished classes, canonical
  lifts and uniqueness probes.
* :mod:`cyclecalc.cli` — the command-line front end.

All scalars are :class:`fractions.Fraction`; there are no floats anywhere.
"""

from .linalg import Matrix, pfaffian, schur_weyl_dim
from .diagrams import Diagram, FreeCategory, Morphism, parse_word, word
from .karoubi import (FormalObject, SymHopf, alt_power, hopf_axiom_check,
                      plain_object, quotient_hom, radical_subspace, sym_power)
from .exterior import ExteriorVector, HomMatrix, Realization, sp_invariants
from .chow import ChowInstance, CycleClass, axiom_suite, load_instance
from .symdist import (canonical_lift, is_symmetrically_distinguished,
                      uniqueness_probe, vm_span)

__all__ = [
    "Matrix", "pfaffian", "schur_weyl_dim",
    "Diagram", "FreeCategory", "Morphism", "parse_word", "word",
    "FormalObject", "SymHopf", "alt_power", "hopf_axiom_check",
    "plain_object", "quotient_hom", "radical_subspace", "sym_power",
    "ExteriorVector", "HomMatrix", "Realization", "sp_invariants",
    "ChowInstance", "CycleClass", "axiom_suite", "load_instance",
    "canonical_lift", "is_symmetrically_distinguished", "uniqueness_probe",
    "vm_span",
]

__version__ = "0.1.0"
