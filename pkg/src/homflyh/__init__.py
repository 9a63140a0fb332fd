"""Exact triply graded link homology of braid closures, with the skew-algebra
models of the associated trace categories and the grading calculus that moves
between the two sides.

Subpackage map:

- ``multigrade``: multi-degree lattices, dimension tables, shifts/shears/regrades.
- ``polyalg``: exact sparse polynomial matrices, graded free complexes, slice
  linear algebra.
- ``soergel``: Bott-Samelson bimodules in the free-module-with-right-operators
  model.
- ``rouquier``: crossing complexes, braid tensor pipeline, simplification.
- ``hochschild``: Koszul-model Hochschild homology, table assembly, renders.
- ``tracealg``: skew group algebra modules, Koszul duality functors, gamma_a.
- ``supports``: closure-stratum ideals and nilpotence certification.
- ``cli``: command line front end.
"""

from __future__ import annotations

SCHEMA_VERSION = "1"

__version__ = "0.1.0"
