"""Strict units of truncated polynomial rings and Steinberg summands.

Submodules:

- ``f2core``: dense GF(2) linear algebra.
- ``steenrod`` and ``dyer_lashof``: the Steenrod and Dyer-Lashof algebras.
- ``ghm``: the co-Koszul complexes, charts and homotopy tables.
- ``dl_classify``: classification of Dyer-Lashof structures on F2[u].
- ``padic``, ``burnside`` and ``reprings``: p-adic units, Burnside rings,
  character rings and the complexes built from Steinberg summands.
- ``cli``: the command-line front end.
"""

from __future__ import annotations

__version__ = "0.1.0"
