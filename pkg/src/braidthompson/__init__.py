"""Braided Thompson-like groups: braids, spraiges, braiges and their complexes.

Submodules:

* ``braid``: braid words, the word problem, Garside normal form, cabling.
* ``forest``: binary trees and forests as address sets.
* ``spraige``: the spraige groupoid, dangling classes and their order.
* ``braige``: flat braiges and truncated braige complexes.
* ``arcs``: arcs in the punctured disk and the projection of braiges.
* ``homology`` and ``matching``: simplicial homology and graph complexes.
* ``coset``: coset complexes of pure braid groups.
* ``suites`` and ``cli``: verification suites and the command line.
"""

from __future__ import annotations

__version__ = "0.1.0"
