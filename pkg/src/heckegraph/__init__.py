"""Exact double-coset engine with certified norm bounds.

Build a pair from the catalog, wrap it in an algebra, then compute:

    >>> from heckegraph import catalog
    >>> from heckegraph.core import HeckePair
    >>> from heckegraph.algebra import HeckeAlgebra
    >>> from heckegraph import graph, certify
    >>> oracle, entry = catalog.build("quasicyclic-dihedral", p=2)
    >>> algebra = HeckeAlgebra(HeckePair(oracle))
    >>> report = graph.closure(algebra, algebra.pair.double_coset(entry.seed_coset))
    >>> len(report.vertices), report.complete
    (4, True)
    >>> cert = certify.l1_certificate(algebra, report)
    >>> sorted(int(b) for b in cert.bounds.values())
    [1, 1, 2, 2]
"""

from .core import (BudgetExhausted, DoubleCoset, GroupOracle, HeckeError,
                   HeckePair, verify_oracle)
from .gaussian import GaussianRational
from .algebra import HeckeAlgebra, HeckeElement

__all__ = [
    "BudgetExhausted",
    "DoubleCoset",
    "GaussianRational",
    "GroupOracle",
    "HeckeAlgebra",
    "HeckeElement",
    "HeckeError",
    "HeckePair",
    "verify_oracle",
]

__version__ = "0.1.0"
