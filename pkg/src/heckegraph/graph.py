"""Directed successor graph on the double-coset basis.

A vertex b is a successor of a when b carries a nonzero coefficient in
star(a) * a.  The closure of a vertex under taking successors is computed by
a budgeted breadth-first search whose layer index reproduces the iterated
successor-set stratification; exhausting the vertex budget is a first-class
result, not an error.
"""

from __future__ import annotations

import json
from enum import Enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import HeckeAlgebra
from .core import BudgetExhausted, DoubleCoset, HeckeError


class ClosureStatus(Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


class NotComplete(HeckeError):
    """Raised by consumers that require a complete closure."""


DEFAULT_CLOSURE_BUDGET = 256


def successors(algebra: HeckeAlgebra, coset: DoubleCoset) -> tuple[DoubleCoset, ...]:
    """Successor vertices of a double coset, in canonical key order.

    These are exactly the support of star(chi) * chi for the characteristic
    function chi of the coset.
    """
    chi = algebra.basis(coset)
    return (chi.star() * chi).support()


def level_set(algebra: HeckeAlgebra, root: DoubleCoset, n: int,
              budget: int = DEFAULT_CLOSURE_BUDGET) -> frozenset[DoubleCoset]:
    """The exact n-th successor set of {root} (level 0 is {root} itself)."""
    if n < 0:
        raise ValueError("level must be >= 0")
    current = frozenset([root])
    for _ in range(n):
        step: set[DoubleCoset] = set()
        for vertex in current:
            step.update(successors(algebra, vertex))
            if len(step) > budget:
                raise BudgetExhausted(budget, sorted(v.key for v in step)[:budget],
                                      "expanding a successor level")
        current = frozenset(step)
    return current


@dataclass
class ClosureReport:
    """Closure of one double coset under taking successors.

    ``levels`` maps each vertex key to the smallest n with the vertex in the
    n-th successor set of the root; ``parents`` records the breadth-first
    tree (root maps to None).  ``order`` lists keys in discovery order.  When
    the status is BUDGET_EXHAUSTED the data is the partial closure found
    before the vertex budget would have been exceeded.
    """

    root: DoubleCoset
    vertices: dict = field(default_factory=dict)   # key -> DoubleCoset
    edges: set = field(default_factory=set)        # (key, key) pairs
    levels: dict = field(default_factory=dict)     # key -> int
    parents: dict = field(default_factory=dict)    # key -> key | None
    order: list = field(default_factory=list)      # keys, discovery order
    status: ClosureStatus = ClosureStatus.COMPLETE
    budget: int = DEFAULT_CLOSURE_BUDGET

    @property
    def complete(self) -> bool:
        return self.status is ClosureStatus.COMPLETE

    def sorted_vertices(self) -> list[DoubleCoset]:
        return sorted(self.vertices.values(), key=lambda dc: (self.levels[dc.key], dc.sort_key))

    def tree_path(self, key) -> list[DoubleCoset]:
        """Breadth-first tree path from the root to the given vertex key."""
        if key not in self.vertices:
            raise KeyError(key)
        chain = []
        cursor: Optional[object] = key
        while cursor is not None:
            chain.append(self.vertices[cursor])
            cursor = self.parents[cursor]
        chain.reverse()
        return chain


def closure(algebra: HeckeAlgebra, root: DoubleCoset,
            budget: int = DEFAULT_CLOSURE_BUDGET) -> ClosureReport:
    """Breadth-first closure of {root} under successors, capped at ``budget`` vertices."""
    if budget < 1:
        raise ValueError("closure budget must be >= 1")
    report = ClosureReport(root=root, budget=budget)
    report.vertices[root.key] = root
    report.levels[root.key] = 0
    report.parents[root.key] = None
    report.order.append(root.key)
    frontier = [root]
    level = 0
    while frontier:
        level += 1
        nxt: list[DoubleCoset] = []
        for vertex in frontier:
            for succ in successors(algebra, vertex):
                if succ.key not in report.vertices:
                    if len(report.vertices) >= budget:
                        report.status = ClosureStatus.BUDGET_EXHAUSTED
                        return report
                    report.vertices[succ.key] = succ
                    report.levels[succ.key] = level
                    report.parents[succ.key] = vertex.key
                    report.order.append(succ.key)
                    nxt.append(succ)
                report.edges.add((vertex.key, succ.key))
        frontier = sorted(nxt, key=lambda dc: dc.sort_key)
    return report


def export_json(report: ClosureReport, algebra: HeckeAlgebra) -> str:
    """Deterministic JSON rendering of a closure report."""
    fmt = algebra.pair.oracle.format_element
    vertices = [
        {
            "key": fmt(dc.key),
            "rep": fmt(dc.rep),
            "L": dc.L,
            "R": dc.R,
            "delta": _frac(dc.delta),
            "level": report.levels[dc.key],
        }
        for dc in report.sorted_vertices()
    ]
    edges = sorted([fmt(a), fmt(b)] for a, b in report.edges)
    doc = {
        "root": fmt(report.root.key),
        "status": report.status.value,
        "budget": report.budget,
        "vertices": vertices,
        "edges": edges,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def export_dot(report: ClosureReport, algebra: HeckeAlgebra) -> str:
    fmt = algebra.pair.oracle.format_element
    lines = ["digraph closure {"]
    for dc in report.sorted_vertices():
        name = _dot_quote(fmt(dc.rep))
        lines.append(f'  {name} [label="{fmt(dc.rep)} (L={dc.L})"];')
    for a, b in sorted(report.edges, key=lambda e: (str(fmt(e[0])), str(fmt(e[1])))):
        lines.append(f"  {_dot_quote(fmt(a))} -> {_dot_quote(fmt(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _dot_quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'
