from __future__ import annotations

from dataclasses import dataclass

import pytest

from heckegraph import catalog
from heckegraph.algebra import HeckeAlgebra
from heckegraph.catalog import CatalogEntry
from heckegraph.core import GroupOracle, HeckePair

PAIR_SPECS = (
    ("finite-perm", {}),
    ("group-algebra", {}),
    ("quasicyclic-dihedral", {"p": 2}),
    ("infinite-dihedral", {}),
    ("heisenberg", {}),
    ("sl2-localized", {"p": 2}),
    ("bc-axb", {}),
)

PAIR_NAMES = tuple(name for name, _ in PAIR_SPECS)

# pairs whose gamma is small and finite, so set-level brute force is possible
BRUTE_FORCE_NAMES = ("finite-perm", "group-algebra", "quasicyclic-dihedral",
                     "infinite-dihedral")

# pairs whose every double coset generates a finite closure
POSITIVE_NAMES = ("finite-perm", "group-algebra", "quasicyclic-dihedral",
                  "heisenberg", "bc-axb")

NEGATIVE_NAMES = ("infinite-dihedral", "sl2-localized")


@dataclass
class Bench:
    name: str
    oracle: GroupOracle
    entry: CatalogEntry
    pair: HeckePair
    algebra: HeckeAlgebra


@pytest.fixture(scope="session")
def workbench() -> dict[str, Bench]:
    """One shared engine per catalog pair so product caches persist."""
    out = {}
    for name, params in PAIR_SPECS:
        oracle, entry = catalog.build(name, **params)
        pair = entry.make_pair()
        out[name] = Bench(name=name, oracle=oracle, entry=entry, pair=pair,
                          algebra=HeckeAlgebra(pair))
    return out


def pair_fixture(pair_name, fixture_name):
    @pytest.fixture(scope="session", name=fixture_name)
    def fixture(workbench):
        return workbench[pair_name]

    return fixture


finite_perm = pair_fixture("finite-perm", "finite_perm")
group_algebra = pair_fixture("group-algebra", "group_algebra")
quasicyclic = pair_fixture("quasicyclic-dihedral", "quasicyclic")
infinite_dihedral = pair_fixture("infinite-dihedral", "infinite_dihedral")
heisenberg = pair_fixture("heisenberg", "heisenberg")
sl2 = pair_fixture("sl2-localized", "sl2")
bc_axb = pair_fixture("bc-axb", "bc_axb")
