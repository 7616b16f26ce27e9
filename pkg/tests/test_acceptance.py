"""Acceptance gate: every headline claim at its stated tolerance.

Runs the shared reproduction suite once (full mode: 20 infinity-pod seeds,
20 pentapods, 100 involution subspaces per form, 1000 sphere oracles, the
rational real demo) and asserts each claim, printing one line per criterion.
"""

import pytest

from podforge.acceptance import run_all

CRITERIA = [
    "1 isometry model dim/deg",
    "2 symmetric leg cone dim/deg",
    "3 planar projections dim/deg",
    "4 infinity-pod certification",
    "5 base anchor curve",
    "6 real demo over Q/float",
    "7 sixth-leg extension",
    "8 cubic construction + symmetroid",
    "9 duality properties",
    "10 planar symmetric cubic cross-check",
]


@pytest.fixture(scope="module")
def results():
    rows = run_all(fast=False)
    print()
    for r in rows:
        status = "PASS" if r.ok else "FAIL"
        print(f"[{status}] {r.name}: {r.detail} ({r.seconds:.1f}s)")
    return {r.name: r for r in rows}


@pytest.mark.parametrize("name", CRITERIA)
def test_acceptance_criterion(results, name):
    row = results[name]
    assert row.ok, f"{name}: {row.detail}"
