"""Shared builders for the test suite: small standard configurations,
actions with known quotients, and random admissible actions."""

from __future__ import annotations

import random

from snckit.complexes import DeltaComplex
from snckit.groups import FgAbelianGroup, GaloisModule
from snckit.matrices import IntMatrix
from snckit.reciprocity import Pi1Input
from snckit.snc import Component, FrobeniusAction, SncConfiguration, Stratum


def cycle_config(n: int, name: str = "cycle",
                 frobenius: FrobeniusAction | None = None) -> SncConfiguration:
    """An n-cycle: components v0..v{n-1}, edge e{i} on (v{i}, v{i+1})."""
    comps = tuple(Component(f"v{i}") for i in range(n))
    strata = tuple(
        Stratum(f"e{i}", (f"v{i}", f"v{(i + 1) % n}")) for i in range(n)
    )
    return SncConfiguration(name, comps, strata, frobenius)


def cycle_complex(n: int) -> DeltaComplex:
    return DeltaComplex.graph(
        [f"v{i}" for i in range(n)],
        [(f"e{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)],
    )


def rotation_action(n: int, step: int, order: int) -> FrobeniusAction:
    """Rotate the n-cycle by ``step``; caller supplies the order."""
    return FrobeniusAction(
        order,
        {f"v{i}": f"v{(i + step) % n}" for i in range(n)},
        {f"e{i}": f"e{(i + step) % n}" for i in range(n)},
    )


def reflection_action(n: int) -> FrobeniusAction:
    """Reflect the n-cycle: v_i -> v_{-i}, so e_i on (v_i, v_{i+1})
    goes to the edge on (v_{-i-1}, v_{-i}), which is e_{-i-1}."""
    return FrobeniusAction(
        2,
        {f"v{i}": f"v{(-i) % n}" for i in range(n)},
        {f"e{i}": f"e{(-i - 1) % n}" for i in range(n)},
    )


def multigraph_config() -> SncConfiguration:
    """Two components crossing twice (two parallel edges)."""
    return SncConfiguration(
        "double-crossing",
        (Component("C1"), Component("C2")),
        (Stratum("P1", ("C1", "C2")), Stratum("P2", ("C1", "C2"))),
    )


def triangle_config(with_face: bool = True) -> SncConfiguration:
    """Three components crossing pairwise, optionally with the deep
    triple point filled in."""
    strata = [
        Stratum("AB", ("A", "B")),
        Stratum("AC", ("A", "C")),
        Stratum("BC", ("B", "C")),
    ]
    if with_face:
        strata.append(Stratum("T", ("A", "B", "C")))
    return SncConfiguration(
        "triangle",
        (Component("A"), Component("B"), Component("C")),
        tuple(strata),
    )


def swap_upgrade_fixture():
    """Two swapped components joined through a fixed one, with a y0 on
    which Frobenius acts by -1: the torsion assumption fails over the
    base field and holds over its quadratic extension."""
    cfg = SncConfiguration(
        "swap",
        (Component("A1"), Component("A2"), Component("B")),
        (Stratum("s1", ("A1", "B")), Stratum("s2", ("A2", "B"))),
        FrobeniusAction(
            2,
            {"A1": "A2", "A2": "A1", "B": "B"},
            {"s1": "s2", "s2": "s1"},
        ),
    )
    y0 = GaloisModule(FgAbelianGroup.cyclic(3), IntMatrix.from_rows([[2]]), 2)
    return cfg, Pi1Input(y0, {}), {}


def random_admissible_config(rng: random.Random, e: int,
                             shape: str | None = None) -> SncConfiguration:
    """A random configuration with an order-e action whose quotients
    stay simple normal crossing at every extension degree.

    Three shapes: e rotated disjoint cycles; one long cycle rotated a
    full block; the block-rotated cycle with two fixed components coned
    on (giving depth-3 strata and 2-dimensional complexes).
    """
    if shape is None:
        shape = rng.choice(["copies", "block", "coned"])
    if shape == "copies":
        m = rng.randint(3, 5)
        comps, strata, cp, sp = [], [], {}, {}
        for k in range(e):
            for i in range(m):
                comps.append(Component(f"c{k}_{i}", (rng.randint(1, 3),)))
                cp[f"c{k}_{i}"] = f"c{(k + 1) % e}_{i}"
            for i in range(m):
                strata.append(
                    Stratum(f"d{k}_{i}", (f"c{k}_{i}", f"c{k}_{(i + 1) % m}"))
                )
                sp[f"d{k}_{i}"] = f"d{(k + 1) % e}_{i}"
        return SncConfiguration(
            "copies", tuple(comps), tuple(strata), FrobeniusAction(e, cp, sp)
        )

    m = rng.randint(2, 4)
    n = m * e
    action = rotation_action(n, m, e)
    base = cycle_config(n, "block", action)
    if shape == "block":
        return base

    comps = list(base.components) + [Component("O"), Component("inf")]
    strata = list(base.strata)
    cp = dict(action.component_perm)
    sp = dict(action.stratum_perm)
    cp["O"] = "O"
    cp["inf"] = "inf"
    for apex in ("O", "inf"):
        for i in range(n):
            strata.append(Stratum(f"v{i}x{apex}", (f"v{i}", apex)))
            sp[f"v{i}x{apex}"] = f"v{(i + m) % n}x{apex}"
    for apex in ("O", "inf"):
        for i in range(n):
            j = (i + 1) % n
            strata.append(
                Stratum(
                    f"e{i}x{apex}",
                    (f"v{i}", f"v{j}", apex),
                    facets=(f"e{i}", f"v{i}x{apex}", f"v{j}x{apex}"),
                )
            )
            sp[f"e{i}x{apex}"] = f"e{(i + m) % n}x{apex}"
    return SncConfiguration(
        "coned", tuple(comps), tuple(strata), FrobeniusAction(e, cp, sp)
    )
