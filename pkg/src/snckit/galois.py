"""Scalar extension of a configuration along its Frobenius action.

Over the degree-f extension the components and strata are the orbits
of the f-th power of Frobenius.  The quotient complex uses orbit
representatives as ids.  Vertex order is induced from the base order:
orbits are listed by their earliest member.  The collapse map from the
geometric complex carries a sign per simplex, the parity of the image
vertex sequence against the target's sorted order.

A configuration stops being simple normal crossing over F when an
orbit identifies two components of one stratum; that is detected here
and reported, never silently quotiented.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .complexes import ChainMap, DeltaComplex, Simplex
from .errors import ExtensionError
from .groups import FgAbelianGroup, GaloisModule, ModuleMap, image_subgroup
from .homology import HomologyResult, homology_group, induced_map
from .snc import FrobeniusAction, SncConfiguration, build_dual_complex, ensure_valid, resolved_facets

__all__ = [
    "Extension",
    "NormMapResult",
    "extension_complex",
    "connecting_map",
    "norm_map",
    "frobenius_chain_map",
    "frobenius_on_homology",
    "check_admissible",
    "sort_parity",
]

_TRIVIAL = FrobeniusAction(order=1)


def _action(cfg: SncConfiguration) -> FrobeniusAction:
    return cfg.frobenius if cfg.frobenius is not None else _TRIVIAL


def sort_parity(seq: Sequence[int]) -> int:
    """+1 or -1: the sign of the permutation sorting ``seq`` (entries
    distinct)."""
    inversions = sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def _orbits(ids: Sequence[str], step: Callable[[str], str]) -> list[tuple[str, ...]]:
    """Orbits of the permutation ``step`` scanning ``ids`` in order, so
    each orbit starts at its earliest member and orbits are listed by
    that member."""
    seen: set[str] = set()
    out: list[tuple[str, ...]] = []
    for x in ids:
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        y = step(x)
        while y != x:
            orbit.append(y)
            seen.add(y)
            y = step(y)
        out.append(tuple(orbit))
    return out


@dataclass(frozen=True)
class Extension:
    """The degree-f scalar extension: quotient complex, the collapse
    chain map from the geometric complex, and the orbits themselves
    (each tuple starts at the representative that names the orbit)."""

    f: int
    complex: DeltaComplex
    sigma: ChainMap
    component_orbits: tuple[tuple[str, ...], ...]
    stratum_orbits: tuple[tuple[str, ...], ...]

    def component_rep(self, cid: str) -> str:
        for orbit in self.component_orbits:
            if cid in orbit:
                return orbit[0]
        raise KeyError(cid)


def check_admissible(cfg: SncConfiguration, f: int) -> None:
    """Raise unless the degree-f quotient is again simple normal
    crossing (no stratum has two components in one orbit)."""
    ensure_valid(cfg)
    if f < 1:
        raise ValueError("extension degree must be positive")
    action = _action(cfg)
    step = lambda c: action.component_image(c, f)
    rep: dict[str, str] = {}
    for orbit in _orbits([c.id for c in cfg.components], step):
        for member in orbit:
            rep[member] = orbit[0]
    for s in cfg.strata:
        images = [rep[c] for c in s.on]
        if len(set(images)) != len(images):
            dup = next(r for r in images if images.count(r) > 1)
            pair = [c for c in s.on if rep[c] == dup]
            raise ExtensionError(
                f"not SNC after extension: stratum {s.id!r} keeps components "
                f"{pair[0]!r} and {pair[1]!r}, which fall into one Frobenius orbit "
                f"over the degree-{f} extension"
            )


def extension_complex(cfg: SncConfiguration, f: int) -> Extension:
    """Quotient complex over the degree-f extension plus the collapse
    map from the geometric complex.  Raises ExtensionError when the
    quotient would not be simple normal crossing."""
    check_admissible(cfg, f)
    action = _action(cfg)
    comp_step = lambda c: action.component_image(c, f)
    strat_step = lambda s: action.stratum_image(s, f)

    comp_orbits = _orbits([c.id for c in cfg.components], comp_step)
    rep: dict[str, str] = {}
    for orbit in comp_orbits:
        for member in orbit:
            rep[member] = orbit[0]
    quotient_pos = {orbit[0]: i for i, orbit in enumerate(comp_orbits)}

    base_facets = resolved_facets(cfg)
    base_order = {c.id: i for i, c in enumerate(cfg.components)}

    strat_orbits: list[tuple[str, ...]] = []
    for r in cfg.depths():
        strat_orbits.extend(
            _orbits([s.id for s in cfg.strata_of_depth(r)], strat_step)
        )
    for orbit in strat_orbits:
        for member in orbit:
            rep[member] = orbit[0]

    simplices = [Simplex.vertex(orbit[0]) for orbit in comp_orbits]
    assignment: dict[str, tuple[str, int]] = {
        c.id: (rep[c.id], 1) for c in cfg.components
    }
    for orbit in strat_orbits:
        s = cfg.stratum(orbit[0])
        base_sorted = tuple(sorted(s.on, key=base_order.__getitem__))
        image_seq = [quotient_pos[rep[v]] for v in base_sorted]
        perm = sorted(range(len(image_seq)), key=image_seq.__getitem__)
        verts = tuple(orbit_vertex for _, orbit_vertex in
                      sorted(zip(image_seq, (rep[v] for v in base_sorted))))
        facets = tuple(rep[base_facets[s.id][perm[j]]] for j in range(len(perm)))
        simplices.append(Simplex(s.id, verts, facets))
    quotient = DeltaComplex(simplices)

    for orbit in strat_orbits:
        for member in orbit:
            s = cfg.stratum(member)
            base_sorted = tuple(sorted(s.on, key=base_order.__getitem__))
            sign = sort_parity([quotient_pos[rep[v]] for v in base_sorted])
            assignment[member] = (orbit[0], sign)

    base_complex = build_dual_complex(cfg)
    sigma = ChainMap(base_complex, quotient, assignment)
    return Extension(f, quotient, sigma, tuple(comp_orbits), tuple(strat_orbits))


def connecting_map(cfg: SncConfiguration, f_fine: int, f_coarse: int,
                   fine: Extension | None = None,
                   coarse: Extension | None = None) -> ChainMap:
    """The collapse map between extension levels, from the finer
    (larger-degree) quotient down to the coarser; requires
    f_coarse | f_fine.  Precomputed extensions may be passed in."""
    if f_fine % f_coarse != 0:
        raise ValueError(f"{f_coarse} does not divide {f_fine}")
    if fine is None:
        fine = extension_complex(cfg, f_fine)
    if coarse is None:
        coarse = extension_complex(cfg, f_coarse)
    rep: dict[str, str] = {}
    for orbit in coarse.component_orbits + coarse.stratum_orbits:
        for member in orbit:
            rep[member] = orbit[0]
    coarse_pos = {orbit[0]: i for i, orbit in enumerate(coarse.component_orbits)}

    assignment: dict[str, tuple[str, int]] = {}
    for s in fine.complex.all_simplices():
        if s.dim == 0:
            assignment[s.id] = (rep[s.id], 1)
        else:
            sign = sort_parity([coarse_pos[rep[v]] for v in s.vertices])
            assignment[s.id] = (rep[s.id], sign)
    return ChainMap(fine.complex, coarse.complex, assignment)


@dataclass(frozen=True)
class NormMapResult:
    """The induced map on degree-a homology from the degree-f level
    down to the base level, with its image presented as a subgroup of
    the target."""

    f: int
    degree: int
    modulus: int | None
    map: ModuleMap
    image_group: FgAbelianGroup
    image_inclusion: ModuleMap
    source_homology: HomologyResult
    target_homology: HomologyResult


def norm_map(cfg: SncConfiguration, f: int, a: int,
             modulus: int | None = None) -> NormMapResult:
    fine = extension_complex(cfg, f)
    coarse = extension_complex(cfg, 1)
    chain = connecting_map(cfg, f, 1, fine=fine, coarse=coarse)
    source = homology_group(fine.complex, a, modulus)
    target = homology_group(coarse.complex, a, modulus)
    m = induced_map(chain, a, modulus, source=source, target=target)
    image, inclusion = image_subgroup(m)
    return NormMapResult(f, a, modulus, m, image, inclusion, source, target)


def frobenius_chain_map(cfg: SncConfiguration) -> ChainMap:
    """The automorphism of the geometric complex induced by one
    application of Frobenius."""
    ensure_valid(cfg)
    action = _action(cfg)
    cx = build_dual_complex(cfg)
    pos = cx.vertex_position
    assignment: dict[str, tuple[str, int]] = {}
    for s in cx.all_simplices():
        if s.dim == 0:
            assignment[s.id] = (action.component_image(s.id), 1)
        else:
            image = action.stratum_image(s.id)
            sign = sort_parity([pos(action.component_image(v)) for v in s.vertices])
            assignment[s.id] = (image, sign)
    return ChainMap(cx, cx, assignment)


def frobenius_on_homology(cfg: SncConfiguration, a: int,
                          modulus: int | None = None) -> GaloisModule:
    """Degree-a homology of the geometric complex as a module over the
    Frobenius."""
    chain = frobenius_chain_map(cfg)
    h = homology_group(chain.source, a, modulus)
    m = induced_map(chain, a, modulus, source=h, target=h)
    order = _action(cfg).order
    return GaloisModule(h.group, m.matrix, order)
