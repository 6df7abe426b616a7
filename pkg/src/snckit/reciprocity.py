"""Kernel predictions for the degree-zero reciprocity map of a simple
normal crossing surface built from a doubled configuration.

The inputs are combinatorial: the configuration of the divisor D with
its Frobenius action, fundamental-group data (a module y0 for the
ambient piece, one module-with-map per component of D), and a label in
y0 on every edge of the dual complex.  From these the pipeline forms

* theta: the cokernel of the component maps into y0, localized at a
  prime ell (prime-to-ell torsion discarded, free part kept);
* alpha: the map sending a 1-cycle of the dual complex to the class of
  the signed sum of its edge labels in theta;
* a verdict per prime: when every relevant stratum sees a rational
  point and Frobenius fixes the torsion of theta, the kernel of the
  reciprocity map is exactly the image of alpha ("exact"); otherwise
  only the subquotient bound by the torsion of theta is asserted
  ("bound").

Sweeping the extension degree f re-evaluates the arithmetic inputs
(orbits, rational points, the f-th Frobenius power) while alpha itself
is geometric and stays fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .complexes import DeltaComplex
from .errors import LabelError, ValidationError
from .galois import Extension, extension_complex, frobenius_chain_map
from .groups import (
    FgAbelianGroup,
    GaloisModule,
    ModuleMap,
    coinvariants,
    image_subgroup,
    is_prime,
)
from .homology import HomologyResult, homology_group, induced_map
from .matrices import IntMatrix
from .snc import SncConfiguration, build_dual_complex, has_rational_point

__all__ = [
    "ComponentPi1",
    "Pi1Input",
    "validate_pi1",
    "EdgeLabelCochain",
    "validate_labels",
    "compute_theta",
    "AlphaResult",
    "alpha_map",
    "rational_point_flags",
    "PrimeReport",
    "KernelReport",
    "predict_kernel",
    "SweepResult",
    "sweep_extensions",
]


@dataclass(frozen=True)
class ComponentPi1:
    """Fundamental-group data of one component: its module and the map
    into y0."""

    module: GaloisModule
    map_to_y0: ModuleMap


@dataclass(frozen=True)
class Pi1Input:
    """y0 plus the per-component maps.  Components without an entry
    contribute nothing (trivial group, zero map)."""

    y0: GaloisModule
    component_maps: Mapping[str, ComponentPi1] = field(default_factory=dict)


def validate_pi1(cfg: SncConfiguration, pi1: Pi1Input) -> list[str]:
    problems: list[str] = []
    known = {c.id for c in cfg.components}
    for cid, cp in pi1.component_maps.items():
        if cid not in known:
            problems.append(f"component map for unknown component {cid!r}")
            continue
        m = cp.map_to_y0
        if m.source is not cp.module.group and m.source != cp.module.group:
            problems.append(f"component {cid!r}: map source is not its module")
            continue
        if m.target is not pi1.y0.group and m.target != pi1.y0.group:
            problems.append(f"component {cid!r}: map target is not y0")
            continue
        diff = pi1.y0.frobenius @ m.matrix - m.matrix @ cp.module.frobenius
        for j in range(diff.cols):
            if not pi1.y0.group.in_relation_lattice(diff.col(j)):
                problems.append(
                    f"component {cid!r}: map into y0 is not Frobenius-equivariant"
                )
                break
    return problems


#: edge id -> element of y0 in generator coordinates
EdgeLabelCochain = Mapping[str, Sequence[int]]


def _combined_relations(pi1: Pi1Input) -> IntMatrix:
    rel = pi1.y0.group.relations
    for cid in sorted(pi1.component_maps):
        rel = rel.hstack(pi1.component_maps[cid].map_to_y0.matrix)
    return rel


def _full_labels(cx: DeltaComplex, pi1: Pi1Input,
                 labels: EdgeLabelCochain) -> tuple[dict[str, tuple[int, ...]], list[str]]:
    """Normalize to a total assignment (missing edges are zero) and
    collect structural problems."""
    problems: list[str] = []
    gc = pi1.y0.group.generator_count
    edges = {s.id for s in cx.simplices(1)}
    out = {eid: (0,) * gc for eid in edges}
    for eid, vec in labels.items():
        if eid not in edges:
            problems.append(f"label on unknown edge id {eid!r}")
            continue
        if len(vec) != gc:
            problems.append(
                f"label vector of wrong length on edge {eid!r}: "
                f"got {len(vec)}, y0 has {gc} generators"
            )
            continue
        out[eid] = tuple(int(x) for x in vec)
    return out, problems


def validate_labels(cfg: SncConfiguration, pi1: Pi1Input,
                    labels: EdgeLabelCochain) -> list[str]:
    """Equivariance and descent checks; empty list when the labels
    define a map on homology."""
    cx = build_dual_complex(cfg)
    full, problems = _full_labels(cx, pi1, labels)
    if problems:
        return problems

    frob = frobenius_chain_map(cfg)
    y0 = pi1.y0
    for e in cx.simplices(1):
        image_id, sign = frob.assignment[e.id]
        lhs = [sign * x for x in full[image_id]]
        rhs = y0.frobenius.apply(full[e.id])
        diff = [a - b for a, b in zip(lhs, rhs)]
        if not y0.group.in_relation_lattice(diff):
            problems.append(f"label on edge {e.id!r} is not Frobenius-equivariant")
    if problems:
        return problems

    vanishing = FgAbelianGroup(y0.group.generator_count, _combined_relations(pi1))
    for t in cx.simplices(2):
        total = [0] * y0.group.generator_count
        for i, fid in enumerate(t.facets):
            s = -1 if i % 2 else 1
            for k, x in enumerate(full[fid]):
                total[k] += s * x
        if not vanishing.in_relation_lattice(total):
            problems.append(
                f"labels do not descend to H₁: boundary of 2-simplex {t.id!r} "
                f"pairs to a nonzero class"
            )
    return problems


def compute_theta(pi1: Pi1Input, ell: int) -> GaloisModule:
    """theta at ell: y0 modulo the images of the component maps, then
    prime-to-ell torsion discarded.  Presented on the generators of
    y0."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    quotient = FgAbelianGroup(pi1.y0.group.generator_count, _combined_relations(pi1))
    module = GaloisModule(quotient, pi1.y0.frobenius, pi1.y0.order)
    localized, _ = module.localized(ell)
    return localized


@dataclass(frozen=True)
class AlphaResult:
    """The map alpha from degree-1 homology of the geometric complex
    into theta, with its image."""

    ell: int
    map: ModuleMap
    image_group: FgAbelianGroup
    image_inclusion: ModuleMap
    torsion_contained: bool
    h1: HomologyResult
    theta: GaloisModule
    warnings: tuple[str, ...]

    def is_surjective(self) -> bool:
        return self.map.is_surjective()


def alpha_map(cfg: SncConfiguration, pi1: Pi1Input, labels: EdgeLabelCochain,
              ell: int, theta: GaloisModule | None = None) -> AlphaResult:
    """Evaluate the labels on homology generators.  Raises LabelError
    when the labels are not equivariant or do not descend."""
    pi1_problems = validate_pi1(cfg, pi1)
    if pi1_problems:
        raise ValidationError(pi1_problems)
    label_problems = validate_labels(cfg, pi1, labels)
    if label_problems:
        raise LabelError("; ".join(label_problems))
    if theta is None:
        theta = compute_theta(pi1, ell)

    cx = build_dual_complex(cfg)
    full, _ = _full_labels(cx, pi1, labels)
    h1 = homology_group(cx, 1)
    edges = cx.simplices(1)
    gc = pi1.y0.group.generator_count
    cols = []
    for j in range(h1.group.generator_count):
        cycle = h1.representative(j)
        total = [0] * gc
        for e_idx, e in enumerate(edges):
            c = cycle[e_idx]
            if c:
                for k, x in enumerate(full[e.id]):
                    total[k] += c * x
        cols.append(total)
    matrix = IntMatrix.from_columns(cols, rows=gc)
    amap = ModuleMap(h1.group, theta.group, matrix)
    image, inclusion = image_subgroup(amap)

    warnings: list[str] = []
    contained = all(
        theta.group.element_order(matrix.col(j)) is not None
        for j in range(matrix.cols)
    )
    if not contained:
        warnings.append(
            f"image of alpha at ell={ell} is not contained in the torsion of theta "
            f"(expected only for non-geometric inputs)"
        )
    return AlphaResult(ell, amap, image, inclusion, contained, h1, theta,
                       tuple(warnings))


def rational_point_flags(cfg: SncConfiguration, f: int,
                         ext: Extension | None = None) -> dict[str, bool]:
    """Rational-point availability over the degree-f extension for
    each connected piece of the double locus of the doubled surface:
    two horizontal copies per component of D and one vertical ruled
    piece per depth-2 stratum.  Orbits pool their point degrees."""
    if ext is None:
        ext = extension_complex(cfg, f)
    flags: dict[str, bool] = {}
    for orbit in ext.component_orbits:
        degs: list[int] = []
        for cid in orbit:
            degs.extend(cfg.component(cid).point_degrees)
        ok = has_rational_point(degs, f)
        flags[f"{orbit[0]} x O"] = ok
        flags[f"{orbit[0]} x inf"] = ok
    for orbit in ext.stratum_orbits:
        rep = cfg.stratum(orbit[0])
        if rep.depth != 2:
            continue
        degs = []
        for sid in orbit:
            degs.extend(cfg.stratum(sid).point_degrees)
        flags[f"{orbit[0]} x P1"] = has_rational_point(degs, f)
    return flags


@dataclass(frozen=True)
class PrimeReport:
    """Everything the main statement says at one prime."""

    ell: int
    theta: GaloisModule
    theta_torsion: FgAbelianGroup
    frobenius_trivial_on_torsion: bool
    alpha: AlphaResult
    verdict: str  # "exact" or "bound"
    predicted_kernel: FgAbelianGroup | None
    kernel_bound: FgAbelianGroup
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class KernelReport:
    """One extension level: the arithmetic context plus one PrimeReport
    per requested prime."""

    f: int
    rational_point_flags: dict[str, bool]
    assumption_rational_points: bool
    h1_quotient: HomologyResult
    primes: dict[int, PrimeReport]


def predict_kernel(cfg: SncConfiguration, pi1: Pi1Input, labels: EdgeLabelCochain,
                   ells: Sequence[int], f: int = 1) -> KernelReport:
    """The kernel prediction over the degree-f extension, at each
    requested prime."""
    ext = extension_complex(cfg, f)
    flags = rational_point_flags(cfg, f, ext=ext)
    assumption_i = all(flags.values())
    h1_quotient = homology_group(ext.complex, 1)

    primes: dict[int, PrimeReport] = {}
    for ell in ells:
        theta = compute_theta(pi1, ell)
        alpha = alpha_map(cfg, pi1, labels, ell, theta=theta)
        torsion_module, torsion_incl = theta.torsion_submodule()
        assumption_ii = torsion_module.power(f).acts_trivially()

        warnings = list(alpha.warnings)
        coinv, proj = coinvariants(theta.power(f))
        composite = proj.compose(torsion_incl)
        if not composite.is_injective():
            warnings.append(
                f"ell={ell}, f={f}: torsion of theta does not inject into the "
                f"coinvariants (expected only for non-geometric inputs)"
            )

        exact = assumption_i and assumption_ii
        primes[ell] = PrimeReport(
            ell=ell,
            theta=theta,
            theta_torsion=torsion_module.group,
            frobenius_trivial_on_torsion=assumption_ii,
            alpha=alpha,
            verdict="exact" if exact else "bound",
            predicted_kernel=alpha.image_group if exact else None,
            kernel_bound=torsion_module.group,
            warnings=tuple(warnings),
        )
    return KernelReport(f, flags, assumption_i, h1_quotient, primes)


@dataclass(frozen=True)
class SweepResult:
    reports: tuple[KernelReport, ...]
    trends: dict[int, str]


def _trend(types: list) -> str:
    if all(t == types[0] for t in types):
        return "stable"
    if types[-1].is_trivial:
        return "eventually trivial"
    orders = [t.order() for t in types]
    if all(o is not None for o in orders) and all(
        a >= b for a, b in zip(orders, orders[1:])
    ):
        return "shrinking"
    return "varies"


def sweep_extensions(cfg: SncConfiguration, pi1: Pi1Input, labels: EdgeLabelCochain,
                     ells: Sequence[int], f_max: int) -> SweepResult:
    """Kernel predictions for f = 1..f_max with a per-prime trend
    summary over the predicted kernels (the bound, where no exact
    prediction is available)."""
    if f_max < 1:
        raise ValueError("f_max must be positive")
    reports = tuple(
        predict_kernel(cfg, pi1, labels, ells, f) for f in range(1, f_max + 1)
    )
    trends: dict[int, str] = {}
    for ell in ells:
        types = []
        for rep in reports:
            pr = rep.primes[ell]
            group = pr.predicted_kernel if pr.predicted_kernel is not None else pr.kernel_bound
            types.append(group.iso_type())
        trends[ell] = _trend(types)
    return SweepResult(reports, trends)
