"""Finite Δ-complexes with ordered vertices, chain maps, and the
suspension construction.

A complex is a list of simplices per dimension.  Vertices are the
dimension-0 simplices; their listing order is the global vertex order
that every higher simplex must respect.  Simplices carry explicit
facet ids, so two simplices may share a vertex tuple (parallel edges
and worse are legal; they arise naturally from intersection data).

The boundary convention is positional: the facet omitting vertex
position i enters the boundary with sign (-1)^i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ValidationError
from .matrices import IntMatrix

__all__ = ["Simplex", "DeltaComplex", "ChainMap", "suspend"]


@dataclass(frozen=True)
class Simplex:
    """One cell: ``facets[i]`` is the id of the facet omitting
    ``vertices[i]``.  Dimension-0 simplices have ``vertices == (id,)``
    and no facets."""

    id: str
    vertices: tuple[str, ...]
    facets: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @staticmethod
    def vertex(vid: str) -> "Simplex":
        return Simplex(vid, (vid,))


class DeltaComplex:
    """An immutable Δ-complex; construction validates everything."""

    __slots__ = ("_by_dim", "_by_id", "_vertex_pos", "_index_in_dim")

    def __init__(self, simplices: Iterable[Simplex]):
        by_dim: list[list[Simplex]] = []
        by_id: dict[str, Simplex] = {}
        problems: list[str] = []
        for s in simplices:
            if s.id in by_id:
                problems.append(f"duplicate simplex id {s.id!r}")
                continue
            by_id[s.id] = s
            while len(by_dim) <= s.dim:
                by_dim.append([])
            by_dim[s.dim].append(s)
        if problems:
            raise ValidationError(problems)
        if not by_dim:
            raise ValidationError(["complex has no simplices"])

        vertex_pos = {s.id: i for i, s in enumerate(by_dim[0])}
        for s in by_dim[0]:
            if s.vertices != (s.id,):
                problems.append(f"vertex {s.id!r} must list itself as its only vertex")
            if s.facets != ():
                problems.append(f"vertex {s.id!r} must have no facets")

        for a in range(1, len(by_dim)):
            for s in by_dim[a]:
                if len(set(s.vertices)) != len(s.vertices):
                    problems.append(f"simplex {s.id!r} repeats a vertex")
                    continue
                missing = [v for v in s.vertices if v not in vertex_pos]
                if missing:
                    problems.append(f"simplex {s.id!r} uses unknown vertices {missing}")
                    continue
                pos = [vertex_pos[v] for v in s.vertices]
                if pos != sorted(pos):
                    problems.append(
                        f"simplex {s.id!r} lists vertices out of the global order"
                    )
                if len(s.facets) != a + 1:
                    problems.append(
                        f"simplex {s.id!r} has {len(s.facets)} facets, expected {a + 1}"
                    )
                    continue
                for i, fid in enumerate(s.facets):
                    f = by_id.get(fid)
                    if f is None:
                        problems.append(f"simplex {s.id!r} facet {fid!r} does not exist")
                        continue
                    if f.dim != a - 1:
                        problems.append(
                            f"simplex {s.id!r} facet {fid!r} has dimension {f.dim}, "
                            f"expected {a - 1}"
                        )
                        continue
                    expected = s.vertices[:i] + s.vertices[i + 1:]
                    if f.vertices != expected:
                        problems.append(
                            f"simplex {s.id!r} facet {fid!r} spans {f.vertices}, "
                            f"expected {expected}"
                        )
        if problems:
            raise ValidationError(problems)

        self._by_dim = tuple(tuple(layer) for layer in by_dim)
        self._by_id = by_id
        self._vertex_pos = vertex_pos
        self._index_in_dim = {
            s.id: j for layer in self._by_dim for j, s in enumerate(layer)
        }

        # facet data alone guarantees d(d(s)) has matching supports;
        # the sign bookkeeping is what this checks
        for a in range(2, len(self._by_dim)):
            m = self.boundary_matrix(a - 1) @ self.boundary_matrix(a)
            if not m.is_zero():
                raise ValidationError([f"boundary squared is nonzero in dimension {a}"])

    # -- accessors ------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self._by_dim) - 1

    def simplices(self, a: int) -> tuple[Simplex, ...]:
        if 0 <= a < len(self._by_dim):
            return self._by_dim[a]
        return ()

    def all_simplices(self) -> Iterable[Simplex]:
        for layer in self._by_dim:
            yield from layer

    def simplex(self, sid: str) -> Simplex:
        return self._by_id[sid]

    def has_simplex(self, sid: str) -> bool:
        return sid in self._by_id

    @property
    def vertex_order(self) -> tuple[str, ...]:
        return tuple(s.id for s in self._by_dim[0])

    def vertex_position(self, vid: str) -> int:
        return self._vertex_pos[vid]

    def index_in_dimension(self, sid: str) -> int:
        return self._index_in_dim[sid]

    def counts(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self._by_dim)

    def size(self) -> int:
        return sum(self.counts())

    def euler_characteristic(self) -> int:
        return sum((-1) ** a * c for a, c in enumerate(self.counts()))

    # -- chain level ------------------------------------------------------

    def boundary_matrix(self, a: int) -> IntMatrix:
        """The boundary C_a -> C_{a-1}; rows follow the (a-1)-simplex
        order, columns the a-simplex order.  For a == 0 this is the
        zero map to the zero module, for a > dimension the zero map
        from it."""
        lower = self.simplices(a - 1) if a >= 1 else ()
        upper = self.simplices(a)
        cols = []
        for s in upper:
            col = [0] * len(lower)
            for i, fid in enumerate(s.facets):
                col[self._index_in_dim[fid]] += (-1) ** i
            cols.append(col)
        return IntMatrix.from_columns(cols, rows=len(lower))

    def augmentation_matrix(self) -> IntMatrix:
        """The map C_0 -> Z sending every vertex to 1 (for reduced
        homology in degree 0)."""
        return IntMatrix.from_rows([[1] * len(self._by_dim[0])], cols=len(self._by_dim[0]))

    def chain_vector(self, coeffs: Mapping[str, int], a: int) -> tuple[int, ...]:
        """A chain given as {simplex id: coefficient} in dimension a,
        as a coordinate vector."""
        vec = [0] * len(self.simplices(a))
        for sid, c in coeffs.items():
            s = self._by_id.get(sid)
            if s is None or s.dim != a:
                raise KeyError(f"no {a}-simplex with id {sid!r}")
            vec[self._index_in_dim[sid]] += c
        return tuple(vec)

    # -- comparison --------------------------------------------------------

    def structure_signature(self) -> tuple:
        """Id-free positional encoding: vertex positions and facet
        indices of every simplex, per dimension and in listing order.
        Two complexes built the same way compare equal regardless of
        how their simplices are named."""
        sig = []
        for a, layer in enumerate(self._by_dim):
            level = []
            for s in layer:
                vpos = tuple(self._vertex_pos[v] for v in s.vertices)
                fpos = tuple(self._index_in_dim[f] for f in s.facets)
                level.append((vpos, fpos))
            sig.append(tuple(level))
        return tuple(sig)

    def __repr__(self) -> str:
        shape = "x".join(str(c) for c in self.counts())
        return f"<DeltaComplex {shape}>"

    # -- convenience builders ------------------------------------------------

    @classmethod
    def graph(cls, vertices: Sequence[str],
              edges: Sequence[tuple[str, str, str]]) -> "DeltaComplex":
        """A 1-dimensional complex from vertex ids and (edge id, u, v)
        triples; endpoint order is normalized to the vertex order."""
        pos = {v: i for i, v in enumerate(vertices)}
        simplices = [Simplex.vertex(v) for v in vertices]
        for eid, u, v in edges:
            if pos[u] > pos[v]:
                u, v = v, u
            simplices.append(Simplex(eid, (u, v), (v, u)))
        return cls(simplices)


class ChainMap:
    """A map of complexes sending each simplex to a signed simplex of
    the same dimension; construction checks it commutes with the
    boundary, exactly."""

    __slots__ = ("source", "target", "assignment", "_matrices")

    def __init__(self, source: DeltaComplex, target: DeltaComplex,
                 assignment: Mapping[str, tuple[str, int]]):
        problems: list[str] = []
        for s in source.all_simplices():
            if s.id not in assignment:
                problems.append(f"simplex {s.id!r} has no image")
                continue
            tid, sign = assignment[s.id]
            if sign not in (1, -1):
                problems.append(f"simplex {s.id!r} has sign {sign}, expected +1 or -1")
            if not target.has_simplex(tid):
                problems.append(f"simplex {s.id!r} maps to unknown id {tid!r}")
            elif target.simplex(tid).dim != s.dim:
                problems.append(
                    f"simplex {s.id!r} (dim {s.dim}) maps to {tid!r} "
                    f"(dim {target.simplex(tid).dim})"
                )
        extra = set(assignment) - {s.id for s in source.all_simplices()}
        if extra:
            problems.append(f"assignment covers unknown ids {sorted(extra)}")
        if problems:
            raise ValidationError(problems)

        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self._matrices: dict[int, IntMatrix] = {}

        for a in range(1, source.dimension + 1):
            lhs = target.boundary_matrix(a) @ self.matrix(a)
            rhs = self.matrix(a - 1) @ source.boundary_matrix(a)
            if lhs != rhs:
                raise ValidationError(
                    [f"map does not commute with the boundary in dimension {a}"]
                )

    def matrix(self, a: int) -> IntMatrix:
        """The induced map on a-chains (target rows, source columns)."""
        if a not in self._matrices:
            src = self.source.simplices(a)
            rows = len(self.target.simplices(a))
            cols = []
            for s in src:
                col = [0] * rows
                tid, sign = self.assignment[s.id]
                col[self.target.index_in_dimension(tid)] += sign
                cols.append(col)
            self._matrices[a] = IntMatrix.from_columns(cols, rows=rows)
        return self._matrices[a]

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target is not self.source and other.target.structure_signature() \
                != self.source.structure_signature():
            raise ValueError("chain maps are not composable")
        combined = {}
        for sid, (mid, sign1) in other.assignment.items():
            tid, sign2 = self.assignment[mid]
            combined[sid] = (tid, sign1 * sign2)
        return ChainMap(other.source, self.target, combined)

    @classmethod
    def identity(cls, cx: DeltaComplex) -> "ChainMap":
        return cls(cx, cx, {s.id: (s.id, 1) for s in cx.all_simplices()})

    def __repr__(self) -> str:
        return f"<ChainMap {self.source!r} -> {self.target!r}>"


def suspend(cx: DeltaComplex, apex0: str, apex1: str) -> DeltaComplex:
    """The suspension: every simplex is kept and also joined to each of
    two new apex vertices, which are appended last in the vertex order
    and never joined to each other.

    Join ids are ``"{simplex}*{apex}"``; per dimension the original
    simplices come first, then the apex0 joins, then the apex1 joins.
    """
    if apex0 == apex1:
        raise ValidationError([f"apex ids must differ, got {apex0!r} twice"])
    taken = {s.id for s in cx.all_simplices()}
    fresh = [apex0, apex1]
    for s in cx.all_simplices():
        fresh.append(f"{s.id}*{apex0}")
        fresh.append(f"{s.id}*{apex1}")
    collisions = sorted({f for f in fresh if f in taken})
    if collisions or len(set(fresh)) != len(fresh):
        raise ValidationError([f"apex id collision: {collisions or sorted(fresh)}"])

    def join(s: Simplex, apex: str) -> Simplex:
        if s.dim == 0:
            facets = (apex, s.id)
        else:
            facets = tuple(f"{fid}*{apex}" for fid in s.facets) + (s.id,)
        return Simplex(f"{s.id}*{apex}", s.vertices + (apex,), facets)

    out: list[Simplex] = list(cx.simplices(0))
    out.append(Simplex.vertex(apex0))
    out.append(Simplex.vertex(apex1))
    for a in range(1, cx.dimension + 2):
        out.extend(cx.simplices(a))
        for apex in (apex0, apex1):
            out.extend(join(s, apex) for s in cx.simplices(a - 1))
    return DeltaComplex(out)
