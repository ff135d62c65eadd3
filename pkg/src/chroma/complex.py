"""Abstract simplicial complexes and neighbourhood complexes.

A simplex is a strictly increasing tuple of vertex ids; ``()`` is the empty
simplex.  Both backings answer membership the same way: every vertex ``v``
carries a *witness* bitset ``W[v]`` and a vertex set is a simplex iff the
AND of its witnesses is nonzero.  For the common-neighbour oracle ``W[v]``
is the neighbourhood of ``v``; for a facet list it is the set of facets
containing ``v``.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from chroma.errors import CapExceeded
from chroma.graph import Graph, bits_of, iter_bits

Simplex = tuple[int, ...]

DEFAULT_SIMPLEX_CAP = 5_000_000


class SimplicialComplex:
    """Immutable complex with a facet-list or common-neighbour backing."""

    __slots__ = ("vertex_count", "_witness", "_all", "_facets", "graph")

    def __init__(self, vertex_count: int, witness: Sequence[int], all_witness: int,
                 facets: Sequence[Simplex] | None = None, graph: Graph | None = None):
        self.vertex_count = vertex_count
        self._witness = tuple(witness)
        self._all = all_witness
        self._facets = None if facets is None else tuple(facets)
        self.graph = graph

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]],
                    vertex_count: int | None = None) -> "SimplicialComplex":
        sets = {tuple(sorted(set(f))) for f in facets}
        sets.discard(())
        # drop dominated faces, longest first
        kept: list[Simplex] = []
        kept_sets: list[frozenset] = []
        for f in sorted(sets, key=lambda s: (-len(s), s)):
            fs = frozenset(f)
            if not any(fs <= k for k in kept_sets):
                kept.append(f)
                kept_sets.append(fs)
        kept.sort()
        if vertex_count is None:
            vertex_count = 1 + max((f[-1] for f in kept), default=-1)
        witness = [0] * vertex_count
        for i, f in enumerate(kept):
            for v in f:
                if v >= vertex_count:
                    raise ValueError(f"vertex {v} out of range")
                witness[v] |= 1 << i
        return cls(vertex_count, witness, (1 << len(kept)) - 1, facets=kept)

    @property
    def backing(self) -> str:
        return "facets" if self._facets is not None else "oracle"

    @property
    def facets(self) -> tuple[Simplex, ...]:
        if self._facets is None:
            raise ValueError("oracle-backed complex has no stored facet list")
        return self._facets

    @property
    def vertices(self) -> list[int]:
        return [v for v, w in enumerate(self._witness) if w]

    def witness(self, simplex: Iterable[int]) -> int:
        """Bitset of witnesses (common neighbours / containing facets)."""
        w = self._all
        for v in simplex:
            if not 0 <= v < self.vertex_count:
                raise ValueError(f"vertex id {v} out of range")
            w &= self._witness[v]
        return w

    def contains(self, simplex: Iterable[int]) -> bool:
        return self.witness(simplex) != 0

    __contains__ = contains

    def is_empty(self) -> bool:
        return not any(self._witness)

    def enumerate_simplices(self, max_dim: int,
                            cap: int = DEFAULT_SIMPLEX_CAP) -> list[list[Simplex]]:
        """All nonempty simplices of dimension ``<= max_dim``, grouped by dimension.

        Within each dimension the order is lexicographic.  Raises
        :class:`CapExceeded` rather than returning a partial list.
        """
        if max_dim < 0:
            return []
        groups: list[list[Simplex]] = [[] for _ in range(max_dim + 1)]
        verts = self.vertices
        wit = self._witness
        total = 0
        stack: list[tuple[Simplex, int, int]] = [((), self._all, 0)]
        # explicit stack, children pushed in reverse so the walk is preorder
        while stack:
            simplex, w, start = stack.pop()
            if simplex:
                groups[len(simplex) - 1].append(simplex)
                total += 1
                if total > cap:
                    raise CapExceeded("simplices", cap, total,
                                      f"while enumerating dimension {len(simplex) - 1}")
            if len(simplex) > max_dim:
                continue
            children = []
            for idx in range(start, len(verts)):
                v = verts[idx]
                w2 = w & wit[v]
                if w2:
                    children.append((simplex + (v,), w2, idx + 1))
            stack.extend(reversed(children))
        return groups

    def count_simplices(self, max_dim: int) -> list[int]:
        counts = [0] * (max_dim + 1)
        verts = self.vertices
        wit = self._witness

        def walk(size, w, start):
            for idx in range(start, len(verts)):
                w2 = w & wit[verts[idx]]
                if w2:
                    counts[size] += 1
                    if size < max_dim:
                        walk(size + 1, w2, idx + 1)

        if max_dim >= 0:
            walk(0, self._all, 0)
        return counts

    def cofacets_of(self, simplex: Simplex) -> list[Simplex]:
        w = self.witness(simplex)
        if not w:
            raise ValueError(f"{simplex} is not a simplex of the complex")
        inside = set(simplex)
        out = []
        for v in self.vertices:
            if v not in inside and w & self._witness[v]:
                out.append(tuple(sorted(simplex + (v,))))
        return out

    def to_json(self, max_dim: int | None = None) -> dict:
        """Facet list export, or the enumerated skeleton for oracle backing.

        Vertex ids are 1-indexed in the output.
        """
        if self._facets is not None:
            return {"vertices": self.vertex_count,
                    "facets": [[v + 1 for v in f] for f in self._facets]}
        if max_dim is None:
            raise ValueError("oracle-backed export needs a dimension cap")
        groups = self.enumerate_simplices(max_dim)
        return {"vertices": self.vertex_count, "max_dim": max_dim,
                "simplices": [[[v + 1 for v in s] for s in g] for g in groups]}

    @classmethod
    def from_json(cls, data: dict | str) -> "SimplicialComplex":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_facets(([v - 1 for v in f] for f in data["facets"]),
                               vertex_count=data["vertices"])

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.vertices)}, backing={self.backing})"


def facets_of(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces, deleting positions ``0, 1, 2, ...`` in turn."""
    if not simplex:
        raise ValueError("the empty simplex has no facets")
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def common_neighbors(g: Graph, s: Iterable[int]) -> set[int]:
    return set(iter_bits(common_neighbor_mask(g, s)))


def common_neighbor_mask(g: Graph, s: Iterable[int]) -> int:
    mask = (1 << g.vertex_count) - 1
    for v in s:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"vertex id {v} out of range")
        mask &= g.masks[v]
    return mask


def neighborhood_complex(g: Graph, backing: str = "oracle") -> SimplicialComplex:
    """Vertex sets of ``g`` with a common neighbour.

    ``backing="facets"`` stores the maximal neighbourhoods; ``"oracle"``
    tests membership against the graph directly.
    """
    if backing == "oracle":
        return SimplicialComplex(g.vertex_count, g.masks, (1 << g.vertex_count) - 1,
                                 graph=g)
    if backing == "facets":
        hoods = {tuple(iter_bits(m)) for m in g.masks if m}
        cx = SimplicialComplex.from_facets(hoods, vertex_count=g.vertex_count)
        cx.graph = g
        return cx
    raise ValueError(f"unknown backing {backing!r}")


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the ``k``-simplex on vertices ``0..k`` (a ``(k-1)``-sphere)."""
    full = tuple(range(k + 1))
    return SimplicialComplex.from_facets(facets_of(full), vertex_count=k + 1)


def full_simplex(k: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets([tuple(range(k + 1))], vertex_count=k + 1)


def cone(cx: SimplicialComplex) -> SimplicialComplex:
    """Cone over a facet-backed complex; the apex is the new top vertex."""
    apex = cx.vertex_count
    return SimplicialComplex.from_facets([f + (apex,) for f in cx.facets],
                                         vertex_count=apex + 1)


# 6-vertex real projective plane
RP2_FACETS = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def rp2() -> SimplicialComplex:
    return SimplicialComplex.from_facets(RP2_FACETS, vertex_count=6)


__all__ = ["Simplex", "SimplicialComplex", "facets_of", "common_neighbors",
           "common_neighbor_mask", "neighborhood_complex", "simplex_boundary",
           "full_simplex", "cone", "rp2", "bits_of"]
