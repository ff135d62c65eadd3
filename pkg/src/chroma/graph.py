"""Finite graphs with loops, products, exponential graphs and folds.

Vertices are ``0..n-1``; each vertex's neighbourhood is stored as an int
bitset so that intersections (common neighbours, fold tests) are single
``&`` operations.  Loops are ordinary adjacency: ``v`` is a neighbour of
itself iff bit ``v`` is set in its own mask.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

from chroma.errors import CapExceeded

DEFAULT_VERTEX_CAP = 10**6


@dataclass(frozen=True, order=True)
class Constant:
    """The constant map with value ``color``, written ``<color>``."""

    color: int

    def __str__(self) -> str:
        return f"<{self.color}>"


@dataclass(frozen=True, order=True)
class MapString:
    """An injective map ``i -> values[i-1]`` written as ``a_1 a_2 ... a_n``."""

    values: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.values)) != len(self.values):
            raise ValueError(f"map string entries must be distinct: {self.values}")

    def __str__(self) -> str:
        if all(v < 10 for v in self.values):
            return "".join(map(str, self.values))
        return ",".join(map(str, self.values))


@dataclass(frozen=True, order=True)
class Plain:
    name: str

    def __str__(self) -> str:
        return self.name


VertexLabel = Union[Constant, MapString, Plain]

_CONST_RE = re.compile(r"^<(\d+)>$")
_DIGITS_RE = re.compile(r"^\d+$")
_CSV_RE = re.compile(r"^\d+(,\d+)+$")


def parse_label(text: str) -> VertexLabel:
    text = text.strip()
    if m := _CONST_RE.match(text):
        return Constant(int(m.group(1)))
    values = None
    if _DIGITS_RE.match(text):
        values = tuple(int(c) for c in text)
    elif _CSV_RE.match(text):
        values = tuple(int(c) for c in text.split(","))
    if values is not None and len(set(values)) == len(values):
        return MapString(values)
    return Plain(text)


def map_label(values: Sequence[int]) -> VertexLabel:
    """Label for a set map given by its (1-indexed) values."""
    values = tuple(values)
    if len(set(values)) == 1 and len(values) > 0:
        return Constant(values[0])
    if len(set(values)) == len(values):
        return MapString(values)
    return Plain(".".join(map(str, values)))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


class Graph:
    """Immutable finite graph; adjacency is symmetric and may contain loops."""

    __slots__ = ("_nbrs", "_labels")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[VertexLabel | None] | None = None):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        nbrs = [0] * vertex_count
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            nbrs[u] |= 1 << v
            nbrs[v] |= 1 << u
        self._nbrs = tuple(nbrs)
        self._labels = _check_labels(labels, vertex_count)

    @classmethod
    def from_masks(cls, masks: Sequence[int], labels=None) -> "Graph":
        """Build from neighbourhood bitsets; symmetry is checked."""
        g = cls.__new__(cls)
        g._nbrs = tuple(masks)
        n = len(g._nbrs)
        for u, mask in enumerate(g._nbrs):
            if mask >> n:
                raise ValueError(f"vertex {u} has neighbours out of range")
            for v in iter_bits(mask):
                if not (g._nbrs[v] >> u) & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")
        g._labels = _check_labels(labels, n)
        return g

    @property
    def vertex_count(self) -> int:
        return len(self._nbrs)

    @property
    def masks(self) -> tuple[int, ...]:
        return self._nbrs

    @property
    def labels(self) -> tuple[VertexLabel | None, ...]:
        return self._labels

    def label(self, v: int) -> VertexLabel | None:
        return self._labels[v]

    def vertex_name(self, v: int) -> str:
        lab = self._labels[v]
        return str(lab) if lab is not None else str(v + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self._nbrs[v]))

    def neighbor_mask(self, v: int) -> int:
        return self._nbrs[v]

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self._nbrs[u] >> v) & 1)

    def has_loop(self, v: int) -> bool:
        return self.adjacent(v, v)

    def degree(self, v: int) -> int:
        return self._nbrs[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u <= v``, loops included, sorted."""
        return [(u, v) for u in range(self.vertex_count)
                for v in iter_bits(self._nbrs[u] >> u << u)]

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def isolated_vertices(self) -> list[int]:
        return [v for v, m in enumerate(self._nbrs) if not m]

    def find_label(self, label: VertexLabel) -> int:
        try:
            return self._labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labelled {label}") from None

    def remove_vertex(self, u: int) -> "Graph":
        """``G \\ {u}`` with ids above ``u`` shifted down by one."""
        keep = [v for v in range(self.vertex_count) if v != u]
        return self.induced_subgraph(keep)

    def induced_subgraph(self, keep: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(keep)}
        masks = []
        for v in keep:
            masks.append(bits_of(index[w] for w in iter_bits(self._nbrs[v]) if w in index))
        g = Graph.__new__(Graph)
        g._nbrs = tuple(masks)
        g._labels = tuple(self._labels[v] for v in keep)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nbrs == other._nbrs and self._labels == other._labels

    def __hash__(self) -> int:
        return hash((self._nbrs, self._labels))

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"


def _check_labels(labels, n):
    if labels is None:
        return (None,) * n
    labels = tuple(labels)
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    return labels


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("complete_graph needs k >= 1")
    return Graph(k, itertools.combinations(range(k), 2),
                 labels=[Constant(i + 1) for i in range(k)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle_graph needs k >= 3")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("path_graph needs k >= 1")
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def categorical_product(g: Graph, h: Graph) -> Graph:
    """Tensor product: ``(a, b) ~ (a', b')`` iff ``a ~ a'`` and ``b ~ b'``.

    Vertex ``(a, b)`` gets id ``a * |V(h)| + b``.
    """
    nh = h.vertex_count
    masks = []
    for a in range(g.vertex_count):
        for b in range(nh):
            hb = h.masks[b]
            mask = 0
            for a2 in iter_bits(g.masks[a]):
                mask |= hb << (a2 * nh)
            masks.append(mask)
    labels = [Plain(f"({g.vertex_name(a)},{h.vertex_name(b)})")
              for a in range(g.vertex_count) for b in range(nh)]
    out = Graph.__new__(Graph)
    out._nbrs = tuple(masks)
    out._labels = tuple(labels)
    return out


def exponential_graph(h: Graph, g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """The graph ``H^G`` of all set maps ``V(G) -> V(H)``.

    ``f ~ f'`` iff ``f(v) ~ f'(v')`` in ``H`` for every edge ``v ~ v'`` of
    ``G`` (loops of ``G`` included).  Maps are enumerated lexicographically
    as tuples ``(f(0), ..., f(|G|-1))``; labels use 1-indexed values.
    """
    ng, nh = g.vertex_count, h.vertex_count
    if ng == 0 or nh == 0:
        raise ValueError("exponential_graph needs nonempty graphs")
    size = nh ** ng
    if size > cap:
        raise CapExceeded("vertices", cap, size)
    full = (1 << nh) - 1
    gnbrs = [list(iter_bits(g.masks[v])) for v in range(ng)]
    place = [nh ** (ng - 1 - v) for v in range(ng)]
    maps = list(itertools.product(range(nh), repeat=ng))
    masks = []
    for f in maps:
        # f' is adjacent to f iff f'(v') lies in allowed[v'] for every v'
        allowed = []
        for vp in range(ng):
            a = full
            for v in gnbrs[vp]:
                a &= h.masks[f[v]]
            allowed.append(list(iter_bits(a)))
        mask = 0
        for fp in itertools.product(*allowed):
            mask |= 1 << sum(x * p for x, p in zip(fp, place))
        masks.append(mask)
    out = Graph.__new__(Graph)
    out._nbrs = tuple(masks)
    out._labels = tuple(map_label([x + 1 for x in f]) for f in maps)
    return out


def reduced_exponential(n: int, m: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """The fold of ``K_m^{K_n}`` onto constant and injective maps.

    Vertices ``0..m-1`` are the constants ``<1>..<m>``; the injective maps
    follow in lexicographic order.  ``f ~ g`` iff ``f(i) != g(j)`` for all
    ``i != j``.
    """
    if n < 1 or m < 1:
        raise ValueError("reduced_exponential needs n, m >= 1")
    size = m + (_falling(m, n) if m >= n else 0)
    if size > cap:
        raise CapExceeded("vertices", cap, size)
    maps = [(x,) * n for x in range(1, m + 1)]
    maps += list(itertools.permutations(range(1, m + 1), n)) if m >= n else []
    labels = [Constant(f[0]) for f in maps[:m]] + [MapString(f) for f in maps[m:]]
    return _maps_graph(n, maps, labels)


def _falling(m, n):
    out = 1
    for i in range(n):
        out *= m - i
    return out


def _maps_graph(n, maps, labels):
    # per coordinate i and colour c: the maps g with g(i) == c
    by_value = [dict() for _ in range(n)]
    for idx, f in enumerate(maps):
        for i, c in enumerate(f):
            by_value[i][c] = by_value[i].get(c, 0) | (1 << idx)
    full = (1 << len(maps)) - 1
    masks = []
    for f in maps:
        bad = 0
        for j, c in enumerate(f):
            for i in range(n):
                if i != j:
                    bad |= by_value[i].get(c, 0)
        masks.append(full & ~bad)
    out = Graph.__new__(Graph)
    out._nbrs = tuple(masks)
    out._labels = tuple(labels)
    return out


def _fold_target(masks, alive, u):
    cand = alive & ~(1 << u)
    for w in iter_bits(masks[u]):
        cand &= masks[w]
        if not cand:
            return None
    if not cand:
        return None
    return (cand & -cand).bit_length() - 1


def fold_step(g: Graph) -> tuple[Graph, int] | None:
    """One fold ``G -> G \\ {u}`` where ``N(u) ⊆ N(v)`` for some ``v != u``.

    The smallest such ``u`` is removed.  Returns ``None`` if ``G`` has no fold.
    """
    alive = (1 << g.vertex_count) - 1
    for u in range(g.vertex_count):
        if _fold_target(g.masks, alive, u) is not None:
            return g.remove_vertex(u), u
    return None


def fold_reduce(g: Graph) -> Graph:
    """Fold repeatedly (same choice rule as :func:`fold_step`) until stiff."""
    masks = list(g.masks)
    alive = (1 << g.vertex_count) - 1
    # a vertex that cannot fold stays unfoldable until one of its neighbours goes
    stuck = 0
    while True:
        pending = alive & ~stuck
        removed = None
        while pending:
            u = (pending & -pending).bit_length() - 1
            pending ^= 1 << u
            if _fold_target(masks, alive, u) is not None:
                removed = u
                break
            stuck |= 1 << u
        if removed is None:
            break
        u = removed
        alive &= ~(1 << u)
        for w in iter_bits(masks[u]):
            masks[w] &= ~(1 << u)
        stuck &= ~masks[u]
        masks[u] = 0
    return g.induced_subgraph(list(iter_bits(alive)))


# -- text format ---------------------------------------------------------

def format_graph(g: Graph) -> str:
    lines = [f"p {g.vertex_count}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    lines += [f"l {v + 1} {lab}" for v, lab in enumerate(g.labels) if lab is not None]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse ``p N`` / ``e u v`` / ``l u text`` lines (1-indexed ids)."""
    n = None
    edges = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        parts = line.split(maxsplit=2)
        try:
            if parts[0] == "p":
                n = int(parts[1])
            elif parts[0] == "e":
                u, v = line.split()[1:3]
                edges.append((int(u) - 1, int(v) - 1))
            elif parts[0] == "l":
                labels[int(parts[1]) - 1] = parse_label(parts[2])
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing 'p <num_vertices>' line")
    lab = [labels.get(v) for v in range(n)] if labels else None
    return Graph(n, edges, lab)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")
