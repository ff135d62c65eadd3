"""The acyclic matching on the neighbourhood complex of ``K_m^{K_n}``.

Everything here works on the reduced exponential graph ``G`` (constant and
injective maps ``[n] -> [m]``).  Vertex ``x - 1`` of ``G`` is the constant
``<x>``, so adding or removing ``<i>`` is inserting or deleting id ``i - 1``.

The matching is defined level by level: ``sigma`` sits at level ``i`` if it
is not matched at a lower level and ``sigma`` XOR ``<i>`` is a nonempty
simplex that is not matched at a lower level either.  :class:`ColoringMatching`
evaluates this locally with memoisation, so a query only touches the chain
``sigma +- <j>`` for ``j < i``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from chroma.complex import DEFAULT_SIMPLEX_CAP, Simplex, SimplicialComplex, neighborhood_complex
from chroma.errors import CapExceeded
from chroma.graph import (Constant, Graph, MapString, complete_graph, exponential_graph, fold_reduce,
                          reduced_exponential)
from chroma.homology import (AT_LEAST_CAP, MINUS_INFINITY, BettiTable, Gf2Matrix, _bitset_rank,
                             betti_gf2, betti_integer, homology_connectivity, rank_gf2)
from chroma.morse import (CRITICAL, DEFAULT_PATH_CAP, AlternatingPath, CheckResult, MatchStatus,
                          alternating_paths_from, critical_cells_scan, matched_down, matched_up,
                          morse_boundary, verify_acyclic, verify_matching)


@dataclass(frozen=True)
class ColoringCell:
    """A simplex of ``N(G)`` as colours of its constants plus its injective maps."""

    constants: frozenset[int]
    maps: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if not self.constants and not self.maps:
            raise ValueError("cells are nonempty")

    @classmethod
    def of(cls, constants: Iterable[int] = (), maps: Iterable[Sequence[int]] = ()) -> "ColoringCell":
        return cls(frozenset(constants), frozenset(tuple(f) for f in maps))

    @classmethod
    def parse(cls, text: str) -> "ColoringCell":
        """From e.g. ``"<2>, 134"`` or ``"{<2>,<3>,<4>}"``."""
        consts, maps = [], []
        for tok in text.strip().strip("{}").replace(",", " ").split():
            if tok.startswith("<"):
                consts.append(int(tok.strip("<>")))
            else:
                maps.append(tuple(int(c) for c in tok))
        return cls.of(consts, maps)

    def __str__(self) -> str:
        parts = [str(Constant(x)) for x in sorted(self.constants)]
        parts += [str(MapString(f)) for f in sorted(self.maps)]
        return "{" + ", ".join(parts) + "}"

    @property
    def dim(self) -> int:
        return len(self.constants) + len(self.maps) - 1


@dataclass(frozen=True)
class CellStats:
    images: tuple[frozenset[int], ...]     # X_i, one per coordinate
    available: tuple[frozenset[int], ...]  # A_i = [m] minus the other coordinates' images
    image: frozenset[int]                  # union of the X_i


@dataclass(frozen=True)
class CriticalWitness:
    """``z`` (1-indexed colours) with ``z[k] == 1`` and the cell inside ``N(z)``; or a tag."""

    z: tuple[int, ...] | None = None
    tag: str | None = None

    @property
    def k(self) -> int | None:
        return None if self.z is None else self.z.index(1)

    def __str__(self) -> str:
        return self.tag if self.tag else "z=" + "".join(map(str, self.z))


@dataclass(frozen=True)
class CriticalCell:
    simplex: Simplex
    witness: CriticalWitness


def _check_params(n, m):
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")


class ColoringComplex:
    """``G = reduced_exponential(n, m)``, ``N(G)`` and the matching on it."""

    def __init__(self, n: int, m: int, vertex_cap: int = 10**6):
        _check_params(n, m)
        self.n, self.m = n, m
        self.graph: Graph = reduced_exponential(n, m, cap=vertex_cap)
        self.complex: SimplicialComplex = neighborhood_complex(self.graph)
        self.maps: list[tuple[int, ...]] = [(x,) * n for x in range(1, m + 1)]
        self.maps += [lab.values for lab in self.graph.labels[m:]]
        self._map_id = {f: i for i, f in enumerate(self.maps[m:], m)}
        self.matching = ColoringMatching(self)

    # conversions ---------------------------------------------------------

    def to_simplex(self, cell: ColoringCell) -> Simplex:
        ids = []
        for x in cell.constants:
            if not 1 <= x <= self.m:
                raise ValueError(f"colour {x} outside [1, {self.m}]")
            ids.append(x - 1)
        for f in cell.maps:
            if f not in self._map_id:
                raise ValueError(f"{f} is not an injective map [{self.n}] -> [{self.m}]")
            ids.append(self._map_id[f])
        return tuple(sorted(ids))

    def to_cell(self, simplex: Simplex) -> ColoringCell:
        return ColoringCell.of([v + 1 for v in simplex if v < self.m],
                               [self.maps[v] for v in simplex if v >= self.m])

    def name(self, simplex: Simplex) -> str:
        return str(self.to_cell(simplex))

    def _simplex(self, sigma) -> Simplex:
        return self.to_simplex(sigma) if isinstance(sigma, ColoringCell) else tuple(sigma)

    # the notation of the construction ------------------------------------

    def cell_stats(self, sigma) -> CellStats:
        s = self._simplex(sigma)
        images = [set() for _ in range(self.n)]
        for v in s:
            f = self.maps[v]
            for i in range(self.n):
                images[i].add(f[i])
        every = set(range(1, self.m + 1))
        avail = []
        for i in range(self.n):
            others = set().union(*(images[j] for j in range(self.n) if j != i))
            avail.append(frozenset(every - others))
        return CellStats(tuple(map(frozenset, images)), tuple(avail),
                         frozenset().union(*images))

    def is_simplex(self, sigma) -> bool:
        s = self._simplex(sigma)
        return bool(s) and self.complex.contains(s)

    def available_criterion(self, sigma) -> bool:
        """Simplex test through the per-coordinate available colours alone."""
        return all(self.cell_stats(sigma).available)

    def mu_status(self, sigma) -> MatchStatus:
        return self.matching(self._simplex(sigma))

    def mu_level(self, sigma) -> int | None:
        return self.matching.level(self._simplex(sigma))


class ColoringMatching:
    """Memoised matching oracle ``simplex -> MatchStatus`` on ``N(G)``."""

    def __init__(self, cc: ColoringComplex):
        self.cc = cc
        self.m = cc.m
        self._contains = cc.complex.contains
        # simplex -> (level, None) when known, or (None, bound): no level below bound
        self._memo: dict[Simplex, tuple[int | None, int]] = {}

    def _below(self, s: Simplex, limit: int) -> int | None:
        """Level of ``s`` if it is smaller than ``limit``, else ``None``."""
        entry = self._memo.get(s)
        start = 1
        if entry is not None:
            lvl, bound = entry
            if lvl is not None:
                return lvl if lvl < limit else None
            if bound >= limit:
                return None
            start = bound
        for i in range(start, limit):
            c = i - 1
            if c in s:
                partner = tuple(v for v in s if v != c)
                ok = bool(partner)
            else:
                partner = tuple(sorted(s + (c,)))
                ok = self._contains(partner)
            if ok and self._below(partner, i) is None:
                self._memo[s] = (i, i)
                return i
        self._memo[s] = (None, limit)
        return None

    def level(self, s: Simplex) -> int | None:
        if not s or not self._contains(s):
            raise ValueError(f"{s} is not a nonempty simplex of N(G)")
        return self._below(tuple(s), self.m + 1)

    def __call__(self, s: Simplex) -> MatchStatus:
        s = tuple(s)
        lvl = self.level(s)
        if lvl is None:
            return CRITICAL
        c = lvl - 1
        if c in s:
            return matched_down(tuple(v for v in s if v != c))
        return matched_up(tuple(sorted(s + (c,))))

    def cache_size(self) -> int:
        return len(self._memo)


@lru_cache(maxsize=16)
def coloring_complex(n: int, m: int) -> ColoringComplex:
    return ColoringComplex(n, m)


def cell_stats(n: int, m: int, sigma) -> CellStats:
    return coloring_complex(n, m).cell_stats(sigma)


def is_simplex(n: int, m: int, sigma) -> bool:
    return coloring_complex(n, m).is_simplex(sigma)


def mu_status(n: int, m: int, sigma) -> MatchStatus:
    return coloring_complex(n, m).mu_status(sigma)


# -- critical cells in closed form ----------------------------------------------

def enumerate_critical(n: int, m: int, max_dim: int | None = None,
                       cap: int = DEFAULT_SIMPLEX_CAP) -> list[list[CriticalCell]]:
    """Critical cells of the matching for ``m > n >= 3``, grouped by dimension.

    Emits ``<1>``, ``{<2>,...,<m>}`` and every cell ``{<x> : x not in z} + tau``
    where ``z`` is injective with some ``z_k = 1`` and ``tau`` is a nonempty
    set of injective neighbours of ``z`` such that

    * every ``z_i`` with ``i != k`` occurs in the images of ``tau``,
    * colours at coordinate ``i`` are all ``>= z_i``,
    * no colour occurs at two different coordinates,
    * some colour at coordinate ``k`` is below every other ``z_i``.

    A cell reachable from several ``z`` keeps the lexicographically least.
    """
    if not m > n >= 3:
        raise ValueError("closed-form critical cells need m > n >= 3")
    cc = coloring_complex(n, m)
    top = n * m if max_dim is None else max_dim
    found: dict[Simplex, CriticalWitness] = {}
    found[(0,)] = CriticalWitness(tag="<1>")
    found[tuple(range(1, m))] = CriticalWitness(tag="<2>...<m>")
    colours = range(1, m + 1)
    for z in itertools.permutations(colours, n):
        if 1 not in z:
            continue
        k = z.index(1)
        zset = set(z)
        floor = min(z[i] for i in range(n) if i != k)
        consts = tuple(x - 1 for x in colours if x not in zset)
        # injective neighbours of z respecting the per-coordinate lower bounds
        cands = []
        for f in itertools.permutations(colours, n):
            if all(f[i] >= z[i] and (f[i] == z[i] or f[i] not in zset) for i in range(n)):
                cands.append(f)
        need = {z[i] for i in range(n) if i != k}
        wit = CriticalWitness(z=z)
        for tau in _disjoint_families(cands, n, top - len(consts) + 1):
            img = set().union(*(set(f) for f in tau))
            if not need <= img:
                continue
            if not any(f[k] < floor for f in tau):
                continue
            s = tuple(sorted(consts + tuple(cc._map_id[f] for f in tau)))
            if s not in found or (found[s].z is not None and z < found[s].z):
                found[s] = wit
            if len(found) > cap:
                raise CapExceeded("critical cells", cap, len(found))
    dims = max(len(s) for s in found) if found else 0
    groups: list[list[CriticalCell]] = [[] for _ in range(dims)]
    for s, w in found.items():
        if len(s) - 1 <= top:
            groups[len(s) - 1].append(CriticalCell(s, w))
    for g in groups:
        g.sort(key=lambda c: c.simplex)
    return groups[:top + 1]


def _disjoint_families(cands, n, max_size):
    """Nonempty subsets of ``cands`` (at most ``max_size``) in which no colour
    appears at two different coordinates."""
    out = []

    def walk(start, chosen, owner):
        if chosen:
            out.append(tuple(chosen))
        if len(chosen) >= max_size:
            return
        for idx in range(start, len(cands)):
            f = cands[idx]
            if all(owner.get(c, i) == i for i, c in enumerate(f)):
                new = {c: i for i, c in enumerate(f) if c not in owner}
                owner.update(new)
                chosen.append(f)
                walk(idx + 1, chosen, owner)
                chosen.pop()
                for c in new:
                    del owner[c]

    walk(0, [], {})
    return out


def critical_simplices(groups: Sequence[Sequence[CriticalCell]]) -> list[list[Simplex]]:
    return [[c.simplex for c in g] for g in groups]


# -- incidence between critical p+1 and p cells -----------------------------------

@dataclass
class IncidenceStructure:
    n: int
    m: int
    rows: list[Simplex]           # critical p-cells
    cols: list[Simplex]           # critical (p+1)-cells
    matrix: Gf2Matrix             # path counts mod 2
    path_counts: list[dict[Simplex, int]]  # per column: target -> number of paths
    paths: list[AlternatingPath] = field(default_factory=list)

    @property
    def p(self) -> int:
        return self.m - self.n

    def exceptional_column(self) -> int | None:
        exc = tuple(range(1, self.m))
        return self.cols.index(exc) if exc in self.cols else None

    def check_columns(self) -> CheckResult:
        """Two ones per column, except a zero column for ``{<2>,...,<m>}``."""
        exc = self.exceptional_column()
        for j, counts in enumerate(self.path_counts):
            if j == exc:
                if counts:
                    return CheckResult("columns", False,
                                       "exceptional column has alternating paths", self.cols[j])
                continue
            if len(counts) != 2 or any(v != 1 for v in counts.values()):
                return CheckResult("columns", False,
                                   f"column {j} path counts {sorted(counts.values())}",
                                   self.cols[j])
        return CheckResult("columns", True,
                           f"{len(self.cols)} columns, exceptional column: {exc is not None}")

    def rank(self) -> int:
        return rank_gf2(self.matrix)


def incidence_structure(n: int, m: int, path_cap: int = DEFAULT_PATH_CAP,
                        keep_paths: bool = True) -> IncidenceStructure:
    """Alternating-path incidence from critical ``(p+1)``- to critical ``p``-cells."""
    p = m - n
    if p < 1 or n < 3:
        raise ValueError("incidence structure needs m - n >= 1 and n >= 3")
    cc = coloring_complex(n, m)
    crit = critical_simplices(enumerate_critical(n, m, max_dim=p + 1))
    rows, cols = crit[p], crit[p + 1] if len(crit) > p + 1 else []
    index = {s: i for i, s in enumerate(rows)}
    counts = []
    kept = []
    columns = []
    for tau in cols:
        paths = alternating_paths_from(cc.complex, cc.matching, tau, path_cap)
        c: dict[Simplex, int] = {}
        for path in paths:
            c[path.target] = c.get(path.target, 0) + 1
        counts.append(c)
        columns.append([index[t] for t, k in c.items() if k % 2])
        if keep_paths:
            kept.extend(paths)
    matrix = Gf2Matrix.from_columns(len(rows), columns)
    return IncidenceStructure(n, m, rows, cols, matrix, counts, kept)


def path_purity_check(n: int, m: int, paths: Iterable[AlternatingPath]) -> CheckResult:
    """No cell strictly inside an alternating path is matched at level 1."""
    cc = coloring_complex(n, m)
    count = 0
    for path in paths:
        count += 1
        for cell in path.cells[1:-1]:
            lvl = cc.mu_level(cell)
            if lvl is None or lvl < 2:
                return CheckResult("path purity", False,
                                   f"{cc.name(cell)} has level {lvl}", path)
    return CheckResult("path purity", True, f"{count} paths checked")


# -- verification reports ----------------------------------------------------------

HOMOLOGY_NOTE = ("connectivity is certified at the level of reduced homology "
                 "(vanishing below the predicted degree, nonvanishing at it); "
                 "homotopy groups are not computed")


@dataclass
class VerificationReport:
    n: int
    m: int
    regime: str
    expected_conn: int | None
    betti_z2: list[int] = field(default_factory=list)
    computed_up_to: int = -1
    checks: list[CheckResult] = field(default_factory=list)
    note: str = HOMOLOGY_NOTE
    inconclusive: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.inconclusive and bool(self.checks) and all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(ok), detail))

    def to_dict(self) -> dict:
        out = {"n": self.n, "m": self.m, "regime": self.regime,
               "expected_conn": self.expected_conn,
               "computed": {"betti_z2": self.betti_z2, "computed_up_to": self.computed_up_to},
               "checks": [c.to_dict() for c in self.checks],
               "note": self.note, "inconclusive": self.inconclusive,
               "pass": self.passed}
        out.update(self.extra)
        return out


def predicted_connectivity(n: int, m: int) -> int:
    return m - n - 1 if m >= n else m - 3


def sphere_betti(d: int, top: int) -> list[int]:
    """Unreduced Betti numbers of ``S^d`` in degrees ``0..top``."""
    if d == 0:
        return [2] + [0] * top
    return [1 if i in (0, d) else 0 for i in range(top + 1)]


def product_sphere_betti(d: int, top: int) -> list[int]:
    """Unreduced Betti numbers of ``S^d x S^d`` in degrees ``0..top``."""
    b = [0] * (top + 1)
    s = sphere_betti(d, 2 * d)
    for i, x in enumerate(s):
        for j, y in enumerate(s):
            if i + j <= top:
                b[i + j] += x * y
    return b


def verify_main(n: int, m: int, simplex_cap: int = DEFAULT_SIMPLEX_CAP,
                path_cap: int = DEFAULT_PATH_CAP, max_dim: int | None = None,
                integer: bool = False) -> VerificationReport:
    """Check the connectivity prediction for ``Hom(K_2 x K_n, K_m)`` at homology level."""
    if n < 2 or m < 2:
        raise ValueError("need n, m >= 2")
    if n == 2:
        return _verify_product(m, simplex_cap, max_dim)
    if m < n:
        return _verify_sphere(n, m, simplex_cap)
    if m == n:
        return _verify_disconnected(n, simplex_cap)
    return _verify_morse(n, m, simplex_cap, path_cap, max_dim, integer)


def _verify_product(m, cap, max_dim):
    d = m - 2
    report = VerificationReport(2, m, "product", predicted_connectivity(2, m))
    top = 2 * d if max_dim is None else min(2 * d, max_dim)
    cx = neighborhood_complex(reduced_exponential(2, m))
    try:
        table = betti_gf2(cx, top, cap=cap)
    except CapExceeded as exc:
        report.inconclusive = True
        report.add("enumeration", False, str(exc))
        return report
    report.betti_z2, report.computed_up_to = table.betti, top
    want = product_sphere_betti(d, top)
    report.add("betti of S^d x S^d", table.betti == want, f"expected {want}, got {table.betti}")
    reduced = betti_gf2(cx, min(top, d), reduced=True, cap=cap)
    conn = homology_connectivity(reduced)
    ok = conn == report.expected_conn or (conn == AT_LEAST_CAP and top < d)
    report.add("homology connectivity", ok, f"expected {report.expected_conn}, got {conn}")
    return report


FOLD_FULL_LIMIT = 1100


def _verify_sphere(n, m, cap):
    report = VerificationReport(n, m, "fold", predicted_connectivity(n, m))
    g = reduced_exponential(n, m)
    report.add("folded graph has only constants",
               all(isinstance(l, Constant) for l in g.labels) and g.vertex_count == m)
    if m ** n <= FOLD_FULL_LIMIT:
        full = fold_reduce(exponential_graph(complete_graph(m), complete_graph(n)))
        report.add("fold_reduce of the full exponential is K_m",
                   full.vertex_count == m and full.edge_count == m * (m - 1) // 2,
                   f"{m ** n} maps folded to {full.vertex_count} vertices")
    cx = neighborhood_complex(g)
    top = m - 2
    table = betti_gf2(cx, top, cap=cap)
    report.betti_z2, report.computed_up_to = table.betti, top
    want = sphere_betti(m - 2, top)
    report.add("Z2 betti of S^(m-2)", table.betti == want, f"expected {want}, got {table.betti}")
    zt = betti_integer(cx, top, cap=cap)
    report.add("integer homology of S^(m-2)",
               zt.betti == want and not any(zt.torsion), f"free {zt.betti}, torsion {zt.torsion}")
    conn = homology_connectivity(betti_gf2(cx, top, reduced=True, cap=cap))
    report.add("homology connectivity", conn == report.expected_conn,
               f"expected {report.expected_conn}, got {conn}")
    return report


def _verify_disconnected(n, cap):
    report = VerificationReport(n, n, "disconnected", predicted_connectivity(n, n))
    cc = coloring_complex(n, n)
    lonely = [v for v in range(n, cc.graph.vertex_count)
              if cc.graph.neighbor_mask(v) != 1 << v]
    report.add("N(f) = {f} for surjective f", not lonely,
               f"{cc.graph.vertex_count - n} injective maps checked")
    table = betti_gf2(cc.complex, 0, cap=cap)
    report.betti_z2, report.computed_up_to = table.betti, 0
    report.add("beta_0 >= 2", table.betti[0] >= 2, f"beta_0 = {table.betti[0]}")
    conn = homology_connectivity(betti_gf2(cc.complex, 0, reduced=True, cap=cap))
    report.add("homology connectivity", conn == -1, f"got {conn}")
    return report


def _verify_morse(n, m, cap, path_cap, max_dim, integer):
    p = m - n
    report = VerificationReport(n, m, "morse", predicted_connectivity(n, m))
    if n < 3:
        raise ValueError("the matching pipeline needs n >= 3")
    top = p if max_dim is None else min(p, max_dim)
    cc = coloring_complex(n, m)
    try:
        table = betti_gf2(cc.complex, top, reduced=True, cap=cap)
    except CapExceeded as exc:
        report.inconclusive = True
        report.add("enumeration", False, str(exc))
        return report
    report.betti_z2, report.computed_up_to = table.betti, top
    report.add("reduced Z2 homology vanishes below p",
               not any(table.betti[:min(p, top + 1)]), f"reduced betti {table.betti}")
    if top < p:
        report.inconclusive = True
        report.add("degree p reached", False, f"capped at degree {top} < p = {p}")
        return report
    report.add("Z2 homology nonzero at p", table.betti[p] > 0, f"beta_{p} = {table.betti[p]}")
    conn = homology_connectivity(table)
    report.add("homology connectivity", conn == p - 1, f"expected {p - 1}, got {conn}")
    if integer:
        zt = betti_integer(cc.complex, p, reduced=True, cap=cap)
        vanish = not any(zt.betti[:p]) and not any(zt.torsion[:p])
        report.add("reduced integer homology vanishes below p", vanish,
                   f"free {zt.betti}, torsion {zt.torsion}")
        report.add("integer homology nonzero at p", zt.betti[p] > 0 or bool(zt.torsion[p]),
                   f"free {zt.betti[p]}, torsion {zt.torsion[p]}")
    inc = incidence_structure(n, m, path_cap, keep_paths=True)
    report.add("incidence columns", inc.check_columns().ok, inc.check_columns().detail)
    r = inc.rank()
    report.add("rank(A) < |C_p|", r < len(inc.rows), f"rank {r}, |C_p| = {len(inc.rows)}")
    crit = critical_simplices(enumerate_critical(n, m, max_dim=p + 1))
    report.add("no critical cells in dimensions 1..p-1",
               all(not crit[i] for i in range(1, p)) and len(crit[0]) == 1,
               f"census {[len(c) for c in crit]}")
    morse = _morse_betti_from(cc, crit, p)
    report.add("Morse Z2 homology nonzero at p", morse[p] > 0, f"Morse betti {morse}")
    report.extra["census"] = [len(c) for c in crit]
    return report


def _morse_betti_from(cc: ColoringComplex, crit, top, path_cap=DEFAULT_PATH_CAP):
    crit = [list(c) for c in crit[:top + 2]]
    while len(crit) < top + 2:
        crit.append([])
    r = [0] * (top + 2)
    for d in range(1, top + 2):
        r[d] = _bitset_rank(morse_boundary(cc.matching, crit, d, cap=path_cap).data)
    return [len(crit[i]) - r[i] - r[i + 1] for i in range(top + 1)]


def morse_betti_coloring(n: int, m: int, max_betti_dim: int | None = None,
                         path_cap: int = DEFAULT_PATH_CAP) -> list[int]:
    """Unreduced Z2 Betti numbers of the Morse complex from the closed-form census."""
    cc = coloring_complex(n, m)
    groups = critical_simplices(enumerate_critical(n, m))
    top = len(groups) - 1 if max_betti_dim is None else max_betti_dim
    return _morse_betti_from(cc, groups, top, path_cap)


def thm1_expected(n: int) -> list[int]:
    p = math.factorial(n) * (n - 1) * n // 2
    b = [0] * n
    b[0] = b[1] = 1
    b[n - 1] += 1
    b[2] += p - math.factorial(n) + 1
    return b


def verify_thm1(n: int, path_cap: int = DEFAULT_PATH_CAP) -> VerificationReport:
    """Z2 Morse homology of ``N(K_{n+1}^{K_n})`` against its closed form (``n >= 4``)."""
    report = VerificationReport(n, n + 1, "morse", predicted_connectivity(n, n + 1))
    if n < 4:
        report.inconclusive = True
        report.add("hypothesis n >= 4", False, "the closed form is stated only for n >= 4")
        return report
    expected = thm1_expected(n)
    cc = coloring_complex(n, n + 1)
    groups = enumerate_critical(n, n + 1)
    crit = critical_simplices(groups)
    top = len(crit) - 1
    try:
        betti = _morse_betti_from(cc, crit, top, path_cap)
    except CapExceeded as exc:
        report.inconclusive = True
        report.add("path enumeration", False, str(exc))
        return report
    width = max(len(betti), len(expected))
    betti += [0] * (width - len(betti))
    want = expected + [0] * (width - len(expected))
    report.betti_z2, report.computed_up_to = betti, width - 1
    report.add("Morse Z2 betti", betti == want, f"expected {want}, got {betti}")
    euler = sum((-1) ** d * len(c) for d, c in enumerate(crit))
    report.add("census Euler characteristic", euler == sum((-1) ** i * b for i, b in enumerate(want)),
               f"sum (-1)^i |C_i| = {euler}")
    report.extra["census"] = [len(c) for c in crit]
    return report


def scan_critical(n: int, m: int, max_dim: int, cap: int = DEFAULT_SIMPLEX_CAP,
                  cells=None) -> list[list[Simplex]]:
    """Critical cells found by querying the matching on every simplex."""
    cc = coloring_complex(n, m)
    return critical_cells_scan(cc.complex, cc.matching, max_dim, cap, cells=cells)


def check_matching(n: int, m: int, max_dim: int, cap: int = DEFAULT_SIMPLEX_CAP):
    """``(verify_matching, verify_acyclic, scanned critical cells)`` through ``max_dim``."""
    cc = coloring_complex(n, m)
    cells = cc.complex.enumerate_simplices(max_dim, cap)
    valid = verify_matching(cc.complex, cc.matching, max_dim, cells=cells)
    acyclic = verify_acyclic(cc.complex, cc.matching, max_dim, cells=cells)
    crit = critical_cells_scan(cc.complex, cc.matching, max_dim, cells=cells)
    return valid, acyclic, crit
