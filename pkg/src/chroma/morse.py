"""Discrete Morse theory on the nonempty face poset of a simplicial complex.

A matching is any callable ``simplex -> MatchStatus``.  The Morse complex
has one generator per critical cell; its boundary counts alternating paths

    tau > y_1 < mu(y_1) > y_2 < ... < mu(y_t) > sigma

mod 2 (or with signs, when ``signed=True``).  No extra 0-cell is added:
the empty simplex is not part of the poset.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from chroma.complex import DEFAULT_SIMPLEX_CAP, Simplex, SimplicialComplex, facets_of
from chroma.errors import CapExceeded
from chroma.homology import BettiTable, Gf2Matrix, IntMatrix, _bitset_rank, smith_normal_form

DEFAULT_PATH_CAP = 1_000_000


@dataclass(frozen=True)
class MatchStatus:
    kind: str  # "critical", "up" or "down"
    partner: Simplex | None = None

    @property
    def is_critical(self) -> bool:
        return self.kind == "critical"

    def __repr__(self) -> str:
        if self.kind == "critical":
            return "Critical"
        return f"Matched{self.kind.capitalize()}({self.partner})"


CRITICAL = MatchStatus("critical")


def matched_up(partner: Simplex) -> MatchStatus:
    return MatchStatus("up", tuple(partner))


def matched_down(partner: Simplex) -> MatchStatus:
    return MatchStatus("down", tuple(partner))


MatchingOracle = Callable[[Simplex], MatchStatus]


class PairMatching:
    """Matching given by explicit ``(lower, upper)`` pairs; everything else is critical."""

    def __init__(self, pairs: Iterable[tuple[Simplex, Simplex]] = ()):
        self.status: dict[Simplex, MatchStatus] = {}
        for lo, hi in pairs:
            self.add(lo, hi)

    def add(self, lo: Simplex, hi: Simplex) -> None:
        lo, hi = tuple(lo), tuple(hi)
        self.status[lo] = matched_up(hi)
        self.status[hi] = matched_down(lo)

    def remove(self, lo: Simplex, hi: Simplex) -> None:
        del self.status[tuple(lo)], self.status[tuple(hi)]

    def __call__(self, simplex: Simplex) -> MatchStatus:
        return self.status.get(tuple(simplex), CRITICAL)


class MappingMatching:
    """Raw ``simplex -> MatchStatus`` table, with no consistency enforced."""

    def __init__(self, table: Mapping[Simplex, MatchStatus]):
        self.table = dict(table)

    def __call__(self, simplex: Simplex) -> MatchStatus:
        return self.table.get(tuple(simplex), CRITICAL)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.ok, "detail": self.detail}


def _is_facet(lo: Simplex, hi: Simplex) -> bool:
    return len(hi) == len(lo) + 1 and set(lo) <= set(hi)


def verify_matching(cx: SimplicialComplex, matching: MatchingOracle, max_dim: int,
                    cap: int = DEFAULT_SIMPLEX_CAP, cells=None) -> CheckResult:
    """Partner relations are covering pairs inside ``cx`` and the status is involutive."""
    groups = cells if cells is not None else cx.enumerate_simplices(max_dim, cap)
    for group in groups:
        for s in group:
            st = matching(s)
            if st.kind == "critical":
                continue
            if st.kind not in ("up", "down"):
                return CheckResult("matching", False, f"unknown status {st.kind!r}", s)
            p = st.partner
            lo, hi = (s, p) if st.kind == "up" else (p, s)
            if not _is_facet(lo, hi):
                return CheckResult("matching", False,
                                   f"{s} partner {p} is not a covering face", (s, p))
            if not lo or not cx.contains(p):
                return CheckResult("matching", False,
                                   f"{s} partner {p} is not a nonempty simplex", (s, p))
            back = matching(p)
            want = "down" if st.kind == "up" else "up"
            if back.kind != want or back.partner != s:
                return CheckResult("matching", False,
                                   f"{s} -> {p} but {p} -> {back}", (s, p, back))
    return CheckResult("matching", True, f"checked dimensions 0..{max_dim}")


def verify_acyclic(cx: SimplicialComplex, matching: MatchingOracle, max_dim: int,
                   cap: int = DEFAULT_SIMPLEX_CAP, cells=None) -> CheckResult:
    """No closed alternating path, checked one dimension layer at a time.

    In layer ``k`` the digraph has an arc ``y -> y'`` when ``y`` is matched up
    and ``y' != y`` is a matched-up facet of ``mu(y)``; any cycle of the full
    modified Hasse diagram lives in one such layer.
    """
    groups = cells if cells is not None else cx.enumerate_simplices(max_dim, cap)
    for k, group in enumerate(groups):
        up = {}
        for s in group:
            st = matching(s)
            if st.kind == "up":
                up[s] = st.partner
        cycle = _find_cycle(up)
        if cycle is not None:
            path = []
            for y in cycle:
                path += [y, up[y]]
            return CheckResult("acyclic", False,
                               f"cycle of length {len(cycle)} in layer {k}", path)
    return CheckResult("acyclic", True, f"checked layers 0..{len(groups) - 1}")


def _find_cycle(up: dict[Simplex, Simplex]):
    def succ(y):
        return [f for f in facets_of(up[y]) if f != y and f in up]

    color: dict[Simplex, int] = {}
    for root in up:
        if root in color:
            continue
        color[root] = 1
        stack = [(root, iter(succ(root)))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color.get(nxt) == 1:
                nodes = [n for n, _ in stack]
                return nodes[nodes.index(nxt):]
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(succ(nxt))))
    return None


def critical_cells_scan(cx: SimplicialComplex, matching: MatchingOracle, max_dim: int,
                        cap: int = DEFAULT_SIMPLEX_CAP, cells=None) -> list[list[Simplex]]:
    groups = cells if cells is not None else cx.enumerate_simplices(max_dim, cap)
    return [[s for s in g if matching(s).is_critical] for g in groups]


@dataclass(frozen=True)
class AlternatingPath:
    """``cells = (tau, y_1, mu(y_1), ..., y_t, mu(y_t), sigma)``."""

    cells: tuple[Simplex, ...]

    @property
    def t(self) -> int:
        return (len(self.cells) - 2) // 2

    @property
    def source(self) -> Simplex:
        return self.cells[0]

    @property
    def target(self) -> Simplex:
        return self.cells[-1]

    def matched_pairs(self) -> list[tuple[Simplex, Simplex]]:
        c = self.cells
        return [(c[1 + 2 * i], c[2 + 2 * i]) for i in range(self.t)]

    def validate(self, matching: MatchingOracle) -> CheckResult:
        c = self.cells
        if len(c) < 2 or len(c) % 2:
            return CheckResult("path", False, "wrong number of cells", self)
        tops = [c[0]] + [hi for _, hi in self.matched_pairs()]
        lows = [lo for lo, _ in self.matched_pairs()] + [c[-1]]
        for top, low in zip(tops, lows):
            if not _is_facet(low, top):
                return CheckResult("path", False, f"{low} is not a facet of {top}", self)
        prev = None
        for lo, hi in self.matched_pairs():
            if matching(lo) != matched_up(hi):
                return CheckResult("path", False, f"{lo} is not matched up to {hi}", self)
            if lo == prev:
                return CheckResult("path", False, f"{lo} repeats the removed cell", self)
            prev = lo
        if c[-1] == prev:
            return CheckResult("path", False, "target repeats the removed cell", self)
        return CheckResult("path", True)


def alternating_paths(cx: SimplicialComplex, matching: MatchingOracle, tau: Simplex,
                      sigma: Simplex, cap: int = DEFAULT_PATH_CAP) -> list[AlternatingPath]:
    """All alternating paths from critical ``tau`` down to critical ``sigma``."""
    tau, sigma = tuple(tau), tuple(sigma)
    if len(tau) != len(sigma) + 1:
        raise ValueError("dim tau must be dim sigma + 1")
    if not matching(sigma).is_critical:
        raise ValueError("alternating paths join critical cells")
    return [p for p in alternating_paths_from(cx, matching, tau, cap) if p.target == sigma]


def alternating_paths_from(cx: SimplicialComplex, matching: MatchingOracle, tau: Simplex,
                           cap: int = DEFAULT_PATH_CAP) -> list[AlternatingPath]:
    """Every alternating path from critical ``tau`` to any critical cell one dimension down."""
    tau = tuple(tau)
    if not matching(tau).is_critical:
        raise ValueError("alternating paths start at a critical cell")
    found: list[AlternatingPath] = []
    visits = 0
    stack = [((tau,), tau)]
    while stack:
        cells, top = stack.pop()
        prev = cells[-2] if len(cells) > 1 else None
        for y in facets_of(top):
            visits += 1
            if visits > cap:
                raise CapExceeded("path steps", cap, visits, f"enumerating paths from {tau}")
            if y == prev or not y:
                continue
            st = matching(y)
            if st.is_critical:
                found.append(AlternatingPath(cells + (y,)))
            elif st.kind == "up":
                if st.partner in cells:
                    raise ValueError(f"matching is not acyclic near {y}")
                stack.append((cells + (y, st.partner), st.partner))
    found.sort(key=lambda p: p.cells)
    return found


def path_count_mod2(cx: SimplicialComplex, matching: MatchingOracle, tau: Simplex,
                    sigma: Simplex, cap: int = DEFAULT_PATH_CAP) -> int:
    return len(alternating_paths(cx, matching, tau, sigma, cap)) % 2


def incidence(face: Simplex, simplex: Simplex) -> int:
    """Oriented simplicial incidence ``[simplex : face]``."""
    if _is_facet(face, simplex):
        for k, v in enumerate(simplex):
            if v not in face:
                return -1 if k % 2 else 1
    raise ValueError(f"{face} is not a facet of {simplex}")


def _reach(matching, crit_index, cache, y, signed, cap_state):
    """Weighted path counts from matched-up ``y`` to critical cells one level down.

    The value is ``{index: weight}`` summed over paths ``y < mu(y) > ...``,
    including the factor ``-[mu(y):y]`` for this pair (signed mode) or mod 2.
    """
    if y in cache:
        return cache[y]

    def pending(node):
        out = []
        for f in facets_of(matching(node).partner):
            if f != node and f and f not in crit_index and f not in cache:
                if matching(f).kind == "up":
                    out.append(f)
        return iter(out)

    active = {y}
    stack = [(y, pending(y))]
    while stack:
        node, it = stack[-1]
        nxt = next(it, None)
        if nxt is not None:
            if nxt in active:
                raise ValueError(f"matching is not acyclic near {nxt}")
            if nxt not in cache:
                active.add(nxt)
                stack.append((nxt, pending(nxt)))
            continue
        stack.pop()
        active.discard(node)
        cap_state[0] += 1
        if cap_state[0] > cap_state[1]:
            raise CapExceeded("path cells", cap_state[1], cap_state[0])
        top = matching(node).partner
        acc = _combine(matching, crit_index, cache, top, node, signed)
        if signed:
            pre = -incidence(node, top)
            acc = {k: pre * v for k, v in acc.items()}
        cache[node] = acc
    return cache[y]


def _combine(matching, crit_index, cache, top, skip, signed):
    acc: dict[int, int] = {}
    for f in facets_of(top):
        if f == skip or not f:
            continue
        w = incidence(f, top) if signed else 1
        if f in crit_index:
            _add(acc, crit_index[f], w, signed)
        elif f in cache:
            for k, v in cache[f].items():
                _add(acc, k, w * v, signed)
    return acc


def _add(acc, k, v, signed):
    if signed:
        nv = acc.get(k, 0) + v
    else:
        nv = (acc.get(k, 0) + v) % 2
    if nv:
        acc[k] = nv
    else:
        acc.pop(k, None)


def morse_boundary(matching: MatchingOracle, crit: Sequence[Sequence[Simplex]], d: int,
                   signed: bool = False, cap: int = DEFAULT_PATH_CAP):
    """Morse boundary ``C_d -> C_{d-1}``; rows are ``C_{d-1}``, columns ``C_d``.

    Returns a :class:`Gf2Matrix` (path counts mod 2) or, with ``signed``,
    an :class:`IntMatrix` of summed path weights.
    """
    lows = list(crit[d - 1]) if d >= 1 and d - 1 < len(crit) else []
    highs = list(crit[d]) if d < len(crit) else []
    crit_index = {s: i for i, s in enumerate(lows)}
    cache: dict[Simplex, dict[int, int]] = {}
    state = [0, cap]
    columns = []
    for tau in highs:
        for f in facets_of(tau):
            if f and f not in crit_index and matching(f).kind == "up":
                _reach(matching, crit_index, cache, f, signed, state)
        columns.append(_combine(matching, crit_index, cache, tau, None, signed))
    if signed:
        data = [[col.get(i, 0) for col in columns] for i in range(len(lows))]
        return IntMatrix(len(lows), len(highs), data)
    return Gf2Matrix.from_columns(len(lows), [sorted(col) for col in columns])


def morse_boundary_gf2(cx: SimplicialComplex, matching: MatchingOracle,
                       crit: Sequence[Sequence[Simplex]],
                       cap: int = DEFAULT_PATH_CAP) -> list[Gf2Matrix]:
    """Mod-2 Morse boundaries; entry ``d`` of the list maps ``C_d -> C_{d-1}``."""
    return [Gf2Matrix(0, len(crit[0]) if crit else 0)] + [
        morse_boundary(matching, crit, d, cap=cap) for d in range(1, len(crit))]


def morse_betti_gf2(cx: SimplicialComplex, matching: MatchingOracle, max_betti_dim: int,
                    crit: Sequence[Sequence[Simplex]] | None = None, reduced: bool = False,
                    cap: int = DEFAULT_SIMPLEX_CAP, path_cap: int = DEFAULT_PATH_CAP) -> BettiTable:
    """Betti numbers of the Morse complex over GF(2).

    ``crit`` must list every critical cell in dimensions ``0..max_betti_dim+1``;
    if omitted it is found by scanning ``cx``.
    """
    if crit is None:
        crit = critical_cells_scan(cx, matching, max_betti_dim + 1, cap)
    crit = [list(c) for c in crit[:max_betti_dim + 2]]
    while len(crit) < max_betti_dim + 2:
        crit.append([])
    counts = [len(c) for c in crit]
    ranks = [0] * (max_betti_dim + 2)
    for d in range(1, max_betti_dim + 2):
        ranks[d] = _bitset_rank(morse_boundary(matching, crit, d, cap=path_cap).data)
    if reduced and counts[0]:
        ranks[0] = 1
    betti = [counts[i] - ranks[i] - ranks[i + 1] for i in range(max_betti_dim + 1)]
    return BettiTable("gf2", reduced, betti, computed_up_to=max_betti_dim,
                      simplex_counts=counts, empty_complex=not counts[0])


def morse_betti_integer(cx: SimplicialComplex, matching: MatchingOracle, max_betti_dim: int,
                        crit: Sequence[Sequence[Simplex]] | None = None,
                        cap: int = DEFAULT_SIMPLEX_CAP,
                        path_cap: int = DEFAULT_PATH_CAP) -> BettiTable:
    """Integral homology of the signed Morse complex."""
    if crit is None:
        crit = critical_cells_scan(cx, matching, max_betti_dim + 1, cap)
    crit = [list(c) for c in crit[:max_betti_dim + 2]]
    while len(crit) < max_betti_dim + 2:
        crit.append([])
    counts = [len(c) for c in crit]
    factors = [[] for _ in range(max_betti_dim + 2)]
    for d in range(1, max_betti_dim + 2):
        factors[d], _ = smith_normal_form(morse_boundary(matching, crit, d, True, path_cap))
    ranks = [len(f) for f in factors]
    betti = [counts[i] - ranks[i] - ranks[i + 1] for i in range(max_betti_dim + 1)]
    torsion = [[x for x in factors[i + 1] if x > 1] for i in range(max_betti_dim + 1)]
    return BettiTable("z", False, betti, torsion, computed_up_to=max_betti_dim,
                      simplex_counts=counts)


# -- building matchings --------------------------------------------------------

def cone_matching(cx: SimplicialComplex, apex: int, max_dim: int | None = None) -> PairMatching:
    """Pair ``s`` with ``s + {apex}`` for every nonempty ``s`` avoiding the apex."""
    if max_dim is None:
        max_dim = max(len(f) for f in cx.facets) - 1
    m = PairMatching()
    for group in cx.enumerate_simplices(max_dim):
        for s in group:
            if apex not in s:
                m.add(s, tuple(sorted(s + (apex,))))
    return m


def greedy_acyclic_matching(cx: SimplicialComplex, rng: random.Random,
                            max_dim: int | None = None) -> PairMatching:
    """Random maximal-ish acyclic matching: try covering pairs in random order."""
    if max_dim is None:
        max_dim = max((len(f) for f in cx.facets), default=0) - 1
    groups = cx.enumerate_simplices(max_dim)
    pairs = [(f, s) for k in range(1, len(groups)) for s in groups[k]
             for f in facets_of(s)]
    rng.shuffle(pairs)
    m = PairMatching()
    for lo, hi in pairs:
        if lo in m.status or hi in m.status:
            continue
        m.add(lo, hi)
        layer = {s: st.partner for s, st in m.status.items()
                 if st.kind == "up" and len(s) == len(lo)}
        if _find_cycle(layer) is not None:
            m.remove(lo, hi)
    return m


def euler_from_cells(cells: Sequence[Sequence[Simplex]]) -> int:
    return sum((-1) ** d * len(c) for d, c in enumerate(cells))


@dataclass
class MorseReport:
    critical: dict[int, int]
    boundary_ranks: list[int]
    betti: list[int]
    acyclic: bool
    witness: object = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"critical": {str(k): v for k, v in self.critical.items()},
                "boundary_ranks": self.boundary_ranks, "betti": self.betti,
                "acyclic": self.acyclic,
                "witness": None if self.witness is None else _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (int, str, float, bool)) or obj is None:
        return obj
    return repr(obj)


def morse_report(cx: SimplicialComplex, matching: MatchingOracle, max_dim: int,
                 cap: int = DEFAULT_SIMPLEX_CAP, path_cap: int = DEFAULT_PATH_CAP) -> MorseReport:
    """Scan, check and compute Morse homology through dimension ``max_dim - 1``."""
    cells = cx.enumerate_simplices(max_dim, cap)
    check = verify_matching(cx, matching, max_dim, cells=cells)
    if check.ok:
        check = verify_acyclic(cx, matching, max_dim, cells=cells)
    crit = critical_cells_scan(cx, matching, max_dim, cells=cells)
    if not check.ok:
        return MorseReport({d: len(c) for d, c in enumerate(crit)}, [], [], False, check.witness)
    ranks = [_bitset_rank(morse_boundary(matching, crit, d, cap=path_cap).data)
             for d in range(1, len(crit))]
    r = [0] + ranks + [0]
    betti = [len(crit[i]) - r[i] - r[i + 1] for i in range(len(crit) - 1)]
    return MorseReport({d: len(c) for d, c in enumerate(crit)}, ranks, betti, True)
