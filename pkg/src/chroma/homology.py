"""Exact linear algebra over GF(2) and Z, and simplicial Betti numbers.

Small matrices use :class:`Gf2Matrix` (rows are int bitsets).  Boundary
matrices of large complexes go through :func:`sparse_rank_gf2`, which first
strips weight-one rows and columns (pivots that cause no fill-in) and only
then runs bitset elimination on what is left.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from chroma.complex import DEFAULT_SIMPLEX_CAP, Simplex, SimplicialComplex, facets_of
from chroma.errors import CapExceeded

MINUS_INFINITY = "minus-infinity"
AT_LEAST_CAP = "at-least-cap"


class Gf2Matrix:
    """Dense matrix over GF(2); row ``i`` is an int whose bit ``j`` is entry ``(i, j)``."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[int] | None = None):
        data = [0] * rows if data is None else list(data)
        if len(data) != rows:
            raise ValueError(f"expected {rows} rows, got {len(data)}")
        limit = 1 << cols
        if any(r < 0 or r >= limit for r in data):
            raise ValueError("row data wider than the column count")
        self.rows, self.cols, self.data = rows, cols, data

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "Gf2Matrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        data = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
            data.append(sum(1 << j for j, x in enumerate(row) if x % 2))
        return cls(len(entries), cols, data)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Iterable[int]]) -> "Gf2Matrix":
        data = [0] * rows
        for j, col in enumerate(columns):
            for i in col:
                data[i] ^= 1 << j
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, k: int) -> "Gf2Matrix":
        return cls(k, k, [1 << i for i in range(k)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.data[i] >> j) & 1

    def column(self, j: int) -> list[int]:
        return [i for i, r in enumerate(self.data) if (r >> j) & 1]

    def column_weights(self) -> list[int]:
        return [len(self.column(j)) for j in range(self.cols)]

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_columns(self.cols, [[j for j in range(self.cols) if (r >> j) & 1]
                                                  for r in self.data])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"


def _bitset_rank(vectors: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                break
            v ^= p
    return len(pivots)


def rank_gf2(m: Gf2Matrix) -> int:
    return _bitset_rank(m.data)


def sparse_rank_gf2(n_rows: int, columns: Sequence[Sequence[int]]) -> int:
    """Rank over GF(2) of the matrix whose column ``j`` has ones at ``columns[j]``.

    Entries listed twice cancel.
    """
    cols: list[set[int]] = []
    rows: list[set[int]] = [set() for _ in range(n_rows)]
    for j, entries in enumerate(columns):
        s = set()
        for i in entries:
            s ^= {i}
        cols.append(s)
        for i in s:
            rows[i].add(j)

    rank = 0
    queue = [("c", j) for j, s in enumerate(cols) if len(s) == 1]
    queue += [("r", i) for i, s in enumerate(rows) if len(s) == 1]

    def drop(i, j):
        # pivot (i, j) is the only entry in its row or column: delete both lines
        for jj in rows[i]:
            if jj != j:
                cols[jj].discard(i)
                if len(cols[jj]) == 1:
                    queue.append(("c", jj))
        for ii in cols[j]:
            if ii != i:
                rows[ii].discard(j)
                if len(rows[ii]) == 1:
                    queue.append(("r", ii))
        rows[i] = set()
        cols[j] = set()

    while queue:
        kind, k = queue.pop()
        if kind == "c":
            if len(cols[k]) != 1:
                continue
            (i,) = cols[k]
            drop(i, k)
        else:
            if len(rows[k]) != 1:
                continue
            (j,) = rows[k]
            drop(k, j)
        rank += 1

    core_cols = [j for j, s in enumerate(cols) if s]
    if not core_cols:
        return rank
    # dense elimination on the residual core, indexing by the smaller side
    core_rows = sorted({i for j in core_cols for i in cols[j]})
    if len(core_rows) <= len(core_cols):
        pos = {i: b for b, i in enumerate(core_rows)}
        vecs = (sum(1 << pos[i] for i in cols[j]) for j in core_cols)
    else:
        pos = {j: b for b, j in enumerate(core_cols)}
        vecs = (sum(1 << pos[j] for j in rows[i]) for i in core_rows)
    return rank + _bitset_rank(vecs)


# -- integer matrices ------------------------------------------------------

class IntMatrix:
    """Dense integer matrix (Python ints, so no overflow)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[int]] | None = None):
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        data = [list(map(int, r)) for r in data]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("shape does not match data")
        self.rows, self.cols, self.data = rows, cols, data

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        k = len(values)
        return cls(k, k, [[values[i] if i == j else 0 for j in range(k)] for i in range(k)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"


def smith_normal_form(m: IntMatrix) -> tuple[list[int], int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` (positive) and the rank."""
    # sparse rows: {col: value}
    rows = []
    for r in m.data:
        d = {j: x for j, x in enumerate(r) if x}
        if d:
            rows.append(d)
    units, core = _eliminate_units(rows, m.cols)
    factors = [1] * units + _dense_snf(core)
    return factors, len(factors)


def _eliminate_units(rows: list[dict[int, int]], ncols: int) -> tuple[int, list[dict[int, int]]]:
    """Pivot on +-1 entries (cheapest row/column first); returns count and remainder."""
    col_index: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_index.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    while True:
        best = None
        for i in alive:
            r = rows[i]
            for j, x in r.items():
                if x in (1, -1):
                    cost = (len(r) - 1) * (len(col_index[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        prow = rows[pi]
        sign = prow[pj]
        for i in list(col_index[pj]):
            if i == pi:
                continue
            r = rows[i]
            f = r[pj] * sign  # r - f * prow clears column pj since sign**2 == 1
            for j, x in prow.items():
                nv = r.get(j, 0) - f * x
                if nv:
                    if j not in r:
                        col_index[j].add(i)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    col_index[j].discard(i)
            if not r:
                alive.discard(i)
        # column ops then clear the rest of the pivot row without touching other rows
        for j in prow:
            col_index[j].discard(pi)
        del col_index[pj]
        rows[pi] = {}
        alive.discard(pi)
        units += 1
    return units, [rows[i] for i in sorted(alive)]


def _dense_snf(sparse_rows: list[dict[int, int]]) -> list[int]:
    if not sparse_rows:
        return []
    cols = sorted({j for r in sparse_rows for j in r})
    pos = {j: k for k, j in enumerate(cols)}
    a = [[0] * len(cols) for _ in sparse_rows]
    for i, r in enumerate(sparse_rows):
        for j, x in r.items():
            a[i][pos[j]] = x
    nr, nc = len(a), len(cols)
    diag = []
    t = 0
    while t < min(nr, nc):
        # pivot: smallest nonzero absolute value in the trailing block
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # divisibility: fold any entry not divisible by the pivot into row t
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, nr):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, nc):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    # local normalisation above is not always enough for d_k | d_{k+1}; fix up with gcd/lcm
    return _normalise_diagonal(diag)


def _normalise_diagonal(diag: list[int]) -> list[int]:
    d = list(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
    return sorted(d)


# -- Betti numbers -----------------------------------------------------------

@dataclass
class BettiTable:
    coeff: str  # "gf2" or "z"
    reduced: bool
    betti: list[int]
    torsion: list[list[int]] = field(default_factory=list)
    computed_up_to: int = -1
    simplex_counts: list[int] = field(default_factory=list)
    empty_complex: bool = False

    def __post_init__(self):
        if not self.torsion:
            self.torsion = [[] for _ in self.betti]

    def to_dict(self) -> dict:
        return {"coeff": self.coeff, "reduced": self.reduced, "betti": self.betti,
                "torsion": self.torsion, "computed_up_to": self.computed_up_to}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "BettiTable":
        return cls(coeff=data["coeff"], reduced=data["reduced"], betti=list(data["betti"]),
                   torsion=[list(t) for t in data["torsion"]],
                   computed_up_to=data["computed_up_to"])

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))


def _boundary_columns(simplices: Sequence[Simplex], faces: Sequence[Simplex]) -> list[list[int]]:
    index = {s: i for i, s in enumerate(faces)}
    return [[index[f] for f in facets_of(s)] for s in simplices]


def boundary_matrix_gf2(cx: SimplicialComplex, i: int, reduced: bool = False,
                        cap: int = DEFAULT_SIMPLEX_CAP) -> Gf2Matrix:
    """Mod-2 boundary ``C_i -> C_{i-1}``: rows are ``(i-1)``-simplices, columns ``i``-simplices.

    With ``reduced``, dimension -1 holds the empty simplex, so ``i = 0``
    gives a single all-ones row.
    """
    if i < 0:
        return Gf2Matrix(0, 0)
    groups = cx.enumerate_simplices(i, cap)
    tops = groups[i] if len(groups) > i else []
    if i == 0:
        return Gf2Matrix.from_columns(1 if reduced else 0,
                                      [[0] if reduced else [] for _ in tops])
    return Gf2Matrix.from_columns(len(groups[i - 1]), _boundary_columns(tops, groups[i - 1]))


def _enumerate_for_betti(cx, top, cap):
    try:
        return cx.enumerate_simplices(top, cap)
    except CapExceeded as exc:
        raise CapExceeded("simplices", cap, exc.reached,
                          f"needed dimension {top} for Betti numbers up to {top - 1}") from None


def betti_gf2(cx: SimplicialComplex, max_betti_dim: int, reduced: bool = False,
              cap: int = DEFAULT_SIMPLEX_CAP) -> BettiTable:
    """Betti numbers over GF(2) in dimensions ``0..max_betti_dim``.

    Dimensions above ``computed_up_to`` are unknown, not zero.
    """
    groups = _enumerate_for_betti(cx, max_betti_dim + 1, cap)
    counts = [len(g) for g in groups]
    ranks = [0] * (max_betti_dim + 2)  # ranks[i] = rank of d_i
    for i in range(1, max_betti_dim + 2):
        ranks[i] = sparse_rank_gf2(counts[i - 1], _boundary_columns(groups[i], groups[i - 1]))
    nonempty = counts[0] > 0
    if reduced and nonempty:
        ranks[0] = 1
    betti = [counts[i] - ranks[i] - ranks[i + 1] for i in range(max_betti_dim + 1)]
    return BettiTable("gf2", reduced, betti, computed_up_to=max_betti_dim,
                      simplex_counts=counts, empty_complex=not nonempty)


def betti_integer(cx: SimplicialComplex, max_betti_dim: int, reduced: bool = False,
                  cap: int = DEFAULT_SIMPLEX_CAP) -> BettiTable:
    """Free ranks and torsion coefficients of integral homology via Smith normal form."""
    groups = _enumerate_for_betti(cx, max_betti_dim + 1, cap)
    counts = [len(g) for g in groups]
    factors: list[list[int]] = [[] for _ in range(max_betti_dim + 2)]
    for i in range(1, max_betti_dim + 2):
        factors[i] = _integer_boundary_factors(groups[i], groups[i - 1])
    nonempty = counts[0] > 0
    if reduced and nonempty:
        factors[0] = [1]
    ranks = [len(f) for f in factors]
    betti = [counts[i] - ranks[i] - ranks[i + 1] for i in range(max_betti_dim + 1)]
    torsion = [[d for d in factors[i + 1] if d > 1] for i in range(max_betti_dim + 1)]
    return BettiTable("z", reduced, betti, torsion, computed_up_to=max_betti_dim,
                      simplex_counts=counts, empty_complex=not nonempty)


def integer_boundary_matrix(simplices: Sequence[Simplex], faces: Sequence[Simplex]) -> IntMatrix:
    index = {s: i for i, s in enumerate(faces)}
    data = [[0] * len(simplices) for _ in faces]
    for j, s in enumerate(simplices):
        for k, f in enumerate(facets_of(s)):
            data[index[f]][j] = -1 if k % 2 else 1
    return IntMatrix(len(faces), len(simplices), data)


def _integer_boundary_factors(simplices, faces) -> list[int]:
    if not simplices or not faces:
        return []
    index = {s: i for i, s in enumerate(faces)}
    # rows of the transpose are sparse: one per simplex
    rows = []
    for s in simplices:
        rows.append({index[f]: (-1 if k % 2 else 1) for k, f in enumerate(facets_of(s))})
    units, core = _eliminate_units(rows, len(faces))
    return [1] * units + _dense_snf(core)


def homology_connectivity(table: BettiTable):
    """Largest ``k`` with reduced homology vanishing in all degrees ``<= k``.

    Returns :data:`MINUS_INFINITY` for the empty complex and
    :data:`AT_LEAST_CAP` when every computed degree vanishes.
    """
    if not table.reduced:
        raise ValueError("connectivity needs a reduced Betti table")
    if table.empty_complex:
        return MINUS_INFINITY
    for i, b in enumerate(table.betti):
        if b or table.torsion[i]:
            return i - 1
    return AT_LEAST_CAP
