"""One test per acceptance criterion, each under its time budget.

Every test prints a single ``criterion N: PASS|FAIL`` line; the same lines
are repeated in the terminal summary.  Run alone with
``pytest tests/test_acceptance.py -s``.
"""

import random
import time
from contextlib import contextmanager

import pytest

from chroma.coloring import (check_matching, coloring_complex, critical_simplices,
                             enumerate_critical, incidence_structure, morse_betti_coloring,
                             verify_main, verify_thm1)
from chroma.complex import (SimplicialComplex, neighborhood_complex, rp2, simplex_boundary)
from chroma.graph import (Graph, categorical_product, complete_graph, cycle_graph,
                          exponential_graph, fold_reduce, path_graph, reduced_exponential)
from chroma.homology import betti_gf2, betti_integer, homology_connectivity
from chroma.morse import (critical_cells_scan, euler_from_cells, greedy_acyclic_matching,
                          morse_betti_gf2, verify_acyclic, verify_matching)
from conftest import ACCEPTANCE_LOG


@contextmanager
def criterion(label, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        line = f"criterion {label}: {status} ({elapsed:.2f}s, limit {limit:g}s)"
        ACCEPTANCE_LOG.append(line)
        print(line)
    assert within, line


def sphere(d):
    return [2] if d == 0 else [1 if i in (0, d) else 0 for i in range(d + 1)]


def test_criterion_1_sphere_regime():
    with criterion("1 sphere regime", 5 * 1.0):
        for n, m in [(3, 2), (4, 2), (4, 3), (5, 3), (5, 4)]:
            start = time.perf_counter()
            g = fold_reduce(reduced_exponential(n, m))
            assert g.vertex_count == m
            cx = neighborhood_complex(g)
            z2 = betti_gf2(cx, m - 2)
            z = betti_integer(cx, m - 2)
            assert z2.betti == sphere(m - 2) == z.betti
            assert not any(z.torsion)
            assert time.perf_counter() - start < 1.0


def test_criterion_2_disconnected_regime():
    with criterion("2 disconnected regime", 5.0):
        for n in (3, 4):
            t = betti_gf2(neighborhood_complex(reduced_exponential(n, n)), 0)
            assert t.betti[0] >= 2


def test_criterion_3_product_regime():
    with criterion("3 product regime", 60.0):
        assert betti_gf2(neighborhood_complex(reduced_exponential(2, 3)), 2).betti == [1, 2, 1]
        assert betti_gf2(neighborhood_complex(reduced_exponential(2, 4)), 4).betti == \
            [1, 0, 2, 0, 1]
        full = exponential_graph(complete_graph(3), complete_graph(2))
        assert betti_gf2(neighborhood_complex(full), 2).betti == [1, 2, 1]


def test_criterion_4_matching_validity():
    with criterion("4 matching validity", 300.0):
        for n, m in [(3, 4), (3, 5)]:
            valid, acyclic, _ = check_matching(n, m, 3)
            assert valid.ok, valid.detail
            assert acyclic.ok, acyclic.detail


def test_criterion_5_critical_cells():
    with criterion("5 critical-cell census", 300.0):
        cc = coloring_complex(3, 4)
        top = len(cc.complex.enumerate_simplices(20)) - 1
        while not cc.complex.enumerate_simplices(top)[top]:
            top -= 1
        scanned = critical_cells_scan(cc.complex, cc.matching, top)
        closed = critical_simplices(enumerate_critical(3, 4))
        closed += [[] for _ in range(len(scanned) - len(closed))]
        assert [set(g) for g in scanned] == [set(g) for g in closed]


def test_criterion_6_incidence_structure():
    with criterion("6 incidence structure", 600.0):
        for n, m in [(3, 4), (3, 5)]:
            p = m - n
            inc = incidence_structure(n, m)
            cols = inc.check_columns()
            assert cols.ok, cols.detail
            assert (inc.exceptional_column() is not None) == (m - 2 == p + 1)
            assert inc.rank() < len(inc.rows)
            assert morse_betti_coloring(n, m, p)[p] > 0


def test_criterion_7_connectivity_values():
    with criterion("7 connectivity values", 1800.0):
        r = verify_main(3, 4, integer=True)
        assert r.passed, r.to_dict()
        cx = coloring_complex(3, 4).complex
        z2 = betti_gf2(cx, 1, reduced=True)
        z = betti_integer(cx, 1, reduced=True)
        assert z2.betti[0] == 0 and z2.betti[1] > 0
        assert z.betti[0] == 0 and not z.torsion[0] and (z.betti[1] > 0 or z.torsion[1])
        assert homology_connectivity(z2) == 0
        # simplices up to dimension 4, so reduced Betti numbers through degree 3
        big = betti_gf2(coloring_complex(3, 5).complex, 3, reduced=True)
        assert big.betti[:2] == [0, 0] and big.betti[2] > 0
        assert homology_connectivity(big) == 1
        r = verify_main(3, 5)
        assert r.passed and "homology" in r.note


def test_criterion_8_thm1_fixture():
    with criterion("8 thm1 fixture (stretch)", 7200.0):
        r = verify_thm1(4)
        assert not r.inconclusive
        assert r.betti_z2 == [1, 1, 121, 1], r.to_dict()


def random_complex(rnd, n_vertices=10):
    n = rnd.randint(1, n_vertices)
    facets = [rnd.sample(range(n), rnd.randint(1, min(n, 6))) for _ in range(rnd.randint(1, 10))]
    return SimplicialComplex.from_facets(facets, vertex_count=n)


def uct_fixtures():
    out = [(f"sphere {k - 1}", simplex_boundary(k)) for k in range(1, 5)]
    out.append(("RP2", rp2()))
    out.append(("N(C4)", neighborhood_complex(cycle_graph(4), "facets")))
    out.append(("N(K3^K2)", neighborhood_complex(
        exponential_graph(complete_graph(3), complete_graph(2)), "facets")))
    return out


def fold_corpus():
    rnd = random.Random(2024)
    graphs = [path_graph(5), cycle_graph(4), cycle_graph(5), cycle_graph(6), complete_graph(4),
              categorical_product(complete_graph(2), complete_graph(3)),
              categorical_product(complete_graph(2), complete_graph(4)),
              Graph(3, [(0, 0), (0, 1), (1, 2)]), Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])]
    while len(graphs) < 20:
        n = rnd.randint(4, 12)
        pairs = [(u, v) for u in range(n) for v in range(u, n)]
        edges = [e for e in pairs if rnd.random() < 0.3 and (e[0] != e[1] or rnd.random() < 0.3)]
        graphs.append(Graph(n, edges))
    return graphs


def test_criterion_9_property_suites():
    with criterion("9 property suites", 600.0):
        rnd = random.Random(9)
        trials = 0
        for _ in range(250):
            cx = random_complex(rnd)
            top = max(len(f) for f in cx.facets) - 1
            m = greedy_acyclic_matching(cx, random.Random(rnd.random()))
            assert verify_matching(cx, m, top).ok and verify_acyclic(cx, m, top).ok
            crit = critical_cells_scan(cx, m, top)
            # (a) Morse equals simplicial Betti in every dimension
            assert morse_betti_gf2(cx, m, top, crit=crit).betti == betti_gf2(cx, top).betti
            # (b) matched pairs cancel in the Euler characteristic
            assert euler_from_cells(crit) == euler_from_cells(cx.enumerate_simplices(top))
            trials += 1
        assert trials >= 200
        cc = coloring_complex(3, 4)
        cells = cc.complex.enumerate_simplices(8)
        assert euler_from_cells(critical_cells_scan(cc.complex, cc.matching, 8, cells=cells)) == \
            euler_from_cells(cells)
        # (c) universal coefficients: gf2_i = free_i + t2_i + t2_{i-1}
        for name, cx in uct_fixtures():
            top = max(len(f) for f in cx.facets) - 1
            z2, z = betti_gf2(cx, top), betti_integer(cx, top)
            even = [sum(1 for d in t if d % 2 == 0) for t in z.torsion]
            for i in range(top + 1):
                assert z2.betti[i] == z.betti[i] + even[i] + (even[i - 1] if i else 0), name
        # (d) folding does not change Betti numbers
        for g in fold_corpus():
            a = betti_gf2(neighborhood_complex(g), 3)
            b = betti_gf2(neighborhood_complex(fold_reduce(g)), 3)
            assert a.betti == b.betti


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
