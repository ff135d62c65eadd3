import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from chroma.complex import (SimplicialComplex, full_simplex, neighborhood_complex, rp2,
                            simplex_boundary)
from chroma.errors import CapExceeded
from chroma.graph import Graph, cycle_graph, reduced_exponential
from chroma.homology import (AT_LEAST_CAP, MINUS_INFINITY, BettiTable, Gf2Matrix, IntMatrix,
                             betti_gf2, betti_integer, boundary_matrix_gf2, homology_connectivity,
                             integer_boundary_matrix, rank_gf2, smith_normal_form,
                             sparse_rank_gf2)
from oracles import (brute_betti_gf2, invariant_factors_by_minors, numpy_rank_gf2,
                     span_rank_gf2)
from strategies import complexes

bit_matrices = st.integers(0, 9).flatmap(
    lambda r: st.integers(0, 9).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_rank_examples():
    assert rank_gf2(Gf2Matrix.identity(3)) == 3
    assert rank_gf2(Gf2Matrix(4, 5)) == 0
    assert rank_gf2(Gf2Matrix.from_dense([[1] * 4] * 4)) == 1


@settings(max_examples=200, deadline=None)
@given(bit_matrices)
def test_rank_against_span(rows):
    m = Gf2Matrix.from_dense(rows, cols=len(rows[0]) if rows else 0)
    assert rank_gf2(m) == span_rank_gf2(rows)
    cols = [[i for i, r in enumerate(rows) if r[j]] for j in range(m.cols)]
    assert sparse_rank_gf2(m.rows, cols) == span_rank_gf2(rows)


@settings(max_examples=100, deadline=None)
@given(bit_matrices, st.randoms(use_true_random=False))
def test_rank_permutation_invariant(rows, rnd):
    if not rows or not rows[0]:
        return
    r = rank_gf2(Gf2Matrix.from_dense(rows))
    perm_rows = rows[:]
    rnd.shuffle(perm_rows)
    order = list(range(len(rows[0])))
    rnd.shuffle(order)
    shuffled = [[row[j] for j in order] for row in perm_rows]
    assert rank_gf2(Gf2Matrix.from_dense(shuffled)) == r
    assert rank_gf2(Gf2Matrix.from_dense(rows).transpose()) == r


def test_sparse_rank_large_random():
    rnd = random.Random(7)
    rows, ncols = 300, 400
    cols = [sorted(rnd.sample(range(rows), rnd.randint(1, 4))) for _ in range(ncols)]
    dense = [[0] * ncols for _ in range(rows)]
    for j, c in enumerate(cols):
        for i in c:
            dense[i][j] = 1
    assert sparse_rank_gf2(rows, cols) == numpy_rank_gf2(dense)


def test_boundary_matrix_examples():
    tri = simplex_boundary(2)
    d1 = boundary_matrix_gf2(tri, 1)
    assert d1.shape == (3, 3) and d1.column_weights() == [2, 2, 2] and rank_gf2(d1) == 2
    d0 = boundary_matrix_gf2(tri, 0, reduced=True)
    assert d0.to_dense() == [[1, 1, 1]]
    # rows index the (i-1)-simplices, so one vertex and no edges gives 1 x 0
    assert boundary_matrix_gf2(full_simplex(0), 1).shape == (1, 0)


@pytest.mark.parametrize("cx,top,want", [
    (simplex_boundary(2), 1, [1, 1]),
    (simplex_boundary(4), 3, [1, 0, 0, 1]),
    (neighborhood_complex(cycle_graph(4)), 1, [2, 0]),
    (rp2(), 2, [1, 1, 1]),
])
def test_betti_gf2_examples(cx, top, want):
    assert betti_gf2(cx, top).betti == want


def test_betti_marks_computed_range():
    t = betti_gf2(simplex_boundary(3), 1)
    assert t.computed_up_to == 1 and t.betti == [1, 0]
    with pytest.raises(CapExceeded, match="dimension"):
        betti_gf2(neighborhood_complex(reduced_exponential(3, 4)), 3, cap=200)


@pytest.mark.parametrize("diag,want", [((2, 3), [1, 6]), ((4, 6), [2, 12]), ((0, 5), [5])])
def test_snf_diagonal(diag, want):
    assert smith_normal_form(IntMatrix.diag(diag)) == (want, len(want))


def test_snf_zero():
    assert smith_normal_form(IntMatrix(3, 2)) == ([], 0)


small_int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(small_int_matrices)
def test_snf_against_minors(rows):
    factors, rank = smith_normal_form(IntMatrix.from_rows(rows))
    assert factors == invariant_factors_by_minors(rows)
    assert rank == len(factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


def test_rp2_torsion():
    t = betti_integer(rp2(), 2)
    assert t.betti == [1, 0, 0] and t.torsion == [[], [2], []]
    groups = rp2().enumerate_simplices(2)
    factors, _ = smith_normal_form(integer_boundary_matrix(groups[2], groups[1]))
    assert 2 in factors


@pytest.mark.parametrize("cx,top,free", [
    (simplex_boundary(3), 2, [1, 0, 1]),
    (neighborhood_complex(reduced_exponential(2, 3)), 2, [1, 2, 1]),
])
def test_betti_integer_examples(cx, top, free):
    t = betti_integer(cx, top)
    assert t.betti == free and not any(t.torsion)


def test_integer_boundary_squares_to_zero():
    groups = rp2().enumerate_simplices(2)
    d1 = integer_boundary_matrix(groups[1], groups[0]).data
    d2 = integer_boundary_matrix(groups[2], groups[1]).data
    for i in range(len(d1)):
        for j in range(len(d2[0])):
            assert sum(d1[i][k] * d2[k][j] for k in range(len(d2))) == 0


def test_connectivity():
    def table(betti):
        return BettiTable("gf2", True, betti, computed_up_to=len(betti) - 1)

    assert homology_connectivity(table([0, 0, 1])) == 1
    assert homology_connectivity(table([1, 0])) == -1
    assert homology_connectivity(table([0, 0])) == AT_LEAST_CAP
    empty = betti_gf2(neighborhood_complex(Graph(2)), 1, reduced=True)
    assert homology_connectivity(empty) == MINUS_INFINITY
    with pytest.raises(ValueError):
        homology_connectivity(BettiTable("gf2", False, [1]))


def test_reduced_shifts_degree_zero():
    assert betti_gf2(simplex_boundary(2), 1, reduced=True).betti == [0, 1]
    assert betti_integer(simplex_boundary(1), 0, reduced=True).betti == [1]


def test_betti_json():
    t = betti_integer(rp2(), 2)
    data = json.loads(t.to_json())
    assert set(data) == {"coeff", "reduced", "betti", "torsion", "computed_up_to"}
    assert BettiTable.from_dict(data).to_dict() == t.to_dict()


@settings(max_examples=120, deadline=None)
@given(complexes())
def test_betti_against_dense_oracle(cx):
    groups = cx.enumerate_simplices(4)
    assert betti_gf2(cx, 3).betti == brute_betti_gf2(groups, 3)


@settings(max_examples=120, deadline=None)
@given(complexes())
def test_euler_characteristic(cx):
    # facets have at most four vertices, so degrees 0..3 see everything
    t = betti_gf2(cx, 3)
    counts = t.simplex_counts[:4]
    assert t.euler_characteristic() == sum((-1) ** i * c for i, c in enumerate(counts))
