import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from localarc.arcs import ArcBlock, FourLocalArc, build, expected_size
from localarc.gf import field_new, prime_power
from localarc.io import field_for_q
from localarc.linalg import mat_vec, null_space_basis, rank, row_reduce
from localarc.lrc import (
    LineQuadruple,
    ParityCheckMatrix,
    arc_to_parity,
    code_params,
    dependency_search,
    group_columns,
    length_upper_bound,
    min_distance,
    quadruple_of_group,
    quadruples_ok,
    singleton_defect,
    verify_locality,
)
from localarc.plane import ProjPoint, proj_point

import worked_examples as pd


# --- independent oracles ------------------------------------------------------


class _Oracle:
    """Field arithmetic by carry-less multiplication (p = 2) or integers mod p."""

    def __init__(self, F):
        self.p, self.q = F.p, F.q
        self.mod = sum(c << i for i, c in enumerate(F.modulus)) if F.p == 2 else None
        if F.p != 2:
            assert F.r == 1

    def add(self, a, b):
        return a ^ b if self.p == 2 else (a + b) % self.p

    def neg(self, a):
        return a if self.p == 2 else -a % self.p

    def mul(self, a, b):
        if self.p != 2:
            return a * b % self.p
        deg = self.mod.bit_length() - 1
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> deg & 1:
                a ^= self.mod
        return out

    def inv(self, a):
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)

    def rank(self, cols):
        rows = [list(r) for r in zip(*cols)]
        rk, ncol = 0, len(cols)
        for c in range(ncol):
            piv = next((r for r in range(rk, len(rows)) if rows[r][c]), None)
            if piv is None:
                continue
            rows[rk], rows[piv] = rows[piv], rows[rk]
            s = self.inv(rows[rk][c])
            rows[rk] = [self.mul(s, x) for x in rows[rk]]
            for r in range(len(rows)):
                if r != rk and rows[r][c]:
                    f = self.neg(rows[r][c])
                    rows[r] = [self.add(x, self.mul(f, y)) for x, y in zip(rows[r], rows[rk])]
            rk += 1
        return rk


def brute_min_distance(F, H, cap):
    orc = _Oracle(F)
    cols = [tuple(int(x) for x in col) for col in np.asarray(H).T]
    for w in range(1, cap + 1):
        for sub in itertools.combinations(cols, w):
            if orc.rank(list(sub)) < w:
                return w
    return None


def bound_oracle(q):
    # largest integer t with 24 t <= 7q + 3 + sqrt(D), by squaring
    D = 24 * q**3 + q**2 - 6 * q - 63
    t = 0
    while True:
        lhs = 24 * (t + 1) - 7 * q - 3
        if lhs > 0 and lhs * lhs > D:
            return 4 * t
        t += 1


def _pcm(q):
    return ParityCheckMatrix(pd.FIELDS[q](), len(pd.BLOCKS[q]), pd.parity_matrix(q))


# --- synthesis ----------------------------------------------------------------


def test_group_columns_gf7_example():
    F = pd.gf7()
    block = [(1, 1, 1), (1, 1, 6), (1, 6, 1), (1, 6, 6)]
    u, v, w = group_columns(F, block)
    expect = [(6, 0, 1), (6, 1, 0), (0, 1, 1)]
    c = F.div(u[0], 6)
    assert c != 0
    assert [u, v, w] == [tuple(F.mul(c, x) for x in col) for col in expect]


@pytest.mark.parametrize("q", [7, 8, 9])
def test_group_columns_match_worked_example_first_group(q):
    F = pd.FIELDS[q]()
    cols = group_columns(F, pd.blocks(q)[0])
    fixture = pd.parity_matrix(q)
    m = len(pd.BLOCKS[q])
    lower = fixture[m:, 1:4].T.tolist()
    c = next(F.div(a, b) for a, b in zip(cols[0] + cols[1] + cols[2], sum(lower, [])) if b)
    assert [list(col) for col in cols] == [[F.mul(c, x) for x in col] for col in lower]


def test_group_columns_rejects_non_arc():
    F = pd.gf7()
    with pytest.raises(AssertionError):
        group_columns(F, [(1, 0, 0), (1, 1, 0), (1, 3, 3), (1, 2, 0)])


@pytest.mark.parametrize("q", [7, 8, 9])
def test_parity_matrix_matches_worked_example(q):
    F = pd.FIELDS[q]()
    arc = FourLocalArc(F, tuple(ArcBlock(tuple(b)) for b in pd.blocks(q)))
    H = arc_to_parity(arc)
    fixture = pd.parity_matrix(q)
    m = arc.m
    assert H.matrix.shape == fixture.shape
    assert np.array_equal(H.upper, fixture[:m])
    assert pd.lower_matches_up_to_group_scalars(F, H.matrix, fixture, m)


@pytest.mark.parametrize("q", [7, 8, 9])
def test_constructed_parity_matrix_matches_worked_example(q):
    F = pd.FIELDS[q]()
    H = arc_to_parity(build(F))
    fixture = pd.parity_matrix(q)
    assert np.array_equal(H.upper, fixture[: H.groups])
    assert pd.lower_matches_up_to_group_scalars(F, H.matrix, fixture, H.groups)


def test_arc_to_parity_shape_and_single_block():
    H = arc_to_parity(build(pd.gf8()))
    assert H.matrix.shape == (7, 16)
    assert H.n - rank(H.field, H.matrix) == 9
    assert (H.groups, H.lower_rows) == (4, 3)
    F = pd.gf7()
    with pytest.raises(ValueError):
        arc_to_parity(FourLocalArc(F, build(F).blocks[:1]))
    with pytest.raises(ValueError):
        H.matrix[0, 0] = 3


def test_parity_matrix_shape_validation():
    with pytest.raises(ValueError):
        ParityCheckMatrix(pd.gf7(), 2, np.zeros((5, 7), dtype=np.int64))


# --- linear algebra -----------------------------------------------------------


def test_rank_examples():
    F = pd.gf7()
    assert rank(F, np.eye(3, dtype=np.int64)) == 3
    assert rank(F, np.zeros((2, 3), dtype=np.int64)) == 0
    for q in (7, 9):
        assert rank(pd.FIELDS[q](), pd.parity_matrix(q)) == 6


@pytest.mark.parametrize("q", [7, 8, 9])
def test_null_space(q):
    F = pd.FIELDS[q]()
    H = pd.parity_matrix(q)
    basis = null_space_basis(F, H)
    assert len(basis) == H.shape[1] - rank(F, H) == pd.PARAMS[q][1]
    for v in basis:
        assert mat_vec(F, H, v) == [0] * H.shape[0]
    assert rank(F, np.array(basis)) == len(basis)


def test_row_reduce_is_reduced():
    F = field_new(5)
    rows, piv = row_reduce(F, [[2, 4, 1], [1, 2, 4]])
    assert piv == [0, 2]
    assert rows[0][0] == 1 and rows[1][2] == 1 and rows[0][2] == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 4), st.integers(3, 8))
def test_rank_matches_oracle(seed, nrows, ncols):
    F = field_new(2, 3)
    rng = np.random.default_rng(seed)
    H = rng.integers(0, 8, size=(nrows, ncols))
    assert rank(F, H) == _Oracle(F).rank([tuple(c) for c in H.T])


# --- minimum distance -----------------------------------------------------------


def test_min_distance_toy():
    F = field_new(5)
    assert min_distance(F, np.array([[1, 1, 1, 1]])) == 2
    assert min_distance(F, np.array([[0, 1], [0, 1]])) == 1
    assert min_distance(F, np.eye(3, dtype=np.int64), cap=3) is None
    with pytest.raises(ValueError):
        dependency_search(F, np.eye(2, dtype=np.int64), cap=0)


@pytest.mark.parametrize("q", [7, 8, 9])
def test_min_distance_worked_examples(q):
    F = pd.FIELDS[q]()
    H = pd.parity_matrix(q)
    rep = dependency_search(F, H, 6)
    assert rep.distance == 6
    assert rep.checked[5] == math.comb(H.shape[1], 5)
    if q != 9:
        assert brute_min_distance(F, H, 6) == 6
    w = list(rep.witness)
    assert rank(F, H[:, w]) == 5


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([(5, 1), (7, 1), (2, 3), (2, 2)]),
    st.integers(1, 4),
    st.integers(2, 9),
    st.integers(0, 2**31 - 1),
)
def test_min_distance_matches_brute_force(pr, nrows, ncols, seed):
    F = field_new(*pr)
    rng = np.random.default_rng(seed)
    H = rng.integers(0, F.q, size=(nrows, ncols))
    cap = min(ncols, nrows + 1)
    assert min_distance(F, H, cap) == brute_min_distance(F, H, cap)


def test_witness_is_lexicographically_first():
    F = field_new(7)
    H = np.array([[1, 0, 1, 1, 2], [0, 1, 1, 2, 4]])
    rep = dependency_search(F, H, 3)
    assert rep.distance == 2 and rep.witness == (3, 4)
    brute = next(
        s for s in itertools.combinations(range(5), 2) if rank(F, H[:, list(s)]) < 2
    )
    assert rep.witness == brute


@pytest.mark.parametrize("q", [8, 11, 16])
def test_parallel_matches_serial(q):
    F = field_for_q(q)
    H = arc_to_parity(build(F)).matrix
    a = dependency_search(F, H, 6, parallel=False)
    b = dependency_search(F, H, 6, parallel=True)
    assert (a.distance, a.witness, a.checked) == (b.distance, b.witness, b.checked)


# --- locality, defect, bound ----------------------------------------------------


@pytest.mark.parametrize("q", [7, 9])
def test_verify_locality(q):
    assert verify_locality(_pcm(q)) == 3


def test_verify_locality_toy_and_negative():
    F = field_new(5)
    toy = ParityCheckMatrix(F, 1, np.array([[1, 1, 1, 1], [0, 1, 2, 3]]))
    assert verify_locality(toy) == 3
    with pytest.raises(ValueError):
        verify_locality(ParityCheckMatrix(F, 1, np.array([[1, 1, 1, 0], [0, 1, 2, 3]])))
    with pytest.raises(ValueError):
        verify_locality(ParityCheckMatrix(F, 1, np.array([[1, 1, 1, 1], [1, 1, 2, 3]])))


def test_singleton_defect():
    assert singleton_defect(16, 9, 6, 3) == 0
    assert singleton_defect(12, 6, 6, 3) == 0
    assert singleton_defect(12, 6, 5, 3) == 1


@pytest.mark.parametrize("q", [q for q in range(2, 200) if prime_power(q)])
def test_length_bound_against_oracle(q):
    assert length_upper_bound(q) == bound_oracle(q)


def test_length_bound_values():
    assert length_upper_bound(7) == 20
    assert length_upper_bound(8) == 28
    assert length_upper_bound(9) == 32
    assert length_upper_bound(8) >= expected_size(8)
    assert length_upper_bound(7) >= expected_size(7)
    with pytest.raises(ValueError):
        length_upper_bound(1)


@pytest.mark.parametrize("q", [q for q in range(7, 129) if prime_power(q)])
def test_bound_dominates_construction(q):
    assert expected_size(q) <= length_upper_bound(q)


# --- line quadruples ------------------------------------------------------------


def test_quadruple_of_group_worked_examples():
    assert _pcm(7).field.q == 7
    quad = quadruple_of_group(_pcm(7), 0)
    assert quad.dual_points() == {(1, 1, 1), (1, 1, 6), (1, 6, 1), (1, 6, 6)}
    assert quadruple_of_group(_pcm(9), 1).dual_points() == pd.block_sets(9)[1]
    with pytest.raises(IndexError):
        quadruple_of_group(_pcm(7), 3)


@pytest.mark.parametrize("q", [7, 8, 9, 11, 13, 16])
def test_round_trip_and_concurrency(q):
    F = field_for_q(q)
    arc = build(F)
    H = arc_to_parity(arc)
    quads = [quadruple_of_group(H, g) for g in range(H.groups)]
    for quad, blk in zip(quads, arc.blocks):
        assert quad.dual_points() == frozenset(blk.points)
        # line t of the quadruple is the dual of point t of the block
        assert quad.lines == blk.points
    assert quadruples_ok(F, quads)


def test_quadruples_ok_negative():
    F = pd.gf7()
    quads = [quadruple_of_group(_pcm(7), g) for g in range(3)]
    assert not quadruples_ok(F, [quads[0], quads[0]])
    concurrent = LineQuadruple(((1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)))
    assert not quadruples_ok(F, [concurrent])
    assert not quadruples_ok(F, [quads[1], concurrent])


def test_scalar_invariance():
    F = pd.gf9()
    H = _pcm(9)
    base = [quadruple_of_group(H, g).lines for g in range(H.groups)]
    for c in range(1, 9):
        M = H.matrix.copy()
        M[H.groups :, 4:8] = [[F.mul(c, int(x)) for x in row] for row in M[H.groups :, 4:8]]
        scaled = ParityCheckMatrix(F, H.groups, M)
        assert [quadruple_of_group(scaled, g).lines for g in range(H.groups)] == base


def test_degenerate_group_rejected():
    F = pd.gf7()
    M = pd.parity_matrix(7).copy()
    M[3:, 1] = M[3:, 2]
    with pytest.raises(ValueError):
        quadruple_of_group(ParityCheckMatrix(F, 3, M), 0)


@pytest.mark.parametrize("q", [7, 8, 9])
def test_code_params(q):
    params = code_params(_pcm(q))
    assert params.as_tuple() == pd.PARAMS[q]
    assert (params.groups, params.lower_rows) == (len(pd.BLOCKS[q]), 3)
