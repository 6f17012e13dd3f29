import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barylef import modp
from barylef.modp import PrimeField
from oracles import rank_mod_p

small_p = st.sampled_from([2, 3, 7, 101, 32003])


@st.composite
def matrices(draw):
    p = draw(small_p)
    rows = draw(st.integers(0, 7))
    cols = draw(st.integers(1, 7))
    # bias towards zeros to get rank deficiency
    entries = st.one_of(st.just(0), st.integers(0, p - 1))
    data = draw(st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return p, np.array(data, dtype=np.int64).reshape(rows, cols)


def test_field_validation():
    with pytest.raises(ValueError):
        PrimeField(32004)
    with pytest.raises(ValueError):
        PrimeField(2**31 + 11)
    assert PrimeField(7).inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inv(0)


@settings(max_examples=200)
@given(matrices())
def test_rank_matches_plain_elimination(pm):
    p, m = pm
    assert modp.rank(PrimeField(p), m) == rank_mod_p(m.tolist(), p)


@settings(max_examples=100)
@given(matrices(), st.data())
def test_reduction_is_a_normal_form(pm, data):
    p, m = pm
    field = PrimeField(p)
    ech = modp.echelon(field, m)
    x = modp.reduction_matrix(field, ech)
    # rows of the matrix reduce to zero
    if m.shape[0]:
        assert not modp.reduce_rows(field, ech, x, m).any()
    v = np.array([data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[1], max_size=m.shape[1]))])
    red = modp.reduce_rows(field, ech, x, v)
    lifted = np.zeros_like(v)
    lifted[:, ech.free_columns] = red
    # v - lift(reduced) lies in the row space
    stacked = np.vstack([m, (v - lifted) % p]) if m.shape[0] else (v - lifted) % p
    assert modp.rank(field, stacked) == ech.rank


def test_matmul_chunks_large_moduli():
    field = PrimeField(2147483647)
    a = np.full((2, 5), field.p - 1, dtype=np.int64)
    b = np.full((5, 3), field.p - 1, dtype=np.int64)
    assert (field.matmul(a, b) == 5 % field.p).all()


def test_echelon_is_unit_upper_triangular():
    field = PrimeField(11)
    m = np.array([[0, 2, 4, 1], [0, 1, 2, 3], [5, 0, 0, 1]])
    ech = modp.echelon(field, m)
    piv = ech.rows[:, ech.pivots]
    assert (np.diag(piv) == 1).all()
    assert not np.tril(piv, -1).any()
