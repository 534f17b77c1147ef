"""Root/weight combinatorics: index sets, bilinear form, Cartan data,
coordinate changes, typicality, and the restricted-range decomposition."""

import pytest
from hypothesis import given, settings, strategies as st

from qgl.errors import BadRootOrder, DomainError, IndexOutOfShape
from qgl.rootdata import (
    Shape,
    bilinear_form,
    c_value,
    frobenius_decompose,
    in_Xplus,
    in_Xplus_l,
    in_Zplus,
    is_typical,
    p_factor,
    sizes,
    weight_to_z,
    weyl_dim_even,
    z_to_weight,
)

SHAPES = [Shape(1, 1), Shape(2, 1), Shape(1, 2), Shape(2, 2), Shape(3, 2)]


def rand_weights(shape, bound=4):
    return st.tuples(
        *[st.integers(min_value=-bound, max_value=bound) for _ in range(shape.rank)]
    )


def test_index_sets():
    sh = Shape(2, 2)
    assert sh.I0 == ((1, 2), (3, 4))
    assert sh.I1 == ((1, 3), (1, 4), (2, 3), (2, 4))
    for sh in SHAPES:
        n0, n1 = sizes(sh)
        assert n0 == len(sh.I0) and n1 == len(sh.I1)
        assert all(not sh.is_odd_pair(i, j) for (i, j) in sh.I0)
        assert all(sh.is_odd_pair(i, j) for (i, j) in sh.I1)


def test_bilinear_form_signature():
    sh = Shape(2, 1)
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert bilinear_form(sh, e1, e1) == 1
    assert bilinear_form(sh, e2, e2) == 1
    assert bilinear_form(sh, e3, e3) == -1
    assert bilinear_form(sh, e1, e2) == 0
    assert bilinear_form(sh, e1, e3) == 0


def test_cartan_spec_examples():
    sh = Shape(2, 1)
    m, r = sh.m, sh.rank
    assert sh.cartan_entry(m, m) == 0
    assert sh.cartan_entry(m, m + 1 - 1) == 0  # same entry, sanity
    assert sh.cartan_entry(1, 1) == 2
    assert sh.cartan_entry(1, 2) == -1
    assert sh.cartan_entry(r, r - 1) == -1
    sh = Shape(2, 2)
    assert sh.cartan_entry(2, 3) == 1  # the (m, m+1) entry
    assert sh.cartan_entry(3, 3) == 2
    assert sh.cartan_entry(4, 3) == -1
    assert sh.cartan_entry(4, 1) == 0


def test_cartan_matches_bilinear_form():
    # (alpha_i, alpha_j) = eps_sign(i) * a_ij for all rows/columns
    for sh in SHAPES:
        for i in range(1, sh.rank + 1):
            for j in range(1, sh.rank):
                lhs = bilinear_form(sh, sh.alpha(i), sh.alpha(j))
                assert lhs == sh.eps_sign(i) * sh.cartan_entry(i, j), (sh, i, j)


def test_index_errors():
    sh = Shape(2, 1)
    with pytest.raises(IndexOutOfShape):
        sh.check_pair(2, 2)
    with pytest.raises(IndexOutOfShape):
        sh.check_pair(1, 4)
    with pytest.raises(IndexOutOfShape):
        sh.check_node(3, simple=True)
    sh.check_node(3)


def test_two_rho():
    sh = Shape(1, 1)
    # even roots: none in either block of size 1; odd root eps1 - eps2
    assert sh.two_rho == (-1, 1)
    sh = Shape(2, 1)
    # even: eps1-eps2 = (1,-1,0); odd: eps1-eps3 and eps2-eps3 sum to (1,1,-2)
    assert sh.two_rho == (0, -2, 2)


def test_z_coordinate_spec_example():
    sh = Shape(2, 1)
    assert weight_to_z(sh, (1, 1, 1)) == (0, 2, 1)
    assert z_to_weight(sh, (0, 2, 1)) == (1, 1, 1)


@settings(max_examples=200)
@given(st.data())
def test_z_roundtrip(data):
    sh = data.draw(st.sampled_from(SHAPES))
    lam = data.draw(rand_weights(sh))
    assert z_to_weight(sh, weight_to_z(sh, lam)) == lam


def test_c_value():
    sh = Shape(2, 1)
    assert c_value(sh, 1, 3) == -1
    assert c_value(sh, 2, 3) == 0
    with pytest.raises(DomainError):
        c_value(sh, 1, 2)


def test_typicality_examples():
    sh = Shape(1, 1)
    assert not is_typical(sh, (0, 0))  # lambda_1 + lambda_2 = 0 = c(1,2)
    assert is_typical(sh, (1, 0))
    sh = Shape(2, 1)
    # c(1,3) = -1, c(2,3) = 0
    assert not is_typical(sh, (0, 0, 0))
    assert not is_typical(sh, (3, 1, -4))
    assert is_typical(sh, (5, 4, 3))


@settings(max_examples=200)
@given(st.data())
def test_typicality_routes_agree(data):
    # is_typical itself cross-asserts the two routes; run it broadly
    sh = data.draw(st.sampled_from(SHAPES))
    lam = data.draw(rand_weights(sh))
    p = p_factor(sh, lam)
    assert is_typical(sh, lam) == (p != 0)


def test_dominance():
    sh = Shape(2, 2)
    assert in_Xplus(sh, (3, 1, 5, 2))  # no condition across the wall
    assert not in_Xplus(sh, (1, 3, 5, 2))
    assert not in_Xplus(sh, (3, 1, 2, 5))


def test_restricted_range():
    sh = Shape(2, 1)
    assert in_Zplus(sh, (3, -7, 100))  # indices m=2 and m+n=3 unconstrained
    assert not in_Zplus(sh, (-1, 0, 0))
    assert in_Xplus_l(sh, (2, -7, 100), 3)
    assert not in_Xplus_l(sh, (3, 0, 0), 3)
    with pytest.raises(BadRootOrder):
        in_Xplus_l(sh, (0, 0, 0), 4)


def test_frobenius_spec_example():
    sh = Shape(2, 1)
    zp, zpp = frobenius_decompose(sh, (7, 5, 2), 3)
    assert zp == (1, 5, 2)
    assert zpp == (2, 0, 0)


@settings(max_examples=200)
@given(st.data())
def test_frobenius_properties(data):
    sh = data.draw(st.sampled_from(SHAPES))
    l = data.draw(st.sampled_from([3, 5, 7]))
    z = []
    for i in range(1, sh.rank + 1):
        if i in (sh.m, sh.rank):
            z.append(data.draw(st.integers(min_value=-20, max_value=40)))
        else:
            z.append(data.draw(st.integers(min_value=0, max_value=40)))
    zp, zpp = frobenius_decompose(sh, tuple(z), l)
    assert in_Xplus_l(sh, zp, l)
    assert all(zp[k] + l * zpp[k] == z[k] for k in range(sh.rank))


def test_weyl_dim_even():
    sh = Shape(2, 2)
    assert weyl_dim_even(sh, (0, 0, 0, 0)) == 1
    assert weyl_dim_even(sh, (1, 0, 0, 0)) == 2  # standard rep of the gl(2) block
    assert weyl_dim_even(sh, (1, 0, 1, 0)) == 4
    sh = Shape(3, 1)
    assert weyl_dim_even(sh, (1, 0, 0, 5)) == 3
    assert weyl_dim_even(sh, (2, 1, 0, 0)) == 8  # adjoint of sl(3)
    with pytest.raises(DomainError):
        weyl_dim_even(sh, (0, 1, 0, 0))
