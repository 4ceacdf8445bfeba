import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat4.errors import NoSolution, NonInvertibleGenerator, NotSimilitude
from fermat4.golden import matrix
from fermat4.z4 import (
    Z4Matrix,
    element_order,
    fixed_submodule,
    group_closure,
    gsp_check,
    howell_form,
    in_span,
    kernel,
    solve,
    span_order,
    submodule,
)

entries = st.integers(min_value=0, max_value=3)


def mats(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda r: Z4Matrix(r, cols)
    )


def brute_span(rows, n):
    out = set()
    for coeffs in itertools.product(range(4), repeat=len(rows)):
        out.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % 4 for j in range(n)))
    return out


def all_vectors(n):
    return itertools.product(range(4), repeat=n)


def test_howell_form_exhaustive_two_by_three():
    """Every 2x3 matrix: order, membership and canonical form against the enumerated span."""
    vectors = list(all_vectors(3))
    forms_by_span = {}
    for flat in itertools.product(range(4), repeat=6):
        rows = [flat[:3], flat[3:]]
        M = Z4Matrix(rows, 3)
        span = frozenset(brute_span(rows, 3))
        assert span_order(M) == len(span)
        assert all(in_span(M, v) == (v in span) for v in vectors)
        H = howell_form(M)
        assert forms_by_span.setdefault(span, H) == H
        a, b = submodule(rows, 3).elementary_type
        assert 4**a * 2**b == len(span)
    assert len(forms_by_span) == 113


@settings(max_examples=60, deadline=None)
@given(mats(3, 3))
def test_kernel_matches_enumeration(M):
    K = kernel(M)
    brute = [v for v in all_vectors(3) if not any(M.apply(v))]
    assert K.order == len(brute)
    assert all(K.contains(v) for v in brute)


@settings(max_examples=60, deadline=None)
@given(mats(3, 4), st.lists(entries, min_size=4, max_size=4))
def test_solve_consistency(M, x):
    b = M.apply(x)
    y = solve(M, b)
    assert M.apply(y) == b


def test_solve_reports_no_solution():
    with pytest.raises(NoSolution):
        solve(Z4Matrix([[2, 0], [0, 2]]), [1, 0])


def test_fixed_submodule_against_enumeration():
    S, T = matrix("rho_sigma"), matrix("rho_tau")
    for gens in ([S], [T], [S @ S], [T @ S], [S, T], [S @ S, T]):
        M = fixed_submodule(gens)
        brute = [v for v in all_vectors(6) if all(tuple(g.apply(v)) == v for g in gens)]
        assert M.order == len(brute)
        assert all(M.contains(v) for v in brute)


def test_elementary_types():
    assert submodule([[1, 0], [0, 2]], 2).elementary_type == (1, 1)
    assert submodule([[2, 2]], 2).elementary_type == (0, 1)
    assert submodule([[1, 1], [1, 3]], 2).elementary_type == (1, 1)
    assert submodule([], 3).order == 1


def test_matrix_algebra():
    A = Z4Matrix([[1, 2], [3, 1]])
    assert A @ Z4Matrix.identity(2) == A
    assert A**0 == Z4Matrix.identity(2)
    assert A**3 == A @ A @ A
    assert (A + A) == 2 * A
    assert A.T.T == A
    assert A.det_mod2() == 1
    assert not Z4Matrix([[2, 1], [0, 2]]).is_invertible()


def test_group_closure_classification():
    S, T = matrix("rho_sigma"), matrix("rho_tau")
    G = group_closure([S, T])
    assert G.order == 8 and G.dihedral8 and not G.abelian
    assert group_closure([S]).cyclic and group_closure([S]).order == 4
    assert element_order(T) == 2
    with pytest.raises(NonInvertibleGenerator):
        group_closure([Z4Matrix([[2, 0], [0, 1]])])


def test_quaternion_group_is_not_dihedral():
    # 2x2 over Z/4 is too small for Q8; use the regular action of Q8 on Z[Q8]/4 restricted to i, j
    i = Z4Matrix([[0, 3, 0, 0], [1, 0, 0, 0], [0, 0, 0, 3], [0, 0, 1, 0]])
    j = Z4Matrix([[0, 0, 3, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 3, 0, 0]])
    G = group_closure([i, j])
    assert G.order == 8 and not G.abelian and not G.dihedral8


def test_gsp_check():
    J = matrix("J")
    assert gsp_check(Z4Matrix.identity(6), J) == 1
    assert gsp_check(matrix("rho2_sigma"), J) == 1
    assert gsp_check(matrix("rho2_tau"), J) == 3
    with pytest.raises(NotSimilitude):
        gsp_check(Z4Matrix.identity(6) + Z4Matrix([[int(r == 0 and c == 1) for c in range(6)] for r in range(6)]), J)
