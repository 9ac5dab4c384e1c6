from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specseq.engine import (
    FilteredComplex,
    FiltrationError,
    check_abutment,
    compute_page,
    infinity_page,
    run_to_convergence,
    trivial_filtration,
)
from specseq.invariant import build_model, filtered_complex
from specseq.lefschetz import generate_hlp_module
from specseq.linalg import Matrix, Subspace, kernel_basis, rank

Q = Fraction


def random_models():
    return st.tuples(
        st.integers(0, 2),
        st.integers(1, 3),
        st.integers(0, 2**31),
        st.sampled_from(["S", "C", "mixed"]),
    ).map(_make_model)


def _make_model(t):
    n, s, seed, kind = t
    base = generate_hlp_module(seed, n, (1,) + (1,) * n)
    if kind == "S":
        lambdas = [1] * s
    elif kind == "C":
        lambdas = [0] * s
    else:
        lambdas = [Q((seed % 7) - 3, 1 + seed % 3)] * s
    return build_model(base, s, lambdas)


def test_two_term_complex_dies_at_E1():
    d = (Matrix.from_rows([[1]]), Matrix.zero(0, 1))
    fc = trivial_filtration((1, 1), d)
    page1 = compute_page(fc, 1)
    assert page1.cell_dims() == {}


def test_zero_differential_stable_at_zero():
    d = (Matrix.zero(2, 2), Matrix.zero(0, 2))
    fc = trivial_filtration((2, 2), d)
    pages, stable_at = run_to_convergence(fc)
    assert stable_at == 0
    assert pages[0].cell_dims() == {(0, 0): 2, (0, 1): 2}
    assert check_abutment(fc)


def test_trivial_filtration_gives_cohomology_at_E1():
    d = (
        Matrix.from_rows([[0, 0], [0, 0]]),
        Matrix.from_rows([[1, 0]]),
        Matrix.zero(0, 1),
    )
    fc = trivial_filtration((2, 2, 1), d)
    page1 = compute_page(fc, 1)
    totals = page1.antidiagonal_totals(2)
    assert totals == fc.cohomology_dims()
    _, stable_at = run_to_convergence(fc)
    assert stable_at <= 1


def test_hopf_pages(cp1):
    fc = filtered_complex(build_model(cp1, 1, [1]))
    pages, stable_at = run_to_convergence(fc)
    assert stable_at == 3
    page0 = pages[0]
    # E_0 cells are C(s,q) * dims[p].
    assert page0.cell_dims() == {(0, 0): 1, (0, 1): 1, (2, 0): 1, (2, 1): 1}
    assert page0.differentials_vanish()
    assert pages[1].differentials_vanish()
    assert pages[-1].antidiagonal_totals(3) == (1, 0, 0, 1)
    assert check_abutment(fc)


def test_malformed_filtration_rejected():
    d = (Matrix.from_rows([[1]]), Matrix.zero(0, 1))
    # F^1 in degree 0 is everything but d does not map it into F^1 of degree 1.
    filt = (
        (Subspace.full(1), Subspace.full(1), Subspace.zero(1)),
        (Subspace.full(1), Subspace.zero(1), Subspace.zero(1)),
    )
    with pytest.raises(FiltrationError):
        FilteredComplex((1, 1), d, filt, 1)


def test_non_complex_rejected():
    d = (Matrix.from_rows([[1]]), Matrix.from_rows([[1]]), Matrix.zero(0, 1))
    with pytest.raises(FiltrationError):
        trivial_filtration((1, 1, 1), d)


@settings(deadline=None, max_examples=20)
@given(random_models())
def test_page_turning_identity(m):
    fc = filtered_complex(m)
    for r in range(fc.max_filtration + 2):
        page = compute_page(fc, r)
        nxt = compute_page(fc, r + 1)
        for (p, q), cell in page.cells.items():
            d_out = page.d_maps[(p, q)]
            incoming = page.d_maps.get((p - r, q + r - 1))
            rk_in = rank(incoming) if incoming is not None else 0
            assert nxt.dim(p, q) == kernel_basis(d_out).dim - rk_in


@settings(deadline=None, max_examples=20)
@given(random_models())
def test_abutment_on_random_models(m):
    fc = filtered_complex(m)
    assert check_abutment(fc)


@settings(deadline=None, max_examples=15)
@given(random_models())
def test_support_bound(m):
    fc = filtered_complex(m)
    einf = infinity_page(fc)
    for (p, q), dim in einf.cell_dims().items():
        assert 0 <= p <= 2 * m.base.n
        assert 0 <= q <= m.s


def test_compute_page_deterministic(cp1):
    fc = filtered_complex(build_model(cp1, 1, [1]))
    a = compute_page(fc, 2)
    b = compute_page(fc, 2)
    assert a.cell_dims() == b.cell_dims()
    assert a.d_maps == b.d_maps
