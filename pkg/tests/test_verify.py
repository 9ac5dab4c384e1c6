import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specseq.invariant import betti_numbers, build_model, differential
from specseq.lefschetz import check_hard_lefschetz, generate_hlp_module, zero_l_block
from specseq.linalg import Subspace
from specseq.presets import PRESETS
from specseq.modelfile import to_complex
from specseq.sampling import SampleConfig, sample_model
from specseq.verify import (
    HypothesisError,
    basic_betti_from_deRham,
    expected_dims_mainC,
    expected_dims_mainS,
    harmonic_basis_C,
    harmonic_basis_S,
    kernel_d2,
    model_star_duality,
    primitive_betti_from_deRham,
    verify_E2,
    verify_mainC,
    verify_mainS,
)

Q = Fraction

hlp_bases = st.tuples(
    st.integers(1, 3), st.integers(0, 2**31)
).map(lambda t: generate_hlp_module(t[1], t[0], (1,) + (1,) * t[0]))


def test_verify_E2_presets():
    for name, mf in PRESETS.items():
        assert verify_E2(to_complex(mf)).passed, name


def test_verify_E2_expected_table(cp1):
    hopf = build_model(cp1, 1, [1])
    r = verify_E2(hopf)
    assert r.passed
    assert dict(r.expected) == {(0, 0): 1, (0, 1): 1, (2, 0): 1, (2, 1): 1}


@settings(deadline=None, max_examples=25)
@given(hlp_bases, st.integers(1, 3), st.data())
def test_verify_E2_any_lambdas(base, s, data):
    lambdas = [
        data.draw(st.fractions(min_value=-2, max_value=2, max_denominator=2))
        for _ in range(s)
    ]
    assert verify_E2(build_model(base, s, lambdas)).passed


def test_kernel_d2_cases(cp1, t2):
    hopf = build_model(cp1, 1, [1])
    ker, expected = kernel_d2(hopf, 0, 1)
    assert (ker.dim, expected) == (0, 0)  # d2(eta (x) 1) = omega != 0
    ker, expected = kernel_d2(hopf, 0, 0)
    assert (ker.dim, expected) == (1, 1)  # q=0 kernels are the whole cell
    two = build_model(cp1, 2, [1, 1])
    ker, expected = kernel_d2(two, 0, 1)
    assert (ker.dim, expected) == (1, 1)  # spanned by (eta1 - eta2) (x) 1


@settings(deadline=None, max_examples=15)
@given(hlp_bases, st.integers(1, 3))
def test_kernel_d2_matches_prediction(base, s):
    c = build_model(base, s, [1] * s)
    for p in range(2 * base.n + 1):
        for q in range(s + 1):
            ker, expected = kernel_d2(c, p, q)
            assert ker.dim == expected, (p, q)


def test_kernel_d2_hypothesis_guard(cp1):
    with pytest.raises(HypothesisError):
        kernel_d2(build_model(cp1, 1, [0]), 0, 0)


def test_expected_dims_mainS_examples(cp1, cp2):
    assert expected_dims_mainS(cp1, 1) == (1, 0, 0, 1)
    assert expected_dims_mainS(cp2, 1) == (1, 0, 0, 0, 0, 1)
    s2xs2 = generate_hlp_module(1, 2, (1, 0, 1))
    assert expected_dims_mainS(s2xs2, 1) == (1, 0, 1, 1, 0, 1)


def test_verify_mainS_presets():
    for name in ("hopf-s3", "s5", "s2xs3", "s3xs1"):
        r = verify_mainS(to_complex(PRESETS[name]))
        assert r.applicable and r.passed, name


def test_verify_mainS_hypothesis_path(cp1):
    broken = zero_l_block(cp1, 0)
    r = verify_mainS(build_model(broken, 1, [1]))
    assert not r.applicable
    assert "hard Lefschetz" in r.hypothesis_violation
    r2 = verify_mainS(build_model(cp1, 1, [0]))
    assert not r2.applicable


def test_expected_dims_mainC_examples(cp1, t2):
    assert expected_dims_mainC(t2, 1) == (1, 3, 3, 1)
    point = generate_hlp_module(0, 0, (1,))
    assert expected_dims_mainC(point, 3) == (1, 3, 3, 1)
    assert expected_dims_mainC(cp1, 2) == (1, 2, 2, 2, 1)


def test_verify_mainC_presets():
    for name in ("torus-t3", "torus-t4"):
        r = verify_mainC(to_complex(PRESETS[name]))
        assert r.applicable and r.passed, name


def test_verify_mainC_type_guard(cp1):
    r = verify_mainC(build_model(cp1, 2, [1, 0]))
    assert not r.applicable


def test_primitive_betti_recursion_examples():
    assert primitive_betti_from_deRham((1, 0, 0, 1), 1, 1) == ((1, 0), (1, 0, 1))
    assert primitive_betti_from_deRham((1, 0, 1, 1, 0, 1), 1, 2) == (
        (1, 0, 1),
        (1, 0, 2, 0, 1),
    )


def test_basic_betti_recursion_examples():
    assert basic_betti_from_deRham((1, 3, 3, 1), 1) == (1, 2, 1)
    # Betti numbers of T^(2n+s) recover those of T^(2n).
    assert basic_betti_from_deRham(tuple(comb(5, k) for k in range(6)), 3) == (1, 2, 1)
    assert basic_betti_from_deRham((1, 1), 1) == (1,)


def test_recursions_reject_inconsistent_input():
    with pytest.raises(ValueError):
        basic_betti_from_deRham((1, 0, 5, 1), 1)
    with pytest.raises(ValueError):
        primitive_betti_from_deRham((1, 0, 0, 1), 3, 1)


@settings(deadline=None, max_examples=25)
@given(hlp_bases, st.integers(1, 3))
def test_mainS_recursion_roundtrip(base, s):
    B = expected_dims_mainS(base, s)
    pdims, basic = primitive_betti_from_deRham(B, s, base.n)
    report = check_hard_lefschetz(base)
    assert pdims == report.primitive_dims[: base.n + 1]
    assert basic == base.dims


@settings(deadline=None, max_examples=25)
@given(hlp_bases, st.integers(1, 3))
def test_mainC_recursion_roundtrip(base, s):
    B = expected_dims_mainC(base, s)
    assert basic_betti_from_deRham(B, s) == base.dims


def test_harmonic_basis_C_torus(t2):
    m = build_model(t2, 1, [0])
    elements = harmonic_basis_C(m)
    counts = [0, 0, 0, 0]
    for el in elements:
        counts[el.total_degree] += 1
        assert not any(differential(m, el).coeffs)
    assert tuple(counts) == (1, 3, 3, 1)


def test_harmonic_basis_C_requires_c_type(cp1):
    with pytest.raises(HypothesisError):
        harmonic_basis_C(build_model(cp1, 1, [1]))


def test_harmonic_basis_S_hopf(cp1):
    hopf = build_model(cp1, 1, [1])
    part_a, part_b = harmonic_basis_S(hopf)
    assert [el.total_degree for el in part_a] == [0]
    assert [el.total_degree for el in part_b] == [3]
    for el in part_a + part_b:
        assert not any(differential(hopf, el).coeffs)


def test_harmonic_basis_S_difference_closed(cp1):
    m = build_model(cp1, 2, [1, 1])
    part_a, part_b = harmonic_basis_S(m)
    degree1 = [el for el in part_a if el.total_degree == 1]
    assert len(degree1) == 1  # (eta1 - eta2) (x) 1
    for el in part_a + part_b:
        assert not any(differential(m, el).coeffs)


@settings(deadline=None, max_examples=15)
@given(hlp_bases, st.integers(1, 3))
def test_harmonic_basis_S_counts_and_independence(base, s):
    c = build_model(base, s, [1] * s)
    part_a, part_b = harmonic_basis_S(c)
    expected = expected_dims_mainS(base, s)
    by_degree = {}
    for el in part_a + part_b:
        assert not any(differential(c, el).coeffs)
        by_degree.setdefault(el.total_degree, []).append(el.coeffs)
    from specseq.invariant import cohomology
    from specseq.linalg import image_basis, kernel_basis, quotient

    for k in range(c.max_degree + 1):
        vecs = by_degree.get(k, [])
        assert len(vecs) == expected[k]
        closed = kernel_basis(c.differentials[k])
        exact = (
            image_basis(c.differentials[k - 1]) if k else Subspace.zero(c.dim(0))
        )
        q = quotient(closed, exact)
        classes = [q.project.apply(v) for v in vecs]
        span = Subspace.span(q.dim, classes) if classes else Subspace.zero(q.dim)
        assert span.dim == len(vecs) == q.dim


def test_model_star_duality_presets():
    for name in ("hopf-s3", "s5", "s2xs3", "s3xs1"):
        r = model_star_duality(to_complex(PRESETS[name]))
        assert r.applicable and r.passed, (name, r.witnesses)


def test_model_star_duality_middle_primitive(t2):
    # Base with nontrivial PH^1: the duality acts within a single degree.
    m = build_model(t2, 2, [1, 1])
    r = model_star_duality(m)
    assert r.passed, r.witnesses


@settings(deadline=None, max_examples=15)
@given(hlp_bases, st.integers(1, 3))
def test_model_star_duality_random(base, s):
    r = model_star_duality(build_model(base, s, [1] * s))
    assert r.passed, r.witnesses


def test_poincare_symmetry_of_expected_dims():
    rng = random.Random(5)
    for _ in range(10):
        c = sample_model(rng, "S", SampleConfig(n_max=3))
        dims_s = expected_dims_mainS(c.base, c.s)
        assert dims_s == dims_s[::-1]
        dims_c = expected_dims_mainC(c.base, c.s)
        assert dims_c == dims_c[::-1]


def test_verify_mainS_cross_checks_cohomology(cp1):
    hopf = build_model(cp1, 1, [1])
    assert betti_numbers(hopf) == expected_dims_mainS(cp1, 1)
