"""Executable forms of the structural theorems.

Each verifier compares engine output against a closed-form prediction:

- E2 description: dim E_2^{p,q} = dim H^p * C(s,q), with d_0 = d_1 = 0.
- S-type degeneration: stable page <= 3 and de Rham dims given by the
  primitive / Ker(L) convolution formula.
- C-type degeneration: stable page <= 2 and de Rham dims given by the
  binomial convolution with the base dims.
- Betti recursions inverting those formulas.
- Harmonic bases and the star duality between their two halves.

Verifiers whose theorem carries hypotheses (S-type lambdas, hard
Lefschetz) report a hypothesis violation instead of pass/fail when the
input does not qualify.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .engine import compute_page, run_to_convergence
from .exterior import index_subset_sign
from .invariant import (
    InvariantComplex,
    InvariantElement,
    betti_numbers,
    cohomology,
    differential,
    filtered_complex,
)
from .lefschetz import (
    LefschetzModule,
    check_hard_lefschetz,
    kernel_L,
    l_power,
    lefschetz_decompose_class,
    primitive_subspace,
)
from .linalg import Matrix, Subspace, kernel_basis, subspace_sum

_ZERO = Fraction(0)


class HypothesisError(ValueError):
    """The theorem's hypotheses do not hold for this input."""


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    passed: bool
    expected: tuple
    actual: tuple
    witnesses: tuple = ()
    hypothesis_violation: str | None = None

    @property
    def applicable(self) -> bool:
        return self.hypothesis_violation is None


def _binom(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def _hypothesis(c: InvariantComplex, need_s_type: bool, need_hlp: bool) -> str | None:
    if need_s_type and not c.is_s_type():
        return "not S-type: some lambda_i differs from 1"
    if need_hlp and not check_hard_lefschetz(c.base).hlp:
        return "base module does not satisfy hard Lefschetz"
    return None


def verify_E2(c: InvariantComplex) -> VerificationReport:
    """dim E_2^{p,q} = dim H^p * C(s,q), and d_0 = d_1 = 0."""
    fc = filtered_complex(c)
    witnesses = []
    for r in (0, 1):
        page = compute_page(fc, r)
        if not page.differentials_vanish():
            witnesses.append(f"d_{r} is nonzero")
    page2 = compute_page(fc, 2)
    expected = {}
    for p in range(2 * c.base.n + 1):
        for q in range(c.s + 1):
            d = c.base.dims[p] * _binom(c.s, q)
            if d:
                expected[(p, q)] = d
    actual = page2.cell_dims()
    if actual != expected:
        witnesses.append("E_2 cell dimensions differ")
    return VerificationReport(
        "E2",
        not witnesses,
        tuple(sorted(expected.items())),
        tuple(sorted(actual.items())),
        tuple(witnesses),
    )


def kernel_d2(c: InvariantComplex, p: int, q: int) -> tuple[Subspace, int]:
    """Ker(d_2^{p,q}) from the engine, with the predicted dimension.

    Prediction: C(s-1,q) * dim H^p for the difference-product part plus
    C(s-1,q-1) * dim Ker(L)^p for the eta-times-Ker(L) part.
    """
    violation = _hypothesis(c, True, True)
    if violation:
        raise HypothesisError(violation)
    fc = filtered_complex(c)
    page2 = compute_page(fc, 2)
    d2 = page2.d_maps.get((p, q))
    cell_dim = page2.dim(p, q)
    if d2 is None:
        return Subspace.zero(cell_dim), 0
    actual = kernel_basis(d2)
    zdim = kernel_L(c.base, p).dim if p <= 2 * c.base.n else 0
    hdim = c.base.dim_at(p)
    expected = _binom(c.s - 1, q) * hdim + _binom(c.s - 1, q - 1) * zdim
    return actual, expected


def expected_dims_mainS(base: LefschetzModule, s: int) -> tuple[int, ...]:
    """Predicted de Rham dims of an S-type model over a hard Lefschetz base."""
    report = check_hard_lefschetz(base)
    if not report.hlp:
        raise HypothesisError("base module does not satisfy hard Lefschetz")
    pdim = report.primitive_dims
    zdim = report.kernel_L_dims

    def at(seq, i):
        return seq[i] if 0 <= i < len(seq) else 0

    out = []
    for k in range(2 * base.n + s + 1):
        total = 0
        for q in range(s):
            total += _binom(s - 1, q) * (at(pdim, k - q) + at(zdim, k - q - 1))
        out.append(total)
    return tuple(out)


def verify_mainS(c: InvariantComplex) -> VerificationReport:
    """S-type degeneration: stable page <= 3 and dims match the prediction."""
    violation = _hypothesis(c, True, True)
    if violation:
        return VerificationReport("mainS", False, (), (), (), violation)
    expected = expected_dims_mainS(c.base, c.s)
    fc = filtered_complex(c)
    pages, stable_at = run_to_convergence(fc)
    totals = pages[-1].antidiagonal_totals(fc.max_degree)
    direct = betti_numbers(c)
    witnesses = []
    if stable_at > 3:
        witnesses.append(f"stabilizes only at page {stable_at}")
    if totals != expected:
        witnesses.append("E_infinity totals differ from prediction")
    if direct != expected:
        witnesses.append("direct cohomology differs from prediction")
    return VerificationReport(
        "mainS", not witnesses, expected, totals + (("stable_at", stable_at),), tuple(witnesses)
    )


def expected_dims_mainC(base: LefschetzModule, s: int) -> tuple[int, ...]:
    """Binomial convolution of the base dims with C(s, .)."""

    def at(i):
        return base.dims[i] if 0 <= i < len(base.dims) else 0

    return tuple(
        sum(_binom(s, q) * at(k - q) for q in range(s + 1))
        for k in range(2 * base.n + s + 1)
    )


def verify_mainC(c: InvariantComplex) -> VerificationReport:
    """C-type degeneration: stable page <= 2 and dims match the convolution."""
    if not c.is_c_type():
        return VerificationReport(
            "mainC", False, (), (), (), "not C-type: some lambda_i is nonzero"
        )
    expected = expected_dims_mainC(c.base, c.s)
    fc = filtered_complex(c)
    pages, stable_at = run_to_convergence(fc)
    totals = pages[-1].antidiagonal_totals(fc.max_degree)
    witnesses = []
    if stable_at > 2:
        witnesses.append(f"stabilizes only at page {stable_at}")
    if totals != expected:
        witnesses.append("E_infinity totals differ from prediction")
    return VerificationReport(
        "mainC", not witnesses, expected, totals + (("stable_at", stable_at),), tuple(witnesses)
    )


def primitive_betti_from_deRham(
    B: Sequence[int], s: int, n: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Invert the S-type formula: de Rham dims -> (primitive dims, basic dims).

    pdim[k] = B[k] - sum_{i<k} C(s-1, k-i) pdim[i] for k <= n, then the basic
    dims follow from the Lefschetz decomposition and Poincare symmetry.
    """
    pdim: list[int] = []
    for k in range(n + 1):
        value = B[k] - sum(_binom(s - 1, k - i) * pdim[i] for i in range(k))
        if value < 0:
            raise ValueError(
                f"negative primitive dimension at degree {k}: "
                "input is not the Betti sequence of such a manifold"
            )
        pdim.append(value)
    basic = [0] * (2 * n + 1)
    for r in range(n + 1):
        basic[r] = sum(pdim[r - 2 * i] for i in range(r // 2 + 1))
    for r in range(n + 1, 2 * n + 1):
        basic[r] = basic[2 * n - r]
    return tuple(pdim), tuple(basic)


def basic_betti_from_deRham(B: Sequence[int], s: int) -> tuple[int, ...]:
    """Invert the C-type convolution: b[k] = B[k] - sum_{i<k} C(s,k-i) b[i]."""
    top = len(B) - 1 - s
    if top < 0:
        raise ValueError("Betti list shorter than s+1")
    b: list[int] = []
    for k in range(top + 1):
        value = B[k] - sum(_binom(s, k - i) * b[i] for i in range(k))
        if value < 0:
            raise ValueError(
                f"negative basic dimension at degree {k}: "
                "input is not the Betti sequence of such a manifold"
            )
        b.append(value)
    return tuple(b)


def harmonic_basis_C(c: InvariantComplex) -> list[InvariantElement]:
    """For C-type models every basis element eta_I (x) h is harmonic."""
    if not c.is_c_type():
        raise HypothesisError("not C-type: some lambda_i is nonzero")
    out = []
    for k in range(c.max_degree + 1):
        for i in range(c.dim(k)):
            coeffs = [_ZERO] * c.dim(k)
            coeffs[i] = Fraction(1)
            out.append(InvariantElement(k, tuple(coeffs)))
    return out


def _eta_product(factors: Sequence[dict[tuple[int, ...], Fraction]]):
    """Wedge product in the exterior algebra on eta_1..eta_s (1-based tuples)."""
    acc = {(): Fraction(1)}
    for f in factors:
        nxt: dict[tuple[int, ...], Fraction] = {}
        for idx_a, ca in acc.items():
            for idx_b, cb in f.items():
                if set(idx_a) & set(idx_b):
                    continue
                inv = sum(1 for x in idx_a for y in idx_b if x > y)
                key = tuple(sorted(idx_a + idx_b))
                nxt[key] = nxt.get(key, _ZERO) + ((-1) ** inv) * ca * cb
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def _chain_from_eta(c: InvariantComplex, eta_form, p: int, h: Sequence[Fraction]):
    """The chain sum_I coeff_I eta_I (x) h as an InvariantElement."""
    degree = p + (len(next(iter(eta_form))) if eta_form else 0)
    coeffs = [_ZERO] * c.dim(degree)
    for subset, ec in eta_form.items():
        for t, hv in enumerate(h):
            if hv:
                coeffs[c.index_of(degree, (subset, p, t))] += ec * hv
    return InvariantElement(degree, tuple(coeffs))


def harmonic_basis_S(
    c: InvariantComplex,
) -> tuple[list[InvariantElement], list[InvariantElement]]:
    """The two halves of the S-type harmonic basis.

    Part A: products of differences (eta_1 - eta_i) over subsets of {2..s}
    times primitive classes.  Part B: eta_1 eta_I times Ker(L) classes.
    """
    violation = _hypothesis(c, True, True)
    if violation:
        raise HypothesisError(violation)
    s = c.s
    base = c.base
    part_a: list[InvariantElement] = []
    for q in range(s):
        for subset in itertools.combinations(range(2, s + 1), q):
            factors = [
                {(1,): Fraction(1), (i,): Fraction(-1)} for i in subset
            ]
            eta_form = _eta_product(factors)
            for p in range(2 * base.n + 1):
                for beta in primitive_subspace(base, p).basis.columns():
                    part_a.append(_chain_from_eta(c, eta_form, p, beta))
    part_b: list[InvariantElement] = []
    for q in range(s):
        for subset in itertools.combinations(range(2, s + 1), q):
            full = (1,) + subset
            for p in range(2 * base.n + 1):
                for kappa in kernel_L(base, p).basis.columns():
                    part_b.append(_chain_from_eta(c, {full: Fraction(1)}, p, kappa))
    return part_a, part_b


def base_star_matrix(base: LefschetzModule, p: int) -> Matrix:
    """Model star H^p -> H^{2n-p}: sum L^i beta_i maps to sum L^{n-p+i} beta_i."""
    n = base.n
    cols = []
    dim_p = base.dim_at(p)
    dim_t = base.dim_at(2 * n - p)
    for t in range(dim_p):
        v = [_ZERO] * dim_p
        v[t] = Fraction(1)
        components = lefschetz_decompose_class(base, p, v)
        img = [_ZERO] * dim_t
        for i, beta in components:
            piece = l_power(base, p - 2 * i, n - p + i).apply(beta)
            img = [x + y for x, y in zip(img, piece)]
        cols.append(tuple(img))
    if not cols:
        return Matrix.zero(dim_t, 0)
    return Matrix.from_cols(cols, rows=dim_t)


def model_star(c: InvariantComplex, x: InvariantElement) -> InvariantElement:
    """Star on the whole complex, degree k -> 2n+s-k.

    eta_I (x) h maps to +-eta_{I^c} (x) star(h) with the exponent
    sign(I, I^c) + (s - |I|) * deg(h).
    """
    n, s = c.base.n, c.s
    k = x.total_degree
    target = 2 * n + s - k
    coeffs = [_ZERO] * c.dim(target)
    stars = {}
    for pos, (subset, p, t) in enumerate(c.basis[k]):
        cv = x.coeffs[pos]
        if not cv:
            continue
        if p not in stars:
            stars[p] = base_star_matrix(c.base, p)
        comp = tuple(j for j in range(1, s + 1) if j not in subset)
        sign = (-1) ** (index_subset_sign(subset, s) + (s - len(subset)) * p)
        col = stars[p].col(t)
        for u, v in enumerate(col):
            if v:
                coeffs[c.index_of(target, (comp, 2 * n - p, u))] += sign * cv * v
    return InvariantElement(target, tuple(coeffs))


def _class_projectors(c: InvariantComplex):
    """Per degree: (quotient dim, projection matrix valid on cocycles)."""
    from .linalg import image_basis, quotient

    out = []
    for k in range(c.max_degree + 1):
        closed = kernel_basis(c.differentials[k])
        exact = (
            image_basis(c.differentials[k - 1])
            if k > 0
            else Subspace.zero(c.dim(0))
        )
        out.append(quotient(closed, exact))
    return out


def model_star_duality(c: InvariantComplex) -> VerificationReport:
    """Star carries the part-A span onto the complementary part-B summand.

    Per degree k with k' = 2n+s-k: star images of part A are cocycles, their
    classes are independent, and together with the part-A classes of degree
    k' they span exactly what part A and part B of degree k' span, with the
    sum direct.  This is the model form of the statement that the second
    half of the harmonic basis consists of star-duals of the first.
    """
    violation = _hypothesis(c, True, True)
    if violation:
        return VerificationReport("star-duality", False, (), (), (), violation)
    part_a, part_b = harmonic_basis_S(c)
    projectors = _class_projectors(c)
    by_degree_a: dict[int, list[InvariantElement]] = {}
    by_degree_b: dict[int, list[InvariantElement]] = {}
    for el in part_a:
        by_degree_a.setdefault(el.total_degree, []).append(el)
    for el in part_b:
        by_degree_b.setdefault(el.total_degree, []).append(el)
    total_deg = 2 * c.base.n + c.s
    witnesses = []
    checked = []
    for k in range(total_deg + 1):
        k2 = total_deg - k
        images = []
        for el in by_degree_a.get(k, []):
            img = model_star(c, el)
            if any(differential(c, img).coeffs):
                witnesses.append(f"star image from degree {k} is not closed")
                continue
            images.append(img)
        proj = projectors[k2]
        qdim = proj.dim
        img_classes = [proj.project.apply(el.coeffs) for el in images]
        a2_classes = [
            proj.project.apply(el.coeffs) for el in by_degree_a.get(k2, [])
        ]
        b2_classes = [
            proj.project.apply(el.coeffs) for el in by_degree_b.get(k2, [])
        ]
        span_img = Subspace.span(qdim, img_classes) if img_classes else Subspace.zero(qdim)
        span_a2 = Subspace.span(qdim, a2_classes) if a2_classes else Subspace.zero(qdim)
        span_b2 = Subspace.span(qdim, b2_classes) if b2_classes else Subspace.zero(qdim)
        if span_img.dim != len(images):
            witnesses.append(f"star not injective on part A classes of degree {k}")
        if span_img.dim != len(by_degree_b.get(k2, [])):
            witnesses.append(f"image rank mismatch in degree {k}")
        combined = subspace_sum(span_a2, span_img)
        target = subspace_sum(span_a2, span_b2)
        if combined != target or combined.dim != span_a2.dim + span_img.dim:
            witnesses.append(f"star images do not complement part A in degree {k2}")
        checked.append((k, span_img.dim))
    return VerificationReport(
        "star-duality", not witnesses, (), tuple(checked), tuple(witnesses)
    )
