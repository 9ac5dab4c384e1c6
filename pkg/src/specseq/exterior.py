"""Pointwise exterior algebra over the transverse model space.

The model space is R^{2n} (+) R^s with an orthonormal covector basis
e^1,...,e^{2n}, eta_1,...,eta_s, the standard symplectic two-form
omega = sum e^{2i-1} ^ e^{2i} on the transverse factor, and the compatible
complex structure J e_{2i-1} = e_{2i}.  Everything here is fiberwise linear
algebra with exact rational coefficients: wedge products, the symplectic
and metric star operators, the Lefschetz operators L and Lambda, and the
primitive decomposition.

Index layout: 0..2n-1 are the transverse covectors (0-based), 2n..2n+s-1
are eta_1..eta_s.  Public constructors take 1-based labels to match the
usual e^1, eta_1 notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, Subspace, kernel_basis, solve

Q = Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)


class FrameMismatch(ValueError):
    """Operands belong to different model frames."""


class TransverseRequired(ValueError):
    """The operator is only defined on forms over the transverse factor."""


@dataclass(frozen=True)
class ModelFrame:
    """Model space parameters: transverse dimension 2n, corank s."""

    n: int
    s: int = 0

    def __post_init__(self):
        if self.n < 0 or self.s < 0:
            raise ValueError("n and s must be non-negative")

    @property
    def transverse_dim(self) -> int:
        return 2 * self.n

    @property
    def total_dim(self) -> int:
        return 2 * self.n + self.s


@dataclass(frozen=True)
class Multivector:
    """Homogeneous element of the exterior algebra over the model space.

    `terms` maps strictly increasing index tuples of length `degree` to
    nonzero rational coefficients; it is stored sorted for canonical
    equality.
    """

    frame: ModelFrame
    degree: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @staticmethod
    def make(frame: ModelFrame, degree: int, coeffs: Mapping[tuple[int, ...], Fraction]) -> "Multivector":
        cleaned = {}
        for idx, c in coeffs.items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if not c:
                continue
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"bad index tuple {idx} for degree {degree}")
            if idx and idx[-1] >= frame.total_dim:
                raise ValueError(f"index out of range for frame: {idx}")
            cleaned[idx] = c
        return Multivector(frame, degree, tuple(sorted(cleaned.items())))

    @staticmethod
    def zero(frame: ModelFrame, degree: int) -> "Multivector":
        return Multivector(frame, max(degree, 0), ())

    def is_zero(self) -> bool:
        return not self.terms

    def is_transverse(self) -> bool:
        td = self.frame.transverse_dim
        return all(i < td for idx, _ in self.terms for i in idx)

    def coefficient(self, idx: Sequence[int]) -> Fraction:
        idx = tuple(idx)
        for t, c in self.terms:
            if t == idx:
                return c
        return _ZERO

    def __add__(self, other: "Multivector") -> "Multivector":
        _check_frames(self, other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        acc = dict(self.terms)
        for idx, c in other.terms:
            acc[idx] = acc.get(idx, _ZERO) + c
        return Multivector.make(self.frame, self.degree, acc)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + other.scaled(-1)

    def __neg__(self) -> "Multivector":
        return self.scaled(-1)

    def scaled(self, c) -> "Multivector":
        c = c if isinstance(c, Fraction) else Fraction(c)
        return Multivector.make(self.frame, self.degree, {idx: c * v for idx, v in self.terms})

    def __rmul__(self, c) -> "Multivector":
        return self.scaled(c)


def _check_frames(a: Multivector, b: Multivector):
    if a.frame != b.frame:
        raise FrameMismatch(f"frames differ: {a.frame} vs {b.frame}")


def scalar(frame: ModelFrame, value=1) -> Multivector:
    return Multivector.make(frame, 0, {(): Fraction(value)})


def covector(frame: ModelFrame, i: int) -> Multivector:
    """The transverse covector e^i, 1-based, 1 <= i <= 2n."""
    if not 1 <= i <= frame.transverse_dim:
        raise ValueError(f"transverse covector index out of range: {i}")
    return Multivector.make(frame, 1, {(i - 1,): _ONE})


def eta(frame: ModelFrame, j: int) -> Multivector:
    """The covector eta_j, 1-based, 1 <= j <= s."""
    if not 1 <= j <= frame.s:
        raise ValueError(f"eta index out of range: {j}")
    return Multivector.make(frame, 1, {(frame.transverse_dim + j - 1,): _ONE})


def omega(frame: ModelFrame) -> Multivector:
    """The standard symplectic form sum_i e^{2i-1} ^ e^{2i}."""
    return Multivector.make(
        frame, 2, {(2 * i, 2 * i + 1): _ONE for i in range(frame.n)}
    )


def transverse_volume(frame: ModelFrame) -> Multivector:
    """omega^n / n! = e^1 ^ ... ^ e^{2n}."""
    return Multivector.make(frame, 2 * frame.n, {tuple(range(frame.transverse_dim)): _ONE})


def monomials(frame: ModelFrame, degree: int, transverse: bool = True) -> list[tuple[int, ...]]:
    top = frame.transverse_dim if transverse else frame.total_dim
    if degree < 0 or degree > top:
        return []
    return list(itertools.combinations(range(top), degree))


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Sorted concatenation of two increasing tuples with the wedge sign."""
    if set(a) & set(b):
        return None
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return tuple(sorted(a + b)), (-1) ** inversions


def _complement_sign(idx: tuple[int, ...], total: int) -> tuple[tuple[int, ...], int]:
    comp = tuple(i for i in range(total) if i not in idx)
    merged = _merge_sign(idx, comp)
    assert merged is not None
    return comp, merged[1]


def wedge(a: Multivector, b: Multivector) -> Multivector:
    _check_frames(a, b)
    acc: dict[tuple[int, ...], Fraction] = {}
    for ia, ca in a.terms:
        for ib, cb in b.terms:
            merged = _merge_sign(ia, ib)
            if merged is None:
                continue
            idx, sign = merged
            acc[idx] = acc.get(idx, _ZERO) + sign * ca * cb
    return Multivector.make(a.frame, a.degree + b.degree, acc)


def lefschetz_L(a: Multivector) -> Multivector:
    """omega ^ a (degree +2)."""
    _require_transverse(a)
    return wedge(omega(a.frame), a)


def _require_transverse(a: Multivector):
    if not a.is_transverse():
        raise TransverseRequired("operator only defined on transverse forms")


def _poisson_entry(i: int, j: int) -> Fraction:
    # Matrix inverse of omega(e_i, e_j); per 2x2 block [[0,1],[-1,0]] the
    # inverse is [[0,-1],[1,0]].
    if i // 2 != j // 2:
        return _ZERO
    if i == j:
        return _ZERO
    return -_ONE if i < j else _ONE


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return _ONE
    rows = [list(r) for r in rows]
    det = _ONE
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if rows[r][c]:
                pivot = r
                break
        if pivot is None:
            return _ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c]:
                f = rows[r][c] / inv
                rows[r] = [x - f * y if y else x for x, y in zip(rows[r], rows[c])]
    return det


def _omega_pairing(b_idx: tuple[int, ...], a_idx: tuple[int, ...]) -> Fraction:
    """Pairing of two degree-k monomials induced by the inverse of omega."""
    return _det([[_poisson_entry(i, j) for j in a_idx] for i in b_idx])


def symplectic_star(a: Multivector) -> Multivector:
    """The fiberwise symplectic star, fixed by b ^ *a = pairing(b, a) vol."""
    _require_transverse(a)
    frame = a.frame
    td = frame.transverse_dim
    k = a.degree
    acc: dict[tuple[int, ...], Fraction] = {}
    for b_idx in monomials(frame, k):
        val = _ZERO
        for m_idx, c in a.terms:
            p = _omega_pairing(b_idx, m_idx)
            if p:
                val += c * p
        if val:
            comp, sign = _complement_sign(b_idx, td)
            acc[comp] = acc.get(comp, _ZERO) + sign * val
    return Multivector.make(frame, td - k, acc)


def hodge_star_transverse(a: Multivector) -> Multivector:
    """Metric Hodge star on the transverse factor, volume omega^n/n!."""
    _require_transverse(a)
    td = a.frame.transverse_dim
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, c in a.terms:
        comp, sign = _complement_sign(idx, td)
        acc[comp] = acc.get(comp, _ZERO) + sign * c
    return Multivector.make(a.frame, td - a.degree, acc)


def full_hodge_star(a: Multivector) -> Multivector:
    """Hodge star on the whole model space.

    The orientation is eta_1 ^ ... ^ eta_s ^ omega^n/n!, which for the
    internal index order (transverse first) agrees with the standard one
    because the transverse factor is even-dimensional.
    """
    total = a.frame.total_dim
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, c in a.terms:
        comp, sign = _complement_sign(idx, total)
        acc[comp] = acc.get(comp, _ZERO) + sign * c
    return Multivector.make(a.frame, total - a.degree, acc)


def j_action(a: Multivector) -> Multivector:
    """Pullback along J (J e_{2i-1} = e_{2i}), acting factorwise on forms."""
    _require_transverse(a)
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, c in a.terms:
        # On covectors, J e^{2i-1} = -e^{2i} and J e^{2i} = e^{2i-1};
        # 0-based: even t -> -(t+1), odd t -> t-1.  The image indices of a
        # monomial are distinct, so only a reordering sign remains.
        sign = 1
        mapped = []
        for t in idx:
            if t % 2 == 0:
                mapped.append(t + 1)
                sign = -sign
            else:
                mapped.append(t - 1)
        inv = sum(
            1
            for x in range(len(mapped))
            for y in range(x + 1, len(mapped))
            if mapped[x] > mapped[y]
        )
        sign *= (-1) ** inv
        key = tuple(sorted(mapped))
        acc[key] = acc.get(key, _ZERO) + sign * c
    return Multivector.make(a.frame, a.degree, acc)


def lambda_op(a: Multivector) -> Multivector:
    """Lambda = *s L *s, the degree -2 dual of L."""
    _require_transverse(a)
    if a.degree < 2:
        return Multivector.zero(a.frame, a.degree - 2)
    return symplectic_star(lefschetz_L(symplectic_star(a)))


def _vector_of(a: Multivector, monos: Sequence[tuple[int, ...]]) -> tuple[Fraction, ...]:
    d = dict(a.terms)
    return tuple(d.get(m, _ZERO) for m in monos)


def _from_vector(frame: ModelFrame, degree: int, monos, vec) -> Multivector:
    return Multivector.make(frame, degree, {m: c for m, c in zip(monos, vec) if c})


def operator_matrix(frame: ModelFrame, op, degree: int, out_degree: int) -> Matrix:
    """Matrix of a linear operator on transverse forms, monomial bases."""
    src = monomials(frame, degree)
    dst = monomials(frame, out_degree)
    cols = []
    for m in src:
        img = op(Multivector.make(frame, degree, {m: _ONE}))
        cols.append(_vector_of(img, dst))
    if not cols:
        return Matrix.zero(len(dst), 0)
    return Matrix.from_cols(cols, rows=len(dst))


def primitive_monomial_basis(frame: ModelFrame, degree: int) -> list[Multivector]:
    """Basis of the primitive forms (ker Lambda) of the given degree."""
    monos = monomials(frame, degree)
    if not monos:
        return []
    lam = operator_matrix(frame, lambda_op, degree, degree - 2)
    ker = kernel_basis(lam)
    return [_from_vector(frame, degree, monos, col) for col in ker.basis.columns()]


def primitive_decompose(a: Multivector) -> list[tuple[int, Multivector]]:
    """Write a homogeneous form as sum_i L^i beta_i with beta_i primitive.

    The components are found by solving the reconstruction system directly;
    uniqueness of the decomposition makes the system uniquely solvable.
    """
    _require_transverse(a)
    frame = a.frame
    r = a.degree
    monos_r = monomials(frame, r)
    if not monos_r:
        return []
    blocks: list[tuple[int, list[Multivector]]] = []
    cols = []
    for i in range(r // 2 + 1):
        d = r - 2 * i
        if d > frame.n:
            continue
        prim = primitive_monomial_basis(frame, d)
        if not prim:
            continue
        blocks.append((i, prim))
        for beta in prim:
            img = beta
            for _ in range(i):
                img = lefschetz_L(img)
            cols.append(_vector_of(img, monos_r))
    if not cols:
        if a.is_zero():
            return []
        raise ValueError("no primitive components available; inconsistent input")
    system = Matrix.from_cols(cols, rows=len(monos_r))
    sol = solve(system, _vector_of(a, monos_r))
    if sol is None:
        raise ValueError("primitive decomposition system is inconsistent")
    out = []
    pos = 0
    for i, prim in blocks:
        beta = Multivector.zero(frame, r - 2 * i)
        for basis_vec in prim:
            c = sol[pos]
            pos += 1
            if c:
                beta = beta + basis_vec.scaled(c)
        if not beta.is_zero():
            out.append((i, beta))
    return out


def form_inner_product(a: Multivector, b: Multivector) -> Fraction:
    """Metric inner product of forms; the monomial basis is orthonormal."""
    _check_frames(a, b)
    if a.degree != b.degree:
        return _ZERO
    d = dict(b.terms)
    return sum((c * d.get(idx, _ZERO) for idx, c in a.terms), _ZERO)


def star_relation_counterexamples(frame: ModelFrame) -> list[tuple]:
    """Exhaustive check of the eta-splitting rule for the full Hodge star.

    For every transverse monomial alpha of degree r and subset I of {1..s}:
    *(eta_I ^ alpha) = (-1)^(sign(I, I^c) + (s-|I|) r) eta_{I^c} ^ *_b alpha.
    Returns the list of (I, alpha-index, got, expected) mismatches.
    """
    s = frame.s
    bad = []
    for r in range(frame.transverse_dim + 1):
        for alpha_idx in monomials(frame, r):
            alpha = Multivector.make(frame, r, {alpha_idx: _ONE})
            for size in range(s + 1):
                for subset in itertools.combinations(range(1, s + 1), size):
                    eta_part = scalar(frame)
                    for j in subset:
                        eta_part = wedge(eta_part, eta(frame, j))
                    lhs = full_hodge_star(wedge(eta_part, alpha))
                    comp_part = scalar(frame)
                    for j in range(1, s + 1):
                        if j not in subset:
                            comp_part = wedge(comp_part, eta(frame, j))
                    sign = (-1) ** (index_subset_sign(subset, s) + (s - size) * r)
                    rhs = wedge(comp_part, hodge_star_transverse(alpha)).scaled(sign)
                    if lhs != rhs:
                        bad.append((subset, alpha_idx, lhs, rhs))
    return bad


def index_subset_sign(subset: Sequence[int], s: int) -> int:
    """Inversion parity (0 or 1) of (subset, complement) as a permutation of 1..s."""
    subset = list(subset)
    comp = [j for j in range(1, s + 1) if j not in subset]
    seq = subset + comp
    inv = sum(
        1 for x in range(len(seq)) for y in range(x + 1, len(seq)) if seq[x] > seq[y]
    )
    return inv % 2
