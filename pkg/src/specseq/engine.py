"""Spectral sequence of a finite-dimensional filtered cochain complex.

Pages are computed directly from the subquotient formula

    E_r^{p,q} = Z_r^{p,q} / B_r^{p,q},
    Z_r^{p,q} = F^p C^{p+q} cap d^{-1}(F^{p+r} C^{p+q+1}),
    B_r^{p,q} = (F^{p+1} C^{p+q} cap Z_r^{p,q})
                + (d(F^{p-r+1} C^{p+q-1}) cap F^p C^{p+q}),

with d_r the map induced by d on the subquotients.  The engine is generic:
any decreasing, exhaustive, bounded filtration preserved by d works.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import (
    Matrix,
    Quotient,
    Subspace,
    image_basis,
    induced_map,
    intersect,
    kernel_basis,
    preimage,
    quotient,
    rank,
    subspace_sum,
)


class FiltrationError(ValueError):
    """The data does not define a filtered cochain complex."""


@dataclass(frozen=True)
class FilteredComplex:
    """Cochain complex in degrees 0..K with a bounded decreasing filtration.

    `filtration[k][p]` is F^p in degree k for 0 <= p <= max_filtration + 1;
    F^0 must be everything and F^{max_filtration+1} must be zero.
    `d[k]` maps degree k to degree k+1; the last one targets the zero space.
    """

    chain_dims: tuple[int, ...]
    d: tuple[Matrix, ...]
    filtration: tuple[tuple[Subspace, ...], ...]
    max_filtration: int

    def __post_init__(self):
        K = len(self.chain_dims) - 1
        P = self.max_filtration
        if K < 0 or P < 0:
            raise FiltrationError("empty complex or negative filtration bound")
        if len(self.d) != K + 1 or len(self.filtration) != K + 1:
            raise FiltrationError("d and filtration must cover every degree")
        for k in range(K + 1):
            tgt = self.chain_dims[k + 1] if k + 1 <= K else 0
            if self.d[k].cols != self.chain_dims[k] or self.d[k].rows != tgt:
                raise FiltrationError(f"differential at degree {k} has the wrong shape")
            if len(self.filtration[k]) != P + 2:
                raise FiltrationError(f"filtration at degree {k} must list F^0..F^{P + 1}")
            if self.filtration[k][0].dim != self.chain_dims[k]:
                raise FiltrationError(f"F^0 at degree {k} is not the whole space")
            if self.filtration[k][P + 1].dim != 0:
                raise FiltrationError(f"F^{P + 1} at degree {k} is not zero")
            for p in range(P + 1):
                if self.filtration[k][p].ambient_dim != self.chain_dims[k]:
                    raise FiltrationError(f"F^{p} at degree {k} has wrong ambient dimension")
                if not self.filtration[k][p].contains(self.filtration[k][p + 1]):
                    raise FiltrationError(f"filtration not decreasing at degree {k}, p={p}")
        for k in range(K):
            if not (self.d[k + 1] @ self.d[k]).is_zero():
                raise FiltrationError(f"d o d != 0 at degree {k}")
        for k in range(K + 1):
            for p in range(1, P + 1):
                fp_next = self.filt(p, k + 1)
                for col in self.filtration[k][p].basis.columns():
                    if not fp_next.contains_vector(self.d[k].apply(col)):
                        raise FiltrationError(f"d does not preserve F^{p} at degree {k}")

    @property
    def max_degree(self) -> int:
        return len(self.chain_dims) - 1

    def dim(self, k: int) -> int:
        if 0 <= k <= self.max_degree:
            return self.chain_dims[k]
        return 0

    def filt(self, p: int, k: int) -> Subspace:
        """F^p in degree k, extended by full below p=0 and zero above the bound."""
        dim_k = self.dim(k)
        if not 0 <= k <= self.max_degree:
            return Subspace.zero(dim_k)
        if p <= 0:
            return Subspace.full(dim_k)
        if p > self.max_filtration:
            return Subspace.zero(dim_k)
        return self.filtration[k][p]

    def d_out(self, k: int) -> Matrix:
        """The differential out of degree k (into a zero space off the ends)."""
        if 0 <= k <= self.max_degree:
            return self.d[k]
        return Matrix.zero(self.dim(k + 1), self.dim(k))

    def cohomology_dims(self) -> tuple[int, ...]:
        out = []
        for k in range(self.max_degree + 1):
            rk_out = rank(self.d[k])
            rk_in = rank(self.d[k - 1]) if k > 0 else 0
            out.append(self.chain_dims[k] - rk_out - rk_in)
        return tuple(out)


def trivial_filtration(chain_dims: Sequence[int], d: Sequence[Matrix]) -> FilteredComplex:
    """The two-step filtration F^0 = everything, F^1 = 0."""
    chain_dims = tuple(chain_dims)
    filt = tuple(
        (Subspace.full(dim), Subspace.zero(dim)) for dim in chain_dims
    )
    return FilteredComplex(chain_dims, tuple(d), filt, 0)


@dataclass(frozen=True)
class PageCell:
    p: int
    q: int
    dim: int
    quotient: Quotient  # inside the chain space of degree p+q


@dataclass(frozen=True)
class SpectralPage:
    r: int
    cells: dict[tuple[int, int], PageCell]
    d_maps: dict[tuple[int, int], Matrix]  # (p,q) -> matrix into (p+r, q-r+1)

    def dim(self, p: int, q: int) -> int:
        cell = self.cells.get((p, q))
        return cell.dim if cell else 0

    def cell_dims(self) -> dict[tuple[int, int], int]:
        return {pq: c.dim for pq, c in self.cells.items() if c.dim}

    def antidiagonal_totals(self, max_degree: int) -> tuple[int, ...]:
        totals = [0] * (max_degree + 1)
        for (p, q), c in self.cells.items():
            k = p + q
            if 0 <= k <= max_degree:
                totals[k] += c.dim
        return tuple(totals)

    def differentials_vanish(self) -> bool:
        return all(m.is_zero() for m in self.d_maps.values())


def _cell_spaces(fc: FilteredComplex, r: int, p: int, k: int) -> tuple[Subspace, Subspace]:
    fp = fc.filt(p, k)
    z = intersect(fp, preimage(fc.d_out(k), fc.filt(p + r, k + 1)))
    b1 = intersect(fc.filt(p + 1, k), z)
    if k >= 1:
        d_in = fc.d_out(k - 1)
        prev = fc.filt(p - r + 1, k - 1)
        image = Subspace.span(fc.dim(k), [d_in.apply(col) for col in prev.basis.columns()])
        b2 = intersect(image, fp)
    else:
        b2 = Subspace.zero(fc.dim(k))
    return z, subspace_sum(b1, b2)


def compute_page(fc: FilteredComplex, r: int) -> SpectralPage:
    if r < 0:
        raise ValueError("page index must be non-negative")
    P = fc.max_filtration
    K = fc.max_degree
    cells: dict[tuple[int, int], PageCell] = {}
    for p in range(P + 1):
        for k in range(K + 1):
            z, b = _cell_spaces(fc, r, p, k)
            q = quotient(z, b)
            cells[(p, k - p)] = PageCell(p, k - p, q.dim, q)
    d_maps: dict[tuple[int, int], Matrix] = {}
    for (p, qq), cell in cells.items():
        k = p + qq
        target = cells.get((p + r, qq - r + 1))
        if target is None:
            # The target cell sits outside the stored grid, where it is zero.
            dim_t = fc.dim(k + 1)
            zero = Subspace.zero(dim_t)
            target = PageCell(p + r, qq - r + 1, 0, quotient(zero, zero))
        d_maps[(p, qq)] = induced_map(fc.d_out(k), cell.quotient, target.quotient)
    return SpectralPage(r, cells, d_maps)


def run_to_convergence(fc: FilteredComplex) -> tuple[list[SpectralPage], int]:
    """All pages through E_{P+2} (which is E_infinity) and the first stable page.

    Stability of page r means every later computed page has the same cell
    dimensions and all differentials from page r on vanish.
    """
    last = fc.max_filtration + 2
    pages = [compute_page(fc, r) for r in range(last + 1)]
    final_dims = pages[last].cell_dims()
    stable_at = last
    for r in range(last, -1, -1):
        if pages[r].cell_dims() == final_dims and pages[r].differentials_vanish():
            stable_at = r
        else:
            break
    return pages, stable_at


def infinity_page(fc: FilteredComplex) -> SpectralPage:
    return compute_page(fc, fc.max_filtration + 2)


def check_abutment(fc: FilteredComplex) -> bool:
    """Anti-diagonal totals of the stable page equal the cohomology dims."""
    einf = infinity_page(fc)
    return einf.antidiagonal_totals(fc.max_degree) == fc.cohomology_dims()
