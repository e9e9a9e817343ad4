"""Exact rational homology of integer chain complexes.

Betti numbers come from boundary ranks computed fraction-free; the oracle at
the bottom recomputes coinvariant Betti numbers along the other route
(homology of the full complex first, then the averaging idempotent), which
is legitimate because rational group algebras are semisimple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import BasisCapExceeded, NotAComplex
from .intmatrix import SparseIntMatrix, rank_exact
from .lattice import chains_up_to, subgroup_lattice

if TYPE_CHECKING:
    from .groups import FiniteGroup
    from .lattice import FilteredChainComplex

DEFAULT_BASIS_CAP = 20000


@dataclass(frozen=True)
class HomologyResult:
    """Per-degree rational Betti numbers of one chain complex."""

    betti: tuple[int, ...]
    euler: int
    dims: tuple[int, ...]
    ranks: tuple[int, ...]


def betti_numbers(C: FilteredChainComplex) -> HomologyResult:
    """Betti numbers betti[k] = dims[k] - rank d_k - rank d_{k+1}.

    Verifies d o d = 0 first and reports the earliest bad column otherwise.
    Reduced-flavor complexes yield the reduced homology of the collapsed
    quotient space by construction.
    """
    dims = C.dims
    top = len(dims) - 1
    for k in range(1, top):
        product = C.boundaries[k].matmul(C.boundaries[k + 1])
        if not product.is_zero:
            raise NotAComplex(f"d_{k} after d_{k + 1} is nonzero",
                              column=product.entries[0][1])
    ranks = [0] * (top + 1)
    for k in range(1, top + 1):
        ranks[k] = rank_exact(C.boundaries[k])
    betti = []
    for k in range(top + 1):
        upper = ranks[k + 1] if k < top else 0
        b = dims[k] - ranks[k] - upper
        assert b >= 0, "negative Betti number"
        betti.append(b)
    euler = sum(b if k % 2 == 0 else -b for k, b in enumerate(betti))
    assert euler == sum(d if k % 2 == 0 else -d for k, d in enumerate(dims)), \
        "Euler characteristic mismatch"
    return HomologyResult(tuple(betti), euler, dims, tuple(ranks))


# ---------------------------------------------------------------------------
# dense exact linear algebra over Fraction (oracle machinery)


def _row_reduce(mat: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form; returns the pivot columns."""
    if not mat:
        return []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return pivots


def _nullspace(rows_matrix: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Kernel basis of the matrix given as a list of rows, acting on ncols coords."""
    mat = [row[:] for row in rows_matrix]
    pivots = _row_reduce(mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][free]
        basis.append(vec)
    return basis


class _SpanTracker:
    """Incremental column span with exact coordinates.

    Keeps an echelonized copy of the accepted vectors plus bookkeeping to
    express later vectors in terms of them.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[Fraction]] = []   # echelon rows, augmented by coords
        self.pivots: list[int] = []
        self.count = 0

    def add(self, vec: list[Fraction]) -> bool:
        """Try to add; returns True when the vector enlarges the span."""
        coords = [Fraction(0)] * (self.count + 1)
        coords[self.count] = Fraction(1)
        row = list(vec) + coords
        for er, pc in zip(self.rows, self.pivots):
            if row[pc] != 0:
                f = row[pc]
                row = [a - f * b for a, b in zip(row, er + [Fraction(0)] *
                                                 (len(row) - len(er)))]
        pivot = next((i for i in range(self.dim) if row[i] != 0), None)
        if pivot is None:
            return False
        inv = Fraction(1) / row[pivot]
        row = [x * inv for x in row]
        self.rows = [r + [Fraction(0)] for r in self.rows]
        self.rows.append(row)
        self.pivots.append(pivot)
        self.count += 1
        return True

    def coordinates(self, vec: list[Fraction]) -> list[Fraction] | None:
        """Coefficients expressing vec in the accepted vectors, or None."""
        row = list(vec) + [Fraction(0)] * self.count
        for er, pc in zip(self.rows, self.pivots):
            if row[pc] != 0:
                f = row[pc]
                row = [a - f * b for a, b in zip(row, er)]
        if any(row[i] != 0 for i in range(self.dim)):
            return None
        return [-x for x in row[self.dim:]]


def _dense_rank(mat: list[list[Fraction]]) -> int:
    work = [row[:] for row in mat]
    return len(_row_reduce(work))


def coinvariants_of_homology_oracle(G: FiniteGroup, n: int,
                                    basis_cap: int = DEFAULT_BASIS_CAP) -> list[int]:
    """Coinvariant homology dimensions, computed the other way around.

    Builds the full chain complex on all chains (no conjugation quotient),
    computes its rational homology by dense exact elimination, then returns
    the rank of the averaging idempotent (1/|G|) sum_g g on each homology
    degree. Semisimplicity over the rationals makes this the dimension of
    the coinvariants, so it cross-validates betti_numbers on the coinvariant
    complex without sharing any code path with it.
    """
    lat = subgroup_lattice(G)
    chains = chains_up_to(G, n)
    if len(chains) > basis_cap:
        raise BasisCapExceeded(
            f"full complex has {len(chains)} chains, above the cap {basis_cap}")
    by_degree: dict[int, list[tuple[int, ...]]] = {}
    for chain in chains:
        by_degree.setdefault(chain.degree, []).append(chain.subgroup_ids)
    top = max(by_degree)
    bases = [sorted(by_degree.get(k, [])) for k in range(top + 1)]
    index_of = [{ids: i for i, ids in enumerate(level)} for level in bases]

    def boundary_columns(k: int) -> list[list[Fraction]]:
        rows = len(bases[k - 1])
        cols = []
        for ids in bases[k]:
            col = [Fraction(0)] * rows
            for i in range(k + 1):
                face = ids[:i] + ids[i + 1:]
                col[index_of[k - 1][face]] += 1 if i % 2 == 0 else -1
            cols.append(col)
        return cols

    # distinct conjugation permutations of subgroup ids, with multiplicities
    action = list(zip(lat.conj_perms, lat.conj_counts))
    identity_count = G.order - sum(lat.conj_counts)

    out: list[int] = []
    for k in range(top + 1):
        dim = len(bases[k])
        if k == 0:
            kernel = [[Fraction(1) if i == j else Fraction(0) for i in range(dim)]
                      for j in range(dim)]
        else:
            cols = boundary_columns(k)
            as_rows = [[cols[j][i] for j in range(dim)]
                       for i in range(len(bases[k - 1]))]
            kernel = _nullspace(as_rows, dim)
        tracker = _SpanTracker(dim)
        if k < top:
            for col in boundary_columns(k + 1):
                tracker.add(col)
        homology_reps: list[list[Fraction]] = []
        for vec in kernel:
            if tracker.add(vec):
                homology_reps.append(vec)
        if not homology_reps:
            out.append(0)
            continue
        boundary_rank = tracker.count - len(homology_reps)
        averaged = []
        for vec in homology_reps:
            acc = [v * identity_count for v in vec]
            for perm, count in action:
                for i, v in enumerate(vec):
                    if v:
                        src = bases[k][i]
                        img = index_of[k][tuple(perm[s] for s in src)]
                        acc[img] += v * count
            averaged.append([Fraction(a, G.order) for a in acc])
        coords = []
        for vec in averaged:
            co = tracker.coordinates(vec)
            assert co is not None, "averaged cycle left the cycle space"
            coords.append(co[boundary_rank:])
        out.append(_dense_rank(coords))
    return out
