"""Combinatorial cell complexes with Z2 incidence, and Z2 chains on them.

Cells of each dimension are dense integer ids.  Incidence is purely
combinatorial: a k-cell's boundary is a set of (k-1)-cell ids, understood
mod 2 (a cell glued twice to the same boundary cell cancels).  Geometric
data (coordinates, direction labels, colors, handedness) lives in per-cell
tag dictionaries and is never consulted by the chain algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp


class InvalidSizeError(ValueError):
    """Lattice extents violate a builder precondition."""


class InvalidFamilyError(ValueError):
    """Unknown lattice family identifier."""


def _symdiff(sets):
    """Symmetric difference of an iterable of iterables of ids."""
    out = set()
    for s in sets:
        out ^= set(s)
    return out


class CellComplex:
    """A finite cell complex with Z2 boundary incidence.

    Parameters
    ----------
    n_cells : list of int
        Number of cells per dimension, ``n_cells[k]`` for k-cells.
    boundary : list of list of frozenset
        ``boundary[k][i]`` is the set of (k-1)-cell ids in the boundary of
        k-cell ``i`` (empty list for k = 0).
    tags : list of dict, optional
        ``tags[k][i]`` is a metadata dict for k-cell ``i``.
    periodic : tuple of bool
        Per-axis periodicity flags (informational).
    """

    def __init__(self, n_cells, boundary, tags=None, periodic=(), name=""):
        self.n_cells = list(n_cells)
        self.dim = len(self.n_cells) - 1
        self.boundary = [[frozenset(b) for b in boundary[k]]
                         for k in range(len(self.n_cells))]
        if tags is None:
            tags = [[{} for _ in range(n)] for n in self.n_cells]
        self.tags = tags
        self.periodic = tuple(periodic)
        self.name = name
        self._coboundary = None
        self._bmat = {}

    # -- incidence ---------------------------------------------------------

    def coboundary_of(self, k, cell):
        """Ids of (k+1)-cells having `cell` in their boundary."""
        if self._coboundary is None:
            self._build_coboundary()
        return self._coboundary[k][cell]

    def _build_coboundary(self):
        cob = [[[] for _ in range(n)] for n in self.n_cells]
        for k in range(1, self.dim + 1):
            for i, b in enumerate(self.boundary[k]):
                for c in b:
                    cob[k - 1][c].append(i)
        self._coboundary = [[tuple(lst) for lst in level] for level in cob]

    def boundary_matrix(self, k):
        """Sparse Z2 boundary matrix from k-cells to (k-1)-cells (uint8)."""
        if k not in self._bmat:
            rows, cols = [], []
            for i, b in enumerate(self.boundary[k]):
                for c in b:
                    rows.append(c)
                    cols.append(i)
            nrow = self.n_cells[k - 1] if k >= 1 else 0
            self._bmat[k] = sp.csr_matrix(
                (np.ones(len(rows), dtype=np.uint8), (rows, cols)),
                shape=(nrow, self.n_cells[k]))
        return self._bmat[k]

    # -- validation --------------------------------------------------------

    def check(self):
        """Assert the complex invariants; raises AssertionError on failure."""
        for k in range(1, self.dim + 1):
            for i, b in enumerate(self.boundary[k]):
                for c in b:
                    assert 0 <= c < self.n_cells[k - 1], \
                        f"dim {k} cell {i}: boundary id {c} out of range"
        # d(d(cell)) = 0 for every cell
        for k in range(2, self.dim + 1):
            m = (self.boundary_matrix(k - 1) @ self.boundary_matrix(k)).toarray() % 2
            assert not m.any(), f"boundary^2 != 0 between dims {k} and {k-2}"
        return self

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.n_cells))

    def cells_with_tag(self, k, key, value=None):
        """Ids of k-cells whose tag `key` exists (and equals `value` if given)."""
        out = []
        for i, t in enumerate(self.tags[k]):
            if key in t and (value is None or t[key] == value):
                out.append(i)
        return out

    def __repr__(self):
        return f"CellComplex({self.name or 'anon'}, cells={self.n_cells})"


@dataclass
class BinaryChain:
    """A Z2 k-chain: a set of k-cell ids of an owning complex."""

    complex: CellComplex
    dim: int
    support: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.support = frozenset(self.support)
        if self.dim >= 0:
            n = self.complex.n_cells[self.dim]
            bad = [c for c in self.support if not (0 <= c < n)]
            if bad:
                raise ValueError(f"chain support {bad[:4]} outside dim-{self.dim} cells")

    def __xor__(self, other):
        if other.complex is not self.complex or other.dim != self.dim:
            raise ValueError("chains live on different complexes or dimensions")
        return BinaryChain(self.complex, self.dim, self.support ^ other.support)

    def __bool__(self):
        return bool(self.support)

    def __len__(self):
        return len(self.support)

    def indicator(self):
        v = np.zeros(self.complex.n_cells[self.dim], dtype=np.uint8)
        v[list(self.support)] = 1
        return v

    @staticmethod
    def from_indicator(cplx, dim, vec):
        return BinaryChain(cplx, dim, frozenset(np.nonzero(np.asarray(vec) % 2)[0].tolist()))


def boundary(chain: BinaryChain) -> BinaryChain:
    """Mod-2 boundary; dim-0 chains map to an empty chain flagged degenerate."""
    if chain.dim == 0:
        out = BinaryChain(chain.complex, 0, frozenset())
        out.dim = -1
        out.degenerate = True
        return out
    b = _symdiff(chain.complex.boundary[chain.dim][c] for c in chain.support)
    return BinaryChain(chain.complex, chain.dim - 1, frozenset(b))


def coboundary(chain: BinaryChain) -> BinaryChain:
    """Mod-2 coboundary: adjoint of `boundary` under the overlap pairing."""
    if chain.dim >= chain.complex.dim:
        raise ValueError("coboundary undefined at top dimension")
    cob = _symdiff(chain.complex.coboundary_of(chain.dim, c) for c in chain.support)
    return BinaryChain(chain.complex, chain.dim + 1, frozenset(cob))


def pairing(a: BinaryChain, b: BinaryChain) -> int:
    """Z2 overlap pairing: parity of the support intersection."""
    if a.dim != b.dim:
        raise ValueError("pairing requires equal dimensions")
    return len(a.support & b.support) % 2


def validate_chain(chain: BinaryChain, kind: str) -> BinaryChain:
    """Violation chain: boundary for kind='cycle', coboundary for 'cocycle'.

    An empty result means the chain satisfies the closure condition.
    """
    if kind == "cycle":
        return boundary(chain)
    if kind == "cocycle":
        return coboundary(chain)
    raise ValueError(f"kind must be 'cycle' or 'cocycle', got {kind!r}")
