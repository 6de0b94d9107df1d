"""The asymmetry function on the simple-root lattice.

On basis pairs the function is

    eps(alpha_i, alpha_j) = -1  if i == j,
                            -1  if alpha_i + alpha_j is a root and i < j,
                            +1  otherwise,

extended bimultiplicatively to the whole lattice L = Z-span(Delta).  We never
multiply +-1 factors in a loop: the extension is the parity of a mod-2
bilinear form, so one R x R bit matrix evaluates eps on any pair of
coefficient vectors in O(R^2) integer ops (and as three small matmuls for
all-pairs sweeps).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .roots import AlgebraId, is_root
from .simple import SimpleBasis

__all__ = ["EpsilonTable"]


@dataclass
class EpsilonTable:
    """Parity matrix realizing the asymmetry function on the lattice."""

    algebra: AlgebraId
    basis: SimpleBasis
    parity: np.ndarray  # (R, R) uint8; entry 1 means the basis value is -1

    @classmethod
    def for_basis(cls, basis: SimpleBasis) -> "EpsilonTable":
        R = basis.rank
        par = np.zeros((R, R), dtype=np.uint8)
        for i in range(R):
            par[i, i] = 1
            for j in range(i + 1, R):
                s = tuple(
                    a + b for a, b in zip(basis.alphas[i].doubled, basis.alphas[j].doubled)
                )
                # the "otherwise" branch applies for i > j even when the sum
                # is a root, so only the upper triangle is ever set
                if is_root(s, basis.algebra):
                    par[i, j] = 1
        return cls(basis.algebra, basis, par)

    @property
    def rank(self) -> int:
        return self.basis.rank

    def epsilon(self, coeffs_a, coeffs_b) -> int:
        """Sign eps(a, b) for two lattice elements given by integer coefficients."""
        a = np.asarray(coeffs_a, dtype=np.int64) & 1
        b = np.asarray(coeffs_b, dtype=np.int64) & 1
        if a.shape != (self.rank,) or b.shape != (self.rank,):
            raise ValueError(f"expected coefficient vectors of length {self.rank}")
        bit = int(a @ self.parity.astype(np.int64) @ b) & 1
        return -1 if bit else 1

    def epsilon_doubled(self, vec_a, vec_b) -> int:
        """Sign eps(a, b) for two lattice vectors in doubled coordinates."""
        return self.epsilon(self.basis.decompose(vec_a), self.basis.decompose(vec_b))

    def sign_matrix(self, coeff_matrix: np.ndarray) -> np.ndarray:
        """(m, m) int8 matrix of eps values over all pairs of the given rows."""
        bits = (coeff_matrix.astype(np.int64) & 1).astype(np.uint8)
        q = (bits @ self.parity) % 2
        s = (q.astype(np.int32) @ bits.T.astype(np.int32)) % 2
        return (1 - 2 * s).astype(np.int8)

    def pairwise_signs(self, coeffs_a: np.ndarray, coeffs_b: np.ndarray) -> np.ndarray:
        """Row-wise eps(a_k, b_k) for two stacks of coefficient vectors."""
        a = (np.asarray(coeffs_a, dtype=np.int64) & 1).astype(np.int64)
        b = (np.asarray(coeffs_b, dtype=np.int64) & 1).astype(np.int64)
        bit = np.einsum("ki,ij,kj->k", a, self.parity.astype(np.int64), b) % 2
        return (1 - 2 * bit).astype(np.int8)
