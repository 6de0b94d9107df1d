"""Ordered simple-root basis and exact integer decomposition.

The basis for e6/e7/e8 at any level is

    alpha_i     = k_i - k_{i+1}          (1 <= i <= R-2)
    alpha_{R-1} = k_{R-2} + k_{R-1}
    alpha_R     = -(k_1 + ... + k_N)/2

ordered alpha_1 < ... < alpha_R.  Every root decomposes over it with integer
coefficients of uniform sign; the last coefficient is 0 or +-2 on the
orthogonal sector and +-1 on the spinorial one.  Decomposition is a single
precomputed exact rational solve (one factorization per algebra), restricted
to the coordinate subspace the roots span (last two / three coordinates tied
for e7 / e6).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .roots import AlgebraId, Family, RootSystem, RootVector, SPINORIAL

__all__ = ["SimpleBasis", "NotInSpan", "NotInLattice"]


class NotInSpan(ValueError):
    """Vector lies outside the rational span of the simple roots."""


class NotInLattice(ValueError):
    """Vector is in the span but its coefficients are not all integers."""


def _invert_exact(m: list[list[int]]) -> tuple[list[list[int]], int]:
    """Exact inverse of a square integer matrix as (numerator matrix, denominator)."""
    r = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(m)]
    for col in range(r):
        piv = next((i for i in range(col, r) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for i in range(r):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    inv = [row[r:] for row in a]
    den = 1
    for row in inv:
        for v in row:
            den = den * v.denominator // np.gcd(den, v.denominator)
    num = [[int(v * den) for v in row] for row in inv]
    return num, int(den)


@dataclass
class SimpleBasis:
    """The ordered basis Delta plus its exact decomposition solver."""

    algebra: AlgebraId
    alphas: list[RootVector]
    _matrix: np.ndarray  # (R, N) doubled coordinates of the alphas
    _cols: np.ndarray  # independent coordinate columns used by the solver
    _inv_num: np.ndarray  # (R, R) int64, inverse of _matrix[:, _cols] times _inv_den
    _inv_den: int

    @classmethod
    def for_algebra(cls, algebra: AlgebraId) -> "SimpleBasis":
        if algebra.family not in (Family.E6, Family.E7, Family.E8):
            raise ValueError(f"no simple generalized roots for {algebra.family.value}")
        N, R = algebra.ambient_dim, algebra.rank
        rows = []
        for i in range(R - 2):
            v = [0] * N
            v[i], v[i + 1] = 2, -2
            rows.append(v)
        v = [0] * N
        v[R - 3], v[R - 2] = 2, 2
        rows.append(v)
        rows.append([-1] * N)
        mat = np.array(rows, dtype=np.int64)
        cols = np.arange(R)  # first R coordinates determine a vector in the span
        num, den = _invert_exact(mat[:, cols].tolist())
        alphas = [
            RootVector(tuple(int(x) for x in row), SPINORIAL if k == R - 1 else "O", index=-1)
            for k, row in enumerate(rows)
        ]
        return cls(algebra, alphas, mat, cols, np.array(num, dtype=np.int64), den)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def rational_coefficients(self, vec) -> tuple[Fraction, ...]:
        """Exact coefficients of a doubled-coordinate vector over Delta.

        Raises NotInSpan when the vector is outside the span (for e6/e7 this
        is how untied coordinates are rejected).
        """
        d = vec.doubled if isinstance(vec, RootVector) else tuple(vec)
        N = self.algebra.ambient_dim
        if len(d) != N:
            raise NotInSpan(f"expected {N} coordinates, got {len(d)}")
        den = self._inv_den
        restricted = [Fraction(d[int(c)]) for c in self._cols]
        coeffs = []
        for j in range(self.rank):
            acc = Fraction(0)
            for i in range(self.rank):
                acc += restricted[i] * self._inv_num[i, j]
            coeffs.append(acc / den)
        # recomposition must reproduce all N coordinates, not just the solved ones
        for col in range(N):
            acc = Fraction(0)
            for i in range(self.rank):
                acc += coeffs[i] * int(self._matrix[i, col])
            if acc != Fraction(d[col]):
                raise NotInSpan("vector is outside the span of the simple roots")
        return tuple(coeffs)

    def decompose(self, vec) -> tuple[int, ...]:
        """Integer coefficients of a lattice vector over Delta."""
        coeffs = self.rational_coefficients(vec)
        if any(c.denominator != 1 for c in coeffs):
            raise NotInLattice(f"non-integer coefficients {coeffs}")
        return tuple(int(c) for c in coeffs)

    def lattice_element(self, coeffs) -> tuple[int, ...]:
        """Doubled coordinates of sum(c_i alpha_i); exact inverse of decompose."""
        c = np.asarray(coeffs, dtype=np.int64)
        if c.shape != (self.rank,):
            raise ValueError(f"expected {self.rank} coefficients")
        return tuple(int(x) for x in c @ self._matrix)

    def decompose_all(self, system: RootSystem) -> np.ndarray:
        """(count, R) integer coefficient matrix for every root, vectorized.

        Validates the full round trip C @ alphas == doubled for every root.
        """
        if system.algebra != self.algebra:
            raise ValueError("basis and system belong to different algebras")
        X = system.doubled_int().astype(np.int64)
        bound = int(np.abs(self._inv_num).max()) * 2 * self.rank
        if bound >= 2**60:
            raise OverflowError("solver entries too large for int64 path")
        tmp = X[:, self._cols] @ self._inv_num
        if (tmp % self._inv_den).any():
            raise NotInLattice("some root has non-integer coefficients")
        C = tmp // self._inv_den
        if not np.array_equal(C @ self._matrix, X):
            raise AssertionError("bulk decomposition failed round trip")
        return C.astype(np.int32)
