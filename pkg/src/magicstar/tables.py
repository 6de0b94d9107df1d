"""Dense integer tables backing the exhaustive verification sweeps.

For root systems small enough to square (levels 1 and 2), the sweeps run on
precomputed arrays: pairwise inner products, the sum table (index of
alpha+beta when it is a root), the all-pairs asymmetry sign matrix, the
decomposition matrix, and the Cartan pairing.  Everything is exact integer
arithmetic throughout.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asymmetry import EpsilonTable
from .roots import Family, RootSystem
from .simple import SimpleBasis

__all__ = ["SweepTables", "default_threads", "run_parallel"]

# Squaring the root set above this size is pointless: those levels are sampled.
DENSE_LIMIT = 4096


def default_threads(cli_value: int | None = None) -> int:
    """Worker count: MAGICSTAR_THREADS env var wins over the CLI flag."""
    env = os.environ.get("MAGICSTAR_THREADS")
    if env is not None:
        return max(1, int(env))
    if cli_value is not None:
        return max(1, int(cli_value))
    return 1


_WORKER_JOBS: dict[int, tuple] = {}


def _run_job(args):
    key, chunk = args
    fn, payload = _WORKER_JOBS[key]
    return fn(payload, chunk)


def run_parallel(fn, payload, chunks, threads: int):
    """Map fn(payload, chunk) over chunks, results in submission order.

    Workers are forked so the payload (large numpy tables) is shared
    copy-on-write; aggregation order is deterministic regardless of the
    worker count.
    """
    if threads <= 1 or len(chunks) <= 1:
        return [fn(payload, c) for c in chunks]
    key = id(payload)
    _WORKER_JOBS[key] = (fn, payload)
    try:
        ctx = __import__("multiprocessing").get_context("fork")
        with ProcessPoolExecutor(max_workers=threads, mp_context=ctx) as pool:
            return list(pool.map(_run_job, [(key, c) for c in chunks]))
    except (ValueError, OSError):
        return [fn(payload, c) for c in chunks]
    finally:
        _WORKER_JOBS.pop(key, None)


def encode_keys(doubled: np.ndarray) -> np.ndarray:
    """Injective int64 key per row for vectorized membership lookups."""
    n = doubled.shape[1]
    shifted = doubled.astype(np.int64) + 4  # room for sums of two roots
    weights = 9 ** np.arange(n, dtype=np.int64)
    return shifted @ weights


@dataclass
class MembershipIndex:
    """Sorted-key lookup: vectorized root membership and index recovery."""

    keys: np.ndarray  # sorted int64 keys
    order: np.ndarray  # permutation: keys[k] belongs to root order[k]

    @classmethod
    def for_system(cls, system: RootSystem) -> "MembershipIndex":
        raw = encode_keys(system.doubled_int())
        order = np.argsort(raw, kind="stable").astype(np.int32)
        return cls(raw[order], order)

    def lookup(self, doubled_rows: np.ndarray) -> np.ndarray:
        """Index of each row in the root system, -1 where absent."""
        k = encode_keys(doubled_rows)
        pos = np.searchsorted(self.keys, k)
        pos_c = np.minimum(pos, len(self.keys) - 1)
        hit = self.keys[pos_c] == k
        out = np.where(hit, self.order[pos_c], -1).astype(np.int32)
        return out


@dataclass
class SweepTables:
    """Bundle of dense tables for one root system (plus basis data for e6/e7/e8)."""

    system: RootSystem
    basis: SimpleBasis | None = None
    eps: EpsilonTable | None = None
    X: np.ndarray = field(init=False)  # (count, N) int16 doubled coordinates
    spin: np.ndarray = field(init=False)  # (count,) bool
    neg: np.ndarray = field(init=False)  # (count,) int32
    member: MembershipIndex = field(init=False)
    _G: np.ndarray | None = field(default=None, repr=False)
    _S: np.ndarray | None = field(default=None, repr=False)
    _E: np.ndarray | None = field(default=None, repr=False)
    _C: np.ndarray | None = field(default=None, repr=False)
    _CA: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.X = self.system.doubled_int().astype(np.int16)
        self.spin = self.system.sector_codes == 1
        self.neg = self.system.negation_table()
        self.member = MembershipIndex.for_system(self.system)
        if self.basis is None and self.system.algebra.family in (
            Family.E6,
            Family.E7,
            Family.E8,
        ):
            self.basis = SimpleBasis.for_algebra(self.system.algebra)
        if self.basis is not None and self.eps is None:
            self.eps = EpsilonTable.for_basis(self.basis)

    def __len__(self) -> int:
        return len(self.system)

    @property
    def dense_ok(self) -> bool:
        return len(self) <= DENSE_LIMIT

    def _require_dense(self, what: str):
        if not self.dense_ok:
            raise MemoryError(f"{what} needs |Phi| <= {DENSE_LIMIT}; use the sampled paths")

    @property
    def G(self) -> np.ndarray:
        """(count, count) int16 matrix of exact inner products."""
        if self._G is None:
            self._require_dense("the inner-product table")
            X32 = self.X.astype(np.int32)
            self._G = ((X32 @ X32.T) // 4).astype(np.int16)
        return self._G

    @property
    def S(self) -> np.ndarray:
        """Sum table: S[a, b] = index of root_a + root_b, or -1."""
        if self._S is None:
            self._require_dense("the sum table")
            count = len(self)
            S = np.full((count, count), -1, dtype=np.int32)
            for a in range(count):
                S[a] = self.member.lookup(self.X[a][None, :] + self.X)
            self._S = S
        return self._S

    @property
    def E(self) -> np.ndarray:
        """All-pairs asymmetry signs (int8 +-1); e6/e7/e8 only."""
        if self._E is None:
            self._require_dense("the asymmetry sign table")
            if self.eps is None:
                raise ValueError("no asymmetry function for this family")
            self._E = self.eps.sign_matrix(self.C)
        return self._E

    @property
    def C(self) -> np.ndarray:
        """(count, R) integer simple-root coefficients of every root."""
        if self._C is None:
            if self.basis is None:
                raise ValueError("no simple-root basis for this family")
            self._C = self.basis.decompose_all(self.system)
        return self._C

    @property
    def CA(self) -> np.ndarray:
        """(count, R) Cartan pairing: CA[a, i] = (root_a, alpha_i)."""
        if self._CA is None:
            if self.basis is None:
                raise ValueError("no simple-root basis for this family")
            A = self.basis._matrix.astype(np.int32)
            self._CA = ((self.X.astype(np.int32) @ A.T) // 4).astype(np.int16)
        return self._CA

    def partners(self, a: int) -> np.ndarray:
        """Roots b with root_a + root_b again a root (via the sum table)."""
        return np.nonzero(self.S[a] >= 0)[0].astype(np.int32)

    def partners_sparse(self, a: int) -> np.ndarray:
        """Same as partners() but without the dense sum table (any level)."""
        idx = self.member.lookup(self.X[a][None, :] + self.X)
        return np.nonzero(idx >= 0)[0].astype(np.int32)

    def sum_indices_sparse(self, a: int) -> np.ndarray:
        """Row a of the sum table computed on the fly (any level)."""
        return self.member.lookup(self.X[a][None, :] + self.X)
