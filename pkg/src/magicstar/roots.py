"""Exact root systems of the Magic Star algebras.

Each algebra family lives in an ambient Euclidean space with orthonormal
basis k_1, ..., k_N where N = 4(n+1) and n >= 1 is the periodicity level.
Roots are stored with *doubled* coordinates (twice the k-coefficients) so
that every coordinate of every root is an integer:

    e8: +-k_i +- k_j (i<j<=N)            and  (+-k_1 +- ... +- k_N)/2, even # of +
    e7: +-(k_{N-1}+k_N), +-k_i+-k_j (i<j<=N-2), spinors with the last two
        coordinates tied, even # of + over all N coordinates
    e6: +-k_i+-k_j (i<j<=N-3), spinors with the last three coordinates tied,
        even # of + over all N coordinates
    f4: +-k_i, +-k_i+-k_j (i<j<=N-4), spinors on the first N-4 coordinates
        with no parity constraint
    g2: the fixed 12-root system of g_2 (level independent); its short roots
        have thirds as coordinates and are kept as exact Fractions

"Even # of +" is counted over the N ambient coordinates, which is what makes
the e6/e7 sets literal subsets of the e8 set (a tied pair flips two signs at
once and never changes the parity; a tied triple flips three and always does).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

__all__ = [
    "Family",
    "AlgebraId",
    "RootVector",
    "RootSystem",
    "CapacityError",
    "DimensionMismatch",
    "generate",
    "inner",
    "is_root",
    "weyl_reflect",
    "sum_root",
    "write_roots_tsv",
    "read_roots_tsv",
]

# Sector tags.
ORTHOGONAL = "O"
SPINORIAL = "S"
SHORT_F4 = "SF4"
SHORT_G2 = "SG2"

_SECTOR_CODES = {ORTHOGONAL: 0, SPINORIAL: 1, SHORT_F4: 2, SHORT_G2: 3}
_SECTOR_NAMES = {v: k for k, v in _SECTOR_CODES.items()}

# Widest supported ambient dimension (spinor sign masks are 64-bit).
MAX_COORDS = 64


class CapacityError(ValueError):
    """Requested level needs more coordinates than the configured limit."""


class DimensionMismatch(ValueError):
    """Operands live in ambient spaces of different dimension."""


class Family(Enum):
    G2 = "g2"
    F4 = "f4"
    E6 = "e6"
    E7 = "e7"
    E8 = "e8"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AlgebraId:
    """A Magic Star algebra family together with its periodicity level."""

    family: Family
    level: int

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")

    @property
    def ambient_dim(self) -> int:
        """N = 4(n+1), the number of k-coordinates."""
        return 4 * (self.level + 1)

    @property
    def rank(self) -> int:
        """Dimension of the span of the roots."""
        N = self.ambient_dim
        return {
            Family.G2: 2,
            Family.F4: N - 4,
            Family.E6: N - 2,
            Family.E7: N - 1,
            Family.E8: N,
        }[self.family]

    @property
    def root_count(self) -> int:
        """Closed-form |Phi| (orthogonal-like plus spinorial sector sizes)."""
        N = self.ambient_dim
        return {
            Family.G2: 12,
            Family.F4: 2 * (N - 4) + 2 * (N - 4) * (N - 5) + 2 ** (N - 4),
            Family.E6: 2 * (N - 3) * (N - 4) + 2 ** (N - 3),
            Family.E7: 2 + 2 * (N - 2) * (N - 3) + 2 ** (N - 2),
            Family.E8: 2 * N * (N - 1) + 2 ** (N - 1),
        }[self.family]

    def __str__(self) -> str:
        return f"{self.family.value}(n={self.level})"


@dataclass(frozen=True)
class RootVector:
    """A single root: doubled coordinates plus its sector tag.

    ``doubled[i]`` is twice the coefficient of k_{i+1}; entries are ints for
    every family except g2, whose short roots carry exact Fractions.
    """

    doubled: tuple
    sector: str
    index: int = -1

    @property
    def mask(self) -> int:
        """Sign mask of a spinor: bit i set iff the k_{i+1} coefficient is +1/2."""
        if self.sector != SPINORIAL:
            raise ValueError("sign mask is defined for spinorial roots only")
        m = 0
        for i, d in enumerate(self.doubled):
            if d == 1:
                m |= 1 << i
        return m

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-d for d in self.doubled), self.sector)

    def __len__(self) -> int:
        return len(self.doubled)


def _coords(x) -> tuple:
    if isinstance(x, RootVector):
        return x.doubled
    return tuple(x)


def inner(a, b):
    """Exact scalar product: dot of doubled coordinates over 4.

    Returns an int whenever the value is integral (always the case for root
    pairs of one algebra), otherwise a Fraction.
    """
    da, db = _coords(a), _coords(b)
    if len(da) != len(db):
        raise DimensionMismatch(f"lengths {len(da)} vs {len(db)}")
    num = sum(x * y for x, y in zip(da, db))
    val = Fraction(num, 4)
    return int(val) if val.denominator == 1 else val


def weyl_reflect(x, rho):
    """Reflection of x in the hyperplane orthogonal to rho, exactly.

    Returns the doubled-coordinate tuple of x - 2 (x,rho)/(rho,rho) rho; it
    may or may not be a root, and for spinor pairs at level >= 2 it can have
    coordinates outside every root pattern.
    """
    dx, dr = _coords(x), _coords(rho)
    nr = inner(rho, rho)
    if nr == 0:
        raise ValueError("cannot reflect by the zero vector")
    t = Fraction(2) * Fraction(inner(x, rho)) / Fraction(nr)
    out = tuple(Fraction(a) - t * b for a, b in zip(dx, dr))
    return tuple(int(v) if v.denominator == 1 else v for v in out)


def _g2_roots():
    """The 12 roots of g2 in the plane spanned by k1-k2 and k1+k2-2k3."""
    long_roots = []
    for i, j in itertools.combinations(range(3), 2):
        v = [0, 0, 0]
        v[i], v[j] = 2, -2
        long_roots.append(tuple(v))
    short_roots = []
    third = Fraction(2, 3)
    for i in range(3):
        v = [third, third, third]
        v[i] = -2 * third
        short_roots.append(tuple(v))
    return long_roots, short_roots


def _classify(vec, algebra: AlgebraId):
    """Sector of a doubled-coordinate vector, or None if it is not a root."""
    N = algebra.ambient_dim
    fam = algebra.family
    if len(vec) != N:
        return None

    if fam is Family.G2:
        long_roots, short_roots = _g2_roots()
        pad = (0,) * (N - 3)
        head = tuple(vec[:3])
        if any(v != 0 for v in vec[3:]):
            return None
        for r in long_roots:
            if head == r or head == tuple(-x for x in r):
                return ORTHOGONAL
        for r in short_roots:
            if head == r or head == tuple(-x for x in r):
                return SHORT_G2
        return None

    if any(isinstance(v, Fraction) and v.denominator != 1 for v in vec):
        return None
    vec = tuple(int(v) for v in vec)

    support = [i for i, v in enumerate(vec) if v != 0]
    if all(abs(v) in (0, 2) for v in vec):
        if fam is Family.F4 and len(support) == 1 and support[0] <= N - 5:
            return SHORT_F4
        if len(support) != 2:
            return None
        i, j = support
        if abs(vec[i]) != 2 or abs(vec[j]) != 2:
            return None
        if fam is Family.E8:
            return ORTHOGONAL
        if fam is Family.E7:
            if j <= N - 3:
                return ORTHOGONAL
            # the only roots touching the tied pair are +-(k_{N-1}+k_N)
            if (i, j) == (N - 2, N - 1) and vec[i] == vec[j]:
                return ORTHOGONAL
            return None
        if fam is Family.E6:
            return ORTHOGONAL if j <= N - 4 else None
        if fam is Family.F4:
            return ORTHOGONAL if j <= N - 5 else None
        return None

    if fam is Family.F4:
        if all(abs(v) == 1 for v in vec[: N - 4]) and all(v == 0 for v in vec[N - 4 :]):
            return SPINORIAL
        return None
    if not all(abs(v) == 1 for v in vec):
        return None
    plus = sum(1 for v in vec if v == 1)
    if plus % 2 != 0:
        return None
    if fam is Family.E7 and vec[N - 2] != vec[N - 1]:
        return None
    if fam is Family.E6 and not (vec[N - 3] == vec[N - 2] == vec[N - 1]):
        return None
    return SPINORIAL


def is_root(vec, algebra: AlgebraId) -> bool:
    """Structural membership test; agrees with generate() by construction."""
    return _classify(_coords(vec), algebra) is not None


def _spinor_masks(algebra: AlgebraId) -> np.ndarray:
    """All spinor sign masks of the algebra, ascending as unsigned integers."""
    N = algebra.ambient_dim
    fam = algebra.family
    if fam is Family.F4:
        free = N - 4
        return np.arange(2**free, dtype=np.uint64)

    def even_parity(width):
        m = np.arange(2**width, dtype=np.uint64)
        bits = (m[:, None] >> np.arange(width, dtype=np.uint64)) & np.uint64(1)
        return m[bits.sum(axis=1) % 2 == 0], m[bits.sum(axis=1) % 2 == 1]

    if fam is Family.E8:
        even, _ = even_parity(N)
        return even
    if fam is Family.E7:
        pair = np.uint64((1 << (N - 2)) | (1 << (N - 1)))
        even, _ = even_parity(N - 2)
        return np.concatenate([even, even | pair])
    if fam is Family.E6:
        triple = np.uint64((1 << (N - 3)) | (1 << (N - 2)) | (1 << (N - 1)))
        even, odd = even_parity(N - 3)
        return np.concatenate([even, odd | triple])
    raise ValueError(f"{fam} has no spinorial sector")


def _orthogonal_block(algebra: AlgebraId):
    """Non-spinor roots as (doubled tuple, sector) pairs, lexicographic order."""
    N = algebra.ambient_dim
    fam = algebra.family
    out = []

    def two_index(limit):
        for i, j in itertools.combinations(range(limit), 2):
            for si in (-2, 2):
                for sj in (-2, 2):
                    v = [0] * N
                    v[i], v[j] = si, sj
                    out.append((tuple(v), ORTHOGONAL))

    if fam is Family.E8:
        two_index(N)
    elif fam is Family.E7:
        two_index(N - 2)
        for s in (-2, 2):
            v = [0] * N
            v[N - 2] = v[N - 1] = s
            out.append((tuple(v), ORTHOGONAL))
    elif fam is Family.E6:
        two_index(N - 3)
    elif fam is Family.F4:
        two_index(N - 4)
        for i in range(N - 4):
            for s in (-2, 2):
                v = [0] * N
                v[i] = s
                out.append((tuple(v), SHORT_F4))
    elif fam is Family.G2:
        long_roots, short_roots = _g2_roots()
        pad = (0,) * (N - 3)
        for r in long_roots:
            out.append((r + pad, ORTHOGONAL))
            out.append((tuple(-x for x in r) + pad, ORTHOGONAL))
        for r in short_roots:
            out.append((r + pad, SHORT_G2))
            out.append((tuple(-x for x in r) + pad, SHORT_G2))
    out.sort(key=lambda p: p[0])
    return out


def _mask_to_doubled(masks: np.ndarray, algebra: AlgebraId) -> np.ndarray:
    """Doubled coordinates (+-1, or 0 on f4 padding) from spinor sign masks."""
    N = algebra.ambient_dim
    bits = ((masks[:, None] >> np.arange(N, dtype=np.uint64)) & np.uint64(1)).astype(np.int8)
    d = 2 * bits - 1
    if algebra.family is Family.F4:
        d[:, N - 4 :] = 0
    return d


@dataclass
class RootSystem:
    """The complete, canonically ordered set of roots of one algebra.

    The orthogonal-like block comes first (lexicographic in doubled
    coordinates), then the spinors (ascending sign mask), so indices and every
    serialized artifact are stable across runs.  Immutable after generate().
    """

    algebra: AlgebraId
    doubled: np.ndarray  # (count, N) int8, or object array for g2
    sector_codes: np.ndarray  # (count,) uint8
    masks: np.ndarray  # (count,) uint64, 0 outside the spinor block
    orth_count: int  # size of the leading non-spinor block
    _index: dict = field(default_factory=dict, repr=False)
    _neg: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self._index:
            for i in range(len(self.doubled)):
                self._index[self._key(self.doubled[i])] = i

    @staticmethod
    def _key(row) -> tuple:
        return tuple(row.tolist()) if isinstance(row, np.ndarray) else tuple(row)

    def __len__(self) -> int:
        return len(self.doubled)

    @property
    def ambient_dim(self) -> int:
        return self.algebra.ambient_dim

    @property
    def spin_count(self) -> int:
        return len(self) - self.orth_count

    def sector(self, i: int) -> str:
        return _SECTOR_NAMES[int(self.sector_codes[i])]

    def root(self, i: int) -> RootVector:
        return RootVector(self._key(self.doubled[i]), self.sector(i), index=i)

    def __iter__(self):
        return (self.root(i) for i in range(len(self)))

    def index_of(self, vec) -> int | None:
        """Index of a doubled-coordinate vector in the canonical order, or None."""
        return self._index.get(self._key(_coords(vec)))

    def __contains__(self, vec) -> bool:
        return self.index_of(vec) is not None

    def negation_table(self) -> np.ndarray:
        """neg[i] = index of -root_i (every sector is closed under negation)."""
        if self._neg is None:
            neg = np.empty(len(self), dtype=np.int32)
            for i in range(len(self)):
                j = self.index_of([-v for v in self._key(self.doubled[i])])
                if j is None:
                    raise AssertionError("root set is not negation-closed")
                neg[i] = j
            self._neg = neg
        return self._neg

    def doubled_int(self) -> np.ndarray:
        """Doubled coordinates as an integer matrix (families other than g2)."""
        if self.algebra.family is Family.G2:
            raise ValueError("g2 roots are fractional; use the scalar API")
        return self.doubled


def generate(algebra: AlgebraId, max_coords: int = MAX_COORDS) -> RootSystem:
    """Enumerate the full root system in canonical deterministic order."""
    if algebra.ambient_dim > max_coords:
        raise CapacityError(
            f"N={algebra.ambient_dim} exceeds the {max_coords}-coordinate limit"
            f" (level must be <= {max_coords // 4 - 1})"
        )
    N = algebra.ambient_dim
    orth = _orthogonal_block(algebra)

    if algebra.family is Family.G2:
        doubled = np.empty((len(orth), N), dtype=object)
        for i, (v, _) in enumerate(orth):
            doubled[i] = v
        sectors = np.array([_SECTOR_CODES[s] for _, s in orth], dtype=np.uint8)
        masks = np.zeros(len(orth), dtype=np.uint64)
        return RootSystem(algebra, doubled, sectors, masks, orth_count=len(orth))

    sp_masks = _spinor_masks(algebra)
    sp_doubled = _mask_to_doubled(sp_masks, algebra)
    orth_doubled = np.array([v for v, _ in orth], dtype=np.int8).reshape(len(orth), N)
    doubled = np.concatenate([orth_doubled, sp_doubled])
    sectors = np.concatenate(
        [
            np.array([_SECTOR_CODES[s] for _, s in orth], dtype=np.uint8),
            np.full(len(sp_masks), _SECTOR_CODES[SPINORIAL], dtype=np.uint8),
        ]
    )
    masks = np.concatenate([np.zeros(len(orth), dtype=np.uint64), sp_masks])
    system = RootSystem(algebra, doubled, sectors, masks, orth_count=len(orth))
    if len(system) != algebra.root_count:
        raise AssertionError(
            f"{algebra}: generated {len(system)} roots, expected {algebra.root_count}"
        )
    return system


def sum_root(a, b, system: RootSystem) -> int | None:
    """Index of a+b when the sum is a root, else None."""
    da, db = _coords(a), _coords(b)
    if len(da) != len(db):
        raise DimensionMismatch(f"lengths {len(da)} vs {len(db)}")
    return system.index_of(tuple(x + y for x, y in zip(da, db)))


def spinor_inner_from_masks(mask_a: int, mask_b: int, N: int) -> int:
    """(alpha,beta) of two full spinors from their sign masks.

    The spinors agree where the masks agree, so the dot of the doubled
    coordinates is N - 2 popcount(xor) and the inner product is that over 4.
    Valid for full (e8-style) spinors where every coordinate is +-1/2.
    """
    diff = ((mask_a ^ mask_b) & ((1 << N) - 1)).bit_count()
    num = N - 2 * diff
    if num % 4 != 0:
        raise ValueError("mask inner product is not integral")
    return num // 4


def _fmt(v) -> str:
    return str(v)


def write_roots_tsv(system: RootSystem, path_or_file) -> None:
    """Root list export: header line then `index<TAB>sector<TAB>d_1 ... d_N`."""
    a = system.algebra
    lines = [
        f"#algebra={a.family.value} n={a.level} N={a.ambient_dim} R={a.rank} count={len(system)}"
    ]
    for i in range(len(system)):
        coords = " ".join(_fmt(v) for v in RootSystem._key(system.doubled[i]))
        lines.append(f"{i}\t{system.sector(i)}\t{coords}")
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w", newline="\n") as fh:
            fh.write(text)


def read_roots_tsv(path) -> list[tuple[int, str, tuple]]:
    """Parse a root TSV back into (index, sector, doubled) triples."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            idx, sector, coords = line.split("\t")
            vals = tuple(
                Fraction(tok) if "/" in tok else int(tok) for tok in coords.split(" ")
            )
            out.append((int(idx), sector, vals))
    return out
