"""Magic Star projection, table verification, nested stars, and gradings.

Every root is sent to the integer pair (r, s) of its scalar products with
k1-k2 and k1+k2-2k3 (or k4-k5 and k4+k5-2k6 for the sub-star of the center).
The 13 occupied positions form a six-pointed star: six outer points carrying
one a2-type root each, six tips, and the center.  The expected contents of
every cell are generated independently from their explicit coordinate
patterns, so the comparison is a set-level check, not just a count.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .report import VerifyReport
from .roots import (
    AlgebraId,
    Family,
    RootSystem,
    generate,
)

__all__ = [
    "StarCell",
    "project",
    "axes_for",
    "verify_tables",
    "verify_nested_star",
    "verify_e7_decomposition",
    "grade",
    "grade_all",
    "grading_piece_sizes",
    "verify_grading",
    "emit_star_svg",
    "write_cells_tsv",
]

OUTER_POSITIONS = ((2, 0), (-2, 0), (-1, 3), (1, -3), (-1, -3), (1, 3))
TIP_POSITIONS = ((0, 2), (0, -2), (1, 1), (-1, -1), (-1, 1), (1, -1))
ALLOWED_POSITIONS = frozenset(OUTER_POSITIONS) | frozenset(TIP_POSITIONS) | {(0, 0)}


@dataclass
class StarCell:
    """Roots landing on one (r, s) position of the star."""

    coords: tuple[int, int]
    indices: np.ndarray
    orth_like: int  # non-spinor roots in the cell
    spin: int

    @property
    def size(self) -> int:
        return self.orth_like + self.spin


def axes_for(N: int, which: str = "123") -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Doubled coordinates of the projection plane axes."""
    a1, a2 = [0] * N, [0] * N
    if which == "123":
        i, j, l = 0, 1, 2
    elif which == "456":
        i, j, l = 3, 4, 5
    else:
        raise ValueError("axes must be '123' or '456'")
    a1[i], a1[j] = 2, -2
    a2[i], a2[j], a2[l] = 2, 2, -4
    return tuple(a1), tuple(a2)


def project(system: RootSystem, axes: str = "123") -> dict[tuple[int, int], StarCell]:
    """Partition the roots into star cells by exact (r, s) inner products."""
    N = system.ambient_dim
    a1, a2 = axes_for(N, axes)
    if system.algebra.family is Family.G2:
        rs = []
        for i in range(len(system)):
            d = system.root(i).doubled
            r = sum(Fraction(x) * y for x, y in zip(d, a1)) / 4
            s = sum(Fraction(x) * y for x, y in zip(d, a2)) / 4
            if r.denominator != 1 or s.denominator != 1:
                raise AssertionError("fractional star coordinates")
            rs.append((int(r), int(s)))
        rs = np.array(rs, dtype=np.int64)
    else:
        X = system.doubled_int().astype(np.int64)
        num1, num2 = X @ np.array(a1), X @ np.array(a2)
        if (num1 % 4).any() or (num2 % 4).any():
            raise AssertionError("fractional star coordinates")
        rs = np.stack([num1 // 4, num2 // 4], axis=1)

    spin = system.sector_codes == 1
    cells: dict[tuple[int, int], StarCell] = {}
    order = np.lexsort((rs[:, 1], rs[:, 0]))
    for key, grp in itertools.groupby(order, key=lambda i: (int(rs[i, 0]), int(rs[i, 1]))):
        idx = np.fromiter(grp, dtype=np.int32)
        idx.sort()
        cells[key] = StarCell(
            key, idx, int((~spin[idx]).sum()), int(spin[idx].sum())
        )
    return cells


# -- expected cell contents straight from the coordinate patterns -------------


def _spinors(
    N: int,
    fixed: dict[int, int],
    tied_blocks: list[list[int]],
    parity_even: bool,
    zero: tuple[int, ...] = (),
):
    """Doubled spinor tuples: +-1 entries given fixed signs and tied blocks.

    ``fixed`` maps coordinate -> +-1; each tied block shares one sign; the
    ``zero`` coordinates stay 0 (the f4 padding); the rest are free.  If
    parity_even, keep only vectors with an even number of +1 entries among
    all N coordinates.
    """
    taken = set(fixed) | {i for blk in tied_blocks for i in blk} | set(zero)
    free = [i for i in range(N) if i not in taken]
    out = []
    for tied_signs in itertools.product((-1, 1), repeat=len(tied_blocks)):
        for free_signs in itertools.product((-1, 1), repeat=len(free)):
            v = [0] * N
            for i, sg in fixed.items():
                v[i] = sg
            for blk, sg in zip(tied_blocks, tied_signs):
                for i in blk:
                    v[i] = sg
            for i, sg in zip(free, free_signs):
                v[i] = sg
            if parity_even and sum(1 for x in v if x == 1) % 2:
                continue
            out.append(tuple(v))
    return out


def _two_index(N: int, lo: int, hi: int):
    """+-k_i +- k_j doubled tuples over lo <= i < j < hi (0-based)."""
    out = []
    for i, j in itertools.combinations(range(lo, hi), 2):
        for si in (-2, 2):
            for sj in (-2, 2):
                v = [0] * N
                v[i], v[j] = si, sj
                out.append(tuple(v))
    return out


def _single(N: int, i: int, sign: int, extra: dict[int, int] | None = None):
    v = [0] * N
    if extra:
        for k, sg in extra.items():
            v[k] = sg
    v[i] = sign
    return tuple(v)


def _tip_orth(N: int, plus: tuple[int, int], minus: int, other_lo: int, other_hi: int, singles: bool):
    """Orthogonal tip content: k_p+k_q, then -k_m (+-k_i over the free range).

    With ``singles`` (the f4 pattern) the bare -k_m is included on its own.
    """
    i, j = plus
    v = [0] * N
    v[i], v[j] = 2, 2
    out = [tuple(v)]
    if singles:
        out.append(_single(N, minus, -2))
    for t in range(other_lo, other_hi):
        for sg in (-2, 2):
            out.append(_single(N, t, sg, extra={minus: -2}))
    return out


_TIP_PATTERNS = {
    # (r, s) -> (pair with + sign, index with - sign) among the first three coords
    (0, 2): ((0, 1), 2),
    (0, -2): None,  # negation of (0, 2)
    (1, 1): ((1, 2), 0),  # -k2-k3, +k1 ... sign-flipped below
    (-1, -1): None,
    (-1, 1): ((0, 2), 1),
    (1, -1): None,
}


def expected_cells(algebra: AlgebraId) -> dict[tuple[int, int], set]:
    """Expected doubled-coordinate content of every star cell, per family."""
    N = algebra.ambient_dim
    fam = algebra.family
    if fam is Family.E8:
        hi, tied, singles = N, [], False
    elif fam is Family.E7:
        hi, tied, singles = N - 2, [[N - 2, N - 1]], False
    elif fam is Family.E6:
        hi, tied, singles = N - 3, [[N - 3, N - 2, N - 1]], False
    elif fam is Family.F4:
        hi, tied, singles = N - 4, [], True
    else:
        raise ValueError("tables cover f4/e6/e7/e8")
    parity = fam is not Family.F4
    pad = tuple(i for i in range(hi, N) if not any(i in blk for blk in tied))

    cells: dict[tuple[int, int], set] = {}
    # outer points: the a2 hexagon on the first three coordinates
    outer_vectors = {
        (2, 0): (2, -2, 0),
        (-1, 3): (0, 2, -2),
        (-1, -3): (-2, 0, 2),
    }
    for pos, head in outer_vectors.items():
        v = tuple(head) + (0,) * (N - 3)
        cells[pos] = {v}
        cells[(-pos[0], -pos[1])] = {tuple(-x for x in v)}

    # center: everything orthogonal to the plane
    center = set(_two_index(N, 3, hi))
    if singles:
        for i in range(3, hi):
            center.add(_single(N, i, 2))
            center.add(_single(N, i, -2))
    if fam is Family.E7:
        v = [0] * N
        v[N - 2] = v[N - 1] = 2
        center.add(tuple(v))
        center.add(tuple(-x for x in v))
    center |= set(_spinors(N, {}, [[0, 1, 2]] + tied, parity, zero=pad))
    cells[(0, 0)] = center

    # tips: one +pair/-single pattern each, the opposite tip by negation
    for pos in ((0, 2), (1, 1), (-1, 1)):
        pair, m = _TIP_PATTERNS[pos]
        if pos == (0, 2):
            orth = _tip_orth(N, pair, m, 3, hi, singles)
            spins = _spinors(N, {0: 1, 1: 1, 2: -1}, tied, parity, zero=pad)
        elif pos == (1, 1):
            # -k2-k3 and +k1 +- k_i; spinors (k1 - k2 - k3 ...)/2
            base = [0] * N
            base[1] = base[2] = -2
            orth = [tuple(base)]
            if singles:
                orth.append(_single(N, 0, 2))
            for t in range(3, hi):
                for sg in (-2, 2):
                    orth.append(_single(N, t, sg, extra={0: 2}))
            spins = _spinors(N, {0: 1, 1: -1, 2: -1}, tied, parity, zero=pad)
        else:
            base = [0] * N
            base[0] = base[2] = -2
            orth = [tuple(base)]
            if singles:
                orth.append(_single(N, 1, 2))
            for t in range(3, hi):
                for sg in (-2, 2):
                    orth.append(_single(N, t, sg, extra={1: 2}))
            spins = _spinors(N, {0: -1, 1: 1, 2: -1}, tied, parity, zero=pad)
        cells[pos] = set(orth) | set(spins)
        cells[(-pos[0], -pos[1])] = {tuple(-x for x in v) for v in cells[pos]}
    return cells


def closed_form_counts(algebra: AlgebraId) -> dict[tuple[int, int], tuple[int, int]]:
    """(orthogonal-like, spinorial) closed forms per cell from the tables."""
    N = algebra.ambient_dim
    fam = algebra.family
    if fam is Family.E8:
        tip = (2 * N - 5, 2 ** (N - 4))
        center = (2 * (N - 3) * (N - 4), 2 ** (N - 3))
    elif fam is Family.E7:
        tip = (2 * N - 9, 2 ** (N - 5))
        center = (2 * (N * N - 11 * N + 31), 2 ** (N - 4))
    elif fam is Family.E6:
        tip = (2 * N - 11, 2 ** (N - 6))
        center = (2 * (N - 6) * (N - 7), 2 ** (N - 5))
    elif fam is Family.F4:
        tip = (2 * N - 12, 2 ** (N - 7))
        center = (2 * (N - 7) ** 2, 2 ** (N - 6))
    else:
        raise ValueError("tables cover f4/e6/e7/e8")
    out = {pos: (1, 0) for pos in OUTER_POSITIONS}
    out[(0, 0)] = center
    for pos in TIP_POSITIONS:
        out[pos] = tip
    return out


def verify_tables(
    families=(Family.F4, Family.E6, Family.E7, Family.E8),
    levels=(1, 2, 3, 4),
) -> VerifyReport:
    """Every cell of every star matches both the closed-form counts and the
    exact expected root sets; totals match the sector count formulas."""
    t0 = time.time()
    rep = VerifyReport(
        suite="tables",
        algebra="+".join(f.value for f in families),
        level=levels[0] if len(levels) == 1 else 0,
    )
    for fam in families:
        for n in levels:
            algebra = AlgebraId(fam, n)
            system = generate(algebra)
            cells = project(system)
            want_counts = closed_form_counts(algebra)
            if set(cells) != set(want_counts):
                rep.fail(f"{algebra}: occupied positions {sorted(cells)} differ")
                continue
            want_sets = expected_cells(algebra)
            for pos, cell in sorted(cells.items()):
                rep.checks += 1
                if (cell.orth_like, cell.spin) != want_counts[pos]:
                    rep.fail(
                        f"{algebra} cell {pos}: counts {(cell.orth_like, cell.spin)}"
                        f" != closed form {want_counts[pos]}"
                    )
                got = {tuple(int(v) for v in system.doubled[i]) for i in cell.indices}
                rep.checks += 1
                if got != want_sets[pos]:
                    rep.fail(f"{algebra} cell {pos}: membership differs from the table")
            rep.checks += 1
            if sum(c.size for c in cells.values()) != algebra.root_count:
                rep.fail(f"{algebra}: cell sizes do not add up to |Phi|")
    rep.elapsed = time.time() - t0
    return rep


# -- nested star and the e7 split -------------------------------------------


def _relabel_center_to_e6(vec: tuple[int, ...], N: int) -> tuple[int, ...]:
    """Send a center root of the big star to e6 coordinates: k4..kN shift down
    three slots, the tied triple k1+k2+k3 becomes the trailing tied block."""
    head = vec[3:]
    if not (vec[0] == vec[1] == vec[2]):
        raise AssertionError("center root without a tied leading triple")
    return head + (vec[0], vec[0], vec[0])


def verify_nested_star(n: int) -> VerifyReport:
    """The center of the e8 star *is* e6 (exact bijection), and projecting the
    center again yields the sub-star with the tabulated cell counts."""
    t0 = time.time()
    rep = VerifyReport(suite="nested", algebra="e8", level=n)
    e8 = generate(AlgebraId(Family.E8, n))
    e6 = generate(AlgebraId(Family.E6, n))
    N = e8.ambient_dim
    cells = project(e8)
    center = cells[(0, 0)]

    mapped = set()
    for i in center.indices:
        v = tuple(int(x) for x in e8.doubled[i])
        w = _relabel_center_to_e6(v, N)
        mapped.add(w)
        # parity transports: the tied triple contributes one sign either way
        if e8.sector(int(i)) == "S":
            rep.checks += 1
            plus_before = sum(1 for x in v if x == 1)
            plus_after = sum(1 for x in w if x == 1)
            if plus_before % 2 or plus_after % 2:
                rep.fail(f"parity broke under relabeling at center root {int(i)}")
    e6_set = {tuple(int(x) for x in e6.doubled[i]) for i in range(len(e6))}
    rep.checks += 1
    if mapped != e6_set:
        rep.fail(
            f"center-of-e8 does not map onto e6: {len(mapped & e6_set)} shared,"
            f" {len(mapped - e6_set)} extra, {len(e6_set - mapped)} missing"
        )
    rep.checks += 1
    if len(mapped) != center.size:
        rep.fail("relabeling is not injective on the center")
    # negation equivariance of the relabeling
    rep.checks += 1
    if mapped != {tuple(-x for x in w) for w in mapped}:
        rep.fail("relabeled center is not negation-closed")

    # the orthogonal part of the center splits across the sub-star like so
    rep.checks += 1
    if 6 + 2 * (N - 6) * (N - 7) + 6 * (2 * N - 11) != 2 * (N - 3) * (N - 4):
        rep.fail("orthogonal sub-star count identity fails")

    # sub-star of the center, projected on the (k4, k5, k6) plane
    sub = {}
    X = e8.doubled_int().astype(np.int64)
    a1, a2 = axes_for(N, "456")
    r = X[center.indices] @ np.array(a1) // 4
    s = X[center.indices] @ np.array(a2) // 4
    spin = e8.sector_codes[center.indices] == 1
    for pos in ALLOWED_POSITIONS:
        m = (r == pos[0]) & (s == pos[1])
        sub[pos] = (int((m & ~spin).sum()), int((m & spin).sum()))
    rep.checks += 1
    if sum(a + b for a, b in sub.values()) != center.size:
        rep.fail("sub-star misses center roots (off-star positions)")
    want = {pos: (1, 0) for pos in OUTER_POSITIONS}
    want[(0, 0)] = (2 * (N - 6) * (N - 7), 2 ** (N - 5))
    for pos in TIP_POSITIONS:
        want[pos] = (2 * N - 11, 2 ** (N - 6))
    for pos in sorted(ALLOWED_POSITIONS):
        rep.checks += 1
        if sub[pos] != want[pos]:
            rep.fail(f"sub-star cell {pos}: {sub[pos]} != {want[pos]}")
    rep.elapsed = time.time() - t0
    return rep


_E7_SPLITS = {
    # (r, s) -> permutation data: (isolated index, tied pair) on the first three
    (1, 1): (0, (1, 2)),
    (-1, 1): (1, (0, 2)),
    (0, -2): (2, (0, 1)),
}


def verify_e7_decomposition(n: int) -> VerifyReport:
    """e7 = (center of the e8 star) + T_(r,s) + T_(-r,-s) for each admissible
    (r, s), checked as exact sets after relabeling, plus the count identity."""
    t0 = time.time()
    rep = VerifyReport(suite="nested", algebra="e7", level=n)
    e8 = generate(AlgebraId(Family.E8, n))
    e7 = generate(AlgebraId(Family.E7, n))
    e6_count = AlgebraId(Family.E6, n).root_count
    N = e8.ambient_dim
    cells = project(e8)
    e7_set = {tuple(int(x) for x in e7.doubled[i]) for i in range(len(e7))}

    counts = set()
    for pos, (iso, pair) in sorted(_E7_SPLITS.items()):
        plus = cells[pos]
        minus = cells[(-pos[0], -pos[1])]
        rep.checks += 1
        if plus.size != minus.size:
            rep.fail(f"tips {pos} and its opposite differ in size")
        total = cells[(0, 0)].size + plus.size + minus.size
        counts.add(total)
        rep.checks += 1
        if total != e7.algebra.root_count:
            rep.fail(f"count identity fails at {pos}: {total} != {len(e7)}")
        # reassemble an e7 copy: free = isolated + k4..kN, tied pair goes last
        perm = [iso] + list(range(3, N)) + list(pair)
        union = set()
        for cell in (cells[(0, 0)], plus, minus):
            for i in cell.indices:
                v = tuple(int(x) for x in e8.doubled[i])
                union.add(tuple(v[p] for p in perm))
        rep.checks += 1
        if union != e7_set:
            rep.fail(
                f"center + tips at {pos} do not reassemble e7:"
                f" {len(union & e7_set)} shared"
            )
    rep.checks += 1
    if len(counts) != 1:
        rep.fail(f"the three admissible splits disagree: {sorted(counts)}")
    rep.notes.append(f"{e6_count} + 2*{cells[(1, 1)].size} = {e7.algebra.root_count}")
    rep.elapsed = time.time() - t0
    return rep


# -- gradings ---------------------------------------------------------------


def grade(vec, algebra: AlgebraId) -> int:
    """Height of a root in the 3- or 5-grading of its algebra.

    e8: twice the scalar product with k_N; e7: the scalar product with the
    tied pair v = k_{N-1}+k_N (so +-v sit at +-2); e6: two thirds of the
    scalar product with the tied triple u (values +-1, 0).
    """
    d = vec.doubled if hasattr(vec, "doubled") else tuple(vec)
    N = algebra.ambient_dim
    if algebra.family is Family.E8:
        return int(d[N - 1])
    if algebra.family is Family.E7:
        return (int(d[N - 2]) + int(d[N - 1])) // 2
    if algebra.family is Family.E6:
        return (int(d[N - 3]) + int(d[N - 2]) + int(d[N - 1])) // 3
    raise ValueError("gradings are defined for e6/e7/e8")


def grade_all(system: RootSystem) -> np.ndarray:
    N = system.ambient_dim
    X = system.doubled_int().astype(np.int32)
    fam = system.algebra.family
    if fam is Family.E8:
        return X[:, N - 1]
    if fam is Family.E7:
        return (X[:, N - 2] + X[:, N - 1]) // 2
    if fam is Family.E6:
        return (X[:, N - 3] + X[:, N - 2] + X[:, N - 1]) // 3
    raise ValueError("gradings are defined for e6/e7/e8")


def grading_piece_sizes(algebra: AlgebraId) -> dict[int, int]:
    """Expected sizes of the grade pieces (roots only, Cartan not counted)."""
    N = algebra.ambient_dim
    if algebra.family is Family.E8:
        return {
            -2: 2 * (N - 1),
            -1: 2 ** (N - 2),
            0: 2 * (N - 1) * (N - 2),
            1: 2 ** (N - 2),
            2: 2 * (N - 1),
        }
    if algebra.family is Family.E7:
        return {-2: 1, -1: 2 ** (N - 3), 0: 2 * (N - 2) * (N - 3), 1: 2 ** (N - 3), 2: 1}
    if algebra.family is Family.E6:
        return {-1: 2 ** (N - 4), 0: 2 * (N - 3) * (N - 4), 1: 2 ** (N - 4)}
    raise ValueError("gradings are defined for e6/e7/e8")


def verify_grading(system: RootSystem, tables=None) -> VerifyReport:
    """Grade piece sizes match the spinor-dimension formulas; grades negate
    with the root and add along every bracket-compatible pair."""
    t0 = time.time()
    rep = VerifyReport(
        suite="grading", algebra=system.algebra.family.value, level=system.algebra.level
    )
    g = grade_all(system)
    want = grading_piece_sizes(system.algebra)
    got = {int(v): int(c) for v, c in zip(*np.unique(g, return_counts=True))}
    rep.checks += 1
    if got != want:
        rep.fail(f"grade piece sizes {got} != {want}")
    neg = system.negation_table()
    rep.checks += len(system)
    if np.any(g[neg] != -g):
        rep.fail("grade is not odd under negation")
    if tables is not None and tables.dense_ok:
        S = tables.S
        ok = S >= 0
        rep.checks += int(ok.sum())
        lhs = g[np.maximum(S, 0)]
        add = g[:, None] + g[None, :]
        bad = ok & (lhs != add)
        if bad.any():
            a, b = np.argwhere(bad)[0]
            rep.fail(f"grades not additive on summable pair ({int(a)},{int(b)})")
    rep.elapsed = time.time() - t0
    return rep


# -- emission -----------------------------------------------------------------


def emit_star_svg(cells: dict[tuple[int, int], StarCell], path) -> None:
    """Write a deterministic SVG of the star: one labeled node per cell."""
    W, H = 480, 420
    cx, cy, ux, uy = W // 2, H // 2, 90, 55
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}"'
        f' viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<line x1="0" y1="{cy}" x2="{W}" y2="{cy}" stroke="#cccccc"/>',
        f'<line x1="{cx}" y1="0" x2="{cx}" y2="{H}" stroke="#cccccc"/>',
    ]
    for (r, s), cell in sorted(cells.items()):
        x = cx + r * ux
        y = cy - s * uy
        parts.append(
            f'<circle cx="{x}" cy="{y}" r="26" fill="#eef3ff" stroke="#333333"/>'
        )
        parts.append(
            f'<text x="{x}" y="{y - 4}" font-size="10" text-anchor="middle"'
            f' font-family="monospace">({r},{s})</text>'
        )
        parts.append(
            f'<text x="{x}" y="{y + 9}" font-size="10" text-anchor="middle"'
            f' font-family="monospace">{cell.orth_like}+{cell.spin}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def write_cells_tsv(cells: dict[tuple[int, int], StarCell], path) -> None:
    """One line per cell: r, s, sector counts, then the root indices."""
    lines = []
    for (r, s), cell in sorted(cells.items()):
        idx = " ".join(str(int(i)) for i in cell.indices)
        lines.append(f"{r}\t{s}\t{cell.orth_like}\t{cell.spin}\t{idx}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
