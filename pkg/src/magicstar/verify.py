"""Verification suites driving every machine-checked claim, plus the runner.

Suites (CLI names):
  weyl         reflection closure by the orthogonal sector, the non-closure
               witness for spinor pairs at level >= 2, and the sum/difference
               inner-product criteria
  simple       integer uniform-sign decomposition over the simple basis and
               the last-coefficient classes
  epsilon      bimultiplicativity, the diagonal/exchange exponent formulas,
               antisymmetry and the shift identities
  tables       Magic Star cell counts and membership against the tables
  nested       the e6-inside-e8 nested star and the e7 tip decomposition
  grading      grade piece sizes, negation oddness, additivity
  derivations  orthogonal adjoints are derivations; spinor ones are not
  two-sums     the exactly-one-of-two-sums lemma
  jacobi-n1    full Jacobi identity over every basis triple (level 1)

Exhaustive modes square the root set and are available for levels 1 and 2;
higher levels run seeded sampling.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from .algebra import MagicStarAlgebra, check_derivations, check_full_jacobi, check_two_sums
from .report import VerifyReport
from .roots import (
    AlgebraId,
    Family,
    RootSystem,
    generate,
    inner,
    is_root,
    weyl_reflect,
)
from .simple import SimpleBasis
from .star import verify_e7_decomposition, verify_grading, verify_nested_star, verify_tables
from .tables import SweepTables

__all__ = [
    "SUITE_NAMES",
    "check_weyl",
    "check_simple",
    "check_epsilon",
    "run_suite",
    "suites_for",
]

SUITE_NAMES = (
    "weyl",
    "simple",
    "epsilon",
    "tables",
    "nested",
    "grading",
    "derivations",
    "two-sums",
    "jacobi-n1",
)

_EXCEPTIONAL = (Family.E6, Family.E7, Family.E8)


def _reflection_scale(tables: SweepTables, rho: int) -> int:
    """(rho, rho) for a non-spinor root: 2, or 1 for the short f4 roots."""
    d = tables.X[rho].astype(np.int64)
    return int(d @ d) // 4


def check_weyl(
    system: RootSystem,
    mode: str = "exhaustive",
    samples: int = 1_000_000,
    seed: int = 0,
) -> VerifyReport:
    """Reflections by non-spinor roots keep the root set (with integral
    Cartan numbers); at level 1 every reflection does; at level >= 2 an
    explicit spinor pair reflects out of the set.  Includes the
    sum/difference criteria for e6/e7/e8."""
    t0 = time.time()
    n = system.algebra.level
    rep = VerifyReport(
        suite="weyl",
        algebra=system.algebra.family.value,
        level=n,
        mode=mode,
        seed=seed if mode == "sampled" else None,
    )

    if system.algebra.family is Family.G2:
        # a true root system: closed under all its reflections
        for i in range(len(system)):
            for j in range(len(system)):
                x, rho = system.root(i), system.root(j)
                t = Fraction(2) * Fraction(inner(x, rho)) / Fraction(inner(rho, rho))
                rep.checks += 1
                if t.denominator != 1:
                    rep.fail(f"non-integral Cartan number at pair ({i},{j})")
                if not is_root(weyl_reflect(x, rho), system.algebra):
                    rep.fail(f"reflection of root {i} by root {j} left the set")
        rep.elapsed = time.time() - t0
        return rep

    T = SweepTables(system)
    orth_idx = np.nonzero(~T.spin)[0]
    X = T.X.astype(np.int64)

    if mode == "exhaustive":
        rows = orth_idx if n >= 2 else np.arange(len(system))
        for rho in rows:
            d = X[rho]
            norm2 = int(d @ d) // 4
            num = X @ d  # 4 * (x, rho)
            rep.checks += len(system)
            if np.any((2 * num) % (4 * norm2)):
                x = int(np.nonzero((2 * num) % (4 * norm2))[0][0])
                rep.fail(f"non-integral Cartan number at pair ({x},{int(rho)})")
                break
            t = (2 * num) // (4 * norm2)
            W = X - t[:, None] * d[None, :]
            found = T.member.lookup(W)
            if np.any(found < 0):
                x = int(np.nonzero(found < 0)[0][0])
                rep.fail(f"reflection of root {x} by root {int(rho)} left the set")
                break
    else:
        rng = np.random.default_rng(seed)
        ridx = orth_idx[rng.integers(len(orth_idx), size=samples)]
        xidx = rng.integers(len(system), size=samples)
        norms = (X[ridx] * X[ridx]).sum(axis=1) // 4
        num = (X[xidx] * X[ridx]).sum(axis=1)
        rep.checks += samples
        if np.any((2 * num) % (4 * norms)):
            rep.fail("non-integral Cartan number in sampled sweep")
        t = (2 * num) // (4 * norms)
        W = X[xidx] - t[:, None] * X[ridx]
        found = T.member.lookup(W)
        if np.any(found < 0):
            k = int(np.nonzero(found < 0)[0][0])
            rep.fail(
                f"reflection of root {int(xidx[k])} by root {int(ridx[k])} left the set"
            )

    # spinor-pair witness: reflection leaves the set once n >= 2
    if n >= 2 and system.algebra.family in _EXCEPTIONAL:
        spin_idx = np.nonzero(T.spin)[0]
        rho = system.root(int(spin_idx[0]))
        x_d = [-v for v in rho.doubled]
        x_d[0], x_d[1] = rho.doubled[0], rho.doubled[1]
        rep.checks += 1
        if not is_root(x_d, system.algebra):
            rep.fail("witness spinor is not a root")
        elif inner(x_d, rho) != -n:
            rep.fail(f"witness pairing is {inner(x_d, rho)}, wanted {-n}")
        else:
            w = weyl_reflect(x_d, rho)
            if is_root(w, system.algebra):
                rep.fail("expected the spinor-pair reflection to leave the set")
            else:
                rep.notes.append(
                    f"spinor witness: reflecting {tuple(x_d)} by root {int(spin_idx[0])}"
                    " lands outside the root set"
                )

    # sum/difference criteria against exact inner products
    if system.algebra.family in _EXCEPTIONAL:
        if mode == "exhaustive" and T.dense_ok:
            G, S = T.G, T.S
            neg = T.neg
            D = S[:, neg]  # D[a,b] = index of root_a - root_b, or -1
            both_spin = np.outer(T.spin, T.spin)
            rep.checks += G.size * 2
            want_sum = np.where(both_spin, -n, -1)
            want_diff = np.where(both_spin, n, 1)
            if np.any((S >= 0) != (G == want_sum)):
                a, b = np.argwhere((S >= 0) != (G == want_sum))[0]
                rep.fail(f"sum criterion fails at pair ({int(a)},{int(b)})")
            if np.any((D >= 0) != (G == want_diff)):
                a, b = np.argwhere((D >= 0) != (G == want_diff))[0]
                rep.fail(f"difference criterion fails at pair ({int(a)},{int(b)})")
            rep.checks += G.size
            if np.any((S >= 0) & (D >= 0)):
                a, b = np.argwhere((S >= 0) & (D >= 0))[0]
                rep.fail(f"both sum and difference are roots at ({int(a)},{int(b)})")
            # value ranges
            rep.checks += G.size
            mixed = ~both_spin
            if int(np.abs(G[mixed]).max()) > 2:
                rep.fail("an inner product with an orthogonal root exceeds 2")
            if len(spin_bounds := np.abs(G[both_spin])) and int(spin_bounds.max()) > n + 1:
                rep.fail("a spinor pair inner product exceeds n+1")
        else:
            rng = np.random.default_rng(seed + 17)
            k = min(samples, 1_000_000)
            ai = rng.integers(len(system), size=k)
            bi = rng.integers(len(system), size=k)
            g = (X[ai] * X[bi]).sum(axis=1) // 4
            both_spin = T.spin[ai] & T.spin[bi]
            s_found = T.member.lookup(X[ai] + X[bi]) >= 0
            d_found = T.member.lookup(X[ai] - X[bi]) >= 0
            rep.checks += 3 * k
            want_sum = np.where(both_spin, -n, -1)
            want_diff = np.where(both_spin, n, 1)
            if np.any(s_found != (g == want_sum)):
                rep.fail("sum criterion fails in sampled sweep")
            if np.any(d_found != (g == want_diff)):
                rep.fail("difference criterion fails in sampled sweep")
            if np.any(s_found & d_found):
                rep.fail("both sum and difference are roots in sampled sweep")

    rep.elapsed = time.time() - t0
    return rep


def check_simple(system: RootSystem, seed: int = 0) -> VerifyReport:
    """Every root has integer, uniform-sign coefficients over the ordered
    basis; the last coefficient is 0/+-2 on the orthogonal sector and +-1 on
    the spinorial one; decomposition and recomposition invert each other."""
    t0 = time.time()
    rep = VerifyReport(
        suite="simple", algebra=system.algebra.family.value, level=system.algebra.level
    )
    basis = SimpleBasis.for_algebra(system.algebra)
    C = basis.decompose_all(system)  # validates C @ alphas == roots internally
    rep.checks += len(system)
    nonneg = (C >= 0).all(axis=1)
    nonpos = (C <= 0).all(axis=1)
    if not np.all(nonneg | nonpos):
        a = int(np.nonzero(~(nonneg | nonpos))[0][0])
        rep.fail(f"mixed-sign coefficients at root {a}: {C[a].tolist()}")
    spin = system.sector_codes == 1
    mR = C[:, -1]
    rep.checks += len(system)
    if not set(np.unique(mR[~spin]).tolist()) <= {-2, 0, 2}:
        rep.fail(f"orthogonal last coefficients {sorted(set(mR[~spin].tolist()))}")
    if not set(np.unique(mR[spin]).tolist()) <= {-1, 1}:
        rep.fail(f"spinorial last coefficients {sorted(set(mR[spin].tolist()))}")
    # positive roots pair off with their negatives
    rep.checks += 1
    if int(nonneg.sum()) != len(system) // 2:
        rep.fail("positive/negative roots do not split evenly")
    # lattice round trip on seeded coefficient vectors
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(-3, 4, size=(256, basis.rank))
    for c in coeffs:
        rep.checks += 1
        if basis.decompose(basis.lattice_element(c)) != tuple(int(v) for v in c):
            rep.fail(f"lattice round trip fails at {c.tolist()}")
            break
    rep.elapsed = time.time() - t0
    return rep


def check_epsilon(
    system: RootSystem,
    samples: int = 100_000,
    seed: int = 0,
    tables: SweepTables | None = None,
) -> VerifyReport:
    """Identities of the asymmetry function: bimultiplicative in both slots,
    the diagonal and exchange exponent formulas (with integral exponents),
    invariance under negation, antisymmetry on summable root pairs, and the
    shift identities."""
    t0 = time.time()
    n = system.algebra.level
    rep = VerifyReport(
        suite="epsilon",
        algebra=system.algebra.family.value,
        level=n,
        mode="exhaustive+sampled",
        seed=seed,
    )
    T = tables if tables is not None else SweepTables(system)
    eps, basis = T.eps, T.basis
    R = basis.rank
    A = basis._matrix.astype(np.int64)  # doubled coordinates of the alphas

    def inner_lattice(ca: np.ndarray, cb: np.ndarray) -> np.ndarray:
        da = ca.astype(np.int64) @ A
        db = cb.astype(np.int64) @ A
        num = (da * db).sum(axis=1)
        if np.any(num % 4):
            rep.fail("non-integral lattice inner product")
        return num // 4

    rng = np.random.default_rng(seed)
    k = max(1, samples)
    La = rng.integers(-3, 4, size=(k, R))
    Lb = rng.integers(-3, 4, size=(k, R))
    Lc = rng.integers(-3, 4, size=(k, R))

    e_ab = eps.pairwise_signs(La, Lb)
    e_ac = eps.pairwise_signs(La, Lc)
    e_bc = eps.pairwise_signs(Lb, Lc)
    # additive in the first slot: eps(a+b, c) = eps(a, c) eps(b, c)
    rep.checks += k
    if np.any(eps.pairwise_signs(La + Lb, Lc) != e_ac * e_bc):
        rep.fail("first-slot multiplicativity fails on sampled lattice triples")
    # additive in the second slot
    rep.checks += k
    if np.any(eps.pairwise_signs(La, Lb + Lc) != e_ab * e_ac):
        rep.fail("second-slot multiplicativity fails on sampled lattice triples")
    # neutral element and negation invariance
    rep.checks += 3 * k
    if np.any(eps.pairwise_signs(np.zeros_like(La), Lb) != 1):
        rep.fail("eps(0, .) != 1")
    if np.any(eps.pairwise_signs(La, np.zeros_like(Lb)) != 1):
        rep.fail("eps(., 0) != 1")
    if np.any(eps.pairwise_signs(-La, Lb) != e_ab) or np.any(
        eps.pairwise_signs(La, -Lb) != e_ab
    ):
        rep.fail("negation invariance fails")
    # diagonal exponent on sampled lattice elements
    gaa = inner_lattice(La, La)
    expo2 = gaa - (La[:, -1] ** 2) * (n - 1)
    rep.checks += k
    if np.any(expo2 % 2):
        rep.fail("diagonal exponent is not integral on the lattice")
    want = 1 - 2 * ((expo2 // 2) % 2)
    rep.checks += k
    if np.any(eps.pairwise_signs(La, La) != want):
        rep.fail("diagonal exponent formula fails on sampled lattice elements")
    # exchange exponent on sampled lattice pairs
    gab = inner_lattice(La, Lb)
    expo = gab - La[:, -1] * Lb[:, -1] * (n - 1)
    rep.checks += k
    if np.any(e_ab * eps.pairwise_signs(Lb, La) != 1 - 2 * (expo % 2)):
        rep.fail("exchange exponent formula fails on sampled lattice pairs")

    # exhaustive root-pair checks
    if T.dense_ok:
        C, G, S, E = T.C, T.G.astype(np.int64), T.S, T.E.astype(np.int64)
        mR = C[:, -1].astype(np.int64)
        rep.checks += len(system)
        diag2 = np.diag(G) - mR**2 * (n - 1)
        if np.any(diag2 % 2):
            rep.fail("diagonal exponent is not integral on roots")
        if np.any(np.diag(E) != 1 - 2 * ((diag2 // 2) % 2)):
            rep.fail("diagonal exponent formula fails on a root")
        rep.checks += 1
        if np.any(np.diag(E) != -1):
            rep.fail("eps(alpha, alpha) != -1 on a root")
        rep.checks += E.size
        expo = G - np.outer(mR, mR) * (n - 1)
        if np.any(E * E.T != 1 - 2 * (expo % 2)):
            a, b = np.argwhere(E * E.T != 1 - 2 * (expo % 2))[0]
            rep.fail(f"exchange exponent formula fails at pair ({int(a)},{int(b)})")
        summable = S >= 0
        rep.checks += int(summable.sum())
        if np.any(summable & (E + E.T != 0)):
            a, b = np.argwhere(summable & (E + E.T != 0))[0]
            rep.fail(f"antisymmetry fails on summable pair ({int(a)},{int(b)})")
        # shift identities over all root pairs (alpha, delta).  Writing
        # beta = delta - alpha (sum form) or beta = alpha - delta (difference
        # form), both sides expand through the parity form to the same matrix
        # condition, checked here exhaustively for every legal (alpha, beta).
        bits = (C & 1).astype(np.int64)
        P = eps.parity.astype(np.int64)
        L = (bits @ P) % 2
        Q = (L @ bits.T) % 2  # Q[a,d] = bilinear parity of (alpha_a, alpha_d)
        q = np.diag(Q)
        lhs = (Q + q[:, None]) % 2  # eps(alpha, delta - alpha)
        rhs = (Q + q[None, :]) % 2  # eps(delta - alpha, delta)
        rep.checks += 2 * Q.size
        if np.any(lhs != rhs):
            a, d = np.argwhere(lhs != rhs)[0]
            rep.fail(f"shift identity fails at root pair ({int(a)},{int(d)})")
        # eps evaluated two ways agrees: literal definition product vs table
        idx = rng.integers(len(system), size=min(64, len(system)))
        for a in idx:
            for b in idx[:8]:
                lit = 1
                for i in range(R):
                    for j in range(R):
                        e = int(C[a, i]) * int(C[b, j])
                        if e % 2 and eps.parity[i, j]:
                            lit = -lit
                rep.checks += 1
                if lit != int(T.E[a, b]):
                    rep.fail(f"literal product disagrees with parity form at ({a},{b})")
    rep.elapsed = time.time() - t0
    return rep


def suites_for(algebra: AlgebraId, requested: list[str]) -> list[str]:
    """Expand 'all' and drop suites that do not apply to the family/level."""
    fam = algebra.family
    if requested == ["all"]:
        names = list(SUITE_NAMES)
    else:
        names = list(requested)
        for s in names:
            if s not in SUITE_NAMES:
                raise ValueError(f"unknown suite {s!r}")
    out = []
    for s in names:
        if s in ("simple", "epsilon", "derivations", "two-sums", "jacobi-n1", "grading"):
            if fam not in _EXCEPTIONAL:
                if requested != ["all"]:
                    raise ValueError(f"suite {s!r} needs e6/e7/e8")
                continue
        if s == "jacobi-n1" and algebra.level != 1:
            if requested != ["all"]:
                raise ValueError("suite 'jacobi-n1' runs at level 1 only")
            continue
        if s == "tables" and fam is Family.G2:
            if requested != ["all"]:
                raise ValueError("suite 'tables' needs f4/e6/e7/e8")
            continue
        if s == "nested" and fam is not Family.E8:
            if requested != ["all"]:
                raise ValueError("suite 'nested' runs on e8")
            continue
        out.append(s)
    return out


def run_suite(
    name: str,
    algebra: AlgebraId,
    mode: str | None = None,
    samples: int | None = None,
    seed: int = 0,
    threads: int = 1,
    _cache: dict | None = None,
) -> VerifyReport:
    """Run one named suite and return its report."""
    cache = _cache if _cache is not None else {}

    def system() -> RootSystem:
        if "system" not in cache:
            cache["system"] = generate(algebra)
        return cache["system"]

    def tables() -> SweepTables:
        if "tables" not in cache:
            cache["tables"] = SweepTables(system())
        return cache["tables"]

    eff_mode = mode or ("exhaustive" if algebra.level <= 2 else "sampled")
    if name == "weyl":
        return check_weyl(
            system(), mode=eff_mode, samples=samples or 1_000_000, seed=seed
        )
    if name == "simple":
        return check_simple(system(), seed=seed)
    if name == "epsilon":
        return check_epsilon(
            system(), samples=samples or 100_000, seed=seed, tables=tables()
        )
    if name == "tables":
        return verify_tables(families=(algebra.family,), levels=(algebra.level,))
    if name == "nested":
        rep = verify_nested_star(algebra.level)
        rep.merge(verify_e7_decomposition(algebra.level))
        return rep
    if name == "grading":
        return verify_grading(
            system(), tables=tables() if algebra.level <= 2 else None
        )
    if name == "derivations":
        alg = MagicStarAlgebra(system(), tables())
        return check_derivations(
            alg, mode=eff_mode, samples=samples or 100_000, seed=seed, threads=threads
        )
    if name == "two-sums":
        alg = MagicStarAlgebra(system(), tables())
        return check_two_sums(
            alg, mode=eff_mode, samples=samples or 100_000, seed=seed, threads=threads
        )
    if name == "jacobi-n1":
        alg = MagicStarAlgebra(system(), tables())
        return check_full_jacobi(alg, threads=threads)
    raise ValueError(f"unknown suite {name!r}")
