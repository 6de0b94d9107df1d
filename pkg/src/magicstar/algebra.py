"""The Magic Star algebra: Cartan part plus one generator per root.

Basis: h_1..h_R spanning H, and x_alpha for every root alpha.  The bilinear
product on basis elements is

    [h_i, h_j]      = 0
    [h_i, x_a]      = -[x_a, h_i] = (a, alpha_i) x_a
    [x_a, x_{-a}]   = -h_a,   h_a = sum c_i h_i  with  a = sum c_i alpha_i
    [x_a, x_b]      = 0                 if a+b is not a root and b != -a
    [x_a, x_b]      = eps(a, b) x_{a+b} if a+b is a root

with eps the asymmetry function.  All structure constants are integers, so
exact rational scalars suffice for every verification here.

The product is antisymmetric but satisfies the Jacobi identity only at level
1, or whenever one argument comes from the orthogonal sector; for any
spinorial root at level >= 2 an explicit failing triple exists and
``jacobi_witness`` constructs it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .report import VerifyReport
from .roots import Family, RootSystem, RootVector
from .tables import SweepTables, run_parallel

__all__ = ["AlgebraElement", "MagicStarAlgebra", "StructureConstants"]

Key = tuple  # ("h", cartan index) or ("x", root index)


class AlgebraElement:
    """Sparse rational combination of Cartan and root generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v:
                    self.terms[k] = v

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return AlgebraElement(out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "AlgebraElement":
        s = Fraction(scalar)
        if not s:
            return AlgebraElement()
        return AlgebraElement({k: s * v for k, v in self.terms.items()})

    def __neg__(self) -> "AlgebraElement":
        return -1 * self

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("AlgebraElement is mutable-ish; not hashable")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: Key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            kind, idx = k
            name = f"h{idx + 1}" if kind == "h" else f"x[{idx}]"
            bits.append(f"{self.terms[k]}*{name}")
        return " + ".join(bits)


@dataclass
class StructureConstants:
    """All nonzero brackets on the basis, in array form.

    ``cartan_action[a, i]`` is (alpha_a, alpha_i); ``root_pairs`` holds one
    (a, b, sign) row per ordered root pair with a+b a root; ``opposite[a]``
    is the coefficient vector of h_a, so [x_a, x_{-a}] = -sum opposite[a][i] h_i.
    """

    family: str
    level: int
    dim: int
    cartan_action: np.ndarray  # (count, R) int
    root_pairs: np.ndarray  # (P, 3) int32, rows (a, b, sign), sorted
    opposite: np.ndarray  # (count, R) int

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StructureConstants)
            and self.family == other.family
            and self.level == other.level
            and self.dim == other.dim
            and np.array_equal(self.cartan_action, other.cartan_action)
            and np.array_equal(self.root_pairs, other.root_pairs)
            and np.array_equal(self.opposite, other.opposite)
        )

    def pair_sign_map(self) -> dict:
        return {(int(a), int(b)): int(s) for a, b, s in self.root_pairs}

    def write(self, path) -> None:
        lines = [f"#algebra={self.family} n={self.level} dim={self.dim}"]
        count, R = self.cartan_action.shape
        for i in range(R):
            col = self.cartan_action[:, i]
            for a in np.nonzero(col)[0]:
                lines.append(f"C\t{i}\t{int(a)}\t{int(col[a])}")
        for a, b, s in self.root_pairs:
            lines.append(f"R\t{int(a)}\t{int(b)}\t{int(s)}")
        for a in range(count):
            coeffs = " ".join(str(int(v)) for v in self.opposite[a])
            lines.append(f"O\t{int(a)}\t{coeffs}")
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def read(cls, path) -> "StructureConstants":
        family = level = dim = None
        c_rows, r_rows, o_rows = [], [], {}
        with open(path) as fh:
            for line in fh:
                line = line.rstrip("\n")
                if line.startswith("#"):
                    parts = dict(p.split("=") for p in line[1:].split(" "))
                    family, level, dim = parts["algebra"], int(parts["n"]), int(parts["dim"])
                    continue
                if not line:
                    continue
                tag, *rest = line.split("\t")
                if tag == "C":
                    c_rows.append((int(rest[0]), int(rest[1]), int(rest[2])))
                elif tag == "R":
                    r_rows.append((int(rest[0]), int(rest[1]), int(rest[2])))
                elif tag == "O":
                    o_rows[int(rest[0])] = [int(v) for v in rest[1].split(" ")]
        count = len(o_rows)
        R = len(next(iter(o_rows.values())))
        ca = np.zeros((count, R), dtype=np.int16)
        for i, a, v in c_rows:
            ca[a, i] = v
        rp = np.array(sorted(r_rows), dtype=np.int32).reshape(len(r_rows), 3)
        op = np.array([o_rows[a] for a in range(count)], dtype=np.int32)
        return cls(family, level, dim, ca, rp, op)


class MagicStarAlgebra:
    """Bracket, Jacobiator and the verification sweeps for e6/e7/e8 at any level."""

    def __init__(self, system: RootSystem, tables: SweepTables | None = None):
        if system.algebra.family not in (Family.E6, Family.E7, Family.E8):
            raise ValueError(
                f"no algebra structure for {system.algebra.family.value}"
                " (only e6/e7/e8 carry the bracket here)"
            )
        self.system = system
        self.tables = tables if tables is not None else SweepTables(system)
        self.basis = self.tables.basis
        self.eps = self.tables.eps

    @property
    def rank(self) -> int:
        return self.system.algebra.rank

    @property
    def dim(self) -> int:
        return self.rank + len(self.system)

    # -- element constructors ------------------------------------------------

    def h(self, i: int) -> AlgebraElement:
        if not 0 <= i < self.rank:
            raise IndexError(f"Cartan index {i} out of range")
        return AlgebraElement({("h", i): 1})

    def x(self, a) -> AlgebraElement:
        idx = a.index if isinstance(a, RootVector) else int(a)
        if not 0 <= idx < len(self.system):
            raise IndexError(f"root index {idx} out of range")
        return AlgebraElement({("x", idx): 1})

    def basis_keys(self) -> list[Key]:
        return [("h", i) for i in range(self.rank)] + [
            ("x", a) for a in range(len(self.system))
        ]

    # -- products --------------------------------------------------------------

    def eps_sign(self, a: int, b: int) -> int:
        """Asymmetry sign on a pair of roots given by index."""
        if self.tables.dense_ok:
            return int(self.tables.E[a, b])
        C = self.tables.C
        return self.eps.epsilon(C[a], C[b])

    def _bracket_basis(self, p: Key, q: Key) -> AlgebraElement:
        kp, ip = p
        kq, iq = q
        T = self.tables
        if kp == "h" and kq == "h":
            return AlgebraElement()
        if kp == "h":
            return AlgebraElement({q: int(T.CA[iq, ip])})
        if kq == "h":
            return AlgebraElement({p: -int(T.CA[ip, iq])})
        if iq == int(T.neg[ip]):
            C = T.C
            return AlgebraElement({("h", i): -int(C[ip, i]) for i in range(self.rank)})
        s = self.system.index_of(
            [int(u) + int(v) for u, v in zip(T.X[ip], T.X[iq])]
        )
        if s is None:
            return AlgebraElement()
        return AlgebraElement({("x", s): self.eps_sign(ip, iq)})

    def bracket(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        """Bilinear extension of the basis product."""
        out = AlgebraElement()
        for p, cp in u.terms.items():
            for q, cq in v.terms.items():
                out = out + (cp * cq) * self._bracket_basis(p, q)
        return out

    def jacobiator(
        self, u: AlgebraElement, v: AlgebraElement, w: AlgebraElement
    ) -> AlgebraElement:
        """[[u,v],w] + [[v,w],u] + [[w,u],v]; zero exactly on derivation triples."""
        return (
            self.bracket(self.bracket(u, v), w)
            + self.bracket(self.bracket(v, w), u)
            + self.bracket(self.bracket(w, u), v)
        )

    # -- the explicit Jacobi-violating triple ---------------------------------

    def _free_limit(self) -> int:
        N = self.system.ambient_dim
        return {Family.E8: N, Family.E7: N - 2, Family.E6: N - 3}[
            self.system.algebra.family
        ]

    def jacobi_witness(self, alpha, indices: tuple[int, ...] = (0, 1, 2, 3, 4, 5)):
        """Spinors beta, gamma making the Jacobiator of (alpha, beta, gamma) nonzero.

        beta keeps alpha's signs at the first two chosen coordinates and flips
        everything else; gamma flips exactly the six chosen coordinates.  Then
        alpha+beta is orthogonal, alpha+beta+gamma is a spinor, and the other
        two pair sums are not roots once the ambient dimension exceeds 8 --
        which is why this construction is rejected at level 1.
        """
        if self.system.algebra.level < 2:
            raise ValueError("the violating triple needs level >= 2")
        a = alpha.index if isinstance(alpha, RootVector) else int(alpha)
        if not self.tables.spin[a]:
            raise ValueError("alpha must be spinorial")
        if len(set(indices)) != 6:
            raise ValueError("need six distinct coordinate indices")
        if max(indices) >= self._free_limit() or min(indices) < 0:
            raise ValueError(
                f"indices must be free coordinates below {self._free_limit()}"
            )
        d = [int(v) for v in self.tables.X[a]]
        j, l = indices[0], indices[1]
        beta = [-v for v in d]
        beta[j], beta[l] = d[j], d[l]
        gamma = list(d)
        for t in indices:
            gamma[t] = -d[t]

        sysm = self.system
        b = sysm.index_of(beta)
        g = sysm.index_of(gamma)
        ab = sysm.index_of([u + v for u, v in zip(d, beta)])
        abg = sysm.index_of([u + v + w for u, v, w in zip(d, beta, gamma)])
        bg = [u + v for u, v in zip(beta, gamma)]
        ga = [u + v for u, v in zip(gamma, d)]
        if b is None or g is None or ab is None or abg is None:
            raise AssertionError("witness construction left the root system")
        if sysm.index_of(bg) is not None or sysm.index_of(ga) is not None:
            raise AssertionError("witness pair sums unexpectedly landed in the roots")
        if all(v == 0 for v in bg) or all(v == 0 for v in ga):
            raise AssertionError("witness degenerated to opposite roots")

        value = self.jacobiator(self.x(a), self.x(b), self.x(g))
        expected_sign = self.eps_sign(a, b) * self.eps_sign(ab, g)
        if value != AlgebraElement({("x", abg): expected_sign}):
            raise AssertionError("witness Jacobiator disagrees with its closed form")
        return sysm.root(b), sysm.root(g), value

    # -- structure constants ---------------------------------------------------

    def structure_constants(self) -> StructureConstants:
        T = self.tables
        count = len(self.system)
        rows = []
        if T.dense_ok:
            S, E = T.S, T.E
            for a in range(count):
                for b in T.partners(a):
                    rows.append((a, int(b), int(E[a, b])))
        else:
            C = T.C
            for a in range(count):
                part = T.partners_sparse(a)
                sgn = self.eps.pairwise_signs(np.repeat(C[a][None, :], len(part), 0), C[part])
                rows.extend((a, int(b), int(s)) for b, s in zip(part, sgn))
        rp = np.array(rows, dtype=np.int32).reshape(len(rows), 3)
        return StructureConstants(
            family=self.system.algebra.family.value,
            level=self.system.algebra.level,
            dim=self.dim,
            cartan_action=T.CA.copy(),
            root_pairs=rp,
            opposite=T.C.astype(np.int32).copy(),
        )

    def bracket_from_constants(
        self, sc: StructureConstants, p: Key, q: Key
    ) -> AlgebraElement:
        """Basis bracket evaluated from a StructureConstants record only."""
        kp, ip = p
        kq, iq = q
        if kp == "h" and kq == "h":
            return AlgebraElement()
        if kp == "h":
            return AlgebraElement({q: int(sc.cartan_action[iq, ip])})
        if kq == "h":
            return AlgebraElement({p: -int(sc.cartan_action[ip, iq])})
        if np.array_equal(sc.opposite[ip], -sc.opposite[iq]):
            return AlgebraElement(
                {("h", i): -int(sc.opposite[ip, i]) for i in range(sc.opposite.shape[1])}
            )
        sign = sc.pair_sign_map().get((ip, iq))
        if sign is None:
            return AlgebraElement()
        target = self.system.index_of(
            [int(u) + int(v) for u, v in zip(self.tables.X[ip], self.tables.X[iq])]
        )
        return AlgebraElement({("x", target): sign})


# -- vectorized Jacobi sweeps ----------------------------------------------


def _grid_payload(tables: SweepTables):
    return {
        "S": tables.S,
        "E": tables.E,
        "G": tables.G,
        "C": tables.C.astype(np.int32),
        "neg": tables.neg,
        "Sclip": np.maximum(tables.S, 0),
        "valid": tables.S >= 0,
    }


def _jacobi_grid_chunk(payload, a_indices) -> tuple[int, list[str]]:
    """Check J(x_a, x_b, x_c) = 0 over all root pairs (b, c) for each a.

    Works on the x-component grid plus the four special slices (an opposite
    root in some slot, or the three roots summing to zero, where the value
    lands in H).  Returns (number of cells checked, failure witnesses).
    """
    S, E, G, C = payload["S"], payload["E"], payload["G"], payload["C"]
    neg, Sclip, valid = payload["neg"], payload["Sclip"], payload["valid"]
    m = S.shape[0]
    checks = 0
    failures: list[str] = []

    for a in a_indices:
        srow = S[a]  # srow[t] = index of root_a + root_t (sum table is symmetric)
        erow = E[a].astype(np.int16)
        ecol = E[:, a].astype(np.int16)
        na = int(neg[a])
        sum_clip = Sclip[a]

        # x-component over the full (b, c) grid:
        #   X1[b,c] = eps(a,b) eps(a+b, c)   when a+b and a+b+c are roots
        #   X2[b,c] = eps(b,c) eps(b+c, a)   when b+c and a+b+c are roots
        #   X3[b,c] = eps(c,a) eps(c+a, b)   when c+a and a+b+c are roots
        X1 = np.where(
            (srow >= 0)[:, None] & valid[sum_clip],
            erow[:, None] * E[sum_clip].astype(np.int16),
            0,
        )
        X2 = np.where(
            valid & (srow[Sclip] >= 0),
            E.astype(np.int16) * ecol[Sclip],
            0,
        )
        X3 = np.where(
            (srow >= 0)[:, None] & valid[sum_clip],
            ecol[:, None] * E[sum_clip].astype(np.int16),
            0,
        ).T  # built in (c, b) layout, transposed into (b, c)
        X = X1 + X2 + X3

        # mask out the specially-handled cells
        X[na, :] = 0
        X[:, na] = 0
        rows = np.arange(m)
        X[rows, neg] = 0
        has_sum = srow >= 0
        X[rows[has_sum], neg[sum_clip[has_sum]]] = 0
        checks += m * m
        if np.any(X):
            b, c = np.argwhere(X != 0)[0]
            failures.append(f"nonzero Jacobiator at roots ({a},{int(b)},{int(c)})")
            continue

        # slice b = -a: the inner bracket [x_a, x_{-a}] = -h_a acts on x_c,
        # so the value lands on x_c with coefficient -(c,a) + eps terms
        tvec = np.arange(m)
        ok = (tvec != a) & (tvec != na)
        bc0 = S[na]
        bc0c = Sclip[na]
        t2 = np.where(
            (bc0 >= 0) & (srow[bc0c] >= 0),
            E[na].astype(np.int16) * ecol[bc0c],
            0,
        )
        t3 = np.where(
            (srow >= 0) & (S[sum_clip, na] >= 0),
            ecol * E[sum_clip, na].astype(np.int16),
            0,
        )
        lhs = -G[:, a].astype(np.int16) + t2 + t3
        checks += int(ok.sum())
        if np.any(lhs[ok]):
            c = int(tvec[ok][np.nonzero(lhs[ok])[0][0]])
            failures.append(f"nonzero Jacobiator at roots ({a},{na},{c})")
            continue

        # slice c = -a: [x_{-a}, x_a] = +h_a acts on x_b
        t1 = np.where(
            (srow >= 0) & (S[sum_clip, na] >= 0),
            erow * E[sum_clip, na].astype(np.int16),
            0,
        )
        bna = S[:, na]
        bnac = Sclip[:, na]
        t2 = np.where(
            (bna >= 0) & (srow[bnac] >= 0),
            E[:, na].astype(np.int16) * ecol[bnac],
            0,
        )
        lhs = G[:, a].astype(np.int16) + t1 + t2
        checks += int(ok.sum())
        if np.any(lhs[ok]):
            b = int(tvec[ok][np.nonzero(lhs[ok])[0][0]])
            failures.append(f"nonzero Jacobiator at roots ({a},{b},{na})")
            continue

        # slice c = -b: [x_b, x_{-b}] = -h_b acts on x_a
        t1 = np.where(
            (srow >= 0) & (S[sum_clip, neg] >= 0),
            erow * E[sum_clip, neg].astype(np.int16),
            0,
        )
        canb = S[neg, a]
        canbc = Sclip[neg, a]
        t3 = np.where(
            (canb >= 0) & (S[canbc, tvec] >= 0),
            E[neg, a].astype(np.int16) * E[canbc, tvec].astype(np.int16),
            0,
        )
        lhs = -G[a].astype(np.int16) + t1 + t3
        checks += int(ok.sum())
        if np.any(lhs[ok]):
            b = int(tvec[ok][np.nonzero(lhs[ok])[0][0]])
            failures.append(f"nonzero Jacobiator at roots ({a},{b},{int(neg[b])})")
            continue

        # slice a+b+c = 0: every term lands in H; coefficients of h_i must cancel
        bs = np.nonzero(has_sum)[0]
        cs = neg[sum_clip[bs]]
        e1 = E[a, bs].astype(np.int32)
        e2 = E[bs, cs].astype(np.int32)
        e3 = E[cs, a].astype(np.int32)
        JH = (
            -e1[:, None] * (C[a][None, :] + C[bs])
            + e2[:, None] * C[a][None, :]
            + e3[:, None] * C[bs]
        )
        checks += len(bs)
        if np.any(JH):
            b = int(bs[np.nonzero(np.any(JH != 0, axis=1))[0][0]])
            failures.append(
                f"nonzero H-part Jacobiator at roots ({a},{b},{int(neg[S[a, b]])})"
            )
    return checks, failures


def _cartan_jacobi_checks(tables: SweepTables, report: VerifyReport) -> None:
    """All Jacobi cases with a Cartan generator in some slot, vectorized.

    With h in one slot and roots b, c in the others, the identity reduces to
    additivity of the Cartan pairing on summable pairs, its oddness under
    negation for opposite pairs, and commuting scalar products when two slots
    are Cartan.  Verified numerically in blocks to bound memory.
    """
    S, CA, neg = tables.S, tables.CA.astype(np.int32), tables.neg
    m = S.shape[0]
    for b0 in range(0, m, 256):
        blk = slice(b0, min(b0 + 256, m))
        valid = S[blk] >= 0
        lhs = CA[np.maximum(S[blk], 0)]
        add = CA[blk][:, None, :] + CA[None, :, :]
        bad = valid & np.any(lhs != add, axis=2)
        report.checks += int(valid.sum()) * CA.shape[1]
        if bad.any():
            b, c = np.argwhere(bad)[0]
            report.fail(
                f"Cartan pairing not additive on summable pair ({b0 + int(b)},{int(c)})"
            )
            return
    # (h_i, x_b, x_{-b}): needs (b, alpha_i) = -(-b, alpha_i)
    report.checks += CA.size
    if np.any(CA[neg] != -CA):
        b = int(np.nonzero(np.any(CA[neg] != -CA, axis=1))[0][0])
        report.fail(f"Cartan pairing not odd under negation at root {b}")
    # (h_i, h_j, x_c) reduces to commuting scalar factors; cannot fail exactly
    report.checks += CA.shape[0] * CA.shape[1] ** 2


def check_derivations(
    algebra: MagicStarAlgebra,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    threads: int = 1,
) -> VerifyReport:
    """Adjoint maps of orthogonal root generators (and H) are derivations;
    every spinorial generator at level >= 2 admits a failing triple."""
    t0 = time.time()
    system = algebra.system
    n = system.algebra.level
    rep = VerifyReport(
        suite="derivations",
        algebra=system.algebra.family.value,
        level=n,
        mode=mode,
        seed=seed if mode == "sampled" else None,
    )
    T = algebra.tables

    _cartan_jacobi_checks(T, rep)

    orth = np.nonzero(~T.spin)[0]
    if mode == "exhaustive":
        if not T.dense_ok:
            raise MemoryError("exhaustive derivation sweep needs level <= 2")
        payload = _grid_payload(T)
        chunks = np.array_split(orth, max(1, min(threads * 4, len(orth))))
        for checks, fails in run_parallel(_jacobi_grid_chunk, payload, chunks, threads):
            rep.checks += checks
            rep.failures.extend(fails)
    else:
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            a = int(orth[rng.integers(len(orth))])
            part = T.partners_sparse(a)
            b = int(part[rng.integers(len(part))])
            s = system.index_of([u + v for u, v in zip(T.X[a], T.X[b])])
            part2 = T.partners_sparse(s)
            c = int(part2[rng.integers(len(part2))]) if len(part2) else int(rng.integers(len(system)))
            val = algebra.jacobiator(algebra.x(a), algebra.x(b), algebra.x(c))
            rep.checks += 1
            if not val.is_zero:
                rep.fail(f"nonzero Jacobiator at roots ({a},{b},{c})")
                break

    # negative direction: every spinorial adjoint fails to be a derivation
    if n >= 2:
        spin_idx = np.nonzero(T.spin)[0]
        if mode == "sampled":
            rng = np.random.default_rng(seed + 1)
            spin_idx = spin_idx[rng.integers(len(spin_idx), size=min(len(spin_idx), 256))]
        for a in spin_idx:
            try:
                algebra.jacobi_witness(int(a))
                rep.expected_violations += 1
            except (AssertionError, ValueError) as exc:
                rep.fail(f"no Jacobi violation for spinor {int(a)}: {exc}")
        rep.checks += len(spin_idx)
        if rep.expected_violations == 0:
            rep.fail("level >= 2 but no spinor produced a Jacobi violation")
        rep.notes.append(
            f"{rep.expected_violations} spinor triples violate Jacobi, as required"
        )
    rep.elapsed = time.time() - t0
    return rep


def check_full_jacobi(algebra: MagicStarAlgebra, threads: int = 1) -> VerifyReport:
    """Jacobi identity over every basis triple; passes exactly at level 1."""
    t0 = time.time()
    system = algebra.system
    rep = VerifyReport(
        suite="jacobi-n1",
        algebra=system.algebra.family.value,
        level=system.algebra.level,
    )
    T = algebra.tables
    if not T.dense_ok:
        raise MemoryError("full Jacobi sweep needs level <= 2")
    _cartan_jacobi_checks(T, rep)
    payload = _grid_payload(T)
    all_roots = np.arange(len(system))
    chunks = np.array_split(all_roots, max(1, min(threads * 4, len(all_roots))))
    for checks, fails in run_parallel(_jacobi_grid_chunk, payload, chunks, threads):
        rep.checks += checks
        rep.failures.extend(fails)
    rep.notes.append(f"dimension {algebra.dim}")
    rep.elapsed = time.time() - t0
    return rep


def _two_sums_chunk(payload, a_indices) -> tuple[int, list[str]]:
    S, valid, neg, spin = payload["S"], payload["valid"], payload["neg"], payload["spin"]
    m = S.shape[0]
    checks = 0
    failures = []
    orth = ~spin
    for a in a_indices:
        bs = np.nonzero(S[a] >= 0)[0]  # b != +-a automatic: those sums are not roots
        if not len(bs):
            continue
        total_ok = valid[S[a][bs]]  # (len(bs), m): a+b+c is a root
        distinct = np.ones((len(bs), m), dtype=bool)
        distinct[:, a] = False
        distinct[:, neg[a]] = False
        rowr = np.arange(len(bs))
        distinct[rowr, bs] = False
        distinct[rowr, neg[bs]] = False
        one_orth = orth[a] | orth[bs][:, None] | orth[None, :]
        qual = total_ok & distinct & one_orth
        checks += int(qual.sum())
        xor = (S[bs] >= 0) ^ (S[a] >= 0)[None, :]
        bad = qual & ~xor
        if bad.any():
            i, c = np.argwhere(bad)[0]
            failures.append(
                f"triple ({a},{int(bs[i])},{int(c)}) breaks the exactly-one-sum rule"
            )
    return checks, failures


def check_two_sums(
    algebra: MagicStarAlgebra,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    threads: int = 1,
) -> VerifyReport:
    """For distinct-up-to-sign root triples with one orthogonal member,
    alpha+beta and alpha+beta+gamma roots force exactly one of beta+gamma,
    alpha+gamma to be a root."""
    t0 = time.time()
    system = algebra.system
    rep = VerifyReport(
        suite="two-sums",
        algebra=system.algebra.family.value,
        level=system.algebra.level,
        mode=mode,
        seed=seed if mode == "sampled" else None,
    )
    T = algebra.tables
    if mode == "exhaustive":
        if not T.dense_ok:
            raise MemoryError("exhaustive two-sums sweep needs level <= 2")
        payload = {"S": T.S, "valid": T.S >= 0, "neg": T.neg, "spin": T.spin}
        chunks = np.array_split(np.arange(len(system)), max(1, threads * 8))
        for checks, fails in run_parallel(_two_sums_chunk, payload, chunks, threads):
            rep.checks += checks
            rep.failures.extend(fails)
    else:
        rng = np.random.default_rng(seed)
        m = len(system)
        tried = 0
        while tried < samples:
            a = int(rng.integers(m))
            part = T.partners_sparse(a)
            if not len(part):
                continue
            b = int(part[rng.integers(len(part))])
            ab = system.index_of([u + v for u, v in zip(T.X[a], T.X[b])])
            part2 = T.partners_sparse(ab)
            if not len(part2):
                continue
            c = int(part2[rng.integers(len(part2))])
            tried += 1
            if c in (a, int(T.neg[a]), b, int(T.neg[b])):
                continue
            if not ((~T.spin[a]) or (~T.spin[b]) or (~T.spin[c])):
                continue
            bg = system.index_of([u + v for u, v in zip(T.X[b], T.X[c])]) is not None
            ag = system.index_of([u + v for u, v in zip(T.X[a], T.X[c])]) is not None
            rep.checks += 1
            if bg == ag:
                rep.fail(f"triple ({a},{b},{c}) breaks the exactly-one-sum rule")
                break
    rep.elapsed = time.time() - t0
    return rep
