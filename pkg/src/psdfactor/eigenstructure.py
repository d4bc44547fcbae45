"""Real Jordan data for M_r and the neutral invariant subspace built from it.

Column layout of S follows the real Jordan form: a real block J_r(lam) owns r
consecutive columns (a Jordan chain), a complex block J_{2s}(alpha +- i beta)
owns 2s columns whose consecutive pairs are the real and imaginary parts of a
complex Jordan chain for alpha + i beta, so that

    M_r [a, b] = [a, b] [[alpha, beta], [-beta, alpha]]

for the leading pair (a, b).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import (ClusterFailure, DefectiveBeyondGeneric, InputError, OddRealBlock,
                     SingularX1, UnpairedOddBlock)
from .riccati import hhat, neutrality_defect


@dataclass(frozen=True)
class JordanBlockDesc:
    kind: Literal["real", "complex"]
    size: int
    col_start: int
    lam: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0

    @property
    def ncols(self) -> int:
        return self.size if self.kind == "real" else 2 * self.size

    @property
    def eigenvalue(self) -> complex:
        return complex(self.lam) if self.kind == "real" else complex(self.alpha, self.beta)

    @property
    def multiplicity(self) -> int:
        """Algebraic multiplicity contributed to each eigenvalue of the block."""
        return self.size

    def __post_init__(self):
        if self.kind not in ("real", "complex"):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.size < 1 or self.col_start < 0:
            raise ValueError("block size must be positive and col_start non-negative")
        if self.kind == "complex" and not self.beta > 0:
            raise ValueError("complex blocks need beta > 0")


def jordan_matrix(blocks) -> np.ndarray:
    """Reassemble the real Jordan matrix J from block descriptors."""
    total = sum(b.ncols for b in blocks)
    J = np.zeros((total, total))
    for b in blocks:
        c = b.col_start
        if b.kind == "real":
            for i in range(b.size):
                J[c + i, c + i] = b.lam
                if i + 1 < b.size:
                    J[c + i, c + i + 1] = 1.0
        else:
            C = np.array([[b.alpha, b.beta], [-b.beta, b.alpha]])
            for i in range(b.size):
                k = c + 2 * i
                J[k:k + 2, k:k + 2] = C
                if i + 1 < b.size:
                    J[k:k + 2, k + 2:k + 4] = np.eye(2)
    return J


@dataclass(frozen=True, eq=False)
class RealJordanData:
    S: np.ndarray
    blocks: tuple

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise InputError(f"S must be square, got shape {S.shape}", stage="jordan_data")
        cover = np.zeros(S.shape[0], dtype=int)
        for b in self.blocks:
            if b.col_start + b.ncols > S.shape[0]:
                raise InputError(f"block {b} exceeds the {S.shape[0]} columns of S",
                                 stage="jordan_data")
            cover[b.col_start:b.col_start + b.ncols] += 1
        if not np.all(cover == 1):
            raise InputError("Jordan blocks must partition the columns of S",
                             stage="jordan_data")

    @property
    def J(self) -> np.ndarray:
        return jordan_matrix(sorted(self.blocks, key=lambda b: b.col_start))

    def residual(self, Mr) -> float:
        """||M_r S - S J||_F / ||M_r||_F."""
        Mr = np.asarray(Mr, dtype=float)
        scale = max(np.linalg.norm(Mr, "fro"), 1e-300)
        return float(np.linalg.norm(Mr @ self.S - self.S @ self.J, "fro") / scale)

    def inverse_condition(self) -> float:
        sv = np.linalg.svd(self.S, compute_uv=False)
        return float(sv[-1] / sv[0])


@dataclass(frozen=True, eq=False)
class NeutralSubspace:
    Y: np.ndarray

    @property
    def X1(self) -> np.ndarray:
        return self.Y[: self.Y.shape[0] // 2]

    @property
    def X2(self) -> np.ndarray:
        return self.Y[self.Y.shape[0] // 2:]

    def neutrality(self) -> float:
        return neutrality_defect(self.Y, hhat(self.Y.shape[0] // 2))

    def invariance(self, Mr) -> float:
        """||M_r Y - Y (Y^+ M_r Y)||_F."""
        MY = Mr @ self.Y
        T = np.linalg.pinv(self.Y) @ MY
        return float(np.linalg.norm(MY - self.Y @ T, "fro"))


@dataclass(frozen=True)
class Cluster:
    center: complex
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_real(self) -> bool:
        return self.center.imag == 0.0


COARSE_FACTOR = 1e3


def default_cluster_tol(Mr) -> float:
    return 1e-6 * (1.0 + float(np.linalg.norm(Mr, "fro")))


def _single_linkage(values, tol):
    """Connected components of the graph joining values closer than tol."""
    k = len(values)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(values[i] - values[j]) <= tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(values[i])
    return list(groups.values())


def cluster_eigenvalues(eigvals, tol):
    """Split eigenvalues into real clusters and upper-half-plane complex clusters.

    Eigenvalues within ``tol`` of the real axis count as real: a perturbed
    defective real pair often comes back as a conjugate pair with O(sqrt(eps))
    imaginary parts.  Lower-half-plane eigenvalues mirror the upper ones and are
    not listed.
    """
    eigvals = np.asarray(eigvals, dtype=complex)
    real = [complex(z.real, 0.0) for z in eigvals if abs(z.imag) <= tol]
    upper = [complex(z) for z in eigvals if z.imag > tol]
    out = []
    for group in _single_linkage(real, tol):
        c = float(np.mean([z.real for z in group]))
        out.append(Cluster(complex(c, 0.0), tuple(sorted(z.real for z in group))))
    for group in _single_linkage(upper, tol):
        c = complex(np.mean(group))
        out.append(Cluster(c, tuple(sorted(group, key=lambda z: (z.real, z.imag)))))
    # real clusters first, each family by decreasing real part then imaginary part
    out.sort(key=lambda c: (not c.is_real, -c.center.real, -c.center.imag))
    return out


def classify_clusters(clusters) -> str:
    """Verdict for the generic path: 'generic', 'needs-exact' or 'not-factorizable'."""
    if any(c.size % 2 for c in clusters):
        return "not-factorizable"
    if any(c.size > 2 for c in clusters):
        return "needs-exact"
    return "generic"


def analyze_spectrum(Mr, cluster_tol: float | None = None):
    """Cluster the eigenvalues of M_r and return (clusters, verdict).

    A defective eigenvalue of multiplicity k comes back spread over a radius
    of order eps**(1/k), so k >= 4 escapes the fine tolerance.  When the fine
    pass leaves odd clusters, a coarse pass decides between a higher even
    multiplicity ('needs-exact') and a genuinely odd one.
    """
    Mr = np.asarray(Mr, dtype=float)
    tol = default_cluster_tol(Mr) if cluster_tol is None else cluster_tol
    eig = np.linalg.eigvals(Mr)
    clusters = cluster_eigenvalues(eig, tol)
    verdict = classify_clusters(clusters)
    if verdict == "not-factorizable":
        coarse = cluster_eigenvalues(eig, max(COARSE_FACTOR * tol, tol))
        if classify_clusters(coarse) != "not-factorizable":
            return coarse, "needs-exact"
    return clusters, verdict


def _chain(M, shift, tol_rel=1e-10):
    """Eigenvector and one generalized eigenvector of M at ``shift``.

    The eigenvector is the right singular vector of M - shift I for its
    smallest singular value; the next chain vector solves
    (M - shift I) w = v by the pseudo-inverse that drops that singular value.
    """
    N = M - shift * np.eye(M.shape[0])
    U, s, Vh = np.linalg.svd(N)
    if s.size > 1 and s[-2] <= tol_rel * s[0]:
        raise DefectiveBeyondGeneric(
            f"eigenvalue {shift:.6g} has geometric multiplicity > 1", stage="eigenstructure")
    v = Vh[-1].conj()
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    w = Vh[:-1].conj().T @ ((U[:, :-1].conj().T @ v) / s[:-1])
    return v, w


def generic_eigenstructure(Mr, cluster_tol: float | None = None) -> RealJordanData:
    """Real Jordan data when every eigenvalue is a single 2-chain (or a 4-column complex block)."""
    Mr = np.asarray(Mr, dtype=float)
    tol = default_cluster_tol(Mr) if cluster_tol is None else cluster_tol
    clusters, verdict = analyze_spectrum(Mr, tol)
    if verdict == "not-factorizable":
        c = next(c for c in clusters if c.size % 2)
        raise ClusterFailure(
            f"eigenvalue {c.center:.6g} has odd multiplicity {c.size}; "
            "no real factorization of this degree exists", stage="eigenstructure")
    if verdict == "needs-exact":
        c = max(clusters, key=lambda c: c.size)
        raise DefectiveBeyondGeneric(
            f"eigenvalue {c.center:.6g} has multiplicity {c.size}; supply exact Jordan data",
            stage="eigenstructure")

    cols = []
    blocks = []
    for c in clusters:
        start = sum(x.shape[1] for x in cols)
        if c.is_real:
            v, w = _chain(Mr, c.center.real)
            cols.append(np.column_stack([v.real, w.real]))
            blocks.append(JordanBlockDesc("real", 2, start, lam=c.center.real))
        else:
            v, w = _chain(Mr.astype(complex), c.center)
            cols.append(np.column_stack([v.real, v.imag, w.real, w.imag]))
            blocks.append(JordanBlockDesc("complex", 2, start, alpha=c.center.real,
                                          beta=c.center.imag))
    S = np.hstack(cols)
    return RealJordanData(S=S, blocks=tuple(blocks))


def _pair_odd_blocks(blocks, match_tol):
    """Pair complex blocks of odd size sharing an eigenvalue; sorted by size, consecutive."""
    groups = []
    for b in blocks:
        for g in groups:
            if abs(g[0].alpha - b.alpha) <= match_tol and abs(g[0].beta - b.beta) <= match_tol:
                g.append(b)
                break
        else:
            groups.append([b])
    pairs = []
    for g in groups:
        if len(g) % 2:
            raise UnpairedOddBlock(
                f"{len(g)} odd-size blocks at {g[0].alpha:.6g} +- {g[0].beta:.6g}i cannot be paired",
                stage="construct_Y")
        g = sorted(g, key=lambda b: (b.size, b.col_start))
        pairs.extend(zip(g[0::2], g[1::2]))
    return pairs


def construct_Y(jd: RealJordanData, match_tol: float = 1e-8) -> NeutralSubspace:
    """Pick half of the columns of S spanning an invariant neutral subspace.

    * real block of size r: its first r/2 columns;
    * complex block with s even: its first s columns;
    * complex blocks with s odd, paired (j, p) at equal eigenvalues: the first
      s_j - 1 columns of j, the first s_p - 1 of p, then
      col_j[s_j] + col_p[s_p + 1] and col_j[s_j + 1] - col_p[s_p] (1-based).
    """
    S = jd.S
    blocks = sorted(jd.blocks, key=lambda b: b.col_start)
    for b in blocks:
        if b.kind == "real" and b.size % 2:
            raise OddRealBlock(f"real block at {b.lam:.6g} has odd size {b.size}",
                               stage="construct_Y")
    odd = [b for b in blocks if b.kind == "complex" and b.size % 2]
    partner = {}
    for j, p in _pair_odd_blocks(odd, match_tol):
        partner[j.col_start] = p

    taken = set()
    cols = []
    for b in blocks:
        c = b.col_start
        if b.kind == "real":
            cols.extend(S[:, c + i] for i in range(b.size // 2))
        elif b.size % 2 == 0:
            cols.extend(S[:, c + i] for i in range(b.size))
        elif c in partner:
            p = partner[c]
            sj, sp, q = b.size, p.size, p.col_start
            cols.extend(S[:, c + i] for i in range(sj - 1))
            cols.extend(S[:, q + i] for i in range(sp - 1))
            cols.append(S[:, c + sj - 1] + S[:, q + sp])
            cols.append(S[:, c + sj] - S[:, q + sp - 1])
            taken.add(q)
        elif c not in taken:
            raise UnpairedOddBlock(f"block {b} has no partner", stage="construct_Y")
    Y = np.column_stack(cols)
    if 2 * Y.shape[1] != S.shape[0]:
        raise InputError(f"selected {Y.shape[1]} columns, expected {S.shape[0] // 2}",
                         stage="construct_Y")
    return NeutralSubspace(Y=Y)


def solve_X(ns: NeutralSubspace, inv_tol: float = 1e-12) -> np.ndarray:
    """X = X2 X1^{-1} for the graph representation of the subspace."""
    X1, X2 = ns.X1, ns.X2
    sv = np.linalg.svd(X1, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] < inv_tol * sv[0]:
        ratio = sv[-1] / sv[0] if sv[0] else 0.0
        raise SingularX1(f"X1 is numerically singular (sigma_min/sigma_max = {ratio:.3e}); "
                         "subspace is not a graph subspace", stage="solve_X")
    return np.linalg.solve(X1.T, X2.T).T
