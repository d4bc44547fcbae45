"""Riccati data and structured pencil for a normalized matrix polynomial.

For P(x) = I + P_1 x + ... + P_{2m} x^{2m} the block Hankel-like matrix

    F_0 = [[I,      P_1/2,  0,     ...      ],
           [P_1/2,  P_2,    P_3/2, ...      ],
           [0,      P_3/2,  P_4,   ...      ],
           ...                   P_{2m}     ]]

is split as [[I, Gamma12], [Gamma12^T, Gamma22]].  With the block down-shift A
and injection B = [I; 0; ...; 0] the factorization reduces to a skew-symmetric
solution X of

    X S X - X R + R^T X + P = 0,   P = Gamma22 - Gamma12^T Gamma12,
                                   R = A - B Gamma12,  S = B B^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .matpoly import MatPoly


@dataclass(frozen=True, eq=False)
class RiccatiData:
    n: int
    m: int
    P: np.ndarray
    R: np.ndarray
    S: np.ndarray
    Gamma12: np.ndarray
    Gamma22: np.ndarray
    A: np.ndarray
    B: np.ndarray
    F0: np.ndarray


@dataclass(frozen=True, eq=False)
class StructuredPencil:
    Mr: np.ndarray
    Hhat: np.ndarray
    Hr: np.ndarray


def block_F0(p: MatPoly) -> np.ndarray:
    """(m+1)n square symmetric matrix with P_{2k} on the diagonal and P_{2k+1}/2 beside it."""
    n, m = p.n, p.degree // 2
    F = np.zeros(((m + 1) * n, (m + 1) * n))
    for k in range(m + 1):
        F[k * n:(k + 1) * n, k * n:(k + 1) * n] = p.coeffs[2 * k]
        if k < m:
            half = 0.5 * p.coeffs[2 * k + 1]
            F[k * n:(k + 1) * n, (k + 1) * n:(k + 2) * n] = half
            F[(k + 1) * n:(k + 2) * n, k * n:(k + 1) * n] = half
    return F


def check_normalized(p: MatPoly, tol: float = 1e-10):
    if p.degree % 2:
        raise InputError(f"degree must be even, got {p.degree}", stage="build_riccati_data")
    if not p.is_symmetric():
        raise InputError(f"polynomial is not symmetric (asymmetry {p.asymmetry():.3e})",
                         stage="build_riccati_data")
    dev = float(np.max(np.abs(p.coeffs[0] - np.eye(p.n))))
    if dev > tol * (1 + float(np.max(np.abs(p.coeffs)))):
        raise InputError(f"constant coefficient must be the identity (deviation {dev:.3e}); "
                         "normalize first", stage="build_riccati_data")


def build_riccati_data(p: MatPoly) -> RiccatiData:
    check_normalized(p)
    n, m = p.n, p.degree // 2
    if m == 0:
        raise InputError("degree 0 has no Riccati data", stage="build_riccati_data")
    F0 = block_F0(p)
    Gamma12 = F0[:n, n:]
    Gamma22 = F0[n:, n:]
    nm = n * m
    A = np.zeros((nm, nm))
    for k in range(1, m):
        A[k * n:(k + 1) * n, (k - 1) * n:k * n] = np.eye(n)
    B = np.zeros((nm, n))
    B[:n] = np.eye(n)
    P = Gamma22 - Gamma12.T @ Gamma12
    P = 0.5 * (P + P.T)
    R = A - B @ Gamma12
    S = B @ B.T
    return RiccatiData(n=n, m=m, P=P, R=R, S=S, Gamma12=Gamma12.copy(),
                       Gamma22=Gamma22.copy(), A=A, B=B, F0=F0)


def hhat(nm: int) -> np.ndarray:
    Z = np.zeros((nm, nm))
    I = np.eye(nm)
    return np.block([[Z, I], [I, Z]])


def build_pencil(rd: RiccatiData) -> StructuredPencil:
    Mr = np.block([[rd.R, -rd.S], [rd.P, rd.R.T]])
    H = hhat(rd.n * rd.m)
    # Hhat is a permutation, so this product is exact
    return StructuredPencil(Mr=Mr, Hhat=H, Hr=H @ Mr)


def riccati_residual(X, rd: RiccatiData) -> float:
    X = np.asarray(X, dtype=float)
    res = X @ rd.S @ X - X @ rd.R + rd.R.T @ X + rd.P
    return float(np.linalg.norm(res, "fro"))


def controllability_matrix(A, B) -> np.ndarray:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.asarray(B, dtype=float).reshape(A.shape[0], -1)
    blocks = [B]
    for _ in range(A.shape[0] - 1):
        blocks.append(A @ blocks[-1])
    return np.hstack(blocks)


def controllable_dim(A, B, rank_tol: float = 1e-10) -> int:
    """Dimension of span[B, AB, A^2 B, ...] by orthogonalized block Krylov steps.

    Forming the Krylov matrix explicitly loses rank to growth of A^k for
    moderate sizes; each step here only keeps directions new to the basis.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.asarray(B, dtype=float).reshape(A.shape[0], -1)
    n = A.shape[0]
    scale = max(np.linalg.norm(A, 2), np.linalg.norm(B, 2))
    if scale == 0.0:
        return 0
    cutoff = rank_tol * scale
    basis = np.zeros((n, 0))
    W = B
    while basis.shape[1] < n:
        for _ in range(2):
            W = W - basis @ (basis.T @ W)
        if W.size == 0:
            break
        U, s, _ = np.linalg.svd(W, full_matrices=False)
        new = U[:, s > cutoff]
        if new.shape[1] == 0:
            break
        basis = np.hstack([basis, new])
        W = A @ new
    return basis.shape[1]


def is_controllable(A, B, rank_tol: float = 1e-10) -> bool:
    """True iff [B, AB, ..., A^{n-1} B] has full row rank."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    return controllable_dim(A, B, rank_tol) == A.shape[0]


def graph_check(X, pencil: StructuredPencil, rd: RiccatiData) -> float:
    """||M_r [I; X] - [I; X](R - S X)||_F, zero iff the graph of X is invariant."""
    X = np.asarray(X, dtype=float)
    nm = X.shape[0]
    G = np.vstack([np.eye(nm), X])
    Z = rd.R - rd.S @ X
    return float(np.linalg.norm(pencil.Mr @ G - G @ Z, "fro"))


def neutrality_defect(Y, H) -> float:
    """max |Y^T H Y|; zero iff the column space of Y is H-neutral."""
    Y = np.asarray(Y)
    W = Y.conj().T @ H @ Y
    return float(np.max(np.abs(W))) if W.size else 0.0
