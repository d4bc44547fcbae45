"""End-to-end real factorization Q(x) = G(x)^T G(x).

Pipeline: pick a regular point x0, reflect P^(x) = Q(x0 - x), congruence-normalize
so the constant term is I, build M_r, extract a neutral invariant subspace, solve
for the skew X, assemble F_X, factor it at rank n, and undo the normalizations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import eigenstructure as es
from .errors import (FactorizationError, InputError, NoRegularPoint, NotPositiveDefinite,
                     NotPSD, RankMismatch)
from .matpoly import MatPoly, coeff_max_diff, eval_poly, gram, shift_reflect
from .riccati import (RiccatiData, StructuredPencil, block_F0, build_pencil,
                      build_riccati_data, graph_check, is_controllable, riccati_residual)

log = logging.getLogger(__name__)

X0_CANDIDATES = 41


@dataclass
class FactorizationOptions:
    """Numerical knobs. ``x0`` is "auto" or a fixed real; ``jordan`` supplies exact Jordan data."""

    x0: Union[str, float] = "auto"
    rank_tol: float = 1e-6
    psd_tol: float = 1e-10
    skew_tol: float = 1e-8
    cluster_tol: float | None = None
    residual_tol: float = 1e-5
    max_cond: float = 1e8
    controllability_tol: float = 1e-10
    jordan: es.RealJordanData | None = None

    def __post_init__(self):
        for name in ("rank_tol", "psd_tol", "skew_tol", "residual_tol", "max_cond"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.cluster_tol is not None and not self.cluster_tol > 0:
            raise ValueError("cluster_tol must be positive")
        if not (self.x0 == "auto" or isinstance(self.x0, (int, float))):
            raise ValueError(f"x0 must be 'auto' or a real number, got {self.x0!r}")


@dataclass
class NormalizedFactorization:
    """Intermediate objects of the core construction on a polynomial with P(0) = I."""

    rd: RiccatiData
    pencil: StructuredPencil
    jordan: es.RealJordanData
    subspace: es.NeutralSubspace
    X: np.ndarray
    FX: np.ndarray
    H: MatPoly
    fx_eigs: np.ndarray
    skew_defect: float
    riccati_residual: float

    @property
    def fx_rank(self) -> int:
        return self.H.n


@dataclass
class FactorizationReport:
    G: MatPoly
    x0: float
    residual: float
    fx_rank: int
    fx_min_eig: float
    skew_defect: float
    riccati_residual: float
    eigen_summary: list = field(default_factory=list)
    neutrality: float = 0.0
    invariance: float = 0.0
    X: np.ndarray | None = None
    FX: np.ndarray | None = None
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def lines(self):
        yield f"status = {'OK' if self.ok else 'FAIL'}"
        yield f"x0 = {self.x0!r}"
        yield f"n = {self.G.n}"
        yield f"m = {self.G.degree}"
        yield f"residual = {self.residual:.6e}"
        yield f"fx_rank = {self.fx_rank}"
        yield f"fx_min_eig = {self.fx_min_eig:.6e}"
        yield f"skew_defect = {self.skew_defect:.6e}"
        yield f"riccati_residual = {self.riccati_residual:.6e}"
        yield f"neutrality = {self.neutrality:.6e}"
        yield f"invariance = {self.invariance:.6e}"
        for b in self.eigen_summary:
            yield f"block = {describe_block(b)}"
        for name, passed in self.checks.items():
            yield f"check.{name} = {'pass' if passed else 'FAIL'}"


def describe_block(b: es.JordanBlockDesc) -> str:
    if b.kind == "real":
        return f"real lambda={b.lam:.10g} size={b.size} col={b.col_start}"
    return f"complex alpha={b.alpha:.10g} beta={b.beta:.10g} size={b.size} col={b.col_start}"


def _sym_eig(A):
    return np.linalg.eigh(0.5 * (A + A.T))


def choose_x0(q: MatPoly, psd_tol: float = 1e-10, max_cond: float = 1e8) -> float:
    """First of 0, 1, -1, 2, -2, ... where Q(x0) is positive definite and well conditioned."""
    for k in range(X0_CANDIDATES):
        x0 = float((k + 1) // 2 if k % 2 else -(k // 2))
        w = np.linalg.eigvalsh(0.5 * (eval_poly(q, x0) + eval_poly(q, x0).T))
        if w[0] >= psd_tol and w[-1] / w[0] <= max_cond:
            return x0 if x0 != 0 else 0.0
    raise NoRegularPoint(f"no well-conditioned positive definite point among the first "
                         f"{X0_CANDIDATES} candidates", stage="choose_x0")


def sqrtm_psd(A, psd_tol: float = 1e-10, inverse: bool = False):
    """Symmetric square root (and optionally its inverse) by spectral decomposition."""
    w, V = _sym_eig(np.asarray(A, dtype=float))
    if w[0] < (psd_tol if inverse else -psd_tol):
        raise NotPositiveDefinite(f"minimum eigenvalue {w[0]:.3e} below {psd_tol:.1e}",
                                  stage="normalize")
    w = np.clip(w, 0.0, None)
    root = (V * np.sqrt(w)) @ V.T
    if not inverse:
        return 0.5 * (root + root.T)
    inv = (V / np.sqrt(w)) @ V.T
    return 0.5 * (root + root.T), 0.5 * (inv + inv.T)


def normalize(q: MatPoly, x0: float, psd_tol: float = 1e-10):
    """Return (P, p0_sqrt) with P(x) = p0^{-1/2} Q(x0 - x) p0^{-1/2} and p0 = Q(x0)."""
    phat = shift_reflect(q, x0)
    root, inv = sqrtm_psd(phat.coeffs[0], psd_tol, inverse=True)
    c = np.einsum("ij,kjl,lm->kim", inv, phat.coeffs, inv)
    c = 0.5 * (c + c.transpose(0, 2, 1))
    dev = float(np.max(np.abs(c[0] - np.eye(q.n))))
    if dev > 1e-8:
        log.warning("normalized constant term deviates from I by %.3e", dev)
    c[0] = np.eye(q.n)
    return MatPoly(c, symmetric=True), root


def assemble_FX(p: MatPoly, X) -> np.ndarray:
    """F_0 plus X in the rows of the last m blocks' columns, minus X in the transposed spot.

    The two corrections overlap: X is added at rows [0, nm) x cols [n, n + nm)
    and subtracted at rows [n, n + nm) x cols [0, nm).
    """
    n = p.n
    X = np.asarray(X, dtype=float)
    nm = X.shape[0]
    F = block_F0(p)
    F[:nm, n:n + nm] += X
    F[n:n + nm, :nm] -= X
    return F


def rank_n_factor(FX, n: int, rank_tol: float = 1e-6):
    """Split a rank-n PSD matrix as H^T H with H = [H_0 ... H_m], H_0 upper triangular, diag >= 0."""
    FX = np.asarray(FX, dtype=float)
    w, V = _sym_eig(FX)
    top = w[-1]
    if not top > 0:
        raise NotPSD("F_X has no positive eigenvalue", stage="rank_n_factor")
    if w[0] < -rank_tol * top:
        raise NotPSD(f"F_X has eigenvalue {w[0]:.3e} < -{rank_tol:.1e} * {top:.3e}",
                     stage="rank_n_factor")
    rank = int(np.sum(w > rank_tol * top))
    if rank != n:
        raise RankMismatch(f"F_X has numerical rank {rank}, expected {n} "
                           f"(eigenvalues {np.array2string(w, precision=3)})",
                           stage="rank_n_factor")
    H = np.sqrt(w[-n:])[:, None] * V[:, -n:].T
    Qf, Rf = np.linalg.qr(H[:, :n])
    H = Qf.T @ H
    signs = np.where(np.diag(Rf) < 0, -1.0, 1.0)
    H = signs[:, None] * H
    m = FX.shape[0] // n - 1
    return [H[:, j * n:(j + 1) * n].copy() for j in range(m + 1)]


def _check_input(q: MatPoly):
    if q.degree % 2:
        raise InputError(f"degree must be even, got {q.degree}", stage="input")
    if not q.is_symmetric():
        raise InputError(f"polynomial is not symmetric (asymmetry {q.asymmetry():.3e})",
                         stage="input")


def factor_normalized(p: MatPoly, opts: FactorizationOptions | None = None) -> NormalizedFactorization:
    """Core construction for P with P(0) = I: returns H with P(x) = H(x)^T H(x)."""
    opts = opts or FactorizationOptions()
    rd = build_riccati_data(p)
    pencil = build_pencil(rd)
    if opts.jordan is not None:
        jd = opts.jordan
        if jd.S.shape != pencil.Mr.shape:
            raise InputError(f"Jordan data has S of shape {jd.S.shape}, M_r is "
                             f"{pencil.Mr.shape}", stage="jordan_data")
        res = jd.residual(pencil.Mr)
        if res > 1e-8:
            raise InputError(f"supplied Jordan data does not match M_r "
                             f"(relative residual {res:.3e})", stage="jordan_data")
    else:
        jd = es.generic_eigenstructure(pencil.Mr, opts.cluster_tol)
    ns = es.construct_Y(jd)
    X = es.solve_X(ns)
    skew_defect = float(np.max(np.abs(X + X.T)))
    X = 0.5 * (X - X.T)
    FX = assemble_FX(p, X)
    Hs = rank_n_factor(FX, p.n, opts.rank_tol)
    return NormalizedFactorization(
        rd=rd, pencil=pencil, jordan=jd, subspace=ns, X=X, FX=FX,
        H=MatPoly(np.array(Hs)), fx_eigs=np.linalg.eigvalsh(FX),
        skew_defect=skew_defect, riccati_residual=riccati_residual(X, rd))


def factorize(q: MatPoly, opts: FactorizationOptions | None = None) -> FactorizationReport:
    """Find real G of half degree with Q = G^T G."""
    opts = opts or FactorizationOptions()
    _check_input(q)
    n, m = q.n, q.degree // 2

    if m == 0:
        G = MatPoly(sqrtm_psd(q.coeffs[0], opts.psd_tol)[None])
        residual = coeff_max_diff(q, gram(G))
        return FactorizationReport(
            G=G, x0=0.0, residual=residual, fx_rank=n, fx_min_eig=0.0, skew_defect=0.0,
            riccati_residual=0.0, checks={"residual": residual <= opts.residual_tol})

    x0 = choose_x0(q, opts.psd_tol, opts.max_cond) if opts.x0 == "auto" else float(opts.x0)
    p, root = normalize(q, x0, opts.psd_tol)
    try:
        core = factor_normalized(p, opts)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(str(exc), stage="linalg") from exc

    # Q(y) = P^(x0 - y) and P^ = root P root, so G(y) = H(x0 - y) root
    Hs = shift_reflect(core.H, x0)
    G = MatPoly(np.einsum("kij,jl->kil", Hs.coeffs, root))
    residual = coeff_max_diff(q, gram(G))

    rd = core.rd
    X = core.X
    tol_skew = opts.skew_tol * (1 + float(np.max(np.abs(X))))
    nrm_Y = float(np.linalg.norm(core.subspace.Y, "fro"))
    neutrality = core.subspace.neutrality()
    invariance = core.subspace.invariance(core.pencil.Mr)
    checks = {
        "residual": residual <= opts.residual_tol,
        "fx_rank": core.fx_rank == n,
        "skew": core.skew_defect <= tol_skew,
        "riccati": core.riccati_residual <= 1e-7 * (1 + np.linalg.norm(rd.P, "fro")),
        "neutrality": neutrality <= 1e-8 * nrm_Y ** 2,
        "invariance": invariance <= 1e-7 * np.linalg.norm(core.pencil.Mr, "fro") * nrm_Y,
        "graph": graph_check(X, core.pencil, rd) <= 1e-7 * (1 + np.linalg.norm(rd.P, "fro")),
        "controllable": is_controllable(rd.R, rd.S, opts.controllability_tol),
    }
    return FactorizationReport(
        G=G, x0=x0, residual=residual, fx_rank=core.fx_rank,
        fx_min_eig=float(core.fx_eigs[0]), skew_defect=core.skew_defect,
        riccati_residual=core.riccati_residual, eigen_summary=list(core.jordan.blocks),
        neutrality=neutrality, invariance=invariance, X=X, FX=core.FX, checks=checks)
