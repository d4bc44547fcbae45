"""Real n x n matrix polynomials stored by dense coefficient stacks."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np


def default_sym_tol(coeffs: np.ndarray) -> float:
    scale = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
    return 1e-10 * (1.0 + scale)


@dataclass(frozen=True, eq=False)
class MatPoly:
    """P(x) = sum_i coeffs[i] x**i with coeffs of shape (degree + 1, n, n).

    The degree is the declared one: trailing zero coefficients are kept.
    """

    coeffs: np.ndarray
    symmetric: bool = False
    sym_tol: float | None = field(default=None, repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim == 2:
            c = c[None]
        if c.ndim != 3 or c.shape[1] != c.shape[2] or c.shape[0] == 0 or c.shape[1] == 0:
            raise ValueError(f"coefficients must stack into (d+1, n, n), got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.sym_tol is None:
            object.__setattr__(self, "sym_tol", default_sym_tol(c))
        if self.symmetric and self.asymmetry() > self.sym_tol:
            raise ValueError(f"polynomial flagged symmetric has asymmetry {self.asymmetry():.3e}")

    @classmethod
    def from_list(cls, coeffs, symmetric=False):
        return cls(np.asarray(coeffs, dtype=float), symmetric=symmetric)

    @classmethod
    def constant(cls, C, symmetric=False):
        return cls(np.asarray(C, dtype=float)[None], symmetric=symmetric)

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def __len__(self):
        return self.coeffs.shape[0]

    def __getitem__(self, i):
        return self.coeffs[i]

    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.coeffs - self.coeffs.transpose(0, 2, 1))))

    def is_symmetric(self, tol=None) -> bool:
        return self.asymmetry() <= (self.sym_tol if tol is None else tol)

    def __call__(self, x):
        return eval_poly(self, x)

    def __repr__(self):
        return f"MatPoly(n={self.n}, degree={self.degree}, symmetric={self.symmetric})"


def eval_poly(p: MatPoly, x: float) -> np.ndarray:
    """Horner evaluation of sum C_i x**i."""
    out = np.array(p.coeffs[-1], dtype=np.result_type(p.coeffs, x))
    for C in p.coeffs[-2::-1]:
        out = out * x + C
    return out


def gram(g: MatPoly) -> MatPoly:
    """Coefficients of G(x)^T G(x); coefficient k is sum_{i+j=k} G_i^T G_j."""
    d = g.degree
    n = g.n
    out = np.zeros((2 * d + 1, n, n))
    for i in range(d + 1):
        GiT = g.coeffs[i].T
        for j in range(d + 1):
            out[i + j] += GiT @ g.coeffs[j]
    out = 0.5 * (out + out.transpose(0, 2, 1))
    return MatPoly(out, symmetric=True)


def reverse(p: MatPoly) -> MatPoly:
    return MatPoly(p.coeffs[::-1].copy(), symmetric=p.symmetric)


def shift_reflect(p: MatPoly, x0: float) -> MatPoly:
    """Coefficients of q(x) = p(x0 - x).

    (x0 - x)**j = sum_k C(j, k) x0**(j-k) (-x)**k, so
    q_k = (-1)**k sum_{j>=k} C(j, k) x0**(j-k) p_j.
    """
    d = p.degree
    out = np.zeros_like(p.coeffs)
    for k in range(d + 1):
        acc = np.zeros((p.n, p.n))
        for j in range(k, d + 1):
            acc += comb(j, k) * x0 ** (j - k) * p.coeffs[j]
        out[k] = (-1) ** k * acc
    return MatPoly(out, symmetric=p.symmetric, sym_tol=None)


def det_at(p: MatPoly, x: float) -> float:
    return float(np.linalg.det(eval_poly(p, x)))


def psd_on_grid(p: MatPoly, grid, tol: float = 1e-10) -> bool:
    """Sampled necessary condition for P(x) >= 0 on the real line.

    Only the grid points are checked; passing does not certify
    semidefiniteness between them.
    """
    for x in grid:
        A = eval_poly(p, float(x))
        A = 0.5 * (A + A.T)
        if np.linalg.eigvalsh(A)[0] < -tol:
            return False
    return True


def coeff_max_diff(p: MatPoly, q: MatPoly) -> float:
    """Max absolute entry of the coefficient difference, padding the shorter one."""
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n}")
    d = max(p.degree, q.degree)
    a = np.zeros((d + 1, p.n, p.n))
    b = np.zeros_like(a)
    a[: len(p)] = p.coeffs
    b[: len(q)] = q.coeffs
    return float(np.max(np.abs(a - b)))


def random_factor(rng: np.random.Generator, n: int, m: int) -> MatPoly:
    """G with G_0 = I and G_1..G_m uniform on [-1, 1]."""
    coeffs = np.empty((m + 1, n, n))
    coeffs[0] = np.eye(n)
    coeffs[1:] = rng.uniform(-1.0, 1.0, size=(m, n, n))
    return MatPoly(coeffs)
