"""Randomized round-trip experiment: factor gram(G) for random G and measure the error.

Trial ``i`` draws from its own ``numpy.random.Generator`` (PCG64) seeded by
``SeedSequence(seed).spawn(count)[i]``, so serial and parallel runs agree.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import FactorizationError
from .factorizer import FactorizationOptions, factorize
from .matpoly import coeff_max_diff, gram, random_factor


@dataclass
class TrialResult:
    index: int
    n: int
    m: int
    error: float
    failure: str | None = None


def trial_generators(seed: int, count: int):
    return [np.random.Generator(np.random.PCG64(s))
            for s in np.random.SeedSequence(seed).spawn(count)]


def run_trial(index, rng, nmax, mmax, opts=None) -> TrialResult:
    n = int(rng.integers(2, nmax + 1))
    m = int(rng.integers(2, mmax + 1))
    q = gram(random_factor(rng, n, m))
    try:
        rep = factorize(q, opts)
    except FactorizationError as exc:
        return TrialResult(index, n, m, float("nan"), failure=str(exc))
    return TrialResult(index, n, m, coeff_max_diff(q, gram(rep.G)))


def _run_one(args):
    return run_trial(*args)


def run_trials(count=100, seed=1, nmax=5, mmax=5, workers=1, opts=None):
    """Results ordered by trial index."""
    opts = opts or FactorizationOptions()
    jobs = [(i, g, nmax, mmax, opts) for i, g in enumerate(trial_generators(seed, count))]
    if workers > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(j) for j in jobs]


def worst_error(results) -> float:
    errs = [r.error for r in results if r.failure is None]
    return max(errs, default=0.0)
