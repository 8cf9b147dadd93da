"""Symmetric tridiagonal kernel.

Provides the matrix type used for finite sections of half-line Jacobi
operators, Sturm-sequence eigenvalue counting, a windowed bisection
eigensolver, and partial-sum diagnostics for the Carleman condition
(divergence of sum 1/a_n, the standard essential-self-adjointness test).

Eigenvalue extraction is bisection-only: the dominant workload is windowed
queries (counts near a spectral edge, lowest-k eigenvalues), for which
Sturm counts are the natural primitive.  Dense QR-style solvers are used
only as independent oracles in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

_EPS = float(np.finfo(float).eps)


def _readonly(values) -> np.ndarray:
    out = np.array(values, dtype=float)
    out.setflags(write=False)
    return out


def _eval_rule(rule: Callable, idx: np.ndarray) -> np.ndarray:
    """Evaluate a sequence rule on an index array, tolerating scalar-only rules."""
    try:
        vals = np.asarray(rule(idx), dtype=float)
        if vals.shape == idx.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(rule(int(i))) for i in idx], dtype=float)


@dataclass(frozen=True)
class SymTridiag:
    """Real symmetric tridiagonal matrix with strictly positive off-diagonal.

    The positivity requirement matches the Jacobi-matrix convention and
    guarantees simple eigenvalues.  Instances are immutable and safe to
    share across threads.
    """

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diag", _readonly(self.diag))
        object.__setattr__(self, "offdiag", _readonly(self.offdiag))
        if self.diag.ndim != 1 or self.diag.size < 1:
            raise ValueError("diag must be a non-empty 1-d sequence")
        if self.offdiag.shape != (self.diag.size - 1,):
            raise ValueError("offdiag must have length len(diag) - 1")
        if not np.all(np.isfinite(self.diag)):
            raise ValueError("diag entries must be finite")
        if self.offdiag.size and not (
            np.all(np.isfinite(self.offdiag)) and np.all(self.offdiag > 0.0)
        ):
            raise ValueError("offdiag entries must be finite and strictly positive")

    @property
    def n_max(self) -> int:
        return int(self.diag.size)

    def gershgorin(self) -> tuple[float, float]:
        """Interval guaranteed to contain every eigenvalue (row-sum discs)."""
        radius = np.zeros(self.diag.size)
        if self.offdiag.size:
            radius[:-1] += self.offdiag
            radius[1:] += self.offdiag
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def dense(self) -> np.ndarray:
        out = np.diag(self.diag)
        if self.offdiag.size:
            idx = np.arange(self.diag.size - 1)
            out[idx, idx + 1] = self.offdiag
            out[idx + 1, idx] = self.offdiag
        return out


@dataclass(frozen=True)
class TruncatedSpectrum:
    """Eigenvalues of a finite truncation located inside a window.

    ``eigenvalues`` is sorted ascending; each entry was bracketed by
    bisection to half-width at most ``tol``.
    """

    eigenvalues: np.ndarray
    n_max: int
    tol: float
    window: tuple[float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _readonly(self.eigenvalues))
        if self.eigenvalues.size > 1 and np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("eigenvalues must be sorted ascending")

    def __len__(self) -> int:
        return int(self.eigenvalues.size)


def _sturm_counts(diag: np.ndarray, off_sq: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """Eigenvalue counts strictly below each shift in ``lams``.

    Runs the shift-safe LDL^T recurrence d_i = (diag_i - lam) - off_(i-1)^2 / d_(i-1)
    vectorised over the shift axis; the number of negative d_i equals the
    number of eigenvalues below the shift.
    """
    def guarded(d: np.ndarray, i: int) -> np.ndarray:
        # exact zeros would blow up the next division; the conventional
        # guard nudges them negative at machine-epsilon scale
        zero = d == 0.0
        if zero.any():
            d = np.where(zero, -(np.abs(diag[i]) + np.abs(lams) + 1.0) * _EPS, d)
        return d

    d = guarded(diag[0] - lams, 0)
    counts = (d < 0).astype(np.int64)
    for i in range(1, diag.size):
        d = guarded((diag[i] - lams) - off_sq[i - 1] / d, i)
        counts += d < 0
    return counts


def sturm_count(m: SymTridiag, lam: float) -> int:
    """Number of eigenvalues of ``m`` strictly less than ``lam``."""
    lam = float(lam)
    if not np.isfinite(lam):
        raise ValueError("lam must be finite")
    off_sq = m.offdiag**2
    return int(_sturm_counts(m.diag, off_sq, np.array([lam]))[0])


def default_bisect_tol(m: SymTridiag) -> float:
    """Default bisection half-width: 1e-12 relative to the spectral radius.

    Keeps relative accuracy near the large eigenvalues of unbounded-growth
    truncations while staying absolute for order-one spectra.
    """
    lo, hi = m.gershgorin()
    return 1e-12 * max(1.0, abs(lo), abs(hi))


def eigenvalues_bisect(
    m: SymTridiag,
    window: tuple[float, float] | None = None,
    tol: float | None = None,
) -> TruncatedSpectrum:
    """All eigenvalues of ``m`` inside ``window``, each bisected to half-width <= tol.

    The half-open convention matches Sturm counting: the result holds the
    eigenvalues in [window[0], window[1]), and its length always equals
    sturm_count(m, hi) - sturm_count(m, lo).  ``window=None`` solves over a
    padded Gershgorin interval, returning the full spectrum.  An empty
    window yields an empty spectrum, not an error.
    """
    if tol is None:
        tol = default_bisect_tol(m)
    tol = float(tol)
    if not tol > 0.0:
        raise ValueError("tol must be strictly positive")
    if window is None:
        glo, ghi = m.gershgorin()
        pad = 64.0 * _EPS * max(1.0, abs(glo), abs(ghi))
        window = (glo - pad, ghi + pad)
    lo, hi = float(window[0]), float(window[1])
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError("window bounds must be finite")
    if hi <= lo:
        return TruncatedSpectrum(np.empty(0), m.n_max, tol, (lo, hi))

    off_sq = m.offdiag**2
    c_lo = int(_sturm_counts(m.diag, off_sq, np.array([lo]))[0])
    c_hi = int(_sturm_counts(m.diag, off_sq, np.array([hi]))[0])
    targets = np.arange(c_lo, c_hi)
    if targets.size == 0:
        return TruncatedSpectrum(np.empty(0), m.n_max, tol, (lo, hi))

    los = np.full(targets.size, lo)
    his = np.full(targets.size, hi)
    while True:
        mids = 0.5 * (los + his)
        done = (his - los) <= 2.0 * tol
        stuck = (mids <= los) | (mids >= his)
        if np.all(done | stuck):
            break
        counts = _sturm_counts(m.diag, off_sq, mids)
        below = counts >= targets + 1
        his = np.where(below, mids, his)
        los = np.where(below, los, mids)
    eigs = 0.5 * (los + his)
    # brackets for consecutive indices can overlap at tol scale; the true
    # spectrum is simple, so restore (weak) monotonicity
    eigs = np.maximum.accumulate(eigs)
    return TruncatedSpectrum(eigs, m.n_max, tol, (lo, hi))


def carleman_partial_sums(a: Callable, n_terms: int) -> np.ndarray:
    """Partial sums S_k = sum_{n=0}^{k} 1/a(n) for k < n_terms.

    Divergence of the full series is the Carleman condition: it guarantees
    essential self-adjointness of the Jacobi operator built from (a_n).
    Only the finite trend is computed here; callers inspect its growth.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    idx = np.arange(n_terms, dtype=float)
    vals = _eval_rule(a, idx)
    nonpos = ~(vals > 0.0)
    if nonpos.any():
        i = int(np.argmax(nonpos))
        raise ValueError(f"off-diagonal rule must be strictly positive; a({i}) = {vals[i]!r}")
    return np.cumsum(1.0 / vals)
