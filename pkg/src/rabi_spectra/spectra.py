"""Numerical experiments on truncated sector operators.

Connects the phase predictions to finite-section data: windowed spectrum
scans, gap statistics along a coupling grid (spectral collapse: spacings of
the discrete spectrum shrink as the coupling approaches its critical
value), and eigenvalue-count growth near a predicted essential-spectrum
edge.

No claim of spectral convergence is made inside a critical half-line; only
counting-function growth along a cutoff ladder is reported there.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .modulation import PhaseKind, PhaseReport, PhaseStateError
from .models import JacobiParams, ModelSpec, SectorLabel, jacobi_params, predicted_phase
from .tridiag import (
    SymTridiag,
    TruncatedSpectrum,
    default_bisect_tol,
    eigenvalues_bisect,
    sturm_count,
)


def spectrum_scan(
    params: JacobiParams,
    cutoff: int,
    window: tuple[float, float] | None = None,
    tol: float | None = None,
) -> TruncatedSpectrum:
    """Eigenvalues of the cutoff x cutoff finite section inside ``window``."""
    cutoff = int(cutoff)
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    return eigenvalues_bisect(params.truncation(cutoff), window=window, tol=tol)


def lowest_eigenvalues(
    params: JacobiParams, cutoff: int, k: int, tol: float | None = None
) -> np.ndarray:
    """The k smallest eigenvalues of the finite section.

    Expands a window upward from the Gershgorin lower bound until the Sturm
    count reaches k, then bisects only inside it.
    """
    cutoff = int(cutoff)
    k = int(k)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > cutoff:
        raise ValueError(f"cannot take {k} eigenvalues from a {cutoff}x{cutoff} section")
    m = params.truncation(cutoff)
    glo, ghi = m.gershgorin()
    pad = 1e-9 * max(1.0, abs(glo), abs(ghi))
    lo = glo - pad
    hi = min(glo + 1.0, ghi) + pad
    while sturm_count(m, hi) < k and hi < ghi + pad:
        hi = min(lo + 2.0 * (hi - lo), ghi + pad)
    spec = eigenvalues_bisect(m, window=(lo, hi), tol=tol)
    return spec.eigenvalues[:k]


def _map_maybe_parallel(fn: Callable, items: Sequence, max_workers: int | None):
    if max_workers is not None and max_workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


@dataclass(frozen=True)
class CollapseScan:
    """Gap statistics of the lowest-k eigenvalues along a coupling grid.

    ``nondiscrete`` flags grid points whose predicted phase is not purely
    discrete; truncated gaps there do not measure spacings of a discrete
    spectrum and are reported for context only.
    """

    couplings: np.ndarray
    sector: SectorLabel
    cutoff: int
    k: int
    spectra: tuple[TruncatedSpectrum, ...]
    mean_gaps: np.ndarray
    min_gaps: np.ndarray
    nondiscrete: np.ndarray


def collapse_scan(
    model_factory: Callable[[float], ModelSpec],
    grid: Sequence[float],
    sector: SectorLabel,
    cutoff: int,
    k: int,
    tol: float | None = None,
    max_workers: int | None = None,
) -> CollapseScan:
    """Scan a coupling grid and record consecutive-gap statistics.

    ``model_factory`` maps a coupling value to a full model; the grid must
    be strictly increasing and k at least 2.  The min-gap trend toward the
    critical coupling is the collapse diagnostic; no monotonicity is
    enforced here (finite-cutoff gap statistics are not provably monotone).
    """
    grid_arr = np.asarray(grid, dtype=float)
    if grid_arr.ndim != 1 or grid_arr.size < 1:
        raise ValueError("grid must be a non-empty 1-d sequence")
    if grid_arr.size > 1 and np.any(np.diff(grid_arr) <= 0):
        raise ValueError("grid must be strictly increasing")
    k = int(k)
    if k < 2:
        raise ValueError("k must be at least 2 to form gaps")

    def solve(g: float) -> tuple[TruncatedSpectrum, bool]:
        model = model_factory(float(g))
        params = jacobi_params(model, sector)
        section = params.truncation(cutoff)
        applied_tol = tol if tol is not None else default_bisect_tol(section)
        eigs = lowest_eigenvalues(params, cutoff, k, tol=applied_tol)
        # the top tenth of the Gershgorin range holds truncation artifacts;
        # keep them out of the gap statistics
        glo, ghi = section.gershgorin()
        eigs = eigs[eigs <= glo + 0.9 * (ghi - glo)]
        if eigs.size < 2:
            raise ValueError(
                f"fewer than two of the lowest {k} eigenvalues lie below the "
                f"spurious-edge cut at coupling {g!r}; lower k or raise the cutoff"
            )
        spec = TruncatedSpectrum(eigs, cutoff, applied_tol)
        flag = predicted_phase(model, sector).kind is not PhaseKind.EMPTY_ESSENTIAL
        return spec, flag

    results = _map_maybe_parallel(solve, list(grid_arr), max_workers)
    spectra = tuple(spec for spec, _ in results)
    gaps = [np.diff(spec.eigenvalues) for spec in spectra]
    return CollapseScan(
        couplings=grid_arr,
        sector=sector,
        cutoff=int(cutoff),
        k=k,
        spectra=spectra,
        mean_gaps=np.array([float(np.mean(g)) for g in gaps]),
        min_gaps=np.array([float(np.min(g)) for g in gaps]),
        nondiscrete=np.array([flag for _, flag in results], dtype=bool),
    )


@dataclass(frozen=True)
class EdgeDensityReport:
    """Eigenvalue counts in the width-W windows flanking a predicted edge.

    For each cutoff: the count inside the window on the essential-spectrum
    side of the endpoint, and inside the mirrored window on the
    complementary side.  Accumulation on the essential side with a bounded
    complementary side is the finite-section signature of the half-line.
    """

    endpoint: float
    direction: str
    window_width: float
    cutoffs: tuple[int, ...]
    essential_counts: tuple[int, ...]
    complementary_counts: tuple[int, ...]


def edge_density(
    params: JacobiParams,
    report_from: PhaseReport,
    cutoffs: Sequence[int],
    W: float,
    max_workers: int | None = None,
) -> EdgeDensityReport:
    """Count truncated eigenvalues near the predicted essential-spectrum edge.

    Pure Sturm counting, no bisection.  Requires a critical-phase report;
    window conventions are half-open away from the endpoint, so W = 0 gives
    zero counts on both sides.
    """
    if report_from.kind is not PhaseKind.CRITICAL_HALF_LINE or report_from.essential_spectrum is None:
        raise PhaseStateError("edge density requires a critical half-line phase report")
    W = float(W)
    if W < 0.0:
        raise ValueError("window width W must be non-negative")
    cutoffs = tuple(int(c) for c in cutoffs)
    if len(cutoffs) < 1 or any(c < 2 for c in cutoffs):
        raise ValueError("cutoffs must contain integers >= 2")
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be strictly increasing")

    halfline = report_from.essential_spectrum
    ep = halfline.endpoint

    def count_pair(cutoff: int) -> tuple[int, int]:
        m = params.truncation(cutoff)
        below = sturm_count(m, ep - W)
        at = sturm_count(m, ep)
        above = sturm_count(m, ep + W)
        lower, upper = at - below, above - at  # [ep-W, ep) and [ep, ep+W)
        return (upper, lower) if halfline.direction == "up" else (lower, upper)

    pairs = _map_maybe_parallel(count_pair, cutoffs, max_workers)
    return EdgeDensityReport(
        endpoint=ep,
        direction=halfline.direction,
        window_width=W,
        cutoffs=cutoffs,
        essential_counts=tuple(p[0] for p in pairs),
        complementary_counts=tuple(p[1] for p in pairs),
    )
