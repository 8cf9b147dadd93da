"""Rabi-type Hamiltonians and their reductions to half-line Jacobi operators.

Four models of a two-level system coupled to a single bosonic mode are
supported, written on C^2 (x) l^2(N_0) with number operator N, annihilator a
and creator a+ (so a+ e_n = sqrt(n+1) e_(n+1), N e_n = n e_n):

  intensity-dependent :  N + (D/2) sz + g sx ((N+2k)^(1/2) a + a+ (N+2k)^(1/2))
  two-photon          :  N + (D/2) sz + g sx (a^2 + a+^2)
  anisotropic         :  N + (D/2) sz + (g- s- + g+ s+) a+^2 + (g+ s- + g- s+) a^2
  two-photon + Stark  :  N + sz (k N + D/2) + g sx (a^2 + a+^2)

Each Hamiltonian leaves a family of chains in the product basis invariant:
flipping the spin while stepping the photon number by one (intensity-
dependent) or two (the rest) closes on subspaces labelled by a sign and,
for the two-photon models, the photon-number parity mu.  Restricted to one
such chain the Hamiltonian is a Jacobi matrix whose parameters carry an
exact period-2 modulation, which is what the phase classification in
:mod:`.modulation` consumes.

Coupling regimes are decided symbolically (criticality is a measure-zero
condition, useless to detect in floating point); the critical half-line is
computed from the indicator polynomial and cross-checked against the known
closed-form endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .modulation import (
    HalfLine,
    PeriodicModulation,
    PhaseKind,
    PhaseReport,
    UnsupportedRegimeError,
    edge_indicator,
    essential_halfline,
    limit_sequences,
    monodromy,
)
from .tridiag import SymTridiag

# criticality predicate tolerance, relative: users probing the transition
# type 0.5 and expect the critical branch
_CRIT_RTOL = 1e-12


class DegenerateParameterError(ValueError):
    """Parameters produce a degenerate Jacobi matrix (zero off-diagonal)."""


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (np.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class IntensityDependent:
    """Intensity-dependent Rabi model.

    H = N + (delta/2) sz + g sx ((N + 2 kappa)^(1/2) a + a+ (N + 2 kappa)^(1/2)),
    with coupling g > 0, level splitting delta and intensity offset kappa >= 0.
    kappa = 0 is constructible but degenerate for the Jacobi reduction: the
    first off-diagonal entry vanishes and decouples the vacuum.
    """

    g: float
    delta: float
    kappa: float

    def __post_init__(self):
        _positive("g", self.g)
        _finite("delta", self.delta)
        if not (np.isfinite(self.kappa) and self.kappa >= 0.0):
            raise ValueError(f"kappa must be non-negative, got {self.kappa!r}")


@dataclass(frozen=True)
class TwoPhoton:
    """Two-photon Rabi model: H = N + (delta/2) sz + g sx (a^2 + a+^2)."""

    g: float
    delta: float

    def __post_init__(self):
        _positive("g", self.g)
        _finite("delta", self.delta)


@dataclass(frozen=True)
class AnisotropicTwoPhoton:
    """Anisotropic two-photon Rabi model with distinct co/counter-rotating couplings.

    H = N + (delta/2) sz + (g_minus s- + g_plus s+) a+^2 + (g_plus s- + g_minus s+) a^2.
    Both couplings are positive and distinct; the mean (g_plus+g_minus)/2 and
    half-difference (g_plus-g_minus)/2 control the spectral phase.
    """

    g_plus: float
    g_minus: float
    delta: float

    def __post_init__(self):
        _positive("g_plus", self.g_plus)
        _positive("g_minus", self.g_minus)
        _finite("delta", self.delta)
        if self.g_plus == self.g_minus:
            raise ValueError("g_plus and g_minus must differ (the isotropic point "
                             "is the plain two-photon model)")

    @property
    def g_mean(self) -> float:
        """Mean coupling (g_plus + g_minus)/2; always exceeds |g_diff|."""
        return (self.g_plus + self.g_minus) / 2.0

    @property
    def g_diff(self) -> float:
        """Half-difference (g_plus - g_minus)/2."""
        return (self.g_plus - self.g_minus) / 2.0


@dataclass(frozen=True)
class TwoPhotonRabiStark:
    """Two-photon Rabi model with a Stark term:
    H = N + sz (kappa N + delta/2) + g sx (a^2 + a+^2)."""

    g: float
    delta: float
    kappa: float

    def __post_init__(self):
        _positive("g", self.g)
        _finite("delta", self.delta)
        _finite("kappa", self.kappa)


ModelSpec = Union[IntensityDependent, TwoPhoton, AnisotropicTwoPhoton, TwoPhotonRabiStark]

_TWO_PHOTON_FAMILY = (TwoPhoton, AnisotropicTwoPhoton, TwoPhotonRabiStark)


def model_name(model: ModelSpec) -> str:
    return {
        IntensityDependent: "intensity",
        TwoPhoton: "two-photon",
        AnisotropicTwoPhoton: "anisotropic",
        TwoPhotonRabiStark: "rabi-stark",
    }[type(model)]


@dataclass(frozen=True)
class SectorLabel:
    """Invariant-chain label: a sign, plus the photon parity mu for the
    two-photon family (absent for the intensity-dependent model)."""

    sign: int
    mu: int | None = None

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.mu not in (None, 0, 1):
            raise ValueError("mu must be 0, 1 or None")

    def __str__(self) -> str:
        sign = "+" if self.sign > 0 else "-"
        return sign if self.mu is None else f"{self.mu}{sign}"

    @classmethod
    def parse(cls, text: str) -> "SectorLabel":
        text = text.strip()
        if text in ("+", "-"):
            return cls(1 if text == "+" else -1)
        if len(text) == 2 and text[0] in "01" and text[1] in "+-":
            return cls(1 if text[1] == "+" else -1, int(text[0]))
        raise ValueError(f"cannot parse sector label {text!r} (expected +, -, 0+, 0-, 1+ or 1-)")


def sectors(model: ModelSpec) -> tuple[SectorLabel, ...]:
    """Invariant sectors in fixed enumeration order.

    Two sectors (-, +) for the intensity-dependent model; four
    (0-, 0+, 1-, 1+) for the two-photon family.
    """
    if isinstance(model, IntensityDependent):
        return (SectorLabel(-1), SectorLabel(1))
    return (SectorLabel(-1, 0), SectorLabel(1, 0), SectorLabel(-1, 1), SectorLabel(1, 1))


def _check_sector(model: ModelSpec, sector: SectorLabel) -> None:
    if isinstance(model, IntensityDependent):
        if sector.mu is not None:
            raise ValueError("intensity-dependent sectors carry no parity label mu")
    elif sector.mu is None:
        raise ValueError(f"{model_name(model)} sectors require a parity label mu in {{0, 1}}")


@dataclass(frozen=True)
class JacobiParams:
    """Evaluable Jacobi parameters of one sector, with their exact modulation.

    ``a(n)`` and ``b(n)`` accept integers or integer arrays and evaluate the
    modulated closed forms directly (never recurrences), so truncations here
    and the dense Hamiltonian agree to rounding wherever the same expression
    appears.
    """

    modulation: PeriodicModulation
    label: SectorLabel
    model: ModelSpec

    def a(self, n):
        return self.modulation.a(n)

    def b(self, n):
        return self.modulation.b(n)

    def truncation(self, n_max: int) -> SymTridiag:
        """Leading n_max x n_max finite section."""
        n_max = int(n_max)
        if n_max < 1:
            raise ValueError("n_max must be at least 1")
        idx = np.arange(n_max)
        return SymTridiag(self.b(idx), self.a(idx[:-1]))


def jacobi_params(model: ModelSpec, sector: SectorLabel) -> JacobiParams:
    """Jacobi parameters of the Hamiltonian restricted to one sector chain.

    The returned modulation is exact, not asymptotic: a(n) and b(n) equal
    alpha[n mod 2] sqrt((n+t)(n+s)) and beta[n mod 2] n + gamma[n mod 2]
    entry for entry.
    """
    _check_sector(model, sector)
    sgn = float(sector.sign)
    if isinstance(model, IntensityDependent):
        if model.kappa == 0.0:
            raise DegenerateParameterError(
                "kappa = 0 makes the first off-diagonal entry vanish; the chain "
                "decouples and is not a Jacobi matrix with positive off-diagonal"
            )
        mod = PeriodicModulation(
            alpha=(model.g, model.g),
            beta=(1.0, 1.0),
            gamma=(sgn * model.delta / 2.0, -sgn * model.delta / 2.0),
            t=1.0,
            s=2.0 * model.kappa,
        )
        return JacobiParams(mod, sector, model)

    mu = float(sector.mu)
    t = 0.5 + mu / 2.0
    s = 1.0 + mu / 2.0
    if isinstance(model, TwoPhoton):
        mod = PeriodicModulation(
            alpha=(2.0 * model.g, 2.0 * model.g),
            beta=(2.0, 2.0),
            gamma=(mu + sgn * model.delta / 2.0, mu - sgn * model.delta / 2.0),
            t=t,
            s=s,
        )
    elif isinstance(model, AnisotropicTwoPhoton):
        mod = PeriodicModulation(
            alpha=(2.0 * (model.g_mean - sgn * model.g_diff),
                   2.0 * (model.g_mean + sgn * model.g_diff)),
            beta=(2.0, 2.0),
            gamma=(mu + sgn * model.delta / 2.0, mu - sgn * model.delta / 2.0),
            t=t,
            s=s,
        )
    elif isinstance(model, TwoPhotonRabiStark):
        mod = PeriodicModulation(
            alpha=(2.0 * model.g, 2.0 * model.g),
            beta=(2.0 * (1.0 + sgn * model.kappa), 2.0 * (1.0 - sgn * model.kappa)),
            gamma=((1.0 + sgn * model.kappa) * mu + sgn * model.delta / 2.0,
                   (1.0 - sgn * model.kappa) * mu - sgn * model.delta / 2.0),
            t=t,
            s=s,
        )
    else:  # pragma: no cover - exhaustive over ModelSpec
        raise TypeError(f"unknown model type {type(model).__name__}")
    return JacobiParams(mod, sector, model)


def sector_basis_index(model: ModelSpec, sector: SectorLabel, n: int) -> tuple[int, int]:
    """Product-basis coordinates (spin nu, photon index) of the sector's n-th vector.

    The intensity-dependent chains alternate spin along the photon ladder,
    (sign (-1)^n, n); the two-photon chains step the photon number by two,
    (sign (-1)^n, 2n + mu).
    """
    _check_sector(model, sector)
    if n < 0:
        raise ValueError("n must be non-negative")
    nu = sector.sign * (-1 if n % 2 else 1)
    if isinstance(model, IntensityDependent):
        return nu, int(n)
    return nu, 2 * int(n) + sector.mu


def _product_index(nu, m, cutoff):
    # spin block nu=-1 first, then nu=+1; photon index within the block
    return (0 if nu == -1 else 1) * cutoff + m


def hamiltonian_matrix(model: ModelSpec, cutoff: int) -> np.ndarray:
    """Finite section of the Hamiltonian on span{e^nu_m : m < cutoff}.

    Product-basis layout: spin nu = -1 occupies rows 0..cutoff-1, spin
    nu = +1 rows cutoff..2*cutoff-1, photon index m within each block.
    Creation terms that would leave the cutoff are dropped, which makes the
    matrix symmetric by construction (finite-section compression).
    """
    cutoff = int(cutoff)
    if cutoff < 4:
        raise ValueError("cutoff must be at least 4")
    H = np.zeros((2 * cutoff, 2 * cutoff))
    m = np.arange(cutoff, dtype=float)

    for nu in (-1, 1):
        rows = _product_index(nu, np.arange(cutoff), cutoff)
        if isinstance(model, TwoPhotonRabiStark):
            H[rows, rows] = m + nu * (model.kappa * m + model.delta / 2.0)
        else:
            H[rows, rows] = m + nu * model.delta / 2.0

    if isinstance(model, IntensityDependent):
        step = 1
        coup = model.g * np.sqrt((m[:-step] + 1.0) * (m[:-step] + 2.0 * model.kappa))
        per_spin = {-1: coup, 1: coup}
    elif isinstance(model, AnisotropicTwoPhoton):
        step = 2
        growth = np.sqrt((m[:-step] + 1.0) * (m[:-step] + 2.0))
        per_spin = {
            1: (model.g_mean - model.g_diff) * growth,
            -1: (model.g_mean + model.g_diff) * growth,
        }
    else:
        step = 2
        coup = model.g * np.sqrt((m[:-step] + 1.0) * (m[:-step] + 2.0))
        per_spin = {-1: coup, 1: coup}

    for nu in (-1, 1):
        src = _product_index(nu, np.arange(cutoff - step), cutoff)
        dst = _product_index(-nu, np.arange(step, cutoff), cutoff)
        H[dst, src] = per_spin[nu]
        H[src, dst] = per_spin[nu]
    return H


def _sector_chain_length(model: ModelSpec, sector: SectorLabel, cutoff: int) -> int:
    if isinstance(model, IntensityDependent):
        return cutoff
    return (cutoff - sector.mu + 1) // 2


@dataclass(frozen=True)
class DecompositionCheck:
    """Entrywise comparison of the reordered Hamiltonian with its sector blocks.

    ``max_block`` covers all in-block entries except the final chain row and
    column of each sector (the truncation band, whose out-of-cutoff coupling
    was dropped on both sides); that band is reported separately as
    ``max_boundary``.  ``max_cross`` covers every entry outside the diagonal
    blocks, which the exact sector invariance forces to zero.
    """

    max_block: float
    max_boundary: float
    max_cross: float

    @property
    def max_deviation(self) -> float:
        """Deviation over interior block entries and all cross-sector entries."""
        return max(self.max_block, self.max_cross)


def decomposition_check(model: ModelSpec, cutoff: int) -> DecompositionCheck:
    """Reorder the dense finite section by sector chains and compare blocks.

    The sector map is a bijection of the product-basis index set, so the
    reordered matrix must be block diagonal with blocks equal to the
    truncated sector Jacobi matrices.
    """
    cutoff = int(cutoff)
    if cutoff < 8:
        raise ValueError("cutoff must be at least 8")
    H = hamiltonian_matrix(model, cutoff)

    perm: list[int] = []
    lengths: list[int] = []
    blocks: list[np.ndarray] = []
    for sector in sectors(model):
        L = _sector_chain_length(model, sector, cutoff)
        lengths.append(L)
        for n in range(L):
            nu, m = sector_basis_index(model, sector, n)
            perm.append(_product_index(nu, m, cutoff))
        blocks.append(jacobi_params(model, sector).truncation(L).dense())
    perm_arr = np.asarray(perm)
    assert np.array_equal(np.sort(perm_arr), np.arange(2 * cutoff)), \
        "sector chains must tile the product basis exactly"

    reordered = H[np.ix_(perm_arr, perm_arr)]
    expected = np.zeros_like(reordered)
    offset = 0
    block_mask = np.zeros(reordered.shape, dtype=bool)
    boundary_mask = np.zeros(reordered.shape, dtype=bool)
    for L, blk in zip(lengths, blocks):
        sl = slice(offset, offset + L)
        expected[sl, sl] = blk
        block_mask[sl, sl] = True
        boundary_mask[offset + L - 1, sl] = True
        boundary_mask[sl, offset + L - 1] = True
        offset += L

    dev = np.abs(reordered - expected)
    interior = block_mask & ~boundary_mask
    cross = ~block_mask
    return DecompositionCheck(
        max_block=float(dev[interior].max()) if interior.any() else 0.0,
        max_boundary=float(dev[block_mask & boundary_mask].max()),
        max_cross=float(dev[cross].max()) if cross.any() else 0.0,
    )


def verify_decomposition(model: ModelSpec, cutoff: int) -> float:
    """Maximum absolute deviation of the sector reordering from block-diagonal.

    Includes every cross-sector entry (which must be identically zero);
    thresholding is the caller's job.
    """
    return decomposition_check(model, cutoff).max_deviation


def _critically_equal(value: float, target: float) -> bool:
    return abs(value - target) <= _CRIT_RTOL * abs(target)


def critical_trace(model: ModelSpec) -> float | None:
    """Exact monodromy trace (+2.0 or -2.0) if the parameters are critical, else None.

    Criticality predicates: coupling mean at 1/2 (intensity-dependent,
    two-photon, anisotropic), coupling half-difference at 1/2 (anisotropic),
    kappa^2 + 4 g^2 = 1 or |kappa| = 1 (Stark).  All are evaluated with
    relative tolerance 1e-12 on the user-supplied parameters.
    """
    if isinstance(model, (IntensityDependent, TwoPhoton)):
        return 2.0 if _critically_equal(model.g, 0.5) else None
    if isinstance(model, AnisotropicTwoPhoton):
        if _critically_equal(model.g_mean, 0.5):
            return 2.0
        if _critically_equal(abs(model.g_diff), 0.5):
            return -2.0
        return None
    if isinstance(model, TwoPhotonRabiStark):
        if _critically_equal(abs(model.kappa), 1.0):
            return -2.0
        if _critically_equal(model.kappa**2 + 4.0 * model.g**2, 1.0):
            return 2.0
        return None
    raise TypeError(f"unknown model type {type(model).__name__}")


def _regime(model: ModelSpec) -> tuple[str, PhaseKind, HalfLine | None]:
    """Symbolic regime clause: (clause label, phase kind, closed-form half-line)."""
    if isinstance(model, (IntensityDependent, TwoPhoton)):
        if _critically_equal(model.g, 0.5):
            endpoint = -model.kappa if isinstance(model, IntensityDependent) else -0.5
            return "g=1/2", PhaseKind.CRITICAL_HALF_LINE, HalfLine(endpoint, "up")
        if model.g < 0.5:
            return "0<g<1/2", PhaseKind.EMPTY_ESSENTIAL, None
        return "g>1/2", PhaseKind.FULL_LINE_AC, None

    if isinstance(model, AnisotropicTwoPhoton):
        g, gd = model.g_mean, abs(model.g_diff)
        if _critically_equal(g, 0.5):
            return "g=1/2", PhaseKind.CRITICAL_HALF_LINE, HalfLine(-0.5, "up")
        if _critically_equal(gd, 0.5):
            return "|g'|=1/2", PhaseKind.CRITICAL_HALF_LINE, HalfLine(-0.5, "down")
        if g < 0.5:
            return "g<1/2", PhaseKind.EMPTY_ESSENTIAL, None
        if gd > 0.5:
            return "|g'|>1/2", PhaseKind.EMPTY_ESSENTIAL, None
        return "|g'|<1/2<g", PhaseKind.FULL_LINE_AC, None

    if isinstance(model, TwoPhotonRabiStark):
        kap, g = model.kappa, model.g
        if _critically_equal(abs(kap), 1.0):
            return "|kappa|=1", PhaseKind.CRITICAL_HALF_LINE, HalfLine(-kap * model.delta / 2.0, "down")
        if abs(kap) > 1.0:
            return "|kappa|>1", PhaseKind.EMPTY_ESSENTIAL, None
        circle = kap**2 + 4.0 * g**2
        if _critically_equal(circle, 1.0):
            endpoint = (kap**2 - 1.0 - kap * model.delta) / 2.0
            return "kappa^2+4g^2=1", PhaseKind.CRITICAL_HALF_LINE, HalfLine(endpoint, "up")
        if circle > 1.0:
            return "|kappa|<1, kappa^2+4g^2>1", PhaseKind.FULL_LINE_AC, None
        return "kappa^2+4g^2<1", PhaseKind.EMPTY_ESSENTIAL, None

    raise UnsupportedRegimeError(f"no regime clause covers {model!r}")


def predicted_phase(model: ModelSpec, sector: SectorLabel) -> PhaseReport:
    """Spectral phase of one sector from the symbolic regime conditions.

    In critical regimes the essential half-line is computed from the edge
    indicator polynomial and cross-checked against the closed-form endpoint;
    a disagreement beyond 1e-9 raises, since both derive from the same
    modulation data.
    """
    params = jacobi_params(model, sector)
    mono = monodromy(params.modulation, critical_trace=critical_trace(model))
    clause, kind, closed = _regime(model)
    if kind is not PhaseKind.CRITICAL_HALF_LINE:
        return PhaseReport(kind, mono.trace, notes=clause)

    s, r = limit_sequences(params.modulation)
    indicator = edge_indicator(params.modulation, mono, s, r)
    halfline = essential_halfline(indicator)
    if halfline.direction != closed.direction or abs(halfline.endpoint - closed.endpoint) > 1e-9:
        raise RuntimeError(
            f"indicator half-line {halfline} disagrees with the closed form {closed} "
            f"for {model_name(model)} sector {sector}"
        )
    return PhaseReport(kind, mono.trace, indicator, halfline, clause)


def carleman_growth_constant(params: JacobiParams, n_probe: int = 10_000) -> float:
    """A constant c > 0 with a(n) >= c (n+1) for every n.

    The probed minimum of a(n)/(n+1) covers the head of the sequence; the
    period minimum of alpha covers the tail, where the ratio approaches the
    alpha values monotonically past the single interior extremum of the
    growth factor.
    """
    idx = np.arange(int(n_probe))
    ratios = params.a(idx) / (idx + 1.0)
    return float(min(np.min(ratios), np.min(params.modulation.alpha)))


def carleman_lower_bound(params: JacobiParams, n_terms: int) -> np.ndarray:
    """Logarithmic lower bound for the Carleman partial sums S_k, k < n_terms.

    From a(n) <= max(alpha) (n + (t+s)/2) (arithmetic-geometric mean) and an
    integral comparison: S_k >= (1/max(alpha)) log((k + 1 + h)/h) with
    h = (t+s)/2.
    """
    mod = params.modulation
    h = 0.5 * (mod.t + mod.s)
    k = np.arange(int(n_terms), dtype=float)
    return np.log((k + 1.0 + h) / h) / float(np.max(mod.alpha))
