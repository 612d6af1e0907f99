"""One driven-dissipative two-level system, solved exactly.

Everything here is closed form: steady-state population and coherence, the
dressed states, the three-dimensional regression system, and the Mollow
spectrum split into Lorentzian/dispersive components in both the subcritical
(below omega = gamma/8) and supercritical regimes.  These results double as
oracles for the pair machinery, which must reduce to them under one-way
coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, UnsupportedConfigurationError

#: Width of the window around the critical drive treated as degenerate, in
#: units of gamma.  Inside it the B/C weights are individually singular
#: (removable only in their sum), so the decomposition clamps the merged-pole
#: rate and flags the result; the summed closed form stays regular.
CRITICAL_WINDOW = 1e-8


@dataclass(frozen=True)
class SingleParams:
    """Detuning, decay rate and drive amplitude of a single emitter."""

    delta: float = 0.0
    gamma: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        if not (self.gamma > 0.0):
            raise ParameterError(f"gamma must be > 0, got {self.gamma}")
        if self.omega < 0.0:
            raise ParameterError(f"omega must be >= 0, got {self.omega}")


@dataclass(frozen=True)
class DressedState:
    """Dressed energies, splitting and Bogoliubov coefficients."""

    energies: tuple[float, float]
    splitting: float
    bogoliubov: tuple[float, float]


@dataclass(frozen=True)
class MollowPeak:
    """One spectral component: width, shift and Lorentzian/dispersive weights."""

    name: str
    gamma_zeta: float
    omega_zeta: float
    L: float
    K: float


@dataclass(frozen=True)
class MollowCoefficients:
    """The three-peak decomposition of the single-emitter spectrum.

    delta_weight is the coherent (Rayleigh) fraction, kept separate from the
    grid-evaluated components.  near_critical marks results where the merged
    pole at the critical drive was regularized, see CRITICAL_WINDOW.
    """

    regime: str
    peaks: tuple[MollowPeak, MollowPeak, MollowPeak]
    delta_weight: float
    near_critical: bool = False

    @property
    def weight_sum(self) -> float:
        return sum(pk.L for pk in self.peaks) + self.delta_weight


def steady_population_coherence(p: SingleParams) -> tuple[float, complex]:
    """Steady-state excited population n and coherence <sigma>."""
    den = 2.0 * p.omega**2 + p.delta**2 + (0.5 * p.gamma) ** 2
    n = p.omega**2 / den
    c = -p.omega * (p.delta + 0.5j * p.gamma) / den
    return n, c


def single_population(omega: float, gamma0: float) -> float:
    """Resonant steady population n0 of a solitary emitter with decay gamma0."""
    return omega**2 / (2.0 * omega**2 + (0.5 * gamma0) ** 2)


def critical_drive(gamma: float) -> float:
    """Drive amplitude where the regression eigenvalues collide: gamma/8."""
    if not (gamma > 0.0):
        raise ParameterError(f"gamma must be > 0, got {gamma}")
    return gamma / 8.0


def dressed_state(p: SingleParams) -> DressedState:
    """Dressed energies delta/2 +- R and the Bogoliubov coefficients."""
    r = math.sqrt((0.5 * p.delta) ** 2 + p.omega**2)
    ratio = 0.0 if r == 0.0 else 0.5 * p.delta / r
    sin_b = math.sqrt(0.5 * (1.0 - ratio))
    cos_b = math.sqrt(0.5 * (1.0 + ratio))
    return DressedState(
        energies=(0.5 * p.delta + r, 0.5 * p.delta - r),
        splitting=r,
        bogoliubov=(sin_b, cos_b),
    )


def regression_system(p: SingleParams) -> tuple[np.ndarray, np.ndarray]:
    """Dynamical matrix Q and drive vector P of the 3-moment system.

    The moments are ordered (<sigma>, <sigma^dag>, <sigma^dag sigma>) and
    evolve as du/dt = P - Q u.
    """
    g2 = 0.5 * p.gamma
    q = np.array(
        [
            [g2 + 1j * p.delta, 0.0, -2j * p.omega],
            [0.0, g2 - 1j * p.delta, 2j * p.omega],
            [-1j * p.omega, 1j * p.omega, p.gamma],
        ],
        dtype=complex,
    )
    pvec = 1j * p.omega * np.array([-1.0, 1.0, 0.0], dtype=complex)
    return q, pvec


def mollow_splitting(gamma: float, omega: float) -> float:
    """Supercritical sideband frequency sqrt((2*omega)**2 - (gamma/4)**2)."""
    return math.sqrt((2.0 * omega) ** 2 - (0.25 * gamma) ** 2)


def mollow_coefficients(p: SingleParams) -> MollowCoefficients:
    """Peak records (width, shift, weights) of the resonant emission spectrum.

    Supercritical drive (omega > gamma/8) gives the central peak plus two
    sidebands at +- the Mollow splitting with complex weights; subcritical
    drive gives three unshifted peaks with purely Lorentzian weights.  The
    coherent delta fraction gamma**2/(gamma**2 + 8*omega**2) is returned
    separately in both cases.

    Raises
    ------
    UnsupportedConfigurationError
        For delta != 0, where no closed-form decomposition is available.
    """
    if p.delta != 0.0:
        raise UnsupportedConfigurationError(
            "Mollow coefficients are only available at resonance (delta = 0); "
            "use the numerical pair machinery for detuned spectra"
        )
    g, w = p.gamma, p.omega
    delta_weight = g**2 / (g**2 + 8.0 * w**2)
    share = 8.0 * w**2 / (g**2 + 8.0 * w**2)
    omega_c = critical_drive(g)

    if w > omega_c + CRITICAL_WINDOW * g:
        wm = mollow_splitting(g, w)
        common = share * (16.0 * w**2 - 2.0 * g**2) / ((4.0 * wm) ** 2 + g**2)
        disp = (
            share
            * (g / (4.0 * wm))
            * (16.0 * w**2 - g**2 + (4.0 * wm) ** 2)
            / ((4.0 * wm) ** 2 + g**2)
        )
        peaks = (
            MollowPeak("A", g, 0.0, 0.5, 0.0),
            MollowPeak("B", 1.5 * g, +wm, common, +disp),
            MollowPeak("C", 1.5 * g, -wm, common, -disp),
        )
        return MollowCoefficients("supercritical", peaks, delta_weight)

    gm_sq = (0.25 * g) ** 2 - (2.0 * w) ** 2
    gm = math.sqrt(gm_sq) if gm_sq > 0.0 else 0.0
    # Merged-pole regularization: below this floor the B/C denominators
    # 16*gm**2 -+ 4*g*gm lose all significance (they cancel only in the sum).
    gm_floor = 0.25 * g * math.sqrt(1.0 - (1.0 - CRITICAL_WINDOW) ** 2)
    near = gm < gm_floor
    if near:
        gm = gm_floor
    num = g**2 - 16.0 * w**2
    # The direct B denominator 16*gm**2 - 4*g*gm cancels catastrophically as
    # omega -> 0 (gm -> g/4); with g**2 - 16 gm**2 = 64 omega**2 it factors
    # into the cancellation-free form below.
    den_b = -256.0 * gm * w**2 / (g + 4.0 * gm)
    den_c = 4.0 * gm * (4.0 * gm + g)
    lb = share * (num + 4.0 * g * gm) / den_b
    lc = share * (num - 4.0 * g * gm) / den_c
    if near:
        # Pin the merged pair to the analytic value of its summed weight,
        # which stays regular through the critical point.
        target = -share * (num + g * g) / (32.0 * w**2)
        scale = target / (lb + lc)
        lb *= scale
        lc *= scale
    peaks = (
        MollowPeak("A", g, 0.0, 0.5, 0.0),
        MollowPeak("B", 1.5 * g - 2.0 * gm, 0.0, lb, 0.0),
        MollowPeak("C", 1.5 * g + 2.0 * gm, 0.0, lc, 0.0),
    )
    return MollowCoefficients("subcritical", peaks, delta_weight, near_critical=near)


@dataclass(frozen=True)
class SingleSpectrum:
    """Incoherent spectrum on a grid plus the separate coherent delta weight."""

    values: np.ndarray
    delta_weight: float
    degenerate: bool = False


def single_spectrum(p: SingleParams, grid: np.ndarray) -> SingleSpectrum:
    """Exact resonant emission spectrum evaluated pointwise on a grid.

    The grid holds frequencies relative to the emitter transition, in units
    of gamma's frequency scale, strictly increasing.  The returned values are
    the incoherent density only; the Rayleigh delta weight is reported
    separately and never binned onto the grid.  An undriven emitter has no
    incoherent emission: all-zero values, delta weight 1, degenerate flag.
    """
    if p.delta != 0.0:
        raise UnsupportedConfigurationError(
            "the closed-form spectrum is only available at resonance (delta = 0); "
            "use the numerical pair machinery for detuned spectra"
        )
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0.0):
        raise ParameterError("grid must be a strictly increasing 1-d array")
    if p.omega == 0.0:
        return SingleSpectrum(np.zeros_like(grid), 1.0, degenerate=True)
    g, w = p.gamma, p.omega
    x2 = grid * grid
    central = (0.5 / math.pi) * (0.5 * g) / ((0.5 * g) ** 2 + x2)
    side = (
        (g / math.pi)
        * (x2 + g**2 - 16.0 * w**2)
        / (4.0 * x2 * x2 + x2 * (5.0 * g**2 - 32.0 * w**2) + (g**2 + 8.0 * w**2) ** 2)
    )
    delta_weight = g**2 / (g**2 + 8.0 * w**2)
    return SingleSpectrum(central - side, delta_weight)


def coefficients_to_spectrum(coeffs: MollowCoefficients, grid: np.ndarray) -> np.ndarray:
    """Rebuild the incoherent spectrum from its peak records.

    Sum of the standard Lorentzian-plus-dispersive lineshape over the three
    components; the delta weight is excluded.
    """
    grid = np.asarray(grid, dtype=float)
    out = np.zeros_like(grid)
    for pk in coeffs.peaks:
        half = 0.5 * pk.gamma_zeta
        shift = grid - pk.omega_zeta
        out += (half * pk.L - shift * pk.K) / (half * half + shift * shift) / math.pi
    return out
