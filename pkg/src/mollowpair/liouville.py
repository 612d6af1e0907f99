"""Brute-force density-matrix oracle for the pair.

Everything here works in the full 4-dimensional Hilbert space through the
vectorized 16x16 generator: steady states from its kernel, time evolution by
matrix exponentials, two-time correlators by regression with an explicit seed
matrix, and an integration-based emission spectrum.  It shares no code with
the 15-dimensional moment machinery, which it exists to cross-check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateSteadyStateError,
    NumericalError,
    ParameterError,
    ResolutionError,
    TruncationWarning,
    UnsupportedConfigurationError,
)
from .hamiltonian import build_pair_hamiltonian
from .operators import EYE4, N1, N2, SIGMA1, SIGMA2
from .params import SystemParams

#: Absolute tolerance (units of gamma0) for calling a generator eigenvalue zero.
KERNEL_TOL = 1e-9
#: Most negative admissible density-matrix eigenvalue.
POSITIVITY_TOL = -1e-10
#: Eigenvector-matrix condition number beyond which the generator is treated
#: as defective and propagation falls back to stepped exponentials.
DIAGONALIZABLE_COND = 1e8


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stack a 4x4 matrix into a 16-vector."""
    return np.asarray(rho, dtype=complex).reshape(16, order="F")


def devectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of vectorize."""
    return np.asarray(vec, dtype=complex).reshape((4, 4), order="F")


def _left_right(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> a @ rho @ b under column stacking."""
    return np.kron(b.T, a)


def _dissipator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> 2 a rho b^dag - b^dag a rho - rho b^dag a."""
    bda = b.conj().T @ a
    return 2.0 * _left_right(a, b.conj().T) - _left_right(bda, EYE4) - _left_right(EYE4, bda)


@dataclass
class Liouvillian:
    """Vectorized generator of the master equation, with its jump content."""

    matrix: np.ndarray
    params: SystemParams
    jumps: tuple[tuple[str, complex], ...]
    _eig: tuple | None = field(default=None, repr=False, compare=False)

    def eigensystem(self):
        """Cached right eigendecomposition (values, vectors, inverse or None)."""
        if self._eig is None:
            vals, vecs = np.linalg.eig(self.matrix)
            if np.linalg.cond(vecs) < DIAGONALIZABLE_COND:
                inv = np.linalg.inv(vecs)
            else:
                inv = None
            self._eig = (vals, vecs, inv)
        return self._eig

    def decay_rates(self) -> np.ndarray:
        """Sorted positive decay rates -Re(lambda) of the non-stationary modes."""
        vals = self.eigensystem()[0]
        rates = -vals.real
        rates = rates[rates > KERNEL_TOL * self.params.gamma0]
        return np.sort(rates)

    def propagate(self, vec: np.ndarray, tau: float) -> np.ndarray:
        """Apply exp(L tau) to a vectorized operator."""
        vals, vecs, inv = self.eigensystem()
        if inv is not None:
            return vecs @ (np.exp(vals * tau) * (inv @ vec))
        return scipy.linalg.expm(self.matrix * tau) @ vec

    def propagate_grid(self, vec: np.ndarray, taus: np.ndarray) -> np.ndarray:
        """exp(L tau) vec for every tau in a grid, shape (len(taus), 16)."""
        vals, vecs, inv = self.eigensystem()
        if inv is not None:
            coeff = inv @ vec
            return (np.exp(np.outer(taus, vals)) * coeff) @ vecs.T
        # Defective generator: step with exponentials between grid points.
        out = np.empty((len(taus), 16), dtype=complex)
        cur = vec
        prev = 0.0
        for i, t in enumerate(taus):
            if t != prev:
                cur = scipy.linalg.expm(self.matrix * (t - prev)) @ cur
                prev = t
            out[i] = cur
        return out


def build_liouvillian(p: SystemParams) -> Liouvillian:
    """Assemble the 16x16 generator from the Hamiltonian and the four
    dissipator lines: one local decay channel per emitter at gamma0 and the
    two phase-carrying cross channels at gamma/2 * e^{+-i phi}."""
    h = build_pair_hamiltonian(p).matrix
    eiphi = np.exp(1j * p.phi)
    mat = 1j * (_left_right(EYE4, h) - _left_right(h, EYE4))
    mat += 0.5 * p.gamma0 * _dissipator(SIGMA1, SIGMA1)
    mat += 0.5 * p.gamma0 * _dissipator(SIGMA2, SIGMA2)
    mat += 0.5 * p.gamma * eiphi * _dissipator(SIGMA2, SIGMA1)
    mat += 0.5 * p.gamma * np.conj(eiphi) * _dissipator(SIGMA1, SIGMA2)
    jumps = (
        ("sigma1", complex(p.gamma0)),
        ("sigma2", complex(p.gamma0)),
        ("sigma1->sigma2 cross", p.gamma * eiphi),
        ("sigma2->sigma1 cross", p.gamma * np.conj(eiphi)),
    )
    return Liouvillian(matrix=mat, params=p, jumps=jumps)


def validate_density_matrix(rho: np.ndarray, context: str = "density matrix") -> None:
    """Hermiticity, unit trace and positivity up to solver-noise tolerances."""
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > 1e-12:
        raise NumericalError(f"{context}: Hermiticity residual {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > 1e-12:
        raise NumericalError(f"{context}: trace deviates from 1 by {abs(tr - 1.0):.3e}")
    eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if eigs.min() < POSITIVITY_TOL:
        raise NumericalError(f"{context}: negative eigenvalue {eigs.min():.3e}")


def steady_state_dm(lv: Liouvillian) -> np.ndarray:
    """Unique stationary density matrix from the generator kernel.

    Raises DegenerateSteadyStateError when the kernel dimension exceeds one
    (the undriven, maximally dissipatively coupled point has a dark state).
    """
    scale = lv.params.gamma0
    vals = np.linalg.eigvals(lv.matrix)
    kernel_dim = int(np.sum(np.abs(vals) < KERNEL_TOL * scale))
    if kernel_dim == 0:
        raise NumericalError("no Liouvillian eigenvalue within tolerance of zero")
    if kernel_dim > 1:
        raise DegenerateSteadyStateError(kernel_dim)
    # Kernel vector via a trace-constrained least-squares solve, which is
    # better conditioned than reading off an eigenvector.
    trace_row = vectorize(np.eye(4)).conj()
    weight = max(1.0, float(np.linalg.norm(lv.matrix, ord=np.inf)))
    a = np.vstack([lv.matrix, weight * trace_row])
    b = np.zeros(17, dtype=complex)
    b[16] = weight
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    rho = devectorize(sol)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    validate_density_matrix(rho, "steady state")
    return rho


def evolve_dm(lv: Liouvillian, rho0: np.ndarray, t: float) -> np.ndarray:
    """Propagate a density matrix for a duration t >= 0."""
    if t < 0.0:
        raise ParameterError(f"t must be >= 0, got {t}")
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (4, 4):
        raise ParameterError(f"rho0 must be 4x4, got shape {rho0.shape}")
    out = devectorize(lv.propagate(vectorize(rho0), t))
    if not np.all(np.isfinite(out)):
        raise NumericalError("matrix-exponential propagation produced non-finite entries")
    return out


def _readout(op: np.ndarray, propagated: np.ndarray) -> np.ndarray:
    """Tr[op X(tau)] for every propagated vectorized X, via one contraction."""
    weights = vectorize(op.T)
    return propagated @ weights


def two_time_correlator(
    lv: Liouvillian,
    tau_grid: np.ndarray,
    emitter: int = 1,
    rho_ss: np.ndarray | None = None,
) -> np.ndarray:
    """Stationary correlator <sigma_e^dag(0) sigma_e(tau)> on a delay grid.

    The tau = 0 boundary is the seed matrix rho_ss sigma_e^dag, propagated
    with the full generator; the value at zero delay equals the emitter
    population and the infinite-delay plateau is |<sigma_e>|^2.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if np.any(tau_grid < 0.0) or np.any(np.diff(tau_grid) < 0.0):
        raise ParameterError("tau grid must be nonnegative and nondecreasing")
    sig = SIGMA1 if emitter == 1 else SIGMA2
    if rho_ss is None:
        rho_ss = steady_state_dm(lv)
    seed = vectorize(rho_ss @ sig.conj().T)
    corr = _readout(sig, lv.propagate_grid(seed, tau_grid))
    offset = abs(np.trace(sig @ rho_ss)) ** 2
    inc0 = abs(corr[0] - offset)
    if inc0 > 0.0 and abs(corr[-1] - offset) > 1e-6 * inc0:
        warnings.warn(
            "two-time correlator not decayed at tau_max: "
            f"|C(tau_max) - offset| = {abs(corr[-1] - offset):.3e}",
            TruncationWarning,
            stacklevel=2,
        )
    return corr


def _tau_window(lv: Liouvillian) -> float:
    """Delay needed for the slowest transient to decay below 1e-8."""
    rates = lv.decay_rates()
    if rates.size == 0:
        raise NumericalError("generator has no decaying modes")
    return -math.log(1e-8) / float(rates[0])


def spectrum_fft(
    lv: Liouvillian, grid: np.ndarray, emitter: int = 1, method: str = "auto"
) -> tuple[np.ndarray, float]:
    """Emission spectrum via the one-sided Fourier transform of the correlator.

    The infinite-delay coherent plateau is subtracted and reported separately
    as the delta weight |<sigma_e>|^2 / n_e; the remainder is transformed
    one-sidedly (real part, 1/pi normalization) and divided by the emitter
    population, so that (grid integral + delta weight) is 1 up to
    discretization error.

    method 'modal' transforms each decaying Liouvillian mode exactly;
    'quadrature' samples the propagated correlator on a delay grid and
    applies Simpson's rule, which also covers defective generators; 'auto'
    picks modal when the generator diagonalizes.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0.0):
        raise ParameterError("grid must be a strictly increasing 1-d array")
    if method not in ("auto", "modal", "quadrature"):
        raise ParameterError(f"unknown spectrum method {method!r}")
    p = lv.params
    if emitter == 1 and p.omega1 == 0.0:
        raise UnsupportedConfigurationError(
            "emitter 1 is undriven (omega1 = 0); its spectrum is undefined"
        )
    rho_ss = steady_state_dm(lv)
    sig = SIGMA1 if emitter == 1 else SIGMA2
    n_op = N1 if emitter == 1 else N2
    n_e = float(np.trace(n_op @ rho_ss).real)
    if n_e <= 0.0:
        raise UnsupportedConfigurationError(
            f"emitter {emitter} population is zero; its spectrum is undefined"
        )
    coherent = np.trace(sig @ rho_ss)
    delta_weight = abs(coherent) ** 2 / n_e

    rates = lv.decay_rates()
    narrowest = 2.0 * float(rates[0])
    step = float(np.max(np.diff(grid)))
    if step > narrowest / 8.0:
        raise ResolutionError(
            f"grid step {step:.3e} exceeds 1/8 of the narrowest peak width "
            f"{narrowest:.3e}; refine the grid"
        )

    vals, vecs, inv = lv.eigensystem()
    if method == "auto":
        method = "modal" if inv is not None else "quadrature"
    if method == "modal" and inv is None:
        raise NumericalError("generator is defective; use method='quadrature'")

    if method == "modal":
        seed = vectorize(rho_ss @ sig.conj().T)
        readout = vectorize(sig.T)
        amp = (readout @ vecs) * (inv @ seed)
        decaying = vals.real < -KERNEL_TOL * p.gamma0
        # One-sided transform of amp_k e^{lambda_k tau} is -amp_k/(lambda_k + i w);
        # the stationary (zero) modes are exactly the subtracted plateau.
        poles = vals[decaying]
        amp = amp[decaying]
        denom = poles[None, :] + 1j * grid[:, None]
        values = (-(amp[None, :] / denom)).sum(axis=1).real / (math.pi * n_e)
        return values, float(delta_weight)

    tau_max = _tau_window(lv)
    w_abs = max(float(np.max(np.abs(grid))), 1.0)
    dtau = min(0.35 / w_abs, tau_max / 1024.0)
    n_tau = int(math.ceil(tau_max / dtau))
    n_tau = min(max(n_tau, 1024), 400_000)
    if n_tau % 2 == 1:
        n_tau += 1
    taus = np.linspace(0.0, tau_max, n_tau + 1)

    corr = two_time_correlator(lv, taus, emitter=emitter, rho_ss=rho_ss)
    inc = corr - abs(coherent) ** 2

    # Simpson weights on the uniform tau grid.
    h = taus[1] - taus[0]
    weights = np.full(n_tau + 1, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    weights *= h / 3.0

    values = np.empty_like(grid)
    chunk = 256
    winc = weights * inc
    for lo in range(0, grid.size, chunk):
        block = grid[lo:lo + chunk]
        phases = np.exp(1j * np.outer(block, taus))
        values[lo:lo + chunk] = (phases @ winc).real
    values /= math.pi * n_e
    return values, float(delta_weight)
