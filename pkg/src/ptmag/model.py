"""Three-mode model: two cavity photon modes coupled to each other and to
a magnon mode, with a complex-phase photon-magnon coupling.

Parameter set, full and effective Hamiltonians, closed-form target states,
gain-mode extraction, and the lumped-element circuit mapping.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from math import atan, cos, pi, sin, sqrt

import numpy as np

from .fock import DenseOperator, FockBasis, KetState, nonlocal_number_state

TWO_PI = 2.0 * pi


def angular(nu_mhz: float) -> float:
    """Frequency-over-2pi in MHz to angular rate in rad/us."""
    return TWO_PI * nu_mhz


@dataclass(frozen=True)
class ModelParams:
    """Working-point parameters.

    Frequencies and couplings are nu = omega/2pi in MHz, phases in radians.
    kappa_a, kappa_b, gamma_m are field-amplitude decay rates over 2pi in
    MHz: the amplitude decays as exp(-2 pi kappa t), so the density-matrix
    dissipator carries twice the angular rate (energy decays twice as fast
    as the field).
    """

    nu_a: float
    nu_b: float
    nu_c: float
    g_over_2pi: float
    r_over_2pi: float
    phi: float = 0.0
    theta: float = 0.0
    kappa_a: float = 0.0
    kappa_b: float = 0.0
    gamma_m: float = 0.0
    frame_nu: float | None = None

    def __post_init__(self):
        for name in ("nu_a", "nu_b", "nu_c", "g_over_2pi", "r_over_2pi",
                     "kappa_a", "kappa_b", "gamma_m"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def frame_reference(self) -> float:
        """Rotating-frame reference nu in MHz (defaults to nu_a)."""
        return self.nu_a if self.frame_nu is None else self.frame_nu

    @property
    def detuning(self) -> float:
        """Dimensionless photon-magnon detuning (omega_a - omega_c) / 2g."""
        if self.g_over_2pi == 0.0:
            raise ValueError("detuning is undefined at g = 0")
        return (self.nu_a - self.nu_c) / (2.0 * self.g_over_2pi)

    def with_detuning(self, delta: float) -> "ModelParams":
        """Move nu_c so that (omega_a - omega_c)/2g equals delta."""
        if self.g_over_2pi == 0.0:
            raise ValueError("detuning is undefined at g = 0")
        return replace(self, nu_c=self.nu_a - 2.0 * self.g_over_2pi * delta)


def canonical_params(**overrides) -> ModelParams:
    """Default working point shared by the bundled scenarios."""
    base = ModelParams(nu_a=5950.0, nu_b=5950.0, nu_c=6000.0,
                       g_over_2pi=6.0, r_over_2pi=50.0,
                       phi=pi, theta=1.1 * pi)
    return replace(base, **overrides) if overrides else base


def build_hamiltonian(params: ModelParams, basis: FockBasis,
                      frame: bool = True) -> DenseOperator:
    """Full Hamiltonian in rad/us:

        H = sum_m omega_m n_m + g (a+ c + e^{i phi} a c+)
            + r (e^{i theta} a b+ + e^{-i theta} a+ b)

    minus omega_ref N when the rotating frame is on. Hop terms are written
    directly between occupation states: composing truncated ladder
    matrices would clip the intermediate state at the cutoff and zero the
    couplings inside the top total-number block.
    """
    wa, wb, wc = angular(params.nu_a), angular(params.nu_b), angular(params.nu_c)
    g, r = angular(params.g_over_2pi), angular(params.r_over_2pi)
    ref = angular(params.frame_reference) if frame else 0.0
    eiphi = np.exp(1j * params.phi)
    eitheta = np.exp(1j * params.theta)
    h = np.zeros((basis.dim, basis.dim), dtype=complex)
    for i, (na, nb, nc) in enumerate(basis.states):
        h[i, i] = (wa - ref) * na + (wb - ref) * nb + (wc - ref) * nc
        if na > 0:
            amp = sqrt(na * (nc + 1))
            j = basis.index_of[(na - 1, nb, nc + 1)]
            h[j, i] += g * eiphi * amp
            h[i, j] += g * amp
            amp = sqrt(na * (nb + 1))
            k = basis.index_of[(na - 1, nb + 1, nc)]
            h[k, i] += r * eitheta * amp
            h[i, k] += r * np.conj(eitheta) * amp
    return DenseOperator(basis, h)


def split_hermitian(h: DenseOperator) -> tuple[DenseOperator, DenseOperator]:
    """H1 = (H + H+)/2 Hermitian, H2 = (H - H+)/2 anti-Hermitian."""
    m = h.elements
    return (DenseOperator(h.basis, 0.5 * (m + m.conj().T)),
            DenseOperator(h.basis, 0.5 * (m - m.conj().T)))


def build_effective_hamiltonian(params: ModelParams, basis: FockBasis) -> DenseOperator:
    """Interaction-picture coupling of the symmetric photon mode
    A1 = (a + b e^{-i theta})/sqrt(2) to the magnon:

        H_eff = g_eff (A1+ c + e^{i phi} A1 c+),  g_eff = g/sqrt(2)

    with no free part. Valid when |omega - omega_c - r| dominates g; a
    warning flags the rest of parameter space.
    """
    if params.nu_a != params.nu_b:
        raise ValueError("effective form requires nu_a == nu_b")
    g = angular(params.g_over_2pi)
    gap = abs(angular(params.nu_a) - angular(params.nu_c) - angular(params.r_over_2pi))
    if gap < 10.0 * g and g > 0.0:
        warnings.warn("detuning gap below 10 g, effective form degrades",
                      stacklevel=2)
    geff = g / sqrt(2.0)
    eith = np.exp(1j * params.theta)
    m = np.zeros((basis.dim, basis.dim), dtype=complex)
    for i, (na, nb, nc) in enumerate(basis.states):
        if nc > 0:
            # A1+ c moves one magnon quantum into the symmetric photon mode
            j = basis.index_of[(na + 1, nb, nc - 1)]
            m[j, i] += geff / sqrt(2.0) * sqrt((na + 1) * nc)
            k = basis.index_of[(na, nb + 1, nc - 1)]
            m[k, i] += geff / sqrt(2.0) * eith * sqrt((nb + 1) * nc)
    h = m + np.exp(1j * params.phi) * m.conj().T
    return DenseOperator(basis, h)


def target_state(basis: FockBasis, n: int, theta: float) -> KetState:
    """Closed-form attractor of the lossless broken-phase flow for total
    occupation n in {1, 2, 3}, written over |m~, n-m> pairs of symmetric-
    photon-mode number states and magnon occupations."""
    def nl(q: int, m: int) -> np.ndarray:
        return nonlocal_number_state(basis, q, theta, c_occupation=m).amplitudes

    if n == 1:
        v = (nl(1, 0) + 1j * nl(0, 1)) / sqrt(2.0)
    elif n == 2:
        v = 0.5 * nl(2, 0) + (1j / sqrt(2.0)) * nl(1, 1) - 0.5 * nl(0, 2)
    elif n == 3:
        v = (sqrt(2.0) / 4.0) * (sqrt(3.0) * nl(1, 2) - 1j * sqrt(3.0) * nl(2, 1)
                                 - nl(3, 0) + 1j * nl(0, 3))
    else:
        raise ValueError("closed-form targets exist for n in {1, 2, 3}")
    return KetState(basis, v)


def gain_mode_state(params: ModelParams, basis: FockBasis, n: int) -> KetState:
    """Eigenvector of the total-number-n block with the largest imaginary
    eigenvalue part: the attractor of the lossless nonlinear flow.

    Raises when the block spectrum is real within tolerance, since a real
    spectrum means no unique attractor exists.
    """
    if n < 1 or n > basis.n_cutoff:
        raise ValueError("n must lie between 1 and the basis cutoff")
    idx = basis.block_indices(n)
    block = build_hamiltonian(params, basis, frame=True).elements[np.ix_(idx, idx)]
    w, v = np.linalg.eig(block)
    scale = max(1.0, float(np.abs(w).max()))
    if float(w.imag.max()) <= 1e-9 * scale:
        raise ValueError("block spectrum is real within tolerance: no unique attractor")
    col = v[:, int(np.argmax(w.imag))]
    piv = int(np.argmax(np.abs(col)))
    col = col * np.exp(-1j * np.angle(col[piv]))
    vec = np.zeros(basis.dim, dtype=complex)
    vec[idx] = col / np.linalg.norm(col)
    return KetState(basis, vec)


@dataclass(frozen=True)
class CircuitParams:
    """Lumped-element realization: one series-resistance LC oscillator per
    mode, a coupling capacitor between the two photon circuits, and the
    feedline impedance. SI units."""

    L_a: float
    C_a: float
    R_a: float
    L_b: float
    C_b: float
    R_b: float
    L_m: float
    C_m: float
    R_m: float
    C_coupling: float
    Z0: float

    def __post_init__(self):
        for name in ("L_a", "C_a", "R_a", "L_b", "C_b", "R_b",
                     "L_m", "C_m", "R_m", "C_coupling", "Z0"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


_RAD_PER_S_TO_MHZ = 1.0 / (TWO_PI * 1e6)


def params_from_circuit(c: CircuitParams, g_over_2pi: float = 0.0,
                        phi: float = 0.0, theta: float = 0.0) -> ModelParams:
    """Map element values to mode frequencies, damping rates and the
    photon-photon coupling; the magnon coupling strength and both phases
    are not circuit-derived and are passed through.

    Per mode: omega = 1/sqrt(LC) and amplitude damping rate R/(2L), which
    is the dimensionless R/(2 L omega) times omega. The coupling rate is
    r = 2 Z0 C_coupling omega_a omega_b, the weak-capacitor limit, guarded
    by a warning when C_coupling is not small against the mode capacitors.
    """
    wa = 1.0 / sqrt(c.L_a * c.C_a)
    wb = 1.0 / sqrt(c.L_b * c.C_b)
    wm = 1.0 / sqrt(c.L_m * c.C_m)
    if c.C_coupling > 0.1 * min(c.C_a, c.C_b):
        warnings.warn("coupling capacitor is not small against the mode capacitors",
                      stacklevel=2)
    r = 2.0 * c.Z0 * c.C_coupling * wa * wb
    return ModelParams(
        nu_a=wa * _RAD_PER_S_TO_MHZ,
        nu_b=wb * _RAD_PER_S_TO_MHZ,
        nu_c=wm * _RAD_PER_S_TO_MHZ,
        g_over_2pi=g_over_2pi,
        r_over_2pi=r * _RAD_PER_S_TO_MHZ,
        phi=phi,
        theta=theta,
        kappa_a=(c.R_a / (2.0 * c.L_a)) * _RAD_PER_S_TO_MHZ,
        kappa_b=(c.R_b / (2.0 * c.L_b)) * _RAD_PER_S_TO_MHZ,
        gamma_m=(c.R_m / (2.0 * c.L_m)) * _RAD_PER_S_TO_MHZ,
    )


def coupling_phase_from_interference(delta: float, Phi: float) -> float:
    """Effective coupling phase of a two-path interference: a secondary
    path of relative strength delta and phase Phi against the direct one.

        phi = 2 arctan(-delta sin(Phi) / (1 + delta cos(Phi)))
    """
    return 2.0 * atan(-delta * sin(Phi) / (1.0 + delta * cos(Phi)))
