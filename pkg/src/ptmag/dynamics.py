"""Density-matrix evolution under the norm-preserving nonlinear equation

    d rho / dt = -i [H1, rho] - i {H2, rho} + 2 i tr(rho H2) rho
                 + sum_L  Gamma_L ( A rho A+ - {A+ A, rho}/2 )

with H1, H2 the Hermitian and anti-Hermitian parts of H. Without the
dissipators this flow equals the projectively normalized linear evolution
exp(-i H t) rho exp(i H+ t) / tr(...), for pure and mixed rho alike.

Fixed-step classical fourth-order integration; losses enter through the
model's amplitude rates, with the dissipator prefactor twice the angular
amplitude rate.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import metrics
from .fock import (DenseOperator, DensityMatrix, FockBasis, KetState,
                   mode_annihilator, total_number_diagonal)
from .model import ModelParams, angular, build_hamiltonian


class NumericalAbort(RuntimeError):
    """Raised when the integrator detects an unphysical trace drift."""


@dataclass(frozen=True)
class EvolutionConfig:
    """Integration controls. Times in us."""

    dt: float = 1e-5
    t_final: float = 0.2
    record_stride: int = 100
    renormalize_trace: bool = True
    hermitize: bool = True
    frame: bool = True

    def __post_init__(self):
        if not 0.0 < self.dt <= self.t_final:
            raise ValueError("need 0 < dt <= t_final")
        if self.record_stride < 1:
            raise ValueError("record_stride must be at least 1")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded observables on a strictly increasing time grid starting at
    t = 0, plus the final state."""

    times: np.ndarray
    trace: np.ndarray
    mean_n: np.ndarray
    fidelities: np.ndarray          # (n_records, n_targets)
    target_labels: tuple[str, ...]
    coherence: np.ndarray
    purity: np.ndarray
    populations: np.ndarray         # (n_records, basis dim)
    final_rho: DensityMatrix

    @property
    def basis(self) -> FockBasis:
        return self.final_rho.basis

    def record_at(self, i: int) -> metrics.ObservableRecord:
        pops = {"".join(str(n) for n in s): float(p)
                for s, p in zip(self.basis.states, self.populations[i])}
        return metrics.ObservableRecord(
            t_us=float(self.times[i]),
            trace=float(self.trace[i]),
            mean_n=float(self.mean_n[i]),
            fidelity=float(self.fidelities[i, 0]) if self.fidelities.size else 0.0,
            coherence=float(self.coherence[i]),
            purity=float(self.purity[i]),
            populations=pops,
        )


def rho_derivative(rho, h1, h2, loss: Sequence | None = None) -> np.ndarray:
    """Right-hand side of the evolution equation. loss is a sequence of
    (prefactor, annihilator) pairs, applied exactly as given."""
    r = rho.elements if isinstance(rho, DensityMatrix) else np.asarray(rho)
    a = h1.elements if isinstance(h1, DenseOperator) else np.asarray(h1)
    b = h2.elements if isinstance(h2, DenseOperator) else np.asarray(h2)
    br = b @ r
    out = -1j * (a @ r - r @ a) - 1j * (br + r @ b) + 2j * np.trace(br) * r
    if loss:
        for rate, op in loss:
            o = op.elements if isinstance(op, DenseOperator) else np.asarray(op)
            od = o.conj().T
            oo = od @ o
            out = out + rate * ((o @ r) @ od - 0.5 * (oo @ r + r @ oo))
    return out


def loss_channels(params: ModelParams, basis: FockBasis) -> list:
    """Dissipator (prefactor, annihilator) pairs from the model's
    amplitude rates: prefactor = 2 x angular rate."""
    pairs = []
    for rate, mode in ((params.kappa_a, "a"), (params.kappa_b, "b"),
                       (params.gamma_m, "c")):
        if rate > 0.0:
            pairs.append((2.0 * angular(rate), mode_annihilator(basis, mode)))
    return pairs


def _fast_step(r: np.ndarray, heff: np.ndarray, h_for_trace: np.ndarray,
               sandwiches: list, dt: float) -> np.ndarray:
    """One integration step assuming Hermitian input.

    For Hermitian r, rho H_eff+ = (H_eff rho)+ and tr(H2 rho) is purely
    imaginary, so each stage costs one multiply plus two per dissipator.
    Stage outputs stay Hermitian, keeping the identity valid throughout.
    """
    def deriv(x: np.ndarray) -> np.ndarray:
        m = heff @ x
        d = -1j * (m - m.conj().T)
        for rate, o, od in sandwiches:
            d += rate * ((o @ x) @ od)
        # 2i tr(rho H2) rho with tr = i Im tr(H rho)
        d -= 2.0 * np.einsum("ij,ji->", h_for_trace, x).imag * x
        return d

    k1 = deriv(r)
    k2 = deriv(r + 0.5 * dt * k1)
    k3 = deriv(r + 0.5 * dt * k2)
    k4 = deriv(r + dt * k3)
    return r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _reference_step(r: np.ndarray, h1: np.ndarray, h2: np.ndarray,
                    loss: list, dt: float) -> np.ndarray:
    k1 = rho_derivative(r, h1, h2, loss)
    k2 = rho_derivative(r + 0.5 * dt * k1, h1, h2, loss)
    k3 = rho_derivative(r + 0.5 * dt * k2, h1, h2, loss)
    k4 = rho_derivative(r + dt * k3, h1, h2, loss)
    return r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def evolve(rho0: DensityMatrix, params: ModelParams, cfg: EvolutionConfig,
           targets: Sequence[KetState] = (),
           target_labels: Sequence[str] | None = None) -> Trajectory:
    """Integrate the evolution equation and record observables at t = 0,
    every record_stride steps, and the final step.

    Aborts with a diagnostic when the raw trace drifts beyond 1e-3 in one
    check, which signals a step size too large for the spectral range.
    """
    basis = rho0.basis
    h = build_hamiltonian(params, basis, frame=cfg.frame).elements
    h1 = 0.5 * (h + h.conj().T)
    h2 = 0.5 * (h - h.conj().T)
    loss = loss_channels(params, basis)

    heff = h.copy()
    sandwiches = []
    for rate, op in loss:
        o = op.elements
        od = o.conj().T
        heff = heff - 0.5j * rate * (od @ o)
        sandwiches.append((rate, o, od))
    use_fast = cfg.hermitize

    steps = max(1, round(cfg.t_final / cfg.dt))
    n_diag = total_number_diagonal(basis)
    tvecs = np.array([t.amplitudes for t in targets]) if targets else None
    labels = (tuple(target_labels) if target_labels is not None
              else tuple(f"target{i+1}" for i in range(len(targets))))
    if len(labels) != len(targets):
        raise ValueError("target_labels must match targets")

    times, traces, means, cohs, purs = [], [], [], [], []
    fids, pops = [], []

    def record(t: float, r: np.ndarray) -> None:
        diag = r.diagonal().real
        times.append(t)
        traces.append(float(diag.sum()))
        means.append(float(n_diag @ diag))
        pops.append(diag.copy())
        purs.append(float(np.einsum("ij,ji->", r, r).real))
        if tvecs is not None:
            vals = np.einsum("ki,ij,kj->k", tvecs.conj(), r, tvecs).real
            fids.append(np.sqrt(np.clip(vals, 0.0, 1.0)))
        else:
            fids.append(np.zeros(0))
        cohs.append(metrics.collective_coherence(r, basis))

    r = rho0.elements.copy()
    record(0.0, r)
    for step in range(1, steps + 1):
        if use_fast:
            r = _fast_step(r, heff, h, sandwiches, cfg.dt)
        else:
            r = _reference_step(r, h1, h2, loss, cfg.dt)
        raw_trace = float(r.diagonal().real.sum())
        if abs(raw_trace - 1.0) > 1e-3:
            raise NumericalAbort(
                f"trace drifted to {raw_trace!r} at step {step}; "
                f"reduce dt below {cfg.dt!r}")
        if cfg.hermitize:
            r = 0.5 * (r + r.conj().T)
        if cfg.renormalize_trace:
            r = r / raw_trace
        if step % cfg.record_stride == 0 or step == steps:
            record(step * cfg.dt, r)

    final = DensityMatrix(basis, 0.5 * (r + r.conj().T))
    return Trajectory(
        times=np.array(times),
        trace=np.array(traces),
        mean_n=np.array(means),
        fidelities=np.array(fids).reshape(len(times), len(targets)),
        target_labels=labels,
        coherence=np.array(cohs),
        purity=np.array(purs),
        populations=np.array(pops),
        final_rho=final,
    )


@dataclass(frozen=True, eq=False)
class SteadyStateResult:
    rho: DensityMatrix
    converged: bool
    converged_at: float | None


def steady_state(rho0: DensityMatrix, params: ModelParams,
                 cfg: EvolutionConfig,
                 window: float = 0.01, tol: float = 1e-8) -> SteadyStateResult:
    """Integrate until the state stops moving: converged when the max-norm
    change over a trailing window stays below tol. converged_at is the
    start of the stable window, so an initial state that is already steady
    reports a time near zero."""
    basis = rho0.basis
    h = build_hamiltonian(params, basis, frame=cfg.frame).elements
    loss = loss_channels(params, basis)
    heff = h.copy()
    sandwiches = []
    for rate, op in loss:
        o = op.elements
        od = o.conj().T
        heff = heff - 0.5j * rate * (od @ o)
        sandwiches.append((rate, o, od))

    w_steps = max(1, round(window / cfg.dt))
    steps = max(1, round(cfg.t_final / cfg.dt))
    history: list[np.ndarray] = [rho0.elements.copy()]
    r = rho0.elements.copy()
    for step in range(1, steps + 1):
        r = _fast_step(r, heff, h, sandwiches, cfg.dt)
        raw_trace = float(r.diagonal().real.sum())
        if abs(raw_trace - 1.0) > 1e-3:
            raise NumericalAbort(
                f"trace drifted to {raw_trace!r} at step {step}; "
                f"reduce dt below {cfg.dt!r}")
        r = 0.5 * (r + r.conj().T) / raw_trace
        history.append(r)
        if len(history) > w_steps + 1:
            history.pop(0)
        if step >= w_steps:
            drift = float(np.abs(r - history[0]).max())
            if drift < tol:
                t_now = step * cfg.dt
                return SteadyStateResult(
                    rho=DensityMatrix(basis, r),
                    converged=True,
                    converged_at=max(0.0, t_now - window),
                )
    return SteadyStateResult(rho=DensityMatrix(basis, r),
                             converged=False, converged_at=None)


def mixed_initial_state(basis: FockBasis,
                        components: Sequence[tuple[KetState, float]]) -> DensityMatrix:
    """Statistical mixture sum_k w_k |psi_k><psi_k|; weights must be
    non-negative and sum to 1 within 1e-10."""
    if not components:
        raise ValueError("need at least one component")
    total = 0.0
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    for ket, w in components:
        if w < 0:
            raise ValueError("weights must be non-negative")
        if ket.basis.n_cutoff != basis.n_cutoff:
            raise ValueError("component basis does not match")
        out += w * np.outer(ket.amplitudes, ket.amplitudes.conj())
        total += w
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"weights sum to {total!r}, expected 1")
    return DensityMatrix(basis, out)
