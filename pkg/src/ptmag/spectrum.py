"""Single-excitation spectrum: closed-form eigenvalues of the 3x3 block,
reality-based phase classification, exceptional-point search and phase-
diagram sweeps."""
from __future__ import annotations

import cmath
import csv
from dataclasses import dataclass, replace
from enum import Enum
from math import sqrt

import numpy as np

from .model import ModelParams, angular

PHASE_DIAGRAM_COLUMNS = ("g_over_2pi_MHz", "delta",
                         "re_w1", "re_w2", "re_w3",
                         "im_w1", "im_w2", "im_w3", "phase")


@dataclass(frozen=True)
class EigenTriple:
    """Three complex mode rates in rad/us, sorted by (Re, Im)."""

    omega: tuple[complex, complex, complex]
    params_at: ModelParams | None = None
    delta: float | None = None


class PhaseLabel(Enum):
    PT_SYMMETRIC = "pt-symmetric"
    PT_BROKEN = "pt-broken"
    EXCEPTIONAL = "exceptional-point"


@dataclass(frozen=True)
class PhasePoint:
    delta: float
    g_over_2pi: float
    phase: PhaseLabel
    max_abs_im: float


@dataclass(frozen=True)
class ExceptionalPoint:
    delta_star: float
    g_over_2pi: float
    bracket_width: float


def single_excitation_matrix(params: ModelParams) -> np.ndarray:
    """The Hamiltonian on the one-excitation block, basis
    (|100>, |010>, |001>), absolute frequencies in rad/us."""
    wa, wb, wc = angular(params.nu_a), angular(params.nu_b), angular(params.nu_c)
    g, r = angular(params.g_over_2pi), angular(params.r_over_2pi)
    eiphi = cmath.exp(1j * params.phi)
    eith = cmath.exp(1j * params.theta)
    return np.array([
        [wa, r / eith, g],
        [r * eith, wb, 0.0],
        [g * eiphi, 0.0, wc],
    ], dtype=complex)


def characteristic_coefficients(params: ModelParams) -> tuple[complex, complex, complex]:
    """Coefficients (A, B, C) of the one-excitation characteristic cubic

        lambda^3 - A lambda^2 - B lambda + C = 0.
    """
    wa, wb, wc = angular(params.nu_a), angular(params.nu_b), angular(params.nu_c)
    g2 = angular(params.g_over_2pi) ** 2 * cmath.exp(1j * params.phi)
    r2 = angular(params.r_over_2pi) ** 2
    a = wa + wb + wc
    b = g2 + r2 - wc * wa - wc * wb - wa * wb
    c = -wc * wa * wb + wc * r2 + g2 * wb
    return a, b, c


def _sorted3(values) -> tuple[complex, complex, complex]:
    """Sort by (Re, Im), grouping real parts that agree to 1e-9 relative
    so that conjugate pairs order stably by their imaginary parts."""
    w = sorted((complex(v) for v in values), key=lambda z: z.real)
    scale = max(1.0, max(abs(z) for z in w))
    tol = 1e-9 * scale
    groups: list[list[complex]] = [[w[0]]]
    for z in w[1:]:
        if z.real - groups[-1][-1].real < tol:
            groups[-1].append(z)
        else:
            groups.append([z])
    out: list[complex] = []
    for grp in groups:
        out.extend(sorted(grp, key=lambda z: z.imag))
    return (out[0], out[1], out[2])


def _cubic_roots(a: complex, b: complex, c: complex):
    """Roots of lambda^3 - a lambda^2 - b lambda + c = 0 by the depressed-
    cubic substitution lambda = t + a/3."""
    p = -b - a * a / 3.0
    q = c - 2.0 * a ** 3 / 27.0 - a * b / 3.0
    disc = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    u3a = -q / 2.0 + disc
    u3b = -q / 2.0 - disc
    u3 = u3a if abs(u3a) >= abs(u3b) else u3b
    if u3 == 0:
        # p = q = 0: triple root at the shift
        return (a / 3.0, a / 3.0, a / 3.0)
    u = u3 ** (1.0 / 3.0)
    zeta = complex(-0.5, sqrt(3.0) / 2.0)
    roots = []
    for k in range(3):
        uk = u * zeta ** k
        root = uk - p / (3.0 * uk) + a / 3.0
        # Newton polish absorbs cancellation near conjugate pairs
        for _ in range(2):
            f = root ** 3 - a * root ** 2 - b * root + c
            df = 3.0 * root ** 2 - 2.0 * a * root - b
            if df != 0:
                root -= f / df
        roots.append(root)
    return tuple(roots)


def analytic_eigenvalues(params: ModelParams) -> EigenTriple:
    """Closed-form eigenvalues of the one-excitation block."""
    roots = _cubic_roots(*characteristic_coefficients(params))
    delta = params.detuning if params.g_over_2pi > 0 else None
    return EigenTriple(_sorted3(roots), params_at=params, delta=delta)


def numeric_eigenvalues(m: np.ndarray) -> EigenTriple:
    """Dense-solver eigenvalues of a 3x3 block, the cross-check route."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got {m.shape}")
    return EigenTriple(_sorted3(np.linalg.eigvals(m)))


def reality_tolerance(params: ModelParams) -> float:
    """Imaginary-part threshold: 1e-4 of the coupling's angular scale."""
    if params.g_over_2pi <= 0:
        raise ValueError("needs g > 0")
    return 1e-4 * angular(params.g_over_2pi)


def classify_phase(t: EigenTriple, epsilon_im: float) -> PhasePoint:
    """Symmetric when every eigenvalue is real within epsilon_im, broken
    otherwise. Exceptional points are located by find_exceptional_points,
    not by thresholding a single triple."""
    if epsilon_im <= 0:
        raise ValueError("epsilon_im must be positive")
    mai = max(abs(w.imag) for w in t.omega)
    label = PhaseLabel.PT_SYMMETRIC if mai < epsilon_im else PhaseLabel.PT_BROKEN
    p = t.params_at
    return PhasePoint(
        delta=t.delta if t.delta is not None else float("nan"),
        g_over_2pi=p.g_over_2pi if p is not None else float("nan"),
        phase=label,
        max_abs_im=mai,
    )


def _max_abs_im(params: ModelParams, delta: float) -> float:
    t = analytic_eigenvalues(params.with_detuning(delta))
    return max(abs(w.imag) for w in t.omega)


def find_exceptional_points(params_template: ModelParams,
                            delta_range: tuple[float, float],
                            grid_step: float | None = None) -> list[ExceptionalPoint]:
    """Detuning values where the spectrum switches between real and
    complex: grid scan for sign changes of max|Im| against the reality
    tolerance, then bisection to a bracket width of 1e-4."""
    lo, hi = float(delta_range[0]), float(delta_range[1])
    if not hi > lo:
        raise ValueError("delta range is empty")
    step = grid_step if grid_step is not None else (hi - lo) / 400.0
    if step <= 0:
        raise ValueError("grid_step must be positive")
    eps = reality_tolerance(params_template)

    def above(d: float) -> bool:
        return _max_abs_im(params_template, d) > eps

    grid = np.arange(lo, hi + step / 2.0, step)
    found: list[ExceptionalPoint] = []
    for x0, x1 in zip(grid[:-1], grid[1:]):
        s0, s1 = above(float(x0)), above(float(x1))
        if s0 == s1:
            continue
        a, b = float(x0), float(x1)
        while b - a > 1e-4:
            mid = 0.5 * (a + b)
            if above(mid) == s0:
                a = mid
            else:
                b = mid
        found.append(ExceptionalPoint(delta_star=0.5 * (a + b),
                                      g_over_2pi=params_template.g_over_2pi,
                                      bracket_width=b - a))
    return sorted(found, key=lambda e: e.delta_star)


@dataclass(frozen=True)
class SweepPoint:
    g_over_2pi: float
    delta: float
    omega: tuple[complex, complex, complex]
    phase: PhaseLabel


def sweep_phase_diagram(params_template: ModelParams,
                        g_range: tuple[float, float],
                        delta_range: tuple[float, float],
                        steps: tuple[int, int]) -> list[SweepPoint]:
    """Eigenvalue surfaces and phase labels over a (g, delta) grid."""
    ng, nd = int(steps[0]), int(steps[1])
    if ng < 1 or nd < 1:
        raise ValueError("steps must be at least 1 each")
    gs = np.linspace(g_range[0], g_range[1], ng)
    ds = np.linspace(delta_range[0], delta_range[1], nd)
    out: list[SweepPoint] = []
    for g in gs:
        p_g = replace(params_template, g_over_2pi=float(g))
        eps = reality_tolerance(p_g)
        for d in ds:
            t = analytic_eigenvalues(p_g.with_detuning(float(d)))
            point = classify_phase(t, eps)
            out.append(SweepPoint(float(g), float(d), t.omega, point.phase))
    return out


def write_phase_diagram_csv(points: list[SweepPoint], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(PHASE_DIAGRAM_COLUMNS)
        for p in points:
            w.writerow([f"{p.g_over_2pi:.12g}", f"{p.delta:.12g}"]
                       + [f"{z.real:.12g}" for z in p.omega]
                       + [f"{z.imag:.12g}" for z in p.omega]
                       + [p.phase.value])
