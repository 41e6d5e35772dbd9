"""Scalar observables: fidelity, entropies, collective coherence, purity,
mean occupation, and the per-record observable bundle."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .fock import DensityMatrix, FockBasis, KetState, mode_marginals

_EIG_FLOOR = 1e-12
_SUPPORT_TOL = 1e-14


def _elements(rho) -> np.ndarray:
    return rho.elements if isinstance(rho, DensityMatrix) else np.asarray(rho)


def fidelity(rho, target: KetState) -> float:
    """sqrt(<target| rho |target>), clamped to [0, 1]."""
    v = target.amplitudes
    val = complex(v.conj() @ (_elements(rho) @ v)).real
    return min(1.0, sqrt(max(0.0, val)))


def von_neumann_entropy(rho, natural_log: bool = False) -> float:
    """Spectral entropy, base 2 unless the natural-log switch is set.
    Eigenvalues at or below 1e-12 are dropped."""
    ev = np.linalg.eigvalsh(_elements(rho))
    ev = ev[ev > _EIG_FLOOR]
    if ev.size == 0:
        return 0.0
    logs = np.log(ev) if natural_log else np.log2(ev)
    return float(-(ev * logs).sum())


def purity(rho) -> float:
    """tr(rho^2)."""
    m = _elements(rho)
    return float(np.einsum("ij,ji->", m, m).real)


def mean_particle_number(rho, basis: FockBasis | None = None) -> float:
    if isinstance(rho, DensityMatrix):
        basis = rho.basis
    elif basis is None:
        raise ValueError("raw matrix input needs an explicit basis")
    diag = _elements(rho).diagonal().real
    return float(sum(p * sum(s) for p, s in zip(diag, basis.states)))


def _support(diag: np.ndarray) -> list[int]:
    return [i for i, p in enumerate(diag.real) if p > _SUPPORT_TOL]


def collective_coherence(rho, basis: FockBasis | None = None,
                         natural_log: bool = False) -> float:
    """Entropy-based coherence of the joint state against the product of
    its mode marginals:

        C = sqrt( S((rho + rho_pi)/2) - (S(rho) + S(rho_pi))/2 )

    with base-2 entropies by default and the bracket clamped at zero.

    The mixture is evaluated on the union of rho's support and the product
    of the marginal supports, so rho_pi is represented without truncation:
    the discarded weight is exactly zero.
    """
    if isinstance(rho, DensityMatrix):
        basis = rho.basis
    elif basis is None:
        raise ValueError("raw matrix input needs an explicit basis")
    mat = _elements(rho)

    ma, mb, mc = mode_marginals(mat, basis)
    sa, sb, sc = (_support(m.diagonal()) for m in (ma, mb, mc))

    # S(rho_pi) splits over the factors; no joint product matrix needed
    s_pi = sum(von_neumann_entropy(m, natural_log=natural_log)
               for m in (ma, mb, mc))
    s_rho = von_neumann_entropy(mat, natural_log=natural_log)

    row_mass = np.abs(mat).max(axis=1)
    occupied = {basis.states[i] for i in range(basis.dim)
                if row_mass[i] > _SUPPORT_TOL}
    product_support = {(i, j, k) for i in sa for j in sb for k in sc}
    union = sorted(occupied | product_support)
    n = len(union)

    mix = np.zeros((n, n), dtype=complex)
    in_basis = [r for r, s in enumerate(union) if s in basis.index_of]
    bidx = [basis.index_of[union[r]] for r in in_basis]
    mix[np.ix_(in_basis, in_basis)] += mat[np.ix_(bidx, bidx)]
    na_u = np.array([s[0] for s in union])
    nb_u = np.array([s[1] for s in union])
    nc_u = np.array([s[2] for s in union])
    mix += (ma[np.ix_(na_u, na_u)] * mb[np.ix_(nb_u, nb_u)]
            * mc[np.ix_(nc_u, nc_u)])
    mix *= 0.5
    s_mix = von_neumann_entropy(mix, natural_log=natural_log)

    bracket = s_mix - 0.5 * (s_rho + s_pi)
    return sqrt(max(0.0, bracket))


def populations(rho, basis: FockBasis | None = None) -> dict[str, float]:
    """Occupation probabilities keyed by the digit label n_a n_b n_c."""
    if isinstance(rho, DensityMatrix):
        basis = rho.basis
    elif basis is None:
        raise ValueError("raw matrix input needs an explicit basis")
    diag = _elements(rho).diagonal().real
    return {"".join(str(n) for n in s): float(p)
            for s, p in zip(basis.states, diag)}


@dataclass(frozen=True)
class ObservableRecord:
    """One trajectory snapshot."""

    t_us: float
    trace: float
    mean_n: float
    fidelity: float
    coherence: float
    purity: float
    populations: dict = field(default_factory=dict)

    def __post_init__(self):
        total = sum(self.populations.values())
        if total > 1.0 + 1e-8:
            raise ValueError(f"populations sum to {total!r} > 1")
