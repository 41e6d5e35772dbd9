"""Truncated three-mode bosonic Fock space.

Occupation states |n_a n_b n_c> are kept when n_a + n_b + n_c <= n_cutoff
and enumerated by total occupation first, then lexicographically. The
coherent dynamics conserves the total number and losses only lower it, so
the truncation is exact for any initial state inside the cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, sqrt

import numpy as np

MODES = ("a", "b", "c")

Occupation = tuple[int, int, int]


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Ordered occupation basis with total number at most n_cutoff."""

    n_cutoff: int
    states: tuple[Occupation, ...]
    index_of: dict

    @property
    def dim(self) -> int:
        return len(self.states)

    def block_indices(self, n_total: int) -> list[int]:
        """Dense indices of the fixed-total-number block."""
        return [i for i, s in enumerate(self.states) if sum(s) == n_total]


def make_basis(n_cutoff: int) -> FockBasis:
    if n_cutoff < 0:
        raise ValueError("n_cutoff must be non-negative")
    states = tuple(sorted(
        (s for s in product(range(n_cutoff + 1), repeat=3) if sum(s) <= n_cutoff),
        key=lambda s: (sum(s), s),
    ))
    assert len(states) == comb(n_cutoff + 3, 3)
    return FockBasis(n_cutoff, states, {s: i for i, s in enumerate(states)})


@dataclass(frozen=True, eq=False)
class DenseOperator:
    basis: FockBasis
    elements: np.ndarray

    def __post_init__(self):
        d = self.basis.dim
        if self.elements.shape != (d, d):
            raise ValueError(
                f"operator shape {self.elements.shape} does not match basis dim {d}")


@dataclass(frozen=True, eq=False)
class KetState:
    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (self.basis.dim,):
            raise ValueError("amplitude vector does not match basis dim")
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"ket must be unit norm, got {norm!r}")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    basis: FockBasis
    elements: np.ndarray

    def __post_init__(self):
        d = self.basis.dim
        if self.elements.shape != (d, d):
            raise ValueError(
                f"density matrix shape {self.elements.shape} does not match basis dim {d}")
        herm = float(np.abs(self.elements - self.elements.conj().T).max())
        if herm > 1e-10:
            raise ValueError(f"density matrix not Hermitian, max deviation {herm:.3e}")
        tr = complex(np.trace(self.elements)).real
        if abs(tr - 1.0) > 1e-8:
            raise ValueError(f"density matrix trace {tr!r} is not 1")

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue; positivity check on demand."""
        return float(np.linalg.eigvalsh(self.elements).min())


def make_ket(basis: FockBasis, amplitudes) -> KetState:
    """Normalize a raw amplitude vector into a KetState."""
    v = np.asarray(amplitudes, dtype=complex)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return KetState(basis, v / norm)


def basis_ket(basis: FockBasis, occupation: Occupation) -> KetState:
    """The single occupation state |n_a n_b n_c>."""
    occ = tuple(int(n) for n in occupation)
    if occ not in basis.index_of:
        raise ValueError(f"occupation {occ} outside the basis")
    v = np.zeros(basis.dim, dtype=complex)
    v[basis.index_of[occ]] = 1.0
    return KetState(basis, v)


def pure_state_density(ket: KetState) -> DensityMatrix:
    return DensityMatrix(ket.basis, np.outer(ket.amplitudes, ket.amplitudes.conj()))


def mode_annihilator(basis: FockBasis, mode: str) -> DenseOperator:
    """Lowering operator for one mode, sqrt(n) matrix elements.

    The creation operator is its adjoint. Products of truncated ladder
    matrices clip intermediate states at the cutoff, so number-conserving
    Hamiltonian terms must not be assembled from these.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    k = MODES.index(mode)
    m = np.zeros((basis.dim, basis.dim), dtype=complex)
    for i, s in enumerate(basis.states):
        if s[k] > 0:
            lower = list(s)
            lower[k] -= 1
            m[basis.index_of[tuple(lower)], i] = sqrt(s[k])
    return DenseOperator(basis, m)


def adjoint(op: DenseOperator) -> DenseOperator:
    return DenseOperator(op.basis, op.elements.conj().T.copy())


def total_number_diagonal(basis: FockBasis) -> np.ndarray:
    """Diagonal of the total-number operator."""
    return np.array([sum(s) for s in basis.states], dtype=float)


_MARGINAL_CACHE: dict = {}


def _marginal_index_pairs(basis: FockBasis, mode_index: int):
    """For each (n, n') occupation pair of one mode, the dense index pairs
    whose other-mode occupations coincide. Keyed by cutoff: bases with the
    same cutoff enumerate identically, so the table is shared."""
    key = (basis.n_cutoff, mode_index)
    hit = _MARGINAL_CACHE.get(key)
    if hit is not None:
        return hit
    groups: dict = {}
    for i, s in enumerate(basis.states):
        other = tuple(s[j] for j in range(3) if j != mode_index)
        groups.setdefault(other, []).append((s[mode_index], i))
    pairs: dict = {}
    for members in groups.values():
        for n, i in members:
            for m, j in members:
                pairs.setdefault((n, m), ([], []))
                pairs[(n, m)][0].append(i)
                pairs[(n, m)][1].append(j)
    table = {
        nm: (np.array(ii, dtype=np.intp), np.array(jj, dtype=np.intp))
        for nm, (ii, jj) in pairs.items()
    }
    _MARGINAL_CACHE[key] = table
    return table


def mode_marginals(rho: DensityMatrix | np.ndarray, basis: FockBasis | None = None):
    """Reduced single-mode matrices (rho_a, rho_b, rho_c), each of size
    (n_cutoff+1)^2, indexed by occupation."""
    if isinstance(rho, DensityMatrix):
        basis = rho.basis
        mat = rho.elements
    else:
        if basis is None:
            raise ValueError("raw matrix input needs an explicit basis")
        mat = np.asarray(rho)
    nmax = basis.n_cutoff + 1
    out = []
    for k in range(3):
        red = np.zeros((nmax, nmax), dtype=complex)
        for (n, m), (ii, jj) in _marginal_index_pairs(basis, k).items():
            red[n, m] = mat[ii, jj].sum()
        out.append(red)
    return out


def partial_trace(rho: DensityMatrix, keep) -> np.ndarray:
    """Reduced matrix over the kept modes, tracing the rest out.

    Keeping all three modes returns the matrix unchanged. For one or two
    kept modes the result axes run over occupations 0..n_cutoff, row-major
    in (a, b, c) order of the kept modes.
    """
    kept = [m for m in MODES if m in set(keep)]
    if not kept:
        raise ValueError("keep must name at least one mode")
    if len(kept) == 3:
        return rho.elements.copy()
    nmax = rho.basis.n_cutoff + 1
    kidx = [MODES.index(m) for m in kept]
    tidx = [j for j in range(3) if j not in kidx]
    if len(kidx) == 1:
        return mode_marginals(rho)[kidx[0]]
    t = tidx[0]
    dim = nmax ** 2
    out = np.zeros((dim, dim), dtype=complex)
    groups: dict = {}
    for i, s in enumerate(rho.basis.states):
        groups.setdefault(s[t], []).append(i)
    for members in groups.values():
        for i in members:
            si = rho.basis.states[i]
            r = si[kidx[0]] * nmax + si[kidx[1]]
            for j in members:
                sj = rho.basis.states[j]
                c = sj[kidx[0]] * nmax + sj[kidx[1]]
                out[r, c] += rho.elements[i, j]
    return out


def nonlocal_number_state(basis: FockBasis, n: int, theta: float,
                          c_occupation: int = 0) -> KetState:
    """Binomial n-quantum state of the symmetric photon mode
    (a + b e^{-i theta})/sqrt(2), with a fixed magnon occupation.

    The amplitude on |k, n-k, c_occupation> is
    2^{-n/2} sqrt(C(n, k)) e^{i (n-k) theta}.
    """
    if n < 0 or c_occupation < 0:
        raise ValueError("occupations must be non-negative")
    if n + c_occupation > basis.n_cutoff:
        raise ValueError(
            f"total occupation {n + c_occupation} exceeds cutoff {basis.n_cutoff}")
    v = np.zeros(basis.dim, dtype=complex)
    for k in range(n + 1):
        v[basis.index_of[(k, n - k, c_occupation)]] = (
            2.0 ** (-n / 2.0) * sqrt(comb(n, k)) * np.exp(1j * (n - k) * theta))
    return KetState(basis, v)


def product_state_of_marginals(rho: DensityMatrix, return_discarded: bool = False):
    """The product rho_a x rho_b x rho_c of the mode marginals, re-embedded
    in the truncated joint basis.

    Product components above the cutoff are dropped and the rest is
    renormalized; the dropped weight is reported on request so callers can
    tell when truncation bites.
    """
    ma, mb, mc = mode_marginals(rho)
    na = np.array([s[0] for s in rho.basis.states])
    nb = np.array([s[1] for s in rho.basis.states])
    nc = np.array([s[2] for s in rho.basis.states])
    out = (ma[np.ix_(na, na)] * mb[np.ix_(nb, nb)] * mc[np.ix_(nc, nc)])
    kept = complex(np.trace(out)).real
    if kept <= 0.0:
        raise ValueError("product state has no weight inside the cutoff")
    out = out / kept
    out = 0.5 * (out + out.conj().T)
    result = DensityMatrix(rho.basis, out)
    if return_discarded:
        return result, 1.0 - kept
    return result
