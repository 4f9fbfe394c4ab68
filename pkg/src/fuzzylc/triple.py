"""The truncated fuzzy-sphere spectral triple.

``K_N`` is the direct sum of the su(2) irreps of dimension 1, 3, ..., 2N+1,
``A_N = B(K_N)`` acts on ``H_N = K_N (x) C^2`` and
``D = sum_k X_k (x) sigma_k`` with ``sigma_k = i tau_k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fuzzylc.linalg import block_diag, commutator, kron

# Levi-Civita symbol, EPS[0, 1, 2] = 1.
EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPS[_i, _j, _k] = 1.0
    EPS[_i, _k, _j] = -1.0

TAU = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
SIGMA = 1j * TAU


@dataclass(frozen=True)
class Su2Irrep:
    """Irrep of su(2) on ``C^(n+1)`` with skew-hermitian generators.

    ``J[k]`` satisfy ``[J_k, J_l] = sum_m eps_klm J_m``.
    """

    two_j: int
    J: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.two_j + 1


def irrep_su2(n: int) -> Su2Irrep:
    if n < 0:
        raise ValueError("n must be nonnegative")
    j = n / 2.0
    m = j - np.arange(n + 1)  # L_z eigenvalues, descending
    # <m+1| L_+ |m> = sqrt(j(j+1) - m(m+1))
    lplus = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    lminus = lplus.conj().T
    lx = 0.5 * (lplus + lminus)
    ly = -0.5j * (lplus - lminus)
    lz = np.diag(m).astype(complex)
    # [L_x, L_y] = i L_z, so J_k = -i L_k closes with +eps.
    J = -1j * np.stack([lx, ly, lz])
    return Su2Irrep(two_j=n, J=J)


@dataclass(frozen=True)
class SpectralTriple:
    N: int
    X: np.ndarray = field(repr=False)  # (3, dimK, dimK)
    D: np.ndarray = field(repr=False)  # (2 dimK, 2 dimK)
    orientation: int = 1
    blocks: tuple[int, ...] = ()

    @property
    def dimK(self) -> int:
        return self.X.shape[1]

    @property
    def dimA(self) -> int:
        return self.dimK ** 2

    @property
    def sigma(self) -> np.ndarray:
        return SIGMA

    def rep(self, a: np.ndarray) -> np.ndarray:
        """Action of ``a`` in ``A_N`` on ``H_N``."""
        return kron(a, np.eye(2))


def build_triple(N: int, orientation: int = 1) -> SpectralTriple:
    """Build ``(A_N, H_N, D_N)``.

    ``orientation=-1`` negates every ``X_k``; it exists only as a fallback
    for the opposite sign convention of the su(2) relations.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    irreps = [irrep_su2(2 * l) for l in range(N + 1)]
    X = orientation * np.stack(
        [block_diag([r.J[k] for r in irreps]) for k in range(3)]
    )
    D = sum(kron(X[k], SIGMA[k]) for k in range(3))
    return SpectralTriple(
        N=N, X=X, D=D, orientation=orientation, blocks=tuple(r.dim for r in irreps)
    )


def delta(t: SpectralTriple, k: int, a: np.ndarray) -> np.ndarray:
    """``delta_k(a) = [X_k, a]`` with ``k`` in ``0..2``."""
    return commutator(t.X[k], a)


def deltas(t: SpectralTriple, a: np.ndarray) -> np.ndarray:
    """All three derivations at once, shape ``(3, dimK, dimK)``."""
    return t.X @ a - a @ t.X


def dirac_commutator(t: SpectralTriple, a: np.ndarray) -> np.ndarray:
    """Coordinates of ``[D, a]`` in the basis ``1 (x) sigma_k``."""
    return deltas(t, a)


def one_form_operator(coords: np.ndarray) -> np.ndarray:
    """``sum_k a_k (x) sigma_k`` for coordinates ``(a_1, a_2, a_3)``."""
    return sum(kron(coords[k], SIGMA[k]) for k in range(3))


def triple_residuals(t: SpectralTriple) -> dict[str, float]:
    """Max-abs residuals of the structural identities of ``t``."""
    X = t.X
    comm = 0.0
    for k in range(3):
        for l in range(3):
            lhs = commutator(X[k], X[l])
            rhs = np.einsum("m,mij->ij", EPS[k, l], X)
            comm = max(comm, float(np.max(np.abs(lhs - rhs), initial=0.0)))
    skew = max(float(np.max(np.abs(X[k] + X[k].conj().T), initial=0.0)) for k in range(3))
    selfadj = float(np.max(np.abs(t.D - t.D.conj().T), initial=0.0))
    I = np.eye(2 * t.dimK)
    cliff = 0.0
    for j in range(3):
        for k in range(3):
            sj = kron(np.eye(t.dimK), SIGMA[j])
            sk = kron(np.eye(t.dimK), SIGMA[k])
            r = sj @ sk + sk @ sj + 2.0 * (j == k) * I
            cliff = max(cliff, float(np.max(np.abs(r), initial=0.0)))
    return {
        "commutation": comm,
        "skew_hermitian": skew,
        "dirac_self_adjoint": selfadj,
        "clifford": cliff,
    }
