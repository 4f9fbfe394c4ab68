"""Curvature, Ricci tensor and scalar curvature of a connection on one-forms."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fuzzylc.calculus import OneForm, TensorSquare, TwoForm, d1, wedge1
from fuzzylc.koszul import Connection, Metric
from fuzzylc.linalg import DEFAULT_TOL
from fuzzylc.triple import EPS, SpectralTriple


class NonCentralRicci(ValueError):
    """Some Ricci coefficient is not a multiple of the identity."""


@dataclass(frozen=True)
class CurvatureTensor:
    """``R(e_j) = sum_pq e_p (x) f_q R[j, p, q]``."""

    R: np.ndarray  # (3, 3, 3, d, d)

    def on_basis(self, j: int) -> np.ndarray:
        return self.R[j]


def curvature(t: SpectralTriple, nabla: Connection) -> CurvatureTensor:
    """``R(e_j) = sum_p e_p (x) (sum_k omega_pk ^ omega_kj + d omega_pj)``."""
    omega = nabla.connection_forms()
    d = t.dimK
    R = np.zeros((3, 3, 3, d, d), dtype=complex)
    for j in range(3):
        for p in range(3):
            W = d1(t, OneForm(omega[p, j]))
            for k in range(3):
                W = W + wedge1(OneForm(omega[p, k]), OneForm(omega[k, j]))
            R[j, p] = W.coords
    return CurvatureTensor(R)


def curvature_parts(t: SpectralTriple, nabla: Connection) -> tuple[np.ndarray, np.ndarray]:
    """``(sum_k omega_pk ^ omega_kj, d omega_pj)`` as ``[j, p]``-indexed two-form coordinates."""
    omega = nabla.connection_forms()
    d = t.dimK
    quad = np.zeros((3, 3, 3, d, d), dtype=complex)
    lin = np.zeros_like(quad)
    for j in range(3):
        for p in range(3):
            lin[j, p] = d1(t, OneForm(omega[p, j])).coords
            for k in range(3):
                quad[j, p] += wedge1(OneForm(omega[p, k]), OneForm(omega[k, j])).coords
    return quad, lin


def evhat_wedge(j: int, k: int, m: int, d: int = 1) -> OneForm:
    """``evhat((e_j ^ e_k) (x) psi_m) = e_j delta_mk - e_k delta_mj``."""
    c = np.zeros((3, d, d), dtype=complex)
    c[j] += (m == k) * np.eye(d)
    c[k] -= (m == j) * np.eye(d)
    return OneForm(c)


def evhat(W: TwoForm, m: int) -> OneForm:
    """``evhat(W (x) psi_m)``; on ``f_q c`` this is ``sum_a eps_qam e_a c``."""
    return OneForm(np.einsum("qa,qbc->abc", EPS[:, :, m], W.coords))


def ricci(R: CurvatureTensor) -> TensorSquare:
    """``(id (x) evhat)(R)`` with ``R = sum_j R(e_j) (x) psi_j``."""
    d = R.R.shape[-1]
    out = np.zeros((3, 3, d, d), dtype=complex)
    for j in range(3):
        for p in range(3):
            out[p] += evhat(TwoForm(R.R[j, p]), j).coords
    return TensorSquare(out)


def ricci_scalars(Ric: TensorSquare, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Scalar ``r_kj`` with ``Ric = sum e_k (x) e_j r_kj``; raises :class:`NonCentralRicci`."""
    c = Ric.coords
    d = c.shape[-1]
    r = np.trace(c, axis1=-2, axis2=-1) / d
    dev = np.max(np.abs(c - r[..., None, None] * np.eye(d)), initial=0.0)
    scale = max(1.0, float(np.max(np.abs(c), initial=0.0)))
    if dev > tol * scale:
        raise NonCentralRicci(f"Ricci coefficient deviates from scalar by {dev:.3e}")
    return r


def scalar_curvature(Ric: TensorSquare, m: Metric, tol: float = DEFAULT_TOL) -> complex:
    r = ricci_scalars(Ric, tol)
    return complex(np.sum(r * m.G))
