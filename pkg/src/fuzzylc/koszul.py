"""Metrics, connections and the Koszul solver for a free module with central basis.

Everything here is specialised to ``E`` free of rank 3 on central ``e_k``
over an algebra whose center is ``C . 1``. A bilinear metric is then a
constant symmetric matrix ``G[k, j] = g(e_k (x) e_j)`` and the Levi-Civita
connection is found by solving, for every ``c``, the 9x9 system

    2 g2((e_b (x) e_a) (x) nabla(e_c)) = psi_{e_a, e_b}(e_c)

over all ``(a, b)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fuzzylc.calculus import (
    OneForm,
    TensorSquare,
    TwoForm,
    d0,
    d1,
    d_basis,
    tensor,
    wedge_tensor,
)
from fuzzylc.linalg import DEFAULT_TOL, SingularSystem, numerical_rank
from fuzzylc.triple import EPS, SpectralTriple

SOLVER_RANK_TOL = 1e-8


class MetricError(ValueError):
    """Metric matrix has the wrong shape or is not symmetric."""


@dataclass(frozen=True)
class Metric:
    G: np.ndarray

    def __post_init__(self):
        G = np.asarray(self.G, dtype=complex)
        if G.shape != (3, 3):
            raise MetricError(f"metric must be 3x3, got {G.shape}")
        object.__setattr__(self, "G", G)

    @classmethod
    def canonical(cls) -> Metric:
        return cls(np.eye(3))

    def validate(self, tol: float = DEFAULT_TOL) -> Metric:
        scale = max(1.0, float(np.max(np.abs(self.G))))
        if np.max(np.abs(self.G - self.G.T)) > tol * scale:
            raise MetricError("metric is not symmetric")
        if numerical_rank(self.G, SOLVER_RANK_TOL) < 3:
            raise SingularSystem("metric is degenerate")
        return self


@dataclass(frozen=True)
class Connection:
    """``nabla(e_c) = sum_jk e_j (x) e_k coeffs[c, j, k]``.

    Coefficients are algebra elements so that non-central connections can
    be represented; Levi-Civita connections have scalar coefficients.
    """

    coeffs: np.ndarray  # (3, 3, 3, d, d)

    @classmethod
    def from_christoffel(cls, gamma: np.ndarray, d: int) -> Connection:
        gamma = np.asarray(gamma, dtype=complex)
        return cls(np.einsum("cjk,ab->cjkab", gamma, np.eye(d, dtype=complex)))

    @property
    def dim(self) -> int:
        return self.coeffs.shape[-1]

    def on_basis(self, c: int) -> TensorSquare:
        return TensorSquare(self.coeffs[c])

    def __call__(self, t: SpectralTriple, x: OneForm) -> TensorSquare:
        """Right Leibniz extension: ``sum nabla(e_c) a_c + sum e_c (x) d a_c``."""
        a = x.coords
        out = np.einsum("cjkab,cbe->jkae", self.coeffs, a)
        for c in range(3):
            out[c] += d0(t, a[c]).coords
        return TensorSquare(out)

    def is_scalar(self, tol: float = DEFAULT_TOL) -> bool:
        return _scalar_part(self.coeffs, tol) is not None

    def christoffel(self, tol: float = DEFAULT_TOL) -> np.ndarray:
        """``Gamma[c, j, k]``; raises if any coefficient is not a multiple of 1."""
        g = _scalar_part(self.coeffs, tol)
        if g is None:
            raise ValueError("connection coefficients are not scalar")
        return g

    def connection_forms(self) -> np.ndarray:
        """``omega[p, k]`` as one-form coordinates, ``nabla(e_k) = sum_p e_p (x) omega_pk``.

        Shape ``(3, 3, 3, d, d)`` indexed ``[p, k, q]``.
        """
        return np.transpose(self.coeffs, (1, 0, 2, 3, 4))


def _scalar_part(coeffs: np.ndarray, tol: float) -> np.ndarray | None:
    d = coeffs.shape[-1]
    diag = np.trace(coeffs, axis1=-2, axis2=-1) / d
    resid = coeffs - diag[..., None, None] * np.eye(d)
    scale = max(1.0, float(np.max(np.abs(coeffs), initial=0.0)))
    if np.max(np.abs(resid), initial=0.0) > tol * scale:
        return None
    return diag


def sigma_map(T: TensorSquare) -> TensorSquare:
    return TensorSquare(np.swapaxes(T.coords, 0, 1))


def p_sym(T: TensorSquare) -> TensorSquare:
    return TensorSquare(0.5 * (T.coords + sigma_map(T).coords))


def q_inverse(W: TwoForm) -> TensorSquare:
    """Antisymmetric lift of ``W``: the unique ``beta`` in ``F`` with ``^ beta = W``."""
    return TensorSquare(0.5 * np.einsum("jkm,mab->jkab", EPS, W.coords))


def g_pair(m: Metric, x: OneForm, y: OneForm) -> np.ndarray:
    """``g(x (x) y) = sum G_jk x_j y_k``."""
    return np.einsum("jk,jab,kbc->ac", m.G, x.coords, y.coords)


def g_tensor(m: Metric, T: TensorSquare) -> np.ndarray:
    return np.einsum("jk,jkab->ab", m.G, T.coords)


def g2_pair(m: Metric, S: TensorSquare, T: TensorSquare) -> np.ndarray:
    """``g2((e (x) f) (x) (e' (x) f')) = g(e (x) g(f (x) e') f')``."""
    G = m.G
    return np.einsum("kp,jq,jkab,pqbc->ac", G, G, S.coords, T.coords)


def dual_pair(m: Metric, i: int, j: int, T: TensorSquare) -> np.ndarray:
    """``(g(e_i (x) -) (x) g(e_j (x) -))(T)``."""
    return np.einsum("p,q,pqab->ab", m.G[i], m.G[j], T.coords)


def g2_gram(m: Metric) -> np.ndarray:
    """9x9 matrix of ``g2`` on the basis tensors ``e_j (x) e_k``."""
    return np.einsum("kp,jq->jkpq", m.G, m.G).reshape(9, 9)


def grassmann(t: SpectralTriple, x: OneForm) -> TensorSquare:
    """``sum_k e_k (x) d a_k``; vanishes on the basis."""
    out = np.zeros((3, 3) + x.coords.shape[1:], dtype=complex)
    for k in range(3):
        out[k] = d0(t, x.coords[k]).coords
    return TensorSquare(out)


def grassmann_connection(d: int) -> Connection:
    return Connection(np.zeros((3, 3, 3, d, d), dtype=complex))


def nabla0_connection(t: SpectralTriple) -> Connection:
    """``nabla_0 = nabla^Gr - Q^{-1}(T_{nabla^Gr})`` on the basis."""
    d = t.dimK
    coeffs = np.zeros((3, 3, 3, d, d), dtype=complex)
    for c in range(3):
        e_c = OneForm.basis(c, d)
        torsion_gr = wedge_tensor(grassmann(t, e_c)) + d1(t, e_c)
        coeffs[c] = (grassmann(t, e_c) - q_inverse(torsion_gr)).coords
    return Connection(coeffs)


def nabla0(t: SpectralTriple, x: OneForm) -> TensorSquare:
    return nabla0_connection(t)(t, x)


def _zero_one_form_pairing(m: Metric, t: SpectralTriple, k: int, value: complex) -> complex:
    """``g(e_k (x) d(value . 1))`` as a scalar; always 0 since ``d`` kills scalars."""
    d = t.dimK
    dg = d0(t, value * np.eye(d))
    pairing = g_pair(m, OneForm.basis(k, d), dg)
    return complex(np.trace(pairing) / d)


def _antisym_nabla0(x: int) -> np.ndarray:
    """Scalar coefficients of ``(1 - sigma) nabla_0(e_x)``.

    On a basis element ``nabla^Gr`` vanishes, so ``nabla_0(e_x)`` is minus the
    antisymmetric lift of ``d e_x``; the result does not depend on ``N``.
    """
    T = -q_inverse(d_basis(x, 1)).coords[..., 0, 0]
    return T - T.T


def psi(m: Metric, a: int, b: int, c: int, t: SpectralTriple | None = None) -> complex:
    """``psi_{e_a, e_b}(e_c)``, the right-hand side of the Koszul formula.

    The three ``g(. (x) dg(. (x) .))`` terms are evaluated when a triple is
    given; for constant metrics they are zero.
    """
    G = m.G

    def pair(i: int, j: int, x: int) -> complex:
        return complex(np.einsum("p,q,pq->", G[i], G[j], _antisym_nabla0(x)))

    value = 0.0j
    if t is not None:
        value += _zero_one_form_pairing(m, t, a, G[c, b])
        value -= _zero_one_form_pairing(m, t, c, G[b, a])
        value += _zero_one_form_pairing(m, t, b, G[a, c])
    value -= pair(c, b, a)
    value += pair(a, b, c)
    value -= pair(c, a, b)
    return value


def koszul_system(m: Metric) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(A, rhs)`` with ``A`` 9x9 and ``rhs`` of shape ``(9, 3)``.

    Row ``(a, b)`` and column ``(p, q)`` of ``A`` is ``2 G_ap G_bq``; column
    ``c`` of ``rhs`` is ``psi_{e_a, e_b}(e_c)``.
    """
    A = 2.0 * np.kron(m.G, m.G)
    rhs = np.array(
        [[psi(m, a, b, c) for c in range(3)] for a in range(3) for b in range(3)]
    )
    return A, rhs


def koszul_rank(m: Metric) -> int:
    A, _ = koszul_system(m)
    return numerical_rank(A, SOLVER_RANK_TOL)


def levi_civita_christoffel(m: Metric) -> np.ndarray:
    """Christoffel symbols ``Gamma[c, p, q]`` of the Levi-Civita connection."""
    A, rhs = koszul_system(m)
    if numerical_rank(A, SOLVER_RANK_TOL) < 9:
        raise SingularSystem("Koszul system is singular; metric is degenerate")
    sol = np.linalg.solve(A, rhs)  # (9, 3), columns independent per c
    return sol.T.reshape(3, 3, 3)


def levi_civita(t: SpectralTriple, m: Metric) -> Connection:
    return Connection.from_christoffel(levi_civita_christoffel(m), t.dimK)


# --- defect checkers ---------------------------------------------------------

def torsion_defect(t: SpectralTriple, nabla: Connection) -> list[TwoForm]:
    d = t.dimK
    return [
        wedge_tensor(nabla.on_basis(k)) + d1(t, OneForm.basis(k, d)) for k in range(3)
    ]


def _pi0(m: Metric, nabla: Connection, k: int, j: int) -> OneForm:
    """``(g (x) id)(sigma_23(nabla(e_k) (x) e_j) + e_k (x) nabla(e_j))``."""
    G = m.G
    C = nabla.coeffs
    coords = np.einsum("p,pqab->qab", G[:, j], C[k]) + np.einsum("p,pqab->qab", G[k], C[j])
    return OneForm(coords)


def compat_defect_center(t: SpectralTriple, m: Metric, nabla: Connection) -> list[list[OneForm]]:
    d = t.dimK
    out = []
    for k in range(3):
        row = []
        for j in range(3):
            row.append(_pi0(m, nabla, k, j) - d0(t, m.G[k, j] * np.eye(d)))
        out.append(row)
    return out


def full_compat_defect(
    t: SpectralTriple, m: Metric, nabla: Connection, x: OneForm, y: OneForm
) -> OneForm:
    """``Pi_g(nabla)(x (x) y) - d(g(x (x) y))`` via the canonical extension."""
    d = t.dimK
    xy = tensor(x, y).coords
    out = OneForm.zero(d)
    for i in range(3):
        for j in range(3):
            c = xy[i, j]
            out = out + _pi0(m, nabla, i, j).rmul(c) + d0(t, c).scale(m.G[i, j])
    return out - d0(t, g_pair(m, x, y))


def bimodule_defect(
    t: SpectralTriple, nabla: Connection, a: np.ndarray, x: OneForm
) -> TensorSquare:
    """``nabla(a x) - a nabla(x) - sigma(d a (x) x)``."""
    return nabla(t, x.lmul(a)) - nabla(t, x).lmul(a) - sigma_map(tensor(d0(t, a), x))


def eval_two_form(m: Metric, i: int, j: int, W: TwoForm) -> np.ndarray:
    """``(phi (x) psi) W = 2 (phi (x) psi) beta`` with ``phi = g(e_i (x) -)``, ``psi = g(e_j (x) -)``."""
    return 2.0 * dual_pair(m, i, j, q_inverse(W))


def antisymmetrized_pairing(m: Metric, nabla: Connection, c: int, eta: int, theta: int) -> np.ndarray:
    """``g(eta (x) w0) g(theta (x) w1) - g(eta (x) w1) g(theta (x) w0)`` for ``nabla(e_c) = w0 (x) w1``."""
    T = nabla.on_basis(c)
    return dual_pair(m, eta, theta, T - sigma_map(T))


def max_abs(forms) -> float:
    """Largest coefficient modulus over a (nested) collection of forms."""
    best = 0.0
    stack = [forms]
    while stack:
        f = stack.pop()
        if isinstance(f, (list, tuple)):
            stack.extend(f)
        elif hasattr(f, "coords"):
            best = max(best, float(np.max(np.abs(f.coords), initial=0.0)))
        else:
            best = max(best, float(np.max(np.abs(f), initial=0.0)))
    return best
