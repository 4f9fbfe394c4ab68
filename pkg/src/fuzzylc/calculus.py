"""One-forms, two-forms and the differential of the fuzzy-sphere calculus.

The one-forms are free on the central basis ``e_k = 1 (x) sigma_k`` and the
two-forms on ``f_m = 1/2 sum eps_mjk e_j ^ e_k``. Forms are stored by their
algebra-valued coefficients, written to the right of the basis. Because the
basis is central, left multiplication by ``a`` just left-multiplies every
coefficient.

Besides the closed-form differential this module carries a brute-force
oracle: it works with honest operators on ``H_N``, builds the universal
one-forms ``sum a_j [D, b_j]`` from matrix units, computes the junk forms
and evaluates ``d`` as the quotient-by-junk differential.

Axis indices are 0-based throughout (``e_0, e_1, e_2`` in code are
``e_1, e_2, e_3`` in the usual notation).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fuzzylc.linalg import DEFAULT_TOL, kron, nullspace_basis, numerical_rank, orthonormal_span
from fuzzylc.triple import EPS, SIGMA, SpectralTriple, deltas, one_form_operator

DEFAULT_ORACLE_CAP = 2

# (j, k) index pairs with j < k used for the two-form operator basis.
PAIRS = ((0, 1), (1, 2), (0, 2))


class FeasibilityError(RuntimeError):
    """The brute-force oracle was asked for a cutoff above its cap."""


class RepresentationError(RuntimeError):
    """A one-form could not be written as ``sum a_j [D, b_j]``."""


def _identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


@dataclass(frozen=True)
class OneForm:
    coords: np.ndarray  # (3, d, d): sum_k e_k coords[k]

    @classmethod
    def zero(cls, d: int) -> OneForm:
        return cls(np.zeros((3, d, d), dtype=complex))

    @classmethod
    def basis(cls, k: int, d: int, coeff: np.ndarray | None = None) -> OneForm:
        c = np.zeros((3, d, d), dtype=complex)
        c[k] = _identity(d) if coeff is None else coeff
        return cls(c)

    @property
    def dim(self) -> int:
        return self.coords.shape[-1]

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(self.coords + other.coords)

    def __sub__(self, other: OneForm) -> OneForm:
        return OneForm(self.coords - other.coords)

    def __neg__(self) -> OneForm:
        return OneForm(-self.coords)

    def scale(self, z: complex) -> OneForm:
        return OneForm(z * self.coords)

    def rmul(self, a: np.ndarray) -> OneForm:
        """``x . a``"""
        return OneForm(self.coords @ a)

    def lmul(self, a: np.ndarray) -> OneForm:
        """``a . x``"""
        return OneForm(a @ self.coords)

    def operator(self) -> np.ndarray:
        return one_form_operator(self.coords)


@dataclass(frozen=True)
class TwoForm:
    coords: np.ndarray  # (3, d, d): sum_m f_m coords[m]

    @classmethod
    def zero(cls, d: int) -> TwoForm:
        return cls(np.zeros((3, d, d), dtype=complex))

    @classmethod
    def basis(cls, m: int, d: int) -> TwoForm:
        c = np.zeros((3, d, d), dtype=complex)
        c[m] = _identity(d)
        return cls(c)

    def __add__(self, other: TwoForm) -> TwoForm:
        return TwoForm(self.coords + other.coords)

    def __sub__(self, other: TwoForm) -> TwoForm:
        return TwoForm(self.coords - other.coords)

    def __neg__(self) -> TwoForm:
        return TwoForm(-self.coords)

    def scale(self, z: complex) -> TwoForm:
        return TwoForm(z * self.coords)

    def rmul(self, a: np.ndarray) -> TwoForm:
        return TwoForm(self.coords @ a)

    def lmul(self, a: np.ndarray) -> TwoForm:
        return TwoForm(a @ self.coords)

    def operator(self) -> np.ndarray:
        """Representative in ``A_N (x) M_2`` of the class modulo junk."""
        d = self.coords.shape[-1]
        out = np.zeros((2 * d, 2 * d), dtype=complex)
        for j, k in PAIRS:
            # e_j ^ e_k is represented by 1 (x) sigma_j sigma_k
            coeff = sum(EPS[j, k, m] * self.coords[m] for m in range(3))
            out += kron(coeff, SIGMA[j] @ SIGMA[k])
        return out


@dataclass(frozen=True)
class TensorSquare:
    coords: np.ndarray  # (3, 3, d, d): sum_jk e_j (x) e_k coords[j, k]

    @classmethod
    def zero(cls, d: int) -> TensorSquare:
        return cls(np.zeros((3, 3, d, d), dtype=complex))

    @classmethod
    def basis(cls, j: int, k: int, d: int) -> TensorSquare:
        c = np.zeros((3, 3, d, d), dtype=complex)
        c[j, k] = _identity(d)
        return cls(c)

    @classmethod
    def from_scalars(cls, s: np.ndarray, d: int) -> TensorSquare:
        return cls(np.einsum("jk,ab->jkab", np.asarray(s, dtype=complex), _identity(d)))

    def __add__(self, other: TensorSquare) -> TensorSquare:
        return TensorSquare(self.coords + other.coords)

    def __sub__(self, other: TensorSquare) -> TensorSquare:
        return TensorSquare(self.coords - other.coords)

    def __neg__(self) -> TensorSquare:
        return TensorSquare(-self.coords)

    def scale(self, z: complex) -> TensorSquare:
        return TensorSquare(z * self.coords)

    def rmul(self, a: np.ndarray) -> TensorSquare:
        return TensorSquare(self.coords @ a)

    def lmul(self, a: np.ndarray) -> TensorSquare:
        return TensorSquare(a @ self.coords)


def tensor(x: OneForm, y: OneForm) -> TensorSquare:
    """``x (x)_A y``; coefficients of ``x`` slide past the central ``e_k``."""
    return TensorSquare(np.einsum("jab,kbc->jkac", x.coords, y.coords))


def d0(t: SpectralTriple, a: np.ndarray) -> OneForm:
    return OneForm(deltas(t, a))


def wedge1(x: OneForm, y: OneForm) -> TwoForm:
    return wedge_tensor(tensor(x, y))


def wedge_tensor(T: TensorSquare) -> TwoForm:
    return TwoForm(np.einsum("jkm,jkab->mab", EPS, T.coords))


def d_basis(m: int, d: int) -> TwoForm:
    """``d e_m = -f_m``."""
    return -TwoForm.basis(m, d)


def d1(t: SpectralTriple, x: OneForm) -> TwoForm:
    """``d(sum e_k a_k) = sum (d e_k) a_k - sum e_k ^ d a_k``."""
    a = x.coords
    out = -a.copy()
    for k in range(3):
        out -= np.einsum("lm,lab->mab", EPS[k], deltas(t, a[k]))
    return TwoForm(out)


# --- brute-force junk / differential oracle -------------------------------

@dataclass(frozen=True)
class _UniversalForms:
    phi: np.ndarray  # (dimA**2, h*h) rows: E_p [D, E_q]
    psi: np.ndarray  # (dimA**2, h*h) rows: [D, E_p] [D, E_q]


_CACHE: dict[tuple, object] = {}


def clear_cache() -> None:
    """Drop cached universal forms and junk bases."""
    _CACHE.clear()


def _check_cap(t: SpectralTriple, cap: int) -> None:
    if t.N > cap:
        raise FeasibilityError(f"N={t.N} exceeds oracle cap {cap}")


def _matrix_units(d: int) -> np.ndarray:
    return np.eye(d * d, dtype=complex).reshape(d * d, d, d)


def _universal(t: SpectralTriple) -> _UniversalForms:
    key = ("universal", t.N, t.orientation)
    if key not in _CACHE:
        d = t.dimK
        h = 2 * d
        R = np.einsum("pab,ij->paibj", _matrix_units(d), np.eye(2)).reshape(d * d, h, h)
        C = t.D @ R - R @ t.D
        phi = np.einsum("aij,bjk->abik", R, C).reshape(d ** 4, h * h)
        psi = np.einsum("aij,bjk->abik", C, C).reshape(d ** 4, h * h)
        _CACHE[key] = _UniversalForms(phi, psi)
    return _CACHE[key]


def one_form_span_check(
    t: SpectralTriple, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ORACLE_CAP
) -> int:
    """Dimension of ``span{ a [D, b] }`` over matrix units ``a, b``."""
    _check_cap(t, cap)
    return numerical_rank(_universal(t).phi, tol)


def junk_space(
    t: SpectralTriple, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ORACLE_CAP
) -> list[np.ndarray]:
    """Orthonormal basis of the junk two-forms, as ``2 dimK`` square operators.

    Junk is ``{ sum [D,a_j][D,b_j] : sum a_j [D,b_j] = 0 }``. With the stacked
    rows ``(phi | psi)`` of all universal forms, junk is the set of ``w`` such
    that ``(0, w)`` lies in the row space.
    """
    _check_cap(t, cap)
    key = ("junk", t.N, t.orientation, tol)
    if key not in _CACHE:
        u = _universal(t)
        n = u.phi.shape[1]
        h = 2 * t.dimK
        V = orthonormal_span(np.hstack([u.phi, u.psi]), tol)
        if V.shape[0] == 0:
            basis = []
        else:
            Z = nullspace_basis(V[:, :n].T, tol)
            if Z:
                W = np.stack(Z) @ V[:, n:]
                basis = [w.reshape(h, h) for w in orthonormal_span(W, tol)]
            else:
                basis = []
        _CACHE[key] = basis
    return list(_CACHE[key])


def junk_identification_residual(
    t: SpectralTriple, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ORACLE_CAP
) -> float:
    """Max distance between the junk span and ``{Y (x) 1}``, in both directions."""
    basis = junk_space(t, tol, cap)
    d = t.dimK
    ys = np.stack([kron(E, np.eye(2)).ravel() / np.sqrt(2) for E in _matrix_units(d)])
    if not basis:
        return 0.0 if t.N == 0 else float("inf")
    J = np.stack([b.ravel() for b in basis])
    res = 0.0
    # junk -> Y(x)1
    proj = (J @ ys.conj().T) @ ys
    res = max(res, float(np.max(np.linalg.norm(J - proj, axis=1))))
    # Y(x)1 -> junk
    proj = (ys @ J.conj().T) @ J
    res = max(res, float(np.max(np.linalg.norm(ys - proj, axis=1))))
    return res


def two_form_operator_basis(d: int) -> list[np.ndarray]:
    """``kron(E_pq, sigma_j sigma_k)`` for ``j < k`` in :data:`PAIRS` order."""
    return [kron(E, SIGMA[j] @ SIGMA[k]) for j, k in PAIRS for E in _matrix_units(d)]


def two_form_space_check(
    t: SpectralTriple, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ORACLE_CAP
) -> tuple[int, int]:
    """``(dim span of two-form basis, dim of its intersection with junk)``."""
    basis = two_form_operator_basis(t.dimK)
    B = np.stack([b.ravel() for b in basis])
    junk = junk_space(t, tol, cap)
    dim_b = numerical_rank(B, tol)
    if not junk:
        return dim_b, 0
    J = np.stack([j.ravel() for j in junk])
    inter = dim_b + len(junk) - numerical_rank(np.vstack([B, J]), tol)
    return dim_b, inter


@dataclass(frozen=True)
class OracleResult:
    two_form: TwoForm
    junk_part: np.ndarray  # operator on H_N removed as junk
    representation_residual: float
    decomposition_residual: float


def d_oracle_full(
    t: SpectralTriple,
    x: OneForm,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_ORACLE_CAP,
) -> OracleResult:
    """Quotient-by-junk differential of ``x``, computed from operators."""
    _check_cap(t, cap)
    u = _universal(t)
    d = t.dimK
    h = 2 * d
    target = x.operator().ravel()
    c, *_ = np.linalg.lstsq(u.phi.T, target, rcond=None)
    scale = max(1.0, float(np.linalg.norm(target)))
    rep_res = float(np.linalg.norm(u.phi.T @ c - target))
    if rep_res > 1e-8 * scale:
        raise RepresentationError(f"one-form not in span (residual {rep_res:.3e})")
    w = u.psi.T @ c

    junk = junk_space(t, tol, cap)
    two = two_form_operator_basis(d)
    cols = [j.ravel() for j in junk] + [b.ravel() for b in two]
    B = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(B, w, rcond=None)
    dec_res = float(np.linalg.norm(B @ coef - w))
    nj = len(junk)
    junk_part = (B[:, :nj] @ coef[:nj]).reshape(h, h) if nj else np.zeros((h, h), dtype=complex)
    Y = coef[nj:].reshape(len(PAIRS), d, d)
    out = np.zeros((3, d, d), dtype=complex)
    for (j, k), y in zip(PAIRS, Y):
        # e_j ^ e_k = sum_m eps_jkm f_m
        for m in range(3):
            out[m] += EPS[j, k, m] * y
    return OracleResult(TwoForm(out), junk_part, rep_res, dec_res)


def d_oracle(
    t: SpectralTriple, x: OneForm, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ORACLE_CAP
) -> TwoForm:
    return d_oracle_full(t, x, tol, cap).two_form


def de_oracle(
    t: SpectralTriple, m: int, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ORACLE_CAP
) -> TwoForm:
    """``d e_m`` evaluated by the junk-quotient oracle."""
    return d_oracle(t, OneForm.basis(m, t.dimK), tol, cap)


def detect_orientation(tol: float = DEFAULT_TOL) -> int:
    """Return the ``orientation`` for which ``d e_m = -f_m`` at ``N = 1``."""
    from fuzzylc.triple import build_triple

    t = build_triple(1)
    de = de_oracle(t, 0, tol).coords
    expected = d_basis(0, t.dimK).coords
    if np.allclose(de, expected, atol=1e-8):
        return 1
    if np.allclose(de, -expected, atol=1e-8):
        return -1
    raise RuntimeError("d e_1 is neither -f_1 nor +f_1")
