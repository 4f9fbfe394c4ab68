"""Acceptance criteria, each checked at its stated tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the pytest
terminal summary. Run standalone with ``python tests/test_acceptance.py``.
"""
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_element, random_metric
from fuzzylc.calculus import (
    OneForm,
    TensorSquare,
    TwoForm,
    clear_cache,
    d1,
    de_oracle,
    junk_identification_residual,
    junk_space,
    one_form_span_check,
)
from fuzzylc.curvature import curvature, curvature_parts, ricci, ricci_scalars, scalar_curvature
from fuzzylc.koszul import (
    Metric,
    antisymmetrized_pairing,
    bimodule_defect,
    compat_defect_center,
    full_compat_defect,
    g2_gram,
    g_tensor,
    koszul_rank,
    levi_civita,
    levi_civita_christoffel,
    max_abs,
    nabla0_connection,
    p_sym,
    sigma_map,
    torsion_defect,
)
from fuzzylc.linalg import commutator
from fuzzylc.triple import EPS, build_triple, delta


def record(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_connection_forms():
    worst, elapsed = 0.0, 0.0
    for N in (1, 2):
        start = time.perf_counter()
        t = build_triple(N)
        nabla = levi_civita(t, Metric.canonical())
        elapsed = max(elapsed, time.perf_counter() - start)
        assert nabla.is_scalar()
        worst = max(worst, float(np.max(np.abs(nabla.christoffel() - 0.5 * EPS))))
        omega = nabla.connection_forms()
        expected = -0.5 * np.einsum("jkl,ab->jklab", EPS, np.eye(t.dimK))
        worst = max(worst, float(np.max(np.abs(omega - expected))))
    record("1 connection one-forms", worst < 1e-12 and elapsed < 1.0, f"max err {worst:.2e}, {elapsed:.3f} s")


@pytest.fixture(scope="module")
def canonical_ricci():
    t = build_triple(1)
    m = Metric.canonical()
    return m, ricci(curvature(t, levi_civita(t, m)))


def test_criterion_2a_ricci(canonical_ricci):
    _, Ric = canonical_ricci
    err = float(np.max(np.abs(ricci_scalars(Ric) - 0.5 * np.eye(3))))
    record("2a Ricci = delta/2", err < 1e-12, f"max err {err:.2e}")


def test_criterion_2b_scalar_curvature(canonical_ricci):
    m, Ric = canonical_ricci
    scal = scalar_curvature(Ric, m)
    err = abs(scal - 0.75)
    record("2b Scal = 0.75", err < 1e-12, f"Scal = {scal.real:.12g}, |Scal - 0.75| = {err:.2e}")


def test_criterion_3_curvature():
    t = build_triple(1)
    nabla = levi_civita(t, Metric.canonical())
    I = np.eye(t.dimK)
    R = curvature(t, nabla).R
    err_r = float(np.max(np.abs(R - np.einsum("jpq,ab->jpqab", -0.25 * EPS, I))))
    quad, lin = curvature_parts(t, nabla)
    err_q = float(np.max(np.abs(quad - np.einsum("jpq,ab->jpqab", 0.25 * EPS, I))))
    err_l = float(np.max(np.abs(lin - np.einsum("jpq,ab->jpqab", -0.5 * EPS, I))))
    ok = max(err_r, err_q, err_l) < 1e-12
    record("3 curvature tensor", ok, f"R {err_r:.2e}, w^w {err_q:.2e}, dw {err_l:.2e}")


def test_criterion_4_calculus_identification():
    clear_cache()
    details, ok = [], True
    for N, span_expected, junk_expected in ((1, 48, 16), (2, 243, 81)):
        start = time.perf_counter()
        t = build_triple(N)
        span = one_form_span_check(t)
        junk = len(junk_space(t))
        resid = junk_identification_residual(t)
        elapsed = time.perf_counter() - start
        ok &= span == span_expected and junk == junk_expected and resid < 1e-8
        if N == 2:
            ok &= elapsed < 30.0
        details.append(f"N={N}: span {span}, junk {junk}, resid {resid:.1e}, {elapsed:.2f} s")
    record("4 calculus identification", ok, "; ".join(details))


def test_criterion_5_differential_oracle():
    t = build_triple(1)
    err = max(
        float(np.max(np.abs(de_oracle(t, m).coords + TwoForm.basis(m, t.dimK).coords)))
        for m in range(3)
    )
    wired = max(
        float(np.max(np.abs(de_oracle(t, m).coords - d1(t, OneForm.basis(m, t.dimK)).coords)))
        for m in range(3)
    )
    record("5 differential oracle", max(err, wired) < 1e-8, f"vs -f_m {err:.2e}, vs d1 {wired:.2e}")


def test_criterion_6_koszul_solver():
    rng = np.random.default_rng(2024)
    t = build_triple(1)
    d = t.dimK
    worst = {"torsion": 0.0, "center": 0.0, "full": 0.0, "bimodule": 0.0}
    ranks = []
    for _ in range(5):
        m = random_metric(rng)
        ranks.append(koszul_rank(m))
        nabla = levi_civita(t, m)
        worst["torsion"] = max(worst["torsion"], max_abs(torsion_defect(t, nabla)))
        worst["center"] = max(worst["center"], max_abs(compat_defect_center(t, m, nabla)))
        for _ in range(5):
            x = OneForm(np.stack([random_element(rng, d) for _ in range(3)]))
            y = OneForm(np.stack([random_element(rng, d) for _ in range(3)]))
            worst["full"] = max(worst["full"], max_abs(full_compat_defect(t, m, nabla, x, y)))
            a = random_element(rng, d)
            worst["bimodule"] = max(worst["bimodule"], max_abs(bimodule_defect(t, nabla, a, y)))
    ok = max(worst.values()) < 1e-10 and all(r == 9 for r in ranks)
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", ranks {ranks}"
    record("6 Koszul solver", ok, detail)


def test_criterion_7_structural_invariants():
    rng = np.random.default_rng(7)
    t = build_triple(1)
    d = t.dimK
    worst = {"sigma2": 0.0, "psym": 0.0, "g_sigma": 0.0, "antisym_pairing": 0.0}
    cond = 0.0
    for m in (Metric.canonical(), random_metric(rng), random_metric(rng)):
        T = TensorSquare(np.stack([[random_element(rng, d) for _ in range(3)] for _ in range(3)]))
        worst["sigma2"] = max(worst["sigma2"], max_abs(sigma_map(sigma_map(T)) - T))
        worst["psym"] = max(worst["psym"], max_abs(p_sym(p_sym(T)) - p_sym(T)))
        worst["g_sigma"] = max(worst["g_sigma"], max_abs(g_tensor(m, sigma_map(T)) - g_tensor(m, T)))
        cond = max(cond, float(np.linalg.cond(g2_gram(m))))
        lc, n0 = levi_civita(t, m), nabla0_connection(t)
        for c in range(3):
            for eta in range(3):
                for theta in range(3):
                    diff = antisymmetrized_pairing(m, lc, c, eta, theta) - antisymmetrized_pairing(
                        m, n0, c, eta, theta
                    )
                    worst["antisym_pairing"] = max(worst["antisym_pairing"], max_abs(diff))
    ok = max(worst.values()) < 1e-10 and cond < 1e10
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", g2 cond {cond:.1e}"
    record("7 structural invariants", ok, detail)


def test_criterion_8_scaling_invariance():
    rng = np.random.default_rng(8)
    worst = 0.0
    for m in (Metric.canonical(), random_metric(rng), random_metric(rng)):
        a = levi_civita_christoffel(m)
        b = levi_civita_christoffel(Metric(7 * m.G))
        worst = max(worst, float(np.max(np.abs(a - b))))
    record("8 scaling invariance", worst < 1e-10, f"max diff {worst:.2e}")


def test_criterion_9_triple_invariants():
    rng = np.random.default_rng(9)
    worst = {"su2": 0.0, "dirac": 0.0, "bracket": 0.0}
    for N in range(4):
        t = build_triple(N)
        X = t.X
        for k in range(3):
            for l in range(3):
                rhs = np.einsum("m,mij->ij", EPS[k, l], X)
                worst["su2"] = max(worst["su2"], float(np.max(np.abs(commutator(X[k], X[l]) - rhs))))
        worst["dirac"] = max(worst["dirac"], float(np.max(np.abs(t.D - t.D.conj().T))))
        for _ in range(10):
            a = random_element(rng, t.dimK)
            lhs = delta(t, 0, delta(t, 1, a)) - delta(t, 1, delta(t, 0, a))
            worst["bracket"] = max(worst["bracket"], float(np.max(np.abs(lhs - delta(t, 2, a)))))
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    record("9 spectral triple invariants", max(worst.values()) < 1e-10, detail)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
