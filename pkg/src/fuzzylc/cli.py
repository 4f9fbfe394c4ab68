"""Command line front end.

    fuzzylc triple --N 1
    fuzzylc verify-calculus --N 2
    fuzzylc levi-civita --metric metric.json --json out.json
    fuzzylc curvature --connection grassmann

Exit codes: 0 all checks pass, 2 a check failed (or invalid metric),
3 oracle cap exceeded, 4 singular Koszul system, 5 non-central Ricci.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from fuzzylc.calculus import (
    DEFAULT_ORACLE_CAP,
    FeasibilityError,
    OneForm,
    d1,
    d_oracle_full,
    junk_identification_residual,
    junk_space,
    one_form_span_check,
    two_form_space_check,
)
from fuzzylc.curvature import NonCentralRicci, curvature, ricci, ricci_scalars, scalar_curvature
from fuzzylc.koszul import (
    Connection,
    Metric,
    MetricError,
    bimodule_defect,
    compat_defect_center,
    full_compat_defect,
    grassmann_connection,
    koszul_rank,
    levi_civita,
    max_abs,
    nabla0_connection,
    torsion_defect,
)
from fuzzylc.linalg import DEFAULT_TOL, SingularSystem
from fuzzylc.report import Report, decode_complex_matrix
from fuzzylc.triple import EPS, build_triple, deltas, triple_residuals

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_FEASIBILITY = 3
EXIT_SINGULAR = 4
EXIT_NONCENTRAL = 5

ORACLE_TOL = 1e-8
CLOSED_FORM_TOL = 1e-12
SEED = 0
CONNECTIONS = ("levi-civita", "grassmann", "nabla0")


def default_tol() -> float:
    env = os.environ.get("NCG_TOL")
    return float(env) if env else DEFAULT_TOL


def load_metric(source: str) -> Metric:
    if source == "canonical":
        return Metric.canonical()
    data = json.loads(Path(source).read_text())
    G = decode_complex_matrix(data)
    if G.shape != (3, 3):
        raise MetricError(f"metric must be 3x3, got {G.shape}")
    return Metric(G)


def _random_element(rng: np.random.Generator, d: int) -> np.ndarray:
    """Random complex matrix scaled to unit max-abs entry."""
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return a / np.max(np.abs(a))


def _max(a) -> float:
    return float(np.max(np.abs(a), initial=0.0))


def cmd_triple(N: int, tol: float = DEFAULT_TOL) -> Report:
    t = build_triple(N)
    rep = Report(command="triple", N=N, tolerances={"tol": tol})
    rep.add_result("dimK", t.dimK)
    rep.add_result("dimH", 2 * t.dimK)
    rep.add_result("blocks", list(t.blocks))
    res = triple_residuals(t)
    for name, value in res.items():
        rep.check_defect(name, value, tol)
    rng = np.random.default_rng(SEED)
    bracket = 0.0
    for _ in range(10):
        a = _random_element(rng, t.dimK)
        da = deltas(t, a)
        for k, l in ((0, 1), (1, 2), (2, 0)):
            m = 3 - k - l
            lhs = deltas(t, da[l])[k] - deltas(t, da[k])[l]
            bracket = max(bracket, _max(lhs - EPS[k, l, m] * da[m]))
    rep.check_defect("derivation_brackets", bracket, tol)
    rep.check("dimK_formula", t.dimK == (N + 1) ** 2)
    return rep


def cmd_verify_calculus(N: int, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ORACLE_CAP) -> Report:
    t = build_triple(N)
    rep = Report(
        command="verify-calculus",
        N=N,
        tolerances={"tol": tol, "oracle": ORACLE_TOL, "oracle_cap": cap},
    )
    span = one_form_span_check(t, tol, cap)
    junk = junk_space(t, tol, cap)
    expected_junk = t.dimA if N >= 1 else 0
    rep.add_result("one_form_span", span)
    rep.add_result("junk_dim", len(junk))
    rep.check("one_form_span", span == (3 * t.dimA if N >= 1 else 0))
    rep.check("junk_dim", len(junk) == expected_junk)
    rep.check_defect("junk_identification", junk_identification_residual(t, tol, cap), ORACLE_TOL)
    dim_two, inter = two_form_space_check(t, tol, cap)
    rep.add_result("two_form_span", dim_two)
    rep.check("two_form_span", dim_two == 3 * t.dimA and inter == 0)
    if N >= 1:
        worst = 0.0
        for m in range(3):
            e_m = OneForm.basis(m, t.dimK)
            oracle = d_oracle_full(t, e_m, tol, cap)
            worst = max(worst, _max(oracle.two_form.coords - d1(t, e_m).coords))
        rep.check_defect("de_oracle_vs_d1", worst, ORACLE_TOL)
        rep.add_result("orientation", 1 if worst <= ORACLE_TOL else -1)
    return rep


def _connection(kind: str, t, metric: Metric) -> Connection:
    if kind == "levi-civita":
        return levi_civita(t, metric)
    if kind == "grassmann":
        return grassmann_connection(t.dimK)
    if kind == "nabla0":
        return nabla0_connection(t)
    raise ValueError(f"unknown connection {kind!r}")


def cmd_levi_civita(
    N: int, metric: Metric, tol: float = DEFAULT_TOL, connection: str = "levi-civita"
) -> Report:
    metric.validate(tol)
    t = build_triple(N)
    nabla = _connection(connection, t, metric)
    rep = Report(
        command="levi-civita",
        N=N,
        metric=metric.G,
        tolerances={"tol": tol, "closed_form": CLOSED_FORM_TOL},
    )
    rep.add_result("connection", connection)
    rank = koszul_rank(metric)
    rep.add_result("koszul_rank", rank)
    rep.check("koszul_rank", rank == 9)
    if nabla.is_scalar(tol):
        gamma = nabla.christoffel(tol)
        rep.add_result("christoffel", gamma)
        if connection == "levi-civita" and np.allclose(metric.G, np.eye(3), atol=0, rtol=0):
            rep.check_defect("christoffel_closed_form", _max(gamma - 0.5 * EPS), CLOSED_FORM_TOL)
    rep.check_defect("torsion", max_abs(torsion_defect(t, nabla)), tol)
    rep.check_defect("compat_center", max_abs(compat_defect_center(t, metric, nabla)), tol)
    rng = np.random.default_rng(SEED)
    d = t.dimK
    full = bimod = 0.0
    for _ in range(5):
        x = OneForm(np.stack([_random_element(rng, d) for _ in range(3)]))
        y = OneForm(np.stack([_random_element(rng, d) for _ in range(3)]))
        full = max(full, max_abs(full_compat_defect(t, metric, nabla, x, y)))
        a = _random_element(rng, d)
        bimod = max(bimod, max_abs(bimodule_defect(t, nabla, a, y)))
    rep.check_defect("compat_full", full, tol)
    rep.check_defect("bimodule", bimod, tol)
    return rep


def cmd_curvature(
    N: int, metric: Metric, tol: float = DEFAULT_TOL, connection: str = "levi-civita"
) -> Report:
    metric.validate(tol)
    t = build_triple(N)
    nabla = _connection(connection, t, metric)
    R = curvature(t, nabla)
    Ric = ricci(R)
    rep = Report(command="curvature", N=N, metric=metric.G, tolerances={"tol": tol})
    rep.add_result("connection", connection)
    d = t.dimK
    rep.add_result("curvature", np.trace(R.R, axis1=-2, axis2=-1) / d)
    r = ricci_scalars(Ric, tol)
    rep.add_result("ricci", r)
    rep.add_result("scalar_curvature", scalar_curvature(Ric, metric, tol))
    return rep


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--N", type=int, default=1, help="cutoff of the fuzzy sphere")
    p.add_argument("--tol", type=float, default=None, help="default 1e-10 or $NCG_TOL")
    p.add_argument("--json", dest="json_path", default=None, help="write report JSON here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzylc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triple", help="build the spectral triple and check its invariants")
    _add_common(p)

    p = sub.add_parser("verify-calculus", help="brute-force checks of one-forms, junk, d")
    _add_common(p)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)

    for name, helptext in (
        ("levi-civita", "solve the Koszul system and check all defects"),
        ("curvature", "curvature, Ricci and scalar curvature"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        p.add_argument("--metric", default="canonical", help="path to metric JSON or 'canonical'")
        p.add_argument("--connection", choices=CONNECTIONS, default="levi-civita")
    return parser


def run(args: argparse.Namespace) -> tuple[Report | None, int]:
    tol = args.tol if args.tol is not None else default_tol()
    try:
        if args.command == "triple":
            rep = cmd_triple(args.N, tol)
        elif args.command == "verify-calculus":
            rep = cmd_verify_calculus(args.N, tol, args.oracle_cap)
        else:
            metric = load_metric(args.metric)
            fn = cmd_levi_civita if args.command == "levi-civita" else cmd_curvature
            rep = fn(args.N, metric, tol, args.connection)
    except FeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_FEASIBILITY
    except SingularSystem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_SINGULAR
    except NonCentralRicci as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_NONCENTRAL
    except MetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_CHECK_FAILED
    return rep, EXIT_OK if rep.ok else EXIT_CHECK_FAILED


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    rep, code = run(args)
    if rep is not None:
        if args.json_path:
            Path(args.json_path).write_text(rep.to_json() + "\n")
            print(rep.table())
        else:
            print(rep.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
