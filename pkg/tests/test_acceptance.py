"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import time
from itertools import product

import numpy as np
import pytest

from etfent import criteria, frames, maps, scan, states

from .conftest import ACCEPTANCE_LINES
from .oracles import dense_hypermatrix, dense_unfolding_norms, listed_seven_vectors

D3_POVMS = ["basis-3", "sic-d3", "harmonic-7-3", "conj:basis-3", "conj:sic-d3", "conj:harmonic-7-3"]


def report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _best_time(fn, repeats=200):
    fn()
    best = np.inf
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_1_frame_certification():
    cases = [
        ("sic-d3", frames.get_frame("sic-d3").vectors, 3.0, 0.25),
        ("n=7", listed_seven_vectors(), 7 / 3, 2 / 9),
    ]
    ok, parts = True, []
    for name, vecs, b, c in cases:
        f = frames.validate_etf(vecs)
        dev = max(abs(f.b - b), abs(f.c - c), f.tight_residual, f.angle_deviation)
        secs = _best_time(lambda: frames.validate_etf(vecs))
        ok &= dev <= 1e-10 and secs < 1e-3
        parts.append(f"{name}: dev={dev:.1e} t={secs * 1e6:.0f}us")
    report(1, "frame certification", ok, "; ".join(parts))


def test_2_esic_reduction():
    errs = []
    for d in (2, 3):
        p = frames.get_povm(f"sic-d{d}")
        q = frames.get_povm(f"conj:sic-d{d}")
        errs.append(abs(criteria.theorem1_bound(p, q) - 2 / (d * (d + 1))))
    report(2, "ESIC reduction", max(errs) <= 1e-12, f"max err {max(errs):.1e}")


def test_3_isotropic_threshold():
    ok, parts = True, []
    for name, n in (("sic-d3", 9), ("harmonic-7-3", 7)):
        povm = frames.get_povm(name)

        def margin(p):
            return criteria.theorem1(states.isotropic(3, p), povm).margin

        p_star = scan.locate_boundary(margin, 0.0, 1.0, xtol=1e-12)
        expected = 2 / (n - 1)
        stat_err = max(
            abs(criteria.theorem1(states.isotropic(3, p), povm).statistic - (1 - p + 3 * p) / n)
            for p in np.linspace(0, 1, 101)
        )
        ok &= abs(p_star - expected) <= 1e-6 and stat_err <= 1e-10
        parts.append(f"n={n}: p*={p_star:.9f} stat err {stat_err:.1e}")
    report(3, "isotropic threshold", ok, "; ".join(parts))


def test_4_separable_soundness():
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    bip = [states.random_product((3, 3), rng) for _ in range(1000)]
    bip += [states.random_separable((3, 3), 5, rng) for _ in range(1000)]
    povms = {name: frames.get_povm(name) for name in D3_POVMS}
    worst, violations = -np.inf, 0
    for a, b in product(D3_POVMS, repeat=2):
        for rho in bip:
            m = criteria.theorem1(rho, povms[a], povms[b]).margin
            worst = max(worst, m)
            violations += m > 1e-9
    tri = [states.random_product((3, 3, 3), rng) for _ in range(1000)]
    triples = [("sic-d3",) * 3, ("harmonic-7-3",) * 3, ("sic-d3", "harmonic-7-3", "basis-3")]
    worst3 = -np.inf
    for names in triples:
        ps = [povms[n] for n in names]
        for rho in tri:
            ms = [criteria.theorem4(rho, *ps).margin] + [v.margin for v in criteria.theorem5(rho, *ps)]
            worst3 = max(worst3, max(ms))
            violations += sum(m > 1e-9 for m in ms)
    elapsed = time.perf_counter() - start
    report(
        4,
        "separable-side soundness",
        violations == 0 and elapsed < 60,
        f"{violations} violations; worst margins {worst:.2e} (bi), {worst3:.2e} (tri); {elapsed:.1f}s",
    )


def _detected(povms):
    grid = scan.ScanGrid("sigma", scan.parse_grid("x=0.001:0.999:200,p=0:1:200"), "thm1", povms)
    rows = scan.run_scan(grid)
    return {(r[0], r[1]) for r in rows if r[4]}, len(rows)


def test_5_sigma_scan_containment():
    sic, total = _detected("sic-d3")
    seven, _ = _detected("harmonic-7-3")
    exceptions = len(seven - sic)
    ok = total == 201 * 201 and exceptions <= 0.005 * total
    report(
        5,
        "sigma(x,p) scan containment (n=7 within n=9)",
        ok,
        f"detected n=9: {len(sic)}, n=7: {len(seven)}, exceptions {exceptions}/{total}",
    )


def test_6_antisymmetric_unfoldings():
    sic = frames.get_povm("sic-d3")
    xs = np.linspace(0, 1, 101)
    asym, violated = 0.0, []
    for x in xs:
        vs = criteria.theorem5(states.antisymmetric_tripartite(x), sic)
        stats = [v.statistic for v in vs]
        asym = max(asym, max(stats) - min(stats))
        violated.append(any(v.entangled for v in vs))

    def margin(x):
        return max(v.margin for v in criteria.theorem5(states.antisymmetric_tripartite(x), sic))

    def dense_margin(x):
        v = sic.frame.vectors
        norms = dense_unfolding_norms(dense_hypermatrix(states.antisymmetric_tripartite(x).matrix, v, v, v))
        return max(norms) - 1 / 6

    x_star = scan.locate_boundary(margin, 0.0, 1.0, xtol=1e-13)
    x_dense = scan.locate_boundary(dense_margin, 0.0, 1.0, xtol=1e-13)
    ok = asym <= 1e-9 and violated[0] and not violated[-1] and abs(x_star - x_dense) <= 1e-9
    report(
        6,
        "antisymmetric-state unfolding symmetry and threshold",
        ok,
        f"asymmetry {asym:.1e}; x*={x_star:.10f} dense {x_dense:.10f}",
    )


def test_7_positive_map_probe():
    start = time.perf_counter()
    ok, parts = True, []
    for name, n in (("sic-d3", 9), ("harmonic-7-3", 7)):
        povm = frames.get_povm(name)
        for label, rot in (
            ("identity", maps.rotation_identity(n)),
            ("rotated", maps.rotation_householder_family(n, [0.7])),
        ):
            r = maps.positivity_probe(maps.PositiveMapSpec(povm, rot), 10_000, seed=7)
            ok &= r.max_purity <= r.ceiling + 1e-9 and r.min_eigenvalue >= -1e-9
            parts.append(f"n={n}/{label}: purity {r.max_purity:.4f} min eig {r.min_eigenvalue:.4f}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30
    report(7, "positive-map probe", ok, "; ".join(parts) + f"; {elapsed:.1f}s")


def test_8_witness_consistency():
    rng = np.random.default_rng(8)
    products = [states.random_product((3, 3), rng) for _ in range(10_000)]
    ok, parts = True, []
    for name in ("sic-d3", "harmonic-7-3"):
        povm = frames.get_povm(name)
        spec = maps.PositiveMapSpec(povm, maps.rotation_identity(povm.n))
        w = maps.build_witness(spec)
        agree = np.max(np.abs(maps.witness_matrix(spec) - maps.witness_from_map(spec)))
        tr_err = abs(np.trace(w.matrix).real - spec.prefactor * 3)
        low = min(maps.witness_expectation(w, rho) for rho in products)
        ok &= agree <= 1e-9 and tr_err <= 1e-10 and low >= -1e-9
        parts.append(f"n={povm.n}: agree {agree:.1e} trace err {tr_err:.1e} min product {low:.4f}")
    report(8, "witness consistency", ok, "; ".join(parts))


def test_9_oracle_equivalence():
    sic = frames.get_povm("sic-d3")
    h7 = frames.get_povm("harmonic-7-3")
    hyper_err, norm_err = 0.0, 0.0
    for seed in range(20):
        rho = states.DensityMatrix(states.random_density(27, seed).matrix, (3, 3, 3))
        tc = criteria.hypermatrix(rho, sic, h7, sic)
        dense = dense_hypermatrix(rho.matrix, sic.frame.vectors, h7.frame.vectors, sic.frame.vectors)
        hyper_err = max(hyper_err, np.max(np.abs(tc.hyper - dense)))
        diff = np.subtract(criteria.unfolding_trace_norms(tc), dense_unfolding_norms(tc.hyper))
        norm_err = max(norm_err, np.max(np.abs(diff)))
    ok = hyper_err <= 1e-10 and norm_err <= 1e-9
    report(9, "oracle equivalence", ok, f"hypermatrix err {hyper_err:.1e}; unfolding err {norm_err:.1e}")


@pytest.mark.parametrize("x", [0.0, 1.0])
def test_horodecki_scan_endpoints_rejected(x):
    # the family is defined on the open interval, so grids must stay inside it
    with pytest.raises(Exception):
        states.sigma_xp(x, 0.5)
