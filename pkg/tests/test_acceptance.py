"""Acceptance criteria 1-11, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (visible even
under captured output) and pins its tolerance and runtime budget below.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from qaffine.cartan import cartan_data
from qaffine.cluster import enumerate_seeds, laurent_check, paper_seed
from qaffine.laurent import Laurent, PsiWeight, Y, ZMonomial
from qaffine.qchar import fm_fundamental, fm_kirillov_reshetikhin, sl2_string_character, t_system_check_sl2
from qaffine.qgroth import (KtElement, bar, canonical_class, evaluate_t1, simple_character, star)
from qaffine.relations import psi_tilde, qq_star_relation, sl2_qqstar_tq_match, tq_relation
from qaffine.truncation import (TruncationParam, apply_certificate, chain_search, chi_table, comes_from,
                                conjecture_enumerate, lambda_monomial, preceq)

# runtime budgets in seconds, per criterion
BUDGET = {1: 1e-3, 2: 1.0, 3: 10.0, 4: 5.0, 5: 1.0, 6: 10.0, 7: 5.0, 9: 30.0, 10: 60.0}
XXZ_COMMUTATOR_TOL = 1e-10
XXZ_FIT_TOL = 1e-8
XXZ_BETHE_TOL = 1e-8
XXZ_QQ_TOL = 1e-8
QGROTH_SAMPLES = 100


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
        return ok
    return emit


def timed(fn, repeat=1):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def test_criterion_01_sl2_fundamental(report):
    cd = cartan_data("A1")
    # best of several runs: the budget concerns the computation, not interpreter warm-up
    res, dt = timed(lambda: fm_fundamental(cd, 1, 0), repeat=5)
    want = Laurent([(Y(1, 0), 1), (Y(1, 2, -1), 1)])
    ok = res.polynomial == want and dt < BUDGET[1]
    assert report(1, ok, f"{res.polynomial}  {dt * 1e3:.3f} ms")


def test_criterion_02_t_system(report):
    def run():
        good = all(t_system_check_sl2(r, k)[0] for k in range(1, 6) for r in range(-10, 11))
        # independent route: the strings agree with the FM algorithm on the KR top monomial
        cd = cartan_data("A1")
        fm = all(fm_kirillov_reshetikhin(cd, 1, r, k).polynomial == sl2_string_character(r, k).polynomial
                 for k in range(1, 6) for r in (-10, 0, 10))
        return good and fm
    ok, dt = timed(run)
    ok = ok and dt < BUDGET[2]
    assert report(2, ok, f"k<=5, |r|<=10, {dt:.3f} s")


def test_criterion_03_d4_node2(report):
    res, dt = timed(lambda: fm_fundamental(cartan_data("D4"), 2, 0))
    ok = res.dimension() == 29 and dt < BUDGET[3]
    assert report(3, ok, f"dim {res.dimension()}, {dt:.3f} s")


def test_criterion_04_clusters(report):
    def run():
        s = paper_seed("a2")
        en = enumerate_seeds(s)
        cm = enumerate_seeds(paper_seed("sl3_CM"))
        return s, en, cm
    (s, en, cm), dt = timed(run)
    ok = (len(en.variables) == 5 and len(en.clusters) == 5 and all(laurent_check(s, v) for v in en.variables)
          and cm.total_variables == 7 and len(cm.frozen_variables) == 2 and dt < BUDGET[4])
    assert report(4, ok, f"A2 {len(en.variables)}/{len(en.clusters)}, sl3 C_M {cm.total_variables}, {dt:.3f} s")


TQR = "[V_{1}(1)][L^+_{1,q}] = [\\omega][L^+_{1,q^{-1}}] + [-\\omega][L^+_{1,q^{3}}]"


def test_criterion_05_tq_and_qqstar(report):
    def run():
        cd = cartan_data("A1")
        rel = tq_relation(cd, fm_fundamental(cd, 1, 0), 1, 0)
        _, _, match = sl2_qqstar_tq_match(cd, 0)
        qq_star_relation(cd, 1, 1)
        return rel.to_latex(), match
    (latex, match), dt = timed(run)
    ok = latex == TQR and match and dt < BUDGET[5]
    assert report(5, ok, f"{latex}  {dt:.3f} s")


def test_criterion_06_cex(report):
    def run():
        cd = cartan_data("B2")
        Z = TruncationParam.from_roots([[-6], [0, -2, -6]])
        z1 = apply_certificate(cd, Z, {(2, -1): 1, (1, -4): 1})
        z2 = apply_certificate(cd, z1, {(2, -5): 1})
        factors = (psi_tilde(cd, 2, 0) == PsiWeight([((2, 0), -1), ((1, 0), 1), ((1, 2), 1)])
                   and psi_tilde(cd, 1, 0) == PsiWeight([((1, 0), -1), ((2, 2), 1)])
                   and lambda_monomial(cd, 2, -1) == PsiWeight([((2, 0), 1), ((2, -2), 1), ((1, -2), -1),
                                                               ((1, 0), -1)]))
        certs = preceq(cd, z1, Z) == {(2, -1): 1, (1, -4): 1} and preceq(cd, z2, z1) == {(2, -5): 1}
        chain = chain_search(cd, Z, z2, 4)
        return factors, certs, chain, comes_from(cd, z2, Z)
    (factors, certs, chain, direct), dt = timed(run)
    ok = factors and certs and chain is not None and chain.length == 2 and not direct and dt < BUDGET[6]
    assert report(6, ok, f"chain length {chain.length if chain else None}, direct {direct}, {dt:.3f} s")


EX1 = [[(2, 0, 1)], [(1, -2, 1), (1, 0, 1), (2, -2, -1)], [(1, -6, -1), (1, -4, -1), (2, -4, 1)],
       [(2, -6, -1)], [(1, 0, 1), (1, -6, -1), (2, -4, 1), (2, -2, -1)], [(1, -2, 1), (1, -4, -1)]]
EX2 = [[(1, 0, 1)], [(1, -4, -1), (2, -2, 1)], [(1, -2, 1), (2, -4, -1)], [(1, -6, -1)]]


def test_criterion_07_b2_lists(report):
    cd = cartan_data("B2")

    def lists():
        out = []
        for Z in ([[], [0]], [[0], []]):
            ents = conjecture_enumerate(cd, TruncationParam.from_roots(Z))
            out.append((sorted(sorted(tuple(x) for x in e.psi.to_json()["psi"]) for e in ents), ents))
        return out
    ((got1, e1), (got2, e2)), dt = timed(lists)
    mus = [e.mu for e in e1]
    ok = (got1 == sorted(sorted(r) for r in EX1) and got2 == sorted(sorted(r) for r in EX2)
          and mus.count((0, 0)) == 2 and dt < BUDGET[7])
    assert report(7, ok, f"{len(e1)} and {len(e2)} parameters, {dt:.3f} s")


SEXB = {
    1: [[(1, 0, 1)], [(1, 4, -1), (2, 2, 1)], [(2, 4, -1), (1, 2, 1)], [(1, 6, -1)]],
    2: [[(2, 0, 1)], [(2, 2, -1), (1, 0, 1), (1, 2, 1)], [(1, 0, 1), (1, 6, -1), (2, 2, -1), (2, 4, 1)],
        [(1, 2, 1), (1, 4, -1)], [(1, 6, -1), (1, 4, -1), (2, 4, 1)], [(2, 6, -1)]],
}


def test_criterion_08_chi_tables(report):
    cd = cartan_data("B2")
    ok = True
    counts = []
    for i, rows in SEXB.items():
        want = Laurent([(ZMonomial(((a, s), e) for a, s, e in row), 1) for row in rows], ZMonomial)
        t = chi_table(cd, i, 0)
        counts.append(len(t.terms()))
        ok = ok and t == want
    ok = ok and counts == [4, 6]
    assert report(8, ok, f"terms {counts}")


def test_criterion_09_qgroth(report):
    import random

    g = KtElement.gen

    def run():
        deux = (star(g(0), g(2)) == star(g(2), g(0)).scale({-4: 1}) + KtElement.scalar({0: 1, -4: -1})
                and star(g(0), g(4)) == star(g(4), g(0)).scale({4: 1}))
        L = canonical_class([0, 2])
        at1 = evaluate_t1(L) == simple_character([0, 2]) and sum(c for _, c in simple_character([0, 2]).terms()) == 3
        rng = random.Random(0)

        def rand_el():
            return KtElement([(tuple(rng.choice([-2, 0, 2, 4]) for _ in range(rng.randint(0, 3))),
                               {rng.randint(-4, 4): rng.randint(-3, 3)}) for _ in range(rng.randint(1, 3))])
        props = True
        for _ in range(QGROTH_SAMPLES):
            x, y, z = rand_el(), rand_el(), rand_el()
            props = props and (x * y) * z == x * (y * z) and bar(bar(x)) == x and bar(x * y) == bar(y) * bar(x)
        return deux, at1, props
    (deux, at1, props), dt = timed(run)
    ok = deux and at1 and props and dt < BUDGET[9]
    assert report(9, ok, f"deux {deux}, t=1 {at1}, {QGROTH_SAMPLES} samples {props}, {dt:.3f} s")


def test_criterion_10_xxz(report):
    from qaffine.xxz import ChainSpec, fit_spectrum, verify_qq_polynomial

    q, u = 0.7 + 0.1j, 0.5

    def run():
        worst = {"commutativity": 0.0, "tq": 0.0, "bethe": 0.0}
        degrees_ok = True
        for N in range(1, 7):
            spec = ChainSpec(N=N, q=q, u=u)
            fit = fit_spectrum(spec)
            res = fit.max_residuals()
            for k in worst:
                worst[k] = max(worst[k], res[k])
            degrees_ok = degrees_ok and all(e.degree <= N for e in fit.eigen)
        spec = ChainSpec(N=1, q=q, u=u, sites=(q ** -1,))
        qq = max(r.residual for r in verify_qq_polynomial(spec, fit_spectrum(spec)))
        return worst, degrees_ok, qq
    (worst, degrees_ok, qq), dt = timed(run)
    ok = (worst["commutativity"] < XXZ_COMMUTATOR_TOL and worst["tq"] < XXZ_FIT_TOL
          and worst["bethe"] < XXZ_BETHE_TOL and degrees_ok and qq < XXZ_QQ_TOL and dt < BUDGET[10])
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    assert report(10, ok, f"{detail}, qq {qq:.1e}, {dt:.2f} s")


def test_criterion_11_determinism(report, tmp_path):
    outs = []
    for k in range(2):
        home = tmp_path / f"ws{k}"
        env = dict(os.environ, QAFFINE_HOME=str(home))
        p = subprocess.run([sys.executable, "-m", "qaffine.cli", "repro", "--all"], capture_output=True, env=env)
        reports = {f.name: f.read_bytes() for f in sorted((home / "reports").glob("*.json"))}
        outs.append((p.returncode, p.stdout, reports))
    ok = outs[0] == outs[1] and outs[0][0] == 0 and json.loads(outs[0][1])["passed"]
    assert report(11, ok, f"{len(outs[0][2])} reports byte-identical")
