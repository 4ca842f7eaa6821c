"""One check per acceptance criterion; each prints a single PASS/FAIL line.

Tolerances: every comparison is exact (rational-function or Q(sqrt q)
equality); the tolerance is zero throughout.
"""

import filecmp
import os
import subprocess
import sys
import time
from fractions import Fraction

from hallbase import bar_canonical as bc
from hallbase import cli
from hallbase import finite_field_oracle as ffo
from hallbase import straightening as st
from hallbase import symfunc_inner as sf
from hallbase import tube_algebra as ta
from hallbase.exact_arith import LaurentPoly, RationalFunction, congruent_mod_vinv
from hallbase.kronecker_model import PBWIndex, orbit_dim, partitions

TOLERANCE = 0
ONE = RationalFunction(1)


def weights(max_total):
    return [(a, t - a) for t in range(max_total + 1) for a in range(t + 1)]


def integral(x):
    return x.is_laurent() and x.as_laurent().is_integral()


def in_vinv_z(x):
    if not x:
        return True
    return integral(x) and x.as_laurent().max_deg() < 0


def test_criterion_01_oracle_products(report):
    t0 = time.time()
    pairs = len(cli.generator_pairs((3, 3)))
    bad = []
    for q in (2, 3, 4):
        r = cli._product_job(q, (3, 3), ffo.DEFAULT_BUDGET)
        bad += [(q, c["case"]) for c in r["cases"] if c["status"] != "equal"]
    dt = time.time() - t0
    report(1, not bad and dt < 600, "%d generator pairs x q in {2,3,4}, %d unequal, %.1fs" % (pairs, len(bad), dt))


def test_criterion_02_registered_identities(report, tmp_path):
    cfg = cli.JobConfig(qs=[2, 3], max_dim=(3, 3), out=str(tmp_path),
                        relations=["regular-recursion", "adjacent-real-commutation", "imaginary-recursion", "imaginary-real-straightening", "divided-power-product"])
    code, rep = cli.cmd_verify(cfg)
    identity_runs = [r for r in rep["runs"] if r["relation"] != "products"]
    params = cli.RELATION_PARAMS
    ok = (code == 0 and len(identity_runs) == 10 and params["imaginary-real-straightening"] == {"nmax": 2, "mmax": 2}
          and params["divided-power-product"] == {"nmax": 2} and params["imaginary-recursion"] == {"kmax": 3}
          and all(r["status"] == "equal" for r in rep["runs"]))
    report(2, ok, "%d relation runs over F2, F3, %d cases, exit %d" % (
        len(identity_runs), sum(len(r["cases"]) for r in identity_runs), code))


def test_criterion_03_monomial_triangularity(report):
    t0 = time.time()
    problems, n = [], 0
    for d in weights(8):
        fam = bc.kronecker_family(d)
        H = bc.build_H(fam)  # raises unless unitriangular for the solver's order
        idx = fam.indices
        for i in range(len(idx)):
            n += 1
            for j in range(len(idx)):
                x = H[i][j]
                if not x:
                    continue
                if not integral(x):
                    problems.append((d, i, j, "non-integral"))
                if i != j and not orbit_dim(idx[j]) < orbit_dim(idx[i]):
                    problems.append((d, i, j, "orbit order"))
    dt = time.time() - t0
    report(3, not problems and dt < 300, "%d weights, %d rows, strict orbit-dimension support, Z[v,v^-1] entries, %.1fs" % (
        len(weights(8)), n, dt))


def test_criterion_04_canonical_delta(report):
    elems, data = bc.run(bc.kronecker_family((1, 1)))
    real, delta = PBWIndex({0: 1}, (), {0: 1}), PBWIndex(None, (1,))
    e1e2 = st.multiply(st.generator("P", 0), st.generator("I", 0))
    e2e1 = st.multiply(st.generator("I", 0), st.generator("P", 0))
    zeta = data.zeta[data.indices.index(delta)][data.indices.index(real)]
    ok = elems == [e1e2, e2e1] and zeta == RationalFunction(LaurentPoly.monomial(-2))
    report(4, ok, "zeta(delta, real pair) = %s" % zeta)


def test_criterion_05_bar_invariance_and_lattice(report):
    bad, count = [], 0
    for d in weights(8):
        elems, data = bc.run(bc.kronecker_family(d))
        if not bc.check_bar_invariant(data.Omega, data.zeta):
            bad.append((d, "bar"))
        for i, row in enumerate(data.zeta):
            count += 1
            for j, z in enumerate(row):
                if i == j:
                    if z != ONE:
                        bad.append((d, i, "diag"))
                elif not in_vinv_z(z):
                    bad.append((d, i, j))
    report(5, not bad, "%d canonical elements, all bar-invariant and in E^c + v^-1 Z[v^-1] span" % count)


def test_criterion_06_tube(report):
    t0 = time.time()
    words = solved = 0
    bad = []
    for rank in (2, 3):
        for total in range(1, 7):
            for d in ta.dim_vectors(rank, total):
                classes = ta.aperiodic_classes(d)
                for pi in classes:
                    w = ta.distinguished_word(pi)
                    bound = ta.word_degree_bound(rank, w, pi)
                    w0 = tuple((j - 1, e) for j, e in w)
                    vals = {q: ffo.filtration_count(pi.parts, w0, q, rank) for q in (2, 3, 4)}
                    poly = ffo.interpolate_values(vals, bound)
                    words += 1
                    if poly != LaurentPoly.const(1) or ta.filtration_polys(rank, w).get(pi) != LaurentPoly.const(1):
                        bad.append((pi, w))
                if not classes:
                    continue
                _, data = bc.run(bc.tube_family(rank, d))
                solved += 1
                for i, row in enumerate(data.H):
                    for j, x in enumerate(row):
                        if x and not integral(x):
                            bad.append((d, "H", i, j))
                for i, row in enumerate(data.zeta):
                    for j, z in enumerate(row):
                        if i != j and not in_vinv_z(z):
                            bad.append((d, "zeta", i, j))
    dt = time.time() - t0
    report(6, not bad and dt < 900, "%d distinguished words interpolate to 1 over F2,F3,F4; %d weight spaces solved, %.1fs" % (
        words, solved, dt))


def test_criterion_07_inner_products(report):
    v2 = LaurentPoly.monomial(2)
    checks = [sf.imag_gram(1)[((1,), (1,))] == RationalFunction(v2 + 1, v2 - 1)]
    for n in range(1, 5):
        G = sf.imag_gram(n)
        checks.append(congruent_mod_vinv(G[((n,), (n,))], ONE))
        g = sf.gram_of([sf.e_prime(n)])[0][0]
        checks.append(congruent_mod_vinv(g, RationalFunction(Fraction(1, n))))
        ws = partitions(n)
        P = [sf.imag_element(sf.p_product_in_h(w)) for w in ws]
        PG = sf.gram_of(P)
        for i, w in enumerate(ws):
            for j, w2 in enumerate(ws):
                target = RationalFunction(sf.z_value(w) if i == j else 0)
                checks.append(congruent_mod_vinv(PG[i][j], target))
    report(7, all(checks), "%d exact congruences (E_delta norm, E_n, E'_n, power sums; n <= 4)" % len(checks))


def test_criterion_08_newton_agreement(report):
    ok = all(sf.e_prime(n) == sf.e_prime_newton(n) for n in range(1, 5))
    report(8, ok, "Gram-Schmidt e_prime(n) == p_n/n image for n = 1..4")


def test_criterion_09_almost_orthonormal(report):
    t0 = time.time()
    bad, n = [], 0
    for d in weights(6):
        elems = sf.canonical_prime(d)
        G = sf.gram_of(elems)
        for i in range(len(elems)):
            n += 1
            for j in range(len(elems)):
                if not congruent_mod_vinv(G[i][j], ONE if i == j else RationalFunction(0)):
                    bad.append((d, i, j))
    dt = time.time() - t0
    report(9, not bad and dt < 600, "%d elements over %d weights, Gram = I mod v^-1, %.1fs" % (n, len(weights(6)), dt))


def _cold_run(out):
    cmds = [
        ["kronecker", "canonical", "--total", "8", "--emit-transitions"],
        ["tube", "canonical", "--rank", "2", "--total", "6", "--emit-transitions"],
        ["tube", "canonical", "--rank", "3", "--total", "5", "--emit-transitions"],
    ]
    env = dict(os.environ)
    env.pop("HALLBASE_CACHE", None)
    for c in cmds:
        r = subprocess.run([sys.executable, "-m", "hallbase.cli"] + c + ["--out", out], env=env, capture_output=True)
        if r.returncode:
            return False
    for c in [["verify", "--q", "2", "--max-dim", "2,2"], ["gram", "--dim", "3,3"], ["canonical-prime", "--dim", "3,3"]]:
        r = subprocess.run([sys.executable, "-m", "hallbase.cli"] + c, env=env, capture_output=True)
        if r.returncode:
            return False
        with open(os.path.join(out, "-".join(c).replace(",", "_") + ".json"), "wb") as fh:
            fh.write(r.stdout)
    return True


def test_criterion_10_determinism(report, tmp_path):
    a, b = str(tmp_path / "run1"), str(tmp_path / "run2")
    ok = _cold_run(a) and _cold_run(b)
    names = sorted(os.listdir(a)) if ok else []
    same = ok and names == sorted(os.listdir(b))
    match, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False) if same else ([], names, [])
    report(10, same and not mismatch and not errors and len(match) > 0,
           "%d artifacts byte-identical across two cold runs" % len(match))
