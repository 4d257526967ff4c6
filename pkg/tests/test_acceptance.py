"""Acceptance gate.  Each test prints one PASS/FAIL line for its criterion;
the lines are repeated in the terminal summary.  Verdicts are exact booleans;
the only tolerances are wall-clock and memory ceilings, pinned below."""
import itertools
import json
import subprocess
import sys
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from zfp import hf, whier
from zfp.abbrev import ZF, ZFP
from zfp.batch import Batch, group_by_size
from zfp.checker import EXPECTED_FAIL, GENERIC, HOLDS, WITNESS, accidental_suite, check_all, cross_validate
from zfp.corpus import FREE, generate
from zfp.logic import count_iotas, eliminate_iota
from zfp.semantics import (
    EXISTENTIAL_CATALOG, Evaluator, eval_formula, existential_pair, random_structure, v_structure, w_structure,
)
from zfp.syntax import Var

BUILD_W4_SECONDS = 60.0
BUILD_W4_BYTES = 2 * 1024 ** 3
W3_GENERIC_SECONDS = 10.0
W4_WITNESS_SECONDS = 300.0
W4_SCAN_SECONDS = 60.0


def verdict(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _bad(reports, allowed):
    return {r.axiom: r.status for r in reports if r.status != HOLDS and (r.axiom, r.status) not in allowed}


def test_1_w_hierarchy_sizes():
    # separate process so the peak RSS belongs to the build alone
    code = (
        "import json, resource, time\n"
        "from zfp import whier\n"
        "t = time.perf_counter(); u = whier.build_w(4); dt = time.perf_counter() - t\n"
        "rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024\n"
        "print(json.dumps({'sizes': list(u.tier_sizes()), 'seconds': dt, 'rss': rss}))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    got = json.loads(out.stdout)
    want = [0, 1, 3, 17, 2 ** 17 + 17 ** 2]
    ok = got["sizes"] == want and got["seconds"] <= BUILD_W4_SECONDS and got["rss"] <= BUILD_W4_BYTES
    verdict(1, ok, f"tiers {got['sizes']} in {got['seconds']:.1f}s (<= {BUILD_W4_SECONDS:.0f}s), "
                   f"peak {got['rss'] / 2 ** 20:.0f} MiB (<= 2048 MiB)")


def test_2_zfp_statements_hold_in_w():
    allowed = {("zfp.S4", EXPECTED_FAIL)}
    t = time.perf_counter()
    g3 = check_all(ZFP, 3, GENERIC)
    dt3 = time.perf_counter() - t
    t = time.perf_counter()
    w4 = check_all(ZFP, 4, WITNESS)
    dt4 = time.perf_counter() - t
    need = {"zfp.S1", "zfp.S2", "zfp.S3", "zfp.S6", "zfp.P1", "zfp.P2", "zfp.P3", "zfp.P4", "zfp.P5",
            "zfp.SetPairing", "zfp.CartesianProductExistence", "zfp.ZFPCharProp"}
    ok = True
    for reports in (g3, w4):
        names = {r.axiom for r in reports}
        s4 = [r.status for r in reports if r.axiom == "zfp.S4"]
        ok &= not _bad(reports, allowed) and need <= names and s4 == [EXPECTED_FAIL]
        ok &= any(r.axiom.startswith("zfp.S5[") for r in reports)
    ok &= dt3 <= W3_GENERIC_SECONDS and dt4 <= W4_WITNESS_SECONDS
    verdict(2, ok, f"W3 generic {len(g3)} reports in {dt3:.1f}s (<= {W3_GENERIC_SECONDS:.0f}s), "
                   f"W4 witness {len(w4)} reports in {dt4:.1f}s (<= {W4_WITNESS_SECONDS:.0f}s), "
                   f"unexpected {_bad(g3, allowed) or _bad(w4, allowed) or 'none'}")


def test_3_generic_and_witness_agree():
    try:
        ok, detail = cross_validate(3), "generic and witness verdicts identical at depth 3"
    except AssertionError as e:
        ok, detail = False, str(e)
    verdict(3, ok, detail)


def test_4_kuratowski_characteristic_property():
    # oracle: pairs built directly as sets of sets, independent of hf.kpair
    V = hf.v_tier(3).elems

    def pair(a, b):
        return hf.hf_set([hf.hf_set([a]), hf.hf_set([a, b])])

    cases = list(itertools.product(V, repeat=4))
    bad = [q for q in cases if (pair(q[0], q[1]) == pair(q[2], q[3])) != (q[0] == q[2] and q[1] == q[3])]
    lib = [q for q in cases if (hf.kpair(q[0], q[1]) is hf.kpair(q[2], q[3])) != (q[0] == q[2] and q[1] == q[3])]
    ok = len(cases) == 256 and not bad and not lib
    verdict(4, ok, f"{len(cases)} quadruples from V_3, {len(bad) + len(lib)} exceptions")


def test_5_accidental_theorems():
    t = time.perf_counter()
    items = accidental_suite(v_stage=3, w_depth=4)
    dt = time.perf_counter() - t
    by = {it.name: it for it in items}
    ok = all(it.holds for it in items) and dt <= W4_SCAN_SECONDS
    ok &= by["{b} in <b,c> for all b, c in V_3"].cases == 16
    ok &= by["no m-pair of W_4 has a memh-member"].cases == 289 * (2 ** 17 + 289)
    failed = [it.name for it in items if not it.holds]
    verdict(5, ok, f"{len(items)} items, failing {failed or 'none'}, {dt:.1f}s (<= {W4_SCAN_SECONDS:.0f}s)")


def test_6_iota_elimination():
    rng = np.random.default_rng(1)
    structs = [random_structure(rng) for _ in range(1000)] + [w_structure(2), v_structure(2)]
    corpus = generate(500, seed=0)
    assert all(1 <= count_iotas(f) <= 2 for f in corpus)
    batches = group_by_size(structs[:1000]) + [Batch.of([structs[1000]]), Batch.of([structs[1001]])]
    assert sum(b.size for b in batches) == 1002
    discrepancies = 0
    for f in corpus:
        g = eliminate_iota(f)
        for b in batches:
            discrepancies += int(np.count_nonzero(b.truth_table(f, FREE) != b.truth_table(g, FREE)))
    # the named structures once more through the tree-walking evaluator
    for s in structs[1000:]:
        for f in corpus[:100]:
            g = eliminate_iota(f)
            for a, c in itertools.product(s.domain, repeat=2):
                env = {FREE[0]: a, FREE[1]: c}
                discrepancies += eval_formula(f, s, env) != eval_formula(g, s, env)
    verdict(6, discrepancies == 0, f"{len(corpus)} formulas x {len(structs)} structures, "
                                   f"{discrepancies} discrepancies")


def test_7_translation_existential():
    s = w_structure(3)
    ev = Evaluator(s)
    y, z = Var(1), Var(2)
    envs = list(itertools.product(s.domain, repeat=2))
    mismatches = 0
    for text in EXISTENTIAL_CATALOG:
        lhs, rhs = existential_pair(text)
        mismatches += sum(ev.evaluate(lhs, {y: a, z: b}) != ev.evaluate(rhs, {y: a, z: b}) for a, b in envs)
    ok = len(EXISTENTIAL_CATALOG) >= 10 and len(envs) == 289 and mismatches == 0
    verdict(7, ok, f"{len(EXISTENTIAL_CATALOG)} formulas x {len(envs)} environments in W(3), {mismatches} mismatches")


def test_8_zf_baseline():
    reports = check_all(ZF, 3, GENERIC)
    allowed = {("zf.Infinity", EXPECTED_FAIL)}
    names = {r.axiom for r in reports}
    need = {"zf.Extensionality", "zf.Union", "zf.PowerSet", "zf.Foundation", "zf.EmptySet", "zf.Pairing"}
    inf = [r.status for r in reports if r.axiom == "zf.Infinity"]
    ok = not _bad(reports, allowed) and need <= names and inf == [EXPECTED_FAIL]
    ok &= any(r.axiom.startswith("zf.Replacement[") for r in reports)
    verdict(8, ok, f"{len(reports)} reports over V_3, unexpected {_bad(reports, allowed) or 'none'}")


def test_9_pairing_bijection_count():
    u = whier.build_w(4)
    top = u.tiers[4]
    pairs = sum(1 for x in top if whier.is_mpair(x))
    sets = sum(1 for x in top if whier.is_mset(x))
    ok = pairs == len(u.mpairs()) == 17 ** 2 and sets == 2 ** 17
    verdict(9, ok, f"{pairs} m-pairs (want 289), {sets} m-sets (want 131072) in W_4")
