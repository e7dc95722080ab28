"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line; the lines
are repeated in the pytest terminal summary (see conftest.py).  Running
this file directly prints the nine lines without pytest."""

import math
import random
import time

from branched_cp1.bmconfig import chain_check, safety_constants
from branched_cp1.decomposition import canonical as K
from branched_cp1.decomposition import canonical_key, classify_k2, enumerate_k2, same_graph, validate
from branched_cp1.decomposition.classify import ClassificationMismatch, classify_k2_detail
from branched_cp1.decomposition.graph import BranchDivisor, Sign
from branched_cp1.devmap import Bubbled, Grafted, Uniformizing, develop_geodesic_arc, index_of_real_curve, scenario_nonisobub, winding_curve
from branched_cp1.fuchsian import commutator_relator, evaluate_word, standard_genus2, systole_estimate
from branched_cp1.moebius import IDENTITY, MoebiusMap, ProjectivePoint, hyperbolic_distance, translation_length
from branched_cp1.surgery import NotABubble, SurgeryRejected, UnsupportedSurgery, bubble, debubble, graft, move_branch_point, plan_walk, supported_arcs, ungraft
from branched_cp1.surgery.walk import graft_specs

from mutations import MUTATIONS, mutate

RESULTS = []
_CENSUS = {}


def report(n, ok, text):
    line = f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {text}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _census():
    if "g" not in _CENSUS:
        t0 = time.perf_counter()
        _CENSUS["g"] = enumerate_k2(2, 4, 4)
        _CENSUS["t"] = time.perf_counter() - t0
    return _CENSUS["g"], _CENSUS["t"]


def test_criterion_1_index_formula_suite():
    t0 = time.perf_counter()
    names = ["uniformizing", "grafted_separating", "grafted_nonseparating", "pospos"]
    canon_ok = all(validate(K.CANONICAL[n]()).valid for n in names)
    misses = []
    for name, elem, field, value, rule in MUTATIONS:
        rep = validate(mutate(name, elem, field, value))
        if rep.valid or rule not in rep.rule_ids:
            misses.append((name, elem, field, rule, rep.rule_ids))
    dt = time.perf_counter() - t0
    ok = canon_ok and not misses and len(MUTATIONS) == 20 and dt < 1.0
    report(1, ok, f"canonical graphs valid={canon_ok}, {20 - len(misses)}/20 mutations hit their rule, {dt:.3f}s < 1s")


def test_criterion_2_classification_crosscheck():
    from oracle_enumerator import oracle_enumerate, to_decomposition

    graphs, dt = _census()
    mismatches = 0
    multi = 0
    for g in graphs:
        try:
            classify_k2_detail(g)
        except ClassificationMismatch:
            mismatches += 1
        kp, km = g.k_sign(Sign.POS), g.k_sign(Sign.NEG)
        cases = [kp == 2, km == 2, kp == km == 1]
        multi += sum(cases) != 1
    oracle = {canonical_key(to_decomposition(G, 2)) for G in oracle_enumerate(2, 4, 4)}
    ours = {canonical_key(g) for g in graphs}
    ok = dt < 60 and mismatches == 0 and multi == 0 and ours == oracle and len(graphs) == 28
    report(2, ok, f"N={len(graphs)} (oracle {len(oracle)}, frozen 28), mismatches={mismatches}, ambiguous={multi}, {dt:.2f}s < 60s")


def test_criterion_3_corollaries():
    graphs, _ = _census()
    bad = 0
    for g in graphs:
        kp, km = g.k_sign(Sign.POS), g.k_sign(Sign.NEG)
        bad += g.ord % 2 != 0
        bad += 2 * g.euler_sign(Sign.NEG) != kp - km
        bad += (kp + len(g.curves)) % 2 != 1
        bad += any(l.index > 1 for l in g.curves)
        bad += any(c.is_disk and c.k > 0 for c in g.components)
    report(3, bad == 0, f"{len(graphs)} graphs, {bad} exceptions to parity, 2chi(neg)=k+-k-, k+ + #curves odd, index<=1, unbranched disks")


def test_criterion_4_surgery_algebra():
    graphs, _ = _census()
    seeds = [f() for f in K.CANONICAL.values()] + list(graphs)
    rng = random.Random(20261016)
    t0 = time.perf_counter()
    done = bad_delta = bad_valid = bad_trip = 0
    while done < 1000:
        g = rng.choice(seeds)
        ops = [("bubble", a) for a in supported_arcs(g)] + [("graft", s) for s in graft_specs(g)] + [("debubble", l.id) for l in g.curves]
        kind, arg = rng.choice(ops)
        try:
            res = {"bubble": bubble, "graft": graft, "debubble": debubble}[kind](g, arg)
        except (SurgeryRejected, NotABubble, UnsupportedSurgery):
            continue  # not a supported surgery on this seed
        done += 1
        h = res.graph
        bad_valid += not validate(h).valid
        expected = g.divisor + BranchDivisor(res.divisor_delta[0])
        for o in res.divisor_delta[1]:
            expected = expected.remove(o)
        bad_delta += h.divisor != expected
        if kind == "bubble":
            at = [arg.target] if arg.pattern == "crossing_once" else [l.id for l in h.curves if not g.has_curve(l.id)]
            backs = set()
            for lid in at:
                try:
                    backs.add(canonical_key(debubble(h, lid).graph))
                except NotABubble:
                    pass
            bad_trip += canonical_key(g) not in backs
    dt = time.perf_counter() - t0
    ok = bad_delta == bad_valid == bad_trip == 0 and dt < 30
    report(4, ok, f"{done} surgeries: delta errors={bad_delta}, invalid={bad_valid}, failed round trips={bad_trip}, {dt:.2f}s < 30s")


def test_criterion_5_numeric_kernel():
    rep = standard_genus2()
    rel = evaluate_word(rep, commutator_relator(2))
    rel_err = min(abs(rel.matrix - IDENTITY.matrix).max(), abs(rel.matrix + IDENTITY.matrix).max())
    s6, s8 = systole_estimate(rep, 6), systole_estimate(rep, 8)
    ref = 2 * math.acosh(1 + math.sqrt(2))
    tl = translation_length(MoebiusMap(math.sqrt(2), 0, 0, 1 / math.sqrt(2)))
    hd = hyperbolic_distance(1j, 1 + 1j)
    ok = rel_err < 1e-8 and abs(s6 - s8) < 1e-6 and abs(s8 - ref) < 1e-6
    ok = ok and abs(tl - math.log(2)) < 1e-12 and abs(hd - math.acosh(1.5)) < 1e-12
    report(5, ok, f"relator err={rel_err:.1e}, systole L6={s6:.12f} L8={s8:.12f} ref={ref:.12f}, ln2 err={abs(tl - math.log(2)):.1e}, d(i,1+i) err={abs(hd - math.acosh(1.5)):.1e}")


def test_criterion_6_numeric_indices():
    t0 = time.perf_counter()
    rep = standard_genus2()
    gr = Grafted(rep, rep.word("a1"))
    fp = gr.axis()[0]
    graft_idx = [index_of_real_curve(gr.annulus_boundary(s), gr.holonomy, fp) for s in (1, -1)]
    bub = Bubbled(Uniformizing(rep), develop_geodesic_arc(rep, 1j, 0.0, 0.5))
    bub_idx = index_of_real_curve(bub.real_curve(), IDENTITY, ProjectivePoint(1, 0))
    wc, h = winding_curve(3)
    wind_idx = index_of_real_curve(wc, h, ProjectivePoint(1, 0))
    dt = time.perf_counter() - t0
    ok = graft_idx == [0, 0] and bub_idx == 1 and wind_idx == 3 and dt < 5
    report(6, ok, f"graft boundaries {graft_idx}, bubble boundary {bub_idx}, winding {wind_idx}, {dt:.2f}s < 5s")


def test_criterion_7_nonisobub():
    t0 = time.perf_counter()
    r = scenario_nonisobub(theta=0.2)
    dt = time.perf_counter() - t0
    p, m, z = r.plus.certificate, r.minus.certificate, r.zero.certificate
    ok = p.injective and m.injective and p.status == m.status == "certified"
    ok = ok and not z.injective and z.witness is not None
    ok = ok and r.plus.orientation == -r.minus.orientation != 0 and dt < 10
    report(7, ok, f"alpha+ {p.status}/{p.basis}, alpha- {m.status}/{m.basis}, alpha0 injective={z.injective} witness={z.witness}, orientation {r.plus.orientation:+d}/{r.minus.orientation:+d}, {dt:.2f}s < 10s")


def test_criterion_8_safety_chain():
    rep = standard_genus2()
    x, y = 1j, 0.3 + 1.4j
    c = safety_constants(rep, x, y, 6)
    worst_gap = math.inf
    ok = c.K > 0 and c.A > 0
    for frac in (0.05, 0.25, 0.5, 0.75, 0.95, 0.999):
        L = frac * c.A
        holds, worst = chain_check(rep, x, y, c, L)
        ok = ok and holds
        worst_gap = min(worst_gap, worst - (c.K - 2 * L))
    av = safety_constants(rep, x, evaluate_word(rep, rep.word("a1"))(x), 6)
    op = safety_constants(rep, x, 0.3 - 1.4j, 6)
    ok = ok and av.K == 0 and math.isinf(op.K)
    report(8, ok, f"K={c.K:.6f} A={c.A:.6f}, chain slack >= {worst_gap:.2e} over 6 values of L < A, avatars K={av.K}, opposite K={op.K}")


def test_criterion_9_moves_and_walks():
    res = move_branch_point(K.pospos(), "S", "l")
    hit = any(r.status == "certified" and same_graph(r.graph, K.mixed()) for r in res)
    walks = [("pospos", "mixed", 1, 0), ("pospos", "uniformizing", 0, 0), ("uniformizing", "negneg", 1, 0), ("pospos", "mixed_separating", 1, 0)]
    n_steps = bad = 0
    for s, t, m, n in walks:
        steps = plan_walk(K.CANONICAL[s](), K.CANONICAL[t](), m, n)
        n_steps += len(steps)
        bad += sum(not validate(st.graph).valid for st in steps)
        bad += not same_graph(steps[-1].graph, K.CANONICAL[t]())
    ok = hit and bad == 0
    report(9, ok, f"PosPos move reaches certified Mixed={hit} ({len(res)} results); {len(walks)} walks, {n_steps} steps, {bad} invalid")


if __name__ == "__main__":
    import sys

    fails = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            fails += 1
    sys.exit(1 if fails else 0)
