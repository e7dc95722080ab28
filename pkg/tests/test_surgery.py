import pytest
from hypothesis import given, settings, strategies as st

from branched_cp1.decomposition import canonical as K
from branched_cp1.decomposition import canonical_key, classify_k2, same_graph, validate
from branched_cp1.decomposition.graph import BranchDivisor, Sign
from branched_cp1.surgery import (
    ArcSpec,
    CurveSpec,
    NotABubble,
    PlanFailure,
    SurgeryError,
    SurgeryRejected,
    UnsupportedSurgery,
    bubble,
    debubble,
    debubble_options,
    graft,
    move_branch_point,
    parse_script,
    plan_walk,
    run_script,
    supported_arcs,
    ungraft,
)
from branched_cp1.surgery.script import ScriptSyntaxError
from branched_cp1.surgery.walk import graft_specs


def test_grafting_produces_canonical_graphs():
    u = K.uniformizing()
    r = graft(u, CurveSpec.nonsep("S"))
    assert same_graph(r.graph, K.grafted_nonseparating())
    assert r.divisor_delta == ((), ())
    assert same_graph(graft(u, CurveSpec.sep("S", -1, -1)).graph, K.grafted_separating())


def test_ungraft_inverts_graft():
    u = K.uniformizing()
    for spec in (CurveSpec.nonsep("S"), CurveSpec.sep("S", -1, -1)):
        h = graft(u, spec).graph
        A = next(c.id for c in h.components if c.sign is Sign.NEG)
        assert same_graph(ungraft(h, A), u)
    with pytest.raises(SurgeryError):
        ungraft(u, "S")


def test_grafting_a_disk_is_rejected():
    with pytest.raises(SurgeryRejected):
        graft(K.pospos(), CurveSpec.nonsep("D"))


@pytest.mark.parametrize(
    "src,arc,dst",
    [
        ("uniformizing", ArcSpec("interior", "S"), "pospos"),
        ("grafted_nonseparating", ArcSpec("crossing_once", "l1"), "mixed"),
        ("grafted_separating", ArcSpec("crossing_once", "l1"), "mixed_separating"),
        ("grafted_nonseparating", ArcSpec("annulus_to_annulus", "A", "P"), "negneg"),
    ],
)
def test_bubbling_produces_canonical_graphs(src, arc, dst):
    r = bubble(K.CANONICAL[src](), arc)
    assert r.divisor_delta == ((1, 1), ())
    assert r.delta_ord == 2
    assert same_graph(r.graph, K.CANONICAL[dst]())


@pytest.mark.parametrize(
    "src,curve,dst",
    [("pospos", "l", "uniformizing"), ("mixed", "l1", "grafted_nonseparating"), ("negneg", "l", "grafted_nonseparating")],
)
def test_debubbling_inverts(src, curve, dst):
    r = debubble(K.CANONICAL[src](), curve)
    assert r.divisor_delta == ((), (1, 1))
    assert same_graph(r.graph, K.CANONICAL[dst]())


def test_debubble_errors():
    with pytest.raises(NotABubble):
        debubble(K.uniformizing(), "l")
    with pytest.raises(NotABubble):
        debubble(K.grafted_nonseparating(), "l1")
    assert debubble_options(K.uniformizing()) == []


def test_unsupported_arc_patterns():
    with pytest.raises(UnsupportedSurgery):
        ArcSpec("crossing_twice", "l1")
    with pytest.raises(UnsupportedSurgery):
        ArcSpec("annulus_to_annulus", "A")
    with pytest.raises(UnsupportedSurgery):
        bubble(K.grafted_nonseparating(), ArcSpec("annulus_to_annulus", "P", "A"))


# ---------------------------------------------------------------------------
# fuzzing


def _seeds(census):
    return [f() for f in K.CANONICAL.values()] + list(census)


def _apply(g, kind, arg):
    return {"bubble": bubble, "graft": graft, "debubble": debubble}[kind](g, arg)


def _ops(g):
    return (
        [("bubble", a) for a in supported_arcs(g)]
        + [("graft", s) for s in graft_specs(g)]
        + [("debubble", l.id) for l in g.curves]
    )


def _check_result(g, kind, arg, res):
    h = res.graph
    assert validate(h).valid
    expected = g.divisor + BranchDivisor(res.divisor_delta[0])
    for o in res.divisor_delta[1]:
        expected = expected.remove(o)
    assert h.divisor == expected
    if kind == "bubble":
        old = {l.id for l in g.curves}
        at = [arg.target] if arg.pattern == "crossing_once" else [l.id for l in h.curves if l.id not in old]
        backs = []
        for lid in at:
            try:
                backs.append(canonical_key(debubble(h, lid).graph))
            except NotABubble:
                pass
        assert canonical_key(g) in backs
    if kind == "graft":
        new = [c.id for c in h.components if not g.has_component(c.id) and c.euler == 0 and c.k == 0]
        assert any(same_graph(ungraft(h, a), g) for a in new)


@settings(max_examples=150)
@given(st.data())
def test_fuzzed_surgeries(census, data):
    seeds = _seeds(census)
    g = data.draw(st.sampled_from(seeds))
    for _ in range(data.draw(st.integers(1, 3))):
        kind, arg = data.draw(st.sampled_from(_ops(g)))
        try:
            res = _apply(g, kind, arg)
        except (SurgeryRejected, NotABubble, UnsupportedSurgery):
            continue
        _check_result(g, kind, arg, res)
        g = res.graph


# ---------------------------------------------------------------------------
# branch point moves


def test_move_pospos_to_mixed():
    res = move_branch_point(K.pospos(), "S", "l")
    assert res
    certified = [r for r in res if r.status == "certified"]
    assert any(same_graph(r.graph, K.mixed()) for r in certified)
    for r in res:
        assert validate(r.graph).valid
        assert r.graph.ord == 2
        assert classify_k2(r.graph).value == "Mixed"


def test_move_mixed_to_negneg_and_pospos():
    res = move_branch_point(K.mixed(), "P", "l1")
    assert any(same_graph(r.graph, K.negneg()) for r in res)
    assert all(r.status == "candidate" for r in res)
    res = move_branch_point(K.mixed(), "A", "l1")
    assert any(same_graph(r.graph, K.pospos()) for r in res)


def test_move_negneg_to_mixed_is_certified():
    res = move_branch_point(K.negneg(), "N", "l")
    assert res and all(classify_k2(r.graph).value == "Mixed" for r in res)
    assert all(r.status == "certified" for r in res)


def test_move_errors_and_trivial_cases():
    with pytest.raises(UnsupportedSurgery):
        move_branch_point(K.uniformizing(), "S", None)
    with pytest.raises(SurgeryError):
        move_branch_point(K.pospos(), "D", "l")
    with pytest.raises(SurgeryError):
        move_branch_point(K.pospos(), "S", "nope")
    r = move_branch_point(K.pospos(), "S", None)
    assert len(r) == 1 and r[0].graph == K.pospos()
    doubled = K.pospos().replace_component("S", branch_orders=BranchDivisor((2,)))
    assert validate(doubled).valid
    assert move_branch_point(doubled, "S", "l") == []


def test_moves_from_census_stay_valid(census):
    for g in census[:10]:
        for c in g.components:
            if c.k == 0:
                continue
            for lid in dict.fromkeys(c.boundary):
                for r in move_branch_point(g, c.id, lid):
                    assert validate(r.graph).valid
                    assert r.graph.divisor == g.divisor


# ---------------------------------------------------------------------------
# walks


def _walk_len(src, dst, m, n):
    return (src.ord == 2) + 2 * (m + n) + (dst.ord == 2)


@pytest.mark.parametrize(
    "src,dst,m,n",
    [
        ("uniformizing", "uniformizing", 0, 0),
        ("pospos", "uniformizing", 0, 0),
        ("pospos", "mixed", 1, 0),
        ("pospos", "mixed", 0, 1),
        ("uniformizing", "grafted_separating", 1, 0),
        ("uniformizing", "negneg", 1, 0),
    ],
)
def test_plan_walk(src, dst, m, n):
    s, t = K.CANONICAL[src](), K.CANONICAL[dst]()
    steps = plan_walk(s, t, m, n)
    assert len(steps) == _walk_len(s, t, m, n)
    assert all(st.kind in ("bubble", "debubble") for st in steps)
    for st in steps:
        assert validate(st.graph).valid
    final = steps[-1].graph if steps else s
    assert same_graph(final, t)
    assert sum(st.realizes is not None for st in steps) == m + n


def test_plan_walk_failures():
    with pytest.raises(PlanFailure):
        plan_walk(K.negneg(), K.pospos(), 0, 1)  # would need an annulus removed
    with pytest.raises(PlanFailure):
        plan_walk(K.pospos(), K.mixed(), -1, 0)
    with pytest.raises(PlanFailure):
        plan_walk(K.pospos().replace_curve("l", index=0), K.uniformizing(), 0, 0)


# ---------------------------------------------------------------------------
# scripts


def test_script_roundtrip():
    steps = parse_script("# bubble and undo\nbubble interior S\n\ndebubble b0  # the new curve\n")
    assert [s.op for s in steps] == ["bubble", "debubble"]
    out = list(run_script(K.uniformizing(), steps))
    assert same_graph(out[-1][1].graph, K.uniformizing())


def test_script_all_forms():
    text = "graft S nonsep\ngraft S separating -1 -1\nbubble interior S\nbubble crossing l1\nbubble a2a A P\ndebubble l\nmove S l\n"
    steps = parse_script(text)
    assert [s.op for s in steps] == ["graft", "graft", "bubble", "bubble", "bubble", "debubble", "move"]
    assert steps[1].args[0] == CurveSpec.sep("S", -1, -1)


@pytest.mark.parametrize("bad", ["graft S", "bubble sideways S", "graft S separating x -1", "teleport S"])
def test_script_syntax_errors(bad):
    with pytest.raises(ScriptSyntaxError):
        parse_script(bad)


def test_script_move_prefers_certified():
    (st, res), = run_script(K.pospos(), parse_script("move S l"))
    assert res.status == "certified"
    assert classify_k2(res.graph).value == "Mixed"
