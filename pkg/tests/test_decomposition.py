import json
import random

import pytest
from hypothesis import given, strategies as st

from branched_cp1.decomposition import (
    CaseLabel,
    ClassificationMismatch,
    StructuralError,
    canonical,
    canonical_form,
    canonical_key,
    classify_k2,
    enumerate_k2,
    make_graph,
    same_graph,
    validate,
)
from branched_cp1.decomposition.classify import classify_k2_detail
from branched_cp1.decomposition.graph import DecompositionGraph, Sign, disk_subsurfaces
from branched_cp1.decomposition.io import GraphFormatError, dumps, graph_to_dict, loads

from mutations import MUTATIONS, mutate

# frozen census for genus 2, <= 4 components, <= 4 curves; the same number
# comes out of the independent brute-force enumerator (tests/oracle_enumerator.py)
FROZEN_N = 28
FROZEN_LABELS = {"NegNeg": 14, "Mixed": 8, "PosPos": 6}


@pytest.mark.parametrize("name", sorted(canonical.CANONICAL))
def test_canonical_graphs_validate(name):
    rep = validate(canonical.CANONICAL[name]())
    assert rep.valid, str(rep)


@pytest.mark.parametrize("name,expected", [("pospos", "PosPos"), ("mixed", "Mixed"), ("mixed_separating", "Mixed"), ("negneg", "NegNeg")])
def test_canonical_classification(name, expected):
    assert classify_k2(canonical.CANONICAL[name]()).value == expected


def test_euler_classes_of_canonical():
    rep = validate(canonical.pospos())
    assert rep.euler_classes == {"S": -2, "D": 0}
    rep = validate(canonical.uniformizing())
    assert rep.euler_classes == {"S": -2}


@pytest.mark.parametrize("name,elem,field,value,rule", MUTATIONS)
def test_mutation_trips_rule(name, elem, field, value, rule):
    rep = validate(mutate(name, elem, field, value))
    assert not rep.valid
    assert rule in rep.rule_ids, rep.rule_ids


def test_mutations_cover_rules():
    assert {m[-1] for m in MUTATIONS} >= {f"V{i}" for i in range(12)}
    assert len(MUTATIONS) == 20


def test_classify_rejects_bad_input():
    with pytest.raises(ValueError):
        classify_k2(canonical.uniformizing())
    with pytest.raises(ValueError):
        classify_k2(mutate("pospos", "l", "index", 0))


def test_structural_errors():
    with pytest.raises(StructuralError):
        make_graph(2, [dict(id="S", sign="+", euler=-2)], [dict(id="l", index=0, essential=True, holonomy="loxodromic", left="S", right="X")])
    with pytest.raises(StructuralError):
        make_graph(1, [dict(id="S", sign="+", euler=0)])
    with pytest.raises(StructuralError):
        make_graph(2, [dict(id="S", sign="+", euler=-2), dict(id="S", sign="-", euler=0)])
    with pytest.raises(StructuralError):
        make_graph(2, [dict(id="S", sign="+", euler=-2, branch_orders=[0])])


# ---------------------------------------------------------------------------
# io


@pytest.mark.parametrize("name", sorted(canonical.CANONICAL))
def test_json_roundtrip(name):
    g = canonical.CANONICAL[name]()
    assert loads(dumps(g)) == g


def test_json_roundtrip_census(census):
    for g in census:
        assert loads(dumps(g)) == g


def _doc():
    return graph_to_dict(canonical.pospos())


@pytest.mark.parametrize(
    "edit",
    [
        lambda d: d.update(extra=1),
        lambda d: d["components"][0].update(colour="red"),
        lambda d: d["curves"][0].pop("index"),
        lambda d: d["curves"][0].update(index="1"),
        lambda d: d["curves"][0].update(index=True),
        lambda d: d["curves"][0].update(holonomy="elliptic"),
        lambda d: d["components"][0].update(sign="0"),
        lambda d: d["components"][0].update(boundary=[]),
        lambda d: d.update(genus=2.0),
        lambda d: d["curves"][0].update(essential=1),
    ],
)
def test_json_rejects_malformed(edit):
    d = _doc()
    edit(d)
    with pytest.raises(GraphFormatError):
        loads(json.dumps(d))


def test_json_rejects_truncated():
    text = dumps(canonical.pospos())
    with pytest.raises(GraphFormatError):
        loads(text[: len(text) // 2])


@given(st.text(max_size=40))
def test_json_fuzz_never_crashes_unexpectedly(text):
    try:
        loads(text)
    except GraphFormatError:
        pass


# ---------------------------------------------------------------------------
# canonical form


def _relabel(g: DecompositionGraph, seed: int) -> DecompositionGraph:
    rng = random.Random(seed)
    cids = [c.id for c in g.components]
    lids = [l.id for l in g.curves]
    new_c = [f"X{i}" for i in range(len(cids))]
    new_l = [f"y{i}" for i in range(len(lids))]
    rng.shuffle(new_c)
    rng.shuffle(new_l)
    cm, lm = dict(zip(cids, new_c)), dict(zip(lids, new_l))
    d = graph_to_dict(g)
    comps = d["components"]
    rng.shuffle(comps)
    for c in comps:
        c["id"] = cm[c["id"]]
        c["boundary"] = [lm[x] for x in c["boundary"]]
        rng.shuffle(c["boundary"])
    for l in d["curves"]:
        l["id"] = lm[l["id"]]
        l["left"], l["right"] = cm[l["left"]], cm[l["right"]]
    rng.shuffle(d["curves"])
    return loads(json.dumps(d))


@given(st.integers(0, 10**6), st.sampled_from(sorted(canonical.CANONICAL)))
def test_canonical_key_relabel_invariant(seed, name):
    g = canonical.CANONICAL[name]()
    h = _relabel(g, seed)
    assert canonical_key(g) == canonical_key(h)
    assert canonical_form(g) == canonical_form(h)
    assert same_graph(g, h)


@given(st.integers(0, 10**6))
def test_validation_relabel_invariant(census, seed):
    g = census[seed % len(census)]
    h = _relabel(g, seed)
    assert validate(h).valid
    assert classify_k2(h) == classify_k2(g)


def test_census_classes_are_distinct(census):
    keys = {canonical_key(g) for g in census}
    assert len(keys) == len(census)


# ---------------------------------------------------------------------------
# enumeration


def test_enumeration_frozen_count(census):
    assert len(census) == FROZEN_N
    labels = {}
    for g in census:
        labels[classify_k2(g).value] = labels.get(classify_k2(g).value, 0) + 1
    assert labels == FROZEN_LABELS


def test_enumeration_contains_canonical(census):
    keys = {canonical_key(g) for g in census}
    for name in ("pospos", "mixed", "mixed_separating", "negneg"):
        assert canonical_key(canonical.CANONICAL[name]()) in keys


def test_enumeration_matches_oracle(census):
    from oracle_enumerator import oracle_enumerate, to_decomposition

    oracle = oracle_enumerate(2, 4, 4)
    assert len(oracle) == FROZEN_N
    ours = {canonical_key(g) for g in census}
    theirs = {canonical_key(to_decomposition(G, 2)) for G in oracle}
    assert ours == theirs


def test_small_enumerations():
    # one curve: a disk cut off from a branched piece, with divisor (1,1) or (2)
    assert [classify_k2(g).value for g in enumerate_k2(2, 2, 1)] == ["PosPos", "PosPos", "NegNeg", "NegNeg"]
    assert [classify_k2(g).value for g in enumerate_k2(2, 2, 2)] == ["PosPos", "PosPos", "Mixed", "NegNeg", "NegNeg"]
    assert enumerate_k2(2, 1, 0) == []  # a closed surface of one sign cannot carry ord 2
    with pytest.raises(ValueError):
        enumerate_k2(2, 9, 4)


def test_corollaries_over_census(census):
    for g in census:
        kp, km = g.k_sign(Sign.POS), g.k_sign(Sign.NEG)
        assert g.ord % 2 == 0
        assert 2 * g.euler_sign(Sign.NEG) == kp - km
        assert (kp + len(g.curves)) % 2 == 1
        assert all(l.index <= 1 for l in g.curves)
        for c in g.components:
            if c.is_disk:
                assert c.k == 0


def test_classification_details(census):
    for g in census:
        d = classify_k2_detail(g)
        assert d.label in CaseLabel
        if d.label is CaseLabel.POSPOS:
            assert g.k_sign(Sign.POS) == 2
        elif d.label is CaseLabel.NEGNEG:
            assert g.k_sign(Sign.NEG) == 2
        else:
            assert g.k_sign(Sign.POS) == g.k_sign(Sign.NEG) == 1
