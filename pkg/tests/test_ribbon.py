import random

import pytest

from ncdiv.algebra import AlgebraError, FreeAlgebra
from ncdiv.brackets import PairingTable, hamiltonian, induced_bracket
from ncdiv.divergence import DefaultSetting, delta_k, make_nabla_W
from ncdiv.parsing import parse_tensor, parse_trace
from ncdiv.ribbon import (RibbonGraph, bar_graph, cyclic_injections, graph_normalize,
                          graph_operate, graph_validate, lk_closed_form, make_Lk)
from ncdiv.suites import random_cyclic_word, random_ribbon_graph, random_skew_pairing

W = FreeAlgebra("tensor", "uvw")
P = PairingTable(W, {(1, 2): 1}, skew=True)


def tr(text):
    return parse_trace(text, W)


def test_lk_shape():
    for k in (1, 2, 3, 5):
        d = graph_validate(make_Lk(k))
        assert d["valid"]
        assert (d["vertices"], d["edges"], d["boundaries"]) == (k, k, 2)
        assert d["valency"] == [2] * k
    with pytest.raises(AlgebraError):
        make_Lk(0)


def test_invalid_graphs_reported():
    d = graph_validate(RibbonGraph([(0, 1)], [(0, 0)]))
    assert not d["valid"]
    assert any("fixes" in e or "fixed" in e for e in d["errors"])
    d = graph_validate(RibbonGraph([(0, 1, 2)], [(0, 1)]))
    assert not d["valid"]


def test_isolated_vertices():
    g = RibbonGraph([(), ()], [])
    d = graph_validate(g)
    assert d["valid"] and d["boundaries"] == 2


def test_isolated_vertex_passes_word_through():
    out = graph_operate(RibbonGraph([()], []), P, [tr("uv")])
    assert out == parse_tensor("uv", W, arity=1)


def test_tadpole_examples():
    assert not graph_operate(make_Lk(1), P, [tr("uv")])
    # worked by hand from the pair sum: 1 (x) w - w (x) 1
    assert graph_operate(make_Lk(1), P, [tr("uvw")]) == parse_tensor("1 (x) w - w (x) 1", W)


def test_too_few_letters_gives_zero():
    g = RibbonGraph([(0, 1, 2), (3,)], [(0, 1), (2, 3)])
    assert graph_validate(g)["valid"]
    assert not graph_operate(g, P, [tr("uv"), tr("w")])


def test_bar_is_necklace_bracket():
    out = graph_operate(bar_graph(), P, [tr("u"), tr("v")])
    assert out == parse_tensor("1", W, arity=1)
    rng = random.Random(8)
    for _ in range(20):
        p = random_skew_pairing(rng, W)
        x, y = random_cyclic_word(rng, W), random_cyclic_word(rng, W)
        want = induced_bracket(p, x, y)
        got = graph_operate(bar_graph(), p, [x, y])
        assert got == parse_tensor(str(want).replace("|", "") if want else "0", W, arity=1)


def test_operand_count():
    with pytest.raises(AlgebraError):
        graph_operate(make_Lk(2), P, [tr("uv")])


def test_normalize_signs():
    g = make_Lk(2)
    flipped = g.copy(edges=[(b, a) if i == 0 else (a, b) for i, (a, b) in enumerate(g.edges)])
    _, s1 = graph_normalize(g)
    _, s2 = graph_normalize(flipped)
    assert s1 == -s2
    relabelled = g.copy(edges=list(reversed(g.edges)))
    assert graph_normalize(relabelled)[1] == s1
    canon, _ = graph_normalize(g)
    assert graph_normalize(canon)[1] == 1


def test_flip_and_relabel_randomized():
    rng = random.Random(3)
    for _ in range(40):
        p = random_skew_pairing(rng, W)
        g = random_ribbon_graph(rng)
        ws = [random_cyclic_word(rng, W, max_len=4) for _ in g.vertices]
        base = graph_operate(g, p, ws)
        i = rng.randrange(len(g.edges))
        edges = list(g.edges)
        edges[i] = edges[i][::-1]
        assert graph_operate(g.copy(edges=edges), p, ws) == -base
        shuffled = list(g.edges)
        rng.shuffle(shuffled)
        assert graph_operate(g.copy(edges=shuffled), p, ws) == base
        norm, sign = graph_normalize(g)
        assert graph_operate(norm, p, ws).scale(sign) == base


def test_cyclic_injections_count():
    # choose the image set, then one of d rotations
    assert len(list(cyclic_injections(2, 4))) == 6 * 2
    assert list(cyclic_injections(0, 3)) == [()]
    assert not list(cyclic_injections(3, 2))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lk_equals_signed_delta(k):
    rng = random.Random(100 + k)
    setting = DefaultSetting(make_nabla_W(W))
    for _ in range(15):
        p = random_skew_pairing(rng, W)
        ws = [random_cyclic_word(rng, W, max_len=4) for _ in range(k)]
        lhs = delta_k(setting, hamiltonian(p), ws).scale((-1) ** k)
        assert lhs == graph_operate(make_Lk(k), p, ws) == lk_closed_form(p, ws)


def test_json_round_trip():
    g = make_Lk(3)
    h = RibbonGraph.from_json(g.to_json())
    assert (h.vertices, h.edges, h.boundaries) == (g.vertices, g.edges, g.boundaries)
