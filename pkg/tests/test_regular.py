"""Isomorphism graphs, distances, submodule weight sets and irreducible
quotients at regular characters."""

import pytest

from kmhecke import presets, regular, rootdata
from kmhecke.regular import RegularityViolation


def test_check_regular_accepts_and_rejects(sl3, cases):
    datum, tau = sl3
    regular.check_regular(datum, tau, 3)
    datum2, tau2 = cases[2]
    with pytest.raises(RegularityViolation):
        regular.check_regular(datum2, tau2, 3)


def test_sl3_graph_iso_pattern(sl3):
    datum, tau = sl3
    graph = regular.build_graph(datum, tau, 3, seed=0)
    em = graph.edge_map()
    e = datum.identity_elt()
    s, t = datum.simple(0), datum.simple(1)
    sts = datum.from_word((0, 1, 0))
    want = {
        (e, s): False, (e, t): False,
        (s, t * s): True, (t, s * t): True,
        (t * s, sts): False, (s * t, sts): False,
    }
    assert len(graph.edges) == 6
    for (a, b), iso in want.items():
        assert em[frozenset((a, b))].iso == iso
    comps = {frozenset(c) for c in graph.iso_components()}
    assert comps == {frozenset({e}), frozenset({s, t * s}),
                     frozenset({t, s * t}), frozenset({sts})}


def test_affine_graph_all_non_iso(affine):
    datum, tau = affine
    graph = regular.build_graph(datum, tau, 5, seed=0)
    assert all(not edge.iso for edge in graph.edges)
    assert len(graph.iso_components()) == len(graph.vertices)


def test_edges_join_w_and_sw(affine):
    datum, tau = affine
    graph = regular.build_graph(datum, tau, 4, seed=0)
    for edge in graph.edges:
        assert edge.sw == datum.simple(edge.s) * edge.w
        assert edge.sw.length() == edge.w.length() + 1


def test_path_steps_walk_down_to_identity(rank2_even):
    datum, tau = rank2_even
    e = datum.identity_elt()
    for w in datum.ball(4):
        steps = regular.path_steps(datum, w)
        assert len(steps) == w.length()
        tail = w
        for base, s in steps:
            nxt = datum.simple(s) * tail
            # each step records the shorter endpoint of its edge
            assert base == (nxt if nxt.length() < tail.length() else tail)
            assert abs(nxt.length() - tail.length()) == 1
            tail = nxt
        assert tail == e


def test_semi_distance_symmetry_and_triangle(affine):
    datum, tau = affine
    ball = sorted(datum.ball(3), key=lambda w: (w.length(), w.matrix))
    for u in ball:
        for w in ball:
            duw = regular.semi_distance(datum, tau, u, w, seed=0)
            assert duw == regular.semi_distance(datum, tau, w, u, seed=0)
            if u == w:
                assert duw == 0
    e = datum.identity_elt()
    for w in ball:
        for u in ball:
            # d through an intermediate never beats the direct count
            direct = regular.semi_distance(datum, tau, e, w, seed=0)
            via = (regular.semi_distance(datum, tau, e, u, seed=0)
                   + regular.semi_distance(datum, tau, u, w, seed=0))
            if rootdata.bruhat_leq(u, w):
                assert direct <= via


def test_affine_distance_grows_linearly(affine):
    datum, tau = affine
    e = datum.identity_elt()
    for n in range(4):
        w = datum.from_word((0, 1) * n)
        assert regular.semi_distance(datum, tau, w, e, seed=0) == 2 * n


def test_sl3_submodule_weights_and_lattice(sl3):
    datum, tau = sl3
    s, t = datum.simple(0), datum.simple(1)
    sts = datum.from_word((0, 1, 0))
    ws = regular.submodule_weights(datum, tau, s, 3, seed=0)
    wt = regular.submodule_weights(datum, tau, t, 3, seed=0)
    wsts = regular.submodule_weights(datum, tau, sts, 3, seed=0)
    assert ws == frozenset({s, t * s, sts})
    assert wt == frozenset({t, s * t, sts})
    assert wsts == frozenset({sts})
    props = set(regular.proper_submodules(datum, tau, 3, seed=0))
    assert props == {ws, wt, wsts, ws | wt}
    # identity weight set is the whole ball, hence not proper
    full = regular.submodule_weights(datum, tau, datum.identity_elt(), 3,
                                     seed=0)
    assert full == frozenset(datum.ball(3))


def test_submodule_weights_are_bruhat_up_closed_on_components(affine):
    datum, tau = affine
    L = 5
    for w in datum.ball(3):
        ws = regular.submodule_weights(datum, tau, w, L, seed=0)
        assert w in ws
        for u in ws:
            assert regular.semi_distance(datum, tau, w, u, seed=0) >= 0


def test_affine_strict_chain(affine):
    datum, tau = affine
    L = 6
    prev = None
    for n in range(4):
        w = datum.from_word((0, 1) * n)
        got = regular.submodule_weights(datum, tau, w, L, seed=0)
        if prev is not None:
            assert got < prev
        prev = got


def test_steinberg_components_and_submodules(rank2_even):
    datum, tau = rank2_even
    L = 5
    graph = regular.build_graph(datum, tau, L, seed=0)
    comps = graph.iso_components()
    assert len(comps) == 3
    ball = datum.ball(L)
    ends = []
    for i in range(datum.n):
        ends.append(frozenset(w for w in ball if not w.is_identity()
                              and w.reduced_word()[-1] == i))
    props = set(regular.proper_submodules(datum, tau, L, seed=0))
    assert props == {ends[0], ends[1], ends[0] | ends[1]}


def test_irr_quotient_reports(sl3, affine):
    datum, tau = sl3
    graph = regular.build_graph(datum, tau, 3, seed=0)
    s = datum.simple(0)
    rep = regular.irr_quotient_report(graph, s)
    assert rep["dim"] == 2 and s in rep["weights"]
    assert rep["exact"] is True  # the full group fits in the ball

    datum, tau = affine
    graph = regular.build_graph(datum, tau, 5, seed=0)
    for w in graph.vertices:
        rep = regular.irr_quotient_report(graph, w)
        assert rep["dim"] == 1 and rep["weights"] == frozenset({w})


def test_max_proper_weights(sl3):
    datum, tau = sl3
    got = regular.max_proper_weights(datum, tau, 3, seed=0)
    s, t = datum.simple(0), datum.simple(1)
    ws = regular.submodule_weights(datum, tau, s, 3, seed=0)
    wt = regular.submodule_weights(datum, tau, t, 3, seed=0)
    assert got == ws | wt


def test_dot_export_shape(sl3):
    datum, tau = sl3
    graph = regular.build_graph(datum, tau, 2, seed=0)
    text = regular.dot_export(graph)
    assert text.startswith("graph ") and text.rstrip().endswith("}")
    assert text.count("--") == len(graph.edges)
    assert "style=dashed" in text  # sl3 tau has non-iso edges
