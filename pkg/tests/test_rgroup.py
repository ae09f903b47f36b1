"""Stabilizer decomposition W_tau = R_tau x| W_(tau), the psi operators,
idempotent splitting, ideals, and generalized weight bases."""

import pytest
from fractions import Fraction

from kmhecke import linalg, presets, rgroup, series
from kmhecke.rgroup import NotInUC


def test_square_characters_are_not_in_uc(sl3, rank2_even):
    for datum, tau in (sl3, rank2_even):
        with pytest.raises(NotInUC):
            rgroup.analyze(datum, tau, 3, seed=0)


def test_seven_classifications(cases):
    for n, (datum, tau) in cases.items():
        data = rgroup.analyze(datum, tau, 6, seed=0)
        assert rgroup.classify_rank2(data).case == n


def test_stabilizer_shapes(cases):
    def words(seq):
        return sorted(w.reduced_word() for w in seq)

    datum, tau = cases[1]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    assert words(data.w_tau) == [()]

    datum, tau = cases[2]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    assert words(data.w_tau) == [(), (0,)]
    assert words(data.r_tau) == [()]
    assert [r.reduced_word() for r, _, _ in data.s_tau] == [(0,)]

    datum, tau = cases[3]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    assert words(data.w_tau) == [(), (0,)]
    assert words(data.r_tau) == [(), (0,)]
    assert data.s_tau == []

    datum, tau = cases[4]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    assert data.s_tau == []
    rot = sorted((w for w in data.r_tau if not w.is_identity()),
                 key=lambda w: w.length())[0]
    assert rot.length() == 2  # an infinite-order rotation generates

    datum, tau = cases[7]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    assert [r.reduced_word() for r, _, _ in data.s_tau] == [(0,), (1, 0, 1)]
    assert words(data.r_tau) == [(), (1,)]
    # W_(tau) has index 2: the r-coset of w_paren is disjoint and lands
    # back inside W_tau (= all of W here)
    paren = set(data.w_paren)
    r = next(w for w in data.r_tau if not w.is_identity())
    coset = {w * r for w in paren}
    assert not (paren & coset)
    assert coset <= set(w for w in datum.ball(7) if rgroup.in_w_tau(tau, w))


def test_w_paren_is_generated_by_s_tau(cases):
    datum, tau = cases[7]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    gens = [r for r, _, _ in data.s_tau]
    seen = {datum.identity_elt()}
    frontier = [datum.identity_elt()]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = w * g
                if u.length() <= 6 and u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    assert set(data.w_paren) == {w for w in seen if w in set(data.w_tau)}


def test_singular_coroots_have_tau_value_one(cases):
    for n in (2, 5):
        datum, tau = cases[n]
        data = rgroup.analyze(datum, tau, 6, seed=0)
        for _, beta, _ in data.s_tau:
            assert tau.value_on(beta) == 1


def test_psi_scalar_square_and_end_table(cases):
    for n in (3, 7):
        datum, tau = cases[n]
        data = rgroup.analyze(datum, tau, 5, seed=0)
        module = series.PSModule(datum, tau, 5, seed=0)
        r = next(w for w in data.r_tau if not w.is_identity())
        c = rgroup.psi_inverse_check(data, module, r)
        assert c != 0
        table = rgroup.end_table(data, module)
        assert table["all_ok"]
        assert all(row["commutes"] for row in table["rows"])


def test_psi_prime_squares_to_identity(cases):
    datum, tau = cases[3]
    data = rgroup.analyze(datum, tau, 5, seed=0)
    module = series.PSModule(datum, tau, 5, seed=0)
    r = next(w for w in data.r_tau if not w.is_identity())
    op = rgroup.psi_prime(data, module, r)
    comp = op.compose(op)
    assert comp.defining == module.v_tau()
    for u in module.sub_basis(module.L - 2 * r.length()):
        base = module.basis_vector(u)
        assert comp.apply(base) == base


def test_idempotent_split_is_direct(cases):
    datum, tau = cases[3]
    data = rgroup.analyze(datum, tau, 5, seed=0)
    module = series.PSModule(datum, tau, 5, seed=0)
    split = rgroup.idempotent_split(data, module)
    assert split["dim_intersection"] == 0
    assert split["dim_sum"] == split["dim_plus"] + split["dim_minus"]
    assert split["dim_sum"] >= split["window"]
    assert split["plus_tau_dim"] == split["minus_tau_dim"] == 1
    assert split["plus_tau_line_ok"] and split["minus_tau_line_ok"]


def test_ideal_dictionary_round_trips(cases):
    for n in (3, 7):
        datum, tau = cases[n]
        data = rgroup.analyze(datum, tau, 4, seed=0)
        module = series.PSModule(datum, tau, 4, seed=0)
        rows = rgroup.ideal_dictionary(data, module)
        assert len(rows) == 4
        assert all(row["round_trip"] for row in rows)
        dims = sorted(row["dim_J"] for row in rows)
        assert dims == [0, 1, 1, 2]  # the four ideals of Q[Z/2]


def test_nested_image_chain_strictly_decreases(cases):
    datum, tau = cases[4]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    module = series.PSModule(datum, tau, 6, seed=0)
    chain = rgroup.nested_image_chain(data, module, k_max=3)
    assert chain["strictly_decreasing"] and chain["nested"]
    ranks = [row["rank"] for row in chain["chain"]]
    assert len(ranks) == 4
    assert all(a > b for a, b in zip(ranks, ranks[1:]))


def test_case2_k_basis_is_v_and_kv(cases):
    datum, tau = cases[2]
    data = rgroup.analyze(datum, tau, 5, seed=0)
    module = series.PSModule(datum, tau, 5, seed=0)
    records, vectors = rgroup.gen_weight_basis(data, module, 1)
    assert [rec["product"] for rec in records] == ["e", "s0"]
    assert vectors[0] == module.v_tau()
    assert vectors[1].max_support() == {datum.simple(0)}
    assert all(rec["max_support_ok"] for rec in records)
    rows = [v.coords() for v in vectors]
    assert linalg.rank(rows) == 2


def test_gen_weight_basis_matches_stable_space(cases):
    for n in (2, 7):
        datum, tau = cases[n]
        data = rgroup.analyze(datum, tau, 6, seed=0)
        module = series.PSModule(datum, tau, 6, seed=0)
        records, vectors = rgroup.gen_weight_basis(data, module, 3)
        stable = rgroup.gen_weight_space_stable(module, tau, 3)
        assert len(vectors) == len(stable)
        srows = [v.coords() for v in stable]
        for v in vectors:
            assert linalg.row_space_contains(srows, v.coords())


def test_conjecture_check_line(cases):
    for n in (2, 3, 7):
        datum, tau = cases[n]
        data = rgroup.analyze(datum, tau, 6, seed=0)
        module = series.PSModule(datum, tau, 6, seed=0)
        cc = rgroup.conjecture_check(data, module, 3)
        assert cc["line_ok"]
        assert cc["intersection_dim"] == 1
        assert all(flag for _, flag in cc["generators_not_weight"])
        assert cc["conjectural"] is False  # rank 2 is a theorem


def test_irr_dimension_reports(cases):
    datum, tau = cases[6]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    rep = rgroup.irr_dimension_report(data)
    assert rep["dim_N"] == 1  # whole group acts through R_tau: one coset
    datum, tau = cases[5]
    data = rgroup.analyze(datum, tau, 6, seed=0)
    rep = rgroup.irr_dimension_report(data)
    assert rep["dim_N_tau"] == 1 and rep["coset_count"] == 1
    assert rep["dim_N_tau_gen"] == len(data.w_paren)


def test_uc_reports_are_json_ready(cases):
    import json
    for n in (1, 4, 7):
        datum, tau = cases[n]
        rep = rgroup.uc_report(datum, tau, 5, seed=0)
        assert rep["case"] == n
        text = json.dumps(rep, sort_keys=True)
        assert json.loads(text) == json.loads(text)
        if n == 4:
            assert rep["nested_chain"]["strict"]
