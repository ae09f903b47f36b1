"""Laurent polynomials, the fraction field, and characters.

The honest oracle throughout: evaluate at random nonzero rational
points and compare against plain Fraction arithmetic.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kmhecke.laurent import (Character, LaurentPoly, NotInLocalization,
                             RatFn, eval_ratfn, poly_div_binomial,
                             _peel_atoms, _atom_poly)

DIM = 2

exponents = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.dictionaries(exponents, coeffs, min_size=0, max_size=5).map(
    LaurentPoly)


def ev_poly(p, pt):
    total = Fraction(0)
    for e, c in p.terms.items():
        val = c
        for x, v in zip(pt, e):
            val *= Fraction(x) ** v
        total += val
    return total


def rand_point(rng):
    while True:
        pt = tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 5))
                   for _ in range(DIM))
        if all(pt):
            return pt


# -- polynomial ring ----------------------------------------------------------------


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentPoly({}) == a


@given(polys, polys)
@settings(max_examples=40)
def test_poly_ops_match_evaluation(a, b):
    rng = random.Random(17)
    for _ in range(3):
        pt = rand_point(rng)
        assert ev_poly(a + b, pt) == ev_poly(a, pt) + ev_poly(b, pt)
        assert ev_poly(a * b, pt) == ev_poly(a, pt) * ev_poly(b, pt)
        assert ev_poly(a - b, pt) == ev_poly(a, pt) - ev_poly(b, pt)


def test_monomial_and_zero():
    m = LaurentPoly.monomial((2, -1), Fraction(3))
    assert m.terms == {(2, -1): Fraction(3)}
    assert LaurentPoly({}).is_zero()
    assert not m.is_zero()
    assert (m - m).is_zero()


# -- exact binomial division --------------------------------------------------------


@given(polys, st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
       st.fractions(min_value=-4, max_value=4, max_denominator=4))
@settings(max_examples=60)
def test_binomial_division_recovers_factor(q, v, c):
    if not any(v) or c == 0:
        return
    atom = _atom_poly((v, c), DIM)
    p = atom * q
    got = poly_div_binomial(p, v, c)
    if q.is_zero():
        assert got is not None and got.is_zero()
    else:
        assert got == q


@given(polys, st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
       st.fractions(min_value=-4, max_value=4, max_denominator=4))
@settings(max_examples=60)
def test_binomial_division_detects_remainder(p, v, c):
    if not any(v) or c == 0:
        return
    got = poly_div_binomial(p, v, c)
    atom = _atom_poly((v, c), DIM)
    if got is None:
        # p must genuinely not be divisible: check at a point where the
        # factor does not vanish but division would have to hold
        rng = random.Random(5)
        reconstructed = False
    else:
        assert atom * got == p
        reconstructed = True
    # either way, evaluation stays consistent
    if reconstructed and not p.is_zero():
        rng = random.Random(5)
        pt = rand_point(rng)
        if ev_poly(atom, pt):
            assert ev_poly(got, pt) == ev_poly(p, pt) / ev_poly(atom, pt)


def test_peel_atoms_reassembles():
    rng = random.Random(3)
    for _ in range(40):
        atoms = {}
        prod = LaurentPoly.monomial(
            (rng.randint(-2, 2), rng.randint(-2, 2)),
            Fraction(rng.choice((1, 2, -3))))
        for _ in range(rng.randint(0, 3)):
            v = (rng.randint(-2, 2), rng.randint(-2, 2))
            if not any(v):
                continue
            c = Fraction(rng.choice((1, -1, 2, Fraction(1, 2))))
            atoms[(v, c)] = atoms.get((v, c), 0) + 1
            prod = prod * _atom_poly((v, c), DIM)
        exp, coeff, got_atoms, extra = _peel_atoms(prod)
        back = LaurentPoly.monomial(exp, coeff)
        if extra is not None:
            back = back * extra
        for (v, c), k in got_atoms.items():
            for _ in range(k):
                back = back * _atom_poly((v, c), DIM)
        assert back == prod


# -- the fraction field -------------------------------------------------------------


def rand_ratfn(rng):
    num = LaurentPoly({
        (rng.randint(-2, 2), rng.randint(-2, 2)):
        Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))})
    den = LaurentPoly.monomial((0, 0))
    for _ in range(rng.randint(0, 2)):
        v = (rng.randint(-2, 2), rng.randint(-2, 2))
        if any(v):
            den = den * (LaurentPoly.monomial((0, 0))
                         - LaurentPoly.monomial(v, Fraction(rng.choice((1, 2, -1)))))
    if num.is_zero():
        num = LaurentPoly.monomial((0, 0))
    return RatFn(num, den)


def ev_ratfn_at(f, pt):
    den = ev_poly(f.den, pt)
    if den == 0:
        return None
    return ev_poly(f.num, pt) / den


def test_ratfn_field_ops_match_evaluation():
    rng = random.Random(11)
    for _ in range(60):
        a, b = rand_ratfn(rng), rand_ratfn(rng)
        for _ in range(4):
            pt = rand_point(rng)
            va, vb = ev_ratfn_at(a, pt), ev_ratfn_at(b, pt)
            if va is None or vb is None:
                continue
            for got, want in (
                    (a + b, va + vb), (a - b, va - vb), (a * b, va * vb)):
                gv = ev_ratfn_at(got, pt)
                if gv is not None:
                    assert gv == want
            if not a.is_zero():
                inv = a.inverse()
                gv = ev_ratfn_at(inv, pt)
                if gv is not None and va != 0:
                    assert gv == 1 / va


def test_ratfn_equality_is_cross_multiplied():
    one = LaurentPoly.monomial((0, 0))
    z = LaurentPoly.monomial((1, 0))
    # (1 - z^2) / (1 - z) == 1 + z
    f = RatFn(one - z * z, one - z)
    g = RatFn.from_poly(one + z, DIM)
    assert f == g
    assert f - g == 0
    assert RatFn.from_poly(z, DIM) != g


def test_ratfn_denominators_stay_factored():
    one = LaurentPoly.monomial((0, 0))
    z = LaurentPoly.monomial((1, 0))
    w = LaurentPoly.monomial((0, 1))
    f = RatFn(one, one - z)
    g = RatFn(one, one - w)
    h = f * g + f + g
    assert h._extra is None
    assert sum(h._atoms.values()) <= 2
    # cancellation folds atoms back into the numerator
    k = RatFn(one - z, one - z)
    assert k._atoms == {} and k == 1


def test_ratfn_subs_weyl_is_invertible_and_multiplicative(sl3):
    datum, _ = sl3
    rng = random.Random(23)
    for w in datum.ball(2):
        for _ in range(8):
            f, g = rand_ratfn(rng), rand_ratfn(rng)
            assert f == f.subs_weyl(w).subs_weyl(w.inv())
            assert (f * g).subs_weyl(w) == f.subs_weyl(w) * g.subs_weyl(w)
            assert (f + g).subs_weyl(w) == f.subs_weyl(w) + g.subs_weyl(w)


# -- characters ---------------------------------------------------------------------


def test_character_values_and_action(sl3):
    datum, tau = sl3
    assert tau.value_on((1, 0)) == 4
    assert tau.value_on((1, 1)) == 16
    assert tau.value_on((-1, 0)) == Fraction(1, 4)
    s = datum.simple(0)
    moved = tau.act(s)
    for lam in ((1, 0), (0, 1), (2, -1)):
        assert moved.value_on(lam) == tau.value_on(s.apply(lam))


def test_character_eval_poly_and_ratfn(sl3):
    datum, tau = sl3
    p = LaurentPoly({(1, 0): Fraction(2), (0, -1): Fraction(1, 3)})
    assert tau.eval_poly(p) == 2 * 4 + Fraction(1, 3) / 4
    one = LaurentPoly.monomial((0, 0))
    z10 = LaurentPoly.monomial((1, 0))
    f = RatFn(one, one - z10 * Fraction(1, 2))
    # tau(z10) = 4 so den evaluates to 1 - 2 = -1
    assert eval_ratfn(tau, f) == -1


def test_eval_ratfn_raises_off_localization(sl3):
    _, tau = sl3
    one = LaurentPoly.monomial((0, 0))
    z10 = LaurentPoly.monomial((1, 0))
    bad = RatFn(one, one - z10 * Fraction(1, 4))  # den vanishes at tau
    with pytest.raises(NotInLocalization):
        eval_ratfn(tau, bad)


def test_character_coerces_strings():
    tau = Character(["4", "1/3"])
    assert tau.values == (Fraction(4), Fraction(1, 3))
    assert tau == Character((Fraction(4), Fraction(1, 3)))
