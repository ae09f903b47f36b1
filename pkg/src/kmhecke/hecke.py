"""The Iwahori-Hecke algebra of a root datum, Bernstein-Lusztig style.

Elements are finite sums  sum_w H_w * theta_w  with theta_w in F(Y)
stored to the RIGHT of the basis element H_w.  The defining relations:

* quadratic/braid on the H_w:  H_s * H_w = H_{sw} when l(sw) > l(w),
  and H_{sw} + (sigma_s - sigma_s^-1) H_w otherwise (and the same on
  the right);
* Bernstein-Lusztig commutation:

      Z^lam * H_s  =  H_s * Z^{s.lam}  +  Q_s(Z) (Z^lam - Z^{s.lam}) ,

  where Q_s(Z) = ((sigma_s - sigma_s^-1)
                  + (sigma'_s - sigma'_s^-1) Z^{-alpha_s^v})
                 / (1 - Z^{-2 alpha_s^v}),
  which collapses to (sigma_s - sigma_s^-1)/(1 - Z^{-alpha_s^v}) for
  equal parameters.  The correction term is a Laurent *polynomial*:
  Q_s(Z)(Z^lam - Z^{s.lam}) = Q_s Z^lam (1 - Z^{-n alpha_s^v}) with
  n = alpha_s(lam), and (1 - Z^{-n beta})/(1 - Z^{-beta}) is the
  geometric sum  sum_{j=0}^{n-1} Z^{-j beta}  (n >= 0), resp.
  -Z^beta sum_{j=0}^{-n-1} Z^{j beta}  (n <= 0).

Distinguished elements, for each node s and positive real coroot
beta^v = w.alpha_s^v:

    B_s    = sigma_s H_s - sigma_s^2           (B_s^2 = -(1+sigma_s^2) B_s)
    zeta_s = -sigma_s Q_s + sigma_s^2          (= (1 - sigma^2 Z^{-a^v})
                                                  /(1 - Z^{-a^v}), equal case)
    F_s    = B_s + zeta_s
    F_w    = F_{s_r} * ... * F_{s_1}           (w = s_1...s_r reduced; the
                                                product does not depend on
                                                the reduced word)
    F'_s   = F_s * zeta_s^-1                   ((F'_s)^2 = 1; F'_w is the
                                                multiplicative lift, direct
                                                word order)
    K_r    = F_r - zeta_{alpha_r^v}            (r a reflection)

F_w satisfies theta * F_w = F_w * theta^{w^-1} (exponent substitution
lam -> w^-1.lam on the right), the key intertwining identity; see
Reeder, "Whittaker functions...", for the finite-type prototype of the
F/K elements.
"""

from fractions import Fraction

from .laurent import LaurentPoly, RatFn
from . import rootdata


class NotPolynomial(ArithmeticError):
    """A coefficient expected to be polynomial has a genuine denominator."""


def _one(datum):
    return LaurentPoly.const(1, datum.rank_y)


def geometric_sum(beta, n):
    """(1 - Z^{-n beta}) / (1 - Z^{-beta}) as a Laurent polynomial.

    >>> geometric_sum((1,), 2).terms == {(0,): 1, (-1,): 1}
    True
    >>> geometric_sum((1,), -1).terms == {(1,): -1}
    True
    """
    d = len(beta)
    if n >= 0:
        return LaurentPoly({tuple(-j * b for b in beta): 1 for j in range(n)})
    return LaurentPoly({tuple((j + 1) * b for b in beta): -1 for j in range(-n)})


class HeckeElt:
    """A finite sum  sum_w H_w * theta_w,  theta_w in F(Y)."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum, terms=None):
        self.datum = datum
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if isinstance(c, LaurentPoly):
                    c = RatFn.from_poly(c, datum.rank_y)
                elif isinstance(c, (int, Fraction)):
                    c = RatFn.from_poly(LaurentPoly.const(c, datum.rank_y),
                                        datum.rank_y)
                if not c.is_zero():
                    self.terms[w] = c

    @classmethod
    def basis(cls, datum, w, coeff=1):
        return cls(datum, {w: coeff})

    @classmethod
    def scalar(cls, datum, fn):
        return cls(datum, {datum.identity_elt(): fn})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out[w] + c if w in out else c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElt(self.datum, out)

    def __neg__(self):
        return HeckeElt(self.datum, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def right_mul_fn(self, fn):
        """h * theta: right coefficients just multiply."""
        return HeckeElt(self.datum, {w: c * fn for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFn)):
            return self.right_mul_fn(other)
        dat = self.datum
        out = {}
        for v, psi in other.terms.items():
            for w, theta in self.terms.items():
                pushed = fn_past_w(dat, theta, v)  # theta * H_v = sum H_u R_u
                for u, r in pushed.items():
                    for x, c in h_mul_h(dat, w, u).items():
                        add = r * psi * c
                        s = out[x] + add if x in out else add
                        if s.is_zero():
                            out.pop(x, None)
                        else:
                            out[x] = s
        return HeckeElt(dat, out)

    def __rmul__(self, other):
        # only central scalars may hop sides silently
        if isinstance(other, (int, Fraction)):
            return self.right_mul_fn(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for w in keys:
            a = self.terms.get(w)
            b = other.terms.get(w)
            if a is None or b is None:
                if not (a or b).is_zero():
                    return False
            elif not (a.num * b.den - b.num * a.den).is_zero():
                return False
        return True

    def support(self):
        return set(self.terms)

    def reach(self):
        return max((w.length() for w in self.terms), default=0)

    def map_coeffs(self, f):
        return HeckeElt(self.datum, {w: f(c) for w, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda w: (w.length(), w.matrix))
        return " + ".join(f"H[{w!r}] * {self.terms[w]!r}" for w in keys)


def left_mul_fn(theta, h):
    """theta * h for theta in F(Y): push theta past every basis term."""
    dat = h.datum
    out = HeckeElt(dat)
    for v, psi in h.terms.items():
        pushed = fn_past_w(dat, theta, v)
        out = out + HeckeElt(dat, {u: r * psi for u, r in pushed.items()})
    return out


# -- multiplication kernels ----------------------------------------------------

def h_mul_h(datum, w, u):
    """H_w * H_u as {x: Fraction}; recursion on the first letter of u."""
    cache = datum._caches.setdefault("hmul", {})
    key = (w.matrix, u.matrix)
    if key in cache:
        return cache[key]
    if u.is_identity():
        res = {w: Fraction(1)}
    else:
        word = u.reduced_word()
        s = word[0]
        up = datum.from_word(word[1:])
        ws = w * datum.simple(s)
        if ws.length() > w.length():
            first = {ws: Fraction(1)}
        else:
            q = datum.sigma[s] - 1 / datum.sigma[s]
            first = {ws: Fraction(1), w: q}
        res = {}
        for x, c in first.items():
            if c == 0:
                continue
            for y, c2 in h_mul_h(datum, x, up).items():
                val = res.get(y, Fraction(0)) + c * c2
                if val:
                    res[y] = val
                else:
                    res.pop(y, None)
    cache[key] = res
    return res


def q_correction(datum, s, lam):
    """The polynomial Q_s(Z) * Z^lam * (1 - Z^{-alpha_s(lam) alpha_s^v})."""
    n = datum.alpha(s, lam)
    beta = datum.coroots[s]
    a = datum.sigma[s] - 1 / datum.sigma[s]
    b = datum.sigma_prime[s] - 1 / datum.sigma_prime[s]
    if datum.sigma[s] == datum.sigma_prime[s]:
        core = geometric_sum(beta, n) * a
    else:
        if n % 2:
            raise rootdata.KacMoodyError(
                "odd alpha_s(lam) with unequal parameters")
        beta2 = tuple(2 * x for x in beta)
        front = LaurentPoly({(0,) * datum.rank_y: a,
                             tuple(-x for x in beta): b})
        core = front * geometric_sum(beta2, n // 2)
    return core * LaurentPoly.monomial(lam)


def mono_past_w(datum, lam, w):
    """Z^lam * H_w = sum_{u <= w} H_u * R_u with polynomial R_u; memoized.

    The top coefficient is R_w = Z^{w^-1.lam}.
    """
    cache = datum._caches.setdefault("monpast", {})
    key = (tuple(lam), w.matrix)
    if key in cache:
        return cache[key]
    if w.is_identity():
        res = {w: LaurentPoly.monomial(lam)}
    else:
        word = w.reduced_word()
        s = word[0]
        wp = datum.from_word(word[1:])
        rs = datum.simple(s)
        res = {}
        for u, pol in mono_past_w(datum, rs.apply(lam), wp).items():
            su = rs * u
            if su.length() > u.length():
                parts = ((su, Fraction(1)),)
            else:
                parts = ((su, Fraction(1)),
                         (u, datum.sigma[s] - 1 / datum.sigma[s]))
            for x, c in parts:
                add = pol * c
                res[x] = res[x] + add if x in res else add
        corr = q_correction(datum, s, lam)
        for mu, c in corr.terms.items():
            for u, pol in mono_past_w(datum, mu, wp).items():
                add = pol * c
                res[u] = res[u] + add if u in res else add
        res = {u: p for u, p in res.items() if not p.is_zero()}
    cache[key] = res
    return res


def poly_past_w(datum, poly, w):
    """theta * H_w for polynomial theta, by linearity; {u: LaurentPoly}."""
    res = {}
    for lam, c in poly.terms.items():
        for u, pol in mono_past_w(datum, lam, w).items():
            add = pol * c
            res[u] = res[u] + add if u in res else add
    return {u: p for u, p in res.items() if not p.is_zero()}


def fn_past_w(datum, theta, w):
    """theta * H_w for theta in F(Y); {u: RatFn}.

    Polynomial numerators ride the memoized monomial kernel whenever the
    denominator is a unit; otherwise the commutation recursion runs with
    unreduced fraction arithmetic.
    """
    if len(theta.den.terms) == 1:
        (mu, c), = theta.den.terms.items()
        shift = LaurentPoly.monomial(tuple(-x for x in mu), 1 / c)
        out = poly_past_w(datum, theta.num * shift, w)
        return {u: RatFn.from_poly(p, datum.rank_y) for u, p in out.items()}
    if w.is_identity():
        return {w: theta}
    word = w.reduced_word()
    s = word[0]
    wp = datum.from_word(word[1:])
    rs = datum.simple(s)
    ts = theta.subs_weyl(rs)
    res = {}
    for u, r in fn_past_w(datum, ts, wp).items():
        su = rs * u
        if su.length() > u.length():
            parts = ((su, Fraction(1)),)
        else:
            parts = ((su, Fraction(1)),
                     (u, datum.sigma[s] - 1 / datum.sigma[s]))
        for x, c in parts:
            add = r * c
            res[x] = res[x] + add if x in res else add
    rest = (theta - ts) * q_fn(datum, s)
    if not rest.is_zero():
        for u, r in fn_past_w(datum, rest, wp).items():
            res[u] = res[u] + r if u in res else r
    return {u: r for u, r in res.items() if not r.is_zero()}


# -- distinguished elements ----------------------------------------------------

def q_fn(datum, s):
    """Q_s(Z) as a rational function."""
    beta = datum.coroots[s]
    d = datum.rank_y
    a = datum.sigma[s] - 1 / datum.sigma[s]
    b = datum.sigma_prime[s] - 1 / datum.sigma_prime[s]
    if datum.sigma[s] == datum.sigma_prime[s]:
        num = LaurentPoly.const(a, d)
        den = LaurentPoly.const(1, d) - LaurentPoly.monomial(tuple(-x for x in beta))
    else:
        num = LaurentPoly.const(a, d) + LaurentPoly.monomial(
            tuple(-x for x in beta), b)
        den = LaurentPoly.const(1, d) - LaurentPoly.monomial(
            tuple(-2 * x for x in beta))
    return RatFn(num, den)


def zeta_split_for_coroot(datum, beta, node):
    """zeta_{beta^v} as a coprime (num, den) pair of Laurent polynomials.

    den is one of 1 - Z^{-beta}, 1 + Z^{-beta}, 1 - Z^{-2 beta}.
    """
    d = datum.rank_y
    s2 = datum.sigma[node] ** 2
    mb = tuple(-x for x in beta)
    if datum.sigma[node] == datum.sigma_prime[node]:
        num = LaurentPoly.const(1, d) - LaurentPoly.monomial(mb, s2)
        den = LaurentPoly.const(1, d) - LaurentPoly.monomial(mb)
        return num, den
    # general numerator 1 - sigma (sigma'-sigma'^-1) Z^-b - sigma^2 Z^-2b
    c = datum.sigma[node] * (datum.sigma_prime[node] - 1 / datum.sigma_prime[node])
    # univariate in t = Z^{-beta}: 1 - c t - s2 t^2 = -s2 (t - r1)(t - r2)
    one, minus_c, minus_s2 = Fraction(1), -c, -s2
    at_plus1 = one + minus_c + minus_s2     # value at t = 1
    at_minus1 = one - minus_c + minus_s2    # value at t = -1
    mb2 = tuple(-2 * x for x in beta)
    num_full = (LaurentPoly.const(1, d) + LaurentPoly.monomial(mb, minus_c)
                + LaurentPoly.monomial(mb2, minus_s2))
    if at_plus1 == 0:
        # (1 - t) divides: quotient of 1 - c t - s2 t^2 by (1 - t)
        # = 1 + (1 - c) t ... do it in t: 1 - c t - s2 t^2 = (1-t)(1 + (c+s2)... )
        # synthetic: -s2 t^2 - c t + 1 / (-(t-1)) : coeffs low->high [1,-c,-s2]
        q1 = -minus_s2            # t-coefficient of quotient after division by (1-t)
        q0 = one                   # constant
        # check: (1 - t)(q0 + q1 t) = q0 + (q1 - q0) t - q1 t^2
        assert q1 - q0 == minus_c and -q1 == minus_s2
        num = LaurentPoly.const(q0, d) + LaurentPoly.monomial(mb, q1)
        den = LaurentPoly.const(1, d) + LaurentPoly.monomial(mb)
        return num, den
    if at_minus1 == 0:
        # (1 + t) divides: (1 + t)(q0 + q1 t) = q0 + (q0 + q1) t + q1 t^2
        q0 = one
        q1 = minus_s2
        assert q0 + q1 == minus_c
        num = LaurentPoly.const(q0, d) + LaurentPoly.monomial(mb, q1)
        den = LaurentPoly.const(1, d) - LaurentPoly.monomial(mb)
        return num, den
    den = LaurentPoly.const(1, d) - LaurentPoly.monomial(mb2)
    return num_full, den


def zeta_fn(datum, s):
    """zeta_s = -sigma_s Q_s + sigma_s^2, as a rational function."""
    num, den = zeta_split_for_coroot(datum, datum.coroots[s], s)
    return RatFn(num, den)


def zeta_for_coroot(datum, beta):
    """zeta_{beta^v} for a positive real coroot; depends only on beta."""
    _, _, node = rootdata.coroot_to_reflection(datum, beta)
    num, den = zeta_split_for_coroot(datum, beta, node)
    return RatFn(num, den)


def b_elt(datum, s):
    """B_s = sigma_s H_s - sigma_s^2."""
    sg = datum.sigma[s]
    return HeckeElt(datum, {datum.simple(s): sg,
                            datum.identity_elt(): -sg * sg})


def f_elt(datum, s):
    """F_s = B_s + zeta_s."""
    return b_elt(datum, s) + HeckeElt.scalar(datum, zeta_fn(datum, s))


def f_prime_elt(datum, s):
    """F'_s = F_s * zeta_s^-1; an involution."""
    return f_elt(datum, s).right_mul_fn(zeta_fn(datum, s).inverse())


def f_w(datum, w):
    """F_w = F_{s_r} * ... * F_{s_1} for w = s_1...s_r reduced; cached
    on the canonical reduced word (the product is word-independent)."""
    cache = datum._caches.setdefault("fw", {})
    if w.matrix in cache:
        return cache[w.matrix]
    res = f_w_from_word(datum, w.reduced_word())
    cache[w.matrix] = res
    return res


def f_w_from_word(datum, word):
    acc = HeckeElt.basis(datum, datum.identity_elt())
    for s in reversed(word):
        acc = acc * f_elt(datum, s)
    return acc


def f_prime_w(datum, w):
    """The multiplicative lift F'_w = F'_{s_1} * ... * F'_{s_r} (direct
    order; F'_{uv} = F'_u F'_v whenever lengths add)."""
    cache = datum._caches.setdefault("fpw", {})
    if w.matrix in cache:
        return cache[w.matrix]
    acc = HeckeElt.basis(datum, datum.identity_elt())
    for s in w.reduced_word():
        acc = acc * f_prime_elt(datum, s)
    cache[w.matrix] = acc
    return acc


def k_elt(datum, r):
    """K_r = F_w * B_s * F_w^{-1} for r = w s w^{-1} with adding lengths.

    Equals B_s when r is simple, and F_r - zeta_{alpha_r^v} only up to
    the scalar F_w*F_{w^-1}; this conjugated form is the one whose
    coefficients stay in the localization when only alpha_r^v among
    N(r) is singular.  Built by peeling a palindromic reduced word,
    dividing by F_s^2 = zeta_s * (zeta_s)^s at each step.
    """
    cache = datum._caches.setdefault("kelt", {})
    if r.matrix in cache:
        return cache[r.matrix]
    word = None
    for cand in rootdata.all_reduced_words(r):
        if len(cand) == 1 or cand[0] == cand[-1]:
            word = cand
            break
    if word is None:
        raise rootdata.NotARealCoroot(f"{r!r} has no palindromic reduced word")
    if len(word) == 1:
        res = b_elt(datum, word[0])
    else:
        i = word[0]
        inner = k_elt(datum, datum.from_word(word[1:-1]))
        neg = tuple(-x for x in datum.coroots[i])
        fs2 = zeta_fn(datum, i) * RatFn(*zeta_split_for_coroot(datum, neg, i))
        res = (f_elt(datum, i) * inner * f_elt(datum, i)).right_mul_fn(
            fs2.inverse())
    cache[r.matrix] = res
    return res


def k_word(datum, reflections):
    """K along a fixed word of reflections: K_{r_1} * ... * K_{r_k}."""
    acc = HeckeElt.basis(datum, datum.identity_elt())
    for r in reflections:
        acc = acc * k_elt(datum, r)
    return acc


# -- positivity ----------------------------------------------------------------

def to_left_form(h):
    """Rewrite sum H_w theta_w as sum (^w theta_w) ... i.e. coefficients
    moved to the LEFT: h = sum_w L_w * H_w.  Requires polynomial
    coefficients (unit denominators); raises NotPolynomial otherwise.

    Returns {w: LaurentPoly L_w}.
    """
    dat = h.datum
    work = {}
    for w, c in h.terms.items():
        if len(c.den.terms) != 1:
            raise NotPolynomial(f"coefficient at {w!r} has denominator {c.den!r}")
        (mu, cc), = c.den.terms.items()
        work[w] = c.num * LaurentPoly.monomial(tuple(-x for x in mu), 1 / cc)
    left = {}
    while work:
        w = max(work, key=lambda x: (x.length(), x.matrix))
        theta = work.pop(w)
        if theta.is_zero():
            continue
        lw = theta.subs_weyl(w)
        left[w] = lw
        for v, r in poly_past_w(dat, lw, w).items():
            if v == w:
                continue
            cur = work.get(v, LaurentPoly())
            nxt = cur - r
            if nxt.is_zero():
                work.pop(v, None)
            else:
                work[v] = nxt
    return left


def positive_part_check(h, max_iter=64):
    """Is h in the non-localized algebra (left exponents in Y+)?

    Returns 'in' / 'out' / 'inconclusive' plus the witness exponents.
    """
    left = to_left_form(h)
    verdict = "in"
    witness = []
    for w, pol in left.items():
        for lam in pol.terms:
            res = rootdata.tits_cone_contains(h.datum, lam, max_iter)
            if res == "outside":
                return "out", [(w.reduced_word(), lam)]
            if res == "inconclusive":
                verdict = "inconclusive"
                witness.append((w.reduced_word(), lam))
    return verdict, witness
