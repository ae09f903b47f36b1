"""Exact group algebra of the infinite dihedral group D_inf.

D_inf = <s, t | s^2 = t^2 = 1> is the Weyl group of every rank-2
Kac-Moody datum with an infinite braid order, and Q[D_inf] is the
endomorphism algebra End(I_tau) in the R_tau = D_inf regime.  Elements
are finite Q-combinations of reduced words, stored as {alternating
string over "ST": Fraction}; the empty word is the unit.  Pi(X, Y, m)
denotes the alternating product XYXY... with m factors, and deg is the
longest word length.

The three structural facts computed here:

* the algebra morphisms to Q are exactly the four evaluations
  ev_{(a,b)}, a, b in {-1, 1} (their kernels are the maximal right
  ideals that are two-sided);
* for P = 1 - a(ST - TS), a != 0, left multiplication by P raises the
  degree of every nonconstant Q by exactly 2, so the proper right ideal
  P*Q[D_inf] misses 1 (it sits in no proper two-sided ideal: those all
  contain ST - TS);
* for nonconstant P the quotient by the two-sided ideal (P) is spanned
  by the 2*deg(P) + 1 words of length <= deg(P), exhibited by an
  explicit rewriting of the two words of length deg(P) + 1.

Everything is exact over Q; the degree-growth sweep over all small-
coefficient Q is vectorized with numpy on integer matrices.
"""

from fractions import Fraction
from math import lcm

import numpy as np


def pi(first, m):
    """The alternating word Pi(first, other, m) with m factors.

    >>> pi("S", 3), pi("T", 2), pi("S", 0)
    ('STS', 'TS', '')
    """
    if first not in ("S", "T"):
        raise ValueError(f"letters are 'S' and 'T', got {first!r}")
    other = "T" if first == "S" else "S"
    return ((first + other) * ((m + 1) // 2))[:m]


def is_alternating(word):
    return all(x != y for x, y in zip(word, word[1:])) and \
        all(ch in ("S", "T") for ch in word)


def word_mul(u, v):
    """Product of two reduced words, with s^2 = t^2 = 1 cancellation.

    >>> word_mul("ST", "TS")
    ''
    >>> word_mul("S", "TS")
    'STS'
    >>> word_mul("STS", "ST")
    'S'
    """
    while u and v and u[-1] == v[0]:
        u, v = u[:-1], v[1:]
    return u + v


class DInfElt:
    """A finite sum  sum_w c_w * w  over reduced words of D_inf."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not is_alternating(w):
                    raise ValueError(f"not a reduced D_inf word: {w!r}")
                c = Fraction(c)
                if c != 0:
                    self.terms[w] = c

    @classmethod
    def unit(cls, c=1):
        return cls({"": c})

    @classmethod
    def word(cls, w, c=1):
        return cls({w: c})

    def is_zero(self):
        return not self.terms

    def deg(self):
        """Longest word length (0 for constants and for 0)."""
        return max((len(w) for w in self.terms), default=0)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return DInfElt(out)

    def __neg__(self):
        return DInfElt({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DInfElt({w: c * other for w, c in self.terms.items()})
        out = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = word_mul(u, v)
                s = out.get(w, 0) + cu * cv
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return DInfElt(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DInfElt.unit(other)
        return isinstance(other, DInfElt) and self.terms == other.terms

    def mirror(self):
        """The algebra automorphism exchanging S and T."""
        swap = {"S": "T", "T": "S"}
        return DInfElt({"".join(swap[ch] for ch in w): c
                        for w, c in self.terms.items()})

    def __repr__(self):
        return format_elt(self)


def ev(a, b, x):
    """The evaluation morphism S -> a, T -> b, for a, b in {-1, 1}.

    >>> ev(1, -1, DInfElt({"ST": 1, "TS": -1}))
    Fraction(0, 1)
    """
    if a * a != 1 or b * b != 1:
        raise ValueError("ev_(a,b) needs a, b in {-1, 1}")
    tot = Fraction(0)
    for w, c in x.terms.items():
        for ch in w:
            c = c * (a if ch == "S" else b)
        tot += c
    return tot


def morphism_assignments(max_len=4):
    """All (a, b) in {-1,1}^2 with S -> a, T -> b multiplicative on every
    pair of words of length <= max_len (each assignment passes: the four
    ev's exhaust the algebra morphisms to Q)."""
    words = [pi("S", k) for k in range(max_len + 1)] + \
            [pi("T", k) for k in range(1, max_len + 1)]
    good = []
    for a in (-1, 1):
        for b in (-1, 1):
            ok = all(
                ev(a, b, DInfElt.word(word_mul(u, v)))
                == ev(a, b, DInfElt.word(u)) * ev(a, b, DInfElt.word(v))
                for u in words for v in words)
            if ok:
                good.append((a, b))
    return good


def p_element(a):
    """P = 1 - a*(ST - TS), the generator of a maximal-right-ideal
    witness; requires a != 0."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    return DInfElt({"": 1, "ST": -a, "TS": a})


def degree_growth(a, q):
    """Check deg(P*Q) = deg(Q) + 2 for P = 1 - a(ST - TS).

    Q must be nonconstant (constants are handled separately in the
    right-ideal argument: P*c = c*P has degree 2 and is never 1).
    """
    if q.deg() == 0:
        raise ValueError("Q must be nonconstant")
    pq = p_element(a) * q
    return {"deg_q": q.deg(), "deg_pq": pq.deg(),
            "ok": pq.deg() == q.deg() + 2}


def sweep_degree_growth(a=Fraction(1), max_deg=6, chunk=1 << 16):
    """deg(P*Q) = deg(Q) + 2 for every nonconstant Q of degree <= max_deg
    with coefficients in {-1, 0, 1}; exhaustive, vectorized.

    The exact products P*w for the 2*max_deg + 1 basis words are computed
    first in Q[D_inf]; the sweep is then integer linear algebra (int64,
    values stay tiny).  Returns counts and the first counterexample (None
    when the growth law holds throughout).
    """
    p = p_element(a)
    words = [pi("S", k) for k in range(max_deg + 1)] + \
            [pi("T", k) for k in range(1, max_deg + 1)]
    prods = [p * DInfElt.word(w) for w in words]
    res_words = sorted({v for pr in prods for v in pr.terms},
                       key=lambda w: (len(w), w))
    den = 1
    for pr in prods:
        for c in pr.terms.values():
            den = lcm(den, c.denominator)
    mat = np.zeros((len(words), len(res_words)), dtype=np.int64)
    col = {w: j for j, w in enumerate(res_words)}
    for i, pr in enumerate(prods):
        for w, c in pr.terms.items():
            mat[i, col[w]] = int(c * den)
    q_len = np.array([len(w) for w in words], dtype=np.int64)
    r_len = np.array([len(w) for w in res_words], dtype=np.int64)
    total = 3 ** len(words)
    powers = 3 ** np.arange(len(words), dtype=np.int64)
    checked = 0
    bad = None
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % 3 - 1
        deg_q = ((digits != 0) * (q_len + 1)).max(axis=1) - 1
        keep = deg_q > 0
        if not keep.any():
            continue
        digits, deg_q = digits[keep], deg_q[keep]
        res = digits @ mat
        deg_pq = ((res != 0) * (r_len + 1)).max(axis=1) - 1
        ok = deg_pq == deg_q + 2
        checked += int(keep.sum())
        if not ok.all() and bad is None:
            j = int(np.argmin(ok))
            bad = DInfElt({w: int(digits[j, i])
                           for i, w in enumerate(words) if digits[j, i]})
            break
    return {"a": str(Fraction(a)), "max_deg": max_deg, "checked": checked,
            "ok": bad is None, "counterexample": bad}


def _rewriting_rule(p, u, n):
    """Express the length-(n+1) word u mod the two-sided ideal (p) as a
    combination of words of length <= n, via a one-letter multiple of p
    whose unique long word is u."""
    candidates = [(DInfElt.word(g), DInfElt.unit()) for g in ("S", "T")]
    candidates += [(DInfElt.unit(), DInfElt.word(h)) for h in ("S", "T")]
    for g, h in candidates:
        prod = g * p * h
        longs = [w for w in prod.terms if len(w) > n]
        if longs == [u]:
            c = prod.terms[u]
            return (prod - DInfElt({u: c})) * (-1 / c)
    raise ArithmeticError(f"no one-letter relation isolates {u!r}")


def quotient_span_bound(p, window=None):
    """Spanning bound for Q[D_inf]/(P), P nonconstant: the 2n+1 words of
    length <= n = deg(P) span the quotient.

    Implements the rewriting argument: after normalizing the top
    Pi(S,T,n)-coefficient to 1 (mirroring S and T if needed), each of
    the two words of length n+1 is rewritten into the span A_n by an
    explicit one-letter multiple of P, and the closure reduces every
    longer word by peeling its first letter.  All words up to length
    n + window are reduced; success certifies the stabilization
    A_m = A_n for m >= n (a spanning set, not necessarily a basis).
    """
    n = p.deg()
    if n < 1:
        raise ValueError("P must be nonconstant")
    mirrored = False
    if p.terms.get(pi("S", n), 0) == 0:
        p = p.mirror()
        mirrored = True
    p = p * (1 / p.terms[pi("S", n)])
    rules = {}
    for first in ("S", "T"):
        u = pi(first, n + 1)
        rules[u] = _rewriting_rule(p, u, n)
    if window is None:
        window = n + 3
    memo = {}

    def reduce_word(w):
        if len(w) <= n:
            return DInfElt.word(w)
        if w not in memo:
            if len(w) == n + 1:
                memo[w] = rules[w]
            else:
                out = DInfElt()
                for v, c in (DInfElt.word(w[0]) * reduce_word(w[1:])).terms.items():
                    out = out + reduce_word(v) * c
                memo[w] = out
        return memo[w]

    reduced_all = True
    for m in range(n + 1, n + window + 1):
        for first in ("S", "T"):
            red = reduce_word(pi(first, m))
            reduced_all = reduced_all and red.deg() <= n
    return {"deg": n, "bound": 2 * n + 1, "mirrored": mirrored,
            "window": window, "stabilized": reduced_all}


# -- text form ------------------------------------------------------------------


def format_elt(x):
    """Render as 'c*WORD +- ...', unit word as '1', sorted by (len, word).

    >>> format_elt(DInfElt({"": 1, "ST": Fraction(-1, 2)}))
    '1 - 1/2*ST'
    """
    if not x.terms:
        return "0"
    bits = []
    for w in sorted(x.terms, key=lambda w: (len(w), w)):
        c = x.terms[w]
        mag = abs(c)
        body = (f"{mag}" if not w
                else (w if mag == 1 else f"{mag}*{w}"))
        if not bits:
            bits.append(body if c > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(bits)


def parse_elt(text):
    """Inverse of format_elt; validates that every word is alternating.

    >>> parse_elt("1 - 1/2*ST + TS") == DInfElt({"": 1, "ST": Fraction(-1, 2), "TS": 1})
    True
    """
    out = DInfElt()
    body = text.replace("-", "+-").replace(" ", "")
    for tok in body.split("+"):
        if not tok:
            continue
        sign = Fraction(1)
        if tok.startswith("-"):
            sign, tok = Fraction(-1), tok[1:]
        if "*" in tok:
            coeff, word = tok.split("*", 1)
            c = Fraction(coeff)
        elif tok and all(ch in "ST" for ch in tok):
            c, word = Fraction(1), tok
        else:
            c, word = Fraction(tok), ""
        if not is_alternating(word):
            raise ValueError(f"not a reduced D_inf word: {word!r}")
        out = out + DInfElt({word: c * sign} if c * sign else {})
    return out
