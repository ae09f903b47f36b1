"""Kac-Moody root data and their Weyl groups, exactly over Z.

A Kac-Moody matrix is an integer matrix A = (a_ij) with a_ii = 2,
a_ij <= 0 for i != j, and a_ij = 0 iff a_ji = 0.  A root datum for A
consists of a free Z-module Y (here Z^d with a fixed basis), simple
roots alpha_i in the dual (stored as integer rows: alpha_i(y) is a dot
product) and simple coroots alpha_i^v in Y (stored as integer vectors),
subject to the compatibility

    alpha_j(alpha_i^v) = a_ij ,

with the simple coroots linearly independent.  The Weyl group W^v acts
on Y by the simple reflections

    r_i(v) = v - alpha_i(v) * alpha_i^v ,

and this representation is faithful, so elements of W^v are represented
by their integer matrices on Y; words in the generators are derived
data, never the identity of an element.

Conventions used throughout the package:

* the action of w on a root is contragredient, (w.alpha)(x) =
  alpha(w^-1 . x), so root rows transform by the inverse matrix;
* a coroot is positive iff its coordinates on the simple-coroot basis
  are all >= 0 (they are then integers of one sign, for real coroots);
* the inversion set N(w) = {beta^v > 0 : w.beta^v < 0} has size l(w)
  and is computed from any reduced word;
* l(w r_beta) > l(w) iff w.beta^v > 0 (for any reflection r_beta), which
  gives descents, Bruhat order, and ball enumeration.

Standard references for these facts: Kumar, "Kac-Moody groups, their
flag varieties and representation theory" (1.3), and Bjorner-Brenti,
"Combinatorics of Coxeter groups".
"""

import json
from fractions import Fraction

from . import linalg


class KacMoodyError(ValueError):
    """The given matrix or datum violates the Kac-Moody axioms."""


class NotARealCoroot(ValueError):
    """A vector expected to be a (positive) real coroot is not one."""


def validate_kac_moody(A):
    """List of axiom violations of a square integer matrix; [] if none.

    >>> validate_kac_moody([[2, -1], [-1, 2]])
    []
    >>> validate_kac_moody([[2, 1], [-1, 2]])
    ['a[0][1] = 1 is positive off-diagonal']
    """
    bad = []
    n = len(A)
    for i, row in enumerate(A):
        if len(row) != n:
            return ["matrix is not square"]
    for i in range(n):
        for j in range(n):
            v = A[i][j]
            if v != int(v):
                bad.append(f"a[{i}][{j}] = {v} is not an integer")
                continue
            if i == j and v != 2:
                bad.append(f"a[{i}][{i}] = {v} != 2 on the diagonal")
            if i != j and v > 0:
                bad.append(f"a[{i}][{j}] = {v} is positive off-diagonal")
    for i in range(n):
        for j in range(i + 1, n):
            if (A[i][j] == 0) != (A[j][i] == 0):
                bad.append(f"a[{i}][{j}] = {A[i][j]} but a[{j}][{i}] = {A[j][i]}"
                           " (zeros must be symmetric)")
    return bad


class RootDatum:
    """A Kac-Moody matrix with a realization on Y = Z^d and parameters.

    Parameters sigma, sigma_prime map each node index to a positive
    Fraction; sigma_prime[s] must equal sigma[s] whenever alpha_s takes
    an odd value on Y.
    """

    def __init__(self, A, rank_y, pairing, coroots, sigma, sigma_prime=None):
        bad = validate_kac_moody(A)
        if bad:
            raise KacMoodyError("; ".join(bad))
        self.A = tuple(tuple(int(x) for x in row) for row in A)
        self.n = len(self.A)
        self.rank_y = int(rank_y)
        self.pairing = tuple(tuple(int(x) for x in row) for row in pairing)
        self.coroots = tuple(tuple(int(x) for x in row) for row in coroots)
        if len(self.pairing) != self.n or len(self.coroots) != self.n:
            raise KacMoodyError("need one root row and one coroot per node")
        for row in self.pairing + self.coroots:
            if len(row) != self.rank_y:
                raise KacMoodyError("root/coroot length != rankY")
        for i in range(self.n):
            for j in range(self.n):
                got = sum(p * c for p, c in zip(self.pairing[j], self.coroots[i]))
                if got != self.A[i][j]:
                    raise KacMoodyError(
                        f"alpha_{j}(alpha_{i}^v) = {got} != a[{i}][{j}] = {self.A[i][j]}")
        if linalg.rank(linalg.frac_matrix(self.coroots)) != self.n:
            raise KacMoodyError("simple coroots are not linearly independent")
        self.sigma = {s: Fraction(sigma[s]) for s in range(self.n)} \
            if not isinstance(sigma, dict) else {int(k): Fraction(v) for k, v in sigma.items()}
        if sigma_prime is None:
            self.sigma_prime = dict(self.sigma)
        else:
            self.sigma_prime = {s: Fraction(sigma_prime[s]) for s in range(self.n)} \
                if not isinstance(sigma_prime, dict) \
                else {int(k): Fraction(v) for k, v in sigma_prime.items()}
        for s in range(self.n):
            if self.sigma[s] <= 0 or self.sigma_prime[s] <= 0:
                raise KacMoodyError("parameters must be positive")
            if self.sigma[s] != self.sigma_prime[s] and not self._alpha_even(s):
                raise KacMoodyError(
                    f"sigma'_{s} != sigma_{s} needs alpha_{s}(Y) = 2Z")
        self._simple_refl = [self._reflection_matrix(i) for i in range(self.n)]
        self._coroot_solver = self._build_coroot_solver()
        self._caches = {"ball": {}, "words": {}, "bruhat": {}, "refl": {}}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_json(cls, doc):
        """Build from a dict or JSON string with keys A, rankY, pairing,
        coroots, sigma, sigmaPrime (parameter values are Fraction strings)."""
        if isinstance(doc, str):
            doc = json.loads(doc)
        sig = doc["sigma"]
        sig = {int(k): Fraction(v) for k, v in sig.items()} if isinstance(sig, dict) \
            else [Fraction(v) for v in sig]
        sigp = doc.get("sigmaPrime")
        if sigp is not None:
            sigp = {int(k): Fraction(v) for k, v in sigp.items()} if isinstance(sigp, dict) \
                else [Fraction(v) for v in sigp]
        return cls(doc["A"], doc["rankY"], doc["pairing"], doc["coroots"], sig, sigp)

    def _alpha_even(self, s):
        from math import gcd
        g = 0
        for v in self.pairing[s]:
            g = gcd(g, v)
        return g % 2 == 0

    def _reflection_matrix(self, i):
        d = self.rank_y
        cv, rt = self.coroots[i], self.pairing[i]
        return tuple(tuple((1 if r == c else 0) - cv[r] * rt[c] for c in range(d))
                     for r in range(d))

    def _build_coroot_solver(self):
        cols = [[Fraction(self.coroots[i][r]) for i in range(self.n)]
                for r in range(self.rank_y)]
        return cols  # d x n matrix, columns are the simple coroots

    # -- coroot coordinates ---------------------------------------------------

    def coroot_coords(self, v):
        """Coordinates of v on the simple-coroot basis, or None."""
        sol = linalg.solve(self._coroot_solver, [Fraction(x) for x in v])
        if sol is None:
            return None
        return tuple(sol)

    def coroot_sign(self, v):
        """+1 / -1 for positive / negative coroot-lattice vectors, else 0."""
        coords = self.coroot_coords(v)
        if coords is None or all(c == 0 for c in coords):
            return 0
        if all(c >= 0 for c in coords):
            return 1
        if all(c <= 0 for c in coords):
            return -1
        return 0

    def simple(self, i):
        """The reflection r_i as a WeylElement."""
        return WeylElement(self, self._simple_refl[i])

    def identity_elt(self):
        d = self.rank_y
        return WeylElement(self, tuple(tuple(int(r == c) for c in range(d))
                                       for r in range(d)))

    def from_word(self, word):
        w = self.identity_elt()
        for s in word:
            w = w * self.simple(s)
        return w

    def alpha(self, i, v):
        """alpha_i(v)."""
        return sum(p * x for p, x in zip(self.pairing[i], v))

    def braid_order(self, i, j, cap=8):
        """Order m(s_i, s_j) of s_i s_j, or None for infinite (order > cap).

        a_ij * a_ji >= 4 is certified infinite without iterating.
        """
        if i == j:
            return 1
        if self.A[i][j] * self.A[j][i] >= 4:
            return None
        m = linalg.mat_mul(linalg.frac_matrix(self._simple_refl[i]),
                           linalg.frac_matrix(self._simple_refl[j]))
        p = linalg.identity(self.rank_y)
        for k in range(1, cap + 1):
            p = linalg.mat_mul(p, m)
            if p == linalg.identity(self.rank_y):
                return k
        return None

    def is_right_angled(self, cap=8):
        return all(self.braid_order(i, j, cap) in (2, None)
                   for i in range(self.n) for j in range(i + 1, self.n))

    # -- ball enumeration -----------------------------------------------------

    def ball(self, L):
        """All w with l(w) <= L, sorted by (length, first-seen); cached."""
        if L in self._caches["ball"]:
            return self._caches["ball"][L]
        seen = {self.identity_elt(): 0}
        frontier = [self.identity_elt()]
        for length in range(1, L + 1):
            nxt = []
            for w in frontier:
                for s in range(self.n):
                    if self.coroot_sign(w.apply(self.coroots[s])) > 0:
                        ws = w * self.simple(s)
                        if ws not in seen:
                            seen[ws] = length
                            nxt.append(ws)
            frontier = nxt
        out = sorted(seen, key=lambda w: (seen[w], w.matrix))
        for w in out:
            w._length = seen[w]
        self._caches["ball"][L] = out
        return out


class WeylElement:
    """An element of W^v as its integer matrix on Y."""

    __slots__ = ("datum", "matrix", "_length", "_word", "_inv")

    def __init__(self, datum, matrix):
        self.datum = datum
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self._length = None
        self._word = None
        self._inv = None

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other):
        d = self.datum.rank_y
        a, b = self.matrix, other.matrix
        return WeylElement(self.datum, tuple(
            tuple(sum(a[r][k] * b[k][c] for k in range(d)) for c in range(d))
            for r in range(d)))

    def apply(self, v):
        """Matrix action on a Y-vector (tuple in, tuple out)."""
        return tuple(sum(r * x for r, x in zip(row, v)) for row in self.matrix)

    def act_on_root(self, row):
        """Contragredient action on a root row: (w.alpha)(x) = alpha(w^-1 x)."""
        inv = self.inv().matrix
        d = self.datum.rank_y
        return tuple(sum(row[k] * inv[k][c] for k in range(d)) for c in range(d))

    def inv(self):
        if self._inv is None:
            m = linalg.inverse(linalg.frac_matrix(self.matrix))
            self._inv = WeylElement(self.datum, tuple(
                tuple(int(x) for x in row) for row in m))
            self._inv._inv = self
        return self._inv

    def is_identity(self):
        return all(self.matrix[r][c] == (1 if r == c else 0)
                   for r in range(len(self.matrix)) for c in range(len(self.matrix)))

    def right_descents(self):
        dat = self.datum
        return [s for s in range(dat.n)
                if dat.coroot_sign(self.apply(dat.coroots[s])) < 0]

    def left_descents(self):
        inv = self.inv()
        return inv.right_descents()

    def reduced_word(self):
        """Canonical reduced word (peel the smallest right descent).

        The returned tuple (s_1, ..., s_r) multiplies to the element in
        order: w = s_1 * s_2 * ... * s_r.
        """
        if self._word is not None:
            return self._word
        rev = []
        cur = self
        guard = 0
        while not cur.is_identity():
            ds = cur.right_descents()
            if not ds:
                raise KacMoodyError("element has no descent but is not 1; "
                                    "matrix is not in the Weyl group")
            rev.append(ds[0])
            cur = cur * self.datum.simple(ds[0])
            guard += 1
            if guard > 10000:
                raise KacMoodyError("descent peeling did not terminate")
        self._word = tuple(reversed(rev))
        self._length = len(self._word)
        return self._word

    def length(self):
        if self._length is None:
            self.reduced_word()
        return self._length

    def __repr__(self):
        w = self.reduced_word()
        return "e" if not w else ".".join(f"s{s}" for s in w)


# -- word-level operations ----------------------------------------------------

def inversion_coroots(w):
    """N(w) = {beta^v > 0 : w.beta^v < 0}, from the canonical reduced word.

    For w = s_1 ... s_r the inversions are alpha_{s_r}^v, s_r.alpha_{s_{r-1}}^v,
    ..., s_r...s_2.alpha_{s_1}^v; there are exactly l(w) of them.
    """
    dat = w.datum
    word = w.reduced_word()
    out = []
    suffix = dat.identity_elt()
    for k in range(len(word) - 1, -1, -1):
        out.append(suffix.apply(dat.coroots[word[k]]))
        suffix = suffix * dat.simple(word[k])
    return frozenset(out)


def bruhat_leq(u, w):
    """Bruhat order by the descent recursion.

    u <= w iff (u = 1) or, picking s with sw < w: su <= sw if su < u,
    else u <= sw.
    """
    dat = u.datum
    key = (u.matrix, w.matrix)
    cache = dat._caches["bruhat"]
    if key in cache:
        return cache[key]
    if u.length() > w.length():
        res = False
    elif u.is_identity():
        res = True
    else:
        s = w.left_descents()[0]
        rs = dat.simple(s)
        sw = rs * w
        su = rs * u
        if su.length() < u.length():
            res = bruhat_leq(su, sw)
        else:
            res = bruhat_leq(u, sw)
    cache[key] = res
    return res


def all_reduced_words(w):
    """Every reduced word of w, as a sorted list of tuples."""
    dat = w.datum
    cache = dat._caches["words"]
    if w.matrix in cache:
        return cache[w.matrix]
    if w.is_identity():
        out = [()]
    else:
        out = []
        for s in w.left_descents():
            sw = dat.simple(s) * w
            out.extend((s,) + rest for rest in all_reduced_words(sw))
        out.sort()
    cache[w.matrix] = out
    return out


def reflection_coroot(r):
    """The positive coroot alpha_r^v of a reflection r, plus its root row
    and the node index carrying its parameters.

    Checks r^2 = 1 and l(r) odd; writes r = w s w^-1 with l(w s) > l(w)
    from the middle of a reduced word, so alpha_r^v = w.alpha_s^v.
    Returns (coroot, root_row, node).
    """
    dat = r.datum
    if r.matrix in dat._caches["refl"]:
        return dat._caches["refl"][r.matrix]
    if not (r * r).is_identity() or r.length() % 2 == 0 or r.is_identity():
        raise NotARealCoroot(f"{r!r} is not a reflection")
    word = r.reduced_word()
    k = len(word) // 2
    w = dat.from_word(word[:k])
    s = word[k]
    beta = w.apply(dat.coroots[s])
    row = w.act_on_root(dat.pairing[s])  # (w.alpha_s)(x) = alpha_s(w^-1 x)
    res = (beta, row, s)
    dat._caches["refl"][r.matrix] = res
    return res


def coroot_to_reflection(datum, beta):
    """Straighten a positive real coroot to a simple one.

    Returns (reflection, root_row, node): the reflection r with
    alpha_r^v = beta, the row of the root alpha_r, and the node whose
    parameters r inherits.  Raises NotARealCoroot when straightening
    fails (the vector is not a positive real coroot).
    """
    if datum.coroot_sign(beta) <= 0:
        raise NotARealCoroot(f"{beta} is not a positive coroot vector")
    word = []
    v = tuple(beta)
    guard = 0
    while True:
        simple_idx = next((i for i in range(datum.n) if v == datum.coroots[i]), None)
        if simple_idx is not None:
            break
        i = next((i for i in range(datum.n) if datum.alpha(i, v) > 0), None)
        if i is None:
            raise NotARealCoroot(f"{beta} cannot be straightened (imaginary?)")
        v = datum.simple(i).apply(v)
        if datum.coroot_sign(v) <= 0:
            raise NotARealCoroot(f"{beta} left the positive coroots while "
                                 "straightening")
        word.append(i)
        guard += 1
        if guard > 10000:
            raise NotARealCoroot("straightening did not terminate")
    w = datum.from_word(word)          # beta = w.alpha_j^v
    j = simple_idx
    r = w * datum.simple(j) * w.inv()
    row = tuple(sum(datum.pairing[j][k] * w.inv().matrix[k][c]
                    for k in range(datum.rank_y)) for c in range(datum.rank_y))
    return r, row, j


def reflection_matrix_from_coroot(datum, beta):
    """The reflection x -> x - alpha_r(x) * beta as a WeylElement."""
    r, row, _ = coroot_to_reflection(datum, beta)
    d = datum.rank_y
    m = tuple(tuple((1 if a == b else 0) - beta[a] * row[b] for b in range(d))
              for a in range(d))
    if m != r.matrix:
        raise NotARealCoroot("reflection formula disagrees with conjugation")
    return r


def tits_cone_contains(datum, lam, max_iter=64):
    """Walk lam toward the dominant chamber; 'inside' if it gets there.

    Returns 'inside' when some W-translate has all alpha_i >= 0 within
    max_iter corrective reflections, 'outside' when the walk cycles (a
    point of the Tits cone admits no infinite corrective walk, so a
    cycle certifies non-membership), else 'inconclusive'.
    """
    v = tuple(Fraction(x) for x in lam)
    seen = {v}
    for _ in range(max_iter):
        neg = next((i for i in range(datum.n) if datum.alpha(i, v) < 0), None)
        if neg is None:
            return "inside"
        v = datum.simple(neg).apply(v)
        if v in seen:
            return "outside"
        seen.add(v)
    return "inconclusive"


def positive_coroots_in_ball(datum, L):
    """All inversion coroots of ball(L) elements, sorted; the positive
    real coroots visible at truncation depth L."""
    seen = set()
    for w in datum.ball(L):
        seen |= inversion_coroots(w)
    return sorted(seen)
