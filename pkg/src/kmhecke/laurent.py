"""Laurent polynomials on a cocharacter lattice, rational functions,
and exact evaluation at characters.

The group algebra F[Y] of Y = Z^d has basis the monomials Z^lambda; a
LaurentPoly stores {exponent tuple: Fraction}.  A rational function
keeps its denominator factored into binomial atoms (1 - c Z^v) -- every
denominator that arises here is a product of such atoms -- and cancels
atoms against the numerator by exact division, which keeps coefficients
small through long products; equality is still tested by
cross-multiplication.

A Character is a group morphism tau: Y -> Q*, stored by its values on
the basis.  The Weyl action is (w.tau)(lam) = tau(w^-1 . lam), and the
action on functions substitutes exponents, (w.theta)(Z^lam) = Z^{w.lam}.

Evaluating a rational function at tau is allowed exactly on the
localization of F[Y] at ker(ev_tau): when the stored denominator
vanishes at tau the value is recovered as a limit along a generic
one-parameter curve through tau (substitute Z^lam -> tau(lam) x^{v.lam}
for a random integer direction v, cancel the common (x-1) power
exactly, evaluate at x = 1).  Directions are redrawn on degenerate
collisions, several attempts must agree, and a genuine pole raises
NotInLocalization.
"""

import heapq
import random
from fractions import Fraction
from math import isqrt


class NotInLocalization(ArithmeticError):
    """The rational function has no value at the given character."""


class LaurentPoly:
    """Sparse Laurent polynomial {exponent tuple: Fraction}.

    >>> p = LaurentPoly({(1, 0): 1, (0, -1): Fraction(1, 2)})
    >>> q = LaurentPoly.monomial((0, 1), 3)
    >>> sorted((p * q).terms.items())
    [((0, 0), Fraction(3, 2)), ((1, 1), Fraction(3, 1))]
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[tuple(e)] = c

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({tuple(exp): Fraction(coeff)})

    @classmethod
    def const(cls, c, dim):
        return cls({(0,) * dim: Fraction(c)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def subs_weyl(self, w):
        """Exponent substitution Z^lam -> Z^{w.lam} (the w-twist)."""
        return LaurentPoly({w.apply(e): c for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if all(x == 0 for x in e):
                bits.append(f"{c}")
            else:
                bits.append(f"{c}*Z^{e}")
        return " + ".join(bits)


def _lex_sign(v):
    for x in v:
        if x:
            return 1 if x > 0 else -1
    return 0


def _atom_poly(atom, dim):
    v, c = atom
    return LaurentPoly({(0,) * dim: Fraction(1), v: -c})


def poly_div_binomial(p, v, c):
    """Exact quotient p / (1 - c*Z^v), or None when there is a remainder.

    Peels the residual term of smallest v-degree (phi = <. , v>); the
    forced carry walks up by phi(v) > 0 each step, so escaping the
    support of p certifies inexactness.
    """
    if p.is_zero():
        return p
    phi = lambda e: sum(a * b for a, b in zip(e, v))
    vphi = phi(v)
    top = max(map(phi, p.terms))
    work = dict(p.terms)
    out = {}
    heap = [(phi(e), e) for e in work]
    heapq.heapify(heap)
    while work:
        while heap:
            f, e = heapq.heappop(heap)
            if e in work:
                break
        else:  # pragma: no cover - heap and work drain together
            break
        if f + vphi > top:
            return None
        a = work.pop(e)
        out[e] = a
        t = tuple(x + y for x, y in zip(e, v))
        s = work.get(t, 0) + c * a
        if s:
            if t not in work:
                heapq.heappush(heap, (phi(t), t))
            work[t] = s
        else:
            work.pop(t, None)
    return LaurentPoly(out)


def _atomize(v, c):
    """(1 - c Z^v) = coeff * Z^exp * (1 - c' Z^v') with v' lex-positive.

    Returns (v', c', exp, coeff)."""
    if _lex_sign(v) > 0:
        return tuple(v), c, (0,) * len(v), Fraction(1)
    return tuple(-x for x in v), 1 / c, tuple(v), -c


def _rational_roots(u):
    """Nonzero rational roots of sum u[k] x^k (u: {int>=0: Fraction})."""
    den_lcm = 1
    for c in u.values():
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
    iu = {k: int(c * den_lcm) for k, c in u.items()}
    deg = max(iu)
    lo, hi = abs(iu.get(0, 0)), abs(iu[deg])
    if lo == 0 or lo > 10 ** 8 or hi > 10 ** 8:
        return []
    roots = []
    for p in _divisors(lo):
        for q in _divisors(hi):
            for x in (Fraction(p, q), Fraction(-p, q)):
                if x not in roots and sum(c * x ** k for k, c in u.items()) == 0:
                    roots.append(x)
    return roots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = []
    d = 1
    while d <= isqrt(n):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _peel_atoms(p):
    """Greedy factorization p = coeff * Z^exp * prod (1 - c Z^v)^k * extra.

    Candidate atom directions are differences from the lex-least
    exponent; candidate constants come from rational roots of the
    univariate class polynomial along the direction, and every candidate
    is certified by exact trial division.  Whatever resists (nothing in
    this pipeline does) is returned as the unfactored part ``extra``,
    normalized to unit constant term; returns (exp, coeff, atoms, extra)
    with extra None when the factorization is complete.
    """
    dim = len(next(iter(p.terms)))
    exp, coeff = (0,) * dim, Fraction(1)
    atoms = {}
    while True:
        if len(p.terms) == 1:
            (e, c), = p.terms.items()
            exp = tuple(x + y for x, y in zip(exp, e))
            return exp, coeff * c, atoms, None
        a = min(p.terms)
        if len(p.terms) == 2:
            e2 = max(p.terms)
            key = (tuple(x - y for x, y in zip(e2, a)), -p.terms[e2] / p.terms[a])
            atoms[key] = atoms.get(key, 0) + 1
            p = LaurentPoly.monomial(a, p.terms[a])
            continue
        found = None
        if len(p.terms) <= 400:
            dirs = sorted({tuple(x - y for x, y in zip(e, a))
                           for e in p.terms if e != a},
                          key=lambda d: (sum(abs(x) for x in d), d))
            for d in dirs:
                u = _class_poly(p, a, d)
                if len(u) < 2:
                    continue
                for root in _rational_roots(u):
                    c = 1 / root
                    q = poly_div_binomial(p, d, c)
                    if q is not None:
                        found = ((d, c), q)
                        break
                if found:
                    break
        if found is None:
            exp = tuple(x + y for x, y in zip(exp, a))
            coeff = coeff * p.terms[a]
            extra = p * LaurentPoly.monomial(tuple(-x for x in a),
                                             1 / p.terms[a])
            return exp, coeff, atoms, extra
        key, p = found
        atoms[key] = atoms.get(key, 0) + 1


def _class_poly(p, a, d):
    """Coefficients of p along the ray a + k*d, as {k: Fraction}."""
    i = next(j for j, x in enumerate(d) if x)
    u = {}
    for e, c in p.terms.items():
        diff = tuple(x - y for x, y in zip(e, a))
        k, r = divmod(diff[i], d[i])
        if r == 0 and k >= 0 and all(x == k * y for x, y in zip(diff, d)):
            u[k] = c
    return u


class RatFn:
    """Quotient of LaurentPolys with the denominator kept factored.

    den = prod (1 - c Z^v)^k * extra over the stored atoms; atom
    exponents are nonzero and lex-positive, monomial unit factors are
    folded into num, and extra (None when absent, which is the generic
    situation) is any unfactored remainder.  Construction cancels atoms
    into the numerator by exact binomial division, so fractions stay
    reduced through long products instead of ballooning.
    """

    __slots__ = ("num", "_atoms", "_extra", "_dim", "_denx")

    def __init__(self, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        exp, coeff, atoms, extra = _peel_atoms(den)
        if any(exp) or coeff != 1:
            num = num * LaurentPoly.monomial(tuple(-x for x in exp), 1 / coeff)
        got = RatFn._build(num, atoms, extra, len(next(iter(den.terms))))
        self.num, self._atoms = got.num, got._atoms
        self._extra, self._dim, self._denx = got._extra, got._dim, None

    @classmethod
    def _build(cls, num, atoms, extra, dim, reduce=True):
        obj = object.__new__(cls)
        if num.is_zero():
            atoms, extra = {}, None
        elif reduce and atoms:
            for key in sorted(atoms):
                v, c = key
                while atoms[key]:
                    q = poly_div_binomial(num, v, c)
                    if q is None:
                        break
                    num = q
                    atoms[key] -= 1
                if not atoms[key]:
                    del atoms[key]
        obj.num, obj._atoms, obj._extra = num, atoms, extra
        obj._dim, obj._denx = dim, None
        return obj

    @classmethod
    def from_poly(cls, p, dim):
        return cls._build(p, {}, None, dim, reduce=False)

    @property
    def den(self):
        if self._denx is None:
            d = LaurentPoly.const(1, self._dim)
            for atom in sorted(self._atoms):
                for _ in range(self._atoms[atom]):
                    d = d * _atom_poly(atom, self._dim)
            if self._extra is not None:
                d = d * self._extra
            self._denx = d
        return self._denx

    def is_zero(self):
        return self.num.is_zero()

    def _common_extra(self, other):
        """(extra, cofactor_for_self, cofactor_for_other) over a common den."""
        if self._extra == other._extra:
            return self._extra, None, None
        if self._extra is None:
            return other._extra, other._extra, None
        if other._extra is None:
            return self._extra, None, self._extra
        return self._extra * other._extra, other._extra, self._extra

    def __add__(self, other):
        atoms = dict(self._atoms)
        for a, k in other._atoms.items():
            atoms[a] = max(atoms.get(a, 0), k)
        n1, n2 = self.num, other.num
        for a, k in atoms.items():
            for _ in range(k - self._atoms.get(a, 0)):
                n1 = n1 * _atom_poly(a, self._dim)
            for _ in range(k - other._atoms.get(a, 0)):
                n2 = n2 * _atom_poly(a, self._dim)
        extra, cof1, cof2 = self._common_extra(other)
        if cof1 is not None:
            n1 = n1 * cof1
        if cof2 is not None:
            n2 = n2 * cof2
        return RatFn._build(n1 + n2, atoms, extra, self._dim)

    def __neg__(self):
        return RatFn._build(-self.num, dict(self._atoms), self._extra,
                            self._dim, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFn._build(self.num * other, dict(self._atoms),
                                self._extra, self._dim, reduce=False)
        atoms = dict(self._atoms)
        for a, k in other._atoms.items():
            atoms[a] = atoms.get(a, 0) + k
        if self._extra is None:
            extra = other._extra
        elif other._extra is None:
            extra = self._extra
        else:
            extra = self._extra * other._extra
        return RatFn._build(self.num * other.num, atoms, extra, self._dim)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverting the zero function")
        exp, coeff, atoms, extra = _peel_atoms(self.num)
        num = self.den * LaurentPoly.monomial(tuple(-x for x in exp), 1 / coeff)
        return RatFn._build(num, atoms, extra, self._dim)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFn.from_poly(LaurentPoly.const(other, self._dim),
                                    self._dim)
        return (self.num * other.den - other.num * self.den).is_zero()

    def subs_weyl(self, w):
        num = self.num.subs_weyl(w)
        atoms = {}
        for (v, c), k in self._atoms.items():
            vv, cc, uexp, ucoeff = _atomize(w.apply(v), c)
            atoms[(vv, cc)] = atoms.get((vv, cc), 0) + k
            if any(uexp) or ucoeff != 1:
                num = num * LaurentPoly.monomial(
                    tuple(-k * x for x in uexp), Fraction(1) / ucoeff ** k)
        extra = None if self._extra is None else self._extra.subs_weyl(w)
        return RatFn._build(num, atoms, extra, self._dim, reduce=False)

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


class Character:
    """A morphism Y -> Q*, by its (nonzero) values on the basis.

    >>> t = Character([4, 1])
    >>> t.value_on((-1, 2))
    Fraction(1, 4)
    """

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = tuple(Fraction(v) for v in values)
        if any(v == 0 for v in self.values):
            raise ValueError("character values must be nonzero")

    def value_on(self, lam):
        out = Fraction(1)
        for v, e in zip(self.values, lam):
            out *= v ** e
        return out

    def eval_poly(self, p):
        return sum((c * self.value_on(e) for e, c in p.terms.items()), Fraction(0))

    def act(self, w):
        """(w.tau)(lam) = tau(w^-1 lam)."""
        inv = w.inv().matrix
        d = len(self.values)
        vals = []
        for j in range(d):
            acc = Fraction(1)
            for k in range(d):
                acc *= self.values[k] ** inv[k][j]
            vals.append(acc)
        return Character(vals)

    def __eq__(self, other):
        return isinstance(other, Character) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "tau(" + ", ".join(str(v) for v in self.values) + ")"


def _poly_div_x_minus_1(coeffs):
    """Divide a univariate poly (dict deg->coeff, root at 1) by (x - 1)."""
    degs = sorted(coeffs)
    lo, hi = degs[0], degs[-1]
    dense = [coeffs.get(k, Fraction(0)) for k in range(lo, hi + 1)]
    out = [Fraction(0)] * (len(dense) - 1)
    acc = Fraction(0)
    for i in range(len(dense) - 1, 0, -1):
        acc += dense[i]
        out[i - 1] = acc
    rem = acc + dense[0]
    if rem != 0:
        raise ArithmeticError("1 was not a root")
    return {k + lo: c for k, c in enumerate(out) if c != 0}


def _curve_value(tau, theta, direction):
    """Value of theta at tau along x -> tau * x^direction, or 'pole'/None.

    None means the direction was degenerate (denominator collapsed to
    the zero polynomial on the curve) and should be redrawn.
    """
    def pull(p):
        out = {}
        for e, c in p.terms.items():
            k = sum(v * x for v, x in zip(direction, e))
            s = out.get(k, 0) + c * tau.value_on(e)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    q = pull(theta.den)
    if not q:
        return None
    p = pull(theta.num)

    def at_one(cs):
        return sum(cs.values(), Fraction(0))

    while p and at_one(p) == 0 and at_one(q) == 0:
        p = _poly_div_x_minus_1(p)
        q = _poly_div_x_minus_1(q)
        if not q:
            return None
    if at_one(q) != 0:
        return (at_one(p) if p else Fraction(0)) / at_one(q)
    if not p:
        # num identically zero on the curve but den vanishing at 1:
        # 0/(x-1)^k, a removable zero
        while at_one(q) == 0:
            q = _poly_div_x_minus_1(q)
            if not q:
                return None
        return Fraction(0)
    return "pole"


def eval_ratfn(tau, theta, rng=None, attempts=3, bound=20):
    """Evaluate theta in F(Y) at tau, through removable singularities.

    Direct evaluation when the stored denominator is nonzero at tau;
    otherwise generic-curve limits, requiring all defined attempts to
    agree.  Raises NotInLocalization on a genuine pole or on
    direction-dependent limits.
    """
    den_at = tau.eval_poly(theta.den)
    if den_at != 0:
        return tau.eval_poly(theta.num) / den_at
    if rng is None:
        rng = random.Random(0)
    d = len(tau.values)
    results = []
    draws = 0
    while len(results) < attempts and draws < attempts * 5:
        draws += 1
        v = [rng.randint(-bound, bound) for _ in range(d)]
        if all(x == 0 for x in v):
            continue
        r = _curve_value(tau, theta, v)
        if r is None:
            continue
        results.append(r)
    if not results:
        raise NotInLocalization("no usable generic direction found")
    defined = [r for r in results if r != "pole"]
    if not defined:
        raise NotInLocalization(f"pole at {tau!r}")
    if any(r == "pole" for r in results) or any(r != defined[0] for r in defined):
        raise NotInLocalization(
            f"direction-dependent limit at {tau!r}; not in the localization")
    return defined[0]
