"""Principal series I_tau, truncated to a Bruhat ball.

I_tau is the induced module with F-basis {H_w v_tau : w in W^v}; the
algebra acts through  h . (H_u v_tau) = ev_tau(h * H_u) . v_tau, where
ev_tau sends a right coefficient P(Z) to tau(P).  The Z-action is
triangular (Z^lam H_w v = sum over u <= w), so truncating to a ball
{l(w) <= L} is exact for the Z-action and for any operator whose
support reach fits; an operator that would push support outside the
ball raises OutOfBall rather than truncating silently.

Weight vectors, generalized weight spaces, and Frobenius operators
Upsilon_x (H_w v_{tau'} -> H_w . x, for x a tau'-weight vector) are all
computed by exact linear algebra over Q on the ball span.  The
one-edge intertwiners A_{w, sw, tau} = Upsilon_{F_s((sw).tau) v} between
I_{w.tau} and I_{sw.tau} follow Frobenius reciprocity; the edge is an
isomorphism iff (w.tau)(zeta_s) * (w.tau)(zeta_s^s) != 0.
"""

import random
from fractions import Fraction

from . import linalg, hecke
from .laurent import eval_ratfn
from .hecke import HeckeElt, h_mul_h, mono_past_w


class OutOfBall(Exception):
    """An action would move support outside the truncation ball."""


class PSModule:
    """The ball-truncated principal series I_tau at level L."""

    def __init__(self, datum, tau, L, seed=0):
        self.datum = datum
        self.tau = tau
        self.L = L
        self.basis = datum.ball(L)
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.rng = random.Random(seed)

    def vector(self, terms=None):
        return PSVector(self, terms)

    def v_tau(self):
        return PSVector(self, {self.datum.identity_elt(): Fraction(1)})

    def basis_vector(self, w):
        if w not in self.index:
            raise OutOfBall(f"{w!r} is outside ball({self.L})")
        return PSVector(self, {w: Fraction(1)})

    def sub_basis(self, bound):
        return [w for w in self.basis if w.length() <= bound]


class PSVector:
    """Element of the ball span, {WeylElement: Fraction}."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms=None):
        self.module = module
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    if w not in module.index:
                        raise OutOfBall(f"support {w!r} outside ball({module.L})")
                    self.terms[w] = c

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return PSVector(self.module, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return PSVector(self.module, {w: c * x for w, x in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, PSVector) and self.terms == other.terms

    def coords(self, sub=None):
        basis = self.module.basis if sub is None else sub
        idx = {w: i for i, w in enumerate(basis)}
        out = [Fraction(0)] * len(basis)
        for w, c in self.terms.items():
            out[idx[w]] = c
        return out

    def max_support(self):
        """The set of support elements of maximal length."""
        if not self.terms:
            return set()
        top = max(w.length() for w in self.terms)
        return {w for w in self.terms if w.length() == top}

    def __repr__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda w: (w.length(), w.matrix))
        return " + ".join(f"{self.terms[w]}*[{w!r}]" for w in keys)


# -- actions -------------------------------------------------------------------

def act_Z(module, lam, vec):
    """Z^lam . vec; exact on the ball (support only goes Bruhat-down)."""
    dat = module.datum
    out = {}
    for w, c in vec.terms.items():
        for u, pol in mono_past_w(dat, tuple(lam), w).items():
            val = c * module.tau.eval_poly(pol)
            if val:
                s = out.get(u, 0) + val
                if s:
                    out[u] = s
                else:
                    out.pop(u, None)
    return PSVector(module, out)


def act_basis(module, u, vec):
    """H_u . vec via the Hecke product; OutOfBall when support escapes."""
    dat = module.datum
    out = {}
    for w, c in vec.terms.items():
        for x, c2 in h_mul_h(dat, u, w).items():
            if x not in module.index:
                raise OutOfBall(
                    f"H_{u!r} pushes {w!r} to {x!r}, outside ball({module.L})")
            s = out.get(x, 0) + c * c2
            if s:
                out[x] = s
            else:
                out.pop(x, None)
    return PSVector(module, out)


def act_hecke(module, h, vec, rng=None):
    """h . vec for a symbolic element h = sum H_w theta_w(Z).

    Computes ev_tau(h * H_u) termwise; rational coefficients are
    evaluated through removable singularities.
    """
    dat = module.datum
    out = PSVector(module)
    rng = rng if rng is not None else module.rng
    for u, c in vec.terms.items():
        prod = h * HeckeElt.basis(dat, u)
        contrib = {}
        for x, theta in prod.terms.items():
            val = eval_ratfn(module.tau, theta, rng=rng)
            if val:
                if x not in module.index:
                    raise OutOfBall(f"support {x!r} outside ball({module.L})")
                contrib[x] = val * c
        out = out + PSVector(module, contrib)
    return out


def z_matrix(module, lam, sub=None):
    """Matrix of Z^lam on the (sub-)ball span, columns = basis images."""
    basis = module.basis if sub is None else sub
    idx = {w: i for i, w in enumerate(basis)}
    n = len(basis)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for j, w in enumerate(basis):
        img = act_Z(module, lam, module.basis_vector(w))
        for u, c in img.terms.items():
            mat[idx[u]][j] = c
    return mat


# -- weight theory ---------------------------------------------------------------

def weight_space(module, tau_prime, support_bound=None):
    """Basis of the tau'-weight space inside the (sub-)ball span.

    Exact: the Z-action preserves the span and the basis directions
    generate Y, so solutions are genuine weight vectors of I_tau.
    """
    bound = module.L if support_bound is None else support_bound
    sub = module.sub_basis(bound)
    d = module.datum.rank_y
    stacked = []
    for j in range(d):
        lam = tuple(1 if t == j else 0 for t in range(d))
        m = z_matrix(module, lam, sub)
        tv = tau_prime.value_on(lam)
        for i in range(len(sub)):
            m[i][i] -= tv
        stacked.extend(m)
    return [PSVector(module, {w: c for w, c in zip(sub, v) if c})
            for v in linalg.nullspace(stacked)]


def gen_weight_space(module, tau_prime, nil_order, support_bound=None):
    """Basis of vectors killed by m_{tau'}^k on the (sub-)ball span.

    m_{tau'} is generated by the d operators Z^{e_j} - tau'(e_j); since
    they commute, it is enough to intersect kernels of all degree-k
    monomials in them.
    """
    from itertools import combinations_with_replacement
    bound = module.L if support_bound is None else support_bound
    sub = module.sub_basis(bound)
    d = module.datum.rank_y
    n = len(sub)
    gens = []
    for j in range(d):
        lam = tuple(1 if t == j else 0 for t in range(d))
        m = z_matrix(module, lam, sub)
        tv = tau_prime.value_on(lam)
        for i in range(n):
            m[i][i] -= tv
        gens.append(m)
    stacked = []
    for combo in combinations_with_replacement(range(d), nil_order):
        prod = linalg.identity(n)
        for j in combo:
            prod = linalg.mat_mul(gens[j], prod)
        stacked.extend(prod)
    return [PSVector(module, {w: c for w, c in zip(sub, v) if c})
            for v in linalg.nullspace(stacked)]


def weights_in_ball(module):
    """[(w, w.tau) for w in the ball]; the candidate weight labels."""
    return [(w, module.tau.act(w)) for w in module.basis]


# -- distinguished vectors and operators -----------------------------------------

def elt_at_tau(module, h, rng=None):
    """h(tau) v_tau for a Hecke element h = sum H_w theta_w: evaluate every
    coefficient at tau (raises NotInLocalization when some coefficient
    genuinely fails to evaluate)."""
    rng = rng if rng is not None else module.rng
    out = {}
    for u, theta in h.terms.items():
        val = eval_ratfn(module.tau, theta, rng=rng)
        if val:
            out[u] = val
    return PSVector(module, out)


def f_at_tau(module, w, rng=None):
    """F_w(tau) v_tau as a ball vector."""
    if w.length() > module.L:
        raise OutOfBall(f"l({w!r}) > L = {module.L}")
    return elt_at_tau(module, hecke.f_w(module.datum, w), rng)


def f_prime_at_tau(module, w, rng=None):
    """F'_w(tau) v_tau (the zeta-normalized variant)."""
    if w.length() > module.L:
        raise OutOfBall(f"l({w!r}) > L = {module.L}")
    return elt_at_tau(module, hecke.f_prime_w(module.datum, w), rng)


def is_weight_vector(module, vec, tau_prime):
    d = module.datum.rank_y
    for j in range(d):
        lam = tuple(1 if t == j else 0 for t in range(d))
        if act_Z(module, lam, vec) != vec.scale(tau_prime.value_on(lam)):
            return False
    return True


class PSOperator:
    """Upsilon_x: I_{tau'} -> I_tau,  H_w v_{tau'} -> H_w . x,  for x a
    tau'-weight vector of I_tau (Frobenius reciprocity)."""

    def __init__(self, source, target, defining, check=True):
        self.source = source
        self.target = target
        self.defining = defining
        if check and not is_weight_vector(target, defining, source.tau):
            raise ValueError("defining vector is not a weight vector for the "
                             "source character")

    def reach(self):
        return max((w.length() for w in self.defining.terms), default=0)

    def apply(self, vec):
        out = PSVector(self.target)
        for w, c in vec.terms.items():
            out = out + act_basis(self.target, w, self.defining).scale(c)
        return out

    def compose(self, other):
        """self o other (apply other first)."""
        if other.target is not self.source and other.target.tau != self.source.tau:
            raise ValueError("composition characters do not match")
        return PSOperator(other.source, self.target,
                          self.apply(other.defining), check=False)

    def image_span(self, support_bound):
        """Echelonized image of the sub-ball span (safe: raises OutOfBall
        if the sub-ball is too deep for the operator's reach)."""
        vecs = [self.apply(self.source.basis_vector(u))
                for u in self.source.sub_basis(support_bound)]
        return echelon_span(self.target, vecs)

    def safe_bound(self):
        return self.target.L - self.reach()


def echelon_span(module, vecs):
    """Row-reduce a list of PSVectors; returns an independent list."""
    rows = [v.coords() for v in vecs if not v.is_zero()]
    if not rows:
        return []
    red, piv = linalg.rref(rows)
    return [PSVector(module, {w: c for w, c in zip(module.basis, red[i]) if c})
            for i in range(len(piv))]


def span_contains(module, span_vecs, vec):
    rows = [v.coords() for v in span_vecs]
    return linalg.row_space_contains(rows, vec.coords())


# -- one-edge intertwiners --------------------------------------------------------

def edge_zeta_values(datum, tau, w, s, rng=None):
    """((w.tau)(zeta_s), (w.tau)(zeta_s^s)) -- the two edge factors.

    zeta_s^s substitutes Z^{-alpha_s^v} -> Z^{alpha_s^v}.
    """
    wt = tau.act(w)
    z = hecke.zeta_fn(datum, s)
    zs = z.subs_weyl(datum.simple(s))
    rng = rng if rng is not None else random.Random(0)
    return eval_ratfn(wt, z, rng=rng), eval_ratfn(wt, zs, rng=rng)


def edge_is_iso(datum, tau, w, s, rng=None):
    """Is A_{w, sw, tau} an isomorphism?  Also returns the annotation of
    the vanishing factor for graph output."""
    from .laurent import NotInLocalization
    try:
        zv, zsv = edge_zeta_values(datum, tau, w, s, rng)
    except NotInLocalization:
        return False, "zeta undefined"
    if zv == 0 and zsv == 0:
        return False, "zeta_s & zeta_s^s"
    if zv == 0:
        return False, "zeta_s"
    if zsv == 0:
        return False, "zeta_s^s"
    return True, None


def edge_intertwiner(datum, tau, w, s, L, seed=0):
    """A_{w, sw, tau}: I_{w.tau} -> I_{sw.tau} (sw need not be longer).

    Defining vector: F_s((sw).tau) v in I_{sw.tau}, a (w.tau)-weight
    vector there.
    """
    sw = datum.simple(s) * w
    src = PSModule(datum, tau.act(w), L, seed=seed)
    tgt = PSModule(datum, tau.act(sw), L, seed=seed)
    x = f_at_tau(tgt, datum.simple(s))
    return PSOperator(src, tgt, x)


def intertwiner_along_word(datum, tau, word, L, seed=0):
    """The composite A_{w, 1, tau}: I_{w.tau} -> I_tau along a reduced
    word (s_1, ..., s_r) of w, peeling leading letters one edge at a
    time: I_{(s_1...s_r).tau} -> I_{(s_2...s_r).tau} -> ... -> I_tau.
    """
    op = None
    cur = datum.from_word(word)
    for s in word:
        step = edge_intertwiner(datum, tau, cur, s, L, seed=seed)
        op = step if op is None else step.compose(op)
        cur = datum.simple(s) * cur
    return op
