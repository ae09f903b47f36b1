"""Stabilizer structure at a character tau with all zeta-numerators nonzero.

For tau in the open region U (no positive coroot evaluates to sigma^2,
so the one-edge intertwiners never vanish identically) the stabilizer
W_tau splits as R_tau x| W_(tau):

* Phi_(tau):  positive coroots beta with tau(zeta^den_beta) = 0 (equal
  parameters: tau(beta) = 1) — the "singular" coroots;
* W_(tau) = <r_beta : beta in Phi_(tau)>, a reflection subgroup with
  canonical Coxeter generators S_tau = {r : N(r) cap Phi_(tau) = {alpha_r}}
  and length function l_tau(w) = |N(w) cap Phi_(tau)|;
* R_tau = {w in W_tau : N(w) cap Phi_(tau) = empty}, the subgroup
  preserving the positive singular coroots.

The normalized intertwiners psi'_{w_R} = Upsilon_{F'_{w_R}(tau) v_tau}
realize End(I_tau) as the group algebra of R_tau via e^w -> psi'_{w^-1};
concretely psi'_a o psi'_b = psi'_{ba} (for abelian R_tau this is the
group law on the nose).  The generalized tau-weight space has basis
K_{word(w)}(tau) psi_{w_R}(v_tau) over (w, w_R) in W_(tau) x R_tau, with
max Bruhat support {w w_R}.

Everything here assumes equal parameters (sigma'_s = sigma_s = sigma for
all s); unequal parameters raise UnsupportedParameters.  All enumerated
sets are ball-relative; membership predicates (is_singular, in_w_tau)
are exact formulas valid for any element.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import hecke, linalg, series
from .rootdata import (inversion_coroots, coroot_to_reflection,
                       positive_coroots_in_ball)


class NotInUC(Exception):
    """Some in-ball coroot kills a zeta numerator at tau."""


class UnsupportedParameters(Exception):
    """This analysis layer requires a single parameter sigma_s = sigma'_s."""


class Ambiguous(Exception):
    """The ball is too small to separate the classification cases."""


def require_equal_parameters(datum):
    sig = set(datum.sigma.values()) | set(datum.sigma_prime.values())
    if len(sig) != 1:
        raise UnsupportedParameters(
            f"need sigma_s = sigma'_s for all s, got {sorted(sig)}")
    return next(iter(sig))


def is_singular(datum, tau, beta):
    """tau(zeta^den_beta) = 0, i.e. tau(beta) = 1 (equal parameters:
    zeta_beta = (1 - sigma^2 Z^-beta)/(1 - Z^-beta))."""
    return tau.value_on(beta) == 1


def uc_obstruction(datum, tau, beta):
    """The numerator value tau(1 - sigma^2 Z^-beta); zero means tau is
    outside the U-region at beta."""
    sigma = require_equal_parameters(datum)
    return 1 - sigma * sigma / tau.value_on(beta)


def ell_tau(datum, tau, w):
    """|N(w) cap Phi_(tau)| — the Coxeter length of w in W_(tau) when w
    lies in that reflection subgroup (exact; no ball needed)."""
    return sum(1 for beta in inversion_coroots(w)
               if is_singular(datum, tau, beta))


def in_w_tau(tau, w):
    return tau.act(w) == tau


@dataclass
class StabilizerData:
    datum: object
    tau: object
    L: int
    seed: int
    ball: list
    coroots: list                    # positive coroots met in the ball
    w_tau: list                      # W_tau cap ball
    phi_tau: list                    # singular coroots among `coroots`
    s_tau: list = field(default_factory=list)   # (reflection, coroot, node)
    w_paren: list = field(default_factory=list)  # W_(tau) cap ball
    s_words: dict = field(default_factory=dict)  # w -> S_tau word (indices)
    r_tau: list = field(default_factory=list)    # R_tau cap ball

    def ell_tau(self, w):
        return ell_tau(self.datum, self.tau, w)


def _sorted_elts(elts):
    return sorted(elts, key=lambda w: (w.length(), w.matrix))


def analyze(datum, tau, L, seed=0):
    """StabilizerData for tau on ball(L); raises NotInUC on a vanishing
    zeta numerator, UnsupportedParameters on unequal parameters."""
    require_equal_parameters(datum)
    ball = datum.ball(L)
    coroots = positive_coroots_in_ball(datum, L)

    bad = [beta for beta in coroots if uc_obstruction(datum, tau, beta) == 0]
    if bad:
        raise NotInUC(f"zeta numerator vanishes at coroots {bad}")

    w_tau = _sorted_elts(w for w in ball if in_w_tau(tau, w))
    phi_tau = [beta for beta in coroots if is_singular(datum, tau, beta)]
    phi_set = set(phi_tau)

    # W_tau stabilizes the singular coroots up to sign (sanity check).
    for w in w_tau:
        for beta in phi_tau:
            img = w.apply(beta)
            sgn = datum.coroot_sign(img)
            root = img if sgn > 0 else tuple(-x for x in img)
            assert is_singular(datum, tau, root), \
                f"{w!r} moves singular {beta} to non-singular {img}"

    # canonical generators: reflections whose only singular inversion is
    # their own coroot
    s_tau = []
    for beta in phi_tau:
        r, row, node = coroot_to_reflection(datum, beta)
        others = [g for g in inversion_coroots(r)
                  if g != beta and is_singular(datum, tau, g)]
        if not others:
            s_tau.append((r, beta, node))
    s_tau.sort(key=lambda t: (t[0].length(), t[0].matrix))

    data = StabilizerData(datum, tau, L, seed, ball, coroots,
                          w_tau, phi_tau, s_tau)

    # BFS enumeration of W_(tau) cap ball with fixed S_tau-reduced words
    e = datum.identity_elt()
    words = {e: ()}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            lw = ell_tau(datum, tau, w)
            for i, (r, _, _) in enumerate(s_tau):
                w2 = w * r
                if w2 in words or w2.length() > L:
                    continue
                if ell_tau(datum, tau, w2) != lw + 1:
                    continue
                assert in_w_tau(tau, w2), "reflection subgroup left W_tau"
                words[w2] = words[w] + (i,)
                nxt.append(w2)
        frontier = nxt
    data.w_paren = _sorted_elts(words)
    data.s_words = words

    data.r_tau = _sorted_elts(
        w for w in w_tau
        if not any(is_singular(datum, tau, b) for b in inversion_coroots(w)))

    # semidirect law: every stabilizer element recomposes
    for w in w_tau:
        w_r, u, _ = decompose(data, w)
        assert w_r * u == w
    return data


def decompose(data, w):
    """w = w_R * u with w_R in R_tau, u in W_(tau): strip reflections of
    singular inversion coroots from the right (length strictly drops)."""
    datum, tau = data.datum, data.tau
    if not in_w_tau(tau, w):
        raise ValueError(f"{w!r} does not stabilize tau")
    rest = w
    stripped = []
    while True:
        sing = sorted(b for b in inversion_coroots(rest)
                      if is_singular(datum, tau, b))
        if not sing:
            break
        r, _, _ = coroot_to_reflection(datum, sing[0])
        nxt = rest * r
        assert nxt.length() < rest.length()
        stripped.append(r)
        rest = nxt
    u = data.datum.identity_elt()
    for r in stripped:
        u = r * u
    return rest, u, stripped


# -- rank-2 classification ----------------------------------------------------------

CASE_NAMES = {
    1: "W_tau = 1",
    2: "W_tau = W_(tau) = <r> = Z/2",
    3: "W_tau = R_tau = <r> = Z/2, W_(tau) = 1",
    4: "W_tau = R_tau = <rotation> = Z, W_(tau) = 1",
    5: "W_tau = W_(tau) = W^v = D_inf, R_tau = 1",
    6: "W_tau = R_tau = W^v = D_inf, W_(tau) = 1",
    7: "W_tau = W^v, W_(tau) index 2, R_tau = Z/2",
}


@dataclass
class Rank2Case:
    case: int
    name: str
    detail: dict
    ball_relative: bool = True


def classify_rank2(data):
    """Match the in-ball (W_tau, W_(tau), R_tau) against the seven
    possible stabilizer shapes of an infinite rank-2 Weyl group."""
    datum = data.datum
    if datum.n != 2:
        raise ValueError("classification is for rank-2 data")
    if datum.braid_order(0, 1) is not None:
        raise ValueError("classification is for infinite dihedral W^v")
    if data.L < 4:
        raise Ambiguous("need L >= 4 to separate the seven cases")

    e = datum.identity_elt()
    wt, wp, rt = data.w_tau, data.w_paren, data.r_tau
    detail = {
        "w_tau": [repr(w) for w in wt],
        "w_paren": [repr(w) for w in wp],
        "r_tau": [repr(w) for w in rt],
        "s_tau": [repr(r) for r, _, _ in data.s_tau],
    }

    if wt == [e]:
        case = 1
    elif all(w.length() % 2 == 0 for w in wt) and len(wt) > 1:
        case = 4
        g = min((w for w in wt if not w.is_identity()),
                key=lambda w: (w.length(), w.matrix))
        detail["generator"] = repr(g)
        detail["k"] = g.length() // 2
        if wp != [e] or rt != wt:
            raise Ambiguous("even-length stabilizer without Z pattern")
    elif len(wt) == 2:
        r = wt[1]
        if not (r * r).is_identity():
            raise Ambiguous(f"two-element stabilizer with non-involution {r!r}")
        case = 2 if r in set(wp) else 3
    else:
        full = set(wt) == set(data.ball)
        if not full:
            raise Ambiguous("large stabilizer that is not the full ball")
        if set(wp) == set(wt):
            case = 5
        elif wp == [e]:
            case = 6
        else:
            case = 7
            if len(rt) != 2:
                raise Ambiguous("expected R_tau = Z/2 in the mixed case")
    return Rank2Case(case, CASE_NAMES[case], detail)


# -- normalized intertwiners and End(I_tau) ----------------------------------------

def psi(data, module, w_R, rng=None):
    """psi_{w_R} = Upsilon_{F_{w_R}(tau) v_tau} in End(I_tau)."""
    if not in_w_tau(data.tau, w_R):
        raise ValueError(f"{w_R!r} not in the stabilizer")
    vec = series.f_at_tau(module, w_R, rng)
    return series.PSOperator(module, module, vec)


def psi_prime(data, module, w_R, rng=None):
    """The F'-normalized variant; satisfies psi'_a o psi'_b = psi'_{ba}."""
    if not in_w_tau(data.tau, w_R):
        raise ValueError(f"{w_R!r} not in the stabilizer")
    vec = series.f_prime_at_tau(module, w_R, rng)
    return series.PSOperator(module, module, vec)


def end_table(data, module, elements=None):
    """Composition table of the psi'_{w_R} on the safe ball.

    Verifies psi'_a o psi'_b = psi'_{b*a} for every pair with all three
    lengths within reach (the End(I_tau) ~ Q[R_tau] law, e^w -> psi'_{w^-1});
    also records whether psi'_{a*b} agrees (commutativity witness).
    """
    L = module.L
    if elements is None:
        elements = [w for w in data.r_tau if w.length() * 2 <= L]
    ops = {w: psi_prime(data, module, w) for w in elements}
    rows = []
    all_ok = True
    for a in elements:
        for b in elements:
            ba = b * a
            if a.length() + b.length() > L or ba.length() > L:
                continue
            lhs = ops[a].compose(ops[b]).defining
            rhs = ops.get(ba)
            rhs_vec = rhs.defining if rhs is not None else \
                series.f_prime_at_tau(module, ba)
            ok = lhs == rhs_vec
            ab = a * b
            comm = (ab == ba) or (lhs == series.f_prime_at_tau(module, ab)
                                  if ab.length() <= L else None)
            all_ok = all_ok and ok
            rows.append({"a": repr(a), "b": repr(b), "product": repr(ba),
                         "law_ok": ok, "commutes": comm})
    return {"law": "psi'_a o psi'_b = psi'_{ba}", "rows": rows,
            "all_ok": all_ok}


def psi_inverse_check(data, module, w_R):
    """psi_{w_R} o psi_{w_R^-1} is a nonzero scalar times the identity
    (so psi_{w_R} is invertible); returns the scalar."""
    comp = psi(data, module, w_R).compose(psi(data, module, w_R.inv()))
    vec = comp.defining
    e = data.datum.identity_elt()
    c = vec.terms.get(e)
    if not c or vec != module.v_tau().scale(c):
        raise AssertionError("psi composition is not scalar on v_tau")
    return c


# -- generalized weight space basis --------------------------------------------------

def k_vector(data, module, w, w_R, rng=None):
    """K_{word(w)}(tau) psi_{w_R}(v_tau) = ev_tau(K_{word(w)} * F_{w_R})."""
    word = data.s_words[w]
    refls = [data.s_tau[i][0] for i in word]
    h = hecke.k_word(data.datum, refls) * hecke.f_w(data.datum, w_R)
    return series.elt_at_tau(module, h, rng)


def gen_weight_basis(data, module, support_bound):
    """The K-basis {K_{word(w)}(tau) psi_{w_R}(v_tau)} of the generalized
    tau-weight space, over pairs (w, w_R) with l(w*w_R) <= support_bound.

    Returns (records, vectors); each record carries the max-support law
    check max(supp) = {w*w_R}.
    """
    records, vectors = [], []
    for w in data.w_paren:
        for w_R in data.r_tau:
            prod = w * w_R
            if prod.length() > support_bound:
                continue
            vec = k_vector(data, module, w, w_R)
            records.append({
                "w": repr(w), "w_R": repr(w_R), "product": repr(prod),
                "max_support_ok": vec.max_support() == {prod},
            })
            vectors.append(vec)
    return records, vectors


def gen_weight_space_stable(module, tau_prime, support_bound):
    """gen weight space by nullspace, with the nilpotency order raised
    until the dimension stabilizes."""
    prev = None
    k = 1
    while True:
        space = series.gen_weight_space(module, tau_prime, k, support_bound)
        if prev is not None and len(space) == len(prev):
            return space
        prev = space
        k += 1


def conjecture_check(data, module, support_bound):
    """In-ball check that I_tau(tau, W_(tau)) = Q v_tau: the span of the
    K_{word(w)}(tau) v_tau meets the tau-weight space in the line Q v_tau;
    moreover K_r(tau)v_tau is not a weight vector for the generators.

    In rank 2 this is a theorem; in higher rank it is conjectural and the
    result carries a warning flag.
    """
    datum = data.datum
    vecs = []
    for w in data.w_paren:
        if w.length() > support_bound:
            continue
        vecs.append(k_vector(data, module, w, datum.identity_elt()))
    k_rows = [v.coords() for v in vecs]
    wt_rows = [v.coords()
               for v in series.weight_space(module, data.tau, support_bound)]
    inter = linalg.span_intersection(k_rows, wt_rows)
    line_ok = len(inter) == 1 and linalg.row_space_contains(
        inter, module.v_tau().coords())

    gens_not_weight = []
    for i, (r, _, _) in enumerate(data.s_tau):
        if r.length() > support_bound:
            continue
        w = next((w for w, word in data.s_words.items() if word == (i,)), None)
        if w is None:
            continue
        kv = k_vector(data, module, w, datum.identity_elt())
        gens_not_weight.append(
            (repr(r), not series.is_weight_vector(module, kv, data.tau)))

    return {
        "line_ok": line_ok,
        "intersection_dim": len(inter),
        "generators_not_weight": gens_not_weight,
        "conjectural": data.datum.n > 2,
    }


# -- ideal dictionary ---------------------------------------------------------------

class ReachExceeded(Exception):
    pass


def _pair_span(module, id_vec, psi_vec, rows_m):
    """Solve for (a, b) with a*v_tau + b*psi'(v_tau) in the span rows_m."""
    m = list(rows_m)
    cols = len(id_vec)
    stack = []
    for vec in (id_vec, psi_vec):
        stack.append(list(vec))
    # a*id + b*psi - sum c_i m_i = 0  -> nullspace of the transposed system
    mat = []
    for j in range(cols):
        mat.append([stack[0][j], stack[1][j]] + [-row[j] for row in m])
    sols = linalg.nullspace(mat)
    pairs = [s[:2] for s in sols]
    red, piv = linalg.rref(pairs) if pairs else ([], [])
    return [red[i] for i in range(len(piv))]


def ideal_dictionary(data, module, bound=None):
    """The four ideals of Q[Z/2] = <Id, psi'_r> against submodules of I_tau.

    J -> M_J := sum of images of J's basis operators (in-ball span);
    M -> J_M := {a Id + b psi' : (a Id + b psi')(v_tau) in M}.
    Asserts the round trip J -> M_J -> J recovers J for all four ideals.
    """
    nontriv = [w for w in data.r_tau if not w.is_identity()]
    if len(nontriv) != 1 or not (nontriv[0] * nontriv[0]).is_identity():
        raise ValueError("ideal dictionary implemented for R_tau = Z/2")
    r = nontriv[0]
    if bound is None:
        bound = module.L - r.length()
    if bound < 0:
        raise ReachExceeded("ball too small for psi'_r images")
    p = psi_prime(data, module, r)
    v = module.v_tau()
    pv = p.defining

    ideals = {
        "0": [],
        "(psi'+1)": [(Fraction(1), Fraction(1))],
        "(psi'-1)": [(Fraction(-1), Fraction(1))],  # -Id + psi'
        "full": [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))],
    }

    sub = module.sub_basis(bound)
    results = []
    for name, gens in ideals.items():
        img_vecs = []
        for (a, b) in gens:
            for u in sub:
                base = module.basis_vector(u)
                img_vecs.append(base.scale(a) + p.apply(base).scale(b))
        span = series.echelon_span(module, img_vecs)
        rows_m = [x.coords() for x in span]
        recovered = _pair_span(module, v.coords(), pv.coords(), rows_m)
        original, piv = linalg.rref([list(g) for g in gens]) if gens else ([], [])
        original = [original[i] for i in range(len(piv))]
        results.append({
            "ideal": name,
            "dim_J": len(original),
            "dim_M_window": len(span),
            "dim_recovered": len(recovered),
            "round_trip": recovered == original,
        })
    return results


def idempotent_split(data, module, bound=None):
    """M_(1,0) = (psi'+Id)(I_tau) and M_(0,1) = (psi'-Id)(I_tau) for
    R_tau = Z/2: in-ball spans, direct-sum check, and the weight lines
    M_(1,0)(tau) = Q(psi'(v)+v), M_(0,1)(tau) = Q(psi'(v)-v)."""
    nontriv = [w for w in data.r_tau if not w.is_identity()]
    (r,) = nontriv
    if bound is None:
        bound = module.L - r.length()
    p = psi_prime(data, module, r)
    v = module.v_tau()
    sub = module.sub_basis(bound)
    plus_vecs, minus_vecs = [], []
    for u in sub:
        base = module.basis_vector(u)
        img = p.apply(base)
        plus_vecs.append(img + base)
        minus_vecs.append(img - base)
    plus = series.echelon_span(module, plus_vecs)
    minus = series.echelon_span(module, minus_vecs)
    inter = linalg.span_intersection([x.coords() for x in plus],
                                     [x.coords() for x in minus])
    total = series.echelon_span(module, plus + minus)
    wt = series.weight_space(module, data.tau, bound)
    wt_rows = [x.coords() for x in wt]
    plus_tau = linalg.span_intersection([x.coords() for x in plus], wt_rows)
    minus_tau = linalg.span_intersection([x.coords() for x in minus], wt_rows)
    pv = p.defining
    return {
        "dim_plus": len(plus), "dim_minus": len(minus),
        "dim_intersection": len(inter),
        "dim_sum": len(total), "window": len(sub),
        "plus_tau_dim": len(plus_tau), "minus_tau_dim": len(minus_tau),
        "plus_tau_line_ok": bool(plus_tau) and linalg.row_space_contains(
            plus_tau, (pv + v).coords()),
        "minus_tau_line_ok": bool(minus_tau) and linalg.row_space_contains(
            minus_tau, (pv - v).coords()),
        "spans": (plus, minus),
    }


def nested_image_chain(data, module, k_max=3, a=Fraction(1)):
    """For R_tau = <g> = Z (case 4): the strictly decreasing chain of
    in-ball image spans of (psi'_g + a)^k, k = 0..k_max (the maximal
    submodule (psi+a)(I_tau) and its powers)."""
    g = min((w for w in data.r_tau if not w.is_identity()),
            key=lambda w: (w.length(), w.matrix))
    lg = g.length()
    op = psi_prime(data, module, g)
    L = module.L

    def apply_op(vec):
        return op.apply(vec) + vec.scale(a)

    chain = []
    spans = []
    for k in range(k_max + 1):
        b = L - k * lg
        if b < 0:
            raise ReachExceeded("ball too small for the requested chain")
        vecs = [module.basis_vector(u) for u in module.sub_basis(b)]
        for _ in range(k):
            vecs = [apply_op(x) for x in vecs]
        span = series.echelon_span(module, vecs)
        spans.append(span)
        chain.append({"k": k, "domain_bound": b, "rank": len(span)})
    strict = all(chain[i]["rank"] > chain[i + 1]["rank"]
                 for i in range(k_max))
    nested = all(
        all(series.span_contains(module, spans[i], x) for x in spans[i + 1])
        for i in range(k_max))
    return {"generator": repr(g), "a": str(a), "chain": chain,
            "strictly_decreasing": strict, "nested": nested}


def irr_dimension_report(data):
    """In-ball dimension data of the irreducible representation with
    weight tau: dim N = |W_(tau)| * |W^v / W_tau| (ball-relative counts).
    """
    datum, tau = data.datum, data.tau
    reps = []
    for w in data.ball:
        if not any(in_w_tau(tau, rep.inv() * w) for rep in reps):
            reps.append(w)
    w_paren_count = len(data.w_paren)
    finite = len(datum.ball(data.L + 1)) == len(data.ball)
    return {
        "dim_N_tau": 1,
        "dim_N_tau_gen": w_paren_count,
        "coset_count": len(reps),
        "dim_N": w_paren_count * len(reps),
        "exact": finite,
    }


def uc_report(datum, tau, L, seed=0):
    """Full JSON-ready stabilizer report (rank-2 classification included
    when applicable)."""
    data = analyze(datum, tau, L, seed)
    module = series.PSModule(datum, tau, L, seed)
    report = {
        "L": L,
        "w_tau": [repr(w) for w in data.w_tau],
        "phi_tau": [list(b) for b in data.phi_tau],
        "s_tau": [repr(r) for r, _, _ in data.s_tau],
        "w_paren": [repr(w) for w in data.w_paren],
        "r_tau": [repr(w) for w in data.r_tau],
        "ball_relative": True,
    }
    case = None
    if datum.n == 2 and datum.braid_order(0, 1) is None:
        case = classify_rank2(data)
        report["case"] = case.case
        report["case_name"] = case.name
        report["case_detail"] = case.detail
    report["end_table"] = end_table(data, module)
    report["irr_dims"] = irr_dimension_report(data)
    nontriv = [w for w in data.r_tau if not w.is_identity()]
    if len(nontriv) == 1 and (nontriv[0] * nontriv[0]).is_identity():
        report["ideal_dictionary"] = ideal_dictionary(data, module)
        split = idempotent_split(data, module)
        report["idempotent_split"] = {
            k: v for k, v in split.items() if k != "spans"}
    if case is not None and case.case == 4:
        g = min((w for w in data.r_tau if not w.is_identity()),
                key=lambda w: (w.length(), w.matrix))
        k_max = min(3, L // max(1, g.length()))
        report["nested_chain"] = nested_image_chain(data, module, k_max=k_max)
    bound = max(0, L - 3)
    report["conjecture"] = conjecture_check(data, module, bound)
    return report
