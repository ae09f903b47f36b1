"""Finite-dimensional F[Y+]-modules from commuting matrices, and the
extension of the action to the group algebra F[Y].

A FiniteMonoidModule stores rho(lambda) for finitely many lambda in Y+
(pairwise commuting square matrices over Q).  The action of the monoid
they generate extends to the group they generate iff every rho(lambda)
is invertible -- multiplicativity makes the generator condition
sufficient -- and then rho(mu) = rho(mu_+) * rho(mu_-)^{-1} for any
decomposition mu = mu_+ - mu_- inside the generated monoid, independent
of the decomposition.  When all characteristic polynomials split over
Q, the module is the direct sum of its simultaneous generalized
eigenspaces M(tau, gen) over the weight tuples tau, and extendability
is the statement that no weight vanishes on a generator.

Principal-series windows give natural examples: commuting past H_w only
shortens Bruhat length, so a length-ball of I_tau is stable under every
Z^lambda and the z_matrix action restricts to an honest F[Y+]-module.

JSON form: {"generators": [{"lambda": [...], "matrix": [[...]]}]}.
"""

from fractions import Fraction

from . import linalg, rootdata


class NonCommutingGenerators(Exception):
    """The given matrices do not pairwise commute."""


class NotExtendable(Exception):
    """Some generator acts non-invertibly."""


class ReachExceeded(Exception):
    """mu is not a difference of monoid elements within the search box."""


class UnsplitSpectrum(Exception):
    """A characteristic polynomial has irrational roots (Qbar is out of
    scope; documented limitation)."""


class FiniteMonoidModule:
    """rho(lambda_i) for lambda_i in Y+, pairwise commuting, over Q."""

    def __init__(self, datum, generators):
        self.datum = datum
        self.gens = []
        self.n = None
        for lam, mat in generators:
            lam = tuple(int(x) for x in lam)
            if len(lam) != datum.rank_y:
                raise ValueError(f"lambda {lam} not in Y = Z^{datum.rank_y}")
            verdict = rootdata.tits_cone_contains(datum, lam)
            if verdict != "inside":
                raise ValueError(f"lambda {lam} not certified in Y+: {verdict}")
            mat = linalg.frac_matrix(mat)
            if self.n is None:
                self.n = len(mat)
            if len(mat) != self.n or any(len(r) != self.n for r in mat):
                raise ValueError("matrices must be square of equal size")
            self.gens.append((lam, mat))
        if self.n is None:
            self.n = 0
        for i in range(len(self.gens)):
            for j in range(i + 1, len(self.gens)):
                a, b = self.gens[i][1], self.gens[j][1]
                if linalg.mat_mul(a, b) != linalg.mat_mul(b, a):
                    raise NonCommutingGenerators(
                        f"rho{self.gens[i][0]} and rho{self.gens[j][0]}")

    @classmethod
    def from_json(cls, datum, doc):
        return cls(datum, [(g["lambda"], g["matrix"])
                           for g in doc["generators"]])

    def to_json(self):
        return {"generators": [
            {"lambda": list(lam),
             "matrix": [[str(c) for c in row] for row in mat]}
            for lam, mat in self.gens]}


def extendable(m):
    """Extension criterion: every generator invertible.

    Returns {"extendable": True} or a witness dict with the singular
    generator and a kernel vector.
    """
    for lam, mat in m.gens:
        if m.n and linalg.rank(mat) < m.n:
            cols = nullspace_vec(mat)
            return {"extendable": False, "witness_lambda": list(lam),
                    "kernel_vector": cols}
    return {"extendable": True}


def nullspace_vec(mat):
    basis = linalg.nullspace(mat)
    return list(basis[0])


def monoid_decomposition(m, mu, box=6):
    """Integer coefficients c with sum c_i lambda_i = mu, as exponents of
    the generators; positive and negative parts then live in the monoid.

    Solves the linear system over Q and, if the particular solution is
    not integral, searches integer multiples of the nullspace basis in
    [-box, box].  Raises ReachExceeded when no integer solution is found.
    """
    mu = tuple(Fraction(x) for x in mu)
    if not m.gens:
        if any(mu):
            raise ReachExceeded(f"{mu} nonzero but there are no generators")
        return []
    cols = [list(lam) for lam, _ in m.gens]
    mat = [[Fraction(cols[j][i]) for j in range(len(cols))]
           for i in range(m.datum.rank_y)]
    part = linalg.solve(mat, list(mu))
    if part is None:
        raise ReachExceeded(f"{mu} is not in the span of the generators")
    null = linalg.nullspace(mat)
    if all(c.denominator == 1 for c in part):
        return [int(c) for c in part]
    if null:
        from itertools import product
        for combo in product(range(-box, box + 1), repeat=len(null)):
            cand = [part[i] + sum(k * v[i] for k, v in zip(combo, null))
                    for i in range(len(part))]
            if all(c.denominator == 1 for c in cand):
                return [int(c) for c in cand]
    raise ReachExceeded(f"no integer decomposition of {mu} found")


def extend(m, mu, box=6):
    """rho(mu) for mu in Y, via rho(mu_+) * rho(mu_-)^{-1}.

    Requires extendable(m); the result does not depend on the chosen
    decomposition because the generators commute and multiplicativity
    pins the extension on the generated group.
    """
    ext = extendable(m)
    if not ext["extendable"]:
        raise NotExtendable(f"rho{tuple(ext['witness_lambda'])} is singular")
    coeffs = monoid_decomposition(m, mu, box)
    out = linalg.identity(m.n)
    for c, (_, mat) in zip(coeffs, m.gens):
        if c == 0:
            continue
        step = mat if c > 0 else linalg.inverse(mat)
        for _ in range(abs(c)):
            out = linalg.mat_mul(out, step)
    return out


def gen_weight_decomposition(m):
    """Simultaneous generalized eigenspace decomposition.

    Returns a list of {"tau": tuple of eigenvalues following the
    generator order, "dim": k, "space": row basis}; dimensions sum to n.
    Raises UnsplitSpectrum when some characteristic polynomial has an
    irrational root.
    """
    if m.n == 0:
        return []
    per_gen = []
    for lam, mat in m.gens:
        roots, split = linalg.rational_roots(linalg.char_poly(mat))
        if not split:
            raise UnsplitSpectrum(f"char poly of rho{lam} does not split over Q")
        spaces = {}
        for r in sorted(set(roots)):
            shifted = linalg.mat_sub(mat, [[r if i == j else Fraction(0)
                                            for j in range(m.n)]
                                           for i in range(m.n)])
            power = linalg.identity(m.n)
            for _ in range(m.n):
                power = linalg.mat_mul(power, shifted)
            spaces[r] = linalg.nullspace(power)
        per_gen.append(spaces)
    if not per_gen:
        return [{"tau": (), "dim": m.n,
                 "space": [list(r) for r in linalg.identity(m.n)]}]
    from itertools import product
    out = []
    taus = product(*[sorted(sp) for sp in per_gen])
    for tau in taus:
        rows = per_gen[0][tau[0]]
        for i in range(1, len(per_gen)):
            rows = linalg.span_intersection(rows, per_gen[i][tau[i]])
            if not rows:
                break
        if rows:
            out.append({"tau": tau, "dim": len(rows),
                        "space": [list(r) for r in rows]})
    assert sum(rec["dim"] for rec in out) == m.n
    return out


def weights(m):
    """The weight tuples (values on the generators, in order)."""
    return [rec["tau"] for rec in gen_weight_decomposition(m)]


def restrict_principal_series(module, lams):
    """The F[Y+]-module structure of a principal-series window: the
    z_matrix action of each Z^lambda on the length ball (stable because
    commuting past H_w only shortens w)."""
    gens = [(lam, series_z(module, lam)) for lam in lams]
    return FiniteMonoidModule(module.datum, gens)


def series_z(module, lam):
    from . import series
    return series.z_matrix(module, lam)
