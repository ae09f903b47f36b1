"""Small exact linear algebra over the rationals.

Everything here works on lists of lists of ``fractions.Fraction`` (rows).
Matrices are tiny (module ranks and truncation-ball dimensions), so plain
Gaussian elimination with exact pivots is entirely adequate; no attempt is
made at fraction-free cleverness.
"""

from fractions import Fraction


def frac_matrix(rows):
    """Deep-copy ``rows`` coercing every entry to Fraction."""
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                oi = out[i]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out

def mat_vec(a, v):
    return [sum((c * x for c, x in zip(row, v)), Fraction(0)) for row in a]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def rref(mat):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat):
    if not mat:
        return 0
    return len(rref(mat)[1])


def nullspace(mat):
    """Basis (list of vectors) of the right kernel of ``mat``."""
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One solution of mat*x = rhs, or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [mat[i][:] + [Fraction(rhs[i])] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def inverse(mat):
    n = len(mat)
    aug = [mat[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in red]


def det(mat):
    n = len(mat)
    m = [row[:] for row in mat]
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def char_poly(mat):
    """Characteristic polynomial det(T*I - mat) by Faddeev-LeVerrier.

    Returns coefficients [c_0, ..., c_n] with c_n = 1, lowest degree first.
    """
    n = len(mat)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = identity(n)
    for k in range(1, n + 1):
        m = mat_mul(mat, m)
        tr = sum(m[i][i] for i in range(n))
        c = -tr / k
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return coeffs


def poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def rational_roots(coeffs):
    """Rational roots (with multiplicity) of a Fraction-coefficient poly.

    Returns (roots, fully_split) where fully_split says whether the product
    of the found linear factors exhausts the polynomial.
    """
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    # strip powers of T dividing the polynomial: root 0
    roots = []
    while cs[0] == 0:
        roots.append(Fraction(0))
        cs = cs[1:]
    # integer-scale, then rational root theorem on leading/trailing
    from math import lcm

    den = lcm(*[c.denominator for c in cs]) if len(cs) > 1 else cs[0].denominator
    ics = [int(c * den) for c in cs]

    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return out

    def synth_div(poly, r):
        # divide by (x - r); poly lowest-first. Returns (quotient, remainder)
        q = [Fraction(0)] * (len(poly) - 1)
        acc = Fraction(0)
        for i in range(len(poly) - 1, 0, -1):
            acc = acc * r + poly[i]
            q[i - 1] = acc
        rem = acc * r + poly[0]
        return q, rem

    work = [Fraction(c) for c in ics]
    while len(work) > 1:
        found = None
        if work[0] == 0:
            found = Fraction(0)
        else:
            ps = divisors(int(work[0]))
            qs = divisors(int(work[-1]))
            for p in sorted(ps):
                for q in sorted(qs):
                    for sgn in (1, -1):
                        cand = Fraction(sgn * p, q)
                        if poly_eval(work, cand) == 0:
                            found = cand
                            break
                    if found is not None:
                        break
                if found is not None:
                    break
        if found is None:
            return roots, False
        quot, rem = synth_div(work, found)
        assert rem == 0
        roots.append(found)
        work = quot
    return roots, True


def row_space_contains(basis_rows, vec):
    """Is ``vec`` in the row span of ``basis_rows``?"""
    if not basis_rows:
        return all(x == 0 for x in vec)
    return rank(basis_rows) == rank(basis_rows + [vec])


def span_intersection(rows_a, rows_b):
    """Basis of the intersection of two row spans (Zassenhaus-style)."""
    if not rows_a or not rows_b:
        return []
    n = len(rows_a[0])
    # vectors in both spans: x = u*A = v*B; solve [A^T | -B^T] kernel
    a_t = [[rows_a[i][j] for i in range(len(rows_a))] for j in range(n)]
    b_t = [[rows_b[i][j] for i in range(len(rows_b))] for j in range(n)]
    stacked = [a_t[j] + [-x for x in b_t[j]] for j in range(n)]
    out = []
    for k in nullspace(stacked):
        u = k[: len(rows_a)]
        vec = [sum((u[i] * rows_a[i][j] for i in range(len(rows_a))), Fraction(0))
               for j in range(n)]
        if any(vec):
            out.append(vec)
    red, piv = rref(out) if out else ([], [])
    return [red[i] for i in range(len(piv))]
