"""Intertwining geometry of the principal series at a regular character.

For regular tau (trivial stabilizer in W^v), I_tau = (+)_w I_tau(w.tau)
with one-dimensional weight spaces, and everything about submodules is
encoded by the labelled Cayley graph on the ball:

* vertices w (for the characters w.tau), edges {w, sw};
* an edge carries the one-edge intertwiners A_{w,sw,tau} both ways; it
  is an *isomorphism edge* iff (w.tau)(zeta_s) (w.tau)(zeta_s^s) != 0;
* the semi-distance d(I_{w.tau}, I_{w'.tau}) counts non-isomorphism
  edges along any reduced path (the count is path-independent);
* the strongly indecomposable submodule M_{w,tau} = Im A_{w,1,tau} has
  weight set  /\_i {u w_i.tau : u s_i > u}  over the non-iso steps of
  any reduced path from w to 1; every submodule is a sum of M_{w,tau}'s
  and is determined by its weight set.

Weight sets are represented as frozensets of ball elements v (standing
for the characters v.tau); all outputs are ball-relative for infinite
Weyl groups.
"""

from dataclasses import dataclass, field

from . import series


class RegularityViolation(Exception):
    """The character is not regular on the requested ball."""


@dataclass
class Edge:
    w: object          # shorter endpoint
    s: int             # letter: other endpoint is s*w
    sw: object
    iso: bool
    annotation: str = None


@dataclass
class TauGraph:
    datum: object
    tau: object
    L: int
    vertices: list
    edges: list = field(default_factory=list)

    def edge_map(self):
        return {frozenset((e.w, e.sw)): e for e in self.edges}

    def iso_components(self):
        """Partition of the vertices by isomorphism edges (union-find)."""
        parent = {w: w for w in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            if e.iso:
                parent[find(e.w)] = find(e.sw)
        comps = {}
        for w in self.vertices:
            comps.setdefault(find(w), set()).add(w)
        return sorted(comps.values(),
                      key=lambda c: min((v.length(), v.matrix) for v in c))


def check_regular(datum, tau, L):
    """Raise RegularityViolation unless w.tau are pairwise distinct in-ball."""
    seen = {}
    for w in datum.ball(L):
        wt = tau.act(w)
        if wt in seen:
            raise RegularityViolation(
                f"{seen[wt]!r}.tau = {w!r}.tau on ball({L})")
        seen[wt] = w


def build_graph(datum, tau, L, seed=0):
    """The intertwining graph on ball(L); verifies in-ball regularity."""
    check_regular(datum, tau, L)
    verts = datum.ball(L)
    vset = set(verts)
    g = TauGraph(datum, tau, L, verts)
    for w in verts:
        for s in range(datum.n):
            sw = datum.simple(s) * w
            if sw.length() == w.length() + 1 and sw in vset:
                iso, ann = series.edge_is_iso(datum, tau, w, s)
                g.edges.append(Edge(w, s, sw, iso, ann))
    return g


def path_steps(datum, w, wp=None):
    """Edges of the reduced path from w down to wp (default 1): pairs
    (base, letter) with base the shorter endpoint.

    For wp = 1 these are the steps of A_{w, 1, tau} along the canonical
    reduced word; generally the path peels the leading letters of
    w * wp^-1 on its way from w to wp.
    """
    u = w if wp is None else w * wp.inv()
    tail = w
    steps = []
    for s in u.reduced_word():
        nxt = datum.simple(s) * tail
        base = nxt if nxt.length() < tail.length() else tail
        steps.append((base, s))
        tail = nxt
    return steps


def semi_distance(datum, tau, w, wp, seed=0):
    """Number of non-isomorphism edges on a reduced path I_{w.tau} ->
    I_{w'.tau}; path-independent, symmetric, triangle inequality."""
    count = 0
    for base, s in path_steps(datum, w, wp):
        iso, _ = series.edge_is_iso(datum, tau, base, s)
        if not iso:
            count += 1
    return count


def step_image_weights(datum, w_long, s, ball):
    """Wt(Im A_{w_long, s*w_long, tau}) as ball elements: the edge
    morphism f = A_{w, sw, tau} (l(sw) < l(w)) has
    Wt(Im f) = {u w.tau : u s > u}."""
    winv = w_long.inv()
    rs = datum.simple(s)
    out = set()
    for v in ball:
        u = v * winv
        if (u * rs).length() > u.length():
            out.add(v)
    return frozenset(out)


def submodule_weights(datum, tau, w, L, seed=0):
    """Wt(M_{w,tau}) inside the ball: intersect Im-weights over the
    non-isomorphism steps of a reduced path from w to 1."""
    ball = datum.ball(L)
    weights = frozenset(ball)
    tail = w
    for s in w.reduced_word():
        nxt = datum.simple(s) * tail           # shorter
        iso, _ = series.edge_is_iso(datum, tau, nxt, s, None)
        if not iso:
            weights &= step_image_weights(datum, tail, s, ball)
        tail = nxt
    return weights


def submodule_lattice(datum, tau, L, seed=0):
    """All weight sets of sums of M_{w,tau}; ball-relative.

    Returns (atoms, all_sets): atoms maps each ball element w to
    Wt(M_{w,tau}); all_sets is the closure of the atom sets under
    union (every submodule is a sum of strongly indecomposables, so
    these are all the candidate weight sets, 0 and I_tau included).
    """
    atoms = {w: submodule_weights(datum, tau, w, L, seed) for w in datum.ball(L)}
    sets = {frozenset()} | set(atoms.values())
    while True:
        new = set()
        for a in sets:
            for b in sets:
                u = a | b
                if u not in sets and u not in new:
                    new.add(u)
        if not new:
            break
        sets |= new
    return atoms, sorted(sets, key=lambda s: (len(s), sorted(
        (v.length(), v.matrix) for v in s)))


def proper_submodules(datum, tau, L, seed=0):
    """Weight sets of the nonzero proper submodules (ball-relative).

    A submodule is proper iff v_tau is not among its weights, i.e. the
    identity vertex is missing from the weight set.
    """
    e = datum.identity_elt()
    _, sets = submodule_lattice(datum, tau, L, seed)
    return [s for s in sets if s and e not in s]


def max_proper_weights(datum, tau, L, seed=0):
    """Wt(M^max): the unique maximal proper submodule is the sum of all
    M_{w,tau} not containing the weight tau."""
    e = datum.identity_elt()
    atoms, _ = submodule_lattice(datum, tau, L, seed)
    out = frozenset()
    for w, ws in atoms.items():
        if e not in ws:
            out |= ws
    return out


class NotASubmoduleWeightSet(ValueError):
    pass


def decompose_submodule(datum, tau, weight_set, L, seed=0):
    """Maximal strongly indecomposable summands of the submodule with
    the given weight set.

    Validates that the set really is a submodule weight set (it must be
    the union of the Wt(M_{v,tau}) it contains); returns canonical
    representatives of the maximal atoms.
    """
    weight_set = frozenset(weight_set)
    atoms = {}
    for v in weight_set:
        ws = submodule_weights(datum, tau, v, L, seed)
        if not ws <= weight_set:
            raise NotASubmoduleWeightSet(
                f"Wt(M_{v!r}) = {sorted(map(repr, ws))} escapes the given set")
        atoms[v] = ws
    union = frozenset().union(*atoms.values()) if atoms else frozenset()
    if union != weight_set:
        raise NotASubmoduleWeightSet("weights not covered by their atoms")
    distinct = {}
    for v, ws in atoms.items():
        key = ws
        if key not in distinct or (v.length(), v.matrix) < (
                distinct[key].length(), distinct[key].matrix):
            distinct[key] = v
    maximal = [ws for ws in distinct
               if not any(ws < other for other in distinct if other != ws)]
    return sorted(((distinct[ws], ws) for ws in maximal),
                  key=lambda t: (t[0].length(), t[0].matrix))


def irr_quotient_report(graph, w):
    """The irreducible quotient I_{w.tau} -> M^irr_{w.tau}: its weights
    are the isomorphism class [w].tau; dimension = |[w]| (ball-relative
    unless the group is finite and fully enumerated)."""
    comp = next(c for c in graph.iso_components() if w in c)
    exact = len(graph.datum.ball(graph.L + 1)) == len(graph.vertices)
    return {"weights": frozenset(comp), "dim": len(comp), "exact": exact}


def dot_export(graph):
    """Graphviz DOT text: solid iso edges, dashed non-iso edges labelled
    by the vanishing zeta factor."""
    lines = ["graph tau_intertwining {"]
    for w in graph.vertices:
        lines.append(f'  "{w!r}";')
    for e in graph.edges:
        if e.iso:
            lines.append(f'  "{e.w!r}" -- "{e.sw!r}";')
        else:
            lines.append(f'  "{e.w!r}" -- "{e.sw!r}" [style=dashed, '
                         f'label="{e.annotation}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
