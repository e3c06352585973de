"""The 2-switch move and how many of them a graph admits.

A 2-switch tau = (a b; c d) asks for edges ab and cd on four distinct
vertices with ac and bd absent; applying it swaps {ab, cd} for {ac, bd}.
Degrees are untouched, so repeated switches walk around the realizations
of a fixed degree sequence.

The number of *active* switches at G (those whose precondition holds) is
the local degree of G in that walk.  It only depends on the induced
4-vertex census: every induced 2K2 and C4 carries two active switches and
every induced P4 carries one, which also yields a closed formula from
plain subgraph counts.
"""

from __future__ import annotations

import itertools
from collections import namedtuple

from .errors import DomainError
from .graphs import (
    Graph,
    cycle_graph,
    induced_subgraph,
    is_forest,
    is_tree,
    is_unicyclic,
)


class TwoSwitch:
    """The move removing edges ab, cd and inserting ac, bd.

    The same move has four spellings -- (a b; c d), (b a; d c), (c d; a b),
    (d c; b a) -- and instances normalize to the lexicographically least,
    so TwoSwitch objects compare equal iff they act identically.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        if len({a, b, c, d}) != 4:
            raise DomainError("a 2-switch needs four distinct vertices")
        spellings = [(a, b, c, d), (b, a, d, c), (c, d, a, b), (d, c, b, a)]
        self.a, self.b, self.c, self.d = min(spellings)

    def inverse(self):
        """The switch that undoes this one (removes ac, bd; restores ab, cd)."""
        return TwoSwitch(self.a, self.c, self.b, self.d)

    @property
    def removed(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def added(self):
        return ((self.a, self.c), (self.b, self.d))

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return isinstance(other, TwoSwitch) and self.as_tuple() == other.as_tuple()

    def __lt__(self, other):
        return self.as_tuple() < other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return f"TwoSwitch({self.a}, {self.b}; {self.c}, {self.d})"


def switch_is_active(g, t):
    """True when the move's precondition holds in g."""
    a, b, c, d = t.as_tuple()
    if max(a, b, c, d) >= g.n:
        raise DomainError("switch mentions a vertex outside the graph")
    return (g.has_edge(a, b) and g.has_edge(c, d)
            and not g.has_edge(a, c) and not g.has_edge(b, d))


def apply(g, t):
    """Image of g under the switch; inactive switches act as the identity."""
    if not switch_is_active(g, t):
        return g
    a, b, c, d = t.as_tuple()
    rows = list(g.rows)
    rows[a] &= ~(1 << b); rows[b] &= ~(1 << a)
    rows[c] &= ~(1 << d); rows[d] &= ~(1 << c)
    rows[a] |= (1 << c); rows[c] |= (1 << a)
    rows[b] |= (1 << d); rows[d] |= (1 << b)
    return Graph(g.n, rows)


def active_switches(g):
    """All active switches of g, sorted. len() of this is the switch degree."""
    edges = list(g.edges())
    found = set()
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        if len({a, b, c, d}) != 4:
            continue
        if not g.has_edge(a, c) and not g.has_edge(b, d):
            found.add(TwoSwitch(a, b, c, d))
        if not g.has_edge(a, d) and not g.has_edge(b, c):
            found.add(TwoSwitch(a, b, d, c))
    return sorted(found)


def degree_brute(g):
    return len(active_switches(g))


# -- the induced four-vertex census ------------------------------------------

QuadCensus = namedtuple("QuadCensus", ["two_k2", "c4", "p4"])


def census(g):
    """Counts of induced 2K2, C4 and P4 (the three switch-bearing quads)."""
    q2, qc, qp = 0, 0, 0
    for quad in itertools.combinations(range(g.n), 4):
        h = induced_subgraph(g, quad)
        m = h.edge_count()
        if m == 2:
            if h.degrees().count(1) == 4:
                q2 += 1
        elif m == 3:
            if sorted(h.degrees()) == [1, 1, 2, 2]:
                qp += 1
        elif m == 4:
            if h.degrees() == (2, 2, 2, 2):
                qc += 1
    return QuadCensus(q2, qc, qp)


def degree_census(g):
    """Switch degree via the census: 2 per induced 2K2 or C4, 1 per induced P4."""
    q = census(g)
    return 2 * q.two_k2 + 2 * q.c4 + q.p4


# -- subgraph counts and the closed formula -----------------------------------


def count_triangles(g):
    total = 0
    for u, v in g.edges():
        total += (g.rows[u] & g.rows[v]).bit_count()
    return total // 3


def count_k4(g):
    total = 0
    for u, v in g.edges():
        common = g.rows[u] & g.rows[v]
        # edges inside the common neighborhood
        inner = 0
        c = common
        while c:
            w = (c & -c).bit_length() - 1
            inner += (g.rows[w] & common).bit_count()
            c &= c - 1
        total += inner // 2
    return total // 6


def count_c4_subgraphs(g):
    """4-cycles as subgraphs (not necessarily induced)."""
    total = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            cod = (g.rows[u] & g.rows[v]).bit_count()
            total += cod * (cod - 1) // 2
    return total // 2


def count_p4_subgraphs(g):
    """Paths on four vertices as subgraphs: sum (d_u-1)(d_v-1) over edges, minus 3 per triangle."""
    degs = g.degrees()
    s = sum((degs[u] - 1) * (degs[v] - 1) for u, v in g.edges())
    return s - 3 * count_triangles(g)


def count_disjoint_edge_pairs(g):
    """Pairs of edges with no shared endpoint: C(m,2) - sum_v C(d_v,2)."""
    m = g.edge_count()
    return m * (m - 1) // 2 - sum(d * (d - 1) // 2 for d in g.degrees())


def dpe_of_sequence(seq):
    """count_disjoint_edge_pairs from the degree sequence alone."""
    total = sum(seq)
    if total % 2:
        raise DomainError("degree sum must be even")
    m = total // 2
    return m * (m - 1) // 2 - sum(d * (d - 1) // 2 for d in seq)


def zagreb_second(g):
    degs = g.degrees()
    return sum(degs[u] * degs[v] for u, v in g.edges())


def degree_formula(g):
    """Switch degree in closed form: ||G||^2 + 2 c4 + 3 k3 - second Zagreb index.

    (c4, k3 are subgraph counts of 4-cycles and triangles.)
    """
    m = g.edge_count()
    return m * m + 2 * count_c4_subgraphs(g) + 3 * count_triangles(g) - zagreb_second(g)


def switch_degree(g):
    """The number of active switches, via the closed formula."""
    return degree_formula(g)


def degree_disconnected_formula(g):
    """Switch degree of a disconnected graph from its components:
    own degrees plus 2 * m_i * m_j for every component pair."""
    from .graphs import components
    comps = [induced_subgraph(g, c) for c in components(g)]
    total = sum(degree_formula(c) for c in comps)
    sizes = [c.edge_count() for c in comps]
    for mi, mj in itertools.combinations(sizes, 2):
        total += 2 * mi * mj
    return total


# -- active vertices -----------------------------------------------------------


def active_vertices(g):
    """Vertices taking part in at least one active switch."""
    verts = set()
    for t in active_switches(g):
        verts.update(t.as_tuple())
    return sorted(verts)


def active_part(g):
    """(induced subgraph on the active vertices, the vertex labels used)."""
    verts = active_vertices(g)
    return induced_subgraph(g, verts), tuple(verts)


def has_active_switch(g):
    """Some switch acts on g, i.e. the switch-degree is positive."""
    return degree_formula(g) > 0


def is_active(g):
    """Every vertex lies in some active quad (act(G) = V(G)).

    The empty graph is vacuously active; a graph may carry active switches
    and still fail this when some vertex stays outside every quad.
    """
    return len(active_vertices(g)) == g.n


# -- threshold graphs (the switch-free graphs) ---------------------------------


def threshold_bits(g):
    """Creation string of a threshold graph, or None if g is not threshold.

    Reading left to right, the first character is the first vertex; a later
    '0' arrives isolated, a later '1' arrives dominating everything before
    it.  Recognition peels isolated/dominating vertices from the other end,
    which succeeds exactly on threshold graphs.  (The very first character
    is conventional and always comes out '0' here.)
    """
    alive = list(range(g.n))
    peeled = []
    while alive:
        mask = 0
        for v in alive:
            mask |= 1 << v
        pick = None
        for v in alive:
            others = mask & ~(1 << v)
            if g.rows[v] & others == 0:
                pick = (v, "0")
                break
            if g.rows[v] & others == others:
                pick = (v, "1")
                break
        if pick is None:
            return None
        alive.remove(pick[0])
        peeled.append(pick[1])
    return "".join(reversed(peeled))


def threshold_from_bits(bits):
    """Build the threshold graph with the given creation string.

    The first character is the first vertex; each later '1' dominates all
    earlier vertices, each later '0' arrives isolated.
    """
    bits = "".join(str(b) for b in bits)
    if any(ch not in "01" for ch in bits):
        raise DomainError("creation string must be over {0,1}")
    n = len(bits)
    edges = []
    for v, ch in enumerate(bits):
        if ch == "1":
            edges.extend((u, v) for u in range(v))
    return Graph.from_edges(n, edges)


def is_threshold(g):
    return threshold_bits(g) is not None


# -- forest and unicyclic refinements -------------------------------------------


def f_switches(g):
    """Active switches whose image is again a forest (g must be a forest)."""
    if not is_forest(g):
        raise DomainError("f_switches expects a forest")
    return [t for t in active_switches(g) if is_forest(apply(g, t))]


def f_degree(g):
    """Number of forest-preserving switches of a tree: the disjoint edge pairs."""
    if not is_tree(g):
        raise DomainError("the closed f-degree formula is for trees")
    return count_disjoint_edge_pairs(g)


def u_switches(g):
    """Active switches whose image is again unicyclic (g must be unicyclic)."""
    if not is_unicyclic(g):
        raise DomainError("u_switches expects a unicyclic graph")
    return [t for t in active_switches(g) if is_unicyclic(apply(g, t))]


def _cycle_vertices(g):
    """Vertex list of the unique cycle of a unicyclic graph, in cycle order."""
    deg = list(g.degrees())
    rows = list(g.rows)
    alive = (1 << g.n) - 1
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if (alive >> v) & 1 and deg[v] == 1:
                alive &= ~(1 << v)
                row = rows[v] & alive
                while row:
                    u = (row & -row).bit_length() - 1
                    deg[u] -= 1
                    row &= row - 1
                deg[v] = 0
                changed = True
    cyc = [v for v in range(g.n) if (alive >> v) & 1]
    # order them around the cycle
    ordered = [cyc[0]]
    mask = alive & ~(1 << cyc[0])
    while mask:
        prev = ordered[-1]
        nxt = g.rows[prev] & mask
        v = (nxt & -nxt).bit_length() - 1
        ordered.append(v)
        mask &= ~(1 << v)
    return ordered


def u_degree(g):
    """Number of unicyclic-preserving switches, in closed form.

    Write C for the unique cycle (as a standalone cycle graph) and F for
    the pendant forest, i.e. g minus the cycle's edges.  Then

        u_degree = switch_degree(g) - switch_degree(C)
                   + disjoint_edge_pairs(C) - disjoint_edge_pairs(F)
                   + p4_subgraphs(F)
                   + sum over cycle edges rr' of degF(r) * degF(r')

    The first five terms discount, per component pair of F, the one
    pairing of a cross-component edge pair that splits the graph apart.
    That pairing does not exist as an active switch when both edges sit at
    their components' roots and the roots are adjacent on the cycle (the
    edge it would add is already there), so the last term restores exactly
    those; degF is the number of pendant-forest edges at a cycle vertex.
    """
    if not is_unicyclic(g):
        raise DomainError("u_degree expects a unicyclic graph")
    cyc = _cycle_vertices(g)
    c = cycle_graph(len(cyc))
    cyc_pairs = set()
    for i in range(len(cyc)):
        u, v = cyc[i], cyc[(i + 1) % len(cyc)]
        cyc_pairs.add((min(u, v), max(u, v)))
    f_edges = [e for e in g.edges() if e not in cyc_pairs]
    f = Graph.from_edges(g.n, f_edges)
    fdeg = f.degrees()
    blocked = 0
    for i in range(len(cyc)):
        r, r2 = cyc[i], cyc[(i + 1) % len(cyc)]
        blocked += fdeg[r] * fdeg[r2]
    return (degree_formula(g) - degree_formula(c)
            + count_disjoint_edge_pairs(c) - count_disjoint_edge_pairs(f)
            + count_p4_subgraphs(f) + blocked)
