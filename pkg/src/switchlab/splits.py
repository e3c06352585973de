"""Split graphs: clique/independent bipartitions, inversion, composition,
and the decomposition into irreducible factors.

A split graph is one whose vertices divide into a clique K and an
independent set I; equivalently there is no induced 2K2, C4 or C5.  The
composition S o G of a split graph (with a chosen bipartition) and an
arbitrary graph joins every K-vertex to all of G and every I-vertex to
none of it.  Every graph factors uniquely into a chain of irreducible
factors under this product, and the factorization is computable by peeling
off minimal "outermost" vertex sets whose members see all or nothing of
the rest.
"""

from __future__ import annotations

import itertools

from .errors import DomainError, LimitExceeded
from .graphs import (
    Graph,
    canonical_form,
    CANON_MAX_N,
    complement,
    induced_subgraph,
)
from .switching import active_vertices, census

_SUBSET_SCAN_MAX_N = 16


def is_split(g):
    """True iff g has no induced 2K2, C4 or C5."""
    q = census(g)
    if q.two_k2 or q.c4:
        return False
    # 2-regular induced subgraph on 5 vertices must be a 5-cycle
    for quint in itertools.combinations(range(g.n), 5):
        h = induced_subgraph(g, quint)
        if h.degrees() == (2, 2, 2, 2, 2):
            return False
    return True


class SplitBipartition:
    """A split graph together with one clique/independent bipartition."""

    __slots__ = ("graph", "clique", "independent")

    def __init__(self, graph, clique, independent):
        self.graph = graph
        self.clique = tuple(sorted(clique))
        self.independent = tuple(sorted(independent))
        if sorted(self.clique + self.independent) != list(range(graph.n)):
            raise DomainError("K and I must partition the vertices")
        for u, v in itertools.combinations(self.clique, 2):
            if not graph.has_edge(u, v):
                raise DomainError(f"K is not a clique ({u} !~ {v})")
        for u, v in itertools.combinations(self.independent, 2):
            if graph.has_edge(u, v):
                raise DomainError(f"I is not independent ({u} ~ {v})")

    def __eq__(self, other):
        return (isinstance(other, SplitBipartition)
                and self.graph == other.graph
                and self.clique == other.clique)

    def __hash__(self):
        return hash((self.graph, self.clique))

    def __repr__(self):
        return f"SplitBipartition(K={self.clique}, I={self.independent})"

    def to_json(self):
        return {
            "schema": "switchlab/1",
            "type": "split",
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "K": list(self.clique),
            "I": list(self.independent),
        }


def bipartitions(g):
    """All (K, I) bipartitions of a split graph, largest K first, then lex.

    The first entry is the canonical bipartition used whenever one must be
    chosen on the caller's behalf.
    """
    if not is_split(g):
        raise DomainError("graph is not split")
    if g.n > _SUBSET_SCAN_MAX_N:
        raise LimitExceeded("bipartition scan supports n <= 16")
    out = []
    full = (1 << g.n) - 1
    for kmask in range(1 << g.n):
        ok = True
        m = kmask
        while m:
            v = (m & -m).bit_length() - 1
            if g.rows[v] & kmask != kmask & ~(1 << v):
                ok = False
                break
            m &= m - 1
        if not ok:
            continue
        imask = full & ~kmask
        m = imask
        while m:
            v = (m & -m).bit_length() - 1
            if g.rows[v] & imask:
                ok = False
                break
            m &= m - 1
        if not ok:
            continue
        k = [v for v in range(g.n) if (kmask >> v) & 1]
        i = [v for v in range(g.n) if (imask >> v) & 1]
        out.append(SplitBipartition(g, k, i))
    out.sort(key=lambda sb: (-len(sb.clique), sb.clique))
    return out


def split_bipartition(g):
    """The canonical bipartition (maximum |K|, ties lexicographic)."""
    return bipartitions(g)[0]


def is_balanced(g):
    """A split graph is balanced iff its bipartition is unique."""
    return len(bipartitions(g)) == 1


def interchangeable_vertices(sb):
    """Vertices that can change sides: K-vertices with no I-neighbor and
    I-vertices adjacent to all of K."""
    g = sb.graph
    kmask = 0
    for v in sb.clique:
        kmask |= 1 << v
    out = []
    for w in sb.clique:
        if all(not g.has_edge(w, u) for u in sb.independent):
            out.append(w)
    for w in sb.independent:
        if g.rows[w] & kmask == kmask:
            out.append(w)
    return sorted(out)


def invert(sb):
    """Swap the sides: K becomes independent, I becomes a clique, cross
    edges are kept.  Involutive."""
    g = sb.graph
    edges = []
    for u in sb.clique:
        for v in sb.independent:
            if g.has_edge(u, v):
                edges.append((u, v))
    edges.extend(itertools.combinations(sb.independent, 2))
    return SplitBipartition(Graph.from_edges(g.n, edges),
                            sb.independent, sb.clique)


def complement_split(sb):
    """The complement graph with its sides swapped: old I is the new clique.

    Complementing turns the clique into an independent set and vice versa,
    so the pair (complement, I, K) is again a split bipartition.
    """
    return SplitBipartition(complement(sb.graph), sb.independent, sb.clique)


def compose(sb, g):
    """Tyshkevich composition: S's K joined to all of g, S's I to none.

    g's vertices are shifted up by |S|, which keeps the label sets disjoint
    by construction.  compose(S, K0) = S.graph.
    """
    s = sb.graph
    n = s.n + g.n
    edges = list(s.edges())
    edges.extend((u + s.n, v + s.n) for u, v in g.edges())
    edges.extend((k, w + s.n) for k in sb.clique for w in range(g.n))
    return Graph.from_edges(n, edges)


def a4_graph(g):
    """Same vertices; uv adjacent iff some active quad (induced P4, C4 or
    2K2) contains both."""
    rows = [0] * g.n
    for quad in itertools.combinations(range(g.n), 4):
        h = induced_subgraph(g, quad)
        m = h.edge_count()
        shape = sorted(h.degrees())
        if ((m == 2 and shape == [1, 1, 1, 1])
                or (m == 4 and shape == [2, 2, 2, 2])
                or (m == 3 and shape == [1, 1, 2, 2])):
            for u, v in itertools.combinations(quad, 2):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(g.n, rows)


class Decomposition:
    """Ordered factors, outermost first: G = factors[0] o ... o factors[-1].

    Every factor except possibly the last is a SplitBipartition; the last
    is a plain Graph.  vertex_sets holds each factor's vertices in the
    original labelling.
    """

    def __init__(self, graph, factors, vertex_sets):
        self.graph = graph
        self.factors = factors
        self.vertex_sets = [tuple(vs) for vs in vertex_sets]

    def __len__(self):
        return len(self.factors)

    def factor_graphs(self):
        return [f.graph if isinstance(f, SplitBipartition) else f
                for f in self.factors]

    def recompose(self):
        out = self.factors[-1]
        if isinstance(out, SplitBipartition):
            out = out.graph
        for f in reversed(self.factors[:-1]):
            out = compose(f, out)
        return out

    def __repr__(self):
        parts = []
        for f in self.factors:
            if isinstance(f, SplitBipartition):
                parts.append(f"split(n={f.graph.n},|K|={len(f.clique)})")
            else:
                parts.append(f"graph(n={f.n})")
        return "Decomposition(" + " o ".join(parts) + ")"


def _outermost_peel(g):
    """Smallest proper vertex set A (by size, then lex) that splits off as an
    outermost factor: each a in A sees all of V-A (K side) or none of it
    (I side), with K a clique and I independent."""
    n = g.n
    if n > _SUBSET_SCAN_MAX_N:
        raise LimitExceeded("decomposition scan supports n <= 16")
    full = (1 << n) - 1
    for size in range(1, n):
        for a in itertools.combinations(range(n), size):
            amask = 0
            for v in a:
                amask |= 1 << v
            rest = full & ~amask
            k, i = [], []
            ok = True
            for v in a:
                out_nbrs = g.rows[v] & rest
                if out_nbrs == rest:
                    k.append(v)
                elif out_nbrs == 0:
                    i.append(v)
                else:
                    ok = False
                    break
            if not ok:
                continue
            if any(not g.has_edge(u, v) for u, v in itertools.combinations(k, 2)):
                continue
            if any(g.has_edge(u, v) for u, v in itertools.combinations(i, 2)):
                continue
            return a, k, i
    return None


def decompose(g):
    """Unique factorization into irreducible factors, outermost first.

    Peels minimal outermost sets; minimality makes each peeled factor
    irreducible.  The result is re-verified by recomposition (exact edge
    identity in the original labelling at every peel, plus a final
    isomorphism check on small graphs).
    """
    factors = []
    vertex_sets = []
    rest_labels = list(range(g.n))
    current = g
    while True:
        peel = _outermost_peel(current)
        if peel is None:
            break
        a, k, i = peel
        sub = induced_subgraph(current, a)
        pos = {v: j for j, v in enumerate(a)}
        factors.append(SplitBipartition(sub, [pos[v] for v in k],
                                        [pos[v] for v in i]))
        vertex_sets.append(tuple(rest_labels[v] for v in a))
        keep = [v for v in range(current.n) if v not in set(a)]
        rest_labels = [rest_labels[v] for v in keep]
        current = induced_subgraph(current, keep)
    factors.append(current)
    vertex_sets.append(tuple(rest_labels))
    dec = Decomposition(g, factors, vertex_sets)
    _verify_recomposition(g, dec)
    return dec


def _verify_recomposition(g, dec):
    if g.n <= CANON_MAX_N:
        if canonical_form(dec.recompose()) != canonical_form(g):
            raise DomainError("decomposition failed to recompose; please report")
    else:  # exact check in the original labelling
        edges = set()
        offset_sets = dec.vertex_sets
        for idx, f in enumerate(dec.factors):
            labels = offset_sets[idx]
            fg = f.graph if isinstance(f, SplitBipartition) else f
            for u, v in fg.edges():
                edges.add((min(labels[u], labels[v]), max(labels[u], labels[v])))
            if isinstance(f, SplitBipartition):
                inner = [w for vs in offset_sets[idx + 1:] for w in vs]
                for ku in f.clique:
                    for w in inner:
                        edges.add((min(labels[ku], w), max(labels[ku], w)))
        if edges != set(g.edges()):
            raise DomainError("decomposition failed to recompose; please report")


def is_irreducible(g):
    return _outermost_peel(g) is None


def is_prime(g):
    """Active (every vertex in an active quad) and irreducible.

    The empty graph is vacuously prime; K1 is not (its vertex is in no
    quad)."""
    return len(active_vertices(g)) == g.n and is_irreducible(g)
