"""Small simple graphs stored as bitset adjacency rows.

Everything in this package works on graphs that fit comfortably in a few
machine words, so a graph is just ``(n, rows)`` where ``rows[v]`` is an int
whose bit ``u`` says "v is adjacent to u".  Graphs are immutable by
convention and hashable, which lets them be dict keys during isomorphism
dedup and breadth-first space searches.

Vertices are always 0..n-1.  Unordered pairs are indexed in the usual
row-major order (0,1),(0,2),...,(0,n-1),(1,2),... so that a labelled graph
is also representable as a single ``edge_mask`` integer over C(n,2) bits.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict

from .errors import DomainError, LimitExceeded

# canonical_form is exhaustive search (pruned); keep it to sizes where that
# is defensible.
CANON_MAX_N = 10

# CanonicalForm is the pair (n, edge mask under the minimizing relabelling).
CanonicalForm = tuple

_AUT_WORK_CAP = 5_000_000


def pair_index(n, u, v):
    """Index of the unordered pair {u, v} in row-major order over C(n,2)."""
    if u > v:
        u, v = v, u
    if u == v or v >= n or u < 0:
        raise DomainError(f"bad vertex pair ({u}, {v}) for order {n}")
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def pair_from_index(n, k):
    """Inverse of pair_index."""
    for u in range(n):
        row = n - 1 - u
        if k < row:
            return (u, u + 1 + k)
        k -= row
    raise DomainError(f"pair index {k} out of range for order {n}")


class Graph:
    """An immutable simple graph on vertices 0..n-1."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n, rows):
        self.n = n
        self.rows = tuple(rows)
        if len(self.rows) != n:
            raise DomainError("rows length must equal n")
        self._hash = hash((n, self.rows))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for order {n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def from_edge_mask(cls, n, mask):
        rows = [0] * n
        k = 0
        for u in range(n):
            for v in range(u + 1, n):
                if (mask >> k) & 1:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
                k += 1
        return cls(n, rows)

    # -- basic queries ----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({self.n}, edges={sorted(self.edges())})"

    def has_edge(self, u, v):
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v):
        row = self.rows[v]
        return [u for u in range(self.n) if (row >> u) & 1]

    def degree(self, v):
        return self.rows[v].bit_count()

    def degrees(self):
        """Degree of every vertex, in label order."""
        return tuple(r.bit_count() for r in self.rows)

    def degree_sequence(self):
        """Degrees sorted non-increasing (the unlabelled invariant)."""
        return tuple(sorted((r.bit_count() for r in self.rows), reverse=True))

    def edges(self):
        for u in range(self.n):
            row = self.rows[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    yield (u, v)
                row >>= 1
                v += 1

    def edge_count(self):
        return sum(r.bit_count() for r in self.rows) // 2

    def edge_mask(self):
        mask = 0
        k = 0
        for u in range(self.n):
            row = self.rows[u]
            for v in range(u + 1, self.n):
                if (row >> v) & 1:
                    mask |= 1 << k
                k += 1
        return mask


# -- named families -------------------------------------------------------


def empty_graph(n):
    return Graph(n, [0] * n)


def complete_graph(n):
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise DomainError("cycles need at least 3 vertices")
    edges = [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)]
    return Graph.from_edges(n, edges)


def star_graph(n):
    """Star on n vertices: centre 0 joined to the n-1 leaves."""
    if n < 1:
        raise DomainError("star needs at least 1 vertex")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def graph_union(g, h):
    """Disjoint union; h's vertices are shifted up by g.n."""
    rows = list(g.rows) + [r << g.n for r in h.rows]
    return Graph(g.n + h.n, rows)


def complement(g):
    full = (1 << g.n) - 1
    return Graph(g.n, [(~r & full) & ~(1 << v) for v, r in enumerate(g.rows)])


def induced_subgraph(g, verts):
    """Subgraph induced on ``verts`` (kept in the given order, relabelled 0..k-1)."""
    verts = list(verts)
    pos = {v: i for i, v in enumerate(verts)}
    if len(pos) != len(verts):
        raise DomainError("duplicate vertices in induced_subgraph")
    rows = [0] * len(verts)
    for i, v in enumerate(verts):
        row = g.rows[v]
        for u, j in pos.items():
            if (row >> u) & 1:
                rows[i] |= 1 << j
    return Graph(len(verts), rows)


def relabel(g, perm):
    """Image of g under the bijection v -> perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise DomainError("perm must be a permutation of the vertices")
    rows = [0] * g.n
    for u, v in g.edges():
        rows[perm[u]] |= 1 << perm[v]
        rows[perm[v]] |= 1 << perm[u]
    return Graph(g.n, rows)


def random_graph(n, p, rng):
    """Erdos-Renyi G(n, p) using the caller's random.Random instance."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


# -- connectivity and metrics ----------------------------------------------


def _component_masks(g):
    unseen = (1 << g.n) - 1
    comps = []
    while unseen:
        v = (unseen & -unseen).bit_length() - 1
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                nxt |= g.rows[u]
                f &= f - 1
            frontier = nxt & unseen & ~comp
            comp |= frontier
        comps.append(comp)
        unseen &= ~comp
    return comps


def components(g):
    """Vertex sets of the connected components, each sorted, ordered by minimum."""
    out = []
    for mask in _component_masks(g):
        out.append([v for v in range(g.n) if (mask >> v) & 1])
    return out


def is_connected(g):
    if g.n == 0:
        return True
    return len(_component_masks(g)) == 1


def _bfs_levels(g, src):
    dist = [math.inf] * g.n
    dist[src] = 0
    frontier = 1 << src
    seen = frontier
    d = 0
    while frontier:
        nxt = 0
        f = frontier
        while f:
            u = (f & -f).bit_length() - 1
            nxt |= g.rows[u]
            f &= f - 1
        frontier = nxt & ~seen
        seen |= frontier
        d += 1
        f = frontier
        while f:
            u = (f & -f).bit_length() - 1
            dist[u] = d
            f &= f - 1
    return dist


def distance(g, u, v):
    return _bfs_levels(g, u)[v]


def eccentricity(g, v):
    dist = _bfs_levels(g, v)
    return max(dist) if dist else 0


def diameter(g):
    """Largest pairwise distance; inf when disconnected, 0 for orders 0 and 1."""
    if g.n <= 1:
        return 0
    return max(eccentricity(g, v) for v in range(g.n))


def girth(g):
    """Length of a shortest cycle, or inf for forests."""
    best = math.inf
    for u, v in list(g.edges()):
        rows = list(g.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        d = _bfs_levels(Graph(g.n, rows), u)[v]
        if d + 1 < best:
            best = d + 1
    return best


def is_forest(g):
    return g.edge_count() == g.n - len(_component_masks(g))


def is_tree(g):
    return is_connected(g) and g.edge_count() == g.n - 1


def is_unicyclic(g):
    """Connected with exactly one cycle, i.e. connected and m = n."""
    return is_connected(g) and g.edge_count() == g.n


def clique_number(g):
    """Order of a largest clique, by branch and bound on candidate masks."""
    rows = g.rows
    best = 0

    def grow(cand, size):
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        v = (cand & -cand).bit_length() - 1
        grow(cand & rows[v], size + 1)   # v joins the clique
        grow(cand & ~(1 << v), size)     # v stays out

    grow((1 << g.n) - 1, 0)
    return best


def independence_number(g):
    """Order of a largest independent set (clique number of the complement)."""
    return clique_number(complement(g))


# -- canonical forms --------------------------------------------------------


def _refine_colors(n, rows, colors):
    """1-dimensional color refinement until the class count stabilises."""
    ncls = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            row = rows[v]
            nbr = []
            while row:
                u = (row & -row).bit_length() - 1
                nbr.append(colors[u])
                row &= row - 1
            nbr.sort()
            sigs.append((colors[v], tuple(nbr)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [order[s] for s in sigs]
        k = len(order)
        if k == ncls:
            return colors
        ncls = k


def _initial_classes(g):
    degs = g.degrees()
    order = {d: i for i, d in enumerate(sorted(set(degs)))}
    colors = _refine_colors(g.n, g.rows, [order[d] for d in degs])
    by = defaultdict(list)
    for v, c in enumerate(colors):
        by[c].append(v)
    return [by[c] for c in sorted(by)]


def _are_twins(rows, u, w):
    return (rows[u] ^ rows[w]) & ~((1 << u) | (1 << w)) == 0


def _canonical_order(g):
    """A vertex ordering whose incremental adjacency string is lexicographically
    least among all orderings that respect the refinement classes.

    The string lists, for each newly placed vertex, its adjacency bits to the
    previously placed ones; comparing prefixes lets us prune, and candidates
    that are twins are interchangeable so only one per twin-group is tried.
    """
    n = g.n
    if n > CANON_MAX_N:
        raise DomainError(f"canonical_form supports n <= {CANON_MAX_N}, got {n}")
    if n == 0:
        return ()
    classes = _initial_classes(g)
    schedule = []
    for ci, cls in enumerate(classes):
        schedule.extend([ci] * len(cls))
    rows = g.rows
    remaining = [set(cls) for cls in classes]
    placed = []
    current = [0] * (n * (n - 1) // 2)
    best = None
    best_order = None

    def search(depth, offset, tight):
        # `tight` records whether the current prefix equals best's prefix at
        # entry.  After the first explored candidate returns, the prefix is
        # guaranteed equal to the (possibly just replaced) best's prefix: a
        # strictly smaller prefix forces a best update at the leftmost leaf
        # below, and that leaf extends the current prefix.
        nonlocal best, best_order
        if depth == n:
            if not tight:
                best = current[:]
                best_order = tuple(placed)
            return
        pool = remaining[schedule[depth]]
        cands = []
        for v in pool:
            chunk = list((rows[v] >> p) & 1 for p in placed)
            cands.append((chunk, v))
        cands.sort()
        tried = []
        explored = 0
        for chunk, v in cands:
            if any(c == chunk and _are_twins(rows, v, w) for c, w in tried):
                continue
            tried.append((chunk, v))
            prefix_eq = tight or explored > 0
            if best is not None and prefix_eq:
                ref = best[offset:offset + depth]
                if chunk > ref:
                    break  # candidates are sorted, the rest are no better
                sub_tight = chunk == ref
            else:
                sub_tight = False
            current[offset:offset + depth] = chunk
            pool.discard(v)
            placed.append(v)
            search(depth + 1, offset + depth, sub_tight)
            placed.pop()
            pool.add(v)
            explored += 1

    search(0, 0, True)
    if best_order is None:
        # Only possible when the very first leaf already ties a best that was
        # never recorded; with best=None initially the first leaf always lands
        # in the `not tight` branch, so this is unreachable.
        raise AssertionError("canonical search found no ordering")
    return best_order


def canonical_form(g):
    """Label-invariant encoding (n, edge mask): equal forms iff isomorphic."""
    order = _canonical_order(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    mask = 0
    for u, v in g.edges():
        mask |= 1 << pair_index(g.n, pos[u], pos[v])
    return (g.n, mask)


def from_canonical(form):
    n, mask = form
    return Graph.from_edge_mask(n, mask)


def is_isomorphic(g, h):
    if g.n != h.n or g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_form(g) == canonical_form(h)


def automorphism_count(g):
    """Order of the automorphism group, by scanning class-respecting orderings."""
    n = g.n
    if n > CANON_MAX_N:
        raise DomainError(f"automorphism_count supports n <= {CANON_MAX_N}")
    if n == 0:
        return 1
    classes = _initial_classes(g)
    work = 1
    for cls in classes:
        work *= math.factorial(len(cls))
    if work > _AUT_WORK_CAP:
        raise LimitExceeded(f"automorphism scan would try {work} orderings")
    edges = list(g.edges())
    pos = [0] * n
    best = None
    count = 0
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        i = 0
        for part in parts:
            for v in part:
                pos[v] = i
                i += 1
        mask = 0
        for u, v in edges:
            a, b = pos[u], pos[v]
            if a > b:
                a, b = b, a
            mask |= 1 << (a * n - a * (a + 1) // 2 + (b - a - 1))
        if best is None or mask < best:
            best, count = mask, 1
        elif mask == best:
            count += 1
    return count


# -- exhaustive unlabelled enumeration ---------------------------------------

_enum_cache = {}


def enumerate_unlabeled(n):
    """All unlabelled simple graphs of order n, one canonical representative each.

    Built by canonical augmentation: every order-n graph is some order-(n-1)
    graph plus one vertex, so augmenting the (n-1)-representatives by every
    possible neighborhood and deduplicating on canonical form is exhaustive.
    Results are cached per process; n=8 takes a while (~10^5 canonical forms).
    """
    if n < 0:
        raise DomainError("order must be >= 0")
    if n > 9:
        raise LimitExceeded("unlabelled enumeration supported for n <= 9")
    if n in _enum_cache:
        return _enum_cache[n]
    if n == 0:
        reps = (Graph(0, []),)
    else:
        seen = {}
        for parent in enumerate_unlabeled(n - 1):
            prows = parent.rows
            for nb in range(1 << (n - 1)):
                rows = [r | (((nb >> v) & 1) << (n - 1)) for v, r in enumerate(prows)]
                rows.append(nb)
                form = canonical_form(Graph(n, rows))
                if form not in seen:
                    seen[form] = True
        reps = tuple(from_canonical(f) for f in sorted(seen))
    _enum_cache[n] = reps
    return reps


# -- degree sequences --------------------------------------------------------


def normalize_sequence(seq):
    seq = tuple(int(d) for d in seq)
    if any(d < 0 for d in seq):
        raise DomainError("degrees must be non-negative")
    return tuple(sorted(seq, reverse=True))


def realize_degree_sequence(seq):
    """One labelled realization of the degree sequence (Havel-Hakimi), or None.

    Vertex v gets degree seq[v] exactly as given (no sorting of labels).
    """
    n = len(seq)
    if any(d > n - 1 for d in seq) or sum(seq) % 2:
        return None
    pool = [[d, v] for v, d in enumerate(seq)]
    edges = []
    for _ in range(n):
        pool.sort(key=lambda t: t[0], reverse=True)
        d, v = pool[0]
        if d == 0:
            break
        if d > len(pool) - 1:
            return None
        pool[0][0] = 0
        for t in pool[1:d + 1]:
            t[0] -= 1
            if t[0] < 0:
                return None
            edges.append((v, t[1]))
    return Graph.from_edges(n, edges)


def is_graphical(seq):
    return realize_degree_sequence(seq) is not None


# -- serialization -----------------------------------------------------------

SCHEMA = "switchlab/1"


def graph_to_json(g, **extra):
    doc = {"schema": SCHEMA, "type": "graph", "n": g.n,
           "edges": [list(e) for e in g.edges()]}
    doc.update(extra)
    return doc


def graph_from_json(doc):
    if not isinstance(doc, dict) or doc.get("type", "graph") != "graph":
        raise DomainError("not a graph document")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise DomainError(f"unsupported schema {doc.get('schema')!r}")
    try:
        n = int(doc["n"])
        edges = [(int(u), int(v)) for u, v in doc.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed graph document: {exc}") from exc
    return Graph.from_edges(n, edges)


def graph_to_dot(g, name="G", labels=None):
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        label = labels[v] if labels else v
        lines.append(f'  {v} [label="{label}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)


# -- multigraphs and digraphs (used by the factor-graph machinery) ------------


class Multigraph:
    """Undirected multigraph: vertex count plus {frozen pair -> multiplicity}."""

    __slots__ = ("n", "mult")

    def __init__(self, n, mult):
        self.n = n
        clean = {}
        for (u, v), m in dict(mult).items():
            if u == v:
                raise DomainError("loops not supported")
            if m < 0:
                raise DomainError("negative multiplicity")
            if m:
                clean[(min(u, v), max(u, v))] = int(m)
        self.mult = clean

    def multiplicity(self, u, v):
        return self.mult.get((min(u, v), max(u, v)), 0)

    def size(self):
        """Total number of edges counted with multiplicity."""
        return sum(self.mult.values())

    def simple_projection(self):
        return Graph.from_edges(self.n, list(self.mult))

    def degree(self, v):
        return sum(m for (a, b), m in self.mult.items() if v in (a, b))

    def __eq__(self, other):
        return (isinstance(other, Multigraph) and self.n == other.n
                and self.mult == other.mult)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.mult.items()))))

    def __repr__(self):
        return f"Multigraph({self.n}, {self.mult!r})"


def multigraph_canonical_form(mg):
    """(n, multiplicity vector in pair order) minimized over all orderings.

    Only used on tiny factor graphs (n <= 9ish for enumeration n <= 5), so a
    plain scan over refinement-class orderings is fine.
    """
    n = mg.n
    if n > 9:
        raise DomainError("multigraph canonical form supported for n <= 9")
    # refine on weighted degree first
    wdeg = tuple(mg.degree(v) for v in range(n))
    order0 = {d: i for i, d in enumerate(sorted(set(wdeg)))}
    colors = [order0[d] for d in wdeg]
    while True:
        sigs = []
        for v in range(n):
            inc = sorted((colors[u if a == v else a], m)
                         for (a, u), m in mg.mult.items() if v in (a, u))
            sigs.append((colors[v], tuple(inc)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            break
        colors = new
    by = defaultdict(list)
    for v, c in enumerate(colors):
        by[c].append(v)
    classes = [by[c] for c in sorted(by)]
    best = None
    pos = [0] * n
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        i = 0
        for part in parts:
            for v in part:
                pos[v] = i
                i += 1
        vec = [0] * (n * (n - 1) // 2)
        for (u, v), m in mg.mult.items():
            vec[pair_index(n, pos[u], pos[v])] = m
        vec = tuple(vec)
        if best is None or vec < best:
            best = vec
    return (n, best if best is not None else ())


class Digraph:
    """Bare-bones directed graph for flow configurations."""

    __slots__ = ("n", "arcs")

    def __init__(self, n, arcs):
        self.n = n
        self.arcs = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in self.arcs:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise DomainError(f"bad arc ({u}, {v})")

    def has_arc(self, u, v):
        return (u, v) in self.arcs

    def __repr__(self):
        return f"Digraph({self.n}, {sorted(self.arcs)!r})"
