"""The factor multigraph of a split graph and its structure theory.

Fix a split bipartition (K, I).  Two I-vertices u, v span
sigma_uv = (d_u - eta_uv)(d_v - eta_uv) induced 4-vertex paths, where
eta_uv = |N_u cap N_v|: a path needs a K-neighbor private to u and one
private to v.  The *factor graph* Phi(S) is the multigraph on I whose
edge uv carries multiplicity sigma_uv; its total edge count is exactly
the switch degree of S, which makes Phi a compressed picture of all the
moves S admits.

The *flow configuration* orients each Phi-edge toward the larger
S-degree (both ways on ties).  Degree arithmetic then pins down which
oriented triangles and induced 4-cycles can occur, bounds induced cycle
lengths and the diameter, and forces every edge's degree gap into the
divisor-gap set D*(sigma) of its multiplicity -- the bridge to the
deltanumbers module, which also supplies witness triples from which
build_split_from_delta assembles concrete splits whose three sigmas all
equal a chosen n.

analyze_set_family covers the underlying extremal fact: a family of
d-sets with all pairwise intersections of size d-1 is either a sunflower
(common core of size d-1) or the family of point-complements of a
(d+1)-set.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from functools import lru_cache

from .deltanumbers import d_star
from .errors import DomainError, LimitExceeded
from .graphs import (
    SCHEMA,
    Digraph,
    Graph,
    Multigraph,
    clique_number,
    diameter,
    independence_number,
    is_connected,
)
from .splits import (
    SplitBipartition,
    interchangeable_vertices,
    is_split,
    split_bipartition,
)
from .switching import degree_formula, is_active

# induced path/cycle enumeration fans out fast; factor graphs live on I
PHI_ENUM_MAX = 12


def _as_split(s):
    """Accept a SplitBipartition or a plain split Graph."""
    if isinstance(s, SplitBipartition):
        return s
    if isinstance(s, Graph):
        if not is_split(s):
            raise DomainError("input graph is not split")
        return split_bipartition(s)
    raise DomainError(f"expected a split graph or bipartition, got {s!r}")


def eta(s, u, v):
    """|N_u cap N_v| for two I-vertices (their shared K-neighbors)."""
    sb = _as_split(s)
    iset = set(sb.independent)
    if u not in iset or v not in iset:
        raise DomainError("eta is defined for vertices of the independent side")
    if u == v:
        raise DomainError("eta needs two distinct vertices")
    g = sb.graph
    return (g.rows[u] & g.rows[v]).bit_count()


def sigma(s, u, v):
    """Induced-path count through the I-pair u, v: (d_u - eta)(d_v - eta)."""
    sb = _as_split(s)
    e = eta(sb, u, v)
    g = sb.graph
    return (g.degree(u) - e) * (g.degree(v) - e)


class FactorGraph:
    """Phi(S): the multigraph on I with edge multiplicities sigma_uv.

    Vertices keep their labels from S.  Edges are stored only for
    sigma >= 1; sigma = 0 is queried as absence.  Equality compares the
    vertex set and multiplicities label-by-label (the overlap cache is
    a property of S, not of Phi, and is excluded).
    """

    __slots__ = ("split", "vertices", "_pos", "mult", "eta")

    def __init__(self, split):
        sb = _as_split(split)
        self.split = sb
        self.vertices = tuple(sb.independent)
        self._pos = {v: i for i, v in enumerate(self.vertices)}
        g = sb.graph
        self.mult = {}
        self.eta = {}
        for u, v in itertools.combinations(self.vertices, 2):
            e = (g.rows[u] & g.rows[v]).bit_count()
            self.eta[(u, v)] = e
            s = (g.degree(u) - e) * (g.degree(v) - e)
            if s:
                self.mult[(u, v)] = s

    def _key(self, u, v):
        if u not in self._pos or v not in self._pos:
            raise DomainError("vertex is not on the independent side")
        return (u, v) if u < v else (v, u)

    def multiplicity(self, u, v):
        return self.mult.get(self._key(u, v), 0)

    def overlap(self, u, v):
        return self.eta[self._key(u, v)]

    def edges(self):
        """Pairs with sigma >= 1, sorted."""
        return sorted(self.mult)

    def size(self):
        """Edges counted with multiplicity; equals the switch degree of S."""
        return sum(self.mult.values())

    def degree(self, v):
        """Weighted Phi-degree of one I-vertex."""
        if v not in self._pos:
            raise DomainError("vertex is not on the independent side")
        return sum(m for (a, b), m in self.mult.items() if v in (a, b))

    def is_simple(self):
        return all(m == 1 for m in self.mult.values())

    def multigraph(self):
        """Phi with vertices relabelled to 0..|I|-1 in vertex order."""
        return Multigraph(len(self.vertices),
                          {(self._pos[u], self._pos[v]): m
                           for (u, v), m in self.mult.items()})

    def simple_graph(self):
        """The simple projection, relabelled to 0..|I|-1."""
        return Graph.from_edges(
            len(self.vertices),
            [(self._pos[u], self._pos[v]) for u, v in self.mult])

    def is_connected(self):
        return is_connected(self.simple_graph())

    def are_phi_twins(self, u, v):
        """Equal multiplicity to every third vertex (their own pair ignored)."""
        ku, kv = self._key(u, v)
        return all(self.multiplicity(ku, w) == self.multiplicity(kv, w)
                   for w in self.vertices if w not in (ku, kv))

    def to_json(self):
        return {
            "schema": SCHEMA,
            "type": "factor_graph",
            "independent": list(self.vertices),
            "clique": list(self.split.clique),
            "degree": self.size(),
            "edges": [{"u": u, "v": v, "sigma": m,
                       "overlap": self.eta[(u, v)]}
                      for (u, v), m in sorted(self.mult.items())],
        }

    def to_dot(self, name="phi"):
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  {v} [label="{v} (d={self.split.graph.degree(v)})"];')
        for (u, v), m in sorted(self.mult.items()):
            lines.append(f'  {u} -- {v} [label="{m}"];')
        lines.append("}")
        return "\n".join(lines)

    def __eq__(self, other):
        return (isinstance(other, FactorGraph)
                and self.vertices == other.vertices
                and self.mult == other.mult)

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.mult.items()))))

    def __repr__(self):
        return (f"FactorGraph(I={list(self.vertices)}, "
                f"degree={self.size()}, edges={len(self.mult)})")


def factor_graph(s):
    """Phi(S) for a split graph or a chosen bipartition of one."""
    return FactorGraph(_as_split(s))


# -- flow configurations ------------------------------------------------------


class FlowConfiguration:
    """Phi's edges oriented toward the larger S-degree (both ways on ties)."""

    __slots__ = ("split", "vertices", "degrees", "arcs")

    def __init__(self, split):
        sb = _as_split(split)
        self.split = sb
        self.vertices = tuple(sb.independent)
        g = sb.graph
        self.degrees = {v: g.degree(v) for v in self.vertices}
        phi = FactorGraph(sb)
        arcs = set()
        for u, v in phi.mult:
            if self.degrees[u] <= self.degrees[v]:
                arcs.add((u, v))
            if self.degrees[v] <= self.degrees[u]:
                arcs.add((v, u))
        self.arcs = frozenset(arcs)

    def has_arc(self, u, v):
        return (u, v) in self.arcs

    def bidirected_pairs(self):
        return sorted((u, v) for u, v in self.arcs
                      if u < v and (v, u) in self.arcs)

    def digraph(self):
        """The arcs with vertices relabelled to 0..|I|-1 in vertex order."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        return Digraph(len(self.vertices),
                       [(pos[u], pos[v]) for u, v in self.arcs])

    def to_json(self):
        return {
            "schema": SCHEMA,
            "type": "flow_configuration",
            "vertices": list(self.vertices),
            "degrees": [self.degrees[v] for v in self.vertices],
            "arcs": sorted([list(a) for a in self.arcs]),
        }

    def __repr__(self):
        return f"FlowConfiguration(I={list(self.vertices)}, arcs={len(self.arcs)})"


def flow_configuration(s):
    return FlowConfiguration(_as_split(s))


def triangle_type_catalog():
    """The four oriented triangles a flow configuration can induce.

    With degrees a <= b <= c on a Phi-triangle the arc pattern depends
    only on which of them tie: none ("0", a transitive tournament), the
    lower pair ("1+", one two-way edge shooting into the top vertex),
    the upper pair ("1-", the bottom vertex feeding a two-way edge), or
    all three ("3", every arc present).
    """
    return {
        "0": Digraph(3, [(0, 1), (0, 2), (1, 2)]),
        "1+": Digraph(3, [(0, 1), (1, 0), (0, 2), (1, 2)]),
        "1-": Digraph(3, [(0, 1), (0, 2), (1, 2), (2, 1)]),
        "3": Digraph(3, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]),
    }


def classify_triangle(flow, u, v, w):
    """Name ("0", "1+", "1-" or "3") of a Phi-triangle's arc pattern."""
    tri = (u, v, w)
    if len(set(tri)) != 3:
        raise DomainError("a triangle needs three distinct vertices")
    for a, b in itertools.combinations(tri, 2):
        if not (flow.has_arc(a, b) or flow.has_arc(b, a)):
            raise DomainError(f"{a} and {b} are not Phi-adjacent")
    both = [(a, b) for a, b in itertools.combinations(tri, 2)
            if flow.has_arc(a, b) and flow.has_arc(b, a)]
    if len(both) == 0:
        return "0"
    if len(both) == 3:
        return "3"
    if len(both) == 2:
        raise DomainError("two ties force a third; not a flow triangle")
    a, b = both[0]
    (t,) = set(tri) - {a, b}
    if flow.has_arc(a, t) and flow.has_arc(b, t):
        return "1+"
    return "1-"


# -- induced 4-cycle orientations ---------------------------------------------
#
# An induced Phi-4-cycle p0 p1 p2 p3 carries, per cycle edge, one of
# three orientations: toward the larger degree (+1 / -1) or both ways
# (0).  Orientation tuples are considered up to the dihedral symmetry
# of the cycle; exactly the rank-induced ones occur, and each class is
# named by the least dense-rank tuple of degrees producing it.


def _d4_images(o):
    out = []
    t = tuple(o)
    for _ in range(4):
        t = (t[1], t[2], t[3], t[0])
        out.append(t)
        out.append((-t[3], -t[2], -t[1], -t[0]))
    return out


def _c4_canon(o):
    return min(_d4_images(o))


def _sign(x):
    return (x > 0) - (x < 0)


@lru_cache(maxsize=1)
def _c4_tables():
    all_canons = {_c4_canon(o) for o in itertools.product((-1, 0, 1), repeat=4)}
    named = defaultdict(list)
    for ranks in itertools.product(range(4), repeat=4):
        if sorted(set(ranks)) != list(range(max(ranks) + 1)):
            continue  # ranks must be dense
        o = tuple(_sign(ranks[(i + 1) % 4] - ranks[i]) for i in range(4))
        named[_c4_canon(o)].append("".join(map(str, ranks)))
    catalog = {min(names): canon for canon, names in named.items()}
    forbidden = sorted(all_canons - set(named))
    return catalog, forbidden


def c4_type_catalog():
    """Names -> canonical orientation tuples for the realizable 4-cycles."""
    return dict(_c4_tables()[0])


def c4_forbidden_orientations():
    """Orientation classes no degree assignment can induce."""
    return list(_c4_tables()[1])


def classify_induced_c4(flow, quad):
    """Name of the orientation class of an induced Phi-4-cycle.

    quad lists the four vertices in any order; the cycle order is
    recovered from Phi-adjacency.
    """
    quad = tuple(quad)
    if len(set(quad)) != 4:
        raise DomainError("an induced 4-cycle needs four distinct vertices")

    def adjacent(a, b):
        return flow.has_arc(a, b) or flow.has_arc(b, a)

    p0 = min(quad)
    nbrs = [v for v in quad if v != p0 and adjacent(p0, v)]
    if len(nbrs) != 2:
        raise DomainError("not an induced 4-cycle of the factor graph")
    (opp,) = [v for v in quad if v != p0 and v not in nbrs]
    p1, p3 = sorted(nbrs)
    cycle = (p0, p1, opp, p3)
    for a, b in ((p0, p1), (p1, opp), (opp, p3), (p3, p0)):
        if not adjacent(a, b):
            raise DomainError("not an induced 4-cycle of the factor graph")
    if adjacent(p0, opp) or adjacent(p1, p3):
        raise DomainError("4-cycle has a chord in the factor graph")
    o = []
    for i in range(4):
        a, b = cycle[i], cycle[(i + 1) % 4]
        fwd, bwd = flow.has_arc(a, b), flow.has_arc(b, a)
        o.append(0 if fwd and bwd else (1 if fwd else -1))
    catalog, _ = _c4_tables()
    canon = _c4_canon(tuple(o))
    for name, c in catalog.items():
        if c == canon:
            return name
    raise DomainError("orientation is not induced by any degree ranking")


# -- homogeneity and linearity -------------------------------------------------


def is_homogeneous(s):
    """Balanced with all I-degrees equal.

    Balance is tested as the absence of interchangeable vertices, which
    is the same thing but stays cheap at any order.
    """
    sb = _as_split(s)
    if interchangeable_vertices(sb):
        return False
    degs = {sb.graph.degree(v) for v in sb.independent}
    return len(degs) <= 1


class ClassPath:
    """Degree-level classes of I and how Phi joins them.

    Levels are sorted by ascending S-degree.  is_path records whether
    same-level pairs are non-adjacent with equal multiplicity outward,
    consecutive levels are joined with one uniform multiplicity, and
    non-consecutive levels are non-adjacent -- i.e. whether the twin
    quotient of Phi is a path.  degree_identity checks
    deg(S) = sum sigma_i |L_i| |L_{i+1}|.
    """

    __slots__ = ("levels", "level_degrees", "sigmas", "is_path",
                 "degree_identity")

    def __init__(self, levels, level_degrees, sigmas, is_path,
                 degree_identity):
        self.levels = levels
        self.level_degrees = level_degrees
        self.sigmas = sigmas
        self.is_path = is_path
        self.degree_identity = degree_identity

    def to_json(self):
        return {
            "levels": [list(c) for c in self.levels],
            "level_degrees": list(self.level_degrees),
            "sigmas": list(self.sigmas),
            "is_path": self.is_path,
            "degree_identity": self.degree_identity,
        }

    def __repr__(self):
        shape = "x".join(str(len(c)) for c in self.levels)
        return f"ClassPath({shape}, is_path={self.is_path})"


class LinearityReport:
    """Multiplicity and degree-gap regularity of one factor graph.

    n_simple: the common sigma when every edge has the same multiplicity
    (None when edges disagree or Phi is edgeless).  square_free: no edge
    multiplicity is a perfect square.  epsilon: the common positive
    degree gap when one exists.  class_path: for gap-regular connected
    Phi, the degree-level structure.
    """

    __slots__ = ("n_simple", "square_free", "epsilon", "connected",
                 "class_path")

    def __init__(self, n_simple, square_free, epsilon, connected, class_path):
        self.n_simple = n_simple
        self.square_free = square_free
        self.epsilon = epsilon
        self.connected = connected
        self.class_path = class_path

    def to_json(self):
        return {
            "schema": SCHEMA,
            "type": "linearity_report",
            "n_simple": self.n_simple,
            "square_free": self.square_free,
            "epsilon": self.epsilon,
            "connected": self.connected,
            "class_path": self.class_path.to_json() if self.class_path else None,
        }

    def __repr__(self):
        return (f"LinearityReport(n_simple={self.n_simple}, "
                f"square_free={self.square_free}, epsilon={self.epsilon})")


def _is_square(m):
    return math.isqrt(m) ** 2 == m


def _class_path(phi):
    g = phi.split.graph
    by_degree = defaultdict(list)
    for v in phi.vertices:
        by_degree[g.degree(v)].append(v)
    level_degrees = tuple(sorted(by_degree))
    levels = tuple(tuple(by_degree[d]) for d in level_degrees)
    ok = True
    for level in levels:
        for u, v in itertools.combinations(level, 2):
            if phi.multiplicity(u, v):
                ok = False
    sigmas = []
    for i in range(len(levels) - 1):
        vals = {phi.multiplicity(u, v)
                for u in levels[i] for v in levels[i + 1]}
        if len(vals) == 1 and 0 not in vals:
            sigmas.append(vals.pop())
        else:
            sigmas.append(None)
            ok = False
    for i, j in itertools.combinations(range(len(levels)), 2):
        if j - i >= 2 and any(phi.multiplicity(u, v)
                              for u in levels[i] for v in levels[j]):
            ok = False
    identity = ok and phi.size() == sum(
        s * len(levels[i]) * len(levels[i + 1])
        for i, s in enumerate(sigmas))
    return ClassPath(levels, level_degrees, tuple(sigmas), ok, identity)


def linearity_report(s):
    """n-simplicity, square-freeness and gap-regularity of Phi(S)."""
    sb = _as_split(s)
    phi = FactorGraph(sb)
    mults = set(phi.mult.values())
    n_simple = mults.pop() if len(mults) == 1 else None
    square_free = not any(_is_square(m) for m in phi.mult.values())
    g = sb.graph
    gaps = {abs(g.degree(u) - g.degree(v)) for u, v in phi.mult}
    epsilon = None
    if len(gaps) == 1:
        gap = gaps.pop()
        if gap > 0:
            epsilon = gap
    connected = phi.is_connected()
    class_path = None
    if epsilon is not None and connected and len(phi.vertices) > 1:
        class_path = _class_path(phi)
    return LinearityReport(n_simple, square_free, epsilon, connected,
                           class_path)


# -- induced paths and cycles of the simple projection -------------------------


def _check_enum_size(g):
    if g.n > PHI_ENUM_MAX:
        raise LimitExceeded(
            f"induced path/cycle enumeration supported for at most "
            f"{PHI_ENUM_MAX} vertices, got {g.n}")


def induced_paths(g):
    """All induced paths of g with >= 2 vertices, one orientation each."""
    _check_enum_size(g)
    out = []

    def extend(path, mask):
        last = path[-1]
        for w in range(g.n):
            if (mask >> w) & 1 or not g.has_edge(last, w):
                continue
            if g.rows[w] & (mask & ~(1 << last)):
                continue  # w sees the path's interior: not induced
            path.append(w)
            if path[0] < w:
                out.append(tuple(path))
            extend(path, mask | (1 << w))
            path.pop()

    for v in range(g.n):
        extend([v], 1 << v)
    return out


def induced_cycles(g):
    """All induced cycles of g (length >= 3), one orientation each.

    Cycles are reported starting at their least vertex, second vertex
    smaller than the last.
    """
    _check_enum_size(g)
    out = []

    def extend(path, mask):
        v0, last = path[0], path[-1]
        for w in range(v0 + 1, g.n):
            if (mask >> w) & 1 or not g.has_edge(last, w):
                continue
            if len(path) == 1:
                path.append(w)
                extend(path, mask | (1 << w))
                path.pop()
                continue
            if g.rows[w] & (mask & ~(1 << v0) & ~(1 << last)):
                continue  # chord to the interior
            if g.has_edge(w, v0):
                if path[1] < w:
                    out.append(tuple(path) + (w,))
            else:
                path.append(w)
                extend(path, mask | (1 << w))
                path.pop()

    for v in range(g.n):
        extend([v], 1 << v)
    return out


# -- the structural validator ---------------------------------------------------


class StructureReport:
    """Which structural laws were checked and any counterexamples found."""

    __slots__ = ("checks", "violations")

    def __init__(self):
        self.checks = []
        self.violations = []

    @property
    def ok(self):
        return not self.violations

    def _run(self, name):
        self.checks.append(name)

    def _fail(self, name, detail):
        self.violations.append({"rule": name, "detail": detail})

    def to_json(self):
        return {
            "schema": SCHEMA,
            "type": "structure_report",
            "ok": self.ok,
            "checks": list(self.checks),
            "violations": list(self.violations),
        }

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"StructureReport({len(self.checks)} checks, {state})"


def validate_structure(f):
    """Check every structural law of one factor graph; all must hold.

    Laws: total multiplicity equals the switch degree; sigma matches its
    overlap formula; induced cycles have length <= 4; simple edges sit
    only at the ends of induced paths; the maximum degree along an
    induced path sits at one of its four outer positions; connected Phi
    has diameter <= ceil((deg(S)+1)/2); every edge's degree gap lies in
    the divisor-gap set of its multiplicity.  Homogeneous splits add:
    multiplicities are perfect squares, sigma = 0 exactly on twins, and
    the simple projection has no induced K2+K1 and diameter <= 2.  For
    simple connected Phi the clique numbers of S and Phi agree and stay
    below |I|.
    """
    report = StructureReport()
    sb = f.split
    g = sb.graph
    simple = f.simple_graph()
    pos = {v: i for i, v in enumerate(f.vertices)}
    degree = {v: g.degree(v) for v in f.vertices}

    report._run("degree_sum")
    if f.size() != degree_formula(g):
        report._fail("degree_sum",
                     {"phi_size": f.size(), "switch_degree": degree_formula(g)})

    report._run("sigma_formula")
    for (u, v), m in f.mult.items():
        e = f.eta[(u, v)]
        if m != (degree[u] - e) * (degree[v] - e):
            report._fail("sigma_formula", {"pair": (u, v), "sigma": m})

    cycles = induced_cycles(simple)
    report._run("cycle_length")
    for cyc in cycles:
        if len(cyc) > 4:
            report._fail("cycle_length",
                         {"cycle": [f.vertices[i] for i in cyc]})

    paths = induced_paths(simple)
    report._run("internal_simple_edge")
    report._run("path_degree_position")
    for path in paths:
        labels = [f.vertices[i] for i in path]
        k = len(labels)
        for i in range(1, k - 2):
            if f.multiplicity(labels[i], labels[i + 1]) == 1:
                report._fail("internal_simple_edge",
                             {"path": labels, "edge": labels[i:i + 2]})
        degs = [degree[v] for v in labels]
        if max(degs) not in {degs[0], degs[1], degs[-2], degs[-1]}:
            report._fail("path_degree_position",
                         {"path": labels, "degrees": degs})

    report._run("edge_gap_in_dstar")
    for (u, v), m in f.mult.items():
        gap = abs(degree[u] - degree[v])
        if gap not in d_star(m):
            report._fail("edge_gap_in_dstar",
                         {"pair": (u, v), "gap": gap, "sigma": m})

    if len(f.vertices) > 1 and is_connected(simple):
        report._run("diameter_bound")
        bound = (f.size() + 2) // 2  # ceil((deg+1)/2)
        if diameter(simple) > bound:
            report._fail("diameter_bound",
                         {"diameter": diameter(simple), "bound": bound})

    if is_homogeneous(sb):
        report._run("homogeneous_squares")
        for (u, v), m in f.mult.items():
            if not _is_square(m):
                report._fail("homogeneous_squares",
                             {"pair": (u, v), "sigma": m})
        report._run("homogeneous_twin_sigma")
        for u, v in itertools.combinations(f.vertices, 2):
            twins = g.rows[u] == g.rows[v]
            if (f.multiplicity(u, v) == 0) != twins:
                report._fail("homogeneous_twin_sigma", {"pair": (u, v)})
        report._run("homogeneous_k2_k1")
        for u, v in f.mult:
            for w in f.vertices:
                if w in (u, v):
                    continue
                if not f.multiplicity(u, w) and not f.multiplicity(v, w):
                    report._fail("homogeneous_k2_k1",
                                 {"edge": (u, v), "isolated": w})
        if f.mult:
            report._run("homogeneous_diameter")
            if not is_connected(simple) or diameter(simple) > 2:
                report._fail("homogeneous_diameter",
                             {"diameter": diameter(simple)})

    # clique-number transfer needs every vertex of S in an active quad;
    # balanced alone does not suffice (three clique vertices with
    # neighborhoods {0,1}, {0,1}, {0,2} hanging off them already fail it)
    if f.mult and f.is_simple() and len(f.vertices) > 1 \
            and is_connected(simple) and is_active(g):
        report._run("simple_connected_clique")
        omega_s = clique_number(g)
        omega_phi = clique_number(simple)
        alpha = independence_number(g)
        if omega_s != omega_phi or omega_s > alpha:
            report._fail("simple_connected_clique",
                         {"omega_s": omega_s, "omega_phi": omega_phi,
                          "alpha": alpha})

    return report


# -- constructions --------------------------------------------------------------


def pendant_model(fiber_sizes):
    """The pendant split with one clique vertex per fiber.

    K is a clique with one vertex per fiber, and each I-vertex of fiber
    j is adjacent exactly to K-vertex j.  Its factor graph is the
    complete multipartite multigraph over the fibers with every sigma
    equal to 1 -- the canonical split with Phi simple; together with
    complement-of-inverse images these are the only active splits whose
    Phi is simple and connected.
    """
    sizes = [int(s) for s in fiber_sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise DomainError("fiber sizes must be positive")
    k = len(sizes)
    n = k + sum(sizes)
    edges = list(itertools.combinations(range(k), 2))
    v = k
    for j, size in enumerate(sizes):
        for _ in range(size):
            edges.append((j, v))
            v += 1
    g = Graph.from_edges(n, edges)
    return SplitBipartition(g, range(k), range(k, n))


def build_split_from_delta(n, x, y, z, d_a):
    """A balanced split on I = {a, b, c} with all three sigmas equal to n.

    (x, y, z) must be a witness triple for n (divisors with
    1 < x < y <= z < sqrt(n) and n/x - x = (n/y - y) + (n/z - z)) and
    d_a >= z.  The witness equation makes the three overlap values
    consistent:
        d_b = d_a + n/z - z      eta_ab = d_a - z
        d_c = d_a + n/x - x      eta_ac = d_a - x
                                 eta_bc = d_b - y
    and sigma = n on all three pairs.  The triple overlap is taken at
    its lower bound max(0, d_a - x - z), which keeps the construction
    free of universal vertices as long as d_a <= x + z; at d_a = z the
    result is active.  K-vertices are fresh labels 0..|K|-1 laid out in
    contiguous blocks per overlap region, so equal inputs rebuild the
    identical graph.
    """
    for w in (x, y, z):
        if not isinstance(w, int) or w <= 1 or n % w:
            raise DomainError(f"invalid witness triple: {w} must be a "
                              f"divisor of {n} larger than 1")
    if not (x < y <= z and z * z < n):
        raise DomainError("invalid witness triple: need x < y <= z < sqrt(n)")
    if n // x - x != (n // y - y) + (n // z - z):
        raise DomainError("invalid witness triple: gap equation fails")
    if d_a < z:
        raise DomainError(f"d_a must be at least z = {z}")

    d_b = d_a + n // z - z
    d_c = d_a + n // x - x
    eta_ab = d_a - z
    eta_ac = d_a - x
    eta_bc = d_b - y
    t = max(0, d_a - x - z)

    regions = {
        "a": d_a - eta_ab - eta_ac + t,
        "ab": eta_ab - t,
        "abc": t,
        "ac": eta_ac - t,
        "bc": eta_bc - t,
        "b": d_b - eta_ab - eta_bc + t,
        "c": d_c - eta_ac - eta_bc + t,
    }
    assert all(size >= 0 for size in regions.values())
    k = sum(regions.values())
    assert k == n // x + z + y + t

    blocks = {}
    start = 0
    for name in ("a", "ab", "abc", "ac", "bc", "b", "c"):
        blocks[name] = range(start, start + regions[name])
        start += regions[name]
    a, b, c = k, k + 1, k + 2
    edges = list(itertools.combinations(range(k), 2))
    for name, block in blocks.items():
        for w in block:
            if "a" in name:
                edges.append((a, w))
            if "b" in name:
                edges.append((b, w))
            if "c" in name:
                edges.append((c, w))
    g = Graph.from_edges(k + 3, edges)
    sb = SplitBipartition(g, range(k), (a, b, c))

    assert (g.degree(a), g.degree(b), g.degree(c)) == (d_a, d_b, d_c)
    assert (eta(sb, a, b), eta(sb, a, c), eta(sb, b, c)) == \
        (eta_ab, eta_ac, eta_bc)
    assert sigma(sb, a, b) == sigma(sb, a, c) == sigma(sb, b, c) == n
    assert not interchangeable_vertices(sb)
    return sb


# -- set families with pairwise (d-1)-intersections ------------------------------


class SetFamilyReport:
    """Which of the two possible shapes a (d, d-1)-intersecting family has."""

    __slots__ = ("labels", "d", "alpha", "branch", "omega", "union_size",
                 "witness")

    def __init__(self, labels, d, alpha, branch, omega, union_size, witness):
        self.labels = labels
        self.d = d
        self.alpha = alpha
        self.branch = branch
        self.omega = omega
        self.union_size = union_size
        self.witness = witness

    def to_json(self):
        return {
            "schema": SCHEMA,
            "type": "set_family_report",
            "labels": list(self.labels),
            "d": self.d,
            "alpha": self.alpha,
            "branch": self.branch,
            "omega": self.omega,
            "union_size": self.union_size,
            "witness": list(self.witness),
        }

    def __repr__(self):
        return (f"SetFamilyReport(branch={self.branch!r}, d={self.d}, "
                f"alpha={self.alpha}, omega={self.omega})")


def _family_items(family):
    if hasattr(family, "items"):
        items = [(k, frozenset(s)) for k, s in family.items()]
    else:
        items = [(i, frozenset(s)) for i, s in enumerate(family)]
    return items


def analyze_set_family(family):
    """Classify a family of d-sets whose pairwise intersections all have d-1.

    Every such family (with at least three sets) is either a sunflower --
    all sets share a common core of size d-1, each contributing one
    private element, so the union has alpha + d - 1 elements -- or the
    family of all point-complements N_v = U - {p_v} inside a (d+1)-set
    U, where the intersection over any A has size d + 1 - |A|.  The
    report names the branch, the union size (the clique number omega of
    any split graph with these I-neighborhoods), and a witnessing triple
    whose intersection size (d-1 vs d-2) separates the branches.
    """
    items = _family_items(family)
    if len(items) < 3:
        raise DomainError("need at least three sets")
    labels = tuple(k for k, _ in items)
    sets = [s for _, s in items]
    d = len(sets[0])
    if any(len(s) != d for s in sets):
        raise DomainError("all sets must have the same size")
    for s, t in itertools.combinations(sets, 2):
        if len(s & t) != d - 1:
            raise DomainError("every pairwise intersection must have size d-1")

    core = frozenset.intersection(*sets)
    union = frozenset.union(*sets)
    alpha = len(sets)

    if len(core) == d - 1:
        # sunflower: every pairwise intersection contains the core and has
        # its size, so all deeper intersections equal the core as well
        witness = labels[:3]
        omega = alpha + d - 1
        assert len(union) == omega
        return SetFamilyReport(labels, d, alpha, "common_core", omega,
                               len(union), witness)

    if len(union) != d + 1:
        raise DomainError("family satisfies neither intersection pattern")
    missing = [union - s for s in sets]
    if any(len(m) != 1 for m in missing):
        raise DomainError("family satisfies neither intersection pattern")
    points = [next(iter(m)) for m in missing]
    if len(set(points)) != alpha:
        raise DomainError("family satisfies neither intersection pattern")
    witness = None
    for trip in itertools.combinations(range(alpha), 3):
        if len(sets[trip[0]] & sets[trip[1]] & sets[trip[2]]) == d - 2:
            witness = tuple(labels[i] for i in trip)
            break
    assert witness is not None
    return SetFamilyReport(labels, d, alpha, "point_complements", d + 1,
                           len(union), witness)


def family_split(family):
    """The split graph whose I-neighborhoods are the given sets.

    K is the union of the sets (as a clique, relabelled 0..|K|-1 in
    sorted element order) and I has one vertex per set, labelled
    |K|..|K|+alpha-1 in family order.  Returns the bipartition.
    """
    items = _family_items(family)
    elements = sorted(frozenset.union(frozenset(), *(s for _, s in items)))
    pos = {e: i for i, e in enumerate(elements)}
    k = len(elements)
    edges = list(itertools.combinations(range(k), 2))
    for i, (_, s) in enumerate(items):
        edges.extend((k + i, pos[e]) for e in s)
    g = Graph.from_edges(k + len(items), edges)
    return SplitBipartition(g, range(k), range(k, k + len(items)))
