"""Twin vertices, the twin quotient, iterated quotients and the quotient index.

Two vertices are twins when their neighborhoods agree away from each other:
N(u) - v = N(v) - u.  This is an equivalence relation whose classes induce
cliques or independent sets.  The quotient [G] keeps one representative per
class; iterating the quotient eventually reaches a twin-free graph, and the
number of steps needed is the quotient index i(G).
"""

from __future__ import annotations

from .errors import DomainError
from .graphs import induced_subgraph
from .splits import SplitBipartition, compose, is_balanced
from .switching import threshold_from_bits


def are_twins(g, u, v):
    """N(u) - v = N(v) - u."""
    if u == v:
        return True
    return (g.rows[u] & ~(1 << v)) == (g.rows[v] & ~(1 << u))


class TwinPartition:
    """Twin classes of a graph, each tagged clique/independent/singleton."""

    __slots__ = ("graph", "classes", "kinds")

    def __init__(self, graph, classes, kinds):
        self.graph = graph
        self.classes = classes
        self.kinds = kinds

    def class_of(self, v):
        for c in self.classes:
            if v in c:
                return c
        raise DomainError(f"vertex {v} out of range")

    def representatives(self):
        return tuple(c[0] for c in self.classes)

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        body = ", ".join(f"{c}:{k}" for c, k in zip(self.classes, self.kinds))
        return f"TwinPartition({body})"


def twin_partition(g):
    classes = []
    seen = [False] * g.n
    for v in range(g.n):
        if seen[v]:
            continue
        cls = [v]
        seen[v] = True
        for w in range(v + 1, g.n):
            if not seen[w] and are_twins(g, v, w):
                cls.append(w)
                seen[w] = True
        classes.append(tuple(cls))
    kinds = []
    for cls in classes:
        if len(cls) == 1:
            kinds.append("singleton")
        elif g.has_edge(cls[0], cls[1]):
            kinds.append("clique")
        else:
            kinds.append("independent")
    # a class must not mix the two adjacency patterns
    for cls, kind in zip(classes, kinds):
        for i in range(len(cls)):
            for j in range(i + 1, len(cls)):
                if g.has_edge(cls[i], cls[j]) != (kind == "clique"):
                    raise DomainError("twin class is neither clique nor independent")
    return TwinPartition(g, tuple(classes), tuple(kinds))


def quotient(g):
    """One vertex per twin class (least-label representative), relabeled
    densely; adjacency is inherited from any crossing edge."""
    reps = twin_partition(g).representatives()
    return induced_subgraph(g, reps)


def is_twin_free(g):
    return all(len(c) == 1 for c in twin_partition(g).classes)


def iterated_quotient(g, k):
    for _ in range(k):
        g = quotient(g)
    return g


def quotient_index(g):
    """Least k for which the k-fold quotient is twin-free.

    Bounded by |G| - 1 for nonempty G since every proper quotient drops a
    vertex.
    """
    k = 0
    while not is_twin_free(g):
        g = quotient(g)
        k += 1
    return k


def quotient_split(sb):
    """Quotient of a split graph, keeping the induced bipartition.

    Each class representative keeps its original side; a class that
    straddles both sides collapses onto its representative's side, which
    still leaves a valid bipartition because the representatives inherit
    the clique/independent structure.
    """
    g = sb.graph
    part = twin_partition(g)
    kset = set(sb.clique)
    reps = part.representatives()
    h = induced_subgraph(g, reps)
    k = [i for i, r in enumerate(reps) if r in kset]
    i = [i for i, r in enumerate(reps) if r not in kset]
    return SplitBipartition(h, k, i)


def quotient_compose_check(sb, g):
    """Verify [S o G] = [S] o [G] and i(S o G) = max(i(S), i(G)) for a
    balanced split S.

    For balanced S the twin classes of S o G are the classes of S together
    with the (shifted) classes of G, so both sides agree label-for-label
    and no isomorphism test is needed.
    """
    if not is_balanced(sb.graph):
        raise DomainError("composition/quotient distributivity needs balanced S")
    whole = compose(sb, g)
    lhs = quotient(whole)
    rhs = compose(quotient_split(sb), quotient(g))
    if lhs != rhs:
        return False
    return quotient_index(whole) == max(quotient_index(sb.graph),
                                        quotient_index(g))


def slow_iteration_family(n):
    """Threshold graph on n vertices whose quotient index is n - 1:
    built from the alternating creation sequence 0101... (n even) or
    00101... (n odd)."""
    if n < 1:
        raise DomainError("need n >= 1")
    if n % 2 == 0:
        bits = ("01" * (n // 2 + 1))[:n]
    else:
        bits = ("0" + "01" * (n // 2 + 1))[:n]
    return threshold_from_bits(bits)
