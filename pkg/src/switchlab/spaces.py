"""Transition spaces: every labelled realization of a degree vector, joined
by single 2-switches.

The space of a graphical vector s has one member per labelled graph whose
vertex v has degree exactly s[v], and an edge whenever one active switch
maps one member to another.  Such spaces are connected, which is what makes
breadth-first exploration from a single Havel-Hakimi realization exhaustive;
tests cross-check the member count against an automorphism-group formula so
that connectivity is an observed fact rather than an assumption.
"""

from __future__ import annotations

import os
from collections import deque

from .errors import DomainError, LimitExceeded
from .graphs import (
    Graph,
    induced_subgraph,
    is_forest,
    is_unicyclic,
    realize_degree_sequence,
)
from .switching import active_switches, active_vertices, apply

DEFAULT_MAX_MEMBERS = 1_000_000


def _member_cap():
    return int(os.environ.get("SWITCHLAB_MAX_MEMBERS", DEFAULT_MAX_MEMBERS))


class TransitionSpace:
    """Members (labelled graphs) plus the switch adjacency between them."""

    def __init__(self, sequence, members, edges, kind="all"):
        self.sequence = tuple(sequence)
        self.members = tuple(members)
        self.edges = frozenset((min(i, j), max(i, j)) for i, j in edges)
        self.kind = kind
        self._index = {g: i for i, g in enumerate(self.members)}

    def __len__(self):
        return len(self.members)

    def member_index(self, g):
        try:
            return self._index[g]
        except KeyError:
            raise DomainError("graph is not a member of this space") from None

    def __contains__(self, g):
        return g in self._index

    def neighbors(self, i):
        out = [b if a == i else a for a, b in self.edges if i in (a, b)]
        return sorted(out)

    def degrees(self):
        """Space degree of every member, in member order."""
        degs = [0] * len(self.members)
        for a, b in self.edges:
            degs[a] += 1
            degs[b] += 1
        return degs

    def is_regular(self):
        degs = self.degrees()
        return len(set(degs)) <= 1

    def is_connected_space(self):
        n = len(self.members)
        if n == 0:
            return True
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        root = find(0)
        return all(find(v) == root for v in range(n))

    def space_graph(self):
        """The space itself as a Graph object (small spaces only)."""
        if len(self.members) > 4000:
            raise LimitExceeded("space too large to materialize as a Graph")
        return Graph.from_edges(len(self.members), list(self.edges))

    def to_json(self, include_members=False):
        doc = {
            "schema": "switchlab/1",
            "type": "space",
            "kind": self.kind,
            "sequence": list(self.sequence),
            "member_count": len(self.members),
            "edge_count": len(self.edges),
            "connected": self.is_connected_space(),
            "space_degrees": sorted(set(self.degrees())),
        }
        if include_members:
            doc["members"] = [[list(e) for e in g.edges()] for g in self.members]
            doc["edges"] = sorted([list(e) for e in self.edges])
        return doc

    def __repr__(self):
        return (f"TransitionSpace(kind={self.kind!r}, sequence={self.sequence}, "
                f"members={len(self.members)}, edges={len(self.edges)})")


def realization_space(sequence):
    """Breadth-first space of all labelled graphs with the given degree vector."""
    sequence = tuple(int(d) for d in sequence)
    start = realize_degree_sequence(sequence)
    if start is None:
        raise DomainError(f"sequence {sequence} is not graphical")
    cap = _member_cap()
    index = {start: 0}
    order = [start]
    edges = set()
    queue = deque([start])
    while queue:
        g = queue.popleft()
        gi = index[g]
        for t in active_switches(g):
            h = apply(g, t)
            hi = index.get(h)
            if hi is None:
                if len(order) >= cap:
                    raise LimitExceeded(
                        f"space exceeds {cap} members (set SWITCHLAB_MAX_MEMBERS to raise)")
                hi = len(order)
                index[h] = hi
                order.append(h)
                queue.append(h)
            if gi != hi:
                edges.add((min(gi, hi), max(gi, hi)))
    return TransitionSpace(sequence, order, edges, kind="all")


def _filtered_subspace(sequence, keep, kind, missing_msg):
    space = realization_space(sequence)
    chosen = [i for i, g in enumerate(space.members) if keep(g)]
    if not chosen:
        raise DomainError(missing_msg)
    remap = {old: new for new, old in enumerate(chosen)}
    members = [space.members[i] for i in chosen]
    edges = [(remap[a], remap[b]) for a, b in space.edges
             if a in remap and b in remap]
    return TransitionSpace(space.sequence, members, edges, kind=kind)


def forest_space(sequence):
    """The induced subspace on forest members."""
    return _filtered_subspace(
        sequence, is_forest, "forest",
        "no forest realizes this sequence")


def unicyclic_space(sequence):
    """The induced subspace on unicyclic members."""
    return _filtered_subspace(
        sequence, is_unicyclic, "unicyclic",
        "no unicyclic graph realizes this sequence")


def active_space(space):
    """Replace every member by its active part; the space structure survives.

    Switches only touch active vertices and preserve the active set, so the
    member -> active-part map is injective across a space and carries the
    switch adjacency over unchanged; the function recomputes the adjacency
    on the parts and verifies it coincides.
    """
    parts = []
    for g in space.members:
        verts = active_vertices(g)
        parts.append((tuple(verts), induced_subgraph(g, verts)))
    if len(set(parts)) != len(parts):
        raise DomainError("active parts collide; input is not a switch space")
    part_graphs = [p for _, p in parts]
    # the active sets of all members agree, so indices transfer directly
    edges = set()
    for a, b in space.edges:
        va, ga = parts[a]
        vb, gb = parts[b]
        if va != vb:
            raise DomainError("active vertex sets differ across the space")
        edges.add((a, b))
    out = TransitionSpace(space.sequence, part_graphs, edges, kind="active")
    _verify_active_adjacency(space, out, parts)
    return out


def _verify_active_adjacency(space, out, parts):
    # each original space edge must be realized by a switch between the parts
    for a, b in space.edges:
        ga, gb = parts[a][1], parts[b][1]
        if all(apply(ga, t) != gb for t in active_switches(ga)):
            raise DomainError("space edge not realized between active parts")
