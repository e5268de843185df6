"""Simple graphs, digraphs, acyclic orientations, and perfect elimination orders.

Vertices are the integers 1..n throughout.  An orientation of a graph is
stored either as a Digraph or as a bitmask over the graph's edge list:
bit k set means edge k points from its larger endpoint to its smaller one,
so mask 0 is the orientation with every edge pointing toward its larger
endpoint.
"""

import heapq
from itertools import combinations

from .errors import InputError


class Graph:
    """Undirected simple graph on vertices 1..n.

    Edges are stored as (min, max) pairs in input order; the index of an
    edge in ``edges`` is stable and is what orientation bitmasks refer to.
    """

    __slots__ = ("n", "edges", "adj", "_eix")

    def __init__(self, n, edges):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        self.n = n
        eix = {}
        elist = []
        adj = [set() for _ in range(n + 1)]
        for e in edges:
            u, v = e
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError("edge endpoint out of range: %r" % (e,))
            if u == v:
                raise InputError("self-loop at vertex %d" % u)
            if u > v:
                u, v = v, u
            if (u, v) in eix:
                raise InputError("duplicate edge %d-%d" % (u, v))
            eix[(u, v)] = len(elist)
            elist.append((u, v))
            adj[u].add(v)
            adj[v].add(u)
        self.edges = tuple(elist)
        self.adj = tuple(frozenset(s) for s in adj)
        self._eix = eix

    def __repr__(self):
        return "Graph(n=%d, m=%d)" % (self.n, len(self.edges))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and set(self.edges) == set(other.edges)

    def __hash__(self):
        return hash((self.n, frozenset(self.edges)))

    def has_edge(self, u, v):
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            return False
        return v in self.adj[u]

    def edge_index(self, u, v):
        if u > v:
            u, v = v, u
        try:
            return self._eix[(u, v)]
        except KeyError:
            raise InputError("no edge %d-%d" % (u, v)) from None

    def degree(self, v):
        return len(self.adj[v])


class Digraph:
    """Directed graph on 1..n with no loops, parallel, or antiparallel arcs.

    Arcs keep their input order; when a Digraph is built from a Graph via
    ``orient``, arc k corresponds to edge k.
    """

    __slots__ = ("n", "arcs", "out", "inn", "_aset")

    def __init__(self, n, arcs):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        self.n = n
        alist = []
        aset = set()
        out = [set() for _ in range(n + 1)]
        inn = [set() for _ in range(n + 1)]
        for a in arcs:
            i, j = a
            if not (1 <= i <= n and 1 <= j <= n):
                raise InputError("arc endpoint out of range: %r" % (a,))
            if i == j:
                raise InputError("self-loop at vertex %d" % i)
            if (i, j) in aset:
                raise InputError("duplicate arc %d->%d" % (i, j))
            if (j, i) in aset:
                raise InputError("antiparallel arcs between %d and %d" % (i, j))
            aset.add((i, j))
            alist.append((i, j))
            out[i].add(j)
            inn[j].add(i)
        self.arcs = tuple(alist)
        self.out = tuple(frozenset(s) for s in out)
        self.inn = tuple(frozenset(s) for s in inn)
        self._aset = frozenset(aset)

    def __repr__(self):
        return "Digraph(n=%d, arcs=%r)" % (self.n, list(self.arcs))

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._aset == other._aset

    def __hash__(self):
        return hash((self.n, self._aset))

    def has_arc(self, i, j):
        return (i, j) in self._aset

    def underlying(self):
        """The undirected graph of this digraph; edge k comes from arc k."""
        return Graph(self.n, self.arcs)


def _topo_any(d):
    """Some topological order of d, or None if d has a cycle."""
    indeg = [0] * (d.n + 1)
    for _, j in d.arcs:
        indeg[j] += 1
    stack = [v for v in range(1, d.n + 1) if indeg[v] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in d.out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) != d.n:
        return None
    return order


def is_acyclic(d):
    """True iff the digraph contains no directed cycle."""
    return _topo_any(d) is not None


def topological_order(d):
    """The lexicographically smallest topological order of d.

    Rejects cyclic input.
    """
    indeg = [0] * (d.n + 1)
    for _, j in d.arcs:
        indeg[j] += 1
    heap = [v for v in range(1, d.n + 1) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in d.out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != d.n:
        raise InputError("digraph is not acyclic")
    return tuple(order)


def descendant_masks(d):
    """Reachability bitmasks of an acyclic digraph.

    Returns a list indexed by vertex (entry 0 unused) where bit v of
    masks[u] is set iff there is a directed path from u to v of length
    at least one.  Rejects cyclic input.
    """
    order = _topo_any(d)
    if order is None:
        raise InputError("digraph is not acyclic")
    masks = [0] * (d.n + 1)
    for v in reversed(order):
        m = 0
        for w in d.out[v]:
            m |= (1 << w) | masks[w]
        masks[v] = m
    return masks


def transitive_reduction(d):
    """Arc set of the transitive reduction of an acyclic digraph.

    An arc i->j is kept iff no directed path i ~> j of length >= 2 exists,
    so the result is exactly the cover relation set of the reachability
    poset.  Rejects cyclic input.
    """
    masks = descendant_masks(d)
    keep = set()
    for i, j in d.arcs:
        bit = 1 << j
        if not any(masks[w] & bit for w in d.out[i] if w != j):
            keep.add((i, j))
    return frozenset(keep)


def flippable_arcs(d):
    """Arcs of an acyclic digraph whose reversal keeps it acyclic.

    These are exactly the arcs of the transitive reduction.
    """
    return transitive_reduction(d)


def flip_arc(d, i, j):
    """Reverse arc i->j, returning a new Digraph.

    Rejects arcs that are absent or whose reversal would create a cycle
    (equivalently, arcs outside the transitive reduction).
    """
    if not d.has_arc(i, j):
        raise InputError("no arc %d->%d" % (i, j))
    if (i, j) not in flippable_arcs(d):
        raise InputError("arc %d->%d is not flippable" % (i, j))
    arcs = [(j, i) if a == (i, j) else a for a in d.arcs]
    return Digraph(d.n, arcs)


def in_degree_sequence(d):
    """The vector (indegree(1), ..., indegree(n))."""
    return tuple(len(d.inn[v]) for v in range(1, d.n + 1))


def is_simplicial(g, v):
    """True iff the neighborhood of v is a clique."""
    if not (1 <= v <= g.n):
        raise InputError("vertex %r out of range" % (v,))
    return all(g.has_edge(a, b) for a, b in combinations(g.adj[v], 2))


def _check_order(n, order):
    order = tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise InputError("order is not a permutation of 1..%d" % n)
    return order


def is_peo(g, order):
    """Check that relabeling by ``order`` puts g in perfect elimination order.

    ``order`` lists the vertices of g; order[k] receives the new label k+1.
    The condition checked is that every vertex is simplicial among its
    predecessors: for each v, the earlier neighbors of v form a clique.
    The standard parent test suffices: with u the latest earlier neighbor
    of v, every other earlier neighbor of v must be adjacent to u.
    """
    order = _check_order(g.n, order)
    pos = [0] * (g.n + 1)
    for k, v in enumerate(order):
        pos[v] = k + 1
    for v in range(1, g.n + 1):
        earlier = [u for u in g.adj[v] if pos[u] < pos[v]]
        if len(earlier) < 2:
            continue
        u = max(earlier, key=lambda w: pos[w])
        for w in earlier:
            if w != u and not g.has_edge(u, w):
                return False
    return True


def lex_bfs(g):
    """Lexicographic BFS visit order.

    Ties are broken by picking the vertex with the lexicographically
    largest label set, then the smallest vertex id, so the output is
    deterministic.
    """
    n = g.n
    labels = {v: [] for v in range(1, n + 1)}
    unvisited = set(range(1, n + 1))
    order = []
    for step in range(n, 0, -1):
        v = max(unvisited, key=lambda w: (labels[w], -w))
        unvisited.remove(v)
        order.append(v)
        for w in g.adj[v]:
            if w in unvisited:
                # labels stay sorted descending: appended keys decrease
                labels[w].append(step)
    return tuple(order)


def find_peo(g):
    """A vertex order certifying chordality, or None.

    Runs lexicographic BFS and then verifies the resulting order, so a
    non-None result is always a valid certificate and None is returned
    exactly when g is not chordal.
    """
    order = lex_bfs(g)
    if is_peo(g, order):
        return order
    return None


def is_chordal(g):
    """True iff g has a perfect elimination order."""
    return find_peo(g) is not None


def relabel_graph(g, order):
    """Relabel g so that vertex order[k] becomes k+1.

    Edge k of the result corresponds to edge k of g, so orientation
    bitmasks keep their meaning across the relabeling.
    """
    order = _check_order(g.n, order)
    newlab = [0] * (g.n + 1)
    for k, v in enumerate(order):
        newlab[v] = k + 1
    return Graph(g.n, [(newlab[u], newlab[v]) for u, v in g.edges])


def relabel_digraph(d, order):
    """Relabel d so that vertex order[k] becomes k+1; arc k maps to arc k."""
    order = _check_order(d.n, order)
    newlab = [0] * (d.n + 1)
    for k, v in enumerate(order):
        newlab[v] = k + 1
    return Digraph(d.n, [(newlab[i], newlab[j]) for i, j in d.arcs])


def orient(g, mask):
    """The Digraph of an orientation bitmask of g; arc k comes from edge k."""
    m = len(g.edges)
    if not 0 <= mask < (1 << m):
        raise InputError("orientation mask out of range")
    arcs = []
    for k, (u, v) in enumerate(g.edges):
        arcs.append((v, u) if mask >> k & 1 else (u, v))
    return Digraph(g.n, arcs)


def orientation_mask(g, d):
    """The bitmask of d as an orientation of g; inverse of ``orient``."""
    if d.n != g.n or len(d.arcs) != len(g.edges):
        raise InputError("digraph does not match the graph")
    mask = 0
    for k, (u, v) in enumerate(g.edges):
        if d.has_arc(v, u):
            mask |= 1 << k
        elif not d.has_arc(u, v):
            raise InputError("digraph does not orient edge %d-%d" % (u, v))
    return mask


def is_acyclic_mask(g, mask):
    """Acyclicity test for an orientation bitmask, without building a Digraph."""
    n = g.n
    indeg = [0] * (n + 1)
    out = [[] for _ in range(n + 1)]
    for k, (u, v) in enumerate(g.edges):
        if mask >> k & 1:
            u, v = v, u
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(1, n + 1) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


def complete_graph(n):
    """K_n with edges in lexicographic order."""
    return Graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def path_graph(n):
    """The path 1-2-...-n."""
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    """The cycle 1-2-...-n-1; requires n >= 3."""
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])
