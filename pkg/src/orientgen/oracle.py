"""Brute-force ground truth: exhaustive enumeration, flip graphs,
Hamilton-path certification, and flip-distance checks.

Everything here favors obviousness over speed; the generation engines are
validated against these functions, never the other way around.
"""

import itertools
from collections import deque

from .errors import CapExceeded, InputError, effective_cap
from .graphs import is_acyclic_mask, orient
from .hypergraphs import is_acyclic_orientation, pair_flip


def enumerate_ao_graph(g, cap=None):
    """All acyclic orientations of a graph, in ascending bitmask order.

    Bit k of a mask orients edge k from its larger endpoint toward its
    smaller one.  Raises CapExceeded when 2^m exceeds the cap.
    """
    m = len(g.edges)
    limit = effective_cap(cap)
    if (1 << m) > limit:
        raise CapExceeded("2^%d orientations exceed cap %d" % (m, limit))
    out = []
    for mask in range(1 << m):
        if is_acyclic_mask(g, mask):
            out.append(orient(g, mask))
    return out


def count_ao_graph(g):
    """Number of acyclic orientations, by inclusion-exclusion over the
    independent sets; never materializes the orientations.

    Removing a nonempty independent set L from the vertex set and signing
    by (-1)^(|L|+1) counts each orientation once through its source sets.
    """
    n = g.n
    nbr = [0] * n
    for a, b in g.edges:
        nbr[a - 1] |= 1 << (b - 1)
        nbr[b - 1] |= 1 << (a - 1)
    full = (1 << n) - 1
    indep = bytearray(1 << n)
    indep[0] = 1
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        indep[mask] = indep[rest] and not (nbr[low.bit_length() - 1] & rest)
    counts = [0] * (full + 1)
    counts[0] = 1
    for smask in range(1, full + 1):
        total = 0
        sub = smask
        while sub:
            if indep[sub]:
                if sub.bit_count() & 1:
                    total += counts[smask ^ sub]
                else:
                    total -= counts[smask ^ sub]
            sub = (sub - 1) & smask
        counts[smask] = total
    return counts[full]


def enumerate_ao_hyper(h, cap=None):
    """All acyclic orientations of a hypergraph as head tuples, in
    lexicographic order.  Raises CapExceeded when the product of the
    hyperedge sizes exceeds the cap.
    """
    limit = effective_cap(cap)
    total = 1
    for e in h.edges:
        total *= len(e)
        if total > limit:
            raise CapExceeded(
                "head-vector space exceeds cap %d" % limit)
    out = []
    # product over the sorted hyperedges runs in lexicographic order
    for heads in itertools.product(*h.edges):
        if is_acyclic_orientation(h, heads):
            out.append(heads)
    return out


class FlipGraph:
    """Undirected flip graph over a list of labeled objects.

    Vertices are the objects themselves; `annotations[(i, j)]` records
    what flip joins nodes i < j.
    """

    __slots__ = ("nodes", "index", "adj", "annotations")

    def __init__(self, nodes, annotations):
        self.nodes = tuple(nodes)
        self.index = {node: k for k, node in enumerate(self.nodes)}
        if len(self.index) != len(self.nodes):
            raise InputError("flip-graph objects must be distinct")
        self.annotations = dict(annotations)
        adj = [[] for _ in self.nodes]
        for i, j in self.annotations:
            adj[i].append(j)
            adj[j].append(i)
        self.adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def edges(self):
        return sorted(self.annotations)

    def degree(self, node):
        return len(self.adj[self.index[node]])

    def __repr__(self):
        return "FlipGraph(%d nodes, %d edges)" % (
            len(self.nodes), len(self.annotations))


def build_flip_graph(objects, flip):
    """Build the flip graph joining two objects when `flip(a, b)` is
    truthy; the returned value becomes the edge annotation.  The relation
    must be symmetric.
    """
    nodes = list(objects)
    annotations = {}
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            ann = flip(nodes[i], nodes[j])
            if ann:
                annotations[(i, j)] = ann
    return FlipGraph(nodes, annotations)


def one_arc_flip(d1, d2):
    """The flipped arc as oriented in d2 when the two orientations differ
    in exactly one edge, else None.  Flip relation for graph flip graphs.
    """
    if d1.n != d2.n or len(d1.arcs) != len(d2.arcs):
        return None
    only1 = [a for a in d1.arcs if not d2.has_arc(*a)]
    if len(only1) != 1:
        return None
    only2 = [a for a in d2.arcs if not d1.has_arc(*a)]
    if len(only2) != 1:
        return None
    i, j = only1[0]
    return only2[0] if only2[0] == (j, i) else None


def pair_flip_relation(h):
    """Flip relation for head tuples of `h`: two orientations are joined
    when one pair flip transforms one into the other.  The annotation is
    (new head, old head)."""

    def rel(o1, o2):
        ks = [k for k in range(len(o1)) if o1[k] != o2[k]]
        if not ks:
            return None
        j = o1[ks[0]]
        i = o2[ks[0]]
        if any(o1[k] != j or o2[k] != i for k in ks):
            return None
        if pair_flip(h, o1, i, j) != tuple(o2):
            return None
        return (i, j)

    return rel


class CertResult:
    """Outcome of a certification; truthy iff the check passed."""

    __slots__ = ("ok", "cyclic", "reason")

    def __init__(self, ok, cyclic=False, reason="ok"):
        self.ok = bool(ok)
        self.cyclic = bool(cyclic)
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "CertResult(ok=%r, cyclic=%r, reason=%r)" % (
            self.ok, self.cyclic, self.reason)


def certify_hamilton_path(fg, listing):
    """Check that `listing` walks every flip-graph vertex exactly once
    along flip edges.  The result also reports whether the endpoints are
    themselves adjacent, i.e. whether the listing is cyclic.
    """
    listing = list(listing)
    idx = []
    for k, node in enumerate(listing):
        i = fg.index.get(node)
        if i is None:
            return CertResult(False, reason="entry %d is not a vertex" % k)
        idx.append(i)
    seen = set()
    for k, i in enumerate(idx):
        if i in seen:
            return CertResult(False, reason="vertex repeated at position %d" % k)
        seen.add(i)
    if len(seen) != len(fg.nodes):
        return CertResult(
            False, reason="listing misses %d vertices" % (len(fg.nodes) - len(seen)))
    for k in range(len(idx) - 1):
        a, b = idx[k], idx[k + 1]
        if (min(a, b), max(a, b)) not in fg.annotations:
            return CertResult(
                False, reason="positions %d and %d are not flip-adjacent" % (k, k + 1))
    cyclic = False
    if len(idx) >= 2:
        a, b = idx[0], idx[-1]
        cyclic = (min(a, b), max(a, b)) in fg.annotations
    return CertResult(True, cyclic=cyclic)


def _bfs_distance(fg, src, dst):
    if src == dst:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in fg.adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                if v == dst:
                    return dist[v]
                queue.append(v)
    return None


def check_flip_distance(fg, d1, d2):
    """True iff the flip distance between two orientations equals the
    number of edges they orient oppositely."""
    i1 = fg.index.get(d1)
    i2 = fg.index.get(d2)
    if i1 is None or i2 is None:
        raise InputError("orientation is not a flip-graph vertex")
    opposite = sum(1 for a, b in d1.arcs if d2.has_arc(b, a))
    return _bfs_distance(fg, i1, i2) == opposite


def _dot_quote(text):
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"')


def flip_graph_dot(fg, path=None, labeler=str, name="flipgraph"):
    """GraphViz DOT text for a flip graph; edges used by the certified
    path carry the attribute path=1."""
    path_edges = set()
    if path:
        idx = []
        for node in path:
            i = fg.index.get(node)
            if i is None:
                raise InputError("path entry is not a flip-graph vertex")
            idx.append(i)
        for k in range(len(idx) - 1):
            a, b = idx[k], idx[k + 1]
            path_edges.add((min(a, b), max(a, b)))
    lines = ["graph %s {" % name]
    for k, node in enumerate(fg.nodes):
        lines.append("  v%d [label=%s];" % (k, _dot_quote(labeler(node))))
    for i, j in fg.edges:
        attr = " [path=1]" if (i, j) in path_edges else ""
        lines.append("  v%d -- v%d%s;" % (i, j, attr))
    lines.append("}")
    return "\n".join(lines) + "\n"

def congruence_closure(poset, seeds):
    """Smallest lattice congruence of an ARPoset containing the seed pairs,
    derived directly from the defining property: whenever x and y are
    identified, so are x v z with y v z and x ^ z with y ^ z for every z.

    Returns the partition as a tuple of sorted mask tuples, classes ordered
    by smallest member.  Requires a lattice.
    """
    if not poset.is_lattice():
        raise InputError("poset is not a lattice")
    els = poset.elements
    ix = {m: i for i, m in enumerate(els)}
    parent = list(range(len(els)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = deque()

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            pending.append((a, b))

    for x, y in seeds:
        if x not in ix or y not in ix:
            raise InputError("seed pair names an unknown reorientation")
        union(ix[x], ix[y])
    while pending:
        a, b = pending.popleft()
        x, y = els[a], els[b]
        for z in els:
            union(ix[poset.join(x, z)], ix[poset.join(y, z)])
            union(ix[poset.meet(x, z)], ix[poset.meet(y, z)])
    groups = {}
    for i, m in enumerate(els):
        groups.setdefault(find(i), []).append(m)
    return tuple(sorted((tuple(sorted(g)) for g in groups.values()),
                        key=lambda c: c[0]))


def quotient_cover_graph(partition):
    """Cover graph of the quotient poset induced by a partition of
    reorientation masks.

    Class X lies below class Y when some member of X is contained in some
    member of Y (taking the transitive closure); edges are the covers of
    that order.  Nodes are class ids, classes numbered by smallest member.
    Rejects partitions whose comparability relation is not antisymmetric.
    """
    classes = sorted((tuple(sorted(set(c))) for c in partition),
                     key=lambda c: c[0])
    k = len(classes)
    leq = [[i == j for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j:
                leq[i][j] = any(x & y == x
                                for x in classes[i] for y in classes[j])
    for mid in range(k):
        for i in range(k):
            if leq[i][mid]:
                row, mrow = leq[i], leq[mid]
                for j in range(k):
                    if mrow[j]:
                        row[j] = True
    for i in range(k):
        for j in range(i + 1, k):
            if leq[i][j] and leq[j][i]:
                raise InputError("partition does not induce a partial order")
    annotations = {}
    for i in range(k):
        for j in range(k):
            if i == j or not leq[i][j]:
                continue
            if any(z != i and z != j and leq[i][z] and leq[z][j]
                   for z in range(k)):
                continue
            annotations[(min(i, j), max(i, j))] = (i, j)
    return FlipGraph(range(k), annotations)


class ArcListingCertifier:
    """Streaming validity check for a claimed arc-flip Gray listing of
    all acyclic orientations of a graph.

    Feed one orientation bitmask per visit (bit k set iff edge k points
    from its larger endpoint to its smaller one).  Every orientation must
    be acyclic, never repeat, and differ from its predecessor by
    reversing exactly one arc of the predecessor's transitive reduction.
    finish() matches the total against the subset-convolution count.  Any
    violation raises InputError; construction raises CapExceeded when the
    orientation count would not fit under the cap.
    """

    __slots__ = ("graph", "expected", "_edges", "_n", "_seen",
                 "_prev_mask", "_prev_out", "_prev_desc")

    def __init__(self, g, cap=None):
        self.graph = g
        self.expected = count_ao_graph(g)
        limit = effective_cap(cap)
        if self.expected > limit:
            raise CapExceeded(
                "certifying %d orientations exceeds cap %d"
                % (self.expected, limit))
        self._edges = tuple(g.edges)
        self._n = g.n
        self._seen = set()
        self._prev_mask = None
        self._prev_out = self._prev_desc = None

    def visit(self, mask):
        edges = self._edges
        n = self._n
        if not 0 <= mask < 1 << len(edges):
            raise InputError("orientation mask %#x out of range" % mask)
        if mask in self._seen:
            raise InputError("orientation %#x repeats" % mask)
        out = [0] * (n + 1)
        indeg = [0] * (n + 1)
        for k, (u, v) in enumerate(edges):
            if mask >> k & 1:
                u, v = v, u
            out[u] |= 1 << v
            indeg[v] += 1
        stack = [v for v in range(1, n + 1) if not indeg[v]]
        topo = []
        while stack:
            u = stack.pop()
            topo.append(u)
            rest = out[u]
            while rest:
                bit = rest & -rest
                rest ^= bit
                w = bit.bit_length() - 1
                indeg[w] -= 1
                if not indeg[w]:
                    stack.append(w)
        if len(topo) != n:
            raise InputError("orientation %#x is cyclic" % mask)
        desc = [0] * (n + 1)
        for u in reversed(topo):
            acc = 0
            rest = out[u]
            while rest:
                bit = rest & -rest
                rest ^= bit
                acc |= desc[bit.bit_length() - 1] | bit
            desc[u] = acc
        if self._prev_mask is not None:
            diff = mask ^ self._prev_mask
            if diff == 0 or diff & (diff - 1):
                raise InputError(
                    "consecutive orientations differ in %d edges, not 1"
                    % bin(diff).count("1"))
            k = diff.bit_length() - 1
            i, j = edges[k]
            if self._prev_mask >> k & 1:
                i, j = j, i  # the arc as oriented before the flip
            jbit = 1 << j
            pdesc = self._prev_desc
            rest = self._prev_out[i] & ~jbit
            while rest:
                bit = rest & -rest
                rest ^= bit
                if pdesc[bit.bit_length() - 1] & jbit:
                    raise InputError(
                        "flipped arc %d->%d is transitive in its "
                        "predecessor" % (i, j))
        self._seen.add(mask)
        self._prev_mask = mask
        self._prev_out = out
        self._prev_desc = desc

    def finish(self):
        if len(self._seen) != self.expected:
            raise InputError(
                "listing visited %d orientations, expected %d"
                % (len(self._seen), self.expected))
        return self.expected


def certify_arc_listing(g, masks, cap=None):
    """Run ArcListingCertifier over an iterable of orientation bitmasks
    and return the certified count."""
    cert = ArcListingCertifier(g, cap=cap)
    for mask in masks:
        cert.visit(mask)
    return cert.finish()


class PairListingCertifier:
    """Streaming validity check for a claimed pair-flip Gray listing of
    all acyclic orientations of a hypergraph.

    Feed one head tuple per visit.  Every tuple must orient the
    hypergraph acyclically, never repeat, and be a single pair flip away
    from its predecessor.  finish() matches the total against brute-force
    enumeration.  Violations raise InputError.
    """

    __slots__ = ("hypergraph", "expected", "_rel", "_seen", "_prev")

    def __init__(self, h, cap=None):
        self.hypergraph = h
        self.expected = len(enumerate_ao_hyper(h, cap=cap))
        self._rel = pair_flip_relation(h)
        self._seen = set()
        self._prev = None

    def visit(self, heads):
        heads = tuple(heads)
        if heads in self._seen:
            raise InputError("orientation %r repeats" % (heads,))
        if not is_acyclic_orientation(self.hypergraph, heads):
            raise InputError("orientation %r is cyclic" % (heads,))
        if self._prev is not None and self._rel(self._prev, heads) is None:
            raise InputError(
                "consecutive orientations are not one pair flip apart")
        self._seen.add(heads)
        self._prev = heads

    def finish(self):
        if len(self._seen) != self.expected:
            raise InputError(
                "listing visited %d orientations, expected %d"
                % (len(self._seen), self.expected))
        return self.expected


def certify_pair_listing(h, listings, cap=None):
    """Run PairListingCertifier over an iterable of head tuples and
    return the certified count."""
    cert = PairListingCertifier(h, cap=cap)
    for heads in listings:
        cert.visit(heads)
    return cert.finish()
