"""Arc-flip Gray codes for acyclic orientations of chordal graphs.

The generator walks all acyclic orientations so that consecutive ones
differ in a single arc, using only a constant amount of bookkeeping per
step outside the per-sweep neighbor sort.  Vertices are swept largest
first; each sweep slides one vertex between being a source and being a
sink inside its prefix subgraph, which in permutation terms is a sequence
of minimal jumps.
"""

from functools import cmp_to_key

from .errors import InputError
from .graphs import Digraph, find_peo, is_acyclic, is_peo, relabel_graph


def decode(g, pi):
    """Orientation of g directing every edge toward the endpoint that
    appears further right in pi."""
    pi = tuple(pi)
    if sorted(pi) != list(range(1, g.n + 1)):
        raise InputError("not a permutation of 1..%d" % g.n)
    pos = [0] * (g.n + 1)
    for k, v in enumerate(pi):
        pos[v] = k
    arcs = [(a, b) if pos[a] < pos[b] else (b, a) for a, b in g.edges]
    return Digraph(g.n, arcs)


def encode(d):
    """Canonical permutation of an acyclic orientation.

    The underlying graph must be in perfect elimination order (each
    vertex's smaller neighbors form a clique).  Value i is placed by its
    orientation against its smaller neighbors: a sink is appended, a
    source is prepended, and otherwise i lands directly before its first
    out-neighbor, the unique one not reachable through another.  The
    result is a linear extension of d, and decode inverts it.
    """
    if not is_acyclic(d):
        raise InputError("orientation is cyclic")
    pi = []
    for i in range(1, d.n + 1):
        outs = [v for v in d.out[i] if v < i]
        if not outs:
            pi.append(i)
            continue
        if all(v >= i for v in d.inn[i]):
            pi.insert(0, i)
            continue
        pi.insert(min(pi.index(v) for v in outs), i)
    return tuple(pi)


class ChordalRun:
    """Single-pass iterator over all acyclic orientations of a chordal
    graph, one arc flip at a time.

    Iteration yields None for the first orientation and afterwards the
    flipped arc (u, w) in original vertex labels, meaning that edge is now
    oriented u -> w.  The current orientation can be snapshot at any visit
    through mask() and digraph(); both are valid only until the next step.
    Counter attributes `visits`, `comparisons`, `flips`, and
    `max_step_comparisons` accumulate as the run advances.
    """

    __slots__ = ("graph", "order", "visits", "comparisons", "flips",
                 "max_step_comparisons", "_rows", "_nbrs", "_pos", "_orig",
                 "_gen")

    def __init__(self, g, order):
        order = tuple(order)
        if not is_peo(g, order):
            raise InputError("order is not a perfect elimination order")
        self.graph = g
        self.order = order
        rg = relabel_graph(g, order)
        n = g.n
        self._orig = (0,) + order
        pos = [0] * (n + 1)
        for k, v in enumerate(order):
            pos[v] = k + 1
        self._pos = pos
        rows = [bytearray(n + 1) for _ in range(n + 1)]
        nbrs = [()] * (n + 1)
        for a, b in rg.edges:
            nbrs[b] = nbrs[b] + (a,)
            rows[a][b] = 1  # every arc starts oriented toward the larger end
        self._rows = rows
        self._nbrs = nbrs
        self.visits = 0
        self.comparisons = 0
        self.flips = 0
        self.max_step_comparisons = 0
        self._gen = self._iterate()

    def __iter__(self):
        return self

    def __next__(self):
        return next(self._gen)

    def mask(self):
        """Bitmask of the current orientation over the original edge
        list: bit k set iff edge k points from its larger endpoint to its
        smaller one."""
        rows = self._rows
        pos = self._pos
        mask = 0
        for k, (x, y) in enumerate(self.graph.edges):
            if rows[pos[y]][pos[x]]:
                mask |= 1 << k
        return mask

    def digraph(self):
        """Digraph snapshot of the current orientation, original labels,
        arc k corresponding to edge k."""
        rows = self._rows
        pos = self._pos
        arcs = [(x, y) if rows[pos[x]][pos[y]] else (y, x)
                for x, y in self.graph.edges]
        return Digraph(self.graph.n, arcs)

    def _sorted_path(self, vertices):
        """Current linear order of a clique, source first, by orientation
        lookups; returns the list and the number of lookups."""
        rows = self._rows
        count = [0]

        def cmp(u, v):
            count[0] += 1
            return -1 if rows[u][v] else 1

        path = sorted(vertices, key=cmp_to_key(cmp))
        return path, count[0]

    def _iterate(self):
        n = self.graph.n
        rows = self._rows
        nbrs = self._nbrs
        orig = self._orig
        movable = [j for j in range(1, n + 1) if nbrs[j]]
        prevm = [0] * (n + 1)
        last = 0
        for j in movable:
            prevm[j] = last
            last = j
        T = [None] * (n + 1)
        t = [0] * (n + 1)
        left = [True] * (n + 1)
        s = list(range(n + 1))
        self.visits = 1
        yield None
        if last == 0:
            return
        sorted_path = self._sorted_path
        while True:
            j = s[last]
            if j == 0:
                return
            tj = t[j]
            if tj == 0:
                path, c = sorted_path(nbrs[j])
                self.comparisons += c
                if c > self.max_step_comparisons:
                    self.max_step_comparisons = c
                if left[j]:
                    path.reverse()
                T[j] = path
            i = T[j][tj]
            t[j] = tj + 1
            if left[j]:
                rows[i][j] = 0
                rows[j][i] = 1
                arc = (orig[j], orig[i])
            else:
                rows[j][i] = 0
                rows[i][j] = 1
                arc = (orig[i], orig[j])
            s[last] = last
            if t[j] == len(nbrs[j]):
                left[j] = not left[j]
                t[j] = 0
                pj = prevm[j]
                s[j] = s[pj]
                s[pj] = pj
            self.visits += 1
            self.flips += 1
            yield arc


def generate(g, order=None):
    """Run the arc-flip generator over all acyclic orientations of g.

    With no order given, a perfect elimination order is computed; a
    non-chordal graph is rejected.  An explicit order is validated.  The
    first visit is the orientation directing every edge toward the later
    endpoint in the elimination order.
    """
    if order is None:
        order = find_peo(g)
        if order is None:
            raise InputError("graph is not chordal")
    return ChordalRun(g, order)


def cost_counters(run):
    """(visits, comparisons, flips) accumulated by a run."""
    return (run.visits, run.comparisons, run.flips)
