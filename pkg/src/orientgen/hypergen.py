"""Pair-flip Gray codes for acyclic orientations of hypergraphs in
hyperfect elimination order, with the specialization to elimination
forests of chordal graphs.

The engine mirrors the chordal one: vertices are swept largest first, and
the swept vertex walks down its restriction poset from maximal to minimal
and back, one cover at a time.  Each step is realized as a single pair
flip of heads, and in permutation terms as a minimal jump.
"""

from .errors import InputError
from .graphs import find_peo, relabel_graph
from .hypergraphs import (
    check_orientation,
    find_heo,
    graphical_building_set,
    is_acyclic_orientation,
    is_heo,
    orientation_from_permutation,
    orientation_to_elim_forest,
    pair_flip,
    poset_of,
    relabel_hypergraph,
    restrict,
)


def decode(h, pi):
    """Orientation heading every hyperedge at its member appearing
    furthest right in pi."""
    return orientation_from_permutation(h, pi)


def encode(h, o):
    """Canonical permutation of an acyclic orientation of a hypergraph in
    hyperfect elimination order (identity labeling).

    Vertices are placed in increasing order: one that is maximal in its
    restriction poset is appended, a minimal one is prepended, and any
    other lands directly before its unique cover.  The result is a linear
    extension of the orientation's poset, and decode inverts it.
    """
    n = h.n
    if not is_heo(h, tuple(range(1, n + 1))):
        raise InputError("hypergraph is not in hyperfect elimination order")
    o = check_orientation(h, o)
    if not is_acyclic_orientation(h, o):
        raise InputError("orientation is cyclic")
    pi = []
    for i in range(1, n + 1):
        sub = restrict(h, i)
        heads = tuple(o[k] for k, e in enumerate(h.edges)
                      if max(e) <= i)
        poset = poset_of(sub, heads)
        above = poset.above[i]
        if not above:
            pi.append(i)
            continue
        covers = [b for a, b in poset.covers if a == i]
        if not any(b == i for _, b in poset.covers):
            # i has nothing below: minimal
            pi.insert(0, i)
            continue
        assert len(covers) == 1  # guaranteed by the elimination order
        pi.insert(pi.index(covers[0]), i)
    return tuple(pi)


class HyperRun:
    """Single-pass iterator over all acyclic orientations of a hypergraph
    in hyperfect elimination order, one pair flip at a time.

    Iteration yields None for the first orientation and afterwards the
    flip pair (i, j) in original vertex labels: every hyperedge that was
    headed j and contains i is now headed i.  Snapshots of the current
    state come from heads() and permutation(); both are valid only until
    the next step.
    """

    __slots__ = ("hypergraph", "order", "visits", "flips", "_h", "_orig",
                 "_heads", "_pi", "_pos", "_gen")

    def __init__(self, h, order):
        order = tuple(order)
        if not is_heo(h, order):
            raise InputError("order is not a hyperfect elimination order")
        self.hypergraph = h
        self.order = order
        self._h = relabel_hypergraph(h, order)
        self._orig = (0,) + order
        n = h.n
        self._heads = [max(e) for e in self._h.edges]
        self._pi = list(range(1, n + 1))
        self._pos = list(range(-1, n))
        self.visits = 0
        self.flips = 0
        self._gen = self._iterate()

    def __iter__(self):
        return self

    def __next__(self):
        return next(self._gen)

    def heads(self):
        """Current orientation as a head tuple over the original edge
        list, in original vertex labels."""
        orig = self._orig
        return tuple(orig[v] for v in self._heads)

    def permutation(self):
        """Current canonical permutation, in elimination coordinates."""
        return tuple(self._pi)

    def _iterate(self):
        h = self._h
        n = h.n
        edges = h.edges
        heads = self._heads
        pi = self._pi
        pos = self._pos
        orig = self._orig
        # an edge is restricted at its own maximum; singletons never move
        redges = [[] for _ in range(n + 1)]
        incident = [[] for _ in range(n + 1)]
        for k, e in enumerate(edges):
            if len(e) >= 2:
                redges[max(e)].append(k)
            for v in e:
                incident[v].append(k)
        movable = [j for j in range(1, n + 1) if redges[j]]
        prevm = [0] * (n + 1)
        last = 0
        for j in movable:
            prevm[j] = last
            last = j
        down = [True] * (n + 1)
        s = list(range(n + 1))
        self.visits = 1
        yield None
        if last == 0:
            return
        while True:
            j = s[last]
            if j == 0:
                return
            if __debug__:
                prev = tuple(heads)
            p = pos[j]
            if down[j]:
                # partner: rightmost member below j, its unique cocover
                u = 0
                best = -1
                for k in redges[j]:
                    if heads[k] == j:
                        for v in edges[k]:
                            if v != j and pos[v] > best:
                                best = pos[v]
                                u = v
                for k in incident[u]:
                    if heads[k] == j:
                        heads[k] = u
                still = any(heads[k] == j for k in redges[j])
                if still:
                    q = pos[u]  # j keeps something below: settle on u's slot
                else:
                    q = p - 1  # j is now minimal: park left of all smaller
                    while q >= 0 and pi[q] < j:
                        q -= 1
                    q += 1
                del pi[p]
                pi.insert(q, j)
                for x in range(q, p + 1):
                    pos[pi[x]] = x
                ended = not still
                assert pair_flip(h, prev, u, j) == tuple(heads)
                flip = (orig[u], orig[j])
            else:
                # partner: leftmost head above j, its unique cover
                c = 0
                best = n + 1
                for k in redges[j]:
                    hk = heads[k]
                    if hk != j and pos[hk] < best:
                        best = pos[hk]
                        c = hk
                for k in incident[j]:
                    if heads[k] == c:
                        heads[k] = j
                nxt = 0
                best = n + 1
                for k in redges[j]:
                    hk = heads[k]
                    if hk != j and pos[hk] < best:
                        best = pos[hk]
                        nxt = hk
                if nxt:
                    q = pos[nxt] - 1  # settle directly before the new cover
                else:
                    q = p + 1  # j is now maximal: park right of all smaller
                    while q < n and pi[q] < j:
                        q += 1
                    q -= 1
                del pi[p]
                pi.insert(q, j)
                for x in range(p, q + 1):
                    pos[pi[x]] = x
                ended = not nxt
                assert pair_flip(h, prev, j, c) == tuple(heads)
                flip = (orig[j], orig[c])
            assert tuple(heads) == orientation_from_permutation(h, pi)
            s[last] = last
            if ended:
                down[j] = not down[j]
                pj = prevm[j]
                s[j] = s[pj]
                s[pj] = pj
            self.visits += 1
            self.flips += 1
            yield flip


def generate(h, order=None):
    """Run the pair-flip generator over all acyclic orientations of h.

    With no order given, a hyperfect elimination order is computed; a
    hypergraph that has none is rejected.  An explicit order is
    validated.  The first visit heads every hyperedge at the vertex
    eliminated last.
    """
    if order is None:
        order = find_heo(h)
        if order is None:
            raise InputError("hypergraph has no hyperfect elimination order")
    return HyperRun(h, order)


def generate_elim_forests(g):
    """Iterate over the elimination forests of a chordal graph, one
    rotation at a time.

    Forests are emitted as parent tuples indexed by vertex (entry v-1 is
    the parent of v, 0 for roots), obtained from the acyclic orientations
    of the graphical building set of g.
    """
    order = find_peo(g)
    if order is None:
        raise InputError("graph is not chordal")
    rg = relabel_graph(g, order)
    bg = graphical_building_set(rg)
    run = HyperRun(bg, tuple(range(1, g.n + 1)))
    orig = (0,) + order
    for _ in run:
        parent = orientation_to_elim_forest(bg, run.heads())
        out = [0] * g.n
        for v in range(1, g.n + 1):
            out[orig[v] - 1] = orig[parent[v - 1]]
        yield tuple(out)
