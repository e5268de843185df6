"""Hypergraphs, head orientations, their posets, pair flips, and
hyperfect elimination orders.

An orientation assigns each hyperedge a head vertex inside it; it is
represented as a plain tuple of heads indexed like the hyperedge list.
An orientation is acyclic when the digraph of arcs v -> head (for every
non-head member v of every hyperedge) has no directed cycle; singleton
hyperedges never contribute arcs.
"""

from itertools import combinations, product

from .errors import CapExceeded, InputError
from .graphs import Digraph


def _bits(mask):
    """Set bit positions of mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Hypergraph:
    """Hypergraph on vertices 1..n with distinct nonempty hyperedges.

    Hyperedges keep their input order; each is stored as a sorted vertex
    tuple in ``edges`` and as a bitmask in ``masks``.  ``degree[v]`` counts
    the hyperedges containing v and ``max_degree`` is its maximum.
    """

    __slots__ = ("n", "edges", "masks", "degree", "max_degree", "_mask_set")

    def __init__(self, n, edges):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        self.n = n
        elist = []
        masks = []
        mask_set = set()
        degree = [0] * (n + 1)
        for e in edges:
            ev = tuple(e)
            vs = sorted(set(ev))
            if not vs:
                raise InputError("empty hyperedge")
            if len(vs) != len(ev):
                raise InputError("repeated vertex in hyperedge %r" % (ev,))
            if vs[0] < 1 or vs[-1] > n:
                raise InputError("hyperedge vertex out of range: %r" % (tuple(e),))
            m = 0
            for v in vs:
                m |= 1 << v
            if m in mask_set:
                raise InputError("duplicate hyperedge %r" % (vs,))
            mask_set.add(m)
            elist.append(tuple(vs))
            masks.append(m)
            for v in vs:
                degree[v] += 1
        self.edges = tuple(elist)
        self.masks = tuple(masks)
        self.degree = tuple(degree)
        self.max_degree = max(degree[1:], default=0)
        self._mask_set = frozenset(mask_set)

    def __repr__(self):
        return "Hypergraph(n=%d, m=%d)" % (self.n, len(self.edges))

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self._mask_set == other._mask_set

    def __hash__(self):
        return hash((self.n, self._mask_set))

    def has_edge_mask(self, mask):
        return mask in self._mask_set


def check_orientation(h, heads):
    """Validate a head vector for h and return it as a tuple."""
    heads = tuple(heads)
    if len(heads) != len(h.edges):
        raise InputError("need exactly one head per hyperedge")
    for k, v in enumerate(heads):
        if not isinstance(v, int) or v < 1 or v > h.n or not h.masks[k] >> v & 1:
            raise InputError("head %r is not in hyperedge %r" % (v, h.edges[k]))
    return heads


def _arc_set(h, heads):
    arcs = set()
    for k, head in enumerate(heads):
        for v in h.edges[k]:
            if v != head:
                arcs.add((v, head))
    return arcs


def is_acyclic_orientation(h, heads):
    """True iff the arc digraph of the orientation has no directed cycle."""
    heads = check_orientation(h, heads)
    arcs = _arc_set(h, heads)
    n = h.n
    indeg = [0] * (n + 1)
    out = [[] for _ in range(n + 1)]
    for i, j in arcs:
        out[i].append(j)
        indeg[j] += 1
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


def orientation_digraph(h, heads):
    """The digraph of arcs v -> head over all hyperedges, deduplicated.

    Defined whenever the arc set is a simple digraph; a cyclic orientation
    can produce antiparallel arcs, which are rejected.
    """
    heads = check_orientation(h, heads)
    return Digraph(h.n, sorted(_arc_set(h, heads)))


class OrientationPoset:
    """The poset induced by an acyclic orientation.

    ``above[i]`` is a bitmask with bit j set iff i < j in the poset;
    ``covers`` holds the pairs (i, j) with j covering i.
    """

    __slots__ = ("n", "above", "covers")

    def __init__(self, n, above, covers):
        self.n = n
        self.above = above
        self.covers = covers

    def less(self, i, j):
        return bool(self.above[i] >> j & 1)

    def comparable(self, i, j):
        return self.less(i, j) or self.less(j, i)


def poset_of(h, heads):
    """The orientation poset: transitive closure of v < head relations.

    Rejects cyclic orientations.
    """
    heads = check_orientation(h, heads)
    n = h.n
    out = [0] * (n + 1)
    indeg = [0] * (n + 1)
    arcs = _arc_set(h, heads)
    for i, j in arcs:
        out[i] |= 1 << j
        indeg[j] += 1
    stack = [v for v in range(1, n + 1) if indeg[v] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in _bits(out[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) != n:
        raise InputError("orientation is not acyclic")
    above = [0] * (n + 1)
    for v in reversed(order):
        m = 0
        for w in _bits(out[v]):
            m |= (1 << w) | above[w]
        above[v] = m
    covers = set()
    for i in range(1, n + 1):
        skip = 0
        for z in _bits(above[i]):
            skip |= above[z]
        for j in _bits(above[i] & ~skip):
            covers.add((i, j))
    return OrientationPoset(n, tuple(above), frozenset(covers))


def pair_flip(h, heads, i, j):
    """Reassign every head equal to j to i on hyperedges containing i.

    Returns the new head vector when it differs from the old one and is
    acyclic, else None.  For acyclic input this succeeds exactly when j
    covers i in the orientation poset.
    """
    heads = check_orientation(h, heads)
    if i == j or not (1 <= i <= h.n and 1 <= j <= h.n):
        raise InputError("pair flip needs two distinct vertices in range")
    ibit = 1 << i
    new = list(heads)
    changed = False
    for k, head in enumerate(heads):
        if head == j and h.masks[k] & ibit:
            new[k] = i
            changed = True
    if not changed:
        return None
    new = tuple(new)
    if not is_acyclic_orientation(h, new):
        return None
    return new


def flippable_pairs(h, heads):
    """The pairs (i, j) with j covering i in the orientation poset.

    These are exactly the pairs on which pair_flip succeeds.
    """
    return sorted(poset_of(h, heads).covers)


def restrict(h, i):
    """Sub-hypergraph on vertices 1..i keeping hyperedges inside [i]."""
    if not 0 <= i <= h.n:
        raise InputError("restriction level out of range")
    limit = (1 << (i + 1)) - 2
    return Hypergraph(i, [e for k, e in enumerate(h.edges)
                          if not h.masks[k] & ~limit])


def relabel_hypergraph(h, order):
    """Relabel h so that vertex order[k] becomes k+1.

    Hyperedge k of the result corresponds to hyperedge k of h, so head
    vectors keep their index meaning (head values must be mapped).
    """
    order = tuple(order)
    if sorted(order) != list(range(1, h.n + 1)):
        raise InputError("order is not a permutation of 1..%d" % h.n)
    newlab = [0] * (h.n + 1)
    for k, v in enumerate(order):
        newlab[v] = k + 1
    return Hypergraph(h.n, [tuple(sorted(newlab[v] for v in e)) for e in h.edges])


def _elim_ok(h, smask, v):
    """Condition for v to be eliminated last from the vertex set smask:
    for all hyperedges A, B inside smask containing v (A = B allowed) and
    all distinct a in A-v, b in B-v, some hyperedge X satisfies
    {a,b} <= X <= (A|B)-v."""
    vbit = 1 << v
    level = [m for m in h.masks if m & vbit and not m & ~smask]
    masks = h.masks
    for am in level:
        arest = am & ~vbit
        for bm in level:
            target = (am | bm) & ~vbit
            for a in _bits(arest):
                for b in _bits(bm & ~vbit):
                    if a == b:
                        continue
                    ab = (1 << a) | (1 << b)
                    if not any(x & ab == ab and not x & ~target for x in masks):
                        return False
    return True


def is_heo(h, order):
    """Check that relabeling by ``order`` puts h in hyperfect elimination
    order: at every level i, the elimination condition holds for vertex i
    within the restriction to [i]."""
    order = tuple(order)
    rh = relabel_hypergraph(h, order)
    smask = (1 << (rh.n + 1)) - 2
    for i in range(rh.n, 0, -1):
        if not _elim_ok(rh, smask, i):
            return False
        smask &= ~(1 << i)
    return True


def find_heo(h):
    """A vertex order whose relabeling is a hyperfect elimination order,
    or None.

    Backtracking over candidate last vertices, greedily trying the
    largest candidate first so an input already in hyperfect elimination
    order keeps the identity; failed vertex sets are memoized.
    """
    full = (1 << (h.n + 1)) - 2
    failed = set()
    tail = []

    def search(smask):
        if smask == 0:
            return True
        if smask in failed:
            return False
        for v in reversed(_bits(smask)):
            if _elim_ok(h, smask, v):
                tail.append(v)
                if search(smask & ~(1 << v)):
                    return True
                tail.pop()
        failed.add(smask)
        return False

    if search(full):
        return tuple(reversed(tail))
    return None


def check_unique_parent_child(h):
    """Brute-force oracle: in every acyclic orientation of every prefix
    restriction of h, the last vertex has at most one cover and at most
    one cocover in the orientation poset."""
    for i in range(1, h.n + 1):
        hi = restrict(h, i)
        if not any(m >> i & 1 for m in hi.masks):
            continue
        for heads in product(*hi.edges):
            if not is_acyclic_orientation(hi, heads):
                continue
            p = poset_of(hi, heads)
            ups = 0
            downs = 0
            for a, b in p.covers:
                if a == i:
                    ups += 1
                if b == i:
                    downs += 1
            if ups > 1 or downs > 1:
                return False
    return True


def is_building_set(h):
    """True iff h contains every singleton and the union of any two
    intersecting hyperedges."""
    for v in range(1, h.n + 1):
        if not h.has_edge_mask(1 << v):
            return False
    for ma, mb in combinations(h.masks, 2):
        if ma & mb and not h.has_edge_mask(ma | mb):
            return False
    return True


def is_chordal_building_set(h):
    """True iff h is a building set in which every prefix of every sorted
    hyperedge (its s smallest members, any s) is again a hyperedge."""
    if not is_building_set(h):
        return False
    for e in h.edges:
        m = 0
        for v in e[:-1]:
            m |= 1 << v
            if not h.has_edge_mask(m):
                return False
    return True


def graphical_building_set(g, cap=None):
    """The hypergraph of all connected induced vertex subsets of g.

    Hyperedges are emitted sorted by size then lexicographically.  Raises
    CapExceeded when more than ``cap`` subsets exist (default 10**6).
    """
    if cap is None:
        cap = 10 ** 6
    found = set()
    frontier = []
    for v in range(1, g.n + 1):
        m = 1 << v
        found.add(m)
        frontier.append(m)
    while frontier:
        m = frontier.pop()
        boundary = 0
        for v in _bits(m):
            for w in g.adj[v]:
                boundary |= 1 << w
        for w in _bits(boundary & ~m):
            nm = m | (1 << w)
            if nm not in found:
                if len(found) >= cap:
                    raise CapExceeded(
                        "graphical building set exceeds cap of %d" % cap)
                found.add(nm)
                frontier.append(nm)
    edges = [tuple(_bits(m)) for m in found]
    edges.sort(key=lambda e: (len(e), e))
    return Hypergraph(g.n, edges)


def orientation_from_permutation(h, pi):
    """Orientation heading every hyperedge at its member that appears
    furthest right in the permutation pi."""
    pi = tuple(pi)
    if sorted(pi) != list(range(1, h.n + 1)):
        raise InputError("pi is not a permutation of 1..%d" % h.n)
    pos = [0] * (h.n + 1)
    for k, v in enumerate(pi):
        pos[v] = k
    return tuple(max(e, key=lambda v: pos[v]) for e in h.edges)


def in_degree_sequence(h, heads):
    """Component i counts the hyperedges headed at i."""
    heads = check_orientation(h, heads)
    d = [0] * (h.n + 1)
    for v in heads:
        d[v] += 1
    return tuple(d[1:])


def orientation_to_elim_forest(bg, heads):
    """The parent array of the orientation poset of a building set.

    For building sets the poset is a forest: parent[v-1] is the unique
    cover of v, or 0 for roots.  Rejects non-building-set input and
    cyclic orientations.
    """
    if not is_building_set(bg):
        raise InputError("hypergraph is not a building set")
    p = poset_of(bg, heads)
    parent = [0] * (bg.n + 1)
    for a, b in p.covers:
        if parent[a]:
            raise InputError("orientation poset is not a forest")
        parent[a] = b
    return tuple(parent[1:])


def elim_forest_to_orientation(bg, parent):
    """Inverse of orientation_to_elim_forest.

    Each hyperedge is headed at its member that is a forest ancestor of
    all its members.  Rejects non-building-set input and parent arrays
    that do not match any acyclic orientation.
    """
    if not is_building_set(bg):
        raise InputError("hypergraph is not a building set")
    parent = tuple(parent)
    n = bg.n
    if len(parent) != n or any(p < 0 or p > n for p in parent):
        raise InputError("parent array must list n entries in 0..n")
    # ancestor masks, self included; walk length bounded to catch cycles
    anc = [0] * (n + 1)
    for v in range(1, n + 1):
        m = 0
        u = v
        steps = 0
        while u:
            m |= 1 << u
            u = parent[u - 1]
            steps += 1
            if steps > n:
                raise InputError("parent array contains a cycle")
        anc[v] = m
    heads = []
    for k, e in enumerate(bg.edges):
        common = anc[e[0]]
        for v in e[1:]:
            common &= anc[v]
        head = common & bg.masks[k]
        if not head or head & (head - 1):
            raise InputError("forest does not match the building set")
        heads.append(head.bit_length() - 1)
    heads = tuple(heads)
    if not is_acyclic_orientation(bg, heads):
        raise InputError("forest does not induce an acyclic orientation")
    return heads
