"""Acyclic reorientation lattices, their congruences, and quotient paths.

A reorientation of a reference digraph is stored as a bitmask over the
reference's arc list (bit k set means arc k is reversed).  Reorientations
are ordered by containment of their flipped arc sets; the poset is a
lattice exactly when the reference is vertebrate, and the Hamilton-path
generator below applies to peo-consistent references.
"""

from collections import defaultdict
from itertools import combinations

from .chordal import decode as _perm_decode, encode as _perm_encode
from .errors import InputError
from .graphs import (
    Digraph,
    descendant_masks,
    is_acyclic,
    is_peo,
    is_simplicial,
    orient,
    orientation_mask,
)
from .jumps import LanguageOracle, algorithm_J
from .oracle import enumerate_ao_graph


def is_vertebrate(d):
    """True iff the transitive reduction of every induced subgraph of d is
    a forest (ignoring arc directions).  Cyclic digraphs are never
    vertebrate.
    """
    if not is_acyclic(d):
        return False
    # any acyclic digraph on at most 3 vertices reduces to a forest, so
    # only larger vertex subsets can fail
    for size in range(4, d.n + 1):
        for sub in combinations(range(1, d.n + 1), size):
            if not _reduces_to_forest(d, frozenset(sub)):
                return False
    return True


def _reduces_to_forest(d, sub):
    arcs = [(i, j) for (i, j) in d.arcs if i in sub and j in sub]
    out = {v: [] for v in sub}
    for i, j in arcs:
        out[i].append(j)
    reach = {}
    for v in sub:
        seen = 0
        stack = list(out[v])
        while stack:
            w = stack.pop()
            bit = 1 << w
            if not seen & bit:
                seen |= bit
                stack.extend(out[w])
        reach[v] = seen
    parent = {v: v for v in sub}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in arcs:
        if any(w != j and reach[w] >> j & 1 for w in out[i]):
            continue
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def is_filled(d):
    """True iff along every directed path whose endpoints are joined by an
    arc, all vertex pairs are joined by arcs.

    It suffices to check single intermediate vertices: a vertex v strictly
    between the endpoints of an arc (reachable from one, reaching the
    other) must carry both forward arcs; the full condition follows by
    induction on subpaths.  Rejects cyclic input.
    """
    masks = descendant_masks(d)
    for i, j in d.arcs:
        between = masks[i] & ~(1 << j)
        for v in range(1, d.n + 1):
            if between >> v & 1 and masks[v] >> j & 1:
                if not (d.has_arc(i, v) and d.has_arc(v, j)):
                    return False
    return True


def peo_consistent_order(d):
    """A vertex order witnessing peo-consistency of d, or None.

    order[k] is the vertex receiving label k+1, so the last entry is
    extracted first.  Each extracted vertex must be a source or a sink of
    the remaining digraph and simplicial in its underlying graph.  Greedy
    extraction can dead-end, so the search backtracks over candidates and
    memoizes vertex sets that admit no extraction.  Larger vertices are
    tried first; a digraph already labeled consistently keeps its labels.
    """
    if not is_acyclic(d):
        return None
    g = d.underlying()
    failed = set()
    picked = []

    def extract(rem):
        if not rem:
            return True
        if rem in failed:
            return False
        for v in sorted(rem, reverse=True):
            if d.out[v] & rem and d.inn[v] & rem:
                continue
            nb = sorted(g.adj[v] & rem)
            if any(not g.has_edge(a, b) for a, b in combinations(nb, 2)):
                continue
            picked.append(v)
            if extract(rem - {v}):
                return True
            picked.pop()
        failed.add(rem)
        return False

    if extract(frozenset(range(1, d.n + 1))):
        return tuple(reversed(picked))
    return None


def is_identity_peo_consistent(d):
    """True iff the labeling 1..n of d itself witnesses peo-consistency."""
    rem = (1 << (d.n + 1)) - 2
    g = d.underlying()
    for v in range(d.n, 0, -1):
        rem ^= 1 << v
        outs = [w for w in d.out[v] if rem >> w & 1]
        inns = [w for w in d.inn[v] if rem >> w & 1]
        if outs and inns:
            return False
        nb = sorted(w for w in g.adj[v] if rem >> w & 1)
        if any(not g.has_edge(a, b) for a, b in combinations(nb, 2)):
            return False
    return True


def classify(d):
    """The finest class of d among not_acyclic, acyclic, vertebrate,
    peo_consistent, and skeletal.
    """
    if not is_acyclic(d):
        return "not_acyclic"
    if not is_vertebrate(d):
        return "acyclic"
    if peo_consistent_order(d) is None:
        # vertebrate and filled digraphs are always peo-consistent
        assert not is_filled(d)
        return "vertebrate"
    if is_filled(d):
        return "skeletal"
    return "peo_consistent"


_MISS = object()


class ARPoset:
    """All acyclic reorientations of a reference digraph, ordered by
    containment of the flipped arc sets.

    Covers differ in exactly one bit and the poset is graded by popcount.
    Joins and meets are found by brute-force bound search and cached;
    uniqueness can fail when the reference is not vertebrate, in which
    case ``join``/``meet`` return None and ``lattice_witness`` records an
    offending pair.  Immutable and shareable once built.
    """

    __slots__ = ("reference", "graph", "base", "elements", "m", "_ix",
                 "_up", "_join", "_meet", "_lattice", "lattice_witness",
                 "_peo_ok")

    def __init__(self, reference, elements):
        self.reference = reference
        self.graph = reference.underlying()
        self.base = orientation_mask(self.graph, reference)
        self.m = len(reference.arcs)
        self.elements = tuple(sorted(elements))
        self._ix = {f: k for k, f in enumerate(self.elements)}
        if len(self._ix) != len(self.elements):
            raise InputError("duplicate reorientation in element list")
        if 0 not in self._ix:
            raise InputError("element list lacks the reference orientation")
        up = [[] for _ in self.elements]
        for f in self.elements:
            for k in range(self.m):
                bit = 1 << k
                if not f & bit and f | bit in self._ix:
                    up[self._ix[f]].append(f | bit)
        self._up = tuple(tuple(u) for u in up)
        self._join = {}
        self._meet = {}
        self._lattice = None
        self.lattice_witness = None
        self._peo_ok = None

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "ARPoset(n=%d, %d reorientations)" % (
            self.reference.n, len(self.elements))

    def index(self, mask):
        try:
            return self._ix[mask]
        except KeyError:
            raise InputError("unknown reorientation %#x" % mask) from None

    @staticmethod
    def leq(a, b):
        return a & b == a

    def digraph_of(self, mask):
        """The reorientation as a Digraph; arc k keeps position k."""
        self.index(mask)
        return orient(self.graph, self.base ^ mask)

    def upper_covers(self, mask):
        return self._up[self.index(mask)]

    def covers(self):
        """All cover pairs (lower, upper)."""
        return tuple((f, g) for k, f in enumerate(self.elements)
                     for g in self._up[k])

    def join(self, x, y):
        """Least upper bound of x and y, or None if it is not unique."""
        key = (x, y) if x <= y else (y, x)
        hit = self._join.get(key, _MISS)
        if hit is not _MISS:
            return hit
        self.index(x), self.index(y)
        both = x | y
        cands = [z for z in self.elements if z & both == both]
        best = min(cands, key=_popcount)
        val = best if all(z & best == best for z in cands) else None
        self._join[key] = val
        return val

    def meet(self, x, y):
        """Greatest lower bound of x and y, or None if it is not unique."""
        key = (x, y) if x <= y else (y, x)
        hit = self._meet.get(key, _MISS)
        if hit is not _MISS:
            return hit
        self.index(x), self.index(y)
        both = x & y
        cands = [z for z in self.elements if z & both == z]
        best = max(cands, key=_popcount)
        val = best if all(z & best == z for z in cands) else None
        self._meet[key] = val
        return val

    def is_lattice(self):
        """True iff every pair has a unique join and meet; a failing pair,
        if any, is kept in ``lattice_witness``.

        Containment implies numeric order on masks, so a least common
        upper bound, when one exists, is the numerically smallest common
        upper bound; it suffices to test whether everything above that
        candidate is exactly the common upper set (dually for meets).
        """
        if self._lattice is None:
            els = self.elements
            k = len(els)
            up = [0] * k
            down = [0] * k
            for i, x in enumerate(els):
                ui = di = 0
                for j, y in enumerate(els):
                    xy = x & y
                    if xy == x:
                        ui |= 1 << j
                    if xy == y:
                        di |= 1 << j
                up[i] = ui
                down[i] = di
            result = True
            for i in range(k):
                for j in range(i + 1, k):
                    cu = up[i] & up[j]
                    z = (cu & -cu).bit_length() - 1
                    if cu == 0 or up[z] != cu:
                        self.lattice_witness = (els[i], els[j])
                        result = False
                        break
                    cd = down[i] & down[j]
                    z = cd.bit_length() - 1
                    if cd == 0 or down[z] != cd:
                        self.lattice_witness = (els[i], els[j])
                        result = False
                        break
                if not result:
                    break
            self._lattice = result
        return self._lattice

    def _require_peo(self):
        if self._peo_ok is None:
            self._peo_ok = is_peo(self.graph, tuple(range(1, self.graph.n + 1)))
        if not self._peo_ok:
            raise InputError(
                "reference labeling is not a perfect elimination order")

    def permutation_of(self, mask):
        """The permutation encoding of a reorientation; requires the
        reference labeling to be a perfect elimination order.
        """
        self._require_peo()
        return _perm_encode(self.digraph_of(mask))

    def mask_of(self, pi):
        """Inverse of ``permutation_of``."""
        self._require_peo()
        return orientation_mask(self.graph, _perm_decode(self.graph, pi)) ^ self.base


def _popcount(x):
    return x.bit_count()


def build_ar_poset(d, cap=None):
    """Enumerate the acyclic reorientations of d into an ARPoset.

    Raises InputError on cyclic input and CapExceeded when the orientation
    count bound 2^m exceeds the cap.
    """
    if not is_acyclic(d):
        raise InputError("reference digraph is not acyclic")
    g = d.underlying()
    base = orientation_mask(g, d)
    return ARPoset(d, [orientation_mask(g, o) ^ base
                       for o in enumerate_ao_graph(g, cap=cap)])


def _off_arcs(d):
    """Indices of arcs avoiding the last vertex, and the mask of the rest."""
    keep = []
    nmask = 0
    for k, (i, j) in enumerate(d.arcs):
        if i == d.n or j == d.n:
            nmask |= 1 << k
        else:
            keep.append(k)
    return keep, nmask


def _project(mask, keep):
    out = 0
    for kp, k in enumerate(keep):
        if mask >> k & 1:
            out |= 1 << kp
    return out


def _embed(mask, keep):
    out = 0
    for kp, k in enumerate(keep):
        if mask >> kp & 1:
            out |= 1 << k
    return out


def rails(p):
    """The rails of the poset, keyed by the shared off-rail mask.

    A rail collects the reorientations that agree on every arc not
    incident to the last vertex n; each is a chain from the reorientation
    with all of n's arcs as in the reference to the one with all of them
    reversed, and holds degree(n)+1 elements.  Requires n simplicial.
    """
    d = p.reference
    if d.n and not is_simplicial(p.graph, d.n):
        raise InputError("rails require the last vertex to be simplicial")
    _, nmask = _off_arcs(d)
    groups = defaultdict(list)
    for f in p.elements:
        groups[f & ~nmask].append(f)
    deg = nmask.bit_count()
    for members in groups.values():
        members.sort(key=_popcount)
        assert len(members) == deg + 1
        assert all(a & b == a and (a ^ b).bit_count() == 1
                   for a, b in zip(members, members[1:]))
    return dict(groups)


class Congruence:
    """A partition of an ARPoset's elements into classes.

    Classes are sorted tuples of reorientation masks, numbered by their
    smallest member; ``class_of`` maps each mask to its class id.  The
    constructor checks partition shape only; lattice-congruence validity
    is the job of ``validate_congruence``.
    """

    __slots__ = ("poset", "classes", "class_of")

    def __init__(self, poset, parts):
        seen = set()
        classes = []
        for part in parts:
            cls = tuple(sorted(set(part)))
            if not cls:
                raise InputError("empty congruence class")
            for m in cls:
                poset.index(m)
                if m in seen:
                    raise InputError(
                        "reorientation %#x appears in two classes" % m)
                seen.add(m)
            classes.append(cls)
        if len(seen) != len(poset.elements):
            raise InputError("congruence does not cover every reorientation")
        classes.sort(key=lambda c: c[0])
        self.poset = poset
        self.classes = tuple(classes)
        self.class_of = {m: i for i, cls in enumerate(classes) for m in cls}

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return "Congruence(%d classes over %d reorientations)" % (
            len(self.classes), len(self.poset.elements))


def identity_congruence(p):
    """The congruence whose classes are all singletons."""
    return Congruence(p, ([m] for m in p.elements))


def validate_congruence(p, part):
    """True iff the partition is a lattice congruence of p.

    Every class must be an interval, and the class of a join or meet must
    depend only on the classes of the operands.  Requires p to be a
    lattice; a malformed partition raises InputError.
    """
    if not p.is_lattice():
        raise InputError("reference poset is not a lattice")
    c = part if isinstance(part, Congruence) else Congruence(p, part)
    if c.poset is not p:
        raise InputError("congruence belongs to a different poset")
    for cls in c.classes:
        mins = [x for x in cls if not any(y != x and y & x == y for y in cls)]
        maxs = [x for x in cls if not any(y != x and x & y == x for y in cls)]
        if len(mins) != 1 or len(maxs) != 1:
            return False
        lo, hi = mins[0], maxs[0]
        span = sum(1 for z in p.elements if z & lo == lo and z & hi == z)
        if span != len(cls):
            return False
    jmap = {}
    mmap = {}
    cls_of = c.class_of
    els = p.elements
    for i, x in enumerate(els):
        cx = cls_of[x]
        for y in els[i + 1:]:
            cy = cls_of[y]
            key = (cx, cy) if cx <= cy else (cy, cx)
            cj = cls_of[p.join(x, y)]
            if jmap.setdefault(key, cj) != cj:
                return False
            cm = cls_of[p.meet(x, y)]
            if mmap.setdefault(key, cm) != cm:
                return False
    return True


def _polygons(p):
    """Diamond and hexagon intervals of a polygonal lattice.

    For every pair of upper covers b, c of a common element a, the
    interval [a, b v c] must be a diamond ("d", a, b, c, top) or a hexagon
    ("h", a, b, b', c, c', top) with chains a < b < b' < top and
    a < c < c' < top.
    """
    out = []
    for a in p.elements:
        for b, c in combinations(p.upper_covers(a), 2):
            top = p.join(b, c)
            span = [z for z in p.elements if z & a == a and z & top == z]
            if len(span) == 4:
                out.append(("d", a, b, c, top))
                continue
            assert len(span) == 6
            rest = [z for z in span if z not in (a, b, c, top)]
            bb = next(z for z in rest if z & b == b)
            cc = next(z for z in rest if z & c == c)
            assert bb != cc
            out.append(("h", a, b, bb, c, cc, top))
    return out


def forcing_closure(p, seeds):
    """Smallest lattice congruence of p containing the seed pairs.

    Identifications propagate through the diamond and hexagon rules and
    through interval closure until a fixpoint; those rules generate every
    forced identification only when the reference is skeletal, so other
    references are rejected (supply a full partition instead).  ``seeds``
    is an iterable of (mask, mask) pairs.
    """
    if classify(p.reference) != "skeletal":
        raise InputError("forcing rules are complete only for a skeletal "
                         "reference; supply a full partition instead")
    assert p.is_lattice()
    els = p.elements
    ix = p._ix
    parent = list(range(len(els)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
        return True

    for x, y in seeds:
        union(p.index(x), p.index(y))

    polygons = [(kind, *map(ix.__getitem__, masks))
                for kind, *masks in _polygons(p)]
    changed = True
    while changed:
        changed = False
        for poly in polygons:
            if poly[0] == "d":
                _, a, b, c, top = poly
                if find(a) == find(c) or find(b) == find(top):
                    changed |= union(a, c)
                    changed |= union(b, top)
                if find(a) == find(b) or find(c) == find(top):
                    changed |= union(a, b)
                    changed |= union(c, top)
            else:
                _, a, b, bb, c, cc, top = poly
                if find(a) == find(c) or find(bb) == find(top):
                    for u, v in ((a, c), (bb, top), (b, bb), (c, cc)):
                        changed |= union(u, v)
                if find(a) == find(b) or find(cc) == find(top):
                    for u, v in ((a, b), (cc, top), (b, bb), (c, cc)):
                        changed |= union(u, v)
        groups = defaultdict(list)
        for i in range(len(els)):
            groups[find(i)].append(i)
        for members in groups.values():
            if len(members) == 1:
                continue
            lo = hi = els[members[0]]
            for i in members[1:]:
                lo = p.meet(lo, els[i])
                hi = p.join(hi, els[i])
            root = members[0]
            for z in els:
                if z & lo == lo and z & hi == z:
                    changed |= union(ix[z], root)

    groups = defaultdict(list)
    for i, m in enumerate(els):
        groups[find(i)].append(m)
    cong = Congruence(p, groups.values())
    assert validate_congruence(p, cong)
    return cong


def restriction(c):
    """The induced congruence on the poset of the reference minus vertex n.

    Two reorientations of the smaller digraph are identified iff their
    extensions that leave every arc at n unflipped are congruent.
    """
    p = c.poset
    d = p.reference
    if d.n == 0:
        raise InputError("cannot restrict an empty reference")
    keep, _ = _off_arcs(d)
    sub = Digraph(d.n - 1, [d.arcs[k] for k in keep])
    elements = {_project(f, keep) for f in p.elements}
    groups = defaultdict(list)
    for e in elements:
        groups[c.class_of[_embed(e, keep)]].append(e)
    return Congruence(ARPoset(sub, elements), groups.values())


def select_representatives(c, p):
    """One reorientation per congruence class, with permutation encodings.

    Returns (R, Pi) where R is a frozenset of masks meeting every class
    exactly once and Pi is the frozenset of their permutations, a zigzag
    language accepted by algorithm_J.  Built rail by rail: when the
    classes of rail bottom and top differ on every rail, each class picks
    the bottom of its rail interval except the class of the rail top,
    which keeps the top; otherwise whole rails are single classes and n is
    placed as a sink throughout.  Requires the reference labeling to be
    peo-consistent and c to be a valid congruence of p.
    """
    if c.poset is not p:
        raise InputError("congruence belongs to a different poset")
    if not is_identity_peo_consistent(p.reference):
        raise InputError(
            "reference digraph is not peo-consistent in the given labeling")
    if not validate_congruence(p, c):
        raise InputError("partition is not a lattice congruence")
    masks = _select(c)
    return frozenset(masks), frozenset(p.permutation_of(f) for f in masks)


def _select(c):
    p = c.poset
    d = p.reference
    if d.n == 0:
        return [0]
    prev = _select(restriction(c))
    keep, nmask = _off_arcs(d)
    rail_map = rails(p)
    cls = c.class_of
    if any(cls[ch[0]] == cls[ch[-1]] for ch in rail_map.values()):
        # one side of the dichotomy: every rail collapses into one class
        for ch in rail_map.values():
            assert all(cls[f] == cls[ch[0]] for f in ch)
        extra = nmask if d.out[d.n] else 0  # place n as a sink
        return [_embed(e, keep) | extra for e in prev]
    sel = []
    for e in prev:
        chain = rail_map[_embed(e, keep)]
        run_heads = []
        prev_cls = None
        for f in chain:
            if cls[f] != prev_cls:
                prev_cls = cls[f]
                run_heads.append(f)
        # each class meets the rail in one interval, so runs are distinct
        assert len({cls[f] for f in run_heads}) == len(run_heads)
        assert len(run_heads) >= 2
        sel.extend(run_heads[:-1])
        sel.append(chain[-1])
    return sel


def generate_quotient_path(d, c):
    """Hamilton path in the cover graph of the quotient of d's
    reorientation lattice by c, yielded as (mask, class id) pairs.

    Runs algorithm_J over the permutation encodings of the class
    representatives; consecutive classes form cover relations in the
    quotient and every class appears exactly once.
    """
    p = c.poset
    if p.reference != d:
        raise InputError("congruence was built for a different digraph")
    _, pi_set = select_representatives(c, p)
    for pi in algorithm_J(LanguageOracle.from_set(pi_set)):
        f = p.mask_of(pi)
        yield f, c.class_of[f]


def sylvester_congruence(p):
    """The congruence of an acyclic tournament's reorientation lattice
    whose classes merge permutations across the rewriting rule: an
    adjacent pair c,a with c > a may be transposed whenever some value
    between them appears further left.  Class minima are exactly the
    231-avoiding permutations.
    """
    d = p.reference
    n = d.n
    if len(d.arcs) != n * (n - 1) // 2:
        raise InputError("sylvester congruence requires a tournament reference")
    parent = list(range(len(p.elements)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, f in enumerate(p.elements):
        pi = p.permutation_of(f)
        for pos in range(n - 1):
            hi, lo = pi[pos], pi[pos + 1]
            if hi > lo and any(lo < b < hi for b in pi[:pos]):
                swapped = pi[:pos] + (lo, hi) + pi[pos + 2:]
                ra, rb = find(k), find(p.index(p.mask_of(swapped)))
                if ra != rb:
                    parent[ra] = rb
    groups = defaultdict(list)
    for k, f in enumerate(p.elements):
        groups[find(k)].append(f)
    return Congruence(p, groups.values())
