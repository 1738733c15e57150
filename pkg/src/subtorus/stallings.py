"""Stallings subgroup graphs: folding, membership, rank, bases and covers.

An :class:`AGraph` stores positively labelled edges ``(origin, letter,
terminus)``; the inverse edge is implicit.  Vertex ``0`` is the basepoint.
Folding merges vertices with a union-find and records every identification
in a :class:`FoldTrace` so the run can be replayed.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Union

from .errors import InputError, NotMember, ResourceExceeded
from .words import Basis, Word, concat_str, cyclic_reduce_str, free_reduce, invert_str

DEFAULT_MAX_CELLS = 100_000

Edge = tuple[int, str, int]


@dataclass(frozen=True)
class AGraph:
    basis: Basis
    num_vertices: int
    edges: tuple[Edge, ...]
    basepoint: int = 0

    @property
    def cells(self) -> int:
        return self.num_vertices + len(self.edges)

    @cached_property
    def adjacency(self) -> list[dict[str, int]]:
        """Per-vertex map signed letter -> neighbour. Only meaningful if folded."""
        adj: list[dict[str, int]] = [dict() for _ in range(self.num_vertices)]
        for o, a, t in self.edges:
            adj[o][a] = t
            adj[t][a.upper()] = o
        return adj

    def degree(self, v: int) -> int:
        return sum((o == v) + (t == v) for o, _, t in self.edges)

    def is_folded(self) -> bool:
        seen = set()
        for o, a, t in self.edges:
            for key in ((o, a), (t, a.upper())):
                if key in seen:
                    return False
                seen.add(key)
        return True

    def read(self, w: str, start: Optional[int] = None) -> Optional[int]:
        """Follow ``w`` from ``start``; the end vertex, or None if it falls off."""
        adj = self.adjacency
        v = self.basepoint if start is None else start
        for x in w:
            v = adj[v].get(x)
            if v is None:
                return None
        return v

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{", f"  {self.basepoint} [shape=doublecircle];"]
        for o, a, t in self.edges:
            lines.append(f'  {o} -> {t} [label="{a}"];')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class FoldEvent:
    vertex: int          # current root the two edges leave from
    label: str           # signed letter shared by the two edges
    kept: int            # edge id (input numbering) that survives
    removed: int         # edge id identified into ``kept``
    merged: Optional[tuple[int, int]]  # (survivor, absorbed) roots, if distinct


@dataclass
class FoldTrace:
    events: list[FoldEvent] = field(default_factory=list)
    vertex_map: list[int] = field(default_factory=list)   # input vertex -> output vertex
    edge_map: list[int] = field(default_factory=list)     # input edge -> output edge


class _Folder:
    """Union-find folding engine.

    ``payload`` optionally attaches a free-group word to every edge; when two
    edges with different terminals are identified the terminal vertex is
    re-gauged so that labels of closed loops at the basepoint are preserved.
    This is what lets an image graph read back preimages.
    """

    def __init__(self, basis, num_vertices, edges, payload=None, rng=None,
                 max_cells=DEFAULT_MAX_CELLS):
        if num_vertices + len(edges) > max_cells:
            raise ResourceExceeded("graph", num_vertices + len(edges), max_cells)
        self.basis = basis
        self.order = basis.letter_order()
        self.n = num_vertices
        self.edges = [tuple(e) for e in edges]
        self.alive = [True] * len(edges)
        self.payload = list(payload) if payload is not None else None
        self.parent = list(range(num_vertices))
        self.adj: dict[int, dict[str, list[int]]] = {v: {} for v in range(num_vertices)}
        self.rng = rng
        self.trace = FoldTrace()
        self.inconsistent = False
        for i, (o, a, t) in enumerate(self.edges):
            if a not in self.order or not a.islower():
                raise InputError(f"edge label {a!r} not a basis letter")
            self.adj[o].setdefault(a, []).append(i)
            self.adj[t].setdefault(a.upper(), []).append(i)
        self.pending: list = []
        for v, buckets in self.adj.items():
            for x, bucket in buckets.items():
                if len(bucket) > 1:
                    self._push(v, x)

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _push(self, v, x):
        if self.rng is None:
            heapq.heappush(self.pending, (v, self.order[x], x))
        else:
            self.pending.append((v, x))

    def _pop(self):
        if self.rng is None:
            v, _, x = heapq.heappop(self.pending)
            return v, x
        i = self.rng.randrange(len(self.pending))
        self.pending[i], self.pending[-1] = self.pending[-1], self.pending[i]
        return self.pending.pop()

    def _far_end(self, e: int, x: str) -> int:
        o, _, t = self.edges[e]
        return self.find(t) if x.islower() else self.find(o)

    def _oriented_payload(self, e: int, x: str) -> str:
        p = self.payload[e]
        return p if x.islower() else invert_str(p)

    def _gauge(self, w: int, k: str):
        # new label of edge o->t is k_o . h . k_t^-1, where k_w = k and 1 elsewhere
        kinv = invert_str(k)
        touched = set()
        for bucket in self.adj[w].values():
            touched.update(bucket)
        for e in touched:
            o, _, t = self.edges[e]
            h = self.payload[e]
            if self.find(o) == w:
                h = concat_str(k, h)
            if self.find(t) == w:
                h = concat_str(h, kinv)
            self.payload[e] = h

    def run(self) -> "_Folder":
        while self.pending:
            v, x = self._pop()
            v = self.find(v)
            bucket = self.adj[v].get(x)
            if not bucket or len(bucket) < 2:
                continue
            if self.rng is None:
                e1, e2 = bucket[0], bucket[1]
            else:
                e1, e2 = self.rng.sample(bucket, 2)
            self._identify(v, x, e1, e2)
            r = self.find(v)
            if len(self.adj[r].get(x, ())) > 1:
                self._push(r, x)
        return self

    def _identify(self, v, x, e1, e2):
        t1, t2 = self._far_end(e1, x), self._far_end(e2, x)
        if self.payload is not None:
            g1, g2 = self._oriented_payload(e1, x), self._oriented_payload(e2, x)
            if t1 == t2:
                if free_reduce(g1 + invert_str(g2)):
                    self.inconsistent = True
            else:
                base = self.find(0)
                if t2 != base:
                    self._gauge(t2, concat_str(invert_str(g1), g2))
                else:
                    self._gauge(t1, concat_str(invert_str(g2), g1))
        self.adj[v][x].remove(e2)
        self.adj[t2][x.swapcase()].remove(e2)
        self.alive[e2] = False
        merged = None
        if t1 != t2:
            merged = self._union(t1, t2)
        self.trace.events.append(FoldEvent(v, x, e1, e2, merged))

    def _union(self, a, b):
        survivor, absorbed = min(a, b), max(a, b)
        self.parent[absorbed] = survivor
        big, small = self.adj.pop(survivor), self.adj.pop(absorbed)
        if len(big) < len(small):
            big, small = small, big
        for x, bucket in small.items():
            target = big.setdefault(x, [])
            target.extend(bucket)
        for x, bucket in big.items():
            if len(bucket) > 1:
                self._push(survivor, x)
        self.adj[survivor] = big
        return survivor, absorbed

    def result(self) -> tuple[AGraph, FoldTrace]:
        roots = sorted({self.find(v) for v in range(self.n)})
        relabel = {r: i for i, r in enumerate(roots)}
        new_edges = []
        edge_index = {}
        for i, (o, a, t) in enumerate(self.edges):
            if self.alive[i]:
                edge_index[i] = len(new_edges)
                new_edges.append((relabel[self.find(o)], a, relabel[self.find(t)]))
        self.trace.vertex_map = [relabel[self.find(v)] for v in range(self.n)]
        # removed edges follow the edge they were identified into
        into = {ev.removed: ev.kept for ev in self.trace.events}
        emap = []
        for i in range(len(self.edges)):
            j = i
            while j in into:
                j = into[j]
            emap.append(edge_index[j])
        self.trace.edge_map = emap
        g = AGraph(self.basis, len(roots), tuple(new_edges), relabel[self.find(0)])
        return g, self.trace

    def result_payload(self) -> list[str]:
        return [self.payload[i] for i in range(len(self.edges)) if self.alive[i]]


def fold(g: AGraph, rng=None, max_cells: int = DEFAULT_MAX_CELLS) -> tuple[AGraph, FoldTrace]:
    """Fold ``g`` completely.

    With ``rng`` (a ``random.Random``) the fold pairs are drawn at random;
    otherwise the smallest vertex id and then letter order is taken first.
    """
    if g.basepoint != 0:
        raise InputError("basepoint must be vertex 0")
    return _Folder(g.basis, g.num_vertices, g.edges, rng=rng, max_cells=max_cells).run().result()


def replay(g: AGraph, trace: FoldTrace) -> AGraph:
    """Re-apply the events of ``trace`` to ``g`` and return the resulting graph."""
    f = _Folder(g.basis, g.num_vertices, g.edges, max_cells=10**12)
    f.pending = []
    for ev in trace.events:
        v = f.find(ev.vertex)
        bucket = f.adj[v].get(ev.label, [])
        if ev.kept not in bucket or ev.removed not in bucket:
            raise InputError(f"trace event {ev} does not apply")
        f._identify(v, ev.label, ev.kept, ev.removed)
    f.trace.events = list(trace.events)
    return f.result()[0]


def core(g: AGraph) -> AGraph:
    """Trim hanging trees; the basepoint is always kept."""
    deg = [0] * g.num_vertices
    for o, _, t in g.edges:
        deg[o] += 1
        deg[t] += 1
    alive_e = [True] * len(g.edges)
    incident: list[list[int]] = [[] for _ in range(g.num_vertices)]
    for i, (o, _, t) in enumerate(g.edges):
        incident[o].append(i)
        if t != o:
            incident[t].append(i)
    gone = [False] * g.num_vertices
    stack = [v for v in range(g.num_vertices) if v != g.basepoint and deg[v] <= 1]
    while stack:
        v = stack.pop()
        if gone[v]:
            continue
        gone[v] = True
        for i in incident[v]:
            if alive_e[i]:
                alive_e[i] = False
                o, _, t = g.edges[i]
                w = t if o == v else o
                deg[w] -= 1
                deg[v] -= 1
                if w != g.basepoint and deg[w] <= 1 and not gone[w]:
                    stack.append(w)
    keep = [v for v in range(g.num_vertices) if not gone[v]]
    relabel = {v: i for i, v in enumerate(keep)}
    edges = tuple((relabel[o], a, relabel[t]) for i, (o, a, t) in enumerate(g.edges) if alive_e[i])
    return AGraph(g.basis, len(keep), edges, relabel[g.basepoint])


def wedge(basis: Basis, words: Sequence[str]) -> tuple[int, list[Edge], list[int]]:
    """Bouquet of loops at vertex 0 spelling ``words``.

    Returns ``(num_vertices, edges, owner)`` where ``owner[i]`` is the index
    of the word that edge ``i`` belongs to.
    """
    n = 1
    edges: list[Edge] = []
    owner: list[int] = []
    for j, w in enumerate(words):
        if not w:
            continue
        prev = 0
        for i, x in enumerate(w):
            nxt = 0 if i == len(w) - 1 else n
            if nxt:
                n += 1
            if x.islower():
                edges.append((prev, x, nxt))
            else:
                edges.append((nxt, x.lower(), prev))
            owner.append(j)
            prev = nxt
    return n, edges, owner


def from_words(basis: Basis, gens: Sequence[Union[Word, str]],
               max_cells: int = DEFAULT_MAX_CELLS) -> AGraph:
    """Folded core graph of the subgroup generated by ``gens``."""
    words = [basis.coerce(w) for w in gens]
    n, edges, _ = wedge(basis, words)
    g, _ = fold(AGraph(basis, n, tuple(edges)), max_cells=max_cells)
    return core(g)


def _attach_word(g: AGraph, w: str, max_cells: int) -> Optional[AGraph]:
    # Read the longest prefix forward and suffix backward; gluing the unread
    # middle between their endpoints keeps the graph folded.  None means the
    # two readings overlap and a full fold is needed.
    # Returns g itself exactly when w is already a member.
    adj = g.adjacency
    u, i, size = g.basepoint, 0, len(w)
    while i < size:
        nxt = adj[u].get(w[i])
        if nxt is None:
            break
        u, i = nxt, i + 1
    if i == size:
        return g if u == g.basepoint else None
    inv = w.swapcase()
    v, j = g.basepoint, size
    while j > i:
        nxt = adj[v].get(inv[j - 1])
        if nxt is None:
            break
        v, j = nxt, j - 1
    middle = w[i:j]
    if not middle:
        return None
    conj = ""
    if u == v:
        # both ends of the middle leave u: share the conjugating stem
        middle, conj = cyclic_reduce_str(middle)
    cells = g.cells + 2 * len(conj) + 2 * len(middle) - 1
    if cells > max_cells:
        raise ResourceExceeded("graph", cells, max_cells)
    n = g.num_vertices
    edges = list(g.edges)

    def path(prev: int, word: str, last: Optional[int]) -> int:
        nonlocal n
        for k, x in enumerate(word):
            if k == len(word) - 1 and last is not None:
                nxt = last
            else:
                nxt = n
                n += 1
            edges.append((prev, x, nxt) if x.islower() else (nxt, x.lower(), prev))
            prev = nxt
        return prev

    first_new = len(edges)
    if conj:
        u = v = path(u, conj, None)
    path(u, middle, v)
    h = AGraph(g.basis, n, tuple(edges), g.basepoint)
    # hand the adjacency over instead of rebuilding it; g recomputes lazily
    del g.__dict__["adjacency"]
    adj.extend({} for _ in range(n - g.num_vertices))
    for o, a, t in edges[first_new:]:
        adj[o][a] = t
        adj[t][a.upper()] = o
    h.__dict__["adjacency"] = adj
    return h


def add_words(g: AGraph, gens: Sequence[str], max_cells: int = DEFAULT_MAX_CELLS) -> AGraph:
    """Fold extra loops at the basepoint into a folded core graph."""
    if g.basepoint != 0:
        raise InputError("basepoint must be vertex 0")
    return add_reduced(g, [g.basis.coerce(w) for w in gens], max_cells)


def add_reduced(g: AGraph, words: Sequence[str], max_cells: int = DEFAULT_MAX_CELLS) -> AGraph:
    """:func:`add_words` for strings already known to be reduced over ``g.basis``.

    ``g`` itself is returned when every word is already a member.
    """
    words = [w for w in words if w and g.read(w) != g.basepoint] if len(words) != 1 else list(words)
    if not words or not words[0]:
        return g
    n = g.num_vertices
    edges = list(g.edges)
    if len(words) == 1:
        h = _attach_word(g, words[0], max_cells)
        if h is not None:
            return h
    for w in words:
        if not w:
            continue
        prev = g.basepoint
        for i, x in enumerate(w):
            if i == len(w) - 1:
                nxt = g.basepoint
            else:
                nxt = n
                n += 1
            edges.append((prev, x, nxt) if x.islower() else (nxt, x.lower(), prev))
            prev = nxt
    h, _ = fold(AGraph(g.basis, n, tuple(edges)), max_cells=max_cells)
    return core(h)


def contains(g: AGraph, w: Union[Word, str]) -> bool:
    """Whether ``w`` labels a closed path at the basepoint of folded ``g``."""
    return g.read(g.basis.coerce(w)) == g.basepoint


def rank(g: AGraph) -> int:
    return len(g.edges) - g.num_vertices + 1


@dataclass(frozen=True)
class GraphBasis:
    """Spanning tree basis: one loop word per non-tree edge."""

    tree_edges: frozenset[int]
    loop_edges: tuple[int, ...]
    loops: tuple[str, ...]
    tree_words: tuple[str, ...]   # label of the tree path from the basepoint

    def __len__(self):
        return len(self.loops)

    def expand(self, seq: Sequence[int]) -> str:
        """Free-group word of a signed 1-based index sequence over the loops."""
        out = ""
        for i in seq:
            out = concat_str(out, self.loops[i - 1] if i > 0 else invert_str(self.loops[-i - 1]))
        return out


def basis_of(g: AGraph) -> GraphBasis:
    adj_edges: list[list[tuple[str, int, int]]] = [[] for _ in range(g.num_vertices)]
    order = g.basis.letter_order()
    for i, (o, a, t) in enumerate(g.edges):
        adj_edges[o].append((a, i, t))
        adj_edges[t].append((a.upper(), i, o))
    for lst in adj_edges:
        lst.sort(key=lambda item: (order[item[0]], item[1]))
    tree_word: list[Optional[str]] = [None] * g.num_vertices
    tree_word[g.basepoint] = ""
    tree: set[int] = set()
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for x, i, w in adj_edges[v]:
            if tree_word[w] is None:
                tree_word[w] = tree_word[v] + x
                tree.add(i)
                queue.append(w)
    if any(w is None for w in tree_word):
        raise InputError("graph is not connected")
    # distinct non-tree edges give distinct loop words, so sorting them by
    # word (letter order a < A < b < ...) is independent of edge numbering
    words = {}
    for i in range(len(g.edges)):
        if i not in tree:
            o, a, t = g.edges[i]
            words[i] = free_reduce(tree_word[o] + a + invert_str(tree_word[t]))
    loop_edges = tuple(sorted(words, key=lambda i: [order[x] for x in words[i]]))
    loops = [words[i] for i in loop_edges]
    return GraphBasis(frozenset(tree), loop_edges, tuple(loops), tuple(tree_word))


def express(g: AGraph, w: Union[Word, str], gb: Optional[GraphBasis] = None) -> tuple[int, ...]:
    """Write a member ``w`` as a reduced word in ``basis_of(g)``.

    The result is a tuple of signed 1-based loop indices.
    """
    s = g.basis.coerce(w)
    gb = gb or basis_of(g)
    slot = {e: k + 1 for k, e in enumerate(gb.loop_edges)}
    # (vertex, signed letter) -> (edge id, direction)
    step: dict[tuple[int, str], tuple[int, int, int]] = {}
    for i, (o, a, t) in enumerate(g.edges):
        step[(o, a)] = (i, 1, t)
        step[(t, a.upper())] = (i, -1, o)
    v = g.basepoint
    out: list[int] = []
    for x in s:
        hit = step.get((v, x))
        if hit is None:
            raise NotMember(f"{s or '1'} is not in the subgroup")
        i, sign, v = hit
        if i in slot:
            k = sign * slot[i]
            if out and out[-1] == -k:
                out.pop()
            else:
                out.append(k)
    if v != g.basepoint:
        raise NotMember(f"{s or '1'} is not in the subgroup")
    return tuple(out)


def is_cover(g: AGraph, basis: Optional[Basis] = None) -> Optional[int]:
    """Index of the subgroup if ``g`` is a finite cover of the rose, else None."""
    basis = basis or g.basis
    if basis != g.basis:
        raise InputError("basis mismatch")
    if not g.is_folded():
        raise InputError("is_cover needs a folded graph")
    full = len(basis.signed_letters)
    if all(len(d) == full for d in g.adjacency):
        return g.num_vertices
    return None


def canonical_form(g: AGraph) -> tuple:
    """Breadth-first relabelling from the basepoint; equal iff isomorphic.

    Requires a connected folded graph.
    """
    if not g.is_folded():
        raise InputError("canonical_form needs a folded graph")
    adj = g.adjacency
    letters = g.basis.signed_letters
    new = {g.basepoint: 0}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for x in letters:
            w = adj[v].get(x)
            if w is not None and w not in new:
                new[w] = len(new)
                queue.append(w)
    if len(new) != g.num_vertices:
        raise InputError("graph is not connected")
    order = g.basis.letter_order()
    edges = sorted(((new[o], a, new[t]) for o, a, t in g.edges), key=lambda e: (e[0], order[e[1]], e[2]))
    return (g.basis.letters, g.num_vertices, tuple(edges))


def image_graph(basis: Basis, images: Sequence[str], max_cells: int = DEFAULT_MAX_CELLS,
                names: Optional[Sequence[str]] = None):
    """Folded graph of ``images`` carrying preimage labels on its edges.

    Edge labels are words over ``names`` (default: the basis letters, one
    lowercase letter per image) such that reading any closed path at the
    basepoint and multiplying the labels yields ``x`` whenever the path
    spells ``images(x)``.  Returns ``(graph, labels, consistent)``; the
    labels are only meaningful when ``consistent`` (i.e. the images are a
    free basis of the subgroup they generate).
    """
    n, edges, owner = wedge(basis, images)
    payload = []
    first_seen: set[int] = set()
    for j in owner:
        if j in first_seen:
            payload.append("")
        else:
            # the first edge of loop j carries the letter; stored edges are
            # positively oriented, so a loop starting with an inverse letter
            # holds the inverse label
            first_seen.add(j)
            x = basis.letters[j] if names is None else names[j]
            payload.append(x if images[j][0].islower() else x.upper())
    f = _Folder(basis, n, edges, payload=payload, max_cells=max_cells).run()
    g, _ = f.result()
    labels = f.result_payload()
    if g.basepoint != 0:
        raise AssertionError("basepoint moved during folding")
    return g, labels, not f.inconsistent


def read_labels(g: AGraph, labels: Sequence[str], w: str) -> Optional[str]:
    """Product of the labels along the closed path ``w``, or None if ``w`` is not a loop."""
    step = {}
    for (o, a, t), lab in zip(g.edges, labels):
        step[(o, a)] = (t, lab)
        step[(t, a.upper())] = (o, invert_str(lab))
    v = g.basepoint
    parts = []
    for x in w:
        hit = step.get((v, x))
        if hit is None:
            return None
        v, lab = hit
        parts.append(lab)
    if v != g.basepoint:
        return None
    return free_reduce("".join(parts))

