"""Finite graph balls and brute-force counting oracles.

Builders produce rooted balls of d-regular trees, {m,d} plane tessellations,
and the cycle-over-tree graphs P_{k,d}; counters walk them exactly (big
integers, numpy int64 fast path when provably overflow-free).  These are the
independent checks for every series-side computation.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, NotATessellation, RadiusTooSmall, SizeLimit

DEFAULT_VERTEX_CAP = 10_000_000


@dataclass
class GraphBall:
    """Rooted ball: adjacency lists, BFS layer per vertex, and the radius up
    to which every vertex has full degree d.  Root is vertex 0.  Directed
    edges come in reversal pairs e <-> e^1 (xor of the low bit).
    """
    d: int
    m: Optional[int]
    radius: int
    complete_radius: int
    neighbors: list
    layer: list
    _directed: Optional[tuple] = field(default=None, repr=False, compare=False)

    @property
    def vertex_count(self):
        return len(self.neighbors)

    def layer_sizes(self):
        out = [0] * (max(self.layer) + 1)
        for x in self.layer:
            out[x] += 1
        return out

    def directed_edges(self):
        """(tails, heads, rev): directed edge e runs tails[e] -> heads[e];
        rev[e] is the opposite orientation of the same undirected edge."""
        if self._directed is None:
            tails, heads = [], []
            index = {}
            for v, nbrs in enumerate(self.neighbors):
                for w in nbrs:
                    index[(v, w)] = len(tails)
                    tails.append(v)
                    heads.append(w)
            rev = [index[(heads[e], tails[e])] for e in range(len(tails))]
            self._directed = (tails, heads, rev)
        return self._directed

    def validate(self):
        """Check the reversal involution and the full-degree invariant."""
        tails, heads, rev = self.directed_edges()
        for e in range(len(tails)):
            if rev[rev[e]] != e or tails[rev[e]] != heads[e]:
                raise AssertionError("edge reversal is not an involution")
        for v, nbrs in enumerate(self.neighbors):
            if self.layer[v] < self.complete_radius and len(nbrs) != self.d:
                raise AssertionError(
                    f"vertex {v} at depth {self.layer[v]} has degree {len(nbrs)}")
            if len(set(nbrs)) != len(nbrs):
                raise AssertionError(f"multi-edge at vertex {v}")
        return True

    def to_text(self):
        header = {"d": self.d, "m": self.m, "R": self.radius,
                  "vertex_count": self.vertex_count,
                  "layer_sizes": self.layer_sizes()}
        lines = [json.dumps(header, sort_keys=True)]
        for v, nbrs in enumerate(self.neighbors):
            lines.append(f"{v}: " + " ".join(str(w) for w in nbrs))
        return "\n".join(lines) + "\n"


@dataclass
class WalkCounts:
    """counts[n] = closed walks of length n at the root; spiky[n][s], when
    present, refines by the number of backtrack positions."""
    counts: list
    spiky: Optional[list] = None

    def to_csv(self):
        if self.spiky is None:
            lines = ["n,count"]
            for n, c in enumerate(self.counts):
                lines.append(f"{n},{c}")
        else:
            lines = ["n,spikes,count"]
            for n, row in enumerate(self.spiky):
                for s, c in enumerate(row):
                    lines.append(f"{n},{s},{c}")
        return "\n".join(lines) + "\n"


def _bfs_layers(neighbors, root=0):
    dist = [None] * len(neighbors)
    dist[root] = 0
    q = deque([root])
    while q:
        u = q.popleft()
        for w in neighbors[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def _trim_to_ball(neighbors, radius, d, m, cap):
    """Keep the BFS ball of the given radius, relabel in (layer, id) order."""
    dist = _bfs_layers(neighbors)
    keep = [v for v in range(len(neighbors)) if dist[v] is not None and dist[v] <= radius]
    keep.sort(key=lambda v: (dist[v], v))
    remap = {v: i for i, v in enumerate(keep)}
    new_adj = []
    for v in keep:
        new_adj.append([remap[w] for w in neighbors[v]
                        if dist[w] is not None and dist[w] <= radius])
    layer = [dist[v] for v in keep]
    ball = GraphBall(d=d, m=m, radius=radius, complete_radius=radius,
                     neighbors=new_adj, layer=layer)
    for v in range(ball.vertex_count):
        if ball.layer[v] < radius and len(ball.neighbors[v]) != d:
            raise AssertionError("construction left an interior vertex incomplete")
    return ball


def build_tree_ball(d, radius, cap=DEFAULT_VERTEX_CAP) -> GraphBall:
    """Rooted d-regular tree truncated at the given depth."""
    if d < 2 or radius < 1:
        raise DomainError("tree ball needs d >= 2 and radius >= 1")
    neighbors = [[]]
    layer = [0]
    frontier = [0]
    for depth in range(1, radius + 1):
        new_frontier = []
        for v in frontier:
            need = d - len(neighbors[v])
            for _ in range(need):
                w = len(neighbors)
                if w >= cap:
                    raise SizeLimit(f"vertex cap {cap} exceeded")
                neighbors.append([v])
                layer.append(depth)
                neighbors[v].append(w)
                new_frontier.append(w)
        frontier = new_frontier
    return GraphBall(d=d, m=None, radius=radius, complete_radius=radius,
                     neighbors=neighbors, layer=layer)


def build_tessellation_ball(d, m, radius, cap=DEFAULT_VERTEX_CAP) -> GraphBall:
    """Ball of the plane tessellation by m-gons, d around each vertex.

    Grows a simply-connected disk by closing one m-gon at a time along the
    boundary (clockwise, deterministic), keeping for each boundary vertex the
    count of faces already closed; repeats until every vertex within the
    requested radius is interior, then trims to the ball.
    """
    if (d - 2) * (m - 2) < 4:
        raise NotATessellation("(d-2)(m-2) >= 4 required")
    if radius < 1:
        raise DomainError("radius must be >= 1")

    neighbors = [[] for _ in range(m)]
    nxt = {}
    prv = {}
    for i in range(m):
        neighbors[i].append((i + 1) % m)
        neighbors[(i + 1) % m].append(i)
        nxt[i] = (i + 1) % m
        prv[i] = (i - 1) % m
    on_boundary = [True] * m
    deg = [2] * m

    def new_vertex():
        if len(neighbors) >= cap:
            raise SizeLimit(f"vertex cap {cap} exceeded")
        neighbors.append([])
        on_boundary.append(True)
        deg.append(0)
        return len(neighbors) - 1

    def close_face_at(v):
        # the pending face containing boundary edge (prv[v], v); its boundary
        # path runs through consecutive full-degree vertices
        a = prv[v]
        guard = 0
        while deg[a] == d:
            a = prv[a]
            guard += 1
            if guard > len(neighbors):
                raise NotATessellation("boundary saturated; not an infinite tessellation")
        b = v
        while deg[b] == d:
            b = nxt[b]
        path = [a]
        x = a
        while x != b:
            x = nxt[x]
            path.append(x)
        missing = m - (len(path) - 1)
        if missing < 1:
            raise NotATessellation("face closure would need a non-positive arc")
        for x in path[1:-1]:
            on_boundary[x] = False
        arc = [new_vertex() for _ in range(missing - 1)]
        chain = [a] + arc + [b]
        for u, w in zip(chain, chain[1:]):
            neighbors[u].append(w)
            neighbors[w].append(u)
            deg[u] += 1
            deg[w] += 1
        cur = a
        for w in arc:
            nxt[cur] = w
            prv[w] = cur
            cur = w
        nxt[cur] = b
        prv[b] = cur

    while True:
        dist = _bfs_layers(neighbors)
        todo = [v for v in range(len(neighbors))
                if on_boundary[v] and dist[v] is not None and dist[v] <= radius - 1]
        if not todo:
            break
        for v in todo:
            while on_boundary[v]:
                close_face_at(v)
    return _trim_to_ball(neighbors, radius, d, m, cap)


def build_pkd_ball(k, d, radius, cap=DEFAULT_VERTEX_CAP) -> GraphBall:
    """Ball of P_{k,d}: every vertex lies on exactly one k-gon and carries
    d-2 bridge edges distributing a k(d-2)-regular tree over the k-gons."""
    if k < 3 or d < 3:
        raise DomainError("P_{k,d} needs k >= 3 and d >= 3")
    if radius < 1:
        raise DomainError("radius must be >= 1")
    neighbors = []

    def new_polygon():
        base = len(neighbors)
        if base + k > cap:
            raise SizeLimit(f"vertex cap {cap} exceeded")
        for _ in range(k):
            neighbors.append([])
        for i in range(k):
            u, w = base + i, base + (i + 1) % k
            neighbors[u].append(w)
            neighbors[w].append(u)
        return list(range(base, base + k))

    new_polygon()
    dist = {0: 0}
    q = deque([0])
    while q:
        v = q.popleft()
        if dist[v] >= radius:
            continue
        while len(neighbors[v]) < d:
            poly = new_polygon()
            w = poly[0]
            neighbors[v].append(w)
            neighbors[w].append(v)
        for w in neighbors[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return _trim_to_ball(neighbors, radius, d, None, cap)


def count_closed_walks(ball: GraphBall, n_max) -> WalkCounts:
    """Exact closed-walk counts at the root for n = 0..n_max.

    Walks of length n stay within depth n/2, so n_max <= 2*complete_radius
    guarantees the ball is large enough.
    """
    if n_max > 2 * ball.complete_radius:
        raise RadiusTooSmall(
            f"n_max = {n_max} needs complete radius >= {(n_max + 1) // 2}")
    if ball.d ** max(n_max, 1) < 2 ** 62:
        tails, heads, _ = ball.directed_edges()
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        vec = np.zeros(ball.vertex_count, dtype=np.int64)
        vec[0] = 1
        counts = [1]
        for _ in range(n_max):
            new = np.zeros(ball.vertex_count, dtype=np.int64)
            np.add.at(new, heads, vec[tails])
            vec = new
            counts.append(int(vec[0]))
        return WalkCounts(counts=counts)
    # big-integer fallback
    vec = {0: 1}
    counts = [1]
    for _ in range(n_max):
        new = {}
        for v, c in vec.items():
            for w in ball.neighbors[v]:
                new[w] = new.get(w, 0) + c
        vec = new
        counts.append(vec.get(0, 0))
    return WalkCounts(counts=counts)


def count_spiky_circuits(ball: GraphBall, n_max) -> WalkCounts:
    """Closed-walk counts refined by backtrack count: spiky[n][s] is the
    number of length-n circuits at the root with exactly s positions i where
    step i+1 reverses step i.  Dynamic program over (last directed edge, s).
    """
    if n_max > 2 * ball.complete_radius:
        raise RadiusTooSmall(
            f"n_max = {n_max} needs complete radius >= {(n_max + 1) // 2}")
    tails, heads, rev = ball.directed_edges()
    E = len(tails)
    use_numpy = ball.d ** max(n_max, 1) < 2 ** 62
    tails_a = np.asarray(tails, dtype=np.int64)
    heads_a = np.asarray(heads, dtype=np.int64)
    rev_a = np.asarray(rev, dtype=np.int64)
    root_in = np.flatnonzero(heads_a == 0)

    spiky = [[1]]
    if n_max == 0:
        return WalkCounts(counts=[1], spiky=spiky)

    if use_numpy:
        cur = np.zeros((E, n_max), dtype=np.int64)
        cur[tails_a == 0, 0] = 1
        spiky.append([int(cur[root_in, 0].sum())])
        for n in range(2, n_max + 1):
            vs = np.zeros((ball.vertex_count, n_max), dtype=np.int64)
            np.add.at(vs, heads_a, cur)
            new = vs[tails_a].copy()
            back = cur[rev_a]
            new -= back
            new[:, 1:] += back[:, :-1]
            cur = new
            row = cur[root_in].sum(axis=0)
            spiky.append([int(x) for x in row[:n]])
    else:
        cur = [[0] * n_max for _ in range(E)]
        for e in range(E):
            if tails[e] == 0:
                cur[e][0] = 1
        spiky.append([sum(cur[e][0] for e in range(E) if heads[e] == 0)])
        for n in range(2, n_max + 1):
            vs = [[0] * n_max for _ in range(ball.vertex_count)]
            for e in range(E):
                he = heads[e]
                row = cur[e]
                tgt = vs[he]
                for s in range(n_max):
                    tgt[s] += row[s]
            new = []
            for e in range(E):
                row = [x for x in vs[tails[e]]]
                back = cur[rev[e]]
                for s in range(n_max):
                    row[s] -= back[s]
                for s in range(n_max - 1, 0, -1):
                    row[s] += back[s - 1]
                new.append(row)
            cur = new
            total = [0] * n
            for e in range(E):
                if heads[e] == 0:
                    for s in range(n):
                        total[s] += cur[e][s]
            spiky.append(total)
    counts = [sum(row) for row in spiky]
    return WalkCounts(counts=counts, spiky=spiky)


# word counting ----------------------------------------------------------------

def inverse_letter(x):
    """Letters pair 2i <-> 2i+1 as mutual inverses."""
    return x ^ 1


def surface_forbidden_factors(genus, length):
    """All length-`length` factors of the bi-infinite periodic words built
    from the genus-g standard relator and its inverse, as letter tuples over
    the 4g-letter alphabet (generator i -> letters 4i..4i+3 for a_i, a_i^-1,
    b_i, b_i^-1)."""
    r = []
    for i in range(genus):
        a, b = 4 * i, 4 * i + 2
        r += [a, b, inverse_letter(a), inverse_letter(b)]
    r_inv = [inverse_letter(x) for x in reversed(r)]
    out = set()
    for w in (r, r_inv):
        period = len(w)
        for p in range(period):
            out.add(tuple(w[(p + j) % period] for j in range(length)))
    return sorted(out)


def _aho_corasick(forbidden):
    """Factor automaton: goto/fail links and absorbing 'dead' states."""
    goto = [{}]
    fail = [0]
    dead = [False]
    for word in forbidden:
        node = 0
        for ch in word:
            if ch not in goto[node]:
                goto[node][ch] = len(goto)
                goto.append({})
                fail.append(0)
                dead.append(False)
            node = goto[node][ch]
        dead[node] = True
    q = deque()
    for ch, child in goto[0].items():
        q.append(child)
    while q:
        node = q.popleft()
        for ch, child in goto[node].items():
            q.append(child)
            f = fail[node]
            while f and ch not in goto[f]:
                f = fail[f]
            fail[child] = goto[f][ch] if ch in goto[f] and goto[f][ch] != child else 0
            dead[child] = dead[child] or dead[fail[child]]
    return goto, fail, dead


def count_avoiding_words(alphabet_size, forbidden, n_max, reduced=False):
    """Exact counts of length-n words avoiding every forbidden factor.

    With ``reduced`` the alphabet carries the involution 2i <-> 2i+1 and only
    freely reduced words (no x followed by x^-1) are counted; forbidden words
    must then be freely reduced themselves.
    """
    forbidden = [tuple(w) for w in forbidden]
    for w in forbidden:
        if not w:
            raise DomainError("forbidden words must be nonempty")
        if any(ch < 0 or ch >= alphabet_size for ch in w):
            raise DomainError("forbidden word uses letters outside the alphabet")
        if reduced and any(w[i + 1] == inverse_letter(w[i]) for i in range(len(w) - 1)):
            raise DomainError("forbidden words must be freely reduced")
    if reduced and alphabet_size % 2:
        raise DomainError("an involutive alphabet has even size")

    goto, fail, dead = _aho_corasick(forbidden)

    def step(node, ch):
        while node and ch not in goto[node]:
            node = fail[node]
        return goto[node].get(ch, 0)

    counts = [1]
    frontier = {(0, None): 1}
    for _ in range(n_max):
        new = {}
        for (node, last), c in frontier.items():
            for ch in range(alphabet_size):
                if reduced and last is not None and ch == inverse_letter(last):
                    continue
                node2 = step(node, ch)
                if dead[node2]:
                    continue
                key = (node2, ch if reduced else None)
                new[key] = new.get(key, 0) + c
        frontier = new
        counts.append(sum(frontier.values()))
    return counts
