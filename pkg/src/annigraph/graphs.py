"""Annihilator objects, annihilating graphs, shapes and isomorphism.

For a module M and x in M the adjacency relation is ``[x:M][y:M]M == 0``.
A vertex set is one of three objects, all excluding 0:

* full: some nonzero y with [y:M] != R is adjacent to x (y may equal x);
* semi: additionally [x:M] != 0 and the witness has 0 != [y:M] != R;
* star: ann(M) strictly inside [x:M], and likewise for the witness.
"""
import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import AnnigraphError, BoundExceeded
from .modules import Module

DEFAULT_VERTEX_BOUND = 4096


class Flavor(str, Enum):
    FULL = "full"
    SEMI = "semi"
    STAR = "star"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        aliases = {"f": cls.FULL, "s": cls.SEMI, "t": cls.STAR}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise AnnigraphError(f"unknown flavor {text!r}") from None

    @property
    def short(self):
        return {"full": "f", "semi": "s", "star": "t"}[self.value]


class Graph:
    """Simple undirected graph on labelled vertices ``0..n-1``."""

    def __init__(self, labels, adj):
        adj = np.array(adj, dtype=np.bool_)
        n = len(labels)
        if adj.shape != (n, n):
            raise AnnigraphError("adjacency shape does not match the vertex count")
        if not np.array_equal(adj, adj.T) or adj.diagonal().any():
            raise AnnigraphError("adjacency must be symmetric and loop-free")
        self.labels = list(labels)
        self.adj = adj
        self.adj.setflags(write=False)

    @classmethod
    def from_edges(cls, labels, edges):
        n = len(labels)
        adj = np.zeros((n, n), dtype=np.bool_)
        for i, j in edges:
            if i != j:
                adj[i, j] = adj[j, i] = True
        return cls(labels, adj)

    @property
    def n(self):
        return len(self.labels)

    def __len__(self):
        return self.n

    def edges(self):
        i, j = np.nonzero(np.triu(self.adj, 1))
        return [(int(a), int(b)) for a, b in zip(i, j)]

    def degrees(self):
        return self.adj.sum(axis=1)

    def neighbours(self, i):
        return [int(j) for j in np.flatnonzero(self.adj[i])]

    def same_as(self, other):
        """Equal labelled graphs (same vertex labels in the same order, same edges)."""
        return self.labels == other.labels and np.array_equal(self.adj, other.adj)

    def induced(self, keep):
        keep = list(keep)
        return Graph([self.labels[i] for i in keep], self.adj[np.ix_(keep, keep)])

    def __repr__(self):
        return f"Graph(n={self.n}, edges={len(self.edges())})"


class AnnGraph(Graph):
    def __init__(self, module, flavor, index, adj):
        super().__init__([module.labels[i] for i in index], adj)
        self.module = module
        self.flavor = Flavor.parse(flavor)
        self.index = [int(i) for i in index]

    def __repr__(self):
        return f"AnnGraph({self.module}, {self.flavor.value}, n={self.n}, edges={len(self.edges())})"


# ------------------------------------------------------------------ objects


def witness_masks(M):
    """Per-element conditions used by the three flavors."""
    one = M.acting.one_index
    nonzero = np.arange(M.size) != 0
    proper = ~M.colon[:, one]
    colon_nonzero = np.array([M.ideal_nonzero(M.colon[x]) for x in range(M.size)], dtype=np.bool_)
    strict = (M.colon & ~M.ann_mask[None, :]).any(axis=1)
    return nonzero, proper, colon_nonzero, strict


def object_mask(M, flavor):
    flavor = Flavor.parse(flavor)
    nonzero, proper, colon_nonzero, strict = witness_masks(M)
    A = M.product_kills
    if flavor is Flavor.FULL:
        own, wit = nonzero, nonzero & proper
    elif flavor is Flavor.SEMI:
        own, wit = nonzero & colon_nonzero, nonzero & proper & colon_nonzero
    else:
        own, wit = nonzero & strict, nonzero & proper & strict
    return own & (A[:, wit].any(axis=1))


def annihilator_object(M, flavor):
    return frozenset(M.labels[i] for i in np.flatnonzero(object_mask(M, flavor)))


def build_graph(M, flavor, bound=DEFAULT_VERTEX_BOUND):
    idx = np.flatnonzero(object_mask(M, flavor))
    if idx.size > bound:
        raise BoundExceeded(f"{idx.size} vertices exceed the graph bound {bound}")
    adj = M.product_kills[np.ix_(idx, idx)].copy()
    np.fill_diagonal(adj, False)
    return AnnGraph(M, flavor, idx, adj)


# ------------------------------------------------------------------- shapes


@dataclass(frozen=True)
class ShapeReport:
    vertices: int
    edges: int
    complete: bool
    star: bool
    star_center: object
    cycle: object
    pendants: tuple
    degree_sequence: tuple
    connected: bool
    empty: bool


def components(G):
    seen = -np.ones(G.n, dtype=np.int64)
    comp = 0
    for s in range(G.n):
        if seen[s] >= 0:
            continue
        stack = [s]
        seen[s] = comp
        while stack:
            v = stack.pop()
            for w in np.flatnonzero(G.adj[v]):
                if seen[w] < 0:
                    seen[w] = comp
                    stack.append(int(w))
        comp += 1
    return seen, comp


def classify_shape(G):
    n = G.n
    deg = G.degrees()
    n_edges = int(deg.sum()) // 2
    _, ncomp = components(G)
    connected = ncomp <= 1
    complete = n_edges == n * (n - 1) // 2
    center = None
    if n == 1:
        center = 0
    elif n >= 2 and n_edges == n - 1:
        hubs = np.flatnonzero(deg == n - 1)
        if hubs.size:
            center = int(hubs[0])
    cycle = n if n >= 3 and connected and bool((deg == 2).all()) else None
    return ShapeReport(
        vertices=n,
        edges=n_edges,
        complete=bool(complete),
        star=center is not None,
        star_center=None if center is None else G.labels[center],
        cycle=cycle,
        pendants=tuple(G.labels[i] for i in np.flatnonzero(deg == 1)),
        degree_sequence=tuple(sorted((int(d) for d in deg), reverse=True)),
        connected=bool(connected),
        empty=n == 0,
    )


# ------------------------------------------------------------- isomorphism


def twin_classes(G):
    """Partition into false twins (equal open nbhd) and true twins (equal closed nbhd).

    A vertex cannot have a nontrivial twin of both kinds, so the union of the
    two relations is again an equivalence.  Returns (class id per vertex,
    list of (members, kind)) with kind in {"single", "false", "true"}.
    """
    n = G.n
    A = G.adj
    closed = A | np.eye(n, dtype=np.bool_)
    cls = -np.ones(n, dtype=np.int64)
    out = []
    for v in range(n):
        if cls[v] >= 0:
            continue
        members = [v]
        kind = "single"
        for w in range(v + 1, n):
            if cls[w] >= 0:
                continue
            if not A[v, w] and np.array_equal(A[v], A[w]) and kind in ("single", "false"):
                members.append(w)
                kind = "false"
            elif A[v, w] and np.array_equal(closed[v], closed[w]) and kind in ("single", "true"):
                members.append(w)
                kind = "true"
        for w in members:
            cls[w] = len(out)
        out.append((members, kind))
    return cls, out


def _refine(adj, colours):
    """Colour refinement to a stable partition; colours are canonical tuples."""
    n = adj.shape[0]
    cur = list(colours)
    while True:
        sig = [(cur[v], tuple(sorted(cur[w] for w in np.flatnonzero(adj[v])))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        nxt = [ranks[s] for s in sig]
        if len(set(nxt)) == len(set(cur)):
            return nxt
        cur = nxt


def _joint_refine(A, cA, B, cB):
    """Refine two graphs with a shared colour vocabulary."""
    n = A.shape[0]
    adj = np.zeros((2 * n, 2 * n), dtype=np.bool_)
    adj[:n, :n] = A
    adj[n:, n:] = B
    base = sorted(set(cA) | set(cB))
    ranks = {c: i for i, c in enumerate(base)}
    col = _refine(adj, [ranks[c] for c in list(cA) + list(cB)])
    return col[:n], col[n:]


def _backtrack(A, cA, B, cB):
    """Colour-preserving isomorphism A -> B, or None."""
    n = A.shape[0]
    order = sorted(range(n), key=lambda v: (sum(1 for u in range(n) if cA[u] == cA[v]), -int(A[v].sum()), v))
    by_colour = {}
    for w in range(n):
        by_colour.setdefault(cB[w], []).append(w)
    f = -np.ones(n, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)

    def rec(k):
        if k == n:
            return True
        v = order[k]
        done = [order[i] for i in range(k)]
        for w in by_colour.get(cA[v], []):
            if used[w]:
                continue
            if done and not np.array_equal(A[v, done], B[w, f[done]]):
                continue
            f[v] = w
            used[w] = True
            if rec(k + 1):
                return True
            used[w] = False
            f[v] = -1
        return False

    return f if rec(0) else None


def is_isomorphic(G, H, bound=DEFAULT_VERTEX_BOUND):
    """A vertex bijection {i: j} preserving adjacency both ways, or None.

    Both graphs are reduced to their labelled twin quotients (class size and
    twin kind), which are isomorphic exactly when the graphs are; the
    quotients are matched by colour refinement and backtracking.
    """
    if max(G.n, H.n) > bound:
        raise BoundExceeded(f"graphs larger than {bound} vertices")
    if G.n != H.n:
        return None
    if sorted(G.degrees()) != sorted(H.degrees()):
        return None
    if G.n == 0:
        return {}
    cg, qg = twin_classes(G)
    ch, qh = twin_classes(H)
    if len(qg) != len(qh):
        return None
    QA = _quotient(G, cg, len(qg))
    QB = _quotient(H, ch, len(qh))
    la = [(len(m), k, int(QA[i].sum())) for i, (m, k) in enumerate(qg)]
    lb = [(len(m), k, int(QB[i].sum())) for i, (m, k) in enumerate(qh)]
    if sorted(la) != sorted(lb):
        return None
    ra, rb = _joint_refine(QA, la, QB, lb)
    if sorted(ra) != sorted(rb):
        return None
    f = _backtrack(QA, ra, QB, rb)
    if f is None:
        return None
    out = {}
    for i, (members, _) in enumerate(qg):
        for a, b in zip(members, qh[int(f[i])][0]):
            out[a] = b
    return out


def _quotient(G, cls, k):
    Q = np.zeros((k, k), dtype=np.bool_)
    i, j = np.nonzero(G.adj)
    Q[cls[i], cls[j]] = True
    np.fill_diagonal(Q, False)
    return Q


def check_isomorphism(G, H, f):
    if f is None or len(f) != G.n or sorted(f.values()) != list(range(H.n)):
        return False
    perm = np.array([f[i] for i in range(G.n)], dtype=np.int64)
    return bool(np.array_equal(G.adj, H.adj[np.ix_(perm, perm)]))


def is_isomorphic_bruteforce(G, H):
    """Exhaustive permutation search, for small graphs only."""
    if G.n != H.n:
        return None
    for perm in itertools.permutations(range(H.n)):
        p = np.array(perm, dtype=np.int64)
        if np.array_equal(G.adj, H.adj[np.ix_(p, p)]):
            return {i: int(p[i]) for i in range(G.n)}
    return None


# ------------------------------------------------------- zero-divisor graph


def ring_as_module(R):
    if not R.is_finite:
        raise AnnigraphError("the ring must be finite")
    return Module(R, R.moduli, tuple(range(len(R.moduli))))


def zero_divisor_graph(R):
    """The full annihilating graph of R as a module over itself."""
    return build_graph(ring_as_module(R), Flavor.FULL)


def classical_zero_divisor_graph(R):
    """Nonzero zero-divisors with x ~ y iff x != y and xy = 0, from ring arithmetic."""
    zero = R.zero
    elems = R.elements
    zd = [x for x in elems if x != zero and any(y != zero and R.mul(x, y) == zero for y in elems)]
    edges = [(i, j) for i, j in itertools.combinations(range(len(zd)), 2)
             if R.mul(zd[i], zd[j]) == zero]
    return Graph.from_edges(zd, edges)
