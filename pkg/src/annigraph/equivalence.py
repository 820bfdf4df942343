"""Vertex equivalences: neighbourhood, submodule and distance similarity."""
from collections import Counter, deque
from dataclasses import dataclass

import numpy as np

from .errors import AnnigraphError


@dataclass(frozen=True)
class Partition:
    """Blocks of ground-set positions; each block sorted, blocks ordered by least member."""

    ground: tuple
    blocks: tuple

    @classmethod
    def from_keys(cls, ground, keys):
        groups = {}
        for i, k in enumerate(keys):
            groups.setdefault(k, []).append(i)
        return cls(tuple(ground), tuple(sorted(tuple(b) for b in groups.values())))

    @classmethod
    def from_blocks(cls, ground, blocks):
        blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        flat = sorted(i for b in blocks for i in b)
        if flat != list(range(len(ground))) or any(not b for b in blocks):
            raise AnnigraphError("blocks must be nonempty, disjoint and cover the ground set")
        return cls(tuple(ground), blocks)

    def __len__(self):
        return len(self.blocks)

    def labelled(self):
        return [[self.ground[i] for i in b] for b in self.blocks]

    def sizes(self):
        return sorted((len(b) for b in self.blocks), reverse=True)

    def block_of(self):
        out = [0] * len(self.ground)
        for k, b in enumerate(self.blocks):
            for i in b:
                out[i] = k
        return out

    def related(self, i, j):
        b = self.block_of()
        return b[i] == b[j]


def nbd_classes(G):
    """u ~ v iff N(u) == N(v), with open neighbourhoods."""
    return Partition.from_keys(G.labels, [G.adj[v].tobytes() for v in range(G.n)])


def _object_indices(M, obj):
    if hasattr(obj, "index") and hasattr(obj, "module"):
        return list(obj.index)
    return sorted(M.index(x) for x in obj)


def submodule_classes(M, obj):
    """m1 ~ m2 iff ann(m1) M == ann(m2) M, on an object (or an AnnGraph's vertices)."""
    idx = _object_indices(M, obj)
    keys = [M.ideal_times_module_mask(M.kills[i]).tobytes() for i in idx]
    return Partition.from_keys([M.labels[i] for i in idx], keys)


def distance_matrix(G):
    """All-pairs BFS distances; -1 where no path exists."""
    n = G.n
    D = -np.ones((n, n), dtype=np.int64)
    for s in range(n):
        D[s, s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for w in np.flatnonzero(G.adj[v]):
                if D[s, w] < 0:
                    D[s, w] = D[s, v] + 1
                    q.append(int(w))
    return D


def distance_relation(G):
    """R[u, v]: d(u, w) == d(v, w) for every w other than u and v."""
    D = distance_matrix(G)
    n = G.n
    E = D[:, None, :] == D[None, :, :]
    u, v = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    E[u, v, u] = True
    E[u, v, v] = True
    return E.all(axis=2)


def distance_classes(G):
    """Classes of the distance relation, merged transitively."""
    R = distance_relation(G)
    n = G.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u in range(n):
        for v in range(u + 1, n):
            if R[u, v]:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[max(ru, rv)] = min(ru, rv)
    return Partition.from_keys(G.labels, [find(v) for v in range(n)])


def is_equivalence(R):
    R = np.asarray(R, dtype=np.bool_)
    if not R.diagonal().all() or not np.array_equal(R, R.T):
        return False
    Ri = R.astype(np.int64)
    return bool(((Ri @ Ri > 0) <= R).all())


def theta_and_primitive(M, G):
    """Vertex -> (|Rx|, whether Rx is simple)."""
    out = {}
    for i in G.index:
        cyc = M.cyclic[i]
        size = int(M.cyclic_sizes[i])
        inner = np.flatnonzero(cyc)[1:]
        simple = bool((M.cyclic_sizes[inner] == size).all())
        out[M.labels[i]] = (size, simple)
    return out


@dataclass(frozen=True)
class ClassTable:
    left: tuple
    right: tuple

    @property
    def equal(self):
        return Counter(self.left) == Counter(self.right)


def class_cardinality_table(M, N, flavor="full"):
    """Submodule-class size multisets of the objects of M and N, sorted descending."""
    from .graphs import build_graph

    a = submodule_classes(M, build_graph(M, flavor))
    b = submodule_classes(N, build_graph(N, flavor))
    return ClassTable(tuple(a.sizes()), tuple(b.sizes()))
