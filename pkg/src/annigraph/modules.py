"""Finite modules over the supported rings.

Every module is carried as integer tables (:class:`FiniteModule`): elements are
indexed ``0..n-1`` with the zero element at index 0, ``add[a, b]`` is the
index of ``a + b`` and ``act[r, m]`` the index of ``r * m`` for ``r`` in the
*acting ring*.  For modules over a finite ring the acting ring is the ring
itself.  A finite module over the integers is acted on through
``Z/exp(M)``; ideals computed there are lifted back to ``gZ`` (always with
``g`` dividing ``exp(M)``), and every such ideal is nonzero, hence essential,
in ``Z``.  ``over_domain`` records that lift.

Structured modules (:class:`Module`) are direct sums of cyclic modules;
quotients and fraction modules are table modules with labelled elements.
"""
import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, lcm, prod

import numpy as np

from . import _kernels
from .errors import AnnigraphError, BoundExceeded
from .rings import Ideal, Ring, ZMod, enumerate_ideals, ideal_from_indices, maximal_ideals

DEFAULT_SUBMODULE_BOUND = 256


def _pack(mask):
    return np.packbits(mask, bitorder="little").tobytes()


def principal_matrix(acting):
    """P[a, b] is True iff b lies in the principal ideal generated by a."""
    cached = getattr(acting, "_principal_matrix", None)
    if cached is None:
        n = acting.size
        cached = np.zeros((n, n), dtype=np.bool_)
        cached[np.arange(n)[:, None], acting.mul_table] = True
        acting._principal_matrix = cached
    return cached


class FiniteModule:
    """Table representation shared by every finite module.

    Subclasses set ``ring``, ``acting``, ``over_domain``, ``add``, ``act``,
    ``gens`` and ``labels``.
    """

    ring = None
    acting = None
    over_domain = False
    add = None
    act = None
    gens = ()
    labels = ()

    @property
    def size(self):
        return self.add.shape[0]

    def __len__(self):
        return self.size

    def label(self, i):
        return self.labels[int(i)]

    @cached_property
    def _index_of(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, m):
        try:
            return self._index_of[m]
        except KeyError:
            raise AnnigraphError(f"{m!r} is not an element of {self}") from None

    def ring_index(self, r):
        """Index in the acting ring of a ring element ``r``."""
        return self.acting.index(r)

    # ---------------------------------------------------------- derived tables

    @cached_property
    def neg(self):
        return np.argmax(self.add == 0, axis=1)

    @cached_property
    def sub_table(self):
        return self.add[:, self.neg]

    @cached_property
    def cyclic(self):
        """cyclic[x, m]: m lies in R*x."""
        return _kernels.cyclic_closure(self.act)

    @cached_property
    def colon(self):
        """colon[x, r]: r lies in [x : M]."""
        return _kernels.colon_matrix(self.act, self.cyclic, list(self.gens))

    @cached_property
    def kills(self):
        """kills[m, r]: r * m == 0, i.e. r lies in ann(m)."""
        return _kernels.kills_matrix(self.act, 0)

    @cached_property
    def ann_mask(self):
        """Mask of ann(M) in the acting ring."""
        if not len(self.gens):
            return np.ones(self.acting.size, dtype=np.bool_)
        return self.kills[list(self.gens)].all(axis=0)

    @cached_property
    def killer(self):
        """killer[r, s]: the product r*s annihilates M."""
        return self.ann_mask[self.acting.mul_table]

    @cached_property
    def product_kills(self):
        """product_kills[x, y]: [x:M][y:M]M == 0."""
        return _kernels.adjacency(self.colon, self.killer)

    @cached_property
    def cyclic_sizes(self):
        return self.cyclic.sum(axis=1)

    # ------------------------------------------------------ ideal semantics

    def ideal_nonzero(self, mask):
        """Whether the ideal with this acting-ring mask is nonzero in ``ring``."""
        if self.over_domain:
            return True
        return bool(mask[1:].any())

    def ideal_is_unit(self, mask):
        return bool(mask[self.acting.one_index])

    def ideal_essential(self, mask):
        """Essentiality in ``ring`` of the ideal with this acting-ring mask."""
        if self.over_domain:
            return True
        P = principal_matrix(self.acting)
        meets = (P[1:] & mask[None, :])[:, 1:].any(axis=1)
        return bool(meets.all())

    def lift_ideal(self, mask):
        """Public form of an acting-ring ideal: an :class:`Ideal` where possible."""
        mask = np.asarray(mask, dtype=np.bool_)
        if isinstance(self.ring, Ring):
            if not self.ring.is_finite:
                e = self.acting.moduli[0]
                g = reduce(gcd, (int(self.acting.element(i)[0]) for i in np.flatnonzero(mask)), e)
                return Ideal(self.ring, (g,))
            return ideal_from_indices(self.ring, mask)
        return frozenset(int(i) for i in np.flatnonzero(mask))

    def ideal_mask(self, ideal):
        """Acting-ring mask of an :class:`Ideal` of ``ring``."""
        if isinstance(ideal, Ideal):
            if ideal.ring != self.ring:
                raise AnnigraphError("ideal over a different ring")
            if not self.ring.is_finite:
                h = gcd(ideal.gens[0], self.acting.moduli[0])
                return np.arange(self.acting.size) % h == 0
            return ideal.mask.copy()
        mask = np.zeros(self.acting.size, dtype=np.bool_)
        mask[list(ideal)] = True
        return mask

    # ------------------------------------------------------------ submodules

    def span_mask(self, seeds):
        """Mask of the submodule generated by the element indices ``seeds``."""
        cur = np.zeros(self.size, dtype=np.bool_)
        cur[0] = True
        for x in seeds:
            x = int(x)
            if cur[x]:
                continue
            cur = self._sum_masks(cur, self.cyclic[x])
        return cur

    def _sum_masks(self, a, b):
        ia, ib = np.flatnonzero(a), np.flatnonzero(b)
        out = np.zeros(self.size, dtype=np.bool_)
        out[self.add[np.ix_(ia, ib)].ravel()] = True
        return out

    def submodule(self, mask_or_indices):
        return Submodule.from_mask(self, mask_or_indices)

    @cached_property
    def distinct_cyclics(self):
        """Distinct cyclic submodules as masks, ordered by (size, elements)."""
        seen = {}
        for x in range(self.size):
            key = _pack(self.cyclic[x])
            if key not in seen:
                seen[key] = self.cyclic[x]
        return sorted(seen.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))

    def lattice(self, bound=DEFAULT_SUBMODULE_BOUND):
        """All submodule masks, ordered by (size, elements)."""
        if self.size > bound:
            raise BoundExceeded(f"module of order {self.size} exceeds the submodule bound {bound}")
        cached = self.__dict__.get("_lattice")
        if cached is not None:
            return cached
        cycl = np.array(self.distinct_cyclics)
        zero = np.zeros(self.size, dtype=np.bool_)
        zero[0] = True
        found = {_pack(zero): zero}
        frontier = [zero]
        sub = self.sub_table
        while frontier:
            nxt = []
            for S in frontier:
                s_idx = np.flatnonzero(S)
                # (S + C)[m] iff m - s in C for some s in S
                sums = cycl[:, sub[:, s_idx]].any(axis=2)
                for row in sums:
                    key = _pack(row)
                    if key not in found:
                        found[key] = row
                        nxt.append(row)
            frontier = nxt
        out = sorted(found.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))
        self.__dict__["_lattice"] = out
        return out

    def colon_of_mask(self, mask):
        """Acting-ring mask of [N : M] for the submodule with this mask."""
        if not len(self.gens):
            return np.ones(self.acting.size, dtype=np.bool_)
        return mask[self.act[:, list(self.gens)]].all(axis=1)

    def ideal_times_module_mask(self, ideal_mask):
        """Mask of I*M: the additive span of all r*m with r in I."""
        prods = np.unique(self.act[np.flatnonzero(ideal_mask)].ravel())
        return self.span_mask(prods)

    def elements(self):
        return list(self.labels)


class Module(FiniteModule):
    """Direct sum of cyclic modules Z/d_1 + ... + Z/d_k over a supported ring.

    Over a product ring each summand is tagged with the ring component that
    acts on it; the ring acts coordinatewise through reduction.
    """

    def __init__(self, ring, factors, tags=None):
        factors = tuple(int(d) for d in factors)
        if any(d < 2 for d in factors):
            raise AnnigraphError("cyclic orders must be >= 2")
        if not factors and not ring.is_finite:
            raise AnnigraphError("the zero module over Z is not supported")
        if tags is None:
            tags = tuple(_infer_tag(ring, d) for d in factors)
        tags = tuple(int(t) for t in tags)
        if len(tags) != len(factors):
            raise AnnigraphError("one tag per factor is required")
        if ring.is_finite:
            for d, t in zip(factors, tags):
                if not 0 <= t < len(ring.moduli):
                    raise AnnigraphError(f"tag {t} out of range for {ring}")
                n = ring.moduli[t]
                if n % d:
                    raise AnnigraphError(f"{d} does not divide {n}: the action is not well defined")
            acting = ring
        else:
            if any(tags):
                raise AnnigraphError("factors over Z carry tag 0")
            acting = ZMod(lcm(*factors))
        self.ring = ring
        self.factors = factors
        self.tags = tags
        self.acting = acting
        self.over_domain = not ring.is_finite

        coords = np.array(list(itertools.product(*(range(d) for d in factors))), dtype=np.int64)
        coords = coords.reshape(-1, len(factors))
        self._coords = coords
        self._mods = np.array(factors, dtype=np.int64)
        strides, acc = [], 1
        for d in reversed(factors):
            strides.append(acc)
            acc *= d
        self._strides = np.array(list(reversed(strides)), dtype=np.int64)
        self.add = self._encode((coords[:, None, :] + coords[None, :, :]) % self._mods)
        rc = acting._coords[:, list(tags)] if factors else np.zeros((acting.size, 0), dtype=np.int64)
        self.act = self._encode((rc[:, None, :] * coords[None, :, :]) % self._mods)
        self.gens = tuple(int(s) for s in self._strides)
        self.labels = [tuple(int(c) for c in row) for row in coords]

    def _encode(self, c):
        if not self.factors:
            return np.zeros(c.shape[:-1], dtype=np.int64)
        return (c * self._strides).sum(axis=-1)

    @property
    def spec(self):
        return (self.ring.spec, self.factors, self.tags)

    def __eq__(self, other):
        return isinstance(other, Module) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Module({self})"

    def __str__(self):
        if not self.factors:
            return f"0 over {self.ring}"
        if self.ring.kind == "Product":
            parts = [f"Z/{d}@{t}" for d, t in zip(self.factors, self.tags)]
        else:
            parts = [f"Z/{d}" for d in self.factors]
        return " + ".join(parts) + f" over {self.ring}"

    @property
    def exponent(self):
        return lcm(*self.factors) if self.factors else 1

    def coerce(self, m):
        if isinstance(m, (int, np.integer)):
            m = (int(m),)
        m = tuple(int(c) % d for c, d in zip(m, self.factors))
        if len(m) != len(self.factors):
            raise AnnigraphError(f"{m} has the wrong number of coordinates")
        return m

    def index(self, m):
        return int((np.array(self.coerce(m), dtype=np.int64) * self._strides).sum()) if self.factors else 0

    def ring_index(self, r):
        r = self.ring.coerce(r)
        if not self.ring.is_finite:
            return r % self.acting.moduli[0]
        return self.ring.index(r)

    def scalar(self, r, m):
        return self.labels[self.act[self.ring_index(r), self.index(m)]]

    def plus(self, a, b):
        return self.labels[self.add[self.index(a), self.index(b)]]


def _infer_tag(ring, d):
    if not ring.is_finite:
        return 0
    for t, n in enumerate(ring.moduli):
        if n % d == 0:
            return t
    raise AnnigraphError(f"{d} divides no component modulus of {ring}")


def make_module(ring, factors, tags=None):
    return Module(ring, factors, tags)


class TableModule(FiniteModule):
    """A finite module given directly by tables (quotients, submodule views)."""

    def __init__(self, ring, acting, over_domain, add, act, gens, labels, name="table module"):
        self.ring = ring
        self.acting = acting
        self.over_domain = over_domain
        self.add = np.asarray(add, dtype=np.int64)
        self.act = np.asarray(act, dtype=np.int64)
        self.gens = tuple(int(g) for g in gens)
        self.labels = list(labels)
        self.name = name

    def __repr__(self):
        return f"TableModule({self.name}, order {self.size})"

    __str__ = lambda self: self.name


def _restrict(M, idx):
    """Tables of M restricted to the closed index set ``idx``."""
    idx = np.asarray(idx, dtype=np.int64)
    where = -np.ones(M.size, dtype=np.int64)
    where[idx] = np.arange(idx.size)
    add = where[M.add[np.ix_(idx, idx)]]
    act = where[M.act[:, idx]]
    return add, act, where


@dataclass(frozen=True, eq=False)
class Submodule:
    parent: FiniteModule
    indices: tuple

    @classmethod
    def from_mask(cls, parent, mask_or_indices):
        arr = np.asarray(mask_or_indices)
        if arr.dtype == np.bool_:
            idx = np.flatnonzero(arr)
        else:
            idx = np.unique(arr.astype(np.int64))
        return cls(parent, tuple(int(i) for i in idx))

    @cached_property
    def mask(self):
        m = np.zeros(self.parent.size, dtype=np.bool_)
        m[list(self.indices)] = True
        return m

    @property
    def size(self):
        return len(self.indices)

    def __len__(self):
        return self.size

    @property
    def elements(self):
        return [self.parent.labels[i] for i in self.indices]

    def __contains__(self, m):
        return self.parent.index(m) in set(self.indices)

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and (other.parent is self.parent or other.parent == self.parent)
            and other.indices == self.indices
        )

    def __hash__(self):
        return hash(self.indices)

    def __le__(self, other):
        return set(self.indices) <= set(other.indices)

    def __repr__(self):
        return "Submodule{" + ", ".join(map(str, self.elements)) + "}"

    def is_closed(self):
        """Closed under addition and the ring action (and contains 0)."""
        m = self.mask
        idx = list(self.indices)
        return bool(m[0] and m[self.parent.add[np.ix_(idx, idx)]].all() and m[self.parent.act[:, idx]].all())

    def as_module(self):
        P = self.parent
        add, act, where = _restrict(P, self.indices)
        gens = [where[i] for i in minimal_generating_set(P, self.mask)]
        return TableModule(
            P.ring, P.acting, P.over_domain, add, act, gens,
            [P.labels[i] for i in self.indices], name=f"submodule of {P}",
        )


def minimal_generating_set(M, mask=None):
    """A generating set of the submodule ``mask`` chosen greedily by cyclic size."""
    if mask is None:
        mask = np.ones(M.size, dtype=np.bool_)
    idx = np.flatnonzero(mask)
    order = sorted(idx, key=lambda i: (-int(M.cyclic_sizes[i]), int(i)))
    span = np.zeros(M.size, dtype=np.bool_)
    span[0] = True
    gens = []
    for x in order:
        if not span[x]:
            gens.append(int(x))
            span = M._sum_masks(span, M.cyclic[x])
    return gens


# ---------------------------------------------------------------- operations


def scalar_action(M, r, m):
    return M.scalar(r, m)


def _indices(M, S):
    return [M.index(s) for s in S]


def submodule_generated(M, S):
    return Submodule.from_mask(M, M.span_mask(_indices(M, S)))


def colon_ideal(N, M=None):
    """[N : M] = {r : rM in N}."""
    M = N.parent if M is None else M
    return M.lift_ideal(M.colon_of_mask(N.mask))


def element_colon(M, x):
    """[x : M] = [Rx : M]."""
    return M.lift_ideal(M.colon[M.index(x)])


def ideal_times_module(I, M):
    return Submodule.from_mask(M, M.ideal_times_module_mask(M.ideal_mask(I)))


def annihilators(M, m=None):
    """ann(m) if ``m`` is given, else ann(M) = [0 : M]."""
    if m is None:
        return M.lift_ideal(M.ann_mask)
    return M.lift_ideal(M.kills[M.index(m)])


def enumerate_submodules(M, bound=DEFAULT_SUBMODULE_BOUND):
    return [Submodule.from_mask(M, m) for m in M.lattice(bound)]


def is_essential_mask(M, mask, method="cyclic"):
    if method == "cyclic":
        meets = (M.cyclic[1:] & mask[None, :])[:, 1:].any(axis=1)
        return bool(meets.all())
    if method == "lattice":
        return all(bool((K & mask)[1:].any()) for K in M.lattice() if K[1:].any())
    raise AnnigraphError(f"unknown method {method!r}")


def is_essential_submodule(N, M=None, method="cyclic"):
    """N meets every nonzero submodule (``cyclic``: every nonzero cyclic one)."""
    M = N.parent if M is None else M
    return is_essential_mask(M, N.mask, method)


def minimal_submodule_masks(M):
    nonzero = [c for c in M.distinct_cyclics if c[1:].any()]
    return [c for c in nonzero if not any(d[1:].any() and (d <= c).all() and d.sum() < c.sum()
                                          for d in nonzero)]


def socle_mask(M):
    union = np.zeros(M.size, dtype=np.bool_)
    for c in minimal_submodule_masks(M):
        union |= c
    return M.span_mask(np.flatnonzero(union))


def maximal_submodule_masks(M):
    lat = M.lattice()
    proper = [s for s in lat if not s.all()]
    return [s for s in proper
            if not any(t.sum() > s.sum() and (s <= t).all() for t in proper)]


def _maximal_ideal_masks(M):
    if not isinstance(M.acting, Ring):
        return None
    return [I.mask for I in maximal_ideals(M.acting)]


def radical_mask(M, method="formula"):
    """Intersection of the maximal submodules.

    ``formula``: a maximal submodule contains PM for a maximal ideal P with
    PM != M, and the hyperplanes of the vector space M/PM meet in 0, so the
    radical is the intersection of those PM.  ``lattice`` scans all
    submodules.
    """
    masks = _maximal_ideal_masks(M) if method == "formula" else None
    if masks is None:
        out = np.ones(M.size, dtype=np.bool_)
        for s in maximal_submodule_masks(M):
            out &= s
        return out
    out = np.ones(M.size, dtype=np.bool_)
    for P in masks:
        pm = M.ideal_times_module_mask(P)
        if not pm.all():
            out &= pm
    return out


def nil_mask(M):
    """{x : [x : M] x = 0}."""
    return ~(M.colon & ~M.kills).any(axis=1)


def is_prime_mask(M, mask):
    """N != M and (r m in N => m in N or r in [N : M])."""
    if mask.all():
        return False
    colon = M.colon_of_mask(mask)
    inside = mask[M.act]  # [r, m]
    bad = inside & ~mask[None, :] & ~colon[:, None]
    return not bool(bad.any())


def prime_submodule_masks(M):
    return [s for s in M.lattice() if is_prime_mask(M, s)]


def prime_intersection_mask(M, method="formula"):
    """Intersection of all prime submodules.

    Over a finite ring [N : M] is prime, hence maximal, for prime N, and the
    prime submodules are exactly the proper N containing PM for a maximal P;
    so the intersection coincides with the radical.
    """
    if method == "formula":
        return radical_mask(M, "formula")
    out = np.ones(M.size, dtype=np.bool_)
    for s in prime_submodule_masks(M):
        out &= s
    return out


def singular_mask(M):
    return np.array([M.ideal_essential(M.kills[m]) for m in range(M.size)], dtype=np.bool_)


@dataclass(frozen=True)
class Structure:
    socle: Submodule
    radical: Submodule
    nil_set: frozenset
    nil_closed: bool
    singular_set: frozenset
    essoc: bool


def structure_submodules(M):
    soc = socle_mask(M)
    nil = nil_mask(M)
    nil_idx = np.flatnonzero(nil)
    closed = bool(nil[M.add[np.ix_(nil_idx, nil_idx)]].all())
    sing = singular_mask(M)
    return Structure(
        socle=Submodule.from_mask(M, soc),
        radical=Submodule.from_mask(M, radical_mask(M)),
        nil_set=frozenset(M.labels[i] for i in nil_idx),
        nil_closed=closed,
        singular_set=frozenset(M.labels[i] for i in np.flatnonzero(sing)),
        essoc=is_essential_mask(M, soc),
    )


def is_multiplication(M, method="cyclic"):
    """Every submodule N equals [N : M] M.

    ``cyclic`` checks cyclic submodules only, which suffices because every
    submodule is a sum of cyclic ones and sums of ideals distribute over M.
    """
    if method == "cyclic":
        masks = M.distinct_cyclics
    elif method == "lattice":
        masks = M.lattice()
    else:
        raise AnnigraphError(f"unknown method {method!r}")
    for s in masks:
        if not np.array_equal(M.ideal_times_module_mask(M.colon_of_mask(s)), s):
            return False
    return True


def is_simple_module(M):
    return M.size > 1 and bool(M.cyclic[1:].all())


def distinguished_submodules(M):
    """(maximal submodules, prime submodules, simple flag)."""
    maximal = [Submodule.from_mask(M, s) for s in maximal_submodule_masks(M)]
    prime = [Submodule.from_mask(M, s) for s in prime_submodule_masks(M)]
    return maximal, prime, is_simple_module(M)


def quotient_module(M, N):
    """M/N with each coset represented by its least element."""
    mask = N.mask
    idx = np.flatnonzero(mask)
    rep = np.full(M.size, -1, dtype=np.int64)
    for m in range(M.size):
        if rep[m] < 0:
            rep[M.add[m, idx]] = m
    reps = np.unique(rep)
    where = -np.ones(M.size, dtype=np.int64)
    where[reps] = np.arange(reps.size)
    to_q = where[rep]
    add = to_q[M.add[np.ix_(reps, reps)]]
    act = to_q[M.act[:, reps]]
    gens = sorted({int(to_q[g]) for g in M.gens})
    return TableModule(M.ring, M.acting, M.over_domain, add, act, gens,
                       [M.labels[i] for i in reps], name=f"{M} / order {N.size}")


def ideal_as_module(I):
    """The ideal (g) of a finite ring as an R-module, i.e. R/ann(g)."""
    ring = I.ring
    if not ring.is_finite:
        raise AnnigraphError("ideals of Z are not finite modules")
    factors, tags = [], []
    for t, (g, n) in enumerate(zip(I.gens, ring.moduli)):
        if n // g > 1:
            factors.append(n // g)
            tags.append(t)
    return Module(ring, factors, tags)


def ring_quotient_module(I):
    """R/I as an R-module."""
    ring = I.ring
    if not ring.is_finite:
        raise AnnigraphError("only finite rings")
    factors, tags = [], []
    for t, g in enumerate(I.gens):
        if g > 1:
            factors.append(g)
            tags.append(t)
    return Module(ring, factors, tags)


def is_injective(M):
    """Baer criterion over a finite ring.

    Every ideal here is principal, I = (g) = Rg, and a linear map Rg -> M is
    determined by u = f(g) subject to ann(g) u = 0.  It extends to R exactly
    when u = g m for some m.
    """
    if not isinstance(M.ring, Ring) or not M.ring.is_finite:
        raise AnnigraphError("injectivity is decided over finite rings only")
    ring = M.acting
    for I in enumerate_ideals(ring):
        g = ring.index(I.generator)
        ann_g = np.flatnonzero(ring.mul_table[g] == 0)
        homs = ~(~M.kills[:, ann_g]).any(axis=1) if ann_g.size else np.ones(M.size, dtype=np.bool_)
        image = np.zeros(M.size, dtype=np.bool_)
        image[M.act[g]] = True
        if (homs & ~image).any():
            return False
    return True


def invariant_factors(M, mask=None):
    """Invariant factors d_1 | d_2 | ... of the additive group of M (or a submodule)."""
    if mask is None:
        mask = np.ones(M.size, dtype=np.bool_)
    idx = [int(x) for x in np.flatnonzero(mask)]
    n = len(idx)
    orders = []
    for x in idx:
        k, y = 1, x
        while y != 0:
            y = int(M.add[y, x])
            k += 1
        orders.append(k)
    per_prime = []
    for p in sorted(set(_prime_factors(n))):
        full = p ** _pval(n, p)
        # ge[k-1]: number of cyclic p-factors of order >= p^k
        ge, prev, k = [], 1, 0
        while prev < full:
            k += 1
            c = sum(1 for o in orders if (p ** k) % o == 0)
            ge.append(round(np.log(c // prev) / np.log(p)))
            prev = c
        parts = []
        for k, r in enumerate(ge):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            parts += [p ** (k + 1)] * (r - nxt)
        per_prime.append(sorted(parts, reverse=True))
    width = max((len(e) for e in per_prime), default=0)
    out = [prod(e[i] for e in per_prime if i < len(e)) for i in range(width)]
    return tuple(sorted(out))


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _pval(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _as_table(X):
    if isinstance(X, Submodule):
        return X.as_module()
    return X


def module_isomorphic(M, N, method=None):
    """Whether an R-linear bijection M -> N exists.

    Over the integers the invariant factors decide; otherwise (or with
    ``method="search"``) generator images are searched with annihilator
    pruning.
    """
    M, N = _as_table(M), _as_table(N)
    if M.ring != N.ring:
        raise AnnigraphError("modules over different rings")
    if M.size != N.size:
        return False
    if method is None:
        method = "invariants" if isinstance(M.ring, Ring) and not M.ring.is_finite else "search"
    if method == "invariants":
        return invariant_factors(M) == invariant_factors(N)
    if method != "search":
        raise AnnigraphError(f"unknown method {method!r}")
    if M.acting is not N.acting and not (isinstance(M.acting, Ring) and M.acting == N.acting):
        if M.over_domain and N.over_domain:
            return False  # Z acts through Z/exp, and the exponents differ
        raise AnnigraphError("search needs a common acting ring")
    return _iso_search(M, N) is not None


def _iso_search(M, N):
    gens = minimal_generating_set(M)
    ann_key_N = {}
    for y in range(N.size):
        ann_key_N.setdefault(_pack(N.kills[y]), []).append(y)
    cands = [ann_key_N.get(_pack(M.kills[g]), []) for g in gens]

    def extend(mapping, g, h):
        known = np.flatnonzero(mapping >= 0)
        src = M.add[known[:, None], M.act[:, g][None, :]].ravel()
        img = N.add[mapping[known][:, None], N.act[:, h][None, :]].ravel()
        new = mapping.copy()
        new[src] = img
        if not np.array_equal(new[src], img):
            return None
        # close under the new generator until stable
        while True:
            known = np.flatnonzero(new >= 0)
            src = M.add[known[:, None], known[None, :]].ravel()
            img = N.add[new[known][:, None], new[known][None, :]].ravel()
            nxt = new.copy()
            nxt[src] = img
            if not np.array_equal(nxt[src], img):
                return None
            if np.array_equal(nxt, new):
                return new
            new = nxt

    def rec(i, mapping):
        if i == len(gens):
            imgs = mapping
            if (imgs < 0).any() or np.unique(imgs).size != N.size:
                return None
            return imgs
        for h in cands[i]:
            nxt = extend(mapping, gens[i], h)
            if nxt is not None:
                got = rec(i + 1, nxt)
                if got is not None:
                    return got
        return None

    start = -np.ones(M.size, dtype=np.int64)
    start[0] = 0
    return rec(0, start)


def direct_sum_decomposition(M):
    """Two nonzero submodules with M = M1 (+) M2, or None."""
    lat = M.lattice()
    nonzero = [s for s in lat if s[1:].any() and not s.all()]
    n = M.size
    for a in nonzero:
        for b in nonzero:
            if a.sum() * b.sum() == n and not (a & b)[1:].any():
                return Submodule.from_mask(M, a), Submodule.from_mask(M, b)
    return None
