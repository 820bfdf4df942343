"""Rings and modules of fractions at T = R minus C(M).

C(M) collects the ring elements killing some nonzero element of M.  Over the
integers everything happens in Z/exp(M), through which the action factors.
Fractions are classes of pairs (a, s), s in T, with (a, s) ~ (a', s') iff
t(s'a - sa') = 0 for some t in T; class ids follow a fixed pair order with
(0, 1) first, so the zero class always has index 0.
"""
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import AnnigraphError
from .modules import FiniteModule


def zero_divisor_mask(M):
    """Mask over the acting ring of C(M)."""
    return M.kills[1:].any(axis=0) if M.size > 1 else np.zeros(M.acting.size, dtype=np.bool_)


def zero_divisors_on_module(M):
    """(C(M), T) as sets of acting-ring labels."""
    c = zero_divisor_mask(M)
    labels = M.acting.labels
    return (frozenset(labels[i] for i in np.flatnonzero(c)),
            frozenset(labels[i] for i in np.flatnonzero(~c)))


def denominator_mask(M):
    return ~zero_divisor_mask(M)


def _as_mask(ring, T):
    if isinstance(T, np.ndarray) and T.dtype == np.bool_:
        return T.copy()
    mask = np.zeros(ring.size, dtype=np.bool_)
    for t in T:
        mask[t if isinstance(t, (int, np.integer)) else ring.index(t)] = True
    return mask


def _check_multiplicative(ring, T):
    if not T[ring.one_index]:
        raise AnnigraphError("T must contain 1")
    idx = np.flatnonzero(T)
    if not T[ring.mul_table[np.ix_(idx, idx)]].all():
        raise AnnigraphError("T is not closed under multiplication")


def _pairs(T, n, one):
    """Pair order: denominator 1 first, numerators ascending within a denominator."""
    dens = [one] + [int(s) for s in np.flatnonzero(T) if s != one]
    pm = np.repeat(np.arange(n), len(dens)).reshape(n, len(dens)).T.ravel()
    ps = np.repeat(np.array(dens, dtype=np.int64), n)
    pos = -np.ones(T.size, dtype=np.int64)
    pos[dens] = np.arange(len(dens))
    return pm, ps, pos


class FractionRing:
    """T^{-1}R for a finite ring R, carried as tables."""

    def __init__(self, base, T):
        self.base = base
        self.T = _as_mask(base, T)
        _check_multiplicative(base, self.T)
        n = base.size
        one = base.one_index
        tidx = np.flatnonzero(self.T)
        killed = (base.mul_table[tidx] == 0).any(axis=0)
        sub = base.add_table[:, np.argmax(base.add_table == 0, axis=1)]
        pm, ps, pos = _pairs(self.T, n, one)
        cls = _kernels.fraction_labels(killed, sub, base.mul_table, pm, ps)
        self._pair_class = cls
        self._pos = pos
        self._n = n
        k = int(cls.max()) + 1
        first = np.full(k, -1, dtype=np.int64)
        for p in range(cls.size - 1, -1, -1):
            first[cls[p]] = p
        self.rep_num = pm[first]
        self.rep_den = ps[first]
        a, s = self.rep_num, self.rep_den
        mul, add = base.mul_table, base.add_table
        num_sum = add[mul[a[:, None], s[None, :]], mul[s[:, None], a[None, :]]]
        den = mul[s[:, None], s[None, :]]
        self.add_table = self.class_of(num_sum, den)
        self.mul_table = self.class_of(mul[a[:, None], a[None, :]], den)
        self.labels = [f"{base.labels[x]}/{base.labels[y]}" for x, y in zip(a, s)]
        self.one_index = int(self.class_of(one, one))
        self.zero_index = 0
        self.verify_axioms()

    def class_of(self, num, den):
        num = np.asarray(num)
        den = np.asarray(den)
        return self._pair_class[self._pos[den] * self._n + num]

    @property
    def size(self):
        return len(self.labels)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FractionRing(order {self.size} from {self.base})"

    @cached_property
    def _index_of(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, x):
        if isinstance(x, (int, np.integer)):
            return int(x)
        try:
            return self._index_of[x]
        except KeyError:
            raise AnnigraphError(f"{x!r} is not an element of {self}") from None

    def image(self, r):
        """Index of r/1."""
        return int(self.class_of(self.base.index(r), self.base.one_index))

    def verify_axioms(self):
        A, Mu = self.add_table, self.mul_table
        k = self.size
        ok = np.array_equal(A, A.T) and np.array_equal(Mu, Mu.T)
        i = np.arange(k)
        assoc_add = A[A[:, :, None], i[None, None, :]] == A[i[:, None, None], A[None, :, :]]
        assoc_mul = Mu[Mu[:, :, None], i[None, None, :]] == Mu[i[:, None, None], Mu[None, :, :]]
        dist = Mu[i[:, None, None], A[None, :, :]] == A[Mu[:, :, None], Mu[:, None, :]]
        ok = ok and assoc_add.all() and assoc_mul.all() and dist.all()
        ok = ok and (A[0] == i).all() and (Mu[self.one_index] == i).all()
        ok = ok and (A == 0).any(axis=1).all()
        if not ok:
            raise AnnigraphError("fraction tables violate the ring axioms")

    def units_mask(self):
        return (self.mul_table == self.one_index).any(axis=1)

    def denominators_become_units(self):
        u = self.units_mask()
        one = self.base.one_index
        return all(u[self.class_of(t, one)] for t in np.flatnonzero(self.T))

    def characteristic(self):
        k, x = 1, self.one_index
        while x != 0:
            x = int(self.add_table[x, self.one_index])
            k += 1
        return k


def fraction_ring(R, T):
    return FractionRing(R, T)


class FractionModule(FiniteModule):
    """T^{-1}M over T^{-1}R, with R the acting ring of M."""

    def __init__(self, M, T, ring=None):
        base = M.acting
        self.base = M
        T = _as_mask(base, T)
        self.ring = ring if ring is not None else FractionRing(base, T)
        self.acting = self.ring
        self.over_domain = M.over_domain
        self.T = T
        n = M.size
        one = base.one_index
        tidx = np.flatnonzero(T)
        killed = (M.act[tidx] == 0).any(axis=0)
        pm, ps, pos = _pairs(T, n, one)
        cls = _kernels.fraction_labels(killed, M.sub_table, M.act, pm, ps)
        self._pair_class, self._pos, self._n = cls, pos, n
        k = int(cls.max()) + 1
        first = np.full(k, -1, dtype=np.int64)
        for p in range(cls.size - 1, -1, -1):
            first[cls[p]] = p
        m, s = pm[first], ps[first]
        self.rep_num, self.rep_den = m, s
        mul = base.mul_table
        num_sum = M.add[M.act[s[None, :], m[:, None]], M.act[s[:, None], m[None, :]]]
        self.add = self.class_of(num_sum, mul[s[:, None], s[None, :]])
        R = self.ring
        self.act = self.class_of(M.act[R.rep_num[:, None], m[None, :]],
                                 mul[R.rep_den[:, None], s[None, :]])
        self.gens = tuple(sorted({int(self.class_of(g, one)) for g in M.gens}))
        self.labels = [(M.labels[a], base.labels[b]) for a, b in zip(m, s)]
        self.verify_axioms()

    def class_of(self, num, den):
        return self._pair_class[self._pos[np.asarray(den)] * self._n + np.asarray(num)]

    def __repr__(self):
        return f"FractionModule(order {self.size} from {self.base})"

    def __str__(self):
        return f"T^-1 ({self.base})"

    def verify_axioms(self):
        A, act = self.add, self.act
        RA, RM = self.ring.add_table, self.ring.mul_table
        k = self.size
        i = np.arange(k)
        ok = np.array_equal(A, A.T) and (A[0] == i).all() and (act[self.ring.one_index] == i).all()
        ok = ok and (A[A[:, :, None], i[None, None, :]] == A[i[:, None, None], A[None, :, :]]).all()
        ok = ok and (act[:, A] == A[act[:, :, None], act[:, None, :]]).all()
        ok = ok and (act[RA] == A[act[:, None, :], act[None, :, :]]).all()
        ok = ok and (act[RM] == act[np.arange(RM.shape[0])[:, None, None], act[None, :, :]]).all()
        if not ok:
            raise AnnigraphError("fraction tables violate the module axioms")


def fraction_module(M, T=None):
    """T^{-1}M; T defaults to the complement of C(M)."""
    if T is None:
        T = denominator_mask(M)
    return FractionModule(M, T)
