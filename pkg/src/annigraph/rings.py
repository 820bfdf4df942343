"""Commutative rings Z, Z/n and finite products of Z/n, with their ideals.

Finite ring elements are tuples of residues, one per component (a 1-tuple for
``Z/n``), ordered lexicographically.  Elements of the integers are plain ints.
Every ideal of a product of cyclic rings is a product of principal ideals, so
an ideal is stored as one generator per component (a divisor of that
component's modulus); the element set is materialised from it on demand.
"""
import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, lcm, prod

import numpy as np

from .errors import AnnigraphError, NotEnumerableError

INTEGERS = "Integers"
ZMOD = "ZMod"
PRODUCT = "Product"


@dataclass(frozen=True)
class RingSpec:
    kind: str
    moduli: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(n) for n in self.moduli))
        if self.kind == INTEGERS:
            if self.moduli:
                raise AnnigraphError("the integers take no moduli")
        elif self.kind == ZMOD:
            if len(self.moduli) != 1:
                raise AnnigraphError("ZMod needs exactly one modulus")
        elif self.kind == PRODUCT:
            if not self.moduli:
                raise AnnigraphError("a product ring needs at least one component")
        else:
            raise AnnigraphError(f"unknown ring kind {self.kind!r}")
        for n in self.moduli:
            if n < 2:
                raise AnnigraphError(f"modulus {n} is < 2")

    def __str__(self):
        if self.kind == INTEGERS:
            return "Z"
        return " x ".join(f"Z/{n}" for n in self.moduli)


class Ring:
    """A supported commutative ring.  Build with :func:`make_ring` or the helpers."""

    def __init__(self, spec):
        self.spec = spec

    kind = property(lambda self: self.spec.kind)
    moduli = property(lambda self: self.spec.moduli)

    @property
    def is_finite(self):
        return self.spec.kind != INTEGERS

    def __eq__(self, other):
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Ring({self.spec})"

    __str__ = lambda self: str(self.spec)

    def _need_finite(self):
        if not self.is_finite:
            raise NotEnumerableError("the integers have no finite element list")

    @cached_property
    def size(self):
        self._need_finite()
        return prod(self.moduli)

    @cached_property
    def _strides(self):
        strides, acc = [], 1
        for n in reversed(self.moduli):
            strides.append(acc)
            acc *= n
        return tuple(reversed(strides))

    @cached_property
    def elements(self):
        self._need_finite()
        return [tuple(t) for t in itertools.product(*(range(n) for n in self.moduli))]

    def coerce(self, x):
        """Map an int or tuple into the ring (ints go through Z -> R)."""
        if not self.is_finite:
            if isinstance(x, tuple):
                (x,) = x
            return int(x)
        if isinstance(x, (int, np.integer)):
            return tuple(int(x) % n for n in self.moduli)
        x = tuple(int(c) for c in x)
        if len(x) != len(self.moduli):
            raise AnnigraphError(f"{x} has the wrong number of coordinates for {self}")
        return tuple(c % n for c, n in zip(x, self.moduli))

    def index(self, x):
        x = self.coerce(x)
        return sum(c * s for c, s in zip(x, self._strides))

    def element(self, i):
        return self.elements[i]

    @property
    def zero(self):
        return 0 if not self.is_finite else tuple(0 for _ in self.moduli)

    @property
    def one(self):
        return 1 if not self.is_finite else tuple(1 % n for n in self.moduli)

    def add(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        if not self.is_finite:
            return a + b
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def mul(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        if not self.is_finite:
            return a * b
        return tuple((x * y) % n for x, y, n in zip(a, b, self.moduli))

    def neg(self, a):
        a = self.coerce(a)
        if not self.is_finite:
            return -a
        return tuple((-x) % n for x, n in zip(a, self.moduli))

    def format(self, x):
        x = self.coerce(x)
        if not self.is_finite:
            return str(x)
        if len(x) == 1:
            return str(x[0])
        return "(" + ",".join(map(str, x)) + ")"

    # table protocol shared with fraction rings

    @cached_property
    def _coords(self):
        return np.array(self.elements, dtype=np.int64).reshape(self.size, len(self.moduli))

    def _encode(self, coords):
        return (coords * np.array(self._strides, dtype=np.int64)).sum(axis=-1)

    @cached_property
    def add_table(self):
        c = self._coords
        mods = np.array(self.moduli, dtype=np.int64)
        return self._encode((c[:, None, :] + c[None, :, :]) % mods)

    @cached_property
    def mul_table(self):
        c = self._coords
        mods = np.array(self.moduli, dtype=np.int64)
        return self._encode((c[:, None, :] * c[None, :, :]) % mods)

    @property
    def zero_index(self):
        return 0

    @cached_property
    def one_index(self):
        return self.index(self.one)

    @cached_property
    def labels(self):
        return [self.format(e) for e in self.elements]


def make_ring(spec):
    if not isinstance(spec, RingSpec):
        raise AnnigraphError(f"expected a RingSpec, got {spec!r}")
    return Ring(spec)


def Integers():
    return Ring(RingSpec(INTEGERS))


def ZMod(n):
    return Ring(RingSpec(ZMOD, (n,)))


def Product(*moduli):
    if len(moduli) == 1 and isinstance(moduli[0], (list, tuple)):
        moduli = tuple(moduli[0])
    return Ring(RingSpec(PRODUCT, tuple(moduli)))


# ------------------------------------------------------------------ ideals


@dataclass(frozen=True)
class Ideal:
    """An ideal, stored by its canonical generator tuple.

    For the integers ``gens == (g,)`` means gZ.  For finite rings there is one
    generator per component, each dividing that component's modulus; the
    zero ideal of Z/n has generator n.
    """

    ring: Ring
    gens: tuple

    def __post_init__(self):
        gens = tuple(int(g) for g in self.gens)
        if self.ring.is_finite:
            if len(gens) != len(self.ring.moduli) or any(
                g < 1 or n % g for g, n in zip(gens, self.ring.moduli)
            ):
                raise AnnigraphError(f"{gens} is not a canonical generator tuple for {self.ring}")
        elif len(gens) != 1 or gens[0] < 0:
            raise AnnigraphError(f"{gens} is not a nonnegative integer generator")
        object.__setattr__(self, "gens", gens)

    @property
    def generator(self):
        """The single ring element generating the ideal."""
        if not self.ring.is_finite:
            return self.gens[0]
        return self.ring.coerce(tuple(g % n for g, n in zip(self.gens, self.ring.moduli)))

    @cached_property
    def elements(self):
        self.ring._need_finite()
        parts = [range(0, n, g) for g, n in zip(self.gens, self.ring.moduli)]
        return frozenset(tuple(t) for t in itertools.product(*parts))

    @cached_property
    def indices(self):
        return frozenset(self.ring.index(e) for e in self.elements)

    @cached_property
    def mask(self):
        m = np.zeros(self.ring.size, dtype=np.bool_)
        m[list(self.indices)] = True
        return m

    def __contains__(self, x):
        x = self.ring.coerce(x)
        if not self.ring.is_finite:
            g = self.gens[0]
            return x == 0 if g == 0 else x % g == 0
        return all(c % g == 0 for c, g in zip(x, self.gens))

    @property
    def is_zero(self):
        if not self.ring.is_finite:
            return self.gens[0] == 0
        return self.gens == self.ring.moduli

    @property
    def is_unit(self):
        return all(g == 1 for g in self.gens)

    def __le__(self, other):
        _same_ring(self, other)
        if not self.ring.is_finite:
            a, b = self.gens[0], other.gens[0]
            return a == 0 or (b != 0 and a % b == 0) or b == 1
        return all(a % b == 0 for a, b in zip(self.gens, other.gens))

    def __lt__(self, other):
        return self <= other and self != other

    def __str__(self):
        if not self.ring.is_finite:
            return f"{self.gens[0]}Z"
        if len(self.gens) == 1:
            return f"({self.gens[0]})"
        return "(" + ", ".join(map(str, self.gens)) + ")"

    def sort_key(self):
        return self.gens


def _same_ring(a, b):
    if a.ring != b.ring:
        raise AnnigraphError(f"ideals over different rings: {a.ring} and {b.ring}")


def ideal_from_generators(ring, gens):
    """Smallest ideal containing ``gens``."""
    gens = [ring.coerce(g) for g in gens]
    if not ring.is_finite:
        return Ideal(ring, (reduce(gcd, gens, 0),))
    canon = tuple(
        reduce(gcd, (g[i] for g in gens), n) for i, n in enumerate(ring.moduli)
    )
    return Ideal(ring, canon)


def ideal_from_indices(ring, indices):
    """The ideal whose element set is exactly ``indices``.

    Raises if the set is not an ideal.
    """
    idx = [int(i) for i in np.flatnonzero(indices)] if isinstance(indices, np.ndarray) else list(indices)
    ideal = ideal_from_generators(ring, [ring.element(i) for i in idx])
    if ideal.indices != frozenset(idx):
        raise AnnigraphError("element set is not an ideal")
    return ideal


def principal_ideal(ring, r):
    return ideal_from_generators(ring, [r])


def zero_ideal(ring):
    return Ideal(ring, (0,) if not ring.is_finite else ring.moduli)


def unit_ideal(ring):
    return Ideal(ring, (1,) if not ring.is_finite else tuple(1 for _ in ring.moduli))


def ideal_arith(I, J, op):
    """``op`` is one of ``"product"``, ``"intersection"``, ``"sum"``."""
    _same_ring(I, J)
    ring = I.ring
    if not ring.is_finite:
        a, b = I.gens[0], J.gens[0]
        if op == "product":
            g = a * b
        elif op == "intersection":
            g = 0 if a == 0 or b == 0 else lcm(a, b)
        elif op == "sum":
            g = gcd(a, b)
        else:
            raise AnnigraphError(f"unknown ideal operation {op!r}")
        return Ideal(ring, (g,))
    if op == "product":
        gens = tuple(gcd(a * b, n) for a, b, n in zip(I.gens, J.gens, ring.moduli))
    elif op == "intersection":
        gens = tuple(lcm(a, b) for a, b in zip(I.gens, J.gens))
    elif op == "sum":
        gens = tuple(gcd(a, b) for a, b in zip(I.gens, J.gens))
    else:
        raise AnnigraphError(f"unknown ideal operation {op!r}")
    return Ideal(ring, gens)


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_ideals(ring):
    """All ideals, ordered by canonical generator tuple."""
    if not ring.is_finite:
        raise NotEnumerableError("the ideal lattice of Z is infinite")
    return [Ideal(ring, g) for g in itertools.product(*(_divisors(n) for n in ring.moduli))]


def annihilator_ideal(ring, r):
    """ann(r) = {s : s r = 0}."""
    r = ring.coerce(r)
    if not ring.is_finite:
        return Ideal(ring, (1 if r == 0 else 0,))
    return Ideal(ring, tuple(n // gcd(c, n) for c, n in zip(r, ring.moduli)))


def is_essential_ideal(I, method="principal"):
    """True iff I meets every nonzero ideal nontrivially.

    ``method="principal"`` tests the nonzero principal ideals only (every
    nonzero ideal contains one); ``method="lattice"`` tests every ideal.
    """
    ring = I.ring
    if not ring.is_finite:
        return I.gens[0] != 0
    if method == "principal":
        others = (principal_ideal(ring, e) for e in ring.elements if e != ring.zero)
    elif method == "lattice":
        others = (J for J in enumerate_ideals(ring) if not J.is_zero)
    else:
        raise AnnigraphError(f"unknown method {method!r}")
    return all(not ideal_arith(I, J, "intersection").is_zero for J in others)


def maximal_ideals(ring):
    proper = [I for I in enumerate_ideals(ring) if not I.is_unit]
    return [I for I in proper if not any(I < J for J in proper)]


def minimal_ideals(ring):
    nonzero = [I for I in enumerate_ideals(ring) if not I.is_zero]
    return [I for I in nonzero if not any(J < I for J in nonzero)]


def nilpotents(ring):
    ring._need_finite()
    out = []
    for e in ring.elements:
        x, seen = e, set()
        while x != ring.zero and x not in seen:
            seen.add(x)
            x = ring.mul(x, e)
        if x == ring.zero:
            out.append(e)
    return out


def radical_ideals(ring):
    """(nilradical, Jacobson radical, socle) of the ring."""
    if not ring.is_finite:
        z = zero_ideal(ring)
        return z, z, z
    nil = ideal_from_generators(ring, nilpotents(ring))
    jac = reduce(lambda a, b: ideal_arith(a, b, "intersection"), maximal_ideals(ring))
    soc = reduce(lambda a, b: ideal_arith(a, b, "sum"), minimal_ideals(ring), zero_ideal(ring))
    return nil, jac, soc


def is_regular(ring):
    """von Neumann regular: every a has some x with a = a*a*x."""
    ring._need_finite()
    return all(any(ring.mul(ring.mul(a, a), x) == a for x in ring.elements) for a in ring.elements)


def singular_set_ring(ring):
    """{r : ann(r) is essential}; for the integers this is {0}."""
    if not ring.is_finite:
        return {0}
    return {r for r in ring.elements if is_essential_ideal(annihilator_ideal(ring, r))}


def idempotents(ring):
    ring._need_finite()
    return {e for e in ring.elements if ring.mul(e, e) == e}


def units(ring):
    ring._need_finite()
    return [e for e in ring.elements if all(gcd(c, n) == 1 for c, n in zip(e, ring.moduli))]
