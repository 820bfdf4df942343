"""Deterministic enumeration of (ring, module) instances."""
from dataclasses import dataclass, field

from .errors import AnnigraphError
from .modules import Module
from .rings import INTEGERS, PRODUCT, ZMOD, Integers, Product, ZMod

KINDS = (INTEGERS, ZMOD, PRODUCT)
_KIND_ALIASES = {
    "z": INTEGERS, "integers": INTEGERS, "int": INTEGERS,
    "zmod": ZMOD, "z/n": ZMOD, "mod": ZMOD,
    "product": PRODUCT, "prod": PRODUCT, "x": PRODUCT,
}


def parse_kind(text):
    key = str(text).strip().lower()
    if key in _KIND_ALIASES:
        return _KIND_ALIASES[key]
    raise AnnigraphError(f"unknown ring kind {text!r}; use Integers, ZMod or Product")


@dataclass(frozen=True)
class CorpusSpec:
    ring_kinds: tuple = KINDS
    max_module_order: int = 64
    max_ring_order: int = 36
    flavors: tuple = field(default=("full", "semi", "star"))

    def __post_init__(self):
        if self.max_module_order < 1 or self.max_ring_order < 1:
            raise AnnigraphError("bounds must be positive")
        kinds = tuple(k for k in KINDS if k in {parse_kind(k2) for k2 in self.ring_kinds})
        object.__setattr__(self, "ring_kinds", kinds)

    def as_dict(self):
        return {
            "ring_kinds": list(self.ring_kinds),
            "max_module_order": self.max_module_order,
            "max_ring_order": self.max_ring_order,
            "flavors": list(self.flavors),
        }


@dataclass(frozen=True)
class Instance:
    """A corpus entry, cheap to pickle; ``module()`` builds the tables."""

    kind: str
    moduli: tuple
    factors: tuple
    tags: tuple

    def ring(self):
        if self.kind == INTEGERS:
            return Integers()
        if self.kind == ZMOD:
            return ZMod(self.moduli[0])
        return Product(*self.moduli)

    def module(self):
        return Module(self.ring(), self.factors, self.tags)

    @property
    def order(self):
        out = 1
        for d in self.factors:
            out *= d
        return out

    def describe(self):
        return {"ring": str(self.ring().spec), "factors": list(self.factors), "tags": list(self.tags)}

    def __str__(self):
        return str(self.module())


def invariant_factor_chains(bound):
    """All d1 | d2 | ... | dk (di >= 2) with product <= bound, ordered by (order, chain)."""
    out = []

    def rec(chain, order):
        if chain:
            out.append(tuple(chain))
        last = chain[-1] if chain else 1
        d = 2 if not chain else last
        while order * d <= bound:
            if d % last == 0:
                rec(chain + [d], order * d)
            d += last if chain else 1

    rec([], 1)
    return sorted(out, key=lambda c: (_prod(c), c))


def _prod(xs):
    p = 1
    for x in xs:
        p *= x
    return p


def _multisets(items, bound, weight):
    """Nonempty non-decreasing tuples over ``items`` with product of weights <= bound."""
    out = []

    def rec(prefix, start, p):
        if prefix:
            out.append(tuple(prefix))
        for i in range(start, len(items)):
            w = weight(items[i])
            if p * w <= bound:
                rec(prefix + [items[i]], i, p * w)

    rec([], 0, 1)
    return sorted(out, key=lambda t: (_prod(weight(x) for x in t), t))


def product_moduli(max_ring_order):
    """Non-decreasing moduli tuples with at least two components and product <= bound."""
    out = []

    def rec(prefix, p):
        if len(prefix) >= 2:
            out.append(tuple(prefix))
        start = prefix[-1] if prefix else 2
        for m in range(start, max_ring_order + 1):
            if p * m > max_ring_order:
                break
            rec(prefix + [m], p * m)

    rec([], 1)
    return sorted(out, key=lambda t: (_prod(t), t))


def enumerate_corpus(spec=CorpusSpec()):
    out = []
    if INTEGERS in spec.ring_kinds:
        for chain in invariant_factor_chains(spec.max_module_order):
            out.append(Instance(INTEGERS, (), chain, (0,) * len(chain)))
    if ZMOD in spec.ring_kinds:
        for n in range(2, spec.max_ring_order + 1):
            divs = [d for d in range(2, n + 1) if n % d == 0]
            for fs in _multisets(divs, spec.max_module_order, lambda d: d):
                out.append(Instance(ZMOD, (n,), fs, (0,) * len(fs)))
    if PRODUCT in spec.ring_kinds:
        for moduli in product_moduli(spec.max_ring_order):
            items = [(t, d) for t, n in enumerate(moduli) for d in range(2, n + 1) if n % d == 0]
            for combo in _multisets(items, spec.max_module_order, lambda it: it[1]):
                out.append(Instance(PRODUCT, moduli, tuple(d for _, d in combo), tuple(t for t, _ in combo)))
    return out


def finite_rings(max_ring_order=36):
    """ZMod(n) for 2 <= n <= bound, then products of two prime fields within the bound."""
    rings = [ZMod(n) for n in range(2, max_ring_order + 1)]
    primes = [p for p in range(2, max_ring_order + 1) if all(p % q for q in range(2, p))]
    for i, p in enumerate(primes):
        for q in primes[i:]:
            if p * q <= max_ring_order:
                rings.append(Product(p, q))
    return rings
