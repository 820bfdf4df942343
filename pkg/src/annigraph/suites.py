"""Property suites evaluated over the corpus.

Each instance suite inspects one :class:`Analysis` and returns an
:class:`Outcome`: whether the hypothesis held, whether the conclusion held,
and a witness when it did not.  Cross-instance suites compare per-instance
summaries; standalone suites build their own inputs.  Reports never depend
on worker count: outcomes are merged by instance index.
"""
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce

import numpy as np

from . import equivalence as eq
from .corpus import CorpusSpec, Instance, enumerate_corpus, finite_rings
from .errors import AnnigraphError
from .graphs import (
    Flavor,
    Graph,
    build_graph,
    classical_zero_divisor_graph,
    classify_shape,
    is_isomorphic,
    is_isomorphic_bruteforce,
    zero_divisor_graph,
)
from .localization import fraction_module
from .modules import (
    Module,
    ideal_as_module,
    is_injective,
    is_multiplication,
    is_simple_module,
    nil_mask,
    prime_intersection_mask,
    radical_mask,
    ring_quotient_module,
    singular_mask,
    socle_mask,
    direct_sum_decomposition,
)
from .report import COUNTEREXAMPLE, DISCREPANCY, NEVER, PASS, SCAN, THEOREM, VerificationReport
from .rings import (
    INTEGERS,
    PRODUCT,
    ZMOD,
    ZMod,
    ideal_arith,
    is_essential_ideal,
    is_regular,
    maximal_ideals,
    radical_ideals,
    singular_set_ring,
)

WORKERS_ENV = "ANNIGRAPH_WORKERS"
ISO_ORACLE_SEED = 20240611
ISO_ORACLE_PAIRS = 200

# vertices of the ten-vertex illustration, edges as listed in its figure
EXAMPLE_EDGES = ((1, 2), (1, 4), (1, 5), (1, 6), (2, 3), (3, 4), (4, 7), (4, 8), (4, 9), (4, 10))
EXAMPLE_CLAIMED_CLASSES = 5


@dataclass
class Outcome:
    hypothesis: bool
    ok: bool = True
    witness: dict = None
    category: str = None


SKIP = None  # suite not applicable to this instance


def _lab(x):
    return list(x) if isinstance(x, tuple) else x


def _labels(M, mask_or_idx):
    arr = np.asarray(mask_or_idx)
    idx = np.flatnonzero(arr) if arr.dtype == np.bool_ else arr
    return [_lab(M.labels[int(i)]) for i in idx]


# ------------------------------------------------------------- ring caches


@lru_cache(maxsize=None)
def _ring_facts(ring):
    nil, jac, soc = radical_ideals(ring)
    return {
        "regular": is_regular(ring),
        "nonsingular": singular_set_ring(ring) == {ring.zero},
        "jac": jac,
        "jac_sq_zero": ideal_arith(jac, jac, "product").is_zero,
        "maximal": maximal_ideals(ring),
    }


@lru_cache(maxsize=None)
def _ideal_facts(I):
    """Module-theoretic facts about the ideal I of a finite ring and about R/I."""
    as_mod = ideal_as_module(I)
    simple = is_simple_module(as_mod)
    singular = bool(singular_mask(as_mod).all())
    injective = is_injective(as_mod) if simple and singular else None
    if I.is_unit:
        rad_quotient_zero = True
    else:
        q = ring_quotient_module(I)
        rad_quotient_zero = not radical_mask(q)[1:].any()
    over = [P for P in _ring_facts(I.ring)["maximal"] if I <= P]
    meet = reduce(lambda a, b: ideal_arith(a, b, "intersection"), over) if over else None
    return {
        "simple": simple,
        "singular": singular,
        "injective": injective,
        "rad_quotient_zero": rad_quotient_zero,
        "idempotent": ideal_arith(I, I, "product") == I,
        "meet_of_maximals": meet == I,
        "essential": is_essential_ideal(I),
    }


# ----------------------------------------------------------------- analysis


class Analysis:
    """Lazily computed facts about one corpus instance."""

    def __init__(self, inst):
        self.inst = inst
        self.M = inst.module()

    @property
    def finite_ring(self):
        return self.M.ring.is_finite

    def describe(self):
        return self.inst.describe()

    @cached_property
    def A(self):
        return self.M.product_kills

    @cached_property
    def sq_zero(self):
        return self.A.diagonal().copy()

    def graph(self, flavor):
        return self._graphs[Flavor.parse(flavor)]

    @cached_property
    def _graphs(self):
        return {f: build_graph(self.M, f) for f in Flavor}

    @cached_property
    def obj(self):
        return np.array(self.graph("full").index, dtype=np.int64)

    @cached_property
    def ideals(self):
        """Lifted colon ideal per element index."""
        cache, out = {}, []
        for x in range(self.M.size):
            key = self.M.colon[x].tobytes()
            if key not in cache:
                cache[key] = self.M.lift_ideal(self.M.colon[x])
            out.append(cache[key])
        return out

    @cached_property
    def essential(self):
        return np.array([is_essential_ideal(I) for I in self.ideals], dtype=np.bool_)

    @cached_property
    def nbd(self):
        return eq.nbd_classes(self.graph("full"))

    @cached_property
    def nbd_block(self):
        return np.array(self.nbd.block_of(), dtype=np.int64)

    @cached_property
    def sub_classes(self):
        return eq.submodule_classes(self.M, self.graph("full"))

    @cached_property
    def nil(self):
        return nil_mask(self.M)

    @cached_property
    def socle(self):
        return socle_mask(self.M)

    @cached_property
    def essoc(self):
        soc = self.socle
        if not soc[1:].any():
            return False
        return bool((self.M.cyclic[1:] & soc[None, :])[:, 1:].any(axis=1).all())

    @cached_property
    def meet(self):
        """Mask of the intersection of all nonzero cyclic submodules."""
        if self.M.size == 1:
            return self.M.cyclic[0]
        return self.M.cyclic[1:].all(axis=0)

    @cached_property
    def meet_nonzero(self):
        return bool(self.meet[1:].any())

    def _all_cyclic(self, mask=None):
        cyc = self.M.distinct_cyclics
        if mask is not None:
            cyc = [c for c in cyc if (c <= mask).all()]
        keys = {c.tobytes() for c in cyc}
        for i, a in enumerate(cyc):
            for b in cyc[i + 1:]:
                if not (a <= b).all() and not (b <= a).all():
                    if self.M._sum_masks(a, b).tobytes() not in keys:
                        return False
        return True

    @cached_property
    def all_cyclic(self):
        return self._all_cyclic()

    @cached_property
    def socle_all_cyclic(self):
        return self._all_cyclic(self.socle)

    @cached_property
    def triangle_free(self):
        a = self.graph("full").adj.astype(np.int64)
        return int(np.trace(a @ a @ a)) == 0

    @cached_property
    def fraction(self):
        return fraction_module(self.M)

    @cached_property
    def singular_simple(self):
        """Vertices x whose colon ideal is a singular simple module."""
        if not self.finite_ring:
            return []
        out = []
        for x in self.obj:
            f = _ideal_facts(self.ideals[x])
            if f["simple"] and f["singular"]:
                out.append(int(x))
        return out

    @cached_property
    def socle_signature(self):
        """Multiplicity of each simple R/P in the socle."""
        M = self.M
        soc = self.socle
        sig = []
        for P in maximal_ideals(M.acting):
            killed = soc & ~(~M.kills[:, P.mask]).any(axis=1)
            k = int(killed.sum())
            q = M.acting.size // len(P.indices)
            dim = round(np.log(k) / np.log(q)) if k > 1 else 0
            key = P.gens[0] if not M.ring.is_finite else str(P)
            if dim:
                sig.append([key, dim])
        return sig

    def summary(self):
        G = self.graph("full")
        return {
            "ring": str(self.M.ring.spec),
            "n": G.n,
            "degrees": sorted(int(d) for d in G.degrees()),
            "adj": np.packbits(G.adj, axis=None).tobytes(),
            "socle": self.socle_signature,
            "semisimple": bool(self.socle.all()),
            "essoc": self.essoc,
        }


# ------------------------------------------------------------ instance suites


def s_finite_group_essential(an):
    if an.inst.kind != INTEGERS:
        return SKIP
    simple = is_simple_module(an.M)
    empty = an.obj.size == 0
    bad = [int(x) for x in an.obj if not an.essential[x]]
    ok = (empty == simple) and not bad
    w = None if ok else {
        "simple": simple, "object_empty": empty,
        "non_essential": [[_lab(an.M.labels[x]), str(an.ideals[x])] for x in bad],
    }
    return Outcome(True, ok, w)


def s_integer_essential_nonzero(an):
    if an.inst.kind != INTEGERS:
        return SKIP
    if an.obj.size == 0:
        return Outcome(False)
    bad = [int(x) for x in an.obj if bool(an.essential[x]) != (not an.ideals[x].is_zero)]
    return Outcome(True, not bad, {"elements": _labels(an.M, bad)} if bad else None)


def s_cyclic_lattice_essential(an):
    if an.obj.size == 0 or not an.meet_nonzero or not an.all_cyclic:
        return Outcome(False)
    bad = [int(x) for x in an.obj if not an.essential[x]]
    return Outcome(True, not bad, {"non_essential": _labels(an.M, bad)} if bad else None)


def s_cyclic_meet_essential(an):
    M = an.M
    cyc = M.cyclic
    nonzero = cyc[1:]
    hyp = [int(x) for x in an.obj if (nonzero & cyc[x][None, :])[:, 1:].any(axis=1).all()]
    if not hyp:
        return Outcome(False)
    bad = [x for x in hyp if not an.essential[x]]
    return Outcome(True, not bad, {"non_essential": _labels(M, bad)} if bad else None)


def _intersection_ideal(an):
    return reduce(lambda a, b: ideal_arith(a, b, "intersection"), (an.ideals[x] for x in an.obj))


def s_intersection_essential(an):
    if an.obj.size == 0:
        return Outcome(False)
    left = is_essential_ideal(_intersection_ideal(an))
    right = an.socle_all_cyclic
    ok = left == right
    w = None if ok else {"intersection": str(_intersection_ideal(an)), "intersection_essential": left,
                         "essentially_cyclic": right}
    return Outcome(True, ok, w)


def s_intersection_scan(an):
    if an.obj.size == 0 or not an.essential[an.obj].all():
        return Outcome(False)
    I = _intersection_ideal(an)
    ok = is_essential_ideal(I)
    return Outcome(True, ok, None if ok else {"intersection": str(I)})


def s_quotient_singular(an):
    hyp = [int(x) for x in an.obj if an.essential[x]]
    if not hyp:
        return Outcome(False)
    bad = []
    for x in hyp:
        I = an.ideals[x]
        if not an.finite_ring:
            quotient_singular = True  # Z/gZ with g != 0: every annihilator contains gZ
        elif I.is_unit:
            quotient_singular = True
        else:
            quotient_singular = bool(singular_mask(ring_quotient_module(I)).all())
        if not quotient_singular:
            bad.append(x)
    return Outcome(True, not bad, {"elements": _labels(an.M, bad)} if bad else None)


def _injective_side(an):
    return all(_ideal_facts(an.ideals[x])["injective"] for x in an.singular_simple)


def _injective_hypothesis(an):
    return an.finite_ring and an.essoc and an.meet_nonzero and bool(an.singular_simple)


def s_injective_iff(an):
    if not an.finite_ring:
        return SKIP
    if not _injective_hypothesis(an):
        return Outcome(False)
    left = _injective_side(an)
    facts = _ring_facts(an.M.ring)
    right = facts["nonsingular"] and all(_ideal_facts(an.ideals[x])["rad_quotient_zero"]
                                         for x in an.singular_simple)
    ok = left == right
    return Outcome(True, ok, None if ok else {"all_injective": left, "ring_side": right,
                                              "singular_simple": _labels(an.M, an.singular_simple)})


def s_injective_consequences(an):
    if not an.finite_ring:
        return SKIP
    if not _injective_hypothesis(an) or not _injective_side(an):
        return Outcome(False)
    facts = _ring_facts(an.M.ring)
    bad = [int(x) for x in an.obj
           if not (_ideal_facts(an.ideals[x])["meet_of_maximals"] and _ideal_facts(an.ideals[x])["idempotent"])]
    ok = facts["jac_sq_zero"] and not bad
    return Outcome(True, ok, None if ok else {"jacobson_square_zero": facts["jac_sq_zero"],
                                              "elements": _labels(an.M, bad)})


def s_regular_idempotent(an):
    if not an.finite_ring:
        return SKIP
    if an.obj.size == 0 or not an.meet_nonzero or not an.all_cyclic:
        return Outcome(False)
    regular = _ring_facts(an.M.ring)["regular"]
    idem = all(_ideal_facts(an.ideals[x])["idempotent"] for x in an.obj)
    ok = regular == idem
    return Outcome(True, ok, None if ok else {"regular": regular, "all_idempotent": idem})


def s_regular_iff_injective(an):
    if not an.finite_ring:
        return SKIP
    if not _injective_hypothesis(an):
        return Outcome(False)
    left = _injective_side(an)
    regular = _ring_facts(an.M.ring)["regular"]
    ok = left == regular
    return Outcome(True, ok, None if ok else {"all_injective": left, "regular": regular})


def s_annihilator_membership(an):
    M = an.M
    if an.obj.size == 0:
        return Outcome(False)
    bad = []
    for x in an.obj:
        annM = M.ideal_times_module_mask(M.kills[x])
        for z in an.obj:
            if annM[z] and not an.A[x, z]:
                bad.append([_lab(M.labels[x]), _lab(M.labels[z])])
    return Outcome(True, not bad, {"pairs": bad[:5]} if bad else None)


def _nbd_pairs(an):
    """Distinct vertex-index pairs (module indices) that are neighbourhood similar."""
    out = []
    for block in an.nbd.blocks:
        idx = [int(an.obj[i]) for i in block]
        out += [(a, b) for i, a in enumerate(idx) for b in idx[i + 1:]]
    return out


def s_twin_square_flags(an):
    pairs = _nbd_pairs(an)
    if not pairs:
        return Outcome(False)
    bad = [(x, y) for x, y in pairs if an.sq_zero[x] != an.sq_zero[y]]
    return Outcome(True, not bad, {"pairs": [[_lab(an.M.labels[x]), _lab(an.M.labels[y])]
                                             for x, y in bad[:5]]} if bad else None)


def s_twin_submodule_classes(an):
    if an.obj.size < 3 or not is_multiplication(an.M):
        return Outcome(False)
    ok = an.nbd.blocks == an.sub_classes.blocks
    w = None if ok else {"nbd_classes": jsonable_blocks(an.nbd), "submodule_classes": jsonable_blocks(an.sub_classes)}
    return Outcome(True, ok, w)


def jsonable_blocks(p):
    return [[_lab(v) for v in b] for b in p.labelled()]


def s_twin_adjacency(an):
    if an.obj.size < 3:
        return Outcome(False)
    pairs = _nbd_pairs(an)
    if not pairs:
        return Outcome(False)
    bad = [(x, y) for x, y in pairs if bool(an.A[x, y]) != bool(an.sq_zero[x] and an.sq_zero[y])]
    return Outcome(True, not bad, {"pairs": [[_lab(an.M.labels[x]), _lab(an.M.labels[y])]
                                             for x, y in bad[:5]]} if bad else None)


def s_no_long_cycles(an):
    shape = classify_shape(an.graph("full"))
    ok = shape.cycle is None or shape.cycle < 5
    return Outcome(True, ok, None if ok else {"cycle_length": shape.cycle})


def s_colon_square(an):
    M = an.M
    kills_own = ~(M.colon & ~M.kills).any(axis=1)
    bad = np.flatnonzero(kills_own != an.sq_zero)
    if bad.size == 0:
        return Outcome(True)
    x = int(bad[0])
    return Outcome(True, False, {
        "element": _lab(M.labels[x]),
        "colon": str(an.ideals[x]),
        "colon_times_x_is_zero": bool(kills_own[x]),
        "colon_squared_times_M_is_zero": bool(an.sq_zero[x]),
        "count": int(bad.size),
    })


def s_nil_pendant(an):
    if not an.nil[1:].any() or not an.triangle_free or an.obj.size == 0:
        return Outcome(False)
    G = an.graph("full")
    pos = {int(v): i for i, v in enumerate(an.obj)}
    pairs = _nbd_pairs(an)
    part_i = bool(pairs) and all(any(an.A[x, y] and an.A[x, z] for x in an.obj) for y, z in pairs)
    if not part_i:
        return Outcome(False)
    size = an.M.size
    nil_count = int(an.nil.sum())
    ok_i = 8 <= size <= 16 or (size >= 17 and nil_count == 2)
    block = an.nbd_block
    part_ii = all(
        any(an.A[x, y] and an.A[x, z] and block[pos[y]] == block[pos[z]]
            for y, z in pairs if x not in (y, z))
        for x in an.obj
    )
    ok_ii = True
    bad_pendants = []
    if part_ii:
        deg = G.degrees()
        for x in an.obj:
            if not an.nil[x]:
                continue
            for a in an.obj:
                if a != x and an.A[x, a] and deg[pos[int(a)]] != 1:
                    bad_pendants.append(_lab(an.M.labels[a]))
        ok_ii = not bad_pendants
    ok = ok_i and ok_ii
    w = None if ok else {"order": size, "nil_set": _labels(an.M, an.nil),
                         "order_clause": ok_i, "non_pendant": bad_pendants}
    return Outcome(True, ok, w)


def _each_vertex_has_two_neighbours(an, similar):
    pos = {int(v): i for i, v in enumerate(an.obj)}
    block = an.nbd_block
    for x in an.obj:
        nb = [int(y) for y in an.obj if y != x and an.A[x, y]]
        found = any((block[pos[y]] == block[pos[z]]) == similar
                    for i, y in enumerate(nb) for z in nb[i + 1:])
        if not found:
            return False
    return True


def s_direct_sum_structure(an):
    if an.obj.size == 0 or not an.triangle_free or not _each_vertex_has_two_neighbours(an, False):
        return Outcome(False)
    split = direct_sum_decomposition(an.M)
    return Outcome(True, split is not None, None if split is not None else {"indecomposable": True})


def s_star_shape(an):
    if an.obj.size == 0 or not an.triangle_free:
        return Outcome(False)
    pos = {int(v): i for i, v in enumerate(an.obj)}
    block = an.nbd_block
    for i, y in enumerate(an.obj):
        for z in an.obj[i + 1:]:
            if an.A[y, z]:
                continue
            if block[pos[int(y)]] != block[pos[int(z)]]:
                return Outcome(False)
            if not any(x not in (y, z) and an.A[x, y] and an.A[x, z] for x in an.obj):
                return Outcome(False)
    shape = classify_shape(an.graph("full"))
    return Outcome(True, shape.star, None if shape.star else {"degrees": list(shape.degree_sequence)})


def s_localized_class_sizes(an):
    table = eq.class_cardinality_table(an.M, an.fraction)
    ok = table.equal
    return Outcome(True, ok, None if ok else {"original": list(table.left), "localized": list(table.right)})


def s_localized_graphs(an):
    bad = {}
    for f in Flavor:
        G, H = an.graph(f), build_graph(an.fraction, f)
        if is_isomorphic(G, H) is None:
            bad[f.value] = {"original": [G.n, len(G.edges())], "localized": [H.n, len(H.edges())]}
    if not bad:
        return Outcome(True)
    w = {"flavors": bad, "fraction_ring_order": an.fraction.ring.size, "fraction_module_order": an.fraction.size}
    return Outcome(True, False, w, category="+".join(sorted(bad)))


def s_nil_consistency(an):
    formula = an.nil
    primes = prime_intersection_mask(an.M)
    mismatch = not np.array_equal(formula, primes)
    expected = _noncyclic_primary(an.inst)
    category = {(True, True): "documented", (True, False): "beyond-documented",
                (False, True): "documented-but-absent"}.get((mismatch, expected))
    w = {"formula_set": _labels(an.M, formula), "prime_intersection": _labels(an.M, primes)} if mismatch else None
    return Outcome(True, not mismatch, w, category=category)


def _noncyclic_primary(inst):
    """Some primary component (per ring component and prime) needs two or more cyclic factors."""
    counts = Counter()
    for d, t in zip(inst.factors, inst.tags):
        n, p = d, 2
        while n > 1:
            if n % p == 0:
                counts[(t, p)] += 1
                while n % p == 0:
                    n //= p
            p += 1
    return any(v >= 2 for v in counts.values())


def s_object_containment(an):
    masks = {f: np.zeros(an.M.size, dtype=np.bool_) for f in Flavor}
    for f in Flavor:
        masks[f][an.graph(f).index] = True
    ok = bool((masks[Flavor.STAR] <= masks[Flavor.SEMI]).all() and (masks[Flavor.SEMI] <= masks[Flavor.FULL]).all())
    return Outcome(True, ok, None if ok else {f.value: _labels(an.M, masks[f]) for f in Flavor})


def s_full_semi_coincidence(an):
    F, S = an.graph("full"), an.graph("semi")
    ok = F.same_as(S)
    return Outcome(True, ok, None if ok else {"full_vertices": F.n, "semi_vertices": S.n,
                                              "missing": [_lab(v) for v in F.labels if v not in S.labels][:8]})


def s_integer_reduction_invariance(an):
    if an.inst.kind != INTEGERS:
        return SKIP
    R = Module(ZMod(an.M.exponent), an.inst.factors)
    differs = [f.value for f in Flavor if not an.graph(f).same_as(build_graph(R, f))]
    ok = not [f for f in differs if f != "semi"]
    return Outcome(True, ok, None if ok else {"flavors": differs},
                   category="semi-differs" if "semi" in differs else None)


@dataclass(frozen=True)
class Suite:
    name: str
    kind: str
    fn: object
    scope: str = "instance"
    assumptions: tuple = ()
    description: str = ""


NON_VACUOUS = "the hypothesis counts only when at least one vertex has a singular simple colon ideal"
OBJECT_NONEMPTY = "instances with an empty full object do not count toward the hypothesis"

SUITES = [
    Suite("finite-group-essential", THEOREM, s_finite_group_essential,
          description="finite Z-modules: every colon ideal of the full object is essential, "
                      "and the object is empty exactly for simple groups"),
    Suite("integer-essential-nonzero", THEOREM, s_integer_essential_nonzero,
          description="over Z a colon ideal of the full object is essential iff it is nonzero"),
    Suite("cyclic-lattice-essential", THEOREM, s_cyclic_lattice_essential,
          assumptions=("hypothesis read as: every submodule cyclic and all nonzero cyclic submodules "
                       "pairwise meet nontrivially", OBJECT_NONEMPTY),
          description="colon ideals are essential on uniform modules with cyclic submodules"),
    Suite("cyclic-meet-essential", THEOREM, s_cyclic_meet_essential,
          description="x whose cyclic submodule meets every nonzero cyclic submodule has an essential colon ideal"),
    Suite("intersection-essential", SCAN, s_intersection_essential,
          assumptions=("'essentially cyclic' read as: every nonzero submodule contains an essential cyclic "
                       "submodule; for finite modules this holds iff every submodule of the socle is cyclic",
                       "report only"),
          description="intersection of colon ideals over the full object vs essentially cyclic submodules"),
    Suite("intersection-scan", THEOREM, s_intersection_scan,
          description="a finite intersection of essential colon ideals is essential"),
    Suite("quotient-singular", THEOREM, s_quotient_singular,
          description="an essential colon ideal A gives a singular module R/A"),
    Suite("injective-iff", THEOREM, s_injective_iff,
          assumptions=(NON_VACUOUS, "injectivity decided by the Baer criterion over principal ideals",
                       "the quotient condition is required for every vertex with a singular simple colon ideal"),
          description="singular simple colon ideals are injective iff the ring is nonsingular and the quotient radicals vanish"),
    Suite("injective-consequences", THEOREM, s_injective_consequences,
          assumptions=(NON_VACUOUS,),
          description="injective singular simple colon ideals force J(R)^2 = 0 and idempotent colon ideals"),
    Suite("regular-idempotent", THEOREM, s_regular_idempotent,
          assumptions=(OBJECT_NONEMPTY,),
          description="on uniform modules with cyclic submodules: R regular iff every colon ideal is idempotent"),
    Suite("regular-iff-injective", THEOREM, s_regular_iff_injective,
          assumptions=(NON_VACUOUS,),
          description="singular simple colon ideals are injective iff R is regular"),
    Suite("annihilator-membership", SCAN, s_annihilator_membership,
          assumptions=("only the forward implication z in ann(x)M => [x:M][z:M]M = 0 is tested", "report only"),
          description="membership in ann(x)M versus adjacency"),
    Suite("twin-square-flags", THEOREM, s_twin_square_flags,
          description="neighbourhood-similar vertices agree on whether [x:M]^2 M = 0"),
    Suite("twin-submodule-classes", THEOREM, s_twin_submodule_classes,
          assumptions=("neighbourhoods are open",),
          description="multiplication modules with at least 3 vertices: neighbourhood classes equal submodule classes"),
    Suite("twin-adjacency", THEOREM, s_twin_adjacency,
          description="neighbourhood-similar x, y are adjacent iff both colon squares kill M"),
    Suite("no-long-cycles", THEOREM, s_no_long_cycles,
          description="the full graph is never an n-cycle with n >= 5"),
    Suite("colon-square", THEOREM, s_colon_square,
          description="[x:M]x = 0 iff [x:M]^2 M = 0, for every x"),
    Suite("nil-pendant", THEOREM, s_nil_pendant,
          assumptions=("nil(M) is the formula set {x : [x:M]x = 0}",
                       "the order clause counts only when some neighbourhood-similar pair exists",
                       "the pendant clause is checked for neighbours of nonzero nil vertices"),
          description="triangle-free graphs with nonzero nil set: order bounds and pendant neighbours"),
    Suite("direct-sum-structure", THEOREM, s_direct_sum_structure,
          assumptions=(OBJECT_NONEMPTY, "summands are nonzero"),
          description="triangle-free graphs where every vertex has two non-similar neighbours split M"),
    Suite("star-shape", THEOREM, s_star_shape,
          assumptions=(OBJECT_NONEMPTY, "a star is K_{1,n} with n >= 0"),
          description="triangle-free graphs whose non-adjacent pairs are similar with a common neighbour are stars"),
    Suite("localized-class-sizes", THEOREM, s_localized_class_sizes,
          assumptions=("over Z the ring acting is Z/exp(M); fraction modules inherit the integer ideal semantics",),
          description="submodule-class sizes agree before and after localization at T = R minus C(M)"),
    Suite("localized-graphs", THEOREM, s_localized_graphs,
          assumptions=("over Z the ring acting is Z/exp(M); fraction modules inherit the integer ideal semantics",),
          description="all three graphs are isomorphic before and after localization"),
    Suite("nil-consistency", DISCREPANCY, s_nil_consistency,
          assumptions=("prime-submodule intersection computed as the intersection of PM over maximal P "
                       "with PM != M",),
          description="formula nil set versus intersection of prime submodules"),
    Suite("object-containment", THEOREM, s_object_containment,
          description="star object within semi object within full object"),
    Suite("full-semi-coincidence", THEOREM, s_full_semi_coincidence,
          description="full and semi graphs coincide for finite modules"),
    Suite("integer-reduction-invariance", THEOREM, s_integer_reduction_invariance,
          assumptions=("checked for full and star; semi is expected to differ because Z has no zero colon ideals",),
          description="graphs over Z equal graphs over Z/exp(M)"),
]


# --------------------------------------------------------------- cross suites


def _cross_groups(summaries):
    """Group instance indices by isomorphism class of the full graph within each ring."""
    buckets = {}
    for i, s in enumerate(summaries):
        buckets.setdefault((s["ring"], s["n"], tuple(s["degrees"])), []).append(i)
    classes = []
    for key in sorted(buckets, key=lambda k: min(buckets[k])):
        reps = []
        for i in buckets[key]:
            G = _summary_graph(summaries[i])
            for cls in reps:
                if is_isomorphic(cls[0], G) is not None:
                    cls[1].append(i)
                    break
            else:
                reps.append((G, [i]))
        classes += [members for _, members in reps]
    return classes


def _summary_graph(s):
    n = s["n"]
    bits = np.unpackbits(np.frombuffer(s["adj"], dtype=np.uint8))[: n * n]
    return Graph(list(range(n)), bits.reshape(n, n).astype(np.bool_))


def _cross_check(name, summaries, instances, hyp, concl):
    classes = _cross_groups(summaries)
    satisfied = fails = nonempty = 0
    witness = first_nonempty = None
    for members in classes:
        for a in members:
            if not hyp(summaries[a]):
                continue
            for b in members:
                if b == a:
                    continue
                satisfied += 1
                if not concl(summaries[a], summaries[b]):
                    fails += 1
                    w = {"M": instances[a].describe(), "N": instances[b].describe(),
                         "M_value": _cross_value(name, summaries[a]),
                         "N_value": _cross_value(name, summaries[b]),
                         "graph_vertices": summaries[a]["n"]}
                    witness = witness or w
                    if summaries[a]["n"]:
                        nonempty += 1
                        first_nonempty = first_nonempty or w
    details = {"counterexamples_with_vertices": nonempty}
    if first_nonempty:
        details["first_with_vertices"] = first_nonempty
    return satisfied, fails, witness, details


def _cross_value(name, s):
    return {"socle-from-graph": s["socle"], "semisimple-from-graph": s["socle"],
            "essential-socle-from-graph": s["essoc"]}[name]


CROSS = {
    "socle-from-graph": (lambda s: True, lambda a, b: a["socle"] == b["socle"],
                         "isomorphic full graphs over the same ring give isomorphic socles"),
    "semisimple-from-graph": (lambda s: s["semisimple"],
                              lambda a, b: (not b["semisimple"]) or a["socle"] == b["socle"],
                              "semisimple modules with isomorphic full graphs are isomorphic"),
    "essential-socle-from-graph": (lambda s: s["essoc"], lambda a, b: b["essoc"],
                                   "an essential socle transfers along isomorphic full graphs"),
}
CROSS_ASSUMPTIONS = {
    "socle-from-graph": ("pairs range over corpus modules over the same ring",
                         "socles compared by the multiplicity of each simple module R/P"),
    "semisimple-from-graph": ("pairs range over corpus modules over the same ring; both modules semisimple",),
    "essential-socle-from-graph": ("pairs range over corpus modules over the same ring",),
}


# ----------------------------------------------------------- standalone suites


def example_graph():
    return Graph.from_edges([f"v{i}" for i in range(1, 11)], [(a - 1, b - 1) for a, b in EXAMPLE_EDGES])


def run_example_class_count(spec):
    part = eq.nbd_classes(example_graph())
    computed = len(part)
    ok = computed == EXAMPLE_CLAIMED_CLASSES
    w = None if ok else {"computed": computed, "claimed": EXAMPLE_CLAIMED_CLASSES, "classes": part.labelled()}
    reproduced = (not ok) and computed == 6 and part.labelled() == [
        ["v1"], ["v2"], ["v3"], ["v4"], ["v5", "v6"], ["v7", "v8", "v9", "v10"]]
    return VerificationReport("example-class-count", DISCREPANCY, PASS if ok else COUNTEREXAMPLE, 1, 1,
                              0 if ok else 1, w, ["neighbourhoods are open"], {}, reproduced)


def run_klein_golden(spec):
    from .rings import Integers
    M = Module(Integers(), [2, 2])
    F = fraction_module(M)
    got = {}
    for X, tag in ((M, "module"), (F, "localized")):
        for f in Flavor:
            G = build_graph(X, f)
            got[f"{tag}:{f.value}"] = (G.n, len(G.edges()))
    expect = {"full": (3, 3), "semi": (3, 3), "star": (0, 0)}
    bad = {k: v for k, v in got.items() if v != expect[k.split(":")[1]]}
    w = {"observed": got} if bad else None
    return VerificationReport("klein-golden", THEOREM, COUNTEREXAMPLE if bad else PASS, 1, 1,
                              1 if bad else 0, w, ["T is the set of odd residues modulo exp(M) = 2"], {})


def run_zero_divisor_oracle(spec):
    rings = finite_rings(spec.max_ring_order)
    bad = []
    for R in rings:
        G, H = zero_divisor_graph(R), classical_zero_divisor_graph(R)
        if [tuple(v) for v in G.labels] != [tuple(v) for v in H.labels] or not np.array_equal(G.adj, H.adj):
            bad.append(str(R.spec))
    w = {"rings": bad} if bad else None
    return VerificationReport("zero-divisor-oracle", THEOREM, COUNTEREXAMPLE if bad else PASS, len(rings),
                              len(rings), len(bad), w,
                              ["rings: Z/n up to the ring bound and products of two prime fields"], {})


def random_graph_pairs(count=ISO_ORACLE_PAIRS, seed=ISO_ORACLE_SEED, max_n=8):
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(0, max_n)
        p = rng.random()
        e = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        G = Graph.from_edges(list(range(n)), e)
        if k % 2 == 0:
            perm = list(range(n))
            rng.shuffle(perm)
            H = Graph.from_edges(list(range(n)), [(perm[i], perm[j]) for i, j in e])
        else:
            # same vertex and edge counts, edges resampled
            pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
            H = Graph.from_edges(list(range(n)), rng.sample(pool, len(e)))
        out.append((G, H))
    return out


def run_isomorphism_oracle(spec):
    from .graphs import check_isomorphism
    pairs = random_graph_pairs()
    bad = []
    isomorphic = 0
    for k, (G, H) in enumerate(pairs):
        fast, slow = is_isomorphic(G, H), is_isomorphic_bruteforce(G, H)
        isomorphic += slow is not None
        if (fast is None) != (slow is None) or (fast is not None and not check_isomorphism(G, H, fast)):
            bad.append(k)
    w = {"pair_indices": bad} if bad else None
    return VerificationReport("isomorphism-oracle", THEOREM, COUNTEREXAMPLE if bad else PASS, len(pairs),
                              len(pairs), len(bad), w, [f"seed {ISO_ORACLE_SEED}, at most 8 vertices"],
                              {"isomorphic_pairs": isomorphic})


STANDALONE = {
    "example-class-count": run_example_class_count,
    "klein-golden": run_klein_golden,
    "zero-divisor-oracle": run_zero_divisor_oracle,
    "isomorphism-oracle": run_isomorphism_oracle,
}

INSTANCE = {s.name: s for s in SUITES}
ALL_SUITES = list(INSTANCE) + list(CROSS) + list(STANDALONE)
DOCUMENTED = ("nil-consistency", "example-class-count")


def suite_names():
    return list(ALL_SUITES)


# ------------------------------------------------------------------- runner


def worker_count():
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise AnnigraphError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def evaluate_instance(args):
    inst, names, want_summary = args
    an = Analysis(inst)
    out = {}
    for name in names:
        out[name] = INSTANCE[name].fn(an)
    return out, (an.summary() if want_summary else None)


def _aggregate(suite, outcomes, instances):
    checked = satisfied = fails = 0
    witness = None
    categories = Counter()
    examples = {}
    for i, o in enumerate(outcomes):
        if o is SKIP:
            continue
        checked += 1
        if not o.hypothesis:
            continue
        satisfied += 1
        if o.category:
            categories[o.category] += 1
            examples.setdefault(o.category, instances[i].describe())
        if not o.ok:
            fails += 1
            if witness is None:
                witness = {"instance": instances[i].describe(), **o.witness}
    if fails:
        status = COUNTEREXAMPLE
    elif satisfied == 0:
        status = NEVER
    else:
        status = PASS
    details = {}
    if categories:
        details = {"categories": dict(sorted(categories.items())), "first_of_category": examples}
    rep = VerificationReport(suite.name, suite.kind, status, checked, satisfied, fails, witness,
                             list(suite.assumptions), details)
    if suite.name == "nil-consistency":
        rep.reproduced = _nil_reproduced(rep)
    return rep


def _nil_reproduced(rep):
    w = rep.witness or {}
    first_ok = (
        w.get("instance", {}).get("ring") == "Z"
        and w["instance"].get("factors") == [2, 2]
        and len(w.get("formula_set", [])) == 4
        and w.get("prime_intersection") == [[0, 0]]
    )
    cats = rep.details.get("categories", {})
    exact = not cats.get("beyond-documented") and not cats.get("documented-but-absent")
    return bool(rep.status == COUNTEREXAMPLE and first_ok and exact)


def run_suites(names, spec=CorpusSpec(), workers=None):
    """Run the named suites (``["all"]`` for every suite) and return reports in request order."""
    if list(names) == ["all"]:
        names = list(ALL_SUITES)
    unknown = [n for n in names if n not in ALL_SUITES]
    if unknown:
        raise AnnigraphError(f"unknown suite(s): {', '.join(unknown)}")
    inst_names = [n for n in names if n in INSTANCE]
    cross_names = [n for n in names if n in CROSS]
    reports = {}
    if inst_names or cross_names:
        instances = enumerate_corpus(spec)
        jobs = [(inst, inst_names, bool(cross_names)) for inst in instances]
        workers = worker_count() if workers is None else workers
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(evaluate_instance, jobs, chunksize=max(1, len(jobs) // (workers * 8))))
        else:
            results = [evaluate_instance(j) for j in jobs]
        for name in inst_names:
            reports[name] = _aggregate(INSTANCE[name], [r[0][name] for r in results], instances)
        summaries = [r[1] for r in results]
        for name in cross_names:
            hyp, concl, _ = CROSS[name]
            satisfied, fails, witness, details = _cross_check(name, summaries, instances, hyp, concl)
            status = COUNTEREXAMPLE if fails else (PASS if satisfied else NEVER)
            reports[name] = VerificationReport(name, THEOREM, status, len(instances), satisfied, fails, witness,
                                               list(CROSS_ASSUMPTIONS[name]), details)
    for name in names:
        if name in STANDALONE:
            reports[name] = STANDALONE[name](spec)
    return [reports[n] for n in names]


def describe_suites():
    out = {s.name: s.description for s in SUITES}
    out.update({k: v[2] for k, v in CROSS.items()})
    out.update({
        "example-class-count": "neighbourhood classes of the ten-vertex illustration (documented: 6 computed, 5 claimed)",
        "klein-golden": "graphs of Z/2 + Z/2 over Z and its localization: K3, K3, empty",
        "zero-divisor-oracle": "full graph of R over itself equals the classical zero-divisor graph",
        "isomorphism-oracle": "backtracking isomorphism agrees with exhaustive permutation search",
    })
    return out
