import pytest

from annigraph import run_suite
from annigraph.corpus import CorpusSpec, Instance
from annigraph.errors import AnnigraphError
from annigraph.report import COUNTEREXAMPLE, NEVER, PASS, dumps
from annigraph.suites import (
    ALL_SUITES,
    INSTANCE,
    Analysis,
    describe_suites,
    run_suites,
    worker_count,
)

SMALL = CorpusSpec(max_module_order=16, max_ring_order=12)


def an(kind, moduli, factors, tags=None):
    return Analysis(Instance(kind, tuple(moduli), tuple(factors), tuple(tags or (0,) * len(factors))))


def test_registry_is_complete():
    assert set(describe_suites()) == set(ALL_SUITES)
    assert len(ALL_SUITES) == len(set(ALL_SUITES))


def test_unknown_suite():
    with pytest.raises(AnnigraphError):
        run_suite("nope", SMALL)


def test_worker_env(monkeypatch):
    monkeypatch.setenv("ANNIGRAPH_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("ANNIGRAPH_WORKERS", "zero")
    with pytest.raises(AnnigraphError):
        worker_count()
    monkeypatch.delenv("ANNIGRAPH_WORKERS")
    assert worker_count() == 1


# ------------------------------------------------------------ frozen witnesses


def test_colon_square_witness():
    o = INSTANCE["colon-square"].fn(an("Integers", (), (2, 4)))
    assert not o.ok
    assert o.witness["element"] == [0, 1] and o.witness["colon"] == "2Z"
    assert o.witness["count"] == 4


def test_star_shape_witness_z15():
    o = INSTANCE["star-shape"].fn(an("Integers", (), (15,)))
    assert o.hypothesis and not o.ok
    assert o.witness["degrees"] == [4, 4, 2, 2, 2, 2]


def test_twin_submodule_witness_z25():
    o = INSTANCE["twin-submodule-classes"].fn(an("Integers", (), (25,)))
    assert o.hypothesis and not o.ok
    assert o.witness["submodule_classes"] == [[[5], [10], [15], [20]]]


def test_full_semi_witness():
    o = INSTANCE["full-semi-coincidence"].fn(an("ZMod", (2,), (2, 2)))
    assert not o.ok and o.witness["semi_vertices"] == 0


def test_nil_consistency_categories():
    o = INSTANCE["nil-consistency"].fn(an("Integers", (), (2, 2)))
    assert o.category == "documented"
    assert o.witness["prime_intersection"] == [[0, 0]] and len(o.witness["formula_set"]) == 4
    o = INSTANCE["nil-consistency"].fn(an("Integers", (), (8,)))
    assert o.category == "beyond-documented"
    assert o.witness == {"formula_set": [[0], [4]], "prime_intersection": [[0], [2], [4], [6]]}
    o = INSTANCE["nil-consistency"].fn(an("Integers", (), (6,)))
    assert o.ok and o.category is None


def test_socle_signature():
    assert an("Integers", (), (2, 2)).socle_signature == [[2, 2]]
    assert an("Integers", (), (6,)).socle_signature == [[2, 1], [3, 1]]
    assert an("ZMod", (12,), (2, 6)).socle_signature == [["(2)", 2], ["(3)", 1]]


def test_passing_suites_on_small_instances():
    a = an("Integers", (), (6,))
    for name in ("finite-group-essential", "no-long-cycles", "localized-graphs", "object-containment",
                 "twin-adjacency", "localized-class-sizes"):
        o = INSTANCE[name].fn(a)
        assert o is None or o.ok, name


def test_finite_ring_suites_skip_integers():
    a = an("Integers", (), (4,))
    assert INSTANCE["injective-iff"].fn(a) is None
    assert INSTANCE["finite-group-essential"].fn(an("ZMod", (4,), (2,))) is None


# ------------------------------------------------------------ aggregated runs


def test_small_run_statuses():
    reps = {r.suite: r for r in run_suites(["all"], SMALL)}
    assert reps["no-long-cycles"].status == PASS
    assert reps["klein-golden"].status == PASS
    assert reps["direct-sum-structure"].status == NEVER
    assert reps["example-class-count"].status == COUNTEREXAMPLE and reps["example-class-count"].reproduced
    assert reps["colon-square"].failed
    assert reps["nil-consistency"].witness["instance"] == {"ring": "Z", "factors": [2, 2], "tags": [0, 0]}


def test_small_run_independent_of_workers():
    a = dumps([r.to_dict() for r in run_suites(["all"], SMALL, workers=1)])
    b = dumps([r.to_dict() for r in run_suites(["all"], SMALL, workers=3)])
    assert a == b


def test_hypothesis_counts_never_exceed_checked():
    for r in run_suites(list(INSTANCE), CorpusSpec(max_module_order=12, max_ring_order=8)):
        assert r.counterexamples <= r.hypothesis_satisfied <= r.instances_checked
        assert (r.status == NEVER) == (r.hypothesis_satisfied == 0)
