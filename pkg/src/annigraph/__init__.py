"""Annihilating graphs of finite modules over commutative rings."""
from ._kernels import backend
from .corpus import CorpusSpec, enumerate_corpus
from .errors import AnnigraphError, BoundExceeded, NotEnumerableError
from .export import export_graph
from .graphs import AnnGraph, Flavor, Graph, build_graph, is_isomorphic
from .localization import fraction_module, fraction_ring
from .modules import Module, Submodule
from .report import VerificationReport
from .rings import Ideal, Integers, Product, ZMod
from .suites import run_suites


def run_suite(name, spec=None):
    return run_suites([name], spec or CorpusSpec())[0]


__all__ = [
    "AnnGraph", "AnnigraphError", "BoundExceeded", "CorpusSpec", "Flavor", "Graph", "Ideal",
    "Integers", "Module", "NotEnumerableError", "Product", "Submodule", "VerificationReport", "ZMod",
    "backend", "build_graph", "enumerate_corpus", "export_graph", "fraction_module", "fraction_ring",
    "is_isomorphic", "run_suite", "run_suites",
]
