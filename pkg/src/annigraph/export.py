"""DOT and JSON serialisation of annihilating graphs."""
import json

from .graphs import Flavor


def _coords(label):
    if isinstance(label, tuple):
        return [_coords(c) for c in label]
    return int(label) if not isinstance(label, str) else label


def _module_info(M):
    spec = getattr(M, "spec", None)
    if spec is not None:
        ring, factors, tags = spec
        out = {"ring": str(ring), "factors": list(factors)}
        if ring.kind == "Product":
            out["tags"] = list(tags)
        return out
    return {"ring": str(M.ring), "name": str(M)}


def graph_to_dict(G):
    return {
        "module": _module_info(G.module),
        "flavor": Flavor.parse(G.flavor).value,
        "vertices": [_coords(v) for v in G.labels],
        "edges": [[i, j] for i, j in G.edges()],
    }


def to_json(G):
    return (json.dumps(graph_to_dict(G), sort_keys=True, separators=(",", ":")) + "\n").encode()


def _dot_id(label):
    c = _coords(label)
    text = "(" + ",".join(map(str, c)) + ")" if isinstance(c, list) else str(c)
    return '"' + text.replace('"', r"\"") + '"'


def to_dot(G):
    flavor = Flavor.parse(G.flavor)
    lines = [f"graph ann_{flavor.short} {{", f"  label={json.dumps(str(G.module))};"]
    for v in G.labels:
        lines.append(f"  {_dot_id(v)};")
    for i, j in G.edges():
        lines.append(f"  {_dot_id(G.labels[i])} -- {_dot_id(G.labels[j])};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def export_graph(G, fmt="json"):
    """Serialise an :class:`AnnGraph` to bytes; ``fmt`` is ``dot`` or ``json``."""
    if fmt == "json":
        return to_json(G)
    if fmt == "dot":
        return to_dot(G)
    raise ValueError(f"unknown format {fmt!r}")
