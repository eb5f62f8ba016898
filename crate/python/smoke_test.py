"""Smoke test for the `chroma` Python extension.

Build first:

    cargo build --release -p chroma-py --features extension-module

then run `python3 python/smoke_test.py`. The script imports an installed
`chroma` module if there is one, and otherwise loads target/release/libchroma.so.
"""

import importlib.util
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import chroma  # noqa: F401

        return chroma
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libchroma.so", "libchroma.dylib", "chroma.dll"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                tmp = Path(tempfile.mkdtemp()) / ("chroma.pyd" if name.endswith(".dll") else "chroma.so")
                shutil.copy(lib, tmp)
                spec = importlib.util.spec_from_file_location("chroma", tmp)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("chroma extension not found; build it with cargo first")


def main():
    chroma = load()

    h = chroma.hrtm(3, 1, 1)
    assert h.is_partite()
    tau = chroma.transversal(h)
    assert len(tau) == 2 and h.is_transversal(tau), tau

    g, trace = chroma.reduce(h)
    assert chroma.tc(g) == 2
    assert len(trace["forests"]) == 3

    for r in (2, 3):
        s = chroma.star(r, 10 * r)
        assert chroma.tc(s) == r
        assert s.min_degree() == s.n - r

    g = chroma.random_graph(8, 2, 0.5, seed=3)
    assert chroma.ColouredGraph.from_json(g.to_json()) == g
    c = chroma.connectivity_hypergraph(g)
    assert len(chroma.transversal(c)) == chroma.tc(g)

    cert = chroma.tree_cover_certificate(g)
    assert chroma.verify(g, cert) == []
    cert["trees"].pop()
    assert any(kind == "coverage" for kind, _ in chroma.verify(g, cert))

    cp = chroma.cycle_partition(g)
    assert chroma.verify(g, cp) == []
    assert len(cp["cycles"]) >= chroma.tc(g)

    assert chroma.tc(chroma.random_graph(12, 3, 0.3, seed=4), nodes=1) is None

    b = chroma.bounds(3, "0.9")
    assert b["ceil_ratio"] == 29

    k4 = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    assert chroma.is_expander(4, k4, "1/4", "1")["verdict"] == "expander"
    assert chroma.is_expander(4, [(0, 1), (2, 3)], "1/4", "1")["verdict"] == "violated"

    edges = [(a, b, 1) for a in range(10) for b in range(10, 42)]
    hub_graph = chroma.ColouredGraph(42, 1, edges)
    doc = {
        "params": {"r": 1, "t": 2, "m": 10, "eps": "1/4"},
        "a": list(range(10)),
        "b": list(range(10, 42)),
        "x": list(range(2, 10)),
        "hubs": [{"colours": [1], "core": list(range(10, 20)), "routing": [[0, 1]]}],
    }
    report = chroma.check_hubs(hub_graph, doc)
    assert report["violations"] == [], report
    doc["hubs"][0]["core"] = list(range(10, 15))
    assert any(v["kind"] == "core-size" for v in chroma.check_hubs(hub_graph, doc)["violations"])

    try:
        chroma.ColouredGraph(2, 1, [(0, 1, 2)])
    except ValueError:
        pass
    else:
        raise AssertionError("bad colour accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
