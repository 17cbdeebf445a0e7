"""Smoke test for the matchstick_py extension.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import json
import sys

import matchstick_py as m


def main():
    assert m.precision() == 60
    assert "g2" in m.fixture_names()

    g2 = m.load_fixture("g2")
    assert (g2.num_vertices, g2.num_edges, len(g2.triangles)) == (66, 114, 38)
    rep = m.verify_graph(g2, "fixture")
    assert rep.exit_code == 0, rep.summary()
    assert abs(float(rep.min_vertex_vertex) - 6.325366750e-5) < 1e-12

    sol = m.solve("g2", 169)
    assert sol.residual < 1e-40
    a = m.angles(sol.graph)
    assert abs(float(a["alpha"]) - 78.95050838942406) < 1e-9
    assert abs(float(a["GH"]) - 0.00006325366750) < 1e-12

    ring = m.ring_assemble(sol.graph, 169)
    assert len(ring.triangles) == 6422
    assert ring.degree_histogram() == {4: ring.num_vertices}
    rep = m.verify_graph(ring)
    assert all(rep.verdicts.values()), rep.summary()

    back = m.Graph.from_text(sol.graph.to_text())
    assert back.vertices == sol.graph.vertices

    g1 = m.solve("g1", 100).graph
    g4 = m.make_adapter(g1)
    chain = m.chain_assemble([(g1, False), (g4, False), (m.adapter_mirror(g4), False)])
    assert not m.verify_graph(chain).verdicts["planar"]

    svg = m.to_svg(g2)
    assert svg.count("<line ") == g2.num_edges

    best, table = m.minimal_n("g2", 167, 170)
    assert best == 169, table
    assert [row["passed"] for row in json.loads(table)] == [False, False, True, True]

    print("ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
