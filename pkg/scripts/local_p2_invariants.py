#!/usr/bin/env python3
"""Local P2: web, partition function, and the extracted invariants."""

from crepant.toric import dual_web, p2_triangle, unit_triangulations
from crepant.vertex import gv_extract, gw_partition_function


def main():
    web = dual_web(unit_triangulations(p2_triangle())[0])
    print("web:", len(web.nodes), "nodes,", len(web.edges), "internal edges,",
          len(web.legs), "legs")
    for edge in web.edges:
        print(f"  {edge.var}: nodes {edge.nodes}, direction {edge.direction},"
              f" framing {edge.framing}")
    series = gw_partition_function(web, 3, t_cutoff=26)
    table = gv_extract(series)
    print("\ninvariants (genus, degree) -> n:")
    for (g, d), n in table.rows():
        print(f"  ({g}, {d}) -> {n}")
    reverse = gv_extract(gw_partition_function(web, 3, t_cutoff=26,
                                               reverse_edges=True))
    print("\nreversed-orientation evaluation agrees:",
          table.rows() == reverse.rows())


if __name__ == "__main__":
    main()
